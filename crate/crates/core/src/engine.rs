//! The Assmus-Mattson theorems and their module-wise corollaries.
//!
//! Every analysis returns an [`AmReport`]: the guaranteed strength `t`, the
//! ledger of inequalities it was read from, an independent check of the
//! conclusion, and any shell designs extracted under it.

use num_traits::Zero;
use serde::Serialize;

use crate::budget::Budget;
use crate::catalog::{CatalogSource, ModuleCatalog};
use crate::design::{
    anchored_blocks, codesign_residuals, design_residuals, product_codesign_scan,
    relative_design_level_with, shell_design_extract, t_design_check, TDesignVerdict,
};
use crate::error::{Error, Result};
use crate::rational::{render, Rational};
use crate::scheme::{Family, Vertex};
use crate::spectra::{base_profile, parameters_with, CodeParameters, CodeVector, DistanceDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    V1,
    V2,
    V3,
    Cor1,
    Cor2,
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "v1" => Ok(Theorem::V1),
            "2" | "v2" => Ok(Theorem::V2),
            "3" | "v3" => Ok(Theorem::V3),
            "cor1" => Ok(Theorem::Cor1),
            "cor2" => Ok(Theorem::Cor2),
            other => Err(Error::Config(format!("unknown theorem version {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl Inequality {
    fn le(statement: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Self { statement: statement.into(), lhs, rhs, holds: lhs <= rhs }
    }
}

/// One ledger row. A row passes when any of its inequalities holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerRow {
    pub r: usize,
    /// Catalog entry index for module-wise rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<usize>,
    pub inequalities: Vec<Inequality>,
    pub passes: bool,
}

impl LedgerRow {
    fn new(r: usize, module: Option<usize>, inequalities: Vec<Inequality>) -> Self {
        let passes = inequalities.iter().any(|i| i.holds);
        Self { r, module, inequalities, passes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Unverifiable,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub status: Status,
    pub method: String,
    pub target: usize,
    pub measured: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verification {
    fn skipped(method: &str, target: usize) -> Self {
        Self { status: Status::Skipped, method: method.into(), target, measured: None, detail: None }
    }

    fn from_level(method: &str, target: usize, measured: usize, undecided: bool) -> Self {
        let status = if measured >= target {
            Status::Verified
        } else if undecided {
            Status::Unverifiable
        } else {
            Status::Failed
        };
        Self { status, method: method.into(), target, measured: Some(measured), detail: None }
    }

    fn budget(method: &str, target: usize, e: &Error) -> Self {
        Self {
            status: Status::Unverifiable,
            method: method.into(),
            target,
            measured: None,
            detail: Some(e.to_string()),
        }
    }
}

/// A shell design with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellDesign {
    pub shell: usize,
    pub v: usize,
    pub k: usize,
    pub t: usize,
    pub distinct_blocks: usize,
    pub total: String,
    pub verdict: Option<TDesignVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmReport {
    pub theorem: Theorem,
    pub scheme: String,
    pub base: String,
    pub t: usize,
    pub refined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requested_t: Option<usize>,
    pub parameters: CodeParameters,
    pub ledger: Vec<LedgerRow>,
    pub conclusion: String,
    pub verification: Verification,
    pub designs: Vec<ShellDesign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog_source: Option<CatalogSource>,
    pub degraded: bool,
    pub notes: Vec<String>,
}

impl AmReport {
    /// True when a requested `t` is covered by the guaranteed one.
    pub fn requested_holds(&self) -> bool {
        self.requested_t.is_none_or(|r| r <= self.t)
    }

    /// 0 = verified, 1 = failure or counterexample, 2 = certified but not
    /// verifiable within budget.
    pub fn exit_code(&self) -> i32 {
        let counterexample = self.designs.iter().any(|d| d.verdict.as_ref().is_some_and(|v| !v.is_design()));
        if self.verification.status == Status::Failed || counterexample || !self.requested_holds() {
            return 1;
        }
        let undecided = self.designs.iter().any(|d| d.verdict.is_none());
        if self.verification.status == Status::Unverifiable || undecided {
            2
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AmOptions<'a> {
    /// Use the refined dual degree / degree (only for V1, V2).
    pub refine: bool,
    /// Check the conclusion independently.
    pub verify: bool,
    /// Extract shell designs and check them.
    pub designs: bool,
    /// Strength at which designs are checked; defaults to the guaranteed `t`.
    pub design_t: Option<usize>,
    pub budget: Budget,
    pub catalog: Option<&'a ModuleCatalog>,
}

impl AmOptions<'_> {
    pub fn full() -> Self {
        Self { verify: true, designs: true, ..Self::default() }
    }
}

/// Shared inputs of every analysis.
struct Context<'c> {
    chi: &'c CodeVector,
    x: Vertex,
    d: usize,
    dist: DistanceDistribution,
    params: CodeParameters,
    design_res: Vec<Rational>,
    codesign_res: Vec<Rational>,
    shells: Vec<bool>,
}

impl<'c> Context<'c> {
    fn new(chi: &'c CodeVector, x: Vertex) -> Result<Self> {
        chi.check_code()?;
        let scheme = chi.scheme();
        let dist = DistanceDistribution::compute(chi);
        let params = parameters_with(chi, &dist, x)?;
        let profile = base_profile(chi, x);
        let design_res = design_residuals(scheme, &dist.b, &profile.c);
        let codesign_res = codesign_residuals(scheme, &profile);
        Ok(Self {
            chi,
            x,
            d: scheme.classes(),
            dist,
            params,
            design_res,
            codesign_res,
            shells: profile.e,
        })
    }

    fn report(&self, theorem: Theorem, t: usize, refined: bool, ledger: Vec<LedgerRow>) -> AmReport {
        let scheme = self.chi.scheme();
        AmReport {
            theorem,
            scheme: scheme.spec().to_string(),
            base: scheme.format_vertex(self.x),
            t,
            refined,
            requested_t: None,
            parameters: self.params.clone(),
            ledger,
            conclusion: String::new(),
            verification: Verification::skipped("none", t),
            designs: Vec::new(),
            catalog_source: None,
            degraded: false,
            notes: Vec::new(),
        }
    }

    /// `E_jχ ∉ C E_j x̂`: the component outside the primary module.
    fn dual_outside(&self, j: usize) -> bool {
        !self.design_res[j].is_zero()
    }

    fn shell_outside(&self, i: usize) -> bool {
        !self.codesign_res[i].is_zero()
    }

    fn refined_delta_x(&self) -> Option<usize> {
        (1..=self.d).find(|&i| self.shell_outside(i))
    }

    fn refined_dual_distance(&self) -> Option<usize> {
        (1..=self.d).find(|&j| self.dual_outside(j))
    }

    fn nonempty_shells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.d).filter(|&k| self.shells[k])
    }
}

fn prefix(rows: &[LedgerRow]) -> usize {
    rows.iter().take_while(|r| r.passes).count()
}

/// `A_ℓχ` is a relative `(δ_x − s*)`-codesign around `x` for every `ℓ`.
pub fn am_v1(chi: &CodeVector, x: Vertex, opts: &AmOptions) -> Result<AmReport> {
    let cx = Context::new(chi, x)?;
    let p = &cx.params;
    let (s, name) = if opts.refine { (p.refined_dual_degree, "s~*") } else { (p.dual_degree, "s*") };
    let ledger: Vec<LedgerRow> = (1..=cx.d)
        .map(|r| {
            LedgerRow::new(r, None, vec![Inequality::le(
                format!("{name} <= delta_x - {r}"),
                s as i64,
                p.delta_x as i64 - r as i64,
            )])
        })
        .collect();
    let t = prefix(&ledger);
    let mut report = cx.report(Theorem::V1, t, opts.refine, ledger);
    report.conclusion = format!("A_l chi is a relative {t}-codesign with respect to x for every l");
    if opts.verify {
        report.verification = verify_codesign(&cx, t, false, &opts.budget);
    }
    if opts.designs {
        support_designs(&cx, &mut report, opts);
    }
    Ok(report)
}

/// `E_k^*χ` is a relative `(δ* − s_x)`-design around `x` for every `k`.
pub fn am_v2(chi: &CodeVector, x: Vertex, opts: &AmOptions) -> Result<AmReport> {
    let cx = Context::new(chi, x)?;
    let p = &cx.params;
    let (s, name) = if opts.refine { (p.refined_s_x, "s~_x") } else { (p.s_x, "s_x") };
    let ledger: Vec<LedgerRow> = (1..=cx.d)
        .map(|r| {
            LedgerRow::new(r, None, vec![Inequality::le(
                format!("{name} <= delta* - {r}"),
                s as i64,
                p.dual_distance as i64 - r as i64,
            )])
        })
        .collect();
    let t = prefix(&ledger);
    let mut report = cx.report(Theorem::V2, t, opts.refine, ledger);
    report.conclusion = format!("E_k^* chi is a relative {t}-design with respect to x for every k");
    if opts.verify {
        report.verification = verify_shell_designs(&cx, t, &opts.budget);
    }
    if opts.designs {
        shell_designs(&cx, &mut report, opts);
    }
    Ok(report)
}

/// Per-`r` alternative of the two window counts.
pub fn am_v3(chi: &CodeVector, x: Vertex, opts: &AmOptions) -> Result<AmReport> {
    let cx = Context::new(chi, x)?;
    let p = &cx.params;
    let d = cx.d;
    let ledger: Vec<LedgerRow> = (1..=d)
        .map(|r| {
            let window: Vec<usize> = if 2 * r <= d { (r..=d - r).collect() } else { Vec::new() };
            let dual_count = window.iter().filter(|&&j| !cx.dist.b[j].is_zero()).count();
            let shell_count = window.iter().filter(|&&i| cx.shells[i]).count();
            LedgerRow::new(r, None, vec![
                Inequality::le(
                    format!("|{{{r}<=j<={}: E_j chi != 0}}| <= delta_x - {r}", d as i64 - r as i64),
                    dual_count as i64,
                    p.delta_x as i64 - r as i64,
                ),
                Inequality::le(
                    format!("|{{{r}<=i<={}: E_i^* chi != 0}}| <= delta* - {r}", d as i64 - r as i64),
                    shell_count as i64,
                    p.dual_distance as i64 - r as i64,
                ),
            ])
        })
        .collect();
    let mut t = prefix(&ledger);
    let mut report = cx.report(Theorem::V3, t, false, ledger);
    match opts.catalog {
        Some(catalog) => {
            report.catalog_source = Some(catalog.source);
            let offending = catalog
                .entries
                .iter()
                .filter(|e| e.displacement == 0 && e.endpoint >= 1 && !e.thin)
                .map(|e| e.endpoint)
                .min();
            if let Some(r) = offending.filter(|&r| r <= t) {
                t = r - 1;
                report.notes.push(format!(
                    "a displacement-zero module with endpoint {r} is not thin; t capped at {t}"
                ));
            } else {
                report.notes.push("displacement-zero modules checked thin against the catalog".into());
            }
        }
        None => report.notes.push(
            "thinness of displacement-zero modules taken as given (no catalog supplied)".into(),
        ),
    }
    report.t = t;
    report.conclusion =
        format!("<E_k^* chi, chi_u> depends only on k for every rank-t' object u below x, t' <= {t}");
    if opts.verify {
        report.verification = verify_anchored(&cx, t);
    }
    if opts.designs {
        shell_designs(&cx, &mut report, opts);
    }
    Ok(report)
}

/// Module-wise form of V1 with counts taken outside the primary module.
pub fn cor1_check(chi: &CodeVector, x: Vertex, t: Option<usize>, opts: &AmOptions) -> Result<AmReport> {
    let Some(catalog) = opts.catalog else {
        let mut report = am_v1(chi, x, opts)?;
        degrade(&mut report, Theorem::Cor1, t, "V1");
        return Ok(report);
    };
    let cx = Context::new(chi, x)?;
    let delta = cx.refined_delta_x();
    let rhs_base = delta.unwrap_or(cx.d + 1) as i64;
    let rows = corollary_rows(catalog, cx.d, |e| (e.endpoint, e.thin), |idx, r| {
        let entry = &catalog.entries[idx];
        let count = entry.dual_support.iter().filter(|&&j| cx.dual_outside(j)).count();
        Inequality::le(
            format!("|{{j in W_s* : E_j chi outside M x}}| <= delta~_x - {r}"),
            count as i64,
            rhs_base - r as i64,
        )
    });
    let (guaranteed, ledger, notes) = rows;
    let mut report = cx.report(Theorem::Cor1, guaranteed, true, ledger);
    report.catalog_source = Some(catalog.source);
    report.requested_t = t;
    report.notes = notes;
    if delta.is_none() {
        report.notes.push("chi lies in the primary module; every row passes vacuously".into());
    }
    let target = t.unwrap_or(guaranteed).min(guaranteed);
    report.conclusion = format!("F chi is a relative {target}-codesign with respect to x for every F in T");
    if opts.verify {
        report.verification = verify_codesign(&cx, target, true, &opts.budget);
    }
    if opts.designs {
        let mut o = opts.clone();
        o.design_t = o.design_t.or(Some(target));
        support_designs(&cx, &mut report, &o);
    }
    Ok(report)
}

/// Module-wise form of V2 with counts taken outside the primary module.
pub fn cor2_check(chi: &CodeVector, x: Vertex, t: Option<usize>, opts: &AmOptions) -> Result<AmReport> {
    let Some(catalog) = opts.catalog else {
        let mut report = am_v2(chi, x, opts)?;
        degrade(&mut report, Theorem::Cor2, t, "V2");
        return Ok(report);
    };
    let cx = Context::new(chi, x)?;
    let delta = cx.refined_dual_distance();
    let rhs_base = delta.unwrap_or(cx.d + 1) as i64;
    let (guaranteed, ledger, notes) =
        corollary_rows(catalog, cx.d, |e| (e.dual_endpoint, e.dual_thin), |idx, r| {
            let entry = &catalog.entries[idx];
            let count = entry.support.iter().filter(|&&i| cx.shell_outside(i)).count();
            Inequality::le(
                format!("|{{i in W_s : E_i^* chi outside M x}}| <= delta~* - {r}"),
                count as i64,
                rhs_base - r as i64,
            )
        });
    let mut report = cx.report(Theorem::Cor2, guaranteed, true, ledger);
    report.catalog_source = Some(catalog.source);
    report.requested_t = t;
    report.notes = notes;
    if delta.is_none() {
        report.notes.push("chi lies in the primary module; every row passes vacuously".into());
    }
    let target = t.unwrap_or(guaranteed).min(guaranteed);
    report.conclusion = format!("F chi is a relative {target}-design with respect to x for every F in T");
    if opts.verify {
        let mut v = verify_shell_designs(&cx, target, &opts.budget);
        if let (Status::Verified, Some(m)) = (v.status, v.measured) {
            let whole = relative_design_level_with(cx.chi, &cx.dist, x).max_level;
            v = Verification::from_level("design level of chi and of each E_k^* chi", target, m.min(whole), false);
        }
        report.verification = v;
    }
    if opts.designs {
        let mut o = opts.clone();
        o.design_t = o.design_t.or(Some(target));
        shell_designs(&cx, &mut report, &o);
    }
    Ok(report)
}

/// Ledger rows for the corollaries: one per catalog entry with endpoint
/// at least 1, sorted by endpoint. Returns the guaranteed `t`, the rows and
/// notes about non-thin entries.
fn corollary_rows(
    catalog: &ModuleCatalog,
    d: usize,
    key: impl Fn(&crate::catalog::ModuleCatalogEntry) -> (usize, bool),
    row: impl Fn(usize, usize) -> Inequality,
) -> (usize, Vec<LedgerRow>, Vec<String>) {
    let mut order: Vec<usize> = (0..catalog.entries.len()).filter(|&i| key(&catalog.entries[i]).0 >= 1).collect();
    order.sort_by_key(|&i| (key(&catalog.entries[i]).0, i));
    let mut notes = Vec::new();
    let mut first_bad: Option<usize> = None;
    let mut ledger = Vec::new();
    for idx in order {
        let (r, thin) = key(&catalog.entries[idx]);
        let mut row_ = LedgerRow::new(r, Some(idx), vec![row(idx, r)]);
        if !thin {
            row_.passes = false;
            notes.push(format!("catalog entry {idx} with endpoint {r} is not thin; the corollary does not apply from {r} on"));
        }
        if !row_.passes {
            first_bad = Some(first_bad.map_or(r, |b: usize| b.min(r)));
        }
        ledger.push(row_);
    }
    (first_bad.map_or(d, |r| r - 1), ledger, notes)
}

fn degrade(report: &mut AmReport, theorem: Theorem, t: Option<usize>, from: &str) {
    report.theorem = theorem;
    report.degraded = true;
    report.requested_t = t;
    report.notes.push(format!(
        "module catalog unavailable; reporting the theorem-level t from {from} instead"
    ));
}

fn verify_codesign(cx: &Context, t: usize, split: bool, budget: &Budget) -> Verification {
    let method = if split { "sphere scan of A_l E_k^* chi" } else { "sphere scan of A_l chi" };
    if t == 0 {
        return Verification::from_level(method, 0, 0, false);
    }
    match product_codesign_scan(cx.chi, cx.x, t, budget) {
        Ok(scan) => {
            let level = if split { scan.level_all_split } else { scan.level_all };
            let mut v = Verification::from_level(method, t, level, scan.undecided_from.is_some());
            if let Some(i) = scan.undecided_from {
                v.detail = Some(format!("sphere {i} exceeds the scan budget"));
            }
            v
        }
        Err(e) => Verification::budget(method, t, &e),
    }
}

fn verify_shell_designs(cx: &Context, t: usize, budget: &Budget) -> Verification {
    let method = "design level of each E_k^* chi";
    if t == 0 {
        return Verification::from_level(method, 0, 0, false);
    }
    let scheme = cx.chi.scheme();
    let mut measured = usize::MAX;
    let mut worst = None;
    for k in cx.nonempty_shells() {
        let part = cx.chi.restrict_to_shell(cx.x, k);
        let n = part.support_len() as u128;
        if let Err(e) = budget.check("inner distribution of a shell", n * n) {
            return Verification::budget(method, t, &e);
        }
        let dist = DistanceDistribution::compute(&part);
        let level = relative_design_level_with(&part, &dist, cx.x).max_level;
        if level < measured {
            measured = level;
            worst = Some(k);
        }
    }
    let measured = measured.min(scheme.classes());
    let mut v = Verification::from_level(method, t, measured, false);
    if v.status == Status::Failed {
        v.detail = worst.map(|k| format!("shell {k} is only a relative {measured}-design"));
    }
    v
}

fn verify_anchored(cx: &Context, t: usize) -> Verification {
    let method = "anchored block uniformity";
    let mut level = 0;
    for tt in 1..=t {
        for k in cx.nonempty_shells() {
            let verdict = anchored_blocks(cx.chi, cx.x, k).and_then(|b| t_design_check(&b, tt));
            match verdict {
                Ok(v) if v.is_design() => {}
                Ok(_) => {
                    let mut v = Verification::from_level(method, t, level, false);
                    v.detail = Some(format!("shell {k} is not uniform on {tt}-subsets"));
                    return v;
                }
                Err(e) => {
                    let mut v = Verification::budget(method, t, &e);
                    v.measured = Some(level);
                    return v;
                }
            }
        }
        level = tt;
    }
    Verification::from_level(method, t, level, false)
}

/// Shell designs read off supports at the zero word (Hamming only).
fn support_designs(cx: &Context, report: &mut AmReport, opts: &AmOptions) {
    let scheme = cx.chi.scheme();
    match scheme.family() {
        Family::Hamming if cx.x == scheme.origin() => shell_designs(cx, report, opts),
        Family::Hamming => report
            .notes
            .push("shell designs are read off at the zero word only; codesign statement reported".into()),
        Family::Johnson => report
            .notes
            .push("the codesign conclusion has no block form in Johnson schemes; see the verification".into()),
    }
}

fn shell_designs(cx: &Context, report: &mut AmReport, opts: &AmOptions) {
    let scheme = cx.chi.scheme();
    if scheme.family() == Family::Hamming && cx.x != scheme.origin() {
        report
            .notes
            .push("shell designs are read off at the zero word only; design statement reported".into());
        return;
    }
    let t = opts.design_t.unwrap_or(report.t);
    if t == 0 {
        report.notes.push("t = 0: no shell designs to check".into());
        return;
    }
    for k in cx.nonempty_shells().filter(|&k| k >= 1) {
        report.designs.push(extract_and_check(cx.chi, cx.x, k, t));
    }
}

/// Extract shell `k` and check it as a `t`-design.
pub fn extract_and_check(chi: &CodeVector, x: Vertex, k: usize, t: usize) -> ShellDesign {
    match shell_design_extract(chi, x, k) {
        Ok(blocks) => {
            let (verdict, error) = match t_design_check(&blocks, t) {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            ShellDesign {
                shell: k,
                v: blocks.v,
                k: blocks.k,
                t,
                distinct_blocks: blocks.distinct(),
                total: render(&blocks.total()),
                verdict,
                error,
            }
        }
        Err(e) => ShellDesign {
            shell: k,
            v: 0,
            k: 0,
            t,
            distinct_blocks: 0,
            total: "0".into(),
            verdict: None,
            error: Some(e.to_string()),
        },
    }
}

pub fn analyze(
    theorem: Theorem,
    chi: &CodeVector,
    x: Vertex,
    t: Option<usize>,
    opts: &AmOptions,
) -> Result<AmReport> {
    let mut report = match theorem {
        Theorem::V1 => am_v1(chi, x, opts)?,
        Theorem::V2 => am_v2(chi, x, opts)?,
        Theorem::V3 => am_v3(chi, x, opts)?,
        Theorem::Cor1 => return cor1_check(chi, x, t, opts),
        Theorem::Cor2 => return cor2_check(chi, x, t, opts),
    };
    report.requested_t = t;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::closed_form;
    use crate::scheme::Scheme;

    fn code(s: &Arc<Scheme>, words: &[&str]) -> CodeVector {
        CodeVector::from_subset(s.clone(), words.iter().map(|w| s.parse_vertex(w).unwrap()))
    }

    fn even_weight(d: usize) -> CodeVector {
        let s = Arc::new(Scheme::hamming(d, 2).unwrap());
        let words = s.vertices().unwrap().into_iter().filter(|v| v.bits().count_ones() % 2 == 0);
        CodeVector::from_subset(s.clone(), words)
    }

    #[test]
    fn even_weight_strength() {
        let chi = even_weight(6);
        let x = chi.scheme().origin();
        let r = am_v2(&chi, x, &AmOptions::full()).unwrap();
        // delta* = 6, s_x = 3
        assert_eq!(r.t, 3);
        assert_eq!(r.verification.status, Status::Verified);
        assert!(r.designs.iter().all(|d| d.verdict.as_ref().unwrap().is_design()));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn clamped_at_zero() {
        let s = Arc::new(Scheme::hamming(4, 2).unwrap());
        let chi = code(&s, &["0000", "1000", "0110", "1111"]);
        let r = am_v1(&chi, s.origin(), &AmOptions::full()).unwrap();
        assert!(!r.ledger[0].passes);
        assert_eq!(r.t, 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn ledger_prefix_monotone() {
        let s = Arc::new(Scheme::hamming(5, 2).unwrap());
        let chi = code(&s, &["00000", "11100", "00111", "11011"]);
        for th in [Theorem::V1, Theorem::V2, Theorem::V3] {
            let r = analyze(th, &chi, s.origin(), None, &AmOptions::default()).unwrap();
            if let Some(first_fail) = r.ledger.iter().position(|row| !row.passes) {
                assert!(r.t <= first_fail);
            }
        }
    }

    #[test]
    fn primary_module_vector_is_vacuous() {
        let s = Arc::new(Scheme::hamming(6, 2).unwrap());
        let x = s.origin();
        let chi = CodeVector::from_subset(s.clone(), s.sphere(x, 2).unwrap());
        let cat = closed_form(s.spec()).unwrap();
        let opts = AmOptions { catalog: Some(&cat), ..AmOptions::full() };
        for r in [cor1_check(&chi, x, Some(6), &opts).unwrap(), cor2_check(&chi, x, Some(6), &opts).unwrap()] {
            assert!(r.ledger.iter().all(|row| row.passes));
            assert_eq!(r.t, 6);
            assert_eq!(r.exit_code(), 0);
        }
    }

    #[test]
    fn requested_beyond_guarantee_fails() {
        let s = Arc::new(Scheme::hamming(6, 2).unwrap());
        let chi = code(&s, &["000000", "111000", "000111", "110110", "011011"]);
        let cat = closed_form(s.spec()).unwrap();
        let opts = AmOptions { catalog: Some(&cat), ..AmOptions::default() };
        let r = cor1_check(&chi, s.origin(), Some(5), &opts).unwrap();
        assert!(r.t < 5);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn degraded_without_catalog() {
        let chi = even_weight(4);
        let r = cor1_check(&chi, chi.scheme().origin(), None, &AmOptions::default()).unwrap();
        assert!(r.degraded);
        assert_eq!(r.theorem, Theorem::Cor1);
    }
}
