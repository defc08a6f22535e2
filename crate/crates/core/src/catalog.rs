//! Irreducible-module catalogs: which `(endpoint, dual endpoint, support)`
//! combinations occur in the standard module, and whether they are thin.

use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lab::{decompose_modules, DenseOperatorSet};
use crate::rational::binomial_u128;
use crate::scheme::{Scheme, SchemeSpec, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogSource {
    ClosedForm,
    DenseComputation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleCatalogEntry {
    pub endpoint: usize,
    pub dual_endpoint: usize,
    pub diameter: usize,
    pub displacement: isize,
    pub support: Vec<usize>,
    pub dual_support: Vec<usize>,
    pub thin: bool,
    pub dual_thin: bool,
    /// Number of modules in `V` with this signature.
    pub multiplicity: u128,
    /// Dimension of each such module.
    pub dim: usize,
    pub source: CatalogSource,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleCatalog {
    pub scheme: String,
    pub source: CatalogSource,
    /// Seed of the dense decomposition, when one was run.
    pub seed: Option<u64>,
    pub entries: Vec<ModuleCatalogEntry>,
}

impl ModuleCatalog {
    /// `Σ multiplicity · dim`, which must equal `|X|`.
    pub fn total_dim(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity * e.dim as u128).sum()
    }

    pub fn all_thin(&self) -> bool {
        self.entries.iter().all(|e| e.thin && e.dual_thin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogPolicy {
    /// Closed form when known, otherwise dense when the scheme fits.
    #[default]
    Auto,
    ClosedForm,
    Dense,
}

/// Closed form for `H(D,2)`: for each `0 <= r <= D/2` there are
/// `C(D,r) - C(D,r-1)` thin modules with `r = r*` and support `{r..D-r}`.
pub fn closed_form(spec: SchemeSpec) -> Option<ModuleCatalog> {
    let SchemeSpec::Hamming { d, q: 2 } = spec else {
        return None;
    };
    let entries = (0..=d / 2)
        .map(|r| {
            let support: Vec<usize> = (r..=d - r).collect();
            let below = if r == 0 { 0 } else { binomial_u128(d as u64, r as u64 - 1) };
            ModuleCatalogEntry {
                endpoint: r,
                dual_endpoint: r,
                diameter: d - 2 * r,
                displacement: 0,
                dual_support: support.clone(),
                dim: support.len(),
                support,
                thin: true,
                dual_thin: true,
                multiplicity: binomial_u128(d as u64, r as u64) - below,
                source: CatalogSource::ClosedForm,
            }
        })
        .collect();
    Some(ModuleCatalog { scheme: spec.to_string(), source: CatalogSource::ClosedForm, seed: None, entries })
}

/// Dense catalog from an explicit decomposition of `V` around `x`.
pub fn dense(scheme: Arc<Scheme>, x: Vertex, seed: u64, budget: &Budget) -> Result<ModuleCatalog> {
    let spec = scheme.spec();
    let ops = DenseOperatorSet::build(scheme, x, budget)?;
    let dec = decompose_modules(&ops, seed)?;
    let entries: Vec<ModuleCatalogEntry> = dec
        .signature_counts()
        .into_iter()
        .map(|(sig, count)| ModuleCatalogEntry {
            endpoint: sig.endpoint,
            dual_endpoint: sig.dual_endpoint,
            diameter: sig.diameter,
            displacement: sig.displacement,
            support: sig.support(),
            dual_support: sig.dual_support(),
            thin: sig.thin,
            dual_thin: sig.dual_thin,
            multiplicity: count as u128,
            dim: sig.dim(),
            source: CatalogSource::DenseComputation,
        })
        .collect();
    let catalog = ModuleCatalog {
        scheme: spec.to_string(),
        source: CatalogSource::DenseComputation,
        seed: Some(dec.seed),
        entries,
    };
    if catalog.total_dim() != ops.len() as u128 {
        return Err(Error::Decomposition(format!(
            "catalog dimensions sum to {} instead of {}",
            catalog.total_dim(),
            ops.len()
        )));
    }
    Ok(catalog)
}

pub fn module_catalog(
    scheme: &Arc<Scheme>,
    x: Vertex,
    policy: CatalogPolicy,
    seed: u64,
    budget: &Budget,
) -> Result<ModuleCatalog> {
    let spec = scheme.spec();
    match policy {
        CatalogPolicy::ClosedForm => closed_form(spec)
            .ok_or_else(|| Error::Unavailable(format!("no closed-form module catalog for {spec}"))),
        CatalogPolicy::Dense => dense(scheme.clone(), x, seed, budget),
        CatalogPolicy::Auto => match closed_form(spec) {
            Some(c) => Ok(c),
            None => dense(scheme.clone(), x, seed, budget).map_err(|e| match e {
                Error::DenseCap { vertices, cap } => Error::Unavailable(format!(
                    "no closed-form catalog for {spec} and |X| = {vertices} exceeds the dense cap {cap}"
                )),
                other => other,
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_binary_hamming() {
        let c = closed_form(SchemeSpec::Hamming { d: 24, q: 2 }).unwrap();
        assert_eq!(c.entries.len(), 13);
        assert_eq!(c.total_dim(), 1 << 24);
        assert_eq!(c.entries[12].support, vec![12]);
        assert_eq!(c.entries[1].support, (1..=23).collect::<Vec<_>>());
        assert!(closed_form(SchemeSpec::Hamming { d: 4, q: 3 }).is_none());
    }

    #[test]
    fn dense_matches_closed_form() {
        let s = Arc::new(Scheme::hamming(6, 2).unwrap());
        let d = dense(s.clone(), s.origin(), 5, &Budget::default()).unwrap();
        let c = closed_form(s.spec()).unwrap();
        let strip = |c: &ModuleCatalog| {
            c.entries
                .iter()
                .map(|e| (e.endpoint, e.dual_endpoint, e.support.clone(), e.multiplicity, e.thin))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&d), strip(&c));
    }

    #[test]
    fn unavailable_when_too_large() {
        let s = Arc::new(Scheme::hamming(8, 3).unwrap());
        let e = module_catalog(&s, s.origin(), CatalogPolicy::Auto, 1, &Budget::default());
        assert!(matches!(e, Err(Error::Unavailable(_))));
    }
}
