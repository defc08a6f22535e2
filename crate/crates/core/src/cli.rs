//! Command-line front end. Every command prints one JSON document and
//! returns an exit code: 0 verified, 1 failure or counterexample, 2 certified
//! but not verifiable within budget.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::catalog::{module_catalog, CatalogPolicy, ModuleCatalog};
use crate::codefile;
use crate::corpus;
use crate::design::TDesignVerdict;
use crate::engine::{analyze, extract_and_check, AmOptions, Theorem};
use crate::error::{Error, Result};
use crate::lab::{self, DenseOperatorSet, Side};
use crate::martin::martin;
use crate::rational::{render, RatMatrix, Rational};
use crate::scheme::{Family, Scheme, SchemeSpec, Vertex};
use crate::spectra::{parameters_with, CodeVector, DistanceDistribution};

pub const BUDGET_ENV: &str = "AMLAB_BUDGET";

#[derive(Debug, Parser, Serialize)]
#[command(name = "amlab", version, about = "Assmus-Mattson analysis of codes in Hamming and Johnson schemes")]
pub struct Cli {
    /// Worker threads for parallel loops.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Enumeration step budget (overrides AMLAB_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest scheme the dense lab will build.
    #[arg(long, global = true)]
    pub dense_cap: Option<usize>,
    /// Largest sphere scanned vertex by vertex.
    #[arg(long, global = true)]
    pub shell_cap: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the report (or, for `corpus emit`, the code file) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Scheme parameters.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Code parameters.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Assmus-Mattson analyses.
    #[command(subcommand)]
    Am(AmCmd),
    /// Shell design checks.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Martin trichotomies and bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Dense Terwilliger-module computations.
    #[command(subcommand)]
    Tmod(TmodCmd),
    /// Built-in codes.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeCmd {
    Info(SchemeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SchemeArgs {
    /// Scheme as `H(D,q)`, `J(N,D)`, `hamming:D:q` or `johnson:N:D`.
    #[arg(long)]
    pub scheme: Option<SchemeSpec>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Hamming,
    Johnson,
}

#[derive(Debug, Args, Serialize)]
pub struct CodeSource {
    /// Code file.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// Built-in corpus entry instead of a file.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Scheme of the code file, if it has no header.
    #[arg(long)]
    pub scheme: Option<SchemeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasePolicy {
    Explicit(String),
    Zero,
    Auto,
    AllMembers,
    Sample(usize),
}

fn parse_base(s: &str) -> std::result::Result<BasePolicy, String> {
    Ok(match s {
        "zero" => BasePolicy::Zero,
        "auto" => BasePolicy::Auto,
        "all-members" => BasePolicy::AllMembers,
        _ => match s.strip_prefix("sample:") {
            Some(n) => BasePolicy::Sample(n.parse().map_err(|_| format!("bad sample size `{n}`"))?),
            None => BasePolicy::Explicit(s.to_string()),
        },
    })
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeCmd {
    Params {
        #[command(flatten)]
        source: CodeSource,
        /// A vertex, `zero`, `auto`, `all-members` or `sample:N`.
        #[arg(long, value_parser = parse_base, default_value = "auto")]
        base: BasePolicy,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmCmd {
    Check(AmArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct AmArgs {
    /// 1, 2, 3, cor1 or cor2.
    #[arg(long)]
    pub version: String,
    #[command(flatten)]
    pub source: CodeSource,
    #[arg(long, value_parser = parse_base, default_value = "auto")]
    pub base: BasePolicy,
    /// Use the refined degree parameters.
    #[arg(long)]
    pub refine: bool,
    /// Extract shell designs and check them.
    #[arg(long)]
    pub verify_designs: bool,
    /// Required strength; also the strength for design checks.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    pub catalog: CatalogArg,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogArg {
    Auto,
    ClosedForm,
    Dense,
    None,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DesignCmd {
    Verify {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, value_parser = parse_base, default_value = "zero")]
        base: BasePolicy,
        #[arg(long)]
        t: usize,
        #[arg(long, conflicts_with = "all_shells")]
        shell: Option<usize>,
        #[arg(long)]
        all_shells: bool,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsCmd {
    Martin {
        #[arg(long, value_enum)]
        side: SideArg,
        #[command(flatten)]
        source: CodeSource,
        /// Override the certified codesign/design level.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        catalog: CatalogArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum SideArg {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::P => Side::P,
            SideArg::Q => Side::Q,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TmodCmd {
    Decompose {
        #[arg(long)]
        scheme: SchemeSpec,
        #[arg(long, default_value = "zero")]
        base: String,
        /// Include module bases in the report.
        #[arg(long)]
        with_bases: bool,
    },
    Verify {
        #[arg(long)]
        scheme: SchemeSpec,
        #[arg(long, default_value = "zero")]
        base: String,
        /// Comma-separated: tridiagonal, itt, split, lemma6, orthogonality.
        #[arg(long, value_delimiter = ',', default_value = "tridiagonal,itt,split,lemma6")]
        checks: Vec<String>,
        /// Code for the orthogonality check.
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long, value_enum, default_value = "P")]
        side: SideArg,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusCmd {
    List,
    Emit {
        #[arg(long)]
        name: String,
    },
}

/// Everything a run needs, resolved from flags and environment.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub budget: Budget,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let env_steps = match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("{BUDGET_ENV} must be a positive integer, got `{v}`")))?,
            ),
            Err(_) => None,
        };
        let mut budget = Budget::default();
        if let Some(s) = cli.budget.or(env_steps) {
            budget.steps = s;
        }
        if let Some(c) = cli.dense_cap {
            budget.dense_cap = c;
        }
        if let Some(c) = cli.shell_cap {
            budget.shell_cap = c;
        }
        if budget.steps == 0 || budget.dense_cap == 0 || budget.shell_cap == 0 {
            return Err(Error::Config("budgets must be positive".into()));
        }
        if cli.threads == Some(0) {
            return Err(Error::Config("--threads must be positive".into()));
        }
        Ok(Self { command: cli.command, budget, seed: cli.seed, out: cli.out, threads: cli.threads })
    }
}

pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

fn envelope(config: Option<&RunConfig>, body: std::result::Result<(Value, i32), Error>) -> Outcome {
    let mut report = json!({
        "tool": "amlab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config.map(|c| serde_json::to_value(c).unwrap_or(Value::Null)),
    });
    let exit_code = match body {
        Ok((result, code)) => {
            report["result"] = result;
            report["exit_code"] = json!(code);
            code
        }
        Err(e) => {
            // Running out of budget means the question is open, not answered.
            let code = if matches!(e, Error::Budget { .. } | Error::DenseCap { .. }) { 2 } else { 1 };
            report["error"] = json!({ "code": e.code(), "message": e.to_string() });
            report["exit_code"] = json!(code);
            code
        }
    };
    Outcome { report, exit_code }
}

pub fn run(config: &RunConfig) -> Outcome {
    envelope(Some(config), dispatch(config))
}

/// Parse arguments, run, print or write the report; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match RunConfig::from_cli(cli) {
        Ok(config) => {
            if let Some(n) = config.threads {
                // A second call in the same process keeps the first pool.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            let outcome = run(&config);
            let text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
            let to_file = config.out.as_ref().filter(|_| !matches!(config.command, Command::Corpus(_)));
            match to_file {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("cannot write {}: {e}", path.display());
                        return 1;
                    }
                }
                None => println!("{text}"),
            }
            return outcome.exit_code;
        }
        Err(e) => envelope(None, Err(e)),
    };
    println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serializes"));
    outcome.exit_code
}

fn dispatch(config: &RunConfig) -> Result<(Value, i32)> {
    let budget = &config.budget;
    match &config.command {
        Command::Scheme(SchemeCmd::Info(args)) => scheme_info(args),
        Command::Code(CodeCmd::Params { source, base }) => code_params(source, base, config.seed),
        Command::Am(AmCmd::Check(args)) => am_check(args, budget, config.seed),
        Command::Design(DesignCmd::Verify { source, base, t, shell, all_shells }) => {
            design_verify(source, base, *t, *shell, *all_shells, config.seed)
        }
        Command::Bounds(BoundsCmd::Martin { side, source, t, catalog }) => {
            let chi = load_code(source)?;
            let cat = catalog_for(&chi, chi.scheme().origin(), *catalog, config.seed, budget).ok();
            let report = martin(&chi, (*side).into(), *t, cat.as_ref())?;
            let code = report.exit_code();
            Ok((serde_json::to_value(report)?, code))
        }
        Command::Tmod(TmodCmd::Decompose { scheme, base, with_bases }) => {
            tmod_decompose(*scheme, base, *with_bases, config.seed, budget)
        }
        Command::Tmod(TmodCmd::Verify { scheme, base, checks, code, corpus, side }) => {
            let source = CodeSource { code: code.clone(), corpus: corpus.clone(), scheme: Some(*scheme) };
            tmod_verify(*scheme, base, checks, &source, (*side).into(), config.seed, budget)
        }
        Command::Corpus(CorpusCmd::List) => Ok((serde_json::to_value(corpus::entries())?, 0)),
        Command::Corpus(CorpusCmd::Emit { name }) => {
            let entry = corpus::entry(name)?;
            let chi = corpus::generate(name)?;
            let comment = format!("{}: {}", entry.name, entry.description);
            let text = codefile::emit(&chi, Some(&comment));
            match &config.out {
                Some(path) => {
                    std::fs::write(path, &text)?;
                    Ok((json!({ "name": entry.name, "scheme": entry.scheme, "size": chi.support_len(), "path": path }), 0))
                }
                None => Ok((json!({ "name": entry.name, "scheme": entry.scheme, "code": text }), 0)),
            }
        }
    }
}

fn rat_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(render).collect()
}

fn rat_matrix(m: &RatMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| rat_vec(r)).collect()
}

fn scheme_info(args: &SchemeArgs) -> Result<(Value, i32)> {
    let spec = match (args.scheme, args.family) {
        (Some(s), _) => s,
        (None, Some(FamilyArg::Hamming)) => SchemeSpec::Hamming {
            d: args.d.ok_or_else(|| Error::Config("--d is required".into()))?,
            q: args.q.ok_or_else(|| Error::Config("--q is required".into()))?,
        },
        (None, Some(FamilyArg::Johnson)) => SchemeSpec::Johnson {
            n: args.n.ok_or_else(|| Error::Config("--n is required".into()))?,
            d: args.d.ok_or_else(|| Error::Config("--d is required".into()))?,
        },
        (None, None) => return Err(Error::Config("give --scheme or --family".into())),
    };
    let s = Scheme::build(spec)?;
    let d = s.classes();
    let big = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let report = json!({
        "scheme": spec,
        "classes": d,
        "vertex_count": s.vertex_count().to_string(),
        "valencies": big(s.valencies()),
        "multiplicities": big(s.multiplicities()),
        "P": rat_matrix(s.p()),
        "Q": rat_matrix(s.q()),
        "theta": (0..=d).map(|j| render(s.theta(j))).collect::<Vec<_>>(),
        "dual_theta": (0..=d).map(|i| render(s.dual_theta(i))).collect::<Vec<_>>(),
        "bipartite": s.is_bipartite(),
        "antipodal_double_cover": s.is_antipodal_double_cover(),
        "invariants_hold": s.check_invariants(),
    });
    Ok((report, 0))
}

pub fn load_code(source: &CodeSource) -> Result<CodeVector> {
    match (&source.code, &source.corpus) {
        (Some(path), None) => codefile::load(path, source.scheme),
        (None, Some(name)) => {
            let chi = corpus::generate(name)?;
            match source.scheme {
                Some(s) if s != chi.scheme().spec() => {
                    Err(Error::Config(format!("corpus entry {name} lives in {}, not {s}", chi.scheme().spec())))
                }
                _ => Ok(chi),
            }
        }
        (Some(_), Some(_)) => Err(Error::Config("give either --code or --corpus, not both".into())),
        (None, None) => Err(Error::Config("a code is required: --code <file> or --corpus <name>".into())),
    }
}

pub fn resolve_bases(policy: &BasePolicy, chi: &CodeVector, seed: u64) -> Result<Vec<Vertex>> {
    let scheme = chi.scheme();
    Ok(match policy {
        BasePolicy::Explicit(v) => vec![scheme.parse_vertex(v)?],
        BasePolicy::Zero => vec![scheme.origin()],
        BasePolicy::Auto => match scheme.family() {
            Family::Hamming => vec![scheme.origin()],
            Family::Johnson => vec![chi.support().next().unwrap_or(scheme.origin())],
        },
        BasePolicy::AllMembers => chi.support().collect(),
        BasePolicy::Sample(n) => {
            let mut members: Vec<Vertex> = chi.support().collect();
            members.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            members.truncate(*n);
            members.sort();
            members
        }
    })
}

fn code_params(source: &CodeSource, base: &BasePolicy, seed: u64) -> Result<(Value, i32)> {
    let chi = load_code(source)?;
    chi.check_code()?;
    let scheme = chi.scheme();
    let dist = DistanceDistribution::compute(&chi);
    let per_base = resolve_bases(base, &chi, seed)?
        .into_iter()
        .map(|x| {
            let p = parameters_with(&chi, &dist, x)?;
            Ok(json!({ "base": scheme.format_vertex(x), "parameters": p }))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = json!({
        "scheme": scheme.spec(),
        "size": chi.support_len(),
        "subset": chi.is_subset(),
        "regular": chi.is_subset().then(|| crate::martin::is_regular(&chi)),
        "inner_distribution": rat_vec(&dist.a),
        "dual_norms": rat_vec(&dist.b),
        "bases": per_base,
    });
    Ok((report, 0))
}

fn catalog_for(
    chi: &CodeVector,
    x: Vertex,
    policy: CatalogArg,
    seed: u64,
    budget: &Budget,
) -> Result<ModuleCatalog> {
    let policy = match policy {
        CatalogArg::Auto => CatalogPolicy::Auto,
        CatalogArg::ClosedForm => CatalogPolicy::ClosedForm,
        CatalogArg::Dense => CatalogPolicy::Dense,
        CatalogArg::None => return Err(Error::Unavailable("catalog disabled".into())),
    };
    module_catalog(chi.scheme(), x, policy, seed, budget)
}

/// Worst exit code: failures dominate open questions.
fn combine(codes: impl IntoIterator<Item = i32>) -> i32 {
    codes.into_iter().fold(0, |acc, c| match (acc, c) {
        (1, _) | (_, 1) => 1,
        (2, _) | (_, 2) => 2,
        _ => 0,
    })
}

fn am_check(args: &AmArgs, budget: &Budget, seed: u64) -> Result<(Value, i32)> {
    let theorem: Theorem = args.version.parse()?;
    let chi = load_code(&args.source)?;
    let bases = resolve_bases(&args.base, &chi, seed)?;
    let needs_catalog = matches!(theorem, Theorem::Cor1 | Theorem::Cor2 | Theorem::V3);
    let mut catalog_error = None;
    let catalog = if needs_catalog {
        let x = bases.first().copied().unwrap_or(chi.scheme().origin());
        match catalog_for(&chi, x, args.catalog, seed, budget) {
            Ok(c) => Some(c),
            Err(e) => {
                catalog_error = Some(e.to_string());
                None
            }
        }
    } else {
        None
    };
    let opts = AmOptions {
        refine: args.refine,
        verify: true,
        designs: args.verify_designs,
        design_t: args.t.filter(|_| args.verify_designs),
        budget: *budget,
        catalog: catalog.as_ref(),
    };
    let mut reports = Vec::new();
    let mut codes = Vec::new();
    for x in bases {
        let mut r = analyze(theorem, &chi, x, args.t, &opts)?;
        if let Some(e) = &catalog_error {
            r.notes.push(format!("catalog: {e}"));
        }
        codes.push(r.exit_code());
        reports.push(r);
    }
    let code = combine(codes);
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        json!({ "reports": reports })
    };
    Ok((value, code))
}

fn design_verify(
    source: &CodeSource,
    base: &BasePolicy,
    t: usize,
    shell: Option<usize>,
    all_shells: bool,
    seed: u64,
) -> Result<(Value, i32)> {
    let chi = load_code(source)?;
    let scheme = chi.scheme();
    let x = *resolve_bases(base, &chi, seed)?
        .first()
        .ok_or_else(|| Error::Config("no base vertex".into()))?;
    let d = scheme.classes();
    let shells: Vec<usize> = match (shell, all_shells) {
        (Some(k), _) => vec![k],
        (None, _) => {
            let profile = crate::spectra::base_profile(&chi, x);
            (1..=d).filter(|&k| profile.e[k]).collect()
        }
    };
    let designs: Vec<_> = shells.into_iter().map(|k| extract_and_check(&chi, x, k, t)).collect();
    let codes = designs.iter().map(|s| match &s.verdict {
        Some(TDesignVerdict::Design { .. }) => 0,
        Some(_) => 1,
        None if s.error.as_deref().is_some_and(|e| e.contains("budget")) => 2,
        None => 1,
    });
    let code = combine(codes);
    Ok((json!({ "scheme": scheme.spec(), "base": scheme.format_vertex(x), "t": t, "shells": designs }), code))
}

fn operator_set(scheme: SchemeSpec, base: &str, budget: &Budget) -> Result<DenseOperatorSet> {
    let s = Arc::new(Scheme::build(scheme)?);
    let x = if base == "zero" { s.origin() } else { s.parse_vertex(base)? };
    DenseOperatorSet::build(s, x, budget)
}

fn tmod_decompose(
    scheme: SchemeSpec,
    base: &str,
    with_bases: bool,
    seed: u64,
    budget: &Budget,
) -> Result<(Value, i32)> {
    let ops = operator_set(scheme, base, budget)?;
    let dec = lab::decompose_modules(&ops, seed)?;
    let summary = lab::summarize(&ops, &dec);
    let code = if summary.consistent() { 0 } else { 1 };
    let mut value = serde_json::to_value(&summary)?;
    if with_bases {
        let bases: Vec<Vec<Vec<f64>>> = dec
            .modules
            .iter()
            .map(|m| m.basis.column_iter().map(|c| c.iter().copied().collect()).collect())
            .collect();
        value["bases"] = json!(bases);
    }
    Ok((value, code))
}

fn tmod_verify(
    scheme: SchemeSpec,
    base: &str,
    checks: &[String],
    source: &CodeSource,
    side: Side,
    seed: u64,
    budget: &Budget,
) -> Result<(Value, i32)> {
    let ops = operator_set(scheme, base, budget)?;
    let dec = lab::decompose_modules(&ops, seed)?;
    let summary = lab::summarize(&ops, &dec);
    let mut out = serde_json::Map::new();
    let mut ok = summary.consistent();
    out.insert("decomposition".into(), serde_json::to_value(&summary)?);
    let mut split = None;
    for check in checks {
        match check.trim() {
            "tridiagonal" => {
                let v = lab::verify_tridiagonal(&ops, &dec);
                ok &= v.passes;
                out.insert("tridiagonal".into(), serde_json::to_value(v)?);
            }
            "itt" => {
                let v = lab::verify_itt(&ops, &dec);
                ok &= v.passes;
                out.insert("itt".into(), serde_json::to_value(v)?);
            }
            "split" | "lemma6" => {
                if split.is_none() {
                    split = Some(lab::split_decomposition(&ops, &dec)?);
                }
                let s = split.as_ref().expect("just computed");
                if check.trim() == "split" {
                    ok &= s.passes;
                    out.insert("split".into(), serde_json::to_value(s)?);
                } else {
                    let passes = s.partial_sum_residual <= lab::TAU;
                    ok &= passes;
                    out.insert(
                        "lemma6".into(),
                        json!({ "partial_sum_residual": s.partial_sum_residual, "passes": passes }),
                    );
                }
            }
            "orthogonality" => {
                let chi = load_code(source)?;
                let v = ops.dense_vector(&chi);
                let r = lab::module_orthogonality_test(&ops, &dec, &v, side);
                ok &= r.discrepancies == 0;
                out.insert("orthogonality".into(), serde_json::to_value(r)?);
            }
            other => return Err(Error::Config(format!("unknown check `{other}`"))),
        }
    }
    Ok((Value::Object(out), if ok { 0 } else { 1 }))
}
