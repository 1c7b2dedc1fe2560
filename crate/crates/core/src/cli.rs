//! Command line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::associator::{self, Relation};
use crate::cache::{self, DiskCache};
use crate::error::{Error, Result};
use crate::fixed::sci_from_log10;
use crate::mzv::{self, parse_ab_word, MzvIndex};
use crate::sda;

const MODULAR_PRIME: u64 = 2_147_483_629;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "zetalie", version, about = "Stable derivation algebra, multiple zeta values and the Drinfel'd associator")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Largest weight for dimension tables [default: 10, or 12 with --extended]
    #[arg(long, global = true)]
    pub max_weight: Option<usize>,
    /// Include weights 11 and 12 by default (slow)
    #[arg(long, global = true)]
    pub extended: bool,
    /// Decimal digits for numerical work
    #[arg(long, global = true, default_value_t = 40)]
    pub digits: u32,
    /// Truncation degree of series
    #[arg(long, global = true, default_value_t = 6)]
    pub truncation: usize,
    /// Cache directory (defaults to $ZETALIE_CACHE_DIR)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Disable the disk cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads; computations currently run on one
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Cross-check dimensions modulo a prime
    #[arg(long, global = true)]
    pub modular_check: bool,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.digits < 10 {
            return Err(Error::InvalidInput("--digits must be at least 10".into()));
        }
        if self.max_weight() < 2 {
            return Err(Error::InvalidInput("--max-weight must be at least 2".into()));
        }
        if self.threads == 0 {
            return Err(Error::InvalidInput("--threads must be positive".into()));
        }
        Ok(())
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight.unwrap_or(if self.extended { sda::VERIFIED_WEIGHT } else { 10 })
    }

    fn check_weight(&self, w: usize) -> Result<()> {
        if w > sda::VERIFIED_WEIGHT {
            return Err(Error::Resource(format!("weight {w} is beyond the supported range (max {})", sda::VERIFIED_WEIGHT)));
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stable derivation algebra
    #[command(subcommand)]
    Sda(SdaCommand),
    /// Multiple zeta values
    #[command(subcommand)]
    Mzv(MzvCommand),
    /// Drinfel'd associator
    #[command(subcommand)]
    Assoc(AssocCommand),
}

#[derive(Subcommand, Debug)]
pub enum SdaCommand {
    /// Dimensions and depth filtration for weights 1..=max-weight
    Table,
    /// d, d' and the new-zeta bounds
    Bounds,
    /// The depth-three combination in weight 12
    IharaTakao,
    /// Adapted basis of one weight
    Basis {
        #[arg(long)]
        weight: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MzvCommand {
    /// Evaluate one MZV, index given as k1,...,km
    Eval { index: String },
    /// Detect rational relations among all MZVs of a weight
    Relations {
        #[arg(long)]
        weight: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum AssocCommand {
    /// Exact coefficient of a word in A, B
    Coeff { word: String },
    /// Numerical check of a defining relation
    Verify {
        #[arg(long)]
        relation: String,
        /// truncation degree (defaults per relation)
        #[arg(long)]
        degree: Option<usize>,
    },
    /// New-zeta part of log Φ and its membership in D_w
    Witness {
        #[arg(long)]
        weight: usize,
    },
    /// Pairing of words with the basis of D_w
    Psi {
        #[arg(long)]
        weight: usize,
    },
    /// Euler's formula for ζ(2n)
    Euler {
        #[arg(long)]
        n: usize,
    },
    /// Symbolic coefficients up to the truncation degree
    Series,
}

/// A finished report: JSON value, human table and CSV rendering.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub csv: String,
    /// false when an internal verification failed
    pub ok: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
            Format::Csv => self.csv.clone(),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

// ---------------------------------------------------------------------------
// sda

fn sda_table(cfg: &RunConfig) -> Result<Report> {
    cfg.check_weight(cfg.max_weight())?;
    let rep = sda::dimension_report(cfg.max_weight())?;
    let mut ok = true;
    let mut modular = Vec::new();
    if cfg.modular_check {
        for row in &rep.weights {
            let m = sda::modular_dim(row.weight, MODULAR_PRIME);
            ok &= m == row.dim;
            modular.push(json!({"weight": row.weight, "dim_mod_p": m}));
        }
    }
    let mut table = String::from("w   dim  filtration (dim F^1, F^2, ...)\n");
    for r in &rep.weights {
        let _ = writeln!(table, "{:<3} {:<4} {}", r.weight, r.dim, join(&r.filtration).replace(';', " "));
    }
    let rows: Vec<Vec<String>> =
        rep.weights.iter().map(|r| vec![r.weight.to_string(), r.dim.to_string(), join(&r.filtration)]).collect();
    let mut json = json!({ "weights": to_json(&rep.weights) });
    if cfg.modular_check {
        json["modular_check"] = Value::Array(modular);
    }
    Ok(Report { json, table, csv: csv(&["weight", "dim", "filtration"], &rows), ok })
}

fn sda_bounds(cfg: &RunConfig) -> Result<Report> {
    cfg.check_weight(cfg.max_weight())?;
    let rep = sda::dimension_report(cfg.max_weight())?;
    let closed: Vec<bool> = (0..=cfg.max_weight())
        .map(|w| {
            let v = sda::d_closed_form(w, 30);
            (&v - &crate::fixed::Fixed::from_int(rep.d[w])).log10_abs() < -20.0
        })
        .collect();
    let ok = closed.iter().all(|&b| b);
    let mut table = String::from("w   d    d'   NZ bounds (m = 1, 2, ...)\n");
    for w in 0..=cfg.max_weight() {
        let bounds = if w == 0 { String::new() } else { join(&rep.nz_bounds[w - 1].bounds).replace(';', " ") };
        let _ = writeln!(table, "{:<3} {:<4} {:<4} {}", w, rep.d[w], rep.dprime[w], bounds);
    }
    let rows: Vec<Vec<String>> = (0..=cfg.max_weight())
        .map(|w| {
            vec![
                w.to_string(),
                rep.d[w].to_string(),
                rep.dprime[w].clone(),
                closed[w].to_string(),
                if w == 0 { String::new() } else { join(&rep.nz_bounds[w - 1].bounds) },
            ]
        })
        .collect();
    let json = json!({
        "d": rep.d,
        "dprime": rep.dprime,
        "closed_form_agrees": closed,
        "nz_bounds": to_json(&rep.nz_bounds),
    });
    Ok(Report { json, table, csv: csv(&["weight", "d", "dprime", "closed_form_agrees", "nz_bounds"], &rows), ok })
}

fn sda_ihara_takao() -> Result<Report> {
    let it = sda::ihara_takao()?;
    let table = format!(
        "{} [D_f3, D_f9] + {} [D_f5, D_f7] lies in F^3 D_12\nratio a/b = {}\nunique up to scale: {}\nverified: {}\n",
        it.a, it.b, it.ratio, it.unique_up_to_scale, it.verified
    );
    let row = vec![it.a.clone(), it.b.clone(), it.ratio.clone(), it.unique_up_to_scale.to_string(), it.verified.to_string()];
    let ok = it.verified && it.unique_up_to_scale;
    Ok(Report {
        json: to_json(&it),
        table,
        csv: csv(&["a", "b", "ratio", "unique_up_to_scale", "verified"], &[row]),
        ok,
    })
}

fn sda_basis(cfg: &RunConfig, w: usize) -> Result<Report> {
    cfg.check_weight(w)?;
    let basis = sda::solve_dw(w)?;
    let mut table = format!("weight {w}, dimension {}\n", basis.len());
    for (i, d) in basis.iter().enumerate() {
        let _ = writeln!(table, "[{i}] depth {} c = {}\n    {}", d.depth, crate::arith::q_to_string(&d.c), d.f.render());
    }
    let rows: Vec<Vec<String>> = basis
        .iter()
        .enumerate()
        .map(|(i, d)| vec![i.to_string(), d.depth.to_string(), crate::arith::q_to_string(&d.c), d.f.render()])
        .collect();
    let json = json!({"weight": w, "basis": basis.iter().map(|d| to_json(&d.to_json())).collect::<Vec<_>>()});
    Ok(Report { json, table, csv: csv(&["index", "depth", "c", "f"], &rows), ok: true })
}

// ---------------------------------------------------------------------------
// mzv

fn mzv_eval(cfg: &RunConfig, index: &str) -> Result<Report> {
    let k = MzvIndex::parse(index)?;
    let v = mzv::zeta_eval(&k, cfg.digits)?;
    let s = v.to_decimal(cfg.digits as usize);
    let table = format!("{k} = {s}  [{} digits]\n", cfg.digits);
    let json = json!({"index": k.entries(), "weight": k.weight(), "depth": k.depth(), "digits": cfg.digits, "value": s});
    let row = vec![join(k.entries()), k.weight().to_string(), k.depth().to_string(), cfg.digits.to_string(), s];
    Ok(Report { json, table, csv: csv(&["index", "weight", "depth", "digits", "value"], &[row]), ok: true })
}

fn mzv_relations(cfg: &RunConfig, w: u32) -> Result<Report> {
    if !(2..=12).contains(&w) {
        return Err(Error::InvalidInput("relation search supports weights 2..=12".into()));
    }
    let rb = mzv::relation_basis(&MzvIndex::all_of_weight(w), cfg.digits)?;
    let ok = rb.relations.iter().all(|r| r.verified);
    let mut table = format!("weight {w}: basis {}\n", rb.basis.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", "));
    let mut rows = Vec::new();
    for (k, expr) in &rb.expressions {
        let rhs = expr.iter().map(|(b, c)| format!("{c}*{b}")).collect::<Vec<_>>().join(" + ");
        let _ = writeln!(table, "{k} = {rhs}");
        rows.push(vec![k.to_string(), rhs]);
    }
    let json = json!({"weight": w, "digits": cfg.digits, "basis": rb.basis.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "expressions": rb.expressions.iter().map(|(k, e)| json!({"value": k.to_string(), "terms": e})).collect::<Vec<_>>(),
        "relations": to_json(&rb.relations)});
    Ok(Report { json, table, csv: csv(&["value", "expression"], &rows), ok })
}

// ---------------------------------------------------------------------------
// assoc

fn assoc_coeff(word: &str) -> Result<Report> {
    let w = parse_ab_word(word)?;
    if w.is_empty() {
        return Err(Error::InvalidInput("empty word".into()));
    }
    let c = associator::coeff_i(&w);
    let s = c.to_string();
    Ok(Report {
        json: json!({"word": word, "coefficient": s}),
        table: format!("{s}\n"),
        csv: csv(&["word", "coefficient"], &[vec![word.to_string(), s]]),
        ok: true,
    })
}

fn assoc_verify(cfg: &RunConfig, relation: &str, degree: Option<usize>) -> Result<Report> {
    let rels = if relation == "all" { Relation::ALL.to_vec() } else { vec![Relation::parse(relation)?] };
    let mut reports = Vec::new();
    for r in rels {
        let n = degree.unwrap_or_else(|| r.default_degree());
        if n > 8 || (r == Relation::Pentagon && n > 6) {
            return Err(Error::Resource(format!("degree {n} is beyond the supported range for {}", r.name())));
        }
        reports.push(associator::verify_relation(r, n, cfg.digits)?);
    }
    let ok = reports.iter().all(|r| r.passed);
    let mut table = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let _ = writeln!(
            table,
            "{:<15} degree {}  digits {}  residual {}  (tolerance 1e{})  {}",
            r.relation.name(),
            r.degree,
            r.digits,
            r.residual,
            r.tolerance_log10,
            if r.passed { "ok" } else { "FAILED" }
        );
        rows.push(vec![
            r.relation.name().to_string(),
            r.degree.to_string(),
            r.digits.to_string(),
            r.residual.clone(),
            r.residual_log10.to_string(),
            r.tolerance_log10.to_string(),
            r.passed.to_string(),
        ]);
    }
    let json = if reports.len() == 1 { to_json(&reports[0]) } else { to_json(&reports) };
    Ok(Report {
        json,
        table,
        csv: csv(&["relation", "degree", "digits", "residual", "residual_log10", "tolerance_log10", "passed"], &rows),
        ok,
    })
}

fn assoc_witness(cfg: &RunConfig, w: usize) -> Result<Report> {
    cfg.check_weight(w)?;
    let wt = associator::nz_witness(w, cfg.digits, &associator::default_basis_values(w)?)?;
    let ok = wt.in_dw && wt.relations_verified;
    let mut table = format!("weight {w}, {} digits, dim D_w = {}\n", wt.digits, wt.dim_dw);
    for (g, f) in &wt.surviving {
        let poly = crate::freelie::LiePoly::from_json(f)?;
        let _ = writeln!(table, "coefficient of {g}: {}", if poly.is_zero() { "0".to_string() } else { poly.render() });
    }
    let _ = writeln!(table, "relations verified at doubled precision: {}", wt.relations_verified);
    let _ = writeln!(table, "lies in D_w: {}", wt.in_dw);
    let rows: Vec<Vec<String>> = wt
        .coordinates
        .iter()
        .map(|c| {
            vec![
                c.word.clone(),
                c.decomposition.iter().map(|(b, q)| format!("{q}*{b}")).collect::<Vec<_>>().join(" + "),
                c.relation.as_ref().map(|r| r.verified.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Report { json: to_json(&wt), table, csv: csv(&["word", "decomposition", "verified"], &rows), ok })
}

fn assoc_psi(cfg: &RunConfig, w: usize) -> Result<Report> {
    cfg.check_weight(w)?;
    let rep = associator::psi_report(w)?;
    let bounds = sda::nz_bound_row(w, &sda::filtration_dims(w)?);
    let ok = rep.depth_ranks.iter().zip(&bounds.bounds).all(|(a, b)| a == b);
    let mut table = format!("weight {w}, dim D_w = {}, ranks by depth {}\n", rep.dim, join(&rep.depth_ranks).replace(';', " "));
    for r in rep.rows.iter().filter(|r| r.pairing.iter().any(|p| p != "0")) {
        let _ = writeln!(table, "{:<14} dp {}  ({})  I = {}", r.word, r.depth, r.pairing.join(", "), r.coefficient);
    }
    let rows: Vec<Vec<String>> =
        rep.rows.iter().map(|r| vec![r.word.clone(), r.depth.to_string(), join(&r.pairing), r.coefficient.clone()]).collect();
    Ok(Report { json: to_json(&rep), table, csv: csv(&["word", "depth", "pairing", "coefficient"], &rows), ok })
}

fn assoc_euler(cfg: &RunConfig, n: usize) -> Result<Report> {
    let e = associator::euler_check(n, cfg.digits)?;
    let table = format!(
        "ζ({}) vs (-1)^(n+1) (2π)^(2n) B_(2n) / (2 (2n)!), B_{} = {}: residual {}  {}\n",
        2 * n,
        2 * n,
        e.bernoulli,
        sci_from_log10(e.residual_log10, 1),
        if e.passed { "ok" } else { "FAILED" }
    );
    let row = vec![n.to_string(), e.digits.to_string(), e.bernoulli.clone(), e.residual_log10.to_string(), e.passed.to_string()];
    Ok(Report {
        json: to_json(&e),
        table,
        csv: csv(&["n", "digits", "bernoulli", "residual_log10", "passed"], &[row]),
        ok: e.passed,
    })
}

fn assoc_series(cfg: &RunConfig) -> Result<Report> {
    if cfg.truncation > 10 {
        return Err(Error::Resource("symbolic series beyond degree 10 is not supported".into()));
    }
    let phi = associator::phi_formal(cfg.truncation);
    let mut table = String::new();
    let mut rows = Vec::new();
    let mut terms: Vec<_> = phi.terms().into_iter().collect();
    terms.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
    for (w, c) in terms {
        let word = if w.is_empty() { "1".to_string() } else { mzv::render_ab_word(w) };
        let _ = writeln!(table, "{word:<12} {c}");
        rows.push(vec![word, c.to_string()]);
    }
    let map: serde_json::Map<String, Value> = rows.iter().map(|r| (r[0].clone(), Value::String(r[1].clone()))).collect();
    Ok(Report {
        json: json!({"truncation": cfg.truncation, "coefficients": map}),
        table,
        csv: csv(&["word", "coefficient"], &rows),
        ok: true,
    })
}

// ---------------------------------------------------------------------------

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Report> {
    let cfg = &cli.config;
    cfg.validate()?;
    if cfg.no_cache {
        cache::set_current(None);
    } else if let Some(dir) = &cfg.cache_dir {
        cache::set_current(Some(DiskCache::new(dir)));
    }
    match &cli.command {
        Command::Sda(SdaCommand::Table) => sda_table(cfg),
        Command::Sda(SdaCommand::Bounds) => sda_bounds(cfg),
        Command::Sda(SdaCommand::IharaTakao) => sda_ihara_takao(),
        Command::Sda(SdaCommand::Basis { weight }) => sda_basis(cfg, *weight),
        Command::Mzv(MzvCommand::Eval { index }) => mzv_eval(cfg, index),
        Command::Mzv(MzvCommand::Relations { weight }) => mzv_relations(cfg, *weight),
        Command::Assoc(AssocCommand::Coeff { word }) => assoc_coeff(word),
        Command::Assoc(AssocCommand::Verify { relation, degree }) => assoc_verify(cfg, relation, *degree),
        Command::Assoc(AssocCommand::Witness { weight }) => assoc_witness(cfg, *weight),
        Command::Assoc(AssocCommand::Psi { weight }) => assoc_psi(cfg, *weight),
        Command::Assoc(AssocCommand::Euler { n }) => assoc_euler(cfg, *n),
        Command::Assoc(AssocCommand::Series) => assoc_series(cfg),
    }
}

/// Parses arguments, runs, prints, and returns the process exit code:
/// 0 success, 1 verification failure, 2 usage error, 3 resource limit.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(rep) => {
            print!("{}", rep.render(cli.config.format));
            if rep.ok {
                0
            } else {
                eprintln!("verification failed");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
