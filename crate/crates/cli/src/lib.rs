//! Batch driver for division-field monogeneity surveys.
//!
//! Wraps the core library in four workflows: `survey` sweeps a coefficient
//! space and reports, per polynomial, every modulus `n` below a bound for
//! which `p` is a common index divisor of the `n`-division field; `analyze`
//! gives the full splitting picture of one polynomial; `check_table` diffs a
//! survey against bundled expected tables; and a line-delimited JSON cache
//! makes sweeps resumable.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Write as _};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use weilcid_core::error::Error as CoreError;
use weilcid_core::exact::factorize;
use weilcid_core::frobenius::{
    basis, frobenius_matrix, guaranteed_applicable, order_discriminant, reduce_mod,
    verschiebung_matrix, IntMatrix,
};
use weilcid_core::monogeneity::{splitting_report, HYPOTHESIS_NOTE};
use weilcid_core::weil::{enumerate_weil, CoeffFix, WeilPoly};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Name of the environment variable that supplies a default cache directory
/// when `--cache` is not given.
pub const CACHE_DIR_ENV: &str = "WEILCID_CACHE_DIR";

/// Hypothesis note carried by every survey document.
pub const DOCUMENT_NOTE: &str = "common-index-divisor verdicts assume the mod-n Galois \
     image is all of GSp_2g(Z/nZ) and the endomorphism ring is the minimal order Z[pi,v]";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

/// One survey work order.
#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub n_max: u64,
    /// Pinned coefficients, keyed by index into `a_g..a_(2g-1)`.
    pub fix: BTreeMap<usize, i64>,
    pub cache_path: Option<PathBuf>,
    pub workers: Option<usize>,
}

/// One output row: a polynomial (by its free coefficients
/// `a_(2g-1), ..., a_g`), its p-rank, and every `n` in range for which `p`
/// is a common index divisor of the `n`-division field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub coeffs: Vec<i64>,
    pub p_rank: u64,
    pub nonmonogenic_n: Vec<u64>,
}

/// One cached verdict, keyed by `(p, m, g, coeffs, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub p: u64,
    #[serde(default = "one")]
    pub m: u32,
    pub g: usize,
    pub coeffs: Vec<i64>,
    pub n: u64,
    /// Multiplicative order of the Frobenius matrix mod `n`, in decimal.
    pub ord: String,
    pub cid: bool,
    pub tool_version: String,
}

fn one() -> u32 {
    1
}

pub type CacheKey = (u64, u32, usize, Vec<i64>, u64);

impl CacheRecord {
    pub fn key(&self) -> CacheKey {
        (self.p, self.m, self.g, self.coeffs.clone(), self.n)
    }
}

/// Parse `"a5=0,a4=-1"` into `{5: 0, 4: -1}`. Empty input is an empty map.
pub fn parse_fix(s: &str) -> anyhow::Result<BTreeMap<usize, i64>> {
    let mut out = BTreeMap::new();
    for piece in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = piece
            .split_once('=')
            .with_context(|| format!("bad fix entry '{piece}': expected a<k>=<value>"))?;
        let idx: usize = name
            .trim()
            .strip_prefix('a')
            .with_context(|| format!("bad fix entry '{piece}': name must look like a5"))?
            .parse()
            .with_context(|| format!("bad fix entry '{piece}': index must be an integer"))?;
        let val: i64 = value
            .trim()
            .parse()
            .with_context(|| format!("bad fix entry '{piece}': value must be an integer"))?;
        if out.insert(idx, val).is_some() {
            bail!("fix pins a{idx} twice");
        }
    }
    Ok(out)
}

/// Read a line-delimited JSON cache. Missing file is an empty cache; corrupt
/// lines are skipped with a warning on stderr; duplicate keys resolve to the
/// last occurrence.
pub fn load_cache(path: &Path) -> HashMap<CacheKey, CacheRecord> {
    let mut out = HashMap::new();
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(_) => return out,
    };
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!(
                    "warning: {}:{}: unreadable line skipped ({e})",
                    path.display(),
                    lineno + 1
                );
                continue;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheRecord>(&line) {
            Ok(rec) => {
                out.insert(rec.key(), rec);
            }
            Err(e) => {
                eprintln!(
                    "warning: {}:{}: corrupt cache line skipped ({e})",
                    path.display(),
                    lineno + 1
                );
            }
        }
    }
    out
}

/// Append records to the cache file (created along with its parent
/// directory if needed), one JSON object per line.
pub fn append_cache(path: &Path, records: &[CacheRecord]) -> anyhow::Result<()> {
    if records.is_empty() {
        return Ok(());
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating cache directory {}", parent.display()))?;
        }
    }
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening cache {}", path.display()))?;
    let mut buf = String::new();
    for rec in records {
        buf.push_str(&serde_json::to_string(rec)?);
        buf.push('\n');
    }
    file.write_all(buf.as_bytes())?;
    Ok(())
}

/// Sweep every irreducible Weil polynomial matching the config and decide,
/// for each `n` in `[2, n_max)` coprime to `p`, whether `p` is a common
/// index divisor of the `n`-division field. Rows come out in lexicographic
/// coefficient order regardless of `workers`.
pub fn survey(cfg: &SurveyConfig) -> anyhow::Result<Vec<SurveyRow>> {
    if cfg.n_max < 2 {
        bail!("n-max must be at least 2");
    }
    let mut fix = CoeffFix::new();
    for (&idx, &val) in &cfg.fix {
        fix = fix.set(idx, BigInt::from(val));
    }
    let polys = enumerate_weil(cfg.p, cfg.m, cfg.g, &fix)?;
    let coeff_lists: Vec<Vec<i64>> = polys
        .iter()
        .map(|w| {
            w.free_coeffs()
                .iter()
                .map(|c| c.to_i64().expect("enumerated coefficients fit i64"))
                .collect()
        })
        .collect();
    let cache = cfg
        .cache_path
        .as_deref()
        .map(load_cache)
        .unwrap_or_default();
    let ns: Vec<u64> = (2..cfg.n_max).filter(|n| n.gcd(&cfg.p) == 1).collect();

    // Work units are (polynomial, n) pairs; cache hits never enter the pool.
    let mut cached: Vec<(usize, u64, bool)> = Vec::new();
    let mut todo: Vec<(usize, u64)> = Vec::new();
    for (i, coeffs) in coeff_lists.iter().enumerate() {
        for &n in &ns {
            let key = (cfg.p, cfg.m, cfg.g, coeffs.clone(), n);
            match cache.get(&key) {
                Some(rec) if rec.tool_version == TOOL_VERSION => {
                    cached.push((i, n, rec.cid));
                }
                _ => todo.push((i, n)),
            }
        }
    }

    let work = |&(i, n): &(usize, u64)| -> anyhow::Result<(usize, u64, String, bool)> {
        let report = splitting_report(&polys[i], n)?;
        Ok((i, n, report.inertia_degree.to_string(), report.cid))
    };
    let run = || -> anyhow::Result<Vec<(usize, u64, String, bool)>> {
        todo.par_iter().map(work).collect()
    };
    let fresh = match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .context("building worker pool")?
            .install(run),
        None => run(),
    }?;

    // Merge verdicts in deterministic (polynomial, n) order.
    let mut verdicts: BTreeMap<(usize, u64), bool> = BTreeMap::new();
    for (i, n, cid) in cached {
        verdicts.insert((i, n), cid);
    }
    for &(i, n, _, cid) in &fresh {
        verdicts.insert((i, n), cid);
    }
    let rows = polys
        .iter()
        .enumerate()
        .map(|(i, w)| SurveyRow {
            coeffs: coeff_lists[i].clone(),
            p_rank: w.p_rank(),
            nonmonogenic_n: ns
                .iter()
                .copied()
                .filter(|&n| verdicts[&(i, n)])
                .collect(),
        })
        .collect();

    if let Some(path) = &cfg.cache_path {
        let records: Vec<CacheRecord> = fresh
            .into_iter()
            .map(|(i, n, ord, cid)| CacheRecord {
                p: cfg.p,
                m: cfg.m,
                g: cfg.g,
                coeffs: coeff_lists[i].clone(),
                n,
                ord,
                cid,
                tool_version: TOOL_VERSION.to_string(),
            })
            .collect();
        append_cache(path, &records)?;
    }
    Ok(rows)
}

/// Column labels `a_(2g-1), ..., a_g`.
pub fn coeff_labels(g: usize) -> Vec<String> {
    (g..2 * g).rev().map(|k| format!("a_{k}")).collect()
}

/// Render survey rows. JSON is a bare array (the hypothesis note travels on
/// stderr); CSV carries it as `#` comments; markdown as a caption line.
pub fn emit_survey(cfg: &SurveyConfig, rows: &[SurveyRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# survey p={} m={} g={} n_max={}",
                cfg.p, cfg.m, cfg.g, cfg.n_max
            );
            let _ = writeln!(s, "# note: {DOCUMENT_NOTE}");
            let mut header = coeff_labels(cfg.g).join(",");
            header.push_str(",p_rank,nonmono_n");
            let _ = writeln!(s, "{header}");
            for row in rows {
                let coeffs: Vec<String> = row.coeffs.iter().map(|c| c.to_string()).collect();
                let ns: Vec<String> = row.nonmonogenic_n.iter().map(|n| n.to_string()).collect();
                let _ = writeln!(s, "{},{},{}", coeffs.join(","), row.p_rank, ns.join(";"));
            }
            s
        }
        OutputFormat::Markdown => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "Survey: p = {}, m = {}, g = {}, 2 <= n < {}",
                cfg.p, cfg.m, cfg.g, cfg.n_max
            );
            let _ = writeln!(s, "Note: {DOCUMENT_NOTE}");
            let _ = writeln!(s);
            let labels = coeff_labels(cfg.g);
            let _ = writeln!(s, "| {} | p-rank | non-monogenic n |", labels.join(" | "));
            let mut sep: Vec<&str> = vec!["---:"; labels.len() + 1];
            sep.push(":---");
            let _ = writeln!(s, "| {} |", sep.join(" | "));
            for row in rows {
                let coeffs: Vec<String> = row.coeffs.iter().map(|c| c.to_string()).collect();
                let ns: Vec<String> = row.nonmonogenic_n.iter().map(|n| n.to_string()).collect();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} |",
                    coeffs.join(" | "),
                    row.p_rank,
                    ns.join(", ")
                );
            }
            s
        }
    }
}

/// Splitting data for one modulus, or the reason it was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusReport {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inertia_degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ramification_index: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Per-prime applicability of the matrix method without any hypothesis on
/// the endomorphism ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicabilityEntry {
    pub ell: u64,
    pub status: String,
}

/// Everything `analyze` reports for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub coeffs: Vec<i64>,
    pub polynomial: String,
    pub is_weil: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_irreducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_rank: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_discriminant: Option<String>,
    pub applicability: Vec<ApplicabilityEntry>,
    pub moduli: Vec<ModulusReport>,
    pub note: String,
}

/// Analyze one polynomial: Weil/irreducibility screening, p-rank, the order
/// discriminant, per-prime applicability, and a splitting report for every
/// requested modulus. A modulus sharing a factor with `p` yields an error
/// entry and the run continues; internal invariant violations abort.
pub fn analyze(p: u64, m: u32, g: usize, coeffs: &[i64], ns: &[u64]) -> anyhow::Result<AnalysisReport> {
    let free: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let w = WeilPoly::from_free_coeffs(p, m, g, &free)?;
    let mut report = AnalysisReport {
        p,
        m,
        g,
        coeffs: coeffs.to_vec(),
        polynomial: w.to_string(),
        is_weil: w.is_weil(),
        is_irreducible: None,
        p_rank: None,
        order_discriminant: None,
        applicability: Vec::new(),
        moduli: Vec::new(),
        note: format!("{HYPOTHESIS_NOTE}; {DOCUMENT_NOTE}"),
    };
    if !report.is_weil {
        return Ok(report);
    }
    let irreducible = w.is_irreducible()?;
    report.is_irreducible = Some(irreducible);
    if !irreducible {
        return Ok(report);
    }
    report.p_rank = Some(w.p_rank());
    report.order_discriminant = Some(order_discriminant(&w)?.to_string());
    let mut ells: BTreeSet<u64> = BTreeSet::new();
    for &n in ns {
        if n >= 2 && n.gcd(&p) == 1 {
            for (ell, _) in &factorize(&n.into())?.factors {
                ells.insert(ell.to_u64().expect("prime factor of a u64"));
            }
        }
    }
    for ell in ells {
        let status = guaranteed_applicable(&w, ell)?;
        report.applicability.push(ApplicabilityEntry {
            ell,
            status: status.to_string(),
        });
    }
    for &n in ns {
        match splitting_report(&w, n) {
            Ok(r) => report.moduli.push(ModulusReport {
                n,
                inertia_degree: Some(r.inertia_degree.to_string()),
                prime_count: Some(r.prime_count.to_string()),
                ramification_index: Some(r.ramification_index),
                cid: Some(r.cid),
                error: None,
            }),
            Err(e @ CoreError::Internal(_)) => return Err(e.into()),
            Err(e) => report.moduli.push(ModulusReport {
                n,
                inertia_degree: None,
                prime_count: None,
                ramification_index: None,
                cid: None,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(report)
}

/// Render an analysis report.
pub fn emit_analysis(report: &AnalysisReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# analyze p={} m={} g={} coeffs={}",
                report.p,
                report.m,
                report.g,
                report
                    .coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            );
            let _ = writeln!(s, "# polynomial: {}", report.polynomial);
            let _ = writeln!(s, "# weil: {}", report.is_weil);
            if let Some(v) = report.is_irreducible {
                let _ = writeln!(s, "# irreducible: {v}");
            }
            if let Some(v) = report.p_rank {
                let _ = writeln!(s, "# p_rank: {v}");
            }
            if let Some(v) = &report.order_discriminant {
                let _ = writeln!(s, "# order_discriminant: {v}");
            }
            for a in &report.applicability {
                let _ = writeln!(s, "# applicability ell={}: {}", a.ell, a.status);
            }
            let _ = writeln!(s, "# note: {}", report.note);
            let _ = writeln!(s, "n,inertia_degree,prime_count,ramification_index,cid,error");
            for m in &report.moduli {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    m.n,
                    m.inertia_degree.as_deref().unwrap_or(""),
                    m.prime_count.as_deref().unwrap_or(""),
                    m.ramification_index.map(|v| v.to_string()).unwrap_or_default(),
                    m.cid.map(|v| v.to_string()).unwrap_or_default(),
                    m.error.as_deref().unwrap_or("")
                );
            }
            s
        }
        OutputFormat::Markdown => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "Polynomial: {} (p = {}, m = {}, g = {})",
                report.polynomial, report.p, report.m, report.g
            );
            if !report.is_weil {
                let _ = writeln!(s, "Not a Weil polynomial: some root is off the circle |x| = sqrt(q).");
                return s;
            }
            if report.is_irreducible == Some(false) {
                let _ = writeln!(s, "Weil polynomial, but reducible; division-field analysis needs an irreducible characteristic polynomial.");
                return s;
            }
            let _ = writeln!(
                s,
                "Weil: yes. Irreducible: yes. p-rank: {}.",
                report.p_rank.unwrap_or(0)
            );
            if let Some(d) = &report.order_discriminant {
                let _ = writeln!(s, "disc(Z[pi,v]) = {d}");
            }
            for a in &report.applicability {
                let _ = writeln!(
                    s,
                    "Mod-{} reduction applicable without endomorphism-ring hypothesis: {}.",
                    a.ell, a.status
                );
            }
            let _ = writeln!(s, "Note: {}", report.note);
            let _ = writeln!(s);
            let _ = writeln!(s, "| n | inertia degree | prime count | e | common index divisor | error |");
            let _ = writeln!(s, "| ---: | ---: | ---: | ---: | :--- | :--- |");
            for m in &report.moduli {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    m.n,
                    m.inertia_degree.as_deref().unwrap_or(""),
                    m.prime_count.as_deref().unwrap_or(""),
                    m.ramification_index.map(|v| v.to_string()).unwrap_or_default(),
                    m.cid.map(|v| if v { "yes" } else { "no" }.to_string()).unwrap_or_default(),
                    m.error.as_deref().unwrap_or("")
                );
            }
            s
        }
    }
}

/// Matrix data for one polynomial: the ordered basis, the matrix of
/// Frobenius, the matrix of Verschiebung, and optionally their reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub q: u64,
    pub coeffs: Vec<i64>,
    pub polynomial: String,
    pub basis: Vec<String>,
    pub frobenius: Vec<Vec<i128>>,
    pub verschiebung: Vec<Vec<i128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius_mod: Option<Vec<Vec<u64>>>,
}

fn int_rows(m: &IntMatrix) -> anyhow::Result<Vec<Vec<i128>>> {
    m.to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| e.to_i128().context("matrix entry exceeds 128 bits"))
                .collect()
        })
        .collect()
}

/// Build the matrix report for one irreducible Weil polynomial.
pub fn matrix_report(
    p: u64,
    m: u32,
    g: usize,
    coeffs: &[i64],
    modulus: Option<u64>,
) -> anyhow::Result<MatrixReport> {
    let free: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let w = WeilPoly::from_free_coeffs(p, m, g, &free)?;
    if !w.is_weil() {
        bail!("not a Weil polynomial: some root is off the circle |x| = sqrt(q)");
    }
    if !w.is_irreducible()? {
        bail!("reducible Weil polynomial: the matrix acts on Z[pi,v], which needs f irreducible");
    }
    let sigma = frobenius_matrix(&w)?;
    let v = verschiebung_matrix(&w)?;
    let frobenius_mod = match modulus {
        Some(n) => {
            let r = reduce_mod(sigma.matrix(), n)?;
            let mut rows = Vec::with_capacity(2 * g);
            for i in 0..2 * g {
                rows.push((0..2 * g).map(|j| r.entry(i, j)).collect());
            }
            Some(rows)
        }
        None => None,
    };
    Ok(MatrixReport {
        p,
        m,
        g,
        q: w.q(),
        coeffs: coeffs.to_vec(),
        polynomial: w.to_string(),
        basis: basis(g)?,
        frobenius: int_rows(sigma.matrix())?,
        verschiebung: int_rows(&v)?,
        modulus,
        frobenius_mod,
    })
}

/// Render a matrix report.
pub fn emit_matrix(report: &MatrixReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "# polynomial: {}", report.polynomial);
            let _ = writeln!(s, "# basis: {}", report.basis.join(","));
            let _ = writeln!(s, "# frobenius");
            for row in &report.frobenius {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "{}", cells.join(","));
            }
            let _ = writeln!(s, "# verschiebung");
            for row in &report.verschiebung {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "{}", cells.join(","));
            }
            if let (Some(n), Some(rows)) = (report.modulus, &report.frobenius_mod) {
                let _ = writeln!(s, "# frobenius mod {n}");
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                    let _ = writeln!(s, "{}", cells.join(","));
                }
            }
            s
        }
        OutputFormat::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "Polynomial: {} over F_{}", report.polynomial, report.q);
            let _ = writeln!(s, "Basis of Z[pi,v]: {}", report.basis.join(", "));
            let _ = writeln!(s);
            let render = |s: &mut String, title: &str, rows: &[Vec<String>]| {
                let _ = writeln!(s, "{title}:");
                let _ = writeln!(s);
                for row in rows {
                    let _ = writeln!(s, "| {} |", row.join(" | "));
                }
                let _ = writeln!(s);
            };
            let to_str = |rows: &[Vec<i128>]| -> Vec<Vec<String>> {
                rows.iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect())
                    .collect()
            };
            render(&mut s, "Multiplication by pi", &to_str(&report.frobenius));
            render(&mut s, "Multiplication by v", &to_str(&report.verschiebung));
            if let (Some(n), Some(rows)) = (report.modulus, &report.frobenius_mod) {
                let rows: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect())
                    .collect();
                render(&mut s, &format!("Multiplication by pi mod {n}"), &rows);
            }
            s
        }
    }
}

/// A bundled expected table: fixture JSON embedded in the binary.
pub struct BundledTable {
    pub id: &'static str,
    pub source: &'static str,
}

pub const BUNDLED_TABLES: &[BundledTable] = &[
    BundledTable {
        id: "table1",
        source: include_str!("../fixtures/survey_p2_g2_n1000.json"),
    },
    BundledTable {
        id: "table2",
        source: include_str!("../fixtures/survey_p3_g2_n500.json"),
    },
    BundledTable {
        id: "table3",
        source: include_str!("../fixtures/survey_p5_g2_n500_selected.json"),
    },
    BundledTable {
        id: "table4",
        source: include_str!("../fixtures/survey_p2_g3_n200.json"),
    },
    BundledTable {
        id: "table5a",
        source: include_str!("../fixtures/survey_p3_g3_n200_diag.json"),
    },
    BundledTable {
        id: "table5b",
        source: include_str!("../fixtures/survey_p5_g3_n200_diag.json"),
    },
    BundledTable {
        id: "table6",
        source: include_str!("../fixtures/survey_p2_g4_n100_diag.json"),
    },
];

/// A parsed expected table.
#[derive(Debug, Clone, Deserialize)]
pub struct TableFixture {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub n_max: u64,
    pub fix: BTreeMap<String, i64>,
    /// When true the fixture lists only selected rows: every listed row must
    /// appear, in order, with identical data, but the survey may contain
    /// more rows.
    pub subset_only: bool,
    pub rows: Vec<SurveyRow>,
}

/// Outcome of diffing one survey against its bundled expected table.
#[derive(Debug, Clone)]
pub struct TableOutcome {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

/// Re-run the survey behind a bundled table and diff the result.
pub fn check_table(
    table: &BundledTable,
    cache_path: Option<&Path>,
    workers: Option<usize>,
) -> anyhow::Result<TableOutcome> {
    let fixture: TableFixture =
        serde_json::from_str(table.source).context("parsing bundled fixture")?;
    let mut fix = BTreeMap::new();
    for (name, &val) in &fixture.fix {
        let idx: usize = name
            .strip_prefix('a')
            .and_then(|s| s.parse().ok())
            .with_context(|| format!("bad fixture fix key {name}"))?;
        fix.insert(idx, val);
    }
    let cfg = SurveyConfig {
        p: fixture.p,
        m: fixture.m,
        g: fixture.g,
        n_max: fixture.n_max,
        fix,
        cache_path: cache_path.map(Path::to_path_buf),
        workers,
    };
    let rows = survey(&cfg)?;
    if fixture.subset_only {
        let mut cursor = 0usize;
        for expected in &fixture.rows {
            let found = rows[cursor..]
                .iter()
                .position(|r| r.coeffs == expected.coeffs)
                .map(|off| cursor + off);
            match found {
                Some(i) if &rows[i] == expected => cursor = i + 1,
                Some(i) => {
                    return Ok(TableOutcome {
                        id: table.id.to_string(),
                        pass: false,
                        detail: format!(
                            "row {:?}: expected p_rank {} n {:?}, computed p_rank {} n {:?}",
                            expected.coeffs,
                            expected.p_rank,
                            expected.nonmonogenic_n,
                            rows[i].p_rank,
                            rows[i].nonmonogenic_n
                        ),
                    })
                }
                None => {
                    return Ok(TableOutcome {
                        id: table.id.to_string(),
                        pass: false,
                        detail: format!("row {:?} missing from survey output", expected.coeffs),
                    })
                }
            }
        }
        Ok(TableOutcome {
            id: table.id.to_string(),
            pass: true,
            detail: format!(
                "{} listed rows matched among {} computed rows (subset check)",
                fixture.rows.len(),
                rows.len()
            ),
        })
    } else {
        if rows == fixture.rows {
            return Ok(TableOutcome {
                id: table.id.to_string(),
                pass: true,
                detail: format!("{} rows matched exactly", rows.len()),
            });
        }
        let detail = if rows.len() != fixture.rows.len() {
            format!(
                "row count mismatch: expected {}, computed {}",
                fixture.rows.len(),
                rows.len()
            )
        } else {
            let i = rows
                .iter()
                .zip(&fixture.rows)
                .position(|(a, b)| a != b)
                .expect("some row differs");
            format!(
                "first mismatch at row {i}: expected {:?} p_rank {} n {:?}, computed {:?} p_rank {} n {:?}",
                fixture.rows[i].coeffs,
                fixture.rows[i].p_rank,
                fixture.rows[i].nonmonogenic_n,
                rows[i].coeffs,
                rows[i].p_rank,
                rows[i].nonmonogenic_n
            )
        };
        Ok(TableOutcome {
            id: table.id.to_string(),
            pass: false,
            detail,
        })
    }
}
