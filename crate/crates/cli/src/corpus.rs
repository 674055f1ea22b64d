//! Corpus management: discover the shipped example maps, run the full
//! pipeline over each in parallel, and summarize one line per map.

use std::panic::AssertUnwindSafe;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{Map, Value};

use mdegree_core::endo::Flavor;

use crate::job::{self, OracleStatus, QswStatus};
use crate::CliError;

/// Directory precedence: explicit flag, then $MDEGREE_CORPUS_DIR, then
/// ./corpus, then the checkout-relative corpus next to the workspace root.
fn resolve_dir(cli: Option<PathBuf>) -> Result<PathBuf, CliError> {
    let dir = cli
        .or_else(|| std::env::var_os("MDEGREE_CORPUS_DIR").map(PathBuf::from))
        .or_else(|| {
            let local = PathBuf::from("corpus");
            local.is_dir().then_some(local)
        })
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"));
    if !dir.is_dir() {
        return Err(CliError::Usage(format!("corpus directory {} not found", dir.display())));
    }
    Ok(dir)
}

/// The corpus map files, sorted by file name for deterministic output.
fn entries(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|r| r.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    out.sort();
    if out.is_empty() {
        return Err(CliError::Usage(format!("no corpus maps in {}", dir.display())));
    }
    Ok(out)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "?".into())
}

/// Outcome of one corpus entry, with everything the summary line needs.
struct Entry {
    name: String,
    /// "unimodular", "isolated-zero", or "invalid" (rejected by validation).
    outcome: String,
    rank: Option<usize>,
    witt: Option<usize>,
    qsw: Option<QswStatus>,
    oracle: Option<OracleStatus>,
    witness: Option<String>,
    /// Set when the entry misbehaved; the run fails if any entry has one.
    failure: Option<String>,
}

fn run_one(path: &Path, oracle_checks: bool) -> Entry {
    let name = stem(path);
    let fail = |name: String, msg: String| Entry {
        name,
        outcome: "error".into(),
        rank: None,
        witt: None,
        qsw: None,
        oracle: None,
        witness: None,
        failure: Some(msg),
    };
    let loaded = match job::load_job(path, None) {
        Ok(j) => j,
        Err(e) => return fail(name, format!("cannot load: {e:?}")),
    };
    let name = loaded.name.clone();
    match job::run_pipeline(&loaded, oracle_checks) {
        Ok(analysis) => {
            let (outcome, rank, witt, qsw, oracle) = match &analysis.isolated {
                Some(iso) => (
                    Flavor::IsolatedZero.to_string(),
                    iso.diagonal.rank(),
                    iso.invariants.witt_index,
                    iso.qsw,
                    iso.oracle,
                ),
                None => (Flavor::Unimodular.to_string(), 0, 0, QswStatus::NotApplicable, None),
            };
            let mut failure = None;
            if let Some(expect) = &loaded.expect {
                if *expect != outcome {
                    failure = Some(format!("expected {expect}, got {outcome}"));
                }
            }
            if qsw == QswStatus::Fail {
                failure = Some("qsw check failed: anisotropic form of rank >= 2".into());
            }
            if oracle == Some(OracleStatus::Disagrees) {
                failure = Some("isotropy oracle disagreement".into());
            }
            Entry {
                name,
                outcome,
                rank: Some(rank),
                witt: Some(witt),
                qsw: Some(qsw),
                oracle,
                witness: None,
                failure,
            }
        }
        Err(CliError::InvalidEndo { witness, .. }) => {
            let failure = match loaded.expect.as_deref() {
                Some("invalid") => None,
                Some(e) => Some(format!("expected {e}, got invalid")),
                None => Some("unexpected rejection".into()),
            };
            Entry {
                name,
                outcome: "invalid".into(),
                rank: None,
                witt: None,
                qsw: None,
                oracle: None,
                witness,
                failure,
            }
        }
        Err(e) => fail(name, format!("{e:?}")),
    }
}

fn entry_json(e: &Entry) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), e.name.clone().into());
    m.insert(
        "status".into(),
        if e.failure.is_some() { "failed" } else { "ok" }.into(),
    );
    m.insert("flavor".into(), e.outcome.clone().into());
    if let Some(r) = e.rank {
        m.insert("rank".into(), r.into());
    }
    if let Some(w) = e.witt {
        m.insert("witt_index".into(), w.into());
    }
    if let Some(q) = e.qsw {
        m.insert("qsw".into(), q.label().into());
    }
    if let Some(o) = e.oracle {
        m.insert("oracle".into(), o.label().into());
    }
    if let Some(w) = &e.witness {
        m.insert("witness".into(), w.clone().into());
    }
    if let Some(f) = &e.failure {
        m.insert("message".into(), f.clone().into());
    }
    Value::Object(m)
}

fn entry_line(e: &Entry) -> String {
    let mut parts: Vec<String> = vec![e.outcome.clone()];
    if let Some(w) = &e.witness {
        parts.push(format!("witness {w}"));
    }
    if let Some(r) = e.rank {
        parts.push(format!("rank {r}"));
    }
    if let Some(w) = e.witt {
        parts.push(format!("witt {w}"));
    }
    if let Some(q) = e.qsw {
        parts.push(format!("qsw {}", q.label()));
    }
    if let Some(o) = e.oracle {
        parts.push(format!("oracle {}", o.label()));
    }
    let status = match &e.failure {
        None => "ok".to_string(),
        Some(msg) => format!("FAIL ({msg})"),
    };
    format!("{}: {}, {}", e.name, parts.join(", "), status)
}

/// `corpus run`: every map through the pipeline, in parallel, deterministic
/// output order, nonzero exit if anything misbehaves.
pub fn run(dir: Option<PathBuf>, json: bool, oracle_checks: bool) -> Result<(), CliError> {
    let dir = resolve_dir(dir)?;
    let paths = entries(&dir)?;
    let results: Vec<Entry> = paths
        .par_iter()
        .map(|p| {
            std::panic::catch_unwind(AssertUnwindSafe(|| run_one(p, oracle_checks)))
                .unwrap_or_else(|payload| {
                    let msg = payload
                        .downcast_ref::<&str>()
                        .map(|s| s.to_string())
                        .or_else(|| payload.downcast_ref::<String>().cloned())
                        .unwrap_or_else(|| "panic".into());
                    Entry {
                        name: stem(p),
                        outcome: "error".into(),
                        rank: None,
                        witt: None,
                        qsw: None,
                        oracle: None,
                        witness: None,
                        failure: Some(format!("panic: {msg}")),
                    }
                })
        })
        .collect();
    let failed: Vec<&Entry> = results.iter().filter(|e| e.failure.is_some()).collect();
    if json {
        let mut m = Map::new();
        m.insert("entries".into(), Value::Array(results.iter().map(entry_json).collect()));
        let mut totals = Map::new();
        totals.insert("count".into(), results.len().into());
        totals.insert("ok".into(), (results.len() - failed.len()).into());
        totals.insert("failed".into(), failed.len().into());
        m.insert("totals".into(), Value::Object(totals));
        println!("{}", Value::Object(m));
    } else {
        for e in &results {
            println!("{}", entry_line(e));
        }
        println!(
            "corpus: {} maps, {} ok, {} failed",
            results.len(),
            results.len() - failed.len(),
            failed.len()
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = failed.iter().map(|e| e.name.as_str()).collect();
        Err(CliError::Internal(format!("corpus failures: {}", names.join(", "))))
    }
}

/// `corpus list`: names, fields, and flavors only.
pub fn list(dir: Option<PathBuf>, json: bool) -> Result<(), CliError> {
    let dir = resolve_dir(dir)?;
    let paths = entries(&dir)?;
    let rows: Vec<(String, String, String)> = paths
        .par_iter()
        .map(|p| match job::load_job(p, None) {
            Ok(j) => {
                let field = j.field.to_string();
                let outcome = match job::validate_endo(&j) {
                    Ok(endo) => endo.flavor().to_string(),
                    Err(CliError::InvalidEndo { .. }) => "invalid".into(),
                    Err(_) => "error".into(),
                };
                (j.name, field, outcome)
            }
            Err(_) => (stem(p), "?".into(), "error".into()),
        })
        .collect();
    if json {
        let entries: Vec<Value> = rows
            .iter()
            .map(|(name, field, flavor)| {
                let mut m = Map::new();
                m.insert("name".into(), name.clone().into());
                m.insert("field".into(), field.clone().into());
                m.insert("flavor".into(), flavor.clone().into());
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("entries".into(), Value::Array(entries));
        println!("{}", Value::Object(m));
    } else {
        for (name, field, flavor) in &rows {
            println!("{name}: {field}, {flavor}");
        }
    }
    Ok(())
}
