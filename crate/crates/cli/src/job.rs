//! Job files (the JSON input format) and the analysis pipeline shared by
//! `validate`, `analyze`, and `corpus`.

use std::path::Path;

use serde::Deserialize;

use mdegree_core::bezoutian::{ekl_gram, jacobian_consistency, EklForm};
use mdegree_core::endo::{EndoCandidate, EndoError, Flavor, NullHomotopyReport, ValidatedEndo};
use mdegree_core::field::Field;
use mdegree_core::gw::{
    brute_force_isotropic_fp, diagonalize, isotropic, DiagonalForm, GwInvariants, SymForm,
};
use mdegree_core::poly::{parse_poly, MonomialOrder, Polynomial, VarSet};

use crate::CliError;

/// On-disk job shape. `name` and `expect` are optional extras used by corpus
/// entries; unknown fields are ignored.
#[derive(Deserialize)]
struct JobFile {
    field: String,
    vars: Vec<String>,
    polys: Vec<String>,
    #[serde(default)]
    options: JobOptions,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    expect: Option<String>,
}

#[derive(Deserialize, Default)]
struct JobOptions {
    #[serde(default)]
    order: Option<String>,
}

/// A parsed, shape-checked job, ready for the pipeline.
pub struct Job {
    pub name: String,
    pub field: Field,
    pub vars: Vec<String>,
    pub polys: Vec<String>,
    pub order: MonomialOrder,
    pub expect: Option<String>,
}

fn parse_order(s: &str) -> Result<MonomialOrder, CliError> {
    MonomialOrder::parse(s)
        .ok_or_else(|| CliError::Usage(format!("unknown monomial order {s:?}; use lex or degrevlex")))
}

/// Reads and shape-checks a job file. A `--order` flag overrides the file's
/// `options.order`; with neither, degrevlex.
pub fn load_job(path: &Path, cli_order: Option<&str>) -> Result<Job, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: JobFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid job file {}: {e}", path.display())))?;
    let field = Field::parse(&file.field)
        .map_err(|e| CliError::Usage(format!("bad field spec in {}: {e}", path.display())))?;
    if file.vars.is_empty() {
        return Err(CliError::Usage(format!("{}: at least one variable required", path.display())));
    }
    if file.polys.len() != file.vars.len() {
        return Err(CliError::Usage(format!(
            "{}: expected {} polynomials for {} variables, got {}",
            path.display(),
            file.vars.len(),
            file.vars.len(),
            file.polys.len()
        )));
    }
    let order = match cli_order {
        Some(s) => parse_order(s)?,
        None => match &file.options.order {
            Some(s) => parse_order(s)?,
            None => MonomialOrder::DegRevLex,
        },
    };
    let name = file.name.unwrap_or_else(|| {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "job".into())
    });
    Ok(Job { name, field, vars: file.vars, polys: file.polys, order, expect: file.expect })
}

/// Parses the job's polynomials and runs the validity check. Exit-code
/// mapping: expression or shape problems are usage errors, a genuine zero
/// away from the origin is the invalid-endomorphism outcome, and anything
/// after a successful parse that still fails is an engine bug.
pub fn validate_endo(job: &Job) -> Result<ValidatedEndo, CliError> {
    let vars = VarSet::new(job.vars.iter())
        .map_err(|e| CliError::Usage(format!("bad variable set: {e}")))?;
    let mut polys: Vec<Polynomial> = Vec::with_capacity(job.polys.len());
    for (i, src) in job.polys.iter().enumerate() {
        let p = parse_poly(src, job.field, &vars)
            .map_err(|e| CliError::Usage(format!("cannot parse polynomial {}: {e}", i + 1)))?;
        polys.push(p);
    }
    let candidate = EndoCandidate::new(polys).map_err(|e| match e {
        EndoError::Shape { .. } | EndoError::MixedContext => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.to_string()),
    })?;
    candidate.validate(job.order).map_err(|e| match e {
        EndoError::NotPuncturedEndo { ref var_name, .. } => {
            CliError::InvalidEndo { message: e.to_string(), witness: Some(var_name.clone()) }
        }
        other => CliError::Internal(other.to_string()),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum QswStatus {
    /// Rank >= 2 and the form splits off a hyperbolic plane.
    Pass,
    /// Rank >= 2 but anisotropic: the certified property failed.
    Fail,
    /// Rank <= 1; the property says nothing.
    NotApplicable,
}

impl QswStatus {
    pub fn label(&self) -> &'static str {
        match self {
            QswStatus::Pass => "pass",
            QswStatus::Fail => "fail",
            QswStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OracleStatus {
    Agrees,
    Disagrees,
    /// No exhaustive check exists for this field/rank combination.
    Unavailable,
}

impl OracleStatus {
    pub fn label(&self) -> &'static str {
        match self {
            OracleStatus::Agrees => "agree",
            OracleStatus::Disagrees => "disagree",
            OracleStatus::Unavailable => "unavailable",
        }
    }
}

/// Everything the isolated-zero branch of the pipeline produces.
pub struct IsolatedReport {
    pub powers: Vec<u32>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub ekl: EklForm,
    pub diagonal: DiagonalForm,
    pub invariants: GwInvariants,
    pub jacobian_ok: bool,
    pub qsw: QswStatus,
    pub oracle: Option<OracleStatus>,
}

/// Pipeline output: exactly one of `isolated` / `null` is populated,
/// according to the flavor.
pub struct Analysis {
    pub endo: ValidatedEndo,
    pub isolated: Option<IsolatedReport>,
    pub null: Option<NullHomotopyReport>,
}

impl Analysis {
    /// The degree class as a diagonal form; empty (rank 0) for maps that
    /// miss the origin.
    pub fn degree_diagonal(&self) -> DiagonalForm {
        match &self.isolated {
            Some(iso) => iso.diagonal.clone(),
            None => DiagonalForm::from_ints(self.endo.field(), &[]),
        }
    }
}

pub fn run_pipeline(job: &Job, oracle_checks: bool) -> Result<Analysis, CliError> {
    let endo = validate_endo(job)?;
    if endo.flavor() == Flavor::Unimodular {
        let null = endo
            .nullhomotopy_report()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        return Ok(Analysis { endo, isolated: None, null: Some(null) });
    }

    let powers = endo
        .power_witnesses()
        .map_err(|e| CliError::Internal(format!("power witness extraction failed: {e}")))?;
    let ekl = ekl_gram(&endo).map_err(|e| CliError::Internal(format!("degree form: {e}")))?;
    let algebra = ekl.algebra();
    let dim = algebra.dim();
    let basis: Vec<String> = algebra.basis().iter().map(|m| m.render(algebra.vars())).collect();

    let jacobian_ok = jacobian_consistency(&endo, &ekl)
        .map_err(|e| CliError::Internal(format!("jacobian cross-check: {e}")))?;
    if !jacobian_ok {
        return Err(CliError::Internal(
            "jacobian cross-check failed: the divided-difference matrix disagrees with the \
             jacobian determinant on the diagonal"
                .into(),
        ));
    }

    let sym = SymForm::from_ekl(&ekl);
    let diagonal =
        diagonalize(&sym).map_err(|e| CliError::Internal(format!("degree form: {e}")))?;
    let invariants = GwInvariants::of(&diagonal);

    let qsw = if diagonal.rank() >= 2 {
        if invariants.witt_index >= 1 {
            QswStatus::Pass
        } else {
            QswStatus::Fail
        }
    } else {
        QswStatus::NotApplicable
    };

    let oracle = if oracle_checks {
        Some(match brute_force_isotropic_fp(&diagonal) {
            Ok(found) => {
                if found == isotropic(&diagonal) {
                    OracleStatus::Agrees
                } else {
                    OracleStatus::Disagrees
                }
            }
            Err(_) => OracleStatus::Unavailable,
        })
    } else {
        None
    };

    Ok(Analysis {
        endo,
        isolated: Some(IsolatedReport {
            powers,
            dim,
            basis,
            ekl,
            diagonal,
            invariants,
            jacobian_ok,
            qsw,
            oracle,
        }),
        null: None,
    })
}
