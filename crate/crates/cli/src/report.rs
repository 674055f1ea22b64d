//! Report rendering: canonical JSON (stable key order, scalars as strings)
//! and a human text mode, plus the `gw` subcommand which classifies explicit
//! forms without a map.

use serde_json::{Map, Value};

use mdegree_core::cite::{self, Citation};
use mdegree_core::endo::{Flavor, ValidatedEndo};
use mdegree_core::field::{Field, Scalar};
use mdegree_core::gw::{
    diagonalize, ekl_obstruction, gw_equal, DiagonalForm, GwInvariants, ObstructionReport,
    ObstructionVerdict, SymForm,
};

use crate::job::{Analysis, Job, QswStatus};
use crate::CliError;

fn obj(entries: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

fn scalar_strings(scalars: &[Scalar]) -> Value {
    Value::Array(scalars.iter().map(|s| Value::String(s.to_string())).collect())
}

fn string_array(items: &[String]) -> Value {
    Value::Array(items.iter().map(|s| Value::String(s.clone())).collect())
}

fn gram_json(gram: &[Vec<Scalar>]) -> Value {
    Value::Array(gram.iter().map(|row| scalar_strings(row)).collect())
}

fn citations_json(cits: &[Citation]) -> Value {
    Value::Array(
        cits.iter()
            .map(|c| obj(vec![("tag", c.tag.into()), ("statement", c.statement.into())]))
            .collect(),
    )
}

fn invariants_fields(inv: &GwInvariants) -> Vec<(&'static str, Value)> {
    let mut entries: Vec<(&'static str, Value)> = vec![
        ("rank", inv.rank.into()),
        ("disc", inv.disc.to_string().into()),
    ];
    if let Some(sig) = inv.signature {
        entries.push(("signature", sig.into()));
    }
    if let Some(hasse) = &inv.hasse {
        let mut m = Map::new();
        for (place, eps) in hasse {
            m.insert(place.to_string(), (*eps).into());
        }
        entries.push(("hasse", Value::Object(m)));
    }
    entries.push(("witt_index", inv.witt_index.into()));
    entries.push(("anisotropic", scalar_strings(inv.anisotropic.entries())));
    entries
}

fn invariants_json(inv: &GwInvariants) -> Value {
    obj(invariants_fields(inv))
}

fn obstruction_json(rep: &ObstructionReport, target: &DiagonalForm, matches: Option<bool>) -> Value {
    let mut entries: Vec<(&str, Value)> = vec![
        ("target", scalar_strings(target.entries())),
        ("rank", rep.rank.into()),
        ("witt_index", rep.witt_index.into()),
        ("minus_one_is_square", rep.minus_one_is_square.into()),
        ("obstructed", matches!(rep.verdict, ObstructionVerdict::Obstructed).into()),
        ("verdict", rep.verdict.to_string().into()),
    ];
    if let Some(m) = matches {
        entries.push(("matches_degree", m.into()));
    }
    obj(entries)
}

fn rendered_polys(endo: &ValidatedEndo) -> Vec<String> {
    endo.polys().iter().map(|p| p.render()).collect()
}

fn rendered_gb(endo: &ValidatedEndo) -> Vec<String> {
    endo.gb().polys().iter().map(|p| p.render()).collect()
}

fn powers_json(endo: &ValidatedEndo, powers: &[u32]) -> Value {
    let mut m = Map::new();
    for (i, d) in powers.iter().enumerate() {
        m.insert(endo.vars().name(i).to_string(), (*d).into());
    }
    Value::Object(m)
}

fn map_header(endo: &ValidatedEndo) -> String {
    format!(
        "map: ({}) over {}, order {}",
        rendered_polys(endo).join(", "),
        endo.field(),
        endo.order()
    )
}

fn emit(value: Value) {
    println!("{value}");
}

/// The `validate` report: flavor plus per-variable witnesses, nothing else.
pub fn print_validation(job: &Job, endo: &ValidatedEndo, json: bool) -> Result<(), CliError> {
    let powers = endo
        .power_witnesses()
        .map_err(|e| CliError::Internal(format!("power witness extraction failed: {e}")))?;
    if json {
        let mut entries: Vec<(&str, Value)> = vec![
            ("field", endo.field().to_string().into()),
            ("vars", string_array(&job.vars)),
            ("polys", string_array(&rendered_polys(endo))),
            ("order", endo.order().to_string().into()),
            ("valid", true.into()),
            ("flavor", endo.flavor().to_string().into()),
        ];
        let mut witnesses = Map::new();
        for (i, d) in powers.iter().enumerate() {
            witnesses.insert(
                endo.vars().name(i).to_string(),
                obj(vec![
                    ("radical", endo.radical_witnesses()[i].into()),
                    ("power", (*d).into()),
                ]),
            );
        }
        entries.push(("witnesses", Value::Object(witnesses)));
        if endo.single_variable_warning() {
            entries.push((
                "warnings",
                Value::Array(vec![Value::String(
                    "single variable: punctured line results are degenerate".into(),
                )]),
            ));
        }
        entries.push(("citations", citations_json(&[cite::NULLSTELLENSATZ_RADICAL])));
        emit(obj(entries));
    } else {
        println!("{}", map_header(endo));
        println!("valid: yes");
        println!("flavor: {}", endo.flavor());
        let witness_text: Vec<String> = powers
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{}: radical ok, power {}", endo.vars().name(i), d))
            .collect();
        println!("witnesses: {}", witness_text.join("; "));
        if endo.single_variable_warning() {
            println!("warning: single variable; punctured line results are degenerate");
        }
    }
    Ok(())
}

fn parse_target(field: Field, text: &str) -> Result<DiagonalForm, CliError> {
    DiagonalForm::parse(field, text)
        .map_err(|e| CliError::Usage(format!("bad --target {text:?}: {e}")))
}

/// The full `analyze` report.
pub fn print_analysis(
    job: &Job,
    analysis: &Analysis,
    target_text: &str,
    json: bool,
) -> Result<(), CliError> {
    let endo = &analysis.endo;
    let target = parse_target(endo.field(), target_text)?;
    let obstruction = ekl_obstruction(&target);
    let degree = analysis.degree_diagonal();
    let matches = gw_equal(&degree, &target)
        .map_err(|e| CliError::Internal(format!("target comparison: {e}")))?;

    let citations: Vec<Citation> = match endo.flavor() {
        Flavor::Unimodular => vec![cite::NULLSTELLENSATZ_RADICAL, cite::UNIMODULAR_NULL_HOMOTOPY],
        Flavor::IsolatedZero => vec![
            cite::NULLSTELLENSATZ_RADICAL,
            cite::EKL_LOCAL_DEGREE,
            cite::MOTIVIC_DEGREE_CLASSIFICATION,
            cite::LOCAL_DEGREE_HYPERBOLIC_SUMMAND,
        ],
    };

    if json {
        let mut entries: Vec<(&str, Value)> = vec![
            ("field", endo.field().to_string().into()),
            ("vars", string_array(&job.vars)),
            ("polys", string_array(&rendered_polys(endo))),
            ("order", endo.order().to_string().into()),
            ("valid", true.into()),
            ("flavor", endo.flavor().to_string().into()),
            ("groebner", string_array(&rendered_gb(endo))),
        ];
        match (&analysis.isolated, &analysis.null) {
            (Some(iso), None) => {
                entries.push((
                    "local_algebra",
                    obj(vec![
                        ("dim", iso.dim.into()),
                        ("basis", string_array(&iso.basis)),
                        ("powers", powers_json(endo, &iso.powers)),
                    ]),
                ));
                let mut form_entries: Vec<(&str, Value)> = vec![
                    ("gram", gram_json(iso.ekl.gram())),
                    ("diagonal", scalar_strings(iso.diagonal.entries())),
                ];
                form_entries.extend(invariants_fields(&iso.invariants));
                entries.push(("degree_form", obj(form_entries)));
                entries.push(("jacobian_check", iso.jacobian_ok.into()));
                entries.push(("qsw_check", iso.qsw.label().into()));
                if let Some(oracle) = iso.oracle {
                    entries.push(("oracle_check", oracle.label().into()));
                }
            }
            (None, Some(null)) => {
                entries.push((
                    "null_homotopy",
                    obj(vec![
                        ("verdict", null.verdict.into()),
                        ("extends_over_origin", null.extends_over_origin.into()),
                        ("degree_rank", null.degree_rank.into()),
                    ]),
                ));
                entries.push(("qsw_check", QswStatus::NotApplicable.label().into()));
            }
            _ => unreachable!("pipeline populates exactly one branch"),
        }
        entries.push(("obstruction", obstruction_json(&obstruction, &target, Some(matches))));
        entries.push(("citations", citations_json(&citations)));
        emit(obj(entries));
    } else {
        println!("{}", map_header(endo));
        println!("flavor: {}", endo.flavor());
        println!("groebner basis: {}", rendered_gb(endo).join(", "));
        match (&analysis.isolated, &analysis.null) {
            (Some(iso), None) => {
                println!("local algebra: dim {}, basis {{{}}}", iso.dim, iso.basis.join(", "));
                let powers_text: Vec<String> = iso
                    .powers
                    .iter()
                    .enumerate()
                    .map(|(i, d)| format!("d_{} = {}", endo.vars().name(i), d))
                    .collect();
                println!("power witnesses: {}", powers_text.join(", "));
                println!("degree form gram:");
                for row in iso.ekl.gram() {
                    let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                    println!("  [{}]", cells.join(", "));
                }
                println!("diagonal: {}", iso.diagonal);
                print_invariants_text(&iso.invariants);
                println!("jacobian check: {}", if iso.jacobian_ok { "pass" } else { "fail" });
                println!("qsw check: {}", iso.qsw.label());
                if let Some(oracle) = iso.oracle {
                    println!("isotropy oracle: {}", oracle.label());
                }
            }
            (None, Some(null)) => {
                println!(
                    "null homotopy: {} (extends over origin: {}; degree form rank {})",
                    null.verdict, null.extends_over_origin, null.degree_rank
                );
            }
            _ => unreachable!("pipeline populates exactly one branch"),
        }
        println!(
            "obstruction target {}: {} (rank {}, witt index {})",
            target, obstruction.verdict, obstruction.rank, obstruction.witt_index
        );
        if obstruction.minus_one_is_square {
            println!("  note: -1 is a square in {}", endo.field());
        }
        println!("degree class matches target: {}", if matches { "yes" } else { "no" });
        println!("citations:");
        for c in &citations {
            println!("  {c}");
        }
    }
    Ok(())
}

fn print_invariants_text(inv: &GwInvariants) {
    let mut line = format!("rank {}, disc {}", inv.rank, inv.disc);
    if let Some(sig) = inv.signature {
        line.push_str(&format!(", signature {sig}"));
    }
    line.push_str(&format!(", witt index {}", inv.witt_index));
    println!("{line}");
    if let Some(hasse) = &inv.hasse {
        let cells: Vec<String> =
            hasse.iter().map(|(v, e)| format!("{v}:{}", if *e > 0 { "+1" } else { "-1" })).collect();
        println!("hasse: {}", cells.join(" "));
    }
    if inv.anisotropic.rank() > 0 {
        println!("anisotropic part: {}", inv.anisotropic);
    } else {
        println!("anisotropic part: none (split)");
    }
}

fn parse_gram(field: Field, text: &str) -> Result<Vec<Vec<Scalar>>, CliError> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("bad --gram: {e}")))?;
    let mut gram = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(row.len());
        for cell in row {
            let s = match cell {
                Value::Number(n) => {
                    let i = n
                        .as_i64()
                        .ok_or_else(|| CliError::Usage(format!("bad --gram entry {n}")))?;
                    field.from_int(i)
                }
                Value::String(s) => field
                    .parse_scalar(&s)
                    .map_err(|e| CliError::Usage(format!("bad --gram entry {s:?}: {e}")))?,
                other => return Err(CliError::Usage(format!("bad --gram entry {other}"))),
            };
            out.push(s);
        }
        gram.push(out);
    }
    Ok(gram)
}

/// The `gw` subcommand: classify an explicit diagonal form or Gram matrix
/// and report whether the class is realizable as a local degree.
pub fn run_gw(
    field_text: &str,
    form: Option<String>,
    gram: Option<String>,
    json: bool,
) -> Result<(), CliError> {
    let field = Field::parse(field_text)
        .map_err(|e| CliError::Usage(format!("bad field spec {field_text:?}: {e}")))?;
    let (input_json, diag) = match (form, gram) {
        (Some(text), None) => {
            let d = DiagonalForm::parse(field, &text)
                .map_err(|e| CliError::Usage(format!("bad --form {text:?}: {e}")))?;
            (obj(vec![("diagonal", scalar_strings(d.entries()))]), d)
        }
        (None, Some(text)) => {
            let gram = parse_gram(field, &text)?;
            let sym = SymForm::new(field, gram)
                .map_err(|e| CliError::Usage(format!("bad --gram: {e}")))?;
            let d = diagonalize(&sym)
                .map_err(|e| CliError::Usage(format!("cannot diagonalize --gram: {e}")))?;
            (obj(vec![("gram", gram_json(sym.gram()))]), d)
        }
        (None, None) => {
            return Err(CliError::Usage("provide --form or --gram".into()));
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with forbids this"),
    };
    let invariants = GwInvariants::of(&diag);
    let obstruction = ekl_obstruction(&diag);
    if json {
        emit(obj(vec![
            ("field", field.to_string().into()),
            ("input", input_json),
            ("diagonal", scalar_strings(diag.entries())),
            ("invariants", invariants_json(&invariants)),
            ("obstruction", obstruction_json(&obstruction, &diag, None)),
            ("citations", citations_json(&[cite::LOCAL_DEGREE_HYPERBOLIC_SUMMAND])),
        ]));
    } else {
        println!("form {} over {}", diag, field);
        print_invariants_text(&invariants);
        println!("local degree realizability: {}", obstruction.verdict);
        if obstruction.minus_one_is_square {
            println!("  note: -1 is a square in {field}");
        }
    }
    Ok(())
}
