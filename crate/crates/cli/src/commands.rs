//! The subcommands. Each returns a report (and possibly files to write);
//! [`run`] turns failures into exit codes.

use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use koszulkit_core::algebra::GradedAlgebra;
use koszulkit_core::duality::make_context;
use koszulkit_core::functors::{standard_testset, verify_idempotent_square, verify_square, WallDatum};
use koszulkit_core::koszul::{ext_algebra, is_koszul, quadratic_dual_with_bound, same_quadratic_presentation, Verdict};
use koszulkit_core::library;
use koszulkit_core::modules::{projective_module, simple_module, ComplexOfModules};
use koszulkit_core::testobjects::{seeded_complexes, DEFAULT_SEED};

use crate::formats::{load_algebra, parse_json, read_input, AlgebraSpec, ComplexSpec, WallSpec};
use crate::report::{render, table_json, Report};
use crate::{Cli, Command, ExamplesAction, Failure};

/// What a command printed and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs a parsed command line, writing any requested files.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok((report, code)) => Outcome {
            stdout: render(&report),
            stderr: String::new(),
            code,
        },
        Err(f) => {
            let stdout = match &f {
                Failure::Invalid(msg) => render(&json!({
                    "format_version": crate::formats::FORMAT_VERSION,
                    "command": command_name(&cli.command),
                    "verdict": "invalid",
                    "error": msg,
                })),
                Failure::Parse(_) => String::new(),
            };
            Outcome {
                stdout,
                stderr: format!("koszulkit: {f}\n"),
                code: f.exit_code(),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Koszul { .. } => "koszul",
        Command::Dual { .. } => "dual",
        Command::Dualize { .. } => "dualize",
        Command::VerifySquare { .. } => "verify-square",
        Command::Examples { .. } => "examples",
    }
}

fn invalid(e: koszulkit_core::Error) -> Failure {
    Failure::Invalid(e.to_string())
}

fn write_file(path: &FsPath, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn dispatch(c: &Command) -> Result<(Value, i32), Failure> {
    match c {
        Command::Check { algebra } => check(algebra),
        Command::Koszul { algebra, bound } => koszul(algebra, *bound),
        Command::Dual { algebra, bound, out } => dual(algebra, *bound, out.as_deref()),
        Command::Dualize {
            algebra,
            complex,
            object,
            bound,
        } => dualize(algebra, complex.as_deref(), object.as_deref(), *bound),
        Command::VerifySquare {
            wall,
            testset,
            seed,
            bound,
        } => verify(wall, testset, *seed, *bound),
        Command::Examples { action } => examples(action),
    }
}

fn path_arg(p: &FsPath) -> Value {
    json!(p.display().to_string())
}

fn algebra_summary(a: &GradedAlgebra) -> Value {
    json!({
        "vertices": a.vertices(),
        "dims": a.dims_by_degree(),
        "dim": a.dim(),
        "degree_bound": a.degree_bound(),
        "truncated": a.truncated(),
    })
}

fn check(path: &FsPath) -> Result<(Value, i32), Failure> {
    let input = read_input(path)?;
    let a = load_algebra(&input)?;
    a.validate().map_err(invalid)?;
    let mut r = Report::new("check", json!({ "algebra": path_arg(path) }), &[input]);
    r.set("verdict", "ok").set("algebra", algebra_summary(&a));
    Ok((r.into_value(), 0))
}

fn koszul(path: &FsPath, bound: usize) -> Result<(Value, i32), Failure> {
    let input = read_input(path)?;
    let a = load_algebra(&input)?;
    let cert = is_koszul(&a, bound);
    let verdict = match cert.verdict {
        Verdict::KoszulWithinBound => json!("koszul-within-bound"),
        Verdict::FailedAt { degree, internal } => json!({
            "not-koszul": { "homological_degree": degree, "internal_degree": internal }
        }),
    };
    let names = a.vertices();
    let generators: Vec<Value> = cert
        .table
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().map(move |&(v, t, m)| json!([i, names[v], t, m])))
        .collect();
    let cross_check = match (ext_algebra(&a, bound), quadratic_dual_with_bound(&a, bound as u32)) {
        (Ok(ext), Ok(qd)) => json!(if same_quadratic_presentation(&ext.algebra, &qd) {
            "agrees"
        } else {
            "differs"
        }),
        (Err(e), _) | (_, Err(e)) => json!({ "not-applicable": e.to_string() }),
    };
    let mut r = Report::new("koszul", json!({ "algebra": path_arg(path), "bound": bound }), &[input]);
    r.set("verdict", verdict)
        .set("certificate", json!({
            "length": cert.length,
            "generators": generators,
            "truncated": cert.truncated,
        }))
        .set("ext_dims", cert.multiplicities())
        .set("quadratic_dual", cross_check);
    Ok((r.into_value(), 0))
}

fn dual(path: &FsPath, bound: usize, out: Option<&FsPath>) -> Result<(Value, i32), Failure> {
    let input = read_input(path)?;
    let a = load_algebra(&input)?;
    let ext = ext_algebra(&a, bound).map_err(invalid)?;
    let spec = AlgebraSpec::from_algebra(&ext.algebra).ok_or_else(|| Failure::Invalid("dual carries no presentation".into()))?;
    let quadratic = quadratic_dual_with_bound(&a, bound as u32)
        .map(|qd| json!(same_quadratic_presentation(&ext.algebra, &qd)))
        .unwrap_or(Value::Null);
    if let Some(out) = out {
        write_file(out, &render(&serde_json::to_value(&spec).expect("spec serializes")))?;
    }
    let mut r = Report::new(
        "dual",
        json!({ "algebra": path_arg(path), "bound": bound, "out": out.map(path_arg) }),
        &[input],
    );
    r.set("verdict", "ok")
        .set("dual", algebra_summary(&ext.algebra))
        .set("ext_dims", ext.dims_by_degree())
        .set("ext_truncated", ext.truncated)
        .set("matches_quadratic_dual", quadratic)
        .set("presentation", serde_json::to_value(&spec).expect("spec serializes"));
    Ok((r.into_value(), 0))
}

/// `simple:NAME` or `projective:NAME`, as a complex in degree 0.
fn standard_object(a: &Arc<GradedAlgebra>, id: &str) -> Result<ComplexOfModules, Failure> {
    let (kind, name) = id
        .split_once(':')
        .ok_or_else(|| Failure::Parse(format!("object `{id}`: expected KIND:VERTEX")))?;
    let v = a.vertex(name).map_err(|e| Failure::Parse(e.to_string()))?;
    let m = match kind {
        "simple" => simple_module(a, v),
        "projective" => projective_module(a, v, 0),
        _ => return Err(Failure::Parse(format!("object kind `{kind}`: expected simple or projective"))),
    }
    .map_err(invalid)?;
    Ok(ComplexOfModules::single(m, 0))
}

fn dualize(path: &FsPath, complex: Option<&FsPath>, object: Option<&str>, bound: usize) -> Result<(Value, i32), Failure> {
    let input = read_input(path)?;
    let a = load_algebra(&input)?;
    let mut inputs = vec![input];
    let m = match (complex, object) {
        (Some(p), _) => {
            let c = read_input(p)?;
            let spec: ComplexSpec = parse_json(&c)?;
            inputs.push(c);
            spec.build(&a)?
        }
        (None, Some(id)) => standard_object(&a, id)?,
        (None, None) => return Err(Failure::Parse("one of --complex or --object is required".into())),
    };
    let ctx = make_context(&a, bound).map_err(invalid)?;
    let d = ctx.koszul_duality(&m).map_err(invalid)?;
    let mut r = Report::new(
        "dualize",
        json!({
            "algebra": path_arg(path),
            "complex": complex.map(path_arg),
            "object": object,
            "bound": bound,
        }),
        &inputs,
    );
    r.set("verdict", "ok")
        .set("input_table", table_json(&m.cohomology_table(), a.vertices()))
        .set("table", table_json(&d.table, ctx.dual.vertices()))
        .set("cohomology_dim", d.cohomology.dim())
        .set("strict_model", d.strict.is_ok())
        .set("truncated", ctx.truncated);
    Ok((r.into_value(), 0))
}

/// Parses a comma-separated test-set description into objects over the
/// regular algebra of `w`.
pub fn build_testset(w: &WallDatum, spec: &str, seed: u64) -> Result<Vec<(String, ComplexOfModules)>, Failure> {
    let standard = standard_testset(w).map_err(invalid)?;
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim) {
        match part {
            "simples" => out.extend(standard.iter().filter(|(id, _)| id.starts_with("simple:")).cloned()),
            "projectives" => out.extend(standard.iter().filter(|(id, _)| id.starts_with("projective:")).cloned()),
            _ => {
                let n = part
                    .strip_prefix("seeded:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| Failure::Parse(format!("testset `{part}`: expected simples, projectives or seeded:N")))?;
                out.extend(seeded_complexes(w.regular(), seed, n));
            }
        }
    }
    Ok(out)
}

fn verify(path: &FsPath, testset: &str, seed: Option<u64>, bound: usize) -> Result<(Value, i32), Failure> {
    let input = read_input(path)?;
    let spec: WallSpec = parse_json(&input)?;
    let mut inputs = vec![input];
    let base = path.parent().map(FsPath::to_path_buf).unwrap_or_default();
    let w = spec.load(&base, &mut inputs)?;
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let objects = build_testset(&w, testset, seed)?;
    let regular = make_context(w.regular(), bound).map_err(invalid)?;
    let singular = make_context(w.singular(), bound).map_err(invalid)?;
    let square = verify_idempotent_square(&regular, &w).map_err(invalid)?;
    let report = verify_square(&regular, &singular, &w, &objects).map_err(invalid)?;
    let names = w.regular().vertices();
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "agrees": e.agrees,
                "via_translation": table_json(&e.via_translation, names),
                "via_duality": table_json(&e.via_duality, names),
                "note": e.note,
            })
        })
        .collect();
    let positive = report.all_agree() && square.holds();
    let mut r = Report::new(
        "verify-square",
        json!({ "wall": path_arg(path), "testset": testset, "seed": seed, "bound": bound }),
        &inputs,
    );
    r.set("verdict", if positive { "all-positive" } else { "negative" })
        .set("seed", seed)
        .set("agreeing", report.agreeing())
        .set("objects", report.entries.len())
        .set("idempotent_square", json!({
            "holds": square.holds(),
            "surjective": square.surjective,
            "target_dim": square.target_dim,
            "kernel_dim": square.kernel_dim,
            "kernel_is_ideal": square.kernel_is_ideal,
            "quotient_dims": square.quotient_dims,
            "parabolic_dims": square.parabolic_dims,
            "quotient_matches": square.quotient_matches,
        }))
        .set("entries", entries)
        .set("truncated", regular.truncated || singular.truncated);
    Ok((r.into_value(), if positive { 0 } else { 1 }))
}

/// A built-in example as the JSON document `examples emit` writes.
pub fn example_document(name: &str) -> Result<Value, Failure> {
    let algebra = |a: GradedAlgebra| serde_json::to_value(AlgebraSpec::from_algebra(&a).expect("library algebras are presented"));
    let v = match name {
        "semisimple-2" => algebra(library::semisimple_two()),
        "dual-numbers" => algebra(library::dual_numbers(6)),
        "sl2-principal-block" => algebra(library::sl2_block()),
        "sl2-wall" => serde_json::to_value(WallSpec::from_datum(&library::sl2_wall()).expect("library algebras are presented")),
        _ => return Err(Failure::Parse(format!("unknown example `{name}`; try `examples list`"))),
    };
    Ok(v.expect("specs serialize"))
}

fn examples(action: &ExamplesAction) -> Result<(Value, i32), Failure> {
    match action {
        ExamplesAction::List => {
            let mut r = Report::new("examples", json!({ "action": "list" }), &[]);
            r.set("verdict", "ok").set("examples", library::NAMES.to_vec());
            Ok((r.into_value(), 0))
        }
        ExamplesAction::Emit { name, out } => {
            let doc = example_document(name)?;
            match out {
                None => Ok((doc, 0)),
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| Failure::Invalid(format!("{}: {e}", dir.display())))?;
                    let file: PathBuf = dir.join(format!("{name}.json"));
                    write_file(&file, &render(&doc))?;
                    let mut r = Report::new("examples", json!({ "action": "emit", "name": name, "out": path_arg(dir) }), &[]);
                    r.set("verdict", "ok").set("written", path_arg(&file));
                    Ok((r.into_value(), 0))
                }
            }
        }
    }
}
