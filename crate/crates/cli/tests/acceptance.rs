//! Acceptance run: one pass/fail line per criterion, exact arithmetic
//! throughout. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use koszulkit_core::algebra::GradedAlgebra;
use koszulkit_core::dg::{BigradedTable, DGMap, DGModule};
use koszulkit_core::duality::{linear_complex, make_context, Certified, DualityContext};
use koszulkit_core::functors::{standard_testset, verify_idempotent_square, verify_square};
use koszulkit_core::koszul::{ext_algebra, is_koszul, quadratic_dual, same_quadratic_presentation};
use koszulkit_core::library;
use koszulkit_core::modules::{all_simples, projective_module, simple_module, ComplexOfModules};
use koszulkit_core::testobjects::{seeded_complexes, DEFAULT_SEED};

const BOUND: usize = 6;
const SEEDED: usize = 20;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sl2() -> Arc<GradedAlgebra> {
    Arc::new(library::sl2_block())
}

fn context(a: &Arc<GradedAlgebra>) -> DualityContext {
    make_context(a, BOUND).expect("Koszul context")
}

/// Dimensions by degree of a path algebra modulo monomial relations,
/// by enumerating composable arrow words (left to right) that avoid every
/// forbidden subword.
fn monomial_path_dims(vertices: usize, arrows: &[(&str, usize, usize)], forbidden: &[[&str; 2]]) -> Vec<usize> {
    let mut dims = vec![vertices];
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|i| vec![i]).collect();
    while !layer.is_empty() {
        dims.push(layer.len());
        let mut next = Vec::new();
        for w in &layer {
            let last = *w.last().expect("nonempty word");
            for (j, &(label, source, _)) in arrows.iter().enumerate() {
                let pair = [arrows[last].0, label];
                if arrows[last].2 == source && !forbidden.contains(&pair) {
                    let mut v = w.clone();
                    v.push(j);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    dims
}

fn sign_rules() -> Outcome {
    let mut algebras = 0;
    let mut modules = 0;
    for a in [sl2(), Arc::new(library::dual_numbers(4)), Arc::new(library::semisimple_two())] {
        let ctx = make_context(&a, 4).map_err(|e| format!("context: {e}"))?;
        for dg in [ctx.e(), ctx.base(), &ctx.dual_dg] {
            dg.validate().map_err(|e| format!("DG algebra: {e}"))?;
            algebras += 1;
        }
        ctx.kernel.validate().map_err(|e| format!("kernel bimodule: {e}"))?;
        let mut corpus: Vec<DGModule> = vec![ctx.free().module];
        for w in 0..a.vertex_count() {
            let g = ctx.generator(w).map_err(|e| e.to_string())?;
            corpus.push(ctx.tensor_back(&g).map_err(|e| e.to_string())?.module);
            corpus.push(g.shift_by(1).twist(-1).module.clone());
            let id = DGMap::identity(&g.module);
            corpus.push(Certified::cone(&id, &g, &g).map_err(|e| e.to_string())?.module);
            corpus.push(g.module);
        }
        for (_, m) in seeded_complexes(&a, DEFAULT_SEED, 8) {
            corpus.push(ctx.rhom(&m).map_err(|e| e.to_string())?.module);
            corpus.push(DGModule::from_complex(&m, ctx.base().clone()).map_err(|e| e.to_string())?);
            if let Ok(g) = linear_complex(&ctx, &m) {
                corpus.push(ctx.totalize(&g).map_err(|e| e.to_string())?);
            }
        }
        for (_, p) in seeded_complexes(&ctx.dual, DEFAULT_SEED, 8) {
            corpus.push(ctx.totalize(&p).map_err(|e| e.to_string())?);
        }
        for m in &corpus {
            m.validate().map_err(|e| format!("DG module: {e}"))?;
        }
        modules += corpus.len();
    }
    Ok(format!("{algebras} DG algebras, 3 DG bimodules, {modules} DG modules"))
}

fn sl2_koszul_dual() -> Outcome {
    let a = sl2();
    ensure(is_koszul(&a, BOUND).is_koszul(), || "is_koszul negative".into())?;
    // Independent oracle: a: e→s, b: s→e, ab = 0.
    let oracle_a = monomial_path_dims(2, &[("a", 0, 1), ("b", 1, 0)], &[["a", "b"]]);
    ensure(a.dims_by_degree() == oracle_a, || format!("A dims {:?} vs oracle {oracle_a:?}", a.dims_by_degree()))?;
    // Hand-derived dual: the complement of ab in span{ab, ba} is ba, whose
    // dual path is a*·b*: a*: s→e, b*: e→s, a*b* = 0.
    let oracle_dual = monomial_path_dims(2, &[("a*", 1, 0), ("b*", 0, 1)], &[["a*", "b*"]]);
    let ext = ext_algebra(&a, BOUND).map_err(|e| e.to_string())?;
    let dims = ext.dims_by_degree();
    ensure(dims == vec![2, 2, 1] && dims == oracle_dual, || format!("Ext dims {dims:?}, oracle {oracle_dual:?}"))?;
    let total: usize = dims.iter().sum();
    ensure(total == 5, || format!("total dimension {total}"))?;
    let qd = quadratic_dual(&a).map_err(|e| e.to_string())?;
    ensure(same_quadratic_presentation(&ext.algebra, &qd), || "Ext algebra differs from quadratic dual".into())?;
    let rel: Vec<Vec<String>> = qd
        .presentation()
        .expect("presented")
        .relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .flat_map(|(_, p)| p.arrows.iter().map(|&i| qd.presentation().unwrap().quiver.arrows[i].label.clone()))
                .collect()
        })
        .collect();
    ensure(rel == vec![vec!["a*".to_string(), "b*".to_string()]], || format!("dual relations {rel:?}"))?;
    let double = ext_algebra(&Arc::new(ext.algebra.clone()), BOUND).map_err(|e| e.to_string())?;
    ensure(double.dims_by_degree() == a.dims_by_degree(), || {
        format!("double dual dims {:?}", double.dims_by_degree())
    })?;
    Ok(format!("Ext dims {dims:?} (total {total}), double dual {:?}", double.dims_by_degree()))
}

fn dual_numbers() -> Outcome {
    let bound = 4;
    let a = Arc::new(library::dual_numbers(bound as u32));
    let cert = is_koszul(&a, bound);
    ensure(cert.is_koszul(), || "is_koszul negative".into())?;
    // Oracle: the periodic resolution k ← A ← A⟨−1⟩ ← A⟨−2⟩ ← … with
    // multiplication by x; x· on A has rank 1 and kernel = image.
    let p = projective_module(&a, 0, 0).map_err(|e| e.to_string())?;
    let x = a.generators()[0].element.clone();
    let mult = p.action_of(&x);
    ensure(mult.rank() == 1 && p.dim() == 2, || "x· on A is not rank one".into())?;
    let periodic: Vec<Vec<(usize, i32, usize)>> = (0..=bound).map(|i| vec![(0, i as i32, 1)]).collect();
    ensure(cert.table == periodic, || format!("resolution {:?}", cert.table))?;
    let ext = ext_algebra(&a, bound).map_err(|e| e.to_string())?;
    let dims = ext.dims_by_degree();
    ensure(dims == vec![1; bound + 1], || format!("Ext dims {dims:?}"))?;
    let qd = quadratic_dual(&a).map_err(|e| e.to_string())?;
    ensure(same_quadratic_presentation(&ext.algebra, &qd), || "Ext algebra differs from quadratic dual".into())?;
    Ok(format!("Ext dims {dims:?}"))
}

fn psi_phi(ctx: &DualityContext) -> Outcome {
    let a = &ctx.algebra;
    let mut objects: Vec<(String, ComplexOfModules)> = (0..a.vertex_count())
        .map(|w| (format!("K_{w}"), ctx.koszul.component_complex(w)))
        .collect();
    objects.push(("k".into(), ComplexOfModules::single(all_simples(a), 0)));
    objects.extend(seeded_complexes(a, DEFAULT_SEED, SEEDED));
    for (id, m) in &objects {
        let (_, cert) = ctx.psi(m).map_err(|e| format!("ψ on {id}: {e}"))?;
        ensure(cert.is_quasi_iso(), || format!("ψ on {id} is not a quasi-isomorphism"))?;
    }
    let mut certified: Vec<(String, Certified)> = Vec::new();
    for w in 0..a.vertex_count() {
        certified.push((format!("Hom(K,K_{w})"), ctx.generator(w).map_err(|e| e.to_string())?));
    }
    certified.push(("E".into(), ctx.free()));
    for (id, m) in seeded_complexes(a, DEFAULT_SEED ^ 1, SEEDED) {
        certified.push((id, ctx.rhom_certified(&m).map_err(|e| e.to_string())?));
    }
    for k in 0..SEEDED {
        let w = k % a.vertex_count();
        let g = ctx.generator(w).map_err(|e| e.to_string())?;
        let other = ctx.generator((k / 2) % a.vertex_count()).map_err(|e| e.to_string())?;
        let moved = g.shift_by(k as i32 % 3 - 1).twist(k as i32 % 5 - 2);
        let sum = moved.sum(&other).map_err(|e| e.to_string())?;
        let cone = Certified::cone(&DGMap::identity(&sum.module), &sum, &sum).map_err(|e| e.to_string())?;
        certified.push((format!("combination#{k}"), if k % 2 == 0 { sum } else { cone }));
    }
    for (id, n) in &certified {
        let (_, cert) = ctx.phi(n).map_err(|e| format!("φ on {id}: {e}"))?;
        ensure(cert.is_quasi_iso(), || format!("φ on {id} is not a quasi-isomorphism"))?;
    }
    Ok(format!("ψ on {} objects, φ on {} objects", objects.len(), certified.len()))
}

/// `[−1]⟨−1⟩` on a bidegree table.
fn shift_twist(t: &BigradedTable) -> BigradedTable {
    t.iter().map(|(&(c, i, v), &n)| ((c + 1, i - 1, v), n)).collect()
}

fn twist_rule(ctx: &DualityContext) -> Outcome {
    let mut sigma = 0;
    let mut strict: Vec<(String, ComplexOfModules)> = seeded_complexes(&ctx.dual, DEFAULT_SEED, SEEDED);
    for (id, m) in seeded_complexes(&ctx.algebra, DEFAULT_SEED, SEEDED) {
        strict.push((format!("G({id})"), linear_complex(ctx, &m).map_err(|e| e.to_string())?));
    }
    for (id, p) in &strict {
        let (f, source, target) = ctx.sigma_twist_iso(p).map_err(|e| format!("σ on {id}: {e}"))?;
        let cert = f.quasi_iso_certificate(&source, &target).map_err(|e| e.to_string())?;
        ensure(cert.is_quasi_iso(), || format!("σ on {id} is not a quasi-isomorphism"))?;
        ensure(source.cohomology_table() == shift_twist(&ctx.totalize(p).map_err(|e| e.to_string())?.cohomology_table()), || {
            format!("F(P⟨1⟩) table is not F(P)[−1]⟨−1⟩ on {id}")
        })?;
        sigma += 1;
    }
    // Duality tables live in the bigrading of DG modules over A^!; the
    // exchange is a statement about complexes of graded A^!-modules, so the
    // totalization placement (c, m) ↦ (c + m, −m) is undone first.
    let unplace = |t: &BigradedTable| -> BigradedTable { t.iter().map(|(&(c, i, v), &n)| ((c + i, -i, v), n)).collect() };
    let mut tables = 0;
    for (id, m) in seeded_complexes(&ctx.algebra, DEFAULT_SEED, SEEDED) {
        let d = ctx.koszul_duality(&m).map_err(|e| e.to_string())?;
        let dt = ctx.koszul_duality(&m.twist(1)).map_err(|e| e.to_string())?;
        ensure(unplace(&dt.table) == shift_twist(&unplace(&d.table)), || {
            format!("D(M⟨1⟩) ≠ D(M)[−1]⟨−1⟩ on {id}: {:?} vs {:?}", dt.table, d.table)
        })?;
        tables += 1;
    }
    Ok(format!("σ certified on {sigma} complexes, exchange exact on {tables} duality tables"))
}

fn idempotent_square(ctx: &DualityContext) -> Outcome {
    let w = library::sl2_wall();
    let r = verify_idempotent_square(ctx, &w).map_err(|e| e.to_string())?;
    ensure(r.surjective, || format!("Ext-level map has rank {} < {}", r.image_rank, r.target_dim))?;
    ensure(r.kernel_is_ideal && r.kernel_dim == r.ideal_dim, || {
        format!("kernel {} vs idempotent ideal {}", r.kernel_dim, r.ideal_dim)
    })?;
    ensure(r.quotient_matches && r.quotient_dims == r.parabolic_dims, || {
        format!("quotient {:?} vs parabolic {:?}", r.quotient_dims, r.parabolic_dims)
    })?;
    ensure(r.holds(), || "report does not hold".into())?;
    Ok(format!("rank {} onto {}, kernel {} = idempotent ideal, quotient dims {:?}", r.image_rank, r.target_dim, r.kernel_dim, r.quotient_dims))
}

fn commuting_square(regular: &DualityContext) -> Outcome {
    let w = library::sl2_wall();
    let singular = make_context(w.singular(), BOUND).map_err(|e| e.to_string())?;
    let mut testset = standard_testset(&w).map_err(|e| e.to_string())?;
    testset.extend(seeded_complexes(w.regular(), DEFAULT_SEED, 10));
    let r = verify_square(regular, &singular, &w, &testset).map_err(|e| e.to_string())?;
    let bad: Vec<&str> = r.entries.iter().filter(|e| !e.agrees).map(|e| e.id.as_str()).collect();
    ensure(bad.is_empty(), || format!("disagreement on {bad:?}"))?;
    Ok(format!("{}/{} objects agree entrywise", r.agreeing(), r.entries.len()))
}

/// Equal up to one bidegree translation applied to every entry.
fn same_pattern(a: &BigradedTable, b: &BigradedTable) -> bool {
    let (Some((&(c0, i0, _), _)), Some((&(c1, i1, _), _))) = (a.iter().next(), b.iter().next()) else {
        return a.is_empty() && b.is_empty();
    };
    let moved: BigradedTable = a.iter().map(|(&(c, i, v), &n)| ((c - c0 + c1, i - i0 + i1, v), n)).collect();
    moved == *b
}

fn duality_exchange(ctx: &DualityContext) -> Outcome {
    let a = &ctx.algebra;
    let dual = &ctx.dual;
    let mut failures = Vec::new();
    for w in 0..a.vertex_count() {
        let name = &a.vertices()[w];
        let v = dual.vertex(name).map_err(|e| e.to_string())?;
        let f = |m| -> Result<BigradedTable, String> {
            let p = ComplexOfModules::single(m, 0);
            Ok(ctx.totalize(&p).map_err(|e| e.to_string())?.cohomology_table())
        };
        let dual_projective = f(projective_module(dual, v, 0).map_err(|e| e.to_string())?)?;
        let dual_simple = f(simple_module(dual, v).map_err(|e| e.to_string())?)?;
        let s = ComplexOfModules::single(simple_module(a, w).map_err(|e| e.to_string())?, 0);
        let p = ComplexOfModules::single(projective_module(a, w, 0).map_err(|e| e.to_string())?, 0);
        let ds = ctx.koszul_duality(&s).map_err(|e| e.to_string())?.table;
        let dp = ctx.koszul_duality(&p).map_err(|e| e.to_string())?.table;
        if !same_pattern(&ds, &dual_projective) {
            failures.push(format!("D(S({name})) = {ds:?}, projective pattern {dual_projective:?}"));
        }
        if !same_pattern(&dp, &dual_simple) {
            failures.push(format!("D(P({name})) = {dp:?}, simple pattern {dual_simple:?}"));
        }
    }
    if failures.is_empty() {
        Ok("simples ↦ projectives and projectives ↦ simples on every vertex".into())
    } else {
        Err(failures.join("; "))
    }
}

fn cli(args: &[&str], dir: &Path) -> Result<(String, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_koszulkit"))
        .args(args)
        .current_dir(dir)
        .env_remove("KOSZULKIT_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((stdout, out.status.code().unwrap_or(-1)))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    for name in library::NAMES {
        let (_, code) = cli(&["examples", "emit", name, "--out", "."], d)?;
        ensure(code == 0, || format!("emit {name} exited {code}"))?;
    }
    let runs: [&[&str]; 4] = [
        &["verify-square", "sl2-wall.json", "--testset", "simples,projectives,seeded:4", "--seed", "17"],
        &["dualize", "sl2-principal-block.json", "--object", "projective:s"],
        &["koszul", "dual-numbers.json", "--bound", "4"],
        &["dual", "sl2-principal-block.json"],
    ];
    for args in runs {
        let first = cli(args, d)?;
        let second = cli(args, d)?;
        ensure(first.1 == 0, || format!("{args:?} exited {}", first.1))?;
        ensure(first == second, || format!("{args:?} is not byte-stable"))?;
    }
    let (_, code) = cli(&["dual", "sl2-principal-block.json", "--out", "dual.json"], d)?;
    ensure(code == 0, || format!("dual exited {code}"))?;
    let (report, code) = cli(&["check", "dual.json"], d)?;
    ensure(code == 0 && report.contains("\"verdict\": \"ok\""), || format!("emitted dual does not validate: {report}"))?;
    Ok(format!("{} commands byte-identical across runs; emitted dual validates", runs.len()))
}

fn main() {
    let start = Instant::now();
    let regular = context(&sl2());
    let criteria: [(&str, Box<dyn Fn() -> Outcome + '_>); 9] = [
        ("sign rules", Box::new(sign_rules)),
        ("sl2 Koszulity and dual", Box::new(sl2_koszul_dual)),
        ("dual numbers", Box::new(dual_numbers)),
        ("ψ and φ quasi-isomorphisms", Box::new(|| psi_phi(&regular))),
        ("twist rule", Box::new(|| twist_rule(&regular))),
        ("idempotent square", Box::new(|| idempotent_square(&regular))),
        ("commuting square", Box::new(|| commuting_square(&regular))),
        ("duality exchange", Box::new(|| duality_exchange(&regular))),
        ("CLI determinism", Box::new(cli_determinism)),
    ];
    let mut results = BTreeMap::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        match &outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(detail) => println!("criterion {}: FAIL  {name}: {detail}", n + 1),
        }
        results.insert(n + 1, outcome.is_ok());
    }
    let failed: Vec<usize> = results.iter().filter(|(_, ok)| !**ok).map(|(n, _)| *n).collect();
    println!(
        "acceptance: {}/{} criteria pass in {:.1?}",
        results.len() - failed.len(),
        results.len(),
        start.elapsed()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
