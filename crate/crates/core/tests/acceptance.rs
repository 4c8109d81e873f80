//! End-to-end acceptance run: one PASS/FAIL line per criterion. Runs without
//! the libtest harness so the lines are always printed.

use std::time::{Duration, Instant};

use nichols_ext::ext::{
    complexity_estimate, e2_dimension, hom_complex, lift_independence_check, named_generators, relations_for,
    verify_relations, Convention, ExtClass, ExtContext, RelationReport,
};
use nichols_ext::qalgebra::{Algebra, AlgebraMode};
use nichols_ext::report::{Report, Status};
use nichols_ext::resolution::{build_minimal_segment, build_p_complex, build_resolution_n2, verify_complex, verify_exactness};
use nichols_ext::scalars::{with_field, CyclotomicField, Field, FieldSpec, FieldVisitor, PrimeField};
use nichols_ext::suite::{closed_form_dimension, run, Command, RunConfig, Suite};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = (bool, String);

fn config(n: usize, field: FieldSpec, q12_exp: i64, mode: AlgebraMode, n_max: usize) -> RunConfig {
    RunConfig { field, q12_exp, mode, n_max, deterministic: true, ..RunConfig::new(n) }
}

fn fp(n: usize) -> FieldSpec {
    FieldSpec::prime_field_at_least(n as u64, 1000)
}

fn status(r: &Report, name: &str) -> Option<Status> {
    r.check(name).map(|c| c.status)
}

fn all_pass(r: &Report, names: &[&str]) -> std::result::Result<(), String> {
    for name in names {
        match r.check(name) {
            Some(c) if c.status == Status::Pass => {}
            Some(c) => return Err(format!("{name}: {:?} ({})", c.status, c.details)),
            None => return Err(format!("{name}: missing")),
        }
    }
    Ok(())
}

fn verify(cfg: &RunConfig, suite: Suite) -> Report {
    run(cfg, Command::Verify(suite)).expect("valid configuration")
}

fn within(label: &str, elapsed: Duration, budget: Duration) -> std::result::Result<(), String> {
    // budgets apply to optimized builds
    if cfg!(debug_assertions) || elapsed <= budget {
        Ok(())
    } else {
        Err(format!("{label} took {elapsed:?}, budget {budget:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = verify(&config(2, fp(2), 1, AlgebraMode::Full, 10), Suite::All);
    let elapsed = start.elapsed();
    let dims_ok = r.ext_dims == (1..=11).collect::<Vec<usize>>();
    let checks = all_pass(&r, &[
        "complex.d_squared",
        "exact.resolution",
        "exact.n2_kernel_dims",
        "relations.presentation",
        "ext.closed_form",
    ]);
    let time = within("N=2", elapsed, Duration::from_secs(10));
    let ok = dims_ok && checks.is_ok() && time.is_ok() && r.passed();
    (ok, format!("N=2 ext dims {:?}; {:?}; {:?}; {elapsed:?}", r.ext_dims, checks, time))
}

const N3_DIMS: [usize; 9] = [1, 2, 5, 7, 12, 15, 22, 26, 35];

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for field in [fp(3), FieldSpec::cyclotomic(3)] {
        for q12_exp in [1, 2] {
            let cfg = config(3, field.clone(), q12_exp, AlgebraMode::Full, 8);
            let start = Instant::now();
            let info = run(&cfg, Command::Info).unwrap();
            let r = verify(&cfg, Suite::Exact);
            let c = verify(&cfg, Suite::Complex);
            let elapsed = start.elapsed();
            let checks = all_pass(&info, &["info.dimension", "info.reverse_basis"])
                .and(all_pass(&c, &["complex.d_squared"]))
                .and(all_pass(&r, &["exact.resolution"]));
            let budget = if field.prime.is_some() { within("fp", elapsed, Duration::from_secs(120)) } else { Ok(()) };
            let good = checks.is_ok() && budget.is_ok() && r.ext_dims == N3_DIMS;
            ok &= good;
            notes.push(format!("{field} q12=z^{q12_exp}: {}", if good { "ok".to_string() } else { format!("{checks:?} {budget:?} {:?}", r.ext_dims) }));
        }
    }
    (ok, notes.join("; "))
}

fn relation_run<F: Field>(field: F, n: usize, q12_exp: i64, convention: Convention) -> RelationReport {
    let alg = Algebra::from_exponents(field, n, q12_exp, AlgebraMode::Full).unwrap();
    let seg = build_minimal_segment(&alg).unwrap();
    let ctx = ExtContext::new(&alg, &seg);
    let gens = named_generators(&ctx).unwrap();
    verify_relations(&ctx, &gens, &relations_for(n), convention).unwrap()
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for q12_exp in [0, 1, 2] {
        let field = PrimeField::new(fp(3).prime.unwrap(), 3).unwrap();
        let r = relation_run(field, 3, q12_exp, Convention::LeftThenRight);
        let named = ["b1c2=q12^6 c1^2", "q12^6 b2c1=c2^2", "b1b2=q12^3 c1c2"]
            .iter()
            .all(|name| r.outcomes.iter().any(|o| o.name == *name && o.holds));
        ok &= r.passed() && named && r.outcomes.len() == 30;
        notes.push(format!(
            "q12=z^{q12_exp}: {}/{} hold under {}",
            r.outcomes.iter().filter(|o| o.holds).count(),
            r.outcomes.len(),
            r.convention
        ));
    }
    (ok, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = verify(&config(5, fp(5), 1, AlgebraMode::Full, 6), Suite::All);
    let elapsed = start.elapsed();
    let expected: Vec<usize> = (0..=6).map(|k| closed_form_dimension(5, AlgebraMode::Full, k)).collect();
    let checks = all_pass(&r, &["relations.presentation", "relations.nilpotency", "ext.closed_form"]);
    let time = within("N=5", elapsed, Duration::from_secs(600));
    let ok = checks.is_ok() && time.is_ok() && r.ext_dims == expected && r.passed();
    (ok, format!("N=5 ext dims {:?}; {checks:?}; {time:?}; {elapsed:?}", r.ext_dims))
}

fn segment_facts<F: Field>(field: F, n: usize) -> std::result::Result<(), String> {
    let alg = Algebra::from_exponents(field, n, 1, AlgebraMode::Full).map_err(|e| e.to_string())?;
    let seg = build_minimal_segment(&alg).map_err(|e| e.to_string())?;
    if seg.ranks() != [1, 2, 5, 7, 12] {
        return Err(format!("ranks {:?}", seg.ranks()));
    }
    if !verify_complex(&alg, &seg).map_err(|e| e.to_string())?.passed() {
        return Err("∂∂ != 0".into());
    }
    let ex = verify_exactness(&alg, &seg);
    if !ex.passed() || ex.degrees.iter().filter(|d| d.image_dim.is_some()).count() < 4 {
        return Err(format!("exactness {:?}", ex.kernel_dims()));
    }
    let hom = hom_complex(&alg, &seg);
    if !(0..4).all(|k| hom.induced(k).is_zero(alg.field())) {
        return Err("nonzero induced map".into());
    }
    let ctx = ExtContext::new(&alg, &seg);
    let p = build_p_complex(&alg, 5).map_err(|e| e.to_string())?;
    let pctx = ExtContext::new(&alg, &p);
    let a = ctx.ext_dimensions().map_err(|e| e.to_string())?;
    let b = pctx.ext_dimensions().map_err(|e| e.to_string())?;
    if a[..] != b[..5] {
        return Err(format!("segment {a:?} vs P {b:?}"));
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut results = Vec::new();
    for n in [3, 5] {
        let r = segment_facts(PrimeField::new(fp(n).prime.unwrap(), n as u64).unwrap(), n);
        results.push(format!("N={n}: {r:?}"));
    }
    let ids = verify(&config(3, fp(3), 1, AlgebraMode::Full, 4), Suite::Appendix);
    let dbar = ids.check("appendix.maps").map(|c| c.status == Status::Pass).unwrap_or(false);
    let ok = results.iter().all(|s| s.ends_with("Ok(())")) && dbar;
    (ok, format!("{}; Dbar identities {}", results.join("; "), if dbar { "hold" } else { "fail" }))
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 5] {
        let r = verify(&config(n, fp(n), 1, AlgebraMode::Full, 8), Suite::Appendix);
        let d = verify(&config(n, fp(n), 1, AlgebraMode::Full, 8), Suite::Dtilde);
        let checks = all_pass(&r, &["appendix.maps"]).and(all_pass(&d, &["dtilde.cases"]));
        ok &= checks.is_ok();
        notes.push(format!(
            "N={n}: {} / {}",
            r.check("appendix.maps").map(|c| c.details.as_str()).unwrap_or("missing"),
            d.check("dtilde.cases").map(|c| c.details.as_str()).unwrap_or("missing")
        ));
    }
    (ok, notes.join("; "))
}

fn criterion_7() -> Outcome {
    let table: Vec<usize> = (0..8).map(|q| e2_dimension(0, q)).collect();
    let table_ok = table == [1, 1, 3, 2, 5, 3, 7, 4];
    let r = verify(&config(3, fp(3), 1, AlgebraMode::Full, 8), Suite::E2);
    let ok = table_ok && status(&r, "e2.columns") == Some(Status::Pass) && r.ext_dims == N3_DIMS;
    (ok, format!("E2 columns {table:?}; {}", r.check("e2.columns").map(|c| c.details.as_str()).unwrap_or("missing")))
}

fn verdicts(r: &RelationReport) -> Vec<(String, bool, Option<bool>)> {
    r.outcomes.iter().map(|o| (o.name.clone(), o.holds, o.holds_opposite)).collect()
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for q12_exp in [0, 1, 2] {
        let a = run(&config(3, fp(3), q12_exp, AlgebraMode::Full, 6), Command::ExtDims).unwrap();
        let b = run(&config(3, FieldSpec::cyclotomic(3), q12_exp, AlgebraMode::Full, 6), Command::ExtDims).unwrap();
        let ra = relation_run(PrimeField::new(fp(3).prime.unwrap(), 3).unwrap(), 3, q12_exp, Convention::LeftThenRight);
        let rb = relation_run(CyclotomicField::new(3).unwrap(), 3, q12_exp, Convention::LeftThenRight);
        let same = a.ext_dims == b.ext_dims && verdicts(&ra) == verdicts(&rb);
        ok &= same && a.ext_dims == N3_DIMS[..7];
        notes.push(format!("q12=z^{q12_exp}: {}", if same { "identical" } else { "differ" }));
    }
    let graded_a = run(&config(3, fp(3), 1, AlgebraMode::Graded, 6), Command::ExtDims).unwrap();
    let graded_b = run(&config(3, FieldSpec::cyclotomic(3), 1, AlgebraMode::Graded, 6), Command::ExtDims).unwrap();
    ok &= graded_a.ext_dims == graded_b.ext_dims;
    (ok, notes.join("; "))
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, n_max, want) in [(2, 10, 2), (3, 8, 3), (5, 6, 3)] {
        let r = run(&config(n, fp(n), 1, AlgebraMode::Full, n_max), Command::ExtDims).unwrap();
        let cx = complexity_estimate(&r.ext_dims).ok();
        ok &= cx == Some(want);
        notes.push(format!("cx(N={n}) = {cx:?}"));
    }
    let g = run(&config(3, fp(3), 1, AlgebraMode::Graded, 8), Command::ExtDims).unwrap();
    let tri: Vec<usize> = (0..=8).map(|k| (k + 1) * (k + 2) / 2).collect();
    ok &= g.ext_dims == tri;
    notes.push(format!("graded {:?}", g.ext_dims));
    (ok, notes.join("; "))
}

struct Fuzz(usize, usize);

impl FieldVisitor for Fuzz {
    type Output = std::result::Result<String, String>;

    fn visit<F: Field>(self, field: F) -> Self::Output {
        let Fuzz(n, top) = self;
        let alg = Algebra::from_exponents(field, n, 1, AlgebraMode::Full).map_err(|e| e.to_string())?;
        let c = if n == 2 { build_resolution_n2(&alg, top + 1) } else { build_p_complex(&alg, top + 1) }
            .map_err(|e| e.to_string())?;
        let ctx = ExtContext::new(&alg, &c);
        let bases: Vec<Vec<ExtClass<F::Elem>>> =
            (0..=top).map(|d| ctx.cocycle_basis(d).unwrap()).collect();
        let f = alg.field();
        let class = |d: usize, coeffs: &[i64]| {
            let terms: Vec<(F::Elem, &ExtClass<F::Elem>)> =
                bases[d].iter().zip(coeffs.iter().cycle()).map(|(b, &k)| (f.from_i64(k), b)).collect();
            ctx.combine(d, &terms).unwrap()
        };
        let degrees = (1..=top - 2).prop_flat_map(move |a| {
            (1..=top - 1 - a).prop_flat_map(move |b| (Just(a), Just(b), 1..=top - a - b))
        });
        let coeffs = || prop::collection::vec(-4i64..5, 1..4);
        let mut runner = TestRunner::new(Config { cases: 500, failure_persistence: None, ..Config::default() });
        runner
            .run(&(degrees, coeffs(), coeffs(), coeffs()), |((a, b, d), x, y, z)| {
                let (u, v, w) = (class(a, &x), class(b, &y), class(d, &z));
                let conv = Convention::LeftThenRight;
                let left = ctx.yoneda_product(&ctx.yoneda_product(&u, &v, conv).unwrap(), &w, conv).unwrap();
                let right = ctx.yoneda_product(&u, &ctx.yoneda_product(&v, &w, conv).unwrap(), conv).unwrap();
                prop_assert!(ctx.classes_equal(&left, &right).unwrap());
                Ok(())
            })
            .map_err(|e| e.to_string())?;
        let gens = named_generators(&ExtContext::new(&alg, &c)).ok();
        let li = match gens {
            Some(g) => lift_independence_check(&ctx, &g, Convention::LeftThenRight).map_err(|e| e.to_string())?,
            None => {
                let mut names = Vec::new();
                let mut classes = Vec::new();
                for d in 1..=2 {
                    for b in &bases[d] {
                        names.push(if d == 1 { "u" } else { "v" });
                        classes.push(b.clone());
                    }
                }
                let g = nichols_ext::ext::NamedGenerators { names, classes };
                lift_independence_check(&ctx, &g, Convention::LeftThenRight).map_err(|e| e.to_string())?
            }
        };
        if !li.passed() {
            return Err(format!("lift dependence {:?}", li.failures));
        }
        Ok(format!("N={n}: 500 triples, {} lift pairs", li.pairs_checked))
    }
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, top) in [(2, 6), (3, 6), (5, 5)] {
        match with_field(&fp(n), Fuzz(n, top)).unwrap() {
            Ok(s) => notes.push(s),
            Err(e) => {
                ok = false;
                notes.push(format!("N={n}: {e}"));
            }
        }
    }
    let k2 = verify(&config(3, fp(3), 1, AlgebraMode::Full, 6), Suite::K2);
    ok &= status(&k2, "k2.spanning") == Some(Status::Pass);
    notes.push(format!("K2 {}", k2.check("k2.spanning").map(|c| c.details.as_str()).unwrap_or("missing")));
    (ok, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("N=2 resolution and Ext", criterion_1),
        ("N=3 algebra, P complex and Ext dims", criterion_2),
        ("N=3 relations", criterion_3),
        ("N=5 relations and dims", criterion_4),
        ("minimal segment", criterion_5),
        ("chain maps, identities and right division", criterion_6),
        ("E2 bookkeeping", criterion_7),
        ("cyclotomic versus prime field", criterion_8),
        ("complexity and graded dims", criterion_9),
        ("property suite", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, details) = f();
        println!(
            "criterion {:>2} {} {name}: {details} [{:.1?}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
