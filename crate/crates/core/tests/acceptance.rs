//! Acceptance run: one line per criterion; nonzero exit if any fails.
//! Runs without the test harness so the lines always reach the output.

use std::time::{Duration, Instant};

use solenoid::algebras::verify::Sampling;
use solenoid::algebras::{verify_lie_axioms, Algebra, BasisSymbol};
use solenoid::cli::config::zero_one_patterns;
use solenoid::cli::{run, without_timing, Command, SessionConfig};
use solenoid::correspondence::{
    analyze_rep, extract_d_operators, fit_polynomials, module_from_rep, rep_from_family,
    tensor_rep, verify_p_brackets, Classification, PolynomialFamily, DEFAULT_DEGREE_CAP,
};
use solenoid::cover::cuspidality_probe;
use solenoid::linalg::Matrix;
use solenoid::modules::{
    build_tensor_module, build_virp_module, build_wmu_module, reducibility_grid, verify_module_axioms,
    GradedGlnModule, Verdict, WeightWindowModule, WindowedModule,
};
use solenoid::scalars::{inner_product_scalars, lattice_box, LatticePoint, Scalar};
use solenoid::torus::TorusPresentation;

fn k2() -> TorusPresentation {
    TorusPresentation::new(2, vec![2]).unwrap()
}

fn presentations() -> Vec<TorusPresentation> {
    vec![k2(), TorusPresentation::new(2, vec![3]).unwrap(), TorusPresentation::new(4, vec![2, 2]).unwrap()]
}

fn sym_alpha(d: usize) -> Vec<Scalar> {
    (0..d).map(Scalar::alpha).collect()
}

fn regular(bound: i64) -> WeightWindowModule {
    let t = k2();
    build_tensor_module(&t, sym_alpha(2), Scalar::beta(), GradedGlnModule::regular(&t), bound).unwrap()
}

fn fitted(m: &WeightWindowModule) -> PolynomialFamily {
    fit_polynomials(&extract_d_operators(m).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
}

/// Matrix model built from scratch: clock `diag(q^i)` times shift per torus factor.
fn model(t: &TorusPresentation, n: &LatticePoint) -> Matrix {
    let mut acc = Matrix::identity(1);
    for (i, &k) in t.orders().iter().enumerate() {
        let (a, b) = (n.entries()[2 * i], n.entries()[2 * i + 1].rem_euclid(k as i64) as usize);
        let ku = k as usize;
        let f = Matrix::from_cyclotomic(ku, ku, |r, c| {
            if c == (r + b) % ku {
                solenoid::scalars::Cyclotomic::root_of_unity(k, a * r as i64)
            } else {
                solenoid::scalars::Cyclotomic::zero()
            }
        });
        acc = acc.kron(&f);
    }
    acc
}

fn c1() -> Result<String, String> {
    let mut pairs = 0;
    for t in presentations() {
        let reps = t.gamma_reps();
        for m in &reps {
            for n in &reps {
                pairs += 1;
                let lhs = &model(&t, m) * &model(&t, n);
                if lhs != model(&t, &(m + n)).scale(&t.sigma_scalar(m, n)) {
                    return Err(format!("k = {:?}, m = {m}, n = {n}", t.orders()));
                }
            }
        }
    }
    Ok(format!("{pairs} pairs exact"))
}

fn c2() -> Result<String, String> {
    let mut algebras = vec![
        Algebra::solenoidal(&k2(), 2),
        Algebra::solenoidal(&presentations()[1], 2),
        Algebra::VirP { p: 2, bound: 6 },
        Algebra::deriv_l(&TorusPresentation::commutative(2), 3),
        Algebra::deriv_l(&k2(), 3),
    ];
    algebras.extend(presentations().into_iter().map(|t| Algebra::GlN { torus: t }));
    algebras.extend((1..=3).map(|d| Algebra::GlDGamma {
        gamma: Scalar::gamma_vector(d),
    }));
    let mut triples = 0;
    for a in &algebras {
        let r = verify_lie_axioms(a, Sampling::default());
        if r.sampled {
            return Err(format!("{} was sampled, not exhaustive", r.algebra));
        }
        if !r.passed() {
            return Err(format!("{}: {:?}", r.algebra, r.violations.first()));
        }
        triples += r.triples_checked;
    }
    Ok(format!("{} algebras, {triples} Jacobi triples", algebras.len()))
}

fn c3() -> Result<String, String> {
    let mut checked = 0;
    let mut check = |label: String, r: solenoid::algebras::CheckReport| {
        checked += r.checked;
        if r.passed() {
            Ok(())
        } else {
            Err(format!("{label}: {:?}", r.violations.first()))
        }
    };
    check("V(alpha, beta, W_reg)".into(), verify_module_axioms(&regular(3)))?;
    let t = build_wmu_module(2, sym_alpha(2), Scalar::beta(), 3).unwrap();
    check("T(alpha, beta)".into(), verify_module_axioms(&t))?;
    let mut patterns = 0;
    for p in [2, 3] {
        for f in zero_one_patterns(p).into_iter().filter(|f| f.validate().valid) {
            patterns += 1;
            let m = build_virp_module(Scalar::alpha(0), Scalar::beta(), f.clone(), 3).unwrap();
            check(format!("V(a, b, F) p = {p} {:?}", f.rows()), verify_module_axioms(&m))?;
        }
    }
    Ok(format!("{checked} relations, {patterns} valid F patterns"))
}

fn c4() -> Result<String, String> {
    let cells = reducibility_grid(3, 1).map_err(|e| e.to_string())?;
    let (mut conclusive, mut reducible) = (0, 0);
    for c in &cells {
        let label = format!("{:?} alpha = {:?} beta = {}", c.w, c.alpha, c.beta);
        match c.agrees {
            None => continue,
            Some(false) => return Err(format!("disagreement at {label}")),
            Some(true) => conclusive += 1,
        }
        if let Verdict::Reducible { .. } = c.report.verdict {
            reducible += 1;
            if c.witness_expected != Some(true) {
                return Err(format!("unexpected witness at {label}"));
            }
        }
    }
    if conclusive == 0 {
        return Err("no conclusive cell".into());
    }
    Ok(format!("{conclusive}/{} conclusive, {reducible} reducible with expected witnesses", cells.len()))
}

fn c5() -> Result<String, String> {
    let fam = fitted(&regular(3));
    if fam.degree > 1 {
        return Err(format!("degree {}", fam.degree));
    }
    let t = k2();
    let gamma = Scalar::gamma_vector(2);
    let zero = LatticePoint::zero(2);
    for (si, s) in t.gamma_reps().iter().enumerate() {
        let shifted: Vec<Scalar> = (0..2).map(|i| &Scalar::alpha(i) + &Scalar::from_int(s.entries()[i])).collect();
        let c = inner_product_scalars(&gamma, &shifted).unwrap();
        if fam.p0(si, &zero) != Matrix::scalar(1, &c) {
            return Err(format!("P_0^0 on class {s}"));
        }
        for (i, g) in gamma.iter().enumerate() {
            if fam.p0(si, &LatticePoint::unit(2, i)) != Matrix::scalar(1, &(&Scalar::beta() * g)) {
                return Err(format!("P_0^e{} on class {s}", i + 1));
            }
        }
    }
    let r = verify_p_brackets(&fam);
    if !r.passed() {
        return Err(format!("{:?}", r.violations.first()));
    }
    Ok(format!("degree {}, {} bracket relations", fam.degree, r.checked))
}

fn c6() -> Result<String, String> {
    let m = regular(3);
    let rep = rep_from_family(&fitted(&m)).map_err(|e| e.to_string())?;
    let back = module_from_rep(&rep, m.alpha().to_vec(), 3).map_err(|e| e.to_string())?;
    if back.positions() != m.positions() {
        return Err("weight support differs".into());
    }
    let mut blocks = 0;
    for g in lattice_box(2, 3) {
        let sym = BasisSymbol::L(g);
        for pos in 0..m.positions().len() {
            blocks += 1;
            if m.act_block(&sym, pos) != back.act_block(&sym, pos) {
                return Err(format!("{sym} at {}", m.positions()[pos]));
            }
        }
    }
    Ok(format!("{blocks} blocks identical"))
}

fn c7() -> Result<String, String> {
    let rep = rep_from_family(&fitted(&regular(3))).map_err(|e| e.to_string())?;
    let a = analyze_rep(&rep);
    if !a.l_plus_killed {
        return Err("positive part not killed".into());
    }
    if a.beta != Some(Scalar::beta()) {
        return Err(format!("beta: {}", a.beta_diagnostic));
    }
    if a.w_isomorphic_to_regular != Some(true) {
        return Err("W not isomorphic to the regular module".into());
    }
    let w = GradedGlnModule::regular(&k2());
    let sum = tensor_rep(&w, &Scalar::from_int(2))
        .and_then(|x| x.direct_sum(&tensor_rep(&w, &Scalar::from_ratio(1, 2))?))
        .map_err(|e| e.to_string())?;
    match analyze_rep(&sum).classification {
        Classification::NotIrreducible { reason } => Ok(format!("direct sum rejected: {reason}")),
        other => Err(format!("direct sum classified as {other:?}")),
    }
}

fn c8() -> Result<String, String> {
    let probe = cuspidality_probe(regular, &[2, 3, 4], 1).map_err(|e| e.to_string())?;
    for w in &probe.windows {
        if w.j_outside_ker_pi > 0 || w.homomorphism_failures > 0 || w.invariance_failures > 0 || !w.inner_surjective {
            return Err(format!("size {}: {w:?}", w.size));
        }
    }
    if !probe.bounded {
        return Err(format!("multiplicities {:?}", probe.max_multiplicity));
    }
    Ok(format!("max inner multiplicities {:?}", probe.max_multiplicity))
}

fn c9() -> Result<String, String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/quick.json");
    let cfg = SessionConfig::load(path.as_ref()).map_err(|e| e.to_string())?;
    let once = || run(Command::Suite, &cfg, None).map(|r| r.to_json()).map_err(|e| e.to_string());
    let (a, b) = (once()?, once()?);
    let (sa, sb) = (without_timing(&a).unwrap(), without_timing(&b).unwrap());
    if sa != sb {
        return Err("reports differ".into());
    }
    Ok(format!("{} bytes identical without timing", sa.len()))
}

fn main() {
    type Criterion = (u32, &'static str, Option<u64>, fn() -> Result<String, String>);
    let criteria: [Criterion; 9] = [
        (1, "sigma against the matrix model", Some(5), c1),
        (2, "Lie axioms", Some(120), c2),
        (3, "module axioms", Some(120), c3),
        (4, "reducibility grid against the criterion", Some(300), c4),
        (5, "fitted operators", Some(60), c5),
        (6, "module round trip", Some(60), c6),
        (7, "representation analysis", Some(60), c7),
        (8, "cover on growing windows", Some(300), c8),
        (9, "suite determinism", None, c9),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let over = limit.is_some_and(|s| took > Duration::from_secs(s));
        let ok = outcome.is_ok() && !over;
        let detail = match (&outcome, over) {
            (Ok(d), false) => d.clone(),
            (Ok(d), true) => format!("{d}; over the {}s limit", limit.unwrap()),
            (Err(e), _) => e.clone(),
        };
        println!("criterion {n}: {} {name} ({:.1}s) {detail}", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
        if !ok {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
