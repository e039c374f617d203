//! Suite pipelines and the top-level `run`.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebras::verify::Sampling;
use crate::algebras::{
    gamma_grading_check, gr_prime_ideal_check, l_plus_ideal_check, quotient_iso_check,
    verify_lie_axioms, wmu_iso_check, Algebra, BasisSymbol,
};
use crate::correspondence::{
    analyze_rep, extract_d_operators, fit_polynomials, module_from_rep, rep_from_family,
    tensor_rep, verify_p_brackets, Classification,
};
use crate::cover::cuspidality_probe;
use crate::modules::{
    build_tensor_module, build_virp_module, build_wmu_module, reducibility_criterion,
    reachability_irreducible, special_weight_is_inner, reducibility_grid, verify_module_axioms, verify_z_action, Verdict,
    WeightWindowModule, WindowedModule,
};
use crate::scalars::{lattice_box, Scalar};

use super::config::{ConfigError, ModuleConfig, SessionConfig, WSpec};
use super::report::{Report, SuiteResult, Timing};

pub const EXIT_CONFIG: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyAlgebra,
    BuildModule,
    CheckIrreducible,
    Correspond,
    Cover,
    Suite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::BuildModule => "build-module",
            Command::CheckIrreducible => "check-irreducible",
            Command::Correspond => "correspond",
            Command::Cover => "cover",
            Command::Suite => "suite",
        }
    }

    fn suite(self) -> Option<&'static str> {
        match self {
            Command::VerifyAlgebra => Some("algebra"),
            Command::BuildModule => Some("module"),
            Command::CheckIrreducible => Some("irreducible"),
            Command::Correspond => Some("correspond"),
            Command::Cover => Some("cover"),
            Command::Suite => None,
        }
    }
}

fn err(path: &str, e: impl ToString) -> ConfigError {
    ConfigError {
        path: path.into(),
        message: e.to_string(),
    }
}

fn module_block(cfg: &SessionConfig) -> Result<&ModuleConfig, ConfigError> {
    cfg.module.as_ref().ok_or_else(|| err("module", "this suite needs a module block"))
}

/// `V(alpha, beta, W)` from the module block on `[-bound, bound]^d`.
fn tensor_module(cfg: &SessionConfig, bound: i64) -> Result<WeightWindowModule, ConfigError> {
    let mc = module_block(cfg)?;
    build_tensor_module(&cfg.torus()?, cfg.alpha(mc)?, cfg.beta(mc)?, cfg.w(mc)?, bound).map_err(|e| err("module", e))
}

fn algebra_suite(cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    let torus = cfg.torus()?;
    let a = &cfg.algebra;
    let sampling = Sampling {
        threshold: cfg.sampling.threshold,
        samples: cfg.sampling.samples,
        seed: cfg.seed,
    };
    let mut algebras = vec![
        Algebra::solenoidal(&torus, a.bound),
        Algebra::deriv_l(&torus, a.dmax),
        Algebra::GlN { torus: torus.clone() },
        Algebra::GlDGamma {
            gamma: Scalar::gamma_vector(torus.d()),
        },
    ];
    algebras.extend(a.vir_p.iter().map(|&p| Algebra::VirP { p, bound: a.vir_bound }));

    let mut res = SuiteResult::new("algebra");
    let axioms: Vec<_> = algebras.iter().map(|alg| verify_lie_axioms(alg, sampling)).collect();
    for r in &axioms {
        res.expect(r.passed(), format!("Lie axioms of {} ({})", r.algebra, r.window));
    }
    let l = &algebras[1];
    let mut checks = vec![l_plus_ideal_check(l), quotient_iso_check(l), gamma_grading_check(l)];
    checks.push(gamma_grading_check(&algebras[2]));
    if torus.z() > 0 {
        checks.push(wmu_iso_check(&torus, a.bound));
        checks.push(gr_prime_ideal_check(&torus, a.bound));
    }
    for c in &checks {
        res.expect(c.passed(), format!("{} ({})", c.check, c.window));
    }
    #[derive(Serialize)]
    struct Details<T, U> {
        axioms: T,
        structure: U,
    }
    Ok(res.finish(Details {
        axioms: &axioms,
        structure: &checks,
    }))
}

fn module_suite(cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    let mut res = SuiteResult::new("module");
    let mut reports = Vec::new();
    if let Some(mc) = &cfg.module {
        let m = tensor_module(cfg, mc.bound)?;
        reports.push((m.describe(), verify_module_axioms(&m)));
        reports.push((m.describe(), verify_z_action(&m)));
        if cfg.torus()?.z() == 0 {
            let t = build_wmu_module(cfg.presentation.d, cfg.alpha(mc)?, cfg.beta(mc)?, mc.bound)
                .map_err(|e| err("module", e))?;
            reports.push((t.describe(), verify_module_axioms(&t)));
        }
    }
    if let Some(v) = &cfg.virp {
        let (a, b) = cfg.virp_params(v)?;
        let fs = cfg.f_matrices(v)?;
        let built: Vec<_> = fs
            .into_par_iter()
            .map(|f| {
                let m = build_virp_module(a.clone(), b.clone(), f, v.bound).map_err(|e| err("virp", e))?;
                Ok((m.label(), verify_module_axioms(&m)))
            })
            .collect::<Result<_, ConfigError>>()?;
        reports.extend(built);
    }
    if reports.is_empty() {
        return Err(err("module", "the module suite needs a module or virp block"));
    }
    for (label, r) in &reports {
        res.expect(r.passed(), format!("{} for {label}", r.check));
    }
    let details: Vec<_> = reports
        .iter()
        .map(|(label, r)| serde_json::json!({"module": label, "report": r}))
        .collect();
    Ok(res.finish(details))
}

fn irreducible_suite(cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    let mc = module_block(cfg)?;
    let torus = cfg.torus()?;
    let (alpha, beta, w) = (cfg.alpha(mc)?, cfg.beta(mc)?, cfg.w(mc)?);
    let criterion = reducibility_criterion(&torus, &alpha, &beta, &w);
    let m = tensor_module(cfg, mc.bound)?;
    let report = reachability_irreducible(&m, mc.margin, || Ok(Box::new(m.resized(mc.bound + 1)?)))
        .map_err(|e| err("module.margin", e))?;
    let mut res = SuiteResult::new("irreducible");
    match &report.verdict {
        Verdict::Inconclusive { reason } => res.undecided(reason.clone()),
        Verdict::WindowIrreducible if criterion && !special_weight_is_inner(&m, &alpha, mc.margin) => {
            res.undecided("the weight -alpha is outside the inner window")
        }
        Verdict::WindowIrreducible => res.expect(!criterion, "window irreducible but the criterion says reducible"),
        Verdict::Reducible { witness } => {
            res.expect(criterion, "reducible but the criterion says irreducible");
            res.expect(witness.invariant, "witness is not invariant");
        }
    }
    #[derive(Serialize)]
    struct Details<'a> {
        criterion_reducible: bool,
        #[serde(flatten)]
        report: &'a crate::modules::IrreducibilityReport,
    }
    Ok(res.finish(Details {
        criterion_reducible: criterion,
        report: &report,
    }))
}

fn grid_suite(cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    let (bound, margin) = cfg.grid.as_ref().map_or((3, 1), |g| (g.bound, g.margin));
    let cells = reducibility_grid(bound, margin).map_err(|e| err("grid", e))?;
    let mut res = SuiteResult::new("grid");
    for c in &cells {
        let label = format!("{:?} alpha = {:?} beta = {}", c.w, c.alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>(), c.beta);
        match c.agrees {
            None => res.undecided(label),
            Some(a) => {
                res.expect(a, format!("verdict against criterion, {label}"));
                if c.report.is_reducible() {
                    res.expect(c.witness_expected == Some(true), format!("witness shape, {label}"));
                }
            }
        }
    }
    Ok(res.finish(&cells))
}

fn correspond_suite(cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    let mc = module_block(cfg)?;
    let cc = &cfg.correspond;
    let beta = cfg.beta(mc)?;
    let w = cfg.w(mc)?;
    let m = tensor_module(cfg, cc.bound)?;
    let fail = |e: crate::correspondence::CorrespondenceError| err("correspond", e);

    let mut res = SuiteResult::new("correspond");
    let samples = extract_d_operators(&m).map_err(fail)?;
    let fam = fit_polynomials(&samples, cc.degree_cap).map_err(fail)?;
    res.expect(fam.degree <= 1, format!("fit degree {} > 1", fam.degree));
    let brackets = verify_p_brackets(&fam);
    res.expect(brackets.passed(), "bracket relations of the fitted operators");
    let rep = rep_from_family(&fam).map_err(fail)?;
    let rep_check = rep.verify();
    res.expect(rep_check.passed(), "representation of the derivation algebra");

    let back = module_from_rep(&rep, m.alpha().to_vec(), cc.bound).map_err(fail)?;
    let mut compared = 0usize;
    let mut mismatched = 0usize;
    res.expect(back.positions() == m.positions(), "round trip keeps the weight support");
    for g in lattice_box(cfg.presentation.d, cc.bound) {
        let sym = BasisSymbol::L(g);
        for pos in 0..m.positions().len() {
            compared += 1;
            if m.act_block(&sym, pos) != back.act_block(&sym, pos) {
                mismatched += 1;
            }
        }
    }
    res.expect(mismatched == 0, format!("round trip differs on {mismatched} of {compared} blocks"));

    let analysis = analyze_rep(&rep);
    res.expect(analysis.l_plus_killed, "positive part acts nontrivially");
    res.expect(analysis.beta.as_ref() == Some(&beta), format!("recovered beta: {}", analysis.beta_diagnostic));
    let expected = match mc.w {
        WSpec::Regular => Classification::TensorField {
            beta: beta.clone(),
            w_dim: w.total_dim(),
            w_regular: true,
        },
        WSpec::Trivial => Classification::RadicalTensor { beta: beta.clone() },
    };
    res.expect(analysis.classification == expected, "classification of the extracted representation");

    let other = &beta + &Scalar::one();
    let sum = tensor_rep(&w, &beta)
        .and_then(|a| a.direct_sum(&tensor_rep(&w, &other)?))
        .map_err(fail)?;
    let sum_analysis = analyze_rep(&sum);
    res.expect(
        matches!(sum_analysis.classification, Classification::NotIrreducible { .. }),
        "direct sum with two betas classified as irreducible",
    );

    #[derive(Serialize)]
    struct Details<'a, F, R, A> {
        family: &'a F,
        p_brackets: &'a crate::algebras::CheckReport,
        representation: &'a R,
        representation_check: &'a crate::algebras::CheckReport,
        round_trip_blocks: usize,
        round_trip_mismatches: usize,
        analysis: &'a A,
        direct_sum_analysis: &'a A,
    }
    Ok(res.finish(Details {
        family: &fam,
        p_brackets: &brackets,
        representation: &rep,
        representation_check: &rep_check,
        round_trip_blocks: compared,
        round_trip_mismatches: mismatched,
        analysis: &analysis,
        direct_sum_analysis: &sum_analysis,
    }))
}

fn cover_suite(cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    let cc = &cfg.cover;
    // Validate the module block once, so the closure below cannot fail.
    tensor_module(cfg, 1)?;
    let probe = cuspidality_probe(|b| tensor_module(cfg, b).expect("validated"), &cc.sizes, cc.inner)
        .map_err(|e| err("cover", e))?;
    let mut res = SuiteResult::new("cover");
    if probe.degenerate {
        res.notes.push("z = 0: the non-radical ideal is zero and so is the cover".into());
    } else {
        for w in &probe.windows {
            res.expect(w.j_outside_ker_pi == 0, format!("window-J inside ker pi at size {}", w.size));
            res.expect(w.homomorphism_failures == 0, format!("pi-hat is a homomorphism at size {}", w.size));
            res.expect(w.invariance_failures == 0, format!("window-J is invariant at size {}", w.size));
            res.expect(w.inner_surjective, format!("pi onto the inner window at size {}", w.size));
        }
        if probe.sizes.len() >= 2 {
            res.expect(probe.bounded, format!("maximal inner multiplicities {:?} settle", probe.max_multiplicity));
        }
    }
    Ok(res.finish(&probe))
}

/// One named suite.
pub fn run_suite(name: &str, cfg: &SessionConfig) -> Result<SuiteResult, ConfigError> {
    match name {
        "algebra" => algebra_suite(cfg),
        "module" => module_suite(cfg),
        "irreducible" => irreducible_suite(cfg),
        "grid" => grid_suite(cfg),
        "correspond" => correspond_suite(cfg),
        "cover" => cover_suite(cfg),
        other => Err(err("--suite", format!("unknown suite {other:?}"))),
    }
}

/// Execute `cmd`; suites run concurrently and are assembled in canonical order.
pub fn run(cmd: Command, cfg: &SessionConfig, suites: Option<&[String]>) -> Result<Report, ConfigError> {
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis());
    let clock = Instant::now();
    let names = match cmd.suite() {
        Some(s) => vec![s.to_string()],
        None => cfg.selected_suites(suites)?,
    };
    let results: Vec<(SuiteResult, u128)> = names
        .par_iter()
        .map(|n| {
            let t = Instant::now();
            run_suite(n, cfg).map(|r| (r, t.elapsed().as_millis()))
        })
        .collect::<Result<_, _>>()?;
    let timing = Timing {
        started_unix_ms: started,
        total_ms: clock.elapsed().as_millis(),
        suites_ms: results.iter().map(|(r, ms)| (r.name.clone(), *ms)).collect(),
    };
    Ok(Report::new(
        cmd.name(),
        cfg.clone(),
        results.into_iter().map(|(r, _)| r).collect(),
        timing,
    ))
}
