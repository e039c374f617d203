//! Reducibility grid: reachability verdicts against the closed-form criterion.

use serde::Serialize;

use crate::scalars::{LatticePoint, Scalar};
use crate::torus::TorusPresentation;

use super::gln::GradedGlnModule;
use super::irreducible::{reducibility_criterion, reachability_irreducible, IrreducibilityReport, Verdict};
use super::window::{build_tensor_module, WindowedModule};
use super::ModuleError;

/// The graded module `W` used in a grid cell.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum WChoice {
    /// Commutative torus, `W` one-dimensional.
    Trivial,
    /// `M_N(C)` over the given torus.
    Regular,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCell {
    pub torus: TorusPresentation,
    pub w: WChoice,
    pub alpha: Vec<Scalar>,
    pub beta: Scalar,
    pub criterion_reducible: bool,
    pub report: IrreducibilityReport,
    /// `None` for inconclusive verdicts.
    pub agrees: Option<bool>,
    /// For reducible verdicts: whether the witness is the expected submodule.
    pub witness_expected: Option<bool>,
}

/// The submodule shape expected for a reducible `T(alpha, beta)`: for `beta = 0` the line
/// at offset `-alpha`, for `beta = 1` everything except that weight.
fn expected_witness(report: &IrreducibilityReport, alpha: &[i64], beta: &Scalar, total: usize) -> bool {
    let Verdict::Reducible { witness } = &report.verdict else {
        return false;
    };
    let neg = LatticePoint::new(alpha.iter().map(|a| -a).collect::<Vec<_>>()).to_string();
    let at_neg = witness.pieces.iter().any(|p| p.weight_offset == neg);
    if !witness.invariant {
        return false;
    }
    if beta.is_zero() {
        witness.dimension == 1 && at_neg
    } else {
        witness.dimension + 1 == total && !at_neg && witness.deficient == vec![neg]
    }
}

/// Whether the weight offset `-alpha`, where the proper submodules live, is in the inner window.
/// A window that does not see it cannot confirm the criterion.
pub fn special_weight_is_inner<M: WindowedModule + ?Sized>(m: &M, alpha: &[Scalar], margin: i64) -> bool {
    alpha
        .iter()
        .map(|a| a.as_integer().and_then(|n| i64::try_from(n).ok()).map(|n| -n))
        .collect::<Option<Vec<i64>>>()
        .and_then(|neg| m.position_index(&LatticePoint::new(neg)))
        .is_some_and(|p| m.is_inner(p, margin))
}

/// Build `V(alpha, beta, W)` on `[-bound, bound]^d`, decide it, and compare.
pub fn grid_cell(
    torus: &TorusPresentation,
    w: WChoice,
    alpha: Vec<Scalar>,
    beta: Scalar,
    bound: i64,
    margin: i64,
) -> Result<GridCell, ModuleError> {
    let wm = match w {
        WChoice::Trivial => GradedGlnModule::trivial(torus),
        WChoice::Regular => GradedGlnModule::regular(torus),
    };
    let criterion = reducibility_criterion(torus, &alpha, &beta, &wm);
    let m = build_tensor_module(torus, alpha.clone(), beta.clone(), wm, bound)?;
    let report = reachability_irreducible(&m, margin, || Ok(Box::new(m.resized(bound + 1)?)))?;
    let special_inner = special_weight_is_inner(&m, &alpha, margin);
    let agrees = match report.verdict {
        Verdict::Inconclusive { .. } => None,
        Verdict::WindowIrreducible if criterion && !special_inner => None,
        Verdict::WindowIrreducible => Some(!criterion),
        Verdict::Reducible { .. } => Some(criterion),
    };
    let witness_expected = report.is_reducible().then(|| {
        let ints: Option<Vec<i64>> = alpha
            .iter()
            .map(|a| a.as_integer().and_then(|n| i64::try_from(n).ok()))
            .collect();
        ints.is_some_and(|a| expected_witness(&report, &a, &beta, m.dim()))
    });
    Ok(GridCell {
        torus: torus.clone(),
        w,
        alpha,
        beta,
        criterion_reducible: criterion,
        report,
        agrees,
        witness_expected,
    })
}

/// The standard grid: `W` trivial over the commutative 2-torus or regular at `k = 2`,
/// `alpha` in {symbolic, (0,0), (1,-2)}, `beta` in {0, 1, 2, 1/2, symbolic}.
pub fn reducibility_grid(bound: i64, margin: i64) -> Result<Vec<GridCell>, ModuleError> {
    let tori = [
        (TorusPresentation::commutative(2), WChoice::Trivial),
        (TorusPresentation::new(2, vec![2]).expect("valid"), WChoice::Regular),
    ];
    let alphas = [
        vec![Scalar::alpha(0), Scalar::alpha(1)],
        vec![Scalar::zero(), Scalar::zero()],
        vec![Scalar::one(), Scalar::from_int(-2)],
    ];
    let betas = [
        Scalar::zero(),
        Scalar::one(),
        Scalar::from_int(2),
        Scalar::from_ratio(1, 2),
        Scalar::beta(),
    ];
    let mut out = Vec::new();
    for (t, w) in &tori {
        for a in &alphas {
            for b in &betas {
                out.push(grid_cell(t, *w, a.clone(), b.clone(), bound, margin)?);
            }
        }
    }
    Ok(out)
}
