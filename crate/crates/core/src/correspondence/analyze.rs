//! Structure of a representation: the plus part, the single beta, and graded simplicity of `W`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebras::{z_degree, BasisSymbol};
use crate::linalg::Matrix;
use crate::modules::{GradedGlnModule, GradedSimplicity};
use crate::scalars::{multi_indices, LatticePoint, Scalar};
use crate::torus::TorusPresentation;

use super::rep::LRepresentation;
use super::CorrespondenceError;

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `V(alpha, beta, W)` with `W` the recovered graded module.
    TensorField { beta: Scalar, w_dim: usize, w_regular: bool },
    /// `rho(tbar^s) = 0` for all `s`: a module over the radical part, `T(alpha, beta)` type.
    RadicalTensor { beta: Scalar },
    NotIrreducible { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct RepAnalysis {
    pub brackets_hold: bool,
    pub d_eff: usize,
    /// (a) `rho` vanishes on every symbol of positive Z-degree.
    pub l_plus_killed: bool,
    /// (b) `rho(x_i d_gamma)` for the quotient `gl_{d,gamma}`, when (a) holds.
    pub gl_d_gamma_action: Option<BTreeMap<String, Matrix>>,
    /// (c) `x_i d_gamma -> c_i Id` with `c_i = beta gamma_i`.
    pub beta: Option<Scalar>,
    pub beta_diagnostic: String,
    /// Whether `rho(tbar^s)` vanishes for every `s`.
    pub tx_killed: bool,
    /// (d) graded simplicity of `W = U` under `X^s -> rho(tbar^s)`, `X^0 -> Id`.
    pub graded_simplicity: Option<GradedSimplicity>,
    pub w_isomorphic_to_regular: Option<bool>,
    /// Needs a composition series; reported as such.
    pub upper_triangularity: String,
    /// (e)
    pub classification: Classification,
}

/// The graded `gl_N`-module carried by `U`, or `None` if the matrices are not one.
pub fn induced_gln_module(rep: &LRepresentation) -> Option<GradedGlnModule> {
    let torus = rep.torus();
    let zero = LatticePoint::zero(torus.d());
    let actions: Vec<Matrix> = torus
        .gamma_reps()
        .into_iter()
        .map(|s| {
            if s.is_zero() {
                Matrix::identity(rep.total_dim())
            } else {
                rep.rho(&BasisSymbol::XT(zero.clone(), s))
            }
        })
        .collect();
    GradedGlnModule::new(torus, rep.dims().to_vec(), actions).ok()
}

fn single_beta(rep: &LRepresentation) -> Result<Scalar, String> {
    let d = rep.torus().d();
    let gamma = rep.gamma();
    let mut coeffs = Vec::new();
    for i in 0..d {
        let m = rep.rho(&BasisSymbol::XD(LatticePoint::unit(d, i)));
        match m.as_scalar_multiple() {
            Some(c) => coeffs.push(c),
            None => return Err(format!("x_{} d_gamma is not a scalar on U", i + 1)),
        }
    }
    // gamma_1 is a symbol, hence invertible.
    let beta = coeffs[0].checked_div(&gamma[0]).map_err(|e| e.to_string())?;
    for (i, c) in coeffs.iter().enumerate() {
        if c != &(&beta * &gamma[i]) {
            return Err(format!("x_{} d_gamma acts by {c}, not beta*g{}", i + 1, i + 1));
        }
    }
    Ok(beta)
}

pub fn analyze_rep(rep: &LRepresentation) -> RepAnalysis {
    let check = rep.verify();
    let d = rep.torus().d();
    let l_plus_killed = rep
        .symbols()
        .all(|(s, _)| z_degree(s).is_some_and(|j| j == 0));
    let tx_killed = rep.symbols().all(|(s, _)| !matches!(s, BasisSymbol::XT(..)));
    let gl_d_gamma_action = l_plus_killed.then(|| {
        (0..d)
            .map(|i| {
                let sym = BasisSymbol::XD(LatticePoint::unit(d, i));
                (sym.to_string(), rep.rho(&sym))
            })
            .collect()
    });
    let (beta, beta_diagnostic) = match single_beta(rep) {
        Ok(b) => (Some(b.clone()), format!("beta = {b}")),
        Err(e) => (None, e),
    };
    let w = induced_gln_module(rep);
    let graded_simplicity = w.as_ref().map(GradedGlnModule::graded_simplicity);
    let regular = GradedGlnModule::regular(rep.torus());
    let w_isomorphic_to_regular = w.as_ref().map(|w| w.isomorphism_to(&regular).is_some());

    let classification = if !check.passed() {
        Classification::NotIrreducible {
            reason: "not a representation".into(),
        }
    } else if !l_plus_killed {
        Classification::NotIrreducible {
            reason: "rho does not vanish on the positive part".into(),
        }
    } else if let Some(b) = beta.clone() {
        if tx_killed {
            if rep.total_dim() == 1 {
                Classification::RadicalTensor { beta: b }
            } else {
                Classification::NotIrreducible {
                    reason: format!("dim U = {} > 1 with every tbar^s acting as zero", rep.total_dim()),
                }
            }
        } else {
            match &graded_simplicity {
                Some(gs) if gs.graded_simple => Classification::TensorField {
                    beta: b,
                    w_dim: rep.total_dim(),
                    w_regular: w_isomorphic_to_regular == Some(true),
                },
                Some(gs) => Classification::NotIrreducible {
                    reason: format!("W is not graded-simple: {}", gs.reason),
                },
                None => Classification::NotIrreducible {
                    reason: "tbar^s do not define a graded gl_N-module".into(),
                },
            }
        }
    } else {
        Classification::NotIrreducible {
            reason: format!("no single beta: {beta_diagnostic}"),
        }
    };
    RepAnalysis {
        brackets_hold: check.passed(),
        d_eff: rep.d_eff(),
        l_plus_killed,
        gl_d_gamma_action,
        beta,
        beta_diagnostic,
        tx_killed,
        graded_simplicity,
        w_isomorphic_to_regular,
        upper_triangularity: "unverified: no composition series supplied".into(),
        classification,
    }
}

/// The representation of `V(alpha, beta, W)`: `x_i d_gamma -> beta gamma_i Id`, `tbar^s -> X^s`.
pub fn tensor_rep(w: &GradedGlnModule, beta: &Scalar) -> Result<LRepresentation, CorrespondenceError> {
    let torus = w.torus();
    let d = torus.d();
    let n = w.total_dim();
    let gamma = Scalar::gamma_vector(d);
    let zero = LatticePoint::zero(d);
    let mut mats = BTreeMap::new();
    for i in 0..d {
        mats.insert(
            BasisSymbol::XD(LatticePoint::unit(d, i)),
            Matrix::scalar(n, &(beta * &gamma[i])),
        );
    }
    for s in torus.gamma_reps().into_iter().filter(|s| !s.is_zero()) {
        mats.insert(BasisSymbol::XT(zero.clone(), s.clone()), w.action(&s).clone());
    }
    LRepresentation::new(torus, w.dims().to_vec(), 1, mats)
}

/// A two-dimensional representation over the commutative `d`-torus that does not kill the
/// positive part: `x_i d_gamma -> gamma_i diag(beta + 1, beta)`, `x^p d_gamma -> gamma^p E_12`
/// for `|p| = 2`.
pub fn nilpotent_rep(d: usize, beta: &Scalar) -> Result<LRepresentation, CorrespondenceError> {
    let torus = TorusPresentation::commutative(d);
    let gamma = Scalar::gamma_vector(d);
    let mut mats = BTreeMap::new();
    let diag = Matrix::from_rows(vec![
        vec![beta + &Scalar::one(), Scalar::zero()],
        vec![Scalar::zero(), beta.clone()],
    ]);
    for i in 0..d {
        mats.insert(BasisSymbol::XD(LatticePoint::unit(d, i)), diag.scale(&gamma[i]));
    }
    let mut e12 = Matrix::zeros(2, 2);
    e12[(0, 1)] = Scalar::one();
    for p in multi_indices(d, 2).into_iter().filter(|p| p.total() == 2) {
        let mut c = Scalar::one();
        for (g, &e) in gamma.iter().zip(p.entries()) {
            c = &c * &g.pow(e as u32);
        }
        mats.insert(BasisSymbol::XD(p), e12.scale(&c));
    }
    LRepresentation::new(&torus, vec![2], 1, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_tensor_rep_is_classified() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let rep = tensor_rep(&GradedGlnModule::regular(&t), &Scalar::beta()).unwrap();
        let a = analyze_rep(&rep);
        assert!(a.brackets_hold);
        assert_eq!(
            a.classification,
            Classification::TensorField {
                beta: Scalar::beta(),
                w_dim: 4,
                w_regular: true
            }
        );
    }

    #[test]
    fn two_betas_are_not_irreducible() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let w = GradedGlnModule::regular(&t);
        let sum = tensor_rep(&w, &Scalar::zero())
            .unwrap()
            .direct_sum(&tensor_rep(&w, &Scalar::one()).unwrap())
            .unwrap();
        let a = analyze_rep(&sum);
        assert!(a.brackets_hold);
        assert!(a.beta.is_none());
        assert!(matches!(a.classification, Classification::NotIrreducible { .. }));
    }

    #[test]
    fn nilpotent_rep_keeps_the_plus_part() {
        let rep = nilpotent_rep(2, &Scalar::beta()).unwrap();
        let a = analyze_rep(&rep);
        assert!(a.brackets_hold, "{:?}", rep.verify().violations.first());
        assert!(!a.l_plus_killed);
        assert_eq!(a.d_eff, 1);
    }

    #[test]
    fn commutative_one_dimensional_is_radical_branch() {
        let t = TorusPresentation::commutative(2);
        let rep = tensor_rep(&GradedGlnModule::trivial(&t), &Scalar::from_int(3)).unwrap();
        assert_eq!(
            analyze_rep(&rep).classification,
            Classification::RadicalTensor {
                beta: Scalar::from_int(3)
            }
        );
    }
}
