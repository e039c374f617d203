//! Sampling the operators `D(m) = t^{-m} L_m` and `D(m, r) = t^{-m} L_{m+r}`.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::modules::{WeightWindowModule, WindowedModule};
use crate::scalars::{lattice_box, LatticePoint};
use crate::torus::TorusPresentation;

use super::CorrespondenceError;

/// Exact samples on the radical window of radius `radius` (in R-coordinates).
#[derive(Clone, Debug)]
pub struct DSamples {
    pub torus: TorusPresentation,
    pub dims: Vec<usize>,
    pub radius: i64,
    /// `D(m)` on `U_s`: class index of `s`, then R-coordinates of `m`.
    pub d0: BTreeMap<usize, BTreeMap<LatticePoint, Matrix>>,
    /// `D(m, r)` from `U_s`: `(class of r, class of s)`, then R-coordinates of `m`.
    pub dr: BTreeMap<(usize, usize), BTreeMap<LatticePoint, Matrix>>,
}

/// Read the blocks of `L_m` and `L_{m+r}` at the base weights `alpha + s`, `s` in `Gamma_0`.
///
/// The center identifies each weight space with some `U_s`, so `t^{-m}` is implicit.
pub fn extract_d_operators(m: &WeightWindowModule) -> Result<DSamples, CorrespondenceError> {
    let torus = m.torus();
    let reps = torus.gamma_reps();
    let dims = m.dims().to_vec();
    let radius = m.bound() - 1;
    if radius < 1 {
        return Err(CorrespondenceError::WindowTooSmall(m.bound()));
    }
    let block = |g: &LatticePoint, s: &LatticePoint| -> Result<Matrix, CorrespondenceError> {
        let pos = m
            .position_index(s)
            .ok_or(CorrespondenceError::WindowTooSmall(m.bound()))?;
        let target = torus.gamma_index(&(s + g));
        let shape = (dims[target], dims[torus.gamma_index(s)]);
        match m.act_block(&m.symbol(g), pos)? {
            Some((t, blk)) => {
                if m.positions()[t] != s + g {
                    return Err(CorrespondenceError::Inconsistent(format!("L_{g} from {s}")));
                }
                Ok(blk)
            }
            None => Ok(Matrix::zeros(shape.0, shape.1)),
        }
    };
    let cells = lattice_box(torus.d(), radius);
    let mut d0 = BTreeMap::new();
    let mut dr = BTreeMap::new();
    for (si, s) in reps.iter().enumerate() {
        if dims[si] == 0 {
            continue;
        }
        let mut samples = BTreeMap::new();
        for c in &cells {
            samples.insert(c.clone(), block(&torus.from_radical_coords(c), s)?);
        }
        d0.insert(si, samples);
        for (ri, r) in reps.iter().enumerate().filter(|(_, r)| !r.is_zero()) {
            let mut samples = BTreeMap::new();
            for c in &cells {
                samples.insert(c.clone(), block(&(&torus.from_radical_coords(c) + r), s)?);
            }
            dr.insert((ri, si), samples);
        }
    }
    Ok(DSamples {
        torus: torus.clone(),
        dims,
        radius,
        d0,
        dr,
    })
}
