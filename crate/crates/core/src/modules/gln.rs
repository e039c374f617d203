//! Gamma-graded `gl_N`-modules.

use serde::Serialize;

use crate::linalg::{Matrix, Subspace};
use crate::scalars::{LatticePoint, Scalar};
use crate::torus::TorusPresentation;

/// A Gamma-graded `gl_N`-module given by the action matrices of `X^n`,
/// `n` in `Gamma_0`. The basis is grouped by class in `gamma_reps` order.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedGlnModule {
    torus: TorusPresentation,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    actions: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradedSimplicity {
    pub graded_simple: bool,
    pub reason: String,
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        out.push(acc);
        acc += d;
    }
    out.push(acc);
    out
}

impl GradedGlnModule {
    /// Build and validate.
    pub fn new(torus: &TorusPresentation, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self, String> {
        let m = GradedGlnModule {
            torus: torus.clone(),
            offsets: offsets(&dims),
            dims,
            actions,
        };
        m.validate()?;
        Ok(m)
    }

    /// `M_N(C)` under left multiplication, graded by `X^n -> n`.
    pub fn regular(torus: &TorusPresentation) -> Self {
        let reps = torus.gamma_reps();
        let n = reps.len();
        let actions = reps
            .iter()
            .map(|m| {
                let mut a = Matrix::zeros(n, n);
                for (j, s) in reps.iter().enumerate() {
                    let i = torus.gamma_index(&(m + s));
                    a[(i, j)] = torus.sigma_scalar(m, s);
                }
                a
            })
            .collect();
        GradedGlnModule {
            torus: torus.clone(),
            dims: vec![1; n],
            offsets: offsets(&vec![1; n]),
            actions,
        }
    }

    /// One-dimensional module concentrated in the class of `s`; only `X^0` acts, as the identity.
    pub fn one_dimensional(torus: &TorusPresentation, s: &LatticePoint) -> Self {
        let reps = torus.gamma_reps();
        let mut dims = vec![0; reps.len()];
        dims[torus.gamma_index(s)] = 1;
        let actions = reps
            .iter()
            .map(|n| {
                if n.is_zero() {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(1, 1)
                }
            })
            .collect();
        GradedGlnModule {
            torus: torus.clone(),
            offsets: offsets(&dims),
            dims,
            actions,
        }
    }

    pub fn trivial(torus: &TorusPresentation) -> Self {
        Self::one_dimensional(torus, &LatticePoint::zero(torus.d()))
    }

    pub fn torus(&self) -> &TorusPresentation {
        &self.torus
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.dims.len()]
    }

    pub fn offset(&self, class: usize) -> usize {
        self.offsets[class]
    }

    /// Classes with nonzero graded piece.
    pub fn support(&self) -> Vec<LatticePoint> {
        self.torus
            .gamma_reps()
            .into_iter()
            .zip(&self.dims)
            .filter(|(_, &d)| d > 0)
            .map(|(s, _)| s)
            .collect()
    }

    /// Action of `X^n` (any `n`, read through its class).
    pub fn action(&self, n: &LatticePoint) -> &Matrix {
        &self.actions[self.torus.gamma_index(n)]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Block of `X^n` from the piece of class `s` to the piece of class `s + n`.
    pub fn block(&self, n: &LatticePoint, s: &LatticePoint) -> Matrix {
        let a = self.action(n);
        let (si, ti) = (self.torus.gamma_index(s), self.torus.gamma_index(&(s + n)));
        let rows: Vec<usize> = (self.offsets[ti]..self.offsets[ti + 1]).collect();
        let cols: Vec<usize> = (self.offsets[si]..self.offsets[si + 1]).collect();
        a.select(&rows, &cols)
    }

    /// Check the grading, `X^0 = Id`, and the `gl_N` bracket relations.
    pub fn validate(&self) -> Result<(), String> {
        let reps = self.torus.gamma_reps();
        let n = self.total_dim();
        if self.dims.len() != reps.len() {
            return Err(format!("expected {} graded dimensions, got {}", reps.len(), self.dims.len()));
        }
        if self.actions.len() != reps.len() {
            return Err(format!("expected {} action matrices, got {}", reps.len(), self.actions.len()));
        }
        for (m, a) in reps.iter().zip(&self.actions) {
            if a.rows() != n || a.cols() != n {
                return Err(format!("X{m} has shape {}x{}, expected {n}x{n}", a.rows(), a.cols()));
            }
        }
        if !self.actions[0].is_identity() {
            return Err("X^0 must act as the identity".into());
        }
        for (mi, m) in reps.iter().enumerate() {
            for (si, s) in reps.iter().enumerate() {
                let ti = self.torus.gamma_index(&(m + s));
                for r in 0..n {
                    for c in self.offsets[si]..self.offsets[si + 1] {
                        let inside = r >= self.offsets[ti] && r < self.offsets[ti + 1];
                        if !inside && !self.actions[mi][(r, c)].is_zero() {
                            return Err(format!("X{m} does not map class {s} into class {}", &reps[ti]));
                        }
                    }
                }
            }
        }
        for (mi, m) in reps.iter().enumerate() {
            for (ni, nn) in reps.iter().enumerate().skip(mi + 1) {
                let lhs = self.actions[mi].commutator(&self.actions[ni]);
                let c = self.torus.commutator_coefficient(m, nn);
                let rhs = self.action(&(m + nn)).scale(&c);
                if lhs != rhs {
                    return Err(format!("bracket relation fails for X{m}, X{nn}"));
                }
            }
        }
        Ok(())
    }

    /// Graded pieces of the associative algebra generated by `Id` and the `X^n`.
    fn generated_algebra(&self) -> Vec<Subspace> {
        let reps = self.torus.gamma_reps();
        let n = self.total_dim();
        let flat = |m: &Matrix| -> Vec<Scalar> { m.to_rows().into_iter().flatten().collect() };
        let unflat = |v: &[Scalar]| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        let mut pieces: Vec<Subspace> = (0..reps.len()).map(|_| Subspace::new(n * n)).collect();
        let mut queue: Vec<(usize, Vec<Scalar>)> = Vec::new();
        if let Some(v) = pieces[0].insert(&flat(&Matrix::identity(n))) {
            queue.push((0, v));
        }
        while let Some((g, v)) = queue.pop() {
            let b = unflat(&v);
            for (mi, m) in reps.iter().enumerate() {
                if self.actions[mi].is_zero() {
                    continue;
                }
                let prod = &self.actions[mi] * &b;
                let h = self.torus.gamma_index(&(m + &reps[g]));
                if let Some(w) = pieces[h].insert(&flat(&prod)) {
                    queue.push((h, w));
                }
            }
        }
        pieces
    }

    /// Graded simplicity: each nonzero piece is a simple module over the degree-0
    /// part (full matrix algebra) and every piece generates every other piece.
    pub fn graded_simplicity(&self) -> GradedSimplicity {
        let reps = self.torus.gamma_reps();
        let n = self.total_dim();
        if n == 0 {
            return GradedSimplicity {
                graded_simple: false,
                reason: "zero module".into(),
            };
        }
        let alg = self.generated_algebra();
        let range = |c: usize| -> Vec<usize> { (self.offsets[c]..self.offsets[c + 1]).collect() };
        for (si, s) in reps.iter().enumerate() {
            let ds = self.dims[si];
            if ds == 0 {
                continue;
            }
            let mut a0 = Subspace::new(ds * ds);
            for v in alg[0].basis() {
                let m = Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
                let blk = m.select(&range(si), &range(si));
                a0.insert(&blk.to_rows().into_iter().flatten().collect::<Vec<_>>());
            }
            if a0.dim() != ds * ds {
                return GradedSimplicity {
                    graded_simple: false,
                    reason: format!(
                        "degree-0 part acts on class {s} with dimension {} < {}",
                        a0.dim(),
                        ds * ds
                    ),
                };
            }
            for (ti, t) in reps.iter().enumerate() {
                let dt = self.dims[ti];
                if dt == 0 {
                    continue;
                }
                let g = self.torus.gamma_index(&(t - s));
                let mut img = Subspace::new(dt);
                'outer: for v in alg[g].basis() {
                    let m = Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
                    let blk = m.select(&range(ti), &range(si));
                    for j in 0..ds {
                        img.insert(&blk.col(j));
                        if img.is_full() {
                            break 'outer;
                        }
                    }
                }
                if !img.is_full() {
                    return GradedSimplicity {
                        graded_simple: false,
                        reason: format!("class {s} does not generate class {t}"),
                    };
                }
            }
        }
        GradedSimplicity {
            graded_simple: true,
            reason: "every homogeneous vector generates".into(),
        }
    }

    /// A graded isomorphism `T` with `T X^n = X'^n T`, if one exists.
    pub fn isomorphism_to(&self, other: &GradedGlnModule) -> Option<Matrix> {
        if self.dims != other.dims || self.torus != other.torus {
            return None;
        }
        let n = self.total_dim();
        // unknowns: entries of the diagonal blocks of T
        let mut unknowns = Vec::new();
        for c in 0..self.dims.len() {
            for i in self.offsets[c]..self.offsets[c + 1] {
                for j in self.offsets[c]..self.offsets[c + 1] {
                    unknowns.push((i, j));
                }
            }
        }
        let build = |x: &[Scalar]| {
            let mut t = Matrix::zeros(n, n);
            for ((i, j), v) in unknowns.iter().zip(x) {
                t[(*i, *j)] = v.clone();
            }
            t
        };
        let mut rows = Vec::new();
        for (a, b) in self.actions.iter().zip(&other.actions) {
            let cols: Vec<Matrix> = (0..unknowns.len())
                .map(|k| {
                    let mut e = vec![Scalar::zero(); unknowns.len()];
                    e[k] = Scalar::one();
                    let t = build(&e);
                    &(&t * a) - &(b * &t)
                })
                .collect();
            for i in 0..n {
                for j in 0..n {
                    let row: Vec<Scalar> = cols.iter().map(|c| c[(i, j)].clone()).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let sys = if rows.is_empty() {
            Matrix::zeros(0, unknowns.len())
        } else {
            Matrix::from_rows(rows)
        };
        let ns = sys.nullspace();
        if ns.is_empty() {
            return None;
        }
        for v in &ns {
            let t = build(v);
            if t.inverse().is_some() {
                return Some(t);
            }
        }
        let mut combo = vec![Scalar::zero(); unknowns.len()];
        for (k, v) in ns.iter().enumerate() {
            let w = Scalar::from_int(k as i64 + 1);
            for (c, x) in combo.iter_mut().zip(v) {
                *c = &*c + &(&w * x);
            }
        }
        let t = build(&combo);
        t.inverse().map(|_| t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_module_is_graded_simple() {
        for orders in [vec![2], vec![3]] {
            let t = TorusPresentation::new(2, orders).unwrap();
            let w = GradedGlnModule::regular(&t);
            assert!(w.validate().is_ok());
            assert!(w.graded_simplicity().graded_simple);
            assert!(w.isomorphism_to(&w).is_some());
        }
    }

    #[test]
    fn one_dimensional_module() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let w = GradedGlnModule::one_dimensional(&t, &LatticePoint::new([1, 0]));
        assert!(w.validate().is_ok());
        assert!(w.graded_simplicity().graded_simple);
        assert_eq!(w.total_dim(), 1);
    }

    #[test]
    fn direct_sum_is_not_graded_simple() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let r = GradedGlnModule::regular(&t);
        let dims = vec![2; 4];
        let actions = r
            .actions()
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(8, 8);
                for i in 0..4 {
                    for j in 0..4 {
                        for k in 0..2 {
                            m[(2 * i + k, 2 * j + k)] = a[(i, j)].clone();
                        }
                    }
                }
                m
            })
            .collect();
        let w = GradedGlnModule::new(&t, dims, actions).unwrap();
        assert!(!w.graded_simplicity().graded_simple);
    }

    #[test]
    fn rejects_non_graded_action() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let mut acts: Vec<Matrix> = GradedGlnModule::regular(&t).actions().to_vec();
        acts[1] = Matrix::identity(4);
        assert!(GradedGlnModule::new(&t, vec![1; 4], acts).is_err());
    }
}
