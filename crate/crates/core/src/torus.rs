//! Rational quantum tori in normal form.
//!
//! The presentation is `(d, z, k_1, ..., k_z)` with `k_{i+1} | k_i`; the pair
//! `(t_{2i-1}, t_{2i})` commutes up to `q_i = zeta_{k_i}` and every other pair
//! commutes.

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::scalars::{lattice_box, Cyclotomic, LatticePoint, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("2z = {0} exceeds the rank d = {1}")]
    TooManyPairs(usize, usize),
    #[error("expected {expected} orders, got {got}")]
    OrderCount { expected: usize, got: usize },
    #[error("orders must be positive")]
    ZeroOrder,
    #[error("divisibility chain violated: k_{} = {} does not divide k_{} = {}", .index + 1, .next, .index, .prev)]
    Divisibility { index: usize, prev: u32, next: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct TorusPresentation {
    d: usize,
    orders: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    d: usize,
    z: usize,
    #[serde(default)]
    orders: Vec<u32>,
}

impl TryFrom<RawPresentation> for TorusPresentation {
    type Error = TorusError;
    fn try_from(r: RawPresentation) -> Result<Self, TorusError> {
        if r.orders.len() != r.z {
            return Err(TorusError::OrderCount {
                expected: r.z,
                got: r.orders.len(),
            });
        }
        TorusPresentation::new(r.d, r.orders)
    }
}

impl From<TorusPresentation> for RawPresentation {
    fn from(p: TorusPresentation) -> Self {
        RawPresentation {
            d: p.d,
            z: p.z(),
            orders: p.orders,
        }
    }
}

/// `coefficient * t^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMonomial {
    pub exponent: LatticePoint,
    pub coefficient: Cyclotomic,
}

impl TorusPresentation {
    pub fn new(d: usize, orders: Vec<u32>) -> Result<Self, TorusError> {
        if 2 * orders.len() > d {
            return Err(TorusError::TooManyPairs(2 * orders.len(), d));
        }
        if orders.iter().any(|&k| k == 0) {
            return Err(TorusError::ZeroOrder);
        }
        for (i, w) in orders.windows(2).enumerate() {
            if w[0] % w[1] != 0 {
                return Err(TorusError::Divisibility {
                    index: i + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(TorusPresentation { d, orders })
    }

    /// The commutative torus of rank `d`.
    pub fn commutative(d: usize) -> Self {
        TorusPresentation { d, orders: vec![] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn z(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// `N = k_1 ... k_z`, the size of the matrix realization.
    pub fn n(&self) -> usize {
        self.orders.iter().map(|&k| k as usize).product()
    }

    /// `L`, the common order of all `q_i` (equal to `k_1` by divisibility).
    pub fn root_order(&self) -> u32 {
        self.orders.first().copied().unwrap_or(1)
    }

    /// `|Gamma| = N^2`.
    pub fn gamma_order(&self) -> usize {
        self.n() * self.n()
    }

    /// Step of the radical lattice along coordinate `j`.
    pub fn radical_scale(&self, j: usize) -> i64 {
        if j < 2 * self.z() {
            self.orders[j / 2] as i64
        } else {
            1
        }
    }

    pub fn radical_scales(&self) -> Vec<i64> {
        (0..self.d).map(|j| self.radical_scale(j)).collect()
    }

    fn check(&self, m: &LatticePoint) -> Result<(), TorusError> {
        if m.dim() != self.d {
            return Err(TorusError::Dimension {
                expected: self.d,
                got: m.dim(),
            });
        }
        Ok(())
    }

    /// Exponent `e` with `sigma(m, n) = zeta_L^e`, `0 <= e < L`.
    pub fn sigma_exponent(&self, m: &LatticePoint, n: &LatticePoint) -> i64 {
        let l = self.root_order() as i64;
        let mut e = 0i64;
        for (i, &k) in self.orders.iter().enumerate() {
            let step = l / k as i64;
            e += step * (m.0[2 * i + 1] * n.0[2 * i]).rem_euclid(k as i64);
        }
        e.rem_euclid(l)
    }

    /// The cocycle `sigma(m, n) = prod_i q_i^{m_{2i} n_{2i-1}}`.
    pub fn sigma(&self, m: &LatticePoint, n: &LatticePoint) -> Result<Cyclotomic, TorusError> {
        self.check(m)?;
        self.check(n)?;
        Ok(Cyclotomic::root_of_unity(
            self.root_order(),
            self.sigma_exponent(m, n),
        ))
    }

    /// `sigma(r, s) - sigma(s, r)` as a scalar.
    pub fn commutator_coefficient(&self, r: &LatticePoint, s: &LatticePoint) -> Scalar {
        let a = self.sigma_exponent(r, s);
        let b = self.sigma_exponent(s, r);
        if a == b {
            return Scalar::zero();
        }
        let l = self.root_order();
        Scalar::from_cyclotomic(
            &Cyclotomic::root_of_unity(l, a) - &Cyclotomic::root_of_unity(l, b),
        )
    }

    pub fn sigma_scalar(&self, m: &LatticePoint, n: &LatticePoint) -> Scalar {
        Scalar::from_cyclotomic(Cyclotomic::root_of_unity(
            self.root_order(),
            self.sigma_exponent(m, n),
        ))
    }

    pub fn radical_basis(&self) -> Vec<LatticePoint> {
        (0..self.d)
            .map(|j| LatticePoint::unit(self.d, j).scale(self.radical_scale(j)))
            .collect()
    }

    pub fn in_radical(&self, m: &LatticePoint) -> bool {
        m.0.iter()
            .enumerate()
            .all(|(j, &x)| x.rem_euclid(self.radical_scale(j)) == 0)
    }

    /// `m = s + r` with `s` in `Gamma_0` and `r` in `R`.
    pub fn gamma_reduce(&self, m: &LatticePoint) -> (LatticePoint, LatticePoint) {
        let s = LatticePoint(
            m.0.iter()
                .enumerate()
                .map(|(j, &x)| {
                    if j < 2 * self.z() {
                        x.rem_euclid(self.radical_scale(j))
                    } else {
                        0
                    }
                })
                .collect(),
        );
        let r = m - &s;
        (s, r)
    }

    pub fn reduce(&self, m: &LatticePoint) -> LatticePoint {
        self.gamma_reduce(m).0
    }

    /// Coordinates of `m` in the radical basis; `None` if `m` is not in `R`.
    pub fn radical_coords(&self, m: &LatticePoint) -> Option<LatticePoint> {
        if !self.in_radical(m) {
            return None;
        }
        Some(LatticePoint(
            m.0.iter()
                .enumerate()
                .map(|(j, &x)| x / self.radical_scale(j))
                .collect(),
        ))
    }

    pub fn from_radical_coords(&self, c: &LatticePoint) -> LatticePoint {
        LatticePoint(
            c.0.iter()
                .enumerate()
                .map(|(j, &x)| x * self.radical_scale(j))
                .collect(),
        )
    }

    /// Radical points with radical coordinates in `[-b, b]^d`.
    pub fn radical_window(&self, b: i64) -> Vec<LatticePoint> {
        lattice_box(self.d, b)
            .iter()
            .map(|c| self.from_radical_coords(c))
            .collect()
    }

    /// The representatives `Gamma_0`, in lexicographic order.
    pub fn gamma_reps(&self) -> Vec<LatticePoint> {
        let mut out = vec![LatticePoint::zero(self.d)];
        for j in 0..2 * self.z() {
            let k = self.radical_scale(j);
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..k).map(move |x| {
                        let mut q = p.clone();
                        q.0[j] = x;
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Position of the class of `m` in [`Self::gamma_reps`].
    pub fn gamma_index(&self, m: &LatticePoint) -> usize {
        let s = self.reduce(m);
        let mut idx = 0usize;
        for j in 0..2 * self.z() {
            idx = idx * self.radical_scale(j) as usize + s.0[j] as usize;
        }
        idx
    }

    pub fn torus_mul(&self, a: &TorusMonomial, b: &TorusMonomial) -> TorusMonomial {
        let sigma = Cyclotomic::root_of_unity(
            self.root_order(),
            self.sigma_exponent(&a.exponent, &b.exponent),
        );
        TorusMonomial {
            exponent: &a.exponent + &b.exponent,
            coefficient: &(&a.coefficient * &b.coefficient) * &sigma,
        }
    }

    /// `X_{2i-1} = diag(1, q_i, ..., q_i^{k_i - 1})` and `X_{2i}` the cyclic shift.
    pub fn generator_matrices(&self, i: usize) -> (Matrix, Matrix) {
        let k = self.orders[i] as usize;
        let l = self.root_order();
        let step = (l / self.orders[i]) as i64;
        let diag = Matrix::from_cyclotomic(k, k, |a, b| {
            if a == b {
                Cyclotomic::root_of_unity(l, step * a as i64)
            } else {
                Cyclotomic::zero()
            }
        });
        let shift = Matrix::from_cyclotomic(k, k, |a, b| {
            if b == (a + 1) % k {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        (diag, shift)
    }

    /// `X^n = (x) X_{2i-1}^{n_{2i-1}} X_{2i}^{n_{2i}}`, an `N x N` matrix.
    pub fn matrix_realization(&self, n: &LatticePoint) -> Matrix {
        let mut acc = Matrix::identity(1);
        for i in 0..self.z() {
            let k = self.orders[i] as i64;
            let (a, b) = self.generator_matrices(i);
            let f = &a.pow(n.0[2 * i].rem_euclid(k) as u32) * &b.pow(n.0[2 * i + 1].rem_euclid(k) as u32);
            acc = acc.kron(&f);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v)
    }

    #[test]
    fn sigma_examples() {
        let p = TorusPresentation::new(2, vec![2]).unwrap();
        assert!(p.sigma(&pt(&[1, 0]), &pt(&[0, 1])).unwrap().is_one());
        assert_eq!(
            p.sigma(&pt(&[0, 1]), &pt(&[1, 0])).unwrap(),
            Cyclotomic::from_int(-1)
        );
        let c = TorusPresentation::commutative(2);
        assert!(c.sigma(&pt(&[3, 4]), &pt(&[-1, 2])).unwrap().is_one());
    }

    #[test]
    fn radical_bases() {
        let p = TorusPresentation::new(3, vec![3]).unwrap();
        assert_eq!(
            p.radical_basis(),
            vec![pt(&[3, 0, 0]), pt(&[0, 3, 0]), pt(&[0, 0, 1])]
        );
        assert_eq!(
            TorusPresentation::commutative(2).radical_basis(),
            vec![pt(&[1, 0]), pt(&[0, 1])]
        );
    }

    #[test]
    fn reduction() {
        let p = TorusPresentation::new(2, vec![2]).unwrap();
        assert_eq!(p.gamma_reduce(&pt(&[3, -1])), (pt(&[1, 1]), pt(&[2, -2])));
        let c = TorusPresentation::commutative(2);
        assert_eq!(c.gamma_reduce(&pt(&[5, 7])), (pt(&[0, 0]), pt(&[5, 7])));
    }

    #[test]
    fn matrices() {
        let p = TorusPresentation::new(2, vec![2]).unwrap();
        let x1 = p.matrix_realization(&pt(&[1, 0]));
        assert_eq!(x1[(1, 1)], Scalar::from_int(-1));
        assert!(p.matrix_realization(&pt(&[2, 0])).is_identity());
        let x2 = p.matrix_realization(&pt(&[0, 1]));
        assert!(x2[(0, 1)].is_one() && x2[(1, 0)].is_one() && x2[(0, 0)].is_zero());
    }

    #[test]
    fn gamma_indexing() {
        let p = TorusPresentation::new(4, vec![2, 2]).unwrap();
        let reps = p.gamma_reps();
        assert_eq!(reps.len(), 16);
        for (i, r) in reps.iter().enumerate() {
            assert_eq!(p.gamma_index(r), i);
        }
    }

    #[test]
    fn bad_chain() {
        assert!(matches!(
            TorusPresentation::new(4, vec![2, 3]),
            Err(TorusError::Divisibility { .. })
        ));
    }
}
