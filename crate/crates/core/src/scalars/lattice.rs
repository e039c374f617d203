use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of the integer lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zero(d: usize) -> Self {
        LatticePoint(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        LatticePoint(v)
    }

    pub fn new(v: impl Into<Vec<i64>>) -> Self {
        LatticePoint(v.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticePoint(self.0.iter().map(|x| x * k).collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Sum of entries (total degree for nonnegative points).
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All points of the box `[-bound, bound]^d`, in lexicographic order.
pub fn lattice_box(d: usize, bound: i64) -> Vec<LatticePoint> {
    let mut out = vec![LatticePoint::zero(d)];
    for i in 0..d {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for p in &out {
            for x in -bound..=bound {
                let mut q = p.clone();
                q.0[i] = x;
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Nonnegative multi-indices of total degree at most `max_total`, ordered by
/// total degree then lexicographically.
pub fn multi_indices(d: usize, max_total: usize) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        out.extend(multi_indices_of_degree(d, total));
    }
    out
}

pub fn multi_indices_of_degree(d: usize, total: usize) -> Vec<LatticePoint> {
    fn rec(d: usize, left: usize, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if prefix.len() + 1 == d {
            prefix.push(left as i64);
            out.push(LatticePoint(prefix.clone()));
            prefix.pop();
            return;
        }
        for x in (0..=left).rev() {
            prefix.push(x as i64);
            rec(d, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if total == 0 {
            out.push(LatticePoint(Vec::new()));
        }
        return out;
    }
    rec(d, total, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_size() {
        assert_eq!(lattice_box(2, 2).len(), 25);
        assert_eq!(lattice_box(3, 1).len(), 27);
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices_of_degree(2, 3).len(), 4);
        assert_eq!(multi_indices(2, 2).len(), 6);
        assert_eq!(multi_indices(3, 2).len(), 10);
    }
}
