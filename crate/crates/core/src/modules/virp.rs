//! Modules of intermediate series `V(a, b, F)` over the gap-p Virasoro algebra.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebras::{Algebra, BasisSymbol};
use crate::linalg::Matrix;
use crate::scalars::{LatticePoint, Scalar};

use super::window::WindowedModule;
use super::ModuleError;

/// A `(p-1) x p` matrix `f[i][j]`, `1 <= i <= p-1`, `0 <= j <= p-1`.
/// Row `i` is stored at index `i - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix {
    p: i64,
    rows: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FDiagnostics {
    pub valid: bool,
    pub support: Vec<i64>,
    /// First violated condition: "I", "II" or "III".
    pub violated: Option<String>,
    pub detail: Option<String>,
}

impl FMatrix {
    pub fn new(p: i64, rows: Vec<Vec<Scalar>>) -> Result<Self, ModuleError> {
        if p < 1 {
            return Err(ModuleError::InvalidF(format!("gap {p} < 1")));
        }
        if rows.len() != (p - 1) as usize {
            return Err(ModuleError::Dimension {
                expected: (p - 1) as usize,
                got: rows.len(),
            });
        }
        for r in &rows {
            if r.len() != p as usize {
                return Err(ModuleError::Dimension {
                    expected: p as usize,
                    got: r.len(),
                });
            }
        }
        Ok(FMatrix { p, rows })
    }

    /// All entries equal to one.
    pub fn ones(p: i64) -> Self {
        FMatrix::new(p, vec![vec![Scalar::one(); p as usize]; (p - 1) as usize]).expect("shape")
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// `f_{i,j}` with `i` and `j` read mod p; `i = 0 mod p` is not an entry.
    pub fn get(&self, i: i64, j: i64) -> &Scalar {
        let i = i.rem_euclid(self.p);
        assert!(i != 0, "row index divisible by p");
        &self.rows[(i - 1) as usize][j.rem_euclid(self.p) as usize]
    }

    /// `o(F)`: columns with a nonzero entry. For `p = 1` there are no rows and
    /// the module is the ordinary intermediate series, so the support is `{0}`.
    pub fn support(&self) -> Vec<i64> {
        if self.p == 1 {
            return vec![0];
        }
        (0..self.p)
            .filter(|&j| (1..self.p).any(|i| !self.get(i, j).is_zero()))
            .collect()
    }

    /// Check conditions (I), (II), (III), reporting the first failure.
    pub fn validate(&self) -> FDiagnostics {
        let support = self.support();
        let fail = |c: &str, detail: String| FDiagnostics {
            valid: false,
            support: support.clone(),
            violated: Some(c.to_string()),
            detail: Some(detail),
        };
        if !support.contains(&0) {
            return fail("I", "0 is not in o(F)".into());
        }
        let p = self.p;
        for i in 1..p {
            for j in 0..p {
                if !self.get(i, j).is_zero() && !support.contains(&(i + j).rem_euclid(p)) {
                    return fail(
                        "II",
                        format!("f[{i},{j}] != 0 but column {} is zero", (i + j).rem_euclid(p)),
                    );
                }
            }
        }
        for i in 0..p {
            for r in 1..p {
                for s in 1..p {
                    let lhs = self.get(r, i + s) * self.get(s, i);
                    let rhs = self.get(s, i + r) * self.get(r, i);
                    if lhs != rhs {
                        return fail("III", format!("i={i}, r={r}, s={s}: {lhs} != {rhs}"));
                    }
                }
            }
        }
        FDiagnostics {
            valid: true,
            support,
            violated: None,
            detail: None,
        }
    }
}

/// `V(a, b, F)` on the positions `j + n`, `j` in `o(F)`, `n = p k`, `|k| <= bound`.
#[derive(Clone, Debug)]
pub struct VirPModule {
    a: Scalar,
    b: Scalar,
    f: FMatrix,
    bound: i64,
    algebra: Algebra,
    positions: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

pub fn build_virp_module(a: Scalar, b: Scalar, f: FMatrix, bound: i64) -> Result<VirPModule, ModuleError> {
    if bound < 1 {
        return Err(ModuleError::DegenerateWindow(format!("bound {bound} < 1")));
    }
    let diag = f.validate();
    if !diag.valid {
        return Err(ModuleError::InvalidF(format!(
            "condition ({}) fails: {}",
            diag.violated.unwrap_or_default(),
            diag.detail.unwrap_or_default()
        )));
    }
    let p = f.p();
    let mut positions = Vec::new();
    for k in -bound..=bound {
        for &j in &diag.support {
            positions.push(LatticePoint::new(vec![j + p * k]));
        }
    }
    let index = positions.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
    Ok(VirPModule {
        a,
        b,
        algebra: Algebra::VirP {
            p,
            bound: 4 * p * (bound + 2),
        },
        f,
        bound,
        positions,
        index,
    })
}

impl VirPModule {
    pub fn f(&self) -> &FMatrix {
        &self.f
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Coefficient of `sym` on `v_u` and the target index `u + shift`.
    pub fn coefficient(&self, sym: &BasisSymbol, u: i64) -> Option<(i64, Scalar)> {
        match sym {
            BasisSymbol::VirD(m) => {
                let c = &(&self.a + &Scalar::from_int(u)) + &(&self.b * &Scalar::from_int(*m));
                Some((u + m, c))
            }
            BasisSymbol::VirX(s) => Some((u + s, self.f.get(*s, u).clone())),
            _ => None,
        }
    }
}

impl WindowedModule for VirPModule {
    fn label(&self) -> String {
        format!("V(a={}, b={}, F) over Vir_{} on B={}", self.a, self.b, self.f.p(), self.bound)
    }

    fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn positions(&self) -> &[LatticePoint] {
        &self.positions
    }

    fn multiplicity(&self, _pos: usize) -> usize {
        1
    }

    fn position_index(&self, u: &LatticePoint) -> Option<usize> {
        self.index.get(u).copied()
    }

    fn is_inner(&self, pos: usize, margin: i64) -> bool {
        self.positions[pos].entries()[0].div_euclid(self.f.p()).abs() <= self.bound - margin
    }

    fn act_block(&self, sym: &BasisSymbol, pos: usize) -> Result<Option<(usize, Matrix)>, ModuleError> {
        if matches!(sym, BasisSymbol::VirC(_)) {
            return Ok(None);
        }
        if !self.algebra.contains(sym) {
            return Err(ModuleError::NotInAlgebra(sym.to_string()));
        }
        let u = self.positions[pos].entries()[0];
        let (target, c) = self.coefficient(sym, u).expect("Vir_p symbol");
        if c.is_zero() {
            return Ok(None);
        }
        match self.position_index(&LatticePoint::new(vec![target])) {
            Some(t) => Ok(Some((t, Matrix::scalar(1, &c)))),
            None => Err(ModuleError::OutOfWindow(target.to_string())),
        }
    }

    fn axiom_generators(&self) -> Vec<BasisSymbol> {
        let p = self.f.p();
        let mut out: Vec<BasisSymbol> = [-2, -1, 0, 1, 2].iter().map(|k| BasisSymbol::VirD(k * p)).collect();
        for s in 1..p {
            out.push(BasisSymbol::VirX(s));
            out.push(BasisSymbol::VirX(-s));
            out.push(BasisSymbol::VirX(s + p));
        }
        out.push(BasisSymbol::VirC(0));
        out
    }

    fn reach_generators(&self) -> Vec<BasisSymbol> {
        let p = self.f.p();
        let mut out = vec![BasisSymbol::VirD(p), BasisSymbol::VirD(-p)];
        for s in 1..p {
            out.push(BasisSymbol::VirX(s));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(a: i64, b: i64) -> FMatrix {
        FMatrix::new(2, vec![vec![Scalar::from_int(a), Scalar::from_int(b)]]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(f2(1, 1).validate().valid);
        let d = f2(1, 0).validate();
        assert_eq!(d.violated.as_deref(), Some("II"));
        assert!(d.detail.unwrap().contains("f[1,0]"));
        assert_eq!(f2(0, 1).validate().violated.as_deref(), Some("I"));
    }

    #[test]
    fn action_examples() {
        let m = build_virp_module(Scalar::zero(), Scalar::zero(), f2(1, 1), 2).unwrap();
        let v0 = m.position_index(&LatticePoint::new(vec![0])).unwrap();
        let (t, c) = m.act_block(&BasisSymbol::VirX(1), v0).unwrap().unwrap();
        assert_eq!(m.positions()[t], LatticePoint::new(vec![1]));
        assert!(c.is_identity());
        assert!(m.act_block(&BasisSymbol::VirC(0), v0).unwrap().is_none());
        let sym = build_virp_module(Scalar::alpha(0), Scalar::beta(), f2(1, 1), 2).unwrap();
        let v3 = sym.position_index(&LatticePoint::new(vec![3])).unwrap();
        let (t, c) = sym.act_block(&BasisSymbol::VirD(0), v3).unwrap().unwrap();
        assert_eq!(t, v3);
        assert_eq!(c[(0, 0)], "a1 + 3".parse::<Scalar>().unwrap());
    }
}
