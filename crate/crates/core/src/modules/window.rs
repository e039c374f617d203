//! Weight modules truncated to a finite window of weights.
//!
//! A module supported on `alpha + Z^d` is stored position by position: the
//! weight space at `alpha + u` is `U_{red(u)}`, identified with the position
//! `u` through the torus center. Generators act block-wise between positions.

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::Arc;

use crate::algebras::{Algebra, BasisSymbol};
use crate::linalg::Matrix;
use crate::scalars::{inner_product, lattice_box, LatticePoint, Scalar};
use crate::torus::TorusPresentation;

use super::gln::GradedGlnModule;
use super::ModuleError;

/// Common interface of windowed weight modules.
pub trait WindowedModule: Sync {
    fn label(&self) -> String;
    /// The acting algebra, with a bound large enough to evaluate brackets of generators.
    fn algebra(&self) -> &Algebra;
    /// Relative weights `u` (the weight is `alpha + u`).
    fn positions(&self) -> &[LatticePoint];
    fn multiplicity(&self, pos: usize) -> usize;
    fn position_index(&self, u: &LatticePoint) -> Option<usize>;
    fn is_inner(&self, pos: usize, margin: i64) -> bool;
    /// Block of `sym` from position `pos`: `None` if it acts as zero there.
    fn act_block(&self, sym: &BasisSymbol, pos: usize) -> Result<Option<(usize, Matrix)>, ModuleError>;
    /// Generators used by the axiom verifier.
    fn axiom_generators(&self) -> Vec<BasisSymbol>;
    /// Generators used by the reachability oracle.
    fn reach_generators(&self) -> Vec<BasisSymbol>;
    fn dim(&self) -> usize {
        (0..self.positions().len()).map(|p| self.multiplicity(p)).sum()
    }
}

/// Block action of `L_g` on a module presented position by position.
pub trait BlockAction: Send + Sync + Debug {
    /// `dim U_s` for each class `s`, in `gamma_reps` order.
    fn dims(&self) -> Vec<usize>;
    /// Matrix of `L_g` from position `u` to position `u + g`.
    fn block(&self, g: &LatticePoint, u: &LatticePoint) -> Matrix;
    fn describe(&self) -> String;
}

/// The action of the modules of tensor fields `V(alpha, beta, W)`.
#[derive(Clone, Debug)]
pub struct TensorAction {
    pub torus: TorusPresentation,
    pub gamma: Vec<Scalar>,
    pub alpha: Vec<Scalar>,
    pub beta: Scalar,
    pub w: GradedGlnModule,
}

impl BlockAction for TensorAction {
    fn dims(&self) -> Vec<usize> {
        self.w.dims().to_vec()
    }

    fn block(&self, g: &LatticePoint, u: &LatticePoint) -> Matrix {
        let ds = self.w.dims()[self.torus.gamma_index(u)];
        if self.torus.in_radical(g) {
            let mut v: Vec<Scalar> = self
                .alpha
                .iter()
                .zip(u.entries())
                .map(|(a, &x)| a + &Scalar::from_int(x))
                .collect();
            for (x, &m) in v.iter_mut().zip(g.entries()) {
                *x = &*x + &(&self.beta * &Scalar::from_int(m));
            }
            let c = crate::scalars::inner_product_scalars(&self.gamma, &v).expect("dimensions");
            Matrix::scalar(ds, &c)
        } else {
            self.w.block(g, &self.torus.reduce(u))
        }
    }

    fn describe(&self) -> String {
        let a: Vec<String> = self.alpha.iter().map(Scalar::to_string).collect();
        format!(
            "V(alpha=({}), beta={}, dim W={})",
            a.join(", "),
            self.beta,
            self.w.total_dim()
        )
    }
}

/// Which algebra's symbols drive the module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Driver {
    /// `L_m` of the solenoidal algebra.
    Solenoidal,
    /// `x^m d_mu` of `W_mu` with `mu = gamma` (commutative torus only).
    Wmu,
}

#[derive(Clone, Debug)]
pub struct WeightWindowModule {
    torus: TorusPresentation,
    gamma: Vec<Scalar>,
    alpha: Vec<Scalar>,
    action: Arc<dyn BlockAction>,
    driver: Driver,
    algebra: Algebra,
    bound: i64,
    dims: Vec<usize>,
    positions: Vec<LatticePoint>,
    coords: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

impl WeightWindowModule {
    /// A module on the window of radical coordinates `[-bound, bound]^d`.
    pub fn new(
        torus: &TorusPresentation,
        alpha: Vec<Scalar>,
        action: Arc<dyn BlockAction>,
        bound: i64,
    ) -> Result<Self, ModuleError> {
        if bound < 1 {
            return Err(ModuleError::DegenerateWindow(format!("bound {bound} < 1")));
        }
        if alpha.len() != torus.d() {
            return Err(ModuleError::Dimension {
                expected: torus.d(),
                got: alpha.len(),
            });
        }
        let dims = action.dims();
        let reps = torus.gamma_reps();
        let mut positions = Vec::new();
        let mut coords = Vec::new();
        for c in lattice_box(torus.d(), bound) {
            let base = torus.from_radical_coords(&c);
            for (s, &ds) in reps.iter().zip(&dims) {
                if ds > 0 {
                    positions.push(&base + s);
                    coords.push(c.clone());
                }
            }
        }
        let index = positions.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        let gamma = Scalar::gamma_vector(torus.d());
        let scale = torus.radical_scales().into_iter().max().unwrap_or(1);
        Ok(WeightWindowModule {
            algebra: Algebra::Solenoidal {
                torus: torus.clone(),
                gamma: gamma.clone(),
                bound: 4 * (bound + 1) * scale,
            },
            torus: torus.clone(),
            gamma,
            alpha,
            action,
            driver: Driver::Solenoidal,
            bound,
            dims,
            positions,
            coords,
            index,
        })
    }

    /// Drive the module by `W_mu` symbols instead (commutative torus only).
    pub fn with_wmu_driver(mut self) -> Result<Self, ModuleError> {
        if self.torus.z() != 0 {
            return Err(ModuleError::Unsupported(
                "W_mu driver needs a commutative torus".into(),
            ));
        }
        self.algebra = Algebra::Wmu {
            mu: self.gamma.clone(),
            bound: self.algebra.bound().unwrap_or(0),
        };
        self.driver = Driver::Wmu;
        Ok(self)
    }

    /// The same module on a window enlarged by `extra`.
    pub fn resized(&self, bound: i64) -> Result<Self, ModuleError> {
        let m = WeightWindowModule::new(&self.torus, self.alpha.clone(), self.action.clone(), bound)?;
        match self.driver {
            Driver::Solenoidal => Ok(m),
            Driver::Wmu => m.with_wmu_driver(),
        }
    }

    pub fn torus(&self) -> &TorusPresentation {
        &self.torus
    }

    pub fn gamma(&self) -> &[Scalar] {
        &self.gamma
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn action(&self) -> &Arc<dyn BlockAction> {
        &self.action
    }

    pub fn driver(&self) -> Driver {
        self.driver
    }

    /// Radical coordinates of the window cell holding `pos`.
    pub fn cell(&self, pos: usize) -> &LatticePoint {
        &self.coords[pos]
    }

    pub fn symbol(&self, g: &LatticePoint) -> BasisSymbol {
        match self.driver {
            Driver::Solenoidal => BasisSymbol::L(g.clone()),
            Driver::Wmu => BasisSymbol::W(g.clone()),
        }
    }

    fn symbol_point<'a>(&self, sym: &'a BasisSymbol) -> Result<&'a LatticePoint, ModuleError> {
        match (self.driver, sym) {
            (Driver::Solenoidal, BasisSymbol::L(g)) | (Driver::Wmu, BasisSymbol::W(g)) => Ok(g),
            _ => Err(ModuleError::NotInAlgebra(sym.to_string())),
        }
    }

    /// Block of `L_g` from position `pos`, as `(target, matrix)`; the target may lie outside.
    pub fn raw_block(&self, g: &LatticePoint, pos: usize) -> (LatticePoint, Matrix) {
        let u = &self.positions[pos];
        (u + g, self.action.block(g, u))
    }

    /// The torus center acts by `t^m (v at u) = v at u + m`, `m` in `R`.
    pub fn z_act(&self, m: &LatticePoint, pos: usize) -> Result<Option<usize>, ModuleError> {
        if !self.torus.in_radical(m) {
            return Err(ModuleError::NotInAlgebra(format!("t^{m} is not central")));
        }
        Ok(self.position_index(&(&self.positions[pos] + m)))
    }

    /// `(gamma | alpha + u)`.
    pub fn weight_value(&self, u: &LatticePoint) -> Scalar {
        let a = crate::scalars::inner_product_scalars(&self.gamma, &self.alpha).expect("dimensions");
        &a + &inner_product(&self.gamma, u).expect("dimensions")
    }

    pub fn describe(&self) -> String {
        self.action.describe()
    }
}

impl WindowedModule for WeightWindowModule {
    fn label(&self) -> String {
        format!("{} on B={}", self.action.describe(), self.bound)
    }

    fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn positions(&self) -> &[LatticePoint] {
        &self.positions
    }

    fn multiplicity(&self, pos: usize) -> usize {
        self.dims[self.torus.gamma_index(&self.positions[pos])]
    }

    fn position_index(&self, u: &LatticePoint) -> Option<usize> {
        self.index.get(u).copied()
    }

    fn is_inner(&self, pos: usize, margin: i64) -> bool {
        self.coords[pos].max_abs() <= self.bound - margin
    }

    fn act_block(&self, sym: &BasisSymbol, pos: usize) -> Result<Option<(usize, Matrix)>, ModuleError> {
        let g = self.symbol_point(sym)?;
        let (target, m) = self.raw_block(g, pos);
        if m.rows() == 0 || m.is_zero() {
            return Ok(None);
        }
        match self.position_index(&target) {
            Some(t) => Ok(Some((t, m))),
            None => Err(ModuleError::OutOfWindow(target.to_string())),
        }
    }

    fn axiom_generators(&self) -> Vec<BasisSymbol> {
        let mut pts: Vec<LatticePoint> = Vec::new();
        for s in self.torus.gamma_reps() {
            pts.push(-&s);
            pts.push(s);
        }
        for b in self.torus.radical_basis() {
            pts.push(-&b);
            pts.push(b);
        }
        pts.sort();
        pts.dedup();
        pts.iter().map(|g| self.symbol(g)).collect()
    }

    fn reach_generators(&self) -> Vec<BasisSymbol> {
        let mut pts: Vec<LatticePoint> = Vec::new();
        for b in self.torus.radical_basis() {
            pts.push(-&b);
            pts.push(b);
        }
        pts.extend(self.torus.gamma_reps().into_iter().filter(|s| !s.is_zero()));
        pts.iter().map(|g| self.symbol(g)).collect()
    }
}

/// `V(alpha, beta, W)` on the window `[-bound, bound]^d` of radical coordinates.
pub fn build_tensor_module(
    torus: &TorusPresentation,
    alpha: Vec<Scalar>,
    beta: Scalar,
    w: GradedGlnModule,
    bound: i64,
) -> Result<WeightWindowModule, ModuleError> {
    w.validate().map_err(ModuleError::InvalidW)?;
    if w.torus() != torus {
        return Err(ModuleError::InvalidW("W is graded over a different torus".into()));
    }
    let action = TensorAction {
        torus: torus.clone(),
        gamma: Scalar::gamma_vector(torus.d()),
        alpha: alpha.clone(),
        beta,
        w,
    };
    WeightWindowModule::new(torus, alpha, Arc::new(action), bound)
}

/// `T(alpha, beta)` over `W_mu` with `mu = gamma` symbolic.
pub fn build_wmu_module(d: usize, alpha: Vec<Scalar>, beta: Scalar, bound: i64) -> Result<WeightWindowModule, ModuleError> {
    let torus = TorusPresentation::commutative(d);
    let w = GradedGlnModule::trivial(&torus);
    build_tensor_module(&torus, alpha, beta, w, bound)?.with_wmu_driver()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v)
    }

    fn sym(n: usize) -> Vec<Scalar> {
        (0..n).map(Scalar::alpha).collect()
    }

    #[test]
    fn regular_tensor_module_examples() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let m = build_tensor_module(&t, sym(2), Scalar::beta(), GradedGlnModule::regular(&t), 2).unwrap();
        let origin = m.position_index(&pt(&[0, 0])).unwrap();
        let (target, blk) = m.act_block(&BasisSymbol::L(pt(&[0, 1])), origin).unwrap().unwrap();
        assert_eq!(m.positions()[target], pt(&[0, 1]));
        assert!(blk.is_identity());
        let (_, blk) = m.act_block(&BasisSymbol::L(pt(&[2, 0])), origin).unwrap().unwrap();
        assert_eq!(
            blk[(0, 0)],
            "g1*a1 + g2*a2 + 2*g1*b".parse::<Scalar>().unwrap()
        );
        assert_eq!(m.dim(), 4 * 25);
    }

    #[test]
    fn commutative_case_is_t_alpha_beta() {
        let m = build_wmu_module(2, sym(2), Scalar::beta(), 2).unwrap();
        let s = m.position_index(&pt(&[1, -1])).unwrap();
        let (target, blk) = m.act_block(&BasisSymbol::W(pt(&[1, 0])), s).unwrap().unwrap();
        assert_eq!(m.positions()[target], pt(&[2, -1]));
        assert_eq!(
            blk[(0, 0)],
            "g1*a1 + g2*a2 + g1 - g2 + g1*b".parse::<Scalar>().unwrap()
        );
    }

    #[test]
    fn leaving_the_window_is_reported() {
        let t = TorusPresentation::commutative(1);
        let m = build_tensor_module(&t, sym(1), Scalar::one(), GradedGlnModule::trivial(&t), 1).unwrap();
        let edge = m.position_index(&pt(&[1])).unwrap();
        assert!(matches!(
            m.act_block(&BasisSymbol::L(pt(&[1])), edge),
            Err(ModuleError::OutOfWindow(_))
        ));
    }
}
