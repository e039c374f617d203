//! Finite-dimensional Gamma-graded representations of the derivation algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebras::verify::{CheckReport, Violation};
use crate::algebras::{z_degree, Algebra, BasisSymbol, GradedLieElement};
use crate::linalg::Matrix;
use crate::modules::{BlockAction, WeightWindowModule};
use crate::scalars::{inner_product, inner_product_scalars, multi_indices, LatticePoint, Scalar};
use crate::torus::TorusPresentation;

use super::fit::PolynomialFamily;
use super::CorrespondenceError;

/// `rho` on `U = sum_s U_s`, stored as matrices on the total space; missing symbols act as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LRepresentation {
    torus: TorusPresentation,
    gamma: Vec<Scalar>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    dmax: usize,
    matrices: BTreeMap<BasisSymbol, Matrix>,
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

/// `m^p / p!`.
pub fn divided_power(m: &LatticePoint, p: &LatticePoint) -> Scalar {
    crate::algebras::exp_coefficient(m, p)
}

impl LRepresentation {
    pub fn new(
        torus: &TorusPresentation,
        dims: Vec<usize>,
        dmax: usize,
        matrices: BTreeMap<BasisSymbol, Matrix>,
    ) -> Result<Self, CorrespondenceError> {
        let rep = LRepresentation {
            torus: torus.clone(),
            gamma: Scalar::gamma_vector(torus.d()),
            offsets: offsets(&dims),
            dims,
            dmax,
            matrices: matrices.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        };
        let n = rep.total_dim();
        let alg = rep.algebra();
        for (sym, m) in &rep.matrices {
            if !alg.contains(sym) {
                return Err(CorrespondenceError::BracketViolation(format!("{sym} is outside the algebra")));
            }
            if m.rows() != n || m.cols() != n {
                return Err(CorrespondenceError::Inconsistent(format!("shape of rho({sym})")));
            }
        }
        Ok(rep)
    }

    pub fn torus(&self) -> &TorusPresentation {
        &self.torus
    }

    pub fn gamma(&self) -> &[Scalar] {
        &self.gamma
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, class: usize) -> usize {
        self.offsets[class]
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::deriv_l(&self.torus, self.dmax)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&BasisSymbol, &Matrix)> {
        self.matrices.iter()
    }

    pub fn rho(&self, sym: &BasisSymbol) -> Matrix {
        self.matrices
            .get(sym)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.total_dim(), self.total_dim()))
    }

    pub fn rho_element(&self, e: &GradedLieElement) -> Matrix {
        let mut acc = Matrix::zeros(self.total_dim(), self.total_dim());
        for (s, c) in e.terms() {
            if let Some(m) = self.matrices.get(s) {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }

    fn range(&self, class: usize) -> Vec<usize> {
        (self.offsets[class]..self.offsets[class + 1]).collect()
    }

    /// Block of `rho(sym)` from `U_s` to `U_t` (class indices).
    pub fn block(&self, sym: &BasisSymbol, s: usize, t: usize) -> Matrix {
        match self.matrices.get(sym) {
            Some(m) => m.select(&self.range(t), &self.range(s)),
            None => Matrix::zeros(self.dims[t], self.dims[s]),
        }
    }

    /// Gamma-degree of a symbol as a class index.
    fn target_class(&self, sym: &BasisSymbol, s: usize) -> usize {
        match sym {
            BasisSymbol::XT(_, r) => {
                let reps = self.torus.gamma_reps();
                self.torus.gamma_index(&(r + &reps[s]))
            }
            _ => s,
        }
    }

    /// Grading, brackets on all basis pairs, and the vanishing degree.
    pub fn verify(&self) -> CheckReport {
        let alg = self.algebra();
        let mut rep = CheckReport::new("l_representation", alg.window());
        let basis = alg.basis();
        let n = self.dims.len();
        for sym in &basis {
            for s in 0..n {
                let t = self.target_class(sym, s);
                for u in (0..n).filter(|&u| u != t) {
                    rep.checked += 1;
                    if !self.block(sym, s, u).is_zero() {
                        rep.violations.push(Violation::new("grading", &[sym], format!("U_{s} -> U_{u}")));
                    }
                }
            }
        }
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                let kind = match (a, b) {
                    (BasisSymbol::XD(_), BasisSymbol::XD(_)) => "d_d",
                    (BasisSymbol::XT(..), BasisSymbol::XT(..)) => "t_t",
                    _ => "d_t",
                };
                *counts.entry(kind).or_default() += 1;
                rep.checked += 1;
                let br = match alg.bracket_basis(a, b) {
                    Ok(e) => e,
                    Err(e) => {
                        rep.violations.push(Violation::new("window", &[a, b], e));
                        continue;
                    }
                };
                let lhs = self.rho_element(&br);
                let rhs = self.rho(a).commutator(&self.rho(b));
                if lhs != rhs {
                    rep.violations.push(Violation::new(kind, &[a, b], "rho([a,b]) != [rho a, rho b]"));
                }
            }
        }
        rep.fact("pairs_by_kind", counts);
        rep.fact("d_eff", self.d_eff());
        rep
    }

    /// Smallest `D` with `rho` vanishing on every stored symbol of Z-degree above `D`.
    pub fn d_eff(&self) -> usize {
        self.matrices
            .keys()
            .filter_map(z_degree)
            .max()
            .unwrap_or(0)
    }

    /// Whether `rho` vanishes on every symbol of Z-degree `j`.
    pub fn kills_degree(&self, j: usize) -> bool {
        self.matrices.keys().all(|s| z_degree(s) != Some(j))
    }

    /// The direct sum of two representations over the same torus.
    pub fn direct_sum(&self, other: &LRepresentation) -> Result<LRepresentation, CorrespondenceError> {
        if self.torus != other.torus {
            return Err(CorrespondenceError::Inconsistent("different tori".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let offs = offsets(&dims);
        let n = *offs.last().unwrap();
        // New index of old basis vector `i` of summand `which`.
        let place = |which: usize, i: usize| -> usize {
            let src = if which == 0 { self } else { other };
            let class = (0..src.dims.len()).find(|&c| i < src.offsets[c + 1]).unwrap();
            let shift = if which == 0 { 0 } else { self.dims[class] };
            offs[class] + shift + (i - src.offsets[class])
        };
        let dmax = self.dmax.max(other.dmax);
        let mut mats: BTreeMap<BasisSymbol, Matrix> = BTreeMap::new();
        for (which, src) in [self, other].into_iter().enumerate() {
            for (sym, m) in &src.matrices {
                let e = mats.entry(sym.clone()).or_insert_with(|| Matrix::zeros(n, n));
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        if !m[(r, c)].is_zero() {
                            e[(place(which, r), place(which, c))] = m[(r, c)].clone();
                        }
                    }
                }
            }
        }
        LRepresentation::new(&self.torus, dims, dmax, mats)
    }
}

impl Serialize for LRepresentation {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let named: BTreeMap<String, &Matrix> = self.matrices.iter().map(|(k, v)| (k.to_string(), v)).collect();
        let mut st = ser.serialize_struct("LRepresentation", 4)?;
        st.serialize_field("torus", &self.torus)?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("dmax", &self.dmax)?;
        st.serialize_field("matrices", &named)?;
        st.end()
    }
}

/// `rho(x^p d_gamma) = P_0^p`, `rho(x^l tbar^r) = P_r^l` for `r != 0`, `rho(x^l tbar^0) = 0`.
pub fn rep_from_family(fam: &PolynomialFamily) -> Result<LRepresentation, CorrespondenceError> {
    let torus = &fam.torus;
    let d = torus.d();
    // Z-degrees: |p| - 1 for P_0^p, |l| for P_r^l.
    let d0_top = fam.d0.values().flat_map(|c| c.keys()).map(|p| p.total() as usize).max().unwrap_or(0);
    let dr_top = fam.dr.values().flat_map(|c| c.keys()).map(|l| l.total() as usize).max().unwrap_or(0);
    let dmax = d0_top.saturating_sub(1).max(dr_top).max(1);
    let offs = offsets(&fam.dims);
    let n = *offs.last().unwrap();
    let reps = torus.gamma_reps();
    let classes: Vec<usize> = (0..fam.dims.len()).filter(|&s| fam.dims[s] > 0).collect();
    let mut mats = BTreeMap::new();
    for p in multi_indices(d, dmax + 1).into_iter().filter(|p| !p.is_zero()) {
        let mut m = Matrix::zeros(n, n);
        for &s in &classes {
            m.set_block(offs[s], offs[s], &fam.p0(s, &p));
        }
        mats.insert(BasisSymbol::XD(p), m);
    }
    for l in multi_indices(d, dmax) {
        for (ri, r) in reps.iter().enumerate().filter(|(_, r)| !r.is_zero()) {
            let mut m = Matrix::zeros(n, n);
            for &s in &classes {
                let t = torus.gamma_index(&(r + &reps[s]));
                if fam.dims[t] > 0 {
                    m.set_block(offs[t], offs[s], &fam.pr(ri, s, &l));
                }
            }
            mats.insert(BasisSymbol::XT(l.clone(), r.clone()), m);
        }
    }
    let rep = LRepresentation::new(torus, fam.dims.clone(), dmax, mats)?;
    let check = rep.verify();
    if let Some(v) = check.violations.first() {
        return Err(CorrespondenceError::BracketViolation(format!("{} {:?}", v.kind, v.symbols)));
    }
    Ok(rep)
}

/// The action of a representation on `sum_s U_s (x) t^s Z`.
#[derive(Debug)]
pub struct RepAction {
    torus: TorusPresentation,
    gamma: Vec<Scalar>,
    alpha: Vec<Scalar>,
    dims: Vec<usize>,
    /// `(class of s, symbol) -> block out of U_s`.
    blocks: HashMap<(usize, BasisSymbol), Matrix>,
    d_symbols: Vec<LatticePoint>,
    t_symbols: Vec<LatticePoint>,
}

impl RepAction {
    pub fn new(rep: &LRepresentation, alpha: Vec<Scalar>) -> Self {
        let mut blocks = HashMap::new();
        for (sym, _) in rep.symbols() {
            for s in 0..rep.dims.len() {
                let b = rep.block(sym, s, rep.target_class(sym, s));
                if !b.is_zero() {
                    blocks.insert((s, sym.clone()), b);
                }
            }
        }
        let d = rep.torus.d();
        RepAction {
            torus: rep.torus.clone(),
            gamma: rep.gamma.clone(),
            alpha,
            dims: rep.dims.clone(),
            blocks,
            d_symbols: multi_indices(d, rep.dmax + 1).into_iter().filter(|p| !p.is_zero()).collect(),
            t_symbols: multi_indices(d, rep.dmax),
        }
    }
}

impl BlockAction for RepAction {
    fn dims(&self) -> Vec<usize> {
        self.dims.clone()
    }

    fn block(&self, g: &LatticePoint, u: &LatticePoint) -> Matrix {
        let s = self.torus.gamma_index(u);
        let (r, m) = self.torus.gamma_reduce(g);
        let t = self.torus.gamma_index(&(u + g));
        let mut acc = Matrix::zeros(self.dims[t], self.dims[s]);
        if r.is_zero() {
            let w = &inner_product_scalars(&self.gamma, &self.alpha).expect("dimensions")
                + &inner_product(&self.gamma, u).expect("dimensions");
            acc = Matrix::scalar(self.dims[s], &w);
            for p in &self.d_symbols {
                if let Some(b) = self.blocks.get(&(s, BasisSymbol::XD(p.clone()))) {
                    acc = &acc + &b.scale(&divided_power(&m, p));
                }
            }
        } else {
            for l in &self.t_symbols {
                if let Some(b) = self.blocks.get(&(s, BasisSymbol::XT(l.clone(), r.clone()))) {
                    acc = &acc + &b.scale(&divided_power(&m, l));
                }
            }
        }
        acc
    }

    fn describe(&self) -> String {
        let a: Vec<String> = self.alpha.iter().map(Scalar::to_string).collect();
        format!("M(rho) with alpha=({}), dim U={}", a.join(", "), self.dims.iter().sum::<usize>())
    }
}

/// The cuspidal module attached to `rho`, on the window `[-bound, bound]^d`.
pub fn module_from_rep(
    rep: &LRepresentation,
    alpha: Vec<Scalar>,
    bound: i64,
) -> Result<WeightWindowModule, CorrespondenceError> {
    let check = rep.verify();
    if let Some(v) = check.violations.first() {
        return Err(CorrespondenceError::BracketViolation(format!("{} {:?}", v.kind, v.symbols)));
    }
    let action = RepAction::new(rep, alpha.clone());
    Ok(WeightWindowModule::new(rep.torus(), alpha, Arc::new(action), bound)?)
}

/// The three operator relations, with the `p = 0` case of the second read per block.
pub fn verify_p_brackets(fam: &PolynomialFamily) -> CheckReport {
    let torus = &fam.torus;
    let gamma = Scalar::gamma_vector(torus.d());
    let reps = torus.gamma_reps();
    let mut rep = match rep_from_family(fam) {
        Ok(r) => {
            let mut c = r.verify();
            c.check = "operator_brackets".into();
            c
        }
        Err(e) => {
            let mut c = CheckReport::new("operator_brackets", format!("degree {}", fam.degree));
            c.violations.push(Violation::new("rep", &[], e));
            return c;
        }
    };
    let zero = LatticePoint::zero(torus.d());
    let classes: Vec<usize> = (0..fam.dims.len()).filter(|&s| fam.dims[s] > 0).collect();
    let (mut literal_fail, mut constant_ok) = (0usize, true);
    // Constant terms are scalar and differ by (gamma|s - s') between classes.
    let base = classes
        .first()
        .and_then(|&s0| Some((s0, fam.p0(s0, &zero).as_scalar_multiple()?)));
    for &s in &classes {
        let expected = base.as_ref().map(|(s0, c)| {
            c + &inner_product(&gamma, &(&reps[s] - &reps[*s0])).expect("dimensions")
        });
        if expected.is_none() || fam.p0(s, &zero).as_scalar_multiple() != expected {
            constant_ok = false;
        }
        for (ri, r) in reps.iter().enumerate().filter(|(_, r)| !r.is_zero()) {
            let t = torus.gamma_index(&(r + &reps[s]));
            if fam.dims[t] == 0 {
                continue;
            }
            for l in multi_indices(torus.d(), fam.degree) {
                let prl = fam.pr(ri, s, &l);
                let lhs = &(&fam.p0(t, &zero) * &prl) - &(&prl * &fam.p0(s, &zero));
                let c = inner_product(&gamma, &(&reps[t] - &reps[s])).expect("dimensions");
                rep.checked += 1;
                if lhs != prl.scale(&c) {
                    rep.violations.push(Violation::new(
                        "constant_term_bracket",
                        &[&BasisSymbol::XT(l.clone(), r.clone())],
                        format!("from class {}", reps[s]),
                    ));
                }
                if lhs != prl.scale(&inner_product(&gamma, r).expect("dimensions")) {
                    literal_fail += 1;
                }
            }
        }
    }
    rep.fact("literal_constant_bracket_failures", literal_fail);
    rep.fact("constant_term_law", constant_ok);
    rep.fact("fit_degree", fam.degree);
    rep
}
