//! Basis-indexed Lie algebras with exact structure constants.
//!
//! Infinite algebras are handled through a bound: lattice-indexed algebras
//! reject brackets whose result leaves the exponent box, and the derivation
//! algebra [`Algebra::DerivL`] is the quotient by its part of Z-degree above
//! `dmax` (an ideal, since brackets never lower the degree).

pub mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::scalars::{
    inner_product, lattice_box, multi_indices, LatticePoint, Scalar,
};
use crate::torus::TorusPresentation;

pub use verify::{
    gamma_grading_check, gr_prime_ideal_check, l_plus_ideal_check, quotient_iso_check,
    verify_lie_axioms, wmu_iso_check, AxiomReport, CheckReport, Violation,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol {
    /// `L_m` of the solenoidal algebra over the quantum torus.
    L(LatticePoint),
    /// `x^n d_mu` of `W_mu`.
    W(LatticePoint),
    /// `x^{m+1} d/dx` of `Vir_p`, `m` divisible by `p`.
    VirD(i64),
    /// `x^s` of `Vir_p`, `s` not divisible by `p`.
    VirX(i64),
    /// Central `C_i` of `Vir_p`.
    VirC(u32),
    /// `x^p d_gamma`, `p != 0`.
    XD(LatticePoint),
    /// `x^l tbar^s`, `s` in `Gamma_0`.
    XT(LatticePoint, LatticePoint),
    /// `X^n` in `gl_N`, `n` in `Gamma_0`.
    X(LatticePoint),
    /// `e_i gamma^T` in `gl_{d,gamma}`.
    E(usize),
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::L(m) => write!(f, "L{m}"),
            BasisSymbol::W(n) => write!(f, "x^{n}d_mu"),
            BasisSymbol::VirD(m) => write!(f, "x^({})d_x", m + 1),
            BasisSymbol::VirX(s) => write!(f, "x^({s})"),
            BasisSymbol::VirC(i) => write!(f, "C{i}"),
            BasisSymbol::XD(p) => write!(f, "x^{p}d_g"),
            BasisSymbol::XT(l, s) => write!(f, "x^{l}t{s}"),
            BasisSymbol::X(n) => write!(f, "X{n}"),
            BasisSymbol::E(i) => write!(f, "e{}g^T", i + 1),
        }
    }
}

impl Serialize for BasisSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite formal sum of basis symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedLieElement {
    terms: BTreeMap<BasisSymbol, Scalar>,
}

impl GradedLieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(sym: BasisSymbol) -> Self {
        Self::term(sym, Scalar::one())
    }

    pub fn term(sym: BasisSymbol, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(sym, c);
        e
    }

    pub fn add_term(&mut self, sym: BasisSymbol, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sym) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sym: &BasisSymbol) -> Scalar {
        self.terms.get(sym).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedLieElement {
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect(),
        }
    }
}

impl fmt::Display for GradedLieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                if c.is_one() {
                    s.to_string()
                } else {
                    format!("({c})*{s}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for GradedLieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("symbol {0} does not belong to {1}")]
    TagMismatch(String, String),
    #[error("bracket result {0} is out of window")]
    OutOfWindow(String),
    #[error("{0} is not in the radical subgroup")]
    NotInRadical(String),
}

/// Bracket convention for the `x^p tbar^r` part of the derivation algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LBracket {
    /// `[x^p t^r, x^l t^s] = c x^{p+l} exp((rho|x)) t^{red(r+s)}` with
    /// `rho = r + s - red(r+s)`; a Lie bracket.
    ShiftCorrected,
    /// `[x^p t^r, x^l t^s] = c x^{p+l} t^{red(r+s)}`, taken literally.
    Displayed,
}

#[derive(Clone, Debug)]
pub enum Algebra {
    Solenoidal {
        torus: TorusPresentation,
        gamma: Vec<Scalar>,
        bound: i64,
    },
    Wmu {
        mu: Vec<Scalar>,
        bound: i64,
    },
    VirP {
        p: i64,
        bound: i64,
    },
    DerivL {
        torus: TorusPresentation,
        gamma: Vec<Scalar>,
        dmax: usize,
        convention: LBracket,
    },
    GlN {
        torus: TorusPresentation,
    },
    GlDGamma {
        gamma: Vec<Scalar>,
    },
}

type Res = Result<GradedLieElement, AlgebraError>;

impl Algebra {
    pub fn solenoidal(torus: &TorusPresentation, bound: i64) -> Self {
        Algebra::Solenoidal {
            gamma: Scalar::gamma_vector(torus.d()),
            torus: torus.clone(),
            bound,
        }
    }

    pub fn deriv_l(torus: &TorusPresentation, dmax: usize) -> Self {
        Algebra::DerivL {
            gamma: Scalar::gamma_vector(torus.d()),
            torus: torus.clone(),
            dmax,
            convention: LBracket::ShiftCorrected,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Algebra::Solenoidal { torus, .. } => format!("g(d={},k={:?})", torus.d(), torus.orders()),
            Algebra::Wmu { mu, .. } => format!("W_mu(d={})", mu.len()),
            Algebra::VirP { p, .. } => format!("Vir_{p}"),
            Algebra::DerivL {
                torus, convention, ..
            } => format!(
                "L(d={},k={:?}{})",
                torus.d(),
                torus.orders(),
                if *convention == LBracket::Displayed {
                    ",displayed"
                } else {
                    ""
                }
            ),
            Algebra::GlN { torus } => format!("gl_{}", torus.n()),
            Algebra::GlDGamma { gamma } => format!("gl_{{{},gamma}}", gamma.len()),
        }
    }

    pub fn window(&self) -> String {
        match self {
            Algebra::Solenoidal { bound, .. }
            | Algebra::Wmu { bound, .. }
            | Algebra::VirP { bound, .. } => format!("B={bound}"),
            Algebra::DerivL { dmax, .. } => format!("D_max={dmax}"),
            Algebra::GlN { .. } | Algebra::GlDGamma { .. } => "full".into(),
        }
    }

    /// Same algebra with the exponent bound replaced.
    pub fn with_bound(&self, b: i64) -> Self {
        let mut out = self.clone();
        match &mut out {
            Algebra::Solenoidal { bound, .. }
            | Algebra::Wmu { bound, .. }
            | Algebra::VirP { bound, .. } => *bound = b,
            _ => {}
        }
        out
    }

    pub fn bound(&self) -> Option<i64> {
        match self {
            Algebra::Solenoidal { bound, .. }
            | Algebra::Wmu { bound, .. }
            | Algebra::VirP { bound, .. } => Some(*bound),
            _ => None,
        }
    }

    /// All basis symbols inside the window.
    pub fn basis(&self) -> Vec<BasisSymbol> {
        match self {
            Algebra::Solenoidal { torus, bound, .. } => lattice_box(torus.d(), *bound)
                .into_iter()
                .map(BasisSymbol::L)
                .collect(),
            Algebra::Wmu { mu, bound } => lattice_box(mu.len(), *bound)
                .into_iter()
                .map(BasisSymbol::W)
                .collect(),
            Algebra::VirP { p, bound } => {
                let mut out = Vec::new();
                for m in -bound..=*bound {
                    if m.rem_euclid(*p) == 0 {
                        out.push(BasisSymbol::VirD(m));
                    } else {
                        out.push(BasisSymbol::VirX(m));
                    }
                }
                for i in 0..=(*p as u32 / 2) {
                    out.push(BasisSymbol::VirC(i));
                }
                out
            }
            Algebra::DerivL { torus, dmax, .. } => {
                let d = torus.d();
                let mut out: Vec<BasisSymbol> = multi_indices(d, dmax + 1)
                    .into_iter()
                    .filter(|p| !p.is_zero())
                    .map(BasisSymbol::XD)
                    .collect();
                for l in multi_indices(d, *dmax) {
                    for s in torus.gamma_reps() {
                        out.push(BasisSymbol::XT(l.clone(), s));
                    }
                }
                out
            }
            Algebra::GlN { torus } => torus.gamma_reps().into_iter().map(BasisSymbol::X).collect(),
            Algebra::GlDGamma { gamma } => (0..gamma.len()).map(BasisSymbol::E).collect(),
        }
    }

    pub fn contains(&self, sym: &BasisSymbol) -> bool {
        match (self, sym) {
            (Algebra::Solenoidal { torus, bound, .. }, BasisSymbol::L(m)) => {
                m.dim() == torus.d() && m.max_abs() <= *bound
            }
            (Algebra::Wmu { mu, bound }, BasisSymbol::W(n)) => {
                n.dim() == mu.len() && n.max_abs() <= *bound
            }
            (Algebra::VirP { p, bound }, BasisSymbol::VirD(m)) => {
                m.rem_euclid(*p) == 0 && m.abs() <= *bound
            }
            (Algebra::VirP { p, bound }, BasisSymbol::VirX(s)) => {
                s.rem_euclid(*p) != 0 && s.abs() <= *bound
            }
            (Algebra::VirP { p, .. }, BasisSymbol::VirC(i)) => (*i as i64) <= p / 2,
            (Algebra::DerivL { torus, dmax, .. }, BasisSymbol::XD(p)) => {
                p.dim() == torus.d()
                    && p.is_nonnegative()
                    && !p.is_zero()
                    && p.total() as usize <= dmax + 1
            }
            (Algebra::DerivL { torus, dmax, .. }, BasisSymbol::XT(l, s)) => {
                l.dim() == torus.d()
                    && l.is_nonnegative()
                    && l.total() as usize <= *dmax
                    && torus.reduce(s) == *s
            }
            (Algebra::GlN { torus }, BasisSymbol::X(n)) => torus.reduce(n) == *n,
            (Algebra::GlDGamma { gamma }, BasisSymbol::E(i)) => *i < gamma.len(),
            _ => false,
        }
    }

    fn check(&self, sym: &BasisSymbol) -> Result<(), AlgebraError> {
        if self.contains(sym) {
            Ok(())
        } else {
            Err(AlgebraError::TagMismatch(sym.to_string(), self.name()))
        }
    }

    fn emit(&self, out: &mut GradedLieElement, sym: BasisSymbol, c: Scalar) -> Result<(), AlgebraError> {
        if c.is_zero() {
            return Ok(());
        }
        if !self.contains(&sym) {
            if let (Algebra::DerivL { dmax, .. }, Some(deg)) = (self, z_degree(&sym)) {
                if deg > *dmax {
                    // quotient by the ideal of degree > dmax
                    return Ok(());
                }
            }
            return Err(AlgebraError::OutOfWindow(sym.to_string()));
        }
        out.add_term(sym, c);
        Ok(())
    }

    /// Bracket of two basis symbols.
    pub fn bracket_basis(&self, a: &BasisSymbol, b: &BasisSymbol) -> Res {
        self.check(a)?;
        self.check(b)?;
        let mut out = GradedLieElement::zero();
        match self {
            Algebra::Solenoidal { torus, gamma, .. } => {
                let (BasisSymbol::L(m), BasisSymbol::L(n)) = (a, b) else {
                    unreachable!()
                };
                let (rm, rn) = (torus.in_radical(m), torus.in_radical(n));
                let c = match (rm, rn) {
                    (true, true) => ip(gamma, &(n - m)),
                    (true, false) => ip(gamma, n),
                    (false, true) => -ip(gamma, m),
                    (false, false) => torus.commutator_coefficient(m, n),
                };
                self.emit(&mut out, BasisSymbol::L(m + n), c)?;
            }
            Algebra::Wmu { mu, .. } => {
                let (BasisSymbol::W(m), BasisSymbol::W(n)) = (a, b) else {
                    unreachable!()
                };
                self.emit(&mut out, BasisSymbol::W(m + n), ip(mu, &(n - m)))?;
            }
            Algebra::VirP { p, .. } => self.vir_bracket(*p, a, b, &mut out)?,
            Algebra::DerivL {
                torus,
                gamma,
                convention,
                ..
            } => self.l_bracket(torus, gamma, *convention, a, b, &mut out)?,
            Algebra::GlN { torus } => {
                let (BasisSymbol::X(m), BasisSymbol::X(n)) = (a, b) else {
                    unreachable!()
                };
                let c = torus.commutator_coefficient(m, n);
                self.emit(&mut out, BasisSymbol::X(torus.reduce(&(m + n))), c)?;
            }
            Algebra::GlDGamma { gamma } => {
                let (BasisSymbol::E(i), BasisSymbol::E(j)) = (a, b) else {
                    unreachable!()
                };
                // e_i g^T e_j g^T = g_j e_i g^T
                self.emit(&mut out, BasisSymbol::E(*i), gamma[*j].clone())?;
                self.emit(&mut out, BasisSymbol::E(*j), -&gamma[*i])?;
            }
        }
        Ok(out)
    }

    fn vir_bracket(
        &self,
        p: i64,
        a: &BasisSymbol,
        b: &BasisSymbol,
        out: &mut GradedLieElement,
    ) -> Result<(), AlgebraError> {
        use BasisSymbol::*;
        match (a, b) {
            (VirC(_), _) | (_, VirC(_)) => {}
            (VirD(m), VirD(n)) => {
                self.emit(out, VirD(m + n), Scalar::from_int(n - m))?;
                if m + n == 0 {
                    let x = Scalar::from_ratio(*m, p);
                    let c = &(&(&x * &x) * &x) - &x;
                    self.emit(out, VirC(0), &c * &Scalar::from_ratio(1, 12))?;
                }
            }
            (VirD(m), VirX(r)) => self.emit(out, VirX(m + r), Scalar::from_int(*r))?,
            (VirX(r), VirD(m)) => self.emit(out, VirX(m + r), Scalar::from_int(-r))?,
            (VirX(r), VirX(s)) => {
                if r + s == 0 {
                    self.emit(out, VirC(vir_central_index(p, *r)), Scalar::from_int(*r))?;
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn l_bracket(
        &self,
        torus: &TorusPresentation,
        gamma: &[Scalar],
        convention: LBracket,
        a: &BasisSymbol,
        b: &BasisSymbol,
        out: &mut GradedLieElement,
    ) -> Result<(), AlgebraError> {
        use BasisSymbol::*;
        let d = torus.d();
        match (a, b) {
            (XD(m), XD(n)) => {
                for i in 0..d {
                    let c = &gamma[i] * &Scalar::from_int(n.0[i] - m.0[i]);
                    if let Some(e) = lower(&(m + n), i) {
                        self.emit(out, XD(e), c)?;
                    }
                }
            }
            (XD(m), XT(l, s)) => {
                for i in 0..d {
                    if l.0[i] > 0 {
                        let c = &gamma[i] * &Scalar::from_int(l.0[i]);
                        let e = lower(&(m + l), i).expect("positive exponent");
                        self.emit(out, XT(e, s.clone()), c)?;
                    }
                }
                self.emit(out, XT(m + l, s.clone()), ip(gamma, s))?;
            }
            (XT(..), XD(..)) => {
                let e = self.l_bracket_owned(torus, gamma, convention, b, a)?;
                *out = out.sub(&e);
            }
            (XT(p, r), XT(l, s)) => {
                let c = torus.commutator_coefficient(r, s);
                if c.is_zero() {
                    return Ok(());
                }
                let (red, rho) = torus.gamma_reduce(&(r + s));
                let base = p + l;
                match convention {
                    LBracket::Displayed => self.emit(out, XT(base, red), c)?,
                    LBracket::ShiftCorrected => {
                        let room = self.l_dmax().saturating_sub(base.total() as usize);
                        for q in multi_indices(d, room) {
                            let w = exp_coefficient(&rho, &q);
                            if !w.is_zero() {
                                self.emit(out, XT(&base + &q, red.clone()), &c * &w)?;
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn l_bracket_owned(
        &self,
        torus: &TorusPresentation,
        gamma: &[Scalar],
        convention: LBracket,
        a: &BasisSymbol,
        b: &BasisSymbol,
    ) -> Res {
        let mut out = GradedLieElement::zero();
        self.l_bracket(torus, gamma, convention, a, b, &mut out)?;
        Ok(out)
    }

    fn l_dmax(&self) -> usize {
        match self {
            Algebra::DerivL { dmax, .. } => *dmax,
            _ => 0,
        }
    }

    /// Bilinear extension of [`Self::bracket_basis`].
    pub fn bracket(&self, a: &GradedLieElement, b: &GradedLieElement) -> Res {
        let mut out = GradedLieElement::zero();
        for (sa, ca) in a.terms() {
            for (sb, cb) in b.terms() {
                let t = self.bracket_basis(sa, sb)?;
                out = out.add(&t.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }
}

fn ip(gamma: &[Scalar], m: &LatticePoint) -> Scalar {
    inner_product(gamma, m).expect("dimension checked by window")
}

fn lower(m: &LatticePoint, i: usize) -> Option<LatticePoint> {
    if m.0[i] == 0 {
        return None;
    }
    let mut e = m.clone();
    e.0[i] -= 1;
    if e.is_zero() {
        None
    } else {
        Some(e)
    }
}

/// Coefficient of `x^q` in `exp((rho|x))`, i.e. `rho^q / q!`.
pub fn exp_coefficient(rho: &LatticePoint, q: &LatticePoint) -> Scalar {
    let mut num = Scalar::one();
    let mut den: i64 = 1;
    for (&r, &e) in rho.0.iter().zip(&q.0) {
        for j in 1..=e {
            num = &num * &Scalar::from_int(r);
            den *= j;
        }
    }
    &num * &Scalar::from_ratio(1, den)
}

/// `C_i` is identified with `C_{p-i}`.
pub fn vir_central_index(p: i64, r: i64) -> u32 {
    let i = r.rem_euclid(p);
    i.min(p - i) as u32
}

/// Z-degree in the derivation algebra: `|p| - 1` for `x^p d_gamma`, `|l|` for `x^l tbar^s`.
pub fn z_degree(sym: &BasisSymbol) -> Option<usize> {
    match sym {
        BasisSymbol::XD(p) => Some(p.total() as usize - 1),
        BasisSymbol::XT(l, _) => Some(l.total() as usize),
        _ => None,
    }
}

/// Gamma-degree of a symbol of the derivation algebra or `gl_N`.
pub fn gamma_degree(sym: &BasisSymbol, d: usize) -> Option<LatticePoint> {
    match sym {
        BasisSymbol::XD(_) | BasisSymbol::E(_) => Some(LatticePoint::zero(d)),
        BasisSymbol::XT(_, s) | BasisSymbol::X(s) => Some(s.clone()),
        _ => None,
    }
}

/// Image of `L_m` (`m` in `R`) in `W_{B gamma}`: `x^n d_mu` with `m = B n`.
pub fn subalgebra_wmu_iso(torus: &TorusPresentation, m: &LatticePoint) -> Result<BasisSymbol, AlgebraError> {
    torus
        .radical_coords(m)
        .map(BasisSymbol::W)
        .ok_or_else(|| AlgebraError::NotInRadical(m.to_string()))
}

/// `mu = B gamma`.
pub fn wmu_parameter(torus: &TorusPresentation, gamma: &[Scalar]) -> Vec<Scalar> {
    gamma
        .iter()
        .enumerate()
        .map(|(j, g)| g * &Scalar::from_int(torus.radical_scale(j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v)
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn solenoidal_examples() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let g = Algebra::solenoidal(&t, 4);
        let r = g
            .bracket_basis(&BasisSymbol::L(pt(&[2, 0])), &BasisSymbol::L(pt(&[0, 2])))
            .unwrap();
        assert_eq!(r.coefficient(&BasisSymbol::L(pt(&[2, 2]))), s("2*g2 - 2*g1"));
        let r = g
            .bracket_basis(&BasisSymbol::L(pt(&[1, 0])), &BasisSymbol::L(pt(&[0, 1])))
            .unwrap();
        assert_eq!(r, GradedLieElement::term(BasisSymbol::L(pt(&[1, 1])), s("2")));
    }

    #[test]
    fn out_of_window_is_an_error() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let g = Algebra::solenoidal(&t, 1);
        assert!(matches!(
            g.bracket_basis(&BasisSymbol::L(pt(&[1, 0])), &BasisSymbol::L(pt(&[1, 1]))),
            Err(AlgebraError::OutOfWindow(_))
        ));
    }

    #[test]
    fn l_mixed_bracket() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let l = Algebra::deriv_l(&t, 2);
        let r = l
            .bracket_basis(
                &BasisSymbol::XD(pt(&[1, 0])),
                &BasisSymbol::XT(pt(&[0, 0]), pt(&[1, 1])),
            )
            .unwrap();
        assert_eq!(
            r,
            GradedLieElement::term(BasisSymbol::XT(pt(&[1, 0]), pt(&[1, 1])), s("g1 + g2"))
        );
    }

    #[test]
    fn wmu_image() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        assert_eq!(
            subalgebra_wmu_iso(&t, &pt(&[2, 0])).unwrap(),
            BasisSymbol::W(pt(&[1, 0]))
        );
        assert_eq!(
            wmu_parameter(&t, &Scalar::gamma_vector(2)),
            vec![s("2*g1"), s("2*g2")]
        );
        assert!(subalgebra_wmu_iso(&t, &pt(&[1, 0])).is_err());
    }
}
