//! Rational functions over `Q(zeta)` in the parameter indeterminates.
//!
//! A [`Scalar`] is a reduced fraction `num / den` with a monic denominator.
//! Generic parameters are indeterminates; a scalar is invertible exactly when
//! its numerator is a nonzero polynomial.
//!
//! Textual grammar (used in configs and reports):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'g'i | 'a'i | 'b' | 'zeta'K | '(' expr ')'
//! ```
//!
//! `g1..gd` are the gamma coordinates, `a1..ad` the alpha coordinates, `b` is
//! beta and `zetaK` is `exp(2 pi i / K)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::Cyclotomic;
use super::lattice::LatticePoint;
use super::poly::{Poly, Var};
use super::ScalarError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_poly(Poly::from_rational(q))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn gamma(i: usize) -> Self {
        Scalar::var(Var::gamma(i))
    }

    pub fn alpha(i: usize) -> Self {
        Scalar::var(Var::alpha(i))
    }

    pub fn beta() -> Self {
        Scalar::var(Var::beta())
    }

    /// The gamma vector `(g1, ..., gd)` of fully symbolic coordinates.
    pub fn gamma_vector(d: usize) -> Vec<Scalar> {
        (0..d).map(Scalar::gamma).collect()
    }

    /// Build `num / den`, reducing to canonical form.
    pub fn fraction(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return Scalar {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Scalar::normalize_lc(num, den)
    }

    fn normalize_lc(num: Poly, den: Poly) -> Self {
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        if lc.is_one() {
            return Scalar { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Invertible iff the numerator is a nonzero polynomial.
    pub fn is_invertible(&self) -> bool {
        !self.is_zero()
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().and_then(|c| c.as_rational().cloned())
    }

    /// True if the value is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn is_symbolic(&self) -> bool {
        self.as_constant().is_none()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `value` for the indeterminate `v`.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Scalar, ScalarError> {
        if self.num.degree_in(v) == 0 && self.den.degree_in(v) == 0 {
            return Ok(self.clone());
        }
        let eval = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for c in p.coeffs_in(v).iter().rev() {
                acc = &(&acc * value) + &Scalar::from_poly(c.clone());
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        Scalar::reduce(num, self.den.mul(&d2))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        Scalar::normalize_lc(a.mul(&c), b.mul(&d))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly, strict: bool| {
            let s = p.fmt_terms();
            if p.len() > 1 || s.contains(' ') || (strict && s.contains(['*', '/'])) {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num.fmt_terms())
        } else {
            write!(f, "{}/{}", wrap(&self.num, false), wrap(&self.den, true))
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(ScalarError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ScalarError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Int(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ScalarError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ScalarError::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(ScalarError::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ScalarError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Scalar::from_rational(BigRational::from_integer(n))),
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(ScalarError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Ident(name) => {
                if let Some(k) = name.strip_prefix("zeta") {
                    let k: u32 = k
                        .parse()
                        .ok()
                        .filter(|&k| k > 0)
                        .ok_or_else(|| ScalarError::Parse(format!("bad root {name:?}")))?;
                    return Ok(Scalar::from_cyclotomic(Cyclotomic::root_of_unity(k, 1)));
                }
                Var::parse(&name)
                    .map(Scalar::var)
                    .ok_or_else(|| ScalarError::Parse(format!("unknown symbol {name:?}")))
            }
            Tok::Op(c) => Err(ScalarError::Parse(format!("unexpected {c:?}"))),
        }
    }
}

/// `(gamma | m) = sum_i gamma_i m_i`.
pub fn inner_product(gamma: &[Scalar], m: &LatticePoint) -> Result<Scalar, ScalarError> {
    if gamma.len() != m.dim() {
        return Err(ScalarError::DimensionMismatch {
            expected: gamma.len(),
            got: m.dim(),
        });
    }
    let mut acc = Scalar::zero();
    for (g, &x) in gamma.iter().zip(m.entries()) {
        if x != 0 {
            acc = &acc + &(g * &Scalar::from_int(x));
        }
    }
    Ok(acc)
}

/// `(gamma | v)` for a vector of scalars.
pub fn inner_product_scalars(gamma: &[Scalar], v: &[Scalar]) -> Result<Scalar, ScalarError> {
    if gamma.len() != v.len() {
        return Err(ScalarError::DimensionMismatch {
            expected: gamma.len(),
            got: v.len(),
        });
    }
    let mut acc = Scalar::zero();
    for (g, x) in gamma.iter().zip(v) {
        acc = &acc + &(g * x);
    }
    Ok(acc)
}

/// A partial assignment of indeterminates to values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Specialization {
    values: BTreeMap<Var, Scalar>,
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Scalar) -> Self {
        self.values.insert(v, value);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Scalar> {
        self.values.get(&v)
    }

    /// The value of `v` if assigned, otherwise the indeterminate itself.
    pub fn resolve(&self, v: Var) -> Scalar {
        self.values.get(&v).cloned().unwrap_or_else(|| Scalar::var(v))
    }

    /// Union of two specializations; fails if they assign different values.
    pub fn merge(&self, other: &Specialization) -> Result<Specialization, ScalarError> {
        let mut out = self.clone();
        for (v, x) in &other.values {
            match out.values.get(v) {
                Some(y) if y != x => {
                    return Err(ScalarError::ConflictingSpecialization(v.name()));
                }
                _ => {
                    out.values.insert(*v, x.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        let mut out = s.clone();
        for (v, x) in &self.values {
            out = out.substitute(*v, x)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn ring_axiom_example() {
        assert_eq!(&(&s("g1") + &s("g2")) - &s("g2"), s("g1"));
    }

    #[test]
    fn factor_cancels() {
        let q = s("g1^2 - g2^2").checked_div(&s("g1 - g2")).unwrap();
        assert_eq!(q, s("g1 + g2"));
        assert!(q.denominator().is_one());
    }

    #[test]
    fn beta_specialized_to_zero_annihilates() {
        let spec = Specialization::new().with(Var::beta(), Scalar::zero());
        let v = spec.apply(&(&s("b") * &s("g1"))).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn conflicting_specialization() {
        let a = Specialization::new().with(Var::beta(), Scalar::zero());
        let b = Specialization::new().with(Var::beta(), Scalar::one());
        assert!(matches!(
            a.merge(&b),
            Err(ScalarError::ConflictingSpecialization(_))
        ));
        assert!(a.merge(&a).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            s("g1").checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!("1/(g1 - g1)".parse::<Scalar>().is_err());
    }

    #[test]
    fn inner_products() {
        let g = Scalar::gamma_vector(2);
        assert!(inner_product(&g, &LatticePoint::new([0, 0])).unwrap().is_zero());
        assert_eq!(
            inner_product(&g, &LatticePoint::new([2, -1])).unwrap(),
            s("2*g1 - g2")
        );
        assert!(inner_product(&g, &LatticePoint::new([1, 1]))
            .unwrap()
            .is_invertible());
        assert!(matches!(
            inner_product(&g, &LatticePoint::new([1, 1, 1])),
            Err(ScalarError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_printing() {
        let v = s("(2*g1 - g2)/(b + 1)");
        assert_eq!(v.to_string(), "(2*g1 - g2)/(b + 1)");
        assert_eq!(s("zeta4").to_string(), "zeta4");
        assert_eq!(s("zeta4^2").to_string(), "-1");
        assert_eq!(s("g1/(2*g2)").to_string(), "1/2*g1/g2");
        assert_eq!(s("1/2").to_string(), "1/2");
    }

    #[test]
    fn printing_round_trips() {
        for x in [
            "(2*g1 - g2)/(b + 1)",
            "-g1/g2",
            "zeta3*g1 + (1 - zeta3)*a2",
            "1/2*b^2 - 3",
            "(g1 + zeta3)/(g2^2 - zeta3*g1)",
            "g1/(g2*b)",
        ] {
            let v = s(x);
            assert_eq!(s(&v.to_string()), v, "{x}");
        }
    }
}
