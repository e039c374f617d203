//! Exact arithmetic in cyclotomic fields `Q(zeta_K)`.
//!
//! Elements are stored as rational coefficient vectors in the power basis
//! `1, zeta, ..., zeta^(phi(K)-1)`, reduced modulo the K-th cyclotomic
//! polynomial. Values of different orders are lifted into `Q(zeta_lcm)` when
//! they meet. Rational values are always stored with order 1, so two rationals
//! compare and print identically no matter where they came from.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

fn phi_cache() -> &'static Mutex<HashMap<u32, Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the K-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(order: u32) -> Vec<i64> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&order) {
        return p.clone();
    }
    // x^K - 1 divided by every Phi_d for proper divisors d.
    let mut num = vec![0i64; order as usize + 1];
    num[0] = -1;
    num[order as usize] = 1;
    for d in 1..order {
        if order % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &div);
        }
    }
    phi_cache().lock().unwrap().insert(order, num.clone());
    num
}

fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Euler's totient, i.e. the degree of `Q(zeta_K)` over `Q`.
pub fn totient(order: u32) -> usize {
    cyclotomic_polynomial(order).len() - 1
}

/// An element of `Q(zeta_K)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// `zeta_K^e` for any integer exponent.
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        assert!(order >= 1);
        let e = exponent.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); order as usize];
        raw[e] = BigRational::one();
        Self::from_raw(order, raw)
    }

    /// Build from an arbitrary-length coefficient vector in powers of zeta_K.
    pub fn from_raw(order: u32, raw: Vec<BigRational>) -> Self {
        let coeffs = reduce_mod_phi(order, raw);
        let mut out = Self { order, coeffs };
        out.normalize();
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn normalize(&mut self) {
        if self.order > 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = self.coeffs[0].clone();
            self.order = 1;
            self.coeffs = vec![c];
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Lift into `Q(zeta_L)` for a multiple `L` of the current order.
    fn lift(&self, target: u32) -> Vec<BigRational> {
        if target == self.order {
            return self.coeffs.clone();
        }
        assert!(target % self.order == 0);
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i * step) % target as usize] += c;
        }
        reduce_mod_phi(target, raw)
    }

    fn common(&self, other: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        if self.order == other.order {
            return (self.order, self.coeffs.clone(), other.coeffs.clone());
        }
        let l = self.order.lcm(&other.order);
        (l, self.lift(l), other.lift(l))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // Solve (multiplication-by-self matrix) * x = e_0.
        let n = self.coeffs.len();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut raw = vec![BigRational::zero(); n + j];
            for (i, c) in self.coeffs.iter().enumerate() {
                raw[i + j] = c.clone();
            }
            cols.push(reduce_mod_phi(self.order, raw));
        }
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .expect("nonzero field element has an invertible multiplication matrix");
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=n {
                        let v = &aug[col][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
        }
        let sol = aug.into_iter().map(|mut row| row.pop().unwrap()).collect();
        Ok(Self::from_raw(self.order, sol))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Floating-point value at `zeta_K = exp(2 pi i / K)`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / self.order as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn reduce_mod_phi(order: u32, mut raw: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    while raw.len() > deg {
        let top = raw.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = raw.len() - deg;
        for (j, &pc) in phi.iter().enumerate().take(deg) {
            if pc != 0 {
                raw[shift + j] -= &top * BigRational::from_integer(BigInt::from(pc));
            }
        }
    }
    raw.resize(deg, BigRational::zero());
    raw
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (l, mut a, b) = self.common(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        let mut out = Cyclotomic { order: l, coeffs: a };
        out.normalize();
        out
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let (l, a, b) = self.common(rhs);
        let mut raw = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        Cyclotomic::from_raw(l, raw)
    }
}

impl Cyclotomic {
    fn scale(&self, q: &BigRational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Cyclotomic {
    /// Number of nonzero power-basis terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// True if the printed form starts with a minus sign and is a single term.
    pub(crate) fn is_negative_single(&self) -> bool {
        self.term_count() == 1
            && self
                .coeffs
                .iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let zeta = match i {
                0 => String::new(),
                1 => format!("zeta{}", self.order),
                _ => format!("zeta{}^{}", self.order, i),
            };
            if i == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{zeta}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), zeta)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: u32, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(k, e)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn zeta2_squared_is_one() {
        assert_eq!(&z(2, 1) * &z(2, 1), Cyclotomic::one());
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
        assert!(z(2, 1).is_rational());
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn third_roots_sum_to_zero() {
        let s = &(&Cyclotomic::one() + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn root_powers_wrap() {
        assert_eq!(z(3, 1).pow(3).unwrap(), Cyclotomic::one());
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(4, 2), z(2, 1));
        assert_eq!(z(3, -1), z(3, 2));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Cyclotomic::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn inverse_round_trip() {
        let a = &Cyclotomic::from_int(2) + &z(5, 3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(z(4, 1).to_string(), "zeta4");
        assert_eq!((-&z(3, 1)).to_string(), "-zeta3");
        assert_eq!(z(3, 2).to_string(), "-1 - zeta3");
        assert_eq!(Cyclotomic::from_int(-3).to_string(), "-3");
    }
}
