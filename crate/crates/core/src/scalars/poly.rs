//! Sparse multivariate polynomials over cyclotomic coefficients, with exact
//! division and a recursive primitive-PRS gcd.

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::cyclotomic::Cyclotomic;

/// An indeterminate. Ids `0..16` are the gamma coordinates, `16..32` the alpha
/// coordinates and `32` is beta.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u8);

pub const MAX_RANK: usize = 16;

impl Var {
    pub fn gamma(i: usize) -> Var {
        assert!(i < MAX_RANK);
        Var(i as u8)
    }
    pub fn alpha(i: usize) -> Var {
        assert!(i < MAX_RANK);
        Var(16 + i as u8)
    }
    pub fn beta() -> Var {
        Var(32)
    }

    pub fn name(self) -> String {
        match self.0 {
            i @ 0..=15 => format!("g{}", i + 1),
            i @ 16..=31 => format!("a{}", i - 15),
            32 => "b".to_string(),
            i => format!("x{i}"),
        }
    }

    pub fn parse(name: &str) -> Option<Var> {
        if name == "b" {
            return Some(Var::beta());
        }
        let (head, tail) = name.split_at(1);
        let idx: usize = tail.parse().ok()?;
        if idx == 0 || idx > MAX_RANK {
            return None;
        }
        match head {
            "g" => Some(Var::gamma(idx - 1)),
            "a" => Some(Var::alpha(idx - 1)),
            _ => None,
        }
    }
}

/// A monomial as a sorted list of `(var, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let oe = other.0[j].1;
                j += 1;
                match e.cmp(&oe) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - oe)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let oe = other.exponent(v);
            if oe > 0 {
                out.push((v, e.min(oe)));
            }
        }
        Monomial(out)
    }

    fn without(&self, v: Var) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, x)| {
                if w == v {
                    e = x;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial(rest))
    }

    fn max_var(&self) -> Option<Var> {
        self.0.last().map(|&(v, _)| v)
    }
}

/// Graded lexicographic order: higher total degree is greater, ties broken
/// by the exponent of the lowest-numbered variable.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => {
                    if a.0 != b.0 {
                        // the one containing the lower variable is greater
                        return if a.0 < b.0 {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    if a.1 != b.1 {
                        return a.1.cmp(&b.1);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.name()
                } else {
                    format!("{}^{}", v.name(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Cyclotomic::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Poly::constant(Cyclotomic::from_rational(q))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Cyclotomic::one(), Monomial::var(v))
    }

    pub fn term(c: Cyclotomic, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant value if the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Cyclotomic) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.as_constant() {
            let inv = c.inv().expect("nonzero constant");
            return Some(self.scale(&inv));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv().expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = &c * &lc_inv;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`, lowest degree first.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, p) in coeffs.iter().enumerate() {
            let vm = Monomial::from_pairs(vec![(v, e as u32)]);
            for (m, c) in &p.terms {
                out.add_term(m.mul(&vm), c.clone());
            }
        }
        out
    }

    /// Replace `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        if self.degree_in(v) == 0 {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        // Horner
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self == other {
            return self.monic();
        }
        if self.len() == 1 {
            let m = self.terms.keys().next().unwrap();
            return Poly::term(Cyclotomic::one(), m.gcd(&other.monomial_content()));
        }
        if other.len() == 1 {
            return other.gcd(self);
        }
        let x = self.max_var().max(other.max_var()).expect("non-constant");
        let da = self.degree_in(x);
        let db = other.degree_in(x);
        if da == 0 {
            return self.gcd(&content_in(other, x));
        }
        if db == 0 {
            return other.gcd(&content_in(self, x));
        }
        let ca = content_in(self, x);
        let cb = content_in(other, x);
        let c = ca.gcd(&cb);
        let pa = self.exact_div(&ca).expect("content divides");
        let pb = other.exact_div(&cb).expect("content divides");
        let (mut f, mut g) = if da >= db {
            (pa.coeffs_in(x), pb.coeffs_in(x))
        } else {
            (pb.coeffs_in(x), pa.coeffs_in(x))
        };
        loop {
            let r = pseudo_remainder(&f, &g);
            if r.iter().all(Poly::is_zero) {
                break;
            }
            let rp = primitive_part_coeffs(trim(r));
            if rp.len() == 1 {
                // constant in x after removing content: coprime
                g = vec![Poly::one()];
                break;
            }
            f = g;
            g = rp;
        }
        let g = primitive_part_coeffs(g);
        Poly::from_coeffs_in(x, &g).mul(&c).monic()
    }
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    v
}

fn content_in(p: &Poly, x: Var) -> Poly {
    let coeffs = p.coeffs_in(x);
    let mut acc = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = acc.gcd(c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_coeffs(coeffs: Vec<Poly>) -> Vec<Poly> {
    let mut cont = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = cont.gcd(c);
        if cont.is_one() {
            break;
        }
    }
    if cont.is_zero() || cont.is_one() {
        return coeffs;
    }
    coeffs
        .iter()
        .map(|c| c.exact_div(&cont).expect("content divides"))
        .collect()
}

/// Pseudo-remainder of `f` by `g` viewed as univariate polynomials whose
/// coefficients are the given lists (lowest degree first).
fn pseudo_remainder(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let g = trim(g.to_vec());
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    let mut r = trim(f.to_vec());
    while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(&lg)).collect();
        for (i, gc) in g.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&gc.mul(&lr));
        }
        next.pop();
        r = trim(next);
        if r.is_empty() {
            r.push(Poly::zero());
        }
    }
    r
}

impl Poly {
    pub(crate) fn fmt_terms(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = term_body(m, c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

fn term_body(m: &Monomial, c: &Cyclotomic) -> (bool, String) {
    let neg = c.is_negative_single();
    let abs = if neg { -c } else { c.clone() };
    if m.is_one() {
        let s = abs.to_string();
        return if abs.term_count() > 1 {
            (neg, format!("({s})"))
        } else {
            (neg, s)
        };
    }
    if abs.is_one() {
        return (neg, m.to_string());
    }
    let cs = abs.to_string();
    if abs.term_count() > 1 {
        (neg, format!("({cs})*{m}"))
    } else {
        (neg, format!("{cs}*{m}"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize) -> Poly {
        Poly::var(Var::gamma(i))
    }

    #[test]
    fn monomial_order_is_graded() {
        let x2 = Monomial::from_pairs(vec![(Var::gamma(0), 2)]);
        let xy = Monomial::from_pairs(vec![(Var::gamma(0), 1), (Var::gamma(1), 1)]);
        let y2 = Monomial::from_pairs(vec![(Var::gamma(1), 2)]);
        let x = Monomial::var(Var::gamma(0));
        assert!(x2 > xy && xy > y2 && y2 > x && x > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let a = g(0).mul(&g(0)).sub(&g(1).mul(&g(1)));
        let b = g(0).sub(&g(1));
        assert_eq!(a.exact_div(&b), Some(g(0).add(&g(1))));
        assert_eq!(g(0).exact_div(&g(1)), None);
    }

    #[test]
    fn gcd_of_products() {
        let common = g(0).add(&g(1).mul(&g(2))).add(&Poly::from_int(3));
        let a = common.mul(&g(0).sub(&g(2)));
        let b = common.mul(&g(1).add(&Poly::one())).mul(&g(1));
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn gcd_coprime() {
        let a = g(0).add(&g(1));
        let b = g(0).sub(&g(1));
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_with_monomial() {
        let a = g(0).mul(&g(1));
        let b = g(0).mul(&g(0)).add(&g(0).mul(&g(2)));
        assert_eq!(a.gcd(&b), g(0));
    }

    #[test]
    fn printing() {
        let p = g(0).scale(&Cyclotomic::from_int(2)).sub(&g(1));
        assert_eq!(p.to_string(), "2*g1 - g2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
