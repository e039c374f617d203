//! Exact multivariate polynomial fits of matrix-valued samples.
//!
//! Samples live on R-coordinates `c`; the physical variable is `m_i = scale_i c_i`.
//! A degree-`D` candidate is the Newton interpolant on the simplex `c >= 0, |c| <= D`,
//! checked against every other sample before it is accepted.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::linalg::Matrix;
use crate::scalars::{multi_indices, LatticePoint, Scalar};
use crate::torus::TorusPresentation;

use super::extract::DSamples;
use super::CorrespondenceError;

/// Default degree cap for the escalation.
pub const DEFAULT_DEGREE_CAP: usize = 4;

/// Coefficients `P^p` of the expansion `f(m) = sum_p m^p / p! P^p`.
pub type Coefficients = BTreeMap<LatticePoint, Matrix>;

/// The fitted operators: `P_0^p` per class and `P_r^l` per `(r, s)` class pair.
#[derive(Clone, Debug)]
pub struct PolynomialFamily {
    pub torus: TorusPresentation,
    pub dims: Vec<usize>,
    pub degree: usize,
    pub d0: BTreeMap<usize, Coefficients>,
    pub dr: BTreeMap<(usize, usize), Coefficients>,
}

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

/// `binom(c, j)` for any integer `c`.
fn binomial(c: i64, j: i64) -> Scalar {
    let mut num = Scalar::one();
    for i in 0..j {
        num = &num * &Scalar::from_int(c - i);
    }
    &num * &Scalar::from_ratio(1, factorial(j))
}

/// Signed Stirling numbers of the first kind, `s[n][k]`, `n <= max`.
fn stirling_first(max: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; max + 1]; max + 1];
    s[0][0] = 1;
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = s[n - 1][k - 1] - (n as i64 - 1) * s[n - 1][k];
        }
    }
    s
}

fn le(a: &LatticePoint, b: &LatticePoint) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y)
}

/// Forward differences `Delta^j f(0)` for `|j| <= degree`.
fn differences(samples: &BTreeMap<LatticePoint, Matrix>, d: usize, degree: usize) -> Option<Vec<(LatticePoint, Matrix)>> {
    let mut out = Vec::new();
    for j in multi_indices(d, degree) {
        let mut acc: Option<Matrix> = None;
        for i in multi_indices(d, degree).into_iter().filter(|i| le(i, &j)) {
            let mut c = Scalar::one();
            for (&jk, &ik) in j.entries().iter().zip(i.entries()) {
                c = &c * &binomial(jk, ik);
            }
            if (j.total() - i.total()) % 2 == 1 {
                c = -&c;
            }
            let term = samples.get(&i)?.scale(&c);
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        out.push((j, acc.expect("i = 0 is always present")));
    }
    Some(out)
}

fn evaluate(diffs: &[(LatticePoint, Matrix)], c: &LatticePoint) -> Matrix {
    let mut acc = diffs[0].1.scale(&Scalar::zero());
    for (j, m) in diffs {
        let mut w = Scalar::one();
        for (&ck, &jk) in c.entries().iter().zip(j.entries()) {
            w = &w * &binomial(ck, jk);
        }
        if !w.is_zero() {
            acc = &acc + &m.scale(&w);
        }
    }
    acc
}

/// Convert Newton coefficients in `c` to the `m^p / p!` expansion in `m`.
fn to_monomial(diffs: &[(LatticePoint, Matrix)], scales: &[i64], degree: usize) -> Coefficients {
    let d = scales.len();
    let s = stirling_first(degree);
    let mut out = Coefficients::new();
    for p in multi_indices(d, degree) {
        let mut acc: Option<Matrix> = None;
        for (j, m) in diffs.iter().filter(|(j, _)| le(&p, j)) {
            let mut w = Scalar::one();
            for k in 0..d {
                let (jk, pk) = (j.entries()[k], p.entries()[k]);
                let st = s[jk as usize][pk as usize];
                w = &w * &Scalar::from_ratio(st, factorial(jk));
                w = &w * &Scalar::from_ratio(factorial(pk), scales[k].pow(pk as u32));
            }
            if w.is_zero() {
                continue;
            }
            let term = m.scale(&w);
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        if let Some(a) = acc.filter(|a| !a.is_zero()) {
            out.insert(p, a);
        }
    }
    out
}

/// Fit one sample family, escalating the degree until every held-out sample agrees.
pub fn fit_samples(
    samples: &BTreeMap<LatticePoint, Matrix>,
    scales: &[i64],
    radius: i64,
    cap: usize,
) -> Result<(usize, Coefficients), CorrespondenceError> {
    let d = scales.len();
    let top = cap.min(radius.max(0) as usize);
    for degree in 0..=top {
        let Some(diffs) = differences(samples, d, degree) else {
            break;
        };
        if samples.iter().all(|(c, v)| &evaluate(&diffs, c) == v) {
            return Ok((degree, to_monomial(&diffs, scales, degree)));
        }
    }
    Err(CorrespondenceError::NotPolynomial { cap: top })
}

/// Fit every sampled operator; independent fits run concurrently.
pub fn fit_polynomials(samples: &DSamples, cap: usize) -> Result<PolynomialFamily, CorrespondenceError> {
    let scales = samples.torus.radical_scales();
    let fit = |s: &BTreeMap<LatticePoint, Matrix>| fit_samples(s, &scales, samples.radius, cap);
    let d0: Vec<(usize, (usize, Coefficients))> = samples
        .d0
        .par_iter()
        .map(|(k, s)| fit(s).map(|f| (*k, f)))
        .collect::<Result<_, _>>()?;
    let dr: Vec<((usize, usize), (usize, Coefficients))> = samples
        .dr
        .par_iter()
        .map(|(k, s)| fit(s).map(|f| (*k, f)))
        .collect::<Result<_, _>>()?;
    let degree = d0.iter().map(|x| x.1 .0).chain(dr.iter().map(|x| x.1 .0)).max().unwrap_or(0);
    Ok(PolynomialFamily {
        torus: samples.torus.clone(),
        dims: samples.dims.clone(),
        degree,
        d0: d0.into_iter().map(|(k, (_, c))| (k, c)).collect(),
        dr: dr.into_iter().map(|(k, (_, c))| (k, c)).collect(),
    })
}

impl PolynomialFamily {
    fn zero(&self, rows: usize, cols: usize) -> Matrix {
        Matrix::zeros(rows, cols)
    }

    /// `P_0^p` on the class `s`.
    pub fn p0(&self, s: usize, p: &LatticePoint) -> Matrix {
        self.d0
            .get(&s)
            .and_then(|c| c.get(p))
            .cloned()
            .unwrap_or_else(|| self.zero(self.dims[s], self.dims[s]))
    }

    /// `P_r^l` from the class `s`.
    pub fn pr(&self, r: usize, s: usize, l: &LatticePoint) -> Matrix {
        let reps = self.torus.gamma_reps();
        let t = self.torus.gamma_index(&(&reps[r] + &reps[s]));
        self.dr
            .get(&(r, s))
            .and_then(|c| c.get(l))
            .cloned()
            .unwrap_or_else(|| self.zero(self.dims[t], self.dims[s]))
    }
}

struct Coeffs<'a>(&'a Coefficients);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(self.0.len()))?;
        for (p, v) in self.0 {
            m.serialize_entry(&p.to_string(), v)?;
        }
        m.end()
    }
}

impl Serialize for PolynomialFamily {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let reps = self.torus.gamma_reps();
        let d0: BTreeMap<String, Coeffs> = self
            .d0
            .iter()
            .map(|(s, c)| (format!("P0 on {}", reps[*s]), Coeffs(c)))
            .collect();
        let dr: BTreeMap<String, Coeffs> = self
            .dr
            .iter()
            .map(|((r, s), c)| (format!("P{} from {}", reps[*r], reps[*s]), Coeffs(c)))
            .collect();
        let mut st = ser.serialize_struct("PolynomialFamily", 4)?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("d0", &d0)?;
        st.serialize_field("dr", &dr)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::lattice_box;

    #[test]
    fn stirling_rows() {
        let s = stirling_first(4);
        assert_eq!(s[3], vec![0, 2, -3, 1, 0]);
        assert_eq!(s[4][1], -6);
    }

    #[test]
    fn recovers_degree_two_family() {
        // f(m) = sum_p m^p/p! A_p with all six coefficients at d = 2, scales (2, 1).
        let scales = [2, 1];
        let coeffs: Coefficients = multi_indices(2, 2)
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let a = Matrix::from_rows(vec![
                    vec![Scalar::from_int(i as i64 + 1), Scalar::alpha(0)],
                    vec![Scalar::zero(), Scalar::from_ratio(1, i as i64 + 2)],
                ]);
                (p, a)
            })
            .collect();
        let samples: BTreeMap<LatticePoint, Matrix> = lattice_box(2, 3)
            .into_iter()
            .map(|c| {
                let m = [c.entries()[0] * scales[0], c.entries()[1] * scales[1]];
                let mut acc = Matrix::zeros(2, 2);
                for (p, a) in &coeffs {
                    let mut w = Scalar::one();
                    for k in 0..2 {
                        let e = p.entries()[k];
                        w = &w * &Scalar::from_ratio(m[k].pow(e as u32), factorial(e));
                    }
                    acc = &acc + &a.scale(&w);
                }
                (c, acc)
            })
            .collect();
        let (deg, got) = fit_samples(&samples, &scales, 3, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(deg, 2);
        assert_eq!(got, coeffs);
    }

    #[test]
    fn non_polynomial_is_rejected() {
        let samples: BTreeMap<LatticePoint, Matrix> = lattice_box(1, 3)
            .into_iter()
            .map(|c| {
                let v = Scalar::from_int(1 << (c.entries()[0] + 3));
                (c, Matrix::scalar(1, &v))
            })
            .collect();
        assert!(matches!(
            fit_samples(&samples, &[1], 3, 2),
            Err(CorrespondenceError::NotPolynomial { .. })
        ));
    }
}
