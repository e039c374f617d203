use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    gamma_degree, subalgebra_wmu_iso, wmu_parameter, z_degree, Algebra, AlgebraError,
    BasisSymbol, GradedLieElement,
};
use crate::linalg::Subspace;
use crate::scalars::Scalar;
use crate::torus::TorusPresentation;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Violation {
    pub kind: String,
    pub symbols: Vec<String>,
    pub residual: String,
}

impl Violation {
    pub fn new(kind: &str, syms: &[&BasisSymbol], residual: impl ToString) -> Self {
        Violation {
            kind: kind.into(),
            symbols: syms.iter().map(|s| s.to_string()).collect(),
            residual: residual.to_string(),
        }
    }

    fn window(syms: &[&BasisSymbol], e: AlgebraError) -> Self {
        Violation::new("window", syms, e)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub window: String,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub sampled: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive below `threshold` triples, otherwise `samples` seeded triples.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub threshold: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            threshold: 100_000,
            samples: 20_000,
            seed: 0,
        }
    }
}

fn evaluation_algebra(alg: &Algebra) -> Algebra {
    match alg.bound() {
        Some(b) => alg.with_bound(3 * b),
        None => alg.clone(),
    }
}

fn jacobi(
    ev: &Algebra,
    a: &BasisSymbol,
    b: &BasisSymbol,
    c: &BasisSymbol,
) -> Result<GradedLieElement, AlgebraError> {
    let one = |x: &BasisSymbol| GradedLieElement::basis(x.clone());
    let t1 = ev.bracket(&one(a), &ev.bracket_basis(b, c)?)?;
    let t2 = ev.bracket(&one(b), &ev.bracket_basis(c, a)?)?;
    let t3 = ev.bracket(&one(c), &ev.bracket_basis(a, b)?)?;
    Ok(t1.add(&t2).add(&t3))
}

fn unrank_triple(mut idx: usize, n: usize) -> (usize, usize, usize) {
    for i in 0..n {
        let rest = (n - i - 1) * (n - i - 2) / 2;
        if idx < rest {
            for j in i + 1..n {
                let r = n - j - 1;
                if idx < r {
                    return (i, j, j + 1 + idx);
                }
                idx -= r;
            }
        }
        idx -= rest;
    }
    unreachable!("triple index out of range")
}

/// Antisymmetry on all pairs and Jacobi on unordered triples of basis symbols.
pub fn verify_lie_axioms(alg: &Algebra, sampling: Sampling) -> AxiomReport {
    let basis = alg.basis();
    let ev = evaluation_algebra(alg);
    let n = basis.len();

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut violations: Vec<Violation> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (a, b) = (&basis[i], &basis[j]);
            let ab = match ev.bracket_basis(a, b) {
                Ok(x) => x,
                Err(e) => return Some(Violation::window(&[a, b], e)),
            };
            let ba = match ev.bracket_basis(b, a) {
                Ok(x) => x,
                Err(e) => return Some(Violation::window(&[b, a], e)),
            };
            let r = ab.add(&ba);
            (!r.is_zero()).then(|| Violation::new("antisymmetry", &[a, b], r))
        })
        .collect();

    let total = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
    let sampled = total > sampling.threshold;
    let indices: Vec<usize> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let mut v = sample(&mut rng, total, sampling.samples.min(total)).into_vec();
        v.sort_unstable();
        v
    } else {
        (0..total).collect()
    };
    let jac: Vec<Violation> = indices
        .par_iter()
        .filter_map(|&t| {
            let (i, j, k) = unrank_triple(t, n);
            let (a, b, c) = (&basis[i], &basis[j], &basis[k]);
            match jacobi(&ev, a, b, c) {
                Ok(r) if r.is_zero() => None,
                Ok(r) => Some(Violation::new("jacobi", &[a, b, c], r)),
                Err(e) => Some(Violation::window(&[a, b, c], e)),
            }
        })
        .collect();
    violations.extend(jac);

    AxiomReport {
        algebra: alg.name(),
        window: alg.window(),
        basis_size: n,
        pairs_checked: pairs.len(),
        triples_checked: indices.len(),
        sampled,
        violations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub window: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub facts: BTreeMap<String, serde_json::Value>,
}

impl CheckReport {
    pub fn new(check: &str, window: String) -> Self {
        CheckReport {
            check: check.into(),
            window,
            checked: 0,
            violations: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fact(&mut self, key: &str, v: impl Serialize) {
        self.facts
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }
}

/// Rank of a family of elements, as vectors over the union of their symbols.
pub fn span_rank(elems: &[GradedLieElement]) -> usize {
    span_of(elems).0.dim()
}

fn span_of(elems: &[GradedLieElement]) -> (Subspace, BTreeMap<BasisSymbol, usize>) {
    let mut index = BTreeMap::new();
    for e in elems {
        for (s, _) in e.terms() {
            let k = index.len();
            index.entry(s.clone()).or_insert(k);
        }
    }
    let mut sp = Subspace::new(index.len());
    for e in elems {
        let mut v = vec![Scalar::zero(); index.len()];
        for (s, c) in e.terms() {
            v[index[s]] = c.clone();
        }
        sp.insert(&v);
        if sp.is_full() {
            break;
        }
    }
    (sp, index)
}

/// `L_m -> x^n d_mu` (`m = B n`) is a homomorphism `g_R -> W_{B gamma}` on the window.
pub fn wmu_iso_check(torus: &TorusPresentation, bound: i64) -> CheckReport {
    let g = Algebra::solenoidal(torus, 2 * bound * torus.radical_scales().into_iter().max().unwrap_or(1));
    let Algebra::Solenoidal { gamma, .. } = &g else {
        unreachable!()
    };
    let w = Algebra::Wmu {
        mu: wmu_parameter(torus, gamma),
        bound: 2 * bound,
    };
    let mut rep = CheckReport::new("wmu_isomorphism", format!("R-coords B={bound}"));
    let pts = torus.radical_window(bound);
    let map = |e: &GradedLieElement| -> GradedLieElement {
        let mut out = GradedLieElement::zero();
        for (s, c) in e.terms() {
            let BasisSymbol::L(m) = s else { unreachable!() };
            out.add_term(subalgebra_wmu_iso(torus, m).expect("radical"), c.clone());
        }
        out
    };
    for m in &pts {
        for n in &pts {
            let (a, b) = (BasisSymbol::L(m.clone()), BasisSymbol::L(n.clone()));
            let lhs = map(&g.bracket_basis(&a, &b).expect("in window"));
            let fa = subalgebra_wmu_iso(torus, m).expect("radical");
            let fb = subalgebra_wmu_iso(torus, n).expect("radical");
            let rhs = w.bracket_basis(&fa, &fb).expect("in window");
            rep.checked += 1;
            if lhs != rhs {
                rep.violations
                    .push(Violation::new("homomorphism", &[&a, &b], lhs.sub(&rhs)));
            }
        }
    }
    rep.fact("mu", wmu_parameter(torus, gamma));
    rep
}

/// `g'_R = span{L_s : s not in R}` is an ideal on the window.
pub fn gr_prime_ideal_check(torus: &TorusPresentation, bound: i64) -> CheckReport {
    let g = Algebra::solenoidal(torus, bound);
    let ev = g.with_bound(2 * bound);
    let mut rep = CheckReport::new("gr_prime_ideal", format!("B={bound}"));
    let basis = g.basis();
    for a in &basis {
        for b in basis.iter().filter(|b| matches!(b, BasisSymbol::L(s) if !torus.in_radical(s))) {
            rep.checked += 1;
            let r = ev.bracket_basis(a, b).expect("in window");
            for (s, _) in r.terms() {
                if matches!(s, BasisSymbol::L(t) if torus.in_radical(t)) {
                    rep.violations.push(Violation::new("ideal", &[a, b], &r));
                }
            }
        }
    }
    rep
}

fn is_dx(s: &BasisSymbol) -> bool {
    matches!(s, BasisSymbol::XD(_))
}

/// `L_+` is an ideal, and `[L_x, L_x] = [L_x0, L_x0] + sum_{j>=1} L_x,j` on the window.
pub fn l_plus_ideal_check(alg: &Algebra) -> CheckReport {
    let mut rep = CheckReport::new("l_plus_ideal", alg.window());
    let basis = alg.basis();
    for a in &basis {
        for b in basis.iter().filter(|b| z_degree(b).unwrap_or(0) >= 1) {
            rep.checked += 1;
            match alg.bracket_basis(a, b) {
                Ok(r) => {
                    if r.terms().any(|(s, _)| z_degree(s) == Some(0)) {
                        rep.violations.push(Violation::new("ideal", &[a, b], &r));
                    }
                }
                Err(e) => rep.violations.push(Violation::window(&[a, b], e)),
            }
        }
    }

    let xs: Vec<&BasisSymbol> = basis.iter().filter(|s| is_dx(s)).collect();
    let x0: Vec<&BasisSymbol> = xs.iter().copied().filter(|s| z_degree(s) == Some(0)).collect();
    let brackets = |set: &[&BasisSymbol]| -> Vec<GradedLieElement> {
        let mut out = Vec::new();
        for (i, a) in set.iter().enumerate() {
            for b in &set[i + 1..] {
                out.push(alg.bracket_basis(a, b).expect("closed"));
            }
        }
        out
    };
    let all = brackets(&xs);
    let deg0_part: Vec<GradedLieElement> = all
        .iter()
        .map(|e| {
            let mut p = GradedLieElement::zero();
            for (s, c) in e.terms().filter(|(s, _)| z_degree(s) == Some(0)) {
                p.add_term(s.clone(), c.clone());
            }
            p
        })
        .collect();
    let b0 = brackets(&x0);
    let r0 = span_rank(&b0);
    let r_proj = span_rank(&deg0_part);
    let mut joint = b0.clone();
    joint.extend(deg0_part.iter().cloned());
    let r_joint = span_rank(&joint);
    let positive = xs.iter().filter(|s| z_degree(s).unwrap_or(0) >= 1).count();
    let r_all = span_rank(&all);
    rep.checked += all.len();
    if !(r0 == r_proj && r0 == r_joint) {
        rep.violations.push(Violation::new(
            "commutator_degree0",
            &[],
            format!("rank [Lx0,Lx0]={r0}, degree-0 part of [Lx,Lx]={r_proj}, joint={r_joint}"),
        ));
    }
    if r_all != r0 + positive {
        rep.violations.push(Violation::new(
            "commutator_positive",
            &[],
            format!("rank [Lx,Lx]={r_all}, expected {r0} + {positive}"),
        ));
    }
    rep.fact("rank_commutator_x0", r0);
    rep.fact("rank_commutator_x", r_all);
    rep.fact("dim_x_positive", positive);
    rep
}

/// `L/L_+ -> gl_{d,gamma} + gl_N`, `x_i d_gamma -> e_i gamma^T`, `tbar^s -> X^s`,
/// plus the derived series of `gl_{d,gamma}`.
pub fn quotient_iso_check(alg: &Algebra) -> CheckReport {
    let Algebra::DerivL { torus, gamma, .. } = alg else {
        panic!("quotient_iso_check expects the derivation algebra");
    };
    let d = torus.d();
    let gld = Algebra::GlDGamma {
        gamma: gamma.clone(),
    };
    let gln = Algebra::GlN {
        torus: torus.clone(),
    };
    let mut rep = CheckReport::new("quotient_isomorphism", alg.window());
    let deg0: Vec<BasisSymbol> = alg
        .basis()
        .into_iter()
        .filter(|s| z_degree(s) == Some(0))
        .collect();
    let phi = |s: &BasisSymbol| -> Option<BasisSymbol> {
        match s {
            BasisSymbol::XD(p) if p.total() == 1 => {
                Some(BasisSymbol::E(p.0.iter().position(|&x| x == 1).expect("unit")))
            }
            BasisSymbol::XT(l, s) if l.is_zero() => Some(BasisSymbol::X(s.clone())),
            _ => None,
        }
    };
    for a in &deg0 {
        for b in &deg0 {
            rep.checked += 1;
            let r = alg.bracket_basis(a, b).expect("closed");
            let mut lhs = GradedLieElement::zero();
            for (s, c) in r.terms() {
                if let Some(t) = phi(s) {
                    lhs.add_term(t, c.clone());
                }
            }
            let (fa, fb) = (phi(a).expect("degree 0"), phi(b).expect("degree 0"));
            let rhs = match (&fa, &fb) {
                (BasisSymbol::E(_), BasisSymbol::E(_)) => gld.bracket_basis(&fa, &fb).expect("closed"),
                (BasisSymbol::X(_), BasisSymbol::X(_)) => gln.bracket_basis(&fa, &fb).expect("closed"),
                _ => GradedLieElement::zero(),
            };
            if lhs != rhs {
                rep.violations
                    .push(Violation::new("homomorphism", &[a, b], lhs.sub(&rhs)));
            }
        }
    }
    let series = derived_series(&gld);
    rep.fact("derived_series_dims_gl_d_gamma", &series);
    let expected = if d >= 2 { vec![d, d - 1, 0] } else { vec![d, 0] };
    if series != expected {
        rep.violations.push(Violation::new(
            "derived_series",
            &[],
            format!("dims {series:?}, expected {expected:?}"),
        ));
    }
    rep
}

/// Dimensions of the derived series until it vanishes or stabilizes.
pub fn derived_series(alg: &Algebra) -> Vec<usize> {
    let mut cur: Vec<GradedLieElement> = alg.basis().into_iter().map(GradedLieElement::basis).collect();
    let mut dims = vec![span_rank(&cur)];
    while *dims.last().expect("nonempty") > 0 {
        let mut next = Vec::new();
        for (i, a) in cur.iter().enumerate() {
            for b in &cur[i + 1..] {
                next.push(alg.bracket(a, b).expect("closed"));
            }
        }
        let (sp, index) = span_of(&next);
        let syms: Vec<BasisSymbol> = {
            let mut v: Vec<(usize, BasisSymbol)> = index.into_iter().map(|(s, i)| (i, s)).collect();
            v.sort();
            v.into_iter().map(|(_, s)| s).collect()
        };
        cur = sp
            .basis()
            .into_iter()
            .map(|v| {
                let mut e = GradedLieElement::zero();
                for (s, c) in syms.iter().zip(v) {
                    e.add_term(s.clone(), c);
                }
                e
            })
            .collect();
        let dim = cur.len();
        if dim == *dims.last().expect("nonempty") {
            dims.push(dim);
            break;
        }
        dims.push(dim);
    }
    dims
}

/// Brackets respect the Gamma-grading.
pub fn gamma_grading_check(alg: &Algebra) -> CheckReport {
    let (torus, d) = match alg {
        Algebra::DerivL { torus, .. } | Algebra::GlN { torus } => (torus, torus.d()),
        _ => panic!("gamma_grading_check expects a Gamma-graded algebra"),
    };
    let mut rep = CheckReport::new("gamma_grading", alg.window());
    let basis = alg.basis();
    for a in &basis {
        for b in &basis {
            rep.checked += 1;
            let want = torus.reduce(
                &(&gamma_degree(a, d).expect("graded") + &gamma_degree(b, d).expect("graded")),
            );
            let r = alg.bracket_basis(a, b).expect("closed");
            if r
                .terms()
                .any(|(s, _)| gamma_degree(s, d).expect("graded") != want)
            {
                rep.violations.push(Violation::new("grading", &[a, b], &r));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_unranking_is_a_bijection() {
        let n = 7;
        let mut seen = Vec::new();
        for t in 0..n * (n - 1) * (n - 2) / 6 {
            let (i, j, k) = unrank_triple(t, n);
            assert!(i < j && j < k && k < n);
            seen.push((i, j, k));
        }
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, seen);
    }

    #[test]
    fn gl_d_gamma_derived_series() {
        let alg = Algebra::GlDGamma {
            gamma: Scalar::gamma_vector(3),
        };
        assert_eq!(derived_series(&alg), vec![3, 2, 0]);
    }
}
