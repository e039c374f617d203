//! The cover `(g'_R (x) M) / J` on finite windows.
//!
//! At a weight `w` the tensor space is spanned by `L_s (x) v` with `s` outside the radical
//! and `v` of weight `w - s`. Window-J is the kernel of
//! `Phi_w : (v_s) -> (sum_s L_{n+s} v_s)_n` over the radical window, so the cover has
//! dimension `rank Phi_w` there; `pi` is the `n = 0` row block.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebras::BasisSymbol;
use crate::linalg::Matrix;
use crate::modules::{WeightWindowModule, WindowedModule};
use crate::scalars::{lattice_box, LatticePoint, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("module window {module} is too small for cover size {size}: need at least {need}")]
    ModuleWindow { module: i64, size: i64, need: i64 },
    #[error("cover size must be at least 1")]
    Size,
}

/// One basis vector `L_s (x) e_i` of the tensor space, with `e_i` at module position `pos`.
#[derive(Clone, Debug)]
struct TensorBasis {
    s: LatticePoint,
    pos: usize,
    i: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightRow {
    pub weight_offset: String,
    pub tensor_dim: usize,
    pub window_j_dim: usize,
    pub cover_dim: usize,
    pub pi_rank: usize,
    pub module_dim: usize,
}

const WINDOW_J_NOTE: &str =
    "kernel of the constraints over the finite radical window; contains the true J at each weight";

#[derive(Clone, Debug, Serialize)]
pub struct CoverWindow {
    pub size: i64,
    pub inner_radius: i64,
    pub rows: Vec<WeightRow>,
    /// Inner weights where `J` is not inside `ker pi`.
    pub j_outside_ker_pi: usize,
    /// `pi(L_m u) - L_m pi(u)` checked on basis vectors `u`; nonzero count.
    pub homomorphism_checked: usize,
    pub homomorphism_failures: usize,
    /// Window-J images under generators that stay in the windows.
    pub invariance_checked: usize,
    pub invariance_failures: usize,
    /// How window-J relates to the true `J`.
    pub window_j: String,
    /// `pi` onto each inner weight space.
    pub inner_surjective: bool,
    pub max_inner_cover_multiplicity: usize,
    /// `g'_R = 0`: the commutative case, nothing to cover.
    pub degenerate: bool,
}

impl CoverWindow {
    pub fn passed(&self) -> bool {
        self.j_outside_ker_pi == 0
            && self.homomorphism_failures == 0
            && self.invariance_failures == 0
    }
}

struct Space<'a> {
    m: &'a WeightWindowModule,
    shifts: Vec<LatticePoint>,
    non_radical: Vec<LatticePoint>,
    in_window: HashSet<LatticePoint>,
}

impl<'a> Space<'a> {
    fn new(m: &'a WeightWindowModule, size: i64) -> Self {
        let torus = m.torus();
        let cells = lattice_box(torus.d(), size);
        let shifts: Vec<LatticePoint> = cells.iter().map(|c| torus.from_radical_coords(c)).collect();
        let mut non_radical = Vec::new();
        for n in &shifts {
            for r in torus.gamma_reps().into_iter().filter(|r| !r.is_zero()) {
                non_radical.push(n + &r);
            }
        }
        Space {
            m,
            shifts,
            in_window: non_radical.iter().cloned().collect(),
            non_radical,
        }
    }

    fn basis(&self, w: &LatticePoint) -> Vec<TensorBasis> {
        let mut out = Vec::new();
        for s in &self.non_radical {
            if let Some(pos) = self.m.position_index(&(w - s)) {
                for i in 0..self.m.multiplicity(pos) {
                    out.push(TensorBasis { s: s.clone(), pos, i });
                }
            }
        }
        out
    }

    /// `Phi_w` as a matrix, with the row offset of the `n = 0` block.
    fn phi(&self, w: &LatticePoint, basis: &[TensorBasis]) -> (Matrix, usize, usize) {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let (mut pi_start, mut pi_len) = (0, 0);
        for n in &self.shifts {
            let Some(target) = self.m.position_index(&(w + n)) else {
                continue;
            };
            let k = self.m.multiplicity(target);
            if n.is_zero() {
                pi_start = rows.len();
                pi_len = k;
            }
            let mut block = vec![vec![Scalar::zero(); basis.len()]; k];
            for (j, b) in basis.iter().enumerate() {
                let g = n + &b.s;
                if let Ok(Some((_, blk))) = self.m.act_block(&self.m.symbol(&g), b.pos) {
                    for (r, row) in block.iter_mut().enumerate() {
                        row[j] = blk[(r, b.i)].clone();
                    }
                }
            }
            rows.extend(block);
        }
        let phi = if rows.is_empty() {
            Matrix::zeros(0, basis.len())
        } else {
            Matrix::from_rows(rows)
        };
        (phi, pi_start, pi_len)
    }

    /// `L_g (L_s (x) e_i)` over the basis at `w + g`, given its index; `None` if it leaves the window.
    fn act_column(
        &self,
        g: &LatticePoint,
        wt: &LatticePoint,
        b: &TensorBasis,
        index: &HashMap<(LatticePoint, usize, usize), usize>,
    ) -> Option<Vec<(usize, Scalar)>> {
        let mut y = Vec::new();
        // [L_g, L_s] (x) v
        let br = self.m.algebra().bracket_basis(&self.m.symbol(g), &self.m.symbol(&b.s)).ok()?;
        for (sym, k) in br.terms() {
            let (BasisSymbol::L(s2) | BasisSymbol::W(s2)) = sym else {
                return None;
            };
            if !self.in_window.contains(s2) {
                return None;
            }
            let pos2 = self.m.position_index(&(wt - s2))?;
            y.push((*index.get(&(s2.clone(), pos2, b.i))?, k.clone()));
        }
        // L_s (x) L_g v
        if let Some((t, blk)) = self.m.act_block(&self.m.symbol(g), b.pos).ok()? {
            for r in 0..blk.rows() {
                if !blk[(r, b.i)].is_zero() {
                    y.push((*index.get(&(b.s.clone(), t, r))?, blk[(r, b.i)].clone()));
                }
            }
        }
        Some(y)
    }
}

fn index_of(basis: &[TensorBasis]) -> HashMap<(LatticePoint, usize, usize), usize> {
    basis
        .iter()
        .enumerate()
        .map(|(j, b)| ((b.s.clone(), b.pos, b.i), j))
        .collect()
}

/// Build the cover on the window of size `size` and check it on weights of cell radius `inner`.
pub fn build_cover(m: &WeightWindowModule, size: i64, inner: i64) -> Result<CoverWindow, CoverError> {
    if size < 1 {
        return Err(CoverError::Size);
    }
    let need = 2 * size + inner + 2;
    if m.bound() < need {
        return Err(CoverError::ModuleWindow {
            module: m.bound(),
            size,
            need,
        });
    }
    let space = Space::new(m, size);
    let inner_pos: Vec<usize> = (0..m.positions().len())
        .filter(|&p| m.cell(p).max_abs() <= inner)
        .collect();
    let degenerate = m.torus().z() == 0;
    let mut gens: Vec<LatticePoint> = Vec::new();
    for b in m.torus().radical_basis() {
        gens.push(-&b);
        gens.push(b);
    }
    gens.extend(m.torus().gamma_reps().into_iter().filter(|r| !r.is_zero()));

    struct PerWeight {
        row: WeightRow,
        j_bad: bool,
        hom: (usize, usize),
        inv: (usize, usize),
        surjective: bool,
    }
    let per: Vec<PerWeight> = inner_pos
        .par_iter()
        .map(|&p| {
            let w = m.positions()[p].clone();
            let basis = space.basis(&w);
            let (phi, ps, pl) = space.phi(&w, &basis);
            let pi = phi.select(&(ps..ps + pl).collect::<Vec<_>>(), &(0..basis.len()).collect::<Vec<_>>());
            let pi_rank = pi.rank();
            let j = phi.nullspace();
            let rank = basis.len() - j.len();
            let j_bad = j.iter().any(|v| pi.apply(v).iter().any(|x| !x.is_zero()));
            let (mut hc, mut hf, mut ic, mut if_) = (0, 0, 0, 0);
            for g in &gens {
                let lg = match m.act_block(&m.symbol(g), p) {
                    Ok(x) => x,
                    Err(_) => continue,
                };
                let wt = &w + g;
                let tb = space.basis(&wt);
                let index = index_of(&tb);
                let (phi_t, pst, plt) = space.phi(&wt, &tb);
                let (mut kept, mut image) = (Vec::new(), Vec::new());
                for (k, b) in basis.iter().enumerate() {
                    let Some(col) = space.act_column(g, &wt, b, &index) else {
                        continue;
                    };
                    // Column k of Phi_{w+g} A_g.
                    let c: Vec<Scalar> = (0..phi_t.rows())
                        .map(|r| {
                            col.iter()
                                .fold(Scalar::zero(), |acc, (j, y)| &acc + &(y * &phi_t[(r, *j)]))
                        })
                        .collect();
                    // pi(L_g u) against L_g pi(u).
                    let pv: Vec<Scalar> = (ps..ps + pl).map(|r| phi[(r, k)].clone()).collect();
                    let rhs = match &lg {
                        Some((_, blk)) => blk.apply(&pv),
                        None => vec![Scalar::zero(); plt],
                    };
                    hc += 1;
                    if c[pst..pst + plt] != rhs[..] {
                        hf += 1;
                    }
                    kept.push(k);
                    image.push(c);
                }
                // Window-J vectors supported on kept columns map into window-J at w + g.
                let base = phi.select(&(0..phi.rows()).collect::<Vec<_>>(), &kept);
                let base_rank = if kept.len() == basis.len() { rank } else { base.rank() };
                let mut stacked = base.to_rows();
                stacked.extend((0..phi_t.rows()).map(|r| image.iter().map(|c| c[r].clone()).collect()));
                let stacked = Matrix::from_rows(stacked);
                ic += 1;
                if stacked.rank() != base_rank {
                    if_ += 1;
                }
            }
            PerWeight {
                row: WeightRow {
                    weight_offset: w.to_string(),
                    tensor_dim: basis.len(),
                    window_j_dim: j.len(),
                    cover_dim: rank,
                    pi_rank,
                    module_dim: m.multiplicity(p),
                },
                j_bad,
                hom: (hc, hf),
                inv: (ic, if_),
                surjective: pi_rank == m.multiplicity(p),
            }
        })
        .collect();

    let mut out = CoverWindow {
        size,
        inner_radius: inner,
        rows: Vec::new(),
        j_outside_ker_pi: 0,
        homomorphism_checked: 0,
        homomorphism_failures: 0,
        invariance_checked: 0,
        invariance_failures: 0,
        window_j: WINDOW_J_NOTE.into(),
        inner_surjective: !degenerate,
        max_inner_cover_multiplicity: 0,
        degenerate,
    };
    for pw in per {
        out.j_outside_ker_pi += pw.j_bad as usize;
        out.homomorphism_checked += pw.hom.0;
        out.homomorphism_failures += pw.hom.1;
        out.invariance_checked += pw.inv.0;
        out.invariance_failures += pw.inv.1;
        out.inner_surjective &= pw.surjective;
        out.max_inner_cover_multiplicity = out.max_inner_cover_multiplicity.max(pw.row.cover_dim);
        out.rows.push(pw.row);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspidalityProbe {
    pub sizes: Vec<i64>,
    pub max_multiplicity: Vec<usize>,
    pub windows: Vec<CoverWindow>,
    /// Maximum multiplicity equal across the two largest sizes.
    pub bounded: bool,
    pub degenerate: bool,
}

/// Build the cover for each size, with the module rebuilt large enough by `module_at`.
pub fn cuspidality_probe<F>(module_at: F, sizes: &[i64], inner: i64) -> Result<CuspidalityProbe, CoverError>
where
    F: Fn(i64) -> WeightWindowModule,
{
    let mut windows = Vec::new();
    for &b in sizes {
        let m = module_at(2 * b + inner + 2);
        windows.push(build_cover(&m, b, inner)?);
    }
    let max: Vec<usize> = windows.iter().map(|w| w.max_inner_cover_multiplicity).collect();
    let bounded = max.len() >= 2 && max[max.len() - 1] == max[max.len() - 2];
    Ok(CuspidalityProbe {
        sizes: sizes.to_vec(),
        max_multiplicity: max,
        degenerate: windows.iter().all(|w| w.degenerate),
        windows,
        bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_tensor_module, GradedGlnModule};
    use crate::torus::TorusPresentation;

    #[test]
    fn commutative_case_is_degenerate() {
        let t = TorusPresentation::commutative(2);
        let m = build_tensor_module(&t, vec![Scalar::alpha(0), Scalar::alpha(1)], Scalar::beta(), GradedGlnModule::trivial(&t), 5)
            .unwrap();
        let c = build_cover(&m, 1, 1).unwrap();
        assert!(c.degenerate);
        assert!(c.rows.iter().all(|r| r.tensor_dim == 0 && r.cover_dim == 0));
    }

    #[test]
    fn small_regular_cover() {
        let t = TorusPresentation::new(2, vec![2]).unwrap();
        let m = build_tensor_module(&t, vec![Scalar::alpha(0), Scalar::alpha(1)], Scalar::beta(), GradedGlnModule::regular(&t), 5)
            .unwrap();
        let c = build_cover(&m, 1, 1).unwrap();
        assert!(c.passed(), "{c:?}");
        assert!(c.inner_surjective);
        assert!(c.homomorphism_checked > 0 && c.invariance_checked > 0);
    }
}
