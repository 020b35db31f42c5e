//! Chevalley–Eilenberg cochains `C^k(g, M) = Hom(Λ^k g, M)` and their exact
//! cohomology, including the deformation complexes of Chern–Simons theory
//! and of a charged fermion line defect.
//!
//! Differential convention:
//!
//! ```text
//! (dφ)(x_0..x_k) = Σ_i (-1)^i x_i·φ(..x̂_i..)
//!                + Σ_{i<j} (-1)^{i+j} φ([x_i, x_j], ..x̂_i..x̂_j..)
//! ```

use num_traits::Zero;
use thiserror::Error;

use crate::lie::{LieAlgebraData, Representation};
use crate::linalg::QMatrix;
use crate::ring::Rational;

/// Largest Lie algebra dimension accepted for cochain construction.
pub const MAX_ALGEBRA_DIM: usize = 10;
/// Largest representation dimension for the fermion deformation complexes.
pub const MAX_DEFECT_REP_DIM: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CeError {
    #[error("dimension too large: {0}")]
    DimensionTooLarge(String),
    #[error("module does not match the algebra: {0}")]
    ModuleMismatch(String),
    #[error("d∘d ≠ 0 in degree {0}")]
    NotAComplex(usize),
}

/// Finite-dimensional `g`-module with a `Z/2` grading preserved by `g`.
/// Basis vectors are ordered even first, then odd.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperModule {
    even_dim: usize,
    odd_dim: usize,
    action: Vec<QMatrix>,
}

impl SuperModule {
    pub fn new(even_dim: usize, odd_dim: usize, action: Vec<QMatrix>) -> Result<Self, CeError> {
        let n = even_dim + odd_dim;
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(CeError::ModuleMismatch(
                "action matrices have the wrong size".into(),
            ));
        }
        for m in &action {
            for i in 0..n {
                for j in 0..n {
                    if (i < even_dim) != (j < even_dim) && !m[(i, j)].is_zero() {
                        return Err(CeError::ModuleMismatch("action mixes parities".into()));
                    }
                }
            }
        }
        Ok(Self {
            even_dim,
            odd_dim,
            action,
        })
    }

    /// A purely even module from a representation.
    pub fn from_representation(rep: &Representation) -> Self {
        Self {
            even_dim: rep.dim(),
            odd_dim: 0,
            action: rep.matrices().to_vec(),
        }
    }

    pub fn trivial(g: &LieAlgebraData) -> Self {
        Self::from_representation(&Representation::trivial(g, 1))
    }

    /// The sub-module of `Sym(ΠW) = Λ(W)` spanned by the basis monomials
    /// (subsets of `0..dim W`) accepted by `keep`; `g` acts by derivations.
    /// `keep` must select a `g`-stable span, which is checked.
    pub fn exterior(w: &Representation, keep: impl Fn(u32) -> bool) -> Result<Self, CeError> {
        let n = w.dim();
        if n > 2 * MAX_DEFECT_REP_DIM {
            return Err(CeError::DimensionTooLarge(format!(
                "exterior algebra on {n} generators"
            )));
        }
        let mut subsets: Vec<u32> = (0..1u32 << n).filter(|&s| keep(s)).collect();
        subsets.sort_by_key(|s| (s.count_ones() % 2, *s));
        let even_dim = subsets.iter().filter(|s| s.count_ones() % 2 == 0).count();
        let index = |s: u32| subsets.iter().position(|&t| t == s);
        let mut action = Vec::with_capacity(w.matrices().len());
        for rho in w.matrices() {
            let mut m = QMatrix::zeros(subsets.len(), subsets.len());
            for (col, &s) in subsets.iter().enumerate() {
                let slots: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
                for (pos, &i) in slots.iter().enumerate() {
                    for j in 0..n {
                        let c = &rho[(j, i)];
                        if c.is_zero() {
                            continue;
                        }
                        // replace generator i in slot `pos` by generator j
                        let mut word = slots.clone();
                        word[pos] = j;
                        let Some((sign, t)) = sort_word(&word) else {
                            continue;
                        };
                        let row = index(t).ok_or_else(|| {
                            CeError::ModuleMismatch("selected span is not g-stable".into())
                        })?;
                        let v = if sign { -c.clone() } else { c.clone() };
                        m[(row, col)] += v;
                    }
                }
            }
            action.push(m);
        }
        Self::new(even_dim, subsets.len() - even_dim, action)
    }

    pub fn dim(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn action(&self) -> &[QMatrix] {
        &self.action
    }
}

/// Sorts a word of distinct generators; returns (odd permutation?, subset),
/// or `None` if a generator repeats.
fn sort_word(word: &[usize]) -> Option<(bool, u32)> {
    let mut mask = 0u32;
    let mut inversions = 0usize;
    for (i, &a) in word.iter().enumerate() {
        if mask & (1 << a) != 0 {
            return None;
        }
        mask |= 1 << a;
        inversions += word[i + 1..].iter().filter(|&&b| b < a).count();
    }
    Some((inversions % 2 == 1, mask))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    differentials: Vec<QMatrix>,
}

impl CochainComplex {
    /// Validates shapes and `d_{k+1} d_k = 0`.
    pub fn new(dims: Vec<usize>, differentials: Vec<QMatrix>) -> Result<Self, CeError> {
        if differentials.len() + 1 != dims.len() {
            return Err(CeError::ModuleMismatch(
                "need one differential between consecutive spaces".into(),
            ));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(CeError::ModuleMismatch(format!(
                    "differential {k} has the wrong shape"
                )));
            }
        }
        for k in 0..differentials.len().saturating_sub(1) {
            let (d0, d1) = (&differentials[k], &differentials[k + 1]);
            if d0.rows() > 0 && d0.cols() > 0 && d1.rows() > 0 && !d1.mul(d0).is_zero() {
                return Err(CeError::NotAComplex(k));
            }
        }
        Ok(Self {
            dims,
            differentials,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[QMatrix] {
        &self.differentials
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(self.dims.iter().copied())
    }

    /// Betti numbers `dim H^k = n_k - rank d_k - rank d_{k-1}`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(QMatrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }
}

pub fn alternating_sum(values: impl Iterator<Item = usize>) -> i64 {
    values
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

fn subsets_of_size(d: usize, k: usize) -> Vec<u32> {
    (0..1u32 << d)
        .filter(|s| s.count_ones() as usize == k)
        .collect()
}

/// `C^*(g, M)` with the differential above. Cochains in degree `k` are
/// indexed by (sorted `k`-subset of the basis of `g`, basis vector of `M`).
pub fn ce_complex(g: &LieAlgebraData, m: &SuperModule) -> Result<CochainComplex, CeError> {
    let d = g.dim();
    if d > MAX_ALGEBRA_DIM {
        return Err(CeError::DimensionTooLarge(format!(
            "dim g = {d} > {MAX_ALGEBRA_DIM}"
        )));
    }
    if m.action.len() != d {
        return Err(CeError::ModuleMismatch(format!(
            "module has {} action matrices, algebra has dimension {d}",
            m.action.len()
        )));
    }
    let md = m.dim();
    let levels: Vec<Vec<u32>> = (0..=d).map(|k| subsets_of_size(d, k)).collect();
    let position = |k: usize, s: u32| levels[k].binary_search(&s).expect("subset present");
    let dims: Vec<usize> = levels.iter().map(|l| l.len() * md).collect();
    let mut differentials = Vec::with_capacity(d);
    for k in 0..d {
        let mut mat = QMatrix::zeros(dims[k + 1], dims[k]);
        for (ti, &t) in levels[k + 1].iter().enumerate() {
            let elems: Vec<usize> = (0..d).filter(|i| t & (1 << i) != 0).collect();
            // Σ_i (-1)^i x_i · φ(..x̂_i..)
            for (i, &xi) in elems.iter().enumerate() {
                let s = position(k, t & !(1 << xi));
                let rho = &m.action[xi];
                for r in 0..md {
                    for c in 0..md {
                        let v = &rho[(r, c)];
                        if v.is_zero() {
                            continue;
                        }
                        let entry = &mut mat[(ti * md + r, s * md + c)];
                        if i % 2 == 0 {
                            *entry += v;
                        } else {
                            *entry -= v;
                        }
                    }
                }
            }
            // Σ_{i<j} (-1)^{i+j} φ([x_i, x_j], ..x̂_i..x̂_j..)
            for (i, &xi) in elems.iter().enumerate() {
                for (j, &xj) in elems.iter().enumerate().skip(i + 1) {
                    let rest = t & !(1 << xi) & !(1 << xj);
                    for mm in 0..d {
                        let fc = g.f(xi, xj, mm);
                        if fc.is_zero() || rest & (1 << mm) != 0 {
                            continue;
                        }
                        // move e_mm from the front into sorted position
                        let below = (rest & ((1u32 << mm) - 1)).count_ones() as usize;
                        let s = position(k, rest | (1 << mm));
                        let negative = (i + j + below) % 2 == 1;
                        let v: Rational = if negative { -fc.clone() } else { fc.clone() };
                        for r in 0..md {
                            mat[(ti * md + r, s * md + r)] += &v;
                        }
                    }
                }
            }
        }
        differentials.push(mat);
    }
    CochainComplex::new(dims, differentials)
}

/// Betti numbers of `C^*(g, M)`.
pub fn lie_cohomology(g: &LieAlgebraData, m: &SuperModule) -> Result<Vec<usize>, CeError> {
    Ok(ce_complex(g, m)?.cohomology_dims())
}

/// `(dim H^3(g), dim H^4(g))` with trivial coefficients: the deformation and
/// obstruction spaces for quantizing Chern–Simons theory.
pub fn cs_deformation_cohomology(g: &LieAlgebraData) -> Result<(usize, usize), CeError> {
    let betti = lie_cohomology(g, &SuperModule::trivial(g))?;
    Ok((
        betti.get(3).copied().unwrap_or(0),
        betti.get(4).copied().unwrap_or(0),
    ))
}

/// Coefficient module of the charged-fermion deformation complex: all of
/// `Sym^{>0}(ΠV ⊕ ΠV*)` on a line without boundary, or the ideal
/// `Sym(ΠV) ⊗ Sym^{>0}(ΠV*)` with the boundary condition.
pub fn fermion_module(rep: &Representation, boundary: bool) -> Result<SuperModule, CeError> {
    let n = rep.dim();
    if n > MAX_DEFECT_REP_DIM {
        return Err(CeError::DimensionTooLarge(format!(
            "dim V = {n} > {MAX_DEFECT_REP_DIM}"
        )));
    }
    // generators 0..n span V, n..2n span V*
    let dual = rep.dual();
    let w: Vec<QMatrix> = rep
        .matrices()
        .iter()
        .zip(dual.matrices())
        .map(|(a, b)| {
            QMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => b[(i - n, j - n)].clone(),
                _ => Rational::zero(),
            })
        })
        .collect();
    let w = Representation::unchecked(2 * n, w);
    let dual_mask: u32 = ((1u32 << n) - 1) << n;
    if boundary {
        SuperModule::exterior(&w, |s| s & dual_mask != 0)
    } else {
        SuperModule::exterior(&w, |s| s != 0)
    }
}

/// `(dim H^1(g, M), dim H^2(g, M))` for the fermion coefficient module `M`:
/// the deformations and obstructions of the defect coupling.
pub fn defect_deformation_cohomology(
    g: &LieAlgebraData,
    rep: &Representation,
    boundary: bool,
) -> Result<(usize, usize), CeError> {
    if rep.matrices().len() != g.dim() {
        return Err(CeError::ModuleMismatch(
            "representation does not match the algebra".into(),
        ));
    }
    let m = fermion_module(rep, boundary)?;
    let betti = lie_cohomology(g, &m)?;
    Ok((
        betti.get(1).copied().unwrap_or(0),
        betti.get(2).copied().unwrap_or(0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sl2_trivial_complex() {
        let (g, _) = builtin("sl2").unwrap();
        let c = ce_complex(&g, &SuperModule::trivial(&g)).unwrap();
        assert_eq!(c.dims(), &[1, 3, 3, 1]);
        assert_eq!(c.cohomology_dims(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn abelian_complexes_have_zero_differential() {
        let g = LieAlgebraData::abelian(1);
        let c = ce_complex(&g, &SuperModule::trivial(&g)).unwrap();
        assert_eq!(c.dims(), &[1, 1]);
        assert!(c.differentials()[0].is_zero());
        let g3 = LieAlgebraData::abelian(3);
        assert_eq!(
            lie_cohomology(&g3, &SuperModule::trivial(&g3)).unwrap(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(cs_deformation_cohomology(&g3).unwrap(), (1, 0));
    }

    #[test]
    fn sl2_fundamental_dims_and_vanishing() {
        let (g, rep) = builtin("sl2").unwrap();
        let m = SuperModule::from_representation(&rep.unwrap());
        let c = ce_complex(&g, &m).unwrap();
        assert_eq!(c.dims(), &[2, 6, 6, 2]);
        assert_eq!(c.cohomology_dims(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn sl3_h3_h4() {
        let (g, _) = builtin("sl3").unwrap();
        assert_eq!(cs_deformation_cohomology(&g).unwrap(), (1, 0));
    }

    #[test]
    fn sl2_deformation_numbers() {
        let (g, rep) = builtin("sl2").unwrap();
        let rep = rep.unwrap();
        assert_eq!(cs_deformation_cohomology(&g).unwrap(), (1, 0));
        assert_eq!(
            defect_deformation_cohomology(&g, &rep, false).unwrap(),
            (0, 0)
        );
        assert_eq!(
            defect_deformation_cohomology(&g, &rep, true).unwrap(),
            (0, 0)
        );
    }

    #[test]
    fn fermion_module_shapes() {
        let (g, rep) = builtin("sl2").unwrap();
        let rep = rep.unwrap();
        let flat = fermion_module(&rep, false).unwrap();
        assert_eq!(flat.dim(), 15);
        assert_eq!((flat.even_dim(), flat.odd_dim()), (7, 8));
        let bdry = fermion_module(&rep, true).unwrap();
        assert_eq!(bdry.dim(), 4 * 3);
        for m in [&flat, &bdry] {
            let as_rep = Representation::new(&g, m.action().to_vec());
            assert!(as_rep.is_ok(), "induced action must respect brackets");
        }
    }

    #[test]
    fn abelian_defect_matches_zero_bracket_oracle() {
        // Zero bracket and zero action: every cochain is a cocycle and nothing
        // is exact, so dim H^k = C(d, k) * dim M.
        for d in 1..=2usize {
            let g = LieAlgebraData::abelian(d);
            let rep = Representation::trivial(&g, 1);
            let m = fermion_module(&rep, false).unwrap();
            assert_eq!(m.dim(), 3);
            let expect = (
                binomial(d, 1) * 3,
                if d >= 2 { binomial(d, 2) * 3 } else { 0 },
            );
            assert_eq!(
                defect_deformation_cohomology(&g, &rep, false).unwrap(),
                expect
            );
        }
    }

    #[test]
    fn whitehead_vanishing_for_sl2_irreps() {
        let (g, _) = builtin("sl2").unwrap();
        for k in 1..=4 {
            let (_, rep) = builtin(&format!("sl2_irrep({k})")).unwrap();
            let betti =
                lie_cohomology(&g, &SuperModule::from_representation(&rep.unwrap())).unwrap();
            assert!(betti.iter().all(|&b| b == 0), "k = {k}: {betti:?}");
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers() {
        for name in ["sl2", "so3", "sl2_irrep(2)", "sl2_irrep(3)"] {
            let (g, rep) = builtin(name).unwrap();
            for m in [
                SuperModule::trivial(&g),
                SuperModule::from_representation(&rep.unwrap()),
            ] {
                let c = ce_complex(&g, &m).unwrap();
                let betti = c.cohomology_dims();
                assert_eq!(c.euler_characteristic(), alternating_sum(betti.into_iter()));
            }
        }
    }

    #[test]
    fn rejects_oversized_inputs() {
        let g = LieAlgebraData::abelian(11);
        assert!(matches!(
            ce_complex(&g, &SuperModule::trivial(&g)),
            Err(CeError::DimensionTooLarge(_))
        ));
        let (g, rep) = builtin("sl2_irrep(5)").unwrap();
        assert!(matches!(
            defect_deformation_cohomology(&g, &rep.unwrap(), false),
            Err(CeError::DimensionTooLarge(_))
        ));
    }

    #[test]
    fn complex_rejects_nonzero_square() {
        let d0 = QMatrix::from_i64(&[&[1]]);
        let d1 = QMatrix::from_i64(&[&[1]]);
        assert_eq!(
            CochainComplex::new(vec![1, 1, 1], vec![d0, d1]),
            Err(CeError::NotAComplex(0))
        );
    }
}
