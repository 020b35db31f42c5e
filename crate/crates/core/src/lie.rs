//! Finite-dimensional Lie algebras over the rationals, invariant pairings
//! (optionally graded by powers of `h`) and matrix representations.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::QMatrix;
use crate::ring::{parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("antisymmetry fails at f[{0}][{1}][{2}]")]
    AntisymmetryViolation(usize, usize, usize),
    #[error("Jacobi identity fails at (a, b, c, k) = ({0}, {1}, {2}, {3})")]
    JacobiViolation(usize, usize, usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representation does not respect the bracket at ({0}, {1})")]
    BracketViolation(usize, usize),
    #[error("unknown builtin `{0}`")]
    UnknownName(String),
    #[error("invalid algebra spec: {0}")]
    Parse(String),
}

/// Structure constants `f[a][b][c]`, the coefficient of `e_c` in `[e_a, e_b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    dim: usize,
    f: Vec<Rational>,
}

impl LieAlgebraData {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(dim: usize, f: Vec<Rational>) -> Result<Self, LieError> {
        if dim == 0 || f.len() != dim * dim * dim {
            return Err(LieError::DimensionMismatch(format!(
                "expected {dim}^3 structure constants, got {}",
                f.len()
            )));
        }
        let g = Self { dim, f };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Builds from a nested `f[a][b][c]` array.
    pub fn from_nested(f: &[Vec<Vec<Rational>>]) -> Result<Self, LieError> {
        let d = f.len();
        if f.iter()
            .any(|m| m.len() != d || m.iter().any(|r| r.len() != d))
        {
            return Err(LieError::DimensionMismatch(
                "structure constants must be a cube".into(),
            ));
        }
        Self::new(d, f.iter().flatten().flatten().cloned().collect())
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            f: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Structure constants of the span of `basis`, which must be linearly
    /// independent and closed under commutators.
    pub fn from_matrix_basis(basis: &[QMatrix]) -> Result<Self, LieError> {
        let d = basis.len();
        let n = basis.first().map_or(0, QMatrix::rows);
        let flat =
            |m: &QMatrix| -> Vec<Rational> { (0..n).flat_map(|i| m.row(i).to_vec()).collect() };
        let columns: Vec<Vec<Rational>> = basis.iter().map(flat).collect();
        let system = QMatrix::from_fn(n * n, d, |i, j| columns[j][i].clone());
        if system.rank() != d {
            return Err(LieError::DimensionMismatch(
                "basis matrices are linearly dependent".into(),
            ));
        }
        let mut f = vec![Rational::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                let c = basis[a].commutator(&basis[b]);
                let x = system.solve(&flat(&c)).ok_or_else(|| {
                    LieError::DimensionMismatch(format!("[e{a}, e{b}] leaves the span"))
                })?;
                for (k, v) in x.into_iter().enumerate() {
                    f[(a * d + b) * d + k] = v;
                }
            }
        }
        Self::new(d, f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn f(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().all(Zero::is_zero)
    }

    /// Coordinates of `[x, y]`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for a in 0..d {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for (c, slot) in out.iter_mut().enumerate() {
                    let fc = self.f(a, b, c);
                    if !fc.is_zero() {
                        *slot += &xy * fc;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad e_a` in the basis: column `b` holds `[e_a, e_b]`.
    pub fn ad(&self, a: usize) -> QMatrix {
        QMatrix::from_fn(self.dim, self.dim, |c, b| self.f(a, b, c).clone())
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        let d = self.dim;
        for a in 0..d {
            for b in a..d {
                for c in 0..d {
                    if *self.f(a, b, c) != -self.f(b, a, c) {
                        return Err(LieError::AntisymmetryViolation(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let d = self.dim;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for k in 0..d {
                        let mut s = Rational::zero();
                        for m in 0..d {
                            s += self.f(a, b, m) * self.f(m, c, k);
                            s += self.f(b, c, m) * self.f(m, a, k);
                            s += self.f(c, a, m) * self.f(m, b, k);
                        }
                        if !s.is_zero() {
                            return Err(LieError::JacobiViolation(a, b, c, k));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `κ(a, b) = tr(ad e_a ∘ ad e_b)`.
    pub fn killing_form(&self) -> QMatrix {
        let ads: Vec<QMatrix> = (0..self.dim).map(|a| self.ad(a)).collect();
        QMatrix::from_fn(self.dim, self.dim, |a, b| ads[a].mul(&ads[b]).trace())
    }

    /// Cartan's criterion: the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.killing_form().rank() == self.dim
    }

    pub fn adjoint_representation(&self) -> Representation {
        Representation {
            dim: self.dim,
            matrices: (0..self.dim).map(|a| self.ad(a)).collect(),
        }
    }

    /// Structure constants after the change of basis `e'_i = Σ_j p[i][j] e_j`.
    pub fn change_basis(&self, p: &QMatrix) -> Option<Self> {
        let d = self.dim;
        let pinv = p.inverse()?;
        let mut f = vec![Rational::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let br = self.bracket(p.row(i), p.row(j));
                // express br (old coordinates) in the new basis: x' = br * p^{-1}
                for k in 0..d {
                    let mut s = Rational::zero();
                    for m in 0..d {
                        s += &br[m] * &pinv[(m, k)];
                    }
                    f[(i * d + j) * d + k] = s;
                }
            }
        }
        Some(Self { dim: d, f })
    }

    /// Parses the JSON form `{"dim": d, "brackets": [[a, b, c, "num/den"], ...]}`.
    ///
    /// Entries list nonzero `f[a][b][c]`; when only one of `f[a][b][c]` and
    /// `f[b][a][c]` is given the other is filled in by antisymmetry.
    pub fn from_json(text: &str) -> Result<Self, LieError> {
        let spec: AlgebraSpec =
            serde_json::from_str(text).map_err(|e| LieError::Parse(e.to_string()))?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        let d = self.dim;
        let mut brackets = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = self.f(a, b, c);
                    if !v.is_zero() {
                        brackets.push((a, b, c, ScalarSpec::Text(v.to_string())));
                    }
                }
            }
        }
        serde_json::to_string(&AlgebraSpec { dim: d, brackets }).expect("serializable")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

impl ScalarSpec {
    pub fn value(&self) -> Result<Rational, LieError> {
        match self {
            ScalarSpec::Int(n) => Ok(rat(*n, 1)),
            ScalarSpec::Text(s) => parse_rational(s).map_err(|e| LieError::Parse(e.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AlgebraSpec {
    dim: usize,
    brackets: Vec<(usize, usize, usize, ScalarSpec)>,
}

impl AlgebraSpec {
    fn build(&self) -> Result<LieAlgebraData, LieError> {
        let d = self.dim;
        if d == 0 {
            return Err(LieError::Parse("dimension must be positive".into()));
        }
        let mut f: Vec<Option<Rational>> = vec![None; d * d * d];
        for (a, b, c, v) in &self.brackets {
            if *a >= d || *b >= d || *c >= d {
                return Err(LieError::Parse(format!(
                    "index out of range in ({a}, {b}, {c})"
                )));
            }
            f[(a * d + b) * d + c] = Some(v.value()?);
        }
        let mut full = vec![Rational::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    full[(a * d + b) * d + c] =
                        match (&f[(a * d + b) * d + c], &f[(b * d + a) * d + c]) {
                            (Some(v), _) => v.clone(),
                            (None, Some(w)) => -w,
                            (None, None) => Rational::zero(),
                        };
                }
            }
        }
        LieAlgebraData::new(d, full)
    }
}

/// Invariant symmetric pairing `G_0 + h G_1 + ... + h^m G_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantPairing {
    orders: Vec<QMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingViolation {
    Shape,
    NotSymmetric {
        order: usize,
    },
    Degenerate,
    NotInvariant {
        order: usize,
        x: usize,
        y: usize,
        z: usize,
    },
}

impl fmt::Display for PairingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingViolation::Shape => {
                write!(f, "pairing matrices do not match the algebra dimension")
            }
            PairingViolation::NotSymmetric { order } => write!(f, "order {order} is not symmetric"),
            PairingViolation::Degenerate => write!(f, "order 0 is degenerate"),
            PairingViolation::NotInvariant { order, x, y, z } => {
                write!(
                    f,
                    "order {order} is not invariant at (x, y, z) = ({x}, {y}, {z})"
                )
            }
        }
    }
}

impl InvariantPairing {
    pub fn new(orders: Vec<QMatrix>) -> Self {
        assert!(
            !orders.is_empty(),
            "a pairing needs at least the classical order"
        );
        Self { orders }
    }

    pub fn classical(g0: QMatrix) -> Self {
        Self::new(vec![g0])
    }

    pub fn killing(g: &LieAlgebraData) -> Self {
        Self::classical(g.killing_form())
    }

    pub fn orders(&self) -> &[QMatrix] {
        &self.orders
    }

    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    /// Checks symmetry, nondegeneracy of `G_0` and invariance order by order.
    pub fn check(&self, g: &LieAlgebraData) -> Result<(), PairingViolation> {
        let d = g.dim();
        if self.orders.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(PairingViolation::Shape);
        }
        for (order, m) in self.orders.iter().enumerate() {
            if !m.is_symmetric() {
                return Err(PairingViolation::NotSymmetric { order });
            }
        }
        if self.orders[0].rank() != d {
            return Err(PairingViolation::Degenerate);
        }
        for (order, m) in self.orders.iter().enumerate() {
            // <[e_x, e_y], e_z> + <e_y, [e_x, e_z]> = 0
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let mut s = Rational::zero();
                        for k in 0..d {
                            s += g.f(x, y, k) * &m[(k, z)];
                            s += g.f(x, z, k) * &m[(y, k)];
                        }
                        if !s.is_zero() {
                            return Err(PairingViolation::NotInvariant { order, x, y, z });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Matrices `ρ(e_a)` acting on `Q^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    dim: usize,
    matrices: Vec<QMatrix>,
}

impl Representation {
    /// Validates shapes and `ρ([e_a, e_b]) = [ρ(e_a), ρ(e_b)]`.
    pub fn new(g: &LieAlgebraData, matrices: Vec<QMatrix>) -> Result<Self, LieError> {
        if matrices.len() != g.dim() {
            return Err(LieError::DimensionMismatch(format!(
                "need {} matrices, got {}",
                g.dim(),
                matrices.len()
            )));
        }
        let n = matrices[0].rows();
        if n == 0 || matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(LieError::DimensionMismatch(
                "representation matrices must be square and equal-sized".into(),
            ));
        }
        let rep = Self { dim: n, matrices };
        rep.check_brackets(g)?;
        Ok(rep)
    }

    pub(crate) fn unchecked(dim: usize, matrices: Vec<QMatrix>) -> Self {
        Self { dim, matrices }
    }

    pub fn trivial(g: &LieAlgebraData, n: usize) -> Self {
        Self {
            dim: n,
            matrices: vec![QMatrix::zeros(n, n); g.dim()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[QMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, a: usize) -> &QMatrix {
        &self.matrices[a]
    }

    /// `ρ(X)` for `X = Σ x_a e_a`.
    pub fn apply(&self, x: &[Rational]) -> QMatrix {
        let mut acc = QMatrix::zeros(self.dim, self.dim);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.matrices[a].scale(c));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(QMatrix::is_zero)
    }

    pub fn check_brackets(&self, g: &LieAlgebraData) -> Result<(), LieError> {
        let d = g.dim();
        for a in 0..d {
            for b in 0..d {
                let mut lhs = QMatrix::zeros(self.dim, self.dim);
                for c in 0..d {
                    let fc = g.f(a, b, c);
                    if !fc.is_zero() {
                        lhs = lhs.add(&self.matrices[c].scale(fc));
                    }
                }
                if lhs != self.matrices[a].commutator(&self.matrices[b]) {
                    return Err(LieError::BracketViolation(a, b));
                }
            }
        }
        Ok(())
    }

    /// Dual representation `-ρ^T`.
    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            matrices: self
                .matrices
                .iter()
                .map(|m| m.transpose().scale(&rat(-1, 1)))
                .collect(),
        }
    }

    /// Parses `{"dim": n, "matrices": [[[..row..], ...], ...]}` with entries
    /// given as integers or `"num/den"` strings.
    pub fn from_json(g: &LieAlgebraData, text: &str) -> Result<Self, LieError> {
        let spec: RepSpec =
            serde_json::from_str(text).map_err(|e| LieError::Parse(e.to_string()))?;
        let mut mats = Vec::new();
        for m in &spec.matrices {
            let rows = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(ScalarSpec::value)
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if rows.len() != spec.dim || rows.iter().any(|r| r.len() != spec.dim) {
                return Err(LieError::DimensionMismatch(
                    "matrix shape disagrees with `dim`".into(),
                ));
            }
            mats.push(QMatrix::from_rows(rows));
        }
        Self::new(g, mats)
    }
}

#[derive(Debug, Deserialize)]
struct RepSpec {
    dim: usize,
    matrices: Vec<Vec<Vec<ScalarSpec>>>,
}

/// `E_ij` in `gl_n`.
fn unit(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

/// Defining basis of `sl_n`: `H_1..H_{n-1}` (`H_i = E_ii - E_{i+1,i+1}`),
/// then `E_ij` for `i < j`, then `E_ji` for `i < j`.
pub fn sln_basis(n: usize) -> Vec<QMatrix> {
    let mut basis = Vec::new();
    for i in 0..n - 1 {
        basis.push(unit(n, i, i).sub(&unit(n, i + 1, i + 1)));
    }
    for i in 0..n {
        for j in i + 1..n {
            basis.push(unit(n, i, j));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            basis.push(unit(n, j, i));
        }
    }
    basis
}

/// The `(k+1)`-dimensional irreducible of `sl_2` in the basis `(H, E, F)`:
/// `H v_j = (k-2j) v_j`, `F v_j = v_{j+1}`, `E v_j = j(k-j+1) v_{j-1}`.
pub fn sl2_irrep_matrices(k: usize) -> Vec<QMatrix> {
    let n = k + 1;
    let mut h = QMatrix::zeros(n, n);
    let mut e = QMatrix::zeros(n, n);
    let mut f = QMatrix::zeros(n, n);
    for j in 0..n {
        h[(j, j)] = rat(k as i64 - 2 * j as i64, 1);
        if j + 1 < n {
            f[(j + 1, j)] = Rational::one();
        }
        if j > 0 {
            e[(j - 1, j)] = rat((j * (k - j + 1)) as i64, 1);
        }
    }
    vec![h, e, f]
}

fn so3_basis() -> Vec<QMatrix> {
    // (L_i)_{jk} = -ε_{ijk}
    (0..3)
        .map(|i| {
            QMatrix::from_fn(3, 3, |j, k| {
                let eps = levi_civita(i, j, k);
                rat(-eps, 1)
            })
        })
        .collect()
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    if i == j || j == k || i == k {
        return 0;
    }
    let p = [i, j, k];
    let inversions = (0..3)
        .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
        .filter(|&(a, b)| p[a] > p[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Named builtin algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Sl2,
    Sl3,
    So3,
    Sl2Irrep(usize),
    SlnFundamental(usize),
    Abelian(usize),
}

impl Builtin {
    /// Accepts `sl2`, `sl3`, `so3`, `sl2_irrep(k)`, `sln_fundamental(n)`,
    /// `abelian(d)`; also `sl<n>` as shorthand for `sln_fundamental(n)`.
    pub fn parse(name: &str) -> Result<Self, LieError> {
        let name = name.trim();
        let arg = |prefix: &str| -> Option<usize> {
            name.strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .trim()
                .parse()
                .ok()
        };
        let unknown = || LieError::UnknownName(name.to_string());
        let b = match name {
            "sl2" => Builtin::Sl2,
            "sl3" => Builtin::Sl3,
            "so3" => Builtin::So3,
            _ => {
                if let Some(k) = arg("sl2_irrep") {
                    Builtin::Sl2Irrep(k)
                } else if let Some(n) = arg("sln_fundamental") {
                    Builtin::SlnFundamental(n)
                } else if let Some(d) = arg("abelian") {
                    Builtin::Abelian(d)
                } else if let Some(n) = name.strip_prefix("sl").and_then(|n| n.parse().ok()) {
                    Builtin::SlnFundamental(n)
                } else {
                    return Err(unknown());
                }
            }
        };
        match b {
            Builtin::Sl2Irrep(0) | Builtin::Abelian(0) => Err(unknown()),
            Builtin::SlnFundamental(n) if n < 2 => Err(unknown()),
            _ => Ok(b),
        }
    }

    /// The algebra and, where there is one, its named representation.
    pub fn build(self) -> (LieAlgebraData, Option<Representation>) {
        let from_basis = |basis: Vec<QMatrix>| {
            let g =
                LieAlgebraData::from_matrix_basis(&basis).expect("builtin basis is a Lie algebra");
            let rep = Representation::new(&g, basis).expect("defining representation");
            (g, Some(rep))
        };
        match self {
            Builtin::Sl2 => from_basis(sln_basis(2)),
            Builtin::Sl3 => from_basis(sln_basis(3)),
            Builtin::SlnFundamental(n) => from_basis(sln_basis(n)),
            Builtin::So3 => from_basis(so3_basis()),
            Builtin::Sl2Irrep(k) => {
                let (g, _) = from_basis(sln_basis(2));
                let rep = Representation::new(&g, sl2_irrep_matrices(k)).expect("sl2 irreducible");
                (g, Some(rep))
            }
            Builtin::Abelian(d) => (LieAlgebraData::abelian(d), None),
        }
    }
}

/// Parses and builds a builtin by name.
pub fn builtin(name: &str) -> Result<(LieAlgebraData, Option<Representation>), LieError> {
    Ok(Builtin::parse(name)?.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn sl2_constants_are_standard() {
        let (g, rep) = builtin("sl2").unwrap();
        // basis (H, E, F)
        assert_eq!(*g.f(0, 1, 1), q(2));
        assert_eq!(*g.f(0, 2, 2), q(-2));
        assert_eq!(*g.f(1, 2, 0), q(1));
        assert_eq!(
            rep.unwrap().matrix(0),
            &QMatrix::from_i64(&[&[1, 0], &[0, -1]])
        );
    }

    #[test]
    fn abelian_and_antisymmetry_violation() {
        assert!(LieAlgebraData::new(3, vec![q(0); 27]).is_ok());
        // f[0][1][2] = f[1][0][2] = 1
        let idx = |a: usize, b: usize, c: usize| (a * 3 + b) * 3 + c;
        let mut f = vec![q(0); 27];
        f[idx(0, 1, 2)] = q(1);
        f[idx(1, 0, 2)] = q(1);
        assert_eq!(
            LieAlgebraData::new(3, f),
            Err(LieError::AntisymmetryViolation(0, 1, 2))
        );
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [e0,e1] = e1, [e0,e2] = e1, [e1,e2] = e0 breaks Jacobi.
        let mut f = vec![q(0); 27];
        let mut set = |a: usize, b: usize, c: usize, v: i64| {
            f[(a * 3 + b) * 3 + c] = q(v);
            f[(b * 3 + a) * 3 + c] = q(-v);
        };
        set(0, 1, 1, 1);
        set(0, 2, 1, 1);
        set(1, 2, 0, 1);
        assert!(matches!(
            LieAlgebraData::new(3, f),
            Err(LieError::JacobiViolation(..))
        ));
    }

    #[test]
    fn killing_forms() {
        let (sl2, _) = builtin("sl2").unwrap();
        // κ(H,H) = 8, κ(E,F) = 4
        assert_eq!(
            sl2.killing_form(),
            QMatrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]])
        );
        let (ab, _) = builtin("abelian(3)").unwrap();
        assert!(ab.killing_form().is_zero());
        assert_eq!(ab.killing_form().rank(), 0);
        let (so3, _) = builtin("so3").unwrap();
        assert_eq!(
            so3.killing_form(),
            QMatrix::from_i64(&[&[-2, 0, 0], &[0, -2, 0], &[0, 0, -2]])
        );
    }

    #[test]
    fn pairing_checks() {
        let (sl2, _) = builtin("sl2").unwrap();
        assert_eq!(InvariantPairing::killing(&sl2).check(&sl2), Ok(()));
        assert!(matches!(
            InvariantPairing::classical(QMatrix::identity(3)).check(&sl2),
            Err(PairingViolation::NotInvariant { order: 0, .. })
        ));
        let ab = LieAlgebraData::abelian(2);
        let g0 = QMatrix::from_i64(&[&[2, 1], &[1, 5]]);
        assert_eq!(InvariantPairing::classical(g0).check(&ab), Ok(()));
        assert_eq!(
            InvariantPairing::classical(QMatrix::zeros(2, 2)).check(&ab),
            Err(PairingViolation::Degenerate)
        );
        let asym = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            InvariantPairing::classical(asym).check(&ab),
            Err(PairingViolation::NotSymmetric { order: 0 })
        );
        // A level with a higher order that is a multiple of the Killing form.
        let k = sl2.killing_form();
        let graded = InvariantPairing::new(vec![k.clone(), k.scale(&rat(1, 3))]);
        assert_eq!(graded.check(&sl2), Ok(()));
        let broken = InvariantPairing::new(vec![k, QMatrix::identity(3)]);
        assert!(matches!(
            broken.check(&sl2),
            Err(PairingViolation::NotInvariant { order: 1, .. })
        ));
    }

    #[test]
    fn builtins_are_valid() {
        for name in [
            "sl2",
            "sl3",
            "so3",
            "sl2_irrep(1)",
            "sl2_irrep(4)",
            "sln_fundamental(3)",
            "sln_fundamental(4)",
            "abelian(1)",
        ] {
            let (g, rep) = builtin(name).unwrap();
            assert!(LieAlgebraData::new(g.dim(), g.f.clone()).is_ok(), "{name}");
            if let Some(rep) = rep {
                assert!(rep.check_brackets(&g).is_ok(), "{name}");
            }
            let semisimple = !name.starts_with("abelian");
            assert_eq!(g.is_semisimple(), semisimple, "{name}");
            if semisimple {
                assert_eq!(InvariantPairing::killing(&g).check(&g), Ok(()), "{name}");
            }
        }
        assert_eq!(
            builtin("sl2_irrep(1)").unwrap().1.unwrap().matrix(0),
            &QMatrix::from_i64(&[&[1, 0], &[0, -1]])
        );
        let (sl3, rep) = builtin("sln_fundamental(3)").unwrap();
        assert_eq!(sl3.dim(), 8);
        assert!(rep.unwrap().matrices().iter().all(|m| m.trace() == q(0)));
        let (a1, rep) = builtin("abelian(1)").unwrap();
        assert!(a1.is_abelian() && a1.dim() == 1 && rep.is_none());
        assert_eq!(builtin("e8"), Err(LieError::UnknownName("e8".into())));
        assert!(builtin("abelian(0)").is_err());
    }

    #[test]
    fn adjoint_and_dual_representations() {
        let (sl3, _) = builtin("sl3").unwrap();
        assert!(sl3.adjoint_representation().check_brackets(&sl3).is_ok());
        let (sl2, rep) = builtin("sl2").unwrap();
        assert!(rep.unwrap().dual().check_brackets(&sl2).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let (sl2, _) = builtin("sl2").unwrap();
        assert_eq!(LieAlgebraData::from_json(&sl2.to_json()).unwrap(), sl2);
        // one-sided listing is completed by antisymmetry
        let g = LieAlgebraData::from_json(
            r#"{"dim": 3, "brackets": [[0,1,2,1],[1,2,0,"1"],[2,0,1,1]]}"#,
        )
        .unwrap();
        assert_eq!(*g.f(1, 0, 2), q(-1));
        assert!(g.is_semisimple());
        assert!(LieAlgebraData::from_json(r#"{"dim": 2, "brackets": [[0,5,1,1]]}"#).is_err());
    }

    #[test]
    fn change_of_basis_preserves_jacobi() {
        let (sl2, _) = builtin("sl2").unwrap();
        let p = QMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let g2 = sl2.change_basis(&p).unwrap();
        assert!(LieAlgebraData::new(3, g2.f.clone()).is_ok());
    }
}
