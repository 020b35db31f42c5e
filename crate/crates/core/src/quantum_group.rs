//! Ribbon data for the vector representation of `U_q(sl_n)`: the R-matrix,
//! its inverse, the pivot used by caps, and the twist, all over `q^{1/2n}`.
//!
//! Conventions. With `z = q^{1/2} - q^{-1/2}`,
//!
//! ```text
//! R = q^{-1/2n} ( q^{1/2} Σ_i E_ii⊗E_ii + Σ_{i≠j} E_ii⊗E_jj + z Σ_{i<j} E_ij⊗E_ji )
//! ```
//!
//! The braiding is `c = flip ∘ R`. Cups send `1 ↦ Σ_i e_i⊗e_i` and caps
//! send `e_i⊗e_j ↦ pivot[i][j]`; the pivot is diagonal and picked so that a
//! kink evaluates to a scalar.

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ring::{rat, LaurentPoly};

pub type LMatrix = Matrix<LaurentPoly>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumGroupError {
    #[error("matrix of size {0} is not n² × n²")]
    NotASquareOfSquare(usize),
    #[error("R · R_inv is not the identity")]
    NotInverse,
    #[error("pivot has the wrong shape")]
    PivotShape,
    #[error("kink evaluation is not a scalar multiple of the identity")]
    KinkNotScalar,
    #[error("sl_n needs n ≥ 2, got {0}")]
    RankTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RibbonRep {
    n: usize,
    r: LMatrix,
    r_inv: LMatrix,
    pivot: LMatrix,
    twist: LaurentPoly,
}

impl RibbonRep {
    /// Assembles ribbon data from matrices. Checks shapes and `R·R_inv = 1`
    /// and computes the twist from the kink, so a non-scalar kink is an
    /// error. Yang–Baxter is not required here; see [`check_yang_baxter`].
    pub fn new(r: LMatrix, r_inv: LMatrix, pivot: LMatrix) -> Result<Self, QuantumGroupError> {
        let n = side_of_square(&r)?;
        if side_of_square(&r_inv)? != n {
            return Err(QuantumGroupError::NotInverse);
        }
        if pivot.rows() != n || pivot.cols() != n {
            return Err(QuantumGroupError::PivotShape);
        }
        if r.mul(&r_inv) != identity(n * n) {
            return Err(QuantumGroupError::NotInverse);
        }
        let mut rep = Self {
            n,
            r,
            r_inv,
            pivot,
            twist: LaurentPoly::one(),
        };
        rep.twist = kink_scalar(&rep.partial_trace(&rep.braiding()))?;
        Ok(rep)
    }

    /// The one-dimensional representation with `R = 1`.
    pub fn trivial() -> Self {
        let one = identity(1);
        Self::new(one.clone(), one.clone(), one).expect("trivial ribbon data")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Least common root order of all entries.
    pub fn root_order(&self) -> u32 {
        use num_integer::Integer;
        [&self.r, &self.r_inv, &self.pivot]
            .iter()
            .flat_map(|m| {
                (0..m.rows()).flat_map(move |i| m.row(i).iter().map(LaurentPoly::root_order))
            })
            .fold(1u32, |acc, k| acc.lcm(&k))
    }

    pub fn r(&self) -> &LMatrix {
        &self.r
    }

    pub fn r_inv(&self) -> &LMatrix {
        &self.r_inv
    }

    pub fn pivot(&self) -> &LMatrix {
        &self.pivot
    }

    pub fn twist(&self) -> &LaurentPoly {
        &self.twist
    }

    /// `c = flip ∘ R` on `V ⊗ V`.
    pub fn braiding(&self) -> LMatrix {
        flip(self.n).mul(&self.r)
    }

    /// `c⁻¹ = R⁻¹ ∘ flip`.
    pub fn braiding_inv(&self) -> LMatrix {
        self.r_inv.mul(&flip(self.n))
    }

    /// Value of the unknot: `Σ_i pivot[i][i]`.
    pub fn quantum_dimension(&self) -> LaurentPoly {
        self.pivot.trace()
    }

    /// Closes the last tensor factor of an endomorphism of `V^{⊗k}` with a
    /// cup below and a cap above on the right.
    pub fn partial_trace(&self, m: &LMatrix) -> LMatrix {
        let n = self.n;
        let outer = m.rows() / n;
        Matrix::from_fn(outer, outer, |a, a2| {
            let mut acc = LaurentPoly::zero();
            for b in 0..n {
                for b2 in 0..n {
                    let p = &self.pivot[(b2, b)];
                    let x = &m[(a * n + b2, a2 * n + b)];
                    if !p.is_zero() && !x.is_zero() {
                        acc = &acc + &(p * x);
                    }
                }
            }
            acc
        })
    }

    /// Evaluation of a kink of the given sign on one strand.
    pub fn kink(&self, positive: bool) -> LMatrix {
        let c = if positive {
            self.braiding()
        } else {
            self.braiding_inv()
        };
        self.partial_trace(&c)
    }

    /// Braiding of `V^{⊗a}` past `V^{⊗b}` as an endomorphism of
    /// `V^{⊗(a+b)}`, built from elementary crossings.
    pub fn cabled_braiding(&self, a: usize, b: usize) -> LMatrix {
        let width = a + b;
        let c = self.braiding();
        let mut out = identity(self.n.pow(width as u32));
        // strand i of the left bundle moves right past the b strands, last first
        for i in (0..a).rev() {
            for pos in i..i + b {
                out = embed(&c, self.n, pos, width).mul(&out);
            }
        }
        out
    }

    /// Kink on a `k`-cable of parallel strands.
    pub fn cabled_kink(&self, k: usize) -> LMatrix {
        let mut m = self.cabled_braiding(k, k);
        for _ in 0..k {
            m = self.partial_trace(&m);
        }
        m
    }

    /// Checks every axiom: inverse, Yang–Baxter, scalar kinks of both signs,
    /// and an invertible quantum dimension.
    pub fn verify(&self) -> bool {
        let inverse = self.r.mul(&self.r_inv) == identity(self.n * self.n);
        let yb = check_yang_baxter(&self.r).unwrap_or(false);
        let pos = kink_scalar(&self.kink(true))
            .map(|t| t == self.twist)
            .unwrap_or(false);
        let neg = kink_scalar(&self.kink(false))
            .ok()
            .and_then(|t| t.inverse_monomial().map(|ti| ti == self.twist))
            .unwrap_or(false);
        let qdim = !self.quantum_dimension().is_zero();
        inverse && yb && pos && neg && qdim
    }

    /// Renders a matrix row by row in the canonical Laurent form.
    pub fn render_matrix(m: &LMatrix) -> String {
        (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| x.render("q"))
                    .collect::<Vec<_>>()
                    .join("\t")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn side_of_square(m: &LMatrix) -> Result<usize, QuantumGroupError> {
    let size = m.rows();
    if m.cols() != size || size == 0 {
        return Err(QuantumGroupError::NotASquareOfSquare(size));
    }
    let n = (size as f64).sqrt().round() as usize;
    if n * n != size {
        return Err(QuantumGroupError::NotASquareOfSquare(size));
    }
    Ok(n)
}

pub fn identity(n: usize) -> LMatrix {
    Matrix::identity_like(n, &LaurentPoly::one())
}

/// The flip `e_i⊗e_j ↦ e_j⊗e_i`.
pub fn flip(n: usize) -> LMatrix {
    Matrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (col / n, col % n);
        if row == j * n + i {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `I^{⊗pos} ⊗ m ⊗ I^{⊗rest}` where `m` acts on two adjacent strands.
pub fn embed(m: &LMatrix, n: usize, pos: usize, width: usize) -> LMatrix {
    let left = identity(n.pow(pos as u32));
    let right = identity(n.pow((width - pos - 2) as u32));
    left.kron(m).kron(&right)
}

/// The scalar `λ` if `m = λ·I`.
pub fn kink_scalar(m: &LMatrix) -> Result<LaurentPoly, QuantumGroupError> {
    let lambda = m[(0, 0)].clone();
    if *m == identity(m.rows()).scale(&lambda) {
        Ok(lambda)
    } else {
        Err(QuantumGroupError::KinkNotScalar)
    }
}

/// Tests the braid relation `(Ř⊗I)(I⊗Ř)(Ř⊗I) = (I⊗Ř)(Ř⊗I)(I⊗Ř)` for
/// `Ř = flip ∘ R`, which is the Yang–Baxter equation for `R`.
pub fn check_yang_baxter(r: &LMatrix) -> Result<bool, QuantumGroupError> {
    let n = side_of_square(r)?;
    let c = flip(n).mul(r);
    let a = embed(&c, n, 0, 3);
    let b = embed(&c, n, 1, 3);
    Ok(a.mul(&b).mul(&a) == b.mul(&a).mul(&b))
}

/// Ribbon data for the vector representation of `U_q(sl_n)`.
pub fn sln_fundamental_ribbon(n: usize) -> Result<RibbonRep, QuantumGroupError> {
    if n < 2 {
        return Err(QuantumGroupError::RankTooSmall(n));
    }
    let root = 2 * n as u32;
    let m = n as i64;
    // u = q^{1/2n}; q^{1/2} = u^n
    let u = |e: i64, c: i64| LaurentPoly::from_terms(root, [(e, rat(c, 1))]);
    let z =
        |sign: i64| LaurentPoly::from_terms(root, [(m - 1, rat(sign, 1)), (-m - 1, rat(-sign, 1))]);
    let build = |inverse: bool| {
        let s: i64 = if inverse { -1 } else { 1 };
        Matrix::from_fn(n * n, n * n, |row, col| {
            let (i, j) = (col / n, col % n);
            let (k, l) = (row / n, row % n);
            if row == col {
                if i == j {
                    u(s * (m - 1), 1)
                } else {
                    u(-s, 1)
                }
            } else if i > j && k == j && l == i {
                // E_ji ⊗ E_ij: e_i⊗e_j ↦ e_j⊗e_i for j < i
                if inverse {
                    -(&z(1) * &u(2, 1))
                } else {
                    z(1)
                }
            } else {
                LaurentPoly::zero()
            }
        })
    };
    let r = build(false);
    let r_inv = build(true);
    // Pivot candidates diag(q^{±(n+1-2i)/2}); keep the one with scalar kinks.
    let candidates = [1i64, -1].map(|sign| {
        let entries: Vec<LaurentPoly> = (0..n)
            .map(|i| u(sign * m * (m - 1 - 2 * i as i64), 1))
            .collect();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                LaurentPoly::zero()
            }
        })
    });
    for pivot in candidates {
        match RibbonRep::new(r.clone(), r_inv.clone(), pivot) {
            Ok(rep) => return Ok(rep),
            Err(QuantumGroupError::KinkNotScalar) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(QuantumGroupError::KinkNotScalar)
}
