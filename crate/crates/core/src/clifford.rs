//! The Clifford algebra `Cl(V ⊕ V*)` on generators `x_1..x_d` (spanning
//! `ΠV`) and `x̄_1..x̄_d` (spanning `ΠV*`), its spinor representation on
//! `Sym(ΠV)`, the supertrace as top-fermion extraction, and the
//! charged-fermion character and one-loop formulas.
//!
//! The algebra is taken at `h = 1`; the power of `h` carried by a
//! homogeneous element is its word length.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::lie::{LieAlgebraData, Representation};
use crate::linalg::{Matrix, QMatrix};
use crate::ring::{rat, HSeries, Rational, RingError};

/// Largest `d` for the brute-force Hochschild and bijectivity checks.
pub const MAX_BRUTE_FORCE_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension too large: d = {0}")]
    DimensionTooLarge(usize),
    #[error("tr ρ(X) = {0} is not zero")]
    TraceNotZero(String),
    #[error(transparent)]
    Series(#[from] RingError),
}

/// A canonical word `x̄_A x_B`: all `x̄` before all `x`, indices increasing
/// within each block. Bit `i` of a mask stands for generator `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub bar: u32,
    pub plain: u32,
}

impl Word {
    pub const EMPTY: Word = Word { bar: 0, plain: 0 };

    pub fn len(self) -> u32 {
        self.bar.count_ones() + self.plain.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn is_odd(self) -> bool {
        self.len() % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    d: usize,
    terms: BTreeMap<Word, Rational>,
}

#[derive(Clone, Copy)]
enum Gen {
    X(usize),
    Bar(usize),
}

impl CliffordElement {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(d: usize, c: Rational) -> Self {
        Self::from_terms(d, [(Word::EMPTY, c)])
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, Rational::one())
    }

    /// `x_i`, 1-based.
    pub fn x(d: usize, i: usize) -> Self {
        assert!((1..=d).contains(&i));
        Self::from_terms(
            d,
            [(
                Word {
                    bar: 0,
                    plain: 1 << (i - 1),
                },
                Rational::one(),
            )],
        )
    }

    /// `x̄_i`, 1-based.
    pub fn xbar(d: usize, i: usize) -> Self {
        assert!((1..=d).contains(&i));
        Self::from_terms(
            d,
            [(
                Word {
                    bar: 1 << (i - 1),
                    plain: 0,
                },
                Rational::one(),
            )],
        )
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut out = Self::zero(d);
        for (w, c) in terms {
            assert!(
                w.bar >> d == 0 && w.plain >> d == 0,
                "word uses generators beyond d"
            );
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (Word, &Rational)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn coefficient(&self, w: Word) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.d, self.terms.iter().map(|(w, x)| (*w, x * c)))
    }

    fn same_dim(&self, other: &Self) -> Result<(), CliffordError> {
        if self.d != other.d {
            return Err(CliffordError::DimensionMismatch(self.d, other.d));
        }
        Ok(())
    }

    /// Clifford product with `x_i x̄_j + x̄_j x_i = δ_ij`.
    pub fn multiply(&self, other: &Self) -> Result<Self, CliffordError> {
        self.same_dim(other)?;
        Ok(self.product(other, true))
    }

    /// Product in the exterior algebra `Sym(Π(V ⊕ V*))` (all generators
    /// anticommute); the associated graded of the Clifford product.
    pub fn exterior_multiply(&self, other: &Self) -> Result<Self, CliffordError> {
        self.same_dim(other)?;
        Ok(self.product(other, false))
    }

    fn product(&self, other: &Self, contract: bool) -> Self {
        let mut out = Self::zero(self.d);
        for (wb, cb) in &other.terms {
            // right-multiply by the generators of wb in order
            let mut partial = self.clone();
            for g in generators(*wb, self.d) {
                partial = partial.right_mul_generator(g, contract);
            }
            for (w, c) in partial.terms {
                out.add_term(w, c * cb);
            }
        }
        out
    }

    fn right_mul_generator(&self, g: Gen, contract: bool) -> Self {
        let mut out = Self::zero(self.d);
        for (w, c) in &self.terms {
            match g {
                Gen::X(j) => {
                    let bit = 1u32 << j;
                    if w.plain & bit != 0 {
                        continue;
                    }
                    let above = (w.plain >> (j + 1)).count_ones();
                    let v = if above % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    out.add_term(
                        Word {
                            bar: w.bar,
                            plain: w.plain | bit,
                        },
                        v,
                    );
                }
                Gen::Bar(j) => {
                    let bit = 1u32 << j;
                    let m = w.plain.count_ones();
                    // x_B x̄_j = (-1)^m x̄_j x_B + Σ_{b_k = j} (-1)^{m-k} x_{B \ j}
                    if w.bar & bit == 0 {
                        let above = (w.bar >> (j + 1)).count_ones();
                        let sign = (m + above) % 2 == 1;
                        let v = if sign { -c.clone() } else { c.clone() };
                        out.add_term(
                            Word {
                                bar: w.bar | bit,
                                plain: w.plain,
                            },
                            v,
                        );
                    }
                    if contract && w.plain & bit != 0 {
                        let k = (w.plain & ((1 << j) - 1)).count_ones() + 1;
                        let v = if (m - k) % 2 == 1 {
                            -c.clone()
                        } else {
                            c.clone()
                        };
                        out.add_term(
                            Word {
                                bar: w.bar,
                                plain: w.plain & !bit,
                            },
                            v,
                        );
                    }
                }
            }
        }
        out
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba` of homogeneous elements.
    pub fn super_commutator(&self, other: &Self) -> Result<Self, CliffordError> {
        let odd = |e: &Self| e.terms.keys().next().is_some_and(|w| w.is_odd());
        let sign = if odd(self) && odd(other) {
            rat(-1, 1)
        } else {
            rat(1, 1)
        };
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.add(&ba.scale(&-sign))
    }

    /// The word `x̄_1 x_1 x̄_2 x_2 ... x̄_d x_d` as a signed canonical word.
    pub fn top_fermion(d: usize) -> Self {
        let mut acc = Self::one(d);
        for i in 1..=d {
            acc = acc
                .product(&Self::xbar(d, i), true)
                .product(&Self::x(d, i), true);
        }
        acc
    }

    /// Coefficient of `x̄_1 x_1 ... x̄_d x_d` after normal ordering.
    pub fn top_coefficient(&self) -> Rational {
        let top = Self::top_fermion(self.d);
        let (w, sign) = top
            .terms()
            .next()
            .map(|(w, c)| (w, c.clone()))
            .expect("top word is a single term");
        self.coefficient(w) * sign
    }

    /// The matrix of this element acting on `Sym(ΠV) = Λ(V)`: `x_i` by
    /// exterior multiplication, `x̄_i` by contraction. Rows and columns are
    /// indexed by subsets of `{1..d}` as bitmasks.
    pub fn spinor_matrix(&self) -> QMatrix {
        let n = 1usize << self.d;
        let mut out = QMatrix::zeros(n, n);
        for (w, c) in &self.terms {
            for col in 0..n as u32 {
                // apply generators right to left
                let mut state = Some((false, col));
                for g in generators(*w, self.d).rev() {
                    state = state.and_then(|(neg, s)| act(g, s).map(|(flip, t)| (neg ^ flip, t)));
                }
                if let Some((neg, row)) = state {
                    let v = if neg { -c.clone() } else { c.clone() };
                    out[(row as usize, col as usize)] += v;
                }
            }
        }
        out
    }

    /// Uniformly random coefficients in `[-range, range]` on a random subset
    /// of canonical words.
    pub fn random(d: usize, rng: &mut impl Rng, range: i64) -> Self {
        let mut out = Self::zero(d);
        for w in all_words(d) {
            if rng.gen_bool(0.5) {
                out.add_term(w, rat(rng.gen_range(-range..=range), 1));
            }
        }
        out
    }
}

fn generators(w: Word, d: usize) -> impl DoubleEndedIterator<Item = Gen> {
    let bars = (0..d).filter(move |i| w.bar & (1 << i) != 0).map(Gen::Bar);
    let xs = (0..d).filter(move |i| w.plain & (1 << i) != 0).map(Gen::X);
    bars.chain(xs).collect::<Vec<_>>().into_iter()
}

/// One generator acting on a basis monomial of `Λ(V)`.
fn act(g: Gen, s: u32) -> Option<(bool, u32)> {
    match g {
        Gen::X(i) => {
            if s & (1 << i) != 0 {
                return None;
            }
            let below = (s & ((1 << i) - 1)).count_ones();
            Some((below % 2 == 1, s | (1 << i)))
        }
        Gen::Bar(i) => {
            if s & (1 << i) == 0 {
                return None;
            }
            let below = (s & ((1 << i) - 1)).count_ones();
            Some((below % 2 == 1, s & !(1 << i)))
        }
    }
}

/// All `4^d` canonical words.
pub fn all_words(d: usize) -> impl Iterator<Item = Word> {
    (0..1u32 << d).flat_map(move |bar| (0..1u32 << d).map(move |plain| Word { bar, plain }))
}

/// Even trace minus odd trace, with parity of a basis subset its size mod 2.
pub fn supertrace(m: &QMatrix) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..m.rows() {
        if (i as u32).count_ones().is_multiple_of(2) {
            acc += &m[(i, i)];
        } else {
            acc -= &m[(i, i)];
        }
    }
    acc
}

/// Universal trace of a Clifford element: its top-fermion coefficient.
pub fn supertrace_via_top(a: &CliffordElement) -> Rational {
    a.top_coefficient()
}

/// Rank of `a ↦ spinor_matrix(a)` as a linear map `Cl → End(Λ V)`.
pub fn spinor_map_rank(d: usize) -> Result<usize, CliffordError> {
    if d > MAX_BRUTE_FORCE_DIM {
        return Err(CliffordError::DimensionTooLarge(d));
    }
    let n = 1usize << d;
    let columns: Vec<QMatrix> = all_words(d)
        .map(|w| CliffordElement::from_terms(d, [(w, Rational::one())]).spinor_matrix())
        .collect();
    let m = QMatrix::from_fn(n * n, columns.len(), |i, j| {
        columns[j][(i / n, i % n)].clone()
    });
    Ok(m.rank())
}

/// `dim HH_0(Cl(V ⊕ V*))`: the codimension of the span of all graded
/// commutators of basis words.
pub fn hh0_dimension(d: usize) -> Result<usize, CliffordError> {
    if d > MAX_BRUTE_FORCE_DIM {
        return Err(CliffordError::DimensionTooLarge(d));
    }
    let words: Vec<Word> = all_words(d).collect();
    let index: BTreeMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let basis: Vec<CliffordElement> = words
        .iter()
        .map(|w| CliffordElement::from_terms(d, [(*w, Rational::one())]))
        .collect();
    let mut rows = Vec::new();
    for u in &basis {
        for v in &basis {
            let c = u.super_commutator(v)?;
            if c.is_zero() {
                continue;
            }
            let mut row = vec![Rational::zero(); words.len()];
            for (w, x) in c.terms() {
                row[index[&w]] = x.clone();
            }
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(rows).rank()
    };
    Ok(words.len() - rank)
}

/// `Σ_m coeffs[m] A^m t^m` as a matrix of truncated series in `t`.
pub fn matrix_power_series(a: &QMatrix, coeffs: &[Rational]) -> Matrix<HSeries> {
    let n = a.rows();
    let order = coeffs.len() - 1;
    let mut entries = vec![vec![Rational::zero(); order + 1]; n * n];
    let mut power = QMatrix::identity(n);
    for (m, c) in coeffs.iter().enumerate() {
        if m > 0 {
            power = power.mul(a);
        }
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j][m] += c * &power[(i, j)];
            }
        }
    }
    let mut it = entries.into_iter();
    Matrix::from_fn(n, n, |_, _| {
        HSeries::from_coeffs(it.next().expect("n*n entries"))
    })
}

fn factorial(m: usize) -> Rational {
    (1..=m).fold(Rational::one(), |acc, k| acc * rat(k as i64, 1))
}

/// Taylor coefficients of `exp(c s)` up to `order`.
fn exp_coeffs(c: &Rational, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut p = Rational::one();
    for m in 0..=order {
        if m > 0 {
            p *= c;
        }
        out.push(&p / factorial(m));
    }
    out
}

/// Bernoulli numbers `B_0..B_n` with `B_1 = +1/2`.
pub fn bernoulli_plus(n: usize) -> Vec<Rational> {
    // Σ_{k=0}^{m} C(m+1, k) B_k = 0 gives B^-; flip the sign of B_1.
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut s = Rational::zero();
        let mut binom = Rational::one(); // C(m+1, 0)
        for (k, bk) in b.iter().enumerate() {
            s += &binom * bk;
            binom *= rat((m + 1 - k) as i64, (k + 1) as i64);
        }
        b.push(-s / rat(m as i64 + 1, 1));
    }
    if n >= 1 {
        b[1] = rat(1, 2);
    }
    b
}

/// `Td(s) = s / (1 - e^{-s}) = Σ B_n^+ s^n / n!`.
pub fn todd_series(order: usize) -> HSeries {
    HSeries::from_coeffs(
        bernoulli_plus(order)
            .into_iter()
            .enumerate()
            .map(|(n, b)| b / factorial(n))
            .collect(),
    )
}

fn check_traceless(a: &QMatrix) -> Result<(), CliffordError> {
    let tr = a.trace();
    if !tr.is_zero() {
        return Err(CliffordError::TraceNotZero(tr.to_string()));
    }
    Ok(())
}

fn rep_at(rho: &Representation, x: &[Rational]) -> Result<QMatrix, CliffordError> {
    if x.len() != rho.matrices().len() {
        return Err(CliffordError::DimensionMismatch(
            x.len(),
            rho.matrices().len(),
        ));
    }
    Ok(rho.apply(x))
}

/// `det(e^{tρ(X)/2} - e^{-tρ(X)/2})` as a series in `t`.
pub fn charged_character(
    g: &LieAlgebraData,
    rho: &Representation,
    x: &[Rational],
    order: usize,
) -> Result<HSeries, CliffordError> {
    if x.len() != g.dim() {
        return Err(CliffordError::DimensionMismatch(x.len(), g.dim()));
    }
    let a = rep_at(rho, x)?;
    check_traceless(&a)?;
    let plus = exp_coeffs(&rat(1, 2), order);
    let minus = exp_coeffs(&rat(-1, 2), order);
    let diff: Vec<Rational> = plus.iter().zip(&minus).map(|(p, m)| p - m).collect();
    Ok(matrix_power_series(&a, &diff).det())
}

/// One-loop wheel term `-log det(e^{-tρ(X)/2} Td(tρ(X)))` as a series in `t`.
pub fn wheel_term(
    rho: &Representation,
    x: &[Rational],
    order: usize,
) -> Result<HSeries, CliffordError> {
    let a = rep_at(rho, x)?;
    let e = matrix_power_series(&a, &exp_coeffs(&rat(-1, 2), order));
    let td = matrix_power_series(&a, todd_series(order).coeffs());
    let det = e.mul(&td).det();
    Ok(-&det.log()?)
}

/// Top-fermion coefficient of `exp(t Σ_ij ρ(X)_ij x̄_i x_j)` in the exterior
/// algebra, as a series in `t`.
pub fn tree_top_fermion(a: &QMatrix, order: usize) -> HSeries {
    let n = a.rows();
    let mut q = CliffordElement::zero(n);
    for i in 0..n {
        for j in 0..n {
            if !a[(i, j)].is_zero() {
                let term = CliffordElement::xbar(n, i + 1)
                    .product(&CliffordElement::x(n, j + 1), false)
                    .scale(&a[(i, j)]);
                q = q.add(&term).expect("same dimension");
            }
        }
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = CliffordElement::one(n);
    for k in 0..=order {
        if k > 0 {
            power = power.product(&q, false);
        }
        coeffs.push(power.top_coefficient() / factorial(k));
    }
    HSeries::from_coeffs(coeffs)
}

/// Outcome of comparing the charged-fermion partition function with the
/// spinor character.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionIdentity {
    pub holds: bool,
    /// Top-fermion part of the tree factor times `exp(I_wheel)`.
    pub lhs: HSeries,
    /// `det(e^{tρ(X)/2} - e^{-tρ(X)/2})`.
    pub rhs: HSeries,
    /// Overall power of `h` multiplying both sides.
    pub hbar_power: i64,
}

pub fn partition_function_identity(
    g: &LieAlgebraData,
    rho: &Representation,
    x: &[Rational],
    order: usize,
) -> Result<PartitionIdentity, CliffordError> {
    let rhs = charged_character(g, rho, x, order)?;
    let a = rep_at(rho, x)?;
    let tree = tree_top_fermion(&a, order);
    let wheel = wheel_term(rho, x, order)?;
    let lhs = &tree * &wheel.exp()?;
    // The top fermion has word length 2 dim V and each unit of length costs
    // one inverse power of h.
    let top_len = CliffordElement::top_fermion(rho.dim())
        .terms()
        .next()
        .map_or(0, |(w, _)| w.len() as i64);
    Ok(PartitionIdentity {
        holds: lhs == rhs,
        lhs,
        rhs,
        hbar_power: -top_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> CliffordElement {
        CliffordElement::x(1, i)
    }
    fn xb(i: usize) -> CliffordElement {
        CliffordElement::xbar(1, i)
    }

    #[test]
    fn defining_relations_d1() {
        let anti = x(1)
            .multiply(&xb(1))
            .unwrap()
            .add(&xb(1).multiply(&x(1)).unwrap())
            .unwrap();
        assert_eq!(anti, CliffordElement::one(1));
        assert!(x(1).multiply(&x(1)).unwrap().is_zero());
        assert!(xb(1).multiply(&xb(1)).unwrap().is_zero());
        let p = x(1).multiply(&xb(1)).unwrap();
        assert_eq!(p.multiply(&p).unwrap(), p);
    }

    #[test]
    fn mismatched_dims_are_rejected() {
        let a = CliffordElement::one(1);
        let b = CliffordElement::one(2);
        assert_eq!(a.multiply(&b), Err(CliffordError::DimensionMismatch(1, 2)));
    }

    #[test]
    fn spinor_matrices_d1() {
        assert_eq!(x(1).spinor_matrix(), QMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert_eq!(
            xb(1).spinor_matrix(),
            QMatrix::from_i64(&[&[0, 1], &[0, 0]])
        );
        assert_eq!(
            CliffordElement::one(2).spinor_matrix(),
            QMatrix::identity(4)
        );
    }

    #[test]
    fn supertrace_d1_example() {
        // a x̄x + b x̄ + c x + d x x̄  ->  a - d
        let (a, b, c, d) = (rat(5, 1), rat(7, 1), rat(-2, 1), rat(3, 1));
        let xbx = xb(1).multiply(&x(1)).unwrap();
        let xxb = x(1).multiply(&xb(1)).unwrap();
        let el = xbx
            .scale(&a)
            .add(&xb(1).scale(&b))
            .unwrap()
            .add(&x(1).scale(&c))
            .unwrap()
            .add(&xxb.scale(&d))
            .unwrap();
        assert_eq!(supertrace_via_top(&el), &a - &d);
        assert_eq!(supertrace(&el.spinor_matrix()), &a - &d);
        assert_eq!(supertrace_via_top(&CliffordElement::one(1)), rat(0, 1));
        for d in 1..=3 {
            assert_eq!(supertrace_via_top(&CliffordElement::x(d, 1)), rat(0, 1));
        }
    }

    #[test]
    fn spinor_map_is_multiplicative_and_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=3 {
            for _ in 0..20 {
                let a = CliffordElement::random(d, &mut rng, 3);
                let b = CliffordElement::random(d, &mut rng, 3);
                assert_eq!(
                    a.multiply(&b).unwrap().spinor_matrix(),
                    a.spinor_matrix().mul(&b.spinor_matrix())
                );
                assert_eq!(supertrace_via_top(&a), supertrace(&a.spinor_matrix()));
            }
            assert_eq!(spinor_map_rank(d).unwrap(), 1 << (2 * d));
        }
    }

    #[test]
    fn hochschild_zero_is_one_dimensional() {
        for d in 1..=3 {
            assert_eq!(hh0_dimension(d).unwrap(), 1);
        }
        assert_eq!(hh0_dimension(4), Err(CliffordError::DimensionTooLarge(4)));
    }

    #[test]
    fn todd_series_matches_bernoulli_table() {
        let td = todd_series(4);
        assert_eq!(
            td.coeffs(),
            &[rat(1, 1), rat(1, 2), rat(1, 12), rat(0, 1), rat(-1, 720)]
        );
        // Independent route: 1 / ((1 - e^{-s}) / s).
        let denom: Vec<Rational> = (0..=8)
            .map(|m| rat(if m % 2 == 0 { 1 } else { -1 }, 1) / factorial(m + 1))
            .collect();
        assert_eq!(
            todd_series(8),
            HSeries::from_coeffs(denom).inverse().unwrap()
        );
    }

    #[test]
    fn character_examples() {
        let (g, rep) = builtin("sl2").unwrap();
        let rep = rep.unwrap();
        let h = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let e = [rat(0, 1), rat(1, 1), rat(0, 1)];
        let ch = charged_character(&g, &rep, &h, 4).unwrap();
        // -(e^{t/2} - e^{-t/2})^2 = -(t^2 + t^4/12 + ...)
        assert_eq!(
            ch.coeffs(),
            &[rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1), rat(-1, 12)]
        );
        assert!(charged_character(&g, &rep, &e, 6).unwrap().is_zero());
        let zero = Representation::trivial(&g, 2);
        assert!(charged_character(&g, &zero, &h, 6).unwrap().is_zero());
    }

    #[test]
    fn trace_condition_is_enforced() {
        let g = LieAlgebraData::abelian(1);
        let rep = Representation::new(&g, vec![QMatrix::identity(2)]).unwrap();
        assert!(matches!(
            charged_character(&g, &rep, &[rat(1, 1)], 3),
            Err(CliffordError::TraceNotZero(_))
        ));
        assert!(matches!(
            partition_function_identity(&g, &rep, &[rat(1, 1)], 3),
            Err(CliffordError::TraceNotZero(_))
        ));
    }

    #[test]
    fn wheel_examples() {
        let (g, rep) = builtin("sl2").unwrap();
        let h = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let w = wheel_term(rep.as_ref().unwrap(), &h, 3).unwrap();
        assert_eq!(w.coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 12), rat(0, 1)]);
        assert!(wheel_term(&Representation::trivial(&g, 3), &h, 6)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn tree_top_fermion_is_t_power_times_det() {
        let a = QMatrix::from_i64(&[&[1, 2], &[3, 5]]);
        let s = tree_top_fermion(&a, 4);
        assert_eq!(
            s.coeffs(),
            &[rat(0, 1), rat(0, 1), a.det(), rat(0, 1), rat(0, 1)]
        );
    }

    #[test]
    fn partition_identity_sl2_fundamental() {
        let (g, rep) = builtin("sl2").unwrap();
        let h = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let r = partition_function_identity(&g, rep.as_ref().unwrap(), &h, 6).unwrap();
        assert!(r.holds, "{} vs {}", r.lhs, r.rhs);
        assert_eq!(r.hbar_power, -4);
        let zero = Representation::trivial(&g, 2);
        let r0 = partition_function_identity(&g, &zero, &h, 6).unwrap();
        assert!(r0.holds && r0.lhs.is_zero() && r0.rhs.is_zero());
    }
}
