//! Reshetikhin–Turaev evaluation of sliced diagrams in a ribbon
//! representation, framed link invariants, their expansion at `q = e^h`,
//! and the cross-check against the Kauffman bracket.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{pd_from_sliced, DiagramError, Piece, SlicedTangle};
use crate::kauffman::{kauffman_bracket, loop_value, KauffmanError};
use crate::linalg::Matrix;
use crate::quantum_group::{sln_fundamental_ribbon, LMatrix, RibbonRep};
use crate::ring::{HSeries, LaurentPoly};

/// Largest state space `n^width` the evaluator will touch.
pub const MAX_STATES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RtError {
    #[error("arities do not match: {0}")]
    ArityMismatch(String),
    #[error("the tangle is not closed")]
    NotClosed,
    #[error("state space {0} is too large")]
    TooLarge(usize),
    #[error("the normalizer expands with zero constant term")]
    NonInvertibleNormalizer,
    #[error("the normalizer does not divide the invariant")]
    NotDivisible,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Kauffman(#[from] KauffmanError),
}

/// Linear map `V^{⊗input} → V^{⊗output}`; column index encodes the input
/// basis word with the leftmost strand most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct TangleValue {
    pub input_arity: usize,
    pub output_arity: usize,
    pub matrix: LMatrix,
}

impl TangleValue {
    /// `other ∘ self`: `self` below, `other` stacked on top.
    pub fn then(&self, other: &TangleValue) -> Result<TangleValue, RtError> {
        if self.output_arity != other.input_arity {
            return Err(RtError::ArityMismatch(format!(
                "{} outputs into {} inputs",
                self.output_arity, other.input_arity
            )));
        }
        Ok(TangleValue {
            input_arity: self.input_arity,
            output_arity: other.output_arity,
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    /// The scalar of a closed tangle.
    pub fn scalar(&self) -> Option<&LaurentPoly> {
        (self.input_arity == 0 && self.output_arity == 0).then(|| &self.matrix[(0, 0)])
    }
}

type SparseVec = HashMap<Vec<u8>, LaurentPoly>;

fn add_into(v: &mut SparseVec, key: Vec<u8>, x: LaurentPoly) {
    use std::collections::hash_map::Entry;
    match v.entry(key) {
        Entry::Occupied(mut e) => {
            let sum = e.get() + &x;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            if !x.is_zero() {
                e.insert(x);
            }
        }
    }
}

/// Nonzero entries of a two-strand matrix grouped by input column.
fn columns(m: &LMatrix, n: usize) -> Vec<Vec<(u8, u8, LaurentPoly)>> {
    (0..n * n)
        .map(|col| {
            (0..n * n)
                .filter(|&row| !m[(row, col)].is_zero())
                .map(|row| ((row / n) as u8, (row % n) as u8, m[(row, col)].clone()))
                .collect()
        })
        .collect()
}

struct Evaluator<'a> {
    n: usize,
    pos: Vec<Vec<(u8, u8, LaurentPoly)>>,
    neg: Vec<Vec<(u8, u8, LaurentPoly)>>,
    pivot: &'a LMatrix,
}

impl Evaluator<'_> {
    fn apply(&self, v: SparseVec, piece: Piece, p: usize) -> SparseVec {
        let n = self.n;
        let mut out = SparseVec::with_capacity(v.len());
        match piece {
            Piece::Id => return v,
            Piece::PosCross | Piece::NegCross => {
                let cols = if piece == Piece::PosCross {
                    &self.pos
                } else {
                    &self.neg
                };
                for (word, c) in v {
                    let col = word[p] as usize * n + word[p + 1] as usize;
                    for (a, b, x) in &cols[col] {
                        let mut w = word.clone();
                        w[p] = *a;
                        w[p + 1] = *b;
                        add_into(&mut out, w, &c * x);
                    }
                }
            }
            Piece::Cup => {
                for (word, c) in v {
                    for i in 0..n as u8 {
                        let mut w = word.clone();
                        w.splice(p..p, [i, i]);
                        add_into(&mut out, w, c.clone());
                    }
                }
            }
            Piece::Cap => {
                for (word, c) in v {
                    let x = &self.pivot[(word[p] as usize, word[p + 1] as usize)];
                    if x.is_zero() {
                        continue;
                    }
                    let mut w = word.clone();
                    w.drain(p..p + 2);
                    add_into(&mut out, w, &c * x);
                }
            }
        }
        out
    }
}

fn digits(mut index: usize, n: usize, width: usize) -> Vec<u8> {
    let mut out = vec![0u8; width];
    for slot in out.iter_mut().rev() {
        *slot = (index % n) as u8;
        index /= n;
    }
    out
}

fn index_of(word: &[u8], n: usize) -> usize {
    word.iter().fold(0, |acc, &d| acc * n + d as usize)
}

/// Evaluates slice by slice, bottom to top, on sparse vectors.
pub fn evaluate_sliced_tangle(t: &SlicedTangle, rep: &RibbonRep) -> Result<TangleValue, RtError> {
    let n = rep.n();
    let widest = t.widths().into_iter().max().unwrap_or(0);
    let states = (n as f64).powi(widest as i32);
    if states > MAX_STATES as f64 {
        return Err(RtError::TooLarge(states as usize));
    }
    let ev = Evaluator {
        n,
        pos: columns(&rep.braiding(), n),
        neg: columns(&rep.braiding_inv(), n),
        pivot: rep.pivot(),
    };
    let inputs = n.pow(t.input_arity() as u32);
    let outputs = n.pow(t.output_arity() as u32);
    let mut matrix = Matrix::filled(outputs, inputs, LaurentPoly::zero());
    for col in 0..inputs {
        let mut v = SparseVec::new();
        v.insert(digits(col, n, t.input_arity()), LaurentPoly::one());
        for s in t.slices() {
            v = ev.apply(v, s.piece, s.position);
        }
        for (word, c) in v {
            matrix[(index_of(&word, n), col)] = c;
        }
    }
    Ok(TangleValue {
        input_arity: t.input_arity(),
        output_arity: t.output_arity(),
        matrix,
    })
}

/// The scalar of a closed diagram; framing enters only through kinks.
pub fn framed_invariant(link: &SlicedTangle, rep: &RibbonRep) -> Result<LaurentPoly, RtError> {
    if !link.is_closed() {
        return Err(RtError::NotClosed);
    }
    let value = evaluate_sliced_tangle(link, rep)?;
    Ok(value.scalar().cloned().unwrap_or_else(LaurentPoly::zero))
}

/// `θ^{-w} F(L)`, invariant under changes of framing.
pub fn oriented_invariant(link: &SlicedTangle, rep: &RibbonRep) -> Result<LaurentPoly, RtError> {
    let w = link.writhe()?;
    let correction = rep.twist().pow(-w).expect("the twist is a monomial");
    Ok(&correction * &framed_invariant(link, rep)?)
}

/// `θ^{-w} F(L) / F(unknot)`; for `sl_2` this is `(-1)^{c-1}` times the
/// Jones polynomial at `t = q^{-1}`, `c` the number of components.
pub fn normalized_invariant(link: &SlicedTangle, rep: &RibbonRep) -> Result<LaurentPoly, RtError> {
    oriented_invariant(link, rep)?
        .div_exact(&rep.quantum_dimension())
        .ok_or(RtError::NotDivisible)
}

/// Expansion at `q = e^h` to order `order`, optionally divided by
/// `normalizer` as a series.
pub fn hbar_expand_invariant(
    p: &LaurentPoly,
    order: usize,
    normalizer: Option<&LaurentPoly>,
) -> Result<HSeries, RtError> {
    let series = p.to_hseries(order);
    match normalizer {
        None => Ok(series),
        Some(d) => {
            let ds = d.to_hseries(order);
            if ds.coeff(0) == &num_traits::Zero::zero() {
                return Err(RtError::NonInvertibleNormalizer);
            }
            series
                .div(&ds)
                .map_err(|_| RtError::NonInvertibleNormalizer)
        }
    }
}

/// How the bracket variable `A` is related to `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Substitution {
    /// `q = A⁴`
    QIsA4,
    /// `q = A⁻⁴`
    QIsAInv4,
}

impl Substitution {
    pub const ALL: [Substitution; 2] = [Substitution::QIsA4, Substitution::QIsAInv4];

    /// Rewrites a polynomial in `A` as one in `q`.
    pub fn apply(self, in_a: &LaurentPoly) -> LaurentPoly {
        match self {
            Substitution::QIsA4 => in_a.substitute_power(1, 4),
            Substitution::QIsAInv4 => in_a.substitute_power(-1, 4),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Substitution::QIsA4 => "q = A^4",
            Substitution::QIsAInv4 => "q = A^-4",
        }
    }
}

/// The rule `F(L) = (-1)^{α w + β c + γ} · δ⟨L⟩` under a substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BracketRule {
    pub substitution: Substitution,
    /// `(α, β, γ)`: exponents per writhe, per component and constant.
    pub sign_law: (u8, u8, u8),
}

impl BracketRule {
    pub fn all() -> Vec<BracketRule> {
        let mut out = Vec::new();
        for substitution in Substitution::ALL {
            for a in 0..2 {
                for b in 0..2 {
                    for g in 0..2 {
                        out.push(BracketRule {
                            substitution,
                            sign_law: (a, b, g),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn sign(&self, writhe: i64, components: usize) -> i64 {
        let (a, b, g) = self.sign_law;
        let e = a as i64 * writhe + b as i64 * components as i64 + g as i64;
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn describe(&self) -> String {
        let (a, b, g) = self.sign_law;
        format!(
            "{}, sign (-1)^({a}*w + {b}*c + {g})",
            self.substitution.describe()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketComparison {
    pub writhe: i64,
    pub components: usize,
    /// Every rule under which the two sides agree.
    pub rules: Vec<BracketRule>,
    pub verdict: bool,
}

/// Compares the framed invariant in the `sl_2` vector representation with
/// the unnormalized bracket `δ⟨L⟩`, the bracket normalization in which the
/// unknot has value `δ` like the framed invariant.
pub fn compare_with_bracket(link: &SlicedTangle) -> Result<BracketComparison, RtError> {
    let rep = sln_fundamental_ribbon(2).expect("sl2 ribbon data");
    compare_with_bracket_in(link, &rep)
}

/// As [`compare_with_bracket`] with explicit ribbon data.
pub fn compare_with_bracket_in(
    link: &SlicedTangle,
    rep: &RibbonRep,
) -> Result<BracketComparison, RtError> {
    if !link.is_closed() {
        return Err(RtError::NotClosed);
    }
    let pd = pd_from_sliced(link)?;
    let bracket = &loop_value() * &kauffman_bracket(&pd)?;
    let framed = framed_invariant(link, rep)?;
    let (writhe, components) = (pd.writhe(), pd.component_count());
    let rules: Vec<BracketRule> = BracketRule::all()
        .into_iter()
        .filter(|r| {
            let rhs = r.substitution.apply(&bracket);
            if r.sign(writhe, components) == 1 {
                framed == rhs
            } else {
                framed == -rhs
            }
        })
        .collect();
    Ok(BracketComparison {
        writhe,
        components,
        verdict: !rules.is_empty(),
        rules,
    })
}

/// Rules that work for every link in the list.
pub fn uniform_bracket_rules(reports: &[BracketComparison]) -> Vec<BracketRule> {
    BracketRule::all()
        .into_iter()
        .filter(|r| reports.iter().all(|c| c.rules.contains(r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure_sliced, catalog, catalog_link, parse_braid, Slice};
    use crate::kauffman::jones_polynomial;
    use crate::quantum_group::identity;
    use crate::ring::rat;

    fn sl(n: usize) -> RibbonRep {
        sln_fundamental_ribbon(n).unwrap()
    }

    fn closure(b: &str) -> SlicedTangle {
        braid_closure_sliced(&parse_braid(b).unwrap())
    }

    #[test]
    fn identity_and_inverse_crossings() {
        let rep = sl(2);
        let id = SlicedTangle::new(1, vec![Slice::new(0, Piece::Id)]).unwrap();
        assert_eq!(
            evaluate_sliced_tangle(&id, &rep).unwrap().matrix,
            identity(2)
        );
        let t = SlicedTangle::new(
            2,
            vec![
                Slice::new(0, Piece::PosCross),
                Slice::new(0, Piece::NegCross),
            ],
        )
        .unwrap();
        assert_eq!(
            evaluate_sliced_tangle(&t, &rep).unwrap().matrix,
            identity(4)
        );
        let c = SlicedTangle::new(2, vec![Slice::new(0, Piece::PosCross)]).unwrap();
        assert_eq!(
            evaluate_sliced_tangle(&c, &rep).unwrap().matrix,
            rep.braiding()
        );
    }

    #[test]
    fn composition_checks_arity() {
        let rep = sl(2);
        let cup = evaluate_sliced_tangle(
            &SlicedTangle::new(0, vec![Slice::new(0, Piece::Cup)]).unwrap(),
            &rep,
        )
        .unwrap();
        let cap = evaluate_sliced_tangle(
            &SlicedTangle::new(2, vec![Slice::new(0, Piece::Cap)]).unwrap(),
            &rep,
        )
        .unwrap();
        assert_eq!(
            cup.then(&cap).unwrap().scalar(),
            Some(&rep.quantum_dimension())
        );
        assert!(matches!(cup.then(&cup), Err(RtError::ArityMismatch(_))));
    }

    #[test]
    fn unknot_is_quantum_dimension() {
        for n in 2..=4 {
            let rep = sl(n);
            assert_eq!(
                framed_invariant(&closure("B1:"), &rep).unwrap(),
                rep.quantum_dimension()
            );
        }
    }

    #[test]
    fn open_tangles_have_no_framed_invariant() {
        let open = SlicedTangle::new(2, vec![Slice::new(0, Piece::PosCross)]).unwrap();
        assert_eq!(framed_invariant(&open, &sl(2)), Err(RtError::NotClosed));
    }

    #[test]
    fn kinks_multiply_by_the_twist() {
        for n in 2..=3 {
            let rep = sl(n);
            for (name, link) in catalog() {
                let base = framed_invariant(&link.sliced(), &rep).unwrap();
                for k in [-2i64, -1, 1, 2] {
                    let kinked =
                        crate::diagram::LinkSpec::new(link.braid.clone(), link.framing_kinks + k);
                    let theta_k = rep.twist().pow(k).unwrap();
                    assert_eq!(
                        framed_invariant(&kinked.sliced(), &rep).unwrap(),
                        &theta_k * &base,
                        "{name} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn markov_stabilization() {
        let rep = sl(2);
        let stabilized = framed_invariant(&closure("B2:1"), &rep).unwrap();
        let plain = framed_invariant(&closure("B1:"), &rep).unwrap();
        assert_eq!(stabilized, rep.twist() * &plain);
    }

    #[test]
    fn inserting_a_cancelling_pair_changes_nothing() {
        let rep = sl(2);
        for (name, link) in catalog() {
            let t = link.sliced();
            let base = framed_invariant(&t, &rep).unwrap();
            let s = link.framed_braid().strands();
            if s < 2 {
                continue;
            }
            // after the cups, and again just before the caps
            for index in [s, t.slices().len() - s] {
                let pair = [
                    Slice::new(0, Piece::PosCross),
                    Slice::new(0, Piece::NegCross),
                ];
                let u = t.with_inserted(index, &pair).unwrap();
                assert_eq!(framed_invariant(&u, &rep).unwrap(), base, "{name}");
            }
        }
    }

    #[test]
    fn bracket_agrees_under_one_rule() {
        let reports: Vec<_> = catalog()
            .iter()
            .map(|(_, l)| compare_with_bracket(&l.sliced()).unwrap())
            .collect();
        assert!(reports.iter().all(|r| r.verdict));
        let uniform = uniform_bracket_rules(&reports);
        assert_eq!(
            uniform,
            vec![BracketRule {
                substitution: Substitution::QIsA4,
                sign_law: (1, 1, 0)
            }]
        );
    }

    #[test]
    fn corrupted_r_matrix_fails_the_comparison() {
        let rep = sl(2);
        let mut r = rep.r().clone();
        let mut r_inv = rep.r_inv().clone();
        // rescale the e_2⊗e_1 component of R(e_2⊗e_1), fixing up the inverse;
        // kinks stay scalar
        r[(2, 2)] = r[(2, 2)].scale(&rat(2, 1));
        r_inv[(2, 2)] = r_inv[(2, 2)].scale(&rat(1, 2));
        r_inv[(1, 2)] = r_inv[(1, 2)].scale(&rat(1, 2));
        let bad = RibbonRep::new(r, r_inv, rep.pivot().clone()).unwrap();
        let hopf = catalog_link("hopf+").unwrap().sliced();
        assert!(!compare_with_bracket_in(&hopf, &bad).unwrap().verdict);
    }

    #[test]
    fn sl2_normalized_invariant_is_jones_in_inverse_q() {
        // up to (-1)^{c-1}, the Jones sign convention for links
        let rep = sl(2);
        for (name, link) in catalog() {
            let pd = link.pd();
            let jones = jones_polynomial(&pd, pd.writhe())
                .unwrap()
                .substitute_power(-1, 1);
            let jones = if pd.component_count() % 2 == 0 {
                -jones
            } else {
                jones
            };
            let rt = normalized_invariant(&link.sliced(), &rep).unwrap();
            assert_eq!(rt, jones, "{name}");
        }
    }

    #[test]
    fn expansions() {
        let rep = sl(2);
        let unknot = rep.quantum_dimension();
        let one = hbar_expand_invariant(&unknot, 4, Some(&unknot)).unwrap();
        assert_eq!(one, HSeries::one(4));
        for name in [
            "trefoil-right",
            "trefoil-left",
            "figure-eight",
            "unknot+kink",
        ] {
            let link = catalog_link(name).unwrap().sliced();
            let s =
                hbar_expand_invariant(&oriented_invariant(&link, &rep).unwrap(), 4, Some(&unknot))
                    .unwrap();
            assert_eq!(s.coeff(0), &rat(1, 1), "{name}");
            assert_eq!(s.coeff(1), &rat(0, 1), "{name}");
            if name.starts_with("trefoil") {
                assert_ne!(s.coeff(2), &rat(0, 1));
            }
        }
        let zero_const = &LaurentPoly::q() - &LaurentPoly::one();
        assert_eq!(
            hbar_expand_invariant(&unknot, 2, Some(&zero_const)),
            Err(RtError::NonInvertibleNormalizer)
        );
    }

    #[test]
    fn higher_rank_invariants_are_framing_covariant_and_mirror_symmetric() {
        let rep = sl(3);
        let right =
            oriented_invariant(&catalog_link("trefoil-right").unwrap().sliced(), &rep).unwrap();
        let left =
            oriented_invariant(&catalog_link("trefoil-left").unwrap().sliced(), &rep).unwrap();
        assert_eq!(left, right.substitute_power(-1, 1));
        assert_ne!(left, right);
    }
}
