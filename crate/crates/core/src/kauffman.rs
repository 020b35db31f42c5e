//! Kauffman bracket by the state sum, and the Jones polynomial.
//!
//! Brackets are Laurent polynomials in `A` (stored in the `q` slot of
//! [`LaurentPoly`] and rendered with variable `A`); the Jones polynomial is
//! returned in `t = A^{-4}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{PdCode, UnionFind};
use crate::ring::{rat, LaurentPoly};

pub const MAX_CROSSINGS: usize = 24;

/// States per worker before the sum is split across threads.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KauffmanError {
    #[error("{0} crossings exceed the state-sum limit of {MAX_CROSSINGS}")]
    TooManyCrossings(usize),
}

/// `δ = -A² - A⁻²`.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms(1, [(2, rat(-1, 1)), (-2, rat(-1, 1))])
}

/// `⟨L⟩ = Σ_states A^{#A - #B} δ^{loops - 1}`, normalized so that the
/// crossingless unknot has bracket 1.
pub fn kauffman_bracket(pd: &PdCode) -> Result<LaurentPoly, KauffmanError> {
    let n = pd.crossings().len();
    if n > MAX_CROSSINGS {
        return Err(KauffmanError::TooManyCrossings(n));
    }
    let arcs = pd.arcs();
    let crossings: Vec<[usize; 4]> = pd
        .crossings()
        .iter()
        .map(|c| c.arcs.map(|a| arcs.binary_search(&a).expect("arc label")))
        .collect();
    let total: u64 = 1 << n;
    let workers = std::thread::available_parallelism()
        .map_or(1, |k| k.get())
        .min((total as usize / PARALLEL_THRESHOLD).max(1));
    let chunk = total.div_ceil(workers as u64);
    let counts: BTreeMap<(i64, usize), u64> = if workers == 1 {
        state_counts(&crossings, arcs.len(), 0..total)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let crossings = &crossings;
                    let arcs = arcs.len();
                    scope.spawn(move || {
                        state_counts(crossings, arcs, w * chunk..((w + 1) * chunk).min(total))
                    })
                })
                .collect();
            let mut merged = BTreeMap::new();
            for h in handles {
                for (k, v) in h.join().expect("state-sum worker") {
                    *merged.entry(k).or_insert(0) += v;
                }
            }
            merged
        })
    };
    let delta = loop_value();
    let mut delta_pows = vec![LaurentPoly::one()];
    let mut out = LaurentPoly::zero();
    for ((a_minus_b, loops), count) in counts {
        let loops = loops + pd.free_loops();
        while delta_pows.len() < loops {
            let next = delta_pows.last().expect("nonempty") * &delta;
            delta_pows.push(next);
        }
        let term = LaurentPoly::monomial(a_minus_b, 1, rat(count as i64, 1));
        out = &out + &(&term * &delta_pows[loops.saturating_sub(1)]);
    }
    Ok(out)
}

/// Histogram of `(#A - #B, loops)` over the states in `range`. Bit `k` set
/// means crossing `k` takes its B-smoothing.
fn state_counts(
    crossings: &[[usize; 4]],
    arcs: usize,
    range: std::ops::Range<u64>,
) -> BTreeMap<(i64, usize), u64> {
    let n = crossings.len() as i64;
    let mut out = BTreeMap::new();
    for state in range {
        let mut uf = UnionFind::new(arcs);
        for (k, [a, b, c, d]) in crossings.iter().copied().enumerate() {
            if state >> k & 1 == 0 {
                uf.union(a, b);
                uf.union(c, d);
            } else {
                uf.union(a, d);
                uf.union(b, c);
            }
        }
        let b_count = state.count_ones() as i64;
        *out.entry((n - 2 * b_count, uf.classes())).or_insert(0) += 1;
    }
    out
}

/// `V(L) = (-A³)^{-w} ⟨L⟩` at `A = t^{-1/4}`.
pub fn jones_polynomial(pd: &PdCode, writhe: i64) -> Result<LaurentPoly, KauffmanError> {
    let bracket = kauffman_bracket(pd)?;
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let correction = LaurentPoly::monomial(-3 * writhe, 1, rat(sign, 1));
    Ok((&correction * &bracket).substitute_power(-1, 4))
}

/// Renders a bracket with variable `A`.
pub fn render_bracket(p: &LaurentPoly) -> String {
    p.render("A")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{catalog, catalog_link, PdCrossing};

    fn a(e: i64, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, 1, rat(c, 1))
    }

    fn t(e: i64, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, 1, rat(c, 1))
    }

    fn bracket(name: &str) -> LaurentPoly {
        kauffman_bracket(&catalog_link(name).unwrap().pd()).unwrap()
    }

    #[test]
    fn small_brackets() {
        assert_eq!(bracket("unknot"), LaurentPoly::one());
        assert_eq!(bracket("unlink2"), &a(2, -1) + &a(-2, -1));
        assert_eq!(bracket("hopf+"), &a(4, -1) + &a(-4, -1));
        assert_eq!(bracket("unknot+kink"), a(3, -1));
    }

    #[test]
    fn bracket_by_hand_on_hopf() {
        // four states of the Hopf diagram: AA gives 2 loops, AB and BA give 1, BB gives 2
        let d = loop_value();
        let expected = &(&(&a(2, 1) * &d) + &a(0, 2)) + &(&a(-2, 1) * &d);
        assert_eq!(bracket("hopf-"), expected);
    }

    #[test]
    fn jones_examples() {
        let jones = |name: &str| {
            let link = catalog_link(name).unwrap();
            let pd = link.pd();
            jones_polynomial(&pd, pd.writhe()).unwrap()
        };
        assert_eq!(jones("unknot"), LaurentPoly::one());
        assert_eq!(jones("unknot+kink"), LaurentPoly::one());
        assert_eq!(jones("unknot-kink"), LaurentPoly::one());
        assert_eq!(jones("trefoil-right"), &(&t(4, -1) + &t(3, 1)) + &t(1, 1));
        let fig8 = &(&(&t(2, 1) + &t(1, -1)) + &t(0, 1)) + &(&t(-1, -1) + &t(-2, 1));
        assert_eq!(jones("figure-eight"), fig8);
    }

    #[test]
    fn kink_multiplies_by_minus_a_cubed() {
        for (name, link) in catalog() {
            let plain = kauffman_bracket(&link.pd()).unwrap();
            let kinked = kauffman_bracket(
                &crate::diagram::LinkSpec::new(link.braid.clone(), link.framing_kinks + 1).pd(),
            )
            .unwrap();
            if link.framing_kinks >= 0 {
                assert_eq!(kinked, &a(3, -1) * &plain, "{name}");
            }
        }
    }

    #[test]
    fn mirror_inverts_t() {
        for (name, link) in catalog() {
            let pd = link.pd();
            let mpd = link.mirror().pd();
            let v = jones_polynomial(&pd, pd.writhe()).unwrap();
            let vm = jones_polynomial(&mpd, mpd.writhe()).unwrap();
            assert_eq!(vm, v.substitute_power(-1, 1), "{name}");
            assert_eq!(
                kauffman_bracket(&pd.mirror()).unwrap(),
                kauffman_bracket(&pd).unwrap().substitute_power(-1, 1),
                "{name}"
            );
        }
    }

    #[test]
    fn disjoint_union_with_unknot() {
        for (name, link) in catalog() {
            let pd = link.pd();
            let with_loop = PdCode::new(pd.crossings().to_vec(), pd.free_loops() + 1).unwrap();
            assert_eq!(
                kauffman_bracket(&with_loop).unwrap(),
                &loop_value() * &kauffman_bracket(&pd).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn crossing_limit() {
        let big: Vec<PdCrossing> = (0..25)
            .map(|k| PdCrossing {
                arcs: [2 * k, 2 * k, 2 * k + 1, 2 * k + 1],
                sign: 1,
            })
            .collect();
        let pd = PdCode::new(big, 0).unwrap();
        assert_eq!(
            kauffman_bracket(&pd),
            Err(KauffmanError::TooManyCrossings(25))
        );
    }

    #[test]
    fn parallel_split_agrees_with_serial() {
        // 15 crossings: enough states to use several workers
        let link = crate::diagram::LinkSpec::new(
            crate::diagram::parse_braid("B3:1,-2,1,-2,1,-2,1,-2,1,-2,1,1,2,2,1").unwrap(),
            0,
        );
        let pd = link.pd();
        let crossings: Vec<[usize; 4]> = {
            let arcs = pd.arcs();
            pd.crossings()
                .iter()
                .map(|c| c.arcs.map(|x| arcs.binary_search(&x).unwrap()))
                .collect()
        };
        let serial = state_counts(&crossings, pd.arcs().len(), 0..1 << crossings.len());
        let mut direct = LaurentPoly::zero();
        for ((e, loops), count) in serial {
            direct =
                &direct + &(&a(e, count as i64) * &loop_value().pow(loops as i64 - 1).unwrap());
        }
        assert_eq!(kauffman_bracket(&pd).unwrap(), direct);
    }
}
