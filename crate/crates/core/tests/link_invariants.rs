//! Random braid closures: the R-matrix invariant against the state sum.

use proptest::prelude::*;
use rtfactor::diagram::{BraidWord, LinkSpec};
use rtfactor::kauffman::jones_polynomial;
use rtfactor::quantum_group::sln_fundamental_ribbon;
use rtfactor::rt::{compare_with_bracket, framed_invariant, BracketRule, Substitution};

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=3).prop_flat_map(|s| {
        let gen = (1..s as i64).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        prop::collection::vec(gen, 0..=6)
            .prop_map(move |w| BraidWord::new(s, w).expect("valid generators"))
    })
}

fn jones(link: &LinkSpec) -> rtfactor::ring::LaurentPoly {
    let pd = link.pd();
    jones_polynomial(&pd, pd.writhe()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sl2_invariant_matches_the_bracket_rule(b in braid(), k in -2i64..=2) {
        let link = LinkSpec::new(b, k);
        let report = compare_with_bracket(&link.sliced()).unwrap();
        let rule = BracketRule { substitution: Substitution::QIsA4, sign_law: (1, 1, 0) };
        prop_assert!(report.rules.contains(&rule), "rules {:?}", report.rules);
    }

    #[test]
    fn jones_ignores_framing(b in braid(), k in -3i64..=3) {
        prop_assert_eq!(jones(&LinkSpec::new(b.clone(), k)), jones(&LinkSpec::new(b, 0)));
    }

    #[test]
    fn jones_of_mirror_inverts_t(b in braid()) {
        let link = LinkSpec::new(b, 0);
        prop_assert_eq!(jones(&link.mirror()), jones(&link).substitute_power(-1, 1));
    }

    #[test]
    fn conjugate_braids_close_to_the_same_link(b in braid(), shift in 0usize..6) {
        let w = b.word().to_vec();
        if w.is_empty() {
            return Ok(());
        }
        let mut rotated = w.clone();
        rotated.rotate_left(shift % w.len());
        let rotated = BraidWord::new(b.strands(), rotated).unwrap();
        let rep = sln_fundamental_ribbon(2).unwrap();
        prop_assert_eq!(
            framed_invariant(&LinkSpec::new(b, 0).sliced(), &rep).unwrap(),
            framed_invariant(&LinkSpec::new(rotated, 0).sliced(), &rep).unwrap()
        );
    }
}
