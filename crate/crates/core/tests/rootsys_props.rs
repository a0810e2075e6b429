//! Structural tests for the Weyl group layer: action composition, length
//! bookkeeping, Bruhat order against an independent subword enumeration, and
//! alcove genericity facts, exhaustively over the small groups in scope.

use proptest::prelude::*;
use twisted_hecke_core::exactalg::{qi, qq};
use twisted_hecke_core::rootsys::{RootSystem, Weight, WeylElement};

const SYSTEMS: [RootSystem; 4] =
    [RootSystem::A(3), RootSystem::A(4), RootSystem::C2, RootSystem::G2];

fn arb_weight(rank: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec((-12i64..=12, 1i64..=7), rank)
        .prop_map(|cs| Weight::new(cs.into_iter().map(|(p, q)| qq(p, q)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_composes_a3(lam in arb_weight(3)) {
        let sys = RootSystem::A(3);
        for v in sys.elements().unwrap() {
            for w in sys.elements().unwrap() {
                let vw = v.mul(&w).unwrap();
                prop_assert_eq!(
                    vw.act_weight(&lam).coords,
                    v.act_weight(&w.act_weight(&lam)).coords
                );
            }
        }
    }

    #[test]
    fn action_composes_rank2(lam in arb_weight(2)) {
        for sys in [RootSystem::C2, RootSystem::G2] {
            for v in sys.elements().unwrap() {
                for w in sys.elements().unwrap() {
                    let vw = v.mul(&w).unwrap();
                    prop_assert_eq!(
                        vw.act_weight(&lam).coords,
                        v.act_weight(&w.act_weight(&lam)).coords
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_transforms_contravariantly(lam in arb_weight(2)) {
        // <w lam, alpha_i^vee> = lam paired against w^{-1} alpha_i.
        for sys in [RootSystem::C2, RootSystem::G2] {
            for w in sys.elements().unwrap() {
                for i in 1..=2 {
                    let alpha = sys.simple_root(i).unwrap();
                    let moved = w.inv().act_ivec(&alpha);
                    prop_assert_eq!(
                        sys.pairing_simple(&w.act_weight(&lam), i).unwrap(),
                        sys.pairing(&lam, &moved).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn simple_multiplication_changes_length_by_one() {
    for sys in SYSTEMS {
        for w in sys.elements().unwrap() {
            for i in 1..=sys.num_simple() {
                let s = sys.simple(i).unwrap();
                let ws = w.mul(&s).unwrap();
                let sw = s.mul(&w).unwrap();
                let d_right = ws.length() as i64 - w.length() as i64;
                let d_left = sw.length() as i64 - w.length() as i64;
                assert!(d_right.abs() == 1, "{} * s{}", w.render(), i);
                assert!(d_left.abs() == 1, "s{} * {}", i, w.render());
                assert_eq!(w.longer_right(i).unwrap(), d_right == 1);
                assert_eq!(w.longer_left(i).unwrap(), d_left == 1);
            }
        }
    }
}

#[test]
fn inverse_and_length() {
    for sys in SYSTEMS {
        for w in sys.elements().unwrap() {
            assert!(w.mul(&w.inv()).unwrap().is_identity());
            assert!(w.inv().mul(&w).unwrap().is_identity());
            assert_eq!(w.length(), w.inv().length());
        }
    }
}

#[test]
fn canonical_words_are_reduced_and_faithful() {
    for sys in SYSTEMS {
        for w in sys.elements().unwrap() {
            let word = w.canonical_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(WeylElement::from_word(sys, &word).unwrap(), w);
            for alt in w.reduced_words() {
                assert_eq!(alt.len(), w.length());
                assert_eq!(WeylElement::from_word(sys, &alt).unwrap(), w);
            }
        }
    }
}

#[test]
fn reduced_word_counts_match_known_values() {
    // The longest element of S_3 has 2 reduced words; of S_4, 16; the longest
    // elements of the rank-2 groups have 2 each (alternating words).
    assert_eq!(RootSystem::A(3).longest().unwrap().reduced_words().len(), 2);
    assert_eq!(RootSystem::A(4).longest().unwrap().reduced_words().len(), 16);
    assert_eq!(RootSystem::C2.longest().unwrap().reduced_words().len(), 2);
    assert_eq!(RootSystem::G2.longest().unwrap().reduced_words().len(), 2);
}

/// Independent Bruhat test: v <= w iff deleting letters from the canonical
/// reduced word of w can spell v. This is checked against `bruhat_leq` for
/// every ordered pair in each group.
fn subword_leq(sys: RootSystem, v: &WeylElement, w: &WeylElement) -> bool {
    let word = w.canonical_word();
    let n = word.len();
    for mask in 0u32..(1u32 << n) {
        if (mask.count_ones() as usize) != v.length() {
            continue;
        }
        let picked: Vec<usize> =
            (0..n).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
        if &WeylElement::from_word(sys, &picked).unwrap() == v {
            return true;
        }
    }
    false
}

#[test]
fn bruhat_order_matches_subword_enumeration() {
    for sys in SYSTEMS {
        let elements = sys.elements().unwrap();
        for v in &elements {
            for w in &elements {
                assert_eq!(
                    v.bruhat_leq(w).unwrap(),
                    subword_leq(sys, v, w),
                    "{} <= {} in {}",
                    v.render(),
                    w.render(),
                    sys.label()
                );
            }
        }
    }
}

#[test]
fn bruhat_is_a_partial_order_with_bottom_and_top() {
    for sys in SYSTEMS {
        let elements = sys.elements().unwrap();
        let id = sys.identity();
        let w0 = sys.longest().unwrap();
        for w in &elements {
            assert!(id.bruhat_leq(w).unwrap());
            assert!(w.bruhat_leq(&w0).unwrap());
            assert!(w.bruhat_leq(w).unwrap());
            for v in &elements {
                if v.bruhat_leq(w).unwrap() && w.bruhat_leq(v).unwrap() {
                    assert_eq!(v, w);
                }
            }
        }
    }
}

#[test]
fn positive_root_counts_and_signs() {
    for (sys, count) in [
        (RootSystem::A(3), 3),
        (RootSystem::A(4), 6),
        (RootSystem::C2, 4),
        (RootSystem::G2, 6),
    ] {
        let pos = sys.positive_roots();
        assert_eq!(pos.len(), count);
        // The longest element sends every positive root to a negative one.
        let w0 = sys.longest().unwrap();
        for alpha in &pos {
            let image = w0.act_ivec(alpha);
            let first = image.iter().find(|&&c| c != 0).unwrap();
            assert!(*first < 0, "w0 of {alpha:?} = {image:?} in {}", sys.label());
        }
    }
}

#[test]
fn reflections_negate_their_own_pairing() {
    let lam = Weight::new(vec![qq(5, 7), qq(-2, 3)]);
    for sys in [RootSystem::C2, RootSystem::G2] {
        for alpha in sys.positive_roots() {
            let s = sys.reflection(&alpha).unwrap();
            assert!(s.mul(&s).unwrap().is_identity());
            let p = sys.pairing(&lam, &alpha).unwrap();
            let q = sys.pairing(&s.act_weight(&lam), &alpha).unwrap();
            assert_eq!(q, -p);
        }
    }
}

#[test]
fn genericity_and_alcoves() {
    let sys = RootSystem::A(3);
    let generic = Weight::new(vec![qq(1, 7), qq(3, 7), qq(6, 7)]);
    assert!(sys.is_generic(&generic).unwrap());
    // An integral pairing on any positive root breaks genericity.
    let degenerate = Weight::new(vec![qq(1, 7), qq(1, 7), qq(6, 7)]);
    assert!(!sys.is_generic(&degenerate).unwrap());
    assert!(!sys.same_alcove(&generic, &degenerate).unwrap());

    // Nudging within the open alcove keeps all ceilings; crossing a wall
    // changes one.
    let nudged = Weight::new(vec![qq(2, 13), qq(5, 13), qq(11, 13)]);
    assert!(sys.same_alcove(&generic, &nudged).unwrap());
    let crossed = Weight::new(vec![qq(3, 7), qq(1, 7), qq(6, 7)]);
    assert!(sys.is_generic(&crossed).unwrap());
    assert!(!sys.same_alcove(&generic, &crossed).unwrap());

    // Alcove membership is invariant under integral translation of both
    // arguments but not of one alone.
    let shift = Weight::new(vec![qi(2), qi(0), qi(0)]);
    assert!(sys
        .same_alcove(&generic.add(&shift), &nudged.add(&shift))
        .unwrap());
    assert!(!sys.same_alcove(&generic.add(&shift), &nudged).unwrap());
}

#[test]
fn perm_image_matches_basis_action() {
    let sys = RootSystem::A(4);
    for w in sys.elements().unwrap() {
        for i in 1..=4usize {
            let mut basis = vec![0i64; 4];
            basis[i - 1] = 1;
            let image = w.act_ivec(&basis);
            let j = w.perm_image(i);
            let mut expect = vec![0i64; 4];
            expect[j - 1] = 1;
            assert_eq!(image, expect);
        }
    }
}

#[test]
fn parse_and_render_roundtrip() {
    for sys in SYSTEMS {
        for w in sys.elements().unwrap() {
            let rendered = w.render();
            assert_eq!(WeylElement::parse(sys, &rendered).unwrap(), w);
        }
    }
}
