use proptest::prelude::*;

use cliffordt::{evaluate, parse, Circuit, Gate, Normalizer, RingElem};

fn ring() -> impl Strategy<Value = RingElem> {
    (prop::array::uniform4(-50i64..50), 0u32..6).prop_map(|(c, k)| RingElem::new(c, k))
}

fn circuit(max: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(prop::sample::select(Gate::ALL.to_vec()), 0..max).prop_map(Circuit::new)
}

proptest! {
    #[test]
    fn ring_laws(a in ring(), b in ring(), c in ring()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn canonical_form_is_stable(a in ring()) {
        let once = a.clone().canonicalize();
        prop_assert_eq!(once.clone().canonicalize(), once.clone());
        prop_assert_eq!(once, a);
    }

    #[test]
    fn sqrt2_round_trip(a in ring()) {
        prop_assert_eq!(&(&a * &RingElem::sqrt2()) * &RingElem::inv_sqrt2(), a);
    }

    #[test]
    fn normalize_is_sound_and_idempotent(c in circuit(80)) {
        let n = Normalizer::standard();
        let nf = n.normalize(&c);
        prop_assert!(nf.is_well_formed());
        prop_assert_eq!(n.nf_matrix(&nf), evaluate(&c));
        let rendered = n.render(&nf);
        prop_assert_eq!(n.normalize(&parse(&rendered).unwrap()), nf.clone());
        prop_assert!(nf.t_count() <= c.t_symbols());
    }

    #[test]
    fn concatenation_respects_equivalence(a in circuit(30), b in circuit(30)) {
        let n = Normalizer::standard();
        // Replacing a factor by its normal form leaves the product unchanged.
        let a_nf = n.nf_circuit(&n.normalize(&a));
        let join = |x: &Circuit, y: &Circuit| Circuit::new([x.gates(), y.gates()].concat());
        prop_assert_eq!(n.normalize(&join(&a, &b)), n.normalize(&join(&a_nf, &b)));
    }

    #[test]
    fn inverse_undoes(c in circuit(40)) {
        let n = Normalizer::standard();
        let inv = n.inverse_circuit(&c);
        let both = Circuit::new([c.gates(), inv.gates()].concat());
        prop_assert_eq!(n.normalize(&both), n.normalize(&Circuit::default()));
        prop_assert_eq!(n.t_count(&inv), n.t_count(&c));
    }
}
