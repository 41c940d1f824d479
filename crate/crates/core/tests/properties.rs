use chowlab::charney::cd_direct;
use chowlab::chow::{hilbert_chain_sum, hilbert_recurrence};
use chowlab::exactalg::BiPoly;
use chowlab::flats::FamilySpec;
use chowlab::permstat::{statistic_sum, Perm, PermClass, Weight};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..20), 0..8).prop_map(|terms| {
        let mut p = BiPoly::zero();
        for (q, t, c) in terms {
            p += &BiPoly::monomial(c, q, t);
        }
        p
    })
}

fn spec() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=6).prop_flat_map(|n| (Just(n), 1..=n))
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_map(a in bipoly(), b in bipoly(), q in -3i64..4, t in -3i64..4) {
        let (q, t) = (BigInt::from(q), BigInt::from(t));
        prop_assert_eq!((&a * &b).eval(&q, &t), a.eval(&q, &t) * b.eval(&q, &t));
        prop_assert_eq!((&a + &b).eval(&q, &t), a.eval(&q, &t) + b.eval(&q, &t));
    }

    #[test]
    fn json_round_trip(a in bipoly()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn vector_space_at_q_one_is_uniform((n, r) in spec()) {
        let v = hilbert_chain_sum(&FamilySpec::vector_space(n, r).unwrap());
        let u = hilbert_chain_sum(&FamilySpec::uniform(n, r).unwrap());
        prop_assert_eq!(v.eval_q(&BigInt::from(1)), u);
    }

    #[test]
    fn series_is_palindromic_with_unit_ends((n, r) in spec()) {
        let h = hilbert_recurrence(&FamilySpec::vector_space(n, r).unwrap());
        prop_assert!(h.is_t_palindromic(r - 1));
        prop_assert_eq!(h.coeff(0, 0), BigInt::from(1));
        prop_assert_eq!(h.coeff(0, r - 1), BigInt::from(1));
    }

    #[test]
    fn cd_is_the_series_at_minus_one((n, r) in spec()) {
        let spec = FamilySpec::vector_space(n, r).unwrap();
        prop_assert_eq!(cd_direct(&spec).unsigned, hilbert_chain_sum(&spec).eval_t(&BigInt::from(-1)));
    }

    #[test]
    fn derangement_part_has_no_fixed_points(images in Just((1u8..=7).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::new(images).unwrap();
        let d = p.derangement_part();
        prop_assert!(d.is_derangement());
        prop_assert_eq!(d.len() + p.stats().fix as usize, p.len());
    }
}

#[test]
fn total_weight_is_n_factorial() {
    let mut fact = BigInt::from(1);
    for n in 1..=6usize {
        fact *= n;
        let s = statistic_sum(PermClass::All(n), Weight::MajExc, 9).unwrap();
        let one = BigInt::from(1);
        assert_eq!(s.eval(&one, &one), fact);
    }
}
