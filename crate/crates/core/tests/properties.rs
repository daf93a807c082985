use lg_mirror::b_ring::milnor_table;
use lg_mirror::milnor::MilnorRing;
use lg_mirror::potential::{chain_potential, direct_sum, fermat, loop_potential, InvertiblePotential};
use lg_mirror::rational::Rat;
use lg_mirror::state_spaces::{mirror_map, projector_rank};
use lg_mirror::symmetry::{dual_group, enumerate_gmax, exponential_grading, DiagonalGroup};
use lg_mirror::verify::invariant_count;
use num_traits::One;
use proptest::prelude::*;

fn atomic() -> impl Strategy<Value = Option<InvertiblePotential>> {
    prop_oneof![
        (2u32..=7).prop_map(|a| fermat(a).ok()),
        prop::collection::vec(2u32..=4, 2..=3).prop_map(|a| loop_potential(&a).ok()),
        prop::collection::vec(2u32..=4, 2..=3).prop_map(|a| chain_potential(&a).ok()),
    ]
}

fn potential() -> impl Strategy<Value = Option<InvertiblePotential>> {
    prop_oneof![
        3 => atomic(),
        1 => (atomic(), 2u32..=5).prop_map(|(p, a)| p.and_then(|p| direct_sum(&p, &fermat(a).ok()?).ok())),
    ]
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn charges_solve_exponent_system(p in potential()) {
        let Some(p) = p else { return Ok(()) };
        for row in p.exponents() {
            let s: Rat = row.iter().zip(p.charges()).map(|(&e, q)| q * e as i64).sum();
            prop_assert_eq!(s, Rat::one());
        }
    }

    #[test]
    fn transpose_is_involution(p in potential()) {
        let Some(p) = p else { return Ok(()) };
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().det(), p.det());
    }

    #[test]
    fn milnor_basis_count(p in potential()) {
        let Some(p) = p else { return Ok(()) };
        let prod: Rat = p.charges().iter().map(|q| Rat::one() / q - Rat::one()).product();
        let r = MilnorRing::new(&p).unwrap();
        prop_assert_eq!(Rat::from_integer(r.mu() as i64), prod);
        prop_assert_eq!(r.mu() as u64, p.milnor_number());
    }

    #[test]
    fn milnor_table_is_frobenius(p in atomic()) {
        let Some(p) = p else { return Ok(()) };
        prop_assume!(p.milnor_number() <= 40);
        let t = milnor_table(&MilnorRing::new(&p).unwrap());
        prop_assert!(t.check_associativity().is_none());
        prop_assert!(t.check_frobenius().is_none());
        prop_assert!(t.check_commutative());
        prop_assert!(t.pairing_nondegenerate());
    }

    #[test]
    fn cyclic_groups_dualize(p in potential(), k in any::<prop::sample::Index>()) {
        let Some(p) = p else { return Ok(()) };
        let gmax = enumerate_gmax(&p);
        let g = k.get(gmax.elements()).clone();
        let grp = DiagonalGroup::generated_by(p.n_vars(), &[g]);
        let gt = dual_group(&p, &grp);
        let back = dual_group(&p.transpose(), &gt);
        prop_assert_eq!(back.elements(), grp.elements());
        prop_assert_eq!((grp.order() * gt.order()) as i64, p.det().abs());
        for h in grp.elements() {
            prop_assert_eq!(projector_rank(&p, &grp, h).unwrap(), invariant_count(&p, &grp, h).unwrap());
        }
    }

    #[test]
    fn mirror_map_on_groups_containing_j(p in potential(), k in any::<prop::sample::Index>()) {
        let Some(p) = p else { return Ok(()) };
        let gmax = enumerate_gmax(&p);
        let g = k.get(gmax.elements()).clone();
        let grp = DiagonalGroup::generated_by(p.n_vars(), &[g, exponential_grading(&p)]);
        let r = mirror_map(&p, &grp).unwrap();
        prop_assert!(r.bijective);
        prop_assert!(r.degrees_equal);
    }
}
