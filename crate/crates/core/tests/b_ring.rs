use lg_mirror::b_ring::{b_frobenius_table, cocycle_gamma, milnor_table};
use lg_mirror::milnor::MilnorRing;
use lg_mirror::potential::parse_potential;
use lg_mirror::rational::q_int;
use lg_mirror::strange_duality::u12_check;
use lg_mirror::symmetry::{enumerate_gmax, parse_group, DiagonalGroup};

#[test]
fn u12_relations() {
    let r = u12_check().unwrap();
    assert_eq!(r.dim, 12);
    assert!(r.x_squared_zero && r.y_squared_zero && r.z_cubed_zero);
    assert!(r.xy_nonzero);
    assert!(r.isomorphic);
    assert!(r.axioms);
}

#[test]
fn trivial_group_gives_milnor_ring() {
    for w in ["x^5", "x^3*y+y^4", "x^2*y+x*y^3"] {
        let p = parse_potential(w).unwrap();
        let t = b_frobenius_table(&p, &DiagonalGroup::generated_by(p.n_vars(), &[])).unwrap();
        let m = milnor_table(&MilnorRing::new(&p).unwrap());
        assert_eq!(t.dim(), m.dim());
        assert_eq!(t.products, m.products, "{w}");
        assert_eq!(t.pairing, m.pairing, "{w}");
    }
}

#[test]
fn fermat_milnor_table_by_hand() {
    // x^a · x^b = x^{a+b} when a + b ≤ 3, zero otherwise.
    let p = parse_potential("x^5").unwrap();
    let r = MilnorRing::new(&p).unwrap();
    let t = milnor_table(&r);
    for a in 0..4u32 {
        for b in 0..4u32 {
            let prod = &t.products[r.index_of(&[a]).unwrap()][r.index_of(&[b]).unwrap()];
            if a + b <= 3 {
                assert_eq!(prod.len(), 1);
                assert_eq!(prod.get(&r.index_of(&[a + b]).unwrap()), Some(&q_int(1)));
            } else {
                assert!(prod.is_empty());
            }
        }
    }
}

#[test]
fn sl_tables_satisfy_axioms() {
    for w in ["x^3+y^3+z^4", "x^3*y+x*y^5", "x^2*y+y^2*z+z^3*x", "x^3*y+y^3*z+z^4", "x^4+y^4"] {
        let p = parse_potential(w).unwrap();
        let sl = enumerate_gmax(&p).sl_part();
        let t = b_frobenius_table(&p, &sl).unwrap();
        t.verify().unwrap_or_else(|e| panic!("{w}: {e}"));
        assert!(t.check_commutative());
        assert!(t.pairing_nondegenerate());
    }
}

#[test]
fn non_sl_group_rejected() {
    let p = parse_potential("x^3+y^3").unwrap();
    let g = parse_group(&p, "J").unwrap();
    assert!(b_frobenius_table(&p, &g).is_err());
}

#[test]
fn cocycle_vanishes_without_spanning_fixed_loci() {
    let p = parse_potential("x^3+y^3+z^4").unwrap();
    let g = parse_group(&p, "gens:1/3,2/3,0").unwrap();
    let x = g.generators()[0].clone();
    assert!(cocycle_gamma(&p, &x, &x).unwrap().is_zero());
    let inv = x.inverse();
    let c = cocycle_gamma(&p, &x, &inv).unwrap();
    assert!(!c.is_zero());
    assert!(c.sector.is_identity());
}

#[test]
fn u12_space_contains_listed_elements() {
    let p = parse_potential("x^3+y^3+z^4").unwrap();
    let g = parse_group(&p, "gens:1/3,2/3,0").unwrap();
    let s = lg_mirror::state_spaces::b_state_space(&p, &g).unwrap();
    assert_eq!(s.len(), 12);
    let labels: Vec<String> = s.elements.iter().map(|e| e.label(p.vars())).collect();
    for want in [
        "1|(0,0,0)",
        "z|(0,0,0)",
        "z^2|(0,0,0)",
        "x*y|(0,0,0)",
        "x*y*z|(0,0,0)",
        "x*y*z^2|(0,0,0)",
        "1|(1/3,2/3,0)",
        "1|(2/3,1/3,0)",
        "z^2|(2/3,1/3,0)",
    ] {
        assert!(labels.iter().any(|l| l == want), "{want} missing from {labels:?}");
    }
}
