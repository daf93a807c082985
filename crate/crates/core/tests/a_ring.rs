use lg_mirror::a_ring::{
    check_hypotheses, evaluate_correlator, gmax_a_ring, line_bundle_degrees, pairing_rank, select_output_sector,
    verify_mirror_frobenius, Axiom,
};
use lg_mirror::potential::{parse_potential, InvertiblePotential};
use lg_mirror::rational::{q_int, rat};
use lg_mirror::symmetry::{enumerate_gmax, exponential_grading, GroupElement};
use lg_mirror::Error;

fn ns_elements(p: &InvertiblePotential) -> Vec<GroupElement> {
    enumerate_gmax(p).elements().iter().filter(|g| g.fixed_indices().is_empty()).cloned().collect()
}

#[test]
fn fermat_line_degrees() {
    let p = parse_potential("x^5").unwrap();
    let j = exponential_grading(&p);
    assert_eq!(line_bundle_degrees(&p, 0, &[j.clone(), j.clone(), j.clone()]), vec![rat(-2, 5)]);
    assert_eq!(line_bundle_degrees(&p, 0, &[j.clone(), j.clone(), j.pow(4)]), vec![rat(-1, 1)]);
    let c = evaluate_correlator(&p, &[j.pow(2), j.pow(2), j.pow(2)]).unwrap();
    assert_eq!(c.axiom, Axiom::Concavity);
    assert_eq!(c.value, q_int(1));
    let c = evaluate_correlator(&p, &[j.clone(), j.clone(), j.clone()]).unwrap();
    assert_eq!(c.axiom, Axiom::IntegerDegrees);
    assert_eq!(c.value, q_int(0));
}

#[test]
fn output_sector_is_j_over_inputs() {
    let p = parse_potential("x^5").unwrap();
    let j = exponential_grading(&p);
    assert_eq!(select_output_sector(&p, &j, &j), Some(j.pow(4)));
    let p = parse_potential("x^3*y+y^4").unwrap();
    for a in ns_elements(&p) {
        for b in ns_elements(&p) {
            let c = select_output_sector(&p, &a, &b).unwrap();
            assert!(a.mul(&b).mul(&c) == exponential_grading(&p));
        }
    }
}

fn four_point_values(p: &InvertiblePotential) -> Vec<(Vec<i64>, lg_mirror::rational::Q)> {
    let ns = ns_elements(p);
    let mut out = Vec::new();
    for a in 0..ns.len() {
        for b in a..ns.len() {
            for c in b..ns.len() {
                for d in c..ns.len() {
                    let ins = [ns[a].clone(), ns[b].clone(), ns[c].clone(), ns[d].clone()];
                    if let Ok(corr) = evaluate_correlator(p, &ins) {
                        if corr.axiom == Axiom::IndexZero && corr.line_degrees.iter().any(|l| *l != rat(-1, 1)) {
                            let l = corr.line_degrees.iter().map(|x| x.to_integer()).collect();
                            out.push((l, corr.value));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn two_variable_loop_four_point() {
    // dW/dy = x^3 + 3xy^2 and dW/dx = 3x^2y + y^3, so both patterns give -3.
    let p = parse_potential("x^3*y+x*y^3").unwrap();
    let vals = four_point_values(&p);
    assert!(!vals.is_empty());
    for (l, v) in vals {
        assert!(l == vec![0, -2] || l == vec![-2, 0]);
        assert_eq!(v, q_int(-3));
    }
}

#[test]
fn chain_four_point() {
    // dW/dy = x^3 + 4y^3 gives -3 for l = (0,-2); dW/dx = 3x^2y gives -1 for l = (-2,0).
    let p = parse_potential("x^3*y+y^4").unwrap();
    let vals = four_point_values(&p);
    assert!(!vals.is_empty());
    for (l, v) in vals {
        match l.as_slice() {
            [0, -2] => assert_eq!(v, q_int(-3)),
            [-2, 0] => assert_eq!(v, q_int(-1)),
            other => panic!("unexpected pattern {other:?}"),
        }
    }
}

#[test]
fn ramond_insertion_unsupported() {
    let p = parse_potential("x^3+y^3").unwrap();
    let id = GroupElement::identity(2);
    let j = exponential_grading(&p);
    assert!(matches!(evaluate_correlator(&p, &[id, j.clone(), j]), Err(Error::Unsupported(_))));
}

#[test]
fn hypotheses() {
    for w in ["x^2*y+x*y^2", "x^2", "x^3*y+y^2"] {
        let p = parse_potential(w).unwrap();
        assert!(check_hypotheses(&p).is_err(), "{w}");
        assert!(matches!(gmax_a_ring(&p), Err(Error::Unsupported(_))), "{w}");
    }
    for w in ["x^3", "x^3*y+x*y^3", "x^2*y+y^3", "x^2*y+y^3*z+z^3"] {
        check_hypotheses(&parse_potential(w).unwrap()).unwrap();
    }
}

#[test]
fn fermat_rings() {
    for a in 3..=8 {
        let p = parse_potential(&format!("x^{a}")).unwrap();
        let r = verify_mirror_frobenius(&p).unwrap();
        assert!(r.ok(), "x^{a}: {:?}", r.mismatch);
        assert_eq!(r.dim, (a - 1) as usize);
    }
}

#[test]
fn presentation_and_audit() {
    let p = parse_potential("x^3*y+x*y^5").unwrap();
    let pres = gmax_a_ring(&p).unwrap();
    assert_eq!(pres.dim, 15);
    assert_eq!(pres.dim, pres.a_space_dim);
    assert_eq!(pres.generators.len(), 2);
    assert!(pres.audit.iter().filter(|c| c.value != q_int(0)).all(|c| c.has_standard_pattern()));
    assert!(!pres.audit.is_empty());
    assert_eq!(pairing_rank(&pres.table), pres.dim);
    pres.table.verify().unwrap();
    assert!(pres.relations.iter().all(|r| r.verified_directly != Some(false)));
}

#[test]
fn matches_transpose_milnor_ring() {
    for w in ["x^3*y+x*y^5", "x^3*y+y^4", "x^3*y+y^3*z+z^3*x", "x^2*y+y^3*z+z^3", "x^3+y^3+z^4"] {
        let p = parse_potential(w).unwrap();
        let r = verify_mirror_frobenius(&p).unwrap();
        assert!(r.ok(), "{w}: {:?}", r.mismatch);
        assert!(r.pairing_scale.is_some());
        assert_eq!(r.dim as u64, p.transpose().milnor_number());
    }
}

#[test]
fn direct_sum_dimension_multiplies() {
    let a = parse_potential("x^3*y+y^4").unwrap();
    let b = parse_potential("z^5").unwrap();
    let s = lg_mirror::potential::direct_sum(&a, &b).unwrap();
    let ra = verify_mirror_frobenius(&a).unwrap();
    let rb = verify_mirror_frobenius(&b).unwrap();
    let rs = verify_mirror_frobenius(&s).unwrap();
    assert!(rs.ok());
    assert_eq!(rs.dim, ra.dim * rb.dim);
}
