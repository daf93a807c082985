use std::collections::BTreeMap;

use lg_mirror::milnor::{atomic_basis_full, MilnorRing, RingElement};
use lg_mirror::potential::{parse_potential, InvertiblePotential};
use lg_mirror::rational::{lcm, Q};
use num_traits::Zero;

// Hilbert series Π (1 - t^{d - w_i}) / (1 - t^{w_i}) with integer weights,
// expanded as a power series and truncated at the socle degree.
fn hilbert(p: &InvertiblePotential) -> BTreeMap<i64, i64> {
    let d = p.charges().iter().fold(1, |l, q| lcm(l, *q.denom()));
    let ws: Vec<i64> = p.charges().iter().map(|q| (q * d).to_integer()).collect();
    let top: i64 = ws.iter().map(|w| d - 2 * w).sum();
    let mut series: BTreeMap<i64, i64> = [(0, 1)].into();
    for &w in &ws {
        let mut next = BTreeMap::new();
        for (e, c) in &series {
            *next.entry(*e).or_insert(0) += c;
            *next.entry(e + d - w).or_insert(0) -= c;
        }
        series = next;
    }
    for &w in &ws {
        let mut next: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in &series {
            let mut k = *e;
            while k <= top {
                *next.entry(k).or_insert(0) += c;
                k += w;
            }
        }
        series = next;
    }
    series.retain(|e, c| *e <= top && *c != 0);
    series
}

fn basis_degrees(r: &MilnorRing) -> BTreeMap<i64, i64> {
    let p = r.potential();
    let d = p.charges().iter().fold(1, |l, q| lcm(l, *q.denom()));
    let mut m = BTreeMap::new();
    for deg in r.degrees() {
        *m.entry((deg * d).to_integer()).or_insert(0) += 1;
    }
    m
}

#[test]
fn hilbert_series_matches_basis() {
    for w in ["x^5", "x^3*y+x*y^5", "x^3*y+y^4", "x^2*z+y^3+z^4", "x^3*y+y^3*z+z^3*x", "x^4*y+y^3*z+z^3"] {
        let p = parse_potential(w).unwrap();
        let r = MilnorRing::new(&p).unwrap();
        assert_eq!(r.mu() as u64, p.milnor_number(), "{w}");
        assert_eq!(basis_degrees(&r), hilbert(&p), "{w}");
    }
}

#[test]
fn hessian_is_top_degree() {
    let p = parse_potential("x^3*y+x*y^5").unwrap();
    let r = MilnorRing::new(&p).unwrap();
    let h = r.hessian_class();
    assert_eq!(h.len(), 1);
    let (i, _) = h.iter().next().unwrap();
    assert_eq!(r.degrees()[*i], p.central_charge());
    // residue pairing is symmetric and nondegenerate
    let m = r.pairing_matrix();
    for a in 0..r.mu() {
        for b in 0..r.mu() {
            assert_eq!(m[a][b], m[b][a]);
        }
    }
    assert_eq!(lg_mirror::rational::rank_q(&m), r.mu());
}

#[test]
fn fermat_normal_forms() {
    let p = parse_potential("x^5").unwrap();
    let r = MilnorRing::new(&p).unwrap();
    assert!(r.nf_monomial(&[4]).is_zero());
    let h = r.hessian_class();
    assert_eq!(h.get(r.index_of(&[3]).unwrap()), Q::from_integer(20.into()));
    let top = RingElement::basis(r.index_of(&[3]).unwrap());
    assert_eq!(r.residue_pairing(&r.one(), &top), Q::new(1.into(), 5.into()));
}

#[test]
fn atomic_basis_literal_equality() {
    for w in ["x^5", "x^3*y+y^4", "x^2*z+y^3+z^4", "x^2*y+y^3*z+z^4"] {
        let r = MilnorRing::new(&parse_potential(w).unwrap()).unwrap();
        let c = r.compare_bases();
        assert!(c.literal_equal && c.atomic_spans, "{w}");
    }
    // loops: count and span only
    let p = parse_potential("x^3*y+x*y^5").unwrap();
    let c = MilnorRing::new(&p).unwrap().compare_bases();
    assert!(c.atomic_spans && !c.literal_equal);
    assert_eq!(atomic_basis_full(&p).len(), 15);
}

#[test]
fn chain_relation_reduces() {
    // in Q(x^3 + x*y^4): y^4 = -3 x^2
    let p = parse_potential("x^3+x*y^4").unwrap();
    let r = MilnorRing::new(&p).unwrap();
    let y4 = r.nf_monomial(&[0, 4]);
    let x2 = r.nf_monomial(&[2, 0]);
    let mut s = y4.clone();
    s.add_scaled(&x2, &Q::from_integer(3.into()));
    assert!(s.iter().all(|(_, c)| c.is_zero()));
    assert!(!y4.is_zero());
}

#[test]
fn chain_atomic_basis() {
    let p = parse_potential("x^3*y+y^4").unwrap();
    let mut got: Vec<Vec<u32>> = atomic_basis_full(&p);
    got.sort();
    let mut want: Vec<Vec<u32>> = (0..2).flat_map(|a| (0..4).map(move |b| vec![a, b])).collect();
    want.push(vec![2, 0]);
    want.sort();
    assert_eq!(got, want);
}
