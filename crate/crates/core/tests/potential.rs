use lg_mirror::potential::*;
use lg_mirror::rational::rat;
use lg_mirror::Error;

fn charge(p: &InvertiblePotential, v: &str) -> lg_mirror::rational::Rat {
    p.charges()[p.index_of(v).unwrap()]
}

// A·q = 1 checked by direct multiplication, independent of the inverse.
fn assert_solves(p: &InvertiblePotential) {
    for row in p.exponents() {
        let s = row.iter().zip(p.charges()).fold(rat(0, 1), |s, (&a, q)| s + q * a as i64);
        assert_eq!(s, rat(1, 1), "{p}");
    }
}

#[test]
fn loop_charges_and_mu() {
    let p = parse_potential("x^3*y+x*y^5").unwrap();
    assert_eq!(charge(&p, "x"), rat(2, 7));
    assert_eq!(charge(&p, "y"), rat(1, 7));
    assert_eq!(p.det().abs(), 14);
    assert_eq!(p.milnor_number(), 15);
    assert_eq!(p.central_charge(), rat(8, 7));
    assert_solves(&p);
    assert_eq!(p.blocks().len(), 1);
    assert_eq!(p.blocks()[0].kind, BlockKind::Loop);
}

#[test]
fn chain_charges() {
    let p = parse_potential("x^3*y+y^4").unwrap();
    assert_eq!(p.charges(), &[rat(1, 4), rat(1, 4)]);
    assert_eq!(p.milnor_number(), 9);
    let b = &p.blocks()[0];
    assert_eq!(b.kind, BlockKind::Chain);
    assert_eq!(b.exponents, vec![3, 4]);
    assert_eq!(p.transpose().to_string(), "x^3+x*y^4");
    assert_eq!(p.transpose().milnor_number(), 10);
}

#[test]
fn q10_charges_by_name() {
    let p = parse_potential("x^2*z+y^3+z^4").unwrap();
    assert_eq!(charge(&p, "x"), rat(3, 8));
    assert_eq!(charge(&p, "y"), rat(1, 3));
    assert_eq!(charge(&p, "z"), rat(1, 4));
    assert_eq!(p.vars(), &["x", "y", "z"]);
    assert_solves(&p);
    let kinds: Vec<BlockKind> = p.blocks().iter().map(|b| b.kind).collect();
    assert_eq!(kinds, vec![BlockKind::Chain, BlockKind::Fermat]);
    let chain = &p.blocks()[0];
    let names: Vec<&str> = chain.vars.iter().map(|&j| p.vars()[j].as_str()).collect();
    assert_eq!(names, vec!["x", "z"]);
    assert_eq!(chain.exponents, vec![2, 4]);
}

#[test]
fn transpose_of_unordered_input() {
    let p = parse_potential("y^3+x^2*z+z^4").unwrap();
    assert_eq!(p.vars(), ["y", "x", "z"]);
    assert_eq!(p.transpose().to_string(), "y^3+x^2+x*z^4");
    assert_eq!(p.transpose().transpose(), p);
}

#[test]
fn coefficients_are_dropped() {
    let a = parse_potential("2*x^3*y+7*x*y^5").unwrap();
    let b = parse_potential("x^3*y+x*y^5").unwrap();
    assert_eq!(a, b);
}

#[test]
fn json_input() {
    let p = parse_any(r#"{"vars":["x","y"],"exponents":[[3,1],[1,5]]}"#).unwrap();
    assert_eq!(p.to_string(), "x^3*y+x*y^5");
}

#[test]
fn rejected_inputs() {
    assert!(matches!(parse_potential("x^2+y^2+x*y"), Err(Error::NonSquare { .. })));
    assert!(matches!(parse_potential("x^2*y^2+x^2*y^2"), Err(Error::Parse(_))));
    assert!(matches!(parse_potential("x^2+y"), Err(Error::ChargeOutOfRange(_))));
    assert!(parse_potential("x^2*y^2+x*y").is_err());
    assert!(matches!(parse_potential("x^0"), Err(Error::Parse(_))));
    assert!(matches!(parse_potential(""), Err(Error::Parse(_))));
    assert!(parse_potential("x^2*y+x*y^2+x*y^2").is_err());
}

#[test]
fn direct_sum_and_restrict() {
    let a = loop_potential(&[3, 3]).unwrap();
    let b = fermat(4).unwrap();
    let s = direct_sum(&a, &b).unwrap();
    assert_eq!(s.milnor_number(), a.milnor_number() * b.milnor_number());
    assert_eq!(s.blocks().len(), 2);
    let r = s.restrict(&[2]).unwrap();
    assert_eq!(r.to_string(), "z^4");
    assert!(s.restrict(&[0]).is_err());
    assert_eq!(s.restrict(&[]).unwrap().n_vars(), 0);
}

#[test]
fn chain_constructor_orders_head_to_terminal() {
    let p = chain_potential(&[2, 3, 4]).unwrap();
    assert_eq!(p.to_string(), "x^2*y+y^3*z+z^4");
    let b = &p.blocks()[0];
    assert_eq!(b.vars, vec![0, 1, 2]);
}
