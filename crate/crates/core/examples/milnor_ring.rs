//! Milnor ring bases, normal forms, the Hessian and the residue pairing.

use lg_mirror::milnor::{MilnorRing, RingElement};
use lg_mirror::potential::{monomial_string, parse_potential};

fn main() -> lg_mirror::Result<()> {
    let p = parse_potential("x^3*y+y^4")?;
    let r = MilnorRing::new(&p)?;
    let names = p.vars();
    let basis: Vec<String> = r.basis().iter().map(|e| monomial_string(names, e)).collect();
    println!("{p}: mu = {}", r.mu());
    println!("  basis {}", basis.join(", "));
    println!("  degrees {:?}", r.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>());
    let hess = r.hessian_class();
    for (i, c) in hess.iter() {
        println!("  hess = {c} * {}", basis[*i]);
    }
    // y^4 reduces through the Jacobian relations
    let y4 = r.nf_monomial(&[0, 4]);
    let terms: Vec<String> = y4.iter().map(|(i, c)| format!("{c}*{}", basis[*i])).collect();
    println!("  y^4 = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    let top = RingElement::basis(r.top_index());
    println!("  <1, top> = {}", r.residue_pairing(&r.one(), &top));
    let c = r.compare_bases();
    println!("  atomic basis spans {}, equals Groebner standard monomials {}", c.atomic_spans, c.literal_equal);
    for text in ["x^3*y+x*y^5", "x^5*y+y^5*z+z^5"] {
        let q = parse_potential(text)?;
        let c = MilnorRing::new(&q)?.compare_bases();
        println!("{q}: mu {} atomic {} groebner {} literal {}", c.mu, c.atomic_count, c.groebner_count, c.literal_equal);
    }
    Ok(())
}
