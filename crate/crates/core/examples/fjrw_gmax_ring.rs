//! A-model ring for the maximal group from genus-zero correlators,
//! compared with the Milnor ring of the transpose.

use lg_mirror::a_ring::{gmax_a_ring, verify_mirror_frobenius};
use lg_mirror::potential::parse_potential;

fn main() -> lg_mirror::Result<()> {
    let p = parse_potential("x^3*y+x*y^3")?;
    let pres = gmax_a_ring(&p)?;
    println!("{p}: dim {} (A state space {})", pres.dim, pres.a_space_dim);
    for r in &pres.relations {
        println!("  {}", r.relation);
    }
    for c in &pres.audit {
        let ins: Vec<String> = c.insertions.iter().map(|g| g.to_string()).collect();
        let l: Vec<String> = c.line_degrees.iter().map(|x| x.to_string()).collect();
        println!("  <{}> l = ({}) {:?} -> {}", ins.join(", "), l.join(","), c.axiom, c.value);
    }
    for text in ["x^5", "x^3*y+y^4", "x^3*y+y^3*z+z^3*x", "x^2*y+x*y^2"] {
        let p = parse_potential(text)?;
        match verify_mirror_frobenius(&p) {
            Ok(r) => println!("{p}: isomorphic to Q(W^T) {} (pairing scale {:?})", r.ok(), r.pairing_scale.map(|s| s.to_string())),
            Err(e) => println!("{p}: {e}"),
        }
    }
    Ok(())
}
