//! Parse a few potentials, print charges, central charge and the atomic
//! decomposition.

use lg_mirror::potential::parse_potential;

fn main() -> lg_mirror::Result<()> {
    for text in ["x^5", "x^3*y+x*y^5", "x^3*y+y^4", "x^2*z+y^3+z^4", "x^2*y+y^3*z+x*z^2"] {
        let p = parse_potential(text)?;
        let r = p.report();
        let charges: Vec<String> = p.vars().iter().zip(&r.charges).map(|(v, q)| format!("{v}:{q}")).collect();
        println!("{p}");
        println!("  det {}  charges [{}]  c-hat {}  mu {}", r.det, charges.join(" "), r.central_charge, r.milnor_number);
        for b in &r.blocks {
            let vars: Vec<&str> = b.vars.iter().map(|&j| p.vars()[j].as_str()).collect();
            println!("  {:?} {:?} exponents {:?}", b.kind, vars, b.exponents);
        }
        println!("  transpose {}", p.transpose());
    }
    // rejected inputs
    for bad in ["x^2+y^2+x*y", "x^3*y", "x^2+y"] {
        println!("{bad}: {}", parse_potential(bad).unwrap_err());
    }
    Ok(())
}
