//! Maximal symmetry groups and the transpose dual group.

use lg_mirror::potential::parse_potential;
use lg_mirror::symmetry::{dual_group, enumerate_gmax, exponential_grading, parse_group};

fn main() -> lg_mirror::Result<()> {
    for text in ["x^3*y+x*y^5", "x^3*y+y^4", "x^5", "x^3+y^3+z^4"] {
        let p = parse_potential(text)?;
        let gmax = enumerate_gmax(&p);
        println!("{p}: |Gmax| = {}, |det| = {}, J = {}", gmax.order(), p.det().abs(), exponential_grading(&p));
        for spec in ["id", "J", "SL", "gmax"] {
            let g = parse_group(&p, spec)?;
            let gt = dual_group(&p, &g);
            let back = dual_group(&p.transpose(), &gt);
            println!(
                "  G = {spec:<4} |G| = {:<3} |G^T| = {:<3} product {:<3} (G^T)^T = G: {}",
                g.order(),
                gt.order(),
                g.order() * gt.order(),
                back.elements() == g.elements()
            );
        }
    }
    Ok(())
}
