//! State spaces of both models and the mirror map for the loop example.

use lg_mirror::potential::parse_potential;
use lg_mirror::state_spaces::{mirror_map, sum_diff};
use lg_mirror::symmetry::parse_group;

fn main() -> lg_mirror::Result<()> {
    for text in ["x^3*y+x*y^5", "x^3*y+y^4"] {
        let p = parse_potential(text)?;
        let g = parse_group(&p, "J")?;
        let t = p.transpose();
        let r = mirror_map(&p, &g)?;
        println!("{p} with <J>: {} A elements, {} B elements", r.a_count, r.b_count);
        for pair in &r.pairs {
            let (sum, diff) = sum_diff(&pair.a_degree);
            println!("  {:<22} -> {:<22} sum {sum:<5} diff {diff}", pair.b.label(t.vars()), pair.a.label(p.vars()));
        }
        println!("  bijective {} degrees equal {}", r.bijective, r.degrees_equal);
    }
    Ok(())
}
