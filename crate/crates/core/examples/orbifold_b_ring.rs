//! Orbifold B-model Frobenius algebra of U12 with its Z/3 symmetry.

use lg_mirror::b_ring::b_frobenius_table;
use lg_mirror::potential::parse_potential;
use lg_mirror::strange_duality::u12_check;
use lg_mirror::symmetry::parse_group;

fn main() -> lg_mirror::Result<()> {
    let p = parse_potential("x^3+y^3+z^4")?;
    let g = parse_group(&p, "gens:1/3,2/3,0")?;
    let t = b_frobenius_table(&p, &g)?;
    println!("B-model of {p} / Z3: dim {}", t.dim());
    for line in t.relations().iter().take(20) {
        println!("  {line}");
    }
    t.verify()?;
    println!("associativity, Frobenius identity, grading: ok");
    let u = u12_check()?;
    println!(
        "X^2 = 0: {}  Y^2 = 0: {}  Z^3 = 0: {}  XY != 0: {}  iso to C[x,y,z]/(x^2,y^2,z^3): {}",
        u.x_squared_zero, u.y_squared_zero, u.z_cubed_zero, u.xy_nonzero, u.isomorphic
    );
    Ok(())
}
