//! The 14 exceptional unimodal singularities under strange duality.

use lg_mirror::strange_duality::{verify_strange_duality, RingCheck};

fn main() -> lg_mirror::Result<()> {
    for r in verify_strange_duality()? {
        let ring = match &r.ring {
            RingCheck::Passed => "ring ok".to_string(),
            RingCheck::Failed(m) => format!("ring FAILED {m}"),
            RingCheck::Excluded(m) => format!("ring excluded ({m})"),
        };
        println!(
            "{:<4} W' = {:<20} |det| {:>2} ord J {:>2} poincare {} dual {}  {}",
            r.class,
            r.representative,
            r.det,
            r.order_j,
            r.poincare_equal,
            r.dual_match,
            ring
        );
    }
    Ok(())
}
