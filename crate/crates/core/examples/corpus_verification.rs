//! Run every invariant over a small corpus, in parallel.

use lg_mirror::verify::{verify_corpus, Status};

fn main() {
    let r = verify_corpus(2, 4, true);
    println!("{} potentials, {} (P,G) pairs, {} failing", r.potentials, r.pairs, r.failures);
    let mut skipped = std::collections::BTreeMap::new();
    for rep in &r.reports {
        for c in &rep.checks {
            if c.status == Status::Skip {
                *skipped.entry(c.name.clone()).or_insert(0) += 1;
            }
        }
    }
    println!("skipped checks: {skipped:?}");
}
