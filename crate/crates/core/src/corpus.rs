//! Test corpus: atomic potentials within bounds, two-block sums, and the
//! groups attached to each.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::potential::{chain_potential, direct_sum, fermat, loop_potential, InvertiblePotential};
use crate::symmetry::{enumerate_gmax, exponential_grading, j_group, DiagonalGroup};

#[derive(Debug, Clone, Serialize)]
pub struct NamedGroup {
    pub name: String,
    pub group: DiagonalGroup,
}

fn tuples(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (lo..=hi).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn is_min_rotation(a: &[u32]) -> bool {
    (1..a.len()).all(|k| {
        let r: Vec<u32> = a[k..].iter().chain(&a[..k]).copied().collect();
        a <= r.as_slice()
    })
}

/// Fermat, loop and chain potentials with at most `max_vars` variables and
/// exponents in 2..=max_exponent; charges > 1/2 are filtered out.
pub fn atomic_potentials(max_vars: usize, max_exponent: u32) -> Vec<InvertiblePotential> {
    let mut out = Vec::new();
    if max_vars == 0 || max_exponent < 2 {
        return out;
    }
    for a in 2..=max_exponent {
        out.extend(fermat(a));
    }
    for n in 2..=max_vars {
        for a in tuples(n, 2, max_exponent) {
            if is_min_rotation(&a) {
                out.extend(loop_potential(&a));
            }
        }
    }
    for n in 2..=max_vars {
        for a in tuples(n, 2, max_exponent) {
            out.extend(chain_potential(&a));
        }
    }
    out
}

/// Atomic potentials plus unordered two-block sums within the variable bound.
pub fn enumerate_potentials(max_vars: usize, max_exponent: u32) -> Vec<InvertiblePotential> {
    let atoms = atomic_potentials(max_vars, max_exponent);
    let mut out = atoms.clone();
    for i in 0..atoms.len() {
        for j in i..atoms.len() {
            if atoms[i].n_vars() + atoms[j].n_vars() <= max_vars {
                out.extend(direct_sum(&atoms[i], &atoms[j]));
            }
        }
    }
    out
}

/// ⟨J⟩, G^max, cyclic subgroups containing J, and SL ∩ G^max, deduplicated.
pub fn corpus_groups(p: &InvertiblePotential) -> Vec<NamedGroup> {
    let gmax = enumerate_gmax(p);
    let j = exponential_grading(p);
    let mut seen: BTreeSet<Vec<crate::symmetry::GroupElement>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |name: String, g: DiagonalGroup| {
        if seen.insert(g.elements().to_vec()) {
            out.push(NamedGroup { name, group: g });
        }
    };
    push("J".into(), j_group(p));
    push("gmax".into(), gmax.clone());
    for g in gmax.elements() {
        let c = DiagonalGroup::generated_by(p.n_vars(), std::slice::from_ref(g));
        if c.contains(&j) {
            push(format!("cyclic:{g}"), c);
        }
    }
    push("SL".into(), gmax.sl_part());
    out
}

pub fn enumerate_corpus(
    max_vars: usize,
    max_exponent: u32,
) -> impl Iterator<Item = (InvertiblePotential, NamedGroup)> {
    enumerate_potentials(max_vars, max_exponent)
        .into_iter()
        .flat_map(|p| corpus_groups(&p).into_iter().map(move |g| (p.clone(), g)))
}
