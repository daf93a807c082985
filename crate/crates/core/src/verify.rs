//! Batch verification of module invariants over the corpus.

use rayon::prelude::*;
use serde::Serialize;

use crate::a_ring::verify_mirror_frobenius;
use crate::b_ring::b_frobenius_table;
use crate::corpus::{corpus_groups, enumerate_potentials, NamedGroup};
use crate::error::{Error, Result};
use crate::milnor::MilnorRing;
use crate::potential::{BlockKind, InvertiblePotential};
use crate::state_spaces::{ab_degree_relation_check, mirror_map, projector_rank, sector_basis, total_mirror_map, twisted_invariant};
use crate::symmetry::{dual_group, enumerate_gmax, is_admissible, DiagonalGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, ok: bool, detail: Option<String>) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, detail }
    }

    fn skip(name: &str, why: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Skip, detail: Some(why.into()) }
    }

    fn from_result(name: &str, r: Result<bool>) -> Check {
        match r {
            Ok(ok) => Check::new(name, ok, None),
            Err(Error::Unsupported(m)) => Check::skip(name, m),
            Err(e) => Check::new(name, false, Some(e.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Subject {
    pub potential: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

fn has_loop(p: &InvertiblePotential) -> bool {
    p.blocks().iter().any(|b| b.kind == BlockKind::Loop)
}

/// Checks that depend on the potential only.
pub fn verify_potential(p: &InvertiblePotential, with_a_ring: bool) -> VerificationReport {
    let mut checks = Vec::new();
    match MilnorRing::cached(p) {
        Ok(r) => {
            let c = r.compare_bases();
            checks.push(Check::new(
                "milnor_dimension",
                c.mu == r.mu() as u64 && c.atomic_count == r.mu() && c.groebner_count == r.mu(),
                Some(format!("mu = {}", c.mu)),
            ));
            checks.push(Check::new("atomic_basis_spans", c.atomic_spans, None));
            if c.literal_equal {
                checks.push(Check::new("atomic_equals_groebner", true, None));
            } else if has_loop(p) {
                checks.push(Check::skip("atomic_equals_groebner", "loop block: no term order has the atomic basis as its standard monomials"));
            } else {
                checks.push(Check::new("atomic_equals_groebner", false, None));
            }
        }
        Err(e) => checks.push(Check::new("milnor_dimension", false, Some(e.to_string()))),
    }
    let trivial = DiagonalGroup::generated_by(p.n_vars(), &[]);
    checks.push(Check::new(
        "dual_of_trivial_is_gmax",
        dual_group(p, &trivial).elements() == enumerate_gmax(&p.transpose()).elements(),
        None,
    ));
    checks.push(Check::from_result("total_mirror_map", total_mirror_map(p).map(|r| r.ok())));
    if with_a_ring {
        checks.push(match verify_mirror_frobenius(p) {
            Ok(r) => Check::new("gmax_frobenius", r.ok(), r.mismatch.clone()),
            Err(Error::Unsupported(m)) => Check::skip("gmax_frobenius", m),
            Err(e) => Check::new("gmax_frobenius", false, Some(e.to_string())),
        });
    }
    VerificationReport { subject: Subject { potential: p.to_string(), group: None }, checks }
}

/// Number of twisted-invariant basis elements of sector `h`.
pub fn invariant_count(p: &InvertiblePotential, g: &DiagonalGroup, h: &crate::symmetry::GroupElement) -> Result<usize> {
    let fixed = h.fixed_indices();
    Ok(sector_basis(p, h)?
        .iter()
        .filter(|m| g.elements().iter().all(|x| twisted_invariant(x, m, &fixed)))
        .count())
}

/// Checks for one (potential, group) pair.
pub fn verify_pair(p: &InvertiblePotential, g: &NamedGroup) -> VerificationReport {
    let grp = &g.group;
    let mut checks = Vec::new();
    let gt = dual_group(p, grp);
    checks.push(Check::new(
        "dual_involution",
        dual_group(&p.transpose(), &gt).elements() == grp.elements(),
        None,
    ));
    let prod = grp.order() * gt.order();
    checks.push(Check::new(
        "order_product_is_det",
        prod as i64 == p.det().abs(),
        Some(format!("{} * {} vs {}", grp.order(), gt.order(), p.det().abs())),
    ));
    if is_admissible(p, grp) {
        checks.push(Check::from_result("mirror_map", mirror_map(p, grp).map(|r| r.ok())));
    } else {
        checks.push(Check::skip("mirror_map", "J not in G"));
    }
    checks.push(Check::from_result("degree_relation", ab_degree_relation_check(p, grp)));
    let projector = grp.elements().iter().try_fold(true, |ok, h| {
        Ok::<bool, Error>(ok && projector_rank(p, grp, h)? == invariant_count(p, grp, h)?)
    });
    checks.push(Check::from_result("projector_rank", projector));
    if grp.is_sl() {
        checks.push(Check::from_result(
            "b_ring_axioms",
            b_frobenius_table(p, grp).and_then(|t| t.verify().map(|_| t.check_commutative())),
        ));
    } else {
        checks.push(Check::skip("b_ring_axioms", "G not in SL"));
    }
    VerificationReport {
        subject: Subject { potential: p.to_string(), group: Some(g.name.clone()) },
        checks,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub max_vars: usize,
    pub max_exponent: u32,
    pub potentials: usize,
    pub pairs: usize,
    pub failures: usize,
    pub reports: Vec<VerificationReport>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Whole-corpus verification; results are in corpus order.
pub fn verify_corpus(max_vars: usize, max_exponent: u32, with_a_ring: bool) -> CorpusReport {
    let pots = enumerate_potentials(max_vars, max_exponent);
    let mut jobs: Vec<(usize, Option<NamedGroup>)> = Vec::new();
    for (i, p) in pots.iter().enumerate() {
        jobs.push((i, None));
        for g in corpus_groups(p) {
            jobs.push((i, Some(g)));
        }
    }
    let reports: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|(i, g)| match g {
            None => verify_potential(&pots[*i], with_a_ring),
            Some(g) => verify_pair(&pots[*i], g),
        })
        .collect();
    let failures = reports.iter().filter(|r| !r.ok()).count();
    CorpusReport {
        max_vars,
        max_exponent,
        potentials: pots.len(),
        pairs: jobs.len() - pots.len(),
        failures,
        reports,
    }
}
