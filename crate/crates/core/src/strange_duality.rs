//! Arnol'd's 14 exceptional unimodal singularities and strange duality.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::a_ring::verify_mirror_frobenius;
use crate::b_ring::{b_frobenius_table, power_product, FrobeniusTable};
use crate::error::{Error, Result};
use crate::potential::{parse_potential, InvertiblePotential};
use crate::rational::{rank_q, Q};
use crate::state_spaces::{a_state_space, b_state_space, poincare_string};
use crate::symmetry::{enumerate_gmax, j_group, parse_group, DiagonalGroup};

const TABLE: &str = include_str!("../data/table1.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRecord {
    pub class: String,
    pub w: String,
    pub gmax_is_j: bool,
    pub w_prime: String,
    pub strange_dual: String,
}

#[derive(Debug, Deserialize)]
struct Dataset {
    version: u32,
    rows: Vec<ExceptionalRecord>,
}

pub fn table_version() -> u32 {
    serde_json::from_str::<Dataset>(TABLE).expect("embedded table").version
}

pub fn load_table() -> Vec<ExceptionalRecord> {
    serde_json::from_str::<Dataset>(TABLE).expect("embedded table").rows
}

pub fn find_row(name: &str) -> Option<ExceptionalRecord> {
    load_table().into_iter().find(|r| r.class.eq_ignore_ascii_case(name))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum RingCheck {
    Passed,
    Failed(String),
    Excluded(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub class: String,
    pub w: String,
    /// Potential the checks run on.
    pub representative: String,
    /// The printed W′ is the transpose of W (Gmax = ⟨J⟩ rows dual to each other).
    pub printed_w_prime_is_transpose: bool,
    pub gmax_flag_matches: bool,
    pub charges_equal: bool,
    pub mu_equal: bool,
    pub det: i64,
    pub order_j: u64,
    pub gmax_is_j: bool,
    /// Transpose of the representative has the dual class's charges and μ.
    pub dual_match: bool,
    pub poincare_a: String,
    pub poincare_b: String,
    pub poincare_equal: bool,
    pub ring: RingCheck,
}

impl RowReport {
    pub fn ok(&self) -> bool {
        self.gmax_flag_matches
            && self.charges_equal
            && self.mu_equal
            && self.gmax_is_j
            && self.dual_match
            && self.poincare_equal
            && !matches!(self.ring, RingCheck::Failed(_))
    }
}

fn same_charges(a: &InvertiblePotential, b: &InvertiblePotential) -> bool {
    a.vars().iter().all(|v| match (a.index_of(v), b.index_of(v)) {
        (Some(i), Some(j)) => a.charges()[i] == b.charges()[j],
        _ => false,
    }) && a.n_vars() == b.n_vars()
}

fn same_charge_multiset(a: &InvertiblePotential, b: &InvertiblePotential) -> bool {
    let mut x = a.charges().to_vec();
    let mut y = b.charges().to_vec();
    x.sort();
    y.sort();
    x == y
}

pub fn verify_row(row: &ExceptionalRecord) -> Result<RowReport> {
    let w = parse_potential(&row.w)?;
    let printed = parse_potential(&row.w_prime)?;
    let t = w.transpose();
    let is_transpose = printed.exponents() == t.exponents() && printed.vars() == t.vars() && printed != w;
    let rep = if is_transpose && row.gmax_is_j { w.clone() } else { printed };
    let order_j = crate::symmetry::exponential_grading(&rep).order();
    let gmax = enumerate_gmax(&rep);
    let dual = find_row(&row.strange_dual)
        .ok_or_else(|| Error::Input(format!("unknown class {}", row.strange_dual)))?;
    let dual_w = parse_potential(&dual.w)?;
    let rt = rep.transpose();
    let jg = j_group(&rep);
    let a = a_state_space(&rep, &jg)?;
    let b = b_state_space(&rt, &DiagonalGroup::generated_by(rt.n_vars(), &[]))?;
    let (pa, pb) = (a.poincare(), b.poincare());
    let ring = match verify_mirror_frobenius(&rep) {
        Ok(r) if r.ok() => RingCheck::Passed,
        Ok(r) => RingCheck::Failed(r.mismatch.unwrap_or_else(|| "comparison failed".into())),
        Err(Error::Unsupported(m)) => RingCheck::Excluded(m),
        Err(e) => RingCheck::Failed(e.to_string()),
    };
    Ok(RowReport {
        class: row.class.clone(),
        w: row.w.clone(),
        representative: rep.to_string(),
        printed_w_prime_is_transpose: is_transpose,
        gmax_flag_matches: (enumerate_gmax(&w).order() as u64 == crate::symmetry::exponential_grading(&w).order())
            == row.gmax_is_j,
        charges_equal: same_charges(&w, &rep),
        mu_equal: w.milnor_number() == rep.milnor_number(),
        det: rep.det().abs(),
        order_j,
        gmax_is_j: gmax.order() as u64 == order_j && rep.det().unsigned_abs() == order_j,
        dual_match: same_charge_multiset(&rt, &dual_w) && rt.milnor_number() == dual_w.milnor_number(),
        poincare_a: poincare_string(&pa),
        poincare_b: poincare_string(&pb),
        poincare_equal: pa == pb,
        ring,
    })
}

pub fn verify_strange_duality() -> Result<Vec<RowReport>> {
    load_table().par_iter().map(verify_row).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct U12Report {
    pub dim: usize,
    pub x_squared_zero: bool,
    pub y_squared_zero: bool,
    pub z_cubed_zero: bool,
    pub xy_nonzero: bool,
    /// The 12 monomials X^a Y^b Z^c (a,b < 2, c < 3) form a basis.
    pub isomorphic: bool,
    pub axioms: bool,
}

impl U12Report {
    pub fn ok(&self) -> bool {
        self.dim == 12
            && self.x_squared_zero
            && self.y_squared_zero
            && self.z_cubed_zero
            && self.xy_nonzero
            && self.isomorphic
            && self.axioms
    }
}

/// ℤ/3-orbifold B-model of x³+y³+z⁴ compared with ℂ[x,y,z]/(x²,y²,z³).
pub fn u12_check() -> Result<U12Report> {
    let p = parse_potential("x^3+y^3+z^4")?;
    let g = parse_group(&p, "gens:1/3,2/3,0")?;
    let space = b_state_space(&p, &g)?;
    let t: FrobeniusTable = b_frobenius_table(&p, &g)?;
    let find = |phases: &str, mono: [u32; 3]| -> Result<usize> {
        space
            .elements
            .iter()
            .position(|e| e.sector.to_string() == phases && e.monomial == mono)
            .ok_or_else(|| Error::InternalInconsistency(format!("missing {phases} {mono:?}")))
    };
    let x = find("(1/3,2/3,0)", [0, 0, 0])?;
    let y = find("(2/3,1/3,0)", [0, 0, 0])?;
    let z = find("(0,0,0)", [0, 0, 1])?;
    let gens = [x, y, z];
    let zero = |e: &[u32]| power_product(&t, &gens, e).values().all(|c| *c == Q::from_integer(0.into()));
    let mut rows = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..3 {
                let v = power_product(&t, &gens, &[a, b, c]);
                rows.push((0..t.dim()).map(|k| v.get(&k).cloned().unwrap_or_default()).collect::<Vec<Q>>());
            }
        }
    }
    Ok(U12Report {
        dim: t.dim(),
        x_squared_zero: zero(&[2, 0, 0]),
        y_squared_zero: zero(&[0, 2, 0]),
        z_cubed_zero: zero(&[0, 0, 3]),
        xy_nonzero: !zero(&[1, 1, 0]),
        isomorphic: rank_q(&rows) == 12 && t.dim() == 12,
        axioms: t.verify().is_ok() && t.check_commutative(),
    })
}
