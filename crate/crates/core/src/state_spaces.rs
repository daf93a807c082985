//! A- and B-model state spaces, bigradings and the mirror map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::milnor::MilnorRing;
use crate::potential::{monomial_string, BlockKind, InvertiblePotential};
use crate::rational::{frac, Rat};
use crate::symmetry::{
    dual_group, enumerate_gmax, is_admissible, rho_bar_word, rho_word, DiagonalGroup, GroupElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Model {
    A,
    B,
}

/// Sector label plus a monomial over the fixed locus (full-length exponents).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StateBasisElement {
    pub model: Model,
    pub sector: GroupElement,
    pub monomial: Vec<u32>,
}

impl StateBasisElement {
    pub fn fixed(&self) -> Vec<usize> {
        self.sector.fixed_indices()
    }

    pub fn label(&self, vars: &[String]) -> String {
        format!("{}|{}", monomial_string(vars, &self.monomial), self.sector)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiDegree {
    pub plus: Rat,
    pub minus: Rat,
}

impl Serialize for BiDegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let (sum, diff) = sum_diff(self);
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("plus", &self.plus.to_string())?;
        m.serialize_entry("minus", &self.minus.to_string())?;
        m.serialize_entry("sum", &sum.to_string())?;
        m.serialize_entry("diff", &diff.to_string())?;
        m.end()
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plus, self.minus)
    }
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree { plus: self.plus + o.plus, minus: self.minus + o.minus }
    }
}

pub fn sum_diff(d: &BiDegree) -> (Rat, Rat) {
    (d.plus + d.minus, d.plus - d.minus)
}

/// Total bigrading: external sector part plus internal (p,-p) or (p,p).
pub fn bidegree(p: &InvertiblePotential, e: &StateBasisElement) -> BiDegree {
    let q = p.charges();
    let pdeg = p.weighted_degree(&e.monomial);
    let mut moved = Rat::zero();
    let mut moved_b = Rat::zero();
    let mut fixed = Rat::zero();
    for (j, qj) in q.iter().enumerate() {
        let t = e.sector.theta(j);
        if t.is_zero() {
            fixed += Rat::one() - qj * 2;
        } else {
            moved += t - qj;
            moved_b += Rat::one() - t - qj;
        }
    }
    match e.model {
        Model::A => BiDegree { plus: moved + pdeg, minus: moved + fixed - pdeg },
        Model::B => BiDegree { plus: moved + pdeg, minus: moved_b + pdeg },
    }
}

/// Determinant-twisted invariance of X^m in the sector with fixed locus `fixed`.
pub fn twisted_invariant(g: &GroupElement, monomial: &[u32], fixed: &[usize]) -> bool {
    let t = fixed.iter().fold(g.phase_of(monomial), |s, &i| s + g.theta(i));
    frac(t).is_zero()
}

fn test_elements(g: &DiagonalGroup) -> &[GroupElement] {
    if g.generators().is_empty() {
        g.elements()
    } else {
        g.generators()
    }
}

/// Milnor basis of W|Fix(h) as full-length exponent vectors.
pub fn sector_basis(p: &InvertiblePotential, h: &GroupElement) -> Result<Vec<Vec<u32>>> {
    let fixed = h.fixed_indices();
    let ring = MilnorRing::cached(&p.restrict(&fixed)?)?;
    Ok(ring
        .basis()
        .iter()
        .map(|b| {
            let mut e = vec![0u32; p.n_vars()];
            for (pos, &j) in fixed.iter().enumerate() {
                e[j] = b[pos];
            }
            e
        })
        .collect())
}

fn build_space(
    p: &InvertiblePotential,
    g: &DiagonalGroup,
    model: Model,
    sectors: &[GroupElement],
    project: bool,
) -> Result<StateSpace> {
    let tests = test_elements(g);
    let mut elements = Vec::new();
    for h in sectors {
        let fixed = h.fixed_indices();
        for m in sector_basis(p, h)? {
            if !project || tests.iter().all(|x| twisted_invariant(x, &m, &fixed)) {
                elements.push(StateBasisElement { model, sector: h.clone(), monomial: m });
            }
        }
    }
    let degrees = elements.iter().map(|e| bidegree(p, e)).collect();
    Ok(StateSpace { model, potential: p.clone(), group: g.clone(), elements, degrees })
}

#[derive(Debug, Clone)]
pub struct StateSpace {
    pub model: Model,
    pub potential: InvertiblePotential,
    pub group: DiagonalGroup,
    pub elements: Vec<StateBasisElement>,
    pub degrees: Vec<BiDegree>,
}

impl StateSpace {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, e: &StateBasisElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn poincare(&self) -> PoincarePolynomial {
        poincare_polynomial(&self.degrees)
    }
}

pub fn a_state_space(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<StateSpace> {
    if !is_admissible(p, g) {
        return Err(Error::NotAdmissible);
    }
    build_space(p, g, Model::A, g.elements(), true)
}

pub fn b_state_space(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<StateSpace> {
    if !g.is_sl() {
        return Err(Error::NotSL);
    }
    build_space(p, g, Model::B, g.elements(), true)
}

/// All sectors of G^max with no invariance filter.
pub fn unprojected_space(p: &InvertiblePotential, model: Model) -> Result<StateSpace> {
    let gmax = enumerate_gmax(p);
    build_space(p, &gmax, model, gmax.elements(), false)
}

/// Multiset of (plus, minus) exponents.
pub type PoincarePolynomial = BTreeMap<(Rat, Rat), usize>;

pub fn poincare_polynomial(degrees: &[BiDegree]) -> PoincarePolynomial {
    let mut m = PoincarePolynomial::new();
    for d in degrees {
        *m.entry((d.plus, d.minus)).or_default() += 1;
    }
    m
}

pub fn poincare_string(p: &PoincarePolynomial) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|((a, b), c)| format!("{c}*t^({a})*s^({b})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parity {
    Odd,
    Even,
}

fn parity_on(block_vars: &[usize], e: &[u32]) -> Option<Parity> {
    let odd = block_vars.iter().step_by(2).any(|&j| e[j] > 0);
    let even = block_vars.iter().skip(1).step_by(2).any(|&j| e[j] > 0);
    match (odd, even) {
        (true, false) => Some(Parity::Odd),
        (false, true) => Some(Parity::Even),
        _ => None,
    }
}

/// Mirror of an unprojected B element of W^T into the A side of W.
pub fn total_mirror_image(p: &InvertiblePotential, b: &StateBasisElement) -> Result<StateBasisElement> {
    let n = p.n_vars();
    let fb = b.sector.fixed_indices();
    let mut word = vec![0i64; n];
    for &j in &fb {
        word[j] = b.monomial[j] as i64 + 1;
    }
    let g = rho_word(p, &word);
    let fa = g.fixed_indices();
    let mut cands: Vec<Vec<u32>> = sector_basis(p, &g)?
        .into_iter()
        .filter(|r| {
            let mut w = vec![0i64; n];
            for &j in &fa {
                w[j] = r[j] as i64 + 1;
            }
            rho_bar_word(p, &w) == b.sector
        })
        .collect();
    if cands.len() > 1 {
        for blk in p.blocks() {
            if blk.kind != BlockKind::Loop || blk.len() % 2 != 0 {
                continue;
            }
            if let Some(par) = parity_on(&blk.vars, &b.monomial) {
                cands.retain(|r| parity_on(&blk.vars, r).is_none_or(|x| x == par));
            }
        }
    }
    if cands.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "mirror of {} has {} candidates",
            b.label(p.vars()),
            cands.len()
        )));
    }
    Ok(StateBasisElement { model: Model::A, sector: g, monomial: cands.pop().unwrap() })
}

#[derive(Debug, Clone, Serialize)]
pub struct MirrorPair {
    pub b: StateBasisElement,
    pub a: StateBasisElement,
    pub b_degree: BiDegree,
    pub a_degree: BiDegree,
}

#[derive(Debug, Clone, Serialize)]
pub struct MirrorReport {
    pub a_count: usize,
    pub b_count: usize,
    pub pairs: Vec<MirrorPair>,
    pub bijective: bool,
    pub degrees_equal: bool,
}

impl MirrorReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.degrees_equal
    }
}

fn check_map(p: &InvertiblePotential, bspace: &StateSpace, aspace: &StateSpace) -> Result<MirrorReport> {
    let mut pairs = Vec::new();
    let mut images = BTreeSet::new();
    let mut inside = true;
    for (b, bd) in bspace.elements.iter().zip(&bspace.degrees) {
        let a = total_mirror_image(p, b)?;
        let Some(pos) = aspace.position(&a) else {
            inside = false;
            continue;
        };
        images.insert(pos);
        pairs.push(MirrorPair { b: b.clone(), a, b_degree: *bd, a_degree: aspace.degrees[pos] });
    }
    let bijective = inside && images.len() == aspace.len() && bspace.len() == aspace.len();
    let degrees_equal = pairs.iter().all(|x| x.a_degree == x.b_degree);
    Ok(MirrorReport { a_count: aspace.len(), b_count: bspace.len(), pairs, bijective, degrees_equal })
}

/// Unprojected B(W^T, G^max) to unprojected A(W, G^max).
pub fn total_mirror_map(p: &InvertiblePotential) -> Result<MirrorReport> {
    let bspace = unprojected_space(&p.transpose(), Model::B)?;
    let aspace = unprojected_space(p, Model::A)?;
    check_map(p, &bspace, &aspace)
}

/// B(W^T, G^T) to A(W, G).
pub fn mirror_map(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<MirrorReport> {
    let aspace = a_state_space(p, g)?;
    let bspace = b_state_space(&p.transpose(), &dual_group(p, g))?;
    check_map(p, &bspace, &aspace)
}

/// deg^A_+ = deg^B_+ and deg^A_- = ĉ - deg^B_- on elements present in both spaces.
pub fn ab_degree_relation_check(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<bool> {
    let c = p.central_charge();
    let a = if is_admissible(p, g) { Some(a_state_space(p, g)?) } else { None };
    let b = if g.is_sl() { Some(b_state_space(p, g)?) } else { None };
    let mut ok = true;
    let spaces: Vec<&StateSpace> = a.iter().chain(b.iter()).collect();
    for s in spaces {
        for e in &s.elements {
            let ea = StateBasisElement { model: Model::A, ..e.clone() };
            let eb = StateBasisElement { model: Model::B, ..e.clone() };
            let (da, db) = (bidegree(p, &ea), bidegree(p, &eb));
            ok &= da.plus == db.plus && da.minus == c - db.minus;
        }
    }
    Ok(ok)
}

/// Brute-force projector rank per sector: (1/|G|) Σ_g Σ_m χ_g(m), in floating point.
pub fn projector_rank(p: &InvertiblePotential, g: &DiagonalGroup, h: &GroupElement) -> Result<usize> {
    let fixed = h.fixed_indices();
    let basis = sector_basis(p, h)?;
    let mut total = 0.0f64;
    for x in g.elements() {
        for m in &basis {
            let ph = fixed.iter().fold(x.phase_of(m), |s, &i| s + x.theta(i));
            let ang = 2.0 * std::f64::consts::PI * (*ph.numer() as f64 / *ph.denom() as f64);
            total += ang.cos();
        }
    }
    Ok((total / g.order() as f64).round() as usize)
}
