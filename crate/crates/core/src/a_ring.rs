//! FJRW A-model ring for the maximal group, from genus-zero correlators.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::b_ring::{milnor_table, FrobeniusTable};
use crate::error::{Error, Result};
use crate::milnor::MilnorRing;
use crate::potential::{monomial_string, BlockKind, InvertiblePotential};
use crate::rational::{q_int, rank_q, Q, Rat};
use crate::state_spaces::{sector_basis, twisted_invariant, BiDegree};
use crate::symmetry::{enumerate_gmax, exponential_grading, rho_generators, rho_word, GroupElement};

/// l_j = q_j(2g-2+k) - Σ_i Θ_j^{h_i}.
pub fn line_bundle_degrees(p: &InvertiblePotential, genus: u32, insertions: &[GroupElement]) -> Vec<Rat> {
    let k = insertions.len() as i64;
    p.charges()
        .iter()
        .enumerate()
        .map(|(j, q)| {
            insertions.iter().fold(q * (2 * genus as i64 - 2 + k), |s, h| s - h.theta(j))
        })
        .collect()
}

/// The unique third insertion making every l_j integral at genus zero.
pub fn select_output_sector(
    p: &InvertiblePotential,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Option<GroupElement> {
    let g3 = exponential_grading(p).mul(&g1.inverse()).mul(&g2.inverse());
    line_bundle_degrees(p, 0, &[g1.clone(), g2.clone(), g3.clone()])
        .iter()
        .all(|l| l.is_integer())
        .then_some(g3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    IntegerDegrees,
    Dimension,
    Concavity,
    IndexZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correlator {
    pub insertions: Vec<GroupElement>,
    #[serde(serialize_with = "crate::io::ser_rats")]
    pub line_degrees: Vec<Rat>,
    pub axiom: Axiom,
    #[serde(serialize_with = "crate::io::ser_q")]
    pub value: Q,
}

impl Correlator {
    /// Pattern is all -1, or one 0, one -2 and the rest -1.
    pub fn has_standard_pattern(&self) -> bool {
        let minus1 = Rat::from_integer(-1);
        let zeros = self.line_degrees.iter().filter(|l| l.is_zero()).count();
        let twos = self.line_degrees.iter().filter(|l| **l == Rat::from_integer(-2)).count();
        let ones = self.line_degrees.iter().filter(|l| **l == minus1).count();
        let n = self.line_degrees.len();
        ones == n || (zeros == 1 && twos == 1 && ones == n - 2)
    }
}

/// Genus-zero correlator of unit classes in Neveu–Schwarz sectors.
pub fn evaluate_correlator(p: &InvertiblePotential, insertions: &[GroupElement]) -> Result<Correlator> {
    let mut ins = insertions.to_vec();
    ins.sort();
    if let Some(h) = ins.iter().find(|h| !h.fixed_indices().is_empty()) {
        return Err(Error::Unsupported(format!("Ramond insertion {h}")));
    }
    let n = p.n_vars();
    let l = line_bundle_degrees(p, 0, &ins);
    let mk = |axiom, value| Ok(Correlator { insertions: ins.clone(), line_degrees: l.clone(), axiom, value });
    if l.iter().any(|x| !x.is_integer()) {
        return mk(Axiom::IntegerDegrees, Q::zero());
    }
    let li: Vec<i64> = l.iter().map(|x| x.to_integer()).collect();
    if li.iter().sum::<i64>() != -(n as i64) {
        return mk(Axiom::Dimension, Q::zero());
    }
    if li.iter().all(|&x| x == -1) {
        let axiom = if ins.len() == 3 { Axiom::Concavity } else { Axiom::IndexZero };
        return mk(axiom, Q::one());
    }
    let zeros: Vec<usize> = (0..n).filter(|&j| li[j] == 0).collect();
    let twos: Vec<usize> = (0..n).filter(|&j| li[j] == -2).collect();
    let ones = li.iter().filter(|&&x| x == -1).count();
    if zeros.len() == 1 && twos.len() == 1 && ones == n - 2 {
        let (j0, j1) = (zeros[0], twos[0]);
        let d = p.partial(j1).iter().map(|(_, e)| e[j0]).max().unwrap_or(0);
        if d == 0 {
            return Err(Error::Unsupported(format!("index-zero pattern with no X_{j0} in dW/dX_{j1}")));
        }
        return mk(Axiom::IndexZero, q_int(-(d as i64)));
    }
    Err(Error::Unsupported(format!("line bundle degrees {li:?}")))
}

pub fn three_point_ns(p: &InvertiblePotential, insertions: &[GroupElement; 3]) -> Result<Q> {
    Ok(evaluate_correlator(p, insertions)?.value)
}

pub fn four_point_index_zero(p: &InvertiblePotential, insertions: &[GroupElement; 4]) -> Result<Q> {
    let c = evaluate_correlator(p, insertions)?;
    if c.axiom != Axiom::IndexZero || !c.has_standard_pattern() || c.line_degrees.iter().all(|l| *l == Rat::from_integer(-1)) {
        if c.value.is_zero() {
            return Ok(c.value);
        }
        return Err(Error::Unsupported(format!("four-point pattern {:?}", c.line_degrees)));
    }
    Ok(c.value)
}

/// Hypotheses under which the correlator pipeline applies.
pub fn check_hypotheses(p: &InvertiblePotential) -> Result<()> {
    let half = Rat::new(1, 2);
    if let Some((v, q)) = p.vars().iter().zip(p.charges()).find(|(_, q)| **q >= half) {
        return Err(Error::Unsupported(format!("charge q_{v} = {q} is not < 1/2")));
    }
    for b in p.blocks() {
        if b.kind == BlockKind::Loop && b.len() == 2 && b.exponents.iter().any(|&a| a < 3) {
            return Err(Error::Unsupported(format!(
                "two-variable loop with exponents {:?} needs Ramond-sector products",
                b.exponents
            )));
        }
        if b.kind == BlockKind::Chain && *b.exponents.last().unwrap() < 3 {
            return Err(Error::Unsupported("chain with terminal exponent 2".into()));
        }
    }
    let j = exponential_grading(p);
    for (i, r) in rho_generators(p).iter().enumerate() {
        if !r.mul(&j).fixed_indices().is_empty() {
            return Err(Error::Unsupported(format!("generator rho_{i}J is Ramond")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Val {
    Known(Q),
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// None when a term lies in a Ramond sector and is checked only
    /// through the structure constants.
    pub verified_directly: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ARingPresentation {
    pub potential: String,
    pub transpose: String,
    pub generators: Vec<GroupElement>,
    pub relations: Vec<RelationCheck>,
    pub table: FrobeniusTable,
    pub audit: Vec<Correlator>,
    pub dim: usize,
    pub a_space_dim: usize,
}

struct Engine<'a> {
    p: &'a InvertiblePotential,
    j: GroupElement,
    rho_j: Vec<GroupElement>,
    gmax_gens: Vec<GroupElement>,
    audit: BTreeMap<Vec<GroupElement>, Correlator>,
    ramond_nonempty: HashMap<GroupElement, bool>,
}

impl<'a> Engine<'a> {
    fn sector(&self, beta: &[u32]) -> GroupElement {
        let w: Vec<i64> = beta.iter().map(|&b| b as i64).collect();
        rho_word(self.p, &w).mul(&self.j)
    }

    fn corr(&mut self, ins: Vec<GroupElement>) -> Result<Q> {
        let mut key = ins.clone();
        key.sort();
        if let Some(c) = self.audit.get(&key) {
            return Ok(c.value.clone());
        }
        let c = evaluate_correlator(self.p, &ins)?;
        let v = c.value.clone();
        self.audit.insert(key, c);
        Ok(v)
    }

    fn has_invariants(&mut self, h: &GroupElement) -> Result<bool> {
        if let Some(&b) = self.ramond_nonempty.get(h) {
            return Ok(b);
        }
        let fixed = h.fixed_indices();
        let any = sector_basis(self.p, h)?
            .iter()
            .any(|m| self.gmax_gens.iter().all(|g| twisted_invariant(g, m, &fixed)));
        self.ramond_nonempty.insert(h.clone(), any);
        Ok(any)
    }
}

fn boxes(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=b).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| v.iter().sum::<u32>());
    out
}

pub fn gmax_a_ring(p: &InvertiblePotential) -> Result<ARingPresentation> {
    check_hypotheses(p)?;
    let n = p.n_vars();
    let pt = p.transpose();
    let rt = MilnorRing::cached(&pt)?;
    let gmax = enumerate_gmax(p);
    let j = exponential_grading(p);
    let rho_j: Vec<GroupElement> = rho_generators(p).iter().map(|r| r.mul(&j)).collect();
    let mut eng = Engine {
        p,
        j: j.clone(),
        rho_j: rho_j.clone(),
        gmax_gens: gmax.generators().to_vec(),
        audit: BTreeMap::new(),
        ramond_nonempty: HashMap::new(),
    };
    let maxexp: Vec<u32> = (0..n).map(|i| rt.basis().iter().map(|b| b[i]).max().unwrap_or(0)).collect();
    let bound: Vec<u32> = maxexp.iter().map(|m| 3 * m).collect();
    let mut val: HashMap<Vec<u32>, Val> = HashMap::new();
    for beta in boxes(&bound) {
        if beta.iter().all(|&b| b == 0) {
            val.insert(beta, Val::Known(Q::one()));
            continue;
        }
        let target = eng.sector(&beta);
        let ns = target.fixed_indices().is_empty();
        let mut results: Vec<Q> = Vec::new();
        // a zero predecessor forces zero
        let mut unknown_pred = false;
        for i in 0..n {
            if beta[i] == 0 {
                continue;
            }
            let mut prev = beta.clone();
            prev[i] -= 1;
            match &val[&prev] {
                Val::Known(c) if c.is_zero() => results.push(Q::zero()),
                Val::Known(c) if ns => {
                    let c = c.clone();
                    let v = eng.corr(vec![eng.sector(&prev), eng.rho_j[i].clone(), target.inverse()])?;
                    results.push(c * v);
                }
                Val::Known(_) => {}
                Val::Unknown => unknown_pred = true,
            }
        }
        if !ns {
            if results.iter().any(|r| r.is_zero()) || !eng.has_invariants(&target)? {
                val.insert(beta, Val::Known(Q::zero()));
            } else {
                val.insert(beta, Val::Unknown);
            }
            continue;
        }
        if results.is_empty() && unknown_pred {
            // bridge across a Ramond intermediate with a four-point correlator
            for i in 0..n {
                for k in i..n {
                    let mut prev = beta.clone();
                    if prev[i] == 0 {
                        continue;
                    }
                    prev[i] -= 1;
                    if prev[k] == 0 {
                        continue;
                    }
                    prev[k] -= 1;
                    let Some(Val::Known(c)) = val.get(&prev).cloned() else { continue };
                    if c.is_zero() {
                        results.push(Q::zero());
                        continue;
                    }
                    if !eng.sector(&prev).fixed_indices().is_empty() {
                        continue;
                    }
                    let ins = vec![eng.sector(&prev), rho_j[i].clone(), rho_j[k].clone(), target.inverse()];
                    match eng.corr(ins) {
                        Ok(v) => results.push(c * v),
                        Err(Error::Unsupported(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        match results.split_first() {
            None => {
                val.insert(beta, Val::Unknown);
            }
            Some((first, rest)) => {
                if rest.iter().any(|r| r != first) {
                    return Err(Error::VerificationFailure(format!(
                        "inconsistent values {results:?} for Y^{beta:?}"
                    )));
                }
                val.insert(beta, Val::Known(first.clone()));
            }
        }
    }
    let jinv = j.inverse();
    let eps = |eng: &Engine, g: &[u32]| -> Result<Q> {
        if eng.sector(g) != jinv {
            return Ok(Q::zero());
        }
        match &val[g] {
            Val::Known(c) => Ok(c.clone()),
            Val::Unknown => Err(Error::Unsupported(format!("top coefficient of Y^{g:?} unresolved"))),
        }
    };
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let basis = rt.basis();
    let mu = basis.len();
    let sectors: Vec<GroupElement> = basis.iter().map(|b| eng.sector(b)).collect();
    let mut eta = vec![vec![Q::zero(); mu]; mu];
    for a in 0..mu {
        for b in 0..mu {
            eta[a][b] = eps(&eng, &add(&basis[a], &basis[b]))?;
        }
    }
    let eta_inv = crate::rational::inverse_q(&eta)
        .ok_or_else(|| Error::VerificationFailure("A-model pairing on the image is degenerate".into()))?;
    let eta_inv_sparse: Vec<Vec<(usize, Q)>> = eta_inv
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(c, x)| (c, x.clone())).collect())
        .collect();
    // ρ^{α+β+δ}J = J^{-1} iff sector(α)·sector(β)·sector(δ) = J^{-1}·J² = J
    let j2inv = j.inverse().pow(2);
    let mut products = vec![vec![BTreeMap::new(); mu]; mu];
    for a in 0..mu {
        for b in a..mu {
            let ab = add(&basis[a], &basis[b]);
            let sab = sectors[a].mul(&sectors[b]);
            let mut row: BTreeMap<usize, Q> = BTreeMap::new();
            for d in 0..mu {
                if sab.mul(&sectors[d]).mul(&j2inv) != jinv {
                    continue;
                }
                let t = eps(&eng, &add(&ab, &basis[d]))?;
                if t.is_zero() {
                    continue;
                }
                for (c, x) in &eta_inv_sparse[d] {
                    *row.entry(*c).or_insert_with(Q::zero) += &t * x;
                }
            }
            row.retain(|_, v| !v.is_zero());
            products[b][a] = row.clone();
            products[a][b] = row;
        }
    }
    let labels: Vec<String> = basis
        .iter()
        .map(|b| {
            let y: Vec<String> = pt.vars().iter().map(|v| v.to_uppercase()).collect();
            format!("{} -> {}", monomial_string(&y, b), eng.sector(b))
        })
        .collect();
    let degrees: Vec<BiDegree> = rt.degrees().iter().map(|d| BiDegree { plus: *d, minus: *d }).collect();
    let identity = rt.index_of(&vec![0; n]).unwrap();
    let table = FrobeniusTable { labels, degrees: Some(degrees), products, pairing: eta, identity };
    // Jacobian relations of W^T, checked directly where both sides are NS
    let mut relations = Vec::new();
    for jv in 0..n {
        let terms = pt.partial(jv);
        let y: Vec<String> = pt.vars().iter().map(|v| v.to_uppercase()).collect();
        let text = terms
            .iter()
            .map(|(c, e)| format!("{}*{}", c, monomial_string(&y, e)))
            .collect::<Vec<_>>()
            .join(" + ");
        let direct = {
            let vals: Vec<Option<Q>> = terms
                .iter()
                .map(|(c, e)| match val.get(e) {
                    Some(Val::Known(v)) => Some(q_int(*c) * v),
                    _ => None,
                })
                .collect();
            let same_sector = terms.windows(2).all(|w| eng.sector(&w[0].1) == eng.sector(&w[1].1));
            if vals.iter().all(|v| v.is_some()) && same_sector {
                Some(vals.into_iter().flatten().fold(Q::zero(), |s, v| s + v).is_zero())
            } else {
                None
            }
        };
        relations.push(RelationCheck { relation: format!("{text} = 0"), verified_directly: direct });
    }
    let a_space_dim = crate::state_spaces::a_state_space(p, &gmax)?.len();
    Ok(ARingPresentation {
        potential: p.to_string(),
        transpose: pt.to_string(),
        generators: rho_j,
        relations,
        table,
        audit: eng.audit.into_values().collect(),
        dim: mu,
        a_space_dim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MirrorFrobeniusReport {
    pub potential: String,
    pub dim: usize,
    pub structure_constants_equal: bool,
    /// η_A = λ·η_B for one scalar λ.
    #[serde(serialize_with = "ser_opt_q")]
    pub pairing_scale: Option<Q>,
    pub audit_patterns_ok: bool,
    pub relations_ok: bool,
    pub correlators: usize,
    pub mismatch: Option<String>,
}

fn ser_opt_q<S: serde::Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl MirrorFrobeniusReport {
    pub fn ok(&self) -> bool {
        self.structure_constants_equal
            && self.pairing_scale.is_some()
            && self.audit_patterns_ok
            && self.relations_ok
            && self.mismatch.is_none()
    }
}

pub fn compare_with_milnor(pres: &ARingPresentation, rt: &MilnorRing) -> MirrorFrobeniusReport {
    let bt = milnor_table(rt);
    let mut mismatch = None;
    'outer: for a in 0..bt.dim() {
        for b in 0..bt.dim() {
            if pres.table.products[a][b] != bt.products[a][b] {
                mismatch = Some(format!("{} * {}", bt.labels[a], bt.labels[b]));
                break 'outer;
            }
        }
    }
    let mut scale: Option<Q> = None;
    let mut consistent = true;
    for a in 0..bt.dim() {
        for b in 0..bt.dim() {
            let (x, y) = (&pres.table.pairing[a][b], &bt.pairing[a][b]);
            if y.is_zero() {
                consistent &= x.is_zero();
            } else {
                let r = x / y;
                match &scale {
                    None => scale = Some(r),
                    Some(s) => consistent &= *s == r,
                }
            }
        }
    }
    let scale = if consistent && scale.as_ref().is_some_and(|s| !s.is_zero()) { scale } else { None };
    MirrorFrobeniusReport {
        potential: pres.potential.clone(),
        dim: pres.dim,
        structure_constants_equal: mismatch.is_none() && pres.dim == pres.a_space_dim,
        pairing_scale: scale,
        audit_patterns_ok: pres
            .audit
            .iter()
            .filter(|c| !c.value.is_zero())
            .all(|c| c.has_standard_pattern()),
        relations_ok: pres.relations.iter().all(|r| r.verified_directly != Some(false)),
        correlators: pres.audit.len(),
        mismatch,
    }
}

pub fn verify_mirror_frobenius(p: &InvertiblePotential) -> Result<MirrorFrobeniusReport> {
    let pres = gmax_a_ring(p)?;
    let rt = MilnorRing::cached(&p.transpose())?;
    Ok(compare_with_milnor(&pres, &rt))
}

pub fn pairing_rank(t: &FrobeniusTable) -> usize {
    rank_q(&t.pairing)
}
