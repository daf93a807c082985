//! Orbifold B-model Frobenius algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::milnor::{MilnorRing, RingElement};
use crate::poly::{self, Polynomial};
use crate::potential::InvertiblePotential;
use crate::rational::{frac, q_int, rank_q, Q, Rat};
use crate::state_spaces::{b_state_space, BiDegree, StateBasisElement, StateSpace};
use crate::symmetry::{DiagonalGroup, GroupElement};

/// Structure constants and pairing on a finite basis.
#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusTable {
    pub labels: Vec<String>,
    #[serde(skip)]
    pub degrees: Option<Vec<BiDegree>>,
    /// products[i][j] = Σ_k c_ij^k e_k, sparse.
    #[serde(serialize_with = "ser_products")]
    pub products: Vec<Vec<BTreeMap<usize, Q>>>,
    #[serde(serialize_with = "ser_matrix")]
    pub pairing: Vec<Vec<Q>>,
    pub identity: usize,
}

fn ser_products<S: serde::Serializer>(
    p: &[Vec<BTreeMap<usize, Q>>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(None)?;
    for (i, row) in p.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            for (k, c) in m {
                seq.serialize_element(&(i, j, k, c.to_string()))?;
            }
        }
    }
    seq.end()
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    serde::Serialize::serialize(&v, s)
}

fn add_into(acc: &mut BTreeMap<usize, Q>, k: usize, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

impl FrobeniusTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, a: &BTreeMap<usize, Q>, b: &BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let mut out = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, c) in &self.products[*i][*j] {
                    add_into(&mut out, *k, x * y * c);
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> BTreeMap<usize, Q> {
        [(i, Q::one())].into()
    }

    pub fn pair(&self, a: &BTreeMap<usize, Q>, b: &BTreeMap<usize, Q>) -> Q {
        let mut s = Q::zero();
        for (i, x) in a {
            for (j, y) in b {
                s += x * y * &self.pairing[*i][*j];
            }
        }
        s
    }

    /// First (i,j,k) with (ij)k != i(jk).
    pub fn check_associativity(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.products[i][j];
                for k in 0..n {
                    let l = self.product(ij, &self.unit(k));
                    let r = self.product(&self.unit(i), &self.products[j][k]);
                    if l != r {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First (i,j,k) with <ij,k> != <i,jk>.
    pub fn check_frobenius(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.pair(&self.products[i][j], &self.unit(k));
                    let r = self.pair(&self.unit(i), &self.products[j][k]);
                    if l != r {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_identity(&self) -> bool {
        (0..self.dim()).all(|i| {
            self.products[self.identity][i] == self.unit(i)
                && self.products[i][self.identity] == self.unit(i)
        })
    }

    pub fn check_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.products[i][j] == self.products[j][i]))
    }

    pub fn pairing_nondegenerate(&self) -> bool {
        rank_q(&self.pairing) == self.dim()
    }

    /// First (i,j,k) where a product term breaks additivity of degrees.
    pub fn check_grading(&self) -> Option<(usize, usize, usize)> {
        let d = self.degrees.as_ref()?;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in self.products[i][j].keys() {
                    if d[i] + d[j] != d[*k] {
                        return Some((i, j, *k));
                    }
                }
            }
        }
        None
    }

    /// Verify every axiom, reporting the first counterexample.
    pub fn verify(&self) -> Result<()> {
        if !self.check_identity() {
            return Err(Error::VerificationFailure("identity element fails".into()));
        }
        if let Some((i, j, k)) = self.check_associativity() {
            return Err(Error::VerificationFailure(format!(
                "associativity fails on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            )));
        }
        if let Some((i, j, k)) = self.check_frobenius() {
            return Err(Error::VerificationFailure(format!(
                "Frobenius identity fails on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            )));
        }
        if let Some((i, j, k)) = self.check_grading() {
            return Err(Error::VerificationFailure(format!(
                "{} * {} has a term {} of the wrong bidegree",
                self.labels[i], self.labels[j], self.labels[k]
            )));
        }
        if !self.pairing_nondegenerate() {
            return Err(Error::VerificationFailure("pairing is degenerate".into()));
        }
        Ok(())
    }

    /// Human-readable list of nonzero products.
    pub fn relations(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let terms: Vec<String> = self.products[i][j]
                    .iter()
                    .map(|(k, c)| format!("{}*[{}]", c, self.labels[*k]))
                    .collect();
                if !terms.is_empty() {
                    out.push(format!("[{}]*[{}] = {}", self.labels[i], self.labels[j], terms.join(" + ")));
                }
            }
        }
        out
    }
}

/// Table of a plain Milnor ring with its residue pairing.
pub fn milnor_table(r: &MilnorRing) -> FrobeniusTable {
    let mu = r.mu();
    let vars = r.potential().vars().to_vec();
    let products = (0..mu)
        .map(|i| {
            (0..mu)
                .map(|j| {
                    let e: Vec<u32> = r.basis()[i].iter().zip(&r.basis()[j]).map(|(a, b)| a + b).collect();
                    r.nf_monomial(&e).iter().map(|(k, c)| (*k, c.clone())).collect()
                })
                .collect()
        })
        .collect();
    FrobeniusTable {
        labels: r.basis().iter().map(|e| crate::potential::monomial_string(&vars, e)).collect(),
        degrees: Some(r.degrees().iter().map(|d| BiDegree { plus: *d, minus: *d }).collect()),
        products,
        pairing: r.pairing_matrix(),
        identity: r.index_of(&vec![0; r.n_vars()]).unwrap(),
    }
}

fn to_local(e: &[u32], fixed: &[usize]) -> Option<Vec<u32>> {
    if e.iter().enumerate().any(|(j, &k)| k > 0 && !fixed.contains(&j)) {
        return None;
    }
    Some(fixed.iter().map(|&j| e[j]).collect())
}

fn to_full(local: &[u32], fixed: &[usize], n: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    for (pos, &j) in fixed.iter().enumerate() {
        e[j] = local[pos];
    }
    e
}

fn character(p: &InvertiblePotential, e: &[u32]) -> Vec<Rat> {
    let n = p.n_vars();
    (0..n)
        .map(|k| frac((0..n).fold(Rat::zero(), |s, j| s + p.a_inv()[j][k] * e[j] as i64)))
        .collect()
}

/// γ_{g,h} as a polynomial over Fix(gh), with the ambiguity left by the
/// defining equation.
#[derive(Debug, Clone)]
pub struct Cocycle {
    pub sector: GroupElement,
    pub gamma: Polynomial,
    pub kernel: Vec<Polynomial>,
}

impl Cocycle {
    pub fn is_zero(&self) -> bool {
        self.gamma.is_empty()
    }
}

fn block_gamma(
    p: &InvertiblePotential,
    f1: &[usize],
    f2: &[usize],
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let n = p.n_vars();
    let w1 = p.restrict(f1)?;
    let w2 = p.restrict(f2)?;
    let r1 = MilnorRing::cached(&w1)?;
    let r2 = MilnorRing::cached(&w2)?;
    let h1: Polynomial = poly::hessian(&w1)
        .into_iter()
        .map(|(e, c)| (to_local(&to_full(&e, f1, n), f2).unwrap(), c))
        .collect();
    let d = w2.central_charge() - w1.central_charge();
    let mut chi = vec![Rat::zero(); n];
    for &i in f2.iter().filter(|i| !f1.contains(i)) {
        for (k, c) in chi.iter_mut().enumerate() {
            *c -= p.a_inv()[i][k] * 2;
        }
    }
    let chi: Vec<Rat> = chi.into_iter().map(frac).collect();
    let cands: Vec<Vec<u32>> = r2
        .basis()
        .iter()
        .zip(r2.degrees())
        .filter(|(b, deg)| **deg == d && character(p, &to_full(b, f2, n)) == chi)
        .map(|(b, _)| b.clone())
        .collect();
    let lambdas: Vec<Q> = cands
        .iter()
        .map(|m| {
            let prod = poly::mul(&poly::monomial(m.clone()), &h1);
            let nf = r2.normal_form(&prod);
            r2.hess_coefficient(&nf)
        })
        .collect();
    let norm: Q = lambdas.iter().fold(Q::zero(), |s, l| s + l * l);
    if norm.is_zero() {
        return Err(Error::NonUniqueSolution(format!(
            "no solution for the cocycle on {:?} -> {:?}",
            f1, f2
        )));
    }
    let rhs = q_int(r1.mu() as i64) / q_int(r2.mu() as i64);
    let scale = rhs / norm;
    let mut gamma = Polynomial::new();
    for (m, l) in cands.iter().zip(&lambdas) {
        poly::add_term(&mut gamma, to_full(m, f2, n), l * &scale);
    }
    // kernel of c -> Σ c_k λ_k
    let mut kernel = Vec::new();
    if let Some(piv) = lambdas.iter().position(|l| !l.is_zero()) {
        for k in 0..cands.len() {
            if k == piv {
                continue;
            }
            let mut v = Polynomial::new();
            poly::add_term(&mut v, to_full(&cands[k], f2, n), lambdas[piv].clone());
            poly::add_term(&mut v, to_full(&cands[piv], f2, n), -lambdas[k].clone());
            kernel.push(v);
        }
    }
    Ok((gamma, kernel))
}

pub fn cocycle_gamma(p: &InvertiblePotential, g: &GroupElement, h: &GroupElement) -> Result<Cocycle> {
    let n = p.n_vars();
    let gh = g.mul(h);
    let (fg, fh, fgh) = (g.fixed_indices(), h.fixed_indices(), gh.fixed_indices());
    let mut gamma = poly::constant(n, Q::one());
    let mut kernels: Vec<(usize, Vec<Polynomial>)> = Vec::new();
    let mut factors: Vec<Polynomial> = Vec::new();
    for b in p.blocks() {
        let mut vb = b.vars.clone();
        vb.sort();
        let covered = vb.iter().all(|i| fg.contains(i) || fh.contains(i) || fgh.contains(i));
        if !covered {
            return Ok(Cocycle { sector: gh, gamma: Polynomial::new(), kernel: vec![] });
        }
        let f1: Vec<usize> = vb.iter().copied().filter(|i| fg.contains(i) && fh.contains(i)).collect();
        let f2: Vec<usize> = vb.iter().copied().filter(|i| fgh.contains(i)).collect();
        if f1 == f2 {
            factors.push(poly::constant(n, Q::one()));
            continue;
        }
        let (gb, kb) = block_gamma(p, &f1, &f2)?;
        gamma = poly::mul(&gamma, &gb);
        if !kb.is_empty() {
            kernels.push((factors.len(), kb));
        }
        factors.push(gb);
    }
    let mut kernel = Vec::new();
    for (pos, kb) in kernels {
        let others = factors
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .fold(poly::constant(n, Q::one()), |acc, (_, f)| poly::mul(&acc, f));
        for k in kb {
            kernel.push(poly::mul(&others, &k));
        }
    }
    Ok(Cocycle { sector: gh, gamma, kernel })
}

/// Build-time context: one ring per sector, γ cached per pair.
pub struct BModel {
    potential: InvertiblePotential,
    rings: HashMap<GroupElement, Arc<MilnorRing>>,
    gammas: std::sync::Mutex<HashMap<(GroupElement, GroupElement), Cocycle>>,
}

impl BModel {
    pub fn new(p: &InvertiblePotential, sectors: &[GroupElement]) -> Result<BModel> {
        let mut rings = HashMap::new();
        for s in sectors {
            rings.insert(s.clone(), MilnorRing::cached(&p.restrict(&s.fixed_indices())?)?);
        }
        Ok(BModel { potential: p.clone(), rings, gammas: Default::default() })
    }

    fn ring(&self, s: &GroupElement) -> Result<Arc<MilnorRing>> {
        match self.rings.get(s) {
            Some(r) => Ok(r.clone()),
            None => MilnorRing::cached(&self.potential.restrict(&s.fixed_indices())?),
        }
    }

    pub fn gamma(&self, g: &GroupElement, h: &GroupElement) -> Result<Cocycle> {
        let key = (g.clone(), h.clone());
        if let Some(c) = self.gammas.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = cocycle_gamma(&self.potential, g, h)?;
        self.gammas.lock().unwrap().insert(key, c.clone());
        Ok(c)
    }

    /// (H 1_g) ⋆ (K 1_h) = NF_{Fix gh}(H K γ_{g,h}) 1_{gh}.
    pub fn multiply(&self, a: &StateBasisElement, b: &StateBasisElement) -> Result<(GroupElement, RingElement)> {
        let c = self.gamma(&a.sector, &b.sector)?;
        let fixed = c.sector.fixed_indices();
        let ring = self.ring(&c.sector)?;
        let hk: Vec<u32> = a.monomial.iter().zip(&b.monomial).map(|(x, y)| x + y).collect();
        let reduce = |f: &Polynomial| -> RingElement {
            let mut out = RingElement::zero();
            for (e, coef) in f {
                let m: Vec<u32> = e.iter().zip(&hk).map(|(x, y)| x + y).collect();
                if let Some(local) = to_local(&m, &fixed) {
                    out.add_scaled(&ring.nf_monomial(&local), coef);
                }
            }
            out
        };
        let prod = reduce(&c.gamma);
        for k in &c.kernel {
            if !reduce(k).is_zero() {
                return Err(Error::NonUniqueSolution(format!(
                    "product depends on the choice of cocycle in sector {}",
                    c.sector
                )));
            }
        }
        Ok((c.sector, prod))
    }

    /// Residue pairing on mutually inverse sectors, else 0.
    pub fn pairing(&self, a: &StateBasisElement, b: &StateBasisElement) -> Result<Q> {
        if a.sector.inverse() != b.sector {
            return Ok(Q::zero());
        }
        let fixed = a.sector.fixed_indices();
        let ring = self.ring(&a.sector)?;
        let (Some(x), Some(y)) = (to_local(&a.monomial, &fixed), to_local(&b.monomial, &fixed)) else {
            return Ok(Q::zero());
        };
        Ok(ring.residue_pairing(&ring.nf_monomial(&x), &ring.nf_monomial(&y)))
    }
}

pub fn b_multiply(
    p: &InvertiblePotential,
    a: &StateBasisElement,
    b: &StateBasisElement,
) -> Result<(GroupElement, RingElement)> {
    BModel::new(p, &[])?.multiply(a, b)
}

pub fn b_pairing(p: &InvertiblePotential, a: &StateBasisElement, b: &StateBasisElement) -> Result<Q> {
    BModel::new(p, &[])?.pairing(a, b)
}

/// Table on an already built space; products leaving the space are errors.
pub fn table_on_space(space: &StateSpace) -> Result<FrobeniusTable> {
    let p = &space.potential;
    let sectors: Vec<GroupElement> = space.group.elements().to_vec();
    let model = BModel::new(p, &sectors)?;
    let index: HashMap<&StateBasisElement, usize> =
        space.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = space.len();
    let mut products = vec![vec![BTreeMap::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (sector, prod) = model.multiply(&space.elements[i], &space.elements[j])?;
            let ring = model.ring(&sector)?;
            let fixed = sector.fixed_indices();
            for (k, c) in prod.iter() {
                let e = StateBasisElement {
                    model: space.model,
                    sector: sector.clone(),
                    monomial: to_full(&ring.basis()[*k], &fixed, p.n_vars()),
                };
                let Some(&pos) = index.get(&e) else {
                    return Err(Error::VerificationFailure(format!(
                        "closure fails: {} * {} has the non-invariant term {}",
                        space.elements[i].label(p.vars()),
                        space.elements[j].label(p.vars()),
                        e.label(p.vars())
                    )));
                };
                products[i][j].insert(pos, c.clone());
            }
        }
    }
    let mut pairing = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            pairing[i][j] = model.pairing(&space.elements[i], &space.elements[j])?;
        }
    }
    let identity = space
        .elements
        .iter()
        .position(|e| e.sector.is_identity() && e.monomial.iter().all(|&k| k == 0))
        .ok_or_else(|| Error::InternalInconsistency("no identity element".into()))?;
    Ok(FrobeniusTable {
        labels: space.elements.iter().map(|e| e.label(p.vars())).collect(),
        degrees: Some(space.degrees.clone()),
        products,
        pairing,
        identity,
    })
}

pub fn b_frobenius_table(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<FrobeniusTable> {
    let space = b_state_space(p, g)?;
    table_on_space(&space)
}

/// Monomials in generators, evaluated in a table; used for presentations.
pub fn power_product(t: &FrobeniusTable, gens: &[usize], exps: &[u32]) -> BTreeMap<usize, Q> {
    let mut acc = t.unit(t.identity);
    for (g, &k) in gens.iter().zip(exps) {
        for _ in 0..k {
            acc = t.product(&acc, &t.unit(*g));
        }
    }
    acc
}
