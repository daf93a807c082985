//! Milnor rings Q[x]/(∂W) with atomic monomial bases, normal forms,
//! Hessian classes and the residue pairing.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::poly::{self, Polynomial};
use crate::potential::{AtomicBlock, BlockKind, InvertiblePotential};
use crate::rational::{inverse_q, q_int, rank_q, Q, Rat};

/// Sparse coefficients on a ring basis.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingElement {
    coeffs: BTreeMap<usize, Q>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn basis(i: usize) -> Self {
        RingElement { coeffs: [(i, Q::one())].into() }
    }

    pub fn from_map(coeffs: BTreeMap<usize, Q>) -> Self {
        RingElement { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_scaled(&mut self, other: &RingElement, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.coeffs {
            let e = self.coeffs.entry(*i).or_insert_with(Q::zero);
            *e += x * c;
            if e.is_zero() {
                self.coeffs.remove(i);
            }
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut r = self.clone();
        r.add_scaled(other, &Q::one());
        r
    }

    pub fn scale(&self, c: &Q) -> RingElement {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement { coeffs: self.coeffs.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        (0..n).map(|i| self.get(i)).collect()
    }
}

/// Atomic basis of one block, as exponents along the block order.
pub fn atomic_basis(block: &AtomicBlock) -> Vec<Vec<u32>> {
    let a = &block.exponents;
    match block.kind {
        BlockKind::Fermat => (0..a[0] - 1).map(|k| vec![k]).collect(),
        BlockKind::Loop => boxes(a),
        BlockKind::Chain => boxes(a)
            .into_iter()
            .filter(|al| {
                let s = (0..a.len())
                    .take_while(|&i| al[i] == if i % 2 == 0 { a[i] - 1 } else { 0 })
                    .count();
                s % 2 == 0
            })
            .collect(),
    }
}

fn boxes(a: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &ai in a {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..ai).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Cartesian product of the block bases as full exponent vectors.
pub fn atomic_basis_full(p: &InvertiblePotential) -> Vec<Vec<u32>> {
    let n = p.n_vars();
    let mut out = vec![vec![0u32; n]];
    for b in p.blocks() {
        let local = atomic_basis(b);
        out = out
            .into_iter()
            .flat_map(|v| {
                local.iter().map(move |l| {
                    let mut w = v.clone();
                    for (pos, &var) in b.vars.iter().enumerate() {
                        w[var] = l[pos];
                    }
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisComparison {
    pub mu: u64,
    pub atomic_count: usize,
    pub groebner_count: usize,
    /// The atomic monomials are linearly independent modulo the Jacobian ideal.
    pub atomic_spans: bool,
    /// Atomic basis equals the standard monomials of the Gröbner basis as sets.
    pub literal_equal: bool,
}

#[derive(Debug)]
pub struct MilnorRing {
    potential: InvertiblePotential,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    degrees: Vec<Rat>,
    gb: Option<GroebnerBasis>,
    standard: Vec<Vec<u32>>,
    std_to_atomic: HashMap<Vec<u32>, RingElement>,
    mult: Vec<Vec<RingElement>>,
    hess: RingElement,
    top: usize,
    hess_top: Q,
}

impl MilnorRing {
    pub fn new(p: &InvertiblePotential) -> Result<MilnorRing> {
        let n = p.n_vars();
        let mu = p.milnor_number() as usize;
        let mut basis = atomic_basis_full(p);
        basis.sort_by(|a, b| p.weighted_degree(a).cmp(&p.weighted_degree(b)).then(a.cmp(b)));
        if basis.len() != mu {
            return Err(Error::InternalInconsistency(format!(
                "atomic basis of {p} has {} elements, mu = {mu}",
                basis.len()
            )));
        }
        let index: HashMap<Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let degrees: Vec<Rat> = basis.iter().map(|e| p.weighted_degree(e)).collect();
        if n == 0 {
            return Ok(MilnorRing {
                potential: p.clone(),
                basis,
                index,
                degrees,
                gb: None,
                standard: vec![vec![]],
                std_to_atomic: [(vec![], RingElement::basis(0))].into(),
                mult: vec![],
                hess: RingElement::basis(0),
                top: 0,
                hess_top: Q::one(),
            });
        }
        let l = p.charges().iter().fold(1i64, |l, q| num_integer::lcm(l, *q.denom()));
        let weights: Vec<u64> = p.charges().iter().map(|q| (q * l).to_integer() as u64).collect();
        let order = MonomialOrder::new(weights, p.var_priority());
        let gens: Vec<Polynomial> = (0..n)
            .map(|j| p.partial(j).into_iter().map(|(c, e)| (e, q_int(c))).collect())
            .collect();
        let gb = GroebnerBasis::compute(order, &gens);
        let standard = gb
            .standard_monomials(4 * mu + 16)
            .filter(|s| s.len() == mu)
            .ok_or_else(|| {
                Error::InternalInconsistency(format!("Groebner quotient of {p} has wrong size"))
            })?;
        // change of basis, one weighted degree at a time
        let mut std_to_atomic: HashMap<Vec<u32>, RingElement> = HashMap::new();
        let mut by_deg: BTreeMap<Rat, (Vec<usize>, Vec<Vec<u32>>)> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            by_deg.entry(*d).or_default().0.push(i);
        }
        for s in &standard {
            by_deg.entry(p.weighted_degree(s)).or_default().1.push(s.clone());
        }
        for (d, (atoms, stds)) in &by_deg {
            if atoms.len() != stds.len() {
                return Err(Error::InternalInconsistency(format!(
                    "degree {d}: {} atomic vs {} standard monomials",
                    atoms.len(),
                    stds.len()
                )));
            }
            let spos: HashMap<&Vec<u32>, usize> =
                stds.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let t: Vec<Vec<Q>> = atoms
                .iter()
                .map(|&i| {
                    let r = gb.reduce(&poly::monomial(basis[i].clone()));
                    let mut row = vec![Q::zero(); stds.len()];
                    for (e, c) in r {
                        row[spos[&e]] = c;
                    }
                    row
                })
                .collect();
            let tinv = inverse_q(&t).ok_or_else(|| {
                Error::InternalInconsistency(format!("atomic monomials of degree {d} are dependent"))
            })?;
            for (si, s) in stds.iter().enumerate() {
                let m = atoms.iter().enumerate().map(|(ai, &i)| (i, tinv[si][ai].clone())).collect();
                std_to_atomic.insert(s.clone(), RingElement::from_map(m));
            }
        }
        let mut ring = MilnorRing {
            potential: p.clone(),
            basis,
            index,
            degrees,
            gb: Some(gb),
            standard,
            std_to_atomic,
            mult: vec![],
            hess: RingElement::zero(),
            top: 0,
            hess_top: Q::zero(),
        };
        ring.mult = (0..n)
            .map(|k| {
                ring.basis
                    .iter()
                    .map(|b| {
                        let mut e = b.clone();
                        e[k] += 1;
                        ring.normal_form(&poly::monomial(e))
                    })
                    .collect()
            })
            .collect();
        let top_deg = *ring.degrees.iter().max().unwrap();
        let tops: Vec<usize> = (0..mu).filter(|&i| ring.degrees[i] == top_deg).collect();
        if tops.len() != 1 || top_deg != p.central_charge() {
            return Err(Error::InternalInconsistency(format!("top degree of {p} is not 1-dimensional at c-hat")));
        }
        ring.top = tops[0];
        ring.hess = ring.normal_form(&poly::hessian(p));
        if ring.hess.len() != 1 || ring.hess.get(ring.top).is_zero() {
            return Err(Error::InternalInconsistency(format!("Hessian class of {p} is not a top-degree multiple")));
        }
        ring.hess_top = ring.hess.get(ring.top);
        Ok(ring)
    }

    /// Shared ring for `p`, built once per process.
    pub fn cached(p: &InvertiblePotential) -> Result<Arc<MilnorRing>> {
        type Cache = Mutex<HashMap<(Vec<String>, Vec<Vec<u32>>), Arc<MilnorRing>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (p.vars().to_vec(), p.exponents().to_vec());
        if let Some(r) = cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(MilnorRing::new(p)?);
        cache.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    pub fn potential(&self) -> &InvertiblePotential {
        &self.potential
    }

    pub fn n_vars(&self) -> usize {
        self.potential.n_vars()
    }

    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn degrees(&self) -> &[Rat] {
        &self.degrees
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn standard_monomials(&self) -> &[Vec<u32>] {
        &self.standard
    }

    pub fn groebner(&self) -> Option<&GroebnerBasis> {
        self.gb.as_ref()
    }

    pub fn one(&self) -> RingElement {
        RingElement::basis(self.index[&vec![0; self.n_vars()]])
    }

    pub fn top_index(&self) -> usize {
        self.top
    }

    /// Reduce an arbitrary polynomial onto the atomic basis.
    pub fn normal_form(&self, f: &Polynomial) -> RingElement {
        let Some(gb) = &self.gb else {
            let c = f.get(&vec![]).cloned().unwrap_or_else(Q::zero);
            return RingElement::basis(0).scale(&c);
        };
        let r = gb.reduce(f);
        let mut out = RingElement::zero();
        for (e, c) in r {
            out.add_scaled(&self.std_to_atomic[&e], &c);
        }
        out
    }

    /// x^e · f.
    pub fn mul_monomial(&self, e: &[u32], f: &RingElement) -> RingElement {
        let mut g = f.clone();
        for (k, &ek) in e.iter().enumerate() {
            for _ in 0..ek {
                let mut h = RingElement::zero();
                for (i, c) in g.iter() {
                    h.add_scaled(&self.mult[k][*i], c);
                }
                g = h;
                if g.is_zero() {
                    return g;
                }
            }
        }
        g
    }

    pub fn nf_monomial(&self, e: &[u32]) -> RingElement {
        if let Some(i) = self.index_of(e) {
            return RingElement::basis(i);
        }
        self.mul_monomial(e, &self.one())
    }

    pub fn multiply(&self, f: &RingElement, g: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (i, c) in f.iter() {
            out.add_scaled(&self.mul_monomial(&self.basis[*i], g), c);
        }
        out
    }

    pub fn to_polynomial(&self, f: &RingElement) -> Polynomial {
        f.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())).collect()
    }

    pub fn hessian_class(&self) -> &RingElement {
        &self.hess
    }

    /// Coefficient λ with top-degree part of f equal to λ·hess.
    pub fn hess_coefficient(&self, f: &RingElement) -> Q {
        f.get(self.top) / &self.hess_top
    }

    pub fn residue_pairing(&self, f: &RingElement, g: &RingElement) -> Q {
        let fg = self.multiply(f, g);
        q_int(self.mu() as i64) * self.hess_coefficient(&fg)
    }

    pub fn pairing_matrix(&self) -> Vec<Vec<Q>> {
        let mu = self.mu();
        (0..mu)
            .map(|i| {
                (0..mu)
                    .map(|j| self.residue_pairing(&RingElement::basis(i), &RingElement::basis(j)))
                    .collect()
            })
            .collect()
    }

    pub fn compare_bases(&self) -> BasisComparison {
        let mut a = self.basis.clone();
        let mut s = self.standard.clone();
        a.sort();
        s.sort();
        let rows: Vec<Vec<Q>> = match &self.gb {
            None => vec![vec![Q::one()]],
            Some(gb) => {
                let spos: HashMap<&Vec<u32>, usize> =
                    self.standard.iter().enumerate().map(|(i, e)| (e, i)).collect();
                self.basis
                    .iter()
                    .map(|b| {
                        let mut row = vec![Q::zero(); self.standard.len()];
                        for (e, c) in gb.reduce(&poly::monomial(b.clone())) {
                            row[spos[&e]] = c;
                        }
                        row
                    })
                    .collect()
            }
        };
        BasisComparison {
            mu: self.potential.milnor_number(),
            atomic_count: self.basis.len(),
            groebner_count: self.standard.len(),
            atomic_spans: rank_q(&rows) == self.standard.len(),
            literal_equal: a == s,
        }
    }
}

pub fn restrict_potential(p: &InvertiblePotential, fixed: &[usize]) -> Result<InvertiblePotential> {
    p.restrict(fixed)
}

pub fn normal_form(f: &Polynomial, r: &MilnorRing) -> RingElement {
    r.normal_form(f)
}

pub fn hessian_class(r: &MilnorRing) -> RingElement {
    r.hessian_class().clone()
}

pub fn residue_pairing(f: &RingElement, g: &RingElement, r: &MilnorRing) -> Q {
    r.residue_pairing(f, g)
}
