//! Buchberger completion over Q for weighted-degree-then-lex orders.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::Q;

/// (weighted degree, exponents in priority order). Larger is bigger.
pub type Key = (u64, Vec<u32>);
pub type OPoly = BTreeMap<Key, Q>;

#[derive(Debug, Clone)]
pub struct MonomialOrder {
    weights: Vec<u64>,
    /// perm[i] is the original index of the i-th most significant variable.
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<u64>, perm: Vec<usize>) -> Self {
        MonomialOrder { weights, perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn key(&self, e: &[u32]) -> Key {
        let w = e.iter().zip(&self.weights).map(|(&k, &w)| k as u64 * w).sum();
        (w, self.perm.iter().map(|&i| e[i]).collect())
    }

    pub fn unkey(&self, k: &Key) -> Vec<u32> {
        let mut e = vec![0; self.n()];
        for (pos, &i) in self.perm.iter().enumerate() {
            e[i] = k.1[pos];
        }
        e
    }

    pub fn from_poly(&self, p: &Polynomial) -> OPoly {
        p.iter().map(|(e, c)| (self.key(e), c.clone())).collect()
    }

    pub fn to_poly(&self, p: &OPoly) -> Polynomial {
        p.iter().map(|(k, c)| (self.unkey(k), c.clone())).collect()
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_to(p: &mut OPoly, k: Key, c: Q) {
    use std::collections::btree_map::Entry;
    match p.entry(k) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn monic(mut p: OPoly) -> OPoly {
    let lc = p.last_key_value().map(|(_, c)| c.clone()).unwrap_or_else(Q::one);
    let inv = lc.recip();
    for c in p.values_mut() {
        *c *= &inv;
    }
    p
}

/// Add `c · x^shift · g` to `p`; `dw` is the weighted degree of the shift.
fn add_shifted(p: &mut OPoly, g: &OPoly, shift: &[u32], dw: u64, c: &Q, skip_lead: bool) {
    let n = if skip_lead { g.len().saturating_sub(1) } else { g.len() };
    for (gk, gc) in g.iter().take(n) {
        let e: Vec<u32> = gk.1.iter().zip(shift).map(|(a, b)| a + b).collect();
        add_to(p, (gk.0 + dw, e), c * gc);
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<OPoly>,
}

impl GroebnerBasis {
    pub fn compute(order: MonomialOrder, generators: &[Polynomial]) -> GroebnerBasis {
        let mut gb = GroebnerBasis { order, polys: Vec::new() };
        for g in generators {
            let r = gb.reduce_ordered(gb.order.from_poly(g));
            if !r.is_empty() {
                gb.polys.push(monic(r));
            }
        }
        let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
        for j in 0..gb.polys.len() {
            for i in 0..j {
                pairs.push_back((i, j));
            }
        }
        while let Some((i, j)) = pairs.pop_front() {
            let li = gb.lead(i).clone();
            let lj = gb.lead(j).clone();
            if li.1.iter().zip(&lj.1).all(|(a, b)| *a == 0 || *b == 0) {
                continue;
            }
            let lcm: Vec<u32> = li.1.iter().zip(&lj.1).map(|(a, b)| *a.max(b)).collect();
            let si: Vec<u32> = lcm.iter().zip(&li.1).map(|(a, b)| a - b).collect();
            let sj: Vec<u32> = lcm.iter().zip(&lj.1).map(|(a, b)| a - b).collect();
            let wl = gb.weight(&lcm);
            let mut s = OPoly::new();
            add_shifted(&mut s, &gb.polys[i], &si, wl - li.0, &Q::one(), true);
            add_shifted(&mut s, &gb.polys[j], &sj, wl - lj.0, &-Q::one(), true);
            let r = gb.reduce_ordered(s);
            if !r.is_empty() {
                gb.polys.push(monic(r));
                let k = gb.polys.len() - 1;
                for i in 0..k {
                    pairs.push_back((i, k));
                }
            }
        }
        gb.make_reduced();
        gb
    }

    fn weight(&self, perm_exps: &[u32]) -> u64 {
        // weights are stored in original coordinates
        let e = self.order.unkey(&(0, perm_exps.to_vec()));
        self.order.key(&e).0
    }

    fn lead(&self, i: usize) -> &Key {
        self.polys[i].last_key_value().unwrap().0
    }

    fn make_reduced(&mut self) {
        let mut keep: Vec<OPoly> = Vec::new();
        let mut polys = std::mem::take(&mut self.polys);
        polys.sort_by(|a, b| a.last_key_value().unwrap().0.cmp(b.last_key_value().unwrap().0));
        for p in polys {
            let lp = p.last_key_value().unwrap().0.clone();
            if !keep.iter().any(|q| divides(&q.last_key_value().unwrap().0 .1, &lp.1)) {
                keep.push(p);
            }
        }
        self.polys = keep.clone();
        for i in 0..keep.len() {
            let mut p = keep[i].clone();
            let (lk, lc) = p.pop_last().unwrap();
            let others = GroebnerBasis {
                order: self.order.clone(),
                polys: keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect(),
            };
            let mut r = others.reduce_ordered(p);
            r.insert(lk, lc);
            self.polys[i] = monic(r);
        }
    }

    /// Full reduction in ordered coordinates.
    pub fn reduce_ordered(&self, mut p: OPoly) -> OPoly {
        let mut rem = OPoly::new();
        while let Some((k, c)) = p.pop_last() {
            let div = self.polys.iter().find(|g| divides(&g.last_key_value().unwrap().0 .1, &k.1));
            match div {
                Some(g) => {
                    let lk = g.last_key_value().unwrap().0;
                    let shift: Vec<u32> = k.1.iter().zip(&lk.1).map(|(a, b)| a - b).collect();
                    add_shifted(&mut p, g, &shift, k.0 - lk.0, &-c, true);
                }
                None => {
                    rem.insert(k, c);
                }
            }
        }
        rem
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.order.to_poly(&self.reduce_ordered(self.order.from_poly(p)))
    }

    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.polys.iter().map(|p| self.order.unkey(p.last_key_value().unwrap().0)).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Monomials outside the leading ideal, or None past `limit`.
    pub fn standard_monomials(&self, limit: usize) -> Option<Vec<Vec<u32>>> {
        let n = self.order.n();
        let leads = self.leading_monomials();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut queue = vec![vec![0u32; n]];
        while let Some(m) = queue.pop() {
            if seen.contains(&m) || leads.iter().any(|l| divides(l, &m)) {
                continue;
            }
            seen.insert(m.clone());
            if seen.len() > limit {
                return None;
            }
            for k in 0..n {
                let mut e = m.clone();
                e[k] += 1;
                queue.push(e);
            }
        }
        Some(seen.into_iter().collect())
    }
}
