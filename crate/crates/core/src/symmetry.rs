//! Diagonal symmetries as phase vectors in (Q/Z)^N.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::potential::InvertiblePotential;
use crate::rational::{frac, parse_rat, Rat};

/// Phase vector; `phases[i]` is Θ_i in [0,1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    phases: Vec<Rat>,
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::io::ser_rats(&self.phases, s)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.phases.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

impl GroupElement {
    pub fn new(phases: Vec<Rat>) -> Self {
        GroupElement { phases: phases.into_iter().map(frac).collect() }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { phases: vec![Rat::zero(); n] }
    }

    pub fn phases(&self) -> &[Rat] {
        &self.phases
    }

    pub fn theta(&self, j: usize) -> Rat {
        self.phases[j]
    }

    pub fn n(&self) -> usize {
        self.phases.len()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new(self.phases.iter().zip(&other.phases).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(self.phases.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        GroupElement::new(self.phases.iter().map(|a| a * k).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(|p| p.is_zero())
    }

    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.phases[i].is_zero()).collect()
    }

    pub fn moved_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.phases[i].is_zero()).collect()
    }

    pub fn is_sl(&self) -> bool {
        self.phases.iter().fold(Rat::zero(), |s, p| s + p).is_integer()
    }

    pub fn order(&self) -> u64 {
        self.phases.iter().fold(1i64, |l, p| num_integer::lcm(l, *p.denom())) as u64
    }

    /// Phase picked up by the monomial with exponent vector `e`.
    pub fn phase_of(&self, e: &[u32]) -> Rat {
        frac(e.iter().zip(&self.phases).fold(Rat::zero(), |s, (&k, p)| s + p * k as i64))
    }

    pub fn preserves(&self, p: &InvertiblePotential) -> bool {
        p.exponents().iter().all(|r| self.phase_of(r).is_zero())
    }
}

pub fn fixed_indices(g: &GroupElement) -> Vec<usize> {
    g.fixed_indices()
}

/// A finite diagonal group, elements sorted with the identity first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalGroup {
    n: usize,
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl DiagonalGroup {
    /// Closure of `gens` under multiplication.
    pub fn generated_by(n: usize, gens: &[GroupElement]) -> DiagonalGroup {
        let mut set: BTreeSet<GroupElement> = BTreeSet::new();
        set.insert(GroupElement::identity(n));
        let mut frontier = vec![GroupElement::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        DiagonalGroup { n, elements: set.into_iter().collect(), generators: gens.to_vec() }
    }

    /// Group given by its full element list; a small generating set is chosen.
    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = GroupElement>) -> Self {
        let set: BTreeSet<GroupElement> = elements.into_iter().collect();
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span: BTreeSet<GroupElement> = [GroupElement::identity(n)].into();
        for e in &set {
            if !span.contains(e) {
                gens.push(e.clone());
                span = DiagonalGroup::generated_by(n, &gens).elements.into_iter().collect();
            }
        }
        let mut els: BTreeSet<GroupElement> = set;
        els.insert(GroupElement::identity(n));
        DiagonalGroup { n, elements: els.into_iter().collect(), generators: gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_sl(&self) -> bool {
        self.elements.iter().all(|g| g.is_sl())
    }

    pub fn is_subgroup_of(&self, other: &DiagonalGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn sl_part(&self) -> DiagonalGroup {
        DiagonalGroup::from_elements(self.n, self.elements.iter().filter(|g| g.is_sl()).cloned())
    }
}

/// Columns of A^{-1} reduced mod 1.
pub fn rho_generators(p: &InvertiblePotential) -> Vec<GroupElement> {
    let n = p.n_vars();
    (0..n).map(|k| GroupElement::new((0..n).map(|j| p.a_inv()[j][k]).collect())).collect()
}

/// Rows of A^{-1} reduced mod 1: the generators ρ̄ of G^max(W^T).
pub fn rho_bar_generators(p: &InvertiblePotential) -> Vec<GroupElement> {
    p.a_inv().iter().map(|r| GroupElement::new(r.clone())).collect()
}

pub fn exponential_grading(p: &InvertiblePotential) -> GroupElement {
    GroupElement::new(p.charges().to_vec())
}

pub fn enumerate_gmax(p: &InvertiblePotential) -> DiagonalGroup {
    DiagonalGroup::generated_by(p.n_vars(), &rho_generators(p))
}

pub fn subgroup_closure(p: &InvertiblePotential, gens: &[GroupElement]) -> Result<DiagonalGroup> {
    for g in gens {
        if g.n() != p.n_vars() || !g.preserves(p) {
            return Err(Error::NotASymmetry(g.to_string()));
        }
    }
    Ok(DiagonalGroup::generated_by(p.n_vars(), gens))
}

pub fn j_group(p: &InvertiblePotential) -> DiagonalGroup {
    DiagonalGroup::generated_by(p.n_vars(), &[exponential_grading(p)])
}

pub fn is_admissible(p: &InvertiblePotential, g: &DiagonalGroup) -> bool {
    g.contains(&exponential_grading(p))
}

/// Π ρ_i^{word_i}.
pub fn rho_word(p: &InvertiblePotential, word: &[i64]) -> GroupElement {
    let n = p.n_vars();
    GroupElement::new(
        (0..n)
            .map(|j| (0..n).fold(Rat::zero(), |s, i| s + p.a_inv()[j][i] * word[i]))
            .collect(),
    )
}

/// Π ρ̄_i^{word_i}, an element of G^max(W^T).
pub fn rho_bar_word(p: &InvertiblePotential, word: &[i64]) -> GroupElement {
    let n = p.n_vars();
    GroupElement::new(
        (0..n)
            .map(|j| (0..n).fold(Rat::zero(), |s, i| s + p.a_inv()[i][j] * word[i]))
            .collect(),
    )
}

/// Canonical ρ-word of g: a = A·Θ, a nonnegative integer vector.
pub fn rho_word_of(p: &InvertiblePotential, g: &GroupElement) -> Result<Vec<i64>> {
    p.exponents()
        .iter()
        .map(|r| {
            let s = r.iter().zip(g.phases()).fold(Rat::zero(), |s, (&a, t)| s + t * a as i64);
            if s.is_integer() {
                Ok(s.to_integer())
            } else {
                Err(Error::NotASymmetry(g.to_string()))
            }
        })
        .collect()
}

pub fn theta_of(g: &GroupElement, j: usize) -> Rat {
    g.theta(j)
}

/// Unreduced phase Σ_i (α_i+1)·(A^{-1})_{ji} of ρ^α J on X_j.
pub fn rho_word_theta(p: &InvertiblePotential, alpha: &[i64], j: usize) -> Rat {
    (0..p.n_vars()).fold(Rat::zero(), |s, i| s + p.a_inv()[j][i] * (alpha[i] + 1))
}

/// Dual group inside G^max(W^T): h with hᵀ·A·g ∈ Z for every generator g of G.
pub fn dual_group(p: &InvertiblePotential, g: &DiagonalGroup) -> DiagonalGroup {
    let pt = p.transpose();
    let gmax_t = enumerate_gmax(&pt);
    let tests: Vec<Vec<Rat>> = {
        let gens: &[GroupElement] =
            if g.generators().is_empty() { g.elements() } else { g.generators() };
        gens.iter()
            .map(|x| {
                // A·Θ^g
                p.exponents()
                    .iter()
                    .map(|r| r.iter().zip(x.phases()).fold(Rat::zero(), |s, (&a, t)| s + t * a as i64))
                    .collect()
            })
            .collect()
    };
    let keep = gmax_t.elements().iter().filter(|h| {
        tests.iter().all(|ag| {
            h.phases().iter().zip(ag).fold(Rat::zero(), |s, (a, b)| s + a * b).is_integer()
        })
    });
    DiagonalGroup::from_elements(p.n_vars(), keep.cloned())
}

/// CLI group syntax: `gmax` | `J` | `SL` | `gens:p/q,..;..` | `rho:a,b,..;..`.
pub fn parse_group(p: &InvertiblePotential, spec: &str) -> Result<DiagonalGroup> {
    let spec = spec.trim();
    let n = p.n_vars();
    let lists = |body: &str| -> Vec<Vec<String>> {
        body.split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.split(',').map(|t| t.trim().to_string()).collect())
            .collect()
    };
    match spec {
        "gmax" | "Gmax" | "GMAX" => Ok(enumerate_gmax(p)),
        "J" | "j" => Ok(j_group(p)),
        "SL" | "sl" => Ok(enumerate_gmax(p).sl_part()),
        "id" | "trivial" => Ok(DiagonalGroup::generated_by(n, &[])),
        _ => {
            if let Some(body) = spec.strip_prefix("gens:") {
                let mut gens = Vec::new();
                for l in lists(body) {
                    if l.len() != n {
                        return Err(Error::Input(format!("generator needs {n} phases")));
                    }
                    let ph = l
                        .iter()
                        .map(|t| parse_rat(t).ok_or_else(|| Error::Input(format!("bad phase '{t}'"))))
                        .collect::<Result<Vec<_>>>()?;
                    gens.push(GroupElement::new(ph));
                }
                subgroup_closure(p, &gens)
            } else if let Some(body) = spec.strip_prefix("rho:") {
                let mut gens = Vec::new();
                for l in lists(body) {
                    if l.len() != n {
                        return Err(Error::Input(format!("rho word needs {n} entries")));
                    }
                    let w = l
                        .iter()
                        .map(|t| t.parse::<i64>().map_err(|_| Error::Input(format!("bad exponent '{t}'"))))
                        .collect::<Result<Vec<_>>>()?;
                    gens.push(rho_word(p, &w));
                }
                subgroup_closure(p, &gens)
            } else {
                Err(Error::Input(format!("unknown group '{spec}'")))
            }
        }
    }
}
