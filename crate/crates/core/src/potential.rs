//! Invertible potentials: parsing, validation, atomic classification, charges.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{det_i64, inverse_int, rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Fermat,
    Loop,
    Chain,
}

/// One atomic summand. `vars` are indices into the parent potential.
///
/// For a chain the order runs from the head to the terminal variable,
/// which carries the pure power. Loops start at their smallest index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomicBlock {
    pub kind: BlockKind,
    pub vars: Vec<usize>,
    pub exponents: Vec<u32>,
}

impl AtomicBlock {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// Raw JSON form of a potential.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialJson {
    pub vars: Vec<String>,
    pub exponents: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct InvertiblePotential {
    vars: Vec<String>,
    exponents: Vec<Vec<u32>>,
    charges: Vec<Rat>,
    a_inv: Vec<Vec<Rat>>,
    det: i64,
    blocks: Vec<AtomicBlock>,
}

impl PartialEq for InvertiblePotential {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.exponents == other.exponents
    }
}

impl Eq for InvertiblePotential {}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub det: i64,
    #[serde(serialize_with = "crate::io::ser_rats")]
    pub charges: Vec<Rat>,
    pub blocks: Vec<AtomicBlock>,
    #[serde(serialize_with = "crate::io::ser_rat")]
    pub central_charge: Rat,
    pub milnor_number: u64,
}

/// Parse `mono ('+' mono)*` into variable names and an exponent matrix.
/// Variable i is the main variable of monomial i when every monomial has
/// one; otherwise variables keep first-appearance order. Coefficients are
/// dropped.
pub fn parse_matrix(text: &str) -> Result<(Vec<String>, Vec<Vec<u32>>)> {
    let mut vars: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    if text.trim().is_empty() {
        return Err(Error::Parse("empty potential".into()));
    }
    for mono in text.split('+') {
        let mono = mono.trim();
        if mono.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut row: Vec<(usize, u32)> = Vec::new();
        for (pos, factor) in mono.split('*').enumerate() {
            let factor = factor.trim();
            if pos == 0 && !factor.is_empty() && factor.chars().all(|c| c.is_ascii_digit()) {
                // numeric coefficient
                if factor.parse::<u64>().map_or(true, |c| c == 0) {
                    return Err(Error::Parse(format!("bad coefficient '{factor}'")));
                }
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            if !is_ident(name) {
                return Err(Error::Parse(format!("bad factor '{factor}'")));
            }
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in '{factor}'")));
            }
            let idx = match vars.iter().position(|v| v == name) {
                Some(i) => i,
                None => {
                    vars.push(name.to_string());
                    vars.len() - 1
                }
            };
            match row.iter_mut().find(|(i, _)| *i == idx) {
                Some(entry) => entry.1 += exp,
                None => row.push((idx, exp)),
            }
        }
        if row.is_empty() {
            return Err(Error::Parse(format!("constant monomial '{mono}'")));
        }
        rows.push(row);
    }
    let n = vars.len();
    let matrix: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0; n];
            for &(i, e) in r {
                v[i] = e;
            }
            v
        })
        .collect();
    let distinct: BTreeSet<&Vec<u32>> = matrix.iter().collect();
    if distinct.len() != matrix.len() {
        return Err(Error::Parse("repeated monomial".into()));
    }
    if matrix.len() != n {
        return Err(Error::NonSquare { monomials: matrix.len(), vars: n });
    }
    if let Some(main) = main_vars(&matrix) {
        let vars = main.iter().map(|&j| vars[j].clone()).collect();
        let matrix = matrix.iter().map(|r| main.iter().map(|&j| r[j]).collect()).collect();
        return Ok((vars, matrix));
    }
    Ok((vars, matrix))
}

/// Index of the unique exponent ≥ 2 in each row, if these form a permutation.
fn main_vars(m: &[Vec<u32>]) -> Option<Vec<usize>> {
    let main: Vec<usize> = m
        .iter()
        .map(|r| {
            let big: Vec<usize> = (0..r.len()).filter(|&j| r[j] >= 2).collect();
            (big.len() == 1).then(|| big[0])
        })
        .collect::<Option<_>>()?;
    let distinct: BTreeSet<usize> = main.iter().copied().collect();
    (distinct.len() == m.len()).then_some(main)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_potential(text: &str) -> Result<InvertiblePotential> {
    let (vars, m) = parse_matrix(text)?;
    InvertiblePotential::new(vars, m)
}

/// Accepts either the text grammar or `{"vars":[...],"exponents":[[...]]}`.
pub fn parse_any(input: &str) -> Result<InvertiblePotential> {
    if input.trim_start().starts_with('{') {
        let j: PotentialJson =
            serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        if j.exponents.len() != j.vars.len() || j.exponents.iter().any(|r| r.len() != j.vars.len())
        {
            return Err(Error::NonSquare { monomials: j.exponents.len(), vars: j.vars.len() });
        }
        InvertiblePotential::new(j.vars, j.exponents)
    } else {
        parse_potential(input)
    }
}

/// Full validation: det, charge range, atomic decomposition.
pub fn validate(vars: &[String], m: &[Vec<u32>]) -> Result<ValidationReport> {
    let p = InvertiblePotential::new(vars.to_vec(), m.to_vec())?;
    Ok(p.report())
}

/// Decompose the exponent matrix into atomic blocks in canonical order.
pub fn classify_matrix(m: &[Vec<u32>]) -> Result<Vec<AtomicBlock>> {
    let n = m.len();
    let mut main = vec![usize::MAX; n];
    let mut main_exp = vec![0u32; n];
    let mut next: Vec<Option<usize>> = vec![None; n];
    for (r, row) in m.iter().enumerate() {
        let big: Vec<usize> = (0..n).filter(|&j| row[j] >= 2).collect();
        let ones: Vec<usize> = (0..n).filter(|&j| row[j] == 1).collect();
        if big.len() != 1 || ones.len() > 1 {
            return Err(Error::Degenerate(format!(
                "monomial {r} is not of the form x^a or x^a*y (a >= 2)"
            )));
        }
        let v = big[0];
        if main[v] != usize::MAX {
            return Err(Error::Degenerate(format!("variable {v} leads two monomials")));
        }
        main[v] = r;
        main_exp[v] = row[v];
        next[v] = ones.first().copied();
    }
    let mut indeg = vec![0usize; n];
    for t in next.iter().flatten() {
        indeg[*t] += 1;
    }
    if indeg.iter().any(|&d| d > 1) {
        return Err(Error::Degenerate("a variable is pointed to twice".into()));
    }
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    // paths first from their heads
    for h in 0..n {
        if indeg[h] != 0 {
            continue;
        }
        let mut path = vec![h];
        seen[h] = true;
        let mut cur = h;
        while let Some(t) = next[cur] {
            seen[t] = true;
            path.push(t);
            cur = t;
        }
        let exps = path.iter().map(|&v| main_exp[v]).collect();
        let kind = if path.len() == 1 { BlockKind::Fermat } else { BlockKind::Chain };
        blocks.push(AtomicBlock { kind, vars: path, exponents: exps });
    }
    for s in 0..n {
        if seen[s] {
            continue;
        }
        // smallest unseen index starts its cycle
        let mut cyc = vec![s];
        seen[s] = true;
        let mut cur = next[s].expect("cycle node has a successor");
        while cur != s {
            seen[cur] = true;
            cyc.push(cur);
            cur = next[cur].expect("cycle node has a successor");
        }
        let exps = cyc.iter().map(|&v| main_exp[v]).collect();
        blocks.push(AtomicBlock { kind: BlockKind::Loop, vars: cyc, exponents: exps });
    }
    blocks.sort_by_key(|b| *b.vars.iter().min().unwrap());
    Ok(blocks)
}

impl InvertiblePotential {
    pub fn new(vars: Vec<String>, exponents: Vec<Vec<u32>>) -> Result<Self> {
        let n = vars.len();
        if exponents.len() != n || exponents.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare { monomials: exponents.len(), vars: n });
        }
        let distinct: BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != n {
            return Err(Error::Parse("repeated variable name".into()));
        }
        // monomial i carries the main exponent of variable i
        let mut exponents = exponents;
        if let Some(main) = main_vars(&exponents) {
            let mut rows: Vec<(usize, Vec<u32>)> = main.into_iter().zip(exponents).collect();
            rows.sort_by_key(|(m, _)| *m);
            exponents = rows.into_iter().map(|(_, r)| r).collect();
        }
        let im: Vec<Vec<i64>> =
            exponents.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let det = det_i64(&im);
        if det == 0 {
            return Err(Error::Degenerate("exponent matrix has determinant 0".into()));
        }
        let a_inv = inverse_int(&im).ok_or_else(|| Error::Degenerate("singular".into()))?;
        let charges: Vec<Rat> =
            a_inv.iter().map(|r| r.iter().fold(Rat::zero(), |s, x| s + x)).collect();
        let half = rat(1, 2);
        for (v, q) in vars.iter().zip(&charges) {
            if *q <= Rat::zero() || *q > half {
                return Err(Error::ChargeOutOfRange(format!("q_{v} = {q}")));
            }
        }
        let blocks = classify_matrix(&exponents)?;
        let p = InvertiblePotential { vars, exponents, charges, a_inv, det, blocks };
        p.milnor_number_checked()?;
        Ok(p)
    }

    /// The potential in zero variables (W = 0).
    pub fn empty() -> Self {
        InvertiblePotential {
            vars: vec![],
            exponents: vec![],
            charges: vec![],
            a_inv: vec![],
            det: 1,
            blocks: vec![],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn charges(&self) -> &[Rat] {
        &self.charges
    }

    /// Exact A^{-1}; columns are the ρ generators before reduction.
    pub fn a_inv(&self) -> &[Vec<Rat>] {
        &self.a_inv
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn blocks(&self) -> &[AtomicBlock] {
        &self.blocks
    }

    pub fn central_charge(&self) -> Rat {
        self.charges.iter().fold(Rat::zero(), |s, q| s + Rat::one() - q * 2)
    }

    pub fn milnor_number(&self) -> u64 {
        self.milnor_number_checked().expect("checked at construction")
    }

    fn milnor_number_checked(&self) -> Result<u64> {
        let mu = self
            .charges
            .iter()
            .fold(Rat::one(), |s, q| s * (q.recip() - Rat::one()));
        if !mu.is_integer() || mu <= Rat::zero() {
            return Err(Error::InternalInconsistency(format!("Milnor number {mu}")));
        }
        Ok(mu.to_integer() as u64)
    }

    pub fn transpose(&self) -> InvertiblePotential {
        let n = self.n_vars();
        let t: Vec<Vec<u32>> =
            (0..n).map(|i| (0..n).map(|j| self.exponents[j][i]).collect()).collect();
        InvertiblePotential::new(self.vars.clone(), t).expect("transpose of a valid potential")
    }

    /// Weighted degree of an exponent vector.
    pub fn weighted_degree(&self, e: &[u32]) -> Rat {
        e.iter().zip(&self.charges).fold(Rat::zero(), |s, (&k, q)| s + q * k as i64)
    }

    /// Restriction to the coordinate subspace `fixed` (sorted parent indices).
    pub fn restrict(&self, fixed: &[usize]) -> Result<InvertiblePotential> {
        let fixed: Vec<usize> = fixed.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if fixed.len() == self.n_vars() {
            return Ok(self.clone());
        }
        let rows: Vec<Vec<u32>> = self
            .exponents
            .iter()
            .filter(|r| r.iter().enumerate().all(|(j, &e)| e == 0 || fixed.contains(&j)))
            .map(|r| fixed.iter().map(|&j| r[j]).collect())
            .collect();
        if rows.len() != fixed.len() {
            return Err(Error::InternalInconsistency(format!(
                "restriction to {:?} keeps {} monomials",
                fixed,
                rows.len()
            )));
        }
        if fixed.is_empty() {
            return Ok(InvertiblePotential::empty());
        }
        let vars = fixed.iter().map(|&j| self.vars[j].clone()).collect();
        InvertiblePotential::new(vars, rows)
            .map_err(|e| Error::InternalInconsistency(format!("restriction not invertible: {e}")))
    }

    /// Variables in canonical block order; used as lex priority.
    pub fn var_priority(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.vars.iter().copied()).collect()
    }

    /// ∂W/∂x_j as (coefficient, exponent vector) terms.
    pub fn partial(&self, j: usize) -> Vec<(i64, Vec<u32>)> {
        self.exponents
            .iter()
            .filter(|r| r[j] > 0)
            .map(|r| {
                let mut e = r.clone();
                e[j] -= 1;
                (r[j] as i64, e)
            })
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn report(&self) -> ValidationReport {
        ValidationReport {
            det: self.det,
            charges: self.charges.clone(),
            blocks: self.blocks.clone(),
            central_charge: self.central_charge(),
            milnor_number: self.milnor_number(),
        }
    }

    pub fn to_json(&self) -> PotentialJson {
        PotentialJson { vars: self.vars.clone(), exponents: self.exponents.clone() }
    }

    /// Variables permuted by `perm` (new variable i is old variable perm[i]).
    pub fn permute_vars(&self, perm: &[usize]) -> Result<InvertiblePotential> {
        let vars = perm.iter().map(|&p| self.vars[p].clone()).collect();
        let m = self.exponents.iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        InvertiblePotential::new(vars, m)
    }
}

/// Render an exponent vector as a monomial, `1` for the empty one.
pub fn monomial_string(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| if k == 1 { vars[j].clone() } else { format!("{}^{}", vars[j], k) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for InvertiblePotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_vars() == 0 {
            return write!(f, "0");
        }
        let monos: Vec<String> =
            self.exponents.iter().map(|r| monomial_string(&self.vars, r)).collect();
        write!(f, "{}", monos.join("+"))
    }
}

/// Fermat x^a, loop and chain constructors over default names.
pub fn default_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
    (0..n)
        .map(|i| if i < NAMES.len() { NAMES[i].to_string() } else { format!("x{i}") })
        .collect()
}

pub fn fermat(a: u32) -> Result<InvertiblePotential> {
    InvertiblePotential::new(default_names(1), vec![vec![a]])
}

pub fn loop_potential(a: &[u32]) -> Result<InvertiblePotential> {
    let n = a.len();
    let m = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = a[i];
            r[(i + 1) % n] += 1;
            r
        })
        .collect();
    InvertiblePotential::new(default_names(n), m)
}

pub fn chain_potential(a: &[u32]) -> Result<InvertiblePotential> {
    let n = a.len();
    let m = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = a[i];
            if i + 1 < n {
                r[i + 1] = 1;
            }
            r
        })
        .collect();
    InvertiblePotential::new(default_names(n), m)
}

/// Decoupled sum; variables of `b` follow those of `a`.
pub fn direct_sum(a: &InvertiblePotential, b: &InvertiblePotential) -> Result<InvertiblePotential> {
    let (na, nb) = (a.n_vars(), b.n_vars());
    let vars = default_names(na + nb);
    let mut m = Vec::new();
    for r in a.exponents() {
        let mut row = r.clone();
        row.extend(std::iter::repeat_n(0, nb));
        m.push(row);
    }
    for r in b.exponents() {
        let mut row = vec![0; na];
        row.extend(r.iter().copied());
        m.push(row);
    }
    InvertiblePotential::new(vars, m)
}
