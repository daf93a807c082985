//! Sparse multivariate polynomials over Q keyed by exponent vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::potential::InvertiblePotential;
use crate::rational::{q_int, Q};

pub type Polynomial = BTreeMap<Vec<u32>, Q>;

pub fn monomial(e: Vec<u32>) -> Polynomial {
    [(e, Q::one())].into()
}

pub fn constant(n: usize, c: Q) -> Polynomial {
    let mut p = Polynomial::new();
    if !c.is_zero() {
        p.insert(vec![0; n], c);
    }
    p
}

pub fn add_term(p: &mut Polynomial, e: Vec<u32>, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub fn add(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut r = a.clone();
    for (e, c) in b {
        add_term(&mut r, e.clone(), c.clone());
    }
    r
}

pub fn scale(a: &Polynomial, c: &Q) -> Polynomial {
    if c.is_zero() {
        return Polynomial::new();
    }
    a.iter().map(|(e, x)| (e.clone(), x * c)).collect()
}

pub fn mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut r = Polynomial::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut r, e, ca * cb);
        }
    }
    r
}

/// ∂²W/∂x_i∂x_j.
pub fn second_partial(p: &InvertiblePotential, i: usize, j: usize) -> Polynomial {
    let mut r = Polynomial::new();
    for row in p.exponents() {
        let mut e = row.clone();
        if e[i] == 0 {
            continue;
        }
        let mut c = e[i] as i64;
        e[i] -= 1;
        if e[j] == 0 {
            continue;
        }
        c *= e[j] as i64;
        e[j] -= 1;
        add_term(&mut r, e, q_int(c));
    }
    r
}

/// Hessian determinant by permutation expansion; 1 in zero variables.
pub fn hessian(p: &InvertiblePotential) -> Polynomial {
    let n = p.n_vars();
    if n == 0 {
        return constant(0, Q::one());
    }
    let h: Vec<Vec<Polynomial>> =
        (0..n).map(|i| (0..n).map(|j| second_partial(p, i, j)).collect()).collect();
    let mut total = Polynomial::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |perm, sign| {
        let mut term = constant(n, q_int(sign));
        for (i, &j) in perm.iter().enumerate() {
            if h[i][j].is_empty() {
                return;
            }
            term = mul(&term, &h[i][j]);
        }
        total = add(&total, &term);
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize], i64)) {
    fn rec(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut dyn FnMut(&[usize], i64)) {
        if k == p.len() {
            f(p, sign);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, if i == k { sign } else { -sign }, f);
            p.swap(k, i);
        }
    }
    rec(p, k, 1, f)
}
