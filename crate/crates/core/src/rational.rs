//! Exact rational helpers shared by the algebra modules.
//!
//! Phases, charges and degrees are small and live in [`Rat`]; ring
//! coefficients can grow and live in [`Q`].

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = Ratio<i64>;
pub type Q = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Reduce into `[0, 1)`.
pub fn frac(x: Rat) -> Rat {
    x - x.floor()
}

pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}

pub fn to_q(x: &Rat) -> Q {
    Q::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_rat(x: &Q) -> Option<Rat> {
    Some(Rat::new(x.numer().to_i64()?, x.denom().to_i64()?))
}

/// Parse `p/q` or `p`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rat::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Determinant of a small integer matrix (Bareiss, exact).
pub fn det_i64(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Exact inverse of a square matrix over the rationals.
pub fn inverse_q(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn inverse_int(a: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let qa: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| q_int(x)).collect()).collect();
    let inv = inverse_q(&qa)?;
    inv.iter()
        .map(|r| r.iter().map(q_to_rat).collect::<Option<Vec<_>>>())
        .collect()
}

/// Rank by Gaussian elimination.
pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..ncols {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn lcm(a: i64, b: i64) -> i64 {
    num_integer::lcm(a, b)
}

pub fn abs_i64(x: i64) -> i64 {
    x.abs()
}

pub fn q_is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_and_parse() {
        assert_eq!(frac(rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(rat(7, 7)), rat(0, 1));
        assert_eq!(parse_rat(" 3/6 "), Some(rat(1, 2)));
        assert_eq!(parse_rat("-2"), Some(rat(-2, 1)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn det_and_inverse() {
        let a = vec![vec![3, 1], vec![1, 5]];
        assert_eq!(det_i64(&a), 14);
        let inv = inverse_int(&a).unwrap();
        assert_eq!(inv[0], vec![rat(5, 14), rat(-1, 14)]);
        assert_eq!(det_i64(&[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 4]]), 25);
    }

    #[test]
    fn rank() {
        let rows = vec![vec![q_int(1), q_int(2)], vec![q_int(2), q_int(4)]];
        assert_eq!(rank_q(&rows), 1);
    }
}
