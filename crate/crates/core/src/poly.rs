//! Dense univariate polynomials over a [`Field`], coefficients in ascending
//! order. The zero polynomial is the empty vector; all results are trimmed.

use crate::error::{Error, Result};
use crate::fields::Field;

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

pub fn sub(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let neg: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &neg)
}

pub fn scale(f: &Field, a: &[u32], c: u32) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b`.
pub fn divrem(f: &Field, a: &[u32], b: &[u32]) -> Result<(Poly, Poly)> {
    let db = degree(b).ok_or_else(|| Error::domain("polynomial division by zero"))?;
    let lead_inv = f.inv(b[db])?;
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut quot = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        quot[shift] = c;
        for (i, &bc) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
        }
        r = trim(r);
    }
    Ok((trim(quot), r))
}

pub fn rem(f: &Field, a: &[u32], b: &[u32]) -> Result<Poly> {
    Ok(divrem(f, a, b)?.1)
}

/// Horner evaluation with coefficients mapped through `lift` first.
pub fn eval_with(f: &Field, a: &[u32], x: u32, lift: impl Fn(u32) -> u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), lift(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let f = Field::build(3, 1).unwrap();
        let a = vec![1, 2, 0, 1, 2, 1];
        let b = vec![2, 1, 1];
        let (q, r) = divrem(&f, &a, &b).unwrap();
        assert!(degree(&r).is_none_or(|d| d < 2));
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), trim(a.clone()));
        assert!(divrem(&f, &a, &[]).is_err());
    }

    #[test]
    fn x9_minus_1_over_f2() {
        let f = Field::build(2, 1).unwrap();
        let mut x9 = vec![0u32; 10];
        x9[0] = 1;
        x9[9] = 1;
        let (q, r) = divrem(&f, &x9, &[1, 1, 1]).unwrap();
        assert!(r.is_empty());
        assert_eq!(q, vec![1, 1, 0, 1, 1, 0, 1, 1]);
    }
}
