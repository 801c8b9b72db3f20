//! Integer number theory used throughout: gcd conventions, Euler's totient,
//! multiplicative orders and q-cyclotomic cosets modulo m.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// gcd of `m` and the absolute values of `values`.
///
/// Zeros are absorbed (`gcd(m, 0) = m`), so the empty list gives `m`.
pub fn gcd_list(values: &[i64], m: i64) -> Result<u64> {
    if m <= 0 {
        return Err(Error::invalid(format!("gcd modulus must be positive, got {m}")));
    }
    Ok(values
        .iter()
        .fold(m.unsigned_abs(), |acc, v| acc.gcd(&v.unsigned_abs())))
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("euler_phi is defined for n >= 1"));
    }
    let mut result = n;
    for (p, _) in factorize(n) {
        result = result / p * (p - 1);
    }
    Ok(result)
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && matches!(factorize(n).as_slice(), [(_, 1)])
}

/// Splits `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Least `k >= 1` with `q^k = 1 (mod m)`.
pub fn multiplicative_order(q: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("modulus m must be positive"));
    }
    if q.gcd(&m) != 1 {
        return Err(Error::invalid(format!("gcd(m,q) must be 1 (q = {q}, m = {m})")));
    }
    if m == 1 {
        return Ok(1);
    }
    let step = q % m;
    let mut acc = step;
    let mut k = 1;
    while acc != 1 {
        acc = ((acc as u128 * step as u128) % m as u128) as u64;
        k += 1;
    }
    Ok(k)
}

/// A q-cyclotomic coset modulo m. The representative is the smallest member;
/// `members` lists the orbit in generation order `rep, rep*q, rep*q^2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub rep: u64,
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.contains(&i)
    }

    /// Members in ascending order.
    pub fn sorted_members(&self) -> Vec<u64> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }
}

fn orbit(q: u64, m: u64, i: u64) -> Vec<u64> {
    let mut members = vec![i];
    let mut j = (i as u128 * q as u128 % m as u128) as u64;
    while j != i {
        members.push(j);
        j = (j as u128 * q as u128 % m as u128) as u64;
    }
    members
}

/// The coset containing `i`, rotated so that it starts at its minimum.
pub fn coset_of(q: u64, m: u64, i: u64) -> Result<CyclotomicCoset> {
    multiplicative_order(q, m)?;
    if i >= m {
        return Err(Error::invalid(format!("coset index {i} out of range 0..{m}")));
    }
    let rep = *orbit(q, m, i).iter().min().expect("orbit is nonempty");
    Ok(CyclotomicCoset {
        rep,
        members: orbit(q, m, rep),
    })
}

/// Partition of `0..m` into q-cyclotomic cosets, sorted by representative.
pub fn cyclotomic_cosets(q: u64, m: u64) -> Result<Vec<CyclotomicCoset>> {
    multiplicative_order(q, m)?;
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for i in 0..m {
        if seen[i as usize] {
            continue;
        }
        let members = orbit(q, m, i);
        for &j in &members {
            seen[j as usize] = true;
        }
        out.push(CyclotomicCoset { rep: i, members });
    }
    Ok(out)
}
