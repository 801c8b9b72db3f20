//! Closed-form orbit counts for the groups `<rho^l>`, `<rho^l, M>` and
//! `<mu_q, rho^l, M>` acting on the nonzero words of a quasi-cyclic code.
//!
//! Every formula is evaluated in exact big-integer arithmetic. Divisions that
//! do not come out even are reported as [`Error::NonIntegral`], never rounded.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth;

/// Arithmetic data of one constituent: coset representative `i`, coset size
/// `k` and `F_q`-dimension `dim` (the `K_t` of the constituent).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstituentArith {
    pub i: u64,
    pub k: u64,
    pub dim: u64,
}

impl ConstituentArith {
    pub fn new(i: u64, k: u64, dim: u64) -> Self {
        ConstituentArith { i, k, dim }
    }
}

/// Subsets are enumerated as bitmasks, so this caps the number of constituents.
pub const MAX_CONSTITUENTS: usize = 20;

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn qpow(q: u64, e: u64) -> BigInt {
    num_traits::pow(big(q), e as usize)
}

fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::NonIntegral(format!("{what}: {num} / {den}")));
    }
    Ok(quot)
}

fn to_natural(n: BigInt, what: &str) -> Result<BigUint> {
    n.to_biguint()
        .ok_or_else(|| Error::internal(format!("{what} evaluated to a negative number")))
}

fn check_modulus(m: u64, q: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    Ok(())
}

fn check_count(n: usize) -> Result<()> {
    if n > MAX_CONSTITUENTS {
        return Err(Error::invalid(format!(
            "at most {MAX_CONSTITUENTS} constituents are supported, got {n}"
        )));
    }
    Ok(())
}

/// Nonempty subsets of `0..n` as index lists, in bitmask order.
fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1u32 << n)).map(move |mask| (0..n).filter(|&b| mask >> b & 1 == 1).collect())
}

/// Orbits of `<rho^l>` on a single constituent: `gcd(m, i)(q^K - 1)/m`.
pub fn bound_single_shift(m: u64, i: u64, dim: u64, q: u64) -> Result<BigUint> {
    bound_shift(&[ConstituentArith::new(i, 0, dim)], m, q)
}

/// Orbits of `<rho^l, M>` on a single constituent:
/// `gcd(m, (q-1)i)(q^K - 1)/(m(q-1))`.
pub fn bound_single_shift_scalar(m: u64, i: u64, dim: u64, q: u64) -> Result<BigUint> {
    check_modulus(m, q)?;
    let num = big(m).gcd(&(big(q - 1) * big(i))) * (qpow(q, dim) - 1);
    let n = exact_div(&num, &big(m * (q - 1)), "shift-scalar orbit count")?;
    to_natural(n, "shift-scalar orbit count")
}

/// Orbits of `<mu_q, rho^l, M>` on a one-generator constituent of dimension
/// `k` over `F_q`:
/// `(1/k) sum_{r | k} phi(k/r) gcd(q^r - 1, (q^k - 1)/(q - 1), i(q^k - 1)/m)`.
pub fn bound_single_full(q: u64, k: u64, i: u64, m: u64) -> Result<BigUint> {
    check_modulus(m, q)?;
    if k == 0 {
        return Err(Error::invalid("coset size must be positive"));
    }
    let qk1 = qpow(q, k) - 1;
    let norm = exact_div(&qk1, &big(q - 1), "(q^k - 1)/(q - 1)")?;
    let twist = exact_div(&(big(i) * &qk1), &big(m), "i(q^k - 1)/m")?;
    let mut total = BigInt::zero();
    for r in numth::divisors(k) {
        let phi = numth::euler_phi(k / r)?;
        total += big(phi) * gcd_all([&(qpow(q, r) - 1), &norm, &twist]);
    }
    let n = exact_div(&total, &big(k), "single-constituent full orbit count")?;
    to_natural(n, "single-constituent full orbit count")
}

/// Orbits of `<rho^l>` on a direct sum of constituents: the sum over nonempty
/// subsets `S` of `gcd(m, i_S) prod_S (q^{K_v} - 1) / m`.
pub fn bound_shift(constituents: &[ConstituentArith], m: u64, q: u64) -> Result<BigUint> {
    Ok(shift_terms(constituents, m, q)?.into_iter().sum())
}

/// The per-subset summands of [`bound_shift`], in bitmask order.
pub fn shift_terms(constituents: &[ConstituentArith], m: u64, q: u64) -> Result<Vec<BigUint>> {
    check_modulus(m, q)?;
    check_count(constituents.len())?;
    subsets(constituents.len())
        .map(|s| {
            let g = s.iter().fold(m, |acc, &v| acc.gcd(&constituents[v].i));
            let prod: BigInt = s.iter().map(|&v| qpow(q, constituents[v].dim) - 1).product();
            let n = exact_div(&(big(g) * prod), &big(m), "shift orbit count term")?;
            to_natural(n, "shift orbit count term")
        })
        .collect()
}

/// Orbits of `<rho^l, M>` on a direct sum of constituents.
///
/// The subset term is `G_S prod_S (q^{K_v} - 1) / (m (q-1))`, where `G_S`
/// counts the pairs `(z, a)` with `zeta^{i_v z} = a^{-1}` for every `v` in `S`:
/// `G_S = gcd(m, i_1 (q-1), i_2 - i_1, ..., i_u - i_1)`. The shift `z` has to
/// be common to all constituents, which is where the differences come from.
/// For a single constituent this is `gcd(m, i) gcd(q-1, m/gcd(m, i))`.
pub fn bound_shift_scalar(constituents: &[ConstituentArith], m: u64, q: u64) -> Result<BigUint> {
    Ok(shift_scalar_terms(constituents, m, q)?.into_iter().sum())
}

pub fn shift_scalar_terms(constituents: &[ConstituentArith], m: u64, q: u64) -> Result<Vec<BigUint>> {
    check_modulus(m, q)?;
    check_count(constituents.len())?;
    subsets(constituents.len())
        .map(|s| {
            let first = constituents[s[0]].i as i64;
            let mut g = m.gcd(&(first as u64 * (q - 1)));
            for &v in &s[1..] {
                g = g.gcd(&(constituents[v].i as i64 - first).unsigned_abs());
            }
            let prod: BigInt = s.iter().map(|&v| qpow(q, constituents[v].dim) - 1).product();
            let n = exact_div(&(big(g) * prod), &big(m * (q - 1)), "shift-scalar orbit count term")?;
            to_natural(n, "shift-scalar orbit count term")
        })
        .collect()
}

/// The variant of [`shift_scalar_terms`] that checks the scalar condition
/// separately per constituent:
/// `gcd(m, i_v...) gcd(q-1, m/gcd(m, i_v)...) prod (q^{K_v} - 1) / (m (q-1))`.
///
/// It agrees with the exact count for a single constituent and whenever the
/// per-constituent conditions can be met by one common shift, but can
/// overcount otherwise (`q = 5, m = 4, i = 1, 2` gives 4 against 3 orbits).
pub fn shift_scalar_terms_per_constituent(
    constituents: &[ConstituentArith],
    m: u64,
    q: u64,
) -> Result<Vec<BigUint>> {
    check_modulus(m, q)?;
    check_count(constituents.len())?;
    subsets(constituents.len())
        .map(|s| {
            let g = s.iter().fold(m, |acc, &v| acc.gcd(&constituents[v].i));
            let scalar = s
                .iter()
                .fold(q - 1, |acc, &v| acc.gcd(&(m / m.gcd(&constituents[v].i))));
            let prod: BigInt = s.iter().map(|&v| qpow(q, constituents[v].dim) - 1).product();
            let num = big(g) * prod * big(scalar);
            let n = exact_div(&num, &big(m * (q - 1)), "shift-scalar orbit count term")?;
            to_natural(n, "shift-scalar orbit count term")
        })
        .collect()
}

/// Orbits of `<mu_q, rho^l, M>` on a direct sum of one-dimensional
/// constituents (each `C_t` spanned over `F_{q^{k_t}}` by a single row with
/// entries in `{0, f_t}`).
///
/// For each nonempty subset `S` the term is
/// `1/(m' m (q-1)) sum_{r=0}^{m'-1} G_r gcd(I, I_v : v in S) prod_S (q^{gcd(k_v, r)} - 1)`
/// with `I = q - 1`, `I_v = (q^{k_v} - 1)/(q^{gcd(k_v, r)} - 1)` and
/// `G_r = gcd(m, i_v I I_v / gcd(I, I_v), (i_b - i_a) I_a I_b / gcd(I_a, I_b))`.
///
/// The result is an upper bound for the true orbit count. Equality is not
/// guaranteed in general, so analysis compares it against brute force.
pub fn bound_full(constituents: &[ConstituentArith], m: u64, q: u64) -> Result<BigUint> {
    Ok(full_terms(constituents, m, q)?.into_iter().sum())
}

pub fn full_terms(constituents: &[ConstituentArith], m: u64, q: u64) -> Result<Vec<BigUint>> {
    check_modulus(m, q)?;
    check_count(constituents.len())?;
    for c in constituents {
        if c.k == 0 || c.dim != c.k {
            return Err(Error::FormulaNotApplicable(format!(
                "constituent with representative {} has dimension {} but coset size {}; \
                 the full-group count needs one-dimensional constituents",
                c.i, c.dim, c.k
            )));
        }
    }
    let m_prime = numth::multiplicative_order(q, m)?;
    subsets(constituents.len())
        .map(|s| {
            let chosen: Vec<ConstituentArith> = s.iter().map(|&v| constituents[v]).collect();
            let n = full_subset_term(&chosen, m, q, m_prime)?;
            to_natural(n, "full orbit count term")
        })
        .collect()
}

fn full_subset_term(cs: &[ConstituentArith], m: u64, q: u64, m_prime: u64) -> Result<BigInt> {
    let unit = big(q - 1);
    let mut total = BigInt::zero();
    for r in 0..m_prime {
        let small: Vec<BigInt> = cs.iter().map(|c| qpow(q, c.k.gcd(&r)) - 1).collect();
        let idx: Vec<BigInt> = cs
            .iter()
            .zip(&small)
            .map(|(c, s)| exact_div(&(qpow(q, c.k) - 1), s, "I_v"))
            .collect::<Result<_>>()?;
        let mut terms = vec![big(m)];
        for (c, iv) in cs.iter().zip(&idx) {
            terms.push(big(c.i) * &unit * iv / unit.gcd(iv));
        }
        for a in 0..cs.len() {
            for b in a + 1..cs.len() {
                let diff = (BigInt::from(cs[b].i) - BigInt::from(cs[a].i)).abs();
                terms.push(diff * &idx[a] * &idx[b] / idx[a].gcd(&idx[b]));
            }
        }
        let prod: BigInt = small.iter().product();
        total += gcd_all(&terms) * gcd_all(std::iter::once(&unit).chain(&idx)) * prod;
    }
    exact_div(&total, &(big(m_prime) * big(m) * &unit), "full orbit count term")
}

/// The mixed term `s_{t1,t2}` of the two-constituent full-group count, for
/// `k_1 | k_2`:
/// `1/m' sum_r gcd((q^{g1} - 1) gcd(q^{g2} - 1, A, B, C), D)` with
/// `g_v = gcd(k_v, r)`, `A = (q^{k1} - 1)(q^{g2} - 1)/((q - 1)(q^{g1} - 1))`,
/// `B = i_1 (q^{k1} - 1)(q^{g2} - 1)/(m (q^{g1} - 1))`,
/// `C = i_2 (q^{k2} - 1)/m` and `D = (i_2 - i_1)(q^{k1} - 1)(q^{k2} - 1)/(m (q - 1))`.
pub fn full_pair_term(t1: ConstituentArith, t2: ConstituentArith, m: u64, q: u64) -> Result<BigUint> {
    check_modulus(m, q)?;
    if t1.k == 0 || !t2.k.is_multiple_of(t1.k) {
        return Err(Error::FormulaNotApplicable(format!(
            "pair term needs k_1 | k_2, got k_1 = {} and k_2 = {}",
            t1.k, t2.k
        )));
    }
    if t1.i >= m || t2.i >= m {
        return Err(Error::invalid("coset representatives must lie in 0..m"));
    }
    if numth::coset_of(q, m, t1.i)?.contains(t2.i) {
        return Err(Error::invalid("pair term needs two distinct cosets"));
    }
    let m_prime = numth::multiplicative_order(q, m)?;
    let (bm, unit) = (big(m), big(q - 1));
    let (qk1, qk2) = (qpow(q, t1.k) - 1, qpow(q, t2.k) - 1);
    let (i1, i2) = (BigInt::from(t1.i), BigInt::from(t2.i));
    let d = exact_div(&((&i2 - &i1) * &qk1 * &qk2), &(&bm * &unit), "pair term difference")?.abs();
    let c = exact_div(&(&i2 * &qk2), &bm, "pair term i_2 (q^k2 - 1)/m")?;
    let mut total = BigInt::zero();
    for r in 0..m_prime {
        let a1 = qpow(q, t1.k.gcd(&r)) - 1;
        let a2 = qpow(q, t2.k.gcd(&r)) - 1;
        let a = exact_div(&(&qk1 * &a2), &(&unit * &a1), "pair term A")?;
        let b = exact_div(&(&i1 * &qk1 * &a2), &(&bm * &a1), "pair term B")?;
        let inner = gcd_all([&a2, &a, &b, &c]);
        let scaled: BigInt = a1 * inner;
        total += scaled.gcd(&d);
    }
    let n = exact_div(&total, &big(m_prime), "pair term")?;
    to_natural(n, "pair term")
}

/// Converts to `u64` when it fits.
pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

/// `q^K` as a big integer.
pub fn code_size(q: u64, dim: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), dim as usize)
}
