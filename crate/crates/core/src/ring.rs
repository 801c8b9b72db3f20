//! The quotient ring `R_m = F_q[x]/(x^m - 1)` for `gcd(m, q) = 1`.
//!
//! A [`RingContext`] fixes `F_q`, the splitting field `F_{q^{m'}}`, the
//! embedding between them and a primitive `m`-th root of unity `zeta`. All
//! spectral quantities (DFT, primitive idempotents, minimal polynomials) are
//! relative to that `zeta`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{build_embedding, Embedding, Field};
use crate::numth::{self, CyclotomicCoset};
use crate::poly::{self, Poly};

/// A polynomial of degree `< m`, coefficient of `x^i` at index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    coeffs: Vec<u32>,
}

impl RingElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Multiplication by `x^e`, a cyclic rotation of the coefficients.
    pub fn shift(&self, e: usize) -> RingElement {
        let m = self.m();
        let mut coeffs = vec![0u32; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + e) % m] = c;
        }
        RingElement { coeffs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Values of a polynomial at `zeta^0, ..., zeta^{m-1}`, in `F_{q^{m'}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub values: Vec<u32>,
}

/// Shared read-only data for one `(q, m)` and one choice of primitive element.
#[derive(Debug)]
pub struct RingContext {
    q: u64,
    m: usize,
    m_prime: u64,
    base: Arc<Field>,
    big: Arc<Field>,
    embedding: Embedding,
    omega_index: usize,
    omega: u32,
    zeta_pows: Vec<u32>,
    inv_m: u32,
    cosets: Vec<CyclotomicCoset>,
}

impl RingContext {
    /// `omega_index` selects the primitive element of `F_{q^{m'}}` (1 = first
    /// in canonical order) from which `zeta` is derived.
    pub fn new(q: u64, m: u64, omega_index: usize) -> Result<Arc<RingContext>> {
        let (p, e) = numth::prime_power(q)
            .ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))?;
        if m == 0 {
            return Err(Error::invalid("m must be positive"));
        }
        let m_prime = numth::multiplicative_order(q, m)?;
        let big_degree = e as u64 * m_prime;
        if (p as f64).powf(big_degree as f64) > crate::fields::MAX_FIELD_SIZE as f64 {
            return Err(Error::invalid(format!(
                "splitting field F_{{{q}^{m_prime}}} of x^{m} - 1 exceeds the supported size {}",
                crate::fields::MAX_FIELD_SIZE
            )));
        }
        let base = Field::build(p as u32, e)?;
        let big = Field::build(p as u32, big_degree as u32)?;
        let embedding = build_embedding(&base, &big)?;
        let omega = big.nth_primitive_element(omega_index)?;
        let zeta = big.root_of_unity_from(omega, m)?;
        let zeta_pows = (0..m).map(|i| big.pow(zeta, i)).collect();
        let inv_m = base.inv(base.from_int((m % p) as i64))?;
        let cosets = numth::cyclotomic_cosets(q, m)?;
        Ok(Arc::new(RingContext {
            q,
            m: m as usize,
            m_prime,
            base,
            big,
            embedding,
            omega_index,
            omega,
            zeta_pows,
            inv_m,
            cosets,
        }))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Multiplicative order of `q` modulo `m`.
    pub fn m_prime(&self) -> u64 {
        self.m_prime
    }

    /// `F_q`.
    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    /// `F_{q^{m'}}`.
    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn omega_index(&self) -> usize {
        self.omega_index
    }

    pub fn omega(&self) -> u32 {
        self.omega
    }

    pub fn zeta(&self) -> u32 {
        self.zeta_pows.get(1).copied().unwrap_or(1)
    }

    /// `zeta^e` for any integer exponent.
    pub fn zeta_pow(&self, e: i64) -> u32 {
        self.zeta_pows[e.rem_euclid(self.m as i64) as usize]
    }

    pub fn cosets(&self) -> &[CyclotomicCoset] {
        &self.cosets
    }

    pub fn coset_of(&self, i: u64) -> Result<CyclotomicCoset> {
        numth::coset_of(self.q, self.m as u64, i)
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> RingElement {
        self.monomial(0, 1)
    }

    /// `c * x^(e mod m)`.
    pub fn monomial(&self, e: usize, c: u32) -> RingElement {
        let mut r = self.zero();
        r.coeffs[e % self.m] = c;
        r
    }

    /// Reduces an arbitrary polynomial modulo `x^m - 1`.
    pub fn element(&self, coeffs: &[u32]) -> Result<RingElement> {
        let mut r = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if !self.base.contains(c) {
                return Err(Error::invalid(format!("{c} is not an element of F_{}", self.q)));
            }
            let slot = &mut r.coeffs[i % self.m];
            *slot = self.base.add(*slot, c);
        }
        Ok(r)
    }

    fn check(&self, a: &RingElement) -> Result<()> {
        if a.m() != self.m || a.coeffs.iter().any(|&c| !self.base.contains(c)) {
            return Err(Error::invalid(format!(
                "ring element does not belong to F_{}[x]/(x^{} - 1)",
                self.q, self.m
            )));
        }
        Ok(())
    }

    pub fn ring_arith(&self, a: &RingElement, b: &RingElement, op: RingOp) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            RingOp::Add => self.add(a, b),
            RingOp::Sub => self.sub(a, b),
            RingOp::Mul => self.mul(a, b),
        })
    }

    pub(crate) fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.add(x, y)).collect();
        RingElement { coeffs }
    }

    pub(crate) fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.sub(x, y)).collect();
        RingElement { coeffs }
    }

    pub(crate) fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = &self.base;
        let mut out = self.zero();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    let k = (i + j) % self.m;
                    out.coeffs[k] = f.add(out.coeffs[k], f.mul(x, y));
                }
            }
        }
        out
    }

    pub fn scale(&self, a: &RingElement, c: u32) -> RingElement {
        let coeffs = a.coeffs.iter().map(|&x| self.base.mul(x, c)).collect();
        RingElement { coeffs }
    }

    pub fn dft(&self, a: &RingElement) -> Spectrum {
        let big = &self.big;
        let values = (0..self.m)
            .map(|i| {
                let z = self.zeta_pows[i];
                poly::eval_with(big, &a.coeffs, z, |c| self.embedding.apply(c))
            })
            .collect();
        Spectrum { values }
    }

    /// Inverse transform `a_j = (1/m) sum_i s_i zeta^{-ij}`.
    pub fn idft(&self, s: &Spectrum) -> Result<RingElement> {
        let big = &self.big;
        if s.values.len() != self.m || s.values.iter().any(|&v| !big.contains(v)) {
            return Err(Error::invalid("spectrum has the wrong shape"));
        }
        let q = self.q;
        for i in 0..self.m {
            let qi = (i as u64 * q % self.m as u64) as usize;
            if s.values[qi] != big.pow(s.values[i], q) {
                return Err(Error::domain(format!(
                    "spectrum is not Frobenius-consistent at index {i}; its inverse leaves F_{q}"
                )));
            }
        }
        let inv_m = self.embedding.apply(self.inv_m);
        let mut coeffs = Vec::with_capacity(self.m);
        for j in 0..self.m {
            let mut acc = 0;
            for (i, &v) in s.values.iter().enumerate() {
                if v != 0 {
                    acc = big.add(acc, big.mul(v, self.zeta_pow(-((i * j) as i64))));
                }
            }
            let c = self
                .embedding
                .preimage(big.mul(acc, inv_m))
                .ok_or_else(|| Error::internal("inverse transform left the base field"))?;
            coeffs.push(c);
        }
        Ok(RingElement { coeffs })
    }

    /// The idempotent whose spectrum is the indicator of `coset`.
    pub fn primitive_idempotent(&self, coset: &CyclotomicCoset) -> Result<RingElement> {
        let mut values = vec![0u32; self.m];
        for &i in &coset.members {
            values[i as usize] = 1;
        }
        self.idft(&Spectrum { values })
    }

    /// `prod_{r in coset} (x - zeta^r)`, coerced to `F_q`.
    pub fn minimal_poly(&self, coset: &CyclotomicCoset) -> Result<Poly> {
        let big = &self.big;
        let mut acc: Poly = vec![1];
        for &r in &coset.members {
            let root = self.zeta_pow(r as i64);
            acc = poly::mul(big, &acc, &[big.neg(root), 1]);
        }
        acc.iter()
            .map(|&c| {
                self.embedding
                    .preimage(c)
                    .ok_or_else(|| Error::internal("minimal polynomial coefficient outside F_q"))
            })
            .collect()
    }

    /// `(x^m - 1) / minimal_poly(coset)`.
    pub fn generator_poly(&self, coset: &CyclotomicCoset) -> Result<RingElement> {
        let h = self.minimal_poly(coset)?;
        let (quot, rem) = poly::divrem(&self.base, &self.x_m_minus_one(), &h)?;
        if !rem.is_empty() {
            return Err(Error::internal("minimal polynomial does not divide x^m - 1"));
        }
        self.element(&quot)
    }

    fn x_m_minus_one(&self) -> Poly {
        let mut p = vec![0u32; self.m + 1];
        p[0] = self.base.neg(1);
        p[self.m] = 1;
        p
    }

    /// `R_m eps_t` viewed as `F_q[x]/(h_t)`.
    pub fn constituent_field(&self, coset: &CyclotomicCoset) -> Result<ConstituentField> {
        Ok(ConstituentField {
            base: Arc::clone(&self.base),
            k: coset.size(),
            h: self.minimal_poly(coset)?,
            eps: self.primitive_idempotent(coset)?,
            coset: coset.clone(),
        })
    }
}

/// The minimal ideal `R_m eps_t`, isomorphic to `F_q[x]/(h_t)` and hence to
/// `F_{q^{k_t}}`. Elements are reduced polynomials of length exactly `k_t`.
#[derive(Debug, Clone)]
pub struct ConstituentField {
    base: Arc<Field>,
    coset: CyclotomicCoset,
    k: usize,
    h: Poly,
    eps: RingElement,
}

impl ConstituentField {
    pub fn coset(&self) -> &CyclotomicCoset {
        &self.coset
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimal polynomial `h_t`.
    pub fn modulus(&self) -> &[u32] {
        &self.h
    }

    /// Primitive idempotent `eps_t`.
    pub fn idempotent(&self) -> &RingElement {
        &self.eps
    }

    fn pad(&self, mut a: Poly) -> Vec<u32> {
        a.resize(self.k, 0);
        a
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.k]
    }

    pub fn one(&self) -> Vec<u32> {
        self.reduce(&[1])
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Residue of any polynomial modulo `h_t`.
    pub fn reduce(&self, a: &[u32]) -> Vec<u32> {
        let r = poly::rem(&self.base, a, &self.h).expect("h_t is nonzero");
        self.pad(r)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.reduce(&poly::mul(&self.base, a, b))
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by `a^{q^k - 2}`.
    pub fn inv(&self, a: &[u32]) -> Result<Vec<u32>> {
        if self.is_zero(a) {
            return Err(Error::domain("zero has no inverse in the constituent field"));
        }
        let order = (self.base.size() as u64).pow(self.k as u32);
        Ok(self.pow(a, order - 2))
    }

    /// `a mod h_t`, for `a` in the ideal `R_m eps_t`.
    pub fn to_field(&self, ctx: &RingContext, a: &RingElement) -> Result<Vec<u32>> {
        if ctx.mul(a, &self.eps) != *a {
            return Err(Error::domain(format!(
                "element is not in the minimal ideal of coset {}",
                self.coset.rep
            )));
        }
        Ok(self.reduce(a.coeffs()))
    }

    /// `b * eps_t` as an element of `R_m`.
    pub fn from_field(&self, ctx: &RingContext, b: &[u32]) -> RingElement {
        let lifted = ctx.element(b).expect("reduced residue has degree < k <= m");
        ctx.mul(&lifted, &self.eps)
    }
}
