//! Quasi-cyclic codes as direct sums of constituent codes over minimal ideals.
//!
//! A codeword of length `l*m` uses the interleaved layout: the coefficient of
//! `x^i` in slot `j` sits at index `i*l + j`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, ConstituentArith};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numth::{self, CyclotomicCoset};
use crate::ring::{ConstituentField, RingContext, RingElement};

/// Default cap on the number of codewords visited by exhaustive routines.
pub const DEFAULT_ENUM_LIMIT: u64 = 1 << 20;

pub type Codeword = Vec<u32>;

/// One entry of a generator row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowEntry {
    Zero,
    /// The generator polynomial `g_t = (x^m - 1)/h_t` of the block's coset.
    Generator,
    /// Explicit polynomial over `F_q`, ascending coefficients, degree `< m`.
    Poly(Vec<u32>),
}

/// A constituent: a coset (by representative) and generator rows. The rows
/// span `{c * eps_t * row : c in R_m}` over the constituent field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentSpec {
    pub coset_rep: u64,
    pub rows: Vec<Vec<RowEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QccSpec {
    pub q: u64,
    pub m: u64,
    pub l: usize,
    pub constituents: Vec<ConstituentSpec>,
}

impl QccSpec {
    pub fn validate(&self) -> Result<()> {
        if numth::prime_power(self.q).is_none() {
            return Err(Error::invalid(format!("q = {} is not a prime power", self.q)));
        }
        if self.m == 0 {
            return Err(Error::invalid("m must be positive"));
        }
        if self.l < 2 {
            return Err(Error::invalid(format!("index l must be at least 2, got {}", self.l)));
        }
        numth::multiplicative_order(self.q, self.m)?;
        let mut seen: Vec<CyclotomicCoset> = Vec::new();
        for c in &self.constituents {
            if c.coset_rep >= self.m {
                return Err(Error::invalid(format!(
                    "coset representative {} out of range 0..{}",
                    c.coset_rep, self.m
                )));
            }
            let coset = numth::coset_of(self.q, self.m, c.coset_rep)?;
            if let Some(prev) = seen.iter().find(|s| **s == coset) {
                return Err(Error::invalid(format!(
                    "coset of {} is already used by another constituent (representative {})",
                    c.coset_rep, prev.rep
                )));
            }
            seen.push(coset);
            if c.rows.is_empty() {
                return Err(Error::invalid(format!(
                    "constituent with coset {} has no rows",
                    c.coset_rep
                )));
            }
            for row in &c.rows {
                if row.len() != self.l {
                    return Err(Error::invalid(format!(
                        "row has {} entries, expected l = {}",
                        row.len(),
                        self.l
                    )));
                }
                for e in row {
                    if let RowEntry::Poly(p) = e {
                        if p.len() as u64 > self.m {
                            return Err(Error::invalid(format!(
                                "polynomial entry has degree {} >= m = {}",
                                p.len() - 1,
                                self.m
                            )));
                        }
                        if p.iter().any(|&x| x as u64 >= self.q) {
                            return Err(Error::invalid("polynomial coefficient outside F_q"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Splits a codeword into its `l` slot polynomials.
pub fn phi(ctx: &RingContext, l: usize, c: &[u32]) -> Result<Vec<RingElement>> {
    let m = ctx.m();
    if c.len() != l * m {
        return Err(Error::invalid(format!("codeword length {} is not l*m = {}", c.len(), l * m)));
    }
    (0..l)
        .map(|j| {
            let coeffs: Vec<u32> = (0..m).map(|i| c[i * l + j]).collect();
            ctx.element(&coeffs)
        })
        .collect()
}

/// Interleaves slot polynomials back into a codeword.
pub fn phi_inv(ctx: &RingContext, slots: &[RingElement]) -> Result<Codeword> {
    let m = ctx.m();
    let l = slots.len();
    if slots.iter().any(|s| s.m() != m) {
        return Err(Error::invalid("slot polynomials must have length m"));
    }
    let mut c = vec![0u32; l * m];
    for (j, s) in slots.iter().enumerate() {
        for (i, &v) in s.coeffs().iter().enumerate() {
            c[i * l + j] = v;
        }
    }
    Ok(c)
}

pub fn hamming_weight(c: &[u32]) -> usize {
    c.iter().filter(|&&x| x != 0).count()
}

/// A constituent code after reduction over its constituent field.
#[derive(Debug, Clone)]
pub struct Constituent {
    /// Representative as given by the user.
    pub coset_rep: u64,
    pub coset: CyclotomicCoset,
    pub field: ConstituentField,
    /// Generator polynomial `g_t` of the minimal ideal.
    pub generator: RingElement,
    /// Reduced row echelon form of the rows, entries in `F_q[x]/(h_t)`.
    pub reduced_rows: Vec<Vec<Vec<u32>>>,
    /// `F_q`-basis: `x^j * lift(row)` for every reduced row and `j < k_t`.
    pub basis: Vec<Codeword>,
    /// True when the constituent has a single row whose nonzero entries all
    /// coincide, the shape covered by the closed-form full-group count.
    pub qualifies: bool,
}

impl Constituent {
    pub fn k(&self) -> usize {
        self.coset.size()
    }

    pub fn rank(&self) -> usize {
        self.reduced_rows.len()
    }

    /// `K_t = rank * k_t`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn arith(&self) -> ConstituentArith {
        ConstituentArith::new(self.coset_rep, self.k() as u64, self.dimension() as u64)
    }
}

fn rref_constituent(cf: &ConstituentField, rows: &mut Vec<Vec<Vec<u32>>>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut next = 0;
    for col in 0..width {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !cf.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = cf.inv(&rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut() {
            *x = cf.mul(x, &inv);
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || cf.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = cf.sub(x, &cf.mul(&c, p));
            }
        }
        next += 1;
    }
    rows.truncate(next);
}

pub fn expand_constituent(spec: &ConstituentSpec, l: usize, ctx: &RingContext) -> Result<Constituent> {
    if spec.coset_rep >= ctx.m() as u64 {
        return Err(Error::invalid("coset representative out of range"));
    }
    let coset = ctx.coset_of(spec.coset_rep)?;
    let field = ctx.constituent_field(&coset)?;
    let generator = ctx.generator_poly(&coset)?;
    let mut rows: Vec<Vec<Vec<u32>>> = spec
        .rows
        .iter()
        .map(|row| {
            if row.len() != l {
                return Err(Error::invalid(format!("row has {} entries, expected {l}", row.len())));
            }
            row.iter()
                .map(|e| match e {
                    RowEntry::Zero => Ok(field.zero()),
                    RowEntry::Generator => Ok(field.reduce(generator.coeffs())),
                    RowEntry::Poly(p) => Ok(field.reduce(ctx.element(p)?.coeffs())),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    rref_constituent(&field, &mut rows);

    let one = field.one();
    let qualifies = rows.len() == 1 && rows[0].iter().all(|e| field.is_zero(e) || *e == one);
    let mut basis = Vec::with_capacity(rows.len() * coset.size());
    for row in &rows {
        let lifted: Vec<RingElement> = row.iter().map(|e| field.from_field(ctx, e)).collect();
        for j in 0..coset.size() {
            let shifted: Vec<RingElement> = lifted.iter().map(|s| s.shift(j)).collect();
            basis.push(phi_inv(ctx, &shifted)?);
        }
    }
    Ok(Constituent {
        coset_rep: spec.coset_rep,
        coset,
        field,
        generator,
        reduced_rows: rows,
        basis,
        qualifies,
    })
}

/// Counts of codewords by Hamming weight.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn from_weights(weights: &[u32]) -> Self {
        let mut counts = BTreeMap::new();
        for &w in weights {
            *counts.entry(w as usize).or_insert(0) += 1;
        }
        WeightDistribution { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, weight: usize) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// Distinct nonzero weights, ascending.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().filter(|&w| w != 0).collect()
    }
}

/// `s(C)`, the number of distinct nonzero weights.
pub fn nonzero_weight_count(wd: &WeightDistribution) -> usize {
    wd.nonzero_weights().len()
}

/// A quasi-cyclic code with an `F_q`-basis in reduced row echelon form.
///
/// The pivot columns of that basis give a bijection between codewords and
/// message indices `0..q^K`: digit `r` of the index (base `q`, least
/// significant first) is the codeword's entry at pivot `r`.
#[derive(Debug, Clone)]
pub struct QuasiCyclicCode {
    ctx: Arc<RingContext>,
    spec: QccSpec,
    constituents: Vec<Constituent>,
    basis: Vec<Codeword>,
    pivots: Vec<usize>,
}

impl QuasiCyclicCode {
    pub fn new(spec: QccSpec, ctx: Arc<RingContext>) -> Result<Self> {
        spec.validate()?;
        if ctx.q() != spec.q || ctx.m() as u64 != spec.m {
            return Err(Error::invalid("ring context does not match the code parameters"));
        }
        let constituents: Vec<Constituent> = spec
            .constituents
            .iter()
            .map(|c| expand_constituent(c, spec.l, &ctx))
            .collect::<Result<_>>()?;
        let mut basis: Vec<Codeword> = constituents.iter().flat_map(|c| c.basis.clone()).collect();
        let expected = basis.len();
        let pivots = linalg::rref(ctx.base(), &mut basis);
        if pivots.len() != expected {
            return Err(Error::internal("constituent bases are not independent"));
        }
        Ok(QuasiCyclicCode {
            ctx,
            spec,
            constituents,
            basis,
            pivots,
        })
    }

    /// Builds the ring context with the given primitive-element index first.
    pub fn build(spec: QccSpec, omega_index: usize) -> Result<Self> {
        spec.validate()?;
        let ctx = RingContext::new(spec.q, spec.m, omega_index)?;
        QuasiCyclicCode::new(spec, ctx)
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn spec(&self) -> &QccSpec {
        &self.spec
    }

    pub fn l(&self) -> usize {
        self.spec.l
    }

    pub fn length(&self) -> usize {
        self.spec.l * self.ctx.m()
    }

    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    /// Dimension `K` over `F_q`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis in reduced row echelon form.
    pub fn basis(&self) -> &[Codeword] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of codewords `q^K`.
    pub fn size(&self) -> BigUint {
        bounds::code_size(self.spec.q, self.dimension() as u64)
    }

    /// `q^K` as an integer, or an enumeration-limit error when above `limit`.
    pub fn checked_size(&self, limit: u64) -> Result<u64> {
        let size = self.size();
        match size.to_u64() {
            Some(n) if n <= limit => Ok(n),
            _ => Err(Error::EnumerationLimit {
                size: size.to_string(),
                limit,
            }),
        }
    }

    pub fn codeword(&self, index: u64) -> Codeword {
        let digits = linalg::index_digits(index, self.spec.q, self.dimension());
        linalg::combine(self.ctx.base(), &self.basis, &digits, self.length())
    }

    /// Message digits of `c` read off the pivots (meaningful only for members).
    pub fn message_digits(&self, c: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&p| c[p]).collect()
    }

    /// Message index of `c`, or `None` when `c` is not a codeword.
    pub fn message_index(&self, c: &[u32]) -> Option<u64> {
        if c.len() != self.length() {
            return None;
        }
        let digits = self.message_digits(c);
        let back = linalg::combine(self.ctx.base(), &self.basis, &digits, self.length());
        (back == c).then(|| linalg::digits_index(&digits, self.spec.q))
    }

    pub fn contains(&self, c: &[u32]) -> bool {
        self.message_index(c).is_some()
    }

    /// Every codeword exactly once, in message-index order.
    pub fn codewords(&self, limit: u64) -> Result<impl Iterator<Item = Codeword> + '_> {
        let size = self.checked_size(limit)?;
        Ok((0..size).map(move |i| self.codeword(i)))
    }

    /// Calls `visit(index, codeword)` for all codewords with index in `range`.
    pub fn for_each_codeword(&self, range: std::ops::Range<u64>, visit: impl FnMut(u64, &[u32])) {
        linalg::for_each_in_span(self.ctx.base(), &self.basis, self.length(), range, visit);
    }

    /// Hamming weight of every codeword, indexed by message index.
    pub fn weights(&self, limit: u64) -> Result<Vec<u32>> {
        let size = self.checked_size(limit)? as usize;
        let mut weights = vec![0u32; size];
        const CHUNK: usize = 1 << 12;
        weights.par_chunks_mut(CHUNK).enumerate().for_each(|(n, chunk)| {
            let start = (n * CHUNK) as u64;
            let end = start + chunk.len() as u64;
            self.for_each_codeword(start..end, |i, c| {
                chunk[(i - start) as usize] = hamming_weight(c) as u32;
            });
        });
        Ok(weights)
    }

    pub fn weight_distribution(&self, limit: u64) -> Result<WeightDistribution> {
        let wd = WeightDistribution::from_weights(&self.weights(limit)?);
        if BigUint::from(wd.total()) != self.size() {
            return Err(Error::internal("weight distribution does not sum to q^K"));
        }
        Ok(wd)
    }

    /// Nonzero constituents as formula inputs.
    pub fn arith(&self) -> Vec<ConstituentArith> {
        self.constituents
            .iter()
            .filter(|c| !c.is_degenerate())
            .map(Constituent::arith)
            .collect()
    }
}
