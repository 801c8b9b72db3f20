//! The automorphisms `rho^l` (multiplication by `x` in every slot), `sigma_a`
//! (scalar multiplication) and `mu_q` (`x -> x^q` in every slot), and orbit
//! counting on the nonzero codewords.
//!
//! Group elements are kept in the normal form `mu_q^{r1} rho^{l r2} sigma_a`,
//! which sends the entry at `(i, j)` multiplied by `a` to
//! `(q^{r1} (i + r2) mod m, j)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{Codeword, QuasiCyclicCode};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::RingContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    /// `<rho^l>`
    Shift,
    /// `<rho^l, M>` with `M` the nonzero scalar multiplications.
    ShiftScalar,
    /// `<mu_q, rho^l, M>`
    Full,
}

impl GroupKind {
    pub const ALL: [GroupKind; 3] = [GroupKind::Shift, GroupKind::ShiftScalar, GroupKind::Full];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Shift => "shift",
            GroupKind::ShiftScalar => "shift-scalar",
            GroupKind::Full => "full",
        }
    }

    /// `m`, `m(q-1)` or `m' m (q-1)`.
    pub fn order(self, ctx: &RingContext) -> u64 {
        let m = ctx.m() as u64;
        match self {
            GroupKind::Shift => m,
            GroupKind::ShiftScalar => m * (ctx.q() - 1),
            GroupKind::Full => ctx.m_prime() * m * (ctx.q() - 1),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown group '{s}', expected shift, shift-scalar or full")))
    }
}

/// `mu_q^{r1} rho^{l r2} sigma_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub r1: u64,
    pub r2: u64,
    pub a: u32,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { r1: 0, r2: 0, a: 1 };
    pub const RHO: GroupElement = GroupElement { r1: 0, r2: 1, a: 1 };
    pub const MU: GroupElement = GroupElement { r1: 1, r2: 0, a: 1 };

    pub fn sigma(a: u32) -> GroupElement {
        GroupElement { r1: 0, r2: 0, a }
    }

    /// Target row of row `i`.
    pub fn row_image(&self, ctx: &RingContext, i: usize) -> usize {
        let m = ctx.m() as u64;
        let mult = (0..self.r1).fold(1u64, |acc, _| acc * (ctx.q() % m) % m);
        (mult * ((i as u64 + self.r2) % m) % m) as usize
    }

    pub fn apply(&self, ctx: &RingContext, l: usize, c: &[u32]) -> Codeword {
        let f = ctx.base();
        let mut out = vec![0u32; c.len()];
        for i in 0..ctx.m() {
            let t = self.row_image(ctx, i);
            for j in 0..l {
                out[t * l + j] = f.mul(self.a, c[i * l + j]);
            }
        }
        out
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu^{} rho^{} sigma_{}", self.r1, self.r2, self.a)
    }
}

/// All elements of the group in normal form, each exactly once.
pub fn group_elements(ctx: &RingContext, kind: GroupKind) -> Vec<GroupElement> {
    let r1_range = if kind == GroupKind::Full { ctx.m_prime() } else { 1 };
    let scalars: Vec<u32> = if kind == GroupKind::Shift {
        vec![1]
    } else {
        (1..ctx.base().size()).collect()
    };
    let mut out = Vec::with_capacity(kind.order(ctx) as usize);
    for r1 in 0..r1_range {
        for r2 in 0..ctx.m() as u64 {
            for &a in &scalars {
                out.push(GroupElement { r1, r2, a });
            }
        }
    }
    out
}

/// A generating set: `rho^l`, plus `sigma_xi` for a primitive `xi` of `F_q`,
/// plus `mu_q`, as the kind requires.
pub fn generators(ctx: &RingContext, kind: GroupKind) -> Vec<GroupElement> {
    let mut out = vec![GroupElement::RHO];
    if kind != GroupKind::Shift && ctx.q() > 2 {
        out.push(GroupElement::sigma(ctx.base().primitive_element()));
    }
    if kind == GroupKind::Full {
        out.push(GroupElement::MU);
    }
    out
}

fn check_len(ctx: &RingContext, l: usize, c: &[u32]) -> Result<()> {
    if c.len() != l * ctx.m() {
        return Err(Error::invalid(format!("codeword length {} is not l*m = {}", c.len(), l * ctx.m())));
    }
    Ok(())
}

pub fn apply_rho_l(ctx: &RingContext, l: usize, c: &[u32]) -> Result<Codeword> {
    check_len(ctx, l, c)?;
    Ok(GroupElement::RHO.apply(ctx, l, c))
}

pub fn apply_sigma(ctx: &RingContext, l: usize, a: u32, c: &[u32]) -> Result<Codeword> {
    check_len(ctx, l, c)?;
    if a == 0 || !ctx.base().contains(a) {
        return Err(Error::invalid("scalar must be a nonzero element of F_q"));
    }
    Ok(GroupElement::sigma(a).apply(ctx, l, c))
}

pub fn apply_mu_q(ctx: &RingContext, l: usize, c: &[u32]) -> Result<Codeword> {
    check_len(ctx, l, c)?;
    Ok(GroupElement::MU.apply(ctx, l, c))
}

/// True iff `g` maps every basis codeword into the code.
pub fn verify_closure(code: &QuasiCyclicCode, g: &GroupElement) -> bool {
    code.basis()
        .iter()
        .all(|b| code.contains(&g.apply(code.ctx(), code.l(), b)))
}

/// Checks that every generator of `kind` is an automorphism of the code.
pub fn check_closure(code: &QuasiCyclicCode, kind: GroupKind) -> Result<()> {
    for g in generators(code.ctx(), kind) {
        if !verify_closure(code, &g) {
            return Err(Error::GroupNotApplicable(format!(
                "the {kind} group does not preserve this code ({g} maps a codeword outside it)"
            )));
        }
    }
    Ok(())
}

/// Matrix of `g` on message digits: column `s` holds the digits of the image
/// of basis vector `s`. Assumes closure.
pub fn action_matrix(code: &QuasiCyclicCode, g: &GroupElement) -> Vec<Vec<u32>> {
    let images: Vec<Vec<u32>> = code
        .basis()
        .iter()
        .map(|b| code.message_digits(&g.apply(code.ctx(), code.l(), b)))
        .collect();
    let k = code.dimension();
    (0..k).map(|r| (0..k).map(|s| images[s][r]).collect()).collect()
}

/// Number of codewords (including zero) fixed by `g`, `q^{dim ker(M_g - I)}`.
pub fn fixed_points(code: &QuasiCyclicCode, g: &GroupElement) -> BigUint {
    let f = code.ctx().base();
    let mut mat = action_matrix(code, g);
    for (r, row) in mat.iter_mut().enumerate() {
        row[r] = f.sub(row[r], 1);
    }
    let rank = linalg::rank(f, &mat);
    num_traits::pow(BigUint::from(code.ctx().q()), code.dimension() - rank)
}

/// Orbit count on nonzero codewords by Burnside's lemma, summing fixed points
/// over every group element in normal form.
pub fn burnside_count(code: &QuasiCyclicCode, kind: GroupKind) -> Result<BigUint> {
    check_closure(code, kind)?;
    let ctx = code.ctx();
    let elements = group_elements(ctx, kind);
    let total: BigUint = elements
        .par_iter()
        .map(|g| fixed_points(code, g) - 1u32)
        .sum();
    let order = BigUint::from(kind.order(ctx));
    let (n, rem) = total.div_rem(&order);
    if rem != BigUint::from(0u32) {
        return Err(Error::internal("fixed-point sum is not divisible by the group order"));
    }
    Ok(n)
}

/// Nonzero codewords fixed by `g`, by scanning the whole code.
pub fn fixed_points_by_scan(code: &QuasiCyclicCode, g: &GroupElement, limit: u64) -> Result<u64> {
    let size = code.checked_size(limit)?;
    let mut count = 0;
    code.for_each_codeword(1..size, |_, c| {
        if g.apply(code.ctx(), code.l(), c) == c {
            count += 1;
        }
    });
    Ok(count)
}

/// Orbits of a group on the nonzero codewords, by message index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub count: u64,
    /// Orbit id per message index; [`OrbitPartition::ZERO`] for the zero word.
    pub orbit_of: Vec<u32>,
}

impl OrbitPartition {
    pub const ZERO: u32 = u32::MAX;

    pub fn orbit_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.count as usize];
        for &o in &self.orbit_of {
            if o != Self::ZERO {
                sizes[o as usize] += 1;
            }
        }
        sizes
    }
}

/// Image of every message index under `g`.
fn image_table(code: &QuasiCyclicCode, g: &GroupElement, size: u64) -> Vec<u32> {
    let mat = action_matrix(code, g);
    let k = code.dimension();
    let q = code.ctx().q();
    let columns: Vec<Vec<u32>> = (0..k).map(|s| (0..k).map(|r| mat[r][s]).collect()).collect();
    let mut table = vec![0u32; size as usize];
    const CHUNK: usize = 1 << 12;
    table.par_chunks_mut(CHUNK).enumerate().for_each(|(n, chunk)| {
        let start = (n * CHUNK) as u64;
        let end = start + chunk.len() as u64;
        linalg::for_each_in_span(code.ctx().base(), &columns, k, start..end, |i, digits| {
            chunk[(i - start) as usize] = linalg::digits_index(digits, q) as u32;
        });
    });
    table
}

/// Partitions the nonzero codewords into orbits by breadth-first closure under
/// the generators of `kind`.
pub fn orbit_partition(code: &QuasiCyclicCode, kind: GroupKind, limit: u64) -> Result<OrbitPartition> {
    check_closure(code, kind)?;
    let size = code.checked_size(limit)?;
    if size > u32::MAX as u64 {
        return Err(Error::EnumerationLimit {
            size: size.to_string(),
            limit: u32::MAX as u64,
        });
    }
    let tables: Vec<Vec<u32>> = generators(code.ctx(), kind)
        .iter()
        .map(|g| image_table(code, g, size))
        .collect();
    let mut orbit_of = vec![OrbitPartition::ZERO; size as usize];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 1..size as usize {
        if orbit_of[start] != OrbitPartition::ZERO {
            continue;
        }
        orbit_of[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for t in &tables {
                let w = t[v] as usize;
                if orbit_of[w] == OrbitPartition::ZERO {
                    orbit_of[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    Ok(OrbitPartition {
        count: count as u64,
        orbit_of,
    })
}

/// True iff any two nonzero codewords of equal weight lie in the same orbit.
pub fn tightness_check(weights: &[u32], partition: &OrbitPartition) -> bool {
    let mut orbit_of_weight: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    weights
        .iter()
        .zip(&partition.orbit_of)
        .skip(1)
        .all(|(&w, &o)| *orbit_of_weight.entry(w).or_insert(o) == o)
}
