//! Table-driven arithmetic in small finite fields `F_{p^d}`.
//!
//! An element is stored as a `u32` packing its coordinates with respect to
//! the power basis `1, y, ..., y^{d-1}` of the modulus root `y`:
//! `value = c_0 + c_1 p + ... + c_{d-1} p^{d-1}`. Prime-field constants are
//! therefore the values `0..p`, and `0`/`1` are the additive and
//! multiplicative identities in every field.
//!
//! Everything that depends on a choice is fixed deterministically:
//!
//! * the modulus is the lexicographically smallest monic irreducible of the
//!   requested degree, comparing coefficient lists `[c_0, c_1, ...]` from the
//!   constant term upwards;
//! * the *canonical element order* is the same lexicographic order on
//!   coordinate lists, so `c_0` is the most significant coordinate;
//! * the primitive element is the first element of multiplicative order
//!   `Q - 1` in canonical order.
//!
//! Multiplication goes through discrete log tables; addition for odd `p`
//! uses Zech logarithms, and plain xor for `p = 2`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth;

/// Largest field order this crate will construct.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Characteristic, degree and defining polynomial of `F_{p^d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub d: u32,
    /// Monic irreducible of degree `d`, ascending coefficients (length `d + 1`).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn size(&self) -> u32 {
        self.p.pow(self.d)
    }
}

/// Coordinates of the `rank`-th list of length `len` in lexicographic order
/// (index 0 most significant).
fn lex_coords(mut rank: u64, p: u32, len: u32) -> Vec<u32> {
    let mut out = vec![0u32; len as usize];
    for slot in out.iter_mut().rev() {
        *slot = (rank % p as u64) as u32;
        rank /= p as u64;
    }
    out
}

fn poly_rem_mod_p(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = inv_mod_p(den[dd], p);
    while r.len() > dd {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - f * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero element of a prime field")
}

/// Exhaustive search for a monic factor of degree `1..=d/2`.
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let d = (f.len() - 1) as u32;
    for deg in 1..=d / 2 {
        for rank in 0..(p as u64).pow(deg) {
            let mut g = lex_coords(rank, p, deg);
            g.push(1);
            if poly_rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The field `F_{p^d}` with the lexicographically smallest monic irreducible
/// modulus.
pub fn build_field(p: u32, d: u32) -> Result<FieldSpec> {
    if !numth::is_prime(p as u64) {
        return Err(Error::invalid(format!("field characteristic {p} is not prime")));
    }
    if d == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let size = (p as u64).checked_pow(d).unwrap_or(u64::MAX);
    if size > MAX_FIELD_SIZE {
        return Err(Error::invalid(format!(
            "field F_{{{p}^{d}}} exceeds the supported size {MAX_FIELD_SIZE}"
        )));
    }
    for rank in 0..size {
        let mut f = lex_coords(rank, p, d);
        f.push(1);
        if is_irreducible_mod_p(&f, p) {
            return Ok(FieldSpec { p, d, modulus: f });
        }
    }
    Err(Error::internal(format!("no irreducible polynomial of degree {d} over F_{p}")))
}

/// Coordinate packing helpers that work before any tables exist.
struct Packing {
    p: u32,
    d: u32,
    pow: Vec<u32>,
}

impl Packing {
    fn new(p: u32, d: u32) -> Self {
        let pow = (0..d).map(|i| p.pow(i)).collect();
        Packing { p, d, pow }
    }

    fn coeffs(&self, v: u32) -> Vec<u32> {
        (0..self.d as usize).map(|i| v / self.pow[i] % self.p).collect()
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().zip(&self.pow).map(|(&c, &w)| c * w).sum()
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut r = 0;
        for &w in &self.pow {
            r += (a / w % self.p + b / w % self.p) % self.p * w;
        }
        r
    }
}

/// `F_{p^d}` with precomputed log, antilog and Zech tables.
pub struct Field {
    spec: FieldSpec,
    size: u32,
    packing: Packing,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.spec.p)
            .field("d", &self.spec.d)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^d}` with the canonical modulus.
    pub fn build(p: u32, d: u32) -> Result<Arc<Field>> {
        Field::from_spec(build_field(p, d)?)
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Arc<Field>> {
        let (p, d) = (spec.p, spec.d);
        if spec.modulus.len() != d as usize + 1 || spec.modulus[d as usize] != 1 {
            return Err(Error::invalid("modulus must be monic of degree d"));
        }
        if spec.modulus.iter().any(|&c| c >= p) {
            return Err(Error::invalid("modulus coefficients must lie in 0..p"));
        }
        if !numth::is_prime(p as u64) || spec.size() as u64 > MAX_FIELD_SIZE {
            return Err(Error::invalid("unsupported field parameters"));
        }
        if !is_irreducible_mod_p(&spec.modulus, p) {
            return Err(Error::invalid("modulus is reducible"));
        }
        let packing = Packing::new(p, d);
        let size = spec.size();
        let order = size as u64 - 1;

        // y^i * (c y^j) reduction helper: multiply by y once.
        let red: Vec<u32> = spec.modulus[..d as usize].iter().map(|&c| (p - c) % p).collect();
        let times_y = |v: u32| -> u32 {
            let mut c = packing.coeffs(v);
            let top = c.pop().unwrap_or(0);
            c.insert(0, 0);
            for (ci, &ri) in c.iter_mut().zip(&red) {
                *ci = (*ci + top * ri) % p;
            }
            packing.pack(&c)
        };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let mut acc = 0;
            let mut shifted = a;
            for &bc in &packing.coeffs(b) {
                for _ in 0..bc {
                    acc = packing.add(acc, shifted);
                }
                shifted = times_y(shifted);
            }
            acc
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };

        let primes: Vec<u64> = numth::factorize(order).into_iter().map(|(r, _)| r).collect();
        let primitive = (0..size as u64)
            .map(|rank| packing.pack(&lex_coords(rank, p, d)))
            .find(|&a| a != 0 && primes.iter().all(|&r| slow_pow(a, order / r) != 1))
            .ok_or_else(|| Error::internal("no primitive element found"))?;

        // a * primitive as a sum of per-coordinate contributions
        let mut contrib = vec![vec![0u32; p as usize]; d as usize];
        let mut basis = primitive;
        for row in contrib.iter_mut() {
            for c in 1..p as usize {
                row[c] = packing.add(row[c - 1], basis);
            }
            basis = times_y(basis);
        }
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = 1u32;
        for k in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = k;
            let mut next = 0;
            for (i, row) in contrib.iter().enumerate() {
                let c = cur / packing.pow[i] % p;
                if c != 0 {
                    next = packing.add(next, row[c as usize]);
                }
            }
            cur = next;
        }
        if cur != 1 || exp.len() as u64 != order {
            return Err(Error::internal("primitive element has the wrong order"));
        }
        let zech = exp
            .iter()
            .map(|&v| {
                let plus_one = v - v % p + (v % p + 1) % p;
                log[plus_one as usize]
            })
            .collect();

        Ok(Arc::new(Field {
            spec,
            size,
            packing,
            primitive,
            exp,
            log,
            zech,
        }))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.d
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.size
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        self.packing.coeffs(a)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u32> {
        if c.len() != self.spec.d as usize || c.iter().any(|&x| x >= self.spec.p) {
            return Err(Error::invalid(format!(
                "expected {} coordinates in 0..{}",
                self.spec.d, self.spec.p
            )));
        }
        Ok(self.packing.pack(c))
    }

    /// Root `y` of the modulus, the generator of the power basis.
    pub fn root(&self) -> u32 {
        if self.spec.d == 1 {
            (self.spec.p - self.spec.modulus[0]) % self.spec.p
        } else {
            self.spec.p
        }
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.spec.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.spec.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (self.log[a as usize], self.log[b as usize]);
        let diff = (lb + self.order() - la) % self.order();
        match self.zech[diff as usize] {
            NO_LOG => 0,
            z => self.exp[((la as u64 + z as u64) % self.order() as u64) as usize],
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.spec.p == 2 || a == 0 {
            return a;
        }
        let half = self.order() / 2;
        self.exp[((self.log[a as usize] + half) % self.order()) as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % self.order() as u64) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::domain("zero has no multiplicative inverse"));
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.order() - l) % self.order()) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b).map_err(|_| Error::domain("division by zero"))?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * e as u128 % self.order() as u128;
        self.exp[l as usize]
    }

    /// `a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.spec.p as u64)
    }

    /// Discrete logarithm with respect to [`Field::primitive_element`].
    pub fn log(&self, a: u32) -> Result<u32> {
        if a == 0 || a >= self.size {
            return Err(Error::domain("logarithm of zero"));
        }
        Ok(self.log[a as usize])
    }

    /// `primitive_element()^k`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % self.order() as u64) as usize]
    }

    pub fn element_order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::domain("zero has no multiplicative order"));
        }
        let n = self.order() as u64;
        Ok(n / (self.log(a)? as u64).gcd(&n))
    }

    /// First element of order `Q - 1` in canonical order.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    /// The `index`-th primitive element in canonical order (1-based).
    pub fn nth_primitive_element(&self, index: usize) -> Result<u32> {
        if index == 0 {
            return Err(Error::invalid("primitive element index is 1-based"));
        }
        let n = self.order() as u64;
        self.canonical_elements()
            .filter(|&a| a != 0 && (self.log[a as usize] as u64).gcd(&n) == 1)
            .nth(index - 1)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "F_{} has fewer than {index} primitive elements",
                    self.size
                ))
            })
    }

    /// All elements in canonical (lexicographic coordinate) order.
    pub fn canonical_elements(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.size as u64).map(move |r| self.packing.pack(&lex_coords(r, self.spec.p, self.spec.d)))
    }

    /// A primitive `m`-th root of unity, `omega^((Q-1)/m)`.
    pub fn root_of_unity_from(&self, omega: u32, m: u64) -> Result<u32> {
        let n = self.order() as u64;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::invalid(format!(
                "{m} does not divide {n}, no primitive {m}-th root of unity in F_{}",
                self.size
            )));
        }
        Ok(self.pow(omega, n / m))
    }

    pub fn root_of_unity(&self, m: u64) -> Result<u32> {
        self.root_of_unity_from(self.primitive, m)
    }

    pub fn element(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        if value >= self.size {
            return Err(Error::invalid(format!("{value} is not an element of F_{}", self.size)));
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            value,
        })
    }
}

/// Owning handle for a single element, for callers that want field checks on
/// every operation. Bulk code works on raw `u32` values through [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<Field>,
    value: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn arith(&self, other: &FieldElement, op: FieldOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::invalid("operands belong to different fields"));
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            FieldOp::Add => f.add(a, b),
            FieldOp::Sub => f.sub(a, b),
            FieldOp::Mul => f.mul(a, b),
            FieldOp::Div => f.div(a, b)?,
        };
        Ok(FieldElement {
            field: Arc::clone(f),
            value,
        })
    }

    pub fn order(&self) -> Result<u64> {
        self.field.element_order(self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

/// An injective ring homomorphism `sub -> sup` fixing the prime field.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: Arc<Field>,
    sup: Arc<Field>,
    image: u32,
    table: Vec<u32>,
    preimage: HashMap<u32, u32>,
}

/// Sends the root of `sub`'s modulus to its first root (canonical order) in
/// `sup`.
pub fn build_embedding(sub: &Arc<Field>, sup: &Arc<Field>) -> Result<Embedding> {
    if sub.characteristic() != sup.characteristic() {
        return Err(Error::invalid("embedding requires equal characteristic"));
    }
    if !sup.degree().is_multiple_of(sub.degree()) {
        return Err(Error::invalid(format!(
            "F_{} does not embed in F_{}: degree {} does not divide {}",
            sub.size(),
            sup.size(),
            sub.degree(),
            sup.degree()
        )));
    }
    // prime-field constants have the same packed value in both fields
    let eval = |x: u32| {
        sub.spec()
            .modulus
            .iter()
            .rev()
            .fold(0u32, |acc, &c| sup.add(sup.mul(acc, x), c))
    };
    let image = sup
        .canonical_elements()
        .find(|&x| eval(x) == 0)
        .ok_or_else(|| Error::internal("modulus has no root in the extension"))?;
    let mut powers = Vec::with_capacity(sub.degree() as usize);
    let mut acc = 1u32;
    for _ in 0..sub.degree() {
        powers.push(acc);
        acc = sup.mul(acc, image);
    }
    let table: Vec<u32> = (0..sub.size())
        .map(|v| {
            sub.coeffs(v)
                .iter()
                .zip(&powers)
                .fold(0u32, |s, (&c, &w)| sup.add(s, sup.mul(c, w)))
        })
        .collect();
    let preimage = table.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    Ok(Embedding {
        sub: Arc::clone(sub),
        sup: Arc::clone(sup),
        image,
        table,
        preimage,
    })
}

impl Embedding {
    pub fn sub(&self) -> &Arc<Field> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<Field> {
        &self.sup
    }

    /// Image of the root of `sub`'s modulus.
    pub fn image(&self) -> u32 {
        self.image
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.table[a as usize]
    }

    /// Inverse on the image, `None` outside it.
    pub fn preimage(&self, b: u32) -> Option<u32> {
        self.preimage.get(&b).copied()
    }
}
