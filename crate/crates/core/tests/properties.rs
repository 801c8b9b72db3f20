use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcweights::bounds::{self, ConstituentArith};
use qcweights::code::{self, ConstituentSpec, QccSpec, QuasiCyclicCode, RowEntry};
use qcweights::group::{self, GroupKind};
use qcweights::numth;
use qcweights::ring::RingContext;

fn arith(i: u64, k: u64, dim: u64) -> ConstituentArith {
    ConstituentArith::new(i, k, dim)
}

fn n(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow(q: u64, e: u64) -> u128 {
    (q as u128).pow(e as u32)
}

/// Valid constituent data `(i, k, K)` for every coset modulo `m`, with `K`
/// equal to one or two copies of the coset size.
fn valid_constituents(q: u64, m: u64) -> Vec<ConstituentArith> {
    numth::cyclotomic_cosets(q, m)
        .unwrap()
        .into_iter()
        .flat_map(|c| {
            let k = c.size() as u64;
            [arith(c.rep, k, k), arith(c.rep, k, 2 * k)]
        })
        // Keeps products of two sizes and m within u128 for the oracles.
        .filter(|c| c.dim as f64 * (q as f64).log2() < 48.0)
        .collect()
}

fn coprime_moduli(q: u64, max: u64) -> impl Iterator<Item = u64> {
    (1..=max).filter(move |m| m.gcd(&q) == 1)
}

#[test]
fn single_constituent_reductions() {
    for q in [2u64, 3, 4, 5, 9] {
        for m in coprime_moduli(q, 60) {
            for c in valid_constituents(q, m) {
                assert_eq!(
                    bounds::bound_shift(&[c], m, q).unwrap(),
                    bounds::bound_single_shift(m, c.i, c.dim, q).unwrap(),
                    "q={q} m={m} {c:?}"
                );
                assert_eq!(
                    bounds::bound_shift_scalar(&[c], m, q).unwrap(),
                    bounds::bound_single_shift_scalar(m, c.i, c.dim, q).unwrap(),
                    "q={q} m={m} {c:?}"
                );
                if c.dim == c.k {
                    assert_eq!(
                        bounds::bound_full(&[c], m, q).unwrap(),
                        bounds::bound_single_full(q, c.k, c.i, m).unwrap(),
                        "q={q} m={m} {c:?}"
                    );
                }
            }
        }
    }
}

/// The single-constituent forms match `gcd(m, i)(q^K - 1)/m` and
/// `gcd(m, (q-1) i)(q^K - 1)/(m (q-1))` evaluated in machine integers.
#[test]
fn single_constituent_values() {
    for q in [2u64, 3, 4, 5, 9] {
        for m in coprime_moduli(q, 100) {
            for c in valid_constituents(q, m).into_iter().filter(|c| c.dim == c.k) {
                let size = pow(q, c.dim) - 1;
                let shift = m.gcd(&c.i) as u128 * size / m as u128;
                let scalar = m.gcd(&((q - 1) * c.i)) as u128 * size / (m as u128 * (q - 1) as u128);
                assert_eq!(bounds::bound_single_shift(m, c.i, c.dim, q).unwrap(), BigUint::from(shift));
                assert_eq!(
                    bounds::bound_single_shift_scalar(m, c.i, c.dim, q).unwrap(),
                    BigUint::from(scalar)
                );
            }
        }
    }
}

/// Two constituents: the three-term expansions written out directly.
#[test]
fn two_constituent_expansions() {
    for q in [2u64, 3, 4, 5] {
        for m in coprime_moduli(q, 40) {
            let cs = valid_constituents(q, m);
            for (x, a) in cs.iter().enumerate() {
                for b in cs.iter().skip(x + 1).filter(|b| b.i != a.i) {
                    let (ka, kb) = (pow(q, a.dim) - 1, pow(q, b.dim) - 1);
                    let (mm, q1) = (m as u128, (q - 1) as u128);
                    let gab = m.gcd(&a.i).gcd(&b.i) as u128;
                    let (ga, gb) = (m.gcd(&a.i) as u128, m.gcd(&b.i) as u128);
                    let shift = gab * ka * kb / mm + ga * ka / mm + gb * kb / mm;
                    assert_eq!(bounds::bound_shift(&[*a, *b], m, q).unwrap(), BigUint::from(shift));

                    let sa = (q1).gcd(&(mm / ga));
                    let sb = (q1).gcd(&(mm / gb));
                    let separate = gab * ka * kb * sa.gcd(&sb) / (mm * q1)
                        + ga * ka * sa / (mm * q1)
                        + gb * kb * sb / (mm * q1);
                    let sum: BigUint = bounds::shift_scalar_terms_per_constituent(&[*a, *b], m, q)
                        .unwrap()
                        .into_iter()
                        .sum();
                    assert_eq!(sum, BigUint::from(separate), "q={q} m={m} {a:?} {b:?}");
                }
            }
        }
    }
}

/// Counts `(z, a)` with `zeta^{i_v z} = a^{-1}` for all `v` by walking `z`:
/// the values `i_v z mod m` must coincide and be a multiple of `m/(q-1)`
/// worth of the exponent, i.e. `(q-1) i z = 0 mod m`.
fn common_scalar_shifts(set: &[ConstituentArith], m: u64, q: u64) -> u64 {
    (0..m)
        .filter(|&z| {
            let e = set[0].i * z % m;
            set.iter().all(|c| c.i * z % m == e) && ((q - 1) * e).is_multiple_of(m)
        })
        .count() as u64
}

#[test]
fn shift_scalar_terms_match_fixed_point_count() {
    for q in [2u64, 3, 4, 5] {
        for m in coprime_moduli(q, 30) {
            let cosets = numth::cyclotomic_cosets(q, m).unwrap();
            let cs: Vec<_> = cosets.iter().take(4).map(|c| arith(c.rep, c.size() as u64, c.size() as u64)).collect();
            let terms = bounds::shift_scalar_terms(&cs, m, q).unwrap();
            for (mask, term) in (1..1usize << cs.len()).zip(&terms) {
                let set: Vec<_> = (0..cs.len()).filter(|b| mask >> b & 1 == 1).map(|b| cs[b]).collect();
                let prod: u128 = set.iter().map(|c| pow(q, c.dim) - 1).product();
                let want = common_scalar_shifts(&set, m, q) as u128 * prod / (m as u128 * (q - 1) as u128);
                assert_eq!(*term, BigUint::from(want), "q={q} m={m} {set:?}");
            }
        }
    }
}

#[test]
fn formula_values_are_positive() {
    for q in [2u64, 3, 4, 5, 9] {
        for m in coprime_moduli(q, 60) {
            for c in valid_constituents(q, m) {
                assert!(bounds::bound_shift(&[c], m, q).unwrap() >= n(1));
                assert!(bounds::bound_shift_scalar(&[c], m, q).unwrap() >= n(1));
            }
        }
    }
}

// ---- ring and group invariants ----

const RING_PARAMS: [(u64, u64); 4] = [(2, 9), (2, 15), (3, 26), (5, 39)];

fn ring_vector(q: u64, len: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..q as u32, len)
}

fn ring_case() -> impl Strategy<Value = (u64, u64, Vec<u32>)> {
    proptest::sample::select(RING_PARAMS.to_vec())
        .prop_flat_map(|(q, m)| ring_vector(q, m as usize).prop_map(move |v| (q, m, v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dft_round_trip((q, m, coeffs) in ring_case()) {
        let ctx = RingContext::new(q, m, 1).unwrap();
        let a = ctx.element(&coeffs).unwrap();
        prop_assert_eq!(ctx.idft(&ctx.dft(&a)).unwrap(), a);
    }

    #[test]
    fn phi_round_trip((q, m, l, word) in proptest::sample::select(RING_PARAMS.to_vec())
        .prop_flat_map(|(q, m)| (2usize..=3).prop_flat_map(move |l| ring_vector(q, l * m as usize).prop_map(move |w| (q, m, l, w))))) {
        let ctx = RingContext::new(q, m, 1).unwrap();
        let slots = code::phi(&ctx, l, &word).unwrap();
        prop_assert_eq!(slots.len(), l);
        prop_assert_eq!(code::phi_inv(&ctx, &slots).unwrap(), word);
    }

    #[test]
    fn shift_has_order_m((q, m, word) in ring_case().prop_map(|(q, m, v)| {
        let mut w = v.clone();
        w.extend(v.iter().rev());
        (q, m, w)
    })) {
        let ctx = RingContext::new(q, m, 1).unwrap();
        let mut c = word.clone();
        let mut period = None;
        for step in 1..=m {
            c = group::apply_rho_l(&ctx, 2, &c).unwrap();
            if period.is_none() && c == word {
                period = Some(step);
            }
        }
        prop_assert_eq!(&c, &word);
        prop_assert_eq!(m % period.unwrap(), 0);
    }

    #[test]
    fn scalars_compose(word in ring_vector(5, 2 * 39), a in 1u32..5, b in 1u32..5) {
        let ctx = RingContext::new(5, 39, 1).unwrap();
        let f = ctx.base();
        let ab = group::apply_sigma(&ctx, 2, a, &group::apply_sigma(&ctx, 2, b, &word).unwrap()).unwrap();
        prop_assert_eq!(ab, group::apply_sigma(&ctx, 2, f.mul(a, b), &word).unwrap());
    }
}

// ---- orbit counts against an independent oracle ----

/// Group action written out on coordinates: row `i` of a codeword moves to
/// row `q^{r1} (i + r2) mod m`, and every entry is scaled by `a`.
fn act(ctx: &RingContext, l: usize, r1: u64, r2: u64, a: u32, c: &[u32]) -> Vec<u32> {
    let m = ctx.m() as u64;
    let mult = (0..r1).fold(1u64, |acc, _| acc * ctx.q() % m);
    let mut out = vec![0; c.len()];
    for i in 0..m {
        let t = (mult * ((i + r2) % m) % m) as usize;
        for j in 0..l {
            out[t * l + j] = ctx.base().mul(a, c[i as usize * l + j]);
        }
    }
    out
}

fn naive_orbit_count(code: &QuasiCyclicCode, kind: GroupKind) -> u64 {
    let ctx = code.ctx();
    let l = code.l();
    let scalars: Vec<u32> = match kind {
        GroupKind::Shift => vec![1],
        _ => (1..ctx.q() as u32).collect(),
    };
    let mu_powers = if kind == GroupKind::Full { ctx.m_prime() } else { 1 };
    let words: Vec<Vec<u32>> = code.codewords(1 << 16).unwrap().filter(|c| c.iter().any(|&x| x != 0)).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut orbits = 0;
    for w in words {
        if seen.contains(&w) {
            continue;
        }
        orbits += 1;
        for r1 in 0..mu_powers {
            for r2 in 0..ctx.m() as u64 {
                for &a in &scalars {
                    seen.insert(act(ctx, l, r1, r2, a, &w));
                }
            }
        }
    }
    orbits
}

fn spec(q: u64, m: u64, l: usize, cs: &[(u64, &[&[RowEntry]])]) -> QccSpec {
    QccSpec {
        q,
        m,
        l,
        constituents: cs
            .iter()
            .map(|(rep, rows)| ConstituentSpec {
                coset_rep: *rep,
                rows: rows.iter().map(|r| r.to_vec()).collect(),
            })
            .collect(),
    }
}

#[test]
fn orbit_counts_match_naive_orbits() {
    use RowEntry::{Generator as G, Poly, Zero as Z};
    let one = || Poly(vec![1]);
    let cases = vec![
        spec(2, 9, 2, &[(0, &[&[Z, G]]), (1, &[&[G, Z]])]),
        spec(3, 8, 2, &[(1, &[&[one(), Poly(vec![0, 1])]]), (4, &[&[G, G]])]),
        spec(4, 11, 2, &[(1, &[&[Z, G]])]),
        spec(5, 4, 2, &[(1, &[&[one(), Z]]), (2, &[&[Poly(vec![4]), Poly(vec![4])]])]),
        spec(5, 6, 3, &[(1, &[&[one(), G, Z]]), (3, &[&[G, Z, G]])]),
        spec(2, 15, 3, &[(0, &[&[one(), Z, G], &[Z, one(), Z]]), (5, &[&[G, G, G]])]),
    ];
    for s in cases {
        let code = QuasiCyclicCode::build(s.clone(), 1).unwrap();
        for kind in GroupKind::ALL {
            if group::check_closure(&code, kind).is_err() {
                continue;
            }
            let brute = group::orbit_partition(&code, kind, 1 << 16).unwrap().count;
            assert_eq!(brute, naive_orbit_count(&code, kind), "{kind} on {s:?}");
            assert_eq!(group::burnside_count(&code, kind).unwrap(), n(brute), "{kind} on {s:?}");
        }
    }
}

// ---- choice of primitive element ----

/// Rows whose nonzero entries are all constants, or all the same entry, give
/// codes that only get relabelled when `omega` changes.
fn uniform_spec() -> impl Strategy<Value = QccSpec> {
    let params = proptest::sample::select(vec![(2u64, 7u64), (2, 9), (2, 15), (3, 8), (3, 13), (4, 5), (4, 9), (5, 6)]);
    (params, 2usize..=3, any::<u64>()).prop_map(|((q, m), l, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cosets = numth::cyclotomic_cosets(q, m).unwrap();
        let mut constituents = Vec::new();
        let mut budget = 12.0f64;
        for c in &cosets {
            let cost = c.size() as f64 * (q as f64).log2();
            if rng.gen_bool(0.5) || cost > budget {
                continue;
            }
            budget -= cost;
            let row: Vec<RowEntry> = if rng.gen_bool(0.5) {
                (0..l).map(|_| RowEntry::Poly(vec![rng.gen_range(0..q as u32)])).collect()
            } else {
                let e = if rng.gen_bool(0.5) { RowEntry::Generator } else { RowEntry::Poly(vec![0, 1, 1]) };
                (0..l)
                    .map(|j| if j == 0 || rng.gen_bool(0.5) { e.clone() } else { RowEntry::Zero })
                    .collect()
            };
            constituents.push(ConstituentSpec { coset_rep: c.rep, rows: vec![row] });
        }
        QccSpec { q, m, l, constituents }
    })
}

fn summary(code: &QuasiCyclicCode) -> (Vec<u32>, HashMap<GroupKind, u64>) {
    let mut weights = code.weights(1 << 14).unwrap();
    weights.sort_unstable();
    let counts = GroupKind::ALL
        .into_iter()
        .filter(|&k| group::check_closure(code, k).is_ok())
        .map(|k| (k, group::orbit_partition(code, k, 1 << 14).unwrap().count))
        .collect();
    (weights, counts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uniform_rows_do_not_depend_on_omega(s in uniform_spec()) {
        let a = QuasiCyclicCode::build(s.clone(), 1).unwrap();
        let b = QuasiCyclicCode::build(s, 2).unwrap();
        prop_assert_eq!(summary(&a), summary(&b));
        let qualifies = |c: &QuasiCyclicCode| c.constituents().iter().map(|t| t.qualifies).collect::<Vec<_>>();
        prop_assert_eq!(qualifies(&a), qualifies(&b));
    }
}

/// Coarser groups give fewer orbits.
#[test]
fn orbit_count_chain() {
    use RowEntry::{Generator as G, Zero as Z};
    for s in [
        spec(2, 9, 2, &[(0, &[&[Z, G]]), (1, &[&[G, Z]])]),
        spec(4, 11, 2, &[(1, &[&[Z, G]])]),
        spec(3, 8, 2, &[(1, &[&[G, G]]), (2, &[&[G, Z]])]),
    ] {
        let code = QuasiCyclicCode::build(s, 1).unwrap();
        let count = |k| group::orbit_partition(&code, k, 1 << 16).unwrap().count;
        let (shift, scalar, full) = (count(GroupKind::Shift), count(GroupKind::ShiftScalar), count(GroupKind::Full));
        let s = code::nonzero_weight_count(&code.weight_distribution(1 << 16).unwrap()) as u64;
        assert!(s <= full && full <= scalar && scalar <= shift, "{s} {full} {scalar} {shift}");
    }
}
