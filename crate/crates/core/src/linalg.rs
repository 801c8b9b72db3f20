//! Row reduction over a base field and fast iteration over a row span.

use std::ops::Range;

use crate::fields::Field;

/// Brings `rows` to reduced row echelon form, dropping zero rows. Returns the
/// pivot column of each remaining row.
pub fn rref(f: &Field, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(found) = (next..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next, found);
        let inv = f.inv(rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let c = row[col];
            if r != next && c != 0 {
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, p));
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<u32>]) -> usize {
    let mut work = rows.to_vec();
    rref(f, &mut work).len()
}

/// `sum_r digits[r] * rows[r]`.
pub fn combine(f: &Field, rows: &[Vec<u32>], digits: &[u32], len: usize) -> Vec<u32> {
    let mut acc = vec![0u32; len];
    for (row, &d) in rows.iter().zip(digits) {
        if d != 0 {
            for (a, &x) in acc.iter_mut().zip(row) {
                *a = f.add(*a, f.mul(d, x));
            }
        }
    }
    acc
}

/// Base-`q` digits of a message index, least significant first. Each digit is
/// a packed field value.
pub fn index_digits(index: u64, q: u64, k: usize) -> Vec<u32> {
    let mut rest = index;
    (0..k)
        .map(|_| {
            let d = (rest % q) as u32;
            rest /= q;
            d
        })
        .collect()
}

pub fn digits_index(digits: &[u32], q: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
}

/// Calls `visit(index, vector)` for every message index in `range`, where
/// `vector = sum_r digit_r(index) * rows[r]` and the digits are the base-`q`
/// expansion of the index. Consecutive vectors are obtained by adding a
/// precomputed difference, so the cost per index is amortised `O(len)`.
pub fn for_each_in_span(
    f: &Field,
    rows: &[Vec<u32>],
    len: usize,
    range: Range<u64>,
    mut visit: impl FnMut(u64, &[u32]),
) {
    let q = f.size();
    let deltas: Vec<Vec<Vec<u32>>> = rows
        .iter()
        .map(|row| {
            (0..q)
                .map(|v| {
                    let next = if v + 1 == q { 0 } else { v + 1 };
                    let c = f.sub(next, v);
                    row.iter().map(|&x| f.mul(c, x)).collect()
                })
                .collect()
        })
        .collect();
    let mut digits = index_digits(range.start, q as u64, rows.len());
    let mut acc = combine(f, rows, &digits, len);
    let binary = f.characteristic() == 2;
    for index in range {
        visit(index, &acc);
        for (r, digit) in digits.iter_mut().enumerate() {
            let delta = &deltas[r][*digit as usize];
            if binary {
                for (a, &d) in acc.iter_mut().zip(delta) {
                    *a ^= d;
                }
            } else {
                for (a, &d) in acc.iter_mut().zip(delta) {
                    *a = f.add(*a, d);
                }
            }
            *digit = if *digit + 1 == q { 0 } else { *digit + 1 };
            if *digit != 0 {
                break;
            }
        }
    }
}
