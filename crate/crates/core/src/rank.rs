//! Exact rank of sparse matrices: ordinary elimination over `F_p` and
//! fraction-free (Bareiss) elimination over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse row: column index to nonzero entry.
pub type SparseRow<T> = BTreeMap<usize, T>;

/// Rank over `F_p` by Gaussian elimination. Entries must be reduced residues.
pub fn rank_mod_p(rows: &[SparseRow<u64>], p: u64) -> usize {
    let p128 = p as u128;
    // pivot column -> normalized row (leading entry 1)
    let mut pivots: BTreeMap<usize, SparseRow<u64>> = BTreeMap::new();
    for row in rows {
        let mut r: SparseRow<u64> = row
            .iter()
            .filter(|(_, v)| **v % p != 0)
            .map(|(c, v)| (*c, v % p))
            .collect();
        loop {
            let Some((&lead, &val)) = r.iter().next() else {
                break;
            };
            match pivots.get(&lead) {
                Some(piv) => {
                    // r -= val * piv
                    for (&c, &pv) in piv {
                        let sub = (val as u128 * pv as u128 % p128) as u64;
                        let e = r.entry(c).or_insert(0);
                        *e = (*e + p - sub) % p;
                        if *e == 0 {
                            r.remove(&c);
                        }
                    }
                }
                None => {
                    let inv = mod_inverse(val, p);
                    for v in r.values_mut() {
                        *v = (*v as u128 * inv as u128 % p128) as u64;
                    }
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

/// Rank over the rationals of an integer matrix by fraction-free
/// elimination. After `k` pivots every remaining entry is a `(k+1)`-minor,
/// so the division by the previous pivot is exact.
pub fn rank_bareiss(rows: &[SparseRow<BigInt>]) -> usize {
    let mut active: Vec<SparseRow<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (*c, v.clone()))
                .collect()
        })
        .filter(|r: &SparseRow<BigInt>| !r.is_empty())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    while !active.is_empty() {
        // pivot: leftmost leading column, then smallest magnitude, then fewest entries
        let idx = (0..active.len())
            .min_by(|&a, &b| {
                let (ca, va) = active[a].iter().next().unwrap();
                let (cb, vb) = active[b].iter().next().unwrap();
                ca.cmp(cb)
                    .then_with(|| va.abs().cmp(&vb.abs()))
                    .then_with(|| active[a].len().cmp(&active[b].len()))
            })
            .unwrap();
        let pivot = active.swap_remove(idx);
        let (&col, a) = pivot.iter().next().unwrap();
        let a = a.clone();
        rank += 1;
        let next: Vec<SparseRow<BigInt>> = active
            .iter()
            .map(|row| {
                let b = row.get(&col).cloned().unwrap_or_else(BigInt::zero);
                let mut out = SparseRow::new();
                let mut keys: Vec<usize> = row.keys().copied().collect();
                if !b.is_zero() {
                    keys.extend(pivot.keys().copied());
                    keys.sort_unstable();
                    keys.dedup();
                }
                for c in keys {
                    let mut v = row.get(&c).map(|x| x * &a).unwrap_or_else(BigInt::zero);
                    if !b.is_zero() {
                        if let Some(pv) = pivot.get(&c) {
                            v -= &b * pv;
                        }
                    }
                    if !v.is_zero() {
                        let (q, r) = v.div_rem(&prev);
                        debug_assert!(r.is_zero(), "Bareiss division not exact");
                        out.insert(c, q);
                    }
                }
                out
            })
            .filter(|r| !r.is_empty())
            .collect();
        active = next;
        prev = a;
    }
    rank
}
