//! Seeded samples of concrete group elements.

use rand::Rng;

use super::{GroupKind, GroupSpec};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Field, Polynomial, Scalar};
use crate::random::{stream_rng, STREAM_GROUP_SAMPLES};

fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => Scalar::Mod(rng.random_range(0..p)),
        Field::Rationals => field.from_i64(rng.random_range(-3..=3)),
    }
}

fn random_invertible(rng: &mut impl Rng, field: Field, n: usize) -> PolyMatrix {
    loop {
        let values = (0..n * n).map(|_| random_scalar(rng, field)).collect();
        let m = PolyMatrix::from_scalars(field, n, n, values).expect("shape");
        if m.constant_inverse().is_ok() {
            return m;
        }
    }
}

fn random_symmetric(rng: &mut impl Rng, field: Field, d: usize) -> Vec<Vec<Scalar>> {
    let mut b = vec![vec![field.zero(); d]; d];
    for i in 0..d {
        for j in i..d {
            let v = random_scalar(rng, field);
            b[i][j] = v.clone();
            b[j][i] = v;
        }
    }
    b
}

fn signed_permutation(rng: &mut impl Rng, field: Field, n: usize) -> PolyMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let signs: Vec<i64> = (0..n)
        .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
        .collect();
    PolyMatrix::from_fn(field, n, n, |i, j| {
        if perm[i] == j {
            Polynomial::from_i64(field, signs[i])
        } else {
            Polynomial::zero(field)
        }
    })
}

/// The rotation with cosine 3/5 and sine 4/5 in the plane of coordinates
/// `a < b`; orthogonal whenever 5 is invertible.
fn pythagorean_rotation(field: Field, n: usize, a: usize, b: usize) -> Result<PolyMatrix> {
    let five = num_bigint::BigInt::from(5);
    let c = field.from_ratio(&3.into(), &five)?;
    let s = field.from_ratio(&4.into(), &five)?;
    Ok(PolyMatrix::from_fn(field, n, n, |i, j| {
        let v = match (i, j) {
            _ if i == a && j == a || i == b && j == b => c.clone(),
            _ if i == a && j == b => field.neg(&s),
            _ if i == b && j == a => s.clone(),
            _ if i == j => field.one(),
            _ => field.zero(),
        };
        Polynomial::constant(field, v)
    }))
}

fn block(field: Field, d: usize, blocks: [&dyn Fn(usize, usize) -> Scalar; 4]) -> PolyMatrix {
    PolyMatrix::from_fn(field, 2 * d, 2 * d, |i, j| {
        let which = (i / d) * 2 + j / d;
        Polynomial::constant(field, blocks[which](i % d, j % d))
    })
}

fn symplectic_generator(rng: &mut impl Rng, field: Field, d: usize) -> Result<PolyMatrix> {
    let id = |i: usize, j: usize| if i == j { field.one() } else { field.zero() };
    let zero = |_: usize, _: usize| field.zero();
    Ok(match rng.random_range(0..3) {
        0 => {
            let b = random_symmetric(rng, field, d);
            block(field, d, [&id, &|i, j| b[i][j].clone(), &zero, &id])
        }
        1 => {
            let c = random_symmetric(rng, field, d);
            block(field, d, [&id, &zero, &|i, j| c[i][j].clone(), &id])
        }
        _ => {
            let a = random_invertible(rng, field, d);
            let a_inv_t = a.constant_inverse()?.transpose();
            let entry = |m: &PolyMatrix, i: usize, j: usize| {
                m.get(i, j).constant_value().expect("constant")
            };
            block(
                field,
                d,
                [&|i, j| entry(&a, i, j), &zero, &zero, &|i, j| {
                    entry(&a_inv_t, i, j)
                }],
            )
        }
    })
}

/// `count` elements of `g` over `field`, reproducible from `seed`. Every
/// element is checked against the defining equation of its group.
pub fn group_sample(
    g: GroupSpec,
    field: Field,
    count: usize,
    seed: u64,
) -> Result<Vec<PolyMatrix>> {
    g.check_field(field)?;
    let mut rng = stream_rng(seed, STREAM_GROUP_SAMPLES);
    let n = g.n;
    let id = PolyMatrix::identity(field, n);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let m = match g.kind {
            GroupKind::GL => random_invertible(&mut rng, field, n),
            GroupKind::O => {
                let mut m = signed_permutation(&mut rng, field, n);
                let five_ok = field.characteristic() != 5 && field.characteristic() != 2;
                if n >= 2 && five_ok && rng.random_bool(0.5) {
                    let a = rng.random_range(0..n - 1);
                    let b = rng.random_range(a + 1..n);
                    m = m.mul(&pythagorean_rotation(field, n, a, b)?)?;
                }
                if m.mul(&m.transpose())? != id {
                    return Err(Error::Invariant(format!("sampled {m} is not orthogonal")));
                }
                m
            }
            GroupKind::Sp => {
                let d = n / 2;
                let mut m = symplectic_generator(&mut rng, field, d)?;
                for _ in 0..2 {
                    m = m.mul(&symplectic_generator(&mut rng, field, d)?)?;
                }
                if m.mul(&m.symplectic_transpose()?)? != id {
                    return Err(Error::Invariant(format!("sampled {m} is not symplectic")));
                }
                m
            }
        };
        out.push(m);
    }
    Ok(out)
}
