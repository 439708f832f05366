//! Linear independence of the images of all monomials of bounded degree.
//!
//! `Ψ_n` preserves the multidegree in the letters, so the coefficient matrix
//! is block diagonal and each block is ranked on its own.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::{psi_factor, GroupSpec};
use crate::error::{Error, Result};
use crate::poly::{Field, Monomial, Polynomial, Scalar};
use crate::rank::{rank_bareiss, rank_mod_p, SparseRow};
use crate::sigma::{SigmaFactor, SigmaMonomial};
use crate::words::{primitive_classes, x_alphabet, LetterBase};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateOptions {
    pub basis_cap: usize,
    pub nonzero_cap: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            basis_cap: 20_000,
            nonzero_cap: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub multidegree: Vec<usize>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub group: String,
    pub field: String,
    pub exploratory: bool,
    pub d: u32,
    pub max_degree: usize,
    pub n: usize,
    pub basis_size: usize,
    pub rank: usize,
    pub independent: bool,
    pub nonzeros: usize,
    pub blocks: Vec<BlockReport>,
}

/// The generators `σ_t(a)` with `t·deg a ≤ max_degree` on letters
/// `x_1..x_d` (and their transposes when `transposes` is set), sorted.
pub fn generators(d: u32, max_degree: usize, transposes: bool) -> Vec<SigmaFactor> {
    let mut out: Vec<SigmaFactor> = primitive_classes(&x_alphabet(d, transposes), max_degree)
        .into_iter()
        .flat_map(|cls| {
            let len = cls.degree();
            (1..=(max_degree / len) as u32).map(move |t| SigmaFactor::from_class(t, cls.clone()))
        })
        .collect();
    out.sort();
    out
}

/// All monomials of degree `1..=max_degree` in the generators.
pub fn enumerate_basis(d: u32, max_degree: usize, transposes: bool) -> Vec<SigmaMonomial> {
    fn rec(
        gens: &[SigmaFactor],
        start: usize,
        left: usize,
        cur: &mut Vec<SigmaFactor>,
        out: &mut Vec<SigmaMonomial>,
    ) {
        if !cur.is_empty() {
            out.push(SigmaMonomial::from_factors(
                cur.iter().cloned().map(|f| (f, 1)),
            ));
        }
        for i in start..gens.len() {
            let deg = gens[i].degree();
            if deg <= left {
                cur.push(gens[i].clone());
                rec(gens, i, left - deg, cur, out);
                cur.pop();
            }
        }
    }
    let gens = generators(d, max_degree, transposes);
    let mut out = Vec::new();
    rec(&gens, 0, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn multidegree(m: &SigmaMonomial, d: u32) -> Vec<usize> {
    (1..=d)
        .map(|k| m.degree_in(LetterBase { base: k, deriv: 0 }))
        .collect()
}

fn integer_row(poly: &Polynomial, columns: &BTreeMap<&Monomial, usize>) -> SparseRow<BigInt> {
    let mut den = BigInt::one();
    for (_, c) in poly.terms() {
        if let Scalar::Rat(r) = c {
            den = den.lcm(r.denom());
        }
    }
    poly.terms()
        .map(|(m, c)| {
            let Scalar::Rat(r) = c else {
                unreachable!("rational field")
            };
            (columns[m], r.numer() * (&den / r.denom()))
        })
        .collect()
}

fn residue_row(poly: &Polynomial, columns: &BTreeMap<&Monomial, usize>) -> SparseRow<u64> {
    poly.terms()
        .map(|(m, c)| {
            let Scalar::Mod(v) = c else {
                unreachable!("prime field")
            };
            (columns[m], *v)
        })
        .collect()
}

fn block_rank(field: Field, images: &[Polynomial]) -> (usize, usize) {
    let monomials: BTreeSet<&Monomial> = images
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect();
    let columns: BTreeMap<&Monomial, usize> = monomials
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let rank = match field {
        Field::Prime(p) => {
            let rows: Vec<_> = images.iter().map(|f| residue_row(f, &columns)).collect();
            rank_mod_p(&rows, p)
        }
        Field::Rationals => {
            let rows: Vec<_> = images.iter().map(|f| integer_row(f, &columns)).collect();
            rank_bareiss(&rows)
        }
    };
    (columns.len(), rank)
}

/// Rank of the images under `Ψ_n` of all monomials of degree
/// `1..=max_degree` on `d` letters. Full rank means there is no relation of
/// degree at most `max_degree` at this `n`.
pub fn independence_certificate(
    field: Field,
    d: u32,
    max_degree: usize,
    g: GroupSpec,
    opts: CertificateOptions,
) -> Result<IndependenceReport> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument(
            "degree bound must be at least 1".into(),
        ));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("need at least one letter".into()));
    }
    g.check_field(field)?;
    let basis = enumerate_basis(d, max_degree, g.kind.has_transpose());
    if basis.len() > opts.basis_cap {
        return Err(Error::ResourceLimit(format!(
            "basis has {} monomials, cap is {}; lower the degree or the number of letters",
            basis.len(),
            opts.basis_cap
        )));
    }
    let factors: BTreeSet<&SigmaFactor> = basis
        .iter()
        .flat_map(|m| m.factors().iter().map(|(f, _)| f))
        .collect();
    let factors: Vec<&SigmaFactor> = factors.into_iter().collect();
    let images: Vec<Polynomial> = factors
        .par_iter()
        .map(|f| psi_factor(f, g, field))
        .collect::<Result<_>>()?;
    let cache: HashMap<&SigmaFactor, Polynomial> = factors.into_iter().zip(images).collect();

    let mut blocks: BTreeMap<Vec<usize>, Vec<&SigmaMonomial>> = BTreeMap::new();
    for m in &basis {
        blocks.entry(multidegree(m, d)).or_default().push(m);
    }

    let mut reports = Vec::with_capacity(blocks.len());
    let mut nonzeros = 0usize;
    for (md, members) in blocks {
        let images: Vec<Polynomial> = members
            .par_iter()
            .map(|m| {
                let mut value = Polynomial::one(field);
                for (f, e) in m.factors() {
                    value = &value * &cache[f].pow(*e);
                }
                value
            })
            .collect();
        nonzeros += images.iter().map(Polynomial::len).sum::<usize>();
        if nonzeros > opts.nonzero_cap {
            return Err(Error::ResourceLimit(format!(
                "coefficient matrix exceeds {} nonzero entries",
                opts.nonzero_cap
            )));
        }
        let (cols, rank) = block_rank(field, &images);
        reports.push(BlockReport {
            multidegree: md,
            rows: members.len(),
            cols,
            rank,
        });
    }
    let rank = reports.iter().map(|b| b.rank).sum();
    Ok(IndependenceReport {
        group: g.to_string(),
        field: field.to_string(),
        exploratory: g.exploratory,
        d,
        max_degree,
        n: g.n,
        basis_size: basis.len(),
        rank,
        independent: rank == basis.len(),
        nonzeros,
        blocks: reports,
    })
}
