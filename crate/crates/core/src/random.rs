//! Seeded random corpora.
//!
//! Every consumer draws from its own ChaCha8 stream: the generator is keyed
//! by the user seed and the stream number picks an independent sequence, so
//! adding draws in one place never shifts the values seen elsewhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Field, Scalar};
use crate::sigma::{SigmaFactor, SigmaMonomial, SigmaPoly};
use crate::words::{Letter, Word};

pub const STREAM_GROUP_SAMPLES: u64 = 1;
pub const STREAM_SIGMA_CORPUS: u64 = 2;
pub const STREAM_MATRICES: u64 = 3;
pub const STREAM_QUIVER_SAMPLES: u64 = 4;

/// The generator for `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Shape of randomly generated elements.
#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub field: Field,
    /// Letters `x_1..x_d`.
    pub d: u32,
    pub max_degree: usize,
    pub max_terms: usize,
    pub transposes: bool,
    /// Largest derivation index of y-letters; 0 for none.
    pub max_deriv: u32,
    /// Largest `t` in `σ_t`.
    pub max_t: u32,
}

impl CorpusSpec {
    pub fn new(field: Field, d: u32, max_degree: usize) -> CorpusSpec {
        CorpusSpec {
            field,
            d,
            max_degree,
            max_terms: 3,
            transposes: true,
            max_deriv: 0,
            max_t: max_degree as u32,
        }
    }
}

pub fn random_letter(rng: &mut impl Rng, spec: &CorpusSpec) -> Letter {
    let base = rng.random_range(1..=spec.d);
    let deriv = if spec.max_deriv > 0 && rng.random_bool(0.3) {
        rng.random_range(1..=spec.max_deriv)
    } else {
        0
    };
    Letter {
        base,
        deriv,
        transposed: spec.transposes && rng.random_bool(0.5),
    }
}

pub fn random_word(rng: &mut impl Rng, spec: &CorpusSpec, len: usize) -> Word {
    Word::new((0..len).map(|_| random_letter(rng, spec)).collect()).expect("len >= 1")
}

pub fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => Scalar::Mod(rng.random_range(1..p)),
        Field::Rationals => {
            let num: i64 = loop {
                let v = rng.random_range(-6..=6);
                if v != 0 {
                    break v;
                }
            };
            let den: i64 = if rng.random_bool(0.3) {
                rng.random_range(2..=4)
            } else {
                1
            };
            field
                .from_ratio(&num.into(), &den.into())
                .expect("nonzero denominator")
        }
    }
}

/// A monomial of total degree in `1..=max_degree`.
pub fn random_monomial(rng: &mut impl Rng, spec: &CorpusSpec) -> SigmaMonomial {
    let target = rng.random_range(1..=spec.max_degree.max(1));
    let mut left = target;
    let mut factors = Vec::new();
    while left > 0 {
        let t = rng.random_range(1..=(spec.max_t as usize).min(left).max(1));
        let len = rng.random_range(1..=left / t);
        let (root, _) = random_word(rng, spec, len).primitive_root();
        let f = SigmaFactor::new(t as u32, &root).expect("primitive root");
        left -= f.degree();
        factors.push((f, 1));
    }
    SigmaMonomial::from_factors(factors)
}

/// A nonzero element with up to `max_terms` terms.
pub fn random_sigma_poly(rng: &mut impl Rng, spec: &CorpusSpec) -> SigmaPoly {
    loop {
        let terms = rng.random_range(1..=spec.max_terms.max(1));
        let mut f = SigmaPoly::zero(spec.field);
        for _ in 0..terms {
            let m = random_monomial(rng, spec);
            let c = random_scalar(rng, spec.field);
            f = &f + &SigmaPoly::term(spec.field, c, m);
        }
        if !f.is_zero() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = stream_rng(9, 1).random();
        let b: u64 = stream_rng(9, 1).random();
        let c: u64 = stream_rng(9, 2).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn corpus_respects_degree() {
        let spec = CorpusSpec::new(Field::Prime(5), 3, 4);
        let mut rng = stream_rng(0, STREAM_SIGMA_CORPUS);
        for _ in 0..200 {
            let f = random_sigma_poly(&mut rng, &spec);
            assert!(!f.is_zero());
            assert!(f.degrees().deg <= 4);
        }
    }
}
