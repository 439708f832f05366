//! The free commutative ring on symbols `σ_t(a)`, one symbol for each
//! `t ≥ 1` and each class `a` of primitive words, together with the formal
//! derivations `∂_q` and the degree statistics used by the reduction steps.

mod reduce;

pub use reduce::{
    p_multilinearize, rename_slots_needed, rename_y_to_x, strip_p_powers, Multilinearized,
    PipelineStage, ReductionPipeline,
};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Field, Scalar};
use crate::words::{Letter, LetterBase, Word, WordClass};

/// The symbol `σ_t(a)`; `t = 1` is the trace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaFactor {
    t: u32,
    cls: WordClass,
}

impl SigmaFactor {
    pub fn new(t: u32, word: &Word) -> Result<SigmaFactor> {
        if t == 0 {
            return Err(Error::InvalidArgument(
                "σ_0 is the constant 1 and is not a generator".into(),
            ));
        }
        Ok(SigmaFactor {
            t,
            cls: WordClass::of(word)?,
        })
    }

    pub fn from_class(t: u32, cls: WordClass) -> SigmaFactor {
        assert!(t >= 1);
        SigmaFactor { t, cls }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn class(&self) -> &WordClass {
        &self.cls
    }

    pub fn word(&self) -> &Word {
        self.cls.canonical()
    }

    /// `deg σ_t(a) = t · deg a`.
    pub fn degree(&self) -> usize {
        self.t as usize * self.cls.degree()
    }

    pub fn degree_in(&self, b: LetterBase) -> usize {
        self.t as usize * self.word().degree_in(b)
    }
}

impl Ord for SigmaFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.cls.degree(), self.word(), self.t).cmp(&(other.cls.degree(), other.word(), other.t))
    }
}

impl PartialOrd for SigmaFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SigmaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 1 {
            write!(f, "tr({})", self.word())
        } else {
            write!(f, "sigma({}, {})", self.t, self.word())
        }
    }
}

/// A product of symbols with positive multiplicities, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SigmaMonomial {
    deg: usize,
    factors: Vec<(SigmaFactor, u32)>,
}

impl SigmaMonomial {
    pub fn one() -> SigmaMonomial {
        SigmaMonomial::default()
    }

    pub fn factor(f: SigmaFactor, m: u32) -> SigmaMonomial {
        if m == 0 {
            return SigmaMonomial::one();
        }
        SigmaMonomial {
            deg: f.degree() * m as usize,
            factors: vec![(f, m)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (SigmaFactor, u32)>) -> SigmaMonomial {
        let mut map: BTreeMap<SigmaFactor, u32> = BTreeMap::new();
        for (f, m) in factors {
            if m > 0 {
                *map.entry(f).or_insert(0) += m;
            }
        }
        let factors: Vec<_> = map.into_iter().collect();
        SigmaMonomial {
            deg: factors.iter().map(|(f, m)| f.degree() * *m as usize).sum(),
            factors,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn factors(&self) -> &[(SigmaFactor, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &SigmaMonomial) -> SigmaMonomial {
        SigmaMonomial::from_factors(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    pub fn degree_in(&self, b: LetterBase) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| f.degree_in(b) * *m as usize)
            .sum()
    }

    pub fn letter_degrees(&self) -> BTreeMap<LetterBase, usize> {
        let mut out = BTreeMap::new();
        for (f, m) in &self.factors {
            for l in f.word().letters() {
                *out.entry(l.letter_base()).or_insert(0) += f.t as usize * *m as usize;
            }
        }
        out
    }

    /// Total degree in the x-letters only.
    pub fn x_degree(&self) -> usize {
        self.letter_degrees()
            .iter()
            .filter(|(b, _)| b.deriv == 0)
            .map(|(_, d)| d)
            .sum()
    }

    /// `f = f⁺ f⁻`: every multiplicity `m = p·u + v` with `0 ≤ v < p` sends
    /// `p·u` to the first part and `v` to the second. For `p = 0` the first
    /// part is 1.
    pub fn split_p_parts(&self, p: u64) -> (SigmaMonomial, SigmaMonomial) {
        if p == 0 {
            return (SigmaMonomial::one(), self.clone());
        }
        let p = p as u32;
        let plus = self.factors.iter().map(|(f, m)| (f.clone(), m - m % p));
        let minus = self.factors.iter().map(|(f, m)| (f.clone(), m % p));
        (
            SigmaMonomial::from_factors(plus),
            SigmaMonomial::from_factors(minus),
        )
    }

    /// Multiplicity of `f` lowered by one.
    fn without_one(&self, idx: usize) -> SigmaMonomial {
        let mut factors = self.factors.clone();
        factors[idx].1 -= 1;
        SigmaMonomial::from_factors(factors)
    }

    pub fn map_words(&self, f: &impl Fn(&Word) -> Word) -> Result<SigmaMonomial> {
        let factors = self
            .factors
            .iter()
            .map(|(g, m)| Ok((SigmaFactor::new(g.t, &f(g.word()))?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SigmaMonomial::from_factors(factors))
    }
}

impl fmt::Display for SigmaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, m) in &self.factors {
            for _ in 0..*m {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

/// Degree statistics of an element.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Degrees {
    pub deg: usize,
    /// Maximum over monomials of `deg_b`, for every letter `b` present.
    pub deg_in_letter: BTreeMap<LetterBase, usize>,
    pub deg_plus: usize,
    pub deg_minus: usize,
}

/// An element of the free commutative ring over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaPoly {
    field: Field,
    terms: BTreeMap<SigmaMonomial, Scalar>,
}

impl SigmaPoly {
    pub fn zero(field: Field) -> SigmaPoly {
        SigmaPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> SigmaPoly {
        SigmaPoly::constant(field, field.one())
    }

    pub fn constant(field: Field, c: Scalar) -> SigmaPoly {
        SigmaPoly::term(field, c, SigmaMonomial::one())
    }

    pub fn term(field: Field, c: Scalar, m: SigmaMonomial) -> SigmaPoly {
        let mut p = SigmaPoly::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn monomial(field: Field, m: SigmaMonomial) -> SigmaPoly {
        SigmaPoly::term(field, field.one(), m)
    }

    /// The generator `σ_t(word)`.
    pub fn sigma(field: Field, t: u32, word: &Word) -> Result<SigmaPoly> {
        Ok(SigmaPoly::monomial(
            field,
            SigmaMonomial::factor(SigmaFactor::new(t, word)?, 1),
        ))
    }

    pub fn tr(field: Field, word: &Word) -> Result<SigmaPoly> {
        SigmaPoly::sigma(field, 1, word)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SigmaMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SigmaMonomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, m: SigmaMonomial, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => self.field.add(old, &c),
            None => c,
        };
        if self.field.is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    fn check_field(&self, other: &SigmaPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &SigmaPoly) -> Result<SigmaPoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SigmaPoly) -> Result<SigmaPoly> {
        self.check_field(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &SigmaPoly) -> Result<SigmaPoly> {
        self.check_field(other)?;
        let field = self.field;
        let mut out = SigmaPoly::zero(field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SigmaPoly {
        let mut out = SigmaPoly::zero(self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> SigmaPoly {
        (0..e).fold(SigmaPoly::one(self.field), |acc, _| &acc * self)
    }

    /// All letters occurring, up to transposition.
    pub fn letters(&self) -> BTreeSet<LetterBase> {
        self.terms
            .keys()
            .flat_map(|m| m.letter_degrees().into_keys())
            .collect()
    }

    pub fn has_y_letters(&self) -> bool {
        self.letters().iter().any(|b| b.deriv > 0)
    }

    /// Degree statistics, with `f⁺`/`f⁻` taken at the field's characteristic.
    pub fn degrees(&self) -> Degrees {
        let p = self.field.characteristic();
        let mut d = Degrees::default();
        for m in self.terms.keys() {
            d.deg = d.deg.max(m.degree());
            for (b, e) in m.letter_degrees() {
                let slot = d.deg_in_letter.entry(b).or_insert(0);
                *slot = (*slot).max(e);
            }
            let (plus, minus) = m.split_p_parts(p);
            d.deg_plus = d.deg_plus.max(plus.degree());
            d.deg_minus = d.deg_minus.max(minus.x_degree());
        }
        d
    }

    /// Every letter has degree at most one in every monomial.
    pub fn is_multilinear(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.letter_degrees().values().all(|&e| e <= 1))
    }

    /// Looks for a letter set `I` such that, in every monomial, letters
    /// outside `I` are absent from `f⁺` and of degree at most one in `f⁻`,
    /// and letters in `I` are absent from `f⁻`. Returns the smallest such
    /// `I`, or `None` if there is none.
    pub fn is_p_multilinear(&self, p: u64) -> Option<BTreeSet<LetterBase>> {
        let mut must_in = BTreeSet::new();
        let mut must_out = BTreeSet::new();
        for m in self.terms.keys() {
            let (plus, minus) = m.split_p_parts(p);
            must_in.extend(plus.letter_degrees().into_keys());
            for (b, e) in minus.letter_degrees() {
                must_out.insert(b);
                if e >= 2 {
                    must_in.insert(b);
                }
            }
        }
        if must_in.is_disjoint(&must_out) {
            Some(must_in)
        } else {
            None
        }
    }

    /// Largest derivation index among the y-letters (0 when there are none).
    pub fn max_deriv_index(&self) -> u32 {
        self.letters().iter().map(|b| b.deriv).max().unwrap_or(0)
    }

    /// The derivation `∂_q`: `x_k ↦ y_{k,q}` on letters, extended to words
    /// by the product rule, to symbols by
    /// `∂σ_t(a) = Σ_{i<t} (-1)^i tr(a^i ∂a) σ_{t-i-1}(a)`, and to products by
    /// the Leibniz rule.
    pub fn derive(&self, q: u32) -> Result<SigmaPoly> {
        if q == 0 {
            return Err(Error::InvalidArgument(
                "derivation index must be >= 1".into(),
            ));
        }
        let top = self.max_deriv_index();
        if top >= q {
            return Err(Error::Precondition(format!(
                "∂_{q} applies to elements whose y-letters have index < {q}, found index {top}"
            )));
        }
        self.derive_unchecked(q, true)
    }

    /// The same formula as [`SigmaPoly::derive`] with y-letters treated as
    /// constants and no domain check, e.g. `∂_1 ∂_1`. A trace word that comes
    /// out as a proper power is a precondition error here, since it can only
    /// arise outside the domain.
    pub fn derive_formal(&self, q: u32) -> Result<SigmaPoly> {
        if q == 0 {
            return Err(Error::InvalidArgument(
                "derivation index must be >= 1".into(),
            ));
        }
        self.derive_unchecked(q, false)
    }

    fn derive_unchecked(&self, q: u32, in_domain: bool) -> Result<SigmaPoly> {
        let field = self.field;
        let mut out = SigmaPoly::zero(field);
        for (m, c) in &self.terms {
            for (idx, (factor, mult)) in m.factors.iter().enumerate() {
                let lead = field.mul(c, &field.from_i64(*mult as i64));
                if field.is_zero(&lead) {
                    continue;
                }
                let rest = m.without_one(idx);
                let pieces = derive_factor(factor, q).map_err(|e| match e {
                    Error::Invariant(m) if !in_domain => Error::Precondition(m),
                    e => e,
                })?;
                for (sign, piece) in pieces {
                    let coeff = if sign { field.neg(&lead) } else { lead.clone() };
                    out.add_term(rest.mul(&piece), coeff);
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every word and re-canonicalizes.
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Result<SigmaPoly> {
        let mut out = SigmaPoly::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.map_words(&f)?, c.clone());
        }
        Ok(out)
    }
}

/// `∂_q` of a word: one word per derivable letter position.
pub fn derive_word(a: &Word, q: u32) -> Vec<Word> {
    let letters = a.letters();
    letters
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_x())
        .map(|(pos, l)| {
            let mut v = letters.to_vec();
            v[pos] = Letter {
                base: l.base,
                deriv: q,
                transposed: l.transposed,
            };
            Word::new(v).expect("nonempty")
        })
        .collect()
}

/// Terms of `∂_q σ_t(a)` as `(negative, monomial)` pairs.
fn derive_factor(factor: &SigmaFactor, q: u32) -> Result<Vec<(bool, SigmaMonomial)>> {
    let a = factor.word();
    let pieces = derive_word(a, q);
    let mut out = Vec::new();
    for i in 0..factor.t {
        let lower = factor.t - i - 1;
        for piece in &pieces {
            let word = if i == 0 {
                piece.clone()
            } else {
                a.pow(i as usize).concat(piece)
            };
            let (cls, power) = word.canonicalize();
            if power != 1 {
                return Err(Error::Invariant(format!(
                    "trace word {word} produced by ∂_{q} of {factor} is not primitive"
                )));
            }
            let tr = SigmaFactor::from_class(1, cls);
            let mono = if lower == 0 {
                SigmaMonomial::factor(tr, 1)
            } else {
                SigmaMonomial::from_factors([
                    (tr, 1),
                    (SigmaFactor::from_class(lower, factor.cls.clone()), 1),
                ])
            };
            out.push((i % 2 == 1, mono));
        }
    }
    Ok(out)
}

impl Add for &SigmaPoly {
    type Output = SigmaPoly;

    fn add(self, rhs: &SigmaPoly) -> SigmaPoly {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &SigmaPoly {
    type Output = SigmaPoly;

    fn sub(self, rhs: &SigmaPoly) -> SigmaPoly {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &SigmaPoly {
    type Output = SigmaPoly;

    fn mul(self, rhs: &SigmaPoly) -> SigmaPoly {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &SigmaPoly {
    type Output = SigmaPoly;

    fn neg(self) -> SigmaPoly {
        SigmaPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }
}

/// Canonical text in the expression grammar; terms by descending degree.
impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field;
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = field.is_negative(c);
            let magnitude = if negative { field.neg(c) } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", field.format_scalar(&magnitude))?;
            } else if field.is_one(&magnitude) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", field.format_scalar(&magnitude))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: u32) -> Letter {
        Letter::x(k)
    }

    fn word(ls: &[Letter]) -> Word {
        Word::new(ls.to_vec()).unwrap()
    }

    fn tr(field: Field, ls: &[Letter]) -> SigmaPoly {
        SigmaPoly::tr(field, &word(ls)).unwrap()
    }

    fn sig(field: Field, t: u32, ls: &[Letter]) -> SigmaPoly {
        SigmaPoly::sigma(field, t, &word(ls)).unwrap()
    }

    #[test]
    fn commutative_and_canonical() {
        let q = Field::Rationals;
        assert_eq!(
            &tr(q, &[x(1)]) * &tr(q, &[x(2)]),
            &tr(q, &[x(2)]) * &tr(q, &[x(1)])
        );
        let s = sig(q, 2, &[x(1), x(2)]);
        assert_eq!(&s + &SigmaPoly::zero(q), s);
        assert_eq!(tr(q, &[x(2), x(1)]), tr(q, &[x(1), x(2)]));
    }

    #[test]
    fn field_mismatch() {
        let a = tr(Field::Prime(3), &[x(1)]);
        let b = tr(Field::Rationals, &[x(1)]);
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn degree_statistics() {
        let f2 = Field::Prime(2);
        let f = tr(f2, &[x(1)]).pow(5);
        let d = f.degrees();
        assert_eq!((d.deg_plus, d.deg_minus, d.deg), (4, 1, 5));
        let q = Field::Rationals;
        assert_eq!(sig(q, 2, &[x(1)]).degrees().deg, 2);
        let d0 = tr(q, &[x(1), x(2)]).pow(3).degrees();
        assert_eq!(d0.deg_plus, 0);
        assert_eq!(d0.deg_in_letter[&x(1).letter_base()], 3);
    }

    #[test]
    fn split_examples() {
        let t1 = SigmaFactor::new(1, &word(&[x(1)])).unwrap();
        let m = SigmaMonomial::factor(t1.clone(), 5);
        assert_eq!(
            m.split_p_parts(2),
            (
                SigmaMonomial::factor(t1.clone(), 4),
                SigmaMonomial::factor(t1.clone(), 1)
            )
        );
        let m = SigmaMonomial::factor(t1.clone(), 1);
        assert_eq!(m.split_p_parts(3), (SigmaMonomial::one(), m.clone()));
        let s2 = SigmaFactor::new(2, &word(&[x(1)])).unwrap();
        let m = SigmaMonomial::factor(s2, 3);
        assert_eq!(m.split_p_parts(3), (m.clone(), SigmaMonomial::one()));
    }

    #[test]
    fn derivative_of_sigma_two() {
        // ∂_q σ_2(x1) = -tr(y_{1,q} x1) + tr(x1) tr(y_{1,q})
        let q = Field::Rationals;
        for d in 1..4 {
            let y = Letter::y(1, d);
            let got = sig(q, 2, &[x(1)]).derive(d).unwrap();
            let expected = &(&tr(q, &[x(1)]) * &tr(q, &[y])) - &tr(q, &[y, x(1)]);
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn char_two_example() {
        let f2 = Field::Prime(2);
        let f = &tr(f2, &[x(1)]).pow(2) * &tr(f2, &[x(1), x(2)]);
        let d1 = f.derive(1).unwrap();
        let sq = tr(f2, &[x(1)]).pow(2);
        let y11 = Letter::y(1, 1);
        let y21 = Letter::y(2, 1);
        let expected = &(&sq * &tr(f2, &[y11, x(2)])) + &(&sq * &tr(f2, &[x(1), y21]));
        assert_eq!(d1, expected);
        let d21 = d1.derive(2).unwrap();
        let expected =
            &(&sq * &tr(f2, &[y11, Letter::y(2, 2)])) + &(&sq * &tr(f2, &[Letter::y(1, 2), y21]));
        assert_eq!(d21, expected);
        // ∂_1 ∂_1 is outside the domain; with the index raised it vanishes
        assert!(matches!(d1.derive(1), Err(Error::Precondition(_))));
        assert!(d1.derive_formal(1).unwrap().is_zero());
        assert_eq!(d1.derive_formal(2).unwrap(), d21);
    }

    #[test]
    fn constants_differentiate_to_zero() {
        let q = Field::Rationals;
        assert!(SigmaPoly::constant(q, q.from_i64(7))
            .derive(1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn multilinearity_witnesses() {
        let q = Field::Rationals;
        let f = &tr(q, &[x(1)]) * &tr(q, &[x(2)]);
        assert!(f.is_multilinear());
        assert_eq!(f.is_p_multilinear(0), Some(BTreeSet::new()));

        let f2 = Field::Prime(2);
        let g = &tr(f2, &[x(1)]).pow(2) * &tr(f2, &[x(2)]);
        let witness: BTreeSet<_> = [x(1).letter_base()].into_iter().collect();
        assert_eq!(g.is_p_multilinear(2), Some(witness));

        for p in [3u64, 5, 7] {
            let field = Field::Prime(p);
            let h = &tr(field, &[x(1)]) * &sig(field, 2, &[x(1)]);
            assert_eq!(h.is_p_multilinear(p), None);
        }
    }

    #[test]
    fn sigma_zero_and_powers_rejected() {
        assert!(SigmaFactor::new(0, &word(&[x(1)])).is_err());
        assert!(SigmaFactor::new(1, &word(&[x(1), x(1)])).is_err());
    }

    #[test]
    fn printing() {
        let q = Field::Rationals;
        assert_eq!(sig(q, 2, &[x(1)]).to_string(), "sigma(2, x1)");
        assert_eq!(SigmaPoly::zero(q).to_string(), "0");
        let f = &(&tr(q, &[x(1)]) * &tr(q, &[x(2)])) - &tr(q, &[x(1), x(2)]);
        assert_eq!(f.to_string(), "-tr(x1*x2) + tr(x1)*tr(x2)");
    }
}
