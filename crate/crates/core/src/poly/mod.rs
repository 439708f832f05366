//! Sparse multivariate polynomials over a prime field or the rationals.
//!
//! The variables are the entries of generic matrices: `x[i,j](k)` is the
//! (i,j) entry of the k-th generic matrix and `y[i,j](k,q)` the (i,j) entry
//! of the matrix produced from it by the q-th derivation. Two auxiliary
//! variables are reserved for internal bookkeeping (the λ of a characteristic
//! polynomial, for instance) and are never produced by the parsers.
//!
//! Finite fields stand in for an infinite field of the same characteristic:
//! every comparison in this crate is an identity of polynomials (equal
//! coefficients), never an identity of functions, so nothing is lost by
//! working over `F_p`.

mod field;

pub use field::{is_prime, Field, Scalar};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A polynomial variable.
///
/// The derived order is the documented total order: kind first (`X < Y <
/// Aux`), then slot `k`, then derivation index `q`, then row, then column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    X { k: u32, i: u32, j: u32 },
    Y { k: u32, q: u32, i: u32, j: u32 },
    Aux(u32),
}

impl Variable {
    pub fn x(k: u32, i: u32, j: u32) -> Variable {
        Variable::X { k, i, j }
    }

    pub fn y(k: u32, q: u32, i: u32, j: u32) -> Variable {
        Variable::Y { k, q, i, j }
    }

    pub fn slot(&self) -> Option<u32> {
        match self {
            Variable::X { k, .. } | Variable::Y { k, .. } => Some(*k),
            Variable::Aux(_) => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X { k, i, j } => write!(f, "x[{i},{j}]({k})"),
            Variable::Y { k, q, i, j } => write!(f, "y[{i},{j}]({k},{q})"),
            Variable::Aux(n) => write!(f, "aux[{n}]"),
        }
    }
}

/// A power product of variables. Ordered graded-lexicographically: total
/// degree first, then the sorted `(variable, exponent)` list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    vars: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Monomial {
        Monomial {
            deg: 1,
            vars: vec![(v, 1)],
        }
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Variable, u32)>) -> Monomial {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let vars: Vec<_> = map.into_iter().collect();
        Monomial {
            deg: vars.iter().map(|(_, e)| e).sum(),
            vars,
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.vars
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|idx| self.vars[idx].1)
            .unwrap_or(0)
    }

    pub fn powers(&self) -> &[(Variable, u32)] {
        &self.vars
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut a, mut b) = (self.vars.iter().peekable(), other.vars.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        vars.push((va, ea));
                        a.next();
                    } else if vb < va {
                        vars.push((vb, eb));
                        b.next();
                    } else {
                        vars.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    vars.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    vars.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial {
            deg: self.deg + other.deg,
            vars,
        }
    }

    fn without(&self, v: &Variable) -> (u32, Monomial) {
        let e = self.exponent(v);
        let vars: Vec<_> = self.vars.iter().filter(|(w, _)| w != v).copied().collect();
        (
            e,
            Monomial {
                deg: self.deg - e,
                vars,
            },
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.vars.iter().enumerate() {
            if idx > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Polynomial {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(field, field.one())
    }

    pub fn constant(field: Field, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(field);
        if !field.is_zero(&c) {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_i64(field: Field, c: i64) -> Polynomial {
        Polynomial::constant(field, field.from_i64(c))
    }

    pub fn var(field: Field, v: Variable) -> Polynomial {
        Polynomial::term(field, field.one(), Monomial::var(v))
    }

    pub fn term(field: Field, c: Scalar, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(field);
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
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

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.vars.iter().map(|(v, _)| *v))
            .collect()
    }

    fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let (mut acc, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    /// In-place addition. Panics on field mismatch.
    pub fn add_assign(&mut self, other: &Polynomial) {
        self.check_field(other).expect("field mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let field = self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(field));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = field.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = field.add(slot, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial {
            field,
            terms: acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .filter(|(_, a)| !self.field.is_zero(a))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: &Variable) -> Polynomial {
        let field = self.field;
        let mut out = Polynomial::zero(field);
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e == 0 {
                continue;
            }
            let coeff = field.mul(c, &field.from_i64(e as i64));
            out.add_term(rest.mul(&Monomial::from_powers([(*v, e - 1)])), coeff);
        }
        out
    }

    /// The derivation `Σ_{k,i,j} ∂f/∂x[i,j](k) · y[i,j](k,q)`.
    pub fn derivation(&self, q: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for v in self.variables() {
            if let Variable::X { k, i, j } = v {
                let part = self.partial_derivative(&v);
                let y = Polynomial::var(self.field, Variable::y(k, q, i, j));
                out.add_assign(&(&part * &y));
            }
        }
        out
    }

    /// Simultaneous substitution; variables absent from `map` stay put.
    pub fn substitute(&self, map: &BTreeMap<Variable, Polynomial>) -> Result<Polynomial> {
        for image in map.values() {
            self.check_field(image)?;
        }
        let field = self.field;
        let mut power_cache: HashMap<(Variable, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(field);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut value = Polynomial::constant(field, c.clone());
            for &(v, e) in &m.vars {
                match map.get(&v) {
                    Some(image) => {
                        let pw = power_cache
                            .entry((v, e))
                            .or_insert_with(|| image.pow(e))
                            .clone();
                        value = &value * &pw;
                        if value.is_zero() {
                            break;
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            if value.is_zero() {
                continue;
            }
            let rest = Polynomial::term(field, field.one(), Monomial::from_powers(kept));
            out.add_assign(&(&value * &rest));
        }
        Ok(out)
    }

    /// Replaces `v^e` by `v^(e/p)` for every `v` in `vars`.
    pub fn frobenius_contract(&self, vars: &BTreeSet<Variable>, p: u64) -> Result<Polynomial> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p = {p} is not a prime")));
        }
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut powers = Vec::with_capacity(m.vars.len());
            for &(v, e) in &m.vars {
                if vars.contains(&v) {
                    if !(e as u64).is_multiple_of(p) {
                        return Err(Error::NotDivisible {
                            monomial: m.to_string(),
                            p,
                        });
                    }
                    powers.push((v, (e as u64 / p) as u32));
                } else {
                    powers.push((v, e));
                }
            }
            out.add_term(Monomial::from_powers(powers), c.clone());
        }
        Ok(out)
    }

    /// Splits by powers of `v`: the coefficient polynomials of `v^e`.
    pub fn coefficients_in(&self, v: &Variable) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out.entry(e)
                .or_insert_with(|| Polynomial::zero(self.field))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Applies `f` to every variable (used for renaming).
    pub fn map_variables(&self, f: impl Fn(Variable) -> Variable) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let powers = m.vars.iter().map(|&(v, e)| (f(v), e));
            out.add_term(Monomial::from_powers(powers), c.clone());
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on field mismatch; use [`Polynomial::try_add`] to get an error.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }
}

/// Prints `c * x[i,j](k)^e * … ± …`, highest term first.
impl fmt::Display for Polynomial {
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
                write!(f, "{} * {m}", field.format_scalar(&magnitude))?;
            }
        }
        Ok(())
    }
}
