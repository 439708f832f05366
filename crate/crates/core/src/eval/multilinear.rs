//! Multilinear elements evaluated at elementary matrices.
//!
//! For a monomial `tr(a_1)⋯tr(a_r)` in which every letter occurs once, the
//! letters of `a_1` receive the cycle `e_{1,2}, e_{2,3}, …, e_{s,1}`, the
//! letters of `a_2` the next cycle, and so on. This assignment gives 1 on
//! the monomial itself and 0 on every other multilinear monomial, which
//! exposes each coefficient separately.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::GroupKind;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Field, Polynomial, Scalar};
use crate::sigma::{SigmaFactor, SigmaMonomial, SigmaPoly};
use crate::words::{Letter, Word};

/// A small dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `e_{i,j}`, 1-based.
    pub fn elementary(n: usize, i: usize, j: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        m.data[(i - 1) * n + (j - 1)] = 1;
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    /// `[[P,Q],[R,S]]^* = [[S^T, -Q^T], [-R^T, P^T]]`.
    pub fn symplectic_transpose(&self) -> IntMatrix {
        let n = self.n;
        let d = n / 2;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let (bi, bj) = (i / d, j / d);
                let src = self.get((1 - bj) * d + j % d, (1 - bi) * d + i % d);
                out.data[i * n + j] = if bi == bj { src } else { -src };
            }
        }
        out
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn to_poly(&self, field: Field) -> PolyMatrix {
        PolyMatrix::from_fn(field, self.n, self.n, |i, j| {
            Polynomial::from_i64(field, self.get(i, j))
        })
    }
}

/// Letter matrices: `X_k` for each letter slot `k`.
pub type Assignment = BTreeMap<u32, IntMatrix>;

fn letter_value(l: Letter, kind: GroupKind, assignment: &Assignment) -> Result<IntMatrix> {
    let m = assignment
        .get(&l.base)
        .ok_or_else(|| Error::InvalidArgument(format!("no matrix assigned to {l}")))?;
    if l.deriv != 0 {
        return Err(Error::Precondition(
            "y-letters have no assigned matrix".into(),
        ));
    }
    Ok(match (l.transposed, kind) {
        (false, _) => m.clone(),
        (true, GroupKind::O) => m.transpose(),
        (true, GroupKind::Sp) => m.symplectic_transpose(),
        (true, GroupKind::GL) => {
            return Err(Error::Group(format!("transposed letter {l} under GL")));
        }
    })
}

fn factor_value(
    f: &SigmaFactor,
    kind: GroupKind,
    assignment: &Assignment,
    field: Field,
) -> Result<Scalar> {
    let mut acc: Option<IntMatrix> = None;
    for &l in f.word().letters() {
        let m = letter_value(l, kind, assignment)?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.mul(&m),
        });
    }
    let m = acc.expect("nonempty word");
    if f.t() == 1 {
        return Ok(field.from_i64(m.trace()));
    }
    if f.t() as usize > m.size() {
        return Ok(field.zero());
    }
    let value = m.to_poly(field).sigma_t(f.t() as usize)?;
    Ok(value.constant_value().unwrap_or_else(|| field.zero()))
}

/// `Ψ_n(f)` with every `X_k` replaced by the given integer matrix.
pub fn evaluate_at_assignment(
    f: &SigmaPoly,
    kind: GroupKind,
    assignment: &Assignment,
) -> Result<Scalar> {
    let field = f.field();
    let mut total = field.zero();
    for (m, c) in f.terms() {
        let mut value = c.clone();
        for (factor, e) in m.factors() {
            let v = factor_value(factor, kind, assignment, field)?;
            value = field.mul(&value, &field.pow(&v, *e as u64));
        }
        total = field.add(&total, &value);
    }
    Ok(total)
}

/// Matrix size used by the assignment for `d` letters.
pub fn assignment_size(kind: GroupKind, d: usize) -> usize {
    match kind {
        GroupKind::Sp => 2 * d,
        _ => d,
    }
}

/// The elementary-matrix assignment isolating `u`. A letter `z_i = x_k`
/// gets `X_k = Z_i`; a letter `z_i = x_k^T` gets `X_k = Z_i^T` (`O`) or
/// `X_k = Z_i^*` (`Sp`), so that the letter itself evaluates to `Z_i`.
pub fn z_assignment(u: &SigmaMonomial, kind: GroupKind) -> Result<Assignment> {
    let mut letters: Vec<Letter> = Vec::new();
    let mut cycles: Vec<(usize, usize)> = Vec::new();
    for (f, e) in u.factors() {
        if f.t() != 1 || *e != 1 {
            return Err(Error::Precondition(format!("{u} is not multilinear")));
        }
        let start = letters.len();
        letters.extend_from_slice(f.word().letters());
        cycles.push((start, letters.len()));
    }
    let d = letters.len();
    let distinct: BTreeSet<u32> = letters.iter().map(|l| l.base).collect();
    if distinct.len() != d || letters.iter().any(|l| l.deriv != 0) {
        return Err(Error::Precondition(format!(
            "{u} is not multilinear in x-letters"
        )));
    }
    let n = assignment_size(kind, d);
    let mut out = Assignment::new();
    for (start, end) in cycles {
        for pos in start..end {
            // 1-based positions; the last letter of a cycle closes it
            let i = pos + 1;
            let j = if pos + 1 == end { start + 1 } else { pos + 2 };
            let z = IntMatrix::elementary(n, i, j);
            let l = letters[pos];
            let x = match (l.transposed, kind) {
                (false, _) => z,
                (true, GroupKind::O) => z.transpose(),
                (true, GroupKind::Sp) => z.symplectic_transpose(),
                (true, GroupKind::GL) => {
                    return Err(Error::Group(format!("transposed letter {l} under GL")))
                }
            };
            out.insert(l.base, x);
        }
    }
    Ok(out)
}

/// All monomials `tr(a_1)⋯tr(a_r)` in which each of `x_1..x_d` occurs
/// exactly once.
pub fn multilinear_monomials(d: u32, kind: GroupKind) -> Vec<SigmaMonomial> {
    fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
        let Some((&first, rest)) = items.split_first() else {
            return vec![vec![]];
        };
        let mut out = Vec::new();
        for p in set_partitions(rest) {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].insert(0, first);
                out.push(q);
            }
            let mut q = p;
            q.insert(0, vec![first]);
            out.push(q);
        }
        out
    }
    fn classes_on(block: &[u32], transposes: bool) -> Vec<SigmaFactor> {
        let mut found = BTreeSet::new();
        let (&head, tail) = block.split_first().expect("nonempty block");
        let mut perms: Vec<Vec<u32>> = vec![vec![]];
        for &k in tail {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..=p.len()).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, k);
                        q
                    })
                })
                .collect();
        }
        let flips = if transposes { 1usize << block.len() } else { 1 };
        for p in perms {
            let order: Vec<u32> = std::iter::once(head).chain(p).collect();
            for mask in 0..flips {
                let letters = order
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| Letter {
                        base: k,
                        deriv: 0,
                        transposed: mask >> i & 1 == 1,
                    })
                    .collect();
                let w = Word::new(letters).expect("nonempty");
                found.insert(
                    SigmaFactor::new(1, &w).expect("distinct letters make primitive words"),
                );
            }
        }
        found.into_iter().collect()
    }
    let items: Vec<u32> = (1..=d).collect();
    let transposes = kind.has_transpose();
    let mut out = BTreeSet::new();
    for partition in set_partitions(&items) {
        let mut partial: Vec<Vec<SigmaFactor>> = vec![vec![]];
        for block in &partition {
            let options = classes_on(block, transposes);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    options.iter().map(move |f| {
                        let mut q = p.clone();
                        q.push(f.clone());
                        q
                    })
                })
                .collect();
        }
        for fs in partial {
            out.insert(SigmaMonomial::from_factors(fs.into_iter().map(|f| (f, 1))));
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolationReport {
    pub group: GroupKind,
    pub d: u32,
    pub n: usize,
    pub monomials: usize,
    /// `(assignment of, evaluated monomial, value)` for every entry that is
    /// not the Kronecker delta.
    pub failures: Vec<(String, String, i64)>,
}

impl IsolationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every multilinear monomial on `d` letters at the assignment of
/// every other one and checks that the result is the identity matrix.
pub fn isolation_check(d: u32, kind: GroupKind) -> Result<IsolationReport> {
    let monos = multilinear_monomials(d, kind);
    let field = Field::Rationals;
    let rows: Vec<Vec<(String, String, i64)>> = monos
        .par_iter()
        .map(|u| {
            let z = z_assignment(u, kind)?;
            let mut bad = Vec::new();
            for w in &monos {
                let f = SigmaPoly::monomial(field, w.clone());
                let v = evaluate_at_assignment(&f, kind, &z)?;
                let Scalar::Rat(r) = v else { unreachable!() };
                let v: i64 = r.to_integer().try_into().expect("small value");
                let expected = i64::from(u == w);
                if v != expected {
                    bad.push((u.to_string(), w.to_string(), v));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(IsolationReport {
        group: kind,
        d,
        n: assignment_size(kind, d as usize),
        monomials: monos.len(),
        failures: rows.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultilinearCertificate {
    pub vanishes: bool,
    pub witness_monomial: Option<String>,
    pub witness_value: Option<String>,
}

/// Evaluates `f` at the assignment of each of its monomials. The value at
/// `u` is the coefficient of `u`, so `f` is zero exactly when every value
/// is; otherwise the first monomial with a nonzero value is the witness.
pub fn multilinear_certificate(f: &SigmaPoly, kind: GroupKind) -> Result<MultilinearCertificate> {
    let field = f.field();
    let mut letter_set: Option<BTreeSet<u32>> = None;
    for (m, _) in f.terms() {
        let degs = m.letter_degrees();
        if degs.keys().any(|b| b.deriv != 0) || degs.values().any(|&e| e != 1) {
            return Err(Error::Precondition(format!(
                "monomial {m} is not multilinear"
            )));
        }
        let set: BTreeSet<u32> = degs.keys().map(|b| b.base).collect();
        match &letter_set {
            None => letter_set = Some(set),
            Some(s) if *s != set => {
                return Err(Error::Precondition(
                    "monomials must all involve the same letters".into(),
                ))
            }
            _ => {}
        }
    }
    for (u, c) in f.terms() {
        let z = z_assignment(u, kind)?;
        let v = evaluate_at_assignment(f, kind, &z)?;
        if v != *c {
            return Err(Error::Invariant(format!(
                "assignment of {u} gave {} instead of the coefficient {}",
                field.format_scalar(&v),
                field.format_scalar(c)
            )));
        }
        if !field.is_zero(&v) {
            return Ok(MultilinearCertificate {
                vanishes: false,
                witness_monomial: Some(u.to_string()),
                witness_value: Some(field.format_scalar(&v)),
            });
        }
    }
    Ok(MultilinearCertificate {
        vanishes: true,
        witness_monomial: None,
        witness_value: None,
    })
}
