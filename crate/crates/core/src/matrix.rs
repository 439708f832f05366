//! Matrices with polynomial entries.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Field, Polynomial, Scalar, Variable};

/// Which family of generic matrix: `X_k` or its derived copy `Y_{k,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericKind {
    X,
    Y,
}

/// Row-major matrix over [`Polynomial`], all entries over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Polynomial>,
}

/// Permutations of `0..t` in lexicographic order, with their signs.
fn signed_permutations(t: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..t).collect();
    loop {
        out.push((perm.clone(), permutation_is_odd(&perm)));
        // next lexicographic permutation
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..perm.len())
            .rev()
            .find(|&j| perm[j] > perm[i - 1])
            .unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// Parity from the cycle decomposition: a cycle of length L contributes L-1
/// transpositions.
fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

/// `t`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < t - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, t, &mut Vec::new(), &mut out);
    out
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<PolyMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let field = entries[0].field();
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(
                field.to_string(),
                bad.field().to_string(),
            ));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Matrix of integer constants, given row by row.
    pub fn from_ints(field: Field, rows: &[Vec<i64>]) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| Polynomial::from_i64(field, v))
            .collect();
        PolyMatrix::new(r, c, entries)
    }

    pub fn from_scalars(
        field: Field,
        n: usize,
        m: usize,
        values: Vec<Scalar>,
    ) -> Result<PolyMatrix> {
        let entries = values
            .into_iter()
            .map(|s| Polynomial::constant(field, s))
            .collect();
        PolyMatrix::new(n, m, entries)
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(field, rows, cols, |_, _| Polynomial::zero(field))
    }

    pub fn identity(field: Field, n: usize) -> PolyMatrix {
        PolyMatrix::from_fn(field, n, n, |i, j| {
            if i == j {
                Polynomial::one(field)
            } else {
                Polynomial::zero(field)
            }
        })
    }

    /// `e_{i,j}`, 1-based.
    pub fn elementary(field: Field, n: usize, i: usize, j: usize) -> PolyMatrix {
        PolyMatrix::from_fn(field, n, n, |a, b| {
            if a + 1 == i && b + 1 == j {
                Polynomial::one(field)
            } else {
                Polynomial::zero(field)
            }
        })
    }

    /// The n×n generic matrix `X_k = (x[i,j](k))` or `Y_{k,q} = (y[i,j](k,q))`.
    pub fn generic(
        field: Field,
        kind: GenericKind,
        k: u32,
        q: Option<u32>,
        n: usize,
    ) -> Result<PolyMatrix> {
        if n == 0 {
            return Err(Error::InvalidArgument("generic matrix needs n >= 1".into()));
        }
        match (kind, q) {
            (GenericKind::X, Some(_)) => Err(Error::InvalidArgument(
                "an x-matrix takes no derivation index".into(),
            )),
            (GenericKind::Y, None) => Err(Error::InvalidArgument(
                "a y-matrix needs a derivation index".into(),
            )),
            (GenericKind::Y, Some(0)) => Err(Error::InvalidArgument(
                "derivation index must be >= 1".into(),
            )),
            (GenericKind::X, None) => Ok(PolyMatrix::from_fn(field, n, n, |i, j| {
                Polynomial::var(field, Variable::x(k, i as u32 + 1, j as u32 + 1))
            })),
            (GenericKind::Y, Some(q)) => Ok(PolyMatrix::from_fn(field, n, n, |i, j| {
                Polynomial::var(field, Variable::y(k, q, i as u32 + 1, j as u32 + 1))
            })),
        }
    }

    /// Rectangular generic matrix in slot `k` (arrow matrices of a quiver).
    pub fn generic_rect(field: Field, k: u32, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(field, rows, cols, |i, j| {
            Polynomial::var(field, Variable::x(k, i as u32 + 1, j as u32 + 1))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry (i, j), 0-based.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|e| e.constant_value().is_some())
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(
                "cannot add matrices of different shapes".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        self.map(|e| e * c)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let field = self.field;
        Ok(PolyMatrix::from_fn(field, self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero(field);
            for l in 0..self.cols {
                let (a, b) = (self.get(i, l), other.get(l, j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc.add_assign(&(a * b));
            }
            acc
        }))
    }

    /// `A^* = -J A^T J` with `J = [[0, E], [-E, 0]]`; equivalently
    /// `[[P,Q],[R,S]]^* = [[S^T, -Q^T], [-R^T, P^T]]`.
    pub fn symplectic_transpose(&self) -> Result<PolyMatrix> {
        if !self.is_square() || !self.rows.is_multiple_of(2) {
            return Err(Error::Shape(format!(
                "symplectic transpose needs an even square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let d = self.rows / 2;
        Ok(PolyMatrix::from_fn(
            self.field,
            self.rows,
            self.cols,
            |i, j| {
                let (bi, ii) = (i / d, i % d);
                let (bj, jj) = (j / d, j % d);
                // block (bi, bj) of the result is ± the transpose of block (1-bj, 1-bi)
                let src = self.get((1 - bj) * d + jj, (1 - bi) * d + ii);
                if bi == bj {
                    src.clone()
                } else {
                    -src
                }
            },
        ))
    }

    /// The standard skew form `J`.
    pub fn symplectic_form(field: Field, n: usize) -> Result<PolyMatrix> {
        if !n.is_multiple_of(2) || n == 0 {
            return Err(Error::Shape(format!("J needs even n, got {n}")));
        }
        let d = n / 2;
        Ok(PolyMatrix::from_fn(field, n, n, |i, j| {
            if i < d && j == i + d {
                Polynomial::one(field)
            } else if i >= d && j + d == i {
                Polynomial::from_i64(field, -1)
            } else {
                Polynomial::zero(field)
            }
        }))
    }

    pub fn trace(&self) -> Result<Polynomial> {
        self.sigma_t(1)
    }

    /// `σ_t(A)`: the sum over principal t×t minors, each expanded over the
    /// permutations of its index set.
    pub fn sigma_t(&self, t: usize) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Shape("σ_t needs a square matrix".into()));
        }
        let n = self.rows;
        if t > n {
            return Err(Error::InvalidArgument(format!("σ_{t} of a {n}x{n} matrix")));
        }
        let field = self.field;
        if t == 0 {
            return Ok(Polynomial::one(field));
        }
        let perms = signed_permutations(t);
        let mut total = Polynomial::zero(field);
        for idx in subsets(n, t) {
            for (perm, odd) in &perms {
                let mut prod = Polynomial::one(field);
                for (a, &b) in perm.iter().enumerate() {
                    let e = self.get(idx[a], idx[b]);
                    if e.is_zero() {
                        prod = Polynomial::zero(field);
                        break;
                    }
                    prod = &prod * e;
                }
                if prod.is_zero() {
                    continue;
                }
                if *odd {
                    prod = -&prod;
                }
                total.add_assign(&prod);
            }
        }
        Ok(total)
    }

    /// All of `σ_0, …, σ_n`, read off as coefficients of `det(A + λE)` in an
    /// auxiliary variable λ. Independent of [`PolyMatrix::sigma_t`].
    pub fn char_poly_sigma(&self) -> Result<Vec<Polynomial>> {
        if !self.is_square() {
            return Err(Error::Shape(
                "characteristic polynomial needs a square matrix".into(),
            ));
        }
        let n = self.rows;
        let field = self.field;
        let lambda = Variable::Aux(0);
        let shifted = PolyMatrix::from_fn(field, n, n, |i, j| {
            if i == j {
                self.get(i, j) + &Polynomial::var(field, lambda)
            } else {
                self.get(i, j).clone()
            }
        });
        let det = shifted.determinant_laplace();
        let coeffs = det.coefficients_in(&lambda);
        Ok((0..=n)
            .map(|t| {
                coeffs
                    .get(&((n - t) as u32))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(field))
            })
            .collect())
    }

    /// Cofactor expansion along rows, memoised on the set of used columns.
    pub fn determinant_laplace(&self) -> Polynomial {
        fn rec(
            m: &PolyMatrix,
            row: usize,
            used: u64,
            memo: &mut HashMap<u64, Polynomial>,
        ) -> Polynomial {
            let field = m.field;
            if row == m.rows {
                return Polynomial::one(field);
            }
            if let Some(v) = memo.get(&used) {
                return v.clone();
            }
            let mut acc = Polynomial::zero(field);
            let mut sign_odd = false;
            for col in 0..m.cols {
                if used & (1 << col) != 0 {
                    continue;
                }
                let e = m.get(row, col);
                if !e.is_zero() {
                    let minor = rec(m, row + 1, used | (1 << col), memo);
                    let term = e * &minor;
                    if sign_odd {
                        acc = &acc - &term;
                    } else {
                        acc.add_assign(&term);
                    }
                }
                sign_odd = !sign_odd;
            }
            memo.insert(used, acc.clone());
            acc
        }
        assert!(self.is_square() && self.rows <= 63);
        rec(self, 0, 0, &mut HashMap::new())
    }

    /// `A^{(p)}`: every entry raised to the p-th power.
    pub fn entrywise_p_power(&self, p: u64) -> Result<PolyMatrix> {
        if self.field.characteristic() != p {
            return Err(Error::InvalidArgument(format!(
                "Frobenius twist by {p} over a field of characteristic {}",
                self.field.characteristic()
            )));
        }
        Ok(self.map(|e| e.pow(p as u32)))
    }

    /// Entrywise derivation `∂_q`.
    pub fn derive(&self, q: u32) -> Result<PolyMatrix> {
        if q == 0 {
            return Err(Error::InvalidArgument(
                "derivation index must be >= 1".into(),
            ));
        }
        Ok(self.map(|e| e.derivation(q)))
    }

    /// Inverse of a matrix with constant entries, by Gauss-Jordan elimination.
    pub fn constant_inverse(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("only square matrices are invertible".into()));
        }
        let field = self.field;
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            self.get(i, j).constant_value().ok_or_else(|| {
                                Error::InvalidArgument("matrix entries are not constants".into())
                            })
                        } else if j - n == i {
                            Ok(field.one())
                        } else {
                            Ok(field.zero())
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !field.is_zero(&a[r][col]))
                .ok_or_else(|| Error::InvalidArgument("matrix is singular".into()))?;
            a.swap(col, pivot);
            let inv = field.inv(&a[col][col])?;
            for v in a[col].iter_mut() {
                *v = field.mul(v, &inv);
            }
            for r in 0..n {
                if r != col && !field.is_zero(&a[r][col]) {
                    let factor = a[r][col].clone();
                    for c in 0..2 * n {
                        let sub = field.mul(&factor, &a[col][c]);
                        a[r][c] = field.sub(&a[r][c], &sub);
                    }
                }
            }
        }
        let values = a
            .into_iter()
            .flat_map(|row| row.into_iter().skip(n))
            .collect();
        PolyMatrix::from_scalars(field, n, n, values)
    }
}

/// Product of a chain of matrices.
pub fn mat_product(chain: &[PolyMatrix]) -> Result<PolyMatrix> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty matrix product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| acc.mul(m))
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
