//! Evaluation of `N_σ` on generic matrices: the homomorphisms `Ψ_n`,
//! relation tests, independence certificates, invariance checks under
//! sampled group elements, and the elementary-matrix certificate for
//! multilinear elements.

mod certificate;
mod multilinear;
mod sample;
mod scan;

pub use certificate::{
    enumerate_basis, generators, independence_certificate, BlockReport, CertificateOptions,
    IndependenceReport,
};
pub use multilinear::{
    assignment_size, evaluate_at_assignment, isolation_check, multilinear_certificate,
    multilinear_monomials, z_assignment, IntMatrix, IsolationReport, MultilinearCertificate,
};
pub use sample::group_sample;
pub use scan::{
    conjecture_scan, free_scan, ConjectureEntry, ConjectureReport, RelationReport, Verdict,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{mat_product, GenericKind, PolyMatrix};
use crate::poly::{Field, Polynomial, Variable};
use crate::sigma::{SigmaFactor, SigmaPoly};
use crate::words::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    O,
    Sp,
}

impl GroupKind {
    /// Whether the alphabet contains transposed letters.
    pub fn has_transpose(&self) -> bool {
        !matches!(self, GroupKind::GL)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::GL => "GL",
            GroupKind::O => "O",
            GroupKind::Sp => "Sp",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupKind> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupKind::GL),
            "o" => Ok(GroupKind::O),
            "sp" => Ok(GroupKind::Sp),
            _ => Err(Error::InvalidArgument(format!(
                "unknown group `{s}`; expected GL, O or Sp"
            ))),
        }
    }
}

/// A group of the list together with the matrix size it acts on.
/// `exploratory` admits `O(n)` in characteristic 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
    pub exploratory: bool,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, n: usize) -> Result<GroupSpec> {
        if n == 0 {
            return Err(Error::Group("n must be at least 1".into()));
        }
        if kind == GroupKind::Sp && !n.is_multiple_of(2) {
            return Err(Error::Group(format!("Sp(n) needs even n, got {n}")));
        }
        Ok(GroupSpec {
            kind,
            n,
            exploratory: false,
        })
    }

    pub fn gl(n: usize) -> GroupSpec {
        GroupSpec::new(GroupKind::GL, n).expect("valid")
    }

    pub fn o(n: usize) -> GroupSpec {
        GroupSpec::new(GroupKind::O, n).expect("valid")
    }

    pub fn sp(n: usize) -> Result<GroupSpec> {
        GroupSpec::new(GroupKind::Sp, n)
    }

    pub fn with_exploratory(self, on: bool) -> GroupSpec {
        GroupSpec {
            exploratory: on,
            ..self
        }
    }

    pub fn with_n(self, n: usize) -> Result<GroupSpec> {
        Ok(GroupSpec::new(self.kind, n)?.with_exploratory(self.exploratory))
    }

    /// Rejects `O(n)` over a field of characteristic 2 outside exploratory
    /// mode.
    pub fn check_field(&self, field: Field) -> Result<()> {
        if self.kind == GroupKind::O && field.characteristic() == 2 && !self.exploratory {
            return Err(Error::Group(
                "O(n) is only considered in characteristic other than 2; pass the exploratory flag to override"
                    .into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

/// The generic matrix a letter stands for: `X_k`, `Y_{k,q}`, or their
/// transpose (`O`) or symplectic transpose (`Sp`).
pub fn letter_matrix(b: Letter, g: GroupSpec, field: Field) -> Result<PolyMatrix> {
    let base = if b.deriv == 0 {
        PolyMatrix::generic(field, GenericKind::X, b.base, None, g.n)?
    } else {
        PolyMatrix::generic(field, GenericKind::Y, b.base, Some(b.deriv), g.n)?
    };
    if !b.transposed {
        return Ok(base);
    }
    match g.kind {
        GroupKind::GL => Err(Error::Group(format!(
            "transposed letter {b} is not in the alphabet of GL"
        ))),
        GroupKind::O => Ok(base.transpose()),
        GroupKind::Sp => base.symplectic_transpose(),
    }
}

/// `X_a`: the product of the letter matrices.
pub fn word_matrix(a: &Word, g: GroupSpec, field: Field) -> Result<PolyMatrix> {
    let mats = a
        .letters()
        .iter()
        .map(|&l| letter_matrix(l, g, field))
        .collect::<Result<Vec<_>>>()?;
    mat_product(&mats)
}

/// `Ψ_n(σ_t(a))`: `σ_t(X_a)` when `t ≤ n`, zero otherwise.
pub fn psi_factor(f: &SigmaFactor, g: GroupSpec, field: Field) -> Result<Polynomial> {
    if f.t() as usize > g.n {
        // still reject letters outside the group's alphabet
        for &l in f.word().letters() {
            if l.transposed && g.kind == GroupKind::GL {
                return Err(Error::Group(format!(
                    "transposed letter {l} is not in the alphabet of GL"
                )));
            }
        }
        return Ok(Polynomial::zero(field));
    }
    word_matrix(f.word(), g, field)?.sigma_t(f.t() as usize)
}

/// `Ψ_n(f)`, with y-letters sent to the matrices `Y_{k,q}`.
pub fn psi_n(f: &SigmaPoly, g: GroupSpec) -> Result<Polynomial> {
    let field = f.field();
    g.check_field(field)?;
    let mut cache: BTreeMap<&SigmaFactor, Polynomial> = BTreeMap::new();
    let mut out = Polynomial::zero(field);
    for (m, c) in f.terms() {
        let mut value = Polynomial::constant(field, c.clone());
        for (factor, mult) in m.factors() {
            if !cache.contains_key(factor) {
                cache.insert(factor, psi_factor(factor, g, field)?);
            }
            value = &value * &cache[factor].pow(*mult);
            if value.is_zero() {
                break;
            }
        }
        out.add_assign(&value);
    }
    Ok(out)
}

/// Whether `f` lies in the kernel of `Ψ_n`.
pub fn is_relation(f: &SigmaPoly, g: GroupSpec) -> Result<bool> {
    Ok(psi_n(f, g)?.is_zero())
}

/// Compares `Ψ_n(∂_q f)` with `∂_q Ψ_n(f)`.
pub fn diagram_check(f: &SigmaPoly, q: u32, g: GroupSpec) -> Result<bool> {
    let symbolic = psi_n(&f.derive(q)?, g)?;
    let matrix_side = psi_n(f, g)?.derivation(q);
    Ok(symbolic == matrix_side)
}

/// Outcome of [`invariance_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub samples: usize,
    pub invariant: bool,
    /// Index of the first sample that moved the polynomial.
    pub failed_sample: Option<usize>,
}

/// Checks `h(g⁻¹ X_k g) = h(X_k)` for sampled group elements `g`, where the
/// substitution acts on every generic matrix (`X_k` and `Y_{k,q}`) occurring
/// in `h`. A finite sample gives a necessary condition only.
pub fn invariance_check_poly(
    h: &Polynomial,
    g: GroupSpec,
    samples: &[PolyMatrix],
) -> Result<InvarianceReport> {
    let field = h.field();
    let mut slots: BTreeSet<(u32, Option<u32>)> = BTreeSet::new();
    for v in h.variables() {
        match v {
            Variable::X { k, .. } => slots.insert((k, None)),
            Variable::Y { k, q, .. } => slots.insert((k, Some(q))),
            Variable::Aux(_) => {
                return Err(Error::InvalidArgument("auxiliary variable in input".into()))
            }
        };
    }
    for (idx, s) in samples.iter().enumerate() {
        let inv = s.constant_inverse()?;
        let mut map = BTreeMap::new();
        for &(k, q) in &slots {
            let kind = if q.is_some() {
                GenericKind::Y
            } else {
                GenericKind::X
            };
            let generic = PolyMatrix::generic(field, kind, k, q, g.n)?;
            let moved = inv.mul(&generic)?.mul(s)?;
            for i in 0..g.n {
                for j in 0..g.n {
                    let (i1, j1) = (i as u32 + 1, j as u32 + 1);
                    let var = match q {
                        None => Variable::x(k, i1, j1),
                        Some(q) => Variable::y(k, q, i1, j1),
                    };
                    map.insert(var, moved.get(i, j).clone());
                }
            }
        }
        if h.substitute(&map)? != *h {
            return Ok(InvarianceReport {
                samples: samples.len(),
                invariant: false,
                failed_sample: Some(idx),
            });
        }
    }
    Ok(InvarianceReport {
        samples: samples.len(),
        invariant: true,
        failed_sample: None,
    })
}

/// [`invariance_check_poly`] applied to `Ψ_n(f)` with `count` seeded samples.
pub fn invariance_check(
    f: &SigmaPoly,
    g: GroupSpec,
    count: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let samples = group_sample(g, f.field(), count, seed)?;
    invariance_check_poly(&psi_n(f, g)?, g, &samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ls: &[Letter]) -> Word {
        Word::new(ls.to_vec()).unwrap()
    }

    fn x(k: u32) -> Letter {
        Letter::x(k)
    }

    #[test]
    fn letter_matrices() {
        let q = Field::Rationals;
        assert_eq!(
            letter_matrix(x(1), GroupSpec::o(2), q).unwrap(),
            PolyMatrix::generic(q, GenericKind::X, 1, None, 2).unwrap()
        );
        let j = PolyMatrix::symplectic_form(q, 2).unwrap();
        let x1 = PolyMatrix::generic(q, GenericKind::X, 1, None, 2).unwrap();
        let minus_j = j.scale(&Polynomial::from_i64(q, -1));
        let expected = minus_j.mul(&x1.transpose()).unwrap().mul(&j).unwrap();
        assert_eq!(
            letter_matrix(x(1).t(), GroupSpec::sp(2).unwrap(), q).unwrap(),
            expected
        );
        assert!(letter_matrix(x(1).t(), GroupSpec::gl(2), q).is_err());
    }

    #[test]
    fn psi_small_cases() {
        let q = Field::Rationals;
        let s2 = SigmaPoly::sigma(q, 2, &word(&[x(1)])).unwrap();
        assert!(psi_n(&s2, GroupSpec::o(1)).unwrap().is_zero());
        assert_eq!(
            psi_n(&s2, GroupSpec::o(2)).unwrap().to_string(),
            "-x[1,2](1) * x[2,1](1) + x[1,1](1) * x[2,2](1)"
        );
        let f2 = Field::Prime(2);
        let t = SigmaPoly::tr(f2, &word(&[x(1), x(1).t()])).unwrap();
        assert!(is_relation(&t, GroupSpec::sp(2).unwrap()).unwrap());
        assert!(is_relation(&t, GroupSpec::sp(4).unwrap()).unwrap());
        let s = SigmaPoly::sigma(f2, 2, &word(&[x(1), x(1).t()])).unwrap();
        assert!(!is_relation(&s, GroupSpec::sp(2).unwrap()).unwrap());
    }

    #[test]
    fn group_constraints() {
        assert!(GroupSpec::sp(3).is_err());
        assert!(GroupSpec::new(GroupKind::O, 0).is_err());
        let f2 = Field::Prime(2);
        let t = SigmaPoly::tr(f2, &word(&[x(1)])).unwrap();
        assert!(matches!(psi_n(&t, GroupSpec::o(2)), Err(Error::Group(_))));
        assert!(psi_n(&t, GroupSpec::o(2).with_exploratory(true)).is_ok());
    }

    #[test]
    fn diagram_examples() {
        let f3 = Field::Prime(3);
        let s2 = SigmaPoly::sigma(f3, 2, &word(&[x(1)])).unwrap();
        assert!(diagram_check(&s2, 1, GroupSpec::o(2)).unwrap());
        let f5 = Field::Prime(5);
        let t = SigmaPoly::tr(f5, &word(&[x(1), x(1).t()])).unwrap();
        assert!(diagram_check(&t, 1, GroupSpec::sp(2).unwrap()).unwrap());
        let c = SigmaPoly::constant(f5, f5.from_i64(3));
        assert!(diagram_check(&c, 1, GroupSpec::gl(3)).unwrap());
    }

    #[test]
    fn invariance() {
        let f5 = Field::Prime(5);
        let tr = SigmaPoly::tr(f5, &word(&[x(1)])).unwrap();
        assert!(
            invariance_check(&tr, GroupSpec::gl(2), 5, 1)
                .unwrap()
                .invariant
        );
        let q = Field::Rationals;
        let s = SigmaPoly::sigma(q, 2, &word(&[x(1), x(2)])).unwrap();
        assert!(
            invariance_check(&s, GroupSpec::o(2), 20, 0)
                .unwrap()
                .invariant
        );
        let raw = Polynomial::var(q, Variable::x(1, 1, 1));
        let swap = PolyMatrix::from_ints(q, &[vec![0, 1], vec![1, 0]]).unwrap();
        let report = invariance_check_poly(&raw, GroupSpec::o(2), &[swap]).unwrap();
        assert!(!report.invariant);
    }
}
