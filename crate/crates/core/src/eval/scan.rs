//! Scans over ranges of `n`: relation reports and the characteristic-2
//! symplectic scan.

use serde::Serialize;

use super::{is_relation, GroupKind, GroupSpec};
use crate::error::{Error, Result};
use crate::poly::Field;
use crate::sigma::SigmaPoly;
use crate::words::{primitive_classes, x_alphabet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// In the kernel of `Ψ_n` for every tested `n`. This says nothing about
    /// untested `n`.
    RelationAtAllTestedN,
    FailsAt(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub element: String,
    pub group: GroupKind,
    pub field: String,
    pub exploratory: bool,
    pub per_n: Vec<(usize, bool)>,
    pub verdict: Verdict,
}

/// Evaluates `f` at every `n` in `ns` (even ones only for `Sp`).
pub fn free_scan(
    f: &SigmaPoly,
    kind: GroupKind,
    ns: &[usize],
    exploratory: bool,
) -> Result<RelationReport> {
    let ns: Vec<usize> = ns
        .iter()
        .copied()
        .filter(|n| kind != GroupKind::Sp || n % 2 == 0)
        .collect();
    if ns.is_empty() {
        return Err(Error::InvalidArgument("empty range of n".into()));
    }
    let mut per_n = Vec::with_capacity(ns.len());
    for n in ns {
        let g = GroupSpec::new(kind, n)?.with_exploratory(exploratory);
        per_n.push((n, is_relation(f, g)?));
    }
    let verdict = match per_n.iter().find(|(_, r)| !r) {
        Some(&(n, _)) => Verdict::FailsAt(n),
        None => Verdict::RelationAtAllTestedN,
    };
    Ok(RelationReport {
        element: f.to_string(),
        group: kind,
        field: f.field().to_string(),
        exploratory,
        per_n,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureEntry {
    pub word: String,
    pub t: u32,
    pub odd_t: bool,
    /// `(n, is relation)`; entries with `t > n` hold trivially.
    pub per_n: Vec<(usize, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub d: u32,
    pub max_len: usize,
    pub n_list: Vec<usize>,
    pub classes: Vec<String>,
    pub entries: Vec<ConjectureEntry>,
}

/// For every primitive class `a` with `a ∼c a^T` of length at most
/// `max_len` and every `t ≤ t_max`, records at which `n` the element
/// `σ_t(a)` is a relation for `Sp(n)` over `F_2`. Evidence only.
pub fn conjecture_scan(
    field: Field,
    d: u32,
    max_len: usize,
    n_list: &[usize],
    t_max: Option<u32>,
) -> Result<ConjectureReport> {
    if field.characteristic() != 2 {
        return Err(Error::Precondition(format!(
            "the scan runs in characteristic 2, got {field}"
        )));
    }
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("empty list of n".into()));
    }
    let groups = n_list
        .iter()
        .map(|&n| GroupSpec::sp(n))
        .collect::<Result<Vec<_>>>()?;
    let t_max = t_max.unwrap_or_else(|| *n_list.iter().max().expect("nonempty") as u32);
    let classes: Vec<_> = primitive_classes(&x_alphabet(d, true), max_len)
        .into_iter()
        .filter(|c| c.symmetric())
        .collect();
    let mut entries = Vec::new();
    for cls in &classes {
        for t in 1..=t_max {
            let f = SigmaPoly::sigma(field, t, cls.canonical())?;
            let per_n = groups
                .iter()
                .map(|&g| Ok((g.n, is_relation(&f, g)?)))
                .collect::<Result<Vec<_>>>()?;
            entries.push(ConjectureEntry {
                word: cls.canonical().to_string(),
                t,
                odd_t: t % 2 == 1,
                per_n,
            });
        }
    }
    Ok(ConjectureReport {
        d,
        max_len,
        n_list: n_list.to_vec(),
        classes: classes.iter().map(|c| c.canonical().to_string()).collect(),
        entries,
    })
}
