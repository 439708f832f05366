//! Mixed quiver representations: the double quiver, closed paths up to
//! rotation and involution, the generators `σ_t(a)` of the invariant ring,
//! the evaluation `Υ_n`, and the restricted base-change group `GL(n, i)`.
//!
//! Paths reuse [`Word`]: arrow number `k` (0-based) is the letter
//! `x_{k+1}`, and the reversed arrow `a^T` is its transpose.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::BlockReport;
use crate::matrix::{mat_product, PolyMatrix};
use crate::poly::{Field, Polynomial, Scalar, Variable};
use crate::random::{stream_rng, STREAM_QUIVER_SAMPLES};
use crate::rank::{rank_bareiss, rank_mod_p, SparseRow};
use crate::sigma::{SigmaFactor, SigmaMonomial, SigmaPoly};
use crate::words::{Letter, LetterBase, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    /// `a'`
    pub head: usize,
    /// `a''`
    pub tail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        for a in &arrows {
            if a.head >= vertices.len() || a.tail >= vertices.len() {
                return Err(Error::InvalidArgument(format!(
                    "arrow {} refers to a missing vertex",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

/// A quiver with a dimension vector and a fixed-point-free involution on
/// the vertices that preserves dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedSetup {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub invol: Vec<usize>,
}

impl MixedSetup {
    pub fn new(quiver: Quiver, dims: Vec<usize>, invol: Vec<usize>) -> Result<MixedSetup> {
        let nv = quiver.vertices.len();
        if dims.len() != nv || invol.len() != nv {
            return Err(Error::InvalidArgument(
                "dimension vector and involution must cover every vertex".into(),
            ));
        }
        for v in 0..nv {
            let w = invol[v];
            if w >= nv || invol[w] != v {
                return Err(Error::InvalidArgument("i is not an involution".into()));
            }
            if w == v {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} is fixed by the involution",
                    quiver.vertices[v]
                )));
            }
            if dims[v] != dims[w] {
                return Err(Error::InvalidArgument(format!(
                    "vertices {} and {} are swapped but have different dimensions",
                    quiver.vertices[v], quiver.vertices[w]
                )));
            }
            if dims[v] == 0 {
                return Err(Error::InvalidArgument("dimensions must be positive".into()));
            }
        }
        Ok(MixedSetup {
            quiver,
            dims,
            invol,
        })
    }

    /// The same quiver and involution with dimension `n` everywhere.
    pub fn with_uniform_dim(&self, n: usize) -> Result<MixedSetup> {
        MixedSetup::new(
            self.quiver.clone(),
            vec![n; self.dims.len()],
            self.invol.clone(),
        )
    }

    fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    /// Endpoints `(head, tail)` of a double-quiver letter.
    pub fn endpoints(&self, l: Letter) -> (usize, usize) {
        let a = &self.quiver.arrows[l.base as usize - 1];
        if l.transposed {
            (self.invol[a.tail], self.invol[a.head])
        } else {
            (a.head, a.tail)
        }
    }

    /// Head and tail of a path, or an error if consecutive arrows do not
    /// compose.
    pub fn path_endpoints(&self, w: &Word) -> Result<(usize, usize)> {
        let letters = w.letters();
        for l in letters {
            if l.deriv != 0 || l.base == 0 || l.base as usize > self.arrow_count() {
                return Err(Error::InvalidArgument(format!("{l} is not an arrow")));
            }
        }
        for pair in letters.windows(2) {
            if self.endpoints(pair[0]).1 != self.endpoints(pair[1]).0 {
                return Err(Error::InvalidArgument(format!("{w} is not a path")));
            }
        }
        Ok((
            self.endpoints(letters[0]).0,
            self.endpoints(*letters.last().expect("nonempty")).1,
        ))
    }

    pub fn is_closed(&self, w: &Word) -> Result<bool> {
        let (h, t) = self.path_endpoints(w)?;
        Ok(h == t)
    }

    /// Arrow and letter names in printed form, e.g. `a` and `T(a)`.
    pub fn path_name(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|l| {
                let name = &self.quiver.arrows[l.base as usize - 1].name;
                if l.transposed {
                    format!("T({name})")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The double quiver: every arrow `a` together with `a^T`, where
/// `(a^T)' = i(a'')` and `(a^T)'' = i(a')`.
pub fn double_quiver(s: &MixedSetup) -> Quiver {
    let mut arrows = s.quiver.arrows.clone();
    for a in &s.quiver.arrows {
        arrows.push(Arrow {
            name: format!("T({})", a.name),
            head: s.invol[a.tail],
            tail: s.invol[a.head],
        });
    }
    Quiver {
        vertices: s.quiver.vertices.clone(),
        arrows,
    }
}

/// A closed path class: its canonical word and the power of the primitive
/// root it is.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuiverPath {
    pub root: Word,
    pub power: usize,
}

impl QuiverPath {
    pub fn word(&self) -> Word {
        self.root.pow(self.power)
    }

    pub fn is_primitive(&self) -> bool {
        self.power == 1
    }
}

/// Closed paths of the double quiver of length at most `max_len`, one per
/// class under rotation and involution, in order of length and then of
/// canonical word. Fails if some closed path is cyclically equivalent to
/// its own involution, which cannot happen for a fixed-point-free `i`.
pub fn closed_paths(
    s: &MixedSetup,
    max_len: usize,
    primitive_only: bool,
) -> Result<Vec<QuiverPath>> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let letters: Vec<Letter> = (1..=s.arrow_count() as u32)
        .flat_map(|k| [Letter::x(k), Letter::x(k).t()])
        .collect();
    let mut found: BTreeSet<(usize, QuiverPath)> = BTreeSet::new();
    // open paths of the current length, as letter sequences with head and tail
    let mut frontier: Vec<(Vec<Letter>, usize, usize)> = letters
        .iter()
        .map(|&l| {
            let (h, t) = s.endpoints(l);
            (vec![l], h, t)
        })
        .collect();
    for len in 1..=max_len {
        for (path, head, tail) in &frontier {
            if head != tail {
                continue;
            }
            let w = Word::new(path.clone()).expect("nonempty");
            let (cls, power) = w.canonicalize();
            if cls.symmetric() {
                return Err(Error::Invariant(format!(
                    "closed path {} is cyclically equivalent to its involution",
                    s.path_name(&w)
                )));
            }
            if primitive_only && power != 1 {
                continue;
            }
            found.insert((
                len,
                QuiverPath {
                    root: cls.canonical().clone(),
                    power,
                },
            ));
        }
        if len == max_len {
            break;
        }
        frontier = frontier
            .into_iter()
            .flat_map(|(path, head, tail)| {
                letters.iter().filter_map(move |&l| {
                    let (h, t) = s.endpoints(l);
                    (h == tail).then(|| {
                        let mut p = path.clone();
                        p.push(l);
                        (p, head, t)
                    })
                })
            })
            .collect();
    }
    Ok(found.into_iter().map(|(_, p)| p).collect())
}

/// Generators `σ_t(a)` for primitive closed paths `a` of length at most
/// `max_len` and `1 ≤ t ≤ n_{a'}`, optionally capped by `t_max`.
pub fn quiver_generators(
    s: &MixedSetup,
    max_len: usize,
    t_max: Option<u32>,
) -> Result<Vec<SigmaFactor>> {
    let mut out = Vec::new();
    for p in closed_paths(s, max_len, true)? {
        let (head, _) = s.path_endpoints(&p.root)?;
        let mut top = s.dims[head] as u32;
        if let Some(cap) = t_max {
            top = top.min(cap);
        }
        for t in 1..=top {
            out.push(SigmaFactor::new(t, &p.root)?);
        }
    }
    Ok(out)
}

/// The generic matrix of a double-quiver letter; `X_{a^T} = X_a^T`.
pub fn arrow_matrix(s: &MixedSetup, l: Letter, field: Field) -> PolyMatrix {
    let a = &s.quiver.arrows[l.base as usize - 1];
    let m = PolyMatrix::generic_rect(field, l.base, s.dims[a.head], s.dims[a.tail]);
    if l.transposed {
        m.transpose()
    } else {
        m
    }
}

/// `Υ(σ_t(a)) = σ_t(X_a)` for `t ≤ n_{a'}` and zero otherwise.
pub fn upsilon_factor(f: &SigmaFactor, s: &MixedSetup, field: Field) -> Result<Polynomial> {
    let w = f.word();
    let (head, tail) = s.path_endpoints(w)?;
    if head != tail {
        return Err(Error::InvalidArgument(format!(
            "{} is not a closed path",
            s.path_name(w)
        )));
    }
    if f.t() as usize > s.dims[head] {
        return Ok(Polynomial::zero(field));
    }
    let mats: Vec<PolyMatrix> = w
        .letters()
        .iter()
        .map(|&l| arrow_matrix(s, l, field))
        .collect();
    mat_product(&mats)?.sigma_t(f.t() as usize)
}

pub fn upsilon_n(f: &SigmaPoly, s: &MixedSetup) -> Result<Polynomial> {
    let field = f.field();
    let mut out = Polynomial::zero(field);
    for (m, c) in f.terms() {
        let mut value = Polynomial::constant(field, c.clone());
        for (factor, e) in m.factors() {
            value = &value * &upsilon_factor(factor, s, field)?.pow(*e);
        }
        out.add_assign(&value);
    }
    Ok(out)
}

/// Seeded elements of `GL(n, i)`: `g_v` is free on one vertex of every
/// `i`-orbit and `g_{i(v)} = (g_v^T)^{-1}`.
pub fn restricted_group_sample(
    s: &MixedSetup,
    field: Field,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<PolyMatrix>>> {
    let mut rng = stream_rng(seed, STREAM_QUIVER_SAMPLES);
    let nv = s.dims.len();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut g: Vec<Option<PolyMatrix>> = vec![None; nv];
        for v in 0..nv {
            if g[v].is_some() {
                continue;
            }
            let n = s.dims[v];
            let m = loop {
                let values: Vec<Scalar> = (0..n * n)
                    .map(|_| match field {
                        Field::Prime(p) => Scalar::Mod(rng.random_range(0..p)),
                        Field::Rationals => field.from_i64(rng.random_range(-3..=3)),
                    })
                    .collect();
                let m = PolyMatrix::from_scalars(field, n, n, values)?;
                if m.constant_inverse().is_ok() {
                    break m;
                }
            };
            let partner = m.transpose().constant_inverse()?;
            g[s.invol[v]] = Some(partner);
            g[v] = Some(m);
        }
        let g: Vec<PolyMatrix> = g
            .into_iter()
            .map(|m| m.expect("every vertex set"))
            .collect();
        for v in 0..nv {
            let prod = g[v].mul(&g[s.invol[v]].transpose())?;
            if prod != PolyMatrix::identity(field, s.dims[v]) {
                return Err(Error::Invariant("sample violates g_v g_i(v)^T = E".into()));
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Whether `h` is fixed by `X_a ↦ g_{a'} X_a g_{a''}^{-1}` for every sample.
pub fn quiver_invariance_check(
    h: &Polynomial,
    s: &MixedSetup,
    samples: &[Vec<PolyMatrix>],
) -> Result<bool> {
    let field = h.field();
    for g in samples {
        let inverses = g
            .iter()
            .map(PolyMatrix::constant_inverse)
            .collect::<Result<Vec<_>>>()?;
        let mut map = BTreeMap::new();
        for (k, a) in s.quiver.arrows.iter().enumerate() {
            let x = PolyMatrix::generic_rect(field, k as u32 + 1, s.dims[a.head], s.dims[a.tail]);
            let moved = g[a.head].mul(&x)?.mul(&inverses[a.tail])?;
            for i in 0..moved.rows() {
                for j in 0..moved.cols() {
                    map.insert(
                        Variable::x(k as u32 + 1, i as u32 + 1, j as u32 + 1),
                        moved.get(i, j).clone(),
                    );
                }
            }
        }
        if h.substitute(&map)? != *h {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The quiver of bilinear forms on `F^n`: vertices `u`, `v` swapped by the
/// involution, `r` arrows `v → u` (the forms `A_k`, acted on by
/// `g A g^T`) and `s` arrows `u → v` (the `B_l`, acted on by
/// `g^{-T} B g^{-1}`).
pub fn bilinear_forms_quiver(r: usize, s: usize, n: usize) -> Result<MixedSetup> {
    let mut arrows = Vec::new();
    for k in 1..=r {
        arrows.push(Arrow {
            name: format!("a{k}"),
            head: 0,
            tail: 1,
        });
    }
    for l in 1..=s {
        arrows.push(Arrow {
            name: format!("b{l}"),
            head: 1,
            tail: 0,
        });
    }
    let quiver = Quiver::new(vec!["u".into(), "v".into()], arrows)?;
    MixedSetup::new(quiver, vec![n, n], vec![1, 0])
}

/// All monomials of degree `1..=max_degree` in the generators, where a
/// generator `σ_t(a)` has degree `t · len(a)`.
pub fn quiver_basis(s: &MixedSetup, max_degree: usize) -> Result<Vec<SigmaMonomial>> {
    let gens = quiver_generators(s, max_degree, None)?;
    let gens: Vec<SigmaFactor> = gens
        .into_iter()
        .filter(|g| g.degree() <= max_degree)
        .collect();
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
            if gens[i].degree() <= left {
                cur.push(gens[i].clone());
                rec(gens, i, left - gens[i].degree(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&gens, 0, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverIndependenceReport {
    pub field: String,
    pub dims: Vec<usize>,
    pub max_degree: usize,
    pub basis_size: usize,
    pub rank: usize,
    pub independent: bool,
    pub blocks: Vec<BlockReport>,
}

/// Rank of the images under `Υ` of all monomials of degree at most
/// `max_degree`, blocked by the number of occurrences of each arrow.
pub fn quiver_independence(
    s: &MixedSetup,
    field: Field,
    max_degree: usize,
) -> Result<QuiverIndependenceReport> {
    let basis = quiver_basis(s, max_degree)?;
    let arrows = s.arrow_count() as u32;
    let mut blocks: BTreeMap<Vec<usize>, Vec<&SigmaMonomial>> = BTreeMap::new();
    for m in &basis {
        let md = (1..=arrows)
            .map(|k| m.degree_in(LetterBase { base: k, deriv: 0 }))
            .collect();
        blocks.entry(md).or_default().push(m);
    }
    let mut reports = Vec::new();
    for (md, members) in blocks {
        let images: Vec<Polynomial> = members
            .par_iter()
            .map(|m| upsilon_n(&SigmaPoly::monomial(field, (*m).clone()), s))
            .collect::<Result<_>>()?;
        let cols: BTreeMap<_, usize> = images
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let rank = match field {
            Field::Prime(p) => {
                let rows: Vec<SparseRow<u64>> = images
                    .iter()
                    .map(|f| {
                        f.terms()
                            .map(|(m, c)| match c {
                                Scalar::Mod(v) => (cols[m], *v),
                                Scalar::Rat(_) => unreachable!("prime field"),
                            })
                            .collect()
                    })
                    .collect();
                rank_mod_p(&rows, p)
            }
            Field::Rationals => {
                let rows: Vec<SparseRow<num_bigint::BigInt>> = images
                    .iter()
                    .map(|f| {
                        f.terms()
                            .map(|(m, c)| match c {
                                Scalar::Rat(r) if r.is_integer() => (cols[m], r.numer().clone()),
                                _ => unreachable!("integer coefficients"),
                            })
                            .collect()
                    })
                    .collect();
                rank_bareiss(&rows)
            }
        };
        reports.push(BlockReport {
            multidegree: md,
            rows: members.len(),
            cols: cols.len(),
            rank,
        });
    }
    let rank = reports.iter().map(|b| b.rank).sum();
    Ok(QuiverIndependenceReport {
        field: field.to_string(),
        dims: s.dims.clone(),
        max_degree,
        basis_size: basis.len(),
        rank,
        independent: rank == basis.len(),
        blocks: reports,
    })
}
