//! Reduction of an element of `N_σ` to a multilinear one: iterated
//! derivations until the element is p-multilinear, renaming of y-letters to
//! fresh x-letters, and removal of p-th powers.

use std::collections::{BTreeMap, BTreeSet};

use super::{SigmaMonomial, SigmaPoly};
use crate::error::{Error, Result};
use crate::words::{Letter, LetterBase, Word};

/// Output of [`p_multilinearize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multilinearized {
    pub poly: SigmaPoly,
    /// Number of derivations applied (`∂_rounds ⋯ ∂_1`).
    pub rounds: u32,
    /// `deg⁻` of the input followed by `deg⁻` after every round.
    pub deg_minus_trace: Vec<usize>,
    pub witness: BTreeSet<LetterBase>,
}

/// Applies `∂_1, ∂_2, …` until the element is p-multilinear, where `p` is
/// the characteristic of the field. Characteristic 2 is refused unless
/// `allow_char2` is set. Every round checks that the result is nonzero and
/// that `deg⁻` went down.
pub fn p_multilinearize(f: &SigmaPoly, allow_char2: bool) -> Result<Multilinearized> {
    let p = f.field().characteristic();
    if p == 2 && !allow_char2 {
        return Err(Error::Precondition(
            "p-multilinearization requires characteristic other than 2".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::Precondition("input must be nonzero".into()));
    }
    if f.has_y_letters() {
        return Err(Error::Precondition(
            "input must not contain y-letters".into(),
        ));
    }
    let mut g = f.clone();
    let mut trace = vec![g.degrees().deg_minus];
    let mut rounds = 0u32;
    loop {
        if let Some(witness) = g.is_p_multilinear(p) {
            return Ok(Multilinearized {
                poly: g,
                rounds,
                deg_minus_trace: trace,
                witness,
            });
        }
        rounds += 1;
        g = g.derive(rounds)?;
        if g.is_zero() {
            return Err(Error::Invariant(format!(
                "∂_{rounds} ⋯ ∂_1 of {f} vanished before becoming p-multilinear"
            )));
        }
        let dm = g.degrees().deg_minus;
        let prev = *trace.last().expect("nonempty");
        if dm >= prev {
            return Err(Error::Invariant(format!(
                "deg⁻ did not decrease at round {rounds}: {prev} -> {dm}"
            )));
        }
        trace.push(dm);
    }
}

/// Replaces every y-letter by an x-letter on a slot in `1..=d` that no letter
/// of `f` uses. The y-letters are taken in increasing order and sent to the
/// free slots in increasing order.
pub fn rename_y_to_x(f: &SigmaPoly, d: u32) -> Result<SigmaPoly> {
    let letters = f.letters();
    let ys: Vec<LetterBase> = letters.iter().copied().filter(|b| b.deriv > 0).collect();
    if ys.is_empty() {
        return Ok(f.clone());
    }
    let used: BTreeSet<u32> = letters.iter().map(|b| b.base).collect();
    let free: Vec<u32> = (1..=d).filter(|k| !used.contains(k)).collect();
    if free.len() < ys.len() {
        let mut need = d;
        let mut count = free.len();
        while count < ys.len() {
            need += 1;
            if !used.contains(&need) {
                count += 1;
            }
        }
        return Err(Error::InvalidArgument(format!(
            "{} y-letters need free x-slots; d must be at least {need}",
            ys.len()
        )));
    }
    let phi: BTreeMap<LetterBase, u32> = ys.into_iter().zip(free).collect();
    f.map_words(|w| {
        let letters = w
            .letters()
            .iter()
            .map(|l| match phi.get(&l.letter_base()) {
                Some(&slot) => Letter {
                    base: slot,
                    deriv: 0,
                    transposed: l.transposed,
                },
                None => *l,
            })
            .collect();
        Word::new(letters).expect("nonempty")
    })
}

/// Smallest `d` for which [`rename_y_to_x`] succeeds.
pub fn rename_slots_needed(f: &SigmaPoly) -> u32 {
    let letters = f.letters();
    let ys = letters.iter().filter(|b| b.deriv > 0).count();
    let used: BTreeSet<u32> = letters.iter().map(|b| b.base).collect();
    let mut d = 0;
    let mut free = 0;
    while free < ys {
        d += 1;
        if !used.contains(&d) {
            free += 1;
        }
    }
    d.max(used.iter().copied().max().unwrap_or(0))
}

/// Replaces each `α_w h_w^p f_w⁻` by `α_w h_w f_w⁻`. The input must be
/// p-multilinear for the field's characteristic `p`.
pub fn strip_p_powers(f: &SigmaPoly) -> Result<SigmaPoly> {
    let p = f.field().characteristic();
    if p == 0 {
        return Err(Error::Precondition(
            "p-th powers are only stripped in positive characteristic".into(),
        ));
    }
    if f.is_p_multilinear(p).is_none() {
        return Err(Error::Precondition(format!("{f} is not {p}-multilinear")));
    }
    let mut out = SigmaPoly::zero(f.field());
    for (m, c) in f.terms() {
        let (plus, minus) = m.split_p_parts(p);
        let h = SigmaMonomial::from_factors(
            plus.factors()
                .iter()
                .map(|(g, e)| (g.clone(), e / p as u32)),
        );
        out.add_term(h.mul(&minus), c.clone());
    }
    if !f.is_multilinear() {
        let (before, after) = (f.degrees().deg_plus, out.degrees().deg_plus);
        if after >= before {
            return Err(Error::Invariant(format!(
                "deg⁺ did not decrease when stripping p-th powers: {before} -> {after}"
            )));
        }
    }
    Ok(out)
}

/// One step of [`ReductionPipeline::run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineStage {
    pub label: String,
    pub poly: SigmaPoly,
    pub deg_plus: usize,
    pub deg_minus: usize,
    /// For strip stages: the letters whose p-th powers were removed.
    pub witness: Option<BTreeSet<LetterBase>>,
}

/// The full reduction from a nonzero element of `N_σ` to a nonzero
/// multilinear one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPipeline {
    pub stages: Vec<PipelineStage>,
}

impl ReductionPipeline {
    /// Runs multilinearize, rename and strip until the element is
    /// multilinear. `d` bounds the slots used by renaming; when `None` the
    /// smallest sufficient value is used at every rename.
    pub fn run(f: &SigmaPoly, d: Option<u32>, allow_char2: bool) -> Result<ReductionPipeline> {
        let p = f.field().characteristic();
        let mut stages = vec![stage("input", f, None)];
        let mut g = f.clone();
        // deg⁺ falls by a factor p on every strip, so this loop is finite
        while !g.is_multilinear() {
            let m = p_multilinearize(&g, allow_char2)?;
            g = m.poly;
            stages.push(stage(
                &format!("p-multilinearize ({} rounds)", m.rounds),
                &g,
                None,
            ));
            let slots = d.unwrap_or_else(|| rename_slots_needed(&g));
            g = rename_y_to_x(&g, slots)?;
            stages.push(stage("rename y to x", &g, None));
            if g.is_multilinear() {
                break;
            }
            let witness = g.is_p_multilinear(p);
            g = strip_p_powers(&g)?;
            stages.push(stage("strip p-th powers", &g, witness));
        }
        Ok(ReductionPipeline { stages })
    }

    pub fn result(&self) -> &SigmaPoly {
        &self.stages.last().expect("nonempty").poly
    }
}

fn stage(label: &str, f: &SigmaPoly, witness: Option<BTreeSet<LetterBase>>) -> PipelineStage {
    let d = f.degrees();
    PipelineStage {
        label: label.to_string(),
        poly: f.clone(),
        deg_plus: d.deg_plus,
        deg_minus: d.deg_minus,
        witness,
    }
}
