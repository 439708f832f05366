//! Words in letters `x_k`, `y_{k,q}` and their transposes, with the
//! involution `(a_1⋯a_r)^T = a_r^T⋯a_1^T`, cyclic equivalence, primitivity
//! and canonical class representatives.

use std::fmt;

use crate::error::{Error, Result};

/// A letter: `x_k` when `deriv == 0`, `y_{k,deriv}` otherwise; possibly
/// transposed. Ordered by `(base, deriv, transposed)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: u32,
    pub deriv: u32,
    pub transposed: bool,
}

/// A letter up to transposition: the unit `deg_b` counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterBase {
    pub base: u32,
    pub deriv: u32,
}

impl Letter {
    pub fn x(k: u32) -> Letter {
        Letter {
            base: k,
            deriv: 0,
            transposed: false,
        }
    }

    pub fn y(k: u32, q: u32) -> Letter {
        Letter {
            base: k,
            deriv: q,
            transposed: false,
        }
    }

    pub fn t(self) -> Letter {
        Letter {
            transposed: !self.transposed,
            ..self
        }
    }

    pub fn letter_base(&self) -> LetterBase {
        LetterBase {
            base: self.base,
            deriv: self.deriv,
        }
    }

    pub fn is_x(&self) -> bool {
        self.deriv == 0
    }
}

impl fmt::Display for LetterBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deriv == 0 {
            write!(f, "x{}", self.base)
        } else {
            write!(f, "y{}_{}", self.base, self.deriv)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.transposed {
            write!(f, "T({})", self.letter_base())
        } else {
            write!(f, "{}", self.letter_base())
        }
    }
}

/// A nonempty word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("words are nonempty".into()));
        }
        Ok(Word(letters))
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Word of untransposed x-letters, e.g. `from_slots(&[1, 2])` is `x1*x2`.
    pub fn from_slots(slots: &[u32]) -> Word {
        assert!(!slots.is_empty());
        Word(slots.iter().map(|&k| Letter::x(k)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Occurrences of `b` and `b^T`.
    pub fn degree_in(&self, b: LetterBase) -> usize {
        self.0.iter().filter(|l| l.letter_base() == b).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, m: usize) -> Word {
        assert!(m >= 1);
        Word(self.0.repeat(m))
    }

    pub fn involution(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.t()).collect())
    }

    pub fn rotation(&self, by: usize) -> Word {
        let mut v = self.0.clone();
        v.rotate_left(by % self.len());
        Word(v)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |i| self.rotation(i))
    }

    pub fn is_cyclic_equivalent(&self, other: &Word) -> bool {
        self.len() == other.len() && self.rotations().any(|r| &r == other)
    }

    pub fn is_equivalent(&self, other: &Word) -> bool {
        self.is_cyclic_equivalent(other) || self.is_cyclic_equivalent(&other.involution())
    }

    /// Smallest `e` with `self = e^m`; returns `(e, m)`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.len();
        for len in 1..n {
            if n.is_multiple_of(len) && (len..n).all(|i| self.0[i] == self.0[i - len]) {
                return (Word(self.0[..len].to_vec()), n / len);
            }
        }
        (self.clone(), 1)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    /// `a ∼c a^T`.
    pub fn is_symmetric(&self) -> bool {
        self.is_cyclic_equivalent(&self.involution())
    }

    /// Minimum over the rotations of the word and of its involution.
    fn min_representative(&self) -> Word {
        let inv = self.involution();
        self.rotations()
            .chain(inv.rotations())
            .min()
            .expect("words are nonempty")
    }

    /// Writes the word as `r^power` with `r` primitive and returns the class
    /// of `r`.
    pub fn canonicalize(&self) -> (WordClass, usize) {
        let (root, power) = self.primitive_root();
        let canonical = root.min_representative();
        let symmetric = canonical.is_symmetric();
        (
            WordClass {
                canonical,
                symmetric,
            },
            power,
        )
    }

    /// `|i|_m`: the representative of `i` modulo `m` in `1..=m`.
    fn residue(i: i64, m: usize) -> usize {
        let m = m as i64;
        ((i - 1).rem_euclid(m) + 1) as usize
    }

    /// `self` is an `l`-subword of `b` when `a_i = b_{|l+i-1|_s}` and an
    /// `l^T`-subword when `a_i = b_{|l-i+1|_s}^T` (positions 1-based).
    pub fn is_subword_of(&self, b: &Word, l: usize, mode: SubwordMode) -> bool {
        assert!(l >= 1);
        let s = b.len();
        self.0.iter().enumerate().all(|(idx, a)| {
            let i = idx as i64 + 1;
            match mode {
                SubwordMode::Plain => *a == b.0[Word::residue(l as i64 + i - 1, s) - 1],
                SubwordMode::Transposed => *a == b.0[Word::residue(l as i64 - i + 1, s) - 1].t(),
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubwordMode {
    Plain,
    Transposed,
}

/// An equivalence class of primitive words under rotation and involution,
/// held by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordClass {
    canonical: Word,
    symmetric: bool,
}

impl WordClass {
    /// Class of a primitive word; errors on proper powers.
    pub fn of(word: &Word) -> Result<WordClass> {
        let (cls, power) = word.canonicalize();
        if power != 1 {
            return Err(Error::InvalidArgument(format!(
                "{word} is the {power}-th power of {}; generators are indexed by primitive words",
                cls.canonical
            )));
        }
        Ok(cls)
    }

    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    /// Whether the class is closed under the involution (`a ∼c a^T`).
    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn degree(&self) -> usize {
        self.canonical.len()
    }
}

/// If `bc = cb`, finds `e` with `b = e^i`, `c = e^j` by repeatedly peeling
/// the shorter word off the front of the longer one.
pub fn commuting_root(b: &Word, c: &Word) -> Option<(Word, usize, usize)> {
    if b.concat(c) != c.concat(b) {
        return None;
    }
    let (mut long, mut short) = (b.0.clone(), c.0.clone());
    while long.len() != short.len() {
        if long.len() < short.len() {
            std::mem::swap(&mut long, &mut short);
        }
        // long = short · rest, and rest commutes with short
        long.drain(..short.len());
    }
    debug_assert_eq!(long, short);
    let e = Word(long);
    Some((e.clone(), b.len() / e.len(), c.len() / e.len()))
}

/// If `b = b^T`, returns `c` with `b = c c^T`: peel the first letter `y`,
/// then `b = y b_2 y^T` with `b_2 = b_2^T`, and recurse on `b_2`.
pub fn palindrome_decompose(b: &Word) -> Option<Word> {
    if *b != b.involution() {
        return None;
    }
    let mut c = Vec::new();
    let mut rest: &[Letter] = &b.0;
    while !rest.is_empty() {
        // a single letter never equals its own transpose
        if rest.len() == 1 {
            return None;
        }
        let y = rest[0];
        if rest[rest.len() - 1] != y.t() {
            return None;
        }
        c.push(y);
        rest = &rest[1..rest.len() - 1];
    }
    Some(Word(c))
}

/// All words of length exactly `len` over `alphabet`, in lexicographic order
/// of letter indices.
pub fn all_words(alphabet: &[Letter], len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if len == 0 || alphabet.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; len];
    loop {
        out.push(Word(idx.iter().map(|&i| alphabet[i]).collect()));
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < alphabet.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// The alphabet `x_1..x_d`, plus transposes when `with_transposes`.
pub fn x_alphabet(d: u32, with_transposes: bool) -> Vec<Letter> {
    let mut v = Vec::new();
    for k in 1..=d {
        v.push(Letter::x(k));
        if with_transposes {
            v.push(Letter::x(k).t());
        }
    }
    v
}

/// Primitive classes of words of length `1..=max_len` over `alphabet`,
/// sorted by degree and then by representative.
pub fn primitive_classes(alphabet: &[Letter], max_len: usize) -> Vec<WordClass> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut level: Vec<WordClass> = all_words(alphabet, len)
            .into_iter()
            .filter(|w| w.is_primitive())
            .map(|w| w.canonicalize().0)
            .collect();
        level.sort();
        level.dedup();
        out.extend(level);
    }
    out
}
