//! Text formats: sigma-expressions, words, quiver files and JSON reports.
//!
//! Expression grammar (whitespace insensitive):
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'sigma' '(' INT ',' word ')' | 'tr' '(' word ')'
//! word   := atom ('*' atom)*
//! atom   := LETTER "'"? | 'T' '(' word ')'
//! LETTER := 'x' INT | 'y' INT '_' INT
//! coeff  := INT | INT '/' INT
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Field;
use crate::quiver::{Arrow, MixedSetup, Quiver};
use crate::sigma::{SigmaFactor, SigmaMonomial, SigmaPoly};
use crate::words::{Letter, Word};

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterAst {
    pub letter: Letter,
    pub span: Span,
}

/// A word as written; `T(...)` is already expanded to the involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAst {
    pub letters: Vec<LetterAst>,
    pub span: Span,
}

impl WordAst {
    pub fn word(&self) -> Word {
        Word::new(self.letters.iter().map(|l| l.letter).collect()).expect("nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffAst {
    pub num: BigInt,
    pub den: BigInt,
    pub span: Span,
}

/// `sigma(t, word)`; `tr(word)` is stored with `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorAst {
    pub t: u32,
    pub word: WordAst,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermAst {
    pub negative: bool,
    pub coeff: Option<CoeffAst>,
    pub factors: Vec<FactorAst>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: Vec<TermAst>,
    pub span: Span,
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[col_start..].chars().count() + 1)
}

fn located(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_column(text, offset);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        located(self.text, offset, message)
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        let at = self.pos;
        match self.peek() {
            Some(c) => self.err(self.pos, format!("expected {wanted}, found `{c}`")),
            None => self.err(
                at.max(self.pos),
                format!("expected {wanted}, found end of input"),
            ),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.starts_with(kw) {
            let after = rest[kw.len()..].trim_start();
            if after.starts_with('(') {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    /// Digits directly at the cursor (no whitespace skipping).
    fn raw_digits(&mut self) -> Option<(&'a str, usize)> {
        let start = self.pos;
        let len = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((&self.text[start..start + len], start))
    }

    fn int(&mut self) -> Result<(BigInt, Span)> {
        self.skip_ws();
        match self.raw_digits() {
            Some((s, start)) => Ok((
                s.parse().expect("digits"),
                Span {
                    start,
                    end: self.pos,
                },
            )),
            None => Err(self.unexpected("an integer")),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        match self.raw_digits() {
            Some((s, _)) => s
                .parse()
                .map_err(|_| self.err(start, format!("{what} is too large"))),
            None => Err(self.unexpected(what)),
        }
    }

    fn letter(&mut self) -> Result<LetterAst> {
        self.skip_ws();
        let start = self.pos;
        let letter = match self.text[self.pos..].chars().next() {
            Some('x') => {
                self.pos += 1;
                let k = self.letter_index(start)?;
                Letter::x(k)
            }
            Some('y') => {
                self.pos += 1;
                let k = self.letter_index(start)?;
                if !self.text[self.pos..].starts_with('_') {
                    return Err(self.err(self.pos, "expected `_` in y-letter"));
                }
                self.pos += 1;
                let q = self.letter_index(start)?;
                Letter::y(k, q)
            }
            _ => return Err(self.unexpected("a letter `x<k>`, `y<k>_<q>` or `T(...)`")),
        };
        let mut letter = letter;
        if self.eat('\'') {
            letter = letter.t();
        }
        Ok(LetterAst {
            letter,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn letter_index(&mut self, letter_start: usize) -> Result<u32> {
        let at = self.pos;
        let Some((s, _)) = self.raw_digits() else {
            return Err(self.err(at, "expected a letter index"));
        };
        match s.parse::<u32>() {
            Ok(0) => Err(self.err(at, "letter indices start at 1")),
            Ok(k) => Ok(k),
            Err(_) => Err(self.err(letter_start, "letter index is too large")),
        }
    }

    fn atom(&mut self) -> Result<Vec<LetterAst>> {
        if self.keyword("T") {
            self.expect('(')?;
            let inner = self.word()?;
            self.expect(')')?;
            // T(a_1 ⋯ a_m) = T(a_m) ⋯ T(a_1)
            Ok(inner
                .letters
                .into_iter()
                .rev()
                .map(|l| LetterAst {
                    letter: Letter {
                        transposed: !l.letter.transposed,
                        ..l.letter
                    },
                    span: l.span,
                })
                .collect())
        } else {
            Ok(vec![self.letter()?])
        }
    }

    fn word(&mut self) -> Result<WordAst> {
        self.skip_ws();
        let start = self.pos;
        let mut letters = self.atom()?;
        while self.eat('*') {
            letters.extend(self.atom()?);
        }
        Ok(WordAst {
            letters,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn factor(&mut self) -> Result<FactorAst> {
        self.skip_ws();
        let start = self.pos;
        let t = if self.keyword("sigma") {
            self.expect('(')?;
            self.skip_ws();
            let t_at = self.pos;
            let t = self.small_int("the index t")?;
            if t == 0 {
                return Err(self.err(
                    t_at,
                    "sigma(0, ...) is not a generator: sigma_0 = 1 by convention, write 1 instead",
                ));
            }
            self.expect(',')?;
            t
        } else if self.keyword("tr") {
            self.expect('(')?;
            1
        } else {
            return Err(self.unexpected("`sigma(`, `tr(` or a coefficient"));
        };
        let word = self.word()?;
        self.expect(')')?;
        Ok(FactorAst {
            t,
            word,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn term(&mut self, negative: bool, start: usize) -> Result<TermAst> {
        let mut coeff = None;
        let mut factors = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let (num, span) = self.int()?;
            let mut c = CoeffAst {
                num,
                den: BigInt::from(1),
                span,
            };
            if self.eat('/') {
                let (den, dspan) = self.int()?;
                if den.is_zero() {
                    return Err(self.err(dspan.start, "zero denominator"));
                }
                c.den = den;
                c.span.end = dspan.end;
            }
            coeff = Some(c);
            while self.eat('*') {
                factors.push(self.factor()?);
            }
        } else {
            factors.push(self.factor()?);
            while self.eat('*') {
                factors.push(self.factor()?);
            }
        }
        Ok(TermAst {
            negative,
            coeff,
            factors,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn expr(&mut self) -> Result<ExprAst> {
        self.skip_ws();
        let start = self.pos;
        let mut terms = Vec::new();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            self.skip_ws();
            let term_start = self.pos;
            terms.push(self.term(negative, term_start)?);
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.unexpected("`+`, `-`, `*` or end of input"));
        }
        Ok(ExprAst {
            terms,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }
}

/// Parses a sigma-expression into its syntax tree.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    Parser::new(text).expr()
}

/// Parses a word such as `x1*T(x2)*y1_1` or `x1'*x2`.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser::new(text);
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.unexpected("`*` or end of input"));
    }
    Ok(w.word())
}

/// Builds the element of `N_σ` over `field` described by `ast`. Words must
/// be primitive; `text` is only used to locate errors.
pub fn ast_to_sigma(ast: &ExprAst, field: Field, text: &str) -> Result<SigmaPoly> {
    let mut out = SigmaPoly::zero(field);
    for term in &ast.terms {
        let mut c = match &term.coeff {
            Some(c) => field.from_ratio(&c.num, &c.den).map_err(|_| {
                located(
                    text,
                    c.span.start,
                    format!("{}/{} is not defined in {field}", c.num, c.den),
                )
            })?,
            None => field.one(),
        };
        if term.negative {
            c = field.neg(&c);
        }
        let mut factors = Vec::new();
        for f in &term.factors {
            let w = f.word.word();
            let g = SigmaFactor::new(f.t, &w).map_err(|_| {
                located(
                    text,
                    f.word.span.start,
                    format!("{w} is not primitive; write the expression in its primitive root"),
                )
            })?;
            factors.push((g, 1));
        }
        out = &out + &SigmaPoly::term(field, c, SigmaMonomial::from_factors(factors));
    }
    Ok(out)
}

/// Parses and normalizes a sigma-expression.
pub fn parse_sigma(text: &str, field: Field) -> Result<SigmaPoly> {
    ast_to_sigma(&parse_expr(text)?, field, text)
}

/// Canonical text of `f`; [`parse_sigma`] inverts it.
pub fn format_expr(f: &SigmaPoly) -> String {
    f.to_string()
}

/// Parses a quiver description:
///
/// ```text
/// # comment
/// vertex NAME dim N
/// arrow NAME HEAD TAIL
/// invol A B
/// ```
///
/// Every vertex must appear in exactly one `invol` line.
pub fn parse_quiver(text: &str) -> Result<MixedSetup> {
    let mut vertices: Vec<String> = Vec::new();
    let mut dims = Vec::new();
    let mut arrows = Vec::new();
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let err = |m: String| Error::Parse {
            line: line_no,
            column: raw.len() - raw.trim_start().len() + 1,
            message: m,
        };
        match fields.as_slice() {
            [] => {}
            ["vertex", name, "dim", n] => {
                if vertices.iter().any(|v| v == name) {
                    return Err(err(format!("vertex {name} declared twice")));
                }
                let n: usize = n
                    .parse()
                    .map_err(|_| err(format!("dimension `{n}` is not a positive integer")))?;
                vertices.push(name.to_string());
                dims.push(n);
            }
            ["arrow", name, head, tail] => {
                let find = |v: &str| {
                    vertices
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| err(format!("unknown vertex {v}")))
                };
                if arrows.iter().any(|a: &Arrow| a.name == *name) {
                    return Err(err(format!("arrow {name} declared twice")));
                }
                arrows.push(Arrow {
                    name: name.to_string(),
                    head: find(head)?,
                    tail: find(tail)?,
                });
            }
            ["invol", a, b] => {
                let find = |v: &str| {
                    vertices
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| err(format!("unknown vertex {v}")))
                };
                pairs.push((find(a)?, find(b)?, line_no));
            }
            _ => {
                return Err(err(format!(
                "expected `vertex NAME dim N`, `arrow NAME HEAD TAIL` or `invol A B`, found `{}`",
                content.trim()
            )))
            }
        }
    }
    let mut invol = vec![usize::MAX; vertices.len()];
    for (a, b, line) in pairs {
        if invol[a] != usize::MAX || invol[b] != usize::MAX {
            return Err(Error::Parse {
                line,
                column: 1,
                message: "vertex paired twice".into(),
            });
        }
        invol[a] = b;
        invol[b] = a;
    }
    if let Some(v) = invol.iter().position(|&w| w == usize::MAX) {
        return Err(Error::InvalidArgument(format!(
            "vertex {} has no invol partner",
            vertices[v]
        )));
    }
    MixedSetup::new(Quiver::new(vertices, arrows)?, dims, invol)
}

/// Inverse of [`parse_quiver`].
pub fn format_quiver(s: &MixedSetup) -> String {
    let q = &s.quiver;
    let mut out = String::new();
    for (v, n) in q.vertices.iter().zip(&s.dims) {
        out.push_str(&format!("vertex {v} dim {n}\n"));
    }
    for a in &q.arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.name, q.vertices[a.head], q.vertices[a.tail]
        ));
    }
    for (v, &w) in s.invol.iter().enumerate() {
        if v < w {
            out.push_str(&format!("invol {} {}\n", q.vertices[v], q.vertices[w]));
        }
    }
    out
}

/// Pretty JSON of a report, with a trailing newline.
pub fn report_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn sigma_with_transpose() {
        let f = parse_sigma("sigma(2, x1*T(x1))", Q).unwrap();
        let w = Word::new(vec![Letter::x(1), Letter::x(1).t()]).unwrap();
        assert_eq!(f, SigmaPoly::sigma(Q, 2, &w).unwrap());
        assert_eq!(parse_sigma("sigma(2, x1*x1')", Q).unwrap(), f);
        assert_eq!(format_expr(&f), "sigma(2, x1*T(x1))");
    }

    #[test]
    fn two_terms() {
        let f = parse_sigma("tr(x1)*tr(x2) - tr(x1*x2)", Q).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(parse_sigma(&format_expr(&f), Q).unwrap(), f);
    }

    #[test]
    fn sigma_zero_rejected() {
        let err = parse_sigma("sigma(0, x1)", Q).unwrap_err();
        match err {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (1, 7));
                assert!(message.contains("sigma_0 = 1"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn printing() {
        let f = parse_sigma("sigma(2, x1)", Q).unwrap();
        assert_eq!(format_expr(&f), "sigma(2, x1)");
        assert_eq!(format_expr(&SigmaPoly::zero(Q)), "0");
        let g = parse_sigma("-3/2 + 2*tr(x1)*tr(x1)", Q).unwrap();
        assert_eq!(parse_sigma(&format_expr(&g), Q).unwrap(), g);
    }

    #[test]
    fn transpose_of_word_reverses() {
        let w = parse_word("T(x1*x2')").unwrap();
        assert_eq!(w, Word::new(vec![Letter::x(2), Letter::x(1).t()]).unwrap());
        assert_eq!(parse_word("y1_3").unwrap(), Word::letter(Letter::y(1, 3)));
    }

    #[test]
    fn located_errors() {
        for (text, line, column) in [
            ("tr(x1", 1, 6),
            ("tr(x1) +\n  tr(z2)", 2, 6),
            ("tr(x0)", 1, 5),
            ("2 tr(x1)", 1, 3),
            ("", 1, 1),
        ] {
            match parse_sigma(text, Q) {
                Err(Error::Parse {
                    line: l, column: c, ..
                }) => {
                    assert_eq!((l, c), (line, column), "{text}")
                }
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(parse_sigma("tr(x1*x1)", Q).is_err());
        assert!(parse_sigma("1/3*tr(x1)", Field::Prime(3)).is_err());
    }

    #[test]
    fn prime_field_coefficients() {
        let f5 = Field::Prime(5);
        let f = parse_sigma("7*tr(x1) - tr(x2)", f5).unwrap();
        assert_eq!(format_expr(&f), "4*tr(x2) + 2*tr(x1)");
    }

    #[test]
    fn quiver_file() {
        let text = "# bilinear forms\nvertex u dim 2\nvertex v dim 2\narrow a1 u v\narrow b1 v u\ninvol u v\n";
        let s = parse_quiver(text).unwrap();
        assert_eq!(s, crate::quiver::bilinear_forms_quiver(1, 1, 2).unwrap());
        assert_eq!(parse_quiver(&format_quiver(&s)).unwrap(), s);
        assert!(parse_quiver("vertex u dim 1\n").is_err());
        assert!(matches!(
            parse_quiver("vertex u dim 1\nedge a u u\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
