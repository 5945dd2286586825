//! Text and JSON forms of expansions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := '0' | ['-'] term (('+' | '-') term)*
//! term     := [rational '*'] TAG '[' intlist ']'
//! rational := ['-'] digits ['/' digits]
//! TAG      := M | S | H | SD | p | h
//! ```
//!
//! Terms print in display order: degree ascending, then length descending,
//! then lexicographic, so refinements come before the compositions they
//! refine.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{fmt_rational, Expansion, Rational, TensorExpansion};
use crate::composition::Composition;
use crate::element::Element;
use crate::qsym::{QSymBasis, QSymElement};
use crate::sym::{sym, NSymBasis, NSymElement, SymBasis, SymElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// QSym monomial `M`.
    M,
    /// QSym shuffle `S`.
    S,
    /// NSym complete `H`.
    H,
    /// NSym dual shuffle `S*`, written `SD`.
    SD,
    /// Sym scaled power sum `p`.
    P,
    /// Sym complete homogeneous `h`.
    LowerH,
}

impl Tag {
    pub const ALL: [Tag; 6] = [Tag::M, Tag::S, Tag::H, Tag::SD, Tag::P, Tag::LowerH];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::M => "M",
            Tag::S => "S",
            Tag::H => "H",
            Tag::SD => "SD",
            Tag::P => "p",
            Tag::LowerH => "h",
        }
    }

    pub fn algebra(self) -> AlgebraKind {
        match self {
            Tag::M | Tag::S => AlgebraKind::QSym,
            Tag::H | Tag::SD => AlgebraKind::NSym,
            Tag::P | Tag::LowerH => AlgebraKind::Sym,
        }
    }

    fn is_commutative_index(self) -> bool {
        self.algebra() == AlgebraKind::Sym
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, ExprError> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ExprError::UnknownTag(s.to_string()))
    }
}

impl From<QSymBasis> for Tag {
    fn from(b: QSymBasis) -> Self {
        match b {
            QSymBasis::M => Tag::M,
            QSymBasis::S => Tag::S,
        }
    }
}

impl From<NSymBasis> for Tag {
    fn from(b: NSymBasis) -> Self {
        match b {
            NSymBasis::H => Tag::H,
            NSymBasis::SD => Tag::SD,
        }
    }
}

impl From<SymBasis> for Tag {
    fn from(b: SymBasis) -> Self {
        match b {
            SymBasis::P => Tag::P,
            SymBasis::H => Tag::LowerH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    QSym,
    NSym,
    Sym,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::QSym => "qsym",
            AlgebraKind::NSym => "nsym",
            AlgebraKind::Sym => "sym",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown basis tag {0:?}")]
    UnknownTag(String),
    #[error("column {column}: non-positive part {part}")]
    NonPositivePart { column: usize, part: String },
    #[error("column {column}: zero denominator")]
    ZeroDenominator { column: usize },
    #[error("expression mixes bases {0} and {1}")]
    MixedBasis(Tag, Tag),
    #[error("expression has no basis tag")]
    NoBasis,
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Display order on compositions: degree, then length descending, then lex.
pub fn display_order(a: &Composition, b: &Composition) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then(b.len().cmp(&a.len()))
        .then_with(|| a.parts().cmp(b.parts()))
}

/// A parsed expression: a linear combination over one basis tag. The zero
/// expression may carry no tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub tag: Option<Tag>,
    pub terms: Expansion<Composition>,
}

impl Expr {
    pub fn new(tag: Tag, terms: Expansion<Composition>) -> Self {
        let terms = if tag.is_commutative_index() {
            terms.map_keys(Composition::sorted_decreasing)
        } else {
            terms
        };
        Expr { tag: Some(tag), terms }
    }

    pub fn zero() -> Self {
        Expr { tag: None, terms: Expansion::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// The tag, or `default` for an untagged zero.
    pub fn tag_or(&self, default: Tag) -> Tag {
        self.tag.unwrap_or(default)
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&Composition, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|x, y| display_order(x.0, y.0));
        terms
    }

    pub fn to_element(&self, default: Tag) -> Element {
        let tag = self.tag_or(default);
        match tag {
            Tag::M => Element::QSym(QSymElement::new(QSymBasis::M, self.terms.clone())),
            Tag::S => Element::QSym(QSymElement::new(QSymBasis::S, self.terms.clone())),
            Tag::H => Element::NSym(NSymElement::new(NSymBasis::H, self.terms.clone())),
            Tag::SD => Element::NSym(NSymElement::new(NSymBasis::SD, self.terms.clone())),
            Tag::P => Element::Sym(sym(SymBasis::P, &self.terms)),
            Tag::LowerH => Element::Sym(sym(SymBasis::H, &self.terms)),
        }
    }

    pub fn to_json(&self, default: Tag) -> String {
        let doc = JsonExpr {
            basis: self.tag_or(default).as_str().to_string(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(k, c)| JsonTerm { index: k.parts().to_vec(), coeff: fmt_rational(c) })
                .collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ExprError> {
        let doc: JsonExpr = serde_json::from_str(text).map_err(|e| ExprError::Json(e.to_string()))?;
        let tag: Tag = doc.basis.parse()?;
        let mut terms = Expansion::zero();
        for t in doc.terms {
            let key = Composition::new(t.index).map_err(|e| ExprError::Json(e.to_string()))?;
            terms.add_term(key, parse_rational_str(&t.coeff)?);
        }
        Ok(Expr::new(tag, terms))
    }
}

impl From<&QSymElement> for Expr {
    fn from(x: &QSymElement) -> Self {
        Expr::new(x.basis.into(), x.terms.clone())
    }
}

impl From<&NSymElement> for Expr {
    fn from(x: &NSymElement) -> Self {
        Expr::new(x.basis.into(), x.terms.clone())
    }
}

impl From<&SymElement> for Expr {
    fn from(x: &SymElement) -> Self {
        Expr::new(x.basis.into(), x.terms.clone())
    }
}

fn write_coeff_term(f: &mut impl fmt::Write, first: bool, c: &Rational, body: &str) -> fmt::Result {
    let negative = c.is_negative();
    if first {
        if negative {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if negative { " - " } else { " + " })?;
    }
    let magnitude = c.abs();
    if magnitude.is_one() {
        f.write_str(body)
    } else {
        write!(f, "{}*{}", fmt_rational(&magnitude), body)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return f.write_str("0");
        }
        let tag = self.tag.expect("nonzero expressions carry a tag");
        for (i, (k, c)) in self.sorted_terms().into_iter().enumerate() {
            write_coeff_term(f, i == 0, c, &format!("{tag}{k}"))?;
        }
        Ok(())
    }
}

/// Formats a tensor `Σ c (a ⊗ b)` as `c*T[a] ⊗ T[b] + …`.
pub fn format_tensor(tag: Tag, t: &TensorExpansion<Composition>) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = t.iter().collect();
    terms.sort_by(|x, y| display_order(&x.0 .0, &y.0 .0).then_with(|| display_order(&x.0 .1, &y.0 .1)));
    let mut out = String::new();
    for (i, ((a, b), c)) in terms.into_iter().enumerate() {
        write_coeff_term(&mut out, i == 0, c, &format!("{tag}{a} ⊗ {tag}{b}")).expect("string write");
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTerm<I> {
    index: I,
    coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonExpr {
    basis: String,
    terms: Vec<JsonTerm<Vec<usize>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTensor {
    basis: String,
    terms: Vec<JsonTerm<[Vec<usize>; 2]>>,
}

/// Tensor JSON: `{"basis": tag, "terms": [{"index": [[..], [..]], "coeff": "p/q"}]}`.
pub fn tensor_to_json(tag: Tag, t: &TensorExpansion<Composition>) -> String {
    let mut terms: Vec<_> = t.iter().collect();
    terms.sort_by(|x, y| display_order(&x.0 .0, &y.0 .0).then_with(|| display_order(&x.0 .1, &y.0 .1)));
    let doc = JsonTensor {
        basis: tag.as_str().to_string(),
        terms: terms
            .into_iter()
            .map(|((a, b), c)| JsonTerm { index: [a.parts().to_vec(), b.parts().to_vec()], coeff: fmt_rational(c) })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn tensor_from_json(text: &str) -> Result<(Tag, TensorExpansion<Composition>), ExprError> {
    let doc: JsonTensor = serde_json::from_str(text).map_err(|e| ExprError::Json(e.to_string()))?;
    let tag: Tag = doc.basis.parse()?;
    let mut out = Expansion::zero();
    for t in doc.terms {
        let [a, b] = t.index;
        let a = Composition::new(a).map_err(|e| ExprError::Json(e.to_string()))?;
        let b = Composition::new(b).map_err(|e| ExprError::Json(e.to_string()))?;
        out.add_term((a, b), parse_rational_str(&t.coeff)?);
    }
    Ok((tag, out))
}

fn parse_rational_str(s: &str) -> Result<Rational, ExprError> {
    let bad = || ExprError::Json(format!("bad coefficient {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(source: &str) -> Self {
        Parser { chars: source.chars().collect(), pos: 0 }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax { column: self.column(), message: message.into() }
    }

    fn expect(&mut self, want: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self) -> Result<Rational, ExprError> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.digits().ok_or_else(|| self.error("expected a number"))?;
        let mut value = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
        if self.peek() == Some('/') {
            self.pos += 1;
            let column = self.column();
            let den = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
            let den: BigInt = den.parse().expect("digits");
            if den.is_zero() {
                return Err(ExprError::ZeroDenominator { column });
            }
            value /= Rational::from_integer(den);
        }
        Ok(if negative { -value } else { value })
    }

    fn tag(&mut self) -> Result<Tag, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_alphabetic) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(match self.chars.get(self.pos) {
                Some(c) => format!("expected a basis tag, found '{c}'"),
                None => "expected a basis tag, found end of input".into(),
            }));
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        name.parse()
    }

    fn index(&mut self) -> Result<Composition, ExprError> {
        self.expect('[')?;
        let mut parts = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(Composition::empty());
        }
        loop {
            let column = {
                self.skip_ws();
                self.column()
            };
            let negative = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let d = self.digits().ok_or_else(|| self.error("expected a part"))?;
            let value: usize = d.parse().map_err(|_| self.error("part too large"))?;
            if negative || value == 0 {
                let part = if negative { format!("-{d}") } else { d };
                return Err(ExprError::NonPositivePart { column, part });
            }
            parts.push(value);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(Composition::from_parts(&parts));
                }
                Some(c) => return Err(self.error(format!("expected ',' or ']', found '{c}'"))),
                None => return Err(self.error("expected ',' or ']', found end of input")),
            }
        }
    }

    /// `[rational '*'] TAG '[' intlist ']'`, after any sign has been consumed.
    fn term(&mut self) -> Result<(Rational, Tag, Composition), ExprError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                self.expect('*')?;
                r
            }
            _ => Rational::one(),
        };
        let tag = self.tag()?;
        let index = self.index()?;
        Ok((coeff, tag, index))
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some('0') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(Expr::zero());
            }
            self.pos = save;
        }
        let mut tag: Option<Tag> = None;
        let mut terms = Expansion::zero();
        let mut sign = Rational::one();
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (c, t, k) = self.term()?;
            match tag {
                Some(prev) if prev != t => return Err(ExprError::MixedBasis(prev, t)),
                _ => tag = Some(t),
            }
            terms.add_term(k, sign * c);
            match self.peek() {
                None => break,
                Some('+') => sign = Rational::one(),
                Some('-') => sign = -Rational::one(),
                Some(c) => return Err(self.error(format!("expected '+' or '-', found '{c}'"))),
            }
            self.pos += 1;
        }
        let tag = tag.ok_or(ExprError::NoBasis)?;
        Ok(Expr::new(tag, terms))
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, ExprError> {
        Parser::new(s).expr()
    }
}

pub fn parse(s: &str) -> Result<Expr, ExprError> {
    s.parse()
}
