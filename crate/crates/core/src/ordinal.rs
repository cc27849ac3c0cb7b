//! Ordinals below `ω^ω` in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of `(exponent, coefficient)` terms with
//! strictly decreasing exponents, so `ω^2·3 + ω + 4` is
//! `[(2, 3), (1, 1), (0, 4)]` and zero is the empty list. Because the terms
//! are kept in normal form, the derived lexicographic order on the term list
//! coincides with the ordinal order.
//!
//! The canonical spelling uses `w` for ω, `^` for exponents, `*` for
//! coefficients and `+` between terms, with no whitespace:
//! `w^2*3+w+4`. Zero is spelled `0`.
//!
//! # Enumerations of initial segments
//!
//! [`enum_below`] is the fixed bijection `e_β : ℕ → β` used by the graph
//! constructions. For `β = ω·b + r` with `b ≥ 1`:
//!
//! * indices `i < r` map to the finite tail, `e_β(i) = ω·b + i`;
//! * every other index `j = i − r` is split by residue,
//!   `e_β(i) = ω·(j mod b) + ⌊j / b⌋`.
//!
//! So the ω-copies of β are interleaved round-robin: `e_ω(i) = i`,
//! `e_{ω·2}(2m) = m`, `e_{ω·2}(2m+1) = ω + m`. In particular the limit
//! `ω·k < ω·b` is hit by exactly the index `r + k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A Cantor-normal-form ordinal below `ω^ω`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ordinal {
    // Invariant: exponents strictly decreasing, coefficients >= 1.
    terms: Vec<(u32, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseOrdinalError {
    #[error("empty ordinal expression")]
    Empty,
    #[error("syntax error at byte {pos} in {text:?}")]
    Syntax { text: String, pos: usize },
    #[error("exponents must strictly decrease in {0:?}")]
    NonDecreasing(String),
    #[error("zero coefficient in {0:?}")]
    ZeroCoefficient(String),
    #[error("number out of range in {0:?}")]
    Overflow(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("{0} is finite; the enumeration needs an infinite ordinal")]
    Finite(Ordinal),
    #[error("{0} is at least w^2; enumerations are only provided below w^2")]
    Unsupported(Ordinal),
    #[error("{alpha} is not below {beta}")]
    NotBelow { alpha: Ordinal, beta: Ordinal },
    #[error("{0} is not an ordinal below the universe bound {1}")]
    OutOfUniverse(Ordinal, Ordinal),
    #[error("universe needs M >= 2 and W >= 1 (got M = {m}, W = {w})")]
    BadUniverse { m: u64, w: usize },
}

impl Ordinal {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(0, n)] }
        }
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: u32) -> Self {
        Self {
            terms: vec![(exp, 1)],
        }
    }

    /// `ω·k + c`.
    pub fn omega_mul_plus(k: u64, c: u64) -> Self {
        let mut terms = Vec::with_capacity(2);
        if k > 0 {
            terms.push((1, k));
        }
        if c > 0 {
            terms.push((0, c));
        }
        Self { terms }
    }

    /// `ω·k`.
    pub fn omega_mul(k: u64) -> Self {
        Self::omega_mul_plus(k, 0)
    }

    /// Builds an ordinal from raw terms, checking normal form.
    pub fn from_terms(terms: Vec<(u32, u64)>) -> Option<Self> {
        let ordered = terms.windows(2).all(|w| w[0].0 > w[1].0);
        let positive = terms.iter().all(|&(_, c)| c > 0);
        (ordered && positive).then_some(Self { terms })
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e == 0)
    }

    /// True iff the ordinal is nonzero and has no finite tail.
    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(&(e, _)) if e > 0)
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some(&(0, _)))
    }

    pub fn succ(&self) -> Self {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => *c += 1,
            _ => terms.push((0, 1)),
        }
        Self { terms }
    }

    /// `self + n` for a natural number `n`.
    pub fn plus_nat(&self, n: u64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => *c += n,
            _ => terms.push((0, n)),
        }
        Self { terms }
    }

    /// The finite part: the coefficient of `ω^0`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(&(0, c)) => c,
            _ => 0,
        }
    }

    /// Decomposes an ordinal below `ω^2` as `(k, c)` with `self = ω·k + c`.
    pub fn as_omega_linear(&self) -> Option<(u64, u64)> {
        match self.terms.as_slice() {
            [] => Some((0, 0)),
            [(0, c)] => Some((0, *c)),
            [(1, k)] => Some((*k, 0)),
            [(1, k), (0, c)] => Some((*k, *c)),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }
}

/// Three-way ordinal comparison.
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self) -> ParseOrdinalError {
        ParseOrdinalError::Syntax {
            text: self.text.to_string(),
            pos: self.pos,
        }
    }

    fn nat(&mut self) -> Result<u64, ParseOrdinalError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax());
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| ParseOrdinalError::Overflow(self.text.to_string()))
    }

    fn term(&mut self) -> Result<(u32, u64), ParseOrdinalError> {
        if self.eat(b'w') {
            let exp = if self.eat(b'^') {
                u32::try_from(self.nat()?)
                    .map_err(|_| ParseOrdinalError::Overflow(self.text.to_string()))?
            } else {
                1
            };
            let coef = if self.eat(b'*') { self.nat()? } else { 1 };
            Ok((exp, coef))
        } else if matches!(self.peek(), Some(b'0'..=b'9')) {
            Ok((0, self.nat()?))
        } else {
            Err(self.syntax())
        }
    }
}

/// Parses the notation `term ('+' term)* | '0'` where a term is `w`,
/// `w^e`, `w*c`, `w^e*c` or a bare natural number.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseOrdinalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseOrdinalError::Empty);
    }
    if text == "0" {
        return Ok(Ordinal::zero());
    }
    let mut cur = Cursor {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(u32, u64)> = Vec::new();
    loop {
        let (e, c) = cur.term()?;
        if c == 0 {
            return Err(ParseOrdinalError::ZeroCoefficient(text.to_string()));
        }
        if let Some(&(prev, _)) = terms.last() {
            if e >= prev {
                return Err(ParseOrdinalError::NonDecreasing(text.to_string()));
            }
        }
        terms.push((e, c));
        if cur.peek().is_none() {
            break;
        }
        if !cur.eat(b'+') {
            return Err(cur.syntax());
        }
    }
    Ok(Ordinal { terms })
}

/// Canonical spelling; inverse of [`parse_ordinal`].
pub fn format_ordinal(a: &Ordinal) -> String {
    a.to_string()
}

impl FromStr for Ordinal {
    type Err = ParseOrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_ordinal(&s).map_err(serde::de::Error::custom)
    }
}

fn linear_shape(beta: &Ordinal) -> Result<(u64, u64), OrdinalError> {
    let (b, r) = beta
        .as_omega_linear()
        .ok_or_else(|| OrdinalError::Unsupported(beta.clone()))?;
    if b == 0 {
        return Err(OrdinalError::Finite(beta.clone()));
    }
    Ok((b, r))
}

/// The bijection `e_β : ℕ → β` described in the module docs.
pub fn enum_below(beta: &Ordinal, i: u64) -> Result<Ordinal, OrdinalError> {
    let (b, r) = linear_shape(beta)?;
    if i < r {
        return Ok(Ordinal::omega_mul_plus(b, i));
    }
    let j = i - r;
    Ok(Ordinal::omega_mul_plus(j % b, j / b))
}

/// The inverse of [`enum_below`]: the unique `i` with `e_β(i) = α`.
pub fn enum_inverse(beta: &Ordinal, alpha: &Ordinal) -> Result<u64, OrdinalError> {
    let (b, r) = linear_shape(beta)?;
    if alpha >= beta {
        return Err(OrdinalError::NotBelow {
            alpha: alpha.clone(),
            beta: beta.clone(),
        });
    }
    let (k, c) = alpha
        .as_omega_linear()
        .expect("alpha below beta < w^2 is linear");
    if k == b {
        return Ok(c);
    }
    Ok(r + c * b + k)
}

/// A finite stand-in for the countable ordinals: everything below `ω·M`,
/// with ladder prefixes of width `W` at each limit `ω·k`, `1 ≤ k < M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    m: u64,
    prefix_width: usize,
}

impl Universe {
    pub fn new(m: u64, prefix_width: usize) -> Result<Self, OrdinalError> {
        if m < 2 || prefix_width < 1 {
            return Err(OrdinalError::BadUniverse { m, w: prefix_width });
        }
        Ok(Self { m, prefix_width })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn prefix_width(&self) -> usize {
        self.prefix_width
    }

    /// The exclusive bound `ω·M`.
    pub fn bound(&self) -> Ordinal {
        Ordinal::omega_mul(self.m)
    }

    pub fn contains(&self, a: &Ordinal) -> bool {
        *a < self.bound()
    }

    /// The limits `ω, ω·2, …, ω·(M−1)` in increasing order.
    pub fn limits(&self) -> impl Iterator<Item = Ordinal> + '_ {
        (1..self.m).map(Ordinal::omega_mul)
    }

    pub fn limit_count(&self) -> usize {
        (self.m - 1) as usize
    }

    /// Position of a limit of the universe in [`Universe::limits`].
    pub fn limit_index(&self, a: &Ordinal) -> Option<usize> {
        match a.as_omega_linear()? {
            (k, 0) if k >= 1 && k < self.m => Some((k - 1) as usize),
            _ => None,
        }
    }

    /// `lim(β)` restricted to the universe, increasing.
    pub fn limits_below<'a>(&'a self, beta: &'a Ordinal) -> impl Iterator<Item = Ordinal> + 'a {
        self.limits().take_while(move |a| a < beta)
    }
}
