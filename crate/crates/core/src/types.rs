//! Disjoint types: balanced binary words recording how two disjoint
//! `n`-sets of ordinals interleave.
//!
//! A type of width `n` is a word of length `2n` with exactly `n` zeros and
//! `n` ones. Position `i` is `0` when the `i`-th element of the merged,
//! increasing enumeration of `a ∪ b` lies in `a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("sets are not disjoint")]
    NotDisjoint,
    #[error("sets have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("sets are empty")]
    Empty,
    #[error("word {0:?} is not a balanced nonempty binary word")]
    Unbalanced(String),
    #[error("bad type notation {0:?}")]
    Syntax(String),
    #[error("Specker type t^{n}_{s} needs 1 <= s < n")]
    SpeckerRange { n: usize, s: usize },
}

/// A disjoint type, stored as its binary word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisjointType {
    word: Vec<bool>,
}

impl DisjointType {
    /// Validates a word given as booleans (`false` = 0).
    pub fn from_bits(word: Vec<bool>) -> Result<Self, TypeError> {
        let ones = word.iter().filter(|&&b| b).count();
        if word.is_empty() || ones * 2 != word.len() {
            return Err(TypeError::Unbalanced(bits_to_string(&word)));
        }
        Ok(Self { word })
    }

    pub fn bits(&self) -> &[bool] {
        &self.word
    }

    pub fn width(&self) -> usize {
        self.word.len() / 2
    }

    /// The opposite type: every bit flipped.
    pub fn opposite(&self) -> Self {
        Self {
            word: self.word.iter().map(|b| !b).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self { word }
    }

    /// `t` or its opposite.
    pub fn matches_either(&self, other: &Self) -> bool {
        self == other || (self.word.len() == other.word.len() && self.word.iter().zip(&other.word).all(|(a, b)| a != b))
    }

    /// Depth: the least `k < n` such that, for a realization `(a, b)`,
    /// either `a < b(k)` or `b < a(k)`.
    pub fn depth(&self) -> usize {
        let (a, b) = realize(self);
        let n = self.width();
        (0..n)
            .find(|&k| a[n - 1] < b[k] || b[n - 1] < a[k])
            .expect("k = n - 1 always qualifies")
    }

    /// All types of the given width, in lexicographic word order.
    pub fn all_of_width(n: usize) -> impl Iterator<Item = DisjointType> {
        let len = 2 * n;
        (0u64..(1u64 << len))
            .filter(move |m| m.count_ones() as usize == n)
            .map(move |m| DisjointType {
                word: (0..len).map(|i| m >> (len - 1 - i) & 1 == 1).collect(),
            })
    }
}

fn bits_to_string(word: &[bool]) -> String {
    word.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for DisjointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.word))
    }
}

impl fmt::Debug for DisjointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DisjointType({self})")
    }
}

/// Accepts a raw binary word (`0001010111`) or Specker notation (`t^5_2`).
impl FromStr for DisjointType {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("t^") {
            let (n, sub) = rest
                .split_once('_')
                .ok_or_else(|| TypeError::Syntax(s.to_string()))?;
            let n = n.parse().map_err(|_| TypeError::Syntax(s.to_string()))?;
            let sub = sub.parse().map_err(|_| TypeError::Syntax(s.to_string()))?;
            return specker_type(n, sub);
        }
        let word = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(TypeError::Syntax(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_bits(word)
    }
}

impl Serialize for DisjointType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DisjointType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `type(a, b)` for disjoint sets of equal size. The inputs need not be
/// sorted but must not contain duplicates.
pub fn type_of<T: Ord>(a: &[T], b: &[T]) -> Result<DisjointType, TypeError> {
    if a.len() != b.len() {
        return Err(TypeError::SizeMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(TypeError::Empty);
    }
    let mut merged: Vec<(&T, bool)> = a
        .iter()
        .map(|x| (x, false))
        .chain(b.iter().map(|x| (x, true)))
        .collect();
    merged.sort();
    if merged.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(TypeError::NotDisjoint);
    }
    Ok(DisjointType {
        word: merged.into_iter().map(|(_, side)| side).collect(),
    })
}

/// Like [`type_of`], but yields `None` when the pair has no type.
pub fn try_type_of<T: Ord>(a: &[T], b: &[T]) -> Option<DisjointType> {
    type_of(a, b).ok()
}

/// The canonical realization: `a` is the positions of zeros and `b` the
/// positions of ones in `0..2n`.
pub fn realize(t: &DisjointType) -> (Vec<u64>, Vec<u64>) {
    let mut a = Vec::with_capacity(t.width());
    let mut b = Vec::with_capacity(t.width());
    for (i, &bit) in t.word.iter().enumerate() {
        if bit {
            b.push(i as u64);
        } else {
            a.push(i as u64);
        }
    }
    (a, b)
}

/// The Specker type `t^n_s`: `s` zeros, `n − s` copies of `01`, `s` ones.
pub fn specker_type(n: usize, s: usize) -> Result<DisjointType, TypeError> {
    if s < 1 || s >= n {
        return Err(TypeError::SpeckerRange { n, s });
    }
    let word = (0..2 * n)
        .map(|i| {
            if i < s {
                false
            } else if i < 2 * n - s {
                (i - s) % 2 == 1
            } else {
                true
            }
        })
        .collect();
    Ok(DisjointType { word })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DisjointType {
        s.parse().unwrap()
    }

    #[test]
    fn type_of_examples() {
        assert_eq!(type_of(&[0, 2, 4], &[1, 3, 5]).unwrap(), t("010101"));
        assert_eq!(type_of(&[1, 5], &[2, 7]).unwrap(), t("0101"));
        assert_eq!(type_of(&[5, 1], &[7, 2]).unwrap(), t("0101"));
        assert_eq!(type_of(&[1, 2], &[2, 7]), Err(TypeError::NotDisjoint));
        assert_eq!(type_of(&[1], &[2, 7]), Err(TypeError::SizeMismatch(1, 2)));
        assert_eq!(type_of::<u32>(&[], &[]), Err(TypeError::Empty));
    }

    #[test]
    fn word_operations() {
        assert_eq!(t("0011").opposite(), t("1100"));
        assert_eq!(t("01").concat(&t("0011")), t("010011"));
        assert_eq!(t("01").concat(&t("0011")).width(), 3);
        assert!(t("0011").matches_either(&t("1100")));
        assert!(!t("0011").matches_either(&t("0101")));
        assert!(!t("01").matches_either(&t("0011")));
    }

    #[test]
    fn specker_words() {
        assert_eq!(specker_type(5, 2).unwrap().to_string(), "0001010111");
        assert_eq!(specker_type(3, 1).unwrap().to_string(), "001011");
        assert_eq!(t("t^3_1"), t("001011"));
        assert!(specker_type(3, 3).is_err());
        assert!(specker_type(3, 0).is_err());
        for n in 2..=8 {
            for s in 1..n {
                assert_eq!(specker_type(n, s).unwrap().width(), n);
            }
        }
    }

    #[test]
    fn depth_values() {
        assert_eq!(specker_type(5, 2).unwrap().depth(), 2);
        for n in 2..=8 {
            for s in 1..n {
                assert_eq!(specker_type(n, s).unwrap().depth(), n - s - 1, "t^{n}_{s}");
            }
        }
        assert_eq!(t("01").depth(), 0);
        assert_eq!(t("0011").depth(), 0);
        assert_eq!(t("0101").depth(), 1);
    }

    #[test]
    fn realize_examples() {
        assert_eq!(realize(&t("0101")), (vec![0, 2], vec![1, 3]));
        assert_eq!(realize(&t("0011")), (vec![0, 1], vec![2, 3]));
    }

    #[test]
    fn exhaustive_enumeration_counts() {
        // C(2n, n)
        for (n, count) in [(1, 2), (2, 6), (3, 20), (4, 70), (5, 252)] {
            let all: Vec<_> = DisjointType::all_of_width(n).collect();
            assert_eq!(all.len(), count);
            for ty in &all {
                assert_eq!(DisjointType::from_bits(ty.bits().to_vec()).as_ref(), Ok(ty));
                let (a, b) = realize(ty);
                assert_eq!(&type_of(&a, &b).unwrap(), ty);
            }
        }
    }

    #[test]
    fn rejects_unbalanced() {
        assert!("0111".parse::<DisjointType>().is_err());
        assert!("".parse::<DisjointType>().is_err());
        assert!("0a".parse::<DisjointType>().is_err());
        assert!("t^3".parse::<DisjointType>().is_err());
    }
}
