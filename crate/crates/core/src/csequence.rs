//! Ladder systems (C-sequences) truncated to a fixed prefix width.
//!
//! Each limit `α` of a [`Universe`] carries the first `W` entries of its
//! ladder `C_α`, a strictly increasing sequence of ordinals below `α`.
//! Reading past the stored prefix is an error ([`LadderError::Horizon`]),
//! never a silent truncation.

use std::collections::BTreeMap;
use std::ops::Range;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{Ordinal, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("{0} is not a limit of the universe")]
    NotALimit(Ordinal),
    #[error("index {index} past the ladder prefix of {alpha} (width {width})")]
    Horizon {
        alpha: Ordinal,
        index: usize,
        width: usize,
    },
    #[error("ladder at {alpha} is invalid: {reason}")]
    Invalid { alpha: Ordinal, reason: String },
    #[error("family member #{index} {set:?} cannot be placed: no unused limit above its maximum")]
    Unplaceable { index: usize, set: Vec<Ordinal> },
    #[error("family member #{index} has {len} entries, more than the prefix width {width}")]
    TooWide {
        index: usize,
        len: usize,
        width: usize,
    },
    #[error("ladder map does not describe a universe: {0}")]
    Shape(String),
}

/// `|C_α ∩ δ|` as far as the stored prefix can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountBound {
    Exact(usize),
    /// Every stored entry lies below δ; the true count is at least this.
    AtLeast(usize),
}

impl CountBound {
    pub fn lower(self) -> usize {
        match self {
            CountBound::Exact(n) | CountBound::AtLeast(n) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderSystem {
    universe: Universe,
    // prefixes[i] belongs to the limit w*(i+1)
    prefixes: Vec<Vec<Ordinal>>,
}

impl LadderSystem {
    /// Builds and validates a ladder system from explicit prefixes, one per
    /// limit in increasing order.
    pub fn from_prefixes(universe: Universe, prefixes: Vec<Vec<Ordinal>>) -> Result<Self, LadderError> {
        if prefixes.len() != universe.limit_count() {
            return Err(LadderError::Shape(format!(
                "{} prefixes for {} limits",
                prefixes.len(),
                universe.limit_count()
            )));
        }
        let system = Self { universe, prefixes };
        system.validate()?;
        Ok(system)
    }

    /// `C_{ω·(k+1)} = (ω·k, ω·k+1, …, ω·k+W−1)`.
    pub fn canonical(universe: &Universe) -> Self {
        let w = universe.prefix_width() as u64;
        let prefixes = (0..universe.limit_count() as u64)
            .map(|k| (0..w).map(|c| Ordinal::omega_mul_plus(k, c)).collect())
            .collect();
        Self {
            universe: universe.clone(),
            prefixes,
        }
    }

    /// Places each set of `family` as an initial segment of a dedicated
    /// ladder: the least unused limit above the set's maximum, with the rest
    /// of the prefix filled by consecutive successors of that maximum. Limits
    /// not claimed by the family keep their canonical ladder.
    pub fn rich(universe: &Universe, family: &[Vec<Ordinal>]) -> Result<Self, LadderError> {
        let w = universe.prefix_width();
        let mut system = Self::canonical(universe);
        let mut used = vec![false; universe.limit_count()];
        for (index, raw) in family.iter().enumerate() {
            let mut set = raw.clone();
            set.sort();
            set.dedup();
            if set.len() > w {
                return Err(LadderError::TooWide {
                    index,
                    len: set.len(),
                    width: w,
                });
            }
            let slot = universe
                .limits()
                .enumerate()
                .find(|(i, beta)| !used[*i] && set.last().is_none_or(|m| m < beta))
                .map(|(i, _)| i)
                .ok_or_else(|| LadderError::Unplaceable {
                    index,
                    set: set.clone(),
                })?;
            used[slot] = true;
            let start = set.last().map(Ordinal::succ).unwrap_or_else(Ordinal::zero);
            let fill = w - set.len();
            set.extend((0..fill as u64).map(|j| start.plus_nat(j)));
            system.prefixes[slot] = set;
        }
        system.validate()?;
        Ok(system)
    }

    /// A seeded ladder system whose prefixes are spread over the whole of
    /// `α`: each entry is `ω·j + c` with `j < k` uniform for `α = ω·k` and
    /// `c < 2W` uniform, drawn without replacement and sorted. Distinct
    /// limits therefore interleave in many different types.
    pub fn seeded(universe: &Universe, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = universe.prefix_width();
        let span = 2 * w as u64;
        let prefixes = (1..=universe.limit_count() as u64)
            .map(|k| {
                let pool = (k * span) as usize;
                let mut entries: Vec<Ordinal> = sample(&mut rng, pool, w)
                    .into_iter()
                    .map(|x| Ordinal::omega_mul_plus(x as u64 / span, x as u64 % span))
                    .collect();
                entries.sort();
                entries
            })
            .collect();
        Self {
            universe: universe.clone(),
            prefixes,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn width(&self) -> usize {
        self.universe.prefix_width()
    }

    /// Checks every prefix: right length, strictly increasing, below its limit.
    pub fn validate(&self) -> Result<(), LadderError> {
        let w = self.width();
        for (alpha, prefix) in self.universe.limits().zip(&self.prefixes) {
            let reason = if prefix.len() != w {
                Some(format!("prefix has {} entries, expected {w}", prefix.len()))
            } else if prefix.windows(2).any(|p| p[0] >= p[1]) {
                Some("prefix is not strictly increasing".to_string())
            } else if prefix.last().is_some_and(|x| *x >= alpha) {
                Some("prefix reaches the limit itself".to_string())
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(LadderError::Invalid { alpha, reason });
            }
        }
        Ok(())
    }

    pub fn prefix(&self, alpha: &Ordinal) -> Result<&[Ordinal], LadderError> {
        let i = self
            .universe
            .limit_index(alpha)
            .ok_or_else(|| LadderError::NotALimit(alpha.clone()))?;
        Ok(&self.prefixes[i])
    }

    /// `C_α(i)`.
    pub fn c_at(&self, alpha: &Ordinal, i: usize) -> Result<&Ordinal, LadderError> {
        let p = self.prefix(alpha)?;
        p.get(i).ok_or_else(|| LadderError::Horizon {
            alpha: alpha.clone(),
            index: i,
            width: p.len(),
        })
    }

    /// `C_α[n]`: the first `n` entries.
    pub fn c_prefix(&self, alpha: &Ordinal, n: usize) -> Result<&[Ordinal], LadderError> {
        self.c_slice(alpha, 0..n)
    }

    /// `C_α[I]` for an interval of indices `I`.
    pub fn c_slice(&self, alpha: &Ordinal, idx: Range<usize>) -> Result<&[Ordinal], LadderError> {
        let p = self.prefix(alpha)?;
        if idx.end > p.len() {
            return Err(LadderError::Horizon {
                alpha: alpha.clone(),
                index: idx.end - 1,
                width: p.len(),
            });
        }
        Ok(&p[idx])
    }

    /// `|C_α ∩ δ|`, exact whenever `δ` does not exceed the last stored entry.
    pub fn count_below(&self, alpha: &Ordinal, delta: &Ordinal) -> Result<CountBound, LadderError> {
        let p = self.prefix(alpha)?;
        let n = p.partition_point(|x| x < delta);
        if p.last().is_some_and(|last| delta <= last) {
            Ok(CountBound::Exact(n))
        } else {
            Ok(CountBound::AtLeast(n))
        }
    }

    /// Iterates `(α, prefix)` over all limits in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (Ordinal, &[Ordinal])> {
        self.universe
            .limits()
            .zip(self.prefixes.iter().map(Vec::as_slice))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ladder systems always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, LadderError> {
        serde_json::from_str(text).map_err(|e| LadderError::Shape(e.to_string()))
    }
}

impl Serialize for LadderSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.prefixes.len()))?;
        for (alpha, prefix) in self.iter() {
            map.serialize_entry(&alpha, prefix)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LadderSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let map = BTreeMap::<Ordinal, Vec<Ordinal>>::deserialize(d)?;
        let m = map.len() as u64 + 1;
        let w = map.values().next().map_or(0, Vec::len);
        let universe = Universe::new(m, w).map_err(D::Error::custom)?;
        let mut prefixes = Vec::with_capacity(map.len());
        for (alpha, (key, prefix)) in universe.limits().zip(map) {
            if alpha != key {
                return Err(D::Error::custom(format!("expected ladder for {alpha}, found {key}")));
            }
            prefixes.push(prefix);
        }
        LadderSystem::from_prefixes(universe, prefixes).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn os(v: &[&str]) -> Vec<Ordinal> {
        v.iter().map(|s| o(s)).collect()
    }

    #[test]
    fn canonical_rule() {
        let u = Universe::new(16, 5).unwrap();
        let l = LadderSystem::canonical(&u);
        l.validate().unwrap();
        assert_eq!(l.prefix(&o("w*2")).unwrap(), os(&["w", "w+1", "w+2", "w+3", "w+4"]).as_slice());
        assert_eq!(l.c_at(&o("w"), 3).unwrap(), &o("3"));
        assert_eq!(l.c_at(&o("w*2"), 0).unwrap(), &o("w"));
        assert_eq!(l.c_prefix(&o("w*2"), 3).unwrap(), os(&["w", "w+1", "w+2"]).as_slice());
        assert!(matches!(l.c_at(&o("w"), 5), Err(LadderError::Horizon { .. })));
        assert!(matches!(l.c_prefix(&o("w"), 6), Err(LadderError::Horizon { .. })));
        assert!(matches!(l.c_at(&o("w+1"), 0), Err(LadderError::NotALimit(_))));
    }

    #[test]
    fn rich_places_initial_segments() {
        let u = Universe::new(4, 4).unwrap();
        let l = LadderSystem::rich(&u, &[os(&["0", "5"])]).unwrap();
        assert!(l.iter().any(|(_, p)| p.starts_with(&os(&["0", "5"]))));
        assert_eq!(l.prefix(&o("w")).unwrap(), os(&["0", "5", "6", "7"]).as_slice());

        let l = LadderSystem::rich(&u, &[os(&["0"]), os(&["1"])]).unwrap();
        let hits: Vec<_> = [os(&["0"]), os(&["1"])]
            .iter()
            .map(|b| l.iter().position(|(_, p)| p.starts_with(b)).unwrap())
            .collect();
        assert_ne!(hits[0], hits[1]);

        assert_eq!(LadderSystem::rich(&u, &[]).unwrap(), LadderSystem::canonical(&u));
    }

    #[test]
    fn rich_reports_unplaceable() {
        let u = Universe::new(3, 4).unwrap();
        let err = LadderSystem::rich(&u, &[os(&["w+3"]), os(&["w+4"])]).unwrap_err();
        assert!(matches!(err, LadderError::Unplaceable { index: 1, .. }));
        let err = LadderSystem::rich(&u, &[os(&["0", "1", "2", "3", "4"])]).unwrap_err();
        assert!(matches!(err, LadderError::TooWide { .. }));
    }

    #[test]
    fn seeded_is_valid_and_deterministic() {
        let u = Universe::new(32, 16).unwrap();
        let a = LadderSystem::seeded(&u, 7);
        a.validate().unwrap();
        assert_eq!(a, LadderSystem::seeded(&u, 7));
        assert_ne!(a, LadderSystem::seeded(&u, 8));
    }

    #[test]
    fn count_below_respects_horizon() {
        let u = Universe::new(4, 3).unwrap();
        let l = LadderSystem::canonical(&u);
        assert_eq!(l.count_below(&o("w*2"), &o("w+1")).unwrap(), CountBound::Exact(1));
        assert_eq!(l.count_below(&o("w*2"), &o("w+2")).unwrap(), CountBound::Exact(2));
        assert_eq!(l.count_below(&o("w*2"), &o("0")).unwrap(), CountBound::Exact(0));
        assert_eq!(l.count_below(&o("w*2"), &o("w+9")).unwrap(), CountBound::AtLeast(3));
    }

    #[test]
    fn from_prefixes_rejects_bad_ladders() {
        let u = Universe::new(3, 2).unwrap();
        assert!(LadderSystem::from_prefixes(u.clone(), vec![os(&["1", "0"]), os(&["0", "1"])]).is_err());
        assert!(LadderSystem::from_prefixes(u.clone(), vec![os(&["0", "1"]), os(&["0", "w*2"])]).is_err());
        assert!(LadderSystem::from_prefixes(u.clone(), vec![os(&["0", "1"])]).is_err());
        assert!(LadderSystem::from_prefixes(u, vec![os(&["0", "1"]), os(&["0", "w"])]).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let u = Universe::new(12, 4).unwrap();
        let l = LadderSystem::seeded(&u, 3);
        let text = l.to_json();
        assert!(text.contains("\"w*11\""));
        assert_eq!(LadderSystem::from_json(&text).unwrap(), l);
    }
}
