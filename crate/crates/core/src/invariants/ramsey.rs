use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::binomial;

const BUNDLED: &str = include_str!("../../data/ramsey.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyValue {
    pub value: u64,
    pub exactness: Exactness,
}

impl RamseyValue {
    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry {
    value: u64,
    source: String,
}

/// Table of known Ramsey numbers keyed by `(min(s,w), max(s,w))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RamseyTable {
    entries: BTreeMap<(u64, u64), Entry>,
}

impl RamseyTable {
    /// The table shipped with the crate.
    pub fn bundled() -> &'static RamseyTable {
        static TABLE: OnceLock<RamseyTable> = OnceLock::new();
        TABLE.get_or_init(|| RamseyTable::parse(BUNDLED).expect("bundled Ramsey table is well formed"))
    }

    /// Parses lines `s w value source`; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<RamseyTable> {
        let mut table = RamseyTable::default();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.trim();
            if !body.is_empty() && !body.starts_with('#') {
                let fields: Vec<&str> = body.split_whitespace().collect();
                if fields.len() < 3 {
                    return Err(Error::parse(offset, "expected `s w value [source]`"));
                }
                let num = |i: usize| -> Result<u64> {
                    fields[i]
                        .parse()
                        .map_err(|_| Error::parse(offset, format!("`{}` is not an integer", fields[i])))
                };
                let (s, w, value) = (num(0)?, num(1)?, num(2)?);
                if s == 0 || w == 0 || value == 0 {
                    return Err(Error::parse(offset, "Ramsey arguments and values are positive"));
                }
                let source = fields.get(3..).map(|f| f.join(" ")).unwrap_or_default();
                table.entries.insert((s.min(w), s.max(w)), Entry { value, source });
            }
            offset += line.len();
        }
        table.check_monotone()?;
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<RamseyTable> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        RamseyTable::parse(&text)
    }

    fn check_monotone(&self) -> Result<()> {
        for (&(s, w), entry) in &self.entries {
            for (ps, pw) in [(s - 1, w), (s, w - 1)] {
                if ps == 0 || pw == 0 {
                    continue;
                }
                let below = self.value(ps, pw);
                if below.is_exact() && below.value > entry.value {
                    return Err(Error::parse(
                        0,
                        format!("R({s},{w}) = {} is below R({ps},{pw}) = {}", entry.value, below.value),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `R(s, w)`; falls back to the bound `C(s+w-2, s-1)` for untabled entries.
    pub fn value(&self, s: u64, w: u64) -> RamseyValue {
        assert!(s >= 1 && w >= 1, "Ramsey arguments must be positive");
        let (lo, hi) = (s.min(w), s.max(w));
        if lo == 1 {
            return RamseyValue {
                value: 1,
                exactness: Exactness::Exact,
            };
        }
        if lo == 2 {
            return RamseyValue {
                value: hi,
                exactness: Exactness::Exact,
            };
        }
        if let Some(entry) = self.entries.get(&(lo, hi)) {
            return RamseyValue {
                value: entry.value,
                exactness: Exactness::Exact,
            };
        }
        RamseyValue {
            // Saturating keeps the value an upper bound.
            value: binomial(s + w - 2, s - 1).to_u64().unwrap_or(u64::MAX),
            exactness: Exactness::UpperBound,
        }
    }

    pub fn source(&self, s: u64, w: u64) -> Option<&str> {
        self.entries.get(&(s.min(w), s.max(w))).map(|e| e.source.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `R(s, w)` from the bundled table.
pub fn ramsey(s: u64, w: u64) -> RamseyValue {
    RamseyTable::bundled().value(s, w)
}
