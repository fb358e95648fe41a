//! Published chi-binding functions, kept as a cross-check on our own
//! invariants. A failure here points at a bug in this crate, not in the
//! cited result.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::detectors::{is_even_hole_free, is_free, PatternSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{fmt_ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form")]
pub enum Binding {
    /// `x -> num x / den`.
    Linear { num: i64, den: i64 },
    /// `x -> ceil((num x + offset) / den)`.
    CeilLinear { num: i64, offset: i64, den: i64 },
    /// `x -> base^(x-1)`.
    Power { base: u64 },
}

impl Binding {
    pub fn value(&self, omega: usize) -> Rational {
        let x = BigInt::from(omega);
        match *self {
            Binding::Linear { num, den } => Rational::new(x * num, BigInt::from(den)),
            Binding::CeilLinear { num, offset, den } => Rational::new(x * num + offset, BigInt::from(den)).ceil(),
            Binding::Power { base } => {
                if omega == 0 {
                    return Rational::zero();
                }
                let mut v = BigInt::one();
                for _ in 1..omega {
                    v *= base;
                }
                Rational::from_integer(v)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum GraphClass {
    Free { patterns: Vec<String> },
    EvenHoleFree,
}

impl GraphClass {
    pub fn contains(&self, g: &Graph) -> Result<bool> {
        match self {
            GraphClass::Free { patterns } => {
                let parsed = patterns
                    .iter()
                    .map(|p| p.parse::<PatternSpec>())
                    .collect::<Result<Vec<_>>>()?;
                is_free(g, &parsed)
            }
            GraphClass::EvenHoleFree => is_even_hole_free(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteratureBound {
    pub id: &'static str,
    pub citation: &'static str,
    pub class: GraphClass,
    pub binding: Binding,
}

impl LiteratureBound {
    /// `chi <= f(omega)`.
    pub fn holds(&self, chi: usize, omega: usize) -> bool {
        Rational::from_integer(BigInt::from(chi)) <= self.binding.value(omega)
    }

    /// `chi / f(omega)`, or `None` when `f(omega) = 0`.
    pub fn ratio(&self, chi: usize, omega: usize) -> Option<Rational> {
        let f = self.binding.value(omega);
        (!f.is_zero()).then(|| Rational::from_integer(BigInt::from(chi)) / f)
    }

    pub fn describe(&self, omega: usize) -> String {
        fmt_ratio(&self.binding.value(omega))
    }
}

fn free(patterns: &[&str]) -> GraphClass {
    GraphClass::Free {
        patterns: patterns.iter().map(|p| p.to_string()).collect(),
    }
}

/// All registry entries, in a fixed order.
pub fn registry() -> Vec<LiteratureBound> {
    vec![
        LiteratureBound {
            id: "p5-c4-linear",
            citation: "Fouquet, Giakoumakis, Maire, Thuillier (1995)",
            class: free(&["P5", "C4"]),
            binding: Binding::Linear { num: 3, den: 2 },
        },
        LiteratureBound {
            id: "p5-c4-five-quarters",
            citation: "Brause, Geißer, Schiermeyer (2022)",
            class: free(&["P5", "C4"]),
            binding: Binding::CeilLinear {
                num: 5,
                offset: -1,
                den: 4,
            },
        },
        LiteratureBound {
            id: "p6-c4-linear",
            citation: "Gaspers, Huang (2019)",
            class: free(&["P6", "C4"]),
            binding: Binding::Linear { num: 3, den: 2 },
        },
        LiteratureBound {
            id: "p6-c4-five-quarters",
            citation: "Karthick, Maffray (2019)",
            class: free(&["P6", "C4"]),
            binding: Binding::CeilLinear {
                num: 5,
                offset: 0,
                den: 4,
            },
        },
        LiteratureBound {
            id: "p7-c4-c5",
            citation: "Huang (2024)",
            class: free(&["P7", "C4", "C5"]),
            binding: Binding::CeilLinear {
                num: 11,
                offset: 0,
                den: 9,
            },
        },
        LiteratureBound {
            id: "fork-c4",
            citation: "Chudnovsky, Huang, Karthick, Kaufmann (2021)",
            class: free(&["Broom(3,2)", "C4"]),
            binding: Binding::CeilLinear {
                num: 3,
                offset: 0,
                den: 2,
            },
        },
        LiteratureBound {
            id: "even-hole-free",
            citation: "Chudnovsky, Seymour (2019)",
            class: GraphClass::EvenHoleFree,
            binding: Binding::CeilLinear {
                num: 2,
                offset: -1,
                den: 1,
            },
        },
        LiteratureBound {
            id: "p5-exponential",
            citation: "Gravier, Hoàng, Maffray (2003)",
            class: free(&["P5"]),
            binding: Binding::Power { base: 3 },
        },
        LiteratureBound {
            id: "p6-exponential",
            citation: "Gravier, Hoàng, Maffray (2003)",
            class: free(&["P6"]),
            binding: Binding::Power { base: 4 },
        },
    ]
}

pub fn lookup(id: &str) -> Result<LiteratureBound> {
    registry()
        .into_iter()
        .find(|b| b.id == id)
        .ok_or_else(|| Error::parameter("entry", format!("unknown literature entry `{id}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn binding_values() {
        assert_eq!(Binding::Linear { num: 3, den: 2 }.value(3), rat(9, 2));
        assert_eq!(
            Binding::CeilLinear {
                num: 5,
                offset: -1,
                den: 4
            }
            .value(3),
            rat(4, 1)
        );
        assert_eq!(
            Binding::CeilLinear {
                num: 2,
                offset: -1,
                den: 1
            }
            .value(4),
            rat(7, 1)
        );
        assert_eq!(Binding::Power { base: 3 }.value(1), rat(1, 1));
        assert_eq!(Binding::Power { base: 3 }.value(3), rat(9, 1));
    }

    #[test]
    fn ids_are_unique() {
        let ids: Vec<&str> = registry().iter().map(|b| b.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn c5_is_in_the_p5_c4_class() {
        let c5 = crate::FamilySpec::Cycle(5).generate().unwrap();
        let entry = lookup("p5-c4-five-quarters").unwrap();
        assert!(entry.class.contains(&c5).unwrap());
        // chi(C5) = 3 = ceil((5*2-1)/4)
        assert!(entry.holds(3, 2));
        assert!(!entry.holds(4, 2));
    }
}
