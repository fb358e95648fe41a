use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, parse_graph6, parse_graph_file, FamilySpec, Graph, EXHAUSTIVE_LIMIT};
use crate::scalar::{fmt_ratio, parse_ratio, Rational};

/// Where a scan takes its graphs from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// All isomorphism classes on `0..=n` vertices, smallest order first.
    Enum(usize),
    /// graph6 or sparse6, one per line.
    File(PathBuf),
    /// `count` graphs `Random(n, p, seed + i)`.
    Random {
        n: usize,
        p: Rational,
        seed: u64,
        count: usize,
    },
    /// A single graph6 string.
    Graph6(String),
    /// A single family expression.
    Family(FamilySpec),
}

impl Source {
    pub fn graphs(&self) -> Result<Vec<Graph>> {
        match self {
            Source::Enum(n) => {
                let mut out = Vec::new();
                for k in 0..=*n {
                    out.extend(enumerate_graphs(k, true)?);
                }
                Ok(out)
            }
            Source::File(path) => parse_graph_file(path),
            Source::Random { n, p, seed, count } => (0..*count)
                .map(|i| {
                    FamilySpec::Random {
                        n: *n,
                        p: p.clone(),
                        seed: seed.wrapping_add(i as u64),
                    }
                    .generate()
                })
                .collect(),
            Source::Graph6(text) => Ok(vec![parse_graph6(text)?]),
            Source::Family(spec) => Ok(vec![spec.generate()?]),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Enum(n) => write!(f, "enum:{n}"),
            Source::File(p) => write!(f, "file:{}", p.display()),
            Source::Random { n, p, seed, count } => write!(f, "random:{n},{},{seed},{count}", fmt_ratio(p)),
            Source::Graph6(t) => write!(f, "g6:{t}"),
            Source::Family(s) => write!(f, "family:{s}"),
        }
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::parameter("source", format!("`{text}`: {why}"));
        let (kind, rest) = text.split_once(':').ok_or_else(|| bad("expected kind:value"))?;
        match kind {
            "enum" => {
                let n: usize = rest.parse().map_err(|_| bad("expected a vertex count"))?;
                if n > EXHAUSTIVE_LIMIT {
                    return Err(Error::capability(
                        "enum source",
                        format!("exhaustive enumeration stops at {EXHAUSTIVE_LIMIT} vertices"),
                    ));
                }
                Ok(Source::Enum(n))
            }
            "file" => Ok(Source::File(PathBuf::from(rest))),
            "random" => {
                let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
                let [n, p, seed, count] = parts[..] else {
                    return Err(bad("expected n,p,seed,count"));
                };
                Ok(Source::Random {
                    n: n.parse().map_err(|_| bad("bad n"))?,
                    p: parse_ratio(p)?,
                    seed: seed.parse().map_err(|_| bad("bad seed"))?,
                    count: count.parse().map_err(|_| bad("bad count"))?,
                })
            }
            "g6" => Ok(Source::Graph6(rest.to_string())),
            "family" => Ok(Source::Family(rest.parse()?)),
            _ => Err(bad("unknown kind")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_text() {
        for text in [
            "enum:5",
            "file:/tmp/x.g6",
            "random:14,1/2,7,3",
            "g6:DQc",
            "family:Cycle(5)",
        ] {
            assert_eq!(text.parse::<Source>().unwrap().to_string(), text);
        }
        assert!("enum:9".parse::<Source>().is_err());
        assert!("random:1,2".parse::<Source>().is_err());
        assert!("web:x".parse::<Source>().is_err());
    }

    #[test]
    fn random_source_uses_consecutive_seeds() {
        let graphs = "random:8,1/2,10,3".parse::<Source>().unwrap().graphs().unwrap();
        assert_eq!(graphs.len(), 3);
        assert_eq!(graphs[1], FamilySpec::random(8, 1, 2, 11).generate().unwrap());
        assert_eq!(
            "enum:4".parse::<Source>().unwrap().graphs().unwrap().len(),
            1 + 1 + 2 + 4 + 11
        );
    }
}
