use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::scalar::{fmt_ratio, parse_ratio, Rational};

/// The pseudo-random generator behind [`FamilySpec::Random`].
///
/// ChaCha8 seeded with `seed_from_u64(seed)`. Unordered pairs `(i, j)` with
/// `i < j` are visited in lexicographic order; each consumes one `u64` draw
/// `x` and becomes an edge iff `floor(x * den / 2^64) < num` where
/// `p = num/den` in lowest terms.
pub const PRNG_NAME: &str = "chacha8-pairwise-v1";

/// Cap on the order of generated blowups.
const BLOWUP_LIMIT: usize = 4096;

/// A named graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// Star `K_{1,ℓ+1}` with one edge subdivided `k-2` times.
    Broom(usize, usize),
    /// Complement of `m` disjoint copies of `K_s`.
    CocktailMulti(usize, usize),
    CompleteMultipartite(Vec<usize>),
    /// `K_{1,ℓ}`.
    Star(usize),
    Complete(usize),
    Empty(usize),
    /// Iterated substitution: depth 0 is `K_1`, depth `k` substitutes depth
    /// `k-1` into every vertex of the base.
    Blowup(Box<FamilySpec>, usize),
    Random {
        n: usize,
        p: Rational,
        seed: u64,
    },
    Complement(Box<FamilySpec>),
    DisjointUnion(Vec<FamilySpec>),
    Petersen,
}

fn at_least(field: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::parameter(field, format!("must be >= {min}, got {value}")));
    }
    Ok(())
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Path(k) => at_least("Path.k", *k, 1),
            FamilySpec::Cycle(k) => at_least("Cycle.k", *k, 3),
            FamilySpec::CompleteBipartite(s, t) => {
                at_least("CompleteBipartite.s", *s, 1)?;
                at_least("CompleteBipartite.t", *t, 1)
            }
            FamilySpec::Broom(k, l) => {
                at_least("Broom.k", *k, 2)?;
                at_least("Broom.l", *l, 1)
            }
            FamilySpec::CocktailMulti(m, s) => {
                at_least("CocktailMulti.m", *m, 1)?;
                at_least("CocktailMulti.s", *s, 1)
            }
            FamilySpec::CompleteMultipartite(parts) => {
                at_least("CompleteMultipartite.parts", parts.len(), 1)?;
                parts
                    .iter()
                    .try_for_each(|&p| at_least("CompleteMultipartite.part", p, 1))
            }
            FamilySpec::Star(l) => at_least("Star.l", *l, 1),
            FamilySpec::Complete(_) | FamilySpec::Empty(_) | FamilySpec::Petersen => Ok(()),
            FamilySpec::Blowup(base, depth) => {
                base.validate()?;
                let m = base.order();
                if *depth > 0 && m > 1 {
                    let mut size: usize = 1;
                    for _ in 0..*depth {
                        size = size.saturating_mul(m);
                    }
                    if size > BLOWUP_LIMIT {
                        return Err(Error::parameter(
                            "Blowup.depth",
                            format!("blowup would have {size} vertices (limit {BLOWUP_LIMIT})"),
                        ));
                    }
                }
                Ok(())
            }
            FamilySpec::Random { n, p, .. } => {
                at_least("Random.n", *n, 1)?;
                if p.is_negative() || *p > Rational::one() {
                    return Err(Error::parameter("Random.p", "must lie in [0, 1]"));
                }
                if p.denom().to_u64().is_none() {
                    return Err(Error::parameter("Random.p", "denominator exceeds 64 bits"));
                }
                Ok(())
            }
            FamilySpec::Complement(inner) => inner.validate(),
            FamilySpec::DisjointUnion(parts) => parts.iter().try_for_each(|p| p.validate()),
        }
    }

    /// Closed-form vertex count.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Path(k) | FamilySpec::Cycle(k) => *k,
            FamilySpec::CompleteBipartite(s, t) => s + t,
            FamilySpec::Broom(k, l) => k + l,
            FamilySpec::CocktailMulti(m, s) => m * s,
            FamilySpec::CompleteMultipartite(parts) => parts.iter().sum(),
            FamilySpec::Star(l) => l + 1,
            FamilySpec::Complete(n) | FamilySpec::Empty(n) => *n,
            FamilySpec::Blowup(base, depth) => base.order().pow(*depth as u32),
            FamilySpec::Random { n, .. } => *n,
            FamilySpec::Complement(inner) => inner.order(),
            FamilySpec::DisjointUnion(parts) => parts.iter().map(|p| p.order()).sum(),
            FamilySpec::Petersen => 10,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        Ok(self.build())
    }

    fn build(&self) -> Graph {
        match self {
            FamilySpec::Path(k) => {
                let mut g = Graph::new(*k);
                for i in 1..*k {
                    g.add_edge(i - 1, i);
                }
                g
            }
            FamilySpec::Cycle(k) => {
                let mut g = FamilySpec::Path(*k).build();
                g.add_edge(0, k - 1);
                g
            }
            FamilySpec::CompleteBipartite(s, t) => FamilySpec::CompleteMultipartite(vec![*s, *t]).build(),
            FamilySpec::Broom(k, l) => {
                // 0 = centre, 1..=l = leaves, then the subdivided edge from
                // the centre out to the endpoint k+l-1.
                let mut g = Graph::new(k + l);
                for leaf in 1..=*l {
                    g.add_edge(0, leaf);
                }
                let mut prev = 0;
                for v in l + 1..k + l {
                    g.add_edge(prev, v);
                    prev = v;
                }
                g
            }
            FamilySpec::CocktailMulti(m, s) => FamilySpec::CompleteMultipartite(vec![*s; *m]).build(),
            FamilySpec::CompleteMultipartite(parts) => {
                let n: usize = parts.iter().sum();
                let mut part_of = Vec::with_capacity(n);
                for (i, &p) in parts.iter().enumerate() {
                    part_of.extend(std::iter::repeat_n(i, p));
                }
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if part_of[u] != part_of[v] {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            }
            FamilySpec::Star(l) => FamilySpec::CompleteBipartite(1, *l).build(),
            FamilySpec::Complete(n) => Graph::new(*n).complement(),
            FamilySpec::Empty(n) => Graph::new(*n),
            FamilySpec::Blowup(base, depth) => {
                let base = base.build();
                let mut cur = Graph::new(1);
                for _ in 0..*depth {
                    cur = substitute(&base, &cur);
                }
                cur
            }
            FamilySpec::Random { n, p, seed } => random_graph(*n, p, *seed),
            FamilySpec::Complement(inner) => inner.build().complement(),
            FamilySpec::DisjointUnion(parts) => parts
                .iter()
                .fold(Graph::new(0), |acc, p| acc.disjoint_union(&p.build())),
            FamilySpec::Petersen => {
                let mut g = Graph::new(10);
                for i in 0..5 {
                    g.add_edge(i, (i + 1) % 5);
                    g.add_edge(i, i + 5);
                    g.add_edge(5 + i, 5 + (i + 2) % 5);
                }
                g
            }
        }
    }
}

/// Replaces every vertex of `outer` by a copy of `inner`; copies of adjacent
/// outer vertices are complete to each other.
fn substitute(outer: &Graph, inner: &Graph) -> Graph {
    let m = inner.n();
    let mut g = Graph::new(outer.n() * m);
    for i in 0..outer.n() {
        for (x, y) in inner.edges() {
            g.add_edge(i * m + x, i * m + y);
        }
        for j in outer.neighbours(i).filter(|&j| j > i) {
            for x in 0..m {
                for y in 0..m {
                    g.add_edge(i * m + x, j * m + y);
                }
            }
        }
    }
    g
}

fn random_graph(n: usize, p: &Rational, seed: u64) -> Graph {
    let num = p.numer().to_u128().unwrap_or(0);
    let den = p.denom().to_u128().unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.next_u64() as u128;
            if (x * den) >> 64 < num {
                g.add_edge(i, j);
            }
        }
    }
    g
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Path(k) => write!(f, "Path({k})"),
            FamilySpec::Cycle(k) => write!(f, "Cycle({k})"),
            FamilySpec::CompleteBipartite(s, t) => write!(f, "Bipartite({s},{t})"),
            FamilySpec::Broom(k, l) => write!(f, "Broom({k},{l})"),
            FamilySpec::CocktailMulti(m, s) => write!(f, "Cocktail({m},{s})"),
            FamilySpec::CompleteMultipartite(parts) => write!(f, "Multipartite({})", join(parts)),
            FamilySpec::Star(l) => write!(f, "Star({l})"),
            FamilySpec::Complete(n) => write!(f, "Complete({n})"),
            FamilySpec::Empty(n) => write!(f, "Empty({n})"),
            FamilySpec::Blowup(base, k) => write!(f, "Blowup({base},{k})"),
            FamilySpec::Random { n, p, seed } => write!(f, "Random({n},{},{seed})", fmt_ratio(p)),
            FamilySpec::Complement(inner) => write!(f, "Complement({inner})"),
            FamilySpec::DisjointUnion(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "Union({})", inner.join(","))
            }
            FamilySpec::Petersen => write!(f, "Petersen"),
        }
    }
}

/// Splits `a,b,(c,d)` on top-level commas.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = match text.find('(') {
            Some(open) => {
                if !text.ends_with(')') {
                    return Err(Error::parameter(
                        "family",
                        format!("unbalanced parentheses in `{text}`"),
                    ));
                }
                (&text[..open], split_args(&text[open + 1..text.len() - 1]))
            }
            None => (text, Vec::new()),
        };
        let nums = |count: usize| -> Result<Vec<usize>> {
            if args.len() != count {
                return Err(Error::parameter(
                    "family",
                    format!("`{name}` takes {count} argument(s), got {}", args.len()),
                ));
            }
            args.iter()
                .map(|a| {
                    a.parse::<usize>()
                        .map_err(|_| Error::parameter("family", format!("`{a}` is not a count")))
                })
                .collect()
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "path" | "p" => FamilySpec::Path(nums(1)?[0]),
            "cycle" | "c" => FamilySpec::Cycle(nums(1)?[0]),
            "bipartite" | "kbip" | "completebipartite" => {
                let v = nums(2)?;
                FamilySpec::CompleteBipartite(v[0], v[1])
            }
            "broom" => {
                let v = nums(2)?;
                FamilySpec::Broom(v[0], v[1])
            }
            "cocktail" | "cocktailmulti" => {
                let v = nums(2)?;
                FamilySpec::CocktailMulti(v[0], v[1])
            }
            "multipartite" | "completemultipartite" => {
                let v = nums(args.len())?;
                FamilySpec::CompleteMultipartite(v)
            }
            "star" => FamilySpec::Star(nums(1)?[0]),
            "complete" | "k" => FamilySpec::Complete(nums(1)?[0]),
            "empty" => FamilySpec::Empty(nums(1)?[0]),
            "petersen" => FamilySpec::Petersen,
            "blowup" => {
                if args.len() != 2 {
                    return Err(Error::parameter("family", "Blowup takes (base, depth)"));
                }
                let depth = args[1]
                    .parse()
                    .map_err(|_| Error::parameter("Blowup.depth", "not a count"))?;
                FamilySpec::Blowup(Box::new(args[0].parse()?), depth)
            }
            "random" => {
                if args.len() != 3 {
                    return Err(Error::parameter("family", "Random takes (n, p, seed)"));
                }
                FamilySpec::Random {
                    n: args[0]
                        .parse()
                        .map_err(|_| Error::parameter("Random.n", "not a count"))?,
                    p: parse_ratio(args[1])?,
                    seed: args[2]
                        .parse()
                        .map_err(|_| Error::parameter("Random.seed", "not a u64"))?,
                }
            }
            "complement" => {
                if args.len() != 1 {
                    return Err(Error::parameter("family", "Complement takes one family"));
                }
                FamilySpec::Complement(Box::new(args[0].parse()?))
            }
            "union" | "disjointunion" => {
                FamilySpec::DisjointUnion(args.iter().map(|a| a.parse()).collect::<Result<Vec<_>>>()?)
            }
            other => return Err(Error::parameter("family", format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl FamilySpec {
    /// `Random(n, p, seed)` with `p = num/den`.
    pub fn random(n: usize, num: i64, den: i64, seed: u64) -> Self {
        FamilySpec::Random {
            n,
            p: crate::scalar::rat(num, den),
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn broom_8_5_degrees() {
        let g = FamilySpec::Broom(8, 5).generate().unwrap();
        assert_eq!(g.n(), 13);
        assert_eq!(g.edge_count(), 12);
        // centre: five leaves plus the handle
        assert_eq!(g.degree(0), 6);
        assert_eq!(degrees(&g), vec![1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 6]);
    }

    #[test]
    fn broom_with_one_leaf_is_a_path() {
        let g = FamilySpec::Broom(4, 1).generate().unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(degrees(&g), vec![1, 1, 2, 2, 2]);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn cocktail_2_2_is_c4() {
        let g = FamilySpec::CocktailMulti(2, 2).generate().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(degrees(&g), vec![2, 2, 2, 2]);
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
    }

    #[test]
    fn blowup_orders() {
        let c5 = Box::new(FamilySpec::Cycle(5));
        assert_eq!(FamilySpec::Blowup(c5.clone(), 0).generate().unwrap().n(), 1);
        let b1 = FamilySpec::Blowup(c5.clone(), 1).generate().unwrap();
        assert_eq!(b1, FamilySpec::Cycle(5).generate().unwrap());
        let b2 = FamilySpec::Blowup(c5.clone(), 2).generate().unwrap();
        assert_eq!(b2.n(), 25);
        // each vertex: 2 inside its C5 copy + 2*5 across
        assert!((0..25).all(|v| b2.degree(v) == 12));
        assert!(FamilySpec::Blowup(c5, 6).generate().is_err());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = FamilySpec::random(20, 1, 2, 7).generate().unwrap();
        let b = FamilySpec::random(20, 1, 2, 7).generate().unwrap();
        let c = FamilySpec::random(20, 1, 2, 8).generate().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(FamilySpec::random(6, 0, 1, 1).generate().unwrap().edge_count(), 0);
        assert_eq!(FamilySpec::random(6, 1, 1, 1).generate().unwrap().edge_count(), 15);
    }

    #[test]
    fn parameter_errors_name_the_field() {
        match FamilySpec::Broom(1, 3).generate() {
            Err(Error::Parameter { field, .. }) => assert_eq!(field, "Broom.k"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(FamilySpec::Cycle(2).generate().is_err());
        assert!(FamilySpec::Complete(0).generate().is_ok());
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "Path(5)",
            "Blowup(Cycle(5),2)",
            "Random(14,1/2,99)",
            "Complement(Union(Path(2),Cycle(4)))",
            "Multipartite(1,2,3)",
            "Petersen",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("Nope(3)".parse::<FamilySpec>().is_err());
        assert!("Path(2,3)".parse::<FamilySpec>().is_err());
    }
}
