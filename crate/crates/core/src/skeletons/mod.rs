//! Wide rooted trees, skeletons and the procedures that grow a skeleton in
//! a sparse graph of large average degree and turn it into an induced copy
//! of a given tree.
//!
//! A skeleton from a rooted tree `(T, r)` to `G` is a locally injective
//! homomorphism that sends every root-to-leaf path of `T` onto an induced
//! path of `G`. Images of different branches may coincide.

mod build;
mod find;
mod subtree;
mod turn;

pub use build::{build_skeleton_step, grow_skeleton, StepOutcome};
pub use find::{find_skeleton, find_skeleton_from, SKELETON_NODE_BUDGET};
pub use subtree::{
    eps_subtree, is_eps_good, is_eps_nice, lemma_sparse, max_avoiding_subtree, sparse_shrink, AvoidingSubtree, Shrink,
    SparseLemma,
};
pub use turn::{extract_induced_tree, radius_root, sparse_tree, sparse_tree_threshold, TreeRun};

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{binomial, fmt_ratio, Rational, Scalar};

/// Largest tree the procedures will materialise.
pub const TREE_NODE_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
    #[serde(skip)]
    height: Vec<usize>,
    /// Breadth-first order from the root.
    #[serde(skip)]
    order: Vec<usize>,
}

impl RootedTree {
    /// `parent[v] = None` for the root only.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<RootedTree> {
        let k = parent.len();
        if k == 0 {
            return Err(Error::parameter("tree", "need at least one node"));
        }
        let roots: Vec<usize> = (0..k).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::parameter(
                "tree",
                format!("need exactly one root, found {}", roots.len()),
            ));
        }
        let mut children = vec![Vec::new(); k];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= k || p == v {
                    return Err(Error::parameter("tree", format!("bad parent {p} for node {v}")));
                }
                children[p].push(v);
            }
        }
        let root = roots[0];
        let mut height = vec![usize::MAX; k];
        height[root] = 0;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in &children[v] {
                height[c] = height[v] + 1;
                order.push(c);
            }
        }
        if order.len() != k {
            return Err(Error::parameter("tree", "parent links contain a cycle"));
        }
        Ok(RootedTree {
            parent,
            root,
            children,
            height,
            order,
        })
    }

    /// `g` must be a tree.
    pub fn from_graph(g: &Graph, root: usize) -> Result<RootedTree> {
        g.check_vertex(root)?;
        if g.edge_count() + 1 != g.n() {
            return Err(Error::parameter("tree", "graph is not a tree"));
        }
        let mut parent = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[root] = true;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for u in g.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    queue.push(u);
                }
            }
        }
        if queue.len() != g.n() {
            return Err(Error::parameter("tree", "graph is not connected"));
        }
        RootedTree::from_parents(parent)
    }

    pub fn single() -> RootedTree {
        RootedTree::from_parents(vec![None]).expect("one node")
    }

    /// Depth `h`, every node above the last level with exactly `d` children;
    /// nodes are numbered breadth first.
    pub fn wide(d: usize, h: usize) -> Result<RootedTree> {
        let mut total = 1usize;
        let mut level = 1usize;
        for _ in 0..h {
            level = level.saturating_mul(d);
            total = total.saturating_add(level);
        }
        if total > TREE_NODE_LIMIT {
            return Err(Error::capability(
                "wide tree",
                format!("a ({d},{h})-wide tree has more than {TREE_NODE_LIMIT} nodes"),
            ));
        }
        let mut parent = vec![None];
        let mut frontier = vec![0usize];
        for _ in 0..h {
            let mut next = Vec::with_capacity(frontier.len() * d);
            for &p in &frontier {
                for _ in 0..d {
                    next.push(parent.len());
                    parent.push(Some(p));
                }
            }
            frontier = next;
        }
        RootedTree::from_parents(parent)
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    pub fn depth(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    pub fn bfs(&self) -> &[usize] {
        &self.order
    }

    /// Depth of the subtree hanging from each node.
    pub fn subtree_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.order()];
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                depth[p] = depth[p].max(depth[v] + 1);
            }
        }
        depth
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.order());
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                g.add_edge(v, p);
            }
        }
        g
    }

    /// First node of height below `h` with fewer than `ceil(d)` children,
    /// as `(node, children, required)`.
    pub fn width_violation(&self, d: &Rational, h: usize) -> Option<(usize, usize, u64)> {
        let need = ceil_u64(d);
        self.order
            .iter()
            .find(|&&v| self.height[v] < h && (self.children[v].len() as u64) < need)
            .map(|&v| (v, self.children[v].len(), need))
    }

    /// Depth exactly `h` and at least `d` children at every node above the
    /// last level.
    pub fn is_wide(&self, d: &Rational, h: usize) -> bool {
        self.depth() == h && self.width_violation(d, h).is_none()
    }

    /// The subtree rooted at `top` made of the nodes marked in `keep` whose
    /// path up to `top` is marked. Nodes are renumbered breadth first; the
    /// second vector maps new numbers to old ones.
    pub fn restrict(&self, top: usize, keep: &[bool]) -> (RootedTree, Vec<usize>) {
        let mut back = vec![top];
        let mut parent = vec![None];
        let mut head = 0;
        while head < back.len() {
            let v = back[head];
            for &c in &self.children[v] {
                if keep[c] {
                    parent.push(Some(head));
                    back.push(c);
                }
            }
            head += 1;
        }
        (RootedTree::from_parents(parent).expect("restriction of a tree"), back)
    }

    /// All descendants of `top`, including `top`.
    pub fn descendants(&self, top: usize) -> Vec<usize> {
        let mut out = vec![top];
        let mut head = 0;
        while head < out.len() {
            let v = out[head];
            head += 1;
            out.extend_from_slice(&self.children[v]);
        }
        out
    }
}

/// `ceil(x)` for non-negative `x`, saturating.
pub(crate) fn ceil_u64(x: &Rational) -> u64 {
    if *x <= Rational::zero() {
        return 0;
    }
    x.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub tree: RootedTree,
    /// Image of each tree node.
    pub map: Vec<usize>,
}

impl Skeleton {
    pub fn root_image(&self) -> usize {
        self.map[self.tree.root()]
    }

    /// The restriction to the subtree of [`RootedTree::restrict`], with the
    /// node correspondence.
    pub fn restrict(&self, top: usize, keep: &[bool]) -> (Skeleton, Vec<usize>) {
        let (tree, back) = self.tree.restrict(top, keep);
        let map = back.iter().map(|&v| self.map[v]).collect();
        (Skeleton { tree, map }, back)
    }

    /// The full subtree below `top`.
    pub fn below(&self, top: usize) -> (Skeleton, Vec<usize>) {
        let keep = vec![true; self.tree.order()];
        self.restrict(top, &keep)
    }

    /// Keeps only the first `levels` levels.
    pub fn truncate(&self, levels: usize) -> Skeleton {
        let keep: Vec<bool> = (0..self.tree.order()).map(|v| self.tree.height(v) <= levels).collect();
        self.restrict(self.tree.root(), &keep).0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation")]
pub enum SkeletonViolation {
    MapLength {
        expected: usize,
        actual: usize,
    },
    VertexOutOfRange {
        node: usize,
        vertex: usize,
    },
    NotHomomorphism {
        parent: usize,
        child: usize,
    },
    /// Two neighbours of `node` share an image.
    NotLocallyInjective {
        node: usize,
        first: usize,
        second: usize,
    },
    /// `ancestor` and `descendant` are at distance at least two in the tree
    /// but their images coincide or are adjacent.
    PathNotInduced {
        ancestor: usize,
        descendant: usize,
    },
    WrongDepth {
        expected: usize,
        actual: usize,
    },
    TooFewChildren {
        node: usize,
        children: usize,
        required: u64,
    },
}

/// The skeleton conditions without any width requirement.
pub fn check_skeleton(g: &Graph, sk: &Skeleton) -> std::result::Result<(), SkeletonViolation> {
    let tree = &sk.tree;
    if sk.map.len() != tree.order() {
        return Err(SkeletonViolation::MapLength {
            expected: tree.order(),
            actual: sk.map.len(),
        });
    }
    for (node, &vertex) in sk.map.iter().enumerate() {
        if vertex >= g.n() {
            return Err(SkeletonViolation::VertexOutOfRange { node, vertex });
        }
    }
    for &v in tree.bfs() {
        if let Some(p) = tree.parent(v) {
            if !g.has_edge(sk.map[p], sk.map[v]) {
                return Err(SkeletonViolation::NotHomomorphism { parent: p, child: v });
            }
        }
    }
    for &v in tree.bfs() {
        let nbrs: Vec<usize> = tree
            .parent(v)
            .into_iter()
            .chain(tree.children(v).iter().copied())
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            if let Some(&b) = nbrs[i + 1..].iter().find(|&&b| sk.map[b] == sk.map[a]) {
                return Err(SkeletonViolation::NotLocallyInjective {
                    node: v,
                    first: a.min(b),
                    second: a.max(b),
                });
            }
        }
    }
    for &v in tree.bfs() {
        let x = sk.map[v];
        let mut anc = tree.parent(v).and_then(|p| tree.parent(p));
        while let Some(a) = anc {
            let y = sk.map[a];
            if x == y || g.has_edge(x, y) {
                return Err(SkeletonViolation::PathNotInduced {
                    ancestor: a,
                    descendant: v,
                });
            }
            anc = tree.parent(a);
        }
    }
    Ok(())
}

/// Checks that `sk` is a `(d, h)`-skeleton in `g` and reports the first
/// failing condition.
pub fn validate_skeleton(
    g: &Graph,
    sk: &Skeleton,
    d: &Rational,
    h: usize,
) -> std::result::Result<(), SkeletonViolation> {
    check_skeleton(g, sk)?;
    let depth = sk.tree.depth();
    if depth != h {
        return Err(SkeletonViolation::WrongDepth {
            expected: h,
            actual: depth,
        });
    }
    if let Some((node, children, required)) = sk.tree.width_violation(d, h) {
        return Err(SkeletonViolation::TooFewChildren {
            node,
            children,
            required,
        });
    }
    Ok(())
}

pub(crate) fn check_c(c: &Rational) -> Result<()> {
    if *c <= Rational::zero() || *c >= Rational::new(1.into(), 2.into()) {
        return Err(Error::parameter("c", format!("need 0 < c < 1/2, got {}", fmt_ratio(c))));
    }
    Ok(())
}

/// `Phi(c, 0) = 0`, `Phi(c, 1) = 1`, `Phi(c, h+1) = (Phi(c, h) + 2)(4/c)^(h+1)`.
pub fn phi(c: &Rational, h: usize) -> Result<Rational> {
    check_c(c)?;
    if h == 0 {
        return Ok(Rational::zero());
    }
    let four_over_c = Rational::from_int(4) / c.clone();
    let mut value = Rational::one();
    for i in 1..h {
        value = (value + Rational::from_int(2)) * four_over_c.powi(i as i64 + 1);
    }
    Ok(value)
}

/// `eps^(-C(h+1,2)) (eps + 2 sum_{i=2..h} eps^C(i,2))` with `eps = c/4`,
/// for `h >= 1`.
pub fn phi_closed_form(c: &Rational, h: usize) -> Result<Rational> {
    check_c(c)?;
    if h == 0 {
        return Err(Error::parameter("h", "the closed form needs h >= 1"));
    }
    let eps = c.clone() / Rational::from_int(4);
    let pow = |k: u64| -> Rational {
        let e = binomial(k, 2).to_i64().expect("small exponent");
        eps.powi(e)
    };
    let mut sum = eps.clone();
    for i in 2..=h as u64 {
        sum += Rational::from_int(2) * pow(i);
    }
    Ok(sum / pow(h as u64 + 1))
}

/// `c (4/c)^C(h+1,2)`, an upper bound on `Phi(c, h)` for `h >= 1`.
pub fn phi_bound(c: &Rational, h: usize) -> Result<Rational> {
    check_c(c)?;
    let e = binomial(h as u64 + 1, 2).to_i64().expect("small exponent");
    Ok(c.clone() * (Rational::from_int(4) / c.clone()).powi(e))
}

#[derive(Clone, Debug)]
pub struct SkeletonOptions {
    /// Run below the hypotheses; counting shortfalls no longer abort, and
    /// only soundness of the output is guaranteed.
    pub force: bool,
    pub budget: u64,
    /// Replaces the skeleton width of the tree pipeline (forced runs only).
    pub width: Option<Rational>,
}

impl Default for SkeletonOptions {
    fn default() -> Self {
        SkeletonOptions {
            force: false,
            budget: SKELETON_NODE_BUDGET,
            width: None,
        }
    }
}

impl SkeletonOptions {
    pub fn forced() -> Self {
        SkeletonOptions {
            force: true,
            ..SkeletonOptions::default()
        }
    }
}

/// Stops a forced run, or reports a failed counting step of a faithful one.
pub(crate) fn shortfall(force: bool, step: &str, detail: impl Into<String>) -> Error {
    if force {
        Error::invariant(format!("forced run stopped at {step}"), detail)
    } else {
        Error::invariant(step, detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::scalar::rat;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn phi_values() {
        for c in [rat(1, 8), rat(1, 4), rat(2, 5)] {
            assert_eq!(phi(&c, 0).unwrap(), rat(0, 1));
            assert_eq!(phi(&c, 1).unwrap(), rat(1, 1));
        }
        assert_eq!(phi(&rat(1, 4), 2).unwrap(), rat(768, 1));
        assert_eq!(phi(&rat(1, 8), 3).unwrap(), phi_closed_form(&rat(1, 8), 3).unwrap());
        assert!(phi(&rat(1, 2), 1).is_err());
        assert!(phi(&rat(0, 1), 1).is_err());
    }

    #[test]
    fn wide_trees() {
        let t = RootedTree::wide(3, 2).unwrap();
        assert_eq!(t.order(), 13);
        assert_eq!(t.depth(), 2);
        assert!(t.is_wide(&rat(3, 1), 2));
        assert!(t.is_wide(&rat(5, 2), 2));
        assert!(!t.is_wide(&rat(7, 2), 2));
        assert!(!t.is_wide(&rat(1, 1), 1));
        assert_eq!(RootedTree::wide(5, 0).unwrap().order(), 1);
        assert!(RootedTree::wide(1000, 3).is_err());
    }

    #[test]
    fn tree_construction_errors() {
        assert!(RootedTree::from_parents(vec![]).is_err());
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![Some(1), Some(0)]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_graph(&gen("Cycle(4)"), 0).is_err());
        let t = RootedTree::from_graph(&gen("Path(4)"), 1).unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.children(1), &[0, 2]);
    }

    #[test]
    fn validation_examples() {
        let p3 = gen("Path(3)");
        let sk = Skeleton {
            tree: RootedTree::from_graph(&p3, 0).unwrap(),
            map: vec![0, 1, 2],
        };
        assert_eq!(validate_skeleton(&p3, &sk, &rat(1, 1), 2), Ok(()));

        let star = Skeleton {
            tree: RootedTree::wide(3, 1).unwrap(),
            map: vec![0, 1, 2, 1],
        };
        assert!(matches!(
            validate_skeleton(&gen("Complete(3)"), &star, &rat(3, 1), 1),
            Err(SkeletonViolation::NotLocallyInjective { node: 0, .. })
        ));

        // root -> v0, children -> v1, v4, grandchildren -> v2, v3
        let tree = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1), Some(2)]).unwrap();
        let sk = Skeleton {
            tree,
            map: vec![0, 1, 4, 2, 3],
        };
        assert_eq!(validate_skeleton(&gen("Cycle(5)"), &sk, &rat(1, 1), 2), Ok(()));
        assert!(matches!(
            validate_skeleton(&gen("Cycle(5)"), &sk, &rat(2, 1), 2),
            Err(SkeletonViolation::TooFewChildren { node: 1, .. })
        ));
        assert!(matches!(
            validate_skeleton(&gen("Cycle(4)"), &sk, &rat(1, 1), 2),
            Err(SkeletonViolation::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn skeletons_may_reuse_vertices_across_branches() {
        // K_{1,2} rooted at a leaf on the path 0-1-2: branches collapse
        let tree = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(1)]).unwrap();
        let sk = Skeleton {
            tree,
            map: vec![0, 1, 2, 2],
        };
        assert!(matches!(
            check_skeleton(&gen("Path(3)"), &sk),
            Err(SkeletonViolation::NotLocallyInjective { node: 1, .. })
        ));
        let path = Skeleton {
            tree: RootedTree::from_graph(&gen("Path(3)"), 0).unwrap(),
            map: vec![0, 1, 2],
        };
        assert!(matches!(
            check_skeleton(&gen("Complete(3)"), &path),
            Err(SkeletonViolation::PathNotInduced { .. })
        ));
    }
}
