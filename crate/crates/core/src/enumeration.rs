//! Exhaustive generation of unlabeled free trees with a degree cap.
//!
//! Every free tree has a unique center: a vertex (even diameter) or an edge
//! (odd diameter). Rooting at the center turns the free tree into either
//!
//! * a root with at least two subtrees of the maximal height `r − 1`, or
//! * an unordered pair of rooted trees of equal height `r` joined by an edge.
//!
//! Rooted subtrees are built once per run, height by height, as multisets of
//! smaller classes, so each isomorphism class is produced exactly once. The
//! degree cap bounds the number of children at every node while classes are
//! formed, which keeps the search inside the constrained space instead of
//! filtering a full enumeration.

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Default largest order accepted without an explicit override.
pub const DEFAULT_GUARD: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumSpec {
    pub order: usize,
    /// `None` means no degree cap.
    pub max_degree: Option<usize>,
    /// Keep only trees whose maximum degree equals `max_degree`.
    pub exact: bool,
    pub guard: usize,
    /// Compute canonical codes on the rayon pool. Output order is unaffected.
    #[serde(skip)]
    pub parallel: bool,
}

impl EnumSpec {
    pub fn new(order: usize) -> Self {
        EnumSpec { order, max_degree: None, exact: false, guard: DEFAULT_GUARD, parallel: false }
    }

    pub fn max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self.exact = false;
        self
    }

    pub fn exact_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self.exact = true;
        self
    }

    pub fn guard(mut self, limit: usize) -> Self {
        self.guard = limit;
        self
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::DomainViolation("tree order must be at least 1".into()));
        }
        if self.order > self.guard {
            return Err(Error::LimitExceeded { n: self.order, limit: self.guard });
        }
        if self.exact && self.max_degree.is_none() {
            return Err(Error::DomainViolation("exact degree filter needs a degree".into()));
        }
        if let Some(d) = self.max_degree {
            if self.order >= 3 && d < 2 {
                return Err(Error::DomainViolation(format!(
                    "degree cap {d} admits no tree of order {}",
                    self.order
                )));
            }
        }
        Ok(())
    }

    /// Maximum number of children of a non-root vertex.
    fn child_cap(&self) -> usize {
        match self.max_degree {
            Some(d) => d.saturating_sub(1),
            None => self.order,
        }
    }

    fn root_cap(&self) -> usize {
        self.max_degree.unwrap_or(self.order)
    }

    fn admits(&self, max_degree: usize) -> bool {
        match (self.exact, self.max_degree) {
            (true, Some(d)) => max_degree == d,
            _ => true,
        }
    }
}

/// All trees of the requested class, one per isomorphism class, in ascending
/// canonical-code order.
pub fn enumerate_trees(spec: &EnumSpec) -> Result<Vec<Tree>> {
    Ok(enumerate_coded(spec)?.into_iter().map(|(_, t)| t).collect())
}

/// Like [`enumerate_trees`] but keeps each tree's canonical code alongside it.
pub fn enumerate_coded(spec: &EnumSpec) -> Result<Vec<(CanonicalCode, Tree)>> {
    spec.validate()?;
    let mut trees = Vec::new();
    generate(spec, |shape| trees.push(shape.build()));
    let mut coded: Vec<(CanonicalCode, Tree)> = if spec.parallel {
        trees.into_par_iter().map(|t| (canonical_code(&t), t)).collect()
    } else {
        trees.into_iter().map(|t| (canonical_code(&t), t)).collect()
    };
    coded.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(coded)
}

/// Number of trees in the class, without building them.
pub fn count_trees(spec: &EnumSpec) -> Result<u64> {
    spec.validate()?;
    let mut count = 0u64;
    generate(spec, |_| count += 1);
    Ok(count)
}

struct Class {
    size: u32,
    height: u32,
    /// Largest child count of any vertex inside the class, root included.
    max_children: u32,
    children: Box<[u32]>,
}

struct Arena {
    classes: Vec<Class>,
    /// Class ids by exact height.
    by_height: Vec<Vec<u32>>,
}

impl Arena {
    fn build(max_size: usize, max_height: usize, cap: usize) -> Arena {
        let mut arena = Arena {
            classes: vec![Class { size: 1, height: 0, max_children: 0, children: Box::new([]) }],
            by_height: vec![vec![0]],
        };
        for h in 1..=max_height {
            let mut pool: Vec<u32> = arena.by_height[..h].iter().flatten().copied().collect();
            pool.sort_by_key(|&id| (std::cmp::Reverse(arena.classes[id as usize].size), id));
            let mut fresh = Vec::new();
            let query = MultisetQuery {
                arena: &arena,
                pool: &pool,
                max_parts: cap,
                budget: max_size.saturating_sub(1),
                exact: false,
                tall_height: (h - 1) as u32,
                min_tall: 1,
            };
            query.run(&mut |kids: &[u32]| {
                let size = 1 + kids.iter().map(|&k| arena.classes[k as usize].size).sum::<u32>();
                let max_children = kids
                    .iter()
                    .map(|&k| arena.classes[k as usize].max_children)
                    .max()
                    .unwrap_or(0)
                    .max(kids.len() as u32);
                fresh.push(Class { size, height: h as u32, max_children, children: kids.into() });
            });
            let start = arena.classes.len() as u32;
            let ids = (start..start + fresh.len() as u32).collect();
            arena.classes.extend(fresh);
            arena.by_height.push(ids);
        }
        arena
    }

    fn class(&self, id: u32) -> &Class {
        &self.classes[id as usize]
    }
}

/// Enumerates multisets of pool entries (non-decreasing pool positions) by
/// total size. The pool is sorted by size, largest first.
struct MultisetQuery<'a> {
    arena: &'a Arena,
    pool: &'a [u32],
    max_parts: usize,
    budget: usize,
    /// `true`: total size must equal `budget`; `false`: any total up to it.
    exact: bool,
    tall_height: u32,
    min_tall: usize,
}

impl MultisetQuery<'_> {
    fn run(&self, emit: &mut dyn FnMut(&[u32])) {
        let mut chosen = Vec::new();
        self.step(0, self.budget, 0, &mut chosen, emit);
    }

    fn step(&self, start: usize, remaining: usize, tall: usize, chosen: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
        let done = if self.exact { remaining == 0 } else { !chosen.is_empty() };
        if done && tall >= self.min_tall {
            emit(chosen);
        }
        if remaining == 0 || chosen.len() == self.max_parts {
            return;
        }
        let slots = self.max_parts - chosen.len();
        if self.min_tall.saturating_sub(tall) > slots {
            return;
        }
        let sizes = |p: usize| self.arena.class(self.pool[p]).size as usize;
        let first_fit = self.pool.partition_point(|&id| self.arena.class(id).size as usize > remaining);
        for p in start.max(first_fit)..self.pool.len() {
            let size = sizes(p);
            if self.exact && remaining > slots * size {
                break;
            }
            let id = self.pool[p];
            let is_tall = self.arena.class(id).height == self.tall_height;
            chosen.push(id);
            self.step(p, remaining - size, tall + usize::from(is_tall), chosen, emit);
            chosen.pop();
        }
    }
}

/// A generated tree before it is materialized.
enum Shape<'a> {
    Single,
    Central { arena: &'a Arena, children: &'a [u32] },
    Bicentral { arena: &'a Arena, left: u32, right: u32 },
}

impl Shape<'_> {
    fn build(&self) -> Tree {
        match *self {
            Shape::Single => Tree::singleton(),
            Shape::Central { arena, children } => {
                let mut adj = vec![Vec::new()];
                for &c in children {
                    let id = attach(arena, c, &mut adj);
                    adj[0].push(id);
                    adj[id].push(0);
                }
                Tree::from_adjacency(adj)
            }
            Shape::Bicentral { arena, left, right } => {
                let mut adj = Vec::new();
                let a = attach(arena, left, &mut adj);
                let b = attach(arena, right, &mut adj);
                adj[a].push(b);
                adj[b].push(a);
                Tree::from_adjacency(adj)
            }
        }
    }
}

/// Appends the class in preorder and returns the id of its root.
fn attach(arena: &Arena, class: u32, adj: &mut Vec<Vec<usize>>) -> usize {
    let root = adj.len();
    adj.push(Vec::new());
    let mut stack = vec![(class, root)];
    while let Some((cls, at)) = stack.pop() {
        for &child in arena.class(cls).children.iter() {
            let id = adj.len();
            adj.push(vec![at]);
            adj[at].push(id);
            stack.push((child, id));
        }
    }
    root
}

fn generate(spec: &EnumSpec, mut emit: impl FnMut(&Shape<'_>)) {
    let n = spec.order;
    if n == 1 {
        // The one-vertex tree has no degree to test; only the unconstrained
        // and `max_degree` modes include it.
        if !spec.exact {
            emit(&Shape::Single);
        }
        return;
    }
    let max_size = (n - 2).max(1);
    let max_height = (n - 2) / 2;
    let arena = Arena::build(max_size, max_height, spec.child_cap());

    // Vertex center, radius r.
    for r in 1..=(n - 1) / 2 {
        let mut pool: Vec<u32> = arena.by_height[..r].iter().flatten().copied().collect();
        pool.sort_by_key(|&id| (std::cmp::Reverse(arena.class(id).size), id));
        let query = MultisetQuery {
            arena: &arena,
            pool: &pool,
            max_parts: spec.root_cap(),
            budget: n - 1,
            exact: true,
            tall_height: (r - 1) as u32,
            min_tall: 2,
        };
        query.run(&mut |kids: &[u32]| {
            let inner = kids.iter().map(|&k| arena.class(k).max_children + 1).max().unwrap_or(0) as usize;
            if spec.admits(inner.max(kids.len())) {
                emit(&Shape::Central { arena: &arena, children: kids });
            }
        });
    }

    // Edge center: two rooted trees of equal height r.
    for r in 0..=(n - 2) / 2 {
        if r >= arena.by_height.len() {
            break;
        }
        let mut side: Vec<u32> = arena.by_height[r].clone();
        side.sort_by_key(|&id| (std::cmp::Reverse(arena.class(id).size), id));
        for (p, &a) in side.iter().enumerate() {
            let sa = arena.class(a).size as usize;
            if sa >= n {
                continue;
            }
            let want = n - sa;
            if want > sa {
                // Later entries are no larger, so `b` would precede `a`.
                continue;
            }
            let lo = side.partition_point(|&id| arena.class(id).size as usize > want);
            let hi = side.partition_point(|&id| arena.class(id).size as usize >= want);
            for &b in &side[lo.max(p)..hi] {
                let deg = 1 + arena.class(a).max_children.max(arena.class(b).max_children) as usize;
                if spec.admits(deg) {
                    emit(&Shape::Bicentral { arena: &arena, left: a, right: b });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: impl Fn(usize) -> EnumSpec, range: std::ops::RangeInclusive<usize>) -> Vec<u64> {
        range.map(|n| count_trees(&spec(n)).unwrap()).collect()
    }

    #[test]
    fn unconstrained_counts_match_known_sequence() {
        // number of free trees on n unlabeled vertices
        assert_eq!(
            counts(EnumSpec::new, 1..=14),
            vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159]
        );
    }

    #[test]
    fn small_exact_degree_classes() {
        assert_eq!(count_trees(&EnumSpec::new(6).max_degree(2)).unwrap(), 1);
        assert_eq!(count_trees(&EnumSpec::new(5).exact_degree(4)).unwrap(), 1);
        assert_eq!(count_trees(&EnumSpec::new(4).exact_degree(2)).unwrap(), 1);
        assert_eq!(count_trees(&EnumSpec::new(2).exact_degree(1)).unwrap(), 1);
    }

    #[test]
    fn enumerate_and_count_agree() {
        for n in 1..=11 {
            for cap in [None, Some(2), Some(3), Some(4)] {
                let mut spec = EnumSpec::new(n);
                if let Some(d) = cap {
                    if n >= 3 || d >= 1 {
                        spec = spec.max_degree(d);
                    }
                }
                let trees = enumerate_trees(&spec).unwrap();
                assert_eq!(trees.len() as u64, count_trees(&spec).unwrap());
                for t in &trees {
                    assert_eq!(t.order(), n);
                    if let (Some(d), true) = (cap, n >= 2) {
                        assert!(t.max_degree().unwrap() <= d);
                    }
                }
            }
        }
    }

    #[test]
    fn output_is_strictly_increasing() {
        let coded = enumerate_coded(&EnumSpec::new(10)).unwrap();
        assert!(coded.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn guard_and_domain_errors() {
        assert_eq!(
            count_trees(&EnumSpec::new(30)),
            Err(Error::LimitExceeded { n: 30, limit: DEFAULT_GUARD })
        );
        assert!(count_trees(&EnumSpec::new(30).guard(30).max_degree(2)).is_ok());
        assert!(count_trees(&EnumSpec::new(0)).is_err());
        assert!(count_trees(&EnumSpec::new(5).max_degree(1)).is_err());
    }

    #[test]
    fn parallel_mode_gives_identical_order() {
        let spec = EnumSpec::new(11).max_degree(4);
        assert_eq!(enumerate_coded(&spec).unwrap(), enumerate_coded(&spec.parallel(true)).unwrap());
    }
}
