//! Tree representation, validation, and the edge-list text format.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::census::DegreeCensus;
use crate::error::{Error, Result};

/// A finite tree on vertices `0..n` with sorted adjacency lists.
///
/// Every constructor validates that the graph is connected and acyclic, so a
/// `Tree` value always has exactly `n - 1` edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

/// Edges as they appear in user input, with arbitrary decimal vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub edges: Vec<(u64, u64)>,
}

impl EdgeList {
    pub fn new(edges: Vec<(u64, u64)>) -> Self {
        EdgeList { edges }
    }

    /// Parses one `u v` pair per line. `#` starts a comment; blank lines are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let parse_id = |f: Option<&str>| -> Result<u64> {
                let f = f.ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    message: "expected two vertex ids".into(),
                })?;
                f.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("{f:?} is not a nonnegative integer"),
                })
            };
            let u = parse_id(fields.next())?;
            let v = parse_id(fields.next())?;
            if fields.next().is_some() {
                return Err(Error::Parse { line: idx + 1, message: "trailing fields".into() });
            }
            edges.push((u, v));
        }
        Ok(EdgeList { edges })
    }
}

impl FromStr for EdgeList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EdgeList::parse(s)
    }
}

impl fmt::Display for EdgeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Validates `edges` and compacts vertex ids to `0..n` in order of first
/// appearance.
pub fn build_tree(edges: &EdgeList) -> Result<Tree> {
    if edges.edges.is_empty() {
        return Err(Error::EmptyEdgeList);
    }
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut order: Vec<u64> = Vec::new();
    let mut compact = |raw: u64| -> usize {
        *ids.entry(raw).or_insert_with(|| {
            order.push(raw);
            order.len() - 1
        })
    };
    let mut pairs = Vec::with_capacity(edges.edges.len());
    for &(u, v) in &edges.edges {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        pairs.push((compact(u), compact(v)));
    }
    let n = order.len();
    validate(n, &pairs, |i| order[i])
}

fn validate(n: usize, pairs: &[(usize, usize)], raw: impl Fn(usize) -> u64) -> Result<Tree> {
    let mut seen = HashSet::with_capacity(pairs.len());
    let mut uf = UnionFind::new(n);
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        if u == v {
            return Err(Error::SelfLoop(raw(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge(raw(u), raw(v)));
        }
        if !uf.union(u, v) {
            return Err(Error::CycleDetected(raw(u), raw(v)));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    if uf.components > 1 {
        return Err(Error::Disconnected(uf.components));
    }
    Ok(Tree::from_adjacency(adj))
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }
}

impl Tree {
    pub fn singleton() -> Tree {
        Tree { adj: vec![Vec::new()] }
    }

    /// Builds a tree on vertices `0..n` from explicit edges without any
    /// relabeling.
    pub fn from_indexed_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::DomainViolation("a tree has at least one vertex".into()));
        }
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, order: n });
                }
            }
        }
        validate(n, edges, |i| i as u64)
    }

    /// Trusted constructor for adjacency produced inside the crate.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Tree {
        for list in &mut adj {
            list.sort_unstable();
        }
        let t = Tree { adj };
        debug_assert_eq!(t.adj.iter().map(Vec::len).sum::<usize>(), 2 * (t.order() - 1));
        t
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter().map(Vec::len)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| self.degree(v) == 1)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Maximum vertex degree. Undefined (an error) for the one-vertex tree.
    pub fn max_degree(&self) -> Result<usize> {
        if self.order() < 2 {
            return Err(Error::SingletonTree);
        }
        Ok(self.degrees().max().unwrap_or(0))
    }

    pub fn census(&self) -> DegreeCensus {
        DegreeCensus::of_tree(self)
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList { edges: self.edges().map(|(u, v)| (u as u64, v as u64)).collect() }
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Tree {
        assert_eq!(perm.len(), self.order(), "permutation length must equal tree order");
        let mut adj = vec![Vec::new(); self.order()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Tree::from_adjacency(adj)
    }

    /// Deletes `remove`, adds `add` (given in old ids), and compacts the
    /// surviving ids preserving their relative order. Returns `None` if the
    /// result is not a tree.
    pub(crate) fn rewire(&self, remove: &[usize], add: &[(usize, usize)]) -> Option<Tree> {
        let mut gone = vec![false; self.order()];
        for &v in remove {
            gone[v] = true;
        }
        let mut new_id = vec![usize::MAX; self.order()];
        let mut next = 0;
        for v in 0..self.order() {
            if !gone[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let mut pairs: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| !gone[u] && !gone[v])
            .map(|(u, v)| (new_id[u], new_id[v]))
            .collect();
        for &(u, v) in add {
            if gone[u] || gone[v] {
                return None;
            }
            pairs.push((new_id[u], new_id[v]));
        }
        if next == 0 {
            return None;
        }
        Tree::from_indexed_edges(next, &pairs).ok()
    }

    /// Vertices in breadth-first order from `root`, with parent pointers
    /// (`usize::MAX` for the root).
    pub(crate) fn bfs(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    order.push(v);
                }
            }
        }
        (order, parent)
    }

    /// Distances from `root` to every vertex.
    pub(crate) fn distances(&self, root: usize) -> Vec<usize> {
        let (order, parent) = self.bfs(root);
        let mut dist = vec![0; self.order()];
        for &v in order.iter().skip(1) {
            dist[v] = dist[parent[v]] + 1;
        }
        dist
    }
}
