//! Canonical codes for free trees.
//!
//! A tree is rooted at its center and encoded bottom-up: each vertex becomes
//! `(` followed by the sorted codes of its children and `)`. When the center is
//! an edge, both endpoints are tried and the smaller string wins.

use std::fmt;

use serde::Serialize;

use crate::tree::Tree;

/// Label-invariant identity of a tree's isomorphism class. Ordered
/// lexicographically as a string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One or two central vertices, found by peeling leaves layer by layer.
pub fn centers(t: &Tree) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = t.degrees().collect();
    let mut layer: Vec<usize> = t.leaves().collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &p in t.neighbors(leaf) {
                if degree[p] > 1 {
                    degree[p] -= 1;
                    if degree[p] == 1 {
                        next.push(p);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// AHU encoding of `t` rooted at `root`.
pub fn rooted_code(t: &Tree, root: usize) -> String {
    let (order, parent) = t.bfs(root);
    let mut codes: Vec<String> = vec![String::new(); t.order()];
    let mut children: Vec<Vec<String>> = vec![Vec::new(); t.order()];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[v]);
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        for k in &kids {
            code.push_str(k);
        }
        code.push(')');
        if parent[v] == usize::MAX {
            codes[v] = code;
        } else {
            children[parent[v]].push(code);
        }
    }
    std::mem::take(&mut codes[root])
}

pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let code = centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .expect("a tree has at least one center");
    CanonicalCode(code)
}

pub fn isomorphic(a: &Tree, b: &Tree) -> bool {
    a.order() == b.order() && canonical_code(a) == canonical_code(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, edges: &[(usize, usize)]) -> Tree {
        Tree::from_indexed_edges(n, edges).unwrap()
    }

    #[test]
    fn path_relabeling_is_invariant() {
        let a = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = tree(4, &[(2, 0), (0, 3), (3, 1)]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_code(&a).as_str(), "((())())");
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        let s4 = tree(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!isomorphic(&p4, &s4));
        assert_eq!(canonical_code(&s4).as_str(), "(()()())");
    }

    #[test]
    fn centers_of_paths() {
        let p5 = tree(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(centers(&p5), vec![2]);
        let p4 = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(centers(&p4), vec![1, 2]);
        assert_eq!(centers(&Tree::singleton()), vec![0]);
        assert_eq!(canonical_code(&Tree::singleton()).as_str(), "()");
    }
}
