//! Reference implementations that share no code with the library's canonical
//! form or enumerator: Prüfer decoding, an eccentricity-centered encoding, and
//! backtracking isomorphism.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use zagreb_core::Tree;

/// Adjacency lists of the labeled tree with the given Prüfer sequence.
pub fn prufer_decode(seq: &[usize]) -> Vec<Vec<usize>> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &x in seq {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        adj[leaf].push(x);
        adj[x].push(leaf);
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    adj[rest[0]].push(rest[1]);
    adj[rest[1]].push(rest[0]);
    adj
}

pub fn to_tree(adj: &[Vec<usize>]) -> Tree {
    let edges: Vec<(usize, usize)> =
        adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v))).collect();
    Tree::from_indexed_edges(adj.len(), &edges).unwrap()
}

pub fn adjacency(t: &Tree) -> Vec<Vec<usize>> {
    (0..t.order()).map(|v| t.neighbors(v).to_vec()).collect()
}

/// Calls `f` on every labeled tree of order `n` (`n^(n−2)` of them).
pub fn for_each_labeled_tree(n: usize, mut f: impl FnMut(&[Vec<usize>])) {
    match n {
        0 => {}
        1 => f(&[Vec::new()]),
        2 => f(&[vec![1], vec![0]]),
        _ => {
            let mut seq = vec![0usize; n - 2];
            loop {
                f(&prufer_decode(&seq));
                let mut i = 0;
                while i < seq.len() && seq[i] == n - 1 {
                    seq[i] = 0;
                    i += 1;
                }
                if i == seq.len() {
                    return;
                }
                seq[i] += 1;
            }
        }
    }
}

fn distances(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; adj.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if d[v] == usize::MAX {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

fn encode(adj: &[Vec<usize>], v: usize, parent: usize, out: &mut Vec<u8>) {
    let mut kids: Vec<Vec<u8>> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| {
            let mut s = Vec::new();
            encode(adj, w, v, &mut s);
            s
        })
        .collect();
    kids.sort();
    out.push(b'0');
    for k in kids {
        out.extend(k);
    }
    out.push(b'1');
}

/// Middle vertex (or vertices) of a longest path, found by two sweeps.
fn diameter_middle(adj: &[Vec<usize>]) -> Vec<usize> {
    let far = |d: &[usize]| (0..d.len()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap();
    let a = far(&distances(adj, 0));
    let from_a = distances(adj, a);
    let b = far(&from_a);
    let from_b = distances(adj, b);
    let len = from_a[b];
    (0..adj.len())
        .filter(|&v| from_a[v] + from_b[v] == len && (from_a[v] == len / 2 || from_a[v] == len.div_ceil(2)))
        .collect()
}

/// Isomorphism invariant that is complete for trees: the smallest rooted
/// encoding over the middle vertices of a diameter.
pub fn oracle_code(adj: &[Vec<usize>]) -> Vec<u8> {
    diameter_middle(adj)
        .into_iter()
        .map(|v| {
            let mut s = Vec::new();
            encode(adj, v, usize::MAX, &mut s);
            s
        })
        .min()
        .unwrap()
}

/// Every unlabeled tree of order `n`, keyed by oracle code, with its maximum
/// degree, found by deduplicating all labeled trees.
pub fn oracle_classes(n: usize) -> std::collections::HashMap<Vec<u8>, usize> {
    let mut seen = std::collections::HashMap::new();
    for_each_labeled_tree(n, |adj| {
        let d = adj.iter().map(Vec::len).max().unwrap_or(0);
        seen.entry(oracle_code(adj)).or_insert(d);
    });
    seen
}

/// Backtracking search for a degree- and adjacency-preserving bijection.
pub fn brute_isomorphic(a: &Tree, b: &Tree) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(a: &Tree, b: &Tree, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if i == a.order() {
            return true;
        }
        for cand in 0..b.order() {
            if used[cand] || a.degree(i) != b.degree(cand) {
                continue;
            }
            let ok = a.neighbors(i).iter().filter(|&&j| j < i).all(|&j| b.neighbors(cand).contains(&map[j]));
            if ok {
                map[i] = cand;
                used[cand] = true;
                if extend(a, b, i + 1, map, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    extend(a, b, 0, &mut map, &mut used)
}

/// Random labeled trees of order `lo..=hi`, via Prüfer sequences.
pub fn arb_tree(lo: usize, hi: usize) -> impl Strategy<Value = Tree> {
    (lo.max(3)..=hi)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n - 2))
        .prop_map(|seq| to_tree(&prufer_decode(&seq)))
}

/// A random permutation of `0..n`.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// A tree paired with a relabeled copy.
pub fn arb_relabeled(lo: usize, hi: usize) -> impl Strategy<Value = (Tree, Tree)> {
    arb_tree(lo, hi).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), arb_permutation(n)).prop_map(|(t, p)| {
            let r = t.relabel(&p);
            (t, r)
        })
    })
}
