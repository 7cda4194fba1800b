//! Degree census: `n_i` (vertices of degree `i`) and `m_{i,j}` (edges whose
//! endpoint degrees are `i ≤ j`).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Only nonzero counts are stored, so two censuses compare equal exactly when
/// every `n_i` and `m_{i,j}` agree. The maximum degree is the largest `i` with
/// `n_i > 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeCensus {
    vertices: BTreeMap<usize, u64>,
    edges: BTreeMap<(usize, usize), u64>,
}

impl DegreeCensus {
    pub fn of_tree(t: &Tree) -> Self {
        let mut c = DegreeCensus::default();
        for d in t.degrees() {
            *c.vertices.entry(d).or_default() += 1;
        }
        for (u, v) in t.edges() {
            let (a, b) = (t.degree(u), t.degree(v));
            *c.edges.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        c
    }

    /// Builds a census from explicit counts and checks the tree identities.
    /// Zero entries are dropped; edge keys may be given in either order.
    pub fn from_counts(
        vertices: impl IntoIterator<Item = (usize, u64)>,
        edges: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<Self> {
        let c = Self::from_counts_unchecked(vertices, edges);
        c.check()?;
        Ok(c)
    }

    pub(crate) fn from_counts_unchecked(
        vertices: impl IntoIterator<Item = (usize, u64)>,
        edges: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Self {
        let mut c = DegreeCensus::default();
        for (d, k) in vertices {
            if k > 0 {
                *c.vertices.entry(d).or_default() += k;
            }
        }
        for ((i, j), k) in edges {
            if k > 0 {
                *c.edges.entry((i.min(j), i.max(j))).or_default() += k;
            }
        }
        c
    }

    /// Checks `Σ i·n_i = 2(n−1)` and the per-degree handshake
    /// `Σ_j m_{i,j}(1 + [i=j]) = i·n_i`.
    pub fn check(&self) -> Result<()> {
        let n = self.order();
        if n == 0 {
            return Err(Error::DomainViolation("census has no vertices".into()));
        }
        let degree_sum: u64 = self.vertices.iter().map(|(&d, &k)| d as u64 * k).sum();
        if degree_sum != 2 * (n - 1) {
            return Err(Error::DomainViolation(format!(
                "degree sum {degree_sum} differs from 2(n-1) = {}",
                2 * (n - 1)
            )));
        }
        let mut ends: BTreeMap<usize, u64> = BTreeMap::new();
        for (&(i, j), &k) in &self.edges {
            *ends.entry(i).or_default() += k;
            *ends.entry(j).or_default() += k;
        }
        for (&d, &k) in &self.vertices {
            let got = ends.remove(&d).unwrap_or(0);
            if got != d as u64 * k {
                return Err(Error::DomainViolation(format!(
                    "handshake at degree {d}: edge ends {got} differ from {d}·n_{d} = {}",
                    d as u64 * k
                )));
            }
        }
        if let Some((&d, _)) = ends.iter().next() {
            return Err(Error::DomainViolation(format!("edges reference degree {d} with n_{d} = 0")));
        }
        Ok(())
    }

    pub fn order(&self) -> u64 {
        self.vertices.values().sum()
    }

    pub fn edge_total(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.keys().next_back().copied().unwrap_or(0)
    }

    /// `n_i`.
    pub fn n(&self, degree: usize) -> u64 {
        self.vertices.get(&degree).copied().unwrap_or(0)
    }

    /// `m_{i,j}`, symmetric in its arguments.
    pub fn m(&self, i: usize, j: usize) -> u64 {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn vertex_counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.vertices.iter().map(|(&d, &k)| (d, k))
    }

    pub fn edge_counts(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.edges.iter().map(|(&e, &k)| (e, k))
    }
}

impl fmt::Display for DegreeCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, k) in self.vertex_counts() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "n{d}={k}")?;
        }
        f.write_str(" |")?;
        for ((i, j), k) in self.edge_counts() {
            write!(f, " m{i}{j}={k}")?;
        }
        Ok(())
    }
}

impl Serialize for DegreeCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: BTreeMap<String, u64> =
            self.vertices.iter().map(|(d, k)| (d.to_string(), *k)).collect();
        let edges: BTreeMap<String, u64> =
            self.edges.iter().map(|((i, j), k)| (format!("{i},{j}"), *k)).collect();
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("order", &self.order())?;
        map.serialize_entry("max_degree", &self.max_degree())?;
        map.serialize_entry("n", &vertices)?;
        map.serialize_entry("m", &edges)?;
        map.end()
    }
}
