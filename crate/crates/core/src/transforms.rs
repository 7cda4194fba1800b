//! Reduction steps on trees of maximum degree at most 3, each carrying the
//! exact change in `GRM₋₂` it claims, plus the pendant-removal recurrence for
//! general `λ`.
//!
//! | step | trigger                                           | removed | `GRM₋₂(T) − GRM₋₂(T′)` |
//! |------|---------------------------------------------------|---------|------------------------|
//! | 1    | an edge joining two degree-2 vertices             | 1       | 0                      |
//! | 2    | leaf – degree 2 – degree 3                        | 1       | +1                     |
//! | 3    | two leaves on a degree-3 vertex whose third neighbor has degree 3 | 2 | 0            |
//! | 4    | two leaves on `v` (deg 3), `v – w – t` with deg `w` = 2, deg `t` = 3 | 3 | −1        |

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::grm;
use crate::rational::{int, Rational};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TransformKind {
    MergeDegreeTwo,
    DropLeafNearBranch,
    DropLeafPair,
    ContractArm,
}

impl TransformKind {
    pub const ALL: [TransformKind; 4] = [
        TransformKind::MergeDegreeTwo,
        TransformKind::DropLeafNearBranch,
        TransformKind::DropLeafPair,
        TransformKind::ContractArm,
    ];

    /// 1-based position in the application order.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// `GRM₋₂(T) − GRM₋₂(T′)`.
    pub fn claimed_delta(self) -> i64 {
        match self {
            TransformKind::MergeDegreeTwo | TransformKind::DropLeafPair => 0,
            TransformKind::DropLeafNearBranch => 1,
            TransformKind::ContractArm => -1,
        }
    }

    pub fn removed_count(self) -> usize {
        match self {
            TransformKind::MergeDegreeTwo | TransformKind::DropLeafNearBranch => 1,
            TransformKind::DropLeafPair => 2,
            TransformKind::ContractArm => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformOutcome {
    pub kind: TransformKind,
    /// Vertices (ids in the input tree) that define the site, in the order the
    /// step names them.
    pub site: Vec<usize>,
    /// Vertices deleted from the input tree.
    pub removed: Vec<usize>,
    #[serde(skip)]
    pub result: Tree,
    #[serde(with = "crate::rational::serde_rational")]
    pub claimed_delta: Rational,
}

impl TransformOutcome {
    /// Recomputes `GRM₋₂` on both trees and compares with the claim.
    pub fn delta_holds(&self, before: &Tree) -> bool {
        let lambda = int(-2);
        match (grm(before, &lambda), grm(&self.result, &lambda)) {
            (Ok(a), Ok(b)) => a - b == self.claimed_delta,
            _ => false,
        }
    }
}

fn check_preconditions(t: &Tree) -> Result<()> {
    let d = t.max_degree()?;
    if d > 3 {
        return Err(Error::DegreeBoundViolated { found: d, limit: 3 });
    }
    if t.order() < 7 {
        return Err(Error::DomainViolation(format!("transformations need n >= 7, got {}", t.order())));
    }
    Ok(())
}

fn outcome(t: &Tree, kind: TransformKind, site: Vec<usize>, remove: Vec<usize>, add: &[(usize, usize)]) -> TransformOutcome {
    let result = t.rewire(&remove, add).expect("transformation keeps a tree");
    TransformOutcome { kind, site, removed: remove, result, claimed_delta: int(kind.claimed_delta()) }
}

/// Every site at which `kind` applies, in ascending site order.
pub fn instances(t: &Tree, kind: TransformKind) -> Result<Vec<TransformOutcome>> {
    check_preconditions(t)?;
    let deg = |v: usize| t.degree(v);
    let mut out = Vec::new();
    match kind {
        TransformKind::MergeDegreeTwo => {
            for (a, b) in t.edges() {
                if deg(a) == 2 && deg(b) == 2 {
                    let other = *t.neighbors(b).iter().find(|&&x| x != a).expect("degree 2");
                    out.push(outcome(t, kind, vec![a, b], vec![b], &[(a, other)]));
                }
            }
        }
        TransformKind::DropLeafNearBranch => {
            for v in t.leaves() {
                let u = t.neighbors(v)[0];
                if deg(u) != 2 {
                    continue;
                }
                let w = *t.neighbors(u).iter().find(|&&x| x != v).expect("degree 2");
                match deg(w) {
                    3 => out.push(outcome(t, kind, vec![v, u, w], vec![v], &[])),
                    // only P₃ has leaf – 2 – leaf, and n >= 7 here
                    1 => return Err(Error::UnreachableBranch("leaf-2-leaf path in a tree with n >= 7".into())),
                    _ => {}
                }
            }
        }
        TransformKind::DropLeafPair | TransformKind::ContractArm => {
            for (u, u2, v, w) in leaf_pair_sites(t) {
                if kind == TransformKind::DropLeafPair && deg(w) == 3 {
                    out.push(outcome(t, kind, vec![u, u2, v, w], vec![u, u2], &[]));
                }
                if kind == TransformKind::ContractArm && deg(w) == 2 {
                    let tt = *t.neighbors(w).iter().find(|&&x| x != v).expect("degree 2");
                    if deg(tt) == 3 {
                        out.push(outcome(t, kind, vec![u, u2, v, w, tt], vec![v, u2, w], &[(u, tt)]));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(u, u′, v, w)`: `u < u′` leaves on `v` of degree 3 whose third neighbor `w`
/// is not a leaf.
fn leaf_pair_sites(t: &Tree) -> Vec<(usize, usize, usize, usize)> {
    let mut sites = Vec::new();
    for v in 0..t.order() {
        if t.degree(v) != 3 {
            continue;
        }
        let nb = t.neighbors(v);
        let leaves: Vec<usize> = nb.iter().copied().filter(|&x| t.is_leaf(x)).collect();
        if leaves.len() == 2 {
            let w = *nb.iter().find(|&&x| !t.is_leaf(x)).expect("one non-leaf neighbor");
            sites.push((leaves[0], leaves[1], v, w));
        }
    }
    sites.sort_unstable();
    sites
}

/// Leaves that end some longest path.
fn diameter_endpoints(t: &Tree) -> Vec<usize> {
    let far = |root: usize| {
        let d = t.distances(root);
        let max = *d.iter().max().unwrap_or(&0);
        (d, max)
    };
    let (d0, _) = far(0);
    let a = (0..t.order()).max_by_key(|&v| (d0[v], std::cmp::Reverse(v))).unwrap_or(0);
    let (da, diameter) = far(a);
    let b = (0..t.order()).max_by_key(|&v| (da[v], std::cmp::Reverse(v))).unwrap_or(0);
    let (db, _) = far(b);
    // v ends a diameter path iff its eccentricity equals the diameter
    let mut ends: Vec<usize> = (0..t.order()).filter(|&v| da[v].max(db[v]) == diameter).collect();
    ends.sort_unstable();
    ends
}

/// Applies `kind` at its deterministic site. Steps 1 and 2 use the lowest
/// site; steps 3 and 4 use the lowest-id leaf ending a longest path, and
/// apply only when that configuration matches.
pub fn apply(t: &Tree, kind: TransformKind) -> Result<Option<TransformOutcome>> {
    let mut all = instances(t, kind)?;
    match kind {
        TransformKind::MergeDegreeTwo | TransformKind::DropLeafNearBranch => {
            Ok(if all.is_empty() { None } else { Some(all.swap_remove(0)) })
        }
        TransformKind::DropLeafPair | TransformKind::ContractArm => {
            let ends = diameter_endpoints(t);
            let Some(&u) = ends.first() else { return Ok(None) };
            Ok(all.into_iter().find(|o| o.site[0] == u || o.site[1] == u).map(|mut o| {
                // name the path endpoint first
                if o.site[1] == u {
                    o.site.swap(0, 1);
                    if kind == TransformKind::ContractArm {
                        let (a, b) = (o.site[0], o.site[1]);
                        let (v, w, tt) = (o.site[2], o.site[3], o.site[4]);
                        o = outcome(t, kind, vec![a, b, v, w, tt], vec![v, b, w], &[(a, tt)]);
                    }
                }
                o
            }))
        }
    }
}

pub fn transform1(t: &Tree) -> Result<Option<TransformOutcome>> {
    apply(t, TransformKind::MergeDegreeTwo)
}

pub fn transform2(t: &Tree) -> Result<Option<TransformOutcome>> {
    apply(t, TransformKind::DropLeafNearBranch)
}

pub fn transform3(t: &Tree) -> Result<Option<TransformOutcome>> {
    apply(t, TransformKind::DropLeafPair)
}

pub fn transform4(t: &Tree) -> Result<Option<TransformOutcome>> {
    apply(t, TransformKind::ContractArm)
}

#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    #[serde(skip)]
    pub result: Tree,
    pub trace: Vec<TransformOutcome>,
    /// Sum of the claimed deltas along the trace.
    #[serde(with = "crate::rational::serde_rational")]
    pub total_delta: Rational,
}

/// Applies the first applicable step (in order 1 → 4) until the order drops
/// below 7 or nothing applies.
pub fn normalize(t: &Tree) -> Result<Normalization> {
    let d = t.max_degree()?;
    if d > 3 {
        return Err(Error::DegreeBoundViolated { found: d, limit: 3 });
    }
    let mut current = t.clone();
    let mut trace = Vec::new();
    let mut total = int(0);
    'outer: while current.order() >= 7 {
        for kind in TransformKind::ALL {
            if let Some(o) = apply(&current, kind)? {
                total += &o.claimed_delta;
                current = o.result.clone();
                trace.push(o);
                continue 'outer;
            }
        }
        break;
    }
    Ok(Normalization { result: current, trace, total_delta: total })
}

/// `GRM_λ(T) − GRM_λ(T − v)` for a leaf `v` with neighbor `w`, via
/// `(λ + 1)(λ + deg w) + Σ_{w′ ∼ w, w′ ≠ v} (λ + deg w′)`.
pub fn pendant_removal_delta(t: &Tree, v: usize, lambda: &Rational) -> Result<Rational> {
    if v >= t.order() {
        return Err(Error::VertexOutOfRange { id: v, order: t.order() });
    }
    if t.order() < 3 {
        return Err(Error::DomainViolation("pendant removal needs n >= 3".into()));
    }
    if !t.is_leaf(v) {
        return Err(Error::NotALeaf(v));
    }
    let w = t.neighbors(v)[0];
    let term = |d: usize| int(d as i64) + lambda;
    let mut delta = term(1) * term(t.degree(w));
    for &x in t.neighbors(w) {
        if x != v {
            delta += term(t.degree(x));
        }
    }
    Ok(delta)
}

/// `T − v` for a leaf `v`.
pub fn remove_leaf(t: &Tree, v: usize) -> Result<Tree> {
    if v >= t.order() {
        return Err(Error::VertexOutOfRange { id: v, order: t.order() });
    }
    if !t.is_leaf(v) {
        return Err(Error::NotALeaf(v));
    }
    t.rewire(&[v], &[]).ok_or_else(|| Error::DomainViolation("cannot remove the last vertex".into()))
}
