//! Constructors for the named trees and the extremal families.
//!
//! Labeling is deterministic: spine vertices come first (in spine order), then
//! pendant vertices grouped by the spine vertex they hang from. Multi-member
//! families are closed under every admissible construction site, deduplicated
//! by canonical code, and returned in ascending code order.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::canonical::{canonical_code, CanonicalCode};
use crate::census::DegreeCensus;
use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    Path,
    Star,
    Spider,
    Broom,
    T1opt,
    T2opt,
    T3opt,
    TT1opt,
    TT2opt,
    TT3opt,
    TT4opt,
}

/// A family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum FamilySpec {
    Path { n: usize },
    Star { n: usize },
    Spider { n: usize, max_degree: usize },
    Broom { n: usize, max_degree: usize, second_degree: usize },
    /// `T^variant_opt(k)`, maximum degree 3, order `3k + variant`.
    TOpt { variant: u8, k: usize },
    /// `TT^variant_opt(k)`, maximum degree 4, order `4k + variant`.
    TTOpt { variant: u8, k: usize },
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match *self {
            FamilySpec::Path { .. } => FamilyKind::Path,
            FamilySpec::Star { .. } => FamilyKind::Star,
            FamilySpec::Spider { .. } => FamilyKind::Spider,
            FamilySpec::Broom { .. } => FamilyKind::Broom,
            FamilySpec::TOpt { variant: 1, .. } => FamilyKind::T1opt,
            FamilySpec::TOpt { variant: 2, .. } => FamilyKind::T2opt,
            FamilySpec::TOpt { .. } => FamilyKind::T3opt,
            FamilySpec::TTOpt { variant: 1, .. } => FamilyKind::TT1opt,
            FamilySpec::TTOpt { variant: 2, .. } => FamilyKind::TT2opt,
            FamilySpec::TTOpt { variant: 3, .. } => FamilyKind::TT3opt,
            FamilySpec::TTOpt { .. } => FamilyKind::TT4opt,
        }
    }

    /// Order shared by every member.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path { n }
            | FamilySpec::Star { n }
            | FamilySpec::Spider { n, .. }
            | FamilySpec::Broom { n, .. } => n,
            FamilySpec::TOpt { variant, k } => 3 * k + variant as usize,
            FamilySpec::TTOpt { variant, k } => 4 * k + variant as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::DomainViolation(msg));
        match *self {
            FamilySpec::Path { n } | FamilySpec::Star { n } if n < 2 => bad(format!("{self}: needs n >= 2")),
            FamilySpec::Spider { n, max_degree } if max_degree < 3 || n < max_degree + 1 => {
                bad(format!("{self}: needs max degree >= 3 and n >= max degree + 1"))
            }
            FamilySpec::Broom { n, max_degree, second_degree }
                if second_degree < 2 || max_degree < second_degree || n < max_degree + second_degree =>
            {
                bad(format!("{self}: needs max degree >= second degree >= 2 and n >= their sum"))
            }
            FamilySpec::TOpt { variant, .. } | FamilySpec::TTOpt { variant, .. }
                if variant == 0 || variant > self.variant_limit() =>
            {
                bad(format!("{self}: unknown variant"))
            }
            FamilySpec::TOpt { k: 0, .. } | FamilySpec::TTOpt { k: 0, .. } => bad(format!("{self}: needs k >= 1")),
            _ => Ok(()),
        }
    }

    fn variant_limit(&self) -> u8 {
        match self {
            FamilySpec::TOpt { .. } => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path { n } => write!(f, "P({n})"),
            FamilySpec::Star { n } => write!(f, "S({n})"),
            FamilySpec::Spider { n, max_degree } => write!(f, "SP({n},{max_degree})"),
            FamilySpec::Broom { n, max_degree, second_degree } => {
                write!(f, "BR({n},{max_degree},{second_degree})")
            }
            FamilySpec::TOpt { variant, k } => write!(f, "T{variant}opt({k})"),
            FamilySpec::TTOpt { variant, k } => write!(f, "TT{variant}opt({k})"),
        }
    }
}

/// A caterpillar: a spine with a number of pendant leaves at each position.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Caterpillar {
    pendants: Vec<usize>,
}

impl Caterpillar {
    fn spine(len: usize) -> Self {
        Caterpillar { pendants: vec![0; len] }
    }

    fn len(&self) -> usize {
        self.pendants.len()
    }

    fn degree(&self, pos: usize) -> usize {
        self.pendants[pos] + usize::from(pos > 0) + usize::from(pos + 1 < self.len())
    }

    /// Inserts a new spine vertex between positions `pos` and `pos + 1`.
    fn subdivide(&self, pos: usize) -> Self {
        let mut next = self.clone();
        next.pendants.insert(pos + 1, 0);
        next
    }

    fn attach(&self, pos: usize, count: usize) -> Self {
        let mut next = self.clone();
        next.pendants[pos] += count;
        next
    }

    fn build(&self) -> Tree {
        let len = self.len();
        let total = len + self.pendants.iter().sum::<usize>();
        let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
        let mut next = len;
        for (pos, &count) in self.pendants.iter().enumerate() {
            for _ in 0..count {
                edges.push((pos, next));
                next += 1;
            }
        }
        Tree::from_indexed_edges(total, &edges).expect("caterpillar is a tree")
    }
}

/// `P_n`, labeled along the path.
pub fn make_path(n: usize) -> Result<Tree> {
    FamilySpec::Path { n }.validate()?;
    Ok(Caterpillar::spine(n).build())
}

/// `S_n`: vertex 0 is the center.
pub fn make_star(n: usize) -> Result<Tree> {
    FamilySpec::Star { n }.validate()?;
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Tree::from_indexed_edges(n, &edges)
}

/// `SP(n, Δ)`: `Δ − 1` legs of length one and one leg of length `n − Δ`. The
/// spine runs from the center (vertex 0) along the long leg.
pub fn make_spider(n: usize, max_degree: usize) -> Result<Tree> {
    FamilySpec::Spider { n, max_degree }.validate()?;
    let mut cat = Caterpillar::spine(n - max_degree + 1);
    cat.pendants[0] = max_degree - 1;
    Ok(cat.build())
}

/// `BR(n, Δ, Δ′)`: a path on `n − Δ − Δ′ + 2` vertices with `Δ − 1` pendants at
/// its first end and `Δ′ − 1` at its last.
pub fn make_broom(n: usize, max_degree: usize, second_degree: usize) -> Result<Tree> {
    FamilySpec::Broom { n, max_degree, second_degree }.validate()?;
    let len = n + 2 - max_degree - second_degree;
    let mut cat = Caterpillar::spine(len);
    cat.pendants[0] += max_degree - 1;
    cat.pendants[len - 1] += second_degree - 1;
    Ok(cat.build())
}

/// Spine `v_1 … v_{2k+1}` with `per_site` pendants at every even position.
fn base_caterpillar(k: usize, per_site: usize) -> Caterpillar {
    let mut cat = Caterpillar::spine(2 * k + 1);
    for i in (2..=2 * k).step_by(2) {
        cat.pendants[i - 1] = per_site;
    }
    cat
}

/// Subdivide `v_i v_{i+1}` for every odd `3 ≤ i ≤ 2k − 1`.
fn second_variants(k: usize, per_site: usize) -> Vec<Caterpillar> {
    let base = base_caterpillar(k, per_site);
    (3..2 * k).step_by(2).map(|i| base.subdivide(i - 1)).collect()
}

/// Subdivide every spine edge `v_i v_{i+1}` with `deg v_i ≥ 2` and
/// `deg v_{i+1} = 2`.
fn subdivide_into_degree_two(cats: &[Caterpillar]) -> Vec<Caterpillar> {
    let mut out = Vec::new();
    for cat in cats {
        for pos in 0..cat.len() - 1 {
            if cat.degree(pos) >= 2 && cat.degree(pos + 1) == 2 {
                out.push(cat.subdivide(pos));
            }
        }
    }
    out
}

/// Attach `count` pendants at either end of every spine edge joining two
/// degree-2 vertices.
fn attach_on_two_two_edges(cats: &[Caterpillar], count: usize) -> Vec<Caterpillar> {
    let mut out = Vec::new();
    for cat in cats {
        for pos in 0..cat.len() - 1 {
            if cat.degree(pos) == 2 && cat.degree(pos + 1) == 2 {
                out.push(cat.attach(pos, count));
                out.push(cat.attach(pos + 1, count));
            }
        }
    }
    out
}

fn family_caterpillars(spec: &FamilySpec) -> Vec<Caterpillar> {
    let (k, variant, per_site) = match *spec {
        FamilySpec::TOpt { variant, k } => (k, variant, 1),
        FamilySpec::TTOpt { variant, k } => (k, variant, 2),
        _ => unreachable!("only optimal families are caterpillar closures"),
    };
    let first = vec![base_caterpillar(k, per_site)];
    if variant == 1 {
        return first;
    }
    let second = second_variants(k, per_site);
    if variant == 2 {
        return second;
    }
    let mut third = subdivide_into_degree_two(&second);
    let is_t = matches!(spec, FamilySpec::TOpt { .. });
    if is_t {
        // T³: also grow v_1 by two pendants, or add one pendant on a (2,2) edge.
        third.push(first[0].attach(0, 2));
        third.extend(attach_on_two_two_edges(&second, 1));
        return third;
    }
    if variant == 3 {
        return third;
    }
    // TT⁴: subdivide TT³ further, grow v_1 of TT¹ by three, or add two
    // pendants on a (2,2) edge of TT².
    let mut fourth = subdivide_into_degree_two(&third);
    fourth.push(first[0].attach(0, 3));
    fourth.extend(attach_on_two_two_edges(&second, 2));
    fourth
}

fn dedup(trees: impl IntoIterator<Item = Tree>) -> Vec<Tree> {
    let mut by_code: BTreeMap<CanonicalCode, Tree> = BTreeMap::new();
    for t in trees {
        by_code.entry(canonical_code(&t)).or_insert(t);
    }
    by_code.into_values().collect()
}

/// `T^variant_opt(k)` for `variant ∈ {1, 2, 3}`.
pub fn make_t_opt(variant: u8, k: usize) -> Result<Vec<Tree>> {
    members(&FamilySpec::TOpt { variant, k })
}

/// `TT^variant_opt(k)` for `variant ∈ {1, 2, 3, 4}`.
pub fn make_tt_opt(variant: u8, k: usize) -> Result<Vec<Tree>> {
    members(&FamilySpec::TTOpt { variant, k })
}

/// All members of a family, one per isomorphism class, in canonical-code order.
pub fn members(spec: &FamilySpec) -> Result<Vec<Tree>> {
    spec.validate()?;
    Ok(match *spec {
        FamilySpec::Path { n } => vec![make_path(n)?],
        FamilySpec::Star { n } => vec![make_star(n)?],
        FamilySpec::Spider { n, max_degree } => vec![make_spider(n, max_degree)?],
        FamilySpec::Broom { n, max_degree, second_degree } => vec![make_broom(n, max_degree, second_degree)?],
        _ => dedup(family_caterpillars(spec).iter().map(Caterpillar::build)),
    })
}

/// Canonical codes of all members, ascending.
pub fn member_codes(spec: &FamilySpec) -> Result<Vec<CanonicalCode>> {
    Ok(members(spec)?.iter().map(canonical_code).collect())
}

type Counts = (Vec<(usize, u64)>, Vec<((usize, usize), u64)>);

fn census(counts: Counts) -> DegreeCensus {
    DegreeCensus::from_counts(counts.0, counts.1).expect("stated family census satisfies the tree identities")
}

/// The degree censuses the family's members are stated to have. Families
/// with several construction cases return one census per case.
pub fn predicted_census(spec: &FamilySpec) -> Result<Vec<DegreeCensus>> {
    spec.validate()?;
    let u = |x: usize| x as u64;
    let out = match *spec {
        FamilySpec::Path { n: 2 } => vec![census((vec![(1, 2)], vec![((1, 1), 1)]))],
        FamilySpec::Path { n } => {
            vec![census((vec![(1, 2), (2, u(n - 2))], vec![((1, 2), 2), ((2, 2), u(n - 3))]))]
        }
        FamilySpec::Star { n: 2 } => predicted_census(&FamilySpec::Path { n: 2 })?,
        FamilySpec::Star { n } => vec![census((vec![(1, u(n - 1)), (n - 1, 1)], vec![((1, n - 1), u(n - 1))]))],
        FamilySpec::Spider { n, max_degree: d } if n == d + 1 => predicted_census(&FamilySpec::Star { n })?,
        FamilySpec::Spider { n, max_degree: d } => vec![census((
            vec![(1, u(d)), (2, u(n - d - 1)), (d, 1)],
            vec![((1, d), u(d - 1)), ((2, d), 1), ((2, 2), u(n - d - 2)), ((1, 2), 1)],
        ))],
        FamilySpec::Broom { n, max_degree: d, second_degree: 2 } => {
            predicted_census(&FamilySpec::Spider { n, max_degree: d })?
        }
        FamilySpec::Broom { n, max_degree: d, second_degree: e } => {
            let inner = n + 2 - d - e - 2;
            let mut edges = vec![((1, d), u(d - 1)), ((1, e), u(e - 1))];
            if inner == 0 {
                edges.push(((d, e), 1));
            } else {
                edges.extend([((2, d), 1), ((2, e), 1), ((2, 2), u(inner - 1))]);
            }
            vec![census((vec![(1, u(d + e - 2)), (2, u(inner)), (d, 1), (e, 1)], edges))]
        }
        FamilySpec::TOpt { variant, k } => {
            let k = u(k);
            let base = |n2: u64, m22: u64| {
                census((
                    vec![(1, k + 2), (2, n2), (3, k)],
                    vec![((1, 3), k + 2), ((2, 3), 2 * k - 2), ((2, 2), m22)],
                ))
            };
            match variant {
                1 => vec![base(k - 1, 0)],
                2 => vec![base(k, 1)],
                _ => vec![
                    base(k + 1, 2),
                    census((
                        vec![(1, k + 3), (2, k - 1), (3, k + 1)],
                        vec![((1, 3), k + 3), ((3, 3), 1), ((2, 3), 2 * k - 2)],
                    )),
                ],
            }
        }
        FamilySpec::TTOpt { variant, k } => {
            let k = u(k);
            let base = |n2: u64, m22: u64| {
                census((
                    vec![(1, 2 * k + 2), (2, n2), (4, k)],
                    vec![((1, 4), 2 * k + 2), ((2, 4), 2 * k - 2), ((2, 2), m22)],
                ))
            };
            match variant {
                1 => vec![base(k - 1, 0)],
                2 => vec![base(k, 1)],
                3 => vec![base(k + 1, 2)],
                _ => vec![
                    base(k + 2, 3),
                    census((
                        vec![(1, 2 * k + 4), (2, k - 1), (4, k + 1)],
                        vec![((1, 4), 2 * k + 4), ((2, 4), 2 * k - 2), ((4, 4), 1)],
                    )),
                ],
            }
        }
    };
    Ok(out)
}
