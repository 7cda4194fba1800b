//! The linear census systems for maximum degree 3 and 4, their solved forms,
//! the `GRM₋₂` census formulas, lower bounds, and the censuses that attain
//! them.
//!
//! The solved forms are written out by hand below. [`check_solved_forms`]
//! re-derives them from the raw systems by exact Gauss–Jordan elimination, so
//! a transcription slip in either place is caught.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::census::DegreeCensus;
use crate::error::{Error, Result};
use crate::indices::{closed_form, ClosedShape};
use crate::rational::{int, is_nonnegative_integer, to_i64, Rational};

/// A census unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Order `n`.
    Order,
    N(usize),
    M(usize, usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Order => f.write_str("n"),
            Var::N(i) => write!(f, "n{i}"),
            Var::M(i, j) => write!(f, "m{i}{j}"),
        }
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Free variables of the maximum-degree-3 system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FreeCensusVarsD3 {
    pub n: i64,
    pub n3: i64,
    pub m22: i64,
    pub m23: i64,
}

/// Free variables of the maximum-degree-4 system.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FreeCensusVarsD4 {
    pub n: i64,
    pub n3: i64,
    pub m12: i64,
    pub m13: i64,
    pub m22: i64,
    pub m23: i64,
    pub m34: i64,
    pub m44: i64,
}

fn count(c: &DegreeCensus, v: Var) -> i64 {
    match v {
        Var::Order => c.order() as i64,
        Var::N(i) => c.n(i) as i64,
        Var::M(i, j) => c.m(i, j) as i64,
    }
}

fn require_bound(c: &DegreeCensus, limit: usize) -> Result<()> {
    if c.max_degree() > limit {
        return Err(Error::DegreeBoundViolated { found: c.max_degree(), limit });
    }
    if c.m(1, 1) > 0 || c.order() < 3 {
        return Err(Error::DomainViolation("census systems assume n >= 3".into()));
    }
    Ok(())
}

impl FreeCensusVarsD3 {
    pub fn from_census(c: &DegreeCensus) -> Result<Self> {
        require_bound(c, 3)?;
        Ok(FreeCensusVarsD3 {
            n: count(c, Var::Order),
            n3: count(c, Var::N(3)),
            m22: count(c, Var::M(2, 2)),
            m23: count(c, Var::M(2, 3)),
        })
    }

    fn as_map(&self) -> BTreeMap<Var, Rational> {
        [(Var::Order, self.n), (Var::N(3), self.n3), (Var::M(2, 2), self.m22), (Var::M(2, 3), self.m23)]
            .into_iter()
            .map(|(v, x)| (v, int(x)))
            .collect()
    }
}

impl FreeCensusVarsD4 {
    pub fn from_census(c: &DegreeCensus) -> Result<Self> {
        require_bound(c, 4)?;
        Ok(FreeCensusVarsD4 {
            n: count(c, Var::Order),
            n3: count(c, Var::N(3)),
            m12: count(c, Var::M(1, 2)),
            m13: count(c, Var::M(1, 3)),
            m22: count(c, Var::M(2, 2)),
            m23: count(c, Var::M(2, 3)),
            m34: count(c, Var::M(3, 4)),
            m44: count(c, Var::M(4, 4)),
        })
    }

    fn as_map(&self) -> BTreeMap<Var, Rational> {
        [
            (Var::Order, self.n),
            (Var::N(3), self.n3),
            (Var::M(1, 2), self.m12),
            (Var::M(1, 3), self.m13),
            (Var::M(2, 2), self.m22),
            (Var::M(2, 3), self.m23),
            (Var::M(3, 4), self.m34),
            (Var::M(4, 4), self.m44),
        ]
        .into_iter()
        .map(|(v, x)| (v, int(x)))
        .collect()
    }
}

/// Values of all unknowns after solving; dependent values may be negative or
/// fractional, in which case the census is not realizable. The flag only
/// records nonnegativity and integrality: some flagged solutions (say `n₃ = 3`
/// with `m₃₃ = 4`) still correspond to no tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolvedCensus {
    #[serde(serialize_with = "serialize_values")]
    pub values: BTreeMap<Var, Rational>,
    pub realizable: bool,
}

fn serialize_values<S: serde::Serializer>(
    values: &BTreeMap<Var, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(values.len()))?;
    for (k, v) in values {
        map.serialize_entry(&k.to_string(), &crate::rational::format_rational(v))?;
    }
    map.end()
}

impl SolvedCensus {
    fn new(values: BTreeMap<Var, Rational>) -> Self {
        let realizable = values.values().all(is_nonnegative_integer);
        SolvedCensus { values, realizable }
    }

    pub fn get(&self, v: Var) -> Rational {
        self.values.get(&v).cloned().unwrap_or_else(|| int(0))
    }

    /// `Σ (i − 2)(j − 2)·m_ij` over the solved values, defined even when the
    /// census is not realizable.
    pub fn grm_minus_two(&self) -> Rational {
        self.values
            .iter()
            .filter_map(|(v, x)| match *v {
                Var::M(i, j) => Some(int((i as i64 - 2) * (j as i64 - 2)) * x),
                _ => None,
            })
            .sum()
    }

    /// The full census, when realizable and consistent with the tree identities.
    pub fn census(&self) -> Option<DegreeCensus> {
        if !self.realizable {
            return None;
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (v, x) in &self.values {
            let k = to_i64(x)? as u64;
            match *v {
                Var::Order => {}
                Var::N(i) => vertices.push((i, k)),
                Var::M(i, j) => edges.push(((i, j), k)),
            }
        }
        DegreeCensus::from_counts(vertices, edges).ok()
    }
}

/// Hand-written solved form of the maximum-degree-3 system.
fn solved_d3(free: &BTreeMap<Var, Rational>) -> BTreeMap<Var, Rational> {
    let g = |v| free.get(&v).cloned().unwrap_or_else(|| int(0));
    let (n, n3, m22, m23) = (g(Var::Order), g(Var::N(3)), g(Var::M(2, 2)), g(Var::M(2, 3)));
    let mut out = free.clone();
    out.insert(Var::N(1), int(2) + &n3);
    out.insert(Var::N(2), &n - int(2) - int(2) * &n3);
    out.insert(Var::M(3, 3), &n - &n3 - int(3) - &m22 - &m23);
    out.insert(Var::M(1, 3), int(5) * &n3 + int(2) * &m22 + &m23 - int(2) * &n + int(6));
    out.insert(Var::M(1, 2), int(2) * &n - int(4) * &n3 - int(2) * &m22 - &m23 - int(4));
    out
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Hand-written solved form of the maximum-degree-4 system.
fn solved_d4(free: &BTreeMap<Var, Rational>) -> BTreeMap<Var, Rational> {
    let g = |v| free.get(&v).cloned().unwrap_or_else(|| int(0));
    let n = g(Var::Order);
    let n3 = g(Var::N(3));
    let (m12, m13, m22, m23, m34, m44) =
        (g(Var::M(1, 2)), g(Var::M(1, 3)), g(Var::M(2, 2)), g(Var::M(2, 3)), g(Var::M(3, 4)), g(Var::M(4, 4)));
    let mut out = free.clone();
    out.insert(
        Var::N(1),
        -q(1, 2) * &m12 - q(1, 4) * &m13 - q(1, 2) * &m22 - q(1, 4) * &m23 + q(1, 4) * &m34 + q(1, 2) * &m44
            + q(1, 2) * &n
            + q(1, 4) * &n3
            + q(3, 2),
    );
    out.insert(
        Var::N(2),
        q(3, 4) * &m12 + q(3, 8) * &m13 + q(3, 4) * &m22 + q(3, 8) * &m23 - q(3, 8) * &m34 - q(3, 4) * &m44
            + q(1, 4) * &n
            - q(7, 8) * &n3
            - q(5, 4),
    );
    out.insert(
        Var::N(4),
        -q(1, 4) * &m12 - q(1, 8) * &m13 - q(1, 4) * &m22 - q(1, 8) * &m23 + q(1, 8) * &m34 + q(1, 4) * &m44
            + q(1, 4) * &n
            - q(3, 8) * &n3
            - q(1, 4),
    );
    out.insert(
        Var::M(1, 4),
        -q(3, 2) * &m12 - q(5, 4) * &m13 - q(1, 2) * &m22 - q(1, 4) * &m23 + q(1, 4) * &m34 + q(1, 2) * &m44
            + q(1, 2) * &n
            + q(1, 4) * &n3
            + q(3, 2),
    );
    out.insert(
        Var::M(2, 4),
        q(1, 2) * &m12 + q(3, 4) * &m13 - q(1, 2) * &m22 - q(1, 4) * &m23 - q(3, 4) * &m34 - q(3, 2) * &m44
            + q(1, 2) * &n
            - q(7, 4) * &n3
            - q(5, 2),
    );
    out.insert(Var::M(3, 3), -q(1, 2) * &m13 - q(1, 2) * &m23 - q(1, 2) * &m34 + q(3, 2) * &n3);
    out
}

fn checked() -> Result<()> {
    static CHECK: OnceLock<Result<()>> = OnceLock::new();
    CHECK.get_or_init(check_solved_forms).clone()
}

pub fn solve_census_d3(v: &FreeCensusVarsD3) -> Result<SolvedCensus> {
    checked()?;
    Ok(SolvedCensus::new(solved_d3(&v.as_map())))
}

pub fn solve_census_d4(v: &FreeCensusVarsD4) -> Result<SolvedCensus> {
    checked()?;
    Ok(SolvedCensus::new(solved_d4(&v.as_map())))
}

/// `GRM₋₂ = m₃₃ − m₁₃` for maximum degree at most 3.
pub fn grm2_census_d3(c: &DegreeCensus) -> Result<Rational> {
    require_bound(c, 3)?;
    Ok(int(count(c, Var::M(3, 3)) - count(c, Var::M(1, 3))))
}

/// `GRM₋₂ = 3m₁₂ + m₁₃ + m₂₂ + m₃₄ + 3m₄₄ − n + n₃ − 3` for maximum degree at
/// most 4.
pub fn grm2_census_d4(c: &DegreeCensus) -> Result<Rational> {
    require_bound(c, 4)?;
    let g = |v| count(c, v);
    let neg = -3 * g(Var::M(1, 2)) - g(Var::M(1, 3)) - g(Var::M(2, 2)) - g(Var::M(3, 4)) - 3 * g(Var::M(4, 4))
        + g(Var::Order)
        - g(Var::N(3))
        + 3;
    Ok(int(-neg))
}

/// Smallest order for which the maximum-degree-3 bound is claimed.
pub const D3_MIN_ORDER: usize = 7;
/// Smallest order accepted for the maximum-degree-4 bound (`k = 1`).
pub const D4_MIN_ORDER: usize = 5;
/// Smallest order for which the maximum-degree-4 attaining censuses are
/// realizable by trees (`k ≥ 2`).
pub const D4_CATALOG_MIN_ORDER: usize = 9;

/// Lower bound on `GRM_λ` over trees of order `n` and maximum degree `Δ`.
///
/// * `λ = −2`, `Δ = 3`, `n ≥ 7`: `−(⌊(n − 1)/3⌋ + 2)`.
/// * `λ = −2`, `Δ = 4`, `n ≥ 5`: `−(n + 3)`, `−(n + 2)`, `−(n + 1)`, `−n` for
///   `n ≡ 1, 2, 3, 0 (mod 4)`.
/// * `λ ≥ −1`, `3 ≤ Δ ≤ n − 2`: the spider value.
pub fn theorem_bound(max_degree: usize, n: usize, lambda: &Rational) -> Result<Rational> {
    let n_i = n as i64;
    if *lambda == int(-2) {
        return match max_degree {
            3 if n >= D3_MIN_ORDER => Ok(int(-((n_i - 1) / 3 + 2))),
            4 if n >= D4_MIN_ORDER => Ok(int(-match n % 4 {
                1 => n_i + 3,
                2 => n_i + 2,
                3 => n_i + 1,
                _ => n_i,
            })),
            3 | 4 => Err(Error::UnsupportedRegime(format!("order {n} below the bound's range for max degree {max_degree}"))),
            _ => Err(Error::UnsupportedRegime(format!("no bound at lambda = -2 for max degree {max_degree}"))),
        };
    }
    if *lambda >= int(-1) {
        if max_degree < 3 || n < max_degree + 2 {
            return Err(Error::UnsupportedRegime(format!(
                "spider bound needs 3 <= max degree <= n - 2, got n = {n}, max degree = {max_degree}"
            )));
        }
        return closed_form(ClosedShape::Spider { n, max_degree }, lambda);
    }
    Err(Error::UnsupportedRegime(format!("lambda = {lambda} is neither -2 nor >= -1")))
}

/// The censuses that attain the `λ = −2` bound for `Δ ∈ {3, 4}`.
pub fn optimal_census_catalog(max_degree: usize, n: usize) -> Result<Vec<DegreeCensus>> {
    let mk = |v: Vec<(usize, u64)>, e: Vec<((usize, usize), u64)>| {
        DegreeCensus::from_counts(v, e).expect("catalog census satisfies the tree identities")
    };
    match max_degree {
        3 if n >= D3_MIN_ORDER => {
            let k = ((n - 1) / 3) as u64;
            let r = n as u64 - 3 * k;
            let mut out = vec![mk(
                vec![(1, k + 2), (2, k + r - 2), (3, k)],
                vec![((1, 3), k + 2), ((2, 3), 2 * k - 2), ((2, 2), r - 1)],
            )];
            if r == 3 {
                out.push(mk(
                    vec![(1, k + 3), (2, k - 1), (3, k + 1)],
                    vec![((1, 3), k + 3), ((2, 3), 2 * k - 2), ((3, 3), 1)],
                ));
            }
            out.sort();
            Ok(out)
        }
        4 if n >= D4_CATALOG_MIN_ORDER => {
            let k = ((n - 1) / 4) as u64;
            let r = n as u64 - 4 * k;
            let mut out = vec![mk(
                vec![(1, 2 * k + 2), (2, k - 1 + (r - 1)), (4, k)],
                vec![((1, 4), 2 * k + 2), ((2, 4), 2 * k - 2), ((2, 2), r - 1)],
            )];
            if r == 4 {
                out.push(mk(
                    vec![(1, 2 * k + 4), (2, k - 1), (4, k + 1)],
                    vec![((1, 4), 2 * k + 4), ((2, 4), 2 * k - 2), ((4, 4), 1)],
                ));
            }
            out.sort();
            Ok(out)
        }
        3 | 4 => Err(Error::UnsupportedRegime(format!("order {n} below the catalog range for max degree {max_degree}"))),
        _ => Err(Error::UnsupportedRegime(format!("no catalog for max degree {max_degree}"))),
    }
}

/// Minimum of `m₃₃ − m₁₃` over every realizable solution of the
/// maximum-degree-3 system with `n₃ ≥ 1`, together with the censuses attaining
/// it. Uses only the linear system, never a tree.
pub fn census_minimum_d3(n: usize) -> Result<(Rational, Vec<DegreeCensus>)> {
    let n_i = n as i64;
    let mut best: Option<Rational> = None;
    let mut argmin: Vec<DegreeCensus> = Vec::new();
    for n3 in 1..=n_i {
        for m22 in 0..=n_i {
            for m23 in 0..=2 * n_i {
                let solved = solve_census_d3(&FreeCensusVarsD3 { n: n_i, n3, m22, m23 })?;
                let Some(c) = solved.census() else { continue };
                let value = grm2_census_d3(&c)?;
                match &best {
                    Some(b) if value > *b => {}
                    Some(b) if value == *b => argmin.push(c),
                    _ => {
                        best = Some(value);
                        argmin = vec![c];
                    }
                }
            }
        }
    }
    argmin.sort();
    argmin.dedup();
    best.map(|b| (b, argmin)).ok_or_else(|| Error::UnsupportedRegime(format!("no realizable census for n = {n}")))
}

// ---------------------------------------------------------------------------
// Independent derivation by elimination.
// ---------------------------------------------------------------------------

/// A linear equation `Σ coeff·var = constant`.
struct Equation {
    terms: Vec<(Var, i64)>,
    constant: i64,
}

fn eq(terms: &[(Var, i64)], constant: i64) -> Equation {
    Equation { terms: terms.to_vec(), constant }
}

/// Order and degree-sum identities plus the handshake at every degree.
fn raw_system(max_degree: usize) -> Vec<Equation> {
    use Var::*;
    let mut eqs = Vec::new();
    let mut order: Vec<(Var, i64)> = (1..=max_degree).map(|i| (N(i), 1)).collect();
    order.push((Order, -1));
    eqs.push(eq(&order, 0));
    let mut degree_sum: Vec<(Var, i64)> = (1..=max_degree).map(|i| (N(i), i as i64)).collect();
    degree_sum.push((Order, -2));
    eqs.push(eq(&degree_sum, -2));
    for i in 1..=max_degree {
        let mut terms = vec![(N(i), -(i as i64))];
        for j in 1..=max_degree {
            if i == 1 && j == 1 {
                continue;
            }
            let coeff = if i == j { 2 } else { 1 };
            terms.push((M(i.min(j), i.max(j)), coeff));
        }
        eqs.push(eq(&terms, 0));
    }
    eqs
}

/// Affine expression over the free variables: coefficients plus a constant.
type Affine = (BTreeMap<Var, Rational>, Rational);

/// Solves `system` for `dependent` as affine functions of all other
/// variables, by Gauss–Jordan elimination over exact rationals.
fn eliminate(system: &[Equation], dependent: &[Var]) -> Result<BTreeMap<Var, Affine>> {
    let mut free: Vec<Var> = system
        .iter()
        .flat_map(|e| e.terms.iter().map(|(v, _)| *v))
        .filter(|v| !dependent.contains(v))
        .collect();
    free.sort();
    free.dedup();
    let d = dependent.len();
    // row: [dependent coeffs | free coeffs moved right | constant]
    let mut rows: Vec<Vec<Rational>> = system
        .iter()
        .map(|e| {
            let mut row = vec![int(0); d + free.len() + 1];
            for &(v, c) in &e.terms {
                if let Some(p) = dependent.iter().position(|&x| x == v) {
                    row[p] += int(c);
                } else {
                    let p = free.iter().position(|&x| x == v).expect("collected above");
                    row[d + p] -= int(c);
                }
            }
            row[d + free.len()] = int(e.constant);
            row
        })
        .collect();
    let zero = int(0);
    for col in 0..d {
        let pivot = (col..rows.len())
            .find(|&r| rows[r][col] != zero)
            .ok_or_else(|| Error::TranscriptionMismatch(format!("{} is not determined", dependent[col])))?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for x in rows[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..rows.len() {
            if r != col && rows[r][col] != zero {
                let f = rows[r][col].clone();
                for c in 0..rows[r].len() {
                    let delta = &f * &rows[col][c];
                    rows[r][c] -= delta;
                }
            }
        }
    }
    if rows.iter().skip(d).any(|row| row.iter().any(|x| *x != zero)) {
        return Err(Error::TranscriptionMismatch("system is overdetermined".into()));
    }
    Ok(dependent
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let coeffs = free.iter().enumerate().map(|(j, &f)| (f, rows[i][d + j].clone())).collect();
            (v, (coeffs, rows[i][d + free.len()].clone()))
        })
        .collect())
}

/// Reads the affine coefficients of a hand-written solved form by evaluating
/// it at the origin and at each unit vector.
fn probe(form: fn(&BTreeMap<Var, Rational>) -> BTreeMap<Var, Rational>, free: &[Var], var: Var) -> Affine {
    let origin: BTreeMap<Var, Rational> = free.iter().map(|&f| (f, int(0))).collect();
    let base = form(&origin)[&var].clone();
    let coeffs = free
        .iter()
        .map(|&f| {
            let mut point = origin.clone();
            point.insert(f, int(1));
            (f, form(&point)[&var].clone() - &base)
        })
        .collect();
    (coeffs, base)
}

fn compare_forms(
    max_degree: usize,
    dependent: &[Var],
    form: fn(&BTreeMap<Var, Rational>) -> BTreeMap<Var, Rational>,
) -> Result<()> {
    let derived = eliminate(&raw_system(max_degree), dependent)?;
    for (&var, (coeffs, constant)) in &derived {
        let free: Vec<Var> = coeffs.keys().copied().collect();
        let (hand, hand_const) = probe(form, &free, var);
        if hand != *coeffs || hand_const != *constant {
            return Err(Error::TranscriptionMismatch(format!("max degree {max_degree}, variable {var}")));
        }
    }
    Ok(())
}

/// Cross-checks both hand-written solved forms against elimination of the raw
/// systems.
pub fn check_solved_forms() -> Result<()> {
    use Var::*;
    compare_forms(3, &[N(1), N(2), M(1, 2), M(1, 3), M(3, 3)], solved_d3)?;
    compare_forms(4, &[N(1), N(2), N(4), M(1, 4), M(2, 4), M(3, 3)], solved_d4)
}
