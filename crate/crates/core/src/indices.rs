//! Exact degree-based indices: `GRM_λ`, the Zagreb indices `M₁`/`M₂`, and the
//! closed forms for paths, stars and spiders.

use num_bigint::BigInt;

use crate::census::DegreeCensus;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::tree::Tree;

fn degree_term(d: usize, lambda: &Rational) -> Rational {
    Rational::from_integer(BigInt::from(d)) + lambda
}

/// `GRM_λ(T) = Σ_{uv ∈ E} (deg u + λ)(deg v + λ)`.
pub fn grm(t: &Tree, lambda: &Rational) -> Result<Rational> {
    if t.order() < 2 {
        return Err(Error::SingletonTree);
    }
    let mut sum = int(0);
    for (u, v) in t.edges() {
        sum += degree_term(t.degree(u), lambda) * degree_term(t.degree(v), lambda);
    }
    Ok(sum)
}

/// First Zagreb index `Σ_v deg(v)²`.
pub fn m1(t: &Tree) -> Result<Rational> {
    if t.order() < 2 {
        return Err(Error::SingletonTree);
    }
    Ok(int(t.degrees().map(|d| (d * d) as i64).sum()))
}

/// Second Zagreb index `Σ_{uv ∈ E} deg(u)·deg(v)`.
pub fn m2(t: &Tree) -> Result<Rational> {
    if t.order() < 2 {
        return Err(Error::SingletonTree);
    }
    Ok(int(t.edges().map(|(u, v)| (t.degree(u) * t.degree(v)) as i64).sum()))
}

/// `Σ_{i ≤ j} m_{i,j}(i + λ)(j + λ)` evaluated from a census alone.
pub fn census_grm(c: &DegreeCensus, lambda: &Rational) -> Rational {
    let table = EdgeWeightTable::new(lambda.clone());
    c.edge_counts()
        .map(|((i, j), k)| table.weight(i, j) * Rational::from_integer(BigInt::from(k)))
        .sum()
}

/// Edge weights `(i + λ)(j + λ)` for a fixed `λ`. At `λ = −2` these are the
/// coefficients `a_{ij} = 4 − 2(i + j) + ij`, which vanish whenever either
/// endpoint has degree 2.
#[derive(Debug, Clone)]
pub struct EdgeWeightTable {
    lambda: Rational,
}

impl EdgeWeightTable {
    pub fn new(lambda: Rational) -> Self {
        EdgeWeightTable { lambda }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn weight(&self, i: usize, j: usize) -> Rational {
        degree_term(i, &self.lambda) * degree_term(j, &self.lambda)
    }
}

/// Trees with a known closed-form `GRM_λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedShape {
    Path(usize),
    Star(usize),
    Spider { n: usize, max_degree: usize },
}

pub fn closed_form(shape: ClosedShape, lambda: &Rational) -> Result<Rational> {
    let l = lambda;
    match shape {
        ClosedShape::Path(n) => {
            // The closed form counts a (1,2) edge at each end, so P₂ is excluded.
            if n < 3 {
                return Err(Error::DomainViolation(format!("path closed form needs n >= 3, got {n}")));
            }
            let n = int(n as i64);
            Ok((int(2) + l) * (&n * l + int(2) * &n - l - int(4)))
        }
        ClosedShape::Star(n) => {
            if n < 2 {
                return Err(Error::DomainViolation(format!("star needs n >= 2, got {n}")));
            }
            let n = int(n as i64);
            Ok((&n - int(1)) * (&n - int(1) + l) * (int(1) + l))
        }
        ClosedShape::Spider { n, max_degree } => {
            if max_degree < 3 || n < max_degree + 2 {
                return Err(Error::DomainViolation(format!(
                    "spider closed form needs max degree >= 3 and n >= max degree + 2, got n = {n}, max degree = {max_degree}"
                )));
            }
            let (n, d) = (int(n as i64), int(max_degree as i64));
            Ok((&n * l + int(2) * &n - &d * l - &d - int(3)) * (int(2) + l)
                + (&d - int(1)) * (&d + l) * (int(1) + l))
        }
    }
}
