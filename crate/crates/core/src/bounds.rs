//! Binary encoding sizes and the closed-form lower/upper bounds on
//! distances between disjoint polytopes.
//!
//! All bound evaluators return SQUARED values as exact rationals so that
//! square-root factors never materialize. Logarithms in the size
//! definitions are base 2.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::{Int, Rational};

/// Cap (in bits) on exponents of the encoding-length bounds.
pub const EXPONENT_BIT_CAP: u128 = 1_000_000;

fn ceil_log2_plus_one(n: &Int) -> u64 {
    // ceil(log2(n + 1)) for n >= 0 equals the bit length of n.
    debug_assert!(!n.is_negative());
    n.bits()
}

/// Binary encoding size of a reduced rational:
/// `1 + ceil(log2(|num| + 1)) + ceil(log2(den + 1))`.
pub fn size_rational(x: &Rational) -> u64 {
    let num = x.numer().abs();
    1 + ceil_log2_plus_one(&num) + ceil_log2_plus_one(x.denom())
}

/// Size of a vector: its dimension plus the sum of its coordinate sizes.
pub fn size_vector(v: &Vector) -> u64 {
    v.dim() as u64 + v.iter().map(size_rational).sum::<u64>()
}

/// Size of a matrix: its number of coefficients plus the sum of their sizes.
pub fn size_matrix(m: &Matrix) -> u64 {
    let mut total = (m.rows() * m.cols()) as u64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            total += size_rational(m.get(i, j));
        }
    }
    total
}

/// Vertex complexity of a rational polytope and the facet-complexity bound
/// it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingReport {
    /// Smallest `nu >= d` bounding the size of every vertex.
    pub nu: u64,
    /// Implied facet-complexity bound `4 d^2 nu`.
    pub phi_upper: u64,
    /// Per-vertex sizes, in vertex order.
    pub size_details: Vec<u64>,
}

/// Vertex complexity of the polytope spanned by `vertices`.
pub fn vertex_complexity(vertices: &[Vector]) -> Result<EncodingReport> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput("vertex complexity of an empty polytope".into()));
    }
    let d = vertices[0].dim() as u64;
    if vertices.iter().any(|v| v.dim() as u64 != d) {
        return Err(Error::DimensionMismatch("mixed vertex dimensions".into()));
    }
    let size_details: Vec<u64> = vertices.iter().map(size_vector).collect();
    let nu = size_details.iter().copied().max().unwrap().max(d);
    Ok(EncodingReport {
        nu,
        phi_upper: 4 * d * d * nu,
        size_details,
    })
}

fn int_pow(base: &Int, exp: u64) -> Result<Int> {
    let bits = base.bits().max(1) as u128 * exp as u128;
    if bits > EXPONENT_BIT_CAP {
        return Err(Error::ScopeExceeded(format!(
            "power needs about {bits} bits, beyond the {EXPONENT_BIT_CAP}-bit cap"
        )));
    }
    let exp = u32::try_from(exp)
        .map_err(|_| Error::ScopeExceeded("exponent does not fit in u32".into()))?;
    Ok(base.pow(exp))
}

/// Squared lattice lower bounds for disjoint `(d,k)`-polytopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLowerBounds {
    /// `1 / (k^(4d-2) d^(3d+2))`.
    pub strong_sq: Rational,
    /// `1 / (kd)^(4d)`.
    pub simple_sq: Rational,
}

/// Squared lower bounds on the distance between two disjoint lattice
/// `(d,k)`-polytopes.
pub fn lower_bound_lattice_sq(d: u32, k: i64) -> Result<LatticeLowerBounds> {
    if d < 1 || k < 1 {
        return Err(Error::Precondition("lattice lower bound needs d >= 1 and k >= 1".into()));
    }
    let dd = Int::from(d);
    let kk = Int::from(k);
    let strong_den = int_pow(&kk, 4 * d as u64 - 2)? * int_pow(&dd, 3 * d as u64 + 2)?;
    let simple_den = int_pow(&(&kk * &dd), 4 * d as u64)?;
    Ok(LatticeLowerBounds {
        strong_sq: Rational::new(Int::one(), strong_den),
        simple_sq: Rational::new(Int::one(), simple_den),
    })
}

fn rational_lower_bound(complexity: u64, d: u32, group_exp: u32) -> Result<Rational> {
    // 64 / 2^(8 * complexity * (2d)^group_exp)
    let base = (2u128) * d as u128;
    let mut factor: u128 = 1;
    for _ in 0..group_exp {
        factor = factor
            .checked_mul(base)
            .ok_or_else(|| Error::ScopeExceeded("encoding-length exponent overflow".into()))?;
    }
    let exponent = (8u128)
        .checked_mul(complexity as u128)
        .and_then(|e| e.checked_mul(factor))
        .ok_or_else(|| Error::ScopeExceeded("encoding-length exponent overflow".into()))?;
    if exponent > EXPONENT_BIT_CAP {
        return Err(Error::ScopeExceeded(format!(
            "encoding-length bound needs 2^{exponent}, beyond the {EXPONENT_BIT_CAP}-bit cap"
        )));
    }
    let den = int_pow(&Int::from(2), exponent as u64)?;
    Ok(Rational::new(Int::from(64), den))
}

/// Squared lower bound `64 / 2^(8 nu (2d)^4)` for disjoint rational
/// polytopes of vertex complexity at most `nu`.
pub fn lower_bound_rational_sq_nu(d: u32, nu: u64) -> Result<Rational> {
    if d < 1 || nu < d as u64 {
        return Err(Error::Precondition("needs d >= 1 and nu >= d".into()));
    }
    rational_lower_bound(nu, d, 4)
}

/// Squared lower bound `64 / 2^(8 phi (2d)^6)` for disjoint rational
/// polytopes of facet complexity at most `phi`.
pub fn lower_bound_rational_sq_phi(d: u32, phi: u64) -> Result<Rational> {
    if d < 1 || phi < d as u64 {
        return Err(Error::Precondition("needs d >= 1 and phi >= d".into()));
    }
    rational_lower_bound(phi, d, 6)
}

/// Squared closed-form upper bound on `eps(d,k)`: `1/(d(d-1))` for `k = 1`
/// and `1/((d-1)^2 k^2)` for `k >= 2`.
pub fn upper_bound_special_sq(d: u32, k: i64) -> Result<Rational> {
    if d < 2 {
        return Err(Error::Precondition("special upper bound needs d >= 2".into()));
    }
    if k < 1 {
        return Err(Error::Precondition("special upper bound needs k >= 1".into()));
    }
    let dd = Int::from(d);
    if k == 1 {
        Ok(Rational::new(Int::one(), &dd * (&dd - Int::one())))
    } else {
        let m = (&dd - Int::one()) * Int::from(k);
        Ok(Rational::new(Int::one(), &m * &m))
    }
}

/// Squared distance bound of the block construction, with its ambient
/// dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionBound {
    /// `delta sigma / (k(delta-1))^(2 sigma)`.
    pub dist_sq_bound: Rational,
    /// `delta (sigma + 1)`.
    pub ambient_dim: u32,
}

/// Squared upper bound realized by the block construction for parameters
/// `(sigma, delta, k)` with `delta >= 4`.
pub fn upper_bound_construction_sq(sigma: u32, delta: u32, k: i64) -> Result<ConstructionBound> {
    if delta < 4 {
        return Err(Error::Precondition("construction bound needs delta >= 4".into()));
    }
    if sigma < 1 || k < 1 {
        return Err(Error::Precondition("construction bound needs sigma >= 1 and k >= 1".into()));
    }
    let t = Int::from(k) * Int::from(delta - 1);
    let den = int_pow(&t, 2 * sigma as u64)?;
    Ok(ConstructionBound {
        dist_sq_bound: Rational::new(Int::from(delta) * Int::from(sigma), den),
        ambient_dim: delta
            .checked_mul(sigma + 1)
            .ok_or_else(|| Error::ScopeExceeded("ambient dimension overflow".into()))?,
    })
}

/// Display-only evaluation of the asymptotic bound
/// `1 / (k^(d^alpha) d^((1-alpha) d^alpha))`. Never exact; never used in
/// assertions.
pub fn asymptotic_bound_display(d: u32, k: i64, alpha: f64) -> Result<String> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Precondition("alpha must lie strictly between 0 and 1".into()));
    }
    if d < 1 || k < 1 {
        return Err(Error::Precondition("asymptotic bound needs d >= 1 and k >= 1".into()));
    }
    let df = d as f64;
    let da = df.powf(alpha);
    let log_val = -(da * (k as f64).ln() + (1.0 - alpha) * da * df.ln());
    let value = log_val.exp();
    Ok(format!("{value:.6e} (inexact)"))
}

/// The closed-form bounds that apply to a `(d,k)` pair, assembled for
/// reporting.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub d: u32,
    pub k: i64,
    pub lower_sq_strong: Rational,
    pub lower_sq_simple: Rational,
    /// Diagonal-vs-simplex bound, `k = 1` and `d >= 2` only.
    pub upper_sq_k1: Option<Rational>,
    /// Point-vs-simplex bound, `k >= 2` and `d >= 2` only.
    pub upper_sq_k_ge2: Option<Rational>,
    /// Block-construction bound with the `(sigma, delta)` used and its
    /// ambient dimension.
    pub upper_sq_construction: Option<(Rational, u32, u32, u32)>,
}

/// Assemble every applicable bound for `(d, k)`, optionally including the
/// block-construction bound for given `(sigma, delta)`.
pub fn bound_report(d: u32, k: i64, construction: Option<(u32, u32)>) -> Result<BoundReport> {
    let lower = lower_bound_lattice_sq(d, k)?;
    let special = if d >= 2 { Some(upper_bound_special_sq(d, k)?) } else { None };
    let (upper_sq_k1, upper_sq_k_ge2) = match (k, special) {
        (1, s) => (s, None),
        (_, s) => (None, s),
    };
    let upper_sq_construction = match construction {
        Some((sigma, delta)) => {
            let b = upper_bound_construction_sq(sigma, delta, k)?;
            Some((b.dist_sq_bound, sigma, delta, b.ambient_dim))
        }
        None => None,
    };
    Ok(BoundReport {
        d,
        k,
        lower_sq_strong: lower.strong_sq,
        lower_sq_simple: lower.simple_sq,
        upper_sq_k1,
        upper_sq_k_ge2,
        upper_sq_construction,
    })
}
