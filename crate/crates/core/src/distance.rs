//! Exact minimal distance between two polytopes given by their vertices,
//! with checkable optimality certificates.
//!
//! The primary algorithm is Wolfe's min-norm-point active-set descent run
//! in exact rational arithmetic over the pairwise difference set
//! `{u - v : u in V_P, v in V_Q}`; it terminates finitely because every
//! corral strictly decreases the objective and no corral can repeat.
//! An exhaustive active-subset enumeration over the same data serves as an
//! independent verification route for small inputs.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{affine_basis_indices, affinely_independent, proper_faces, Face, LatticePolytope};
use crate::linalg::{gram, nullspace_vector, solve_linear, LinearSolution, Matrix, Vector};
use crate::rational::Rational;

/// Combined vertex cap for the enumeration route and for the certificate
/// tie-break scan.
pub const ENUMERATION_VERTEX_CAP: usize = 14;

/// A checkable proof that `dist_sq` is the exact squared distance between
/// `conv(V_P)` and `conv(V_Q)`.
///
/// `p` lies in the relative interior of the convex hull of the active
/// `V_P`-vertices (all barycentric coefficients strictly positive), `q`
/// likewise, and the first-order conditions
/// `(u - p).(p - q) >= 0` and `(v - q).(q - p) >= 0` hold for every vertex.
/// Together these certify global optimality of the convex program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub p: Vector,
    pub q: Vector,
    pub active_p: Vec<usize>,
    pub active_q: Vec<usize>,
    pub lambda_p: Vec<Rational>,
    pub lambda_q: Vec<Rational>,
    pub dist_sq: Rational,
}

/// First violated certificate condition, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    Shape(String),
    LambdaNotPositive { side: char, position: usize },
    LambdaSum { side: char },
    AffinelyDependentActives { side: char },
    Barycentric { side: char },
    DistSqMismatch,
    FirstOrder { side: char, vertex: usize },
}

impl std::fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateViolation::Shape(s) => write!(f, "shape violation: {s}"),
            CertificateViolation::LambdaNotPositive { side, position } => {
                write!(f, "barycentric violation: lambda{side}[{position}] not positive")
            }
            CertificateViolation::LambdaSum { side } => {
                write!(f, "barycentric violation: lambda{side} does not sum to 1")
            }
            CertificateViolation::AffinelyDependentActives { side } => {
                write!(f, "active{side} vertices are affinely dependent")
            }
            CertificateViolation::Barycentric { side } => {
                write!(f, "barycentric violation: point does not match lambda{side} combination")
            }
            CertificateViolation::DistSqMismatch => write!(f, "distSq mismatch"),
            CertificateViolation::FirstOrder { side, vertex } => {
                write!(f, "first-order violation at {side} vertex {vertex}")
            }
        }
    }
}

/// Exact min-norm point in the convex hull of `points`, together with a
/// barycentric decomposition `(index, coefficient)` with strictly positive
/// coefficients over an affinely independent support.
pub fn min_norm_point(points: &[Vector]) -> Result<(Vector, Vec<(usize, Rational)>)> {
    if points.is_empty() {
        return Err(Error::EmptyInput("min-norm point of an empty set".into()));
    }
    let dim = points[0].dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch("mixed point dimensions".into()));
    }

    // Start from the smallest-norm point (ties to the smallest index).
    let mut start = 0usize;
    let mut start_norm = points[0].norm_sq();
    for (i, p) in points.iter().enumerate().skip(1) {
        let n = p.norm_sq();
        if n < start_norm {
            start_norm = n;
            start = i;
        }
    }
    let mut corral: Vec<usize> = vec![start];
    let mut lambda: Vec<Rational> = vec![Rational::one()];
    let mut x = points[start].clone();

    loop {
        // Major cycle: optimality holds when x.x <= x.v for every v.
        let xx = x.norm_sq();
        let mut best_idx = None;
        let mut best_val: Option<Rational> = None;
        for (i, v) in points.iter().enumerate() {
            let d = x.dot(v)?;
            if best_val.as_ref().is_none_or(|b| &d < b) {
                best_val = Some(d);
                best_idx = Some(i);
            }
        }
        let (j, min_val) = (best_idx.unwrap(), best_val.unwrap());
        if xx <= min_val {
            break;
        }
        corral.push(j);
        lambda.push(Rational::zero());

        // Minor cycle: move to the affine minimizer of the corral, dropping
        // vertices whose coefficient hits zero on the way.
        loop {
            let (y, mu) = affine_minimizer(points, &corral)?;
            if mu.iter().all(|c| c > &Rational::zero()) {
                x = y;
                lambda = mu;
                break;
            }
            if mu.iter().all(|c| !c.is_negative()) {
                x = y;
                let mut kept_corral = Vec::new();
                let mut kept_lambda = Vec::new();
                for (idx, c) in corral.iter().zip(mu.into_iter()) {
                    if c.is_zero() {
                        continue;
                    }
                    kept_corral.push(*idx);
                    kept_lambda.push(c);
                }
                corral = kept_corral;
                lambda = kept_lambda;
                break;
            }
            // Largest step towards y keeping all coefficients nonnegative;
            // at least one coefficient hits zero, so the corral shrinks and
            // the minor cycle terminates.
            let mut theta: Option<Rational> = None;
            for (l, m) in lambda.iter().zip(mu.iter()) {
                if m.is_negative() {
                    let t = l / (l - m);
                    if theta.as_ref().is_none_or(|cur| &t < cur) {
                        theta = Some(t);
                    }
                }
            }
            let theta = theta.expect("some coefficient is negative");
            let one_minus = Rational::one() - &theta;
            let mut kept_corral = Vec::new();
            let mut kept_lambda = Vec::new();
            for ((idx, l), m) in corral.iter().zip(lambda.iter()).zip(mu.iter()) {
                let c = l * &one_minus + m * &theta;
                if c.is_zero() {
                    continue;
                }
                kept_corral.push(*idx);
                kept_lambda.push(c);
            }
            corral = kept_corral;
            lambda = kept_lambda;
        }
    }
    Ok((x, corral.into_iter().zip(lambda).collect()))
}

fn combine(points: &[Vector], idx: &[usize], coeff: &[Rational]) -> Vector {
    let mut out = Vector::zero(points[idx[0]].dim());
    for (&i, c) in idx.iter().zip(coeff.iter()) {
        out = out.add(&points[i].scale(c)).expect("same dims");
    }
    out
}

/// Min-norm point of the affine hull of the corral, with its affine
/// coefficients. The corral is affinely independent by construction, so the
/// bordered Gram system is nonsingular.
fn affine_minimizer(points: &[Vector], corral: &[usize]) -> Result<(Vector, Vec<Rational>)> {
    let pts: Vec<Vector> = corral.iter().map(|&i| points[i].clone()).collect();
    let m = pts.len();
    let g = gram(&pts)?;
    let mut sys = Matrix::zero(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            sys.set(i, j, g.get(i, j).clone());
        }
        sys.set(i, m, Rational::one());
        sys.set(m, i, Rational::one());
    }
    let mut rhs = vec![Rational::zero(); m + 1];
    rhs[m] = Rational::one();
    let sol = sys.solve_gauss(&Vector::new(rhs)).map_err(|_| {
        Error::Degenerate("bordered Gram system singular: corral affinely dependent".into())
    })?;
    let mu: Vec<Rational> = sol.coords()[..m].to_vec();
    let y = combine(points, corral, &mu);
    Ok((y, mu))
}

/// True when `x` lies in the convex hull of `hull`.
pub fn hull_contains_point(hull: &[Vector], x: &Vector) -> Result<bool> {
    let shifted: Vec<Vector> = hull.iter().map(|h| h.sub(x)).collect::<Result<_>>()?;
    let (m, _) = min_norm_point(&shifted)?;
    Ok(m.norm_sq().is_zero())
}

/// Exact squared distance between `conv(vp)` and `conv(vq)` with an
/// optimality certificate. Intersecting hulls yield distance zero and a
/// common point.
pub fn min_distance_sq(vp: &[Vector], vq: &[Vector]) -> Result<(Rational, DistanceCertificate)> {
    let cert = min_distance_certificate(vp, vq, true)?;
    Ok((cert.dist_sq.clone(), cert))
}

/// As `min_distance_sq` but without the certificate tie-break scan; used on
/// hot paths where only the value matters.
pub(crate) fn min_distance_sq_fast(vp: &[Vector], vq: &[Vector]) -> Result<Rational> {
    let cert = min_distance_certificate(vp, vq, false)?;
    Ok(cert.dist_sq)
}

fn check_pair_inputs(vp: &[Vector], vq: &[Vector]) -> Result<usize> {
    if vp.is_empty() || vq.is_empty() {
        return Err(Error::EmptyInput("distance needs nonempty vertex sets".into()));
    }
    let dim = vp[0].dim();
    if vp.iter().chain(vq.iter()).any(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch("vertex sets with mixed dimensions".into()));
    }
    Ok(dim)
}

fn min_distance_certificate(
    vp: &[Vector],
    vq: &[Vector],
    lex_tie_break: bool,
) -> Result<DistanceCertificate> {
    check_pair_inputs(vp, vq)?;
    let nq = vq.len();
    let mut diffs = Vec::with_capacity(vp.len() * nq);
    for u in vp {
        for v in vq {
            diffs.push(u.sub(v)?);
        }
    }
    let (x, decomp) = min_norm_point(&diffs)?;
    let dist_sq = x.norm_sq();

    // Marginal coefficients on each side.
    let mut alpha = vec![Rational::zero(); vp.len()];
    let mut beta = vec![Rational::zero(); vq.len()];
    for (flat, c) in &decomp {
        alpha[flat / nq] += c;
        beta[flat % nq] += c;
    }
    let (active_p, lambda_p) = caratheodory_reduce(vp, alpha)?;
    let (active_q, lambda_q) = caratheodory_reduce(vq, beta)?;
    let p = combine(vp, &active_p, &lambda_p);
    let q = combine(vq, &active_q, &lambda_q);
    debug_assert_eq!(p.sub(&q)?, x);

    let mut cert = DistanceCertificate {
        p,
        q,
        active_p,
        active_q,
        lambda_p,
        lambda_q,
        dist_sq,
    };
    if lex_tie_break {
        if let Some(better) = lex_min_certificate(vp, vq, &x, &cert.dist_sq)? {
            cert = better;
        }
    }
    Ok(cert)
}

/// Reduce a convex decomposition to an affinely independent support with
/// strictly positive coefficients, preserving the combined point. The
/// dependence direction and the dropped index are chosen deterministically.
fn caratheodory_reduce(
    points: &[Vector],
    coeff: Vec<Rational>,
) -> Result<(Vec<usize>, Vec<Rational>)> {
    let mut support: Vec<usize> = (0..points.len()).filter(|&i| !coeff[i].is_zero()).collect();
    let mut lam: Vec<Rational> = support.iter().map(|&i| coeff[i].clone()).collect();
    loop {
        let pts: Vec<Vector> = support.iter().map(|&i| points[i].clone()).collect();
        if affinely_independent(&pts) {
            return Ok((support, lam));
        }
        // Affine dependence: gamma != 0 with sum(gamma) = 0, sum(gamma p) = 0.
        let dim = pts[0].dim();
        let mut m = Matrix::zero(dim + 1, pts.len());
        for (j, p) in pts.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, p[i].clone());
            }
            m.set(dim, j, Rational::one());
        }
        let gamma = nullspace_vector(&m).expect("dependent family has a kernel vector");
        let gamma: Vec<Rational> = if gamma.iter().any(|g| g > &Rational::zero()) {
            gamma
        } else {
            gamma.into_iter().map(|g| -g).collect()
        };
        // Step to the first coefficient that reaches zero.
        let mut t: Option<Rational> = None;
        let mut drop_pos = 0usize;
        for (pos, g) in gamma.iter().enumerate() {
            if g > &Rational::zero() {
                let cand = &lam[pos] / g;
                if t.as_ref().is_none_or(|cur| &cand < cur) {
                    t = Some(cand);
                    drop_pos = pos;
                }
            }
        }
        let t = t.expect("gamma has a positive entry");
        let mut new_support = Vec::with_capacity(support.len() - 1);
        let mut new_lam = Vec::with_capacity(support.len() - 1);
        for (pos, (&idx, l)) in support.iter().zip(lam.iter()).enumerate() {
            let c = l - &t * &gamma[pos];
            debug_assert!(!c.is_negative());
            if pos == drop_pos || c.is_zero() {
                continue;
            }
            new_support.push(idx);
            new_lam.push(c);
        }
        support = new_support;
        lam = new_lam;
    }
}

/// Scan active-candidate subset pairs in lexicographic order of their sorted
/// index lists for the first pair that decomposes the optimum with strictly
/// positive coefficients. Skipped when the candidate sets exceed the
/// enumeration cap; the deterministic Caratheodory certificate stands then.
fn lex_min_certificate(
    vp: &[Vector],
    vq: &[Vector],
    x: &Vector,
    dist_sq: &Rational,
) -> Result<Option<DistanceCertificate>> {
    let mut min_p: Option<Rational> = None;
    let mut p_vals = Vec::with_capacity(vp.len());
    for u in vp {
        let d = u.dot(x)?;
        if min_p.as_ref().is_none_or(|m| &d < m) {
            min_p = Some(d.clone());
        }
        p_vals.push(d);
    }
    let mut max_q: Option<Rational> = None;
    let mut q_vals = Vec::with_capacity(vq.len());
    for v in vq {
        let d = v.dot(x)?;
        if max_q.as_ref().is_none_or(|m| &d > m) {
            max_q = Some(d.clone());
        }
        q_vals.push(d);
    }
    let min_p = min_p.unwrap();
    let max_q = max_q.unwrap();
    let cand_p: Vec<usize> = (0..vp.len()).filter(|&i| p_vals[i] == min_p).collect();
    let cand_q: Vec<usize> = (0..vq.len()).filter(|&j| q_vals[j] == max_q).collect();
    if cand_p.len() + cand_q.len() > ENUMERATION_VERTEX_CAP {
        return Ok(None);
    }
    for sp in subsets_lex(&cand_p) {
        let pts_p: Vec<Vector> = sp.iter().map(|&i| vp[i].clone()).collect();
        if !affinely_independent(&pts_p) {
            continue;
        }
        for sq in subsets_lex(&cand_q) {
            let pts_q: Vec<Vector> = sq.iter().map(|&j| vq[j].clone()).collect();
            if !affinely_independent(&pts_q) {
                continue;
            }
            if let Some(cert) = try_subset_pair(vp, vq, &sp, &sq)? {
                if &cert.dist_sq == dist_sq {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

/// All nonempty subsets of a sorted index list, in lexicographic order of
/// their element sequences.
fn subsets_lex(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(items: &[usize], from: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in from..items.len() {
            prefix.push(items[i]);
            out.push(prefix.clone());
            rec(items, i + 1, prefix, out);
            prefix.pop();
        }
    }
    rec(items, 0, &mut prefix, &mut out);
    out
}

/// Solve the stationarity system for a fixed active pair: coefficients sum
/// to one on each side and `p - q` is orthogonal to both direction spaces.
/// Accepts only a unique, strictly positive solution.
fn try_subset_pair(
    vp: &[Vector],
    vq: &[Vector],
    sp: &[usize],
    sq: &[usize],
) -> Result<Option<DistanceCertificate>> {
    let a = sp.len();
    let b = sq.len();
    let n = a + b;
    let mut sys = Matrix::zero(n, n);
    let mut rhs = vec![Rational::zero(); n];
    // Row 0: sum lambda = 1. Row 1: sum mu = 1.
    for j in 0..a {
        sys.set(0, j, Rational::one());
    }
    for j in 0..b {
        sys.set(1, a + j, Rational::one());
    }
    rhs[0] = Rational::one();
    rhs[1] = Rational::one();
    let mut row = 2;
    let u0 = &vp[sp[0]];
    for &i in &sp[1..] {
        let dir = vp[i].sub(u0)?;
        for (j, &l) in sp.iter().enumerate() {
            sys.set(row, j, vp[l].dot(&dir)?);
        }
        for (j, &m) in sq.iter().enumerate() {
            sys.set(row, a + j, -vq[m].dot(&dir)?);
        }
        row += 1;
    }
    let v0 = &vq[sq[0]];
    for &jdx in &sq[1..] {
        let dir = vq[jdx].sub(v0)?;
        for (j, &l) in sp.iter().enumerate() {
            sys.set(row, j, vp[l].dot(&dir)?);
        }
        for (j, &m) in sq.iter().enumerate() {
            sys.set(row, a + j, -vq[m].dot(&dir)?);
        }
        row += 1;
    }
    let sol = match solve_linear(&sys, &Vector::new(rhs))? {
        LinearSolution::Unique(s) => s,
        _ => return Ok(None),
    };
    if sol.iter().any(|c| c <= &Rational::zero()) {
        return Ok(None);
    }
    let lambda_p = sol[..a].to_vec();
    let lambda_q = sol[a..].to_vec();
    let p = combine(vp, sp, &lambda_p);
    let q = combine(vq, sq, &lambda_q);
    let dist_sq = p.sub(&q)?.norm_sq();
    Ok(Some(DistanceCertificate {
        p,
        q,
        active_p: sp.to_vec(),
        active_q: sq.to_vec(),
        lambda_p,
        lambda_q,
        dist_sq,
    }))
}

/// Independent verification route: exhaustive enumeration of affinely
/// independent active-subset pairs, keeping the feasible stationary pairs
/// and minimizing exactly. Capped at `ENUMERATION_VERTEX_CAP` combined
/// vertices.
pub fn min_distance_sq_enumerated(
    vp: &[Vector],
    vq: &[Vector],
) -> Result<(Rational, DistanceCertificate)> {
    check_pair_inputs(vp, vq)?;
    if vp.len() + vq.len() > ENUMERATION_VERTEX_CAP {
        return Err(Error::ScopeExceeded(format!(
            "active-subset enumeration supports at most {ENUMERATION_VERTEX_CAP} combined vertices, got {}",
            vp.len() + vq.len()
        )));
    }
    let all_p: Vec<usize> = (0..vp.len()).collect();
    let all_q: Vec<usize> = (0..vq.len()).collect();
    let mut best: Option<DistanceCertificate> = None;
    for sp in subsets_lex(&all_p) {
        let pts_p: Vec<Vector> = sp.iter().map(|&i| vp[i].clone()).collect();
        if !affinely_independent(&pts_p) {
            continue;
        }
        for sq in subsets_lex(&all_q) {
            let pts_q: Vec<Vector> = sq.iter().map(|&j| vq[j].clone()).collect();
            if !affinely_independent(&pts_q) {
                continue;
            }
            if let Some(cert) = try_subset_pair(vp, vq, &sp, &sq)? {
                if best.as_ref().is_none_or(|b| cert.dist_sq < b.dist_sq) {
                    best = Some(cert);
                }
            }
        }
    }
    let cert = best.expect("a minimal-support optimal pair is always accepted");
    Ok((cert.dist_sq.clone(), cert))
}

/// Check every certificate invariant exactly; reports the first violation.
pub fn verify_certificate(
    cert: &DistanceCertificate,
    vp: &[Vector],
    vq: &[Vector],
) -> std::result::Result<(), CertificateViolation> {
    let dim = match check_pair_inputs(vp, vq) {
        Ok(d) => d,
        Err(e) => return Err(CertificateViolation::Shape(e.to_string())),
    };
    if cert.p.dim() != dim || cert.q.dim() != dim {
        return Err(CertificateViolation::Shape("p/q dimension mismatch".into()));
    }
    for side in ['P', 'Q'] {
        let (active, lambda, verts, point) = match side {
            'P' => (&cert.active_p, &cert.lambda_p, vp, &cert.p),
            _ => (&cert.active_q, &cert.lambda_q, vq, &cert.q),
        };
        if active.is_empty() || active.len() != lambda.len() {
            return Err(CertificateViolation::Shape(format!(
                "active{side} and lambda{side} sizes inconsistent"
            )));
        }
        if active.iter().any(|&i| i >= verts.len()) {
            return Err(CertificateViolation::Shape(format!("active{side} index out of range")));
        }
        for (pos, l) in lambda.iter().enumerate() {
            if l <= &Rational::zero() {
                return Err(CertificateViolation::LambdaNotPositive { side, position: pos });
            }
        }
        let sum: Rational = lambda.iter().sum();
        if !sum.is_one() {
            return Err(CertificateViolation::LambdaSum { side });
        }
        let pts: Vec<Vector> = active.iter().map(|&i| verts[i].clone()).collect();
        if !affinely_independent(&pts) {
            return Err(CertificateViolation::AffinelyDependentActives { side });
        }
        let combined = combine(verts, active, lambda);
        if &combined != point {
            return Err(CertificateViolation::Barycentric { side });
        }
    }
    let w = cert.p.sub(&cert.q).expect("dims checked");
    if w.norm_sq() != cert.dist_sq {
        return Err(CertificateViolation::DistSqMismatch);
    }
    for (i, u) in vp.iter().enumerate() {
        let lhs = u.sub(&cert.p).expect("dims").dot(&w).expect("dims");
        if lhs.is_negative() {
            return Err(CertificateViolation::FirstOrder { side: 'P', vertex: i });
        }
    }
    for (j, v) in vq.iter().enumerate() {
        let lhs = v.sub(&cert.q).expect("dims").dot(&w).expect("dims");
        if lhs > Rational::zero() {
            return Err(CertificateViolation::FirstOrder { side: 'Q', vertex: j });
        }
    }
    Ok(())
}

/// The data of the closed-form distance expression: `w^0` connecting the two
/// sides, a linearly independent family `w^1..w^r` spanning the active
/// directions, the Gram matrix `M`, the right-hand side `b` with entries
/// `w^0 . w^i`, and the combination
/// `a = det(M) w^0 - sum_i det(M_i) w^i` which is orthogonal to every `w^i`.
#[derive(Debug, Clone)]
pub struct CramerSystem {
    pub w0: Vector,
    pub w: Vec<Vector>,
    pub gram: Matrix,
    pub b: Vector,
    pub a: Vector,
}

impl CramerSystem {
    pub fn new(w0: Vector, w: Vec<Vector>) -> Result<Self> {
        if w.iter().any(|v| v.dim() != w0.dim()) {
            return Err(Error::DimensionMismatch("CramerSystem vectors with mixed dims".into()));
        }
        if !w.is_empty() {
            let m = Matrix::from_rows(w.iter().map(|v| v.coords().to_vec()).collect())?;
            if m.rank() != w.len() {
                return Err(Error::LinearlyDependent);
            }
        }
        let g = gram(&w)?;
        let b = Vector::new(w.iter().map(|wi| w0.dot(wi)).collect::<Result<_>>()?);
        let det_m = g.det()?;
        let mut a = w0.scale(&det_m);
        for i in 0..w.len() {
            let det_i = g.with_column(i, &b)?.det()?;
            a = a.sub(&w[i].scale(&det_i))?;
        }
        Ok(CramerSystem { w0, w, gram: g, b, a })
    }

    /// Assemble the system attached to a distance certificate: `w^0` connects
    /// the base active vertices and the `w^i` are a linearly independent
    /// spanning subset of the active difference directions of both sides.
    pub fn for_certificate(
        cert: &DistanceCertificate,
        vp: &[Vector],
        vq: &[Vector],
    ) -> Result<Self> {
        if cert.active_p.is_empty() || cert.active_q.is_empty() {
            return Err(Error::EmptyInput("certificate without active vertices".into()));
        }
        let u0 = &vp[cert.active_p[0]];
        let v0 = &vq[cert.active_q[0]];
        let mut dirs: Vec<Vector> = Vec::new();
        for &i in &cert.active_p[1..] {
            dirs.push(vp[i].sub(u0)?);
        }
        for &j in &cert.active_q[1..] {
            dirs.push(vq[j].sub(v0)?);
        }
        // Greedy linearly independent spanning subset, in order.
        let mut w: Vec<Vector> = Vec::new();
        for d in dirs {
            w.push(d);
            let m = Matrix::from_rows(w.iter().map(|v| v.coords().to_vec()).collect())?;
            if m.rank() != w.len() {
                w.pop();
            }
        }
        CramerSystem::new(u0.sub(v0)?, w)
    }
}

/// The exact square of the closed-form distance expression,
/// `(w^0 . a)^2 / (a . a)`.
pub fn cramer_distance_sq(sys: &CramerSystem) -> Result<Rational> {
    let aa = sys.a.norm_sq();
    if aa.is_zero() {
        return Err(Error::Degenerate("a = 0: w0 lies in the span of W".into()));
    }
    let na = sys.w0.dot(&sys.a)?;
    Ok(&na * &na / aa)
}

/// Facial distance: the minimum over proper faces `F` of the squared
/// distance between `F` and the hull of the remaining vertices, with the
/// minimizing face.
pub fn facial_distance(p: &LatticePolytope) -> Result<(Rational, Face)> {
    if p.vertices().len() < 2 {
        return Err(Error::Precondition("facial distance needs at least 2 vertices".into()));
    }
    let verts = p.to_vectors();
    let faces = proper_faces(p)?;
    let mut best: Option<(Rational, Face)> = None;
    for face in faces {
        let fpts: Vec<Vector> = face.vertex_indices.iter().map(|&i| verts[i].clone()).collect();
        let rest: Vec<Vector> = (0..verts.len())
            .filter(|i| !face.vertex_indices.contains(i))
            .map(|i| verts[i].clone())
            .collect();
        debug_assert!(!rest.is_empty());
        let d = min_distance_sq_fast(&fpts, &rest)?;
        if best.as_ref().is_none_or(|(b, _)| &d < b) {
            best = Some((d, face));
        }
    }
    Ok(best.expect("a polytope with >= 2 vertices has proper faces"))
}

/// Vertex-facet distance: the minimum over facets `F` of the squared
/// distance between `aff(F)` and the hull of the remaining vertices.
///
/// The complement is projected onto the normal direction of `aff(F)` inside
/// the direction space of the polytope; the gap is the smallest projection
/// magnitude.
pub fn vertex_facet_distance(p: &LatticePolytope) -> Result<(Rational, Face)> {
    let verts = p.to_vectors();
    let m = crate::geometry::affine_rank(&verts);
    if m < 1 {
        return Err(Error::Degenerate("vertex-facet distance needs dim >= 1".into()));
    }
    let basis_idx = affine_basis_indices(&verts);
    let basis: Vec<Vector> = basis_idx[1..]
        .iter()
        .map(|&i| verts[i].sub(&verts[basis_idx[0]]).expect("dims"))
        .collect();
    let faces = proper_faces(p)?;
    let mut best: Option<(Rational, Face)> = None;
    for face in faces.into_iter().filter(|f| f.is_facet) {
        let fpts: Vec<Vector> = face.vertex_indices.iter().map(|&i| verts[i].clone()).collect();
        // Normal to aff(F) within the direction space of P.
        let fdirs: Vec<Vector> = fpts[1..].iter().map(|q| q.sub(&fpts[0]).expect("dims")).collect();
        let mut a = Matrix::zero(fdirs.len(), basis.len());
        for (ri, dvec) in fdirs.iter().enumerate() {
            for (ci, b) in basis.iter().enumerate() {
                a.set(ri, ci, dvec.dot(b)?);
            }
        }
        let y = nullspace_vector(&a)
            .ok_or_else(|| Error::Degenerate("facet directions span the polytope".into()))?;
        let mut normal = Vector::zero(verts[0].dim());
        for (c, b) in y.iter().zip(basis.iter()) {
            normal = normal.add(&b.scale(c))?;
        }
        let nn = normal.norm_sq();
        debug_assert!(!nn.is_zero());
        let mut min_abs: Option<Rational> = None;
        for (i, v) in verts.iter().enumerate() {
            if face.vertex_indices.contains(&i) {
                continue;
            }
            let val = v.sub(&fpts[0])?.dot(&normal)?;
            let a = val.abs();
            if min_abs.as_ref().is_none_or(|m| &a < m) {
                min_abs = Some(a);
            }
        }
        let min_abs = min_abs.expect("facet complement is nonempty");
        let d = &min_abs * &min_abs / &nn;
        if best.as_ref().is_none_or(|(b, _)| &d < b) {
            best = Some((d, face));
        }
    }
    best.ok_or_else(|| Error::Degenerate("polytope has no facets".into()))
}
