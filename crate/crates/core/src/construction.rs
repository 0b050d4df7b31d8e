//! Near-kissing pair generator in dimension `delta * (sigma + 1)` and the
//! explicit small-dimension witness configurations.
//!
//! The generated pair lives on the parallel lattice hyperplanes
//! `a_bar . x = 0` and `a_bar . x = 1`, where `a_bar` is the block lift of
//! the vector with coordinates `a_i = (k(1-delta))^(i-1)`. Membership of
//! the two near points is certified through explicit lattice generator
//! families whose barycenters are the lifted matrix columns, so the full
//! hyperplane polytopes are never enumerated.

use num_traits::{One, Signed, Zero};

use crate::bounds::upper_bound_construction_sq;
use crate::error::{Error, Result};
use crate::geometry::{barycentric_membership, Barycentric, LatticePoint};
use crate::linalg::{Matrix, Vector};
use crate::rational::{pow, rat, Int, Rational};

/// Parameters of the block construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub sigma: u32,
    pub delta: u32,
    pub k: i64,
}

impl ConstructionSpec {
    pub fn new(sigma: u32, delta: u32, k: i64) -> Result<Self> {
        if sigma < 1 {
            return Err(Error::Precondition("construction needs sigma >= 1".into()));
        }
        if delta < 3 {
            return Err(Error::Precondition("construction needs delta >= 3".into()));
        }
        if k < 1 {
            return Err(Error::Precondition("construction needs k >= 1".into()));
        }
        Ok(ConstructionSpec { sigma, delta, k })
    }

    /// Ambient dimension `delta * (sigma + 1)`.
    pub fn ambient_dim(&self) -> usize {
        self.delta as usize * (self.sigma as usize + 1)
    }

    /// Convexity of the defining combinations is proved only for
    /// `delta >= 4`; `delta = 3` is accepted with this flag cleared.
    pub fn convexity_guaranteed(&self) -> bool {
        self.delta >= 4
    }
}

/// The construction data: the hyperplane normal, the coefficient matrices,
/// the near pair in both small and lifted coordinates, and the lattice
/// generator families certifying membership.
#[derive(Debug, Clone)]
pub struct ConstructionOutput {
    pub spec: ConstructionSpec,
    /// `a_i = (k(1-delta))^(i-1)`, dimension `sigma + 1`.
    pub a_vec: Vec<Int>,
    pub m_p: Matrix,
    pub m_q: Matrix,
    pub theta: Rational,
    pub p_small: Vector,
    pub q_small: Vector,
    pub p_lift: Vector,
    pub q_lift: Vector,
    /// Convex coefficients of `p_small` over the columns of `m_p`.
    pub coeffs_p: Vec<Rational>,
    /// Convex coefficients of `q_small` over the columns of `m_q`.
    pub coeffs_q: Vec<Rational>,
    /// Per column `i`, the `delta` lattice points on `a_bar . x = 0` whose
    /// barycenter is the lifted column.
    pub generators_p: Vec<Vec<LatticePoint>>,
    /// Per column `i`, the `delta` lattice points on `a_bar . x = 1`.
    pub generators_q: Vec<Vec<LatticePoint>>,
    pub convexity_guaranteed: bool,
}

/// Block replication: each coordinate of `x` repeated `delta` times in order.
pub fn lift(x: &Vector, delta: u32) -> Vector {
    let mut out = Vec::with_capacity(x.dim() * delta as usize);
    for c in x.iter() {
        for _ in 0..delta {
            out.push(c.clone());
        }
    }
    Vector::new(out)
}

/// The mixing coefficient
/// `theta = (k(1-delta) - 1)(k(1-delta))^(sigma-1) / ((k(1-delta))^sigma - 1)`.
pub fn theta(spec: &ConstructionSpec) -> Result<Rational> {
    let s = rat(spec.k) * rat(1 - spec.delta as i64);
    let den = pow(&s, spec.sigma) - Rational::one();
    if den.is_zero() {
        return Err(Error::Degenerate("theta denominator vanishes".into()));
    }
    Ok((&s - Rational::one()) * pow(&s, spec.sigma - 1) / den)
}

fn column(m: &Matrix, j: usize) -> Vector {
    Vector::new((0..m.rows()).map(|i| m.get(i, j).clone()).collect())
}

/// Lattice generator for column `i` (1-based) of the `P`-side matrix.
fn generator_p(spec: &ConstructionSpec, i: usize, s: usize) -> LatticePoint {
    let delta = spec.delta as usize;
    let d = spec.ambient_dim();
    let mut coords = vec![0i64; d];
    for j in 1..=d {
        let slot = (j - 1) % delta + 1;
        coords[j - 1] = if j <= delta * (i - 1) && slot != s {
            spec.k
        } else if j > delta && j <= delta * i && slot == s {
            1
        } else {
            0
        };
    }
    LatticePoint::new(coords)
}

/// Lattice generator for column `i` (1-based) of the `Q`-side matrix.
fn generator_q(spec: &ConstructionSpec, i: usize, s: usize) -> LatticePoint {
    let delta = spec.delta as usize;
    let d = spec.ambient_dim();
    let mut coords = vec![0i64; d];
    for j in 1..=d {
        let slot = (j - 1) % delta + 1;
        coords[j - 1] = if j <= delta * (i - 1) && slot != s {
            spec.k
        } else if j <= delta * i && slot == s {
            1
        } else {
            0
        };
    }
    LatticePoint::new(coords)
}

/// Build the construction and check every defining identity exactly.
pub fn build_construction(spec: &ConstructionSpec) -> Result<ConstructionOutput> {
    let sigma = spec.sigma as usize;
    let n = sigma + 1;
    let delta = spec.delta as usize;
    let t = rat(spec.k) * rat(spec.delta as i64 - 1);
    let s = -t.clone();

    let a_vec: Vec<Int> = (0..n)
        .map(|i| {
            let mut v = Int::one();
            for _ in 0..i {
                v *= s.numer();
            }
            v
        })
        .collect();

    // A = (delta-1)k/delta, B = 1/delta, C = A + B.
    let b_entry = Rational::new(Int::one(), Int::from(spec.delta));
    let a_entry = &t * &b_entry;
    let c_entry = &a_entry + &b_entry;
    let mut m_p = Matrix::zero(n, n);
    for j in 1..n {
        m_p.set(0, j, a_entry.clone());
    }
    for i in 1..n {
        m_p.set(i, i, b_entry.clone());
        for j in i + 1..n {
            m_p.set(i, j, c_entry.clone());
        }
    }
    let mut m_q = m_p.clone();
    for j in 0..n {
        m_q.set(0, j, m_p.get(0, j) + &b_entry);
    }

    let th = theta(spec)?;
    // T = (t^sigma - 1)/((t - 1) t^sigma); the p-coefficients below sum to 1.
    let t_pow = pow(&t, spec.sigma);
    let tail_sum = (&t_pow - Rational::one()) / ((&t - Rational::one()) * &t_pow);

    let mut coeffs_p = Vec::with_capacity(n);
    coeffs_p.push(Rational::one() - &th * &tail_sum);
    for i in 1..=sigma {
        coeffs_p.push(&th / pow(&t, i as u32));
    }

    let mut coeffs_q = Vec::with_capacity(n);
    coeffs_q.push((&t + Rational::one()) / &t - &th * &tail_sum);
    for i in 1..=sigma {
        let sign = if i % 2 == 0 { rat(2) } else { rat(0) };
        coeffs_q.push(&th * sign / pow(&t, i as u32));
    }

    // The displayed coefficient theta(1 + (-1)^i)/t^i must agree with the
    // geometric form theta/t^i + theta/s^i used in the telescoping proof.
    for i in 1..=sigma {
        let alt = &th / pow(&t, i as u32) + &th / pow(&s, i as u32);
        if alt != coeffs_q[i] {
            return Err(Error::Verification(format!(
                "q-coefficient forms disagree at i = {i}"
            )));
        }
    }

    let sum_p: Rational = coeffs_p.iter().sum();
    let sum_q: Rational = coeffs_q.iter().sum();
    if !sum_p.is_one() || !sum_q.is_one() {
        return Err(Error::Verification("construction coefficients do not sum to 1".into()));
    }
    if spec.convexity_guaranteed()
        && (coeffs_p.iter().any(|c| c.is_negative()) || coeffs_q.iter().any(|c| c.is_negative()))
    {
        return Err(Error::Verification("negative convex coefficient with delta >= 4".into()));
    }

    let mut p_small = Vector::zero(n);
    for (i, c) in coeffs_p.iter().enumerate() {
        p_small = p_small.add(&column(&m_p, i).scale(c))?;
    }
    let mut q_small = Vector::zero(n);
    for (i, c) in coeffs_q.iter().enumerate() {
        q_small = q_small.add(&column(&m_q, i).scale(c))?;
    }
    let p_lift = lift(&p_small, spec.delta);
    let q_lift = lift(&q_small, spec.delta);

    // Generator families and their certifying identities.
    let mut generators_p = Vec::with_capacity(n);
    let mut generators_q = Vec::with_capacity(n);
    let bar_a = |j: usize| -> &Int { &a_vec[(j - 1) / delta] };
    let d = spec.ambient_dim();
    for i in 1..=n {
        let fam_p: Vec<LatticePoint> = (1..=delta).map(|s| generator_p(spec, i, s)).collect();
        let fam_q: Vec<LatticePoint> = (1..=delta).map(|s| generator_q(spec, i, s)).collect();
        for g in &fam_p {
            let dot: Int = (1..=d).map(|j| bar_a(j) * Int::from(g.coords()[j - 1])).sum();
            if !dot.is_zero() {
                return Err(Error::Verification(format!("P generator off the a.x = 0 hyperplane (column {i})")));
            }
        }
        for g in &fam_q {
            let dot: Int = (1..=d).map(|j| bar_a(j) * Int::from(g.coords()[j - 1])).sum();
            if !dot.is_one() {
                return Err(Error::Verification(format!("Q generator off the a.x = 1 hyperplane (column {i})")));
            }
        }
        // Barycenter of the family equals the lifted column.
        let inv_delta = Rational::new(Int::one(), Int::from(spec.delta));
        let mut bary_p = Vector::zero(d);
        for g in &fam_p {
            bary_p = bary_p.add(&g.to_vector())?;
        }
        if bary_p.scale(&inv_delta) != lift(&column(&m_p, i - 1), spec.delta) {
            return Err(Error::Verification(format!("P generator barycenter mismatch (column {i})")));
        }
        let mut bary_q = Vector::zero(d);
        for g in &fam_q {
            bary_q = bary_q.add(&g.to_vector())?;
        }
        if bary_q.scale(&inv_delta) != lift(&column(&m_q, i - 1), spec.delta) {
            return Err(Error::Verification(format!("Q generator barycenter mismatch (column {i})")));
        }
        generators_p.push(fam_p);
        generators_q.push(fam_q);
    }

    // Column decomposition re-derived independently: the matrix columns are
    // affinely independent, so barycentric membership must reproduce the
    // coefficients.
    if spec.convexity_guaranteed() {
        let cols_p: Vec<Vector> = (0..n).map(|j| column(&m_p, j)).collect();
        match barycentric_membership(&p_small, &cols_p)? {
            Barycentric::Inside(l) if l == coeffs_p => {}
            other => {
                return Err(Error::Verification(format!(
                    "p decomposition not recovered barycentrically: {other:?}"
                )))
            }
        }
        let cols_q: Vec<Vector> = (0..n).map(|j| column(&m_q, j)).collect();
        match barycentric_membership(&q_small, &cols_q)? {
            Barycentric::Inside(l) if l == coeffs_q => {}
            other => {
                return Err(Error::Verification(format!(
                    "q decomposition not recovered barycentrically: {other:?}"
                )))
            }
        }
    }

    // Distance identities of the near pair.
    let diff = q_small.sub(&p_small)?;
    if !diff[0].is_zero() {
        return Err(Error::Verification("first coordinate of q - p is nonzero".into()));
    }
    let gap_bound = Rational::new(Int::one(), t_pow.numer().clone());
    for j in 1..=sigma {
        if diff[j].abs() > gap_bound {
            return Err(Error::Verification(format!("coordinate gap {j} exceeds 1/t^sigma")));
        }
    }
    if spec.convexity_guaranteed() {
        let bound = upper_bound_construction_sq(spec.sigma, spec.delta, spec.k)?;
        let lifted_diff = q_lift.sub(&p_lift)?;
        if lifted_diff.norm_sq() > bound.dist_sq_bound {
            return Err(Error::Verification("lifted pair distance exceeds the construction bound".into()));
        }
    }

    Ok(ConstructionOutput {
        spec: *spec,
        a_vec,
        m_p,
        m_q,
        theta: th,
        p_small,
        q_small,
        p_lift,
        q_lift,
        coeffs_p,
        coeffs_q,
        generators_p,
        generators_q,
        convexity_guaranteed: spec.convexity_guaranteed(),
    })
}

/// Parameter choice `sigma = floor(d^beta)`, `delta = floor(d/(sigma+1))`
/// for embedding the construction in ambient dimension `d`.
pub fn suggested_parameters(d: u32, beta: f64) -> Result<(u32, u32)> {
    if !(0.0 < beta && beta < 1.0) {
        return Err(Error::Precondition("beta must lie strictly between 0 and 1".into()));
    }
    let sigma = (d as f64).powf(beta).floor() as u32;
    if sigma < 1 {
        return Err(Error::Precondition("d too small for the requested beta".into()));
    }
    let delta = d / (sigma + 1);
    Ok((sigma, delta))
}

fn point(coords: &[i64]) -> LatticePoint {
    LatticePoint::new(coords.to_vec())
}

fn unit(d: usize, i: usize) -> LatticePoint {
    let mut c = vec![0i64; d];
    c[i] = 1;
    LatticePoint::new(c)
}

/// Diagonal-versus-simplex witness for `k = 1`: the hypercube diagonal from
/// the origin against the simplex on the first `d-1` unit vectors. Its
/// exact squared distance is `1/(d(d-1))`.
pub fn witness_lemma51(d: u32) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>)> {
    if d < 2 {
        return Err(Error::Precondition("diagonal witness needs d >= 2".into()));
    }
    let d = d as usize;
    let vp = vec![point(&vec![0; d]), point(&vec![1; d])];
    let vq = (0..d - 1).map(|i| unit(d, i)).collect();
    Ok((vp, vq))
}

/// Closed-form squared distance of the `witness_lemma51` pair.
pub fn lemma51_dist_sq(d: u32) -> Rational {
    Rational::new(Int::one(), Int::from(d) * Int::from(d - 1))
}

/// Point-versus-simplex witness for `k >= 2`: the all-ones point against the
/// simplex spanned by the origin and the points with one of the first `d-1`
/// coordinates lowered to `k-1` from the all-`k` point. Its exact squared
/// distance is `1/((d-1)k^2 + ((d-1)k - 1)^2)`.
pub fn witness_lemma52(d: u32, k: i64) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>)> {
    if d < 2 || k < 2 {
        return Err(Error::Precondition("point witness needs d >= 2 and k >= 2".into()));
    }
    let d = d as usize;
    let vp = vec![point(&vec![1; d])];
    let mut vq = vec![point(&vec![0; d])];
    for i in 0..d - 1 {
        let mut c = vec![k; d];
        c[i] = k - 1;
        vq.push(LatticePoint::new(c));
    }
    Ok((vp, vq))
}

/// Closed-form squared distance of the `witness_lemma52` pair.
pub fn lemma52_dist_sq(d: u32, k: i64) -> Rational {
    let dk = Int::from(d as i64 - 1) * Int::from(k);
    let den = &dk * Int::from(k) + (&dk - Int::one()) * (&dk - Int::one());
    Rational::new(Int::one(), den)
}

/// A cataloged optimal configuration with its claimed squared distance.
#[derive(Debug, Clone)]
pub struct CatalogWitness {
    pub vp: Vec<LatticePoint>,
    pub vq: Vec<LatticePoint>,
    pub claimed_dist_sq: Rational,
}

/// The optimal configurations achieving the known values of `eps(d,k)`.
/// Returns `None` for pairs outside the catalog.
pub fn witness_catalog(d: u32, k: i64) -> Option<Vec<CatalogWitness>> {
    let w = |vp: Vec<LatticePoint>, vq: Vec<LatticePoint>, num: i64, den: i64| CatalogWitness {
        vp,
        vq,
        claimed_dist_sq: Rational::new(Int::from(num), Int::from(den)),
    };
    let entry = match (d, k) {
        (2, 1) => w(
            vec![point(&[0, 0])],
            vec![point(&[0, 1]), point(&[1, 0])],
            1,
            2,
        ),
        (2, 2) => w(
            vec![point(&[0, 1])],
            vec![point(&[0, 0]), point(&[1, 2])],
            1,
            5,
        ),
        (2, kk @ 3..=6) => w(
            vec![point(&[1, 1])],
            vec![point(&[0, 0]), point(&[kk - 1, kk])],
            1,
            kk * kk + (kk - 1) * (kk - 1),
        ),
        (3, 1) => w(
            vec![point(&[0, 0, 0]), point(&[1, 1, 1])],
            vec![point(&[1, 0, 0]), point(&[0, 1, 0])],
            1,
            6,
        ),
        (3, 2) => w(
            vec![point(&[0, 0, 0]), point(&[1, 2, 2])],
            vec![point(&[0, 1, 2]), point(&[2, 2, 1])],
            1,
            50,
        ),
        (3, 3) => w(
            vec![point(&[0, 0, 0]), point(&[2, 3, 3])],
            vec![point(&[0, 1, 2]), point(&[3, 2, 0])],
            1,
            299,
        ),
        (4, 1) => w(
            vec![point(&[0, 0, 0, 0]), point(&[1, 1, 1, 1])],
            vec![point(&[0, 0, 0, 1]), point(&[0, 1, 1, 0]), point(&[1, 0, 1, 0])],
            1,
            18,
        ),
        (5, 1) => w(
            vec![point(&[0, 0, 0, 0, 0]), point(&[1, 1, 1, 1, 1])],
            vec![
                point(&[0, 0, 0, 1, 1]),
                point(&[0, 0, 1, 0, 1]),
                point(&[0, 1, 1, 1, 0]),
                point(&[1, 1, 0, 0, 0]),
            ],
            1,
            58,
        ),
        _ => return None,
    };
    Some(vec![entry])
}

/// Every `(d, k, eps(d,k)^2)` with a known exact value.
pub fn table1_entries() -> Vec<(u32, i64, Rational)> {
    let mut out = Vec::new();
    for (d, k) in [
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 1),
        (3, 2),
        (3, 3),
        (4, 1),
        (5, 1),
    ] {
        let cat = witness_catalog(d, k).expect("catalog entry");
        out.push((d, k, cat[0].claimed_dist_sq.clone()));
    }
    out
}
