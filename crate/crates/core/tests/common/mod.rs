//! Shared test helpers: random instance generation and the independent
//! barycentric-grid distance oracle.

#![allow(dead_code)]

use latgap::geometry::LatticePoint;
use latgap::linalg::Vector;
use latgap::rational::{rat, Int, Rational};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

pub fn lattice_point(coords: &[i64]) -> LatticePoint {
    LatticePoint::new(coords.to_vec())
}

pub fn to_vectors(points: &[LatticePoint]) -> Vec<Vector> {
    points.iter().map(|p| p.to_vector()).collect()
}

/// Random distinct lattice points in `{0..k}^d`.
pub fn random_lattice_set(rng: &mut StdRng, d: usize, k: i64, count: usize) -> Vec<LatticePoint> {
    let mut out: Vec<LatticePoint> = Vec::new();
    while out.len() < count {
        let p = LatticePoint::new((0..d).map(|_| rng.gen_range(0..=k)).collect());
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// All compositions of `m` into `n` nonnegative parts, as barycentric
/// weights with denominator `m`.
pub fn barycentric_grid(n: usize, m: u32) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let mut parts = vec![0u32; n];
    fn rec(pos: usize, left: u32, parts: &mut Vec<u32>, m: u32, out: &mut Vec<Vec<Rational>>) {
        if pos + 1 == parts.len() {
            parts[pos] = left;
            out.push(
                parts
                    .iter()
                    .map(|&p| Rational::new(Int::from(p), Int::from(m)))
                    .collect(),
            );
            return;
        }
        for take in 0..=left {
            parts[pos] = take;
            rec(pos + 1, left - take, parts, m, out);
        }
    }
    rec(0, m, &mut parts, m, &mut out);
    out
}

fn combine(points: &[Vector], weights: &[Rational]) -> Vector {
    let mut acc = Vector::zero(points[0].dim());
    for (p, w) in points.iter().zip(weights.iter()) {
        acc = acc.add(&p.scale(w)).unwrap();
    }
    acc
}

/// Minimum squared distance over all pairs of barycentric grid points.
/// Every grid point is feasible, so this is an upper bound on the true
/// minimum; it also returns the minimizing pair.
pub fn grid_min_dist_sq(vp: &[Vector], vq: &[Vector], m: u32) -> (Rational, Vector, Vector) {
    let grid_p: Vec<Vector> = barycentric_grid(vp.len(), m)
        .iter()
        .map(|w| combine(vp, w))
        .collect();
    let grid_q: Vec<Vector> = barycentric_grid(vq.len(), m)
        .iter()
        .map(|w| combine(vq, w))
        .collect();
    let mut best: Option<(Rational, Vector, Vector)> = None;
    for p in &grid_p {
        for q in &grid_q {
            let d = p.sub(q).unwrap().norm_sq();
            if best.as_ref().is_none_or(|(b, _, _)| &d < b) {
                best = Some((d, p.clone(), q.clone()));
            }
        }
    }
    best.unwrap()
}

/// Squared covering radius bound of the mesh-`m` barycentric grid on
/// `conv(points)`: rounding barycentric weights to the grid moves a point
/// by at most `2 n R / m` where `R` is the vertex spread.
pub fn covering_radius_sq_bound(points: &[Vector], m: u32) -> Rational {
    let n = points.len() as i64;
    let mut r_sq = Rational::zero();
    for p in &points[1..] {
        let d = p.sub(&points[0]).unwrap().norm_sq();
        if d > r_sq {
            r_sq = d;
        }
    }
    Rational::new(Int::from(4 * n * n), Int::from(m as i64 * m as i64)) * r_sq
}

/// Independent grid oracle: checks that `impl_dist_sq` is consistent with a
/// brute-force barycentric grid, to within the grid's certified covering
/// gap, then tightens the upper bound by re-gridding regions shrunk toward
/// the incumbent pair (shrunk regions stay inside the hulls, so the lower
/// bound property of `impl_dist_sq` keeps being exercised).
pub fn grid_oracle_check(vp: &[Vector], vq: &[Vector], impl_dist_sq: &Rational, m: u32, zooms: u32) {
    let (grid_min, mut best_p, mut best_q) = grid_min_dist_sq(vp, vq, m);
    assert!(
        impl_dist_sq <= &grid_min,
        "implementation distance exceeds a feasible grid value: {impl_dist_sq} > {grid_min}"
    );
    // Certified gap: grid_min <= (sqrt(true) + r_P + r_Q)^2 with the
    // covering radii of the two grids; rationally,
    // grid_min - impl - rt2 <= 2 sqrt(rt2 * impl) with
    // rt2 = 2(r_P^2 + r_Q^2) >= (r_P + r_Q)^2.
    let rt2 = rat(2) * (covering_radius_sq_bound(vp, m) + covering_radius_sq_bound(vq, m));
    let g = &grid_min - impl_dist_sq - &rt2;
    if g > Rational::zero() {
        assert!(
            &g * &g <= rat(4) * &rt2 * impl_dist_sq,
            "grid minimum is out of the certified gap: grid {grid_min} vs impl {impl_dist_sq}"
        );
    }
    // Local refinement around the incumbent: each zoom halves the region
    // toward the current best pair; minima are nonincreasing and never
    // drop below the exact distance.
    let half = Rational::new(Int::from(1), Int::from(2));
    let mut prev = grid_min;
    let mut zp: Vec<Vector> = vp.to_vec();
    let mut zq: Vec<Vector> = vq.to_vec();
    for _ in 0..zooms {
        zp = zp
            .iter()
            .map(|v| best_p.add(&v.sub(&best_p).unwrap().scale(&half)).unwrap())
            .collect();
        zq = zq
            .iter()
            .map(|v| best_q.add(&v.sub(&best_q).unwrap().scale(&half)).unwrap())
            .collect();
        let (local_min, p, q) = grid_min_dist_sq(&zp, &zq, m);
        assert!(
            impl_dist_sq <= &local_min,
            "implementation distance exceeds a zoomed grid value"
        );
        assert!(local_min <= prev, "zoomed grid minimum increased");
        prev = local_min;
        best_p = p;
        best_q = q;
    }
}
