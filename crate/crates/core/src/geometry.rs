//! Lattice points, vertex-described polytopes, affine rank, barycentric
//! membership and face enumeration for small polytopes.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace_vector, solve_linear, LinearSolution, Matrix, Vector};
use crate::rational::Rational;

/// Vertex cap for face enumeration; candidate-hyperplane enumeration is
/// exponential, so the face machinery stays at desk scale.
pub const FACE_VERTEX_CAP: usize = 20;

/// Cap on `(k+1)^d` for exhaustive lattice-point enumeration.
pub const LATTICE_ENUMERATION_CAP: u128 = 10_000_000;

/// A point of the integer lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_ints(&self.coords)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(c: &[i64]) -> Self {
        LatticePoint::new(c.to_vec())
    }
}

pub fn lattice_points_to_vectors(points: &[LatticePoint]) -> Vec<Vector> {
    points.iter().map(|p| p.to_vector()).collect()
}

/// A lattice polytope in `[0,k]^d` given by its vertex set.
///
/// Construction removes duplicate and non-extreme input points, so the
/// stored vertices are exactly the extreme points of the convex hull, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
    k: i64,
}

impl LatticePolytope {
    pub fn new(points: Vec<LatticePoint>, k: i64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("polytope needs at least one point".into()));
        }
        if k < 0 {
            return Err(Error::Precondition("box bound k must be nonnegative".into()));
        }
        let d = points[0].dim();
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch("mixed point dimensions".into()));
            }
            if p.coords().iter().any(|&c| c < 0 || c > k) {
                return Err(Error::Precondition(format!(
                    "point {:?} outside [0,{}]^{}",
                    p.coords(),
                    k,
                    d
                )));
            }
        }
        let mut unique: Vec<LatticePoint> = points;
        unique.sort();
        unique.dedup();
        // Keep the extreme points only: a point is a vertex of the hull iff
        // it is not a convex combination of the others.
        let as_vectors: Vec<Vector> = unique.iter().map(|p| p.to_vector()).collect();
        let mut vertices = Vec::with_capacity(unique.len());
        for (i, p) in unique.iter().enumerate() {
            let others: Vec<Vector> = as_vectors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if others.is_empty() || !crate::distance::hull_contains_point(&others, &as_vectors[i])? {
                vertices.push(p.clone());
            }
        }
        Ok(LatticePolytope { vertices, k })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        affine_rank_lattice(&self.vertices)
    }

    pub fn to_vectors(&self) -> Vec<Vector> {
        lattice_points_to_vectors(&self.vertices)
    }
}

/// A face of a polytope, recorded as indices into the polytope's vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
    pub is_facet: bool,
}

/// Dimension of the affine hull of a point family, i.e. the rank of the
/// difference vectors against the first point.
pub fn affine_rank(points: &[Vector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dirs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).expect("same dimension").coords().to_vec())
        .collect();
    Matrix::from_rows(dirs).expect("uniform rows").rank()
}

pub fn affine_rank_lattice(points: &[LatticePoint]) -> usize {
    affine_rank(&lattice_points_to_vectors(points))
}

/// True when the points are affinely independent.
pub fn affinely_independent(points: &[Vector]) -> bool {
    points.is_empty() || affine_rank(points) == points.len() - 1
}

/// Result of a barycentric membership query against an affinely
/// independent family `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Barycentric {
    /// `x` is in `conv(S)`; the unique coefficients are nonnegative and sum to one.
    Inside(Vec<Rational>),
    /// `x` is in `aff(S)` but outside the hull; the unique signed coefficients.
    OutsideHull(Vec<Rational>),
    /// `x` is not in the affine hull of `S`.
    OutsideAffineHull,
}

/// Barycentric coordinates of `x` with respect to an affinely independent
/// family `S`. Errors if `S` is affinely dependent.
pub fn barycentric_membership(x: &Vector, s: &[Vector]) -> Result<Barycentric> {
    if s.is_empty() {
        return Err(Error::EmptyInput("barycentric membership needs points".into()));
    }
    if s.iter().any(|p| p.dim() != x.dim()) {
        return Err(Error::DimensionMismatch("point and family dimensions differ".into()));
    }
    if !affinely_independent(s) {
        return Err(Error::AffinelyDependent);
    }
    // lambda_0 = 1 - sum(lambda_i); solve sum_i lambda_i (s_i - s_0) = x - s_0.
    let n = s.len();
    if n == 1 {
        return Ok(if x == &s[0] {
            Barycentric::Inside(vec![Rational::from_integer(1.into())])
        } else {
            Barycentric::OutsideAffineHull
        });
    }
    let dirs: Vec<Vector> = s[1..].iter().map(|p| p.sub(&s[0]).expect("dims")).collect();
    let a = Matrix::from_columns(&dirs)?;
    let rhs = x.sub(&s[0])?;
    match solve_linear(&a, &rhs)? {
        LinearSolution::Inconsistent => Ok(Barycentric::OutsideAffineHull),
        LinearSolution::Underdetermined(_) => Err(Error::AffinelyDependent),
        LinearSolution::Unique(tail) => {
            let mut lambda = Vec::with_capacity(n);
            let mut head = Rational::from_integer(1.into());
            for t in &tail {
                head -= t;
            }
            lambda.push(head);
            lambda.extend(tail);
            if lambda.iter().all(|l| !l.is_negative()) {
                Ok(Barycentric::Inside(lambda))
            } else {
                Ok(Barycentric::OutsideHull(lambda))
            }
        }
    }
}

/// Greedy affinely independent spanning subset: returns indices `I` such
/// that `{points[i] : i in I}` is affinely independent and spans the same
/// affine hull. The first point is always kept.
pub fn affine_basis_indices(points: &[Vector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_pts: Vec<Vector> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        chosen_pts.push(p.clone());
        if affinely_independent(&chosen_pts) {
            chosen.push(i);
        } else {
            chosen_pts.pop();
        }
    }
    chosen
}

/// All proper nonempty faces of a small polytope.
///
/// Candidate supporting hyperplanes are spanned by affinely independent
/// vertex subsets; a subset is a face exactly when some linear functional
/// is maximized on it. Faces are produced as sorted vertex-index sets,
/// facets flagged, in canonical order.
pub fn proper_faces(p: &LatticePolytope) -> Result<Vec<Face>> {
    let verts = p.to_vectors();
    let n = verts.len();
    if n > FACE_VERTEX_CAP {
        return Err(Error::ScopeExceeded(format!(
            "face enumeration supports at most {FACE_VERTEX_CAP} vertices, got {n}"
        )));
    }
    let m = affine_rank(&verts);
    if m == 0 {
        return Ok(Vec::new());
    }

    // Basis of the direction space of aff(P).
    let basis_idx = affine_basis_indices(&verts);
    debug_assert_eq!(basis_idx.len(), m + 1);
    let basis: Vec<Vector> = basis_idx[1..]
        .iter()
        .map(|&i| verts[i].sub(&verts[basis_idx[0]]).expect("dims"))
        .collect();

    // Facets first: for every m-subset spanning an (m-1)-flat, build the
    // normal inside the direction space and test support.
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in itertools::Itertools::combinations((0..n).collect::<Vec<_>>().into_iter(), m) {
        let pts: Vec<Vector> = subset.iter().map(|&i| verts[i].clone()).collect();
        if affine_rank(&pts) != m - 1 {
            continue;
        }
        // n = B y with (t_i - t_0) . n = 0.
        let dirs: Vec<Vector> = pts[1..].iter().map(|q| q.sub(&pts[0]).expect("dims")).collect();
        let mut a = Matrix::zero(dirs.len(), basis.len());
        for (ri, dvec) in dirs.iter().enumerate() {
            for (ci, b) in basis.iter().enumerate() {
                a.set(ri, ci, dvec.dot(b)?);
            }
        }
        let Some(y) = nullspace_vector(&a) else {
            continue;
        };
        let mut normal = Vector::zero(verts[0].dim());
        for (c, b) in y.iter().zip(basis.iter()) {
            normal = normal.add(&b.scale(c))?;
        }
        if normal.coords().iter().all(|c| c.is_zero()) {
            continue;
        }
        let vals: Vec<Rational> = verts
            .iter()
            .map(|v| v.sub(&pts[0]).expect("dims").dot(&normal).expect("dims"))
            .collect();
        let any_pos = vals.iter().any(|v| v > &Rational::zero());
        let any_neg = vals.iter().any(|v| v < &Rational::zero());
        if any_pos && any_neg {
            continue;
        }
        let on: Vec<usize> = (0..n).filter(|&i| vals[i].is_zero()).collect();
        if on.len() == n {
            continue;
        }
        facets.insert(on);
    }

    // Every proper face is an intersection of facets; close under
    // pairwise intersection.
    let mut faces: BTreeSet<Vec<usize>> = facets.clone();
    let mut frontier: Vec<Vec<usize>> = facets.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        let snapshot: Vec<Vec<usize>> = faces.iter().cloned().collect();
        for g in &snapshot {
            let inter: Vec<usize> = f.iter().copied().filter(|i| g.contains(i)).collect();
            if inter.is_empty() || faces.contains(&inter) {
                continue;
            }
            faces.insert(inter.clone());
            frontier.push(inter);
        }
    }

    let mut out: Vec<Face> = faces
        .into_iter()
        .map(|idx| {
            let pts: Vec<Vector> = idx.iter().map(|&i| verts[i].clone()).collect();
            let dim = affine_rank(&pts);
            Face {
                is_facet: dim + 1 == m,
                vertex_indices: idx,
                dim,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        (a.vertex_indices.len(), &a.vertex_indices).cmp(&(b.vertex_indices.len(), &b.vertex_indices))
    });
    Ok(out)
}

/// All lattice points `x` in `{0..k}^d` with `a . x = c`.
pub fn lattice_points_in_hyperplane(d: usize, k: i64, a: &[i64], c: i64) -> Result<Vec<LatticePoint>> {
    if a.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "normal vector has dim {}, expected {}",
            a.len(),
            d
        )));
    }
    if k < 0 {
        return Err(Error::Precondition("k must be nonnegative".into()));
    }
    let total = (k as u128 + 1).checked_pow(d as u32);
    match total {
        Some(t) if t <= LATTICE_ENUMERATION_CAP => {}
        _ => {
            return Err(Error::ScopeExceeded(format!(
                "(k+1)^d = {}^{} exceeds the lattice enumeration cap {}",
                k + 1,
                d,
                LATTICE_ENUMERATION_CAP
            )))
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0i64; d];
    loop {
        let dot: i64 = current.iter().zip(a.iter()).map(|(&x, &ai)| x * ai).sum();
        if dot == c {
            out.push(LatticePoint::new(current.clone()));
        }
        // Odometer increment in lexicographic order from the last coordinate.
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if current[pos] < k {
                current[pos] += 1;
                for c in current.iter_mut().skip(pos + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}
