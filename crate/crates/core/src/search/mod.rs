//! Exact computation of `eps(d,k)`, the smallest distance between two
//! disjoint lattice polytopes in `[0,k]^d`.
//!
//! The search space is the set of simplex pairs whose dimensions sum to
//! `d - 1` and whose affine hulls are disjoint; some optimal pair always
//! has this shape, and every such pair is automatically disjoint. Pairs are
//! visited one representative per orbit of the box symmetry group extended
//! by the pair swap, pruned against a monotonically decreasing incumbent by
//! cheap certified lower bounds (bounding boxes, then a separating
//! projection along the centroid direction), and the survivors are measured
//! exactly.

pub mod cache;
pub mod symmetry;

pub use symmetry::{hyperoctahedral_group, SignedPermutation};

use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::bounds::{lower_bound_lattice_sq, upper_bound_special_sq};
use crate::construction::{witness_lemma51, witness_lemma52};
use crate::distance::{min_distance_sq, min_distance_sq_fast, verify_certificate, DistanceCertificate};
use crate::error::{Error, Result};
use crate::geometry::{lattice_points_to_vectors, LatticePoint};
use crate::linalg::{Matrix, Vector};
use crate::rational::{Int, Rational};

/// Cap on `(k+1)^d` for the epsilon search.
pub const EPSILON_BOX_CAP: u128 = 4096;
/// Dimension cap for the epsilon search (the symmetry group has order
/// `2^d d!`).
pub const EPSILON_DIM_CAP: u32 = 6;

/// A candidate pair: two affinely independent lattice point sets whose
/// dimensions sum to `d - 1` and whose affine hulls are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPairCandidate {
    pub sp: Vec<LatticePoint>,
    pub sq: Vec<LatticePoint>,
}

impl SimplexPairCandidate {
    pub fn dims(&self) -> (usize, usize) {
        (self.sp.len() - 1, self.sq.len() - 1)
    }
}

/// Canonical orbit key of a candidate pair under the box symmetries and
/// the pair swap: the lexicographically smallest encoding
/// `(sorted first side, sorted second side)` over the whole orbit, the
/// lower-dimensional side first. Two pairs have equal keys exactly when
/// they lie in one orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub first: Vec<LatticePoint>,
    pub second: Vec<LatticePoint>,
}

impl CanonicalKey {
    pub fn as_candidate(&self) -> SimplexPairCandidate {
        SimplexPairCandidate {
            sp: self.first.clone(),
            sq: self.second.clone(),
        }
    }
}

/// Canonical key of a pair of lattice point sets in `[0,k]^d`.
pub fn canonicalize(sp: &[LatticePoint], sq: &[LatticePoint], k: i64) -> CanonicalKey {
    assert!(!sp.is_empty() && !sq.is_empty(), "canonicalize needs nonempty sides");
    let d = sp[0].dim();
    let group = hyperoctahedral_group(d);
    let mut best: Option<(Vec<LatticePoint>, Vec<LatticePoint>)> = None;
    let mut consider = |a: Vec<LatticePoint>, b: Vec<LatticePoint>| {
        let cand = (a, b);
        if best.as_ref().is_none_or(|cur| &cand < cur) {
            best = Some(cand);
        }
    };
    for g in &group {
        let a = g.apply_set(sp, k);
        let b = g.apply_set(sq, k);
        match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Less => consider(a, b),
            std::cmp::Ordering::Greater => consider(b, a),
            std::cmp::Ordering::Equal => {
                consider(a.clone(), b.clone());
                consider(b, a);
            }
        }
    }
    let (first, second) = best.expect("nonempty group");
    CanonicalKey { first, second }
}

/// Search configuration.
#[derive(Debug, Clone)]
pub struct EpsilonOptions {
    /// Worker threads; the result is bit-identical for every width.
    pub jobs: usize,
    /// Result cache; a COMPLETE record is verified instead of recomputed.
    pub cache_path: Option<PathBuf>,
    /// Wall-clock budget; expiry yields an INCOMPLETE result carrying the
    /// current incumbent, an upper bound on `eps^2`.
    pub time_budget: Option<Duration>,
    /// Incumbent pruning with certified lower bounds.
    pub prune: bool,
    /// Orbit reduction under the box symmetry group.
    pub symmetry: bool,
    /// Extra starting upper bound on `eps^2`. Must be valid (e.g. a known
    /// achievable distance); the built-in witness seed is always applied.
    pub initial_incumbent: Option<Rational>,
}

impl Default for EpsilonOptions {
    fn default() -> Self {
        EpsilonOptions {
            jobs: 1,
            cache_path: None,
            time_budget: None,
            prune: true,
            symmetry: true,
            initial_incumbent: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    /// Time budget expired; `eps_sq` is the incumbent, an upper bound.
    Incomplete,
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Candidate pairs measured exactly.
    pub orbits_visited: u64,
    /// Candidate pairs skipped by incumbent pruning.
    pub candidates_pruned: u64,
    /// Raw subset pairs enumerated.
    pub candidates_enumerated: u64,
    pub wall: Duration,
    pub from_cache: bool,
}

#[derive(Debug, Clone)]
pub struct EpsilonResult {
    pub d: u32,
    pub k: i64,
    pub eps_sq: Rational,
    pub witness: SimplexPairCandidate,
    pub certificate: DistanceCertificate,
    pub status: SearchStatus,
    pub stats: SearchStats,
}

impl EpsilonResult {
    /// Canonical key of the reported witness.
    pub fn witness_key(&self) -> CanonicalKey {
        canonicalize(&self.witness.sp, &self.witness.sq, self.k)
    }
}

/// All lattice points of `[0,k]^d` in lexicographic order.
fn box_points(d: usize, k: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; d];
    loop {
        out.push(LatticePoint::new(cur.clone()));
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < k {
                cur[pos] += 1;
                for c in cur.iter_mut().skip(pos + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

struct Ctx {
    points: Vec<LatticePoint>,
    vectors: Vec<Vector>,
    /// Per group element, the induced permutation of point indices.
    group_maps: Vec<Vec<u32>>,
}

impl Ctx {
    fn new(d: usize, k: i64, symmetry: bool) -> Ctx {
        let points = box_points(d, k);
        let vectors = lattice_points_to_vectors(&points);
        let group_maps = if symmetry {
            let group = hyperoctahedral_group(d);
            group
                .iter()
                .map(|g| {
                    points
                        .iter()
                        .map(|p| {
                            let img = g.apply_point(p, k);
                            points.binary_search(&img).expect("group preserves the box") as u32
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        Ctx {
            points,
            vectors,
            group_maps,
        }
    }

    fn sorted_image(&self, map: &[u32], idx: &[u32]) -> Vec<u32> {
        let mut img: Vec<u32> = idx.iter().map(|&i| map[i as usize]).collect();
        img.sort_unstable();
        img
    }

    /// True when `idx` is the lexicographically smallest set in its orbit.
    fn is_min_image(&self, idx: &[u32]) -> bool {
        for map in &self.group_maps {
            if self.sorted_image(map, idx).as_slice() < idx {
                return false;
            }
        }
        true
    }

    /// Group elements fixing `idx` setwise.
    fn stabilizer(&self, idx: &[u32]) -> Vec<usize> {
        self.group_maps
            .iter()
            .enumerate()
            .filter(|(_, map)| self.sorted_image(map, idx) == idx)
            .map(|(g, _)| g)
            .collect()
    }

    /// Smallest image of `idx` over the whole group, with the achievers.
    fn min_image(&self, idx: &[u32]) -> (Vec<u32>, Vec<usize>) {
        let mut best = idx.to_vec();
        let mut achievers = Vec::new();
        for (g, map) in self.group_maps.iter().enumerate() {
            let img = self.sorted_image(map, idx);
            match img.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = img;
                    achievers.clear();
                    achievers.push(g);
                }
                std::cmp::Ordering::Equal => achievers.push(g),
                std::cmp::Ordering::Greater => {}
            }
        }
        if best == idx {
            // idx itself is minimal; its stabilizer achieves it.
            achievers = self.stabilizer(idx);
        }
        (best, achievers)
    }

    fn to_points(&self, idx: &[u32]) -> Vec<LatticePoint> {
        idx.iter().map(|&i| self.points[i as usize].clone()).collect()
    }

    fn to_vectors(&self, idx: &[u32]) -> Vec<Vector> {
        idx.iter().map(|&i| self.vectors[i as usize].clone()).collect()
    }
}

fn affinely_independent_idx(ctx: &Ctx, idx: &[u32]) -> bool {
    if idx.len() <= 1 {
        return true;
    }
    let base = ctx.points[idx[0] as usize].coords();
    let rows: Vec<Vec<i64>> = idx[1..]
        .iter()
        .map(|&i| {
            ctx.points[i as usize]
                .coords()
                .iter()
                .zip(base.iter())
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    Matrix::from_int_rows(&rows).expect("uniform rows").rank() == idx.len() - 1
}

/// Affine hulls of two affinely independent families are disjoint exactly
/// when adjoining the connecting vector raises the rank of the combined
/// direction space.
fn affine_hulls_disjoint(ctx: &Ctx, sp: &[u32], sq: &[u32]) -> bool {
    let p0 = ctx.points[sp[0] as usize].coords();
    let q0 = ctx.points[sq[0] as usize].coords();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(sp.len() + sq.len() - 1);
    for &i in &sp[1..] {
        rows.push(
            ctx.points[i as usize]
                .coords()
                .iter()
                .zip(p0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        );
    }
    for &j in &sq[1..] {
        rows.push(
            ctx.points[j as usize]
                .coords()
                .iter()
                .zip(q0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        );
    }
    let base_rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_int_rows(&rows).expect("uniform rows").rank()
    };
    rows.push(q0.iter().zip(p0.iter()).map(|(a, b)| a - b).collect());
    let full_rank = Matrix::from_int_rows(&rows).expect("uniform rows").rank();
    full_rank > base_rank
}

/// Data precomputed for one first-side representative.
struct SpInfo {
    idx: Vec<u32>,
    m_q: usize,
    same_size: bool,
    stab: Vec<usize>,
    complement: Vec<u32>,
    box_lo: Vec<i64>,
    box_hi: Vec<i64>,
    coord_sum: Vec<i64>,
}

fn make_sp_info(ctx: &Ctx, idx: Vec<u32>, m_q: usize, symmetry: bool) -> SpInfo {
    let d = ctx.points[0].dim();
    let mut box_lo = vec![i64::MAX; d];
    let mut box_hi = vec![i64::MIN; d];
    let mut coord_sum = vec![0i64; d];
    for &i in &idx {
        for (c, &v) in ctx.points[i as usize].coords().iter().enumerate() {
            box_lo[c] = box_lo[c].min(v);
            box_hi[c] = box_hi[c].max(v);
            coord_sum[c] += v;
        }
    }
    let complement: Vec<u32> = (0..ctx.points.len() as u32).filter(|i| !idx.contains(i)).collect();
    SpInfo {
        same_size: idx.len() == m_q,
        stab: if symmetry { ctx.stabilizer(&idx) } else { Vec::new() },
        idx,
        m_q,
        complement,
        box_lo,
        box_hi,
        coord_sum,
    }
}

/// Squared distance between the bounding boxes; a certified lower bound.
fn box_dist_sq(ctx: &Ctx, sp: &SpInfo, sq: &[u32]) -> i64 {
    let d = sp.box_lo.len();
    let mut total = 0i64;
    for c in 0..d {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for &j in sq {
            let v = ctx.points[j as usize].coords()[c];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let gap = (sp.box_lo[c] - hi).max(lo - sp.box_hi[c]).max(0);
        total += gap * gap;
    }
    total
}

/// Squared gap of the supporting intervals along the centroid direction,
/// over the squared direction norm; a certified lower bound. Zero when the
/// projections overlap.
fn directional_bound(ctx: &Ctx, sp: &SpInfo, sq: &[u32]) -> Option<(i64, i64)> {
    let d = sp.box_lo.len();
    let a = sp.idx.len() as i64;
    let b = sq.len() as i64;
    let mut dir = vec![0i64; d];
    let mut nonzero = false;
    for c in 0..d {
        let mut sq_sum = 0i64;
        for &j in sq {
            sq_sum += ctx.points[j as usize].coords()[c];
        }
        dir[c] = a * sq_sum - b * sp.coord_sum[c];
        nonzero |= dir[c] != 0;
    }
    if !nonzero {
        return None;
    }
    let dot = |idx: u32| -> i64 {
        ctx.points[idx as usize]
            .coords()
            .iter()
            .zip(dir.iter())
            .map(|(&x, &u)| x * u)
            .sum()
    };
    let max_p = sp.idx.iter().map(|&i| dot(i)).max().unwrap();
    let min_q = sq.iter().map(|&j| dot(j)).min().unwrap();
    let gap = min_q - max_p;
    if gap <= 0 {
        return None;
    }
    let norm: i64 = dir.iter().map(|&u| u * u).sum();
    Some((gap, norm))
}

struct PruneState {
    epoch: u64,
    num: Int,
    den: Int,
    /// Smallest integer strictly exceeding the incumbent.
    box_min: i64,
}

impl PruneState {
    fn refresh(&mut self, incumbent: &Rational, epoch: u64) {
        self.epoch = epoch;
        self.num = incumbent.numer().clone();
        self.den = incumbent.denom().clone();
        let floor = incumbent.numer() / incumbent.denom();
        self.box_min = i64::try_from(&floor + 1i32).unwrap_or(i64::MAX);
    }

    /// True when the candidate's lower bound strictly exceeds the
    /// incumbent; ties are kept so every minimizer is measured.
    fn prunes(&self, ctx: &Ctx, sp: &SpInfo, sq: &[u32]) -> bool {
        let bx = box_dist_sq(ctx, sp, sq);
        if bx >= self.box_min {
            return true;
        }
        if let Some((gap, norm)) = directional_bound(ctx, sp, sq) {
            // gap^2 / norm > num/den  <=>  gap^2 den > num norm.
            let lhs = Int::from(gap) * Int::from(gap) * &self.den;
            let rhs = &self.num * Int::from(norm);
            if lhs > rhs {
                return true;
            }
        }
        false
    }
}

/// Orbit-level acceptance in symmetry mode: the second side must be minimal
/// under the first side's stabilizer, and for equal sizes the pair's own
/// encoding must not exceed the swapped orbit's canonical encoding.
fn symmetry_pass(ctx: &Ctx, sp: &SpInfo, sq: &[u32]) -> bool {
    for &g in &sp.stab {
        if ctx.sorted_image(&ctx.group_maps[g], sq).as_slice() < sq {
            return false;
        }
    }
    if sp.same_size {
        let (swapped_first, achievers) = ctx.min_image(sq);
        match swapped_first.cmp(&sp.idx) {
            std::cmp::Ordering::Less => {
                let swapped_second = achievers
                    .iter()
                    .map(|&g| ctx.sorted_image(&ctx.group_maps[g], &sp.idx))
                    .min()
                    .expect("achievers nonempty");
                if (swapped_first, swapped_second) < (sp.idx.clone(), sq.to_vec()) {
                    return false;
                }
            }
            std::cmp::Ordering::Equal => {
                let swapped_second = achievers
                    .iter()
                    .map(|&g| ctx.sorted_image(&ctx.group_maps[g], &sp.idx))
                    .min()
                    .expect("achievers nonempty");
                if swapped_second.as_slice() < sq {
                    return false;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    true
}

/// First-side representatives for every admissible dimension split.
fn first_side_reps(ctx: &Ctx, d: u32, symmetry: bool) -> Vec<SpInfo> {
    let n = ctx.points.len() as u32;
    let mut reps = Vec::new();
    for r in 0..=((d as usize).saturating_sub(1)) / 2 {
        let m_p = r + 1;
        let m_q = d as usize - r;
        let mut stack: Vec<u32> = Vec::with_capacity(m_p);
        // Depth-first enumeration of ascending index tuples.
        fn rec(
            ctx: &Ctx,
            n: u32,
            m_p: usize,
            m_q: usize,
            symmetry: bool,
            from: u32,
            stack: &mut Vec<u32>,
            reps: &mut Vec<SpInfo>,
        ) {
            if stack.len() == m_p {
                if affinely_independent_idx(ctx, stack) && (!symmetry || ctx.is_min_image(stack)) {
                    reps.push(make_sp_info(ctx, stack.clone(), m_q, symmetry));
                }
                return;
            }
            for i in from..n {
                stack.push(i);
                rec(ctx, n, m_p, m_q, symmetry, i + 1, stack, reps);
                stack.pop();
            }
        }
        rec(ctx, n, m_p, m_q, symmetry, 0, &mut stack, &mut reps);
    }
    reps
}

/// Visit one representative per canonical orbit of valid candidate pairs
/// (`symmetry = true`), or every valid ordered pair with the lower
/// dimension first (`symmetry = false`). No pruning. Returns the number of
/// candidates visited.
pub fn enumerate_candidates<F>(d: u32, k: i64, symmetry: bool, mut visitor: F) -> Result<u64>
where
    F: FnMut(&SimplexPairCandidate) -> Result<()>,
{
    check_search_scope(d, k)?;
    let ctx = Ctx::new(d as usize, k, symmetry);
    let reps = first_side_reps(&ctx, d, symmetry);
    let mut visited = 0u64;
    for sp in &reps {
        let m_q = sp.m_q;
        let comp = &sp.complement;
        if comp.len() < m_q {
            continue;
        }
        let mut combo: Vec<usize> = (0..m_q).collect();
        loop {
            let sq: Vec<u32> = combo.iter().map(|&p| comp[p]).collect();
            if candidate_passes(&ctx, sp, &sq, symmetry) {
                visited += 1;
                visitor(&SimplexPairCandidate {
                    sp: ctx.to_points(&sp.idx),
                    sq: ctx.to_points(&sq),
                })?;
            }
            if !advance_combo(&mut combo, comp.len()) {
                break;
            }
        }
    }
    Ok(visited)
}

fn candidate_passes(ctx: &Ctx, sp: &SpInfo, sq: &[u32], symmetry: bool) -> bool {
    if symmetry {
        if !symmetry_pass(ctx, sp, sq) {
            return false;
        }
    } else if sp.same_size && sq < sp.idx.as_slice() {
        // Unordered equal-size pairs are visited once.
        return false;
    }
    affinely_independent_idx(ctx, sq) && affine_hulls_disjoint(ctx, &sp.idx, sq)
}

/// Advance an ascending combination of positions `0..n`; false at the end.
fn advance_combo(combo: &mut [usize], n: usize) -> bool {
    let m = combo.len();
    let mut i = m;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if combo[i] < n - (m - i) {
            combo[i] += 1;
            for j in i + 1..m {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
}

fn check_search_scope(d: u32, k: i64) -> Result<()> {
    if d < 1 || k < 1 {
        return Err(Error::Precondition("epsilon needs d >= 1 and k >= 1".into()));
    }
    if d > EPSILON_DIM_CAP {
        return Err(Error::ScopeExceeded(format!(
            "epsilon search supports d <= {EPSILON_DIM_CAP}, got {d}"
        )));
    }
    match (k as u128 + 1).checked_pow(d) {
        Some(t) if t <= EPSILON_BOX_CAP => Ok(()),
        _ => Err(Error::ScopeExceeded(format!(
            "(k+1)^d = {}^{} exceeds the search cap {}",
            k + 1,
            d,
            EPSILON_BOX_CAP
        ))),
    }
}

/// Seed candidate: the best closed-form witness for `(d,k)`, always a valid
/// candidate pair achieving a proven upper bound on `eps^2`.
fn seed_candidate(d: u32, k: i64) -> Result<(Rational, SimplexPairCandidate)> {
    let (vp, vq) = if d == 1 {
        (vec![LatticePoint::new(vec![0])], vec![LatticePoint::new(vec![1])])
    } else if k == 1 {
        witness_lemma51(d)?
    } else {
        witness_lemma52(d, k)?
    };
    let dist = min_distance_sq_fast(&lattice_points_to_vectors(&vp), &lattice_points_to_vectors(&vq))?;
    let key = canonicalize(&vp, &vq, k);
    Ok((dist, key.as_candidate()))
}

struct Best {
    dist: Rational,
    key: CanonicalKey,
    cand: SimplexPairCandidate,
}

fn consider_best(best: &mut Option<Best>, dist: Rational, key: CanonicalKey) {
    let replace = match best.as_ref() {
        None => true,
        Some(b) => (&dist, &key) < (&b.dist, &b.key),
    };
    if replace {
        *best = Some(Best {
            dist,
            cand: key.as_candidate(),
            key,
        });
    }
}

/// Compute `eps(d,k)^2` exactly, with a verified certificate and a
/// deterministic canonical witness.
pub fn epsilon(d: u32, k: i64, options: &EpsilonOptions) -> Result<EpsilonResult> {
    check_search_scope(d, k)?;
    let start = Instant::now();

    // A verified COMPLETE cache record short-circuits the search.
    if let Some(path) = &options.cache_path {
        let records = cache::read_cache(path)?;
        if let Some(rec) = cache::lookup_complete(&records, d, k) {
            return verify_cached(rec, d, k, start);
        }
    }

    let (seed_dist, seed_cand) = seed_candidate(d, k)?;
    let seed_key = canonicalize(&seed_cand.sp, &seed_cand.sq, k);
    let mut best: Option<Best> = None;
    consider_best(&mut best, seed_dist.clone(), seed_key);

    let mut incumbent0 = seed_dist;
    if let Some(extra) = &options.initial_incumbent {
        if extra < &incumbent0 {
            incumbent0 = extra.clone();
        }
    }

    let ctx = Ctx::new(d as usize, k, options.symmetry);
    let reps = first_side_reps(&ctx, d, options.symmetry);

    // Work units: one per (first side, first complement position), so the
    // second-side combination space is shared evenly across workers.
    let mut units: Vec<(usize, usize)> = Vec::new();
    for (pos, sp) in reps.iter().enumerate() {
        if sp.complement.len() < sp.m_q {
            continue;
        }
        for first in 0..=(sp.complement.len() - sp.m_q) {
            units.push((pos, first));
        }
    }

    let incumbent = Mutex::new(incumbent0);
    let epoch = AtomicU64::new(1);
    let cursor = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let jobs = options.jobs.max(1);

    struct WorkerOut {
        best: Option<Best>,
        evaluated: u64,
        pruned: u64,
        raw: u64,
    }

    let run_worker = || -> Result<WorkerOut> {
        let mut out = WorkerOut {
            best: None,
            evaluated: 0,
            pruned: 0,
            raw: 0,
        };
        let mut prune_state = PruneState {
            epoch: 0,
            num: Int::zero(),
            den: Int::zero(),
            box_min: 0,
        };
        let mut since_check = 0u32;
        'units: loop {
            if stop.load(Ordering::Relaxed) {
                break;
            }
            let u = cursor.fetch_add(1, Ordering::Relaxed);
            if u >= units.len() {
                break;
            }
            let (sp_pos, first) = units[u];
            let sp = &reps[sp_pos];
            let comp = &sp.complement;
            let tail = &comp[first + 1..];
            let m_rest = sp.m_q - 1;
            if tail.len() < m_rest {
                continue;
            }
            let mut combo: Vec<usize> = (0..m_rest).collect();
            let mut sq: Vec<u32> = Vec::with_capacity(sp.m_q);
            loop {
                since_check += 1;
                if since_check >= 512 {
                    since_check = 0;
                    if stop.load(Ordering::Relaxed) {
                        break 'units;
                    }
                    if let Some(budget) = options.time_budget {
                        if start.elapsed() > budget {
                            stop.store(true, Ordering::Relaxed);
                            break 'units;
                        }
                    }
                }
                sq.clear();
                sq.push(comp[first]);
                sq.extend(combo.iter().map(|&p| tail[p]));
                out.raw += 1;

                let mut keep = true;
                if options.prune {
                    let cur_epoch = epoch.load(Ordering::Acquire);
                    if prune_state.epoch != cur_epoch {
                        let inc = incumbent.lock().expect("incumbent lock").clone();
                        prune_state.refresh(&inc, cur_epoch);
                    }
                    if prune_state.prunes(&ctx, sp, &sq) {
                        out.pruned += 1;
                        keep = false;
                    }
                }
                if keep && candidate_passes(&ctx, sp, &sq, options.symmetry) {
                    let dist = min_distance_sq_fast(&ctx.to_vectors(&sp.idx), &ctx.to_vectors(&sq))?;
                    out.evaluated += 1;
                    if dist.is_zero() {
                        return Err(Error::Verification(
                            "candidate with disjoint affine hulls measured at distance zero".into(),
                        ));
                    }
                    let worth = match out.best.as_ref() {
                        None => true,
                        Some(b) => dist <= b.dist,
                    };
                    if worth {
                        let key = if options.symmetry {
                            CanonicalKey {
                                first: ctx.to_points(&sp.idx),
                                second: ctx.to_points(&sq),
                            }
                        } else {
                            canonicalize(&ctx.to_points(&sp.idx), &ctx.to_points(&sq), k)
                        };
                        consider_best(&mut out.best, dist.clone(), key);
                    }
                    {
                        let mut inc = incumbent.lock().expect("incumbent lock");
                        if dist < *inc {
                            *inc = dist;
                            epoch.fetch_add(1, Ordering::Release);
                        }
                    }
                }
                if !advance_combo(&mut combo, tail.len()) {
                    break;
                }
            }
        }
        Ok(out)
    };

    let worker_outs: Vec<Result<WorkerOut>> = if jobs == 1 {
        vec![run_worker()]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs).map(|_| scope.spawn(run_worker)).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };

    let mut stats = SearchStats {
        from_cache: false,
        ..SearchStats::default()
    };
    for out in worker_outs {
        let out = out?;
        stats.orbits_visited += out.evaluated;
        stats.candidates_pruned += out.pruned;
        stats.candidates_enumerated += out.raw;
        if let Some(b) = out.best {
            consider_best(&mut best, b.dist, b.key);
        }
    }
    stats.wall = start.elapsed();

    let best = best.expect("seed always present");
    let status = if stop.load(Ordering::Relaxed) {
        SearchStatus::Incomplete
    } else {
        SearchStatus::Complete
    };

    // Recompute and verify the witness certificate through the public path.
    let vp = lattice_points_to_vectors(&best.cand.sp);
    let vq = lattice_points_to_vectors(&best.cand.sq);
    let (check_dist, certificate) = min_distance_sq(&vp, &vq)?;
    if check_dist != best.dist {
        return Err(Error::Verification("witness distance re-evaluation mismatch".into()));
    }
    verify_certificate(&certificate, &vp, &vq)
        .map_err(|v| Error::Verification(format!("witness certificate rejected: {v}")))?;
    let lower = lower_bound_lattice_sq(d, k)?;
    if best.dist < lower.strong_sq {
        return Err(Error::Verification("result breaches the lattice lower bound".into()));
    }
    if status == SearchStatus::Complete && d >= 2 {
        let upper = upper_bound_special_sq(d, k)?;
        if best.dist > upper {
            return Err(Error::Verification("result exceeds the closed-form upper bound".into()));
        }
    }

    let result = EpsilonResult {
        d,
        k,
        eps_sq: best.dist,
        witness: best.cand,
        certificate,
        status,
        stats,
    };
    if let Some(path) = &options.cache_path {
        cache::append_record(
            path,
            &cache::CacheRecord {
                d,
                k,
                status,
                eps_sq: result.eps_sq.clone(),
                witness_p: result.witness.sp.clone(),
                witness_q: result.witness.sq.clone(),
            },
        )?;
    }
    Ok(result)
}

fn verify_cached(rec: &cache::CacheRecord, d: u32, k: i64, start: Instant) -> Result<EpsilonResult> {
    let vp = lattice_points_to_vectors(&rec.witness_p);
    let vq = lattice_points_to_vectors(&rec.witness_q);
    let (dist, certificate) = min_distance_sq(&vp, &vq)?;
    if dist != rec.eps_sq {
        return Err(Error::Verification(format!(
            "cache record for ({d},{k}) fails verification: witness distance {} != recorded {}",
            dist, rec.eps_sq
        )));
    }
    verify_certificate(&certificate, &vp, &vq)
        .map_err(|v| Error::Verification(format!("cached witness certificate rejected: {v}")))?;
    let lower = lower_bound_lattice_sq(d, k)?;
    if rec.eps_sq < lower.strong_sq {
        return Err(Error::Verification("cached value breaches the lattice lower bound".into()));
    }
    Ok(EpsilonResult {
        d,
        k,
        eps_sq: rec.eps_sq.clone(),
        witness: SimplexPairCandidate {
            sp: rec.witness_p.clone(),
            sq: rec.witness_q.clone(),
        },
        certificate,
        status: SearchStatus::Complete,
        stats: SearchStats {
            wall: start.elapsed(),
            from_cache: true,
            ..SearchStats::default()
        },
    })
}

/// Strict-decrease report for `eps(d,k)^2` along `d` at fixed `k`.
#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub k: i64,
    /// `(d, eps_sq)` sorted by `d`.
    pub sequence: Vec<(u32, Rational)>,
    /// Adjacent pairs `(d_small, d_large)` violating strict decrease.
    pub violations: Vec<(u32, u32)>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that `eps^2` strictly decreases with `d` across complete results
/// sharing one `k`.
pub fn check_monotonicity(results: &[EpsilonResult]) -> Result<MonotonicityReport> {
    if results.len() < 2 {
        return Err(Error::Precondition("monotonicity check needs at least 2 results".into()));
    }
    let k = results[0].k;
    if results.iter().any(|r| r.k != k) {
        return Err(Error::Precondition("monotonicity check needs a shared k".into()));
    }
    if results.iter().any(|r| r.status != SearchStatus::Complete) {
        return Err(Error::Precondition("monotonicity check needs complete results".into()));
    }
    let mut sequence: Vec<(u32, Rational)> =
        results.iter().map(|r| (r.d, r.eps_sq.clone())).collect();
    sequence.sort_by_key(|(d, _)| *d);
    let mut violations = Vec::new();
    for w in sequence.windows(2) {
        if w[1].1 >= w[0].1 {
            violations.push((w[0].0, w[1].0));
        }
    }
    Ok(MonotonicityReport {
        k,
        sequence,
        violations,
    })
}

/// Outcome of comparing a pair's distance against `eps(dim(P u Q), k)`.
#[derive(Debug, Clone)]
pub enum FixedDimCheck {
    Satisfied {
        union_dim: u32,
        dist_sq: Rational,
        eps_sq: Rational,
    },
    Violated {
        union_dim: u32,
        dist_sq: Rational,
        eps_sq: Rational,
    },
    /// No epsilon value available for the union dimension.
    Unchecked { union_dim: u32, dist_sq: Rational },
}

/// Compare the exact distance of a disjoint lattice pair against the
/// epsilon value of the dimension spanned by both polytopes together,
/// supplied by `eps_lookup` (typically a cache).
pub fn check_fixed_dim_bound(
    vp: &[LatticePoint],
    vq: &[LatticePoint],
    eps_lookup: &dyn Fn(u32) -> Option<Rational>,
) -> Result<FixedDimCheck> {
    let all: Vec<LatticePoint> = vp.iter().chain(vq.iter()).cloned().collect();
    let union_dim = crate::geometry::affine_rank_lattice(&all) as u32;
    let dist_sq = min_distance_sq_fast(&lattice_points_to_vectors(vp), &lattice_points_to_vectors(vq))?;
    match eps_lookup(union_dim) {
        None => Ok(FixedDimCheck::Unchecked { union_dim, dist_sq }),
        Some(eps_sq) => {
            if dist_sq >= eps_sq {
                Ok(FixedDimCheck::Satisfied {
                    union_dim,
                    dist_sq,
                    eps_sq,
                })
            } else {
                Ok(FixedDimCheck::Violated {
                    union_dim,
                    dist_sq,
                    eps_sq,
                })
            }
        }
    }
}

/// Exhaustive sweep: the smallest positive squared distance over all
/// disjoint segment pairs with vertices in `{0,1}^d`.
pub fn min_01_segment_pair_distance_sq(d: u32) -> Result<Rational> {
    if d < 2 {
        return Err(Error::Precondition("segment sweep needs d >= 2".into()));
    }
    if d > 5 {
        return Err(Error::ScopeExceeded("segment sweep supports d <= 5".into()));
    }
    let points = box_points(d as usize, 1);
    let vectors = lattice_points_to_vectors(&points);
    let n = points.len();
    let mut segments = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            segments.push((i, j));
        }
    }
    let mut best: Option<Rational> = None;
    for (a, seg_a) in segments.iter().enumerate() {
        let va = [vectors[seg_a.0].clone(), vectors[seg_a.1].clone()];
        for seg_b in segments.iter().skip(a + 1) {
            let vb = [vectors[seg_b.0].clone(), vectors[seg_b.1].clone()];
            let dist = min_distance_sq_fast(&va, &vb)?;
            if dist.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|b| &dist < b) {
                best = Some(dist);
            }
        }
    }
    best.ok_or_else(|| Error::Degenerate("no disjoint segment pairs found".into()))
}
