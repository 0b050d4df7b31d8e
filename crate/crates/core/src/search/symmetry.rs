//! The symmetry group of the box `[0,k]^d`: coordinate permutations
//! composed with coordinate reflections `x -> k - x`, of order `2^d d!`.

use itertools::Itertools;

use crate::geometry::LatticePoint;

/// One box symmetry: coordinate `i` is reflected when `flips[i]` is set,
/// then sent to position `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub flips: Vec<bool>,
}

impl SignedPermutation {
    pub fn identity(d: usize) -> Self {
        SignedPermutation {
            perm: (0..d).collect(),
            flips: vec![false; d],
        }
    }

    pub fn apply_point(&self, p: &LatticePoint, k: i64) -> LatticePoint {
        let mut out = vec![0i64; p.dim()];
        for (i, &c) in p.coords().iter().enumerate() {
            out[self.perm[i]] = if self.flips[i] { k - c } else { c };
        }
        LatticePoint::new(out)
    }

    /// Image of a point set, sorted lexicographically.
    pub fn apply_set(&self, pts: &[LatticePoint], k: i64) -> Vec<LatticePoint> {
        let mut out: Vec<LatticePoint> = pts.iter().map(|p| self.apply_point(p, k)).collect();
        out.sort();
        out
    }
}

/// Every element of the hyperoctahedral group in a fixed deterministic
/// order: permutations lexicographically, flip masks counting up.
pub fn hyperoctahedral_group(d: usize) -> Vec<SignedPermutation> {
    assert!(d <= 8, "group of order 2^d d! is enumerable only for small d");
    let mut out = Vec::new();
    for perm in (0..d).permutations(d) {
        for mask in 0..(1u32 << d) {
            out.push(SignedPermutation {
                perm: perm.clone(),
                flips: (0..d).map(|i| mask & (1 << i) != 0).collect(),
            });
        }
    }
    out
}
