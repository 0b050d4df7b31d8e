//! Acceptance suite: one test per release criterion, every assertion an
//! exact rational comparison. Each test prints a PASS line with its
//! measured wall time.
//!
//! The two long-flagged epsilon computations are opt-in
//! (`cargo test --test acceptance -- --ignored`); the default run verifies
//! their cataloged witnesses instead.

mod common;

use std::time::Instant;

use common::{grid_oracle_check, random_lattice_set, to_vectors};
use latgap::bounds::{lower_bound_lattice_sq, upper_bound_special_sq};
use latgap::construction::{build_construction, table1_entries, witness_catalog, ConstructionSpec};
use latgap::distance::{
    cramer_distance_sq, min_distance_sq, min_distance_sq_enumerated, verify_certificate,
    CramerSystem,
};
use latgap::geometry::{affine_rank_lattice, LatticePoint};
use latgap::linalg::{Matrix, Vector};
use latgap::rational::{rat, ratio, Rational};
use latgap::search::symmetry::hyperoctahedral_group;
use latgap::search::{check_monotonicity, epsilon, min_01_segment_pair_distance_sq, EpsilonOptions};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn eps_default(d: u32, k: i64) -> latgap::search::EpsilonResult {
    epsilon(d, k, &EpsilonOptions::default()).unwrap()
}

fn table_value(d: u32, k: i64) -> Rational {
    table1_entries()
        .into_iter()
        .find(|(dd, kk, _)| *dd == d && *kk == k)
        .map(|(_, _, v)| v)
        .unwrap()
}

#[test]
fn criterion_1_table_reproduction() {
    let start = Instant::now();
    for (d, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1)] {
        let r = eps_default(d, k);
        assert_eq!(r.eps_sq, table_value(d, k), "eps({d},{k})^2");
    }
    println!(
        "[acceptance] criterion 1 PASS: eps^2 for d=2,k=1..6 and (3,1) match the reference table exactly ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_2_extended_entries() {
    let start = Instant::now();
    let r = eps_default(3, 2);
    assert_eq!(r.eps_sq, ratio(1, 50));
    let r = eps_default(4, 1);
    assert_eq!(r.eps_sq, ratio(1, 18));
    // The long-flagged values are certified through their cataloged
    // witnesses by default; the full searches are the ignored tests below.
    for (d, k) in [(3i64, 3i64), (5, 1)] {
        let cat = witness_catalog(d as u32, k).unwrap();
        for w in &cat {
            let (dist, _) = min_distance_sq(&to_vectors(&w.vp), &to_vectors(&w.vq)).unwrap();
            assert_eq!(dist, w.claimed_dist_sq, "catalog witness ({d},{k})");
            assert_eq!(dist, table_value(d as u32, k));
        }
    }
    println!(
        "[acceptance] criterion 2 PASS: eps(3,2)^2 = 1/50 and eps(4,1)^2 = 1/18 computed; (3,3) and (5,1) witnesses verified ({:.2?})",
        start.elapsed()
    );
}

#[test]
#[ignore = "long-flagged full search; run with --ignored"]
fn criterion_2_epsilon_3_3_full_search() {
    let start = Instant::now();
    let r = eps_default(3, 3);
    assert_eq!(r.eps_sq, ratio(1, 299));
    println!(
        "[acceptance] criterion 2 (opt-in) PASS: eps(3,3)^2 = 1/299 by full search ({:.2?})",
        start.elapsed()
    );
}

#[test]
#[ignore = "long-flagged full search; run with --ignored"]
fn criterion_2_epsilon_5_1_full_search() {
    let start = Instant::now();
    let r = eps_default(5, 1);
    assert_eq!(r.eps_sq, ratio(1, 58));
    println!(
        "[acceptance] criterion 2 (opt-in) PASS: eps(5,1)^2 = 1/58 by full search ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_3_witness_catalog() {
    let start = Instant::now();
    let mut checked = 0;
    for (d, k, expected) in table1_entries() {
        for w in witness_catalog(d, k).unwrap() {
            let vp = to_vectors(&w.vp);
            let vq = to_vectors(&w.vq);
            let (dist, cert) = min_distance_sq(&vp, &vq).unwrap();
            assert_eq!(dist, expected, "witness ({d},{k})");
            assert_eq!(dist, w.claimed_dist_sq);
            verify_certificate(&cert, &vp, &vq).unwrap();
            checked += 1;
        }
    }
    assert_eq!(checked, 11);
    println!(
        "[acceptance] criterion 3 PASS: all 11 cataloged witness pairs achieve their table values exactly ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_4_monotonicity() {
    let start = Instant::now();
    let k1: Vec<_> = [(2, 1), (3, 1), (4, 1)].iter().map(|&(d, k)| eps_default(d, k)).collect();
    let rep = check_monotonicity(&k1).unwrap();
    assert!(rep.passed(), "k=1 violations: {:?}", rep.violations);
    assert_eq!(
        rep.sequence.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>(),
        vec![ratio(1, 2), ratio(1, 6), ratio(1, 18)]
    );

    let k2: Vec<_> = [(2, 2), (3, 2)].iter().map(|&(d, k)| eps_default(d, k)).collect();
    let rep = check_monotonicity(&k2).unwrap();
    assert!(rep.passed(), "k=2 violations: {:?}", rep.violations);
    assert_eq!(
        rep.sequence.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>(),
        vec![ratio(1, 5), ratio(1, 50)]
    );
    println!(
        "[acceptance] criterion 4 PASS: eps^2 strictly decreases along d for k=1 (1/2 > 1/6 > 1/18) and k=2 (1/5 > 1/50) ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_5_bound_sandwich() {
    let start = Instant::now();
    for (d, k, eps_sq) in table1_entries() {
        let lower = lower_bound_lattice_sq(d, k).unwrap();
        let upper = upper_bound_special_sq(d, k).unwrap();
        assert!(lower.strong_sq <= eps_sq, "lower bound at ({d},{k})");
        assert!(eps_sq <= upper, "upper bound at ({d},{k})");
    }
    println!(
        "[acceptance] criterion 5 PASS: every known eps(d,k)^2 sits between the closed-form lower and upper bounds ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_6_construction_grid() {
    let start = Instant::now();
    for sigma in [1, 2, 3] {
        for delta in [4, 5] {
            for k in [1, 2] {
                let spec = ConstructionSpec::new(sigma, delta, k).unwrap();
                // `build_construction` re-derives and checks every identity:
                // coefficient nonnegativity and sums, generator hyperplane
                // membership, barycenter decompositions, and the coordinate
                // gaps of the near pair.
                let out = build_construction(&spec).unwrap();
                assert!(out.convexity_guaranteed);
                assert!(out.coeffs_p.iter().all(|c| !c.is_negative()));
                assert!(out.coeffs_q.iter().all(|c| !c.is_negative()));
                assert!(out.coeffs_p.iter().sum::<Rational>().is_one());
                assert!(out.coeffs_q.iter().sum::<Rational>().is_one());
                let bound = latgap::bounds::upper_bound_construction_sq(sigma, delta, k).unwrap();
                let dist = out.q_lift.sub(&out.p_lift).unwrap().norm_sq();
                assert!(dist <= bound.dist_sq_bound, "(sigma,delta,k)=({sigma},{delta},{k})");
                assert!(dist > rat(0));
            }
        }
    }
    println!(
        "[acceptance] criterion 6 PASS: the block construction verifies on the full (sigma, delta, k) grid ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_7_segment_sweep() {
    let start = Instant::now();
    assert_eq!(min_01_segment_pair_distance_sq(3).unwrap(), ratio(1, 6));
    let t4 = Instant::now();
    assert_eq!(min_01_segment_pair_distance_sq(4).unwrap(), ratio(1, 6));
    println!(
        "[acceptance] criterion 7 PASS: disjoint 0/1-segment sweeps in d=3,4 both reach exactly 1/6 (d=4 in {:.2?}, total {:.2?})",
        t4.elapsed(),
        start.elapsed()
    );
}

#[test]
fn criterion_8_size_inequalities() {
    use latgap::bounds::{size_matrix, size_rational, size_vector};
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let rand_rat = |rng: &mut StdRng| -> Rational {
        let num = rng.gen_range(-999i64..=999);
        let den = rng.gen_range(1i64..=999);
        ratio(num, den)
    };

    // Sum and product size bounds on random rational vectors.
    for _ in 0..1000 {
        let n = rng.gen_range(2..=6);
        let coords: Vec<Rational> = (0..n).map(|_| rand_rat(&mut rng)).collect();
        let total: u64 = coords.iter().map(size_rational).sum();
        let sum: Rational = coords.iter().sum();
        assert!(size_rational(&sum) <= 2 * total);
        let prod: Rational = coords.iter().fold(rat(1), |acc, c| acc * c);
        assert!(size_rational(&prod) <= total);
    }

    // Scalar product size bound.
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let a = Vector::new((0..n).map(|_| rand_rat(&mut rng)).collect());
        let b = Vector::new((0..n).map(|_| rand_rat(&mut rng)).collect());
        let d = a.dot(&b).unwrap();
        assert!(size_rational(&d) <= 2 * size_vector(&a) + 2 * size_vector(&b));
    }

    // Smallest/largest positive rational of a given size.
    for _ in 0..1000 {
        let x = {
            let num = rng.gen_range(1i64..=9999);
            let den = rng.gen_range(1i64..=9999);
            ratio(num, den)
        };
        let s = size_rational(&x);
        let two_pow = latgap::rational::pow(&rat(2), s as u32);
        assert!(rat(4) / &two_pow <= x);
        assert!(x <= two_pow / rat(4));
    }

    // Determinant size bound on random rational matrices up to 5x5.
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let m = Matrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| rand_rat(&mut rng)).collect())
                .collect(),
        )
        .unwrap();
        assert!(size_rational(&m.det().unwrap()) <= 2 * size_matrix(&m));
    }
    println!(
        "[acceptance] criterion 8a PASS: size bounds for sums, products, dot products and determinants hold on 4x1000 random cases ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_8_origin_distance_bound() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=5);
        // Lattice points in {0..3}^d, none equal to the origin.
        let mut pts = Vec::new();
        while pts.len() < count {
            let p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=3)).collect();
            if p.iter().any(|&c| c != 0) {
                pts.push(LatticePoint::new(p));
            }
        }
        let origin = vec![Vector::zero(d)];
        let (dist, cert) = min_distance_sq(&origin, &to_vectors(&pts)).unwrap();
        verify_certificate(&cert, &origin, &to_vectors(&pts)).unwrap();
        assert!(dist >= Rational::new(1.into(), (d as i64).into()), "d={d} dist={dist}");
    }
    println!(
        "[acceptance] criterion 8b PASS: 1000 random origin-avoiding lattice polytopes stay at squared distance >= 1/d from the origin ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_8_cramer_agreement_and_certificates() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut disjoint_cases = 0;
    for _ in 0..1000 {
        let d = rng.gen_range(1..=3);
        let k = 2;
        let np = rng.gen_range(1..=3);
        let nq = rng.gen_range(1..=3);
        let vp = to_vectors(&random_lattice_set(&mut rng, d, k, np));
        let vq = to_vectors(&random_lattice_set(&mut rng, d, k, nq));
        let (dist, cert) = min_distance_sq(&vp, &vq).unwrap();
        verify_certificate(&cert, &vp, &vq).unwrap();
        if !dist.is_zero() {
            let sys = CramerSystem::for_certificate(&cert, &vp, &vq).unwrap();
            assert_eq!(cramer_distance_sq(&sys).unwrap(), dist);
            disjoint_cases += 1;
        }
    }
    assert!(disjoint_cases > 300, "want plenty of disjoint cases, got {disjoint_cases}");
    println!(
        "[acceptance] criterion 8c PASS: certificates verify on 1000 random pairs and the closed-form evaluator agrees on all {disjoint_cases} disjoint ones ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_8_symmetry_invariance() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    for round in 0..1000 {
        let d = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=2);
        let group = hyperoctahedral_group(d);
        let g = &group[rng.gen_range(0..group.len())];
        let np = rng.gen_range(1..=3);
        let nq = rng.gen_range(1..=3);
        let sp = random_lattice_set(&mut rng, d, k, np);
        let sq = random_lattice_set(&mut rng, d, k, nq);
        let base = min_distance_sq(&to_vectors(&sp), &to_vectors(&sq)).unwrap().0;
        // Swapped arguments.
        let swapped = min_distance_sq(&to_vectors(&sq), &to_vectors(&sp)).unwrap().0;
        assert_eq!(base, swapped, "round {round}");
        // A common box symmetry (coordinate permutation composed with
        // reflections x -> k - x).
        let gp: Vec<LatticePoint> = sp.iter().map(|p| g.apply_point(p, k)).collect();
        let gq: Vec<LatticePoint> = sq.iter().map(|p| g.apply_point(p, k)).collect();
        let mapped = min_distance_sq(&to_vectors(&gp), &to_vectors(&gq)).unwrap().0;
        assert_eq!(base, mapped, "round {round}");
    }
    println!(
        "[acceptance] criterion 8d PASS: distances are invariant under argument swap and 1000 random box symmetries ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_9_search_oracle_equivalence() {
    let start = Instant::now();
    for (d, k) in [(2, 1), (2, 2), (3, 1)] {
        let reduced = eps_default(d, k);
        let brute = epsilon(
            d,
            k,
            &EpsilonOptions {
                symmetry: false,
                prune: false,
                ..EpsilonOptions::default()
            },
        )
        .unwrap();
        assert_eq!(reduced.eps_sq, brute.eps_sq, "({d},{k})");
        assert_eq!(reduced.witness_key(), brute.witness_key(), "({d},{k})");
        assert!(brute.stats.candidates_pruned == 0);
    }
    println!(
        "[acceptance] criterion 9 PASS: symmetry-reduced pruned search equals unreduced unpruned brute force on (2,1), (2,2), (3,1) ({:.2?})",
        start.elapsed()
    );
}

/// Supporting spot checks tying the acceptance values to independent
/// routes: the enumeration oracle and the grid oracle both agree on the
/// cataloged optima.
#[test]
fn catalog_witnesses_cross_checked_by_independent_oracles() {
    let start = Instant::now();
    for (d, k) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        for w in witness_catalog(d, k).unwrap() {
            let vp = to_vectors(&w.vp);
            let vq = to_vectors(&w.vq);
            let (wolfe, _) = min_distance_sq(&vp, &vq).unwrap();
            let (enumerated, _) = min_distance_sq_enumerated(&vp, &vq).unwrap();
            assert_eq!(wolfe, enumerated);
            grid_oracle_check(&vp, &vq, &wolfe, 4, 2);
        }
    }
    // Witnesses of complete searches satisfy the simplex-pair shape:
    // affinely independent sides with dimensions summing to d - 1 and
    // disjoint affine hulls (certified by a strictly positive distance
    // re-measurement).
    for (d, k) in [(2u32, 1i64), (2, 2), (3, 1), (3, 2), (4, 1)] {
        let r = eps_default(d, k);
        let (dp, dq) = (
            affine_rank_lattice(&r.witness.sp),
            affine_rank_lattice(&r.witness.sq),
        );
        assert_eq!(dp, r.witness.sp.len() - 1, "first side is a simplex");
        assert_eq!(dq, r.witness.sq.len() - 1, "second side is a simplex");
        assert_eq!(dp + dq, d as usize - 1, "dimensions sum to d-1");
        let (dist, _) = min_distance_sq(&to_vectors(&r.witness.sp), &to_vectors(&r.witness.sq)).unwrap();
        assert_eq!(dist, r.eps_sq);
        assert!(dist > rat(0));
    }
    println!(
        "[acceptance] cross-check PASS: catalog optima agree across both distance routes and the grid oracle ({:.2?})",
        start.elapsed()
    );
}
