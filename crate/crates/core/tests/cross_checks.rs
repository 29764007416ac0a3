//! Decision procedures checked against independent slower methods.

use epicheck::demazure::restricted_system;
use epicheck::essential::{exists_essential_rank7, Existence};
use epicheck::exactla::{build_data_matrices, cross, dot, kernel_basis, rank, rref, Correspondence, RatMatrix};
use epicheck::fundamental::{collinearity_partition, exists_fundamental, exists_fundamental_with, FundamentalOptions};
use epicheck::groebner::{
    count_real_rank5, projective_empty, sturm_count, Bound, Ideal, MonomialOrder, RealCountStatus,
};
use epicheck::mat3;
use epicheck::mpoly::MPoly;
use epicheck::oracle::{generate_degenerate, generate_scene, project, DegenerateKind};
use epicheck::rational::{frac, Rational};
use epicheck::univariate::UniPoly;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_corrs(rng: &mut ChaCha8Rng, m: usize) -> Vec<Correspondence> {
    (0..m)
        .map(|_| {
            let mut p = || frac(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            Correspondence::new([p(), p()], [p(), p()])
        })
        .collect()
}

fn collinear(points: &[[Rational; 3]]) -> bool {
    let Some(a) = points.first() else { return true };
    let Some(b) = points.iter().find(|p| cross(a, *p).iter().any(|c| !c.is_zero())) else {
        return true;
    };
    let n = cross(a, b);
    points.iter().all(|p| dot(&n, p).is_zero())
}

/// Scans every subset `τ`.
fn brute_force_split(corrs: &[Correspondence]) -> bool {
    let m = corrs.len();
    (0u32..1 << m).any(|mask| {
        let (xs, ys): (Vec<_>, Vec<_>) = (0..m).partition(|&i| mask >> i & 1 == 1);
        collinear(&xs.iter().map(|&i| corrs[i].x_h()).collect::<Vec<_>>())
            && collinear(&ys.iter().map(|&i| corrs[i].y_h()).collect::<Vec<_>>())
    })
}

#[test]
fn collinearity_partition_matches_subset_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..60u64 {
        let m = rng.gen_range(5..=10);
        let corrs = if case % 2 == 0 {
            let tau: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
            generate_degenerate(&DegenerateKind::CollinearSplit { tau }, m, case).unwrap()
        } else {
            random_corrs(&mut rng, m)
        };
        let d = build_data_matrices(&corrs);
        let found = collinearity_partition(&d.x, &d.y);
        assert_eq!(found.is_some(), brute_force_split(&corrs), "case {case}");
        if let Some(w) = found {
            let mat = w.matrix();
            assert_eq!(rank(&mat), 1);
            assert!(d.z.mul_vec(mat.data()).unwrap().iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn rank7_complex_verdict_matches_projective_emptiness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = [0usize; 2];
    for case in 0..40u64 {
        let corrs = if case % 2 == 0 {
            random_corrs(&mut rng, 7)
        } else {
            project(&generate_scene(7, true, case).unwrap()).unwrap()
        };
        let d = build_data_matrices(&corrs);
        if rank(&d.z) != 7 {
            continue;
        }
        let verdict = exists_essential_rank7(&d.z).unwrap();
        let gens = restricted_system(&kernel_basis(&d.z));
        let empty = projective_empty(&Ideal::new(gens, MonomialOrder::DegRevLex)).unwrap();
        assert_eq!(verdict.complex_exists == Existence::Yes, !empty, "case {case}");
        seen[usize::from(empty)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "both outcomes exercised: {seen:?}");
}

/// Hidden-variable elimination on the chart `w_3 = 1` with `(x, y, z)` the
/// remaining coordinates. After Gauss–Jordan elimination of the cubics in
/// the monomial order below, the differences `e − z·f`, `g − z·h`, `i − z·j`
/// of consecutive rows are linear in `x, y, 1` with coefficients in `ℚ[z]`;
/// the determinant of that 3×3 matrix vanishes at the `z` of each solution.
/// Returns (distinct real roots, distinct roots) of that determinant.
fn hidden_variable_count(basis: &[Vec<Rational>]) -> (usize, usize) {
    const ORDER: [[u32; 3]; 20] = [
        [3, 0, 0],
        [0, 3, 0],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
        [2, 0, 0],
        [0, 2, 1],
        [0, 2, 0],
        [1, 1, 1],
        [1, 1, 0],
        [1, 0, 2],
        [1, 0, 1],
        [1, 0, 0],
        [0, 1, 2],
        [0, 1, 1],
        [0, 1, 0],
        [0, 0, 3],
        [0, 0, 2],
        [0, 0, 1],
        [0, 0, 0],
    ];
    let images = [MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2), MPoly::one(3)];
    let rows: Vec<Vec<Rational>> = restricted_system(basis)
        .iter()
        .map(|p| {
            let q = p.substitute(&images);
            ORDER.iter().map(|e| q.coeff(e)).collect()
        })
        .collect();
    let (red, pivots) = rref(&RatMatrix::from_rows(rows).unwrap());
    assert_eq!(pivots, (0..10).collect::<Vec<_>>(), "generic elimination");
    // Coefficients of x, y and 1 in row r, as polynomials in z.
    let part = |r: usize, cols: &[usize]| UniPoly::new(cols.iter().rev().map(|&c| red.get(r, c).clone()).collect());
    let linear = |r: usize| [part(r, &[10, 11, 12]), part(r, &[13, 14, 15]), part(r, &[16, 17, 18, 19])];
    let z = UniPoly::x();
    let combine = |top: usize| {
        let (a, b) = (linear(top), linear(top + 1));
        [0, 1, 2].map(|k| &a[k] - &(&z * &b[k]))
    };
    let m = [combine(4), combine(6), combine(8)];
    let det = mat3::det(&m);
    let sq = det.squarefree();
    let real = sturm_count(&sq, &Bound::NegInfinity, &Bound::PosInfinity).unwrap();
    (real, sq.degree().unwrap())
}

#[test]
fn rank5_count_matches_hidden_variable_elimination() {
    let pairs = [((3, 0), (2, 0)), ((9, 1), (5, 4)), ((1, 2), (9, 6)), ((8, 8), (2, 5)), ((4, 8), (1, 4))];
    let mut instances = vec![pairs
        .iter()
        .map(|&((x1, x2), (y1, y2))| Correspondence::from_i64([x1, x2], [y1, y2]))
        .collect::<Vec<_>>()];
    for seed in 0..4 {
        instances.push(project(&generate_scene(5, true, seed).unwrap()).unwrap());
    }
    for (k, corrs) in instances.iter().enumerate() {
        let d = build_data_matrices(corrs);
        assert_eq!(rank(&d.z), 5);
        let basis = kernel_basis(&d.z);
        let count = count_real_rank5(&basis);
        assert_eq!(count.status, RealCountStatus::Exact);
        assert_eq!((count.count, count.complex_count), hidden_variable_count(&basis), "instance {k}");
        assert_eq!((count.complex_count - count.count) % 2, 0);
    }
}

#[test]
fn fundamental_witnesses_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..80 {
        let m = rng.gen_range(1..=9);
        let d = build_data_matrices(&random_corrs(&mut rng, m));
        let v = exists_fundamental(&d.z).unwrap();
        assert_eq!(v.rank_z, rank(&d.z));
        if v.exists {
            let w = v.witness.expect("witness for a positive verdict");
            assert!(w.satisfies_epipolar(&d.z));
            assert!(w.has_rank_two());
        } else {
            assert!(v.witness.is_none());
        }
    }
}

#[test]
fn low_rank_instances_take_the_general_path() {
    for target in 1..=4 {
        for seed in 0..5u64 {
            let corrs =
                generate_degenerate(&DegenerateKind::RankDeficientTarget { rank: target }, 3 + target, seed).unwrap();
            let d = build_data_matrices(&corrs);
            assert_eq!(rank(&d.z), target);
            let v = exists_fundamental_with(&d.z, FundamentalOptions { early_exit_rank4: false }).unwrap();
            assert!(v.exists);
            let w = v.witness.unwrap();
            assert!(w.satisfies_epipolar(&d.z) && w.has_rank_two());
        }
    }
}

#[test]
fn early_exit_agrees_with_general_path() {
    let corrs = generate_degenerate(&DegenerateKind::RankDeficientTarget { rank: 4 }, 6, 9).unwrap();
    let d = build_data_matrices(&corrs);
    let fast = exists_fundamental_with(&d.z, FundamentalOptions { early_exit_rank4: true }).unwrap();
    let slow = exists_fundamental(&d.z).unwrap();
    assert_eq!(fast.exists, slow.exists);
    assert_eq!(fast.reason.as_str(), "RankLE4");
}

#[test]
fn homography_related_pairs_keep_rank_one_kernel_points_out() {
    // Pairs y ∼ Hx with H invertible: the kernel contains every [e]×H, all
    // of rank two, so a fundamental matrix exists.
    let corrs = generate_degenerate(&DegenerateKind::HomographyRelated { related: 8 }, 8, 4).unwrap();
    let d = build_data_matrices(&corrs);
    assert!(rank(&d.z) <= 6);
    let v = exists_fundamental(&d.z).unwrap();
    assert!(v.exists);
    assert!(v.witness.unwrap().has_rank_two());
}
