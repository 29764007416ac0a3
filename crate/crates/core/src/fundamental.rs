//! Deciding whether a fundamental matrix exists for a set of correspondences,
//! with constructive witnesses and the collinear-split diagnostic for
//! rank-one kernel members.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::{cramer_vector, det, independent_rows, kernel_basis, minor2x2, rank, RatMatrix};
use crate::groebner::sturm::{certified_width, real_roots, RealRoot};
use crate::mat3;
use crate::mpoly::{as_cube_of_linear_form, minors_all_zero, pencil_det, restrict_to_hyperplane, LinearForm, Pencil};
use crate::rational::Rational;
use crate::univariate::UniPoly;
use crate::witness::{AlgebraicWitness, RealAlgebraic, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FundamentalError {
    #[error("data matrix must have 9 columns, got {0}")]
    BadColumns(usize),
    #[error("data matrix must have at least one row")]
    Empty,
    #[error("expected rank 8, got {0}")]
    NotRank8(usize),
}

/// Which branch of the decision settled the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    RankZ9,
    Rank8UniqueMatrix,
    KernelAllRankOne,
    DetNotCube,
    CubeCaseMinorsNonzero,
    CubeCaseMinorsAllZero,
    DetIdenticallyZeroWithRank2,
    RankLE4,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::RankZ9 => "RankZ9",
            Reason::Rank8UniqueMatrix => "Rank8UniqueMatrix",
            Reason::KernelAllRankOne => "KernelAllRankOne",
            Reason::DetNotCube => "DetNotCube",
            Reason::CubeCaseMinorsNonzero => "CubeCaseMinorsNonzero",
            Reason::CubeCaseMinorsAllZero => "CubeCaseMinorsAllZero",
            Reason::DetIdenticallyZeroWithRank2 => "DetIdenticallyZeroWithRank2",
            Reason::RankLE4 => "RankLE4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalVerdict {
    pub exists: bool,
    pub witness: Option<Witness>,
    pub reason: Reason,
    pub rank_z: usize,
    /// Linear form `b` when `det(M(u)) = c·(bᵀu)³`.
    pub cube_form: Option<LinearForm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FundamentalOptions {
    /// Answer `true` immediately when `rank(Z) ≤ 4`.
    pub early_exit_rank4: bool,
}

pub fn exists_fundamental(z: &RatMatrix) -> Result<FundamentalVerdict, FundamentalError> {
    exists_fundamental_with(z, FundamentalOptions::default())
}

pub fn exists_fundamental_with(
    z: &RatMatrix,
    opts: FundamentalOptions,
) -> Result<FundamentalVerdict, FundamentalError> {
    check_shape(z)?;
    let r = rank(z);
    if r == 9 {
        return Ok(FundamentalVerdict {
            exists: false,
            witness: None,
            reason: Reason::RankZ9,
            rank_z: 9,
            cube_form: None,
        });
    }
    if r == 8 {
        return rank8_check(z);
    }
    let pencil = Pencil::from_vectors(&kernel_basis(z));
    let mut verdict = decide_pencil(&pencil);
    verdict.rank_z = r;
    if opts.early_exit_rank4 && r <= 4 {
        verdict.reason = Reason::RankLE4;
        verdict.cube_form = None;
    }
    Ok(verdict)
}

fn check_shape(z: &RatMatrix) -> Result<(), FundamentalError> {
    if z.cols() != 9 {
        return Err(FundamentalError::BadColumns(z.cols()));
    }
    if z.rows() == 0 {
        return Err(FundamentalError::Empty);
    }
    Ok(())
}

/// Rank-8 data: the kernel is spanned by the Cramer vector of any eight
/// independent rows, so it holds a fundamental matrix iff that matrix has
/// rank exactly two.
pub fn rank8_check(z: &RatMatrix) -> Result<FundamentalVerdict, FundamentalError> {
    check_shape(z)?;
    let r = rank(z);
    if r != 8 {
        return Err(FundamentalError::NotRank8(r));
    }
    let rows = independent_rows(z);
    let a = RatMatrix::from_vec9(&cramer_vector(&z.select_rows(&rows)).expect("8x9 submatrix")).normalized();
    let singular = det(&a).expect("square").is_zero();
    let some_minor = (0..3).any(|i| (0..3).any(|j| !minor2x2(&a, i, j).is_zero()));
    let exists = singular && some_minor;
    Ok(FundamentalVerdict {
        exists,
        witness: exists.then_some(Witness::Exact(a)),
        reason: Reason::Rank8UniqueMatrix,
        rank_z: 8,
        cube_form: None,
    })
}

/// Decides whether the pencil contains a rank-two matrix and finds one.
pub fn decide_pencil(p: &Pencil) -> FundamentalVerdict {
    let d = pencil_det(p);
    let rank_z = 9 - p.t();
    if d.is_zero() {
        if minors_all_zero(p) {
            return FundamentalVerdict {
                exists: false,
                witness: None,
                reason: Reason::KernelAllRankOne,
                rank_z,
                cube_form: None,
            };
        }
        let w = grid_witness(p).expect("some minor is nonzero somewhere");
        return FundamentalVerdict {
            exists: true,
            witness: Some(Witness::Exact(w)),
            reason: Reason::DetIdenticallyZeroWithRank2,
            rank_z,
            cube_form: None,
        };
    }
    match as_cube_of_linear_form(&d).expect("det of a pencil is a cubic form") {
        Some((_, form)) => {
            let restricted = restrict_to_hyperplane(p, &form).expect("matching length");
            if minors_all_zero(&restricted) {
                FundamentalVerdict {
                    exists: false,
                    witness: None,
                    reason: Reason::CubeCaseMinorsAllZero,
                    rank_z,
                    cube_form: Some(form),
                }
            } else {
                let w = grid_witness(&restricted).expect("some restricted minor is nonzero");
                FundamentalVerdict {
                    exists: true,
                    witness: Some(Witness::Exact(w)),
                    reason: Reason::CubeCaseMinorsNonzero,
                    rank_z,
                    cube_form: Some(form),
                }
            }
        }
        None => FundamentalVerdict {
            exists: true,
            witness: Some(line_witness(p)),
            reason: Reason::DetNotCube,
            rank_z,
            cube_form: None,
        },
    }
}

/// Integer points of `ℤ^t \ {0}` by increasing max-norm, lexicographic
/// within a shell, keeping only those whose first nonzero coordinate is
/// positive (the pencil is homogeneous, so `u` and `−u` are equivalent).
pub fn grid_points(t: usize) -> impl Iterator<Item = Vec<i64>> {
    (1i64..).flat_map(move |r| {
        let side = (2 * r + 1) as u64;
        let total = side.checked_pow(t as u32).unwrap_or(u64::MAX);
        (0..total).filter_map(move |mut code| {
            let mut u = vec![0i64; t];
            for k in (0..t).rev() {
                u[k] = (code % side) as i64 - r;
                code /= side;
            }
            let on_shell = u.iter().any(|c| c.abs() == r);
            let positive = u.iter().find(|c| **c != 0).is_some_and(|c| *c > 0);
            (on_shell && positive).then_some(u)
        })
    })
}

fn to_rat(u: &[i64]) -> Vec<Rational> {
    u.iter().map(|&c| Rational::from_integer(c.into())).collect()
}

/// First grid point where `M(u)` has rank exactly two. Only meaningful when
/// `det(M(u)) ≡ 0` on the pencil.
fn grid_witness(p: &Pencil) -> Option<RatMatrix> {
    if p.t() == 0 {
        return None;
    }
    grid_points(p.t()).take(100_000).map(|u| p.eval(&to_rat(&u))).find(|m| rank(m) == 2)
}

/// Searches lines `M(a) + s·M(b)` through pairs of grid points for a simple
/// real root of the restricted determinant. Simple roots of `det` are rank-two
/// points, since `det` is singular at every matrix of rank at most one.
fn line_witness(p: &Pencil) -> Witness {
    let pts: Vec<Vec<i64>> = grid_points(p.t()).take(64).collect();
    for m in p.mats() {
        if rank(m) == 2 {
            return Witness::Exact(m.normalized());
        }
    }
    for (ia, a) in pts.iter().enumerate() {
        for b in pts.iter().skip(ia + 1) {
            if let Some(w) = witness_on_line(&p.eval(&to_rat(a)), &p.eval(&to_rat(b))) {
                return w;
            }
        }
    }
    // Any point at which det changes sign along some line works; with a
    // nonzero, non-cube determinant the search above always succeeds.
    unreachable!("no rank-two point found on the searched lines")
}

/// A rank-two matrix on the line `{A + sB} ∪ {B}`, if one shows up as a
/// simple root of the determinant in `s` (or as `B` itself).
pub fn witness_on_line(a: &RatMatrix, b: &RatMatrix) -> Option<Witness> {
    if rank(b) == 2 {
        return Some(Witness::Exact(b.normalized()));
    }
    let line: mat3::Mat3<UniPoly> =
        std::array::from_fn(|i| std::array::from_fn(|j| UniPoly::new(vec![a.get(i, j).clone(), b.get(i, j).clone()])));
    let g = mat3::det(&line);
    if g.is_zero() || g.degree() == Some(0) {
        return None;
    }
    let sq = g.squarefree();
    let repeated = g.gcd(&g.derivative()).squarefree();
    let simple = sq.div_rem(&repeated).0;
    if simple.degree().unwrap_or(0) == 0 {
        return None;
    }
    let roots = real_roots(&simple, &certified_width()).ok()?;
    let pick = roots.iter().find(|r| matches!(r, RealRoot::Rational(_))).or_else(|| roots.first())?;
    let root = RealAlgebraic::from_root(&simple, pick);
    let entries = line.iter().flatten().cloned().collect();
    let w = Witness::Algebraic(AlgebraicWitness::new(root, entries)).simplify();
    Some(match w {
        Witness::Exact(m) => Witness::Exact(m.normalized()),
        other => other,
    })
}

/// A split of the correspondences certifying a rank-one kernel member
/// `u vᵀ`: the first-image points indexed by `tau` lie on the line `v`, and
/// the remaining second-image points lie on the line `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollinearityWitness {
    pub tau: Vec<usize>,
    pub v: [Rational; 3],
    pub u: [Rational; 3],
}

impl CollinearityWitness {
    /// `u vᵀ`, which lies in `ker(Z)` and has rank one.
    pub fn matrix(&self) -> RatMatrix {
        let data = (0..9).map(|k| &self.u[k / 3] * &self.v[k % 3]).collect();
        RatMatrix::new(3, 3, data).expect("3x3")
    }
}

/// Finds a split `τ` with `{x_i}_{i∈τ}` collinear and `{y_i}_{i∉τ}`
/// collinear (points may coincide). Exhaustive over subsets for up to 12
/// correspondences; above that, only the maximal candidates are tried: all
/// `x_i` on the line through two distinct first-image points, or all
/// indices when the first-image points coincide.
pub fn collinearity_partition(x: &RatMatrix, y: &RatMatrix) -> Option<CollinearityWitness> {
    let m = x.rows();
    assert_eq!(m, y.rows());
    if m <= 12 {
        let mut masks: Vec<u32> = (0..(1u32 << m)).collect();
        masks.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
        masks.into_iter().find_map(|mask| {
            let tau: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            try_split(x, y, tau)
        })
    } else {
        let distinct = distinct_rows(x);
        if distinct.len() == 1 {
            return try_split(x, y, (0..m).collect());
        }
        for (a, &i) in distinct.iter().enumerate() {
            for &j in &distinct[a + 1..] {
                let tau: Vec<usize> = (0..m).filter(|&k| rank(&x.select_rows(&[i, j, k])) <= 2).collect();
                if let Some(w) = try_split(x, y, tau) {
                    return Some(w);
                }
            }
        }
        None
    }
}

fn distinct_rows(a: &RatMatrix) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for i in 0..a.rows() {
        if !out.iter().any(|&j| a.row(j) == a.row(i)) {
            out.push(i);
        }
    }
    out
}

fn try_split(x: &RatMatrix, y: &RatMatrix, tau: Vec<usize>) -> Option<CollinearityWitness> {
    let rest: Vec<usize> = (0..x.rows()).filter(|i| !tau.contains(i)).collect();
    let v = line_through(&x.select_rows(&tau))?;
    let u = line_through(&y.select_rows(&rest))?;
    Some(CollinearityWitness { tau, v, u })
}

/// A nonzero `v` with `A v = 0` for a matrix with three columns, or `None`
/// if the rows have full rank. No rows gives `e_1`.
fn line_through(a: &RatMatrix) -> Option<[Rational; 3]> {
    if a.rows() == 0 {
        return Some([Rational::one(), Rational::zero(), Rational::zero()]);
    }
    let k = kernel_basis(a);
    let v = k.first()?;
    Some([v[0].clone(), v[1].clone(), v[2].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{build_data_matrices, Correspondence};
    use crate::rational::int;

    #[test]
    fn grid_order() {
        let pts: Vec<Vec<i64>> = grid_points(2).take(6).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1], vec![0, 2], vec![1, -2]]);
        let one: Vec<Vec<i64>> = grid_points(1).take(3).collect();
        assert_eq!(one, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn single_correspondence_has_fundamental_matrix() {
        let d = build_data_matrices(&[Correspondence::from_i64([1, 2], [3, 4])]);
        let v = exists_fundamental(&d.z).unwrap();
        assert!(v.exists);
        let w = v.witness.unwrap();
        assert!(w.has_rank_two() && w.satisfies_epipolar(&d.z));
    }

    #[test]
    fn rank_two_member_is_returned() {
        let p = Pencil::new(vec![RatMatrix::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0])]);
        let v = decide_pencil(&p);
        assert!(v.exists);
        assert_eq!(v.witness.unwrap().exact().unwrap(), &p.mats()[0]);
    }

    #[test]
    fn irrational_line_root() {
        // det(A + sB) = s^2 - 2 on the first two diagonal entries.
        let a = RatMatrix::from_i64(3, 3, &[-2, 0, 0, 0, 1, 0, 0, 0, 0]);
        let b = RatMatrix::from_i64(3, 3, &[0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(witness_on_line(&a, &b).is_none());
        // det(A + sI) = s^3 - 2 for A = -companion(t^3 - 2).
        let a = RatMatrix::from_i64(3, 3, &[0, 0, -2, -1, 0, 0, 0, -1, 0]);
        let b = RatMatrix::identity(3);
        let w = witness_on_line(&a, &b).unwrap();
        assert!(!w.is_exact());
        assert!(w.has_rank_two());
    }

    #[test]
    fn wrong_rank_rejected() {
        let z = RatMatrix::zeros(2, 9);
        assert!(matches!(rank8_check(&z), Err(FundamentalError::NotRank8(0))));
        assert!(exists_fundamental(&RatMatrix::zeros(2, 8)).is_err());
    }

    #[test]
    fn all_equal_first_points_split_everything() {
        let corrs: Vec<Correspondence> =
            [[3, 1], [-2, 5], [7, 7], [0, 4]].iter().map(|y| Correspondence::from_i64([2, 2], *y)).collect();
        let d = build_data_matrices(&corrs);
        let w = collinearity_partition(&d.x, &d.y).unwrap();
        assert_eq!(w.tau, vec![0, 1, 2, 3]);
        let m = w.matrix();
        assert_eq!(rank(&m), 1);
        assert!(d.z.mul_vec(m.data()).unwrap().iter().all(|v| *v == int(0)));
    }
}
