//! Seeded generators of exact test data: camera pairs viewing rational world
//! points (so an epipolar matrix exists by construction) and correspondence
//! sets with a prescribed degeneracy.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactla::{build_data_matrices, kernel_basis, rank, skew, Correspondence, RatMatrix};
use crate::exactla::{det, inverse};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("at least one correspondence is required")]
    Empty,
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
    #[error("world point projects to infinity in camera {0}")]
    PointAtInfinity(usize),
}

/// Two finite cameras and world points in homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub p1: RatMatrix,
    pub p2: RatMatrix,
    pub points: Vec<[Rational; 4]>,
    pub calibrated: bool,
}

/// Numerators in `[-9, 9]`, denominators in `[1, 6]`.
fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=6).into())
}

fn small_vec<const N: usize>(rng: &mut ChaCha8Rng) -> [Rational; N] {
    std::array::from_fn(|_| small(rng))
}

/// Cayley transform `(I − S)(I + S)⁻¹` of the skew matrix of `s`: a
/// rotation with rational entries.
pub fn cayley_rotation(s: &[Rational; 3]) -> RatMatrix {
    let sk = skew(s);
    let i = RatMatrix::identity(3);
    let minus = i.add(&sk.scale(&-Rational::one()));
    let plus_inv = inverse(&i.add(&sk)).expect("I + S is invertible for skew S");
    minus.mul(&plus_inv).expect("3x3")
}

/// `[R | t]`.
fn compose(r: &RatMatrix, t: &[Rational; 3]) -> RatMatrix {
    let data = (0..3).flat_map(|i| r.row(i).iter().cloned().chain(std::iter::once(t[i].clone()))).collect();
    RatMatrix::new(3, 4, data).expect("3x4")
}

/// The camera center, the kernel of a 3×4 camera.
pub fn camera_center(p: &RatMatrix) -> Vec<Rational> {
    kernel_basis(p).into_iter().next().expect("a 3x4 matrix has a kernel")
}

fn left_block(p: &RatMatrix) -> RatMatrix {
    let data = (0..3).flat_map(|i| p.row(i)[..3].to_vec()).collect();
    RatMatrix::new(3, 3, data).expect("3x3")
}

fn image(p: &RatMatrix, w: &[Rational; 4]) -> Option<[Rational; 2]> {
    let h = p.mul_vec(w).expect("4 columns");
    (!h[2].is_zero()).then(|| [&h[0] / &h[2], &h[1] / &h[2]])
}

/// Exact images of every world point.
pub fn project(scene: &Scene) -> Result<Vec<Correspondence>, OracleError> {
    scene
        .points
        .iter()
        .map(|w| {
            let x = image(&scene.p1, w).ok_or(OracleError::PointAtInfinity(1))?;
            let y = image(&scene.p2, w).ok_or(OracleError::PointAtInfinity(2))?;
            Ok(Correspondence::new(x, y))
        })
        .collect()
}

/// `[P2 c1]× P2 P1⁺` with `P1⁺ = P1ᵀ(P1 P1ᵀ)⁻¹`.
pub fn fundamental_from_cameras(p1: &RatMatrix, p2: &RatMatrix) -> RatMatrix {
    let c1 = camera_center(p1);
    let e2 = p2.mul_vec(&c1).expect("4 columns");
    let p1t = p1.transpose();
    let pinv = p1t.mul(&inverse(&p1.mul(&p1t).expect("3x3")).expect("full row rank")).expect("4x3");
    skew(&e2).mul(&p2.mul(&pinv).expect("3x3")).expect("3x3")
}

/// A scene with `m` points in general position: `rank(Z) = min(m, 8)` and
/// every image point is finite. Deterministic in `seed`.
pub fn generate_scene(m: usize, calibrated: bool, seed: u64) -> Result<Scene, OracleError> {
    if m == 0 {
        return Err(OracleError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (p1, p2) = if calibrated {
            let r = cayley_rotation(&small_vec(&mut rng));
            let t: [Rational; 3] = small_vec(&mut rng);
            if t.iter().all(Zero::is_zero) {
                continue;
            }
            (compose(&RatMatrix::identity(3), &[Rational::zero(), Rational::zero(), Rational::zero()]), compose(&r, &t))
        } else {
            let a = RatMatrix::new(3, 4, small_vec::<12>(&mut rng).to_vec()).expect("3x4");
            let b = RatMatrix::new(3, 4, small_vec::<12>(&mut rng).to_vec()).expect("3x4");
            (a, b)
        };
        let finite = |p: &RatMatrix| !det(&left_block(p)).expect("square").is_zero();
        if !finite(&p1) || !finite(&p2) {
            continue;
        }
        let centers = RatMatrix::from_rows(vec![camera_center(&p1), camera_center(&p2)]).expect("2x4");
        if rank(&centers) < 2 {
            continue;
        }
        let mut points = Vec::with_capacity(m);
        while points.len() < m {
            let xyz: [Rational; 3] = small_vec(&mut rng);
            let w = [xyz[0].clone(), xyz[1].clone(), xyz[2].clone(), Rational::one()];
            if image(&p1, &w).is_some() && image(&p2, &w).is_some() {
                points.push(w);
            }
        }
        let scene = Scene { p1, p2, points, calibrated };
        let corrs = project(&scene).expect("finite images");
        if rank(&build_data_matrices(&corrs).z) == m.min(8) {
            return Ok(scene);
        }
    }
}

/// Degeneracies that can be requested from [`generate_degenerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegenerateKind {
    /// First-image points indexed by `tau` on one line, the other
    /// second-image points on another.
    CollinearSplit { tau: Vec<usize> },
    /// Every first-image point is the same.
    RepeatedPoint,
    /// The first `related` pairs satisfy `y ∼ H x` for a random invertible `H`.
    HomographyRelated { related: usize },
    /// `rank` generic pairs repeated cyclically, so `rank(Z) = rank`.
    RankDeficientTarget { rank: usize },
}

fn random_point(rng: &mut ChaCha8Rng) -> [Rational; 2] {
    small_vec(rng)
}

fn on_line(rng: &mut ChaCha8Rng, a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    let l = small(rng);
    std::array::from_fn(|k| &a[k] + &l * (&b[k] - &a[k]))
}

pub fn generate_degenerate(kind: &DegenerateKind, m: usize, seed: u64) -> Result<Vec<Correspondence>, OracleError> {
    if m == 0 {
        return Err(OracleError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        DegenerateKind::CollinearSplit { tau } => {
            if let Some(&bad) = tau.iter().find(|&&i| i >= m) {
                return Err(OracleError::Infeasible(format!("index {bad} is out of range for m = {m}")));
            }
            let (xa, xb) = (random_point(&mut rng), random_point(&mut rng));
            let (ya, yb) = (random_point(&mut rng), random_point(&mut rng));
            Ok((0..m)
                .map(|i| {
                    if tau.contains(&i) {
                        Correspondence::new(on_line(&mut rng, &xa, &xb), random_point(&mut rng))
                    } else {
                        Correspondence::new(random_point(&mut rng), on_line(&mut rng, &ya, &yb))
                    }
                })
                .collect())
        }
        DegenerateKind::RepeatedPoint => {
            let x = random_point(&mut rng);
            Ok((0..m).map(|_| Correspondence::new(x.clone(), random_point(&mut rng))).collect())
        }
        DegenerateKind::HomographyRelated { related } => {
            if *related > m {
                return Err(OracleError::Infeasible(format!("{related} related pairs requested but m = {m}")));
            }
            let h = loop {
                let h = RatMatrix::new(3, 3, small_vec::<9>(&mut rng).to_vec()).expect("3x3");
                if !det(&h).expect("square").is_zero() {
                    break h;
                }
            };
            let mut out = Vec::with_capacity(m);
            while out.len() < m {
                let x = random_point(&mut rng);
                if out.len() < *related {
                    let hx = h.mul_vec(&[x[0].clone(), x[1].clone(), Rational::one()]).expect("3 columns");
                    if hx[2].is_zero() {
                        continue;
                    }
                    out.push(Correspondence::new(x, [&hx[0] / &hx[2], &hx[1] / &hx[2]]));
                } else {
                    out.push(Correspondence::new(x, random_point(&mut rng)));
                }
            }
            Ok(out)
        }
        DegenerateKind::RankDeficientTarget { rank: r } => {
            if *r == 0 || *r > 9 || *r > m {
                return Err(OracleError::Infeasible(format!("rank {r} is not attainable with m = {m}")));
            }
            let base = loop {
                let pairs: Vec<Correspondence> =
                    (0..*r).map(|_| Correspondence::new(random_point(&mut rng), random_point(&mut rng))).collect();
                if rank(&build_data_matrices(&pairs).z) == *r {
                    break pairs;
                }
            };
            Ok((0..m).map(|i| base[i % r].clone()).collect())
        }
    }
}
