//! Deciding whether an essential matrix exists, by dispatch on `rank(Z)`.
//!
//! Ranks 9, 8, 7 and at most 3 are decided completely over the reals. Rank
//! 6 gets a complex verdict, rank 5 a real-solution count, rank 4 only the
//! (always positive) complex verdict.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::demazure::{demazure, restricted_system};
use crate::exactla::{cramer_vector, independent_rows, kernel_basis, rank, RatMatrix};
use crate::groebner::sturm::{certified_width, real_roots, RealRoot};
use crate::groebner::{count_real_rank5, projective_empty, Ideal, MonomialOrder, RealCountStatus};
use crate::mat3::{self, Mat3, Ring};
use crate::rational::Rational;
use crate::univariate::UniPoly;
use crate::witness::{AlgebraicWitness, RealAlgebraic, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EssentialError {
    #[error("data matrix must have 9 columns, got {0}")]
    BadColumns(usize),
    #[error("data matrix must have at least one row")]
    Empty,
    #[error("expected rank 7, got {0}")]
    NotRank7(usize),
    #[error("kernel vectors must be linearly independent 9-vectors")]
    DependentVectors,
    #[error("row {0} of the data matrix is not of the form y ⊗ x")]
    NotKronecker(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Existence {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Yes => "yes",
            Existence::No => "no",
            Existence::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialVerdict {
    pub complex_exists: Existence,
    pub real_exists: Existence,
    pub witness: Option<Witness>,
    pub rank_z: usize,
    /// Human-readable record of the branches taken.
    pub trace: Vec<String>,
    /// Distinct real solutions, when they were counted.
    pub real_count: Option<usize>,
}

impl EssentialVerdict {
    fn new(complex: Existence, real: Existence, rank_z: usize) -> Self {
        Self { complex_exists: complex, real_exists: real, witness: None, rank_z, trace: Vec::new(), real_count: None }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.trace.push(s.into());
        self
    }

    fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w.simplify());
        self
    }
}

/// Coefficients `r_{j,1..4}` of `p_j(λu + μv)` in the basis
/// `λ³, λ²μ, λμ², μ³`, one row per Demazure cubic.
pub fn build_r(u: &[Rational], v: &[Rational]) -> Result<RatMatrix, EssentialError> {
    if u.len() != 9 || v.len() != 9 {
        return Err(EssentialError::DependentVectors);
    }
    let pair = RatMatrix::new(2, 9, u.iter().chain(v).cloned().collect()).expect("2x9");
    if rank(&pair) != 2 {
        return Err(EssentialError::DependentVectors);
    }
    let at = |l: i64, m: i64| {
        let (l, m) = (Rational::from_integer(l.into()), Rational::from_integer(m.into()));
        let p: Vec<Rational> = u.iter().zip(v).map(|(a, b)| a * &l + b * &m).collect();
        demazure(&RatMatrix::from_vec9(&p))
    };
    let (p10, p01, p11, p1m) = (at(1, 0), at(0, 1), at(1, 1), at(1, -1));
    let two = Rational::from_integer(2.into());
    let mut data = Vec::with_capacity(40);
    for j in 0..10 {
        let r1 = p10[j].clone();
        let r4 = p01[j].clone();
        let s = &p11[j] - &r1 - &r4;
        let d = &p1m[j] - &r1 + &r4;
        data.push(r1);
        data.push((&s - &d) / &two);
        data.push((&s + &d) / &two);
        data.push(r4);
    }
    Ok(RatMatrix::new(10, 4, data).expect("10x4"))
}

/// The 3×3 Bézout matrix of the binary cubics given by the two rows.
pub fn bezout_matrix(r2: &RatMatrix) -> RatMatrix {
    assert!(r2.rows() == 2 && r2.cols() == 4);
    let b = |i: usize, j: usize| r2.get(0, i) * r2.get(1, j) - r2.get(0, j) * r2.get(1, i);
    let data = vec![b(0, 1), b(0, 2), b(0, 3), b(0, 2), b(0, 3) + b(1, 2), b(1, 3), b(0, 3), b(1, 3), b(2, 3)];
    RatMatrix::new(3, 3, data).expect("3x3")
}

/// Determinant of the Bézout matrix; zero iff the two cubics share a
/// projective root.
pub fn chow_twisted_cubic(r2: &RatMatrix) -> Rational {
    mat3::det(&mat3::from_slice(bezout_matrix(r2).data()))
}

/// A binary cubic `c0 λ³ + c1 λ²μ + c2 λμ² + c3 μ³`.
struct BinaryCubic<'a>(&'a [Rational]);

impl BinaryCubic<'_> {
    /// Multiplicity of the root `(1, 0)`.
    fn infinite_multiplicity(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    /// `f(t, 1)`.
    fn affine(&self) -> UniPoly {
        UniPoly::new(self.0.iter().rev().cloned().collect())
    }
}

fn line_point(u: &[Rational], v: &[Rational], l: &Rational, m: &Rational) -> RatMatrix {
    let p: Vec<Rational> = u.iter().zip(v).map(|(a, b)| a * l + b * m).collect();
    RatMatrix::from_vec9(&p).normalized()
}

/// `E(t) = t·u + v` at a real root `t` of `p`.
fn affine_root_witness(u: &[Rational], v: &[Rational], p: &UniPoly) -> Witness {
    let roots = real_roots(p, &certified_width()).expect("nonzero");
    let pick =
        roots.iter().find(|r| matches!(r, RealRoot::Rational(_))).or_else(|| roots.first()).expect("a real root");
    match pick {
        RealRoot::Rational(t) => Witness::Exact(line_point(u, v, t, &Rational::one())),
        r => {
            let entries = u.iter().zip(v).map(|(a, b)| UniPoly::new(vec![b.clone(), a.clone()])).collect();
            Witness::Algebraic(AlgebraicWitness::new(RealAlgebraic::from_root(p, r), entries))
        }
    }
}

/// Real and complex essential matrices on the projective line spanned by
/// `u` and `v`, decided from the rank of the coefficient matrix `R`.
pub fn essential_on_kernel_line(u: &[Rational], v: &[Rational]) -> Result<EssentialVerdict, EssentialError> {
    use Existence::*;
    let r = build_r(u, v)?;
    let rank_r = rank(&r);
    let base = |c, re| EssentialVerdict::new(c, re, 7).note(format!("rank(R) = {rank_r}"));
    let at_infinity = || Witness::Exact(RatMatrix::from_vec9(u).normalized());

    Ok(match rank_r {
        0 => base(Yes, Yes).note("every point of the kernel line is essential").with_witness(at_infinity()),
        1 => {
            let row = independent_rows(&r)[0];
            let f = BinaryCubic(r.row(row));
            let verdict = base(Yes, Yes).note("a single binary cubic always has a real root");
            if f.infinite_multiplicity() > 0 {
                verdict.with_witness(at_infinity())
            } else {
                verdict.with_witness(affine_root_witness(u, v, &f.affine()))
            }
        }
        2 => rank_two(u, v, &r, base(Yes, Yes)),
        3 => {
            let w = &kernel_basis(&r)[0];
            let hankel = RatMatrix::new(
                2,
                3,
                vec![w[0].clone(), w[1].clone(), w[2].clone(), w[1].clone(), w[2].clone(), w[3].clone()],
            )
            .expect("2x3");
            if rank(&hankel) == 1 {
                let v_ = base(Yes, Yes).note("kernel point of R lies on the twisted cubic");
                let e = if w[0].is_zero() {
                    RatMatrix::from_vec9(v).normalized()
                } else {
                    line_point(u, v, &Rational::one(), &(&w[1] / &w[0]))
                };
                v_.with_witness(Witness::Exact(e))
            } else {
                base(No, No).note("kernel point of R is off the twisted cubic")
            }
        }
        _ => base(No, No).note("R has full column rank"),
    })
}

fn rank_two(u: &[Rational], v: &[Rational], r: &RatMatrix, yes: EssentialVerdict) -> EssentialVerdict {
    use Existence::*;
    let rows = independent_rows(r);
    let (i, j) = (rows[0], rows[1]);
    let pair = r.select_rows(&[i, j]);
    let bez_rank = rank(&bezout_matrix(&pair));
    let (f, g) = (BinaryCubic(r.row(i)), BinaryCubic(r.row(j)));
    let inf = f.infinite_multiplicity().min(g.infinite_multiplicity());
    let affine_gcd = f.affine().gcd(&g.affine());
    let common = inf + affine_gcd.degree().unwrap_or(0);
    debug_assert_eq!(bez_rank, 3 - common);
    let verdict = yes.note(format!("rows {i}, {j}; Bezout rank {bez_rank}"));
    let no = |v: EssentialVerdict| EssentialVerdict { complex_exists: No, real_exists: No, ..v };

    match common {
        0 => no(verdict).note("no common root: Chow form nonzero"),
        1 => {
            let v_ = verdict.note("unique common root, necessarily real");
            if inf == 1 {
                let w = Witness::Exact(RatMatrix::from_vec9(u).normalized());
                v_.with_witness(w)
            } else {
                v_.with_witness(affine_root_witness(u, v, &affine_gcd))
            }
        }
        _ => {
            // Quadratic gcd a λ² + b λμ + c μ² = μ^inf · G(λ/μ) μ^(2−inf).
            let coeff = |k: usize| affine_gcd.coeff(k);
            let (a, b, c) = match inf {
                0 => (coeff(2), coeff(1), coeff(0)),
                1 => (Rational::zero(), coeff(1), coeff(0)),
                _ => (Rational::zero(), Rational::zero(), Rational::one()),
            };
            let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
            let v_ = verdict.note(format!("quadratic gcd ({a}, {b}, {c}), discriminant {disc}"));
            if disc.is_negative() {
                EssentialVerdict { real_exists: No, ..v_ }.note("common roots are complex conjugate")
            } else if inf > 0 {
                v_.with_witness(Witness::Exact(RatMatrix::from_vec9(u).normalized()))
            } else {
                v_.with_witness(affine_root_witness(u, v, &affine_gcd))
            }
        }
    }
}

pub fn exists_essential_rank7(z: &RatMatrix) -> Result<EssentialVerdict, EssentialError> {
    check_shape(z)?;
    let r = rank(z);
    if r != 7 {
        return Err(EssentialError::NotRank7(r));
    }
    let k = kernel_basis(z);
    essential_on_kernel_line(&k[0], &k[1])
}

fn check_shape(z: &RatMatrix) -> Result<(), EssentialError> {
    if z.cols() != 9 {
        return Err(EssentialError::BadColumns(z.cols()));
    }
    if z.rows() == 0 {
        return Err(EssentialError::Empty);
    }
    Ok(())
}

pub fn exists_essential(z: &RatMatrix) -> Result<EssentialVerdict, EssentialError> {
    use Existence::*;
    check_shape(z)?;
    let r = rank(z);
    let head = format!("rank(Z) = {r}");
    let mut verdict = match r {
        9 => EssentialVerdict::new(No, No, 9).note("trivial kernel"),
        8 => {
            let rows = independent_rows(z);
            let a = RatMatrix::from_vec9(&cramer_vector(&z.select_rows(&rows)).expect("8x9")).normalized();
            if crate::demazure::is_essential(&a) {
                EssentialVerdict::new(Yes, Yes, 8).note("Cramer point is essential").with_witness(Witness::Exact(a))
            } else {
                EssentialVerdict::new(No, No, 8).note("Cramer point is not essential")
            }
        }
        7 => exists_essential_rank7(z)?,
        6 => {
            let gens = restricted_system(&kernel_basis(z));
            let empty = projective_empty(&Ideal::new(gens, MonomialOrder::DegRevLex)).expect("homogeneous cubics");
            if empty {
                EssentialVerdict::new(No, No, 6).note("restricted Demazure system has no projective zero")
            } else {
                EssentialVerdict::new(Yes, Unknown, 6).note("complex solutions exist; real existence undecided")
            }
        }
        5 => {
            let count = count_real_rank5(&kernel_basis(z));
            match count.status {
                RealCountStatus::Exact => {
                    let real = if count.count > 0 { Yes } else { No };
                    let mut v = EssentialVerdict::new(Yes, real, 5)
                        .note(format!("{} distinct complex solutions, {} real", count.complex_count, count.count));
                    v.real_count = Some(count.count);
                    match count.witness {
                        Some(w) => v.with_witness(w),
                        None => v,
                    }
                }
                RealCountStatus::Nongeneric => {
                    EssentialVerdict::new(Yes, Unknown, 5).note("solution set not in shape position")
                }
            }
        }
        4 => EssentialVerdict::new(Yes, Unknown, 4).note("infinitely many complex solutions; real existence undecided"),
        _ => small_rank(z)?,
    };
    verdict.rank_z = r;
    verdict.trace.insert(0, head);
    Ok(verdict)
}

/// Recovers `(x, y)` up to scale from a row `y ⊗ x`.
fn split_row(row: &[Rational], i: usize) -> Result<([Rational; 3], [Rational; 3]), EssentialError> {
    let m = RatMatrix::from_vec9(row);
    if rank(&m) != 1 {
        return Err(EssentialError::NotKronecker(i));
    }
    let r = (0..3).find(|&r| m.row(r).iter().any(|c| !c.is_zero())).expect("nonzero");
    let c = (0..3).find(|&c| !m.get(r, c).is_zero()).expect("nonzero");
    let x = std::array::from_fn(|k| m.get(r, k).clone());
    let y = std::array::from_fn(|k| m.get(k, c).clone());
    Ok((x, y))
}

fn cross<T: Ring>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn dot<T: Ring>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn unit(k: usize) -> [Rational; 3] {
    std::array::from_fn(|i| if i == k { Rational::one() } else { Rational::zero() })
}

/// Rank at most three: an essential matrix always exists. With at most two
/// independent rows a skew matrix works; with three, `[t]×R` for a rotation
/// `R` taking one `x_i` onto the direction of `y_i`.
fn small_rank(z: &RatMatrix) -> Result<EssentialVerdict, EssentialError> {
    use Existence::*;
    let rows = independent_rows(z);
    let pairs = rows.iter().map(|&i| split_row(z.row(i), i)).collect::<Result<Vec<_>, _>>()?;
    let verdict = EssentialVerdict::new(Yes, Yes, rows.len());
    if pairs.len() <= 2 {
        let cs: Vec<[Rational; 3]> = pairs.iter().map(|(x, y)| cross(y, x)).collect();
        let b = perpendicular_to(&cs);
        let e = crate::exactla::skew(&b);
        return Ok(verdict.note("skew-symmetric witness").with_witness(Witness::Exact(e.normalized())));
    }
    let pick = pairs.iter().position(|(x, y)| rational_norm_ratio(x, y).is_some()).unwrap_or(0);
    let (x, y) = &pairs[pick];
    let others: Vec<&([Rational; 3], [Rational; 3])> =
        pairs.iter().enumerate().filter(|(k, _)| *k != pick).map(|(_, p)| p).collect();
    let root = match rational_norm_ratio(x, y) {
        Some(s) => RealAlgebraic::rational(s),
        None => {
            let ratio = dot(x, x) / dot(y, y);
            let p = UniPoly::new(vec![-ratio, Rational::zero(), Rational::one()]);
            let roots = real_roots(&p, &certified_width()).expect("nonzero");
            RealAlgebraic::from_root(&p, roots.last().expect("positive root"))
        }
    };
    let w = rotation_witness(&root, x, y, &others);
    Ok(verdict.note("rotation witness from two reflections").with_witness(w))
}

/// `|x| / |y|` when it is rational.
fn rational_norm_ratio(x: &[Rational; 3], y: &[Rational; 3]) -> Option<Rational> {
    let q = dot(x, x) / dot(y, y);
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// A nonzero rational vector orthogonal to all of `cs` (at most two
/// vectors).
fn perpendicular_to(cs: &[[Rational; 3]]) -> [Rational; 3] {
    let nonzero: Vec<&[Rational; 3]> = cs.iter().filter(|c| c.iter().any(|v| !v.is_zero())).collect();
    if nonzero.len() == 2 {
        let b = cross(nonzero[0], nonzero[1]);
        if b.iter().any(|v| !v.is_zero()) {
            return b;
        }
    }
    match nonzero.first() {
        Some(c) => (0..3)
            .map(|k| cross(c, &unit(k)))
            .find(|b| b.iter().any(|v| !v.is_zero()))
            .expect("some axis is not parallel"),
        None => unit(0),
    }
}

/// Elements of `ℚ(α)` as polynomials reduced modulo the defining polynomial.
#[derive(Clone)]
struct Elem<'a> {
    p: UniPoly,
    root: &'a RealAlgebraic,
}

impl std::ops::Add for Elem<'_> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Elem { p: &self.p + &o.p, root: self.root }
    }
}

impl std::ops::Sub for Elem<'_> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Elem { p: &self.p - &o.p, root: self.root }
    }
}

impl std::ops::Mul for Elem<'_> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Elem { p: self.root.reduce(&(&self.p * &o.p)), root: self.root }
    }
}

/// `(w·w)I − 2wwᵀ`, a reflection scaled by `w·w`. With `w = x − s·y` and
/// `|x| = s|y|` it maps `x` to a positive multiple of `y`.
fn scaled_reflection<T: Ring>(w: &[T; 3], zero: &T) -> Mat3<T> {
    let ww = dot(w, w);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let diag = if i == j { ww.clone() } else { zero.clone() };
            let wiwj = w[i].clone() * w[j].clone();
            diag - (wiwj.clone() + wiwj)
        })
    })
}

fn apply<T: Ring>(m: &Mat3<T>, v: &[T; 3]) -> [T; 3] {
    std::array::from_fn(|i| {
        m[i][0].clone() * v[0].clone() + m[i][1].clone() * v[1].clone() + m[i][2].clone() * v[2].clone()
    })
}

fn rotation_witness(
    root: &RealAlgebraic,
    x: &[Rational; 3],
    y: &[Rational; 3],
    others: &[&([Rational; 3], [Rational; 3])],
) -> Witness {
    let c = |v: Rational| Elem { p: UniPoly::constant(v), root };
    let s = Elem { p: root.reduce(&UniPoly::x()), root };
    let vanishes = |v: &[Elem; 3]| v.iter().all(|e| root.is_root_of(&e.p));
    let lift = |v: &[Rational; 3]| -> [Elem; 3] { std::array::from_fn(|k| c(v[k].clone())) };
    let (xe, ye) = (lift(x), lift(y));

    // Scaled reflection (w·w)I − 2wwᵀ; it maps x to a positive multiple of
    // s·y when w = x − s·y and |x| = s|y|.
    let w1: [Elem; 3] = std::array::from_fn(|k| xe[k].clone() - s.clone() * ye[k].clone());
    let rot: Mat3<Elem> = if vanishes(&w1) {
        std::array::from_fn(|i| std::array::from_fn(|j| c(if i == j { Rational::one() } else { Rational::zero() })))
    } else {
        let axis = (0..3).map(|k| cross(y, &unit(k))).find(|b| b.iter().any(|v| !v.is_zero())).expect("y is nonzero");
        mat3::mul(&scaled_reflection(&lift(&axis), &c(Rational::zero())), &scaled_reflection(&w1, &c(Rational::zero())))
    };
    let cs: Vec<[Elem; 3]> = others.iter().map(|(xo, yo)| cross(&apply(&rot, &lift(xo)), &lift(yo))).collect();
    let nonzero: Vec<&[Elem; 3]> = cs.iter().filter(|v| !vanishes(v)).collect();
    let mut t = None;
    if nonzero.len() == 2 {
        let b = cross(nonzero[0], nonzero[1]);
        if !vanishes(&b) {
            t = Some(b);
        }
    }
    let t = t.unwrap_or_else(|| match nonzero.first() {
        Some(v) => (0..3).map(|k| cross(v, &lift(&unit(k)))).find(|b| !vanishes(b)).expect("some axis is not parallel"),
        None => lift(&unit(0)),
    });
    let zero = || c(Rational::zero());
    let tx: Mat3<Elem> = [
        [zero(), zero() - t[2].clone(), t[1].clone()],
        [t[2].clone(), zero(), zero() - t[0].clone()],
        [zero() - t[1].clone(), t[0].clone(), zero()],
    ];
    let e = mat3::mul(&tx, &rot);
    let entries = mat3::flatten(&e).into_iter().map(|el| el.p).collect();
    Witness::Algebraic(AlgebraicWitness::new(root.clone(), entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{build_data_matrices, skew, Correspondence};
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    fn rows(a: &[i64], b: &[i64]) -> RatMatrix {
        RatMatrix::new(2, 4, ints(a).into_iter().chain(ints(b)).collect()).unwrap()
    }

    #[test]
    fn r_rows_expand_the_cubics() {
        let u = ints(&[1, 2, 0, -1, 3, 1, 0, 2, -2]);
        let v = ints(&[2, -1, 1, 0, 1, 3, -1, 1, 1]);
        let r = build_r(&u, &v).unwrap();
        for (l, m) in [(2, 3), (-1, 4), (5, -2)] {
            let (l, m) = (int(l), int(m));
            let p: Vec<Rational> = u.iter().zip(&v).map(|(a, b)| a * &l + b * &m).collect();
            let direct = demazure(&RatMatrix::from_vec9(&p));
            for j in 0..10 {
                let row = r.row(j);
                let expanded =
                    &row[0] * &l * &l * &l + &row[1] * &l * &l * &m + &row[2] * &l * &m * &m + &row[3] * &m * &m * &m;
                assert_eq!(expanded, direct[j]);
            }
        }
        assert_eq!(build_r(&u, &u), Err(EssentialError::DependentVectors));
    }

    #[test]
    fn bezout_of_pure_powers() {
        let r = rows(&[1, 0, 0, 0], &[0, 0, 0, 1]);
        assert_eq!(bezout_matrix(&r), RatMatrix::from_i64(3, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]));
        assert_eq!(chow_twisted_cubic(&r), int(-1));
    }

    #[test]
    fn bezout_rank_counts_common_roots() {
        // (λ − μ)(λ² + μ²) and (λ − μ)(λ + 2μ)μ share one root.
        let r = rows(&[1, -1, 1, -1], &[0, 1, 1, -2]);
        assert_eq!(chow_twisted_cubic(&r), int(0));
        assert_eq!(rank(&bezout_matrix(&r)), 2);
        // λ(λ² + μ²) and λ²μ + λμ² + ... sharing the quadratic λ² + μ².
        let r = rows(&[1, 0, 1, 0], &[0, 1, 0, 1]);
        assert_eq!(rank(&bezout_matrix(&r)), 1);
        let r = rows(&[1, 0, 0, 1], &[1, 0, 0, 2]);
        assert_ne!(chow_twisted_cubic(&r), int(0));
    }

    #[test]
    fn line_of_skew_matrices_is_all_essential() {
        let u = skew(&ints(&[1, 0, 0])).into_data();
        let v = skew(&ints(&[0, 1, 0])).into_data();
        let verdict = essential_on_kernel_line(&u, &v).unwrap();
        assert_eq!(verdict.trace[0], "rank(R) = 0");
        assert_eq!((verdict.complex_exists, verdict.real_exists), (Existence::Yes, Existence::Yes));
        assert!(verdict.witness.unwrap().is_essential());
    }

    #[test]
    fn line_through_an_essential_matrix() {
        // u essential, v generic: the line meets the variety at u at least.
        let u = skew(&ints(&[1, 2, 3])).into_data();
        let v = ints(&[2, 0, 1, -1, 3, 0, 1, 1, -2]);
        let verdict = essential_on_kernel_line(&u, &v).unwrap();
        assert_eq!(verdict.real_exists, Existence::Yes);
        assert!(verdict.witness.unwrap().is_essential());
    }

    #[test]
    fn identity_line_has_no_essential() {
        // Points λI + μ diag(1, 2, 4) are diagonal and invertible unless
        // λ + kμ = 0, where the rank is two but |entries| differ.
        let u = RatMatrix::identity(3).into_data();
        let v = ints(&[1, 0, 0, 0, 2, 0, 0, 0, 4]);
        let verdict = essential_on_kernel_line(&u, &v).unwrap();
        assert_eq!((verdict.complex_exists, verdict.real_exists), (Existence::No, Existence::No));
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn rank7_requires_rank7() {
        let corrs = [Correspondence::from_i64([1, 2], [3, 4])];
        let d = build_data_matrices(&corrs);
        assert_eq!(exists_essential_rank7(&d.z), Err(EssentialError::NotRank7(1)));
        assert_eq!(exists_essential(&RatMatrix::zeros(2, 8)), Err(EssentialError::BadColumns(8)));
    }

    #[test]
    fn small_rank_witnesses() {
        let sets: [&[([i64; 2], [i64; 2])]; 3] = [
            &[([1, 2], [3, 4])],
            &[([1, 2], [3, 4]), ([0, -1], [2, 5])],
            &[([1, 2], [3, 4]), ([0, -1], [2, 5]), ([2, 2], [-1, 3])],
        ];
        for set in sets {
            let corrs: Vec<Correspondence> = set.iter().map(|&(x, y)| Correspondence::from_i64(x, y)).collect();
            let d = build_data_matrices(&corrs);
            let verdict = exists_essential(&d.z).unwrap();
            assert_eq!(verdict.rank_z, set.len());
            assert_eq!(verdict.real_exists, Existence::Yes);
            let w = verdict.witness.unwrap();
            assert!(w.is_essential());
            assert!(w.satisfies_epipolar(&d.z));
        }
    }

    #[test]
    fn rotation_witness_with_rational_norm_ratio() {
        // |(3/4, 0, 1)| = 5/4 and |(0, 0, 1)| = 1.
        let corrs = [
            Correspondence::new([frac(3, 4), int(0)], [int(0), int(0)]),
            Correspondence::from_i64([1, 1], [2, -1]),
            Correspondence::from_i64([-1, 3], [1, 1]),
        ];
        let d = build_data_matrices(&corrs);
        let w = exists_essential(&d.z).unwrap().witness.unwrap();
        assert!(w.is_exact());
        assert!(w.is_essential() && w.satisfies_epipolar(&d.z));
    }

    #[test]
    fn rotation_witness_over_quadratic_field() {
        // Every |x|²/|y|² here is a non-square, so the witness is algebraic.
        let corrs = [
            Correspondence::from_i64([1, 0], [0, 0]),
            Correspondence::from_i64([1, 1], [2, 0]),
            Correspondence::from_i64([0, 2], [1, 1]),
        ];
        let d = build_data_matrices(&corrs);
        let verdict = exists_essential(&d.z).unwrap();
        assert_eq!(verdict.rank_z, 3);
        let w = verdict.witness.unwrap();
        assert!(!w.is_exact());
        assert!(w.is_essential());
        assert!(w.satisfies_epipolar(&d.z));
    }
}
