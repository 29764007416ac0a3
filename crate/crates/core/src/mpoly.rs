//! Sparse multivariate polynomials over ℚ and linear matrix pencils.
//!
//! A [`Pencil`] is the family `M(u) = Σ A_i u_i` of 3×3 matrices spanned by a
//! kernel basis. Its determinant and 2×2 minors, as polynomials in `u`,
//! decide whether the family contains rank-two members.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::RatMatrix;
use crate::mat3::{self, Mat3};
use crate::rational::Rational;
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("linear form must be nonzero")]
    ZeroLinearForm,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("expected a univariate polynomial, got {0} variables")]
    NotUnivariate(usize),
}

pub type Exponent = Vec<u32>;

/// Sparse polynomial in `num_vars` variables. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    num_vars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MPoly {
    pub fn zero(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The variable `u_i` (zero-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars);
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent length must equal num_vars");
            p.add_term(e, c);
        }
        p
    }

    /// `Σ c_i u_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| deg(e)).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| deg(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn eval(&self, u: &[Rational]) -> Rational {
        assert_eq!(u.len(), self.num_vars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in u.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable count, which becomes the result's.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.num_vars);
        let n = images.first().map_or(0, |p| p.num_vars);
        let mut out = MPoly::zero(n);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(n, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn to_univariate(&self) -> Result<UniPoly, PolyError> {
        if self.num_vars != 1 {
            return Err(PolyError::NotUnivariate(self.num_vars));
        }
        let d = self.total_degree().unwrap_or(0);
        let mut c = vec![Rational::zero(); d + 1];
        for (e, v) in &self.terms {
            c[e[0] as usize] = v.clone();
        }
        Ok(UniPoly::new(c))
    }

    pub fn from_univariate(p: &UniPoly) -> Self {
        Self::from_terms(1, p.coeffs().iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
    }
}

fn deg(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*u{}", i + 1)?,
                    _ => write!(f, "*u{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = MPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

/// Nonzero coefficient vector `b` of the form `bᵀu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    b: Vec<Rational>,
}

impl LinearForm {
    pub fn new(b: Vec<Rational>) -> Result<Self, PolyError> {
        if b.iter().all(Zero::is_zero) {
            return Err(PolyError::ZeroLinearForm);
        }
        Ok(Self { b })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Scaled so the first nonzero coordinate is one.
    pub fn normalized(&self) -> Self {
        let lead = self.b.iter().find(|c| !c.is_zero()).expect("nonzero form").recip();
        Self { b: self.b.iter().map(|c| c * &lead).collect() }
    }

    pub fn to_poly(&self) -> MPoly {
        MPoly::linear(&self.b)
    }
}

/// The linear family `M(u) = Σ A_i u_i` of 3×3 matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    mats: Vec<RatMatrix>,
}

impl Pencil {
    pub fn new(mats: Vec<RatMatrix>) -> Self {
        assert!(mats.iter().all(|m| m.rows() == 3 && m.cols() == 3), "pencil members must be 3x3");
        Self { mats }
    }

    /// Pencil from row-major 9-vectors (e.g. a kernel basis of `Z`).
    pub fn from_vectors(vs: &[Vec<Rational>]) -> Self {
        Self::new(vs.iter().map(|v| RatMatrix::from_vec9(v)).collect())
    }

    pub fn t(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[RatMatrix] {
        &self.mats
    }

    pub fn eval(&self, u: &[Rational]) -> RatMatrix {
        assert_eq!(u.len(), self.t());
        let mut acc = RatMatrix::zeros(3, 3);
        for (a, ui) in self.mats.iter().zip(u) {
            if !ui.is_zero() {
                acc = acc.add(&a.scale(ui));
            }
        }
        acc
    }

    /// `M(u)` with symbolic entries linear in `u_1..u_t`.
    pub fn symbolic(&self) -> Mat3<MPoly> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let coeffs: Vec<Rational> = self.mats.iter().map(|a| a.get(i, j).clone()).collect();
                MPoly::linear(&coeffs)
            })
        })
    }
}

/// `det(M(u))`, a cubic form in `t` variables (or zero).
pub fn pencil_det(p: &Pencil) -> MPoly {
    if p.t() == 0 {
        return MPoly::zero(0);
    }
    mat3::det(&p.symbolic())
}

/// `q_ij(M(u))` for all `i, j` (zero-based, row `i` and column `j` deleted).
pub fn pencil_minors(p: &Pencil) -> Mat3<MPoly> {
    let s = p.symbolic();
    std::array::from_fn(|i| std::array::from_fn(|j| mat3::minor(&s, i, j)))
}

pub fn minors_all_zero(p: &Pencil) -> bool {
    if p.t() == 0 {
        return true;
    }
    pencil_minors(p).iter().flatten().all(MPoly::is_zero)
}

/// Writes a cubic form as `c·(bᵀu)³` with `b` normalized to a leading one,
/// if possible. The zero polynomial yields `None`.
pub fn as_cube_of_linear_form(p: &MPoly) -> Result<Option<(Rational, LinearForm)>, PolyError> {
    if p.is_zero() {
        return Ok(None);
    }
    if !p.is_homogeneous() {
        return Err(PolyError::NotHomogeneous);
    }
    let d = p.total_degree().unwrap_or(0);
    if d != 3 {
        return Err(PolyError::WrongDegree { expected: 3, got: d });
    }
    let n = p.num_vars();
    let pure = |i: usize, k: u32| {
        let mut e = vec![0u32; n];
        e[i] = k;
        e
    };
    let Some((i, ci)) = (0..n).find_map(|i| {
        let c = p.coeff(&pure(i, 3));
        (!c.is_zero()).then_some((i, c))
    }) else {
        return Ok(None);
    };
    let three_ci = &ci * Rational::from_integer(3.into());
    let b: Vec<Rational> = (0..n)
        .map(|j| {
            if j == i {
                Rational::one()
            } else {
                let mut e = pure(i, 2);
                e[j] = 1;
                p.coeff(&e) / &three_ci
            }
        })
        .collect();
    let form = LinearForm::new(b)?;
    let cube = form.to_poly().pow(3).scale(&ci);
    if &cube != p {
        return Ok(None);
    }
    // `i` is the first index with a nonzero pure cube, hence the first
    // nonzero coordinate of b; the form is already normalized.
    debug_assert!(form.coeffs()[..i].iter().all(Zero::is_zero));
    Ok(Some((ci, form)))
}

/// The pencil in `t − 1` parameters parametrizing `{M(u) : bᵀu = 0}`,
/// built from the reduced basis `e_j − (b_j/b_k) e_k` of `b⊥`, where `k` is
/// the first nonzero coordinate of `b`.
pub fn restrict_to_hyperplane(p: &Pencil, l: &LinearForm) -> Result<Pencil, PolyError> {
    if l.len() != p.t() {
        return Err(PolyError::LengthMismatch { expected: p.t(), got: l.len() });
    }
    let b = l.normalized();
    let b = b.coeffs();
    let k = b.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let mats = (0..p.t()).filter(|&j| j != k).map(|j| p.mats[j].add(&p.mats[k].scale(&-b[j].clone()))).collect();
    Ok(Pencil::new(mats))
}

/// The basis of `b⊥` used by [`restrict_to_hyperplane`], as vectors in ℚ^t.
pub fn hyperplane_basis(l: &LinearForm) -> Vec<Vec<Rational>> {
    let b = l.normalized();
    let b = b.coeffs();
    let k = b.iter().position(|c| !c.is_zero()).expect("nonzero form");
    (0..b.len())
        .filter(|&j| j != k)
        .map(|j| {
            let mut v = vec![Rational::zero(); b.len()];
            v[j] = Rational::one();
            v[k] = -b[j].clone();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rank;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_pencil() {
        let p = Pencil::new(vec![RatMatrix::identity(3)]);
        assert_eq!(pencil_det(&p), MPoly::var(1, 0).pow(3));
        let q = pencil_minors(&p);
        assert_eq!(q[0][0], MPoly::var(1, 0).pow(2));
        assert!(q[0][1].is_zero());
    }

    #[test]
    fn cube_detection_examples() {
        let u1 = MPoly::var(2, 0);
        let u2 = MPoly::var(2, 1);
        let l = &u1 + &u2.scale(&int(5));
        let (c, b) = as_cube_of_linear_form(&l.pow(3)).unwrap().unwrap();
        assert_eq!(c, int(1));
        assert_eq!(b.coeffs(), &ints(&[1, 5])[..]);

        let (c, b) = as_cube_of_linear_form(&u1.pow(3)).unwrap().unwrap();
        assert_eq!(c, int(1));
        assert_eq!(b.coeffs(), &ints(&[1, 0])[..]);

        let not_cube = (&u1 + &u2.scale(&int(187))) * u2.pow(2);
        let not_cube = not_cube.scale(&int(96));
        assert_eq!(as_cube_of_linear_form(&not_cube).unwrap(), None);

        // leading coordinate zero: (u2 - 2u3)^3 * 7
        let v2 = MPoly::var(3, 1);
        let v3 = MPoly::var(3, 2);
        let f = (&v2 - &v3.scale(&int(2))).pow(3).scale(&int(7));
        let (c, b) = as_cube_of_linear_form(&f).unwrap().unwrap();
        assert_eq!(c, int(7));
        assert_eq!(b.coeffs(), &ints(&[0, 1, -2])[..]);
    }

    #[test]
    fn cube_detection_rejects_bad_input() {
        let u1 = MPoly::var(2, 0);
        let u2 = MPoly::var(2, 1);
        assert_eq!(as_cube_of_linear_form(&(&u1.pow(3) + &u2)), Err(PolyError::NotHomogeneous));
        assert_eq!(as_cube_of_linear_form(&u1.pow(2)), Err(PolyError::WrongDegree { expected: 3, got: 2 }));
        assert_eq!(as_cube_of_linear_form(&MPoly::zero(2)), Ok(None));
    }

    #[test]
    fn restriction_of_diagonal_pencil() {
        let i3 = RatMatrix::identity(3);
        let p = Pencil::new(vec![i3.clone(), i3.clone()]);
        let l = LinearForm::new(ints(&[1, -1])).unwrap();
        let r = restrict_to_hyperplane(&p, &l).unwrap();
        assert_eq!(r.t(), 1);
        assert_eq!(r.mats()[0], i3.scale(&int(2)));
        assert!(!pencil_det(&r).is_zero());
        assert!(restrict_to_hyperplane(&p, &LinearForm::new(ints(&[1])).unwrap()).is_err());
    }

    #[test]
    fn restriction_to_rank8_style_pencil_is_empty() {
        let p = Pencil::new(vec![RatMatrix::identity(3)]);
        let l = LinearForm::new(ints(&[1])).unwrap();
        let r = restrict_to_hyperplane(&p, &l).unwrap();
        assert_eq!(r.t(), 0);
        assert!(minors_all_zero(&r));
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &y) + &x.pow(3);
        let s = MPoly::var(1, 0);
        let images = [&s + &MPoly::one(1), s.scale(&int(2))];
        let q = p.substitute(&images);
        for t in -3..4 {
            let tv = int(t);
            assert_eq!(q.eval(std::slice::from_ref(&tv)), p.eval(&[&tv + int(1), &tv * int(2)]));
        }
    }
}
