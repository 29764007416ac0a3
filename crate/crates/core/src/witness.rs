//! Witness matrices: exact rational ones, and ones whose entries are
//! rational polynomials in an isolated real algebraic number.
//!
//! Properties of an algebraic witness are checked exactly: `q(α) = 0` holds
//! iff `gcd(p, q)` has a root in the isolating interval of `α`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::demazure::demazure_generic;
use crate::exactla::{rank, RatMatrix};
use crate::groebner::sturm::{sturm_count, Bound, RealRoot};
use crate::mat3;
use crate::rational::{to_decimal_directed, Rational};
use crate::univariate::UniPoly;

/// A real root `α` of `defining`, the only root in `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealAlgebraic {
    defining: UniPoly,
    lo: Rational,
    hi: Rational,
}

impl RealAlgebraic {
    /// `defining` must be nonzero and have exactly one distinct root in
    /// `(lo, hi]`.
    pub fn new(defining: &UniPoly, lo: Rational, hi: Rational) -> Self {
        let defining = defining.squarefree();
        debug_assert_eq!(sturm_count(&defining, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())).ok(), Some(1));
        Self { defining, lo, hi }
    }

    /// The number described by an isolated root of `p`.
    pub fn from_root(p: &UniPoly, root: &RealRoot) -> Self {
        match root {
            RealRoot::Rational(r) => Self::rational(r.clone()),
            RealRoot::Algebraic { lo, hi } => Self::new(p, lo.clone(), hi.clone()),
        }
    }

    pub fn rational(r: Rational) -> Self {
        let defining = UniPoly::new(vec![-r.clone(), Rational::one()]);
        Self { defining, lo: &r - Rational::one(), hi: r }
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// The exact value when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.defining.degree() == Some(1)).then(|| -self.defining.coeff(0) / self.defining.coeff(1))
    }

    pub fn reduce(&self, q: &UniPoly) -> UniPoly {
        if let Some(r) = self.as_rational() {
            return UniPoly::constant(q.eval(&r));
        }
        q.rem(&self.defining)
    }

    /// Whether `q(α) = 0`.
    pub fn is_root_of(&self, q: &UniPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        let g = self.defining.gcd(q);
        if g.degree() == Some(0) {
            return false;
        }
        sturm_count(&g, &Bound::Finite(self.lo.clone()), &Bound::Finite(self.hi.clone())).unwrap_or(0) == 1
    }

    /// Sign of `q(α)`.
    pub fn sign_of(&self, q: &UniPoly) -> Ordering {
        if self.is_root_of(q) {
            return Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return q.sign_at(&r);
        }
        // Shrink the interval until q has no root in it; q keeps one sign there.
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let two = Rational::from_integer(2.into());
        let hi_sign = self.defining.sign_at(&hi);
        loop {
            let free = sturm_count(q, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())).unwrap_or(0) == 0
                && !q.sign_at(&lo).is_eq();
            if free {
                return q.sign_at(&hi);
            }
            let mid = (&lo + &hi) / &two;
            match self.defining.sign_at(&mid) {
                Ordering::Equal => return q.sign_at(&mid),
                s if s == hi_sign => hi = mid,
                _ => lo = mid,
            }
        }
    }

    /// An interval containing `q(α)`.
    pub fn enclose(&self, q: &UniPoly) -> (Rational, Rational) {
        if let Some(r) = self.as_rational() {
            let v = q.eval(&r);
            return (v.clone(), v);
        }
        eval_interval(q, &self.lo, &self.hi)
    }
}

/// Horner evaluation in interval arithmetic.
fn eval_interval(q: &UniPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in q.coeffs().iter().rev() {
        let p = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
        let min = p.iter().min().unwrap().clone();
        let max = p.iter().max().unwrap().clone();
        acc = (min + c, max + c);
    }
    acc
}

/// A 3×3 matrix with entries `e_k(α)`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicWitness {
    pub root: RealAlgebraic,
    pub entries: Vec<UniPoly>,
}

impl AlgebraicWitness {
    pub fn new(root: RealAlgebraic, entries: Vec<UniPoly>) -> Self {
        assert_eq!(entries.len(), 9);
        let entries = entries.iter().map(|e| root.reduce(e)).collect();
        Self { root, entries }
    }

    fn as_mat3(&self) -> mat3::Mat3<UniPoly> {
        mat3::from_slice(&self.entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Exact(RatMatrix),
    Algebraic(AlgebraicWitness),
}

impl Witness {
    /// Collapses an algebraic witness with a rational root to an exact one.
    pub fn simplify(self) -> Self {
        match self {
            Witness::Algebraic(a) => match a.root.as_rational() {
                Some(r) => {
                    Witness::Exact(RatMatrix::from_vec9(&a.entries.iter().map(|e| e.eval(&r)).collect::<Vec<_>>()))
                }
                None => Witness::Algebraic(a),
            },
            w => w,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Witness::Exact(_))
    }

    pub fn exact(&self) -> Option<&RatMatrix> {
        match self {
            Witness::Exact(m) => Some(m),
            Witness::Algebraic(_) => None,
        }
    }

    /// Intervals containing each entry, row-major. Exact entries give
    /// degenerate intervals.
    pub fn enclosure(&self) -> Vec<(Rational, Rational)> {
        match self {
            Witness::Exact(m) => m.data().iter().map(|v| (v.clone(), v.clone())).collect(),
            Witness::Algebraic(a) => a.entries.iter().map(|e| a.root.enclose(e)).collect(),
        }
    }

    /// Entries rendered as decimal intervals, rounded outward.
    pub fn decimal_enclosure(&self, digits: usize) -> Vec<(String, String)> {
        self.enclosure()
            .iter()
            .map(|(lo, hi)| (to_decimal_directed(lo, digits, true), to_decimal_directed(hi, digits, false)))
            .collect()
    }

    /// `Z · vec(W) = 0`.
    pub fn satisfies_epipolar(&self, z: &RatMatrix) -> bool {
        assert_eq!(z.cols(), 9);
        match self {
            Witness::Exact(m) => z.mul_vec(m.data()).expect("9 columns").iter().all(Zero::is_zero),
            Witness::Algebraic(a) => (0..z.rows()).all(|i| {
                let row = z.row(i);
                let combo = row.iter().zip(&a.entries).fold(UniPoly::default(), |acc, (c, e)| &acc + &e.scale(c));
                a.root.is_root_of(&combo)
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Witness::Exact(m) => m.is_zero(),
            Witness::Algebraic(a) => a.entries.iter().all(|e| a.root.is_root_of(e)),
        }
    }

    pub fn has_rank_two(&self) -> bool {
        match self {
            Witness::Exact(m) => rank(m) == 2,
            Witness::Algebraic(a) => {
                let m = a.as_mat3();
                let det = mat3::det(&m);
                let some_minor = (0..3).any(|i| (0..3).any(|j| !a.root.is_root_of(&mat3::minor(&m, i, j))));
                a.root.is_root_of(&det) && some_minor
            }
        }
    }

    /// All ten Demazure cubics vanish and the matrix is nonzero.
    pub fn is_essential(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        match self {
            Witness::Exact(m) => crate::demazure::is_essential(m),
            Witness::Algebraic(a) => demazure_generic(&a.as_mat3()).iter().all(|p| a.root.is_root_of(p)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::sturm::{certified_width, real_roots};
    use crate::rational::{frac, int};

    fn sqrt2() -> RealAlgebraic {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let roots = real_roots(&p, &certified_width()).unwrap();
        RealAlgebraic::from_root(&p, &roots[1])
    }

    #[test]
    fn root_membership_and_sign() {
        let a = sqrt2();
        assert!(a.is_root_of(&UniPoly::from_i64(&[-2, 0, 1])));
        assert!(a.is_root_of(&UniPoly::from_i64(&[-4, 0, 0, 0, 1])));
        assert!(!a.is_root_of(&UniPoly::from_i64(&[2, 0, 1])));
        assert!(!a.is_root_of(&UniPoly::from_i64(&[0, 1, 1])));
        assert_eq!(a.sign_of(&UniPoly::from_i64(&[-1, 1])), Ordering::Greater);
        assert_eq!(a.sign_of(&UniPoly::from_i64(&[-3, 2])), Ordering::Less);
        // s - 1.4142 > 0, s - 1.4143 < 0
        assert_eq!(a.sign_of(&UniPoly::new(vec![frac(-14142, 10000), int(1)])), Ordering::Greater);
        assert_eq!(a.sign_of(&UniPoly::new(vec![frac(-14143, 10000), int(1)])), Ordering::Less);
    }

    #[test]
    fn enclosure_is_tight() {
        let a = sqrt2();
        let (lo, hi) = a.enclose(&UniPoly::from_i64(&[1, 3]));
        assert!(&hi - &lo <= frac(1, 1_000_000_000));
        assert!(lo < frac(5243, 1000) && hi > frac(5242, 1000));
    }

    #[test]
    fn algebraic_rank_two_witness() {
        // diag(s, s, 0) with s = √2: rank 2 and essential.
        let s = UniPoly::x();
        let z = UniPoly::default();
        let entries = vec![s.clone(), z.clone(), z.clone(), z.clone(), s, z.clone(), z.clone(), z.clone(), z];
        let w = Witness::Algebraic(AlgebraicWitness::new(sqrt2(), entries));
        assert!(w.has_rank_two());
        assert!(w.is_essential());
        let zmat = RatMatrix::from_i64(1, 9, &[0, 0, 1, 0, 0, 1, 1, 1, 5]);
        assert!(w.satisfies_epipolar(&zmat));
        let bad = RatMatrix::from_i64(1, 9, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(!w.satisfies_epipolar(&bad));
    }

    #[test]
    fn rational_roots_simplify() {
        let r = RealAlgebraic::rational(frac(3, 2));
        let entries = (0..9).map(|k| UniPoly::from_i64(&[k, 1])).collect();
        let w = Witness::Algebraic(AlgebraicWitness::new(r, entries)).simplify();
        let m = w.exact().unwrap();
        assert_eq!(m.get(0, 1), &frac(5, 2));
    }
}
