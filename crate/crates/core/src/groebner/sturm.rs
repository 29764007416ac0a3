//! Sturm chains, real-root counting and exact root isolation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{lcm_denominators, Rational};
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    #[error("the zero polynomial has no Sturm chain")]
    ZeroPolynomial,
}

/// An interval endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

/// Signed remainder sequence of the squarefree part of a polynomial:
/// `s0 = p`, `s1 = p'`, `s_{k+1} = −rem(s_{k−1}, s_k)`, ending in a nonzero
/// constant.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self, SturmError> {
        if p.is_zero() {
            return Err(SturmError::ZeroPolynomial);
        }
        let p = p.squarefree().primitive();
        let mut seq = vec![p.clone()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem_primitive(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(-r);
            }
        }
        Ok(Self { seq })
    }

    pub fn seq(&self) -> &[UniPoly] {
        &self.seq
    }

    pub fn variations(&self, at: &Bound) -> usize {
        let signs = self.seq.iter().map(|s| match at {
            Bound::Finite(x) => s.sign_at(x),
            Bound::PosInfinity => lead_sign(s),
            Bound::NegInfinity => {
                let l = lead_sign(s);
                if s.degree().unwrap_or(0) % 2 == 1 {
                    l.reverse()
                } else {
                    l
                }
            }
        });
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Bound, b: &Bound) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn lead_sign(p: &UniPoly) -> Ordering {
    p.leading().map_or(Ordering::Equal, |l| l.cmp(&Rational::zero()))
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &UniPoly, a: &Bound, b: &Bound) -> Result<usize, SturmError> {
    Ok(SturmChain::new(p)?.count(a, b))
}

pub fn count_all_real_roots(p: &UniPoly) -> Result<usize, SturmError> {
    sturm_count(p, &Bound::NegInfinity, &Bound::PosInfinity)
}

/// A real root, exactly rational or enclosed in `(lo, hi)` with no other
/// root of the polynomial inside and a sign change across it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Rational(Rational),
    Algebraic { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn lo(&self) -> &Rational {
        match self {
            RealRoot::Rational(r) => r,
            RealRoot::Algebraic { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            RealRoot::Rational(r) => r,
            RealRoot::Algebraic { hi, .. } => hi,
        }
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo() + self.hi()) / Rational::from_integer(2.into())
    }
}

/// A power of two bounding the absolute value of every root, from
/// `|z| ≤ 2 max_i |c_{n−i}/c_n|^{1/i}` with bit lengths in place of
/// logarithms.
fn root_bound(p: &UniPoly) -> Rational {
    let ints = integer_content_free(p);
    let n = ints.len() - 1;
    let lead_bits = ints[n].bits() as i64 - 1;
    let e = (1..=n)
        .filter(|&i| !ints[n - i].is_zero())
        .map(|i| (ints[n - i].bits() as i64 - lead_bits).div_euclid(i as i64) + 1)
        .max()
        .unwrap_or(0)
        .max(0)
        + 1;
    Rational::from_integer(num_traits::pow(BigInt::from(2), e as usize))
}

/// Disjoint half-open intervals `(lo, hi]` each holding exactly one
/// distinct real root, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<(Rational, Rational)>, SturmError> {
    let chain = SturmChain::new(p)?;
    let b = root_bound(&chain.seq()[0]);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Shrinks `(lo, hi]`, which holds exactly one root of the squarefree `p`,
/// until its width is at most `width` or the root is hit exactly.
pub fn refine(p: &UniPoly, lo: &Rational, hi: &Rational, width: &Rational) -> RealRoot {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let hi_sign = p.sign_at(&hi);
    if hi_sign == Ordering::Equal {
        return RealRoot::Rational(hi);
    }
    let two = Rational::from_integer(2.into());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => return RealRoot::Rational(mid),
            s if s == hi_sign => hi = mid,
            _ => lo = mid,
        }
    }
    RealRoot::Algebraic { lo, hi }
}

/// Primitive integer multiple of `p`.
pub fn integer_content_free(p: &UniPoly) -> Vec<BigInt> {
    let l = lcm_denominators(p.coeffs());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| num_integer::Integer::gcd(&acc, v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

/// All distinct real roots of `p`, increasing. Rational roots are returned
/// exactly; irrational ones as intervals of width at most `width`.
pub fn real_roots(p: &UniPoly, width: &Rational) -> Result<Vec<RealRoot>, SturmError> {
    let sq = SturmChain::new(p)?.seq()[0].clone();
    let rationals = rational_roots(&integer_content_free(&sq));
    let mut out = Vec::new();
    for (lo, hi) in isolate_real_roots(&sq)? {
        if let Some(r) = rationals.iter().find(|r| lo < **r && **r <= hi) {
            out.push(RealRoot::Rational(r.clone()));
        } else {
            out.push(refine(&sq, &lo, &hi, width));
        }
    }
    Ok(out)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (1009u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn eval_mod(c: &[u64], x: u64, l: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &v| (acc * x + v) % l)
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, v| acc * x + v)
}

/// Every rational root of the squarefree integer polynomial `ints`
/// (lowest degree first).
///
/// A root `n/d` in lowest terms has `d` dividing the leading coefficient
/// `a`, so `s = a·n/d` is an integer root of the monic polynomial
/// `a^(deg−1) p(x/a)`. Each such `s` reduces to a simple root modulo a
/// prime `ℓ` that divides neither `a` nor the discriminant, and is
/// recovered by Newton lifting to a modulus exceeding twice its size bound.
pub fn rational_roots(ints: &[BigInt]) -> Vec<Rational> {
    let Some(n) = ints.len().checked_sub(1) else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut ints = ints.to_vec();
    if ints[0].is_zero() {
        out.push(Rational::zero());
        ints.remove(0);
    }
    let n = ints.len() - 1;
    if n == 0 {
        return out;
    }
    let lead = ints[n].clone();
    let mut monic: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut lp = BigInt::one();
    for i in (0..n).rev() {
        monic.push(&ints[i] * &lp);
        lp *= &lead;
    }
    monic.reverse();
    monic.push(BigInt::one());
    let deriv: Vec<BigInt> = (1..=n).map(|k| &monic[k] * BigInt::from(k)).collect();
    // |s| ≤ 1 + max |monic_i| (Cauchy), so a modulus above twice that
    // determines s from its symmetric residue.
    let bound = monic[..n].iter().map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let target = bound * BigInt::from(2) + BigInt::one();

    for l in small_primes() {
        let big_l = BigInt::from(l);
        if (&lead % &big_l).is_zero() {
            continue;
        }
        let red = |c: &BigInt| -> u64 {
            let m = c % &big_l;
            let m = if m.is_negative() { m + &big_l } else { m };
            u64::try_from(m).expect("reduced mod a small prime")
        };
        let q: Vec<u64> = monic.iter().map(red).collect();
        let dq: Vec<u64> = deriv.iter().map(red).collect();
        let roots: Vec<u64> = (0..l).filter(|&x| eval_mod(&q, x, l) == 0).collect();
        if roots.iter().any(|&x| eval_mod(&dq, x, l) == 0) {
            continue;
        }
        for r in roots {
            let mut a = BigInt::from(r);
            let mut modulus = big_l.clone();
            while modulus < target {
                modulus = &modulus * &modulus;
                let fa = eval_int(&monic, &a);
                let da = eval_int(&deriv, &a).mod_floor(&modulus);
                let inv = da.extended_gcd(&modulus).x;
                a = (a - fa * inv).mod_floor(&modulus);
            }
            let s = if &a * BigInt::from(2) > modulus { a - &modulus } else { a };
            if eval_int(&monic, &s).is_zero() {
                out.push(Rational::new(s, lead.clone()));
            }
        }
        return out;
    }
    unreachable!("a squarefree polynomial has good reduction at all but finitely many primes")
}

/// `10^-40`, the enclosure width used for certified numeric witnesses.
pub fn certified_width() -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10u32), 40))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn fin(v: i64) -> Bound {
        Bound::Finite(int(v))
    }

    #[test]
    fn rational_roots_by_lifting() {
        let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        // (3x − 2)(x + 5)(x² − 2)
        let p = UniPoly::from_i64(&[20, -26, -16, 13, 3]);
        let mut r = rational_roots(&integer_content_free(&p));
        r.sort();
        assert_eq!(r, vec![int(-5), frac(2, 3)]);
        assert!(rational_roots(&ints(&[-2, 0, 1])).is_empty());
        assert_eq!(rational_roots(&ints(&[0, -2, 0, 1])), vec![int(0)]);
        let big = BigInt::from(10).pow(30u32) + BigInt::from(7);
        let lin = vec![-&big, BigInt::from(3)];
        assert_eq!(rational_roots(&lin), vec![Rational::new(big, 3.into())]);
    }

    #[test]
    fn counts_from_examples() {
        let all = (Bound::NegInfinity, Bound::PosInfinity);
        assert_eq!(sturm_count(&UniPoly::from_i64(&[1, 0, 1]), &all.0, &all.1).unwrap(), 0);
        assert_eq!(sturm_count(&UniPoly::from_i64(&[-1, 0, 1]), &all.0, &all.1).unwrap(), 2);
        let p = UniPoly::from_i64(&[0, -2, 0, 1]);
        assert_eq!(sturm_count(&p, &fin(0), &fin(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &fin(-1), &fin(0)).unwrap(), 1);
        assert!(sturm_count(&UniPoly::default(), &all.0, &all.1).is_err());
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (t-1)^3 (t+2)^2
        let a = UniPoly::from_i64(&[-1, 1]);
        let b = UniPoly::from_i64(&[2, 1]);
        let p = &(&(&a * &a) * &a) * &(&b * &b);
        assert_eq!(count_all_real_roots(&p).unwrap(), 2);
        assert_eq!(sturm_count(&p, &fin(-2), &fin(1)).unwrap(), 1);
    }

    #[test]
    fn chain_ends_in_constant() {
        let c = SturmChain::new(&UniPoly::from_i64(&[3, -1, 4, 1, -5])).unwrap();
        assert_eq!(c.seq().last().unwrap().degree(), Some(0));
    }

    #[test]
    fn roots_are_exact_or_certified() {
        // (2t - 1)(t^2 - 2)
        let p = &UniPoly::from_i64(&[-1, 2]) * &UniPoly::from_i64(&[-2, 0, 1]);
        let roots = real_roots(&p, &certified_width()).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1], RealRoot::Rational(frac(1, 2)));
        for r in [&roots[0], &roots[2]] {
            let RealRoot::Algebraic { lo, hi } = r else { panic!("expected irrational root") };
            assert!(hi - lo <= certified_width());
            assert!((lo * lo - int(2)) * (hi * hi - int(2)) < int(0));
        }
    }

    #[test]
    fn rational_root_with_large_denominator() {
        // (997 t - 1000)(t^2 + 1)
        let p = &UniPoly::from_i64(&[-1000, 997]) * &UniPoly::from_i64(&[1, 0, 1]);
        let roots = real_roots(&p, &certified_width()).unwrap();
        assert_eq!(roots, vec![RealRoot::Rational(frac(1000, 997))]);
    }
}
