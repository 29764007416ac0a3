//! A small exact Gröbner basis engine over ℚ.
//!
//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller pair update (which applies both of Buchberger's criteria).
//! Intended for desk-scale systems: a handful of variables, low degree.

pub mod rank5;
pub mod sturm;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::mpoly::{Exponent, MPoly};
use crate::rational::Rational;
use crate::univariate::UniPoly;

pub use rank5::{count_real_rank5, count_real_rank5_groebner, RealCount, RealCountStatus};
pub use sturm::{sturm_count, Bound, SturmChain, SturmError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generators use different numbers of variables")]
    MixedArity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree, then reverse lexicographic with the last variable smallest.
    DegRevLex,
    /// Lexicographic with `u_1 > u_2 > … > u_n`.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub gens: Vec<MPoly>,
    pub order: MonomialOrder,
    num_vars: usize,
}

impl Ideal {
    /// The number of variables is taken from the first generator.
    pub fn new(gens: Vec<MPoly>, order: MonomialOrder) -> Self {
        let num_vars = gens.first().map_or(0, MPoly::num_vars);
        Self { gens, order, num_vars }
    }

    pub fn with_vars(num_vars: usize, gens: Vec<MPoly>, order: MonomialOrder) -> Self {
        Self { gens, order, num_vars }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// True if the (reduced) generators contain a nonzero constant.
    pub fn contains_one(&self) -> bool {
        self.gens.iter().any(|g| !g.is_zero() && g.total_degree() == Some(0))
    }
}

/// Terms sorted by decreasing monomial under `order`.
#[derive(Debug, Clone)]
pub(crate) struct Poly {
    terms: Vec<(Exponent, Rational)>,
    sugar: u32,
}

impl Poly {
    fn from_mpoly(p: &MPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Exponent, Rational)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = p.total_degree().unwrap_or(0) as u32;
        Self { terms, sugar }
    }

    fn to_mpoly(&self, n: usize) -> MPoly {
        MPoly::from_terms(n, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Exponent {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in self.terms.iter_mut() {
                    *c *= &inv;
                }
            }
        }
    }

    /// `self − c · x^shift · q`, keeping the order.
    fn sub_mul(&self, c: &Rational, shift: &[u32], q: &Poly, order: MonomialOrder) -> Vec<(Exponent, Rational)> {
        let mut out = Vec::with_capacity(self.terms.len() + q.terms.len());
        let mut i = 0;
        let mut qi = q.terms.iter().map(|(e, v)| (mul_mono(e, shift), v));
        let mut next_q = qi.next();
        while i < self.terms.len() || next_q.is_some() {
            let ord = match (&self.terms.get(i), &next_q) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, v) = next_q.take().unwrap();
                    out.push((e, -(c * v)));
                    next_q = qi.next();
                }
                Ordering::Equal => {
                    let (e, v) = next_q.take().unwrap();
                    let nv = &self.terms[i].1 - c * v;
                    if !nv.is_zero() {
                        out.push((e, nv));
                    }
                    i += 1;
                    next_q = qi.next();
                }
            }
        }
        out
    }
}

fn mul_mono(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> Exponent {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn mdeg(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Fully reduces `f` modulo `basis` (every term, not only the leading one).
fn reduce(f: &Poly, basis: &[&Poly], order: MonomialOrder) -> Poly {
    let mut rest = f.clone();
    let mut out: Vec<(Exponent, Rational)> = Vec::new();
    while !rest.is_zero() {
        let (lm, lc) = rest.terms[0].clone();
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let shift = quotient(&lm, g.lm());
                let c = &lc / &g.terms[0].1;
                let sugar = rest.sugar.max(g.sugar + mdeg(&shift));
                rest = Poly { terms: rest.sub_mul(&c, &shift, g, order), sugar };
            }
            None => {
                out.push((lm, lc));
                rest.terms.remove(0);
            }
        }
    }
    Poly { terms: out, sugar: f.sugar.max(rest.sugar) }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<Poly>,
    active: BTreeSet<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let l = lcm(a.lm(), b.lm());
        let sugar = (a.sugar + mdeg(&l) - mdeg(a.lm())).max(b.sugar + mdeg(&l) - mdeg(b.lm()));
        Pair { i, j, lcm: l, sugar }
    }

    /// Gebauer–Möller update with the new basis element `h`.
    fn update(&mut self, h: usize) {
        let hlm = self.polys[h].lm().clone();
        let cand: Vec<Pair> = self.active.iter().map(|&g| self.pair(h, g)).collect();

        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in cand.iter().enumerate() {
            let g_lm = self.polys[p.j].lm();
            if coprime(&hlm, g_lm) {
                kept.push(Pair { i: p.i, j: p.j, lcm: p.lcm.clone(), sugar: p.sugar });
                continue;
            }
            let dominated_later = cand[k + 1..].iter().any(|q| divides(&q.lcm, &p.lcm));
            let dominated_kept = kept.iter().any(|q| divides(&q.lcm, &p.lcm));
            if !dominated_later && !dominated_kept {
                kept.push(Pair { i: p.i, j: p.j, lcm: p.lcm.clone(), sugar: p.sugar });
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !coprime(&hlm, self.polys[p.j].lm())).collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lhi = lcm(polys[p.i].lm(), &hlm);
            let lhj = lcm(polys[p.j].lm(), &hlm);
            !(divides(&hlm, &p.lcm) && lhi != p.lcm && lhj != p.lcm)
        });
        self.pairs.extend(new_pairs);

        let polys = &self.polys;
        self.active.retain(|&g| !divides(&hlm, polys[g].lm()));
        self.active.insert(h);
    }

    fn take_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Poly {
        let (a, b) = (&self.polys[p.i], &self.polys[p.j]);
        let sa = quotient(&p.lcm, a.lm());
        let sb = quotient(&p.lcm, b.lm());
        // Both are monic: S = x^sa·a − x^sb·b.
        let zero = Poly { terms: Vec::new(), sugar: 0 };
        let left = Poly { terms: zero.sub_mul(&-Rational::one(), &sa, a, self.order), sugar: 0 };
        Poly { terms: left.sub_mul(&Rational::one(), &sb, b, self.order), sugar: p.sugar }
    }

    fn basis(&self) -> Vec<&Poly> {
        self.active.iter().map(|&k| &self.polys[k]).collect()
    }

    fn add(&mut self, mut p: Poly) -> bool {
        p.make_monic();
        let constant = mdeg(p.lm()) == 0;
        self.polys.push(p);
        let idx = self.polys.len() - 1;
        self.update(idx);
        constant
    }
}

/// Reduced Gröbner basis of `ideal` for its monomial order, sorted by
/// increasing leading monomial.
pub fn buchberger(ideal: &Ideal) -> Ideal {
    let order = ideal.order;
    let n = ideal.num_vars();
    let mut engine = Engine { order, polys: Vec::new(), active: BTreeSet::new(), pairs: Vec::new() };

    let mut input: Vec<Poly> = ideal.gens.iter().filter(|g| !g.is_zero()).map(|g| Poly::from_mpoly(g, order)).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let mut unit = false;
    for f in input {
        let r = reduce(&f, &engine.basis(), order);
        if !r.is_zero() && engine.add(r) {
            unit = true;
            break;
        }
    }
    while !unit {
        let Some(p) = engine.take_pair() else { break };
        let s = engine.spoly(&p);
        let r = reduce(&s, &engine.basis(), order);
        if !r.is_zero() && engine.add(r) {
            unit = true;
        }
    }
    if unit {
        return Ideal::with_vars(n, vec![MPoly::one(n)], order);
    }

    // Minimalize, then interreduce.
    let mut basis: Vec<Poly> = engine.basis().into_iter().cloned().collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| divides(m.lm(), g.lm())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let mut r = reduce(&minimal[k], &others, order);
        r.make_monic();
        reduced.push(r);
    }
    Ideal::with_vars(n, reduced.iter().map(|p| p.to_mpoly(n)).collect(), order)
}

/// Remainder of `f` on division by `gb` (which should be a Gröbner basis for
/// the remainder to be canonical).
pub fn normal_form(f: &MPoly, gb: &Ideal) -> MPoly {
    let order = gb.order;
    let polys: Vec<Poly> = gb.gens.iter().filter(|g| !g.is_zero()).map(|g| Poly::from_mpoly(g, order)).collect();
    let refs: Vec<&Poly> = polys.iter().collect();
    reduce(&Poly::from_mpoly(f, order), &refs, order).to_mpoly(f.num_vars())
}

pub fn leading_monomial(p: &MPoly, order: MonomialOrder) -> Option<Exponent> {
    p.terms().map(|(e, _)| e).max_by(|a, b| order.cmp(a, b)).cloned()
}

/// Whether the homogeneous ideal has no zero in projective space: the
/// leading-term ideal of its degrevlex basis contains a pure power of every
/// variable.
pub fn projective_empty(ideal: &Ideal) -> Result<bool, GroebnerError> {
    check_arity(ideal)?;
    if let Some(k) = ideal.gens.iter().position(|g| !g.is_homogeneous()) {
        return Err(GroebnerError::NotHomogeneous(k));
    }
    let gb = buchberger(&Ideal::new(ideal.gens.clone(), MonomialOrder::DegRevLex));
    Ok(has_pure_powers(&gb))
}

fn check_arity(ideal: &Ideal) -> Result<(), GroebnerError> {
    let n = ideal.num_vars();
    if ideal.gens.iter().any(|g| g.num_vars() != n) {
        return Err(GroebnerError::MixedArity);
    }
    Ok(())
}

fn has_pure_powers(gb: &Ideal) -> bool {
    let n = gb.num_vars();
    let lms: Vec<Exponent> = gb.gens.iter().filter_map(|g| leading_monomial(g, gb.order)).collect();
    (0..n).all(|v| lms.iter().any(|e| e.iter().enumerate().all(|(k, &x)| k == v || x == 0)))
}

/// Monomials outside the leading-term ideal, if finitely many (the ideal is
/// zero-dimensional). For the unit ideal the list is empty.
pub fn standard_monomials(gb: &Ideal) -> Option<Vec<Exponent>> {
    if !has_pure_powers(gb) {
        return None;
    }
    let n = gb.num_vars();
    let lms: Vec<Exponent> = gb.gens.iter().filter_map(|g| leading_monomial(g, gb.order)).collect();
    let bounds: Vec<u32> = (0..n)
        .map(|v| {
            lms.iter().filter(|e| e.iter().enumerate().all(|(k, &x)| k == v || x == 0)).map(|e| e[v]).min().unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if !lms.iter().any(|l| divides(l, &cur)) {
            out.push(cur.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| gb.order.cmp(a, b));
                return Some(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// Lex basis in shape position: `u_i − g_i(ℓ)` for every variable and the
/// eliminant `h(ℓ)` of a linear form `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeBasis {
    /// `ℓ = Σ form_i u_i`.
    pub form: Vec<Rational>,
    /// Each variable as a polynomial in `ℓ`, reduced modulo `eliminant`.
    pub coords: Vec<UniPoly>,
    /// Monic, of degree equal to the number of solutions counted with
    /// multiplicity.
    pub eliminant: UniPoly,
}

/// Given a Gröbner basis of a zero-dimensional ideal, returns the shape
/// basis with respect to the linear form `form`, or `None` when `form`
/// does not generate the quotient algebra (non-separating form or a
/// non-radical ideal).
pub fn shape_basis(gb: &Ideal, form: &[Rational]) -> Option<ShapeBasis> {
    let n = gb.num_vars();
    assert_eq!(form.len(), n);
    let std = standard_monomials(gb)?;
    let dim = std.len();
    if dim == 0 {
        return None;
    }
    let index = |e: &Exponent| std.iter().position(|s| s == e);
    let to_vec = |p: &MPoly| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (e, c) in p.terms() {
            v[index(e).expect("normal form has standard support")] = c.clone();
        }
        v
    };
    let ell = MPoly::linear(form);

    // Normal forms of ℓ^0 … ℓ^dim in the standard monomial basis.
    let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(dim + 1);
    let mut cur = normal_form(&MPoly::one(n), gb);
    for _ in 0..=dim {
        powers.push(to_vec(&cur));
        cur = normal_form(&(&cur * &ell), gb);
    }

    // Express ℓ^dim and each variable in the basis ℓ^0 … ℓ^{dim−1}.
    let mut targets: Vec<Vec<Rational>> = vec![powers[dim].clone()];
    for v in 0..n {
        targets.push(to_vec(&normal_form(&MPoly::var(n, v), gb)));
    }
    let sols = solve_in_span(&powers[..dim], &targets)?;
    let mut elim = sols[0].iter().map(|c| -c).collect::<Vec<_>>();
    elim.push(Rational::one());
    let eliminant = UniPoly::new(elim);
    let coords = sols[1..].iter().map(|c| UniPoly::new(c.clone())).collect();
    Some(ShapeBasis { form: form.to_vec(), coords, eliminant })
}

/// Solves `Σ_k x_k basis[k] = target` for each target; `None` if the basis
/// vectors are dependent.
fn solve_in_span(basis: &[Vec<Rational>], targets: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    use crate::exactla::{rref, RatMatrix};
    let d = basis.len();
    let rows = basis[0].len();
    let cols = d + targets.len();
    let mut m = RatMatrix::zeros(rows, cols);
    for (k, b) in basis.iter().enumerate() {
        for (r, v) in b.iter().enumerate() {
            m.set(r, k, v.clone());
        }
    }
    for (k, t) in targets.iter().enumerate() {
        for (r, v) in t.iter().enumerate() {
            m.set(r, d + k, v.clone());
        }
    }
    let (red, pivots) = rref(&m);
    if pivots.len() < d || pivots[..d].iter().enumerate().any(|(i, &p)| p != i) || pivots.len() > d {
        return None;
    }
    Some((0..targets.len()).map(|k| (0..d).map(|i| red.get(i, d + k).clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn basis_of_coordinate_ideal() {
        let gb = buchberger(&Ideal::new(vec![x(2, 0), x(2, 1)], MonomialOrder::DegRevLex));
        assert_eq!(gb.gens.len(), 2);
        assert!(gb.gens.contains(&x(2, 0)) && gb.gens.contains(&x(2, 1)));
    }

    #[test]
    fn lex_elimination_example() {
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = vec![&a.pow(2) - &b, &b.pow(2) - &a];
        let gb = buchberger(&Ideal::new(gens.clone(), MonomialOrder::Lex));
        let target = &b.pow(4) - &b;
        assert!(gb.gens.contains(&target), "{:?}", gb.gens);
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
    }

    #[test]
    fn unit_ideal() {
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = vec![&a * &b - MPoly::one(2), a.clone(), b];
        let gb = buchberger(&Ideal::new(gens, MonomialOrder::DegRevLex));
        assert!(gb.contains_one());
    }

    #[test]
    fn projective_emptiness_examples() {
        let gens = vec![x(3, 0), x(3, 1), x(3, 2)];
        assert!(projective_empty(&Ideal::new(gens, MonomialOrder::DegRevLex)).unwrap());
        assert!(!projective_empty(&Ideal::new(vec![x(3, 0)], MonomialOrder::DegRevLex)).unwrap());
        let bad = vec![&x(2, 0) + &MPoly::one(2)];
        assert!(projective_empty(&Ideal::new(bad, MonomialOrder::DegRevLex)).is_err());
    }

    #[test]
    fn degrevlex_ordering() {
        let o = MonomialOrder::DegRevLex;
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[1, 1, 0], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn shape_basis_of_two_points() {
        // Points (1, 2) and (3, 4): x - y + 1 = 0, (y - 2)(y - 4) = 0
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = vec![
            &(&a - &b) + &MPoly::one(2),
            &(&b - &MPoly::constant(2, int(2))) * &(&b - &MPoly::constant(2, int(4))),
        ];
        let gb = buchberger(&Ideal::new(gens, MonomialOrder::DegRevLex));
        let sb = shape_basis(&gb, &[int(0), int(1)]).unwrap();
        assert_eq!(sb.eliminant, UniPoly::from_i64(&[8, -6, 1]));
        assert_eq!(sb.coords[0], UniPoly::from_i64(&[-1, 1]));
        assert_eq!(sb.coords[1], UniPoly::from_i64(&[0, 1]));
        // x alone does not separate the double point structure here? It does.
        assert!(shape_basis(&gb, &[int(1), int(0)]).is_some());
        assert_eq!(standard_monomials(&gb).unwrap().len(), 2);
    }

    #[test]
    fn non_separating_form_rejected() {
        // Points (0, 1) and (0, -1): x separates nothing.
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = vec![a.clone(), &b.pow(2) - &MPoly::one(2)];
        let gb = buchberger(&Ideal::new(gens, MonomialOrder::DegRevLex));
        assert!(shape_basis(&gb, &[int(1), int(0)]).is_none());
        assert!(shape_basis(&gb, &[int(0), int(1)]).is_some());
    }
}
