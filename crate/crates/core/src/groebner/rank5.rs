//! Real solutions of the Demazure system on a four-dimensional kernel.
//!
//! Projective 3-space is split into the disjoint affine pieces
//! `w_k = 1, w_j = 0 (j > k)` for `k = 3, 2, 1, 0`. On each piece the
//! system is zero-dimensional for generic data; a degrevlex basis gives the
//! quotient algebra, and a separating linear form turns it into a shape
//! basis whose eliminant's real roots are exactly the real solutions.
//!
//! For the chart `w_3 = 1` a faster route is tried first: when the ten
//! cubics can be solved for their cubic monomials, the multiplication
//! matrices on the monomials of degree at most two give the shape basis by
//! linear algebra alone, and no solution lies on `w_3 = 0`.

use num_traits::{One, Zero};

use super::sturm::{certified_width, real_roots, RealRoot};
use super::{buchberger, shape_basis, Ideal, MonomialOrder, ShapeBasis};
use crate::demazure::restricted_system;
use crate::exactla::{solve, RatMatrix};
use crate::mpoly::Exponent;
use crate::mpoly::MPoly;
use crate::rational::lcm_denominators;
use crate::rational::Rational;
use crate::univariate::UniPoly;
use crate::witness::{AlgebraicWitness, RealAlgebraic, Witness};
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealCountStatus {
    /// Every piece was zero-dimensional and in shape position.
    Exact,
    /// Some piece was positive-dimensional or no separating form was found.
    Nongeneric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealCount {
    /// Distinct real projective solutions (meaningful when `Exact`).
    pub count: usize,
    /// Distinct complex projective solutions (meaningful when `Exact`).
    pub complex_count: usize,
    pub status: RealCountStatus,
    /// A real solution as a 3×3 matrix, when one exists.
    pub witness: Option<Witness>,
}

impl RealCount {
    fn nongeneric() -> Self {
        Self { count: 0, complex_count: 0, status: RealCountStatus::Nongeneric, witness: None }
    }
}

/// Counts the real points of the essential variety in the projective span
/// of `basis` (four row-major 9-vectors).
pub fn count_real_rank5(basis: &[Vec<Rational>]) -> RealCount {
    count(basis, true)
}

/// Same as [`count_real_rank5`] but always through Gröbner bases on every
/// piece. Slower; kept as a cross-check of the multiplication-matrix route.
pub fn count_real_rank5_groebner(basis: &[Vec<Rational>]) -> RealCount {
    count(basis, false)
}

fn count(basis: &[Vec<Rational>], fast: bool) -> RealCount {
    let basis: Vec<Vec<Rational>> = basis.iter().map(|v| primitive_vector(v)).collect();
    let basis = &basis[..];
    let n = basis.len();
    let system = restricted_system(basis);
    let mut total = RealCount { count: 0, complex_count: 0, status: RealCountStatus::Exact, witness: None };

    for k in (0..n).rev() {
        let images: Vec<MPoly> = (0..n)
            .map(|j| match j.cmp(&k) {
                std::cmp::Ordering::Less => MPoly::var(k, j),
                std::cmp::Ordering::Equal => MPoly::one(k),
                std::cmp::Ordering::Greater => MPoly::zero(k),
            })
            .collect();
        let gens: Vec<MPoly> = system.iter().map(|p| p.substitute(&images)).collect();

        if k == 0 {
            if gens.iter().all(MPoly::is_zero) {
                total.count += 1;
                total.complex_count += 1;
                total.witness.get_or_insert_with(|| Witness::Exact(crate::exactla::RatMatrix::from_vec9(&basis[0])));
            }
            continue;
        }

        if fast && k == 3 && n == 4 {
            if let Some(shape) = affine_shape(&gens) {
                // The cubic block being invertible also rules out solutions
                // on `w_3 = 0`.
                total.add_piece(basis, k, &shape);
                return total;
            }
        }
        let gb = buchberger(&Ideal::new(gens, MonomialOrder::DegRevLex));
        if gb.contains_one() {
            continue;
        }
        let Some(shape) = separating_shape(&gb, k) else {
            return RealCount::nongeneric();
        };
        total.add_piece(basis, k, &shape);
    }
    total
}

impl RealCount {
    fn add_piece(&mut self, basis: &[Vec<Rational>], k: usize, shape: &ShapeBasis) {
        let distinct = shape.eliminant.squarefree();
        self.complex_count += distinct.degree().unwrap_or(0);
        let roots = real_roots(&distinct, &certified_width()).expect("nonzero eliminant");
        self.count += roots.len();
        if self.witness.is_none() {
            let pick = roots.iter().find(|r| matches!(r, RealRoot::Rational(_))).or_else(|| roots.first());
            if let Some(r) = pick {
                self.witness = Some(witness_from_shape(basis, k, shape, &distinct, r));
            }
        }
    }
}

fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = b[0].len();
    a.iter().map(|row| (0..n).map(|c| row.iter().zip(b).map(|(x, r)| x * &r[c]).sum()).collect()).collect()
}

/// The positive multiple of `v` with coprime integer entries.
fn primitive_vector(v: &[Rational]) -> Vec<Rational> {
    let l = lcm_denominators(v);
    let ints: Vec<_> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Monomials of degree `d` in three variables, in a fixed order.
fn monomials3(d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}

/// Shape basis of ten affine cubics in three variables, computed from the
/// multiplication matrices on the monomials of degree at most two.
///
/// When the cubic coefficient block is invertible, every cubic monomial has
/// a normal form in that set. The resulting matrices are genuine
/// multiplication operators of the quotient (of dimension ten) exactly when
/// they commute, which is checked. `None` sends the caller to the general
/// Gröbner route.
fn affine_shape(gens: &[MPoly]) -> Option<ShapeBasis> {
    if gens.len() != 10 || gens.iter().any(|g| g.num_vars() != 3 || g.total_degree().is_some_and(|d| d > 3)) {
        return None;
    }
    let cubics = monomials3(3);
    let low: Vec<Exponent> = (0..=2).rev().flat_map(monomials3).collect();
    let dim = low.len();

    let block = |cols: &[Exponent]| {
        let data = gens.iter().flat_map(|g| cols.iter().map(|e| g.coeff(e))).collect();
        RatMatrix::new(10, cols.len(), data).expect("shape")
    };
    // Row j: the normal form of cubic monomial j over `low`.
    let nf_cubic = solve(&block(&cubics), &block(&low))?.scale(&-Rational::one());

    let normal_form = |e: &Exponent| -> Vec<Rational> {
        if let Some(i) = low.iter().position(|l| l == e) {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        } else {
            let j = cubics.iter().position(|c| c == e).expect("degree at most three");
            nf_cubic.row(j).to_vec()
        }
    };
    let mult = |var: usize| {
        let cols: Vec<Vec<Rational>> = low
            .iter()
            .map(|b| {
                let mut e = b.clone();
                e[var] += 1;
                normal_form(&e)
            })
            .collect();
        RatMatrix::from_rows(cols).expect("square").transpose()
    };
    let ops: Vec<RatMatrix> = (0..3).map(mult).collect();
    // Integer operators `scale · op` keep the products free of gcds.
    let scale = lcm_denominators(ops.iter().flat_map(|m| m.data()));
    let int_ops: Vec<Vec<Vec<BigInt>>> = ops
        .iter()
        .map(|m| (0..dim).map(|r| m.row(r).iter().map(|c| c.numer() * (&scale / c.denom())).collect()).collect())
        .collect();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if int_mul(&int_ops[i], &int_ops[j]) != int_mul(&int_ops[j], &int_ops[i]) {
            return None;
        }
    }

    let one = low.iter().position(|e| e.iter().all(|&d| d == 0)).expect("constant monomial");
    let var_index = |v: usize| {
        low.iter().position(|e| e.iter().enumerate().all(|(i, &d)| d == u32::from(i == v))).expect("variable")
    };
    let forms = std::iter::once([0i64, 0, 1]).chain((1..=24i64).map(|c| [1, c, c * c]));
    for form in forms {
        let op: Vec<Vec<BigInt>> =
            (0..dim).map(|r| (0..dim).map(|c| (0..3).map(|v| &int_ops[v][r][c] * form[v]).sum()).collect()).collect();
        // u_k = (scale · op)^k e_1, so the Krylov vectors are u_k / scale^k.
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(dim + 1);
        let mut cur = vec![BigInt::zero(); dim];
        cur[one] = BigInt::one();
        for _ in 0..=dim {
            let next = op.iter().map(|row| row.iter().zip(&cur).map(|(a, b)| a * b).sum()).collect();
            powers.push(std::mem::replace(&mut cur, next));
        }
        let mut krylov = RatMatrix::zeros(dim, dim);
        let mut targets = RatMatrix::zeros(dim, 4);
        for r in 0..dim {
            for (k, u) in powers[..dim].iter().enumerate() {
                krylov.set(r, k, Rational::from_integer(u[r].clone()));
            }
            targets.set(r, 0, Rational::from_integer(powers[dim][r].clone()));
        }
        for v in 0..3 {
            targets.set(var_index(v), v + 1, Rational::one());
        }
        let Some(sol) = solve(&krylov, &targets) else { continue };
        let scale_pow: Vec<Rational> =
            std::iter::successors(Some(Rational::one()), |p| Some(p * &scale)).take(dim + 1).collect();
        let mut elim: Vec<Rational> = (0..dim).map(|k| -sol.get(k, 0) / &scale_pow[dim - k]).collect();
        elim.push(Rational::one());
        let eliminant = UniPoly::new(elim);
        // A repeated root of the eliminant means a non-reduced point, which
        // the general route handles.
        if eliminant.squarefree().degree() != eliminant.degree() {
            return None;
        }
        let coords =
            (0..3).map(|v| UniPoly::new((0..dim).map(|k| sol.get(k, v + 1) * &scale_pow[k]).collect())).collect();
        let form = form.iter().map(|&c| Rational::from_integer(c.into())).collect();
        return Some(ShapeBasis { form, coords, eliminant });
    }
    None
}

/// Tries the last variable, then forms `Σ c^i w_i` for `c = 1, 2, …`.
fn separating_shape(gb: &Ideal, k: usize) -> Option<ShapeBasis> {
    let mut last = vec![Rational::zero(); k];
    last[k - 1] = Rational::one();
    if let Some(s) = shape_basis(gb, &last) {
        return Some(s);
    }
    (1..=24i64).find_map(|c| {
        let c = Rational::from_integer(c.into());
        let mut form = Vec::with_capacity(k);
        let mut p = Rational::one();
        for _ in 0..k {
            form.push(p.clone());
            p *= &c;
        }
        shape_basis(gb, &form)
    })
}

fn witness_from_shape(
    basis: &[Vec<Rational>],
    k: usize,
    shape: &ShapeBasis,
    eliminant: &UniPoly,
    root: &RealRoot,
) -> Witness {
    if let RealRoot::Rational(r) = root {
        let mut point: Vec<Rational> = shape.coords.iter().map(|g| g.eval(r)).collect();
        point.push(Rational::one());
        let entries: Vec<Rational> = (0..9).map(|e| point.iter().zip(basis).map(|(w, b)| w * &b[e]).sum()).collect();
        return Witness::Exact(crate::exactla::RatMatrix::from_vec9(&entries));
    }
    let alpha = RealAlgebraic::from_root(eliminant, root);
    let entries: Vec<UniPoly> = (0..9)
        .map(|e| {
            let mut acc = UniPoly::constant(basis[k][e].clone());
            for (i, g) in shape.coords.iter().enumerate() {
                acc = &acc + &g.scale(&basis[i][e]);
            }
            acc
        })
        .collect();
    Witness::Algebraic(AlgebraicWitness::new(alpha, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{build_data_matrices, kernel_basis, Correspondence};

    #[test]
    fn four_skew_like_generators_count() {
        // Span of vec([e1]x), vec([e2]x), vec([e3]x), vec(I): the solutions are
        // the skew matrices (a whole plane), so the count is nongeneric.
        let sk = |v: [i64; 3]| {
            let m = crate::exactla::skew(&v.map(|c| Rational::from_integer(c.into())));
            m.into_data()
        };
        let id = crate::exactla::RatMatrix::identity(3).into_data();
        let r = count_real_rank5(&[sk([1, 0, 0]), sk([0, 1, 0]), sk([0, 0, 1]), id]);
        assert_eq!(r.status, RealCountStatus::Nongeneric);
    }

    #[test]
    fn five_correspondences_with_real_solution() {
        // A pure translation along x: y = x + (1/z, 0)-style data from points
        // seen by [I|0] and [I|t], t = (1, 0, 0).
        let pts: [[i64; 3]; 5] = [[1, 2, 3], [-1, 1, 2], [2, -1, 4], [0, 3, 5], [3, 1, 1]];
        let corrs: Vec<Correspondence> = pts
            .iter()
            .map(|p| {
                let z = Rational::from_integer(p[2].into());
                let x = [Rational::from_integer(p[0].into()) / &z, Rational::from_integer(p[1].into()) / &z];
                let y = [Rational::from_integer((p[0] + 1).into()) / &z, x[1].clone()];
                Correspondence::new(x, y)
            })
            .collect();
        let d = build_data_matrices(&corrs);
        let k = kernel_basis(&d.z);
        assert_eq!(k.len(), 4);
        let r = count_real_rank5(&k);
        assert_eq!(r.status, RealCountStatus::Exact);
        assert!(r.count >= 1);
        let w = r.witness.unwrap();
        assert!(w.is_essential());
        assert!(w.satisfies_epipolar(&d.z));
    }
}
