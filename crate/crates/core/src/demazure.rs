//! The ten Demazure cubics cutting out the essential variety: the nine
//! entries of `2·EEᵀE − tr(EEᵀ)·E` followed by `det(E)`.

use crate::exactla::RatMatrix;
use crate::mat3::{self, Mat3, Ring};
use crate::mpoly::MPoly;
use crate::rational::Rational;

/// Evaluates the ten cubics over any commutative ring. Entries of the trace
/// part come first in row-major order; the determinant is last.
pub fn demazure_generic<T: Ring>(e: &Mat3<T>) -> [T; 10] {
    let et = mat3::transpose(e);
    let eet = mat3::mul(e, &et);
    let eete = mat3::mul(&eet, e);
    let mut tr = eet[0][0].clone();
    tr = tr + eet[1][1].clone();
    tr = tr + eet[2][2].clone();
    let det = mat3::det(e);
    std::array::from_fn(|k| {
        if k == 9 {
            return det.clone();
        }
        let (i, j) = (k / 3, k % 3);
        let twice = eete[i][j].clone() + eete[i][j].clone();
        twice - tr.clone() * e[i][j].clone()
    })
}

/// Demazure values of a rational 3×3 matrix.
pub fn demazure(e: &RatMatrix) -> [Rational; 10] {
    assert!(e.rows() == 3 && e.cols() == 3, "demazure needs a 3x3 matrix");
    demazure_generic(&mat3::from_slice(e.data()))
}

pub fn is_essential(e: &RatMatrix) -> bool {
    !e.is_zero() && demazure(e).iter().all(num_traits::Zero::is_zero)
}

/// The ten cubics restricted to `E(w) = Σ w_i V_i`, as forms in `w`.
pub fn restricted_system(basis: &[Vec<Rational>]) -> Vec<MPoly> {
    let e: Mat3<MPoly> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let coeffs: Vec<Rational> = basis.iter().map(|v| v[3 * i + j].clone()).collect();
            MPoly::linear(&coeffs)
        })
    });
    demazure_generic(&e).into_iter().collect()
}
