//! 3×3 matrix formulas generic over the entry ring, shared by the rational,
//! multivariate and univariate code paths.

use std::ops::{Add, Mul, Sub};

pub type Mat3<T> = [[T; 3]; 3];

pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}

impl<T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>> Ring for T {}

pub fn det<T: Ring>(m: &Mat3<T>) -> T {
    let c0 = minor(m, 0, 0);
    let c1 = minor(m, 0, 1);
    let c2 = minor(m, 0, 2);
    m[0][0].clone() * c0 - m[0][1].clone() * c1 + m[0][2].clone() * c2
}

/// Determinant after deleting row `i` and column `j`.
pub fn minor<T: Ring>(m: &Mat3<T>, i: usize, j: usize) -> T {
    let r: [usize; 2] = match i {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let c: [usize; 2] = match j {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    m[r[0]][c[0]].clone() * m[r[1]][c[1]].clone() - m[r[0]][c[1]].clone() * m[r[1]][c[0]].clone()
}

pub fn mul<T: Ring>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone() + a[i][2].clone() * b[2][j].clone()
        })
    })
}

pub fn transpose<T: Clone>(a: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn from_slice<T: Clone>(v: &[T]) -> Mat3<T> {
    assert_eq!(v.len(), 9);
    std::array::from_fn(|i| std::array::from_fn(|j| v[3 * i + j].clone()))
}

pub fn flatten<T: Clone>(m: &Mat3<T>) -> Vec<T> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}
