//! Correspondence data of the worked examples, shared by test targets.

#![allow(dead_code)]

use epicheck::exactla::{rank, Correspondence, RatMatrix};
use epicheck::rational::{frac, int, Rational};

type Pt = (Rational, Rational);

fn pt(a: i64, b: i64) -> Pt {
    (int(a), int(b))
}

fn corrs(ys: &[Pt], xs: &[Pt]) -> Vec<Correspondence> {
    ys.iter()
        .zip(xs)
        .map(|(y, x)| Correspondence::new([x.0.clone(), x.1.clone()], [y.0.clone(), y.1.clone()]))
        .collect()
}

pub fn only_rank_ones() -> Vec<Correspondence> {
    let ys = [pt(-3, 5), pt(5, -2), pt(8, -9), pt(11, -16), pt(14, -23), pt(17, -30), pt(20, -37)];
    let xs = [pt(10, 4), pt(-7, 0), pt(-4, 4), pt(-7, 1), pt(0, -1), pt(1, -8), pt(1, -4)];
    corrs(&ys, &xs)
}

pub fn det_not_cube() -> Vec<Correspondence> {
    let ys = [pt(-2, -3), pt(-2, -1), pt(-2, 2), pt(2, -1), pt(2, 0), pt(6, -5), pt(7, -6)];
    let xs = [pt(2, 0), pt(3, -2), pt(4, -4), pt(5, -6), pt(6, -8), pt(-3, -2), pt(2, -2)];
    corrs(&ys, &xs)
}

pub fn cube_without_rank_two() -> Vec<Correspondence> {
    let ys = [pt(0, 1), pt(1, 0), pt(2, 5), (int(3), frac(-5, 12)), pt(4, 7), (int(5), frac(-11, 8)), pt(6, 9)];
    // First point: (1/5, -1) is the value for which I and A2 span the kernel;
    // with -1/5 the first constraint fails for A2 and rank(Z) becomes 8.
    let xs = [
        (frac(1, 5), int(-1)),
        pt(-1, -7),
        (frac(-1, 2), int(0)),
        pt(-2, -12),
        (frac(-57, 4), int(8)),
        pt(2, 8),
        (int(0), frac(-1, 9)),
    ];
    corrs(&ys, &xs)
}

pub fn cube_with_rank_two() -> Vec<Correspondence> {
    let ys =
        [pt(1, 0), (frac(1, 3), int(0)), (frac(1, 3), int(-1)), pt(1, -1), (frac(1, 2), int(-1)), pt(4, -2), pt(2, -2)];
    let xs = [pt(-1, 0), pt(-3, 0), pt(6, 3), pt(0, 1), pt(2, 2), (int(0), frac(1, 2)), (frac(1, 2), int(1))];
    corrs(&ys, &xs)
}

pub fn all_complex_essentials() -> Vec<Correspondence> {
    let ys = [pt(2, 0), pt(5, 4), pt(9, 6), pt(2, 5), pt(1, 4)];
    let xs = [pt(3, 0), pt(9, 1), pt(1, 2), pt(8, 8), pt(4, 8)];
    corrs(&ys, &xs)
}

pub fn mat(v: &[i64]) -> RatMatrix {
    RatMatrix::from_i64(3, 3, v)
}

/// Whether the rows of `a` lie in the span of the rows of `b`.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let stacked = RatMatrix::from_rows(a.iter().chain(b).cloned().collect()).unwrap();
    let rb = rank(&RatMatrix::from_rows(b.to_vec()).unwrap());
    rank(&stacked) == rb && rb == a.len()
}
