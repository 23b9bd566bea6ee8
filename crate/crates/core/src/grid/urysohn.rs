//! Discrete Urysohn functions from graph distances.
//!
//! `f = d(., C) / (d(., C) + d(., D))` with closed-mode distances, so the
//! function is constant on closed sets that touch only at corners. All
//! values are exact rationals.

use super::{CellFunction, GridComplex, GridError, Mode};
use crate::bits::Bits;
use crate::rational::{q0, q1, Q};

/// The Urysohn function for disjoint nonempty closed cell sets: 0 on `c`,
/// 1 on `d`, interpolating by closed-mode graph distance in between.
pub fn urysohn(complex: &GridComplex, c: &Bits, d: &Bits) -> Result<CellFunction, GridError> {
    if c.intersects(d) {
        return Err(GridError::NotDisjoint("C", "D"));
    }
    if c.is_empty() {
        return Err(GridError::EmptySet("C"));
    }
    if d.is_empty() {
        return Err(GridError::EmptySet("D"));
    }
    Ok(urysohn_lenient(complex, c, d))
}

/// As [`urysohn`], but tolerates empty sides: constant 1 when `c` is
/// empty, constant 0 when `d` is empty, constant 1/2 when both are.
/// Cells unreachable from either set get value 1/2.
pub fn urysohn_lenient(complex: &GridComplex, c: &Bits, d: &Bits) -> CellFunction {
    match (c.is_empty(), d.is_empty()) {
        (true, true) => return CellFunction::constant(complex, Q::new(1, 2)),
        (true, false) => return CellFunction::constant(complex, q1()),
        (false, true) => return CellFunction::constant(complex, q0()),
        _ => {}
    }
    let all = complex.full_set();
    let dc = complex.distances(&all, c, Mode::Closed);
    let dd = complex.distances(&all, d, Mode::Closed);
    let values = (0..complex.cell_count())
        .map(|cell| match (dc[cell], dd[cell]) {
            (Some(a), Some(b)) => Q::new(a as i128, (a + b) as i128),
            (Some(_), None) => q0(),
            (None, Some(_)) => q1(),
            (None, None) => Q::new(1, 2),
        })
        .collect();
    CellFunction { values }
}

/// A pliable foursome of closed cell sets: `C n D = C n F = D n G = 0`.
#[derive(Debug, Clone)]
pub struct Foursome {
    pub c: Bits,
    pub d: Bits,
    pub f: Bits,
    pub g: Bits,
}

impl Foursome {
    pub fn check_pliable(&self) -> Result<(), GridError> {
        if self.c.intersects(&self.d) {
            return Err(GridError::NotPliable("C", "D"));
        }
        if self.c.intersects(&self.f) {
            return Err(GridError::NotPliable("C", "F"));
        }
        if self.d.intersects(&self.g) {
            return Err(GridError::NotPliable("D", "G"));
        }
        Ok(())
    }
}

/// The Urysohn function of a pliable foursome: `f = (u + v)/2` with
/// `u = urysohn(C, F u D)` and `v = urysohn(C u G, D)`. Then `f[C] = {0}`,
/// `f[G] <= 1/2`, `f[F] >= 1/2` and `f[D] = {1}`.
pub fn foursome_urysohn(
    complex: &GridComplex,
    foursome: &Foursome,
) -> Result<CellFunction, GridError> {
    foursome.check_pliable()?;
    let u = urysohn_lenient(complex, &foursome.c, &foursome.f.union(&foursome.d));
    let v = urysohn_lenient(complex, &foursome.c.union(&foursome.g), &foursome.d);
    let half = Q::new(1, 2);
    let values: Vec<Q> = u
        .values
        .iter()
        .zip(&v.values)
        .map(|(a, b)| (*a + *b) * half)
        .collect();
    let f = CellFunction { values };
    debug_assert!(verify_foursome_ranges(&f, foursome));
    Ok(f)
}

/// The four range conditions of a Urysohn function for a foursome.
pub fn verify_foursome_ranges(f: &CellFunction, foursome: &Foursome) -> bool {
    let half = Q::new(1, 2);
    foursome.c.iter().all(|c| f.get(c) == q0())
        && foursome.d.iter().all(|c| f.get(c) == q1())
        && foursome.g.iter().all(|c| f.get(c) <= half)
        && foursome.f.iter().all(|c| f.get(c) >= half)
}
