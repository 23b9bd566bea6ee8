//! Monotone-light factorization of cell maps.
//!
//! Any map factors as light ∘ monotone: collapse the closed-mode
//! components of its fibers. The middle space `Z` is the set of those
//! components; `mu` sends a cell to its component (connected fibers, so
//! monotone) and `lambda` sends a component to the function value (no two
//! adjacent components share a value, so light).

use super::{GridComplex, Mode};
use crate::bits::Bits;
use std::collections::BTreeMap;

/// Result of factoring `f = lambda . mu`.
#[derive(Debug, Clone)]
pub struct Factorization<L> {
    /// Cell sets of the middle space, ordered by (label, smallest cell).
    pub z_classes: Vec<Bits>,
    /// `mu[cell]` = index into `z_classes` (only meaningful on the domain).
    pub mu: Vec<Option<usize>>,
    /// `lambda[z]` = the common `f`-value of the class.
    pub lambda: Vec<L>,
}

/// Factors a total map on `domain` through the components of its fibers.
pub fn monotone_light_factorize<L, F>(
    complex: &GridComplex,
    domain: &Bits,
    f: F,
) -> Factorization<L>
where
    L: Clone + Ord,
    F: Fn(usize) -> L,
{
    let mut fibers: BTreeMap<L, Bits> = BTreeMap::new();
    for cell in domain.iter() {
        fibers
            .entry(f(cell))
            .or_insert_with(|| Bits::new(complex.cell_count()))
            .insert(cell);
    }
    let mut z_classes = Vec::new();
    let mut lambda = Vec::new();
    let mut mu = vec![None; complex.cell_count()];
    for (label, fiber) in fibers {
        for comp in complex.components(&fiber, Mode::Closed) {
            let z = z_classes.len();
            for cell in comp.iter() {
                mu[cell] = Some(z);
            }
            z_classes.push(comp);
            lambda.push(label.clone());
        }
    }
    Factorization {
        z_classes,
        mu,
        lambda,
    }
}

impl<L: Clone + Ord> Factorization<L> {
    /// Monotone: every `mu`-fiber is closed-mode connected (true by
    /// construction; re-checked for tests).
    pub fn mu_fibers_connected(&self, complex: &GridComplex) -> bool {
        self.z_classes
            .iter()
            .all(|z| complex.components(z, Mode::Closed).len() == 1)
    }

    /// Light: no two distinct classes with the same `lambda`-value are
    /// closed-mode adjacent.
    pub fn lambda_fibers_discrete(&self, complex: &GridComplex) -> bool {
        for i in 0..self.z_classes.len() {
            for j in (i + 1)..self.z_classes.len() {
                if self.lambda[i] == self.lambda[j]
                    && complex.closure(&self.z_classes[i]).intersects(&self.z_classes[j])
                {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_map_yields_components() {
        let g = GridComplex::new(2, 2, 1000).unwrap();
        // domain: two corner cells touching only diagonally
        let a = g.index(&[0, 0]).unwrap();
        let b = g.index(&[1, 1]).unwrap();
        let domain = Bits::from_indices(g.cell_count(), [a, b]);
        let f = monotone_light_factorize(&g, &domain, |_| 0u32);
        // corner contact: closed mode glues them into one class
        assert_eq!(f.z_classes.len(), 1);
        assert!(f.mu_fibers_connected(&g));
        assert!(f.lambda_fibers_discrete(&g));

        // whole grid, constant: one class
        let f = monotone_light_factorize(&g, &g.full_set(), |_| 0u32);
        assert_eq!(f.z_classes.len(), 1);
        assert_eq!(f.lambda, vec![0]);
    }

    #[test]
    fn injective_map_is_a_bijection() {
        let g = GridComplex::new(1, 4, 1000).unwrap();
        let f = monotone_light_factorize(&g, &g.full_set(), |c| c);
        assert_eq!(f.z_classes.len(), 4);
        for z in &f.z_classes {
            assert_eq!(z.count(), 1);
        }
    }

    #[test]
    fn projection_of_square_collapses_columns() {
        let g = GridComplex::new(2, 4, 1000).unwrap();
        let f = monotone_light_factorize(&g, &g.full_set(), |c| g.coords(c)[0]);
        // fibers are columns, closed-mode connected
        assert_eq!(f.z_classes.len(), 4);
        assert!(f.mu_fibers_connected(&g));
        assert!(f.lambda_fibers_discrete(&g));
        // lambda is injective here
        let mut sorted = f.lambda.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);
        // lambda . mu = f
        for cell in 0..g.cell_count() {
            let z = f.mu[cell].unwrap();
            assert_eq!(f.lambda[z], g.coords(cell)[0]);
        }
    }

    #[test]
    fn split_fiber_gives_light_but_not_injective_lambda() {
        let g = GridComplex::new(1, 5, 1000).unwrap();
        // f sends the two ends to 0 and the middle to 1: the 0-fiber has
        // two components
        let f = monotone_light_factorize(&g, &g.full_set(), |c| u32::from(c == 2));
        assert_eq!(f.z_classes.len(), 3);
        assert!(f.mu_fibers_connected(&g));
        assert!(f.lambda_fibers_discrete(&g));
    }
}
