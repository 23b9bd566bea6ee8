//! The Wallman space of a finite distributive lattice and the round trip
//! with closed-set lattices of finite spaces.
//!
//! Points of `wL` are the maximal proper filters of `L`; in a finite
//! lattice these are exactly the up-sets of atoms. The representation map
//! `a -> C_a = {filters containing a}` is a homomorphism onto a base for
//! the closed sets, and an isomorphism precisely when `L` is disjunctive.
//!
//! A finite Wallman space is necessarily discrete: in a finite distributive
//! lattice every set of atoms is the support of a join of atoms, so every
//! subset of `wL` is closed. Connected Wallman spaces exist only at
//! infinite cardinality; the right finite shadow of that fact is the
//! bounded model search result that `conn + distributive + disjunctive`
//! admits no nondegenerate finite model.

use crate::bits::Bits;
use crate::lattice::{
    generate_set_lattice, Elem, FiniteLattice, LatticeError, SetLattice,
};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WallmanError {
    #[error("wallman space requires a distributive lattice; witness triple ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("degenerate lattice (0 = 1) has an empty Wallman space")]
    Degenerate,
    #[error("space is not T1: point {0:?} is not an intersection of base members")]
    NotT1(String),
    #[error("closed base must contain the empty set and the full point set")]
    MissingBounds,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A filter in a finite lattice, stored as the bitset of its members.
/// Upward closed, closed under meet, missing bottom; in a finite lattice
/// every filter is the up-set of its meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    pub members: Bits,
    /// The generator: the meet of all members.
    pub generator: Elem,
}

/// All maximal proper filters, in ascending order of their generating
/// atom. Returns an empty list for the degenerate lattice.
pub fn maximal_filters(l: &FiniteLattice) -> Vec<Filter> {
    if l.is_degenerate() {
        return Vec::new();
    }
    // all principal proper filters, then keep the inclusion-maximal ones
    let n = l.size();
    let up = |x: Elem| Bits::from_indices(n, (0..n).filter(|&y| l.le(x, y)));
    let proper: Vec<(Elem, Bits)> = (0..n)
        .filter(|&x| x != l.bottom())
        .map(|x| (x, up(x)))
        .collect();
    let mut maximal: Vec<Filter> = proper
        .iter()
        .filter(|(_, f)| {
            !proper
                .iter()
                .any(|(_, g)| g != f && f.is_subset(g))
        })
        .map(|(x, f)| Filter {
            members: f.clone(),
            generator: *x,
        })
        .collect();
    maximal.sort_by_key(|f| f.generator);
    // cross-check: up-sets of atoms are exactly the maximal filters
    debug_assert_eq!(
        maximal.iter().map(|f| f.generator).collect::<Vec<_>>(),
        l.atoms()
    );
    maximal
}

/// A finite T1 space presented by a base for its closed sets. The base is
/// closed under union and intersection and contains the empty set and the
/// full set, so in the finite case it is the whole closed-set family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    pub points: Vec<String>,
    pub closed_base: Vec<Bits>,
}

impl FiniteSpace {
    /// Builds and validates: base bounds, union/intersection closure
    /// (via regeneration) and the T1 separation property.
    pub fn new(points: Vec<String>, closed_base: Vec<Bits>) -> Result<FiniteSpace, WallmanError> {
        let n = points.len();
        let mut base = closed_base;
        base.sort_by_key(|b| (b.count(), b.clone()));
        base.dedup();
        if !base.iter().any(|b| b.is_empty()) || !base.iter().any(|b| b.count() == n) {
            return Err(WallmanError::MissingBounds);
        }
        let closed = generate_set_lattice(points.clone(), &base, usize::MAX)?;
        if closed.members().len() != base.len() {
            return Err(WallmanError::MissingBounds);
        }
        // T1: every singleton is an intersection of base members
        for p in 0..n {
            let mut inter = Bits::full(n);
            for b in &base {
                if b.contains(p) {
                    inter = inter.intersection(b);
                }
            }
            if inter.count() != 1 {
                return Err(WallmanError::NotT1(points[p].clone()));
            }
        }
        Ok(FiniteSpace {
            points,
            closed_base: base,
        })
    }

    pub fn discrete(points: Vec<String>) -> FiniteSpace {
        let n = points.len();
        let base = (0..1usize << n)
            .map(|mask| Bits::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .collect();
        FiniteSpace::new(points, base).expect("discrete space is T1")
    }
}

/// The Wallman space of a distributive lattice together with the
/// representation map.
#[derive(Debug, Clone)]
pub struct WallmanSpace {
    pub space: FiniteSpace,
    /// `image[a]` = C_a as a point set of the space.
    pub image: Vec<Bits>,
    /// Whether `a -> C_a` is injective; when it is not, a collapsed pair.
    pub injective: bool,
    pub collapsed_pair: Option<(Elem, Elem)>,
}

/// Computes `wL` with the map `a -> C_a`. Refuses non-distributive input:
/// the representation theorem lives in the distributive case.
pub fn wallman_space(l: &FiniteLattice) -> Result<WallmanSpace, WallmanError> {
    if let Some((x, y, z)) = l.distributive_violation() {
        return Err(WallmanError::NotDistributive(
            l.name(x).to_owned(),
            l.name(y).to_owned(),
            l.name(z).to_owned(),
        ));
    }
    let filters = maximal_filters(l);
    let n_points = filters.len();
    let points: Vec<String> = filters
        .iter()
        .map(|f| format!("F({})", l.name(f.generator)))
        .collect();
    let image: Vec<Bits> = (0..l.size())
        .map(|a| {
            Bits::from_indices(
                n_points,
                filters
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.members.contains(a))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    // homomorphism check by exhaustion: C_{a^b} = C_a n C_b, C_{avb} = C_a u C_b
    for a in 0..l.size() {
        for b in 0..l.size() {
            debug_assert_eq!(image[l.meet(a, b)], image[a].intersection(&image[b]));
            debug_assert_eq!(image[l.join(a, b)], image[a].union(&image[b]));
        }
    }
    let mut injective = true;
    let mut collapsed_pair = None;
    'outer: for a in 0..l.size() {
        for b in (a + 1)..l.size() {
            if image[a] == image[b] {
                injective = false;
                collapsed_pair = Some((a, b));
                break 'outer;
            }
        }
    }
    let mut base: Vec<Bits> = image.clone();
    base.sort_by_key(|b| (b.count(), b.clone()));
    base.dedup();
    let space = if n_points == 0 {
        return Err(WallmanError::Degenerate);
    } else {
        FiniteSpace::new(points, base)?
    };
    Ok(WallmanSpace {
        space,
        image,
        injective,
        collapsed_pair,
    })
}

/// The lattice of all closed sets of a finite space: the closure of the
/// base under union and intersection (a no-op for a valid base, but
/// recomputed rather than trusted).
pub fn closed_set_lattice(s: &FiniteSpace) -> SetLattice {
    generate_set_lattice(s.points.clone(), &s.closed_base, usize::MAX)
        .expect("base members are subsets of the point set")
}

/// A homeomorphism between finite spaces: a bijection on points carrying
/// the closed family of one onto the other. The canonical candidate sends
/// a point to the filter of base sets containing it; a backtracking search
/// covers the general case.
pub fn homeomorphism(a: &FiniteSpace, b: &FiniteSpace) -> Option<Vec<usize>> {
    let n = a.points.len();
    if n != b.points.len() || a.closed_base.len() != b.closed_base.len() {
        return None;
    }
    let b_family: std::collections::HashSet<&Bits> = b.closed_base.iter().collect();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn rec(
        a: &FiniteSpace,
        b_family: &std::collections::HashSet<&Bits>,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        p: usize,
    ) -> bool {
        let n = map.len();
        if p == n {
            // verify: image of every base set is a base set
            return a.closed_base.iter().all(|s| {
                let img = Bits::from_indices(n, s.iter().map(|i| map[i].unwrap()));
                b_family.contains(&img)
            });
        }
        for q in 0..n {
            if used[q] {
                continue;
            }
            map[p] = Some(q);
            used[q] = true;
            if rec(a, b_family, map, used, p + 1) {
                return true;
            }
            map[p] = None;
            used[q] = false;
        }
        false
    }
    if rec(a, &b_family, &mut map, &mut used, 0) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// Round trip `S -> closed_set_lattice -> wallman_space`: returns the
/// canonical point map `p -> {closed sets containing p}` when it is a
/// homeomorphism.
pub fn round_trip(s: &FiniteSpace) -> Result<(WallmanSpace, Vec<usize>), WallmanError> {
    let lattice = closed_set_lattice(s).to_lattice();
    let w = wallman_space(&lattice)?;
    let hom = homeomorphism(s, &w.space);
    match hom {
        Some(map) => Ok((w, map)),
        None => Err(WallmanError::NotT1("round trip failed".into())),
    }
}

// ---------------------------------------------------------------------------
// Interchange format

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteSpaceFile {
    pub points: Vec<String>,
    pub closed_base: Vec<Vec<String>>,
}

impl FiniteSpaceFile {
    pub fn to_space(&self) -> Result<FiniteSpace, WallmanError> {
        let mut index = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(p.clone()).into());
            }
        }
        let mut base = Vec::new();
        for member in &self.closed_base {
            let mut b = Bits::new(self.points.len());
            for p in member {
                let i = index
                    .get(p)
                    .copied()
                    .ok_or_else(|| LatticeError::UnknownElement(p.clone()))?;
                b.insert(i);
            }
            base.push(b);
        }
        FiniteSpace::new(self.points.clone(), base)
    }

    pub fn from_space(s: &FiniteSpace) -> FiniteSpaceFile {
        FiniteSpaceFile {
            points: s.points.clone(),
            closed_base: s
                .closed_base
                .iter()
                .map(|b| b.iter().map(|i| s.points[i].clone()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{power_set_lattice, FiniteLattice};

    #[test]
    fn filters_of_power_set_are_atom_upsets() {
        let l = power_set_lattice(vec!["1".into(), "2".into(), "3".into()]).to_lattice();
        let fs = maximal_filters(&l);
        assert_eq!(fs.len(), 3);
        for f in &fs {
            assert_eq!(l.name(f.generator).matches(',').count(), 0);
            // upward closed and meet closed, no bottom
            assert!(!f.members.contains(l.bottom()));
            for x in f.members.iter() {
                for y in f.members.iter() {
                    assert!(f.members.contains(l.meet(x, y)));
                }
                for y in 0..l.size() {
                    if l.le(x, y) {
                        assert!(f.members.contains(y));
                    }
                }
            }
        }
    }

    #[test]
    fn chain_has_one_maximal_filter() {
        let l = FiniteLattice::chain(3);
        let fs = maximal_filters(&l);
        assert_eq!(fs.len(), 1);
        assert_eq!(l.name(fs[0].generator), "c1"); // up-set of the atom m
        assert_eq!(fs[0].members.count(), 2); // {m, 1}
    }

    #[test]
    fn two_element_lattice_filter() {
        let l = FiniteLattice::chain(2);
        let fs = maximal_filters(&l);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].members.iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn wallman_of_power_set_is_discrete_iso() {
        let l = power_set_lattice(vec!["1".into(), "2".into()]).to_lattice();
        let w = wallman_space(&l).unwrap();
        assert_eq!(w.space.points.len(), 2);
        assert!(w.injective);
        assert_eq!(w.space.closed_base.len(), 4);
    }

    #[test]
    fn wallman_of_chain_collapses() {
        let l = FiniteLattice::chain(3);
        let w = wallman_space(&l).unwrap();
        assert_eq!(w.space.points.len(), 1);
        assert!(!w.injective);
        let (a, b) = w.collapsed_pair.unwrap();
        // C_m = C_1
        assert_eq!((l.name(a), l.name(b)), ("c1", "1"));
    }

    #[test]
    fn wallman_refuses_m3() {
        assert!(matches!(
            wallman_space(&FiniteLattice::m3()),
            Err(WallmanError::NotDistributive(..))
        ));
    }

    #[test]
    fn injectivity_iff_disjunctive_small_corpus() {
        let mut corpus: Vec<FiniteLattice> = vec![
            FiniteLattice::chain(2),
            FiniteLattice::chain(3),
            FiniteLattice::chain(4),
            power_set_lattice(vec!["1".into(), "2".into()]).to_lattice(),
            power_set_lattice(vec!["1".into(), "2".into(), "3".into()]).to_lattice(),
        ];
        // a non-disjunctive set lattice
        let gens = vec![Bits::from_indices(2, [0])];
        corpus.push(
            crate::lattice::generate_set_lattice(vec!["1".into(), "2".into()], &gens, 100)
                .unwrap()
                .to_lattice(),
        );
        for l in &corpus {
            let w = wallman_space(l).unwrap();
            assert_eq!(
                w.injective,
                l.is_disjunctive(),
                "representation is an isomorphism iff disjunctive"
            );
        }
    }

    #[test]
    fn closed_set_lattice_of_discrete_two() {
        let s = FiniteSpace::discrete(vec!["a".into(), "b".into()]);
        let cl = closed_set_lattice(&s);
        assert_eq!(cl.members().len(), 4);
    }

    #[test]
    fn one_point_space_round_trip() {
        let s = FiniteSpace::discrete(vec!["p".into()]);
        let cl = closed_set_lattice(&s);
        assert_eq!(cl.members().len(), 2);
        let (w, map) = round_trip(&s).unwrap();
        assert_eq!(w.space.points.len(), 1);
        assert_eq!(map, vec![0]);
    }

    #[test]
    fn discrete_three_round_trip() {
        let s = FiniteSpace::discrete(vec!["a".into(), "b".into(), "c".into()]);
        let (w, map) = round_trip(&s).unwrap();
        assert_eq!(w.space.points.len(), 3);
        // bijection carrying closed sets to closed sets
        let mut sorted = map.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn non_t1_base_rejected() {
        // base {0, {a,b}} on two points cannot separate a from b
        let base = vec![Bits::new(2), Bits::full(2)];
        assert!(matches!(
            FiniteSpace::new(vec!["a".into(), "b".into()], base),
            Err(WallmanError::NotT1(_))
        ));
    }
}
