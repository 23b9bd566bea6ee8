//! Whitney levels, order chains and the small-mesh lemma on finite spaces.
//!
//! Exact Whitney fibers on a finite space are generically singletons, so
//! levels are bands `[r - tol, r + tol]`. Pairwise disjointness and the
//! covering property of a level are continuum facts that finite grids
//! generally violate; the report states them, it does not assert them.

use super::{whitney_map, FiniteMetricSpace, HyperError};
use crate::bits::Bits;
use crate::grid::{is_partition_between, urysohn, GridComplex, Mode, PartitionCheck};
use crate::rational::{q0, Q};

/// A finite space with both a metric and an adjacency structure: the
/// carrier for connected-set enumeration.
#[derive(Debug, Clone)]
pub struct ConnectedSpace {
    pub metric: FiniteMetricSpace,
    pub adjacency: Vec<Vec<usize>>,
}

impl ConnectedSpace {
    /// A grid complex with closed-mode adjacency and graph distance scaled
    /// by `scale` (the metric value of one grid step).
    pub fn from_grid(complex: &GridComplex, scale: Q) -> Result<ConnectedSpace, HyperError> {
        let n = complex.cell_count();
        let full = complex.full_set();
        let mut dist = vec![vec![q0(); n]; n];
        for a in 0..n {
            let d = complex.distances(&full, &Bits::from_indices(n, [a]), Mode::Closed);
            for (b, row) in dist.iter_mut().enumerate() {
                row[a] = Q::from_integer(d[b].expect("grid is connected") as i128) * scale;
            }
        }
        let points = (0..n)
            .map(|c| {
                let coords = complex.coords(c);
                coords
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let metric = FiniteMetricSpace::new(points, dist)?;
        let adjacency = (0..n).map(|c| complex.neighbors(c, Mode::Closed)).collect();
        Ok(ConnectedSpace { metric, adjacency })
    }

    /// A discrete space: no adjacency, so the only connected sets are
    /// singletons.
    pub fn discrete(metric: FiniteMetricSpace) -> ConnectedSpace {
        let n = metric.size();
        ConnectedSpace {
            metric,
            adjacency: vec![Vec::new(); n],
        }
    }

    fn size(&self) -> usize {
        self.metric.size()
    }
}

/// Enumerates every nonempty connected subset, ascending by
/// (smallest member, extension order). Errors out past `cap` sets.
pub fn enumerate_connected_sets(
    space: &ConnectedSpace,
    cap: usize,
) -> Result<Vec<Bits>, HyperError> {
    let n = space.size();
    let mut out = Vec::new();
    for seed in 0..n {
        let mut set = Bits::new(n);
        set.insert(seed);
        let mut banned = Bits::new(n);
        for v in 0..seed {
            banned.insert(v);
        }
        let cands: Vec<usize> = space.adjacency[seed]
            .iter()
            .copied()
            .filter(|&v| v > seed)
            .collect();
        grow(space, &mut set, cands, &mut banned, &mut out, cap)?;
    }
    Ok(out)
}

fn grow(
    space: &ConnectedSpace,
    set: &mut Bits,
    candidates: Vec<usize>,
    banned: &mut Bits,
    out: &mut Vec<Bits>,
    cap: usize,
) -> Result<(), HyperError> {
    if out.len() >= cap {
        return Err(HyperError::CapExceeded { cap });
    }
    out.push(set.clone());
    let mut locally_banned = Vec::new();
    for (idx, &u) in candidates.iter().enumerate() {
        if banned.contains(u) {
            continue;
        }
        set.insert(u);
        let mut next: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&v| !set.contains(v))
            .collect();
        for &w in &space.adjacency[u] {
            if !set.contains(w) && !banned.contains(w) && !next.contains(&w) {
                next.push(w);
            }
        }
        grow(space, set, next, banned, out, cap)?;
        set.remove(u);
        banned.insert(u);
        locally_banned.push(u);
    }
    for u in locally_banned {
        banned.remove(u);
    }
    Ok(())
}

/// The connected sets whose Whitney value lies in `[r - tol, r + tol]`,
/// with the continuum-only properties reported rather than asserted.
#[derive(Debug, Clone)]
pub struct WhitneyLevels {
    pub members: Vec<Bits>,
    /// First few overlapping pairs (indices into `members`).
    pub overlaps: Vec<(usize, usize)>,
    pub overlap_count: usize,
    /// Does every point lie in some member?
    pub covers: bool,
    /// Minimum diameter over the band (the eta of the mesh bound), when
    /// the band is nonempty.
    pub min_diameter: Option<Q>,
}

pub fn whitney_levels(
    space: &ConnectedSpace,
    r: Q,
    tol: Q,
    cap: usize,
) -> Result<WhitneyLevels, HyperError> {
    let mu = whitney_map(&space.metric)?;
    let all = enumerate_connected_sets(space, cap)?;
    let lo = r - tol;
    let hi = r + tol;
    let members: Vec<Bits> = all
        .into_iter()
        .filter(|s| {
            let v = mu.value(&space.metric, s);
            lo <= v && v <= hi
        })
        .collect();
    let mut overlaps = Vec::new();
    let mut overlap_count = 0;
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if members[i].intersects(&members[j]) {
                overlap_count += 1;
                if overlaps.len() < 8 {
                    overlaps.push((i, j));
                }
            }
        }
    }
    let mut covered = Bits::new(space.size());
    for m in &members {
        covered = covered.union(m);
    }
    let min_diameter = members
        .iter()
        .map(|s| space.metric.diameter(s))
        .min();
    Ok(WhitneyLevels {
        covers: covered.count() == space.size(),
        members,
        overlaps,
        overlap_count,
        min_diameter,
    })
}

/// The family of connected sets containing a point, with the chain verdict.
#[derive(Debug, Clone)]
pub struct OrderChainReport {
    /// Sorted by size, then by bit pattern.
    pub sets: Vec<Bits>,
    pub is_chain: bool,
    /// An incomparable overlapping pair when not a chain: an explicit
    /// decomposability certificate.
    pub witness: Option<(Bits, Bits)>,
}

pub fn order_chain(
    space: &ConnectedSpace,
    point: usize,
    cap: usize,
) -> Result<OrderChainReport, HyperError> {
    let n = space.size();
    let mut out = Vec::new();
    let mut set = Bits::new(n);
    set.insert(point);
    let mut banned = Bits::new(n);
    let cands: Vec<usize> = space.adjacency[point].to_vec();
    grow(space, &mut set, cands, &mut banned, &mut out, cap)?;
    let mut sets = out;
    sets.sort_by_key(|s| (s.count(), s.clone()));
    let mut witness = None;
    'outer: for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if !sets[i].is_subset(&sets[j]) && !sets[j].is_subset(&sets[i]) {
                witness = Some((sets[i].clone(), sets[j].clone()));
                break 'outer;
            }
        }
    }
    Ok(OrderChainReport {
        is_chain: witness.is_none(),
        sets,
        witness,
    })
}

/// Report of the small-mesh search.
#[derive(Debug, Clone)]
pub struct SmallMeshReport {
    /// One grid step in the scaled metric.
    pub scale: Q,
    /// A component of the complement with scaled diameter at least one.
    pub witness: Option<(Bits, Q)>,
    /// Set when the pairs verify essential yet no witness exists; the
    /// continuum lemma guarantees one, so its absence is a discretization
    /// artifact.
    pub discretization_artifact: bool,
}

/// Searches for a connected piece of the complement of the family with
/// scaled diameter at least 1, where the metric is graph distance scaled
/// so the essential-pair separation equals 1. The family must be pairwise
/// disjoint with scaled diameters at most 1/2.
pub fn small_mesh_witness(
    complex: &GridComplex,
    pairs: &[(Bits, Bits)],
    family: &[Bits],
    essential_verified: bool,
) -> Result<SmallMeshReport, HyperError> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if a.intersects(b) {
                return Err(HyperError::FamilyOverlap(i, j));
            }
        }
    }
    // separation = min graph distance between any essential pair
    let full = complex.full_set();
    let mut sep: Option<u32> = None;
    for (a, b) in pairs {
        let d = complex.distances(&full, a, Mode::Closed);
        let m = b.iter().filter_map(|c| d[c]).min();
        if let Some(m) = m {
            sep = Some(sep.map_or(m, |s| s.min(m)));
        }
    }
    let sep = sep.filter(|&s| s > 0).ok_or(HyperError::EmptySet("pair separation"))?;
    let scale = Q::new(1, sep as i128);
    let graph_diameter = |s: &Bits| -> Q {
        let mut best = 0u32;
        let members: Vec<usize> = s.iter().collect();
        for &a in &members {
            let d = complex.distances(&full, &Bits::from_indices(s.len(), [a]), Mode::Closed);
            for &b in &members {
                if let Some(db) = d[b] {
                    best = best.max(db);
                }
            }
        }
        Q::from_integer(best as i128) * scale
    };
    let bound = Q::new(1, 2);
    for (index, member) in family.iter().enumerate() {
        let diameter = graph_diameter(member);
        if diameter > bound {
            return Err(HyperError::MeshViolation {
                index,
                diameter: crate::format_ratio(diameter),
                bound: crate::format_ratio(bound),
            });
        }
    }
    let mut union = Bits::new(complex.cell_count());
    for member in family {
        union = union.union(member);
    }
    let complement = full.difference(&union);
    let one = Q::new(1, 1);
    let mut witness = None;
    for comp in complex.components(&complement, Mode::Open) {
        let d = graph_diameter(&comp);
        if d >= one {
            witness = Some((comp, d));
            break;
        }
    }
    Ok(SmallMeshReport {
        scale,
        discretization_artifact: essential_verified && witness.is_none(),
        witness,
    })
}

/// Report of the diagonal-map transfer: Urysohn coordinates plus the
/// preimage partition checks against supplied face partitions of the cube
/// grid.
#[derive(Debug, Clone)]
pub struct CubeMapReport {
    pub coordinates: Vec<crate::grid::CellFunction>,
    pub preimages: Vec<Bits>,
    pub checks: Vec<PartitionCheck>,
}

impl CubeMapReport {
    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(|c| c.separates)
    }
}

/// Builds the diagonal map `f = (urysohn(C_i, D_i))_i : X -> I^n` and
/// verifies that preimages of the supplied face partitions of the cube
/// grid are partitions between the corresponding pairs.
pub fn essential_to_cube_map(
    complex: &GridComplex,
    pairs: &[(Bits, Bits)],
    cube: &GridComplex,
    face_partitions: &[Bits],
) -> Result<CubeMapReport, HyperError> {
    if cube.dim() != pairs.len() {
        return Err(crate::grid::GridError::WrongLength {
            expected: pairs.len(),
            got: cube.dim(),
        }
        .into());
    }
    let mut coordinates = Vec::new();
    for (a, b) in pairs {
        coordinates.push(urysohn(complex, a, b)?);
    }
    let res = cube.res() as i128;
    let mut preimages = Vec::new();
    let mut checks = Vec::new();
    for (i, l) in face_partitions.iter().enumerate() {
        // realization of l: union of the closed boxes of its cells
        let boxes: Vec<Vec<u32>> = l.iter().map(|c| cube.coords(c)).collect();
        let mut pre = Bits::new(complex.cell_count());
        for cell in 0..complex.cell_count() {
            let point: Vec<Q> = coordinates.iter().map(|f| f.get(cell)).collect();
            let inside = boxes.iter().any(|coords| {
                coords.iter().zip(&point).all(|(&k, v)| {
                    Q::new(k as i128, res) <= *v && *v <= Q::new(k as i128 + 1, res)
                })
            });
            if inside {
                pre.insert(cell);
            }
        }
        let check = is_partition_between(
            complex,
            &complex.full_set(),
            &pre,
            &pairs[i].0,
            &pairs[i].1,
        )?;
        preimages.push(pre);
        checks.push(check);
    }
    Ok(CubeMapReport {
        coordinates,
        preimages,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn path_space(n: u32) -> (GridComplex, ConnectedSpace) {
        let g = GridComplex::new(1, n, 10_000).unwrap();
        let s = ConnectedSpace::from_grid(&g, q(1, 1)).unwrap();
        (g, s)
    }

    #[test]
    fn connected_sets_of_a_path() {
        // connected subsets of a path of length n are its intervals
        let (_, s) = path_space(4);
        let sets = enumerate_connected_sets(&s, 10_000).unwrap();
        assert_eq!(sets.len(), 4 + 3 + 2 + 1);
    }

    #[test]
    fn connected_sets_of_discrete_space_are_singletons() {
        let m = FiniteMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]],
        )
        .unwrap();
        let s = ConnectedSpace::discrete(m);
        let sets = enumerate_connected_sets(&s, 100).unwrap();
        assert_eq!(sets.len(), 2);
    }

    #[test]
    fn whitney_level_zero_is_singletons() {
        let (_, s) = path_space(4);
        let levels = whitney_levels(&s, q(0, 1), q(0, 1), 10_000).unwrap();
        assert_eq!(levels.members.len(), 4);
        assert!(levels.covers);
        assert_eq!(levels.overlap_count, 0);
        assert_eq!(levels.min_diameter, Some(q(0, 1)));
    }

    #[test]
    fn whitney_level_one_is_whole_space() {
        let (_, s) = path_space(4);
        let levels = whitney_levels(&s, q(1, 1), q(0, 1), 10_000).unwrap();
        assert_eq!(levels.members.len(), 1);
        assert_eq!(levels.members[0].count(), 4);
    }

    #[test]
    fn mid_band_reports_overlaps() {
        let (_, s) = path_space(4);
        let levels = whitney_levels(&s, q(1, 2), q(1, 2), 10_000).unwrap();
        assert!(!levels.members.is_empty());
        // bands on a finite path overlap; that is reported, not asserted
        assert!(levels.overlap_count > 0 || levels.members.len() == 1);
    }

    #[test]
    fn order_chain_on_path_middle_fails() {
        let (_, s) = path_space(3);
        let report = order_chain(&s, 1, 10_000).unwrap();
        assert!(!report.is_chain);
        let (k1, k2) = report.witness.unwrap();
        assert!(k1.intersects(&k2));
        assert!(!k1.is_subset(&k2) && !k2.is_subset(&k1));
    }

    #[test]
    fn order_chain_on_singleton() {
        let m = FiniteMetricSpace::new(vec!["p".into()], vec![vec![q(0, 1)]]).unwrap();
        let s = ConnectedSpace::discrete(m);
        let report = order_chain(&s, 0, 100).unwrap();
        assert!(report.is_chain);
        assert_eq!(report.sets.len(), 1);
    }

    #[test]
    fn cap_is_honored() {
        let (_, s) = path_space(5);
        assert!(matches!(
            enumerate_connected_sets(&s, 3),
            Err(HyperError::CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn small_mesh_on_empty_family_returns_whole_space() {
        let g = GridComplex::new(2, 6, 10_000).unwrap();
        let pairs = vec![
            (g.face(0, false), g.face(0, true)),
            (g.face(1, false), g.face(1, true)),
        ];
        let report = small_mesh_witness(&g, &pairs, &[], true).unwrap();
        let (comp, d) = report.witness.unwrap();
        assert_eq!(comp.count(), g.cell_count());
        assert!(d >= q(1, 1));
    }

    #[test]
    fn small_mesh_rejects_fat_members() {
        let g = GridComplex::new(2, 6, 10_000).unwrap();
        let pairs = vec![(g.face(0, false), g.face(0, true))];
        // a member of diameter 4/5 of the separation violates the bound
        let fat = Bits::from_indices(
            g.cell_count(),
            (0..g.cell_count()).filter(|&c| g.coords(c)[1] == 0),
        );
        assert!(matches!(
            small_mesh_witness(&g, &pairs, &[fat], false),
            Err(HyperError::MeshViolation { .. })
        ));
    }

    #[test]
    fn small_mesh_finds_witness_with_small_obstacles() {
        let g = GridComplex::new(2, 6, 10_000).unwrap();
        let pairs = vec![
            (g.face(0, false), g.face(0, true)),
            (g.face(1, false), g.face(1, true)),
        ];
        let single = |x: u32, y: u32| {
            Bits::from_indices(g.cell_count(), [g.index(&[x, y]).unwrap()])
        };
        let family = vec![single(1, 1), single(4, 1), single(1, 4), single(4, 4)];
        let report = small_mesh_witness(&g, &pairs, &family, true).unwrap();
        let (_, d) = report.witness.expect("a long component exists");
        assert!(d >= q(1, 1));
        assert!(!report.discretization_artifact);
    }

    #[test]
    fn cube_map_on_a_path() {
        let g = GridComplex::new(1, 5, 10_000).unwrap();
        let pairs = vec![(g.face(0, false), g.face(0, true))];
        let cube = GridComplex::new(1, 5, 10_000).unwrap();
        // middle column of the cube grid
        let l = Bits::from_indices(cube.cell_count(), [2]);
        let report = essential_to_cube_map(&g, &pairs, &cube, &[l]).unwrap();
        assert_eq!(
            report.coordinates[0].values,
            vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4), q(1, 1)]
        );
        // preimage of [2/5, 3/5] is the middle cell, which separates
        assert_eq!(report.preimages[0].iter().collect::<Vec<_>>(), vec![2]);
        assert!(report.all_verified());
    }

    #[test]
    fn cube_map_two_pairs_on_square() {
        let g = GridComplex::new(2, 5, 10_000).unwrap();
        let pairs = vec![
            (g.face(0, false), g.face(0, true)),
            (g.face(1, false), g.face(1, true)),
        ];
        let cube = GridComplex::new(2, 5, 10_000).unwrap();
        let col = Bits::from_indices(
            cube.cell_count(),
            (0..cube.cell_count()).filter(|&c| cube.coords(c)[0] == 2),
        );
        let row = Bits::from_indices(
            cube.cell_count(),
            (0..cube.cell_count()).filter(|&c| cube.coords(c)[1] == 2),
        );
        let report = essential_to_cube_map(&g, &pairs, &cube, &[col, row]).unwrap();
        assert!(report.all_verified());
    }

    #[test]
    fn empty_face_partition_does_not_separate() {
        let g = GridComplex::new(1, 5, 10_000).unwrap();
        let pairs = vec![(g.face(0, false), g.face(0, true))];
        let cube = GridComplex::new(1, 5, 10_000).unwrap();
        let report =
            essential_to_cube_map(&g, &pairs, &cube, &[Bits::new(cube.cell_count())]).unwrap();
        assert!(!report.all_verified());
    }
}
