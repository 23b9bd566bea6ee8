//! Finite-scale hyperspace tools: Hausdorff metric, Whitney maps, cover
//! degrees, order chains and the small-mesh search.
//!
//! The Whitney map is the normalized pair sum
//! `mu(A) = sum of distances over pairs in A / same sum over everything`:
//! exact-rational, `mu(singleton) = 0`, strictly monotone under proper
//! inclusion, `mu(whole space) = 1`. That is all the downstream arguments
//! use of a Whitney map.

mod cover;
mod levels;

pub use cover::{cover_degree, grid_cover, CoverDegree};
pub use levels::{
    enumerate_connected_sets, essential_to_cube_map, order_chain, small_mesh_witness,
    whitney_levels, ConnectedSpace, CubeMapReport, OrderChainReport, SmallMeshReport,
    WhitneyLevels,
};

use crate::bits::Bits;
use crate::rational::{format_ratio, parse_ratio, q0, Q};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HyperError {
    #[error("not a metric: {0}")]
    NotAMetric(String),
    #[error("set {0} must be nonempty")]
    EmptySet(&'static str),
    #[error("cannot build a Whitney map: all distances are zero on {0} points")]
    AllDistancesZero(usize),
    #[error("enumeration cap exceeded: more than {cap} connected sets")]
    CapExceeded { cap: usize },
    #[error("family member {index} has diameter {diameter}, above the mesh bound {bound}")]
    MeshViolation {
        index: usize,
        diameter: String,
        bound: String,
    },
    #[error("family members {0} and {1} overlap")]
    FamilyOverlap(usize, usize),
    #[error("point {0:?} is not in the space")]
    UnknownPoint(String),
    #[error(transparent)]
    Grid(#[from] crate::grid::GridError),
}

/// A finite metric space with an exact rational distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    points: Vec<String>,
    dist: Vec<Q>,
}

impl FiniteMetricSpace {
    /// Validates all metric axioms by exhaustion.
    pub fn new(points: Vec<String>, dist: Vec<Vec<Q>>) -> Result<Self, HyperError> {
        let n = points.len();
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(HyperError::NotAMetric(format!(
                "distance table must be {n} x {n}"
            )));
        }
        for i in 0..n {
            if dist[i][i] != q0() {
                return Err(HyperError::NotAMetric(format!(
                    "d({p}, {p}) != 0",
                    p = points[i]
                )));
            }
            for j in 0..n {
                if dist[i][j] != dist[j][i] {
                    return Err(HyperError::NotAMetric(format!(
                        "d({}, {}) != d({}, {})",
                        points[i], points[j], points[j], points[i]
                    )));
                }
                if i != j && dist[i][j] <= q0() {
                    return Err(HyperError::NotAMetric(format!(
                        "d({}, {}) must be positive",
                        points[i], points[j]
                    )));
                }
                for k in 0..n {
                    if dist[i][k] > dist[i][j] + dist[j][k] {
                        return Err(HyperError::NotAMetric(format!(
                            "triangle inequality fails at ({}, {}, {})",
                            points[i], points[j], points[k]
                        )));
                    }
                }
            }
        }
        let flat = dist.into_iter().flatten().collect();
        Ok(FiniteMetricSpace {
            points,
            dist: flat,
        })
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Q {
        self.dist[i * self.points.len() + j]
    }

    pub fn diameter(&self, set: &Bits) -> Q {
        let mut best = q0();
        let members: Vec<usize> = set.iter().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                best = best.max(self.d(a, b));
            }
        }
        best
    }

    /// `min_{a in A, b in B} d(a, b)`; `None` when either side is empty.
    pub fn separation(&self, a: &Bits, b: &Bits) -> Option<Q> {
        let mut best: Option<Q> = None;
        for x in a.iter() {
            for y in b.iter() {
                let d = self.d(x, y);
                best = Some(match best {
                    Some(m) if m <= d => m,
                    _ => d,
                });
            }
        }
        best
    }
}

/// `max(sup_a d(a, B), sup_b d(b, A))` over nonempty subsets.
pub fn hausdorff_distance(
    m: &FiniteMetricSpace,
    a: &Bits,
    b: &Bits,
) -> Result<Q, HyperError> {
    if a.is_empty() {
        return Err(HyperError::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(HyperError::EmptySet("B"));
    }
    let directed = |from: &Bits, to: &Bits| -> Q {
        from.iter()
            .map(|x| to.iter().map(|y| m.d(x, y)).min().unwrap())
            .max()
            .unwrap()
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// The normalized pair-sum Whitney map.
#[derive(Debug, Clone)]
pub struct WhitneyMap {
    total: Q,
}

impl WhitneyMap {
    pub fn value(&self, m: &FiniteMetricSpace, set: &Bits) -> Q {
        let members: Vec<usize> = set.iter().collect();
        let mut sum = q0();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                sum += m.d(a, b);
            }
        }
        sum / self.total
    }
}

/// Builds the Whitney map; fails when two or more points all coincide
/// metrically (the metric validation already excludes that, so the only
/// degenerate case left is the one-point space, which gets the zero map).
pub fn whitney_map(m: &FiniteMetricSpace) -> Result<WhitneyMap, HyperError> {
    let n = m.size();
    let mut total = q0();
    for i in 0..n {
        for j in (i + 1)..n {
            total += m.d(i, j);
        }
    }
    if n >= 2 && total == q0() {
        return Err(HyperError::AllDistancesZero(n));
    }
    Ok(WhitneyMap {
        total: if total == q0() { Q::new(1, 1) } else { total },
    })
}

// ---------------------------------------------------------------------------
// Interchange format

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricSpaceFile {
    pub points: Vec<String>,
    pub dist: Vec<Vec<String>>,
}

impl MetricSpaceFile {
    pub fn to_space(&self) -> Result<FiniteMetricSpace, HyperError> {
        let mut seen = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if seen.insert(p.clone(), i).is_some() {
                return Err(HyperError::NotAMetric(format!("duplicate point {p:?}")));
            }
        }
        let dist: Vec<Vec<Q>> = self
            .dist
            .iter()
            .map(|row| row.iter().map(|s| parse_ratio(s)).collect())
            .collect::<Result<_, _>>()
            .map_err(crate::grid::GridError::from)?;
        FiniteMetricSpace::new(self.points.clone(), dist)
    }

    pub fn from_space(m: &FiniteMetricSpace) -> MetricSpaceFile {
        let n = m.size();
        MetricSpaceFile {
            points: m.points().to_vec(),
            dist: (0..n)
                .map(|i| (0..n).map(|j| format_ratio(m.d(i, j))).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use num_traits::Signed;

    fn line3() -> FiniteMetricSpace {
        // three collinear points at mutual distances 1, 1, 2
        FiniteMetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![q(0, 1), q(1, 1), q(2, 1)],
                vec![q(1, 1), q(0, 1), q(1, 1)],
                vec![q(2, 1), q(1, 1), q(0, 1)],
            ],
        )
        .unwrap()
    }

    fn bits(n: usize, ids: &[usize]) -> Bits {
        Bits::from_indices(n, ids.iter().copied())
    }

    #[test]
    fn hausdorff_basics() {
        let m = line3();
        let ab = bits(3, &[0, 1]);
        assert_eq!(hausdorff_distance(&m, &ab, &ab).unwrap(), q(0, 1));
        assert_eq!(
            hausdorff_distance(&m, &bits(3, &[0]), &bits(3, &[2])).unwrap(),
            q(2, 1)
        );
        // A = {0}, B = {0, 2} on the line: directed distances 0 and 2
        assert_eq!(
            hausdorff_distance(&m, &bits(3, &[0]), &bits(3, &[0, 2])).unwrap(),
            q(2, 1)
        );
        assert!(hausdorff_distance(&m, &Bits::new(3), &ab).is_err());
    }

    #[test]
    fn hausdorff_metric_axioms_exhaustive_small() {
        let m = line3();
        let n = m.size();
        let sets: Vec<Bits> = (1..1usize << n)
            .map(|mask| Bits::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .collect();
        for a in &sets {
            for b in &sets {
                let dab = hausdorff_distance(&m, a, b).unwrap();
                assert_eq!(dab, hausdorff_distance(&m, b, a).unwrap());
                assert_eq!(dab == q(0, 1), a == b);
                for c in &sets {
                    let dac = hausdorff_distance(&m, a, c).unwrap();
                    let dcb = hausdorff_distance(&m, c, b).unwrap();
                    assert!(dab <= dac + dcb);
                }
            }
        }
    }

    #[test]
    fn diameter_bound() {
        let m = line3();
        let n = m.size();
        let sets: Vec<Bits> = (1..1usize << n)
            .map(|mask| Bits::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .collect();
        for a in &sets {
            for b in &sets {
                let dh = hausdorff_distance(&m, a, b).unwrap();
                let diff = (m.diameter(a) - m.diameter(b)).abs();
                assert!(diff <= q(2, 1) * dh);
            }
        }
    }

    #[test]
    fn whitney_pair_sum() {
        let m = line3();
        let mu = whitney_map(&m).unwrap();
        assert_eq!(mu.value(&m, &bits(3, &[0])), q(0, 1));
        assert_eq!(mu.value(&m, &Bits::full(3)), q(1, 1));
        // {a, b} has pair sum 1 over total 4
        assert_eq!(mu.value(&m, &bits(3, &[0, 1])), q(1, 4));
    }

    #[test]
    fn whitney_strict_monotonicity_exhaustive() {
        let m = line3();
        let mu = whitney_map(&m).unwrap();
        let n = m.size();
        for big in 1..1usize << n {
            for small in 1..big {
                if small & big == small && small != big {
                    let b = Bits::from_indices(n, (0..n).filter(|i| big >> i & 1 == 1));
                    let s = Bits::from_indices(n, (0..n).filter(|i| small >> i & 1 == 1));
                    assert!(mu.value(&m, &s) < mu.value(&m, &b));
                }
            }
        }
    }

    #[test]
    fn single_point_space_gets_zero_map() {
        let m = FiniteMetricSpace::new(vec!["p".into()], vec![vec![q(0, 1)]]).unwrap();
        let mu = whitney_map(&m).unwrap();
        assert_eq!(mu.value(&m, &Bits::full(1)), q(0, 1));
    }

    #[test]
    fn metric_validation_catches_violations() {
        // triangle violation
        let err = FiniteMetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![q(0, 1), q(1, 1), q(5, 1)],
                vec![q(1, 1), q(0, 1), q(1, 1)],
                vec![q(5, 1), q(1, 1), q(0, 1)],
            ],
        );
        assert!(matches!(err, Err(HyperError::NotAMetric(_))));
    }

    #[test]
    fn metric_file_round_trip() {
        let m = line3();
        let file = MetricSpaceFile::from_space(&m);
        assert_eq!(file.to_space().unwrap(), m);
    }
}
