//! Intersection graphs of covers and the grid-cover degree bound.

use crate::bits::Bits;

/// The intersection graph of a cover with its maximum degree.
#[derive(Debug, Clone)]
pub struct CoverDegree {
    /// Edges (i, j), i < j, between intersecting cover elements.
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    /// Index of a cover element attaining the maximum.
    pub argmax: usize,
}

/// Builds the intersection graph: an edge whenever two cover elements
/// meet.
pub fn cover_degree(cover: &[Bits]) -> CoverDegree {
    let n = cover.len();
    let mut edges = Vec::new();
    let mut degrees = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if cover[i].intersects(&cover[j]) {
                edges.push((i, j));
                degrees[i] += 1;
                degrees[j] += 1;
            }
        }
    }
    let argmax = degrees
        .iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    CoverDegree {
        edges,
        max_degree: degrees.get(argmax).copied().unwrap_or(0),
        degrees,
        argmax,
    }
}

/// The closed cover of the cube `I^dim` cut at `j/l` along every axis,
/// realized on the `(2l+1)^dim` vertex lattice so that closed boxes
/// sharing a face intersect. Every element meets at most `3^dim - 1`
/// others, with equality at interior boxes once `l >= 3`.
pub fn grid_cover(dim: usize, l: u32) -> Vec<Bits> {
    assert!(dim >= 1 && l >= 1);
    let side = 2 * l as usize + 1;
    let universe: usize = side.pow(dim as u32);
    let boxes: usize = (l as usize).pow(dim as u32);
    let mut cover = Vec::with_capacity(boxes);
    for b in 0..boxes {
        // box index tuple
        let mut t = Vec::with_capacity(dim);
        let mut rest = b;
        for _ in 0..dim {
            t.push(rest % l as usize);
            rest /= l as usize;
        }
        // vertices covered: per axis 2t .. 2t+2
        fn collect(
            t: &[usize],
            side: usize,
            axis: usize,
            index: usize,
            points: &mut Vec<usize>,
        ) {
            if axis == t.len() {
                points.push(index);
                return;
            }
            for off in 0..=2usize {
                collect(t, side, axis + 1, index * side + (2 * t[axis] + off), points);
            }
        }
        let mut points = Vec::new();
        collect(&t, side, 0, 0, &mut points);
        cover.push(Bits::from_indices(universe, points));
    }
    cover
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_set_has_degree_zero() {
        let cover = vec![Bits::full(3)];
        let d = cover_degree(&cover);
        assert_eq!(d.max_degree, 0);
        assert!(d.edges.is_empty());
    }

    #[test]
    fn two_overlapping_sets() {
        let a = Bits::from_indices(4, [0, 1]);
        let b = Bits::from_indices(4, [1, 2]);
        let d = cover_degree(&[a, b]);
        assert_eq!(d.max_degree, 1);
        assert_eq!(d.degrees, vec![1, 1]);
        assert_eq!(d.edges, vec![(0, 1)]);
    }

    #[test]
    fn cube_cover_27_boxes() {
        let cover = grid_cover(3, 3);
        assert_eq!(cover.len(), 27);
        let d = cover_degree(&cover);
        assert_eq!(d.max_degree, 26);
    }

    #[test]
    fn interval_cover_degree_two() {
        for l in 3..=6 {
            let cover = grid_cover(1, l);
            let d = cover_degree(&cover);
            assert_eq!(d.max_degree, 2, "l = {l}");
        }
        // at l = 2 there is no interior interval
        assert_eq!(cover_degree(&grid_cover(1, 2)).max_degree, 1);
    }

    #[test]
    fn grid_cover_degree_bound_exhaustive() {
        for dim in 1..=3usize {
            for l in 1..=4u32 {
                let d = cover_degree(&grid_cover(dim, l));
                assert!(
                    d.max_degree <= 3usize.pow(dim as u32) - 1,
                    "dim {dim}, l {l}"
                );
            }
        }
        // dim 4 at small l
        for l in 1..=3u32 {
            let d = cover_degree(&grid_cover(4, l));
            assert!(d.max_degree <= 80, "l = {l}");
        }
    }
}
