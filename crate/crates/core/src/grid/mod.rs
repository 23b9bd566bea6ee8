//! Finite grid approximations of cubes.
//!
//! A [`GridComplex`] of dimension `n` and resolution `r` has cells indexed
//! by integer tuples in `[0, r)^n`, each standing for the closed box
//! `prod [c_i/r, (c_i+1)/r]`. Two adjacency conventions coexist and the
//! distinction carries all the topology:
//!
//! * closed mode: cells are adjacent iff their closed boxes intersect,
//!   i.e. Chebyshev distance one (face or corner contact);
//! * open mode: cells are adjacent iff they share a facet (one axis step).
//!
//! Unions of closed boxes touch at corners; open complements do not. The
//! 2-cell corner example: two cells sharing only a corner form one closed
//! component but two open components.

mod factor;
mod partition;
mod urysohn;

pub use factor::{monotone_light_factorize, Factorization};
pub use partition::{
    essential_check, is_partition_between, restrict_essential, Essentiality, PartitionCheck,
    RestrictOutcome,
};
pub use urysohn::{foursome_urysohn, urysohn, urysohn_lenient, Foursome};

use crate::bits::Bits;
use crate::rational::Q;
use crate::{format_ratio, parse_ratio};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid dimension must be at least 1")]
    ZeroDimension,
    #[error("grid resolution must be at least 1")]
    ZeroResolution,
    #[error("grid has {cells} cells, exceeding the cap of {cap}")]
    CapExceeded { cells: usize, cap: usize },
    #[error("cell {0:?} is outside the grid")]
    CellOutOfRange(Vec<u32>),
    #[error("sets {0} and {1} must be disjoint")]
    NotDisjoint(&'static str, &'static str),
    #[error("set {0} must be nonempty")]
    EmptySet(&'static str),
    #[error("foursome is not pliable: {0} meets {1}")]
    NotPliable(&'static str, &'static str),
    #[error("partition for index {0} does not separate its pair")]
    PartitionFails(usize),
    #[error("partition for index {0} meets its pair")]
    PartitionMeetsPair(usize),
    #[error("function value {0} outside [0, 1]")]
    ValueOutOfRange(String),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Ratio(#[from] crate::rational::RatioParseError),
}

/// Closed or open adjacency; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Closed,
    Open,
}

/// The cell grid of `[0,1]^dim` at resolution `res` per axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridComplex {
    dim: usize,
    res: u32,
    cell_count: usize,
}

impl GridComplex {
    pub fn new(dim: usize, res: u32, cap: usize) -> Result<GridComplex, GridError> {
        if dim == 0 {
            return Err(GridError::ZeroDimension);
        }
        if res == 0 {
            return Err(GridError::ZeroResolution);
        }
        let mut cells: usize = 1;
        for _ in 0..dim {
            cells = cells
                .checked_mul(res as usize)
                .filter(|&c| c <= cap)
                .ok_or(GridError::CapExceeded {
                    cells: usize::MAX,
                    cap,
                })?;
        }
        Ok(GridComplex {
            dim,
            res,
            cell_count: cells,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn res(&self) -> u32 {
        self.res
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn coords(&self, id: usize) -> Vec<u32> {
        let mut id = id;
        let mut out = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            out.push((id % self.res as usize) as u32);
            id /= self.res as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u32]) -> Result<usize, GridError> {
        if coords.len() != self.dim || coords.iter().any(|&c| c >= self.res) {
            return Err(GridError::CellOutOfRange(coords.to_vec()));
        }
        let mut id = 0usize;
        for &c in coords.iter().rev() {
            id = id * self.res as usize + c as usize;
        }
        Ok(id)
    }

    /// Neighbor cells of `id` under the given adjacency.
    pub fn neighbors(&self, id: usize, mode: Mode) -> Vec<usize> {
        let coords = self.coords(id);
        let mut out = Vec::new();
        match mode {
            Mode::Open => {
                for axis in 0..self.dim {
                    for delta in [-1i64, 1] {
                        let c = coords[axis] as i64 + delta;
                        if c >= 0 && c < self.res as i64 {
                            let mut n = coords.clone();
                            n[axis] = c as u32;
                            out.push(self.index(&n).unwrap());
                        }
                    }
                }
            }
            Mode::Closed => {
                // odometer over {-1,0,1}^dim
                let mut offsets = vec![-1i64; self.dim];
                'odometer: loop {
                    if !offsets.iter().all(|&o| o == 0) {
                        let mut n = Vec::with_capacity(self.dim);
                        let mut ok = true;
                        for (i, &o) in offsets.iter().enumerate() {
                            let c = coords[i] as i64 + o;
                            if c < 0 || c >= self.res as i64 {
                                ok = false;
                                break;
                            }
                            n.push(c as u32);
                        }
                        if ok {
                            out.push(self.index(&n).unwrap());
                        }
                    }
                    let mut axis = 0;
                    loop {
                        if axis == self.dim {
                            break 'odometer;
                        }
                        if offsets[axis] < 1 {
                            offsets[axis] += 1;
                            break;
                        }
                        offsets[axis] = -1;
                        axis += 1;
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The boundary cell layer realizing the face `{x : x_axis = side}`.
    pub fn face(&self, axis: usize, side: bool) -> Bits {
        let want = if side { self.res - 1 } else { 0 };
        Bits::from_indices(
            self.cell_count,
            (0..self.cell_count).filter(|&id| self.coords(id)[axis] == want),
        )
    }

    /// Normalized index coordinate `c_axis / (res - 1)`: 0 on the low face,
    /// 1 on the high face. For aligned rectangle sets this matches closed
    /// box containment exactly, which is what the crooked constructions
    /// need. A single-cell axis gets the constant 0.
    pub fn coordinate_function(&self, axis: usize) -> CellFunction {
        let den = (self.res.max(2) - 1) as i128;
        let values = (0..self.cell_count)
            .map(|id| Q::new(self.coords(id)[axis] as i128, den))
            .collect();
        CellFunction { values }
    }

    /// Cell-center coordinate `(c_axis + 1/2) / res`.
    pub fn center_function(&self, axis: usize) -> CellFunction {
        let values = (0..self.cell_count)
            .map(|id| Q::new(2 * self.coords(id)[axis] as i128 + 1, 2 * self.res as i128))
            .collect();
        CellFunction { values }
    }

    pub fn full_set(&self) -> Bits {
        Bits::full(self.cell_count)
    }

    /// Closed-neighborhood closure of a cell set: the cells whose closed
    /// box touches the realization of `s`.
    pub fn closure(&self, s: &Bits) -> Bits {
        let mut out = s.clone();
        for c in s.iter() {
            for n in self.neighbors(c, Mode::Closed) {
                out.insert(n);
            }
        }
        out
    }

    /// Multi-source graph distances within `domain`; `None` marks cells
    /// outside the domain or unreachable from the sources.
    pub fn distances(
        &self,
        domain: &Bits,
        sources: &Bits,
        mode: Mode,
    ) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.cell_count];
        let mut queue = std::collections::VecDeque::new();
        for s in sources.iter() {
            if domain.contains(s) {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(c) = queue.pop_front() {
            let d = dist[c].unwrap();
            for n in self.neighbors(c, mode) {
                if domain.contains(n) && dist[n].is_none() {
                    dist[n] = Some(d + 1);
                    queue.push_back(n);
                }
            }
        }
        dist
    }

    /// Connected components of `cells` under the adjacency convention, in
    /// deterministic order (by smallest member).
    pub fn components(&self, cells: &Bits, mode: Mode) -> Vec<Bits> {
        let mut seen = Bits::new(self.cell_count);
        let mut out = Vec::new();
        for seed in cells.iter() {
            if seen.contains(seed) {
                continue;
            }
            let mut comp = Bits::new(self.cell_count);
            let mut queue = std::collections::VecDeque::new();
            comp.insert(seed);
            seen.insert(seed);
            queue.push_back(seed);
            while let Some(c) = queue.pop_front() {
                for n in self.neighbors(c, mode) {
                    if cells.contains(n) && !seen.contains(n) {
                        seen.insert(n);
                        comp.insert(n);
                        queue.push_back(n);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Is there a path from `a` to `b` inside `passable`?
    pub fn connects(&self, passable: &Bits, a: &Bits, b: &Bits, mode: Mode) -> bool {
        if a.is_empty() || b.is_empty() {
            return false;
        }
        let dist = self.distances(passable, a, mode);
        b.iter().any(|c| dist[c].is_some())
    }

    /// A shortest path witnessing connectivity, as a cell list.
    pub fn witness_path(
        &self,
        passable: &Bits,
        a: &Bits,
        b: &Bits,
        mode: Mode,
    ) -> Option<Vec<usize>> {
        let dist = self.distances(passable, a, mode);
        let end = b.iter().filter(|&c| dist[c].is_some()).min_by_key(|&c| dist[c])?;
        let mut path = vec![end];
        let mut cur = end;
        while dist[cur] != Some(0) {
            let d = dist[cur].unwrap();
            let prev = self
                .neighbors(cur, mode)
                .into_iter()
                .find(|&n| dist[n] == Some(d - 1))
                .expect("BFS predecessor exists");
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        Some(path)
    }
}

/// A map from cells to rationals in `[0, 1]`, dense over a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellFunction {
    pub values: Vec<Q>,
}

impl CellFunction {
    pub fn constant(complex: &GridComplex, value: Q) -> CellFunction {
        CellFunction {
            values: vec![value; complex.cell_count()],
        }
    }

    pub fn get(&self, cell: usize) -> Q {
        self.values[cell]
    }

    pub fn check_range(&self) -> Result<(), GridError> {
        for v in &self.values {
            if *v < Q::new(0, 1) || *v > Q::new(1, 1) {
                return Err(GridError::ValueOutOfRange(format_ratio(*v)));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Interchange formats

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridComplexFile {
    pub dim: usize,
    pub res: u32,
}

impl GridComplexFile {
    pub fn to_complex(&self, cap: usize) -> Result<GridComplex, GridError> {
        GridComplex::new(self.dim, self.res, cap)
    }
}

/// Cell sets travel as lists of integer tuples.
pub fn cells_to_json(complex: &GridComplex, cells: &Bits) -> Vec<Vec<u32>> {
    cells.iter().map(|c| complex.coords(c)).collect()
}

pub fn cells_from_json(complex: &GridComplex, list: &[Vec<u32>]) -> Result<Bits, GridError> {
    let mut b = Bits::new(complex.cell_count());
    for coords in list {
        b.insert(complex.index(coords)?);
    }
    Ok(b)
}

/// Cell functions travel as `(cell, "p/q")` pairs.
pub fn function_to_json(complex: &GridComplex, f: &CellFunction) -> Vec<(Vec<u32>, String)> {
    (0..complex.cell_count())
        .map(|c| (complex.coords(c), format_ratio(f.values[c])))
        .collect()
}

pub fn function_from_json(
    complex: &GridComplex,
    pairs: &[(Vec<u32>, String)],
) -> Result<CellFunction, GridError> {
    if pairs.len() != complex.cell_count() {
        return Err(GridError::WrongLength {
            expected: complex.cell_count(),
            got: pairs.len(),
        });
    }
    let mut values = vec![Q::new(0, 1); complex.cell_count()];
    let mut seen = Bits::new(complex.cell_count());
    for (coords, text) in pairs {
        let id = complex.index(coords)?;
        values[id] = parse_ratio(text)?;
        seen.insert(id);
    }
    if seen.count() != complex.cell_count() {
        return Err(GridError::WrongLength {
            expected: complex.cell_count(),
            got: seen.count(),
        });
    }
    Ok(CellFunction { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn grid2(res: u32) -> GridComplex {
        GridComplex::new(2, res, 200_000).unwrap()
    }

    #[test]
    fn corner_cells_closed_vs_open() {
        let g = grid2(2);
        // cells (0,0) and (1,1) share only a corner
        let a = g.index(&[0, 0]).unwrap();
        let b = g.index(&[1, 1]).unwrap();
        let set = Bits::from_indices(g.cell_count(), [a, b]);
        assert_eq!(g.components(&set, Mode::Closed).len(), 1);
        assert_eq!(g.components(&set, Mode::Open).len(), 2);
    }

    #[test]
    fn full_grid_is_connected_in_both_modes() {
        let g = grid2(4);
        let all = g.full_set();
        assert_eq!(g.components(&all, Mode::Closed).len(), 1);
        assert_eq!(g.components(&all, Mode::Open).len(), 1);
    }

    #[test]
    fn neighbor_counts() {
        let g = grid2(3);
        let center = g.index(&[1, 1]).unwrap();
        assert_eq!(g.neighbors(center, Mode::Closed).len(), 8);
        assert_eq!(g.neighbors(center, Mode::Open).len(), 4);
        let corner = g.index(&[0, 0]).unwrap();
        assert_eq!(g.neighbors(corner, Mode::Closed).len(), 3);
        assert_eq!(g.neighbors(corner, Mode::Open).len(), 2);
    }

    #[test]
    fn faces_are_boundary_layers() {
        let g = grid2(3);
        let left = g.face(0, false);
        assert_eq!(left.count(), 3);
        for c in left.iter() {
            assert_eq!(g.coords(c)[0], 0);
        }
    }

    #[test]
    fn coordinate_functions() {
        let g = GridComplex::new(1, 5, 1000).unwrap();
        let f = g.coordinate_function(0);
        assert_eq!(f.values, vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4), q(1, 1)]);
        let c = g.center_function(0);
        assert_eq!(c.values[0], q(1, 10));
        assert_eq!(c.values[4], q(9, 10));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            GridComplex::new(4, 100, 200_000),
            Err(GridError::CapExceeded { .. })
        ));
    }

    #[test]
    fn index_coords_round_trip() {
        let g = GridComplex::new(3, 4, 200_000).unwrap();
        for id in 0..g.cell_count() {
            assert_eq!(g.index(&g.coords(id)).unwrap(), id);
        }
    }

    #[test]
    fn function_json_round_trip() {
        let g = grid2(3);
        let f = g.coordinate_function(1);
        let json = function_to_json(&g, &f);
        let back = function_from_json(&g, &json).unwrap();
        assert_eq!(f, back);
    }
}
