//! Bing's constructions at grid resolution.
//!
//! `bing_construction` intersects preimages of the crooked partition under
//! diagonal maps pairing even coordinates with supplied functions; each
//! preimage is checked to be a partition between the corresponding pair of
//! even faces.
//!
//! `bing_partition` iterates the recursion `W_{j,i+1} = u_i^{-1}[M_j]`
//! with `u_i = g_i diag f_i` and `g_i` the Urysohn function of the current
//! closures. The closure of a cell-open set is its closed-neighborhood
//! closure (a cell function that vanishes on the open region must vanish
//! on every cell whose box touches its closure). Each step requires the
//! two closures to stay disjoint; at coarse resolutions the step budget
//! runs out quickly, because every iteration refines the separating scale
//! by roughly a factor of seven, and the construction reports a
//! construction error rather than a wrong partition.

use super::{CrookedError, CrookedPartition, Region};
use crate::bits::Bits;
use crate::grid::{
    is_partition_between, urysohn_lenient, CellFunction, GridComplex, GridError, PartitionCheck,
};

/// Result of the intersection construction.
#[derive(Debug, Clone)]
pub struct BingConstruction {
    /// The intersection of the preimages.
    pub result: Bits,
    /// `preimages[i]` = cells whose diagonal image lies in `P`.
    pub preimages: Vec<Bits>,
    /// Even-face partition check per preimage.
    pub partition_checks: Vec<PartitionCheck>,
    /// Axis paired with each function.
    pub axes: Vec<usize>,
}

impl BingConstruction {
    pub fn all_partitions_verified(&self) -> bool {
        self.partition_checks.iter().all(|c| c.separates)
    }
}

/// Computes `X = intersection of u_i^{-1}[P]` where `u_i` pairs the cell
/// center of axis `2(i-1)` with `fs[i-1]`. The grid must have dimension
/// `2k` (any grid when `k = 0`: the empty intersection is everything) and
/// resolution divisible by 14.
pub fn bing_construction(
    partition: &CrookedPartition,
    complex: &GridComplex,
    fs: &[CellFunction],
) -> Result<BingConstruction, CrookedError> {
    let k = fs.len();
    if k > 0 && complex.dim() != 2 * k {
        return Err(CrookedError::DimensionMismatch {
            dim: complex.dim(),
            expected: 2 * k,
        });
    }
    if complex.res() % 14 != 0 {
        return Err(CrookedError::NotAligned(complex.res()));
    }
    for f in fs {
        f.check_range().map_err(CrookedError::Grid)?;
        if f.values.len() != complex.cell_count() {
            return Err(CrookedError::Grid(GridError::WrongLength {
                expected: complex.cell_count(),
                got: f.values.len(),
            }));
        }
    }
    let mut result = complex.full_set();
    let mut preimages = Vec::new();
    let mut partition_checks = Vec::new();
    let mut axes = Vec::new();
    for (idx, f) in fs.iter().enumerate() {
        let axis = 2 * idx;
        let centers = complex.center_function(axis);
        let mut pre = Bits::new(complex.cell_count());
        for cell in 0..complex.cell_count() {
            if partition.contains(centers.get(cell), f.get(cell)) {
                pre.insert(cell);
            }
        }
        let check = is_partition_between(
            complex,
            &complex.full_set(),
            &pre,
            &complex.face(axis, false),
            &complex.face(axis, true),
        )?;
        result = result.intersection(&pre);
        preimages.push(pre);
        partition_checks.push(check);
        axes.push(axis);
    }
    Ok(BingConstruction {
        result,
        preimages,
        partition_checks,
        axes,
    })
}

/// One step of the partition recursion.
#[derive(Debug, Clone)]
pub struct BingStep {
    pub w0: Bits,
    pub w1: Bits,
    /// `cl W_{j,i-1} c W_{j,i}` (holds by construction; recorded).
    pub monotone: bool,
    /// Closed-neighborhood closures of the two regions are disjoint.
    pub closures_disjoint: bool,
}

/// Result of the partition construction.
#[derive(Debug, Clone)]
pub struct BingPartition {
    /// `steps[0]` is the initial pair `(F0, F1)`.
    pub steps: Vec<BingStep>,
    pub w0: Bits,
    pub w1: Bits,
    /// The complement `L` of `W0 u W1`.
    pub core: Bits,
    pub f0_contained: bool,
    pub f1_contained: bool,
    pub disjoint: bool,
    /// Is `L` a partition between `F0` and `F1`?
    pub partition_check: PartitionCheck,
}

impl BingPartition {
    pub fn monotone_chains_verified(&self) -> bool {
        self.steps.iter().all(|s| s.monotone)
    }

    pub fn all_verified(&self) -> bool {
        self.monotone_chains_verified()
            && self.f0_contained
            && self.f1_contained
            && self.disjoint
            && self.partition_check.separates
    }
}

/// Iterates the recursion for `steps` iterations starting from the
/// neighborhoods `W_{j,0} = F_j`. Errors when `F0` and `F1` overlap, when
/// too few functions are supplied, or when the closures of the current
/// regions touch (the Urysohn step then has no room).
pub fn bing_partition(
    partition: &CrookedPartition,
    complex: &GridComplex,
    f0: &Bits,
    f1: &Bits,
    fs: &[CellFunction],
    steps: usize,
) -> Result<BingPartition, CrookedError> {
    if f0.intersects(f1) {
        return Err(CrookedError::Grid(GridError::NotDisjoint("F0", "F1")));
    }
    if f0.is_empty() || f1.is_empty() {
        return Err(CrookedError::Grid(GridError::EmptySet("F0/F1")));
    }
    if steps > fs.len() {
        return Err(CrookedError::NotEnoughFunctions {
            steps,
            supplied: fs.len(),
        });
    }
    if complex.res() % 14 != 0 {
        return Err(CrookedError::NotAligned(complex.res()));
    }
    let mut w0 = f0.clone();
    let mut w1 = f1.clone();
    let mut trace = vec![BingStep {
        w0: w0.clone(),
        w1: w1.clone(),
        monotone: true,
        closures_disjoint: !complex.closure(&w0).intersects(&complex.closure(&w1)),
    }];
    for (i, f) in fs.iter().take(steps).enumerate() {
        let cl0 = complex.closure(&w0);
        let cl1 = complex.closure(&w1);
        if cl0.intersects(&cl1) {
            return Err(CrookedError::ClosuresTouch { step: i });
        }
        let g = urysohn_lenient(complex, &cl0, &cl1);
        let mut next0 = Bits::new(complex.cell_count());
        let mut next1 = Bits::new(complex.cell_count());
        for cell in 0..complex.cell_count() {
            match partition.region(g.get(cell), f.get(cell)) {
                Region::M0 => next0.insert(cell),
                Region::M1 => next1.insert(cell),
                Region::P => {}
            }
        }
        let monotone = cl0.is_subset(&next0) && cl1.is_subset(&next1);
        let closures_disjoint = !complex.closure(&next0).intersects(&complex.closure(&next1));
        w0 = w0.union(&next0);
        w1 = w1.union(&next1);
        trace.push(BingStep {
            w0: next0,
            w1: next1,
            monotone,
            closures_disjoint,
        });
    }
    let core = w0.union(&w1).complement();
    let partition_check = is_partition_between(complex, &complex.full_set(), &core, f0, f1)?;
    Ok(BingPartition {
        f0_contained: f0.is_subset(&w0),
        f1_contained: f1.is_subset(&w1),
        disjoint: !w0.intersects(&w1),
        partition_check,
        steps: trace,
        w0,
        w1,
        core,
    })
}
