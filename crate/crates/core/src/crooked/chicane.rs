//! Chicanes: construction from maps into the crooked partition, and
//! exhaustive search over closed-set systems.
//!
//! A chicane for a pliable foursome `(C, D, F, G)` is a closed triple
//! cover `(X0, X1, X2)` with `C c X0`, `D c X2`, `X0 n X2 = 0`,
//! `X0 n X1 n G = 0` and `X1 n X2 n F = 0`. Slicing the preimage of the
//! crooked partition at `x = 5/14` and `x = 9/14` produces one whenever
//! `f` is a Urysohn function for the foursome and `(g, f)` maps into `P`;
//! `chicane_from_maps` is that construction with every hypothesis and
//! every conclusion checked at runtime.

use super::{p0_threshold, p2_threshold, CrookedError, CrookedPartition};
use crate::bits::Bits;
use crate::budget::NodeCounter;
use crate::grid::{CellFunction, Foursome, GridComplex};
use crate::lattice::{generate_set_lattice, SetLattice};
use crate::rational::{q0, q1, Q};

/// A chicane on a grid subcomplex, tagged with its foursome.
#[derive(Debug, Clone)]
pub struct Chicane {
    pub x0: Bits,
    pub x1: Bits,
    pub x2: Bits,
    pub foursome: Foursome,
}

impl Chicane {
    /// Names of the six conditions, in checking order.
    pub const CONDITIONS: [&'static str; 6] = [
        "cover",
        "c_in_x0",
        "d_in_x2",
        "x0_x2_disjoint",
        "x0_x1_g_empty",
        "x1_x2_f_empty",
    ];

    /// Returns the names of violated conditions; empty means valid.
    pub fn violations(&self, domain: &Bits) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.x0.union(&self.x1).union(&self.x2) != *domain {
            out.push(Self::CONDITIONS[0]);
        }
        if !self.foursome.c.is_subset(&self.x0) {
            out.push(Self::CONDITIONS[1]);
        }
        if !self.foursome.d.is_subset(&self.x2) {
            out.push(Self::CONDITIONS[2]);
        }
        if self.x0.intersects(&self.x2) {
            out.push(Self::CONDITIONS[3]);
        }
        if self.x0.intersection(&self.x1).intersects(&self.foursome.g) {
            out.push(Self::CONDITIONS[4]);
        }
        if self.x1.intersection(&self.x2).intersects(&self.foursome.f) {
            out.push(Self::CONDITIONS[5]);
        }
        out
    }
}

/// Builds the chicane `X_j = g^{-1}[P_j]` on `domain`.
///
/// Preconditions checked: the foursome is pliable, `f` satisfies the four
/// Urysohn range conditions, and `(g(x), f(x))` lies in `P` for every cell
/// of the domain. Cells with `g` exactly on a threshold belong to both
/// adjacent slices (the slices are closed).
pub fn chicane_from_maps(
    partition: &CrookedPartition,
    complex: &GridComplex,
    domain: &Bits,
    foursome: &Foursome,
    f: &CellFunction,
    g: &CellFunction,
) -> Result<Chicane, CrookedError> {
    foursome.check_pliable().map_err(CrookedError::Grid)?;
    let half = Q::new(1, 2);
    for cell in foursome.c.iter() {
        if f.get(cell) != q0() {
            return Err(CrookedError::NotUrysohn("f[C] = {0}"));
        }
    }
    for cell in foursome.d.iter() {
        if f.get(cell) != q1() {
            return Err(CrookedError::NotUrysohn("f[D] = {1}"));
        }
    }
    for cell in foursome.g.iter() {
        if f.get(cell) > half {
            return Err(CrookedError::NotUrysohn("f[G] c [0, 1/2]"));
        }
    }
    for cell in foursome.f.iter() {
        if f.get(cell) < half {
            return Err(CrookedError::NotUrysohn("f[F] c [1/2, 1]"));
        }
    }
    let outside: Vec<usize> = domain
        .iter()
        .filter(|&cell| !partition.contains(g.get(cell), f.get(cell)))
        .collect();
    if let Some(&first) = outside.first() {
        return Err(CrookedError::ImageOutsideP {
            count: outside.len(),
            first: complex.coords(first),
        });
    }
    let (t0, t2) = (p0_threshold(), p2_threshold());
    let mut x0 = Bits::new(complex.cell_count());
    let mut x1 = Bits::new(complex.cell_count());
    let mut x2 = Bits::new(complex.cell_count());
    for cell in domain.iter() {
        let gv = g.get(cell);
        if gv <= t0 {
            x0.insert(cell);
        }
        if t0 <= gv && gv <= t2 {
            x1.insert(cell);
        }
        if gv >= t2 {
            x2.insert(cell);
        }
    }
    let chicane = Chicane {
        x0,
        x1,
        x2,
        foursome: foursome.clone(),
    };
    // the six conditions follow from the checked preconditions and the
    // partition invariants; verified anyway
    let violations = chicane.violations(domain);
    debug_assert!(violations.is_empty(), "violated: {violations:?}");
    Ok(chicane)
}

// ---------------------------------------------------------------------------
// Closed-set systems and exhaustive chicane search

/// A finite closed-set system: a universe of points with an
/// intersection-closed base and the set lattice it generates.
#[derive(Debug, Clone)]
pub struct SetSystem {
    pub universe: Vec<String>,
    pub base: Vec<Bits>,
    lattice: SetLattice,
}

impl SetSystem {
    pub fn new(universe: Vec<String>, base: Vec<Bits>) -> Result<SetSystem, CrookedError> {
        for a in &base {
            for b in &base {
                let meet = a.intersection(b);
                if !base.contains(&meet) {
                    return Err(CrookedError::BaseNotIntersectionClosed);
                }
            }
        }
        let lattice = generate_set_lattice(universe.clone(), &base, usize::MAX)
            .map_err(|_| CrookedError::BaseNotIntersectionClosed)?;
        Ok(SetSystem {
            universe,
            base,
            lattice,
        })
    }

    /// The discrete system on `n` points with every subset in the base.
    pub fn discrete(n: usize) -> SetSystem {
        let universe: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let base = (0..1usize << n)
            .map(|mask| Bits::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .collect();
        SetSystem::new(universe, base).expect("power set is intersection closed")
    }

    /// The generated closed-set lattice.
    pub fn closed_sets(&self) -> &SetLattice {
        &self.lattice
    }

    pub fn full(&self) -> Bits {
        Bits::full(self.universe.len())
    }
}

/// A chicane made of closed sets of a system.
#[derive(Debug, Clone)]
pub struct SetChicane {
    pub x0: Bits,
    pub x1: Bits,
    pub x2: Bits,
}

impl SetChicane {
    pub fn verify(&self, system: &SetSystem, foursome: &Foursome) -> bool {
        let full = system.full();
        self.x0.union(&self.x1).union(&self.x2) == full
            && foursome.c.is_subset(&self.x0)
            && foursome.d.is_subset(&self.x2)
            && !self.x0.intersects(&self.x2)
            && !self.x0.intersection(&self.x1).intersects(&foursome.g)
            && !self.x1.intersection(&self.x2).intersects(&foursome.f)
    }
}

#[derive(Debug, Clone)]
pub enum ChicaneSearchOutcome {
    Found {
        chicane: SetChicane,
        triples_examined: u64,
    },
    /// No chicane exists; the search over lattice-member triples was
    /// exhaustive.
    Exhausted { triples_examined: u64 },
    OutOfBudget { triples_examined: u64 },
}

impl ChicaneSearchOutcome {
    pub fn found(&self) -> bool {
        matches!(self, ChicaneSearchOutcome::Found { .. })
    }
}

/// Exhaustive backtracking over triples of closed sets of the system.
/// The foursome must be pliable and drawn from the closed-set family.
pub fn chicane_search(
    system: &SetSystem,
    foursome: &Foursome,
    max_nodes: u64,
) -> Result<ChicaneSearchOutcome, CrookedError> {
    foursome.check_pliable().map_err(CrookedError::Grid)?;
    let members = system.closed_sets().members();
    for part in [&foursome.c, &foursome.d, &foursome.f, &foursome.g] {
        if !members.contains(part) {
            return Err(CrookedError::FoursomeNotInFamily);
        }
    }
    let full = system.full();
    let mut counter = NodeCounter::new(max_nodes);
    for x0 in members {
        if !counter.tick() {
            return Ok(ChicaneSearchOutcome::OutOfBudget {
                triples_examined: counter.visited,
            });
        }
        if !foursome.c.is_subset(x0) {
            continue;
        }
        for x2 in members {
            if !counter.tick() {
                return Ok(ChicaneSearchOutcome::OutOfBudget {
                    triples_examined: counter.visited,
                });
            }
            if !foursome.d.is_subset(x2) || x0.intersects(x2) {
                continue;
            }
            for x1 in members {
                if !counter.tick() {
                    return Ok(ChicaneSearchOutcome::OutOfBudget {
                        triples_examined: counter.visited,
                    });
                }
                let chicane = SetChicane {
                    x0: x0.clone(),
                    x1: x1.clone(),
                    x2: x2.clone(),
                };
                if x0.union(x1).union(x2) == full && chicane.verify(system, foursome) {
                    return Ok(ChicaneSearchOutcome::Found {
                        chicane,
                        triples_examined: counter.visited,
                    });
                }
            }
        }
    }
    Ok(ChicaneSearchOutcome::Exhausted {
        triples_examined: counter.visited,
    })
}

/// Does every pliable foursome drawn from the closed-set family admit a
/// chicane? This is the oracle side of the hereditary-indecomposability
/// sentence; `None` on budget exhaustion.
pub fn all_foursomes_admit_chicanes(
    system: &SetSystem,
    max_nodes: u64,
) -> Result<Option<bool>, CrookedError> {
    let members = system.closed_sets().members().to_vec();
    let mut counter = NodeCounter::new(max_nodes);
    for c in &members {
        for d in &members {
            if c.intersects(d) {
                continue;
            }
            for f in &members {
                if c.intersects(f) {
                    continue;
                }
                for g in &members {
                    if d.intersects(g) {
                        continue;
                    }
                    if !counter.tick() {
                        return Ok(None);
                    }
                    let foursome = Foursome {
                        c: c.clone(),
                        d: d.clone(),
                        f: f.clone(),
                        g: g.clone(),
                    };
                    let remaining = counter.limit - counter.visited + 1;
                    match chicane_search(system, &foursome, remaining)? {
                        ChicaneSearchOutcome::Found { triples_examined, .. } => {
                            counter.visited += triples_examined;
                        }
                        ChicaneSearchOutcome::Exhausted { .. } => return Ok(Some(false)),
                        ChicaneSearchOutcome::OutOfBudget { .. } => return Ok(None),
                    }
                }
            }
        }
    }
    Ok(Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{foursome_urysohn, GridComplex};
    use crate::rational::q;

    fn cells(n: usize, ids: &[usize]) -> Bits {
        Bits::from_indices(n, ids.iter().copied())
    }

    #[test]
    fn degenerate_foursome_gives_single_slice() {
        // D empty, g constant 1/7, f constant 0: the image is R1's bottom
        // left corner region, inside P
        let p = CrookedPartition::standard();
        let g = GridComplex::new(2, 14, 200_000).unwrap();
        let domain = g.full_set();
        let n = g.cell_count();
        let foursome = Foursome {
            c: cells(n, &[0]),
            d: cells(n, &[]),
            f: cells(n, &[]),
            g: cells(n, &[]),
        };
        let f_fun = CellFunction::constant(&g, q(0, 1));
        let g_fun = CellFunction::constant(&g, q(1, 7));
        let chicane = chicane_from_maps(&p, &g, &domain, &foursome, &f_fun, &g_fun).unwrap();
        assert_eq!(chicane.x0, domain);
        assert!(chicane.x1.is_empty());
        assert!(chicane.x2.is_empty());
        assert!(chicane.violations(&domain).is_empty());
    }

    #[test]
    fn p_grid_chicane_is_valid() {
        // the worked example: domain = P-grid at resolution 14,
        // f = normalized y-index, g = x-center
        let p = CrookedPartition::standard();
        let g = GridComplex::new(2, 14, 200_000).unwrap();
        let domain = p.grid_cells(&g).unwrap();
        let f_fun = g.coordinate_function(1);
        let g_fun = g.center_function(0);
        let n = g.cell_count();
        let mut c = Bits::new(n);
        let mut d = Bits::new(n);
        let mut gg = Bits::new(n);
        let mut ff = Bits::new(n);
        for cell in domain.iter() {
            let y = g.coords(cell)[1];
            if y == 0 {
                c.insert(cell);
            }
            if y == 13 {
                d.insert(cell);
            }
            if y == 3 {
                gg.insert(cell); // f = 3/13 < 1/2
            }
            if y == 10 {
                ff.insert(cell); // f = 10/13 > 1/2
            }
        }
        assert!(!c.is_empty() && !d.is_empty() && !gg.is_empty() && !ff.is_empty());
        let foursome = Foursome { c, d, f: ff, g: gg };
        let chicane = chicane_from_maps(&p, &g, &domain, &foursome, &f_fun, &g_fun).unwrap();
        assert!(chicane.violations(&domain).is_empty());
        assert!(!chicane.x0.is_empty() && !chicane.x1.is_empty() && !chicane.x2.is_empty());
    }

    #[test]
    fn image_outside_p_is_reported() {
        let p = CrookedPartition::standard();
        let g = GridComplex::new(2, 14, 200_000).unwrap();
        let domain = g.full_set();
        let n = g.cell_count();
        let foursome = Foursome {
            c: cells(n, &[]),
            d: cells(n, &[]),
            f: cells(n, &[]),
            g: cells(n, &[]),
        };
        // g = 0 maps everything to the left edge, outside P
        let f_fun = CellFunction::constant(&g, q(0, 1));
        let g_fun = CellFunction::constant(&g, q(0, 1));
        match chicane_from_maps(&p, &g, &domain, &foursome, &f_fun, &g_fun) {
            Err(CrookedError::ImageOutsideP { count, .. }) => {
                assert_eq!(count, g.cell_count());
            }
            other => panic!("expected image error, got {other:?}"),
        }
    }

    #[test]
    fn discrete_system_always_has_chicanes() {
        let system = SetSystem::discrete(3);
        let n = 3;
        let foursome = Foursome {
            c: cells(n, &[0]),
            d: cells(n, &[1]),
            f: cells(n, &[1]),
            g: cells(n, &[0]),
        };
        match chicane_search(&system, &foursome, 1_000_000).unwrap() {
            ChicaneSearchOutcome::Found { chicane, .. } => {
                assert!(chicane.verify(&system, &foursome));
            }
            other => panic!("expected chicane, got {other:?}"),
        }
        // and the (X \ D, 0, D) pattern verifies directly
        let direct = SetChicane {
            x0: foursome.d.complement(),
            x1: Bits::new(n),
            x2: foursome.d.clone(),
        };
        assert!(direct.verify(&system, &foursome));
        assert_eq!(all_foursomes_admit_chicanes(&system, 10_000_000).unwrap(), Some(true));
    }

    #[test]
    fn pliability_is_checked() {
        let system = SetSystem::discrete(2);
        let foursome = Foursome {
            c: cells(2, &[0]),
            d: cells(2, &[0]),
            f: cells(2, &[]),
            g: cells(2, &[]),
        };
        assert!(chicane_search(&system, &foursome, 1000).is_err());
    }

    #[test]
    fn connected_two_cell_system_fails_some_foursome()  {
        // universe {a, b, p}: base contains {a}, {b}, {a,b} and the whole
        // set but nothing else containing p; the foursome
        // ({a}, {b}, {b}, {a}) admits no chicane
        let base = vec![
            Bits::new(3),
            cells(3, &[0]),
            cells(3, &[1]),
            cells(3, &[0, 1]),
            Bits::full(3),
        ];
        let system = SetSystem::new(vec!["a".into(), "b".into(), "p".into()], base).unwrap();
        let foursome = Foursome {
            c: cells(3, &[0]),
            d: cells(3, &[1]),
            f: cells(3, &[1]),
            g: cells(3, &[0]),
        };
        match chicane_search(&system, &foursome, 1_000_000).unwrap() {
            ChicaneSearchOutcome::Exhausted { .. } => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
        assert_eq!(
            all_foursomes_admit_chicanes(&system, 10_000_000).unwrap(),
            Some(false)
        );
    }

    #[test]
    fn urysohn_preconditions_are_checked() {
        let p = CrookedPartition::standard();
        let g = GridComplex::new(1, 8, 200_000).unwrap();
        let n = g.cell_count();
        let foursome = Foursome {
            c: cells(n, &[0]),
            d: cells(n, &[7]),
            f: cells(n, &[5]),
            g: cells(n, &[2]),
        };
        let f_fun = foursome_urysohn(&g, &foursome).unwrap();
        let bad_f = CellFunction::constant(&g, q(1, 2));
        let g_fun = CellFunction::constant(&g, q(3, 14));
        let domain = g.full_set();
        assert!(matches!(
            chicane_from_maps(&p, &g, &domain, &foursome, &bad_f, &g_fun),
            Err(CrookedError::NotUrysohn("f[C] = {0}"))
        ));
        // with the genuine Urysohn function but g constant 3/14 the image
        // is the vertical segment {3/14} x [0,1], which leaves P at the top
        assert!(matches!(
            chicane_from_maps(&p, &g, &domain, &foursome, &f_fun, &g_fun),
            Err(CrookedError::ImageOutsideP { .. })
        ));
    }
}
