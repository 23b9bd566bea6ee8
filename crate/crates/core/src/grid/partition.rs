//! Partitions between closed sets, essential families, and the restriction
//! lemma.
//!
//! A partition between `A` and `B` is a closed set whose complement splits
//! into open pieces separating `A` from `B`; in cell terms, no open-mode
//! component of the complement meets both. `is_partition_between` checks
//! the separation condition for any `L`; the essential-family search
//! quantifies over partitions disjoint from `A u B` (the classical
//! notion), since a family is essential when every such choice of
//! partitions has a common point.
//!
//! Deciding essentiality is co-NP-like, so the check is three-valued:
//! `Essential` is claimed only when the enumeration of minimal separators
//! was provably exhaustive within budget (supersets of separators are
//! separators, so minimal ones decide everything), `Inessential` carries
//! verified witness partitions with empty intersection, and `Unknown`
//! names the exhausted budget.

use super::{GridComplex, GridError, Mode};
use crate::bits::Bits;
use crate::budget::NodeCounter;

/// Outcome of a partition check.
#[derive(Debug, Clone)]
pub struct PartitionCheck {
    pub separates: bool,
    /// When the check fails, an open-mode cell path from `A` to `B`
    /// avoiding `L`.
    pub witness_path: Option<Vec<usize>>,
}

/// True iff no open-mode component of `domain \ L` meets both `A \ L` and
/// `B \ L`.
pub fn is_partition_between(
    complex: &GridComplex,
    domain: &Bits,
    l: &Bits,
    a: &Bits,
    b: &Bits,
) -> Result<PartitionCheck, GridError> {
    if a.intersects(b) {
        return Err(GridError::NotDisjoint("A", "B"));
    }
    let passable = domain.difference(l);
    let a_free = a.intersection(&passable);
    let b_free = b.intersection(&passable);
    if complex.connects(&passable, &a_free, &b_free, Mode::Open) {
        let witness_path = complex.witness_path(&passable, &a_free, &b_free, Mode::Open);
        Ok(PartitionCheck {
            separates: false,
            witness_path,
        })
    } else {
        Ok(PartitionCheck {
            separates: true,
            witness_path: None,
        })
    }
}

/// Three-valued essentiality verdict.
#[derive(Debug, Clone)]
pub enum Essentiality {
    /// Every choice of partitions has a common cell; enumeration of
    /// minimal separators was exhaustive.
    Essential { nodes: u64 },
    /// Witness partitions, each verified, with empty intersection.
    Inessential { partitions: Vec<Bits>, nodes: u64 },
    /// The node budget ran out first.
    Unknown { nodes: u64 },
}

impl Essentiality {
    pub fn is_essential(&self) -> bool {
        matches!(self, Essentiality::Essential { .. })
    }

    pub fn is_inessential(&self) -> bool {
        matches!(self, Essentiality::Inessential { .. })
    }
}

/// Decides whether the pairs form an essential family in `domain`.
///
/// Partitions range over closed cell sets disjoint from their pair (see
/// the module docs); minimal ones are enumerated by backtracking over the
/// complement graph, and only tuples of minimal separators need checking:
/// enlarging any separator only grows the intersection.
pub fn essential_check(
    complex: &GridComplex,
    domain: &Bits,
    pairs: &[(Bits, Bits)],
    max_nodes: u64,
) -> Result<Essentiality, GridError> {
    for (a, b) in pairs {
        if a.intersects(b) {
            return Err(GridError::NotDisjoint("A_i", "B_i"));
        }
    }
    let mut counter = NodeCounter::new(max_nodes);
    // the empty family: the empty intersection is the whole domain
    if pairs.is_empty() {
        return Ok(if domain.is_empty() {
            Essentiality::Inessential {
                partitions: Vec::new(),
                nodes: 0,
            }
        } else {
            Essentiality::Essential { nodes: 0 }
        });
    }
    let mut all_partitions: Vec<Vec<Bits>> = Vec::new();
    for (a, b) in pairs {
        match minimal_separators(complex, domain, a, b, &mut counter) {
            Some(list) => all_partitions.push(list),
            None => {
                return Ok(Essentiality::Unknown {
                    nodes: counter.visited,
                })
            }
        }
    }
    // search tuples for an empty intersection; prune as soon as the
    // running intersection dies, completing with first choices
    let mut chosen: Vec<usize> = Vec::new();
    match tuple_search(domain, &all_partitions, &mut chosen, 0, domain, &mut counter) {
        TupleOutcome::Empty(witness) => {
            for (i, l) in witness.iter().enumerate() {
                debug_assert!(
                    is_partition_between(complex, domain, l, &pairs[i].0, &pairs[i].1)
                        .unwrap()
                        .separates
                );
            }
            Ok(Essentiality::Inessential {
                partitions: witness,
                nodes: counter.visited,
            })
        }
        TupleOutcome::AllMeet => Ok(Essentiality::Essential {
            nodes: counter.visited,
        }),
        TupleOutcome::OutOfBudget => Ok(Essentiality::Unknown {
            nodes: counter.visited,
        }),
    }
}

enum TupleOutcome {
    Empty(Vec<Bits>),
    AllMeet,
    OutOfBudget,
}

fn tuple_search(
    domain: &Bits,
    partitions: &[Vec<Bits>],
    chosen: &mut Vec<usize>,
    depth: usize,
    running: &Bits,
    counter: &mut NodeCounter,
) -> TupleOutcome {
    if !counter.tick() {
        return TupleOutcome::OutOfBudget;
    }
    if running.is_empty() {
        // any completion keeps the intersection empty
        let mut witness: Vec<Bits> = chosen
            .iter()
            .enumerate()
            .map(|(i, &j)| partitions[i][j].clone())
            .collect();
        for rest in partitions.iter().skip(depth) {
            witness.push(rest[0].clone());
        }
        return TupleOutcome::Empty(witness);
    }
    if depth == partitions.len() {
        return TupleOutcome::AllMeet;
    }
    // a pair with no admissible partition makes the family vacuously
    // essential: there is no choice of partitions at all
    if partitions[depth].is_empty() {
        return TupleOutcome::AllMeet;
    }
    for (j, l) in partitions[depth].iter().enumerate() {
        chosen.push(j);
        let next = running.intersection(l);
        match tuple_search(domain, partitions, chosen, depth + 1, &next, counter) {
            TupleOutcome::AllMeet => {}
            other => return other,
        }
        chosen.pop();
    }
    TupleOutcome::AllMeet
}

/// Enumerates all inclusion-minimal cell sets `L` disjoint from `A u B`
/// within `domain` such that `L` separates `A` from `B`. Returns `None` on
/// budget exhaustion.
///
/// Backtracking over the candidate cells in ascending order; along each
/// branch:
/// * if the included cells already separate, every extension is a
///   redundant superset, so the candidate is emitted (after a minimality
///   check) and the subtree pruned;
/// * if `A` reaches `B` through cells that can no longer enter `L`, no
///   extension separates, so the branch dies.
fn minimal_separators(
    complex: &GridComplex,
    domain: &Bits,
    a: &Bits,
    b: &Bits,
    counter: &mut NodeCounter,
) -> Option<Vec<Bits>> {
    let forbidden = a.union(b);
    let candidates: Vec<usize> = domain.difference(&forbidden).iter().collect();
    let mut included = Bits::new(domain.len());
    let mut excluded = Bits::new(domain.len());
    let mut out = Vec::new();
    if !separators_rec(
        complex, domain, a, b, &candidates, 0, &mut included, &mut excluded, &mut out, counter,
    ) {
        return None;
    }
    out.sort();
    Some(out)
}

#[allow(clippy::too_many_arguments)]
fn separators_rec(
    complex: &GridComplex,
    domain: &Bits,
    a: &Bits,
    b: &Bits,
    candidates: &[usize],
    next: usize,
    included: &mut Bits,
    excluded: &mut Bits,
    out: &mut Vec<Bits>,
    counter: &mut NodeCounter,
) -> bool {
    if !counter.tick() {
        return false;
    }
    // already separating: emit if minimal, prune extensions
    let passable = domain.difference(included);
    if !complex.connects(&passable, a, b, Mode::Open) {
        if is_minimal_separator(complex, domain, a, b, included) {
            out.push(included.clone());
        }
        return true;
    }
    // hopeless: A reaches B through cells that will never be in L
    let dead = excluded
        .union(a)
        .union(b)
        .intersection(domain)
        .difference(included);
    let never_l: Bits = {
        // cells decided out of L, plus A and B themselves
        dead
    };
    if complex.connects(&never_l, a, b, Mode::Open) {
        return true;
    }
    if next == candidates.len() {
        return true;
    }
    let cell = candidates[next];
    included.insert(cell);
    let ok = separators_rec(
        complex, domain, a, b, candidates, next + 1, included, excluded, out, counter,
    );
    included.remove(cell);
    if !ok {
        return false;
    }
    excluded.insert(cell);
    let ok = separators_rec(
        complex, domain, a, b, candidates, next + 1, included, excluded, out, counter,
    );
    excluded.remove(cell);
    ok
}

fn is_minimal_separator(
    complex: &GridComplex,
    domain: &Bits,
    a: &Bits,
    b: &Bits,
    l: &Bits,
) -> bool {
    for cell in l.iter() {
        let mut smaller = l.clone();
        smaller.remove(cell);
        let passable = domain.difference(&smaller);
        if !complex.connects(&passable, a, b, Mode::Open) {
            return false;
        }
    }
    true
}

/// Outcome of restricting an essential family by chosen partitions.
#[derive(Debug, Clone)]
pub struct RestrictOutcome {
    /// The intersection of the chosen partitions (the whole domain when
    /// `J` is empty).
    pub l_j: Bits,
    /// Traces `(A_i n L_J, B_i n L_J)` for the indices outside `J`.
    pub traces: Vec<(Bits, Bits)>,
    pub verdict: Essentiality,
}

/// Restriction step: given verified partitions for the indices in `j_set`,
/// intersect them and test the traces of the remaining pairs on the
/// intersection.
pub fn restrict_essential(
    complex: &GridComplex,
    domain: &Bits,
    pairs: &[(Bits, Bits)],
    j_set: &[usize],
    partitions: &[Bits],
    max_nodes: u64,
) -> Result<RestrictOutcome, GridError> {
    if j_set.len() != partitions.len() {
        return Err(GridError::WrongLength {
            expected: j_set.len(),
            got: partitions.len(),
        });
    }
    let mut l_j = domain.clone();
    for (&i, l) in j_set.iter().zip(partitions) {
        let (a, b) = &pairs[i];
        if l.intersects(a) || l.intersects(b) {
            return Err(GridError::PartitionMeetsPair(i));
        }
        let check = is_partition_between(complex, domain, l, a, b)?;
        if !check.separates {
            return Err(GridError::PartitionFails(i));
        }
        l_j = l_j.intersection(l);
    }
    let traces: Vec<(Bits, Bits)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| !j_set.contains(i))
        .map(|(_, (a, b))| (a.intersection(&l_j), b.intersection(&l_j)))
        .collect();
    let verdict = essential_check(complex, &l_j, &traces, max_nodes)?;
    Ok(RestrictOutcome {
        l_j,
        traces,
        verdict,
    })
}
