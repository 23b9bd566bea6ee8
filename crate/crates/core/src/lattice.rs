//! Finite bounded lattices given by explicit meet/join tables, and set
//! lattices (families of subsets closed under union and intersection).
//!
//! Tables rather than posets: the formula evaluator needs constant-time
//! term evaluation. Element identifiers are opaque strings in interchange
//! files and dense indices internally; the order of `elements` fixes the
//! index assignment.
//!
//! The degenerate one-element lattice (`bottom == top`) is accepted
//! everywhere; it is the closed-set lattice of the empty space.

use crate::bits::Bits;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub type Elem = usize;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),
    #[error("unknown element id {0:?}")]
    UnknownElement(String),
    #[error("{table} table is not total: row {row} has {got} entries, expected {expected}")]
    NonTotalTable {
        table: &'static str,
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("{table} table has {got} rows, expected {expected}")]
    MissingRows {
        table: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("lattice axioms violated: {0}")]
    AxiomViolations(ValidationReport),
    #[error("lattice has {size} elements, exceeding the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("generator {index} is not a subset of the universe")]
    GeneratorNotSubset { index: usize },
    #[error("lattice must have at least one element")]
    Empty,
}

/// Unvalidated meet/join tables, as read from interchange files.
#[derive(Debug, Clone)]
pub struct LatticeTables {
    pub elements: Vec<String>,
    /// Row-major over the element order; entries are element indices.
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
    pub bottom: Elem,
    pub top: Elem,
}

/// One of the equational lattice axioms checked by [`validate_tables`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    MeetCommutative,
    JoinCommutative,
    MeetAssociative,
    JoinAssociative,
    MeetIdempotent,
    JoinIdempotent,
    AbsorptionMeetOverJoin,
    AbsorptionJoinOverMeet,
    BottomAbsorbsMeet,
    TopAbsorbsJoin,
    BottomJoinIdentity,
    TopMeetIdentity,
}

impl Axiom {
    pub fn description(self) -> &'static str {
        match self {
            Axiom::MeetCommutative => "commutativity of meet",
            Axiom::JoinCommutative => "commutativity of join",
            Axiom::MeetAssociative => "associativity of meet",
            Axiom::JoinAssociative => "associativity of join",
            Axiom::MeetIdempotent => "idempotence of meet",
            Axiom::JoinIdempotent => "idempotence of join",
            Axiom::AbsorptionMeetOverJoin => "absorption x ^ (x v y) = x",
            Axiom::AbsorptionJoinOverMeet => "absorption x v (x ^ y) = x",
            Axiom::BottomAbsorbsMeet => "bottom ^ x = bottom",
            Axiom::TopAbsorbsJoin => "top v x = top",
            Axiom::BottomJoinIdentity => "bottom v x = x",
            Axiom::TopMeetIdentity => "top ^ x = x",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Names of the witnessing elements.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        let items: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at ({})", v.axiom.description(), v.witness.join(", ")))
            .collect();
        write!(f, "{}", items.join("; "))
    }
}

/// Checks every lattice axiom by exhaustion and reports each violated axiom
/// with a witnessing tuple (the first one in element order).
pub fn validate_tables(t: &LatticeTables) -> ValidationReport {
    let n = t.elements.len();
    let name = |i: Elem| t.elements[i].clone();
    let m = |x: Elem, y: Elem| t.meet[x][y];
    let j = |x: Elem, y: Elem| t.join[x][y];
    let mut report = ValidationReport::default();
    let mut push = |axiom: Axiom, witness: &[Elem]| {
        report.violations.push(Violation {
            axiom,
            witness: witness.iter().map(|&i| name(i)).collect(),
        });
    };

    'comm_m: for x in 0..n {
        for y in 0..n {
            if m(x, y) != m(y, x) {
                push(Axiom::MeetCommutative, &[x, y]);
                break 'comm_m;
            }
        }
    }
    'comm_j: for x in 0..n {
        for y in 0..n {
            if j(x, y) != j(y, x) {
                push(Axiom::JoinCommutative, &[x, y]);
                break 'comm_j;
            }
        }
    }
    'idem: for x in 0..n {
        if m(x, x) != x {
            push(Axiom::MeetIdempotent, &[x]);
            break 'idem;
        }
    }
    for x in 0..n {
        if j(x, x) != x {
            push(Axiom::JoinIdempotent, &[x]);
            break;
        }
    }
    'assoc_m: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    push(Axiom::MeetAssociative, &[x, y, z]);
                    break 'assoc_m;
                }
            }
        }
    }
    'assoc_j: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if j(j(x, y), z) != j(x, j(y, z)) {
                    push(Axiom::JoinAssociative, &[x, y, z]);
                    break 'assoc_j;
                }
            }
        }
    }
    'abs_m: for x in 0..n {
        for y in 0..n {
            if m(x, j(x, y)) != x {
                push(Axiom::AbsorptionMeetOverJoin, &[x, y]);
                break 'abs_m;
            }
        }
    }
    'abs_j: for x in 0..n {
        for y in 0..n {
            if j(x, m(x, y)) != x {
                push(Axiom::AbsorptionJoinOverMeet, &[x, y]);
                break 'abs_j;
            }
        }
    }
    for x in 0..n {
        if m(t.bottom, x) != t.bottom {
            push(Axiom::BottomAbsorbsMeet, &[x]);
            break;
        }
    }
    for x in 0..n {
        if j(t.top, x) != t.top {
            push(Axiom::TopAbsorbsJoin, &[x]);
            break;
        }
    }
    for x in 0..n {
        if j(t.bottom, x) != x {
            push(Axiom::BottomJoinIdentity, &[x]);
            break;
        }
    }
    for x in 0..n {
        if m(t.top, x) != x {
            push(Axiom::TopMeetIdentity, &[x]);
            break;
        }
    }
    report
}

/// A validated finite bounded lattice.
///
/// The induced order is `x <= y` iff `x ^ y == x`; antisymmetry and
/// transitivity follow from the equational axioms, so only those are
/// checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    pub fn from_tables(t: LatticeTables) -> Result<Self, LatticeError> {
        let n = t.elements.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut seen = HashMap::new();
        for e in &t.elements {
            if seen.insert(e.clone(), ()).is_some() {
                return Err(LatticeError::DuplicateElement(e.clone()));
            }
        }
        for (table, rows) in [("meet", &t.meet), ("join", &t.join)] {
            if rows.len() != n {
                return Err(LatticeError::MissingRows {
                    table,
                    got: rows.len(),
                    expected: n,
                });
            }
            for (row, r) in rows.iter().enumerate() {
                if r.len() != n {
                    return Err(LatticeError::NonTotalTable {
                        table,
                        row,
                        got: r.len(),
                        expected: n,
                    });
                }
            }
        }
        let report = validate_tables(&t);
        if !report.ok() {
            return Err(LatticeError::AxiomViolations(report));
        }
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                meet.push(t.meet[x][y]);
                join.push(t.join[x][y]);
            }
        }
        Ok(FiniteLattice {
            names: t.elements,
            meet,
            join,
            bottom: t.bottom,
            top: t.top,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.names.len() + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.names.len() + y]
    }

    #[inline]
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        self.meet(x, y) == x
    }

    pub fn is_degenerate(&self) -> bool {
        self.bottom == self.top
    }

    /// First triple violating `x ^ (y v z) = (x ^ y) v (x ^ z)`, if any.
    pub fn distributive_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive_violation().is_none()
    }

    /// First pair `(a, b)` with `a` not below `b` but no nonzero `c <= a`
    /// with `c ^ b = 0`, if any.
    pub fn disjunctive_violation(&self) -> Option<(Elem, Elem)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                if self.le(a, b) {
                    continue;
                }
                let found = (0..n).any(|c| {
                    c != self.bottom && self.le(c, a) && self.meet(c, b) == self.bottom
                });
                if !found {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_disjunctive(&self) -> bool {
        self.disjunctive_violation().is_none()
    }

    /// Minimal nonzero elements, in element order.
    pub fn atoms(&self) -> Vec<Elem> {
        let n = self.size();
        (0..n)
            .filter(|&a| {
                a != self.bottom
                    && (0..n).all(|x| !(x != self.bottom && x != a && self.le(x, a)))
            })
            .collect()
    }

    /// The set of atoms below each element, as a bitset over `atoms()`.
    pub fn atom_supports(&self) -> Vec<Bits> {
        let atoms = self.atoms();
        (0..self.size())
            .map(|x| {
                Bits::from_indices(
                    atoms.len(),
                    atoms
                        .iter()
                        .enumerate()
                        .filter(|(_, &a)| self.le(a, x))
                        .map(|(i, _)| i),
                )
            })
            .collect()
    }

    /// True iff `a ↦ {atoms below a}` is a bijection onto the full power
    /// set of the atoms carrying meets to intersections and joins to
    /// unions. For a distributive disjunctive finite lattice this always
    /// holds; the check is the executable form of that fact.
    pub fn is_power_set_of_atoms(&self) -> bool {
        let atoms = self.atoms();
        let k = atoms.len();
        if k >= usize::BITS as usize || self.size() != 1usize << k {
            return false;
        }
        let supports = self.atom_supports();
        let mut seen = vec![false; 1 << k];
        for s in &supports {
            let mask = s.iter().fold(0usize, |acc, i| acc | (1 << i));
            if seen[mask] {
                return false;
            }
            seen[mask] = true;
        }
        for x in 0..self.size() {
            for y in 0..self.size() {
                if supports[self.meet(x, y)] != supports[x].intersection(&supports[y])
                    || supports[self.join(x, y)] != supports[x].union(&supports[y])
                {
                    return false;
                }
            }
        }
        true
    }

    /// The n-element chain `0 < c1 < ... < 1`.
    pub fn chain(n: usize) -> FiniteLattice {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    "0".to_owned()
                } else if i == n - 1 {
                    "1".to_owned()
                } else {
                    format!("c{i}")
                }
            })
            .collect::<Vec<_>>();
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                meet[x][y] = x.min(y);
                join[x][y] = x.max(y);
            }
        }
        FiniteLattice::from_tables(LatticeTables {
            elements: names,
            meet,
            join,
            bottom: 0,
            top: n - 1,
        })
        .expect("chain is a lattice")
    }

    /// The diamond M3: `0 < a, b, c < 1` with pairwise meets 0 and joins 1.
    pub fn m3() -> FiniteLattice {
        let names = ["0", "a", "b", "c", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>();
        let n = 5;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                meet[x][y] = if x == y {
                    x
                } else if x == 0 || y == 0 {
                    0
                } else if x == 4 {
                    y
                } else if y == 4 {
                    x
                } else {
                    0
                };
                join[x][y] = if x == y {
                    x
                } else if x == 4 || y == 4 {
                    4
                } else if x == 0 {
                    y
                } else if y == 0 {
                    x
                } else {
                    4
                };
            }
        }
        FiniteLattice::from_tables(LatticeTables {
            elements: names,
            meet,
            join,
            bottom: 0,
            top: 4,
        })
        .expect("M3 is a lattice")
    }
}

/// A family of subsets of a finite universe closed under union and
/// intersection, containing the empty set and the universe. Members are
/// kept in canonical order (by cardinality, then by bit pattern), which
/// fixes the element order of the derived [`FiniteLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetLattice {
    universe: Vec<String>,
    members: Vec<Bits>,
}

impl SetLattice {
    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn members(&self) -> &[Bits] {
        &self.members
    }

    pub fn member_index(&self, set: &Bits) -> Option<usize> {
        self.members.iter().position(|m| m == set)
    }

    pub fn set_name(universe: &[String], set: &Bits) -> String {
        let names: Vec<&str> = set.iter().map(|i| universe[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The derived meet/join tables: meet = intersection, join = union.
    pub fn to_lattice(&self) -> FiniteLattice {
        let n = self.members.len();
        let index: HashMap<&Bits, usize> =
            self.members.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                meet[x][y] = index[&self.members[x].intersection(&self.members[y])];
                join[x][y] = index[&self.members[x].union(&self.members[y])];
            }
        }
        let elements = self
            .members
            .iter()
            .map(|m| Self::set_name(&self.universe, m))
            .collect();
        FiniteLattice::from_tables(LatticeTables {
            elements,
            meet,
            join,
            bottom: 0,
            top: n - 1,
        })
        .expect("a ring of sets is a lattice")
    }
}

/// Closes `generators` (plus the empty set and the universe) under pairwise
/// union and intersection. Terminates by finiteness; refuses to grow past
/// `cap` members.
pub fn generate_set_lattice(
    universe: Vec<String>,
    generators: &[Bits],
    cap: usize,
) -> Result<SetLattice, LatticeError> {
    let u = universe.len();
    for (i, g) in generators.iter().enumerate() {
        if g.len() != u {
            return Err(LatticeError::GeneratorNotSubset { index: i });
        }
    }
    let mut members: Vec<Bits> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |b: Bits, members: &mut Vec<Bits>| -> bool {
        if seen.insert(b.clone()) {
            members.push(b);
            true
        } else {
            false
        }
    };
    push(Bits::new(u), &mut members);
    push(Bits::full(u), &mut members);
    for g in generators {
        push(g.clone(), &mut members);
    }
    let mut frontier = 0;
    while frontier < members.len() {
        if members.len() > cap {
            return Err(LatticeError::TooLarge {
                size: members.len(),
                cap,
            });
        }
        let b = members[frontier].clone();
        frontier += 1;
        for i in 0..frontier {
            let a = members[i].clone();
            push(a.union(&b), &mut members);
            push(a.intersection(&b), &mut members);
        }
    }
    members.sort_by_key(|b| (b.count(), b.clone()));
    Ok(SetLattice { universe, members })
}

/// The full power set of `universe` as a set lattice.
pub fn power_set_lattice(universe: Vec<String>) -> SetLattice {
    let u = universe.len();
    assert!(u < 20, "power set lattice only intended for small universes");
    let mut members: Vec<Bits> = (0..1usize << u)
        .map(|mask| Bits::from_indices(u, (0..u).filter(|i| mask >> i & 1 == 1)))
        .collect();
    members.sort_by_key(|b| (b.count(), b.clone()));
    SetLattice { universe, members }
}

// ---------------------------------------------------------------------------
// Interchange formats

/// JSON form of a lattice: tables are row-major over the element order and
/// entries are element ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
    pub bottom: String,
    pub top: String,
}

impl LatticeFile {
    pub fn to_tables(&self) -> Result<LatticeTables, LatticeError> {
        let mut index = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(e.clone()));
            }
        }
        let look = |name: &String| -> Result<Elem, LatticeError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| LatticeError::UnknownElement(name.clone()))
        };
        let conv = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<Elem>>, LatticeError> {
            rows.iter()
                .map(|r| r.iter().map(look).collect())
                .collect()
        };
        Ok(LatticeTables {
            elements: self.elements.clone(),
            meet: conv(&self.meet)?,
            join: conv(&self.join)?,
            bottom: look(&self.bottom)?,
            top: look(&self.top)?,
        })
    }

    pub fn from_lattice(l: &FiniteLattice) -> LatticeFile {
        let n = l.size();
        LatticeFile {
            elements: l.names().to_vec(),
            meet: (0..n)
                .map(|x| (0..n).map(|y| l.name(l.meet(x, y)).to_owned()).collect())
                .collect(),
            join: (0..n)
                .map(|x| (0..n).map(|y| l.name(l.join(x, y)).to_owned()).collect())
                .collect(),
            bottom: l.name(l.bottom()).to_owned(),
            top: l.name(l.top()).to_owned(),
        }
    }
}

/// JSON form of a set lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetLatticeFile {
    pub universe: Vec<String>,
    pub members: Vec<Vec<String>>,
}

impl SetLatticeFile {
    pub fn to_set_lattice(&self, cap: usize) -> Result<SetLattice, LatticeError> {
        let mut index = HashMap::new();
        for (i, p) in self.universe.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(p.clone()));
            }
        }
        let mut sets = Vec::new();
        for member in &self.members {
            let mut b = Bits::new(self.universe.len());
            for p in member {
                let i = index
                    .get(p)
                    .copied()
                    .ok_or_else(|| LatticeError::UnknownElement(p.clone()))?;
                b.insert(i);
            }
            sets.push(b);
        }
        // Closure verifies (by exhaustion) that the family really is
        // union/intersection closed; extra members would be an input error.
        let closed = generate_set_lattice(self.universe.clone(), &sets, cap)?;
        if closed.members.len() != {
            let mut dedup = sets.clone();
            dedup.push(Bits::new(self.universe.len()));
            dedup.push(Bits::full(self.universe.len()));
            dedup.sort();
            dedup.dedup();
            dedup.len()
        } {
            return Err(LatticeError::GeneratorNotSubset {
                index: usize::MAX, // members not closed; reported generically
            });
        }
        Ok(closed)
    }

    pub fn from_set_lattice(s: &SetLattice) -> SetLatticeFile {
        SetLatticeFile {
            universe: s.universe().to_vec(),
            members: s
                .members()
                .iter()
                .map(|m| m.iter().map(|i| s.universe()[i].clone()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FiniteLattice {
        FiniteLattice::chain(2)
    }

    #[test]
    fn two_element_lattice_is_ok() {
        let l = two();
        assert_eq!(l.size(), 2);
        assert!(l.is_distributive());
        assert!(l.is_disjunctive());
        assert_eq!(l.atoms(), vec![1]);
    }

    #[test]
    fn planted_commutativity_defect_is_reported() {
        let mut t = LatticeTables {
            elements: vec!["0".into(), "1".into()],
            meet: vec![vec![0, 0], vec![0, 1]],
            join: vec![vec![0, 1], vec![1, 1]],
            bottom: 0,
            top: 1,
        };
        t.meet[0][1] = 1; // breaks 0 ^ 1 = 1 vs 1 ^ 0 = 0
        let report = validate_tables(&t);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::MeetCommutative));
    }

    #[test]
    fn m3_is_a_lattice_but_not_distributive() {
        let l = FiniteLattice::m3();
        let (x, y, z) = l.distributive_violation().expect("M3 is not distributive");
        // all three witnesses are the incomparable middle elements
        for e in [x, y, z] {
            assert!(e != l.bottom() && e != l.top());
        }
        assert!(!l.is_distributive());
    }

    #[test]
    fn chain_is_distributive_but_not_disjunctive() {
        let l = FiniteLattice::chain(3);
        assert!(l.is_distributive());
        let (a, b) = l.disjunctive_violation().expect("chain3 is not disjunctive");
        assert_eq!((l.name(a), l.name(b)), ("1", "c1"));
        assert_eq!(l.atoms(), vec![1]);
    }

    #[test]
    fn power_set_is_distributive_and_disjunctive() {
        let ps = power_set_lattice(vec!["1".into(), "2".into(), "3".into()]);
        let l = ps.to_lattice();
        assert_eq!(l.size(), 8);
        assert!(l.is_distributive());
        assert!(l.is_disjunctive());
        assert_eq!(l.atoms().len(), 3);
        for a in l.atoms() {
            assert_eq!(l.name(a).matches(',').count(), 0);
        }
        assert!(l.is_power_set_of_atoms());
    }

    #[test]
    fn closure_of_nothing() {
        let s = generate_set_lattice(vec!["1".into(), "2".into()], &[], 100).unwrap();
        assert_eq!(s.members().len(), 2);
    }

    #[test]
    fn closure_of_singletons_is_power_set() {
        let u: Vec<String> = vec!["1".into(), "2".into(), "3".into()];
        let gens: Vec<Bits> = (0..3).map(|i| Bits::from_indices(3, [i])).collect();
        let s = generate_set_lattice(u.clone(), &gens, 100).unwrap();
        assert_eq!(s.members().len(), 8);
        assert_eq!(s, power_set_lattice(u));
    }

    #[test]
    fn closure_example_two_generators() {
        let u: Vec<String> = vec!["1".into(), "2".into(), "3".into()];
        let gens = vec![Bits::from_indices(3, [0, 1]), Bits::from_indices(3, [1, 2])];
        let s = generate_set_lattice(u, &gens, 100).unwrap();
        let names: Vec<String> = s
            .members()
            .iter()
            .map(|m| SetLattice::set_name(s.universe(), m))
            .collect();
        assert_eq!(names, vec!["{}", "{2}", "{1,2}", "{2,3}", "{1,2,3}"]);
    }

    #[test]
    fn set_lattice_not_disjunctive_example() {
        let u: Vec<String> = vec!["1".into(), "2".into()];
        let gens = vec![Bits::from_indices(2, [0])];
        let s = generate_set_lattice(u, &gens, 100).unwrap();
        let l = s.to_lattice();
        let (a, b) = l.disjunctive_violation().expect("not disjunctive");
        assert_eq!((l.name(a), l.name(b)), ("{1,2}", "{1}"));
    }

    #[test]
    fn set_lattices_validate_and_are_distributive() {
        // every ring of sets passes validation and is distributive
        let u: Vec<String> = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        let gens = vec![
            Bits::from_indices(4, [0, 1]),
            Bits::from_indices(4, [1, 2]),
            Bits::from_indices(4, [3]),
        ];
        let l = generate_set_lattice(u, &gens, 1000).unwrap().to_lattice();
        assert!(l.is_distributive());
    }

    #[test]
    fn degenerate_lattice_accepted() {
        let t = LatticeTables {
            elements: vec!["x".into()],
            meet: vec![vec![0]],
            join: vec![vec![0]],
            bottom: 0,
            top: 0,
        };
        let l = FiniteLattice::from_tables(t).unwrap();
        assert!(l.is_degenerate());
        assert!(l.atoms().is_empty());
        assert!(l.is_power_set_of_atoms());
    }

    #[test]
    fn atoms_of_generated_singletons() {
        let u: Vec<String> = vec!["p".into(), "q".into()];
        let gens: Vec<Bits> = (0..2).map(|i| Bits::from_indices(2, [i])).collect();
        let l = generate_set_lattice(u, &gens, 100).unwrap().to_lattice();
        let atom_names: Vec<&str> = l.atoms().iter().map(|&a| l.name(a)).collect();
        assert_eq!(atom_names, vec!["{p}", "{q}"]);
    }

    #[test]
    fn lattice_file_round_trip() {
        let l = FiniteLattice::m3();
        let file = LatticeFile::from_lattice(&l);
        let back = FiniteLattice::from_tables(file.to_tables().unwrap()).unwrap();
        assert_eq!(l, back);
    }
}
