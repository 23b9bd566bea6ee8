//! Search budgets and size caps.
//!
//! Every operation whose search space is exponential takes a [`Budget`] and
//! reports honestly when it runs out; every `Unknown` verdict names the
//! exhausted budget.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of search nodes an enumeration may visit.
    pub search_nodes: u64,
    /// Maximum number of elements a lattice may have.
    pub lattice_cap: usize,
    /// Maximum number of cells a grid complex may have.
    pub grid_cell_cap: usize,
    /// Maximum size bound accepted by bounded model search.
    pub model_size_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            search_nodes: 1_000_000,
            lattice_cap: 4096,
            grid_cell_cap: 200_000,
            model_size_cap: 9,
        }
    }
}

impl Budget {
    pub fn with_nodes(nodes: u64) -> Self {
        Budget {
            search_nodes: nodes,
            ..Budget::default()
        }
    }
}

/// Counts nodes against a limit.
#[derive(Debug)]
pub struct NodeCounter {
    pub visited: u64,
    pub limit: u64,
}

impl NodeCounter {
    pub fn new(limit: u64) -> Self {
        NodeCounter { visited: 0, limit }
    }

    /// Returns false once the budget is exhausted.
    pub fn tick(&mut self) -> bool {
        self.visited += 1;
        self.visited <= self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.visited > self.limit
    }
}
