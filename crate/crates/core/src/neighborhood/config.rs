/// Search and enumeration budgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Maximum search nodes per query before giving up with `BudgetExceeded`.
    pub node_cap: u64,
    /// How many indices past each tail start an inconclusive search tries.
    pub index_cap: u64,
    /// Maximum size of any enumerated set.
    pub element_cap: usize,
    /// Maximum number of levels (summands or factors) in one query.
    pub level_cap: usize,
    /// Refuse to answer `NotInWithinBound`; demand an exact decision instead.
    pub strict: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            node_cap: 1_000_000,
            index_cap: 16,
            element_cap: 2_000_000,
            level_cap: 64,
            strict: false,
        }
    }
}

impl Config {
    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn with_index_cap(mut self, cap: u64) -> Self {
        self.index_cap = cap;
        self
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }
}
