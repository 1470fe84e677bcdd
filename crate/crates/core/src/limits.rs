/// Size guards for constructions and searches.
///
/// The defaults keep every operation at desk scale. Callers that know what
/// they are doing (the CLI's `--unsafe-guard`) may raise them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Elements in any constructed lattice. Meet and join tables are `n²`.
    pub max_elements: usize,
    /// Dimension of `boolean_cube`.
    pub max_cube_dim: usize,
    /// Non-reflexive order pairs for a full transfer-system enumeration.
    pub max_tr_pairs: usize,
    /// Non-reflexive order pairs for the saturated-only search.
    pub max_saturated_pairs: usize,
    /// Cover edges for the saturated-cover search.
    pub max_cover_edges: usize,
    /// Elements for interior-operator enumeration (subsets are `u64` masks).
    pub max_interior_elements: usize,
    /// Elements for canonical forms.
    pub max_canonical_elements: usize,
}

impl Limits {
    /// Ceilings that overrides can never exceed.
    pub const HARD: Limits = Limits {
        max_elements: 4096,
        max_cube_dim: 20,
        max_tr_pairs: 64,
        max_saturated_pairs: 512,
        max_cover_edges: 256,
        max_interior_elements: 64,
        max_canonical_elements: 12,
    };

    pub fn unbounded_search() -> Self {
        Limits::HARD
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 1024,
            max_cube_dim: 20,
            max_tr_pairs: 26,
            max_saturated_pairs: 128,
            max_cover_edges: 96,
            max_interior_elements: 64,
            max_canonical_elements: 12,
        }
    }
}
