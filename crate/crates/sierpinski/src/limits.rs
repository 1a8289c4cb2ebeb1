/// Hard limits for the exhaustive searches in this crate.
///
/// Brute-force tools must fail loudly: every search checks its limit up
/// front and returns [`crate::Error::Overflow`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count accepted by automorphism / isomorphism search.
    pub max_aut_vertices: usize,
    /// Largest element count a permutation group closure may reach.
    pub max_group_order: usize,
    /// Largest number of rotation systems enumerated per graph when
    /// checking embedding compatibility.
    pub max_embeddings: u64,
    /// Largest vertex count accepted by embedding enumeration.
    pub max_embedding_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_aut_vertices: 40,
            max_group_order: 1_000_000,
            max_embeddings: 2_000_000,
            max_embedding_vertices: 10,
        }
    }
}

impl Limits {
    pub fn with_max_aut_vertices(mut self, n: usize) -> Self {
        self.max_aut_vertices = n;
        self
    }
}
