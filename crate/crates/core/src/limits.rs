//! Resource caps for enumerations.

pub const MAX_VERTICES_ENV: &str = "SIMPCTX_MAX_VERTICES";
pub const DEFAULT_MAX_VERTICES: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of deterministic assignments an enumeration may produce.
    pub max_vertices: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vertices: DEFAULT_MAX_VERTICES }
    }
}

impl Limits {
    /// Defaults, overridden by `SIMPCTX_MAX_VERTICES` when it parses.
    pub fn from_env() -> Self {
        let max_vertices = std::env::var(MAX_VERTICES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_VERTICES);
        Limits { max_vertices }
    }

    pub fn with_max_vertices(max_vertices: u128) -> Self {
        Limits { max_vertices }
    }
}
