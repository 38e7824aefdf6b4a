//! Enumeration limits and the data-parallel execution switch.
//!
//! Every index-range sweep in the crate goes through the helpers here. With
//! the `parallel` feature they fan out over rayon when [`Config::parallel`] is
//! set; otherwise they run sequentially. Results are always assembled by
//! index, so both paths produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on the number of positional profiles enumerated (2^24).
pub const DEFAULT_PROFILE_CAP: u64 = 1 << 24;
/// Default cap on the number of candidate models examined by bounded-model search.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub profile_cap: u64,
    pub search_cap: u64,
    /// Ignored when the crate is built without the `parallel` feature.
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            profile_cap: DEFAULT_PROFILE_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Self {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn with_profile_cap(mut self, cap: u64) -> Self {
        self.profile_cap = cap;
        self
    }

    pub fn with_search_cap(mut self, cap: u64) -> Self {
        self.search_cap = cap;
        self
    }
}

/// Minimum range length worth splitting across threads.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 256;

pub(crate) fn map_range<T, F>(cfg: &Config, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel && len >= PAR_THRESHOLD {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = cfg;
    (0..len).map(f).collect()
}

/// Maps over a slice of indices, preserving order.
pub(crate) fn map_slice<T, F>(cfg: &Config, items: &[usize], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel && items.len() >= PAR_THRESHOLD {
        return items.par_iter().map(|&i| f(i)).collect();
    }
    let _ = cfg;
    items.iter().map(|&i| f(i)).collect()
}

/// First element of `items` (in slice order) for which `f` returns `Some`.
pub(crate) fn find_first<T, F>(cfg: &Config, items: &[usize], f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel && items.len() >= PAR_THRESHOLD {
        return items
            .par_iter()
            .enumerate()
            .filter_map(|(pos, &i)| f(i).map(|t| (pos, t)))
            .find_first(|_| true);
    }
    let _ = cfg;
    items
        .iter()
        .enumerate()
        .find_map(|(pos, &i)| f(i).map(|t| (pos, t)))
}
