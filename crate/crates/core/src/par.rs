//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers fan out over rayon's global pool;
//! without it, [`Execution::Parallel`] silently runs sequentially. Every helper
//! returns the same value under both strategies.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a data-parallel loop should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps every index and folds the results; `reduce` must be associative and commutative.
pub(crate) fn map_reduce<T, M, R>(exec: Execution, range: Range<usize>, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(usize) -> T + Send + Sync,
    R: Fn(T, T) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(map).reduce(|| identity.clone(), reduce);
    }
    let _ = exec;
    range.map(map).fold(identity, reduce)
}

/// First index (in range order) for which `f` returns `Some`.
pub(crate) fn find_map_first<T, F>(exec: Execution, range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}

/// Maps every index, keeping results in range order.
pub(crate) fn map_collect<T, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}
