//! Parallel/sequential execution of independent work items.
//!
//! Every Monte Carlo routine in the crate takes an [`Execution`] and funnels
//! its per-item work through [`map_indexed`] or [`count_indexed`]. Each item
//! owns its random stream, and results are collected in index order or
//! reduced by integer sums, so both modes return identical values.

/// How to schedule independent work items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon's global pool. Falls back to sequential when the crate is
    /// built without the `parallel` feature.
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

/// Applies `f` to `0..n` and returns the results in index order.
pub fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Sums fixed-width count vectors produced by `f` over `0..n`.
pub fn count_indexed<const K: usize, F>(n: usize, exec: Execution, f: F) -> [u64; K]
where
    F: Fn(usize) -> [u64; K] + Send + Sync,
{
    let add = |mut a: [u64; K], b: [u64; K]| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).reduce(|| [0; K], add)
        }
        _ => (0..n).map(f).fold([0; K], add),
    }
}
