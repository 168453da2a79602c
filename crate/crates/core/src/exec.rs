//! Sequential or data-parallel execution of the exhaustive loops.
//!
//! Every parallel path reduces in a fixed order, so results are identical
//! to the sequential path. Without the `parallel` feature,
//! [`Execution::Parallel`] runs sequentially.

use crate::subsets::{self, SubsetChunk};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
    fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// How many chunks to cut an enumeration of `total` items into.
    pub fn parts(self, total: u128) -> usize {
        if !self.is_parallel() || total < 64 {
            return 1;
        }
        #[cfg(feature = "parallel")]
        {
            (rayon::current_num_threads() * 8).min(total as usize)
        }
        #[cfg(not(feature = "parallel"))]
        {
            1
        }
    }

    /// `items.map(f)`, in order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// `(0..len).map(f)`, in order.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// The first `Some` in item order.
    pub fn find_map_first<I, T, F>(self, items: &[I], f: F) -> Option<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }

    /// Chunks of the `k`-subsets of `0..n` sized for this execution mode.
    pub fn subset_chunks(self, n: usize, k: usize) -> Vec<SubsetChunk> {
        subsets::chunks(n, k, self.parts(subsets::binomial(n, k)))
    }
}
