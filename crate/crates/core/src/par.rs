//! Index-range fan-out with a sequential fallback.
//!
//! Built with the `parallel` feature (the default), [`Exec::Parallel`] maps
//! over rayon's global pool. Without it only [`Exec::Sequential`] exists.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

#[allow(clippy::derivable_impls)]
impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

/// Evaluate `f` at every index of `range`, preserving order.
pub fn map_range<R, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => range.map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
    }
}
