//! Execution strategy for the data-parallel loops.
//!
//! Every sweep in the crate (hull candidate enumeration, principal minors,
//! batch verification) goes through [`Exec`]. With the `parallel` feature
//! disabled, [`Exec::Parallel`] silently runs sequentially, so results never
//! depend on the feature set or on the thread schedule: outputs are always
//! collected in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            if self == Exec::Parallel {
                return items.par_iter().map(f).collect();
            }
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            if self == Exec::Parallel {
                return (0..len).into_par_iter().map(f).collect();
            }
        }
        (0..len).map(f).collect()
    }
}
