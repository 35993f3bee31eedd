//! Runtime selection between sequential and rayon execution.
//!
//! The sequential path is always compiled; the rayon path exists only with
//! the `parallel` feature (on by default). Selecting `Rayon` without the
//! feature falls back to sequential, so callers never need cfg-gates.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Rayon
        } else {
            Parallelism::Sequential
        }
    }
}

/// Maps `f` over `items`, in parallel when requested and available.
pub fn map_collect<T, U, F>(mode: Parallelism, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Parallelism::Rayon {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}

/// Maps `f` over the u64 range, in parallel when requested and available.
pub fn range_map_collect<U, F>(mode: Parallelism, lo: u64, hi: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Parallelism::Rayon {
            use rayon::prelude::*;
            return (lo..hi).into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    (lo..hi).map(f).collect()
}
