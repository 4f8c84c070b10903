//! Thin wrappers that run data-parallel under the `parallel` feature and
//! sequentially without it. Call sites stay identical in both builds, and
//! results are deterministic in both (ordered collect, leftmost find).

/// Name of the active execution mode, used to tag benchmark ids.
pub const MODE: &str = if cfg!(feature = "parallel") {
    "rayon"
} else {
    "seq"
};

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `lo..hi` and returns the results in index order.
#[cfg(feature = "parallel")]
pub fn map_range<U, F>(lo: u64, hi: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (lo..hi).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<U, F>(lo: u64, hi: u64, f: F) -> Vec<U>
where
    F: Fn(u64) -> U,
{
    (lo..hi).map(f).collect()
}

/// Sums `f` over `lo..hi` in u128, chunked when parallel.
#[cfg(feature = "parallel")]
pub fn sum_range<F>(lo: u64, hi: u64, f: F) -> u128
where
    F: Fn(u64) -> u128 + Sync + Send,
{
    use rayon::prelude::*;
    (lo..hi).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
pub fn sum_range<F>(lo: u64, hi: u64, f: F) -> u128
where
    F: Fn(u64) -> u128,
{
    (lo..hi).map(f).sum()
}

/// First index in `lo..hi` satisfying `pred` (leftmost in both modes).
#[cfg(feature = "parallel")]
pub fn find_first<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    (lo..hi).into_par_iter().find_first(|&k| pred(k))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool,
{
    (lo..hi).find(|&k| pred(k))
}
