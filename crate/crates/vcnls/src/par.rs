//! Order-preserving map helpers that fan out through rayon when the
//! default `parallel` feature is enabled and degrade to plain sequential
//! loops without it.
//!
//! The trait bounds are identical in both builds, so switching the feature
//! never changes an API — only the execution strategy. The `*_seq`
//! variants are always sequential regardless of features; the benchmark
//! suite uses them as the baseline the parallel paths are compared
//! against.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over a slice, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twin of [`map_slice`].
pub fn map_slice_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential twin of [`map_indices`].
pub fn map_indices_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order_and_value() {
        let items: Vec<f64> = (0..1000).map(|i| i as f64 * 0.25).collect();
        let f = |x: &f64| x * x - 3.0;
        assert_eq!(map_slice(&items, f), map_slice_seq(&items, f));

        let g = |i: usize| (i * 7 + 3) % 11;
        assert_eq!(map_indices(500, g), map_indices_seq(500, g));
    }

    #[test]
    fn empty_inputs_yield_empty_outputs() {
        let none: Vec<i32> = Vec::new();
        assert!(map_slice(&none, |x| *x).is_empty());
        assert!(map_indices(0, |i| i).is_empty());
    }
}
