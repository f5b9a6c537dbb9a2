//! Data-parallel map helpers.
//!
//! The verification suites are embarrassingly parallel across independent
//! identities, so a single map primitive is enough. With the `parallel`
//! feature (default) the work is spread over a rayon pool; without it the
//! same entry point runs sequentially. `map_collect_seq` is always
//! sequential and exists so benchmarks can compare the two directly.
//! Output order matches input order in every case, which keeps reports
//! deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over items, parallel when the `parallel` feature is enabled.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Always-sequential variant, for benchmarking against [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let xs: Vec<u64> = (0..100).collect();
        let par = map_collect(xs.clone(), |x| x * x);
        let seq = map_collect_seq(xs, |x| x * x);
        assert_eq!(par, seq);
        assert_eq!(par[7], 49);
    }
}
