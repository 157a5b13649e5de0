//! Execution strategy for grid scans and family sweeps.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] maps over
//! work items with rayon on the current thread pool. Without the feature both
//! variants run sequentially. Results always come back in input order, so
//! every reduction downstream is deterministic regardless of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

/// All exponent pairs `(m, n)` with `m, n ≤ max_exp`, in lexicographic order.
pub fn exponent_grid(max_exp: u64) -> Vec<(u64, u64)> {
    (0..=max_exp).flat_map(|m| (0..=max_exp).map(move |n| (m, n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&items, |x| x * x);
        let par = Exec::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);
    }

    #[test]
    fn grid_is_lexicographic() {
        let g = exponent_grid(2);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], (0, 0));
        assert_eq!(g[1], (0, 1));
        assert_eq!(g[8], (2, 2));
    }
}
