//! Worker-count aware data parallelism. With the `parallel` feature the work
//! runs on rayon; without it, or with one worker, everything is sequential
//! and produces identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution context. `0` workers means "all available cores", `1` forces
/// the sequential path.
pub struct Workers {
    requested: usize,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Workers {
    pub fn new(requested: usize) -> Self {
        #[cfg(feature = "parallel")]
        let pool = if requested > 1 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(requested)
                .build()
                .ok()
        } else {
            None
        };
        Workers {
            requested,
            #[cfg(feature = "parallel")]
            pool,
        }
    }

    pub fn sequential() -> Self {
        Self::new(1)
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.requested != 1
    }

    pub fn count(&self) -> usize {
        #[cfg(feature = "parallel")]
        {
            match (&self.pool, self.requested) {
                (_, 1) => 1,
                (Some(p), _) => p.current_num_threads(),
                (None, _) => rayon::current_num_threads(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            1
        }
    }

    #[cfg(feature = "parallel")]
    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && items.len() > 1 {
            return self.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }

    /// Splits `0..total` into contiguous ranges, applies `f(start, end)` to
    /// each and sums the partial results.
    pub fn sum_ranges<F>(&self, total: u64, f: F) -> u64
    where
        F: Fn(u64, u64) -> u64 + Sync + Send,
    {
        let chunks = if self.is_parallel() {
            (self.count() as u64 * 16).min(total.max(1))
        } else {
            1
        };
        let bounds: Vec<(u64, u64)> = (0..chunks)
            .map(|i| (total * i / chunks, total * (i + 1) / chunks))
            .filter(|(a, b)| a < b)
            .collect();
        self.map(&bounds, |&(a, b)| f(a, b)).into_iter().sum()
    }
}

impl Default for Workers {
    fn default() -> Self {
        Self::new(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_everything_once() {
        for w in [1, 2, 3, 8] {
            let workers = Workers::new(w);
            let total = 1000u64;
            let s = workers.sum_ranges(total, |a, b| (a..b).sum());
            assert_eq!(s, total * (total - 1) / 2);
            assert_eq!(workers.sum_ranges(0, |a, b| b - a), 0);
        }
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..100).collect();
        let out = Workers::new(4).map(&items, |x| x * 2);
        assert_eq!(out, items.iter().map(|x| x * 2).collect::<Vec<_>>());
    }
}
