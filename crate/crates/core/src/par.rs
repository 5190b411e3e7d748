// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Order-preserving data-parallel map. With the `parallel` feature the work
//! runs on a rayon pool; otherwise, or with one worker, it runs inline.

/// Resolved worker count for a request (`None` means all available cores).
pub fn resolve_workers(requested: Option<usize>) -> usize {
    #[cfg(feature = "parallel")]
    {
        match requested {
            Some(w) if w > 0 => w,
            _ => rayon::current_num_threads(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = requested;
        1
    }
}

/// Runs `job` inside an executor with `workers` threads and hands it a map
/// function. Output order always matches input order.
pub struct Executor {
    workers: usize,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn new(requested: Option<usize>) -> Self {
        let workers = resolve_workers(requested);
        #[cfg(feature = "parallel")]
        {
            let pool = match requested {
                Some(w) if w > 1 => rayon::ThreadPoolBuilder::new().num_threads(w).build().ok(),
                _ => None,
            };
            Self { workers, pool }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Self { workers }
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            if self.workers > 1 && items.len() > 1 {
                return match &self.pool {
                    Some(pool) => pool.install(|| items.par_iter().map(&f).collect()),
                    None => items.par_iter().map(&f).collect(),
                };
            }
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_for_any_worker_count() {
        let items: Vec<u64> = (0..1000).collect();
        let serial = Executor::new(Some(1)).map(&items, |x| x * x);
        for workers in [None, Some(2), Some(4)] {
            assert_eq!(Executor::new(workers).map(&items, |x| x * x), serial);
        }
        assert_eq!(Executor::new(Some(1)).workers(), 1);
    }
}
