//! Thread-pool expansion of orbit frontiers.

use rayon::prelude::*;

use quartic_core::endo::Endomorphisms;
use quartic_core::orbit::Expander;
use quartic_core::{ProjPoint, Result};

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "QUARTIC_ORBIT_THREADS";

/// Worker count from [`THREADS_VAR`], else the available parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub struct Parallel {
    pool: rayon::ThreadPool,
}

impl Parallel {
    pub fn new(threads: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("thread pool");
        Parallel { pool }
    }

    pub fn from_env() -> Self {
        Self::new(thread_count())
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Expander for Parallel {
    fn expand(&self, endos: &Endomorphisms, requests: &[(usize, ProjPoint)]) -> Vec<Result<ProjPoint>> {
        self.pool
            .install(|| requests.par_iter().map(|(i, p)| endos.apply(*i, p)).collect())
    }
}
