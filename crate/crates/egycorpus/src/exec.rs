//! Deterministic data-parallel execution.
//!
//! All per-record work (cleaning, encoding, digesting) runs through
//! [`Executor`]: input is consumed in fixed-size chunks, each chunk is
//! mapped in parallel on a rayon pool sized by `workers`, and results are
//! emitted to the sink in input order. Output is byte-identical for any
//! worker count because ordering is positional, never scheduling-based.
//! The chunk size bounds peak memory (reader → pool → ordered sink with
//! back-pressure).
//!
//! Building without the `parallel` feature removes the rayon dependency
//! entirely; the same API runs sequentially.

#[cfg(feature = "parallel")]
use std::sync::Arc;

/// Chunked, order-preserving map executor.
#[derive(Clone)]
pub struct Executor {
    workers: usize,
    chunk_size: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

pub const DEFAULT_CHUNK_SIZE: usize = 4096;

impl Default for Executor {
    fn default() -> Self {
        Executor::new(0, DEFAULT_CHUNK_SIZE)
    }
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Executor")
            .field("workers", &self.workers)
            .field("chunk_size", &self.chunk_size)
            .finish()
    }
}

impl Executor {
    /// `workers == 0` means "use all available cores" on parallel builds;
    /// `workers == 1` and sequential builds run in-thread. `chunk_size` is
    /// clamped to >= 1.
    pub fn new(workers: usize, chunk_size: usize) -> Self {
        Executor {
            workers,
            chunk_size: chunk_size.max(1),
            #[cfg(feature = "parallel")]
            pool: build_pool(workers),
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn chunk_size(&self) -> usize {
        self.chunk_size
    }

    /// Map `items` to a Vec, preserving input order.
    pub fn map_vec<T, U, F>(&self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| items.into_par_iter().map(f).collect());
        }
        items.into_iter().map(f).collect()
    }

    /// Stream `input` through `f` in chunks, feeding results to `sink` in
    /// input order. Peak memory is proportional to the chunk size, not the
    /// stream length.
    pub fn map_stream<I, T, U, F>(&self, input: I, f: F, mut sink: impl FnMut(U))
    where
        I: Iterator<Item = T>,
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        let mut input = input.peekable();
        while input.peek().is_some() {
            let chunk: Vec<T> = input.by_ref().take(self.chunk_size).collect();
            for item in self.map_vec(chunk, &f) {
                sink(item);
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn build_pool(workers: usize) -> Option<Arc<rayon::ThreadPool>> {
    if workers == 1 {
        return None;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .ok()
        .map(Arc::new)
}

/// Always-sequential map, kept as the baseline for benchmarks regardless
/// of feature flags.
pub fn map_vec_sequential<T, U>(items: Vec<T>, f: impl Fn(T) -> U) -> Vec<U> {
    items.into_iter().map(f).collect()
}
