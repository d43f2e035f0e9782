//! Grid evaluation on the rayon thread pool.

use faraday_core::sweep::GridExecutor;
use rayon::prelude::*;

/// Evaluates grid points concurrently; results keep grid order, so output
/// is identical to [`faraday_core::sweep::Sequential`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl GridExecutor for Parallel {
    fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }
}
