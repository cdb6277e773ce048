//! Minimal fan-out abstraction so the core stays free of threading.

use alloc::vec::Vec;

/// Evaluates independent jobs `0..len`, returning results in job order.
pub trait WorkerPool: Sync {
    fn map<T, F>(&self, len: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every job on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl WorkerPool for Sequential {
    fn map<T, F>(&self, len: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..len).map(job).collect()
    }
}
