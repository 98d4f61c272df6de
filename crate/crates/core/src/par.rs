//! Worker dispatch for the bulk-synchronous phases.
//!
//! With the `parallel` feature each phase runs its tasks on a rayon pool of
//! exactly `threads` workers; without it, or with a single thread, tasks run
//! inline on the caller in task order.

#[cfg(feature = "parallel")]
use std::{
    collections::HashMap,
    sync::{Arc, Mutex, OnceLock},
};

#[cfg(feature = "parallel")]
fn pool(threads: usize) -> Arc<rayon::ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    pools
        .entry(threads)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .thread_name(|i| format!("wavelet-worker-{i}"))
                    .build()
                    .expect("failed to spawn worker pool"),
            )
        })
        .clone()
}

#[derive(Clone)]
pub(crate) struct Workers {
    threads: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Workers {
    pub fn new(threads: usize) -> Self {
        let threads = threads.max(1);
        Self {
            threads,
            #[cfg(feature = "parallel")]
            pool: (threads > 1).then(|| pool(threads)),
        }
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Runs `f(index, task)` for every task; returns after all finish.
    pub fn for_each<T, F>(&self, tasks: Vec<T>, f: F)
    where
        T: Send,
        F: Fn(usize, T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            pool.install(|| {
                tasks
                    .into_par_iter()
                    .with_max_len(1)
                    .enumerate()
                    .for_each(|(i, t)| f(i, t))
            });
            return;
        }
        for (i, t) in tasks.into_iter().enumerate() {
            f(i, t);
        }
    }

    /// Like [`Workers::for_each`], collecting results in task order.
    pub fn map<T, R, F>(&self, tasks: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(usize, T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| {
                tasks
                    .into_par_iter()
                    .with_max_len(1)
                    .enumerate()
                    .map(|(i, t)| f(i, t))
                    .collect()
            });
        }
        tasks.into_iter().enumerate().map(|(i, t)| f(i, t)).collect()
    }
}

/// Shared view of a slice for scatter phases where every index is written
/// by at most one task.
pub(crate) struct ScatterSlice<'a, T> {
    ptr: *mut T,
    len: usize,
    _marker: std::marker::PhantomData<&'a mut [T]>,
}

// SAFETY: writes go through `write`, whose callers guarantee index-disjointness.
unsafe impl<T: Send> Send for ScatterSlice<'_, T> {}
unsafe impl<T: Send> Sync for ScatterSlice<'_, T> {}

impl<'a, T> ScatterSlice<'a, T> {
    pub fn new(slice: &'a mut [T]) -> Self {
        Self {
            ptr: slice.as_mut_ptr(),
            len: slice.len(),
            _marker: std::marker::PhantomData,
        }
    }

    /// # Safety
    /// No other task may read or write index `i` during this phase.
    #[inline]
    pub unsafe fn write(&self, i: usize, value: T) {
        assert!(i < self.len, "scatter index {i} out of range {}", self.len);
        unsafe { self.ptr.add(i).write(value) }
    }
}
