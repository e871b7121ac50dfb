//! Order-preserving data-parallel map, sequential without the `parallel` feature.

#[cfg(feature = "parallel")]
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Maps over a slice, keeping the input order in the output.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_range(items.len(), |i| f(&items[i]))
}

/// Caps the worker count for all later parallel maps. Only the first call
/// takes effect.
#[cfg(feature = "parallel")]
pub fn set_jobs(jobs: usize) -> crate::Result<()> {
    if jobs == 0 {
        return Err(crate::Error::config("jobs", "must be at least 1"));
    }
    // An already initialised pool keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    Ok(())
}

#[cfg(not(feature = "parallel"))]
pub fn set_jobs(jobs: usize) -> crate::Result<()> {
    if jobs == 0 {
        return Err(crate::Error::config("jobs", "must be at least 1"));
    }
    Ok(())
}
