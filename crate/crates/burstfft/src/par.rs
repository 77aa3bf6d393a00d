//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it they are plain sequential loops with the same
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Work below this many elements stays on the calling thread.
pub(crate) const SEQ_CUTOFF: usize = 1 << 12;

/// Calls `f(offset, chunk)` for each `chunk`-sized piece of `dst`.
pub(crate) fn for_each_chunk<T, F>(dst: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    if dst.len() > chunk {
        dst.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i * chunk, c));
        return;
    }
    dst.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i * chunk, c));
}

/// `(0..n).map(f).collect()`, in parallel when enabled and `parallel` is set.
pub fn map_range<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && n > 1 {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Whether the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
