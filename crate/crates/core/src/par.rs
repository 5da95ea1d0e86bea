//! Data-parallel inner loops with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers fan work out over
//! rayon; without it they run plain sequential iterators. Call sites are
//! pure per-index maps, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum per-thread chunk; keeps rayon overhead off tiny instances.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 64;

#[cfg(feature = "parallel")]
pub(crate) fn for_each_mut_indexed<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync,
{
    items
        .par_iter_mut()
        .with_min_len(MIN_CHUNK)
        .enumerate()
        .for_each(|(i, item)| f(i, item));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn for_each_mut_indexed<T, F>(items: &mut [T], f: F)
where
    F: Fn(usize, &mut T),
{
    for (i, item) in items.iter_mut().enumerate() {
        f(i, item);
    }
}
