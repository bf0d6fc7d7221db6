//! Data-parallel helpers. With the `parallel` feature these run on the
//! current rayon pool; without it they fall back to plain iterators. Every
//! helper returns results in index order so reports are deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn num_threads() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();

    #[cfg(not(feature = "parallel"))]
    return 1;
}

/// `f` applied to `0..n`, collected in order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().map(f).collect();

    #[cfg(not(feature = "parallel"))]
    return (0..n).map(f).collect();
}

pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    return items.par_iter().map(f).collect();

    #[cfg(not(feature = "parallel"))]
    return items.iter().map(f).collect();
}

/// Keeps the `Some` results of `f` over `0..n`, in index order.
pub fn filter_map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().filter_map(f).collect();

    #[cfg(not(feature = "parallel"))]
    return (0..n).filter_map(f).collect();
}

/// The `Some` value of `f` at the smallest index, if any.
pub fn find_map_first<R, F>(n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().find_map_first(f);

    #[cfg(not(feature = "parallel"))]
    return (0..n).find_map(f);
}

/// Like [`find_map_first`] but an `Err` at a smaller index wins over a
/// later witness, and vice versa.
pub fn try_find_map_first<R, E, F>(n: usize, f: F) -> Result<Option<R>, E>
where
    R: Send,
    E: Send,
    F: Fn(usize) -> Result<Option<R>, E> + Send + Sync,
{
    let hit = find_map_first(n, |i| match f(i) {
        Ok(None) => None,
        other => Some(other),
    });
    match hit {
        None => Ok(None),
        Some(r) => r,
    }
}

pub fn count_range<F>(n: usize, f: F) -> usize
where
    F: Fn(usize) -> bool + Send + Sync,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().filter(|&i| f(i)).count();

    #[cfg(not(feature = "parallel"))]
    return (0..n).filter(|&i| f(i)).count();
}

/// Runs `op` on a dedicated pool of `threads` workers (sequentially when
/// `threads == 1` or the feature is off).
pub fn with_threads<R, F>(threads: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("thread pool");
        pool.install(op)
    }

    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        op()
    }
}

/// Decodes a flat index into `k` coordinates each below `n`, most
/// significant first.
pub fn decode(mut i: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = i % n;
        i /= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_smallest_index() {
        let hit = find_map_first(1000, |i| (i % 7 == 3 && i > 10).then_some(i));
        assert_eq!(hit, Some(17));
    }

    #[test]
    fn error_before_witness_wins() {
        let r: Result<Option<usize>, usize> = try_find_map_first(100, |i| {
            if i == 5 {
                Err(i)
            } else if i == 9 {
                Ok(Some(i))
            } else {
                Ok(None)
            }
        });
        assert_eq!(r, Err(5));
    }

    #[test]
    fn decode_is_mixed_radix() {
        let mut out = [0; 3];
        decode(2 * 9 + 3 + 2, 3, &mut out);
        assert_eq!(out, [2, 1, 2]);
    }
}
