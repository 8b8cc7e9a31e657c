//! Data-parallel helpers. With the `parallel` feature the sample suites fan out over rayon;
//! without it, or inside [`sequential`], they run on the calling thread.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with the sample suites pinned to the current thread.
pub fn sequential<T>(f: impl FnOnce() -> T) -> T {
    let prev = FORCE_SEQUENTIAL.with(|c| c.replace(true));
    let out = f();
    FORCE_SEQUENTIAL.with(|c| c.set(prev));
    out
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get)
}

/// The result for the first item (in slice order) for which `f` returns `Some`.
pub fn find_first<T, W, F>(items: &[T], f: F) -> Option<W>
where
    T: Sync,
    W: Send,
    F: Fn(&T) -> Option<W> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

/// `items.map(f)` preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_in_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let hit = |x: &u32| (x % 97 == 5 && *x > 100).then_some(*x);
        assert_eq!(find_first(&xs, hit), Some(102));
        assert_eq!(sequential(|| find_first(&xs, hit)), Some(102));
        assert!(!sequential(is_parallel));
    }
}
