//! Shared helpers: capped parallelism for sampling loops.

use std::sync::OnceLock;

/// Maximum worker threads for sampling loops, from `QLUCAS_THREADS`.
/// Unset or invalid means sequential.
pub fn thread_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("QLUCAS_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .unwrap_or(1)
    })
}

/// Maps `f` over `0..n`, chunked over up to `thread_cap()` scoped threads.
/// Output is in index order, so downstream reductions see the same sequence
/// regardless of the thread count.
pub(crate) fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_cap().min(n.max(1));
    if threads <= 1 || n < 64 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(threads);
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (t, slot) in out.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (off, cell) in slot.iter_mut().enumerate() {
                    *cell = Some(f(t * chunk + off));
                }
            });
        }
    });
    out.into_iter().map(|x| x.expect("every index filled")).collect()
}
