//! Minimal deterministic fork-join helper.
//!
//! Parallelism in this crate is embarrassingly simple: a fixed list of
//! independent pure computations (one transfer per generator, one saturation
//! per monoid element).  Results are always placed by input index, so output
//! never depends on scheduling.  The thread cap comes from the
//! `AMBIKIT_THREADS` environment variable (default 1, i.e. fully serial).

/// Maximum worker threads to use, from `AMBIKIT_THREADS` (default 1).
pub fn thread_cap() -> usize {
    std::env::var("AMBIKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Applies `f` to every element of `items`, possibly in parallel, returning
/// results in input order.
pub fn map_indexed<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let threads = thread_cap().min(items.len().max(1));
    if threads <= 1 || items.len() <= 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let mut slots: Vec<Option<R>> = Vec::with_capacity(items.len());
    slots.resize_with(items.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slot_refs: Vec<std::sync::Mutex<&mut Option<R>>> =
        slots.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(i, &items[i]);
                **slot_refs[i].lock().unwrap() = Some(r);
            });
        }
    });
    drop(slot_refs);
    slots.into_iter().map(|s| s.expect("worker filled slot")).collect()
}
