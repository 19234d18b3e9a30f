//! Deterministic fork-join over item slices.
//!
//! Work is split into contiguous chunks, one per worker, and the per-chunk
//! outputs are concatenated in chunk order. Per-item results depend only on
//! the item, so output bytes are identical for any worker count.

pub fn resolve_workers(requested: usize) -> usize {
    if requested > 0 {
        return requested;
    }
    if let Ok(v) = std::env::var("TETRAMESH_WORKERS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Apply `f` to contiguous chunks of `items` on `workers` threads and return
/// the chunk outputs in order. `f` receives the start index of its chunk.
pub fn map_chunks<I, O, F>(items: &[I], workers: usize, f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(usize, &[I]) -> O + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 || items.len() < 2 {
        return vec![f(0, items)];
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .enumerate()
            .map(|(n, slice)| scope.spawn(move || f(n * chunk, slice)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}
