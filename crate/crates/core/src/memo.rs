use std::sync::OnceLock;

/// Lazily allocated, thread-safe memo table keyed by a pair of element
/// indices of one interval.
pub(crate) struct PairMemo<T> {
    size: usize,
    cells: OnceLock<Vec<OnceLock<T>>>,
}

impl<T> PairMemo<T> {
    pub(crate) fn new(size: usize) -> Self {
        Self {
            size,
            cells: OnceLock::new(),
        }
    }

    pub(crate) fn get_or_init(&self, a: usize, b: usize, f: impl FnOnce() -> T) -> &T {
        let cells = self.cells.get_or_init(|| {
            (0..self.size * self.size)
                .map(|_| OnceLock::new())
                .collect()
        });
        cells[a * self.size + b].get_or_init(f)
    }
}
