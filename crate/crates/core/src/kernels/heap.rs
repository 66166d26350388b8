//! Binary min-heap for the multiway merge, instrumented to count key
//! comparisons.
//!
//! Entries are keyed by `(col, row, list)` in column-major order; the list
//! id breaks ties so that equal coordinates are surfaced in ascending
//! inner-index order, which fixes the accumulation order of ⊕ across
//! kernels. A plain binary heap keeps the lg(ni) per-operation bound.

pub(crate) struct HeapEntry<T> {
    pub col: usize,
    pub row: usize,
    pub list: usize,
    pub val: T,
}

impl<T> HeapEntry<T> {
    fn key(&self) -> (usize, usize, usize) {
        (self.col, self.row, self.list)
    }
}

pub(crate) struct MergeHeap<T> {
    slots: Vec<HeapEntry<T>>,
    /// Key comparisons performed while sifting.
    pub comparisons: u64,
    /// Pushes plus pops.
    pub ops: u64,
}

impl<T> MergeHeap<T> {
    pub fn with_capacity(cap: usize) -> Self {
        MergeHeap {
            slots: Vec::with_capacity(cap),
            comparisons: 0,
            ops: 0,
        }
    }

    pub fn push(&mut self, entry: HeapEntry<T>) {
        self.ops += 1;
        self.slots.push(entry);
        let mut i = self.slots.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            self.comparisons += 1;
            if self.slots[i].key() < self.slots[parent].key() {
                self.slots.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    pub fn pop(&mut self) -> Option<HeapEntry<T>> {
        if self.slots.is_empty() {
            return None;
        }
        self.ops += 1;
        let last = self.slots.len() - 1;
        self.slots.swap(0, last);
        let out = self.slots.pop();
        let len = self.slots.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            if l >= len {
                break;
            }
            let mut smallest = l;
            if r < len {
                self.comparisons += 1;
                if self.slots[r].key() < self.slots[l].key() {
                    smallest = r;
                }
            }
            self.comparisons += 1;
            if self.slots[smallest].key() < self.slots[i].key() {
                self.slots.swap(i, smallest);
                i = smallest;
            } else {
                break;
            }
        }
        out
    }
}
