//! Sparse accumulator: dense value and occupancy arrays plus a list of
//! touched indices, giving O(k) accumulation of k entries after a one-time
//! O(n) allocation.

use crate::semiring::Semiring;

pub(crate) struct Spa<T> {
    vals: Vec<T>,
    occupied: Vec<bool>,
    touched: Vec<usize>,
}

impl<T: Copy> Spa<T> {
    /// One-time allocation, charged as the dimension term of the kernel
    /// that owns it.
    pub fn new(n: usize, fill: T) -> Self {
        Spa {
            vals: vec![fill; n],
            occupied: vec![false; n],
            touched: Vec::new(),
        }
    }

    /// Accumulates `v` at `idx`. The first touch stores `v` directly;
    /// later touches combine with ⊕. Returns whether an addition happened.
    pub fn accumulate<S: Semiring<Scalar = T>>(&mut self, idx: usize, v: T) -> bool {
        if self.occupied[idx] {
            self.vals[idx] = S::add(self.vals[idx], v);
            true
        } else {
            self.occupied[idx] = true;
            self.vals[idx] = v;
            self.touched.push(idx);
            false
        }
    }

    /// Number of currently occupied slots.
    pub fn len(&self) -> usize {
        self.touched.len()
    }

    /// Emits occupied entries sorted by index, skipping semiring zeros,
    /// and resets the accumulator for reuse. O(k·lg k) in the number of
    /// touched slots.
    pub fn drain_sorted<S: Semiring<Scalar = T>>(&mut self, mut emit: impl FnMut(usize, T)) {
        self.touched.sort_unstable();
        for &idx in &self.touched {
            self.occupied[idx] = false;
            let v = self.vals[idx];
            if !S::is_zero(&v) {
                emit(idx, v);
            }
        }
        self.touched.clear();
    }
}
