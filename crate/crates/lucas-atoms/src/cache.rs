//! Fixed-capacity concurrent memo table.
//!
//! Each slot is set at most once; concurrent readers never block and racing
//! writers agree because every cached value is a deterministic function of
//! its index.  Indices at or beyond the capacity are simply never cached.

use alloc::boxed::Box;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

pub(crate) struct SlotTable<T> {
    slots: Box<[OnceBox<T>]>,
}

impl<T> SlotTable<T> {
    pub(crate) fn new(len: usize) -> Self {
        let mut v = Vec::with_capacity(len);
        v.resize_with(len, OnceBox::new);
        SlotTable { slots: v.into_boxed_slice() }
    }

    pub(crate) fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub(crate) fn get(&self, i: u64) -> Option<&T> {
        self.slots.get(usize::try_from(i).ok()?)?.get()
    }

    /// Stores `value` at `i` unless another thread got there first; returns
    /// the cached reference, or `None` when `i` is beyond capacity.
    pub(crate) fn insert(&self, i: u64, value: T) -> Option<&T> {
        let slot = self.slots.get(usize::try_from(i).ok()?)?;
        let _ = slot.set(Box::new(value));
        slot.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_once_and_capacity() {
        let table: SlotTable<u64> = SlotTable::new(4);
        assert_eq!(table.capacity(), 4);
        assert_eq!(table.get(2), None);
        assert_eq!(table.insert(2, 10), Some(&10));
        // A second insert loses the race and the original value stays.
        assert_eq!(table.insert(2, 99), Some(&10));
        assert_eq!(table.get(2), Some(&10));
        assert_eq!(table.insert(4, 1), None);
        assert_eq!(table.get(u64::MAX), None);
    }
}
