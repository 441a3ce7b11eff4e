//! Per-thread operation counters for the multiplication trees.
//!
//! Counting is always on; it is a handful of thread-local increments per
//! ring product.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    /// Calls to the 256x256 multiplier.
    pub mul256: u64,
    /// 16x16 schoolbook base products.
    pub schoolbook16: u64,
    /// Full ring products (`ring_mul`, or one accumulated output of a
    /// matrix-vector / inner product).
    pub ring_products: u64,
    /// Karatsuba interpolations of the 64-coefficient tree.
    pub interpolations64: u64,
}

impl Counts {
    pub fn since(self, earlier: Counts) -> Counts {
        Counts {
            mul256: self.mul256 - earlier.mul256,
            schoolbook16: self.schoolbook16 - earlier.schoolbook16,
            ring_products: self.ring_products - earlier.ring_products,
            interpolations64: self.interpolations64 - earlier.interpolations64,
        }
    }
}

thread_local! {
    static COUNTS: Cell<Counts> = const { Cell::new(Counts { mul256: 0, schoolbook16: 0, ring_products: 0, interpolations64: 0 }) };
}

pub fn snapshot() -> Counts {
    COUNTS.with(Cell::get)
}

pub fn reset() {
    COUNTS.with(|c| c.set(Counts::default()));
}

#[inline]
pub(crate) fn bump(f: impl FnOnce(&mut Counts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}
