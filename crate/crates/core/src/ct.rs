//! Constant-time helpers for the decapsulation comparison and selection.

use std::hint::black_box;

/// `0xff` if `a == b`, else `0x00`, without data-dependent branches.
pub(crate) fn ct_eq_mask(a: &[u8], b: &[u8]) -> u8 {
    assert_eq!(a.len(), b.len(), "ct_eq_mask: length mismatch");
    let mut diff = 0u8;
    for (&x, &y) in a.iter().zip(b) {
        diff |= x ^ y;
    }
    let diff = black_box(diff) as u16;
    // 0 -> 0xff, 1..=255 -> 0x00
    ((diff.wrapping_sub(1) >> 8) & 0xff) as u8
}

/// `mask = 0xff` selects `a`, `0x00` selects `b`.
pub(crate) fn ct_select(mask: u8, a: &[u8; 32], b: &[u8; 32]) -> [u8; 32] {
    let mask = black_box(mask);
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = (a[i] & mask) | (b[i] & !mask);
    }
    out
}
