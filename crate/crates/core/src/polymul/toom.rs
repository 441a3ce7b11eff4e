//! Toom-Cook 3- and 4-way splitting over `u16` lanes.
//!
//! Interpolation needs exact divisions by even constants, which have no
//! inverse modulo `2^16`. Each division by `h * 2^w` (`h` odd) multiplies by
//! `h^-1 mod 2^16` and then shifts right by `w`, so the result is only valid
//! modulo `2^(16 - w)` (more precisely: `w` bits below whatever precision the
//! inputs carried). Toom-4 loses 3 bits in total, Toom-3 loses 1.
//!
//! Toom-4 evaluates at `{inf, 2, 1, -1, 1/2, -1/2, 0}` (the half points scaled
//! by 8 per operand so everything stays integral); Toom-3 at
//! `{0, 1, -1, 2, inf}`.

const INV3: u16 = 43691;
const INV9: u16 = 36409;
const INV15: u16 = 61167;

/// Right shift of a value known to be divisible by `2^w`.
#[inline]
fn exact_shr(x: u16, w: u32) -> u16 {
    debug_assert_eq!(x & ((1 << w) - 1), 0, "inexact division by 2^{w}");
    x >> w
}

/// The seven evaluations of a 4-limb operand, in the order
/// `inf, 2, 1, -1, 8*(1/2), 8*(-1/2), 0`.
pub fn toom4_eval(a: &[u16]) -> [Vec<u16>; 7] {
    assert_eq!(a.len() % 4, 0, "toom4: length not divisible by 4");
    let k = a.len() / 4;
    let mut w: [Vec<u16>; 7] = Default::default();
    for v in w.iter_mut() {
        v.reserve_exact(k);
    }
    for j in 0..k {
        let (r0, r1, r2, r3) = (a[j], a[k + j], a[2 * k + j], a[3 * k + j]);
        let even = r0.wrapping_add(r2);
        let odd = r1.wrapping_add(r3);
        let even_h = ((r0 << 2).wrapping_add(r2)) << 1;
        let odd_h = (r1 << 2).wrapping_add(r3);
        w[0].push(r3);
        w[1].push((r3 << 3).wrapping_add(r2 << 2).wrapping_add(r1 << 1).wrapping_add(r0));
        w[2].push(even.wrapping_add(odd));
        w[3].push(even.wrapping_sub(odd));
        w[4].push(even_h.wrapping_add(odd_h));
        w[5].push(even_h.wrapping_sub(odd_h));
        w[6].push(r0);
    }
    w
}

/// Recombines the seven point products (each `2k - 1` coefficients) into the
/// `8k - 1` coefficient product.
pub fn toom4_interp(w: &[Vec<u16>; 7]) -> Vec<u16> {
    let plen = w[0].len();
    assert!(w.iter().all(|x| x.len() == plen), "toom4_interp: ragged products");
    let k = plen.div_ceil(2);
    let mut out = vec![0u16; 8 * k - 1];
    for i in 0..plen {
        let (r0, mut r1, mut r2, mut r3, mut r4, mut r5, r6) =
            (w[0][i], w[1][i], w[2][i], w[3][i], w[4][i], w[5][i], w[6][i]);
        r1 = r1.wrapping_add(r4);
        r5 = r5.wrapping_sub(r4);
        r3 = exact_shr(r3.wrapping_sub(r2), 1);
        r4 = r4.wrapping_sub(r0);
        r4 = r4.wrapping_sub(r6 << 6);
        r4 = (r4 << 1).wrapping_add(r5);
        r2 = r2.wrapping_add(r3);
        r1 = r1.wrapping_sub(r2 << 6).wrapping_sub(r2);
        r2 = r2.wrapping_sub(r6);
        r2 = r2.wrapping_sub(r0);
        r1 = r1.wrapping_add(45u16.wrapping_mul(r2));
        r4 = exact_shr(r4.wrapping_sub(r2 << 3).wrapping_mul(INV3), 3);
        r5 = r5.wrapping_add(r1);
        r1 = exact_shr(r1.wrapping_add(r3 << 4).wrapping_mul(INV9), 1);
        r3 = 0u16.wrapping_sub(r3.wrapping_add(r1));
        r5 = exact_shr(30u16.wrapping_mul(r1).wrapping_sub(r5).wrapping_mul(INV15), 2);
        r2 = r2.wrapping_sub(r4);
        r1 = r1.wrapping_sub(r5);

        for (limb, c) in [r6, r5, r4, r3, r2, r1, r0].into_iter().enumerate() {
            let o = &mut out[i + limb * k];
            *o = o.wrapping_add(c);
        }
    }
    out
}

/// Toom-4 product with `sub` computing the seven limb products. Correct
/// modulo `2^(b - 3)` when `sub` is correct modulo `2^b`.
pub fn toom4_mul(a: &[u16], b: &[u16], mut sub: impl FnMut(&[u16], &[u16]) -> Vec<u16>) -> Vec<u16> {
    assert_eq!(a.len(), b.len(), "toom4: length mismatch");
    let ea = toom4_eval(a);
    let eb = toom4_eval(b);
    let mut w: [Vec<u16>; 7] = Default::default();
    for (i, slot) in w.iter_mut().enumerate() {
        *slot = sub(&ea[i], &eb[i]);
    }
    toom4_interp(&w)
}

/// The five evaluations of a 3-limb operand, in the order `0, 1, -1, 2, inf`.
pub fn toom3_eval(a: &[u16]) -> [Vec<u16>; 5] {
    assert_eq!(a.len() % 3, 0, "toom3: length not divisible by 3");
    let k = a.len() / 3;
    let mut w: [Vec<u16>; 5] = Default::default();
    for j in 0..k {
        let (a0, a1, a2) = (a[j], a[k + j], a[2 * k + j]);
        let even = a0.wrapping_add(a2);
        w[0].push(a0);
        w[1].push(even.wrapping_add(a1));
        w[2].push(even.wrapping_sub(a1));
        w[3].push(a0.wrapping_add(a1 << 1).wrapping_add(a2 << 2));
        w[4].push(a2);
    }
    w
}

/// Recombines the five point products into the `6k - 1` coefficient product.
pub fn toom3_interp(w: &[Vec<u16>; 5]) -> Vec<u16> {
    let plen = w[0].len();
    assert!(w.iter().all(|x| x.len() == plen), "toom3_interp: ragged products");
    let k = plen.div_ceil(2);
    let mut out = vec![0u16; 6 * k - 1];
    for i in 0..plen {
        let (w0, w1, wm1, w2, winf) = (w[0][i], w[1][i], w[2][i], w[3][i], w[4][i]);
        let c0 = w0;
        let c4 = winf;
        // (w2 - w(-1)) / 3 = c1 + c2 + 3 c3 + 5 c4
        let t = w2.wrapping_sub(wm1).wrapping_mul(INV3);
        let c3 = exact_shr(t.wrapping_sub(w1).wrapping_add(c0).wrapping_sub(c4 << 2), 1);
        let c2 = exact_shr(w1.wrapping_add(wm1).wrapping_sub(c0 << 1).wrapping_sub(c4 << 1), 1);
        let c1 = exact_shr(w1.wrapping_sub(wm1), 1).wrapping_sub(c3);
        for (limb, c) in [c0, c1, c2, c3, c4].into_iter().enumerate() {
            let o = &mut out[i + limb * k];
            *o = o.wrapping_add(c);
        }
    }
    out
}

/// Toom-3 product; correct modulo `2^(b - 1)` when `sub` is correct modulo `2^b`.
pub fn toom3_mul(a: &[u16], b: &[u16], mut sub: impl FnMut(&[u16], &[u16]) -> Vec<u16>) -> Vec<u16> {
    assert_eq!(a.len(), b.len(), "toom3: length mismatch");
    let ea = toom3_eval(a);
    let eb = toom3_eval(b);
    let mut w: [Vec<u16>; 5] = Default::default();
    for (i, slot) in w.iter_mut().enumerate() {
        *slot = sub(&ea[i], &eb[i]);
    }
    toom3_interp(&w)
}
