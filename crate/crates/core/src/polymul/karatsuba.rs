//! Karatsuba layers in evaluate / multiply / interpolate form.
//!
//! Evaluating an operand with `layers` levels produces `3^layers` pieces of
//! `m / 2^layers` coefficients laid out flat, in `(lo, hi, lo+hi)` recursive
//! order. Interpolation is linear and division-free, so products of evaluated
//! pieces may be summed across many operand pairs and interpolated once.

use super::schoolbook::schoolbook_acc;

pub(crate) const fn pow3(k: u32) -> usize {
    3usize.pow(k)
}

/// Flattened evaluation of `a`.
pub fn karatsuba_eval(a: &[u16], layers: u32) -> Vec<u16> {
    assert_eq!(a.len() % (1 << layers), 0, "length not divisible by 2^layers");
    let mut out = Vec::with_capacity(pow3(layers) * (a.len() >> layers));
    eval_into(a, layers, &mut out);
    out
}

fn eval_into(a: &[u16], layers: u32, out: &mut Vec<u16>) {
    if layers == 0 {
        out.extend_from_slice(a);
        return;
    }
    let (lo, hi) = a.split_at(a.len() / 2);
    let sum: Vec<u16> = lo.iter().zip(hi).map(|(&x, &y)| x.wrapping_add(y)).collect();
    eval_into(lo, layers - 1, out);
    eval_into(hi, layers - 1, out);
    eval_into(&sum, layers - 1, out);
}

/// `acc[k] += ea[k] * eb[k]` for every piece; `acc` holds `3^layers`
/// products of `2 * piece - 1` coefficients.
pub(crate) fn pointwise_acc(ea: &[u16], eb: &[u16], piece: usize, acc: &mut [u16]) {
    let plen = 2 * piece - 1;
    for ((x, y), out) in ea.chunks_exact(piece).zip(eb.chunks_exact(piece)).zip(acc.chunks_exact_mut(plen)) {
        schoolbook_acc(x, y, out);
    }
}

/// Inverse of the evaluation: recombines `3^layers` piece products into the
/// linear product of length `2 * piece * 2^layers - 1`.
pub fn karatsuba_interp(prods: &[u16], layers: u32, piece: usize) -> Vec<u16> {
    let plen = 2 * piece - 1;
    assert_eq!(prods.len(), pow3(layers) * plen, "karatsuba_interp: wrong product count");
    if layers == 0 {
        return prods.to_vec();
    }
    let sub = pow3(layers - 1) * plen;
    let lo = karatsuba_interp(&prods[..sub], layers - 1, piece);
    let hi = karatsuba_interp(&prods[sub..2 * sub], layers - 1, piece);
    let mid = karatsuba_interp(&prods[2 * sub..], layers - 1, piece);
    let h = piece << (layers - 1);
    let mut out = vec![0u16; 4 * h - 1];
    for i in 0..2 * h - 1 {
        out[i] = out[i].wrapping_add(lo[i]);
        out[i + 2 * h] = out[i + 2 * h].wrapping_add(hi[i]);
        let m = mid[i].wrapping_sub(lo[i]).wrapping_sub(hi[i]);
        out[i + h] = out[i + h].wrapping_add(m);
    }
    out
}

/// Karatsuba with `layers` levels down to schoolbook; exact modulo `2^16`.
pub fn karatsuba_mul(a: &[u16], b: &[u16], layers: u32) -> Vec<u16> {
    assert_eq!(a.len(), b.len(), "karatsuba_mul: length mismatch");
    let piece = a.len() >> layers;
    let ea = karatsuba_eval(a, layers);
    let eb = karatsuba_eval(b, layers);
    let mut prods = vec![0u16; pow3(layers) * (2 * piece - 1)];
    pointwise_acc(&ea, &eb, piece, &mut prods);
    karatsuba_interp(&prods, layers, piece)
}
