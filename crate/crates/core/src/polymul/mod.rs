//! Polynomial multiplication trees.
//!
//! | set          | tree                                         | 256x256 calls |
//! |--------------|----------------------------------------------|---------------|
//! | Sable        | Toom-4, 2x Karatsuba, 16x16 schoolbook       | 1             |
//! | Florete Low  | 1x Karatsuba over the 256x256 multiplier     | 3             |
//! | Florete Med  | Toom-3 over the 256x256 multiplier           | 5             |
//! | Florete High | Toom-4 over the 256x256 multiplier           | 7             |
//! | Espada       | 2x Karatsuba, 16x16 schoolbook (n = 64)      | 0             |
//!
//! All lanes are `u16` with wrapping arithmetic. Secrets enter as
//! two's-complement residues (see [`SecretVec::residues`]).

mod karatsuba;
mod schoolbook;
pub mod stats;
mod toom;

pub use karatsuba::{karatsuba_eval, karatsuba_interp, karatsuba_mul};
pub use schoolbook::schoolbook;
pub use toom::{toom3_eval, toom3_interp, toom3_mul, toom4_eval, toom4_interp, toom4_mul};

use crate::params::{MulTree, SchemeParams};
use crate::ring::{acc_add, reduce, Poly, PolyMat, PolyVec, SecretVec};
use karatsuba::{pointwise_acc, pow3};

/// Karatsuba depth of the 64-coefficient tree.
const ESPADA_LAYERS: u32 = 2;

/// The 256x256 multiplier: one Toom-4 layer, two Karatsuba layers,
/// 16x16 schoolbook. Linear product correct modulo `2^13`.
pub fn mul256(a: &[u16], b: &[u16]) -> Vec<u16> {
    assert_eq!(a.len(), 256, "mul256: operand a has {} coefficients", a.len());
    assert_eq!(b.len(), 256, "mul256: operand b has {} coefficients", b.len());
    stats::bump(|c| c.mul256 += 1);
    toom4_mul(a, b, |x, y| karatsuba_mul(x, y, 2))
}

/// One Karatsuba layer over [`mul256`]; 512 coefficients, correct modulo `2^13`.
pub fn mul512(a: &[u16], b: &[u16]) -> Vec<u16> {
    assert_eq!(a.len(), 512, "mul512: length");
    assert_eq!(b.len(), 512, "mul512: length");
    let (a0, a1) = a.split_at(256);
    let (b0, b1) = b.split_at(256);
    let sa: Vec<u16> = a0.iter().zip(a1).map(|(&x, &y)| x.wrapping_add(y)).collect();
    let sb: Vec<u16> = b0.iter().zip(b1).map(|(&x, &y)| x.wrapping_add(y)).collect();
    let lo = mul256(a0, b0);
    let hi = mul256(a1, b1);
    let mid = mul256(&sa, &sb);
    let mut out = vec![0u16; 1023];
    for i in 0..511 {
        out[i] = out[i].wrapping_add(lo[i]);
        out[i + 512] = out[i + 512].wrapping_add(hi[i]);
        out[i + 256] = out[i + 256].wrapping_add(mid[i].wrapping_sub(lo[i]).wrapping_sub(hi[i]));
    }
    out
}

/// Toom-3 over [`mul256`]; 768 coefficients, correct modulo `2^12`.
pub fn mul768(a: &[u16], b: &[u16]) -> Vec<u16> {
    assert_eq!(a.len(), 768, "mul768: length");
    toom3_mul(a, b, mul256)
}

/// Toom-4 over [`mul256`]; 1024 coefficients, correct modulo `2^10`.
pub fn mul1024(a: &[u16], b: &[u16]) -> Vec<u16> {
    assert_eq!(a.len(), 1024, "mul1024: length");
    toom4_mul(a, b, mul256)
}

/// Linear (unreduced) product through the tree of `p`.
fn linear_product(p: &SchemeParams, a: &[u16], b: &[u16]) -> Vec<u16> {
    assert_eq!(a.len(), p.n, "operand length {} for n = {}", a.len(), p.n);
    assert_eq!(b.len(), p.n, "operand length {} for n = {}", b.len(), p.n);
    stats::bump(|c| c.ring_products += 1);
    match p.tree {
        MulTree::Toom4Karatsuba256 => mul256(a, b),
        MulTree::KaratsubaOver256 => mul512(a, b),
        MulTree::Toom3Over256 => mul768(a, b),
        MulTree::Toom4Over256 => mul1024(a, b),
        MulTree::Karatsuba64 => {
            stats::bump(|c| c.interpolations64 += 1);
            karatsuba_mul(a, b, ESPADA_LAYERS)
        }
    }
}

/// `a * b` in the ring of `p`, modulo `2^eps_q`.
pub fn ring_mul(p: &SchemeParams, a: &Poly, b: &Poly) -> Poly {
    let prod = linear_product(p, &a.coeffs, &b.coeffs);
    reduce(p.ring, &prod, p.n, p.eps_q)
}

/// `sum_j row(i)[j] * s[j]` for every output `i`, reduced modulo `2^eps`.
fn accumulate_rows<'a>(
    p: &SchemeParams,
    rows: impl Iterator<Item = Vec<&'a Poly>>,
    s: &[Poly],
    eps: u32,
) -> PolyVec {
    if p.tree == MulTree::Karatsuba64 {
        return accumulate_rows_lazy(p, rows, s, eps);
    }
    rows.map(|row| {
        assert_eq!(row.len(), s.len(), "dimension mismatch");
        let mut acc = vec![0u16; 2 * p.n - 1];
        for (a, sj) in row.into_iter().zip(s) {
            acc_add(&mut acc, &linear_product(p, &a.coeffs, &sj.coeffs));
        }
        reduce(p.ring, &acc, p.n, eps)
    })
    .collect()
}

/// Lazy interpolation: the evaluated piece products of all `l` terms are
/// summed first, then interpolated once per output polynomial.
fn accumulate_rows_lazy<'a>(
    p: &SchemeParams,
    rows: impl Iterator<Item = Vec<&'a Poly>>,
    s: &[Poly],
    eps: u32,
) -> PolyVec {
    let piece = p.n >> ESPADA_LAYERS;
    let slots = pow3(ESPADA_LAYERS) * (2 * piece - 1);
    let s_eval: Vec<Vec<u16>> = s
        .iter()
        .map(|sj| {
            assert_eq!(sj.len(), p.n, "operand length");
            karatsuba_eval(&sj.coeffs, ESPADA_LAYERS)
        })
        .collect();
    rows.map(|row| {
        assert_eq!(row.len(), s.len(), "dimension mismatch");
        let mut acc = vec![0u16; slots];
        for (a, se) in row.into_iter().zip(&s_eval) {
            assert_eq!(a.len(), p.n, "operand length");
            stats::bump(|c| c.ring_products += 1);
            pointwise_acc(&karatsuba_eval(&a.coeffs, ESPADA_LAYERS), se, piece, &mut acc);
        }
        stats::bump(|c| c.interpolations64 += 1);
        let prod = karatsuba_interp(&acc, ESPADA_LAYERS, piece);
        reduce(p.ring, &prod, p.n, eps)
    })
    .collect()
}

/// `A * s` (or `A^T * s`) modulo `2^eps_q`. Entry `i` of the result is
/// `sum_j A[i][j] s[j]`, or `sum_j A[j][i] s[j]` when transposed.
pub fn matvec_mul(p: &SchemeParams, a: &PolyMat, s: &SecretVec, transpose: bool) -> PolyVec {
    matvec_mul_residues(p, a, &s.residues(), transpose)
}

/// [`matvec_mul`] with the secret already embedded as residues.
pub fn matvec_mul_residues(p: &SchemeParams, a: &PolyMat, s: &[Poly], transpose: bool) -> PolyVec {
    let l = a.rank();
    assert_eq!(s.len(), l, "matrix rank {l} vs vector length {}", s.len());
    let rows = (0..l).map(|i| (0..l).map(|j| a.entry(i, j, transpose)).collect::<Vec<_>>());
    accumulate_rows(p, rows, s, p.eps_q)
}

/// `b^T * s` modulo `2^eps_p`.
pub fn inner_prod(p: &SchemeParams, b: &[Poly], s: &SecretVec) -> Poly {
    inner_prod_residues(p, b, &s.residues())
}

pub fn inner_prod_residues(p: &SchemeParams, b: &[Poly], s: &[Poly]) -> Poly {
    assert_eq!(b.len(), s.len(), "inner product of lengths {} and {}", b.len(), s.len());
    let row = b.iter().collect::<Vec<_>>();
    accumulate_rows(p, std::iter::once(row), s, p.eps_p).pop().expect("one row")
}
