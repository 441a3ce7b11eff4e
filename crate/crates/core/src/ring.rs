//! Polynomials over `Z_{2^eps}` and reduction of full products by the ring
//! modulus.
//!
//! Coefficients live in `u16` lanes and all arithmetic wraps at `2^16`. A
//! polynomial is only meaningful modulo the width the caller declares; the
//! `eps` arguments below mask results down to that width.

use zeroize::{Zeroize, ZeroizeOnDrop};

use crate::params::RingModulus;

/// `2^eps - 1`.
#[inline]
pub const fn mask(eps: u32) -> u16 {
    if eps >= 16 {
        u16::MAX
    } else {
        (1u16 << eps) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub coeffs: Vec<u16>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { coeffs: vec![0; n] }
    }

    pub fn from_coeffs(coeffs: Vec<u16>) -> Self {
        Poly { coeffs }
    }

    pub fn constant(n: usize, c: u16) -> Self {
        Poly { coeffs: vec![c; n] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mask_to(&mut self, eps: u32) {
        let m = mask(eps);
        self.coeffs.iter_mut().for_each(|c| *c &= m);
    }

    pub fn masked(mut self, eps: u32) -> Self {
        self.mask_to(eps);
        self
    }

    /// Coefficient-wise `(c + add) mod 2^eps >> shift`.
    pub fn add_shift(&self, add: u16, eps: u32, shift: u32) -> Poly {
        let m = mask(eps);
        Poly {
            coeffs: self.coeffs.iter().map(|&c| (c.wrapping_add(add) & m) >> shift).collect(),
        }
    }
}

pub type PolyVec = Vec<Poly>;

/// An `l x l` matrix of polynomials, `rows[row][col]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    pub rows: Vec<Vec<Poly>>,
}

impl PolyMat {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &Poly {
        &self.rows[row][col]
    }

    /// Entry `(row, col)` of either the matrix or its transpose.
    pub fn entry(&self, row: usize, col: usize, transpose: bool) -> &Poly {
        if transpose {
            &self.rows[col][row]
        } else {
            &self.rows[row][col]
        }
    }
}

/// A secret vector with small signed coefficients in `[-eta, eta]`.
#[derive(Clone, Debug, PartialEq, Eq, Zeroize, ZeroizeOnDrop)]
pub struct SecretVec {
    pub polys: Vec<Vec<i8>>,
}

impl SecretVec {
    pub fn rank(&self) -> usize {
        self.polys.len()
    }

    /// Two's-complement embedding into `u16` lanes, valid modulo any `2^eps`.
    pub fn residues(&self) -> Vec<Poly> {
        self.polys
            .iter()
            .map(|p| Poly {
                coeffs: p.iter().map(|&c| c as i16 as u16).collect(),
            })
            .collect()
    }
}

pub fn poly_add(a: &Poly, b: &Poly, eps: u32) -> Poly {
    assert_eq!(a.len(), b.len(), "poly_add: length mismatch");
    let m = mask(eps);
    Poly {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x.wrapping_add(y) & m).collect(),
    }
}

pub fn poly_sub(a: &Poly, b: &Poly, eps: u32) -> Poly {
    assert_eq!(a.len(), b.len(), "poly_sub: length mismatch");
    let m = mask(eps);
    Poly {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x.wrapping_sub(y) & m).collect(),
    }
}

pub fn poly_add_const(a: &Poly, c: u16, eps: u32) -> Poly {
    let m = mask(eps);
    Poly {
        coeffs: a.coeffs.iter().map(|&x| x.wrapping_add(c) & m).collect(),
    }
}

/// In-place `acc += x` (no masking).
pub(crate) fn acc_add(acc: &mut [u16], x: &[u16]) {
    for (a, &b) in acc.iter_mut().zip(x) {
        *a = a.wrapping_add(b);
    }
}

/// Reduces a linear product of `2n - 1` (or fewer) coefficients modulo
/// `x^n + 1`: `out[i] = prod[i] - prod[i + n]`.
pub fn reduce_negacyclic(prod: &[u16], n: usize, eps: u32) -> Poly {
    assert!(prod.len() < 2 * n, "product too long for x^{n}+1");
    let mut out = vec![0u16; n];
    out[..prod.len().min(n)].copy_from_slice(&prod[..prod.len().min(n)]);
    for (i, &hi) in prod.iter().enumerate().skip(n) {
        out[i - n] = out[i - n].wrapping_sub(hi);
    }
    Poly { coeffs: out }.masked(eps)
}

/// Reduces a product of two 768-coefficient polynomials modulo
/// `x^768 - x^384 + 1` by substituting `x^768 = x^384 - 1` from the top
/// degree down, so the terms of degree 1152 and above are folded twice.
pub fn reduce_trinomial768(prod: &[u16], eps: u32) -> Poly {
    const N: usize = 768;
    const HALF: usize = 384;
    assert!(prod.len() < 2 * N, "product too long for x^768-x^384+1");
    let mut work = prod.to_vec();
    for i in (N..work.len()).rev() {
        let c = work[i];
        work[i - HALF] = work[i - HALF].wrapping_add(c);
        work[i - N] = work[i - N].wrapping_sub(c);
    }
    work.resize(N, 0);
    Poly { coeffs: work }.masked(eps)
}

pub fn reduce(ring: RingModulus, prod: &[u16], n: usize, eps: u32) -> Poly {
    match ring {
        RingModulus::NegaCyclic => reduce_negacyclic(prod, n, eps),
        RingModulus::Trinomial768 => {
            debug_assert_eq!(n, 768);
            reduce_trinomial768(prod, eps)
        }
    }
}
