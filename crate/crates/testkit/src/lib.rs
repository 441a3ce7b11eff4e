//! Reference oracles and statistical harnesses for the scabbard KEMs.
//!
//! Nothing here reuses the optimized multipliers: ring products are computed
//! with `i64` schoolbook convolution followed by polynomial long division by
//! the ring modulus.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rand::{Rng, RngCore};
use scabbard::codec::{decode_sk, Message};
use scabbard::params::{RingModulus, SchemeParams};
use scabbard::pke;
use scabbard::ring::{Poly, PolyMat};
use scabbard::symmetric::{hash_h, kdf};
use scabbard::{Ciphertext, Kem, KeyPair, SharedSecret};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Low coefficients of the monic ring modulus `x^n + f(x)`, as `f`'s
/// coefficients `f_0 .. f_{n-1}`.
pub fn modulus_tail(p: &SchemeParams) -> Vec<i64> {
    let mut f = vec![0i64; p.n];
    f[0] = 1;
    if p.ring == RingModulus::Trinomial768 {
        f[p.n / 2] = -1;
    }
    f
}

/// Unbounded-integer linear convolution.
pub fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `poly` modulo `x^n + tail(x)`, by long division.
pub fn reduce_symbolic(poly: &[i64], tail: &[i64]) -> Vec<i64> {
    let n = tail.len();
    let terms: Vec<(usize, i64)> = tail.iter().copied().enumerate().filter(|&(_, f)| f != 0).collect();
    let mut work = poly.to_vec();
    for deg in (n..work.len()).rev() {
        let c = work[deg];
        if c == 0 {
            continue;
        }
        work[deg] = 0;
        for &(i, f) in &terms {
            work[deg - n + i] -= c * f;
        }
    }
    work.resize(n, 0);
    work
}

fn lift(a: &[u16]) -> Vec<i64> {
    a.iter().map(|&c| c as i64).collect()
}

fn to_width(c: &[i64], eps: u32) -> Poly {
    let m = 1i64 << eps;
    Poly::from_coeffs(c.iter().map(|&x| x.rem_euclid(m) as u16).collect())
}

/// `a * b` in the ring of `p`, modulo `2^eps`.
pub fn oracle_ring_mul_mod(p: &SchemeParams, a: &Poly, b: &Poly, eps: u32) -> Poly {
    assert_eq!(a.len(), p.n);
    assert_eq!(b.len(), p.n);
    let prod = convolve(&lift(&a.coeffs), &lift(&b.coeffs));
    to_width(&reduce_symbolic(&prod, &modulus_tail(p)), eps)
}

/// `a * b` in the ring of `p`, modulo `2^eps_q`.
pub fn oracle_ring_mul(p: &SchemeParams, a: &Poly, b: &Poly) -> Poly {
    oracle_ring_mul_mod(p, a, b, p.eps_q)
}

fn oracle_dot(p: &SchemeParams, row: &[&Poly], s: &[Poly], eps: u32) -> Poly {
    let mut acc = vec![0i64; p.n];
    for (a, sj) in row.iter().zip(s) {
        let prod = convolve(&lift(&a.coeffs), &lift(&sj.coeffs));
        for (x, y) in acc.iter_mut().zip(reduce_symbolic(&prod, &modulus_tail(p))) {
            *x += y;
        }
    }
    to_width(&acc, eps)
}

/// Naive `A s` (or `A^T s`) modulo `2^eps_q`.
pub fn oracle_matvec(p: &SchemeParams, a: &PolyMat, s: &[Poly], transpose: bool) -> Vec<Poly> {
    let l = a.rank();
    (0..l)
        .map(|i| {
            let row: Vec<&Poly> = (0..l).map(|j| if transpose { &a.rows[j][i] } else { &a.rows[i][j] }).collect();
            oracle_dot(p, &row, s, p.eps_q)
        })
        .collect()
}

/// Naive `b^T s` modulo `2^eps_p`.
pub fn oracle_inner(p: &SchemeParams, b: &[Poly], s: &[Poly]) -> Poly {
    let row: Vec<&Poly> = b.iter().collect();
    oracle_dot(p, &row, s, p.eps_p)
}

pub fn random_poly(rng: &mut impl Rng, n: usize, eps: u32) -> Poly {
    Poly::from_coeffs((0..n).map(|_| rng.random::<u16>() & ((1u32 << eps) - 1) as u16).collect())
}

/// A polynomial with coefficients in `[-eta, eta]` as two's-complement lanes.
pub fn random_small_poly(rng: &mut impl Rng, n: usize, eta: u32) -> Poly {
    let e = eta as i16;
    Poly::from_coeffs((0..n).map(|_| rng.random_range(-e..=e) as u16).collect())
}

fn rand32(rng: &mut impl RngCore) -> [u8; 32] {
    let mut out = [0u8; 32];
    rng.fill_bytes(&mut out);
    out
}

/// Decryption-noise statistics `d = v'' - v'` (centered modulo `p`).
#[derive(Clone, Debug)]
pub struct NoiseReport {
    pub trials: usize,
    pub max_abs: i32,
    /// Trial and coefficient index where `max_abs` was first seen.
    pub worst: (usize, usize),
    pub bound: f64,
    pub histogram: BTreeMap<i32, u64>,
    /// Trials in which the message was not recovered.
    pub decryption_failures: usize,
}

impl NoiseReport {
    pub fn margin(&self) -> f64 {
        self.bound - self.max_abs as f64
    }

    pub fn within_bound(&self) -> bool {
        (self.max_abs as f64) <= self.bound
    }

    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "d,count")?;
        for (d, c) in &self.histogram {
            writeln!(w, "{d},{c}")?;
        }
        Ok(())
    }
}

fn centered(x: u16, eps: u32) -> i32 {
    let m = 1i32 << eps;
    let v = x as i32 & (m - 1);
    if v >= m / 2 {
        v - m
    } else {
        v
    }
}

/// Runs `trials` independent key generations and encryptions, recording the
/// noise of every coefficient.
pub fn noise_probe(p: &SchemeParams, trials: usize, rng: &mut impl RngCore) -> NoiseReport {
    assert!(trials >= 1);
    let mut report = NoiseReport {
        trials,
        max_abs: -1,
        worst: (0, 0),
        bound: p.noise_bound(),
        histogram: BTreeMap::new(),
        decryption_failures: 0,
    };
    for t in 0..trials {
        let (pk, sk) = pke::keygen(p, &rand32(rng), &rand32(rng));
        let m = Message(rand32(rng));
        let (ct, v1) = pke::enc_traced(p, &pk, &m, &rand32(rng));
        let (m2, v2) = pke::dec_traced(p, &sk, &ct);
        if m2 != m {
            report.decryption_failures += 1;
        }
        for (i, (&a, &b)) in v2.coeffs.iter().zip(&v1.coeffs).enumerate() {
            let d = centered(a.wrapping_sub(b), p.eps_p);
            *report.histogram.entry(d).or_default() += 1;
            if d.abs() > report.max_abs {
                report.max_abs = d.abs();
                report.worst = (t, i);
            }
        }
    }
    report
}

/// Centered binomial pmf for parameter `eta` on `-eta..=eta`.
pub fn cbd_pmf(eta: u32) -> Vec<f64> {
    let k = 2 * eta;
    let total = (1u64 << k) as f64;
    (0..=k).map(|j| binomial(k, j) as f64 / total).collect()
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Chi-squared goodness-of-fit p-value of at least `samples` secret
/// coefficients against the centered binomial pmf.
pub fn cbd_chi2(p: &SchemeParams, samples: usize, rng: &mut impl RngCore) -> f64 {
    let eta = p.eta as i32;
    let mut counts = vec![0u64; (2 * eta + 1) as usize];
    let mut total = 0usize;
    while total < samples {
        let s = scabbard::sampler::gen_secret(p, &rand32(rng));
        for &c in s.polys.iter().flatten() {
            counts[(c as i32 + eta) as usize] += 1;
            total += 1;
        }
    }
    chi2_p_value(&counts, &cbd_pmf(p.eta))
}

/// Upper-tail p-value of Pearson's statistic with `cells - 1` degrees of freedom.
pub fn chi2_p_value(counts: &[u64], pmf: &[f64]) -> f64 {
    assert_eq!(counts.len(), pmf.len());
    let n: u64 = counts.iter().sum();
    let stat: f64 = counts
        .iter()
        .zip(pmf)
        .map(|(&o, &e)| {
            let e = e * n as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).expect("positive degrees of freedom");
    1.0 - dist.cdf(stat)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TamperReport {
    pub tried: usize,
    /// Decapsulations that did not return the honest secret.
    pub rejected: usize,
    /// Decapsulations that returned exactly `KDF(z || H(c'))`.
    pub implicit: usize,
}

/// Flips ciphertext bit `pos` for each entry of `positions` and decapsulates.
pub fn tamper_sweep(kem: &Kem, kp: &KeyPair, ct: &Ciphertext, honest: &SharedSecret, positions: &[usize]) -> TamperReport {
    let z: [u8; 32] = decode_sk(kem.params(), kp.secret.as_bytes()).expect("valid secret key").z;
    let mut report = TamperReport::default();
    for &pos in positions {
        let mut bytes = ct.as_bytes().to_vec();
        bytes[pos / 8] ^= 1 << (pos % 8);
        let bad = Ciphertext::from_bytes(kem.id(), &bytes).expect("same length");
        let ss = kem.decaps(&kp.secret, &bad).expect("well-formed inputs");
        report.tried += 1;
        if ss != *honest {
            report.rejected += 1;
        }
        if ss.as_bytes() == &kdf(&z, &hash_h(&bytes)) {
            report.implicit += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use scabbard::params::{Level, Scheme, SchemeId};

    #[test]
    fn toy_negacyclic_wrap() {
        // x^3 * x = x^4 = -1 in Z[x]/(x^4 + 1)
        let r = reduce_symbolic(&convolve(&[0, 0, 0, 1], &[0, 1, 0, 0]), &[1, 0, 0, 0]);
        assert_eq!(r, vec![-1, 0, 0, 0]);
        assert_eq!(to_width(&r, 11).coeffs, vec![2047, 0, 0, 0]);
    }

    #[test]
    fn trinomial_tail() {
        let p = SchemeId::new(Scheme::Florete, Level::Medium).params();
        let f = modulus_tail(p);
        assert_eq!((f[0], f[384], f.iter().filter(|&&c| c != 0).count()), (1, -1, 2));
        // x^768 = x^384 - 1
        let mut x768 = vec![0i64; 769];
        x768[768] = 1;
        let r = reduce_symbolic(&x768, &f);
        assert_eq!((r[0], r[384]), (-1, 1));
    }

    #[test]
    fn oracle_distributes() {
        let mut rng = rand::rng();
        let p = SchemeId::new(Scheme::Espada, Level::Low).params();
        let a = random_poly(&mut rng, 64, 15);
        let b = random_poly(&mut rng, 64, 15);
        let c = random_poly(&mut rng, 64, 15);
        let bc = Poly::from_coeffs(b.coeffs.iter().zip(&c.coeffs).map(|(x, y)| (x + y) & 0x7fff).collect());
        let lhs = oracle_ring_mul(p, &a, &bc);
        let r1 = oracle_ring_mul(p, &a, &b);
        let r2 = oracle_ring_mul(p, &a, &c);
        let rhs: Vec<u16> = r1.coeffs.iter().zip(&r2.coeffs).map(|(x, y)| (x + y) & 0x7fff).collect();
        assert_eq!(lhs.coeffs, rhs);
    }

    #[test]
    fn pmfs() {
        assert_eq!(cbd_pmf(1), vec![0.25, 0.5, 0.25]);
        let b3: Vec<f64> = [1., 6., 15., 20., 15., 6., 1.].iter().map(|x| x / 64.).collect();
        assert_eq!(cbd_pmf(3), b3);
    }

    #[test]
    fn chi2_detects_bias() {
        assert!(chi2_p_value(&[25_000, 50_000, 25_000], &cbd_pmf(1)) > 0.5);
        assert!(chi2_p_value(&[26_000, 49_000, 25_000], &cbd_pmf(1)) < 0.001);
    }
}
