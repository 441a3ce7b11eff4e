use super::stats;

/// Linear convolution of two equal-length operands, wrapping at `2^16`.
pub fn schoolbook(a: &[u16], b: &[u16]) -> Vec<u16> {
    assert_eq!(a.len(), b.len(), "schoolbook: length mismatch");
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u16; 2 * a.len() - 1];
    schoolbook_acc(a, b, &mut out);
    out
}

/// `out += a * b`.
pub(crate) fn schoolbook_acc(a: &[u16], b: &[u16], out: &mut [u16]) {
    if a.len() == 16 {
        stats::bump(|c| c.schoolbook16 += 1);
        let a: &[u16; 16] = a.try_into().unwrap();
        let b: &[u16; 16] = b.try_into().unwrap();
        let out: &mut [u16; 31] = out.try_into().unwrap();
        schoolbook16(a, b, out);
        return;
    }
    for (i, &x) in a.iter().enumerate() {
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o = o.wrapping_add(x.wrapping_mul(y));
        }
    }
}

#[inline]
fn schoolbook16(a: &[u16; 16], b: &[u16; 16], out: &mut [u16; 31]) {
    for i in 0..16 {
        let x = a[i];
        for j in 0..16 {
            out[i + j] = out[i + j].wrapping_add(x.wrapping_mul(b[j]));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_one_plus_x() {
        assert_eq!(schoolbook(&[1, 1], &[1, 1]), vec![1, 2, 1]);
    }

    #[test]
    fn unit_is_identity() {
        let a: Vec<u16> = (1..=16).collect();
        let mut one = vec![0u16; 16];
        one[0] = 1;
        let mut expect = a.clone();
        expect.resize(31, 0);
        assert_eq!(schoolbook(&a, &one), expect);
    }

    #[test]
    fn wraps_modulo_lane() {
        assert_eq!(schoolbook(&[0x8000], &[2]), vec![0]);
        assert_eq!(schoolbook(&[0xffff], &[0xffff]), vec![1]);
    }
}
