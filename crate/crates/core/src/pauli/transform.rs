//! Walsh-Hadamard kernels over GF(2)^m.
//!
//! For a length-`D` vector (`D` a power of two) the character transform is
//! `v̂[χ] = Σ_i (-1)^{popcount(χ & i)} v[i]`. Pointwise products in the
//! transform domain are XOR convolutions in the index domain, which is all
//! Pauli-channel composition needs once phases are dropped.

use crate::{Error, Result};

/// Lengths at or below this use the direct double loop in [`xor_convolve`].
pub const BRUTEFORCE_MAX_LEN: usize = 256;

pub(crate) fn is_power_of_four(n: usize) -> bool {
    n.is_power_of_two() && n.trailing_zeros() % 2 == 0
}

/// Unnormalized in-place transform. Applying it twice multiplies by `len`.
pub fn fwht_in_place(data: &mut [f64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half <<= 1;
    }
}

/// Forward (unnormalized) or inverse (scaled by `1/len`) character transform.
pub fn fast_xor_transform(v: &[f64], inverse: bool) -> Result<Vec<f64>> {
    if v.is_empty() || !v.len().is_power_of_two() {
        return Err(Error::dim(format!(
            "transform length {} is not a power of two",
            v.len()
        )));
    }
    let mut out = v.to_vec();
    fwht_in_place(&mut out);
    if inverse {
        let scale = 1.0 / v.len() as f64;
        out.iter_mut().for_each(|x| *x *= scale);
    }
    Ok(out)
}

fn check_pair(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::dim(format!(
            "vector lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if !is_power_of_four(a.len()) {
        return Err(Error::dim(format!(
            "length {} is not a power of four",
            a.len()
        )));
    }
    Ok(())
}

/// `c[k] = Σ_i a[i]·b[i⊕k]` by the direct double loop.
pub fn xor_convolve_bruteforce(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    check_pair(a, b)?;
    let n = a.len();
    let mut out = vec![0.0; n];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = (0..n).map(|i| a[i] * b[i ^ k]).sum();
    }
    Ok(out)
}

/// Same contract as [`xor_convolve_bruteforce`], through the transform.
pub fn xor_convolve_fast(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    check_pair(a, b)?;
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    fwht_in_place(&mut fa);
    fwht_in_place(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fwht_in_place(&mut fa);
    let scale = 1.0 / a.len() as f64;
    fa.iter_mut().for_each(|x| *x *= scale);
    Ok(fa)
}

/// XOR convolution, brute force up to [`BRUTEFORCE_MAX_LEN`] and fast above.
pub fn xor_convolve(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() > BRUTEFORCE_MAX_LEN {
        xor_convolve_fast(a, b)
    } else {
        xor_convolve_bruteforce(a, b)
    }
}

/// `s[u] = Σ_a p[a]·p[a⊕u]`.
///
/// Over GF(2)^m correlation and convolution coincide, so this is the
/// self-convolution of `p`.
pub fn xor_autocorrelation(p: &[f64]) -> Result<Vec<f64>> {
    xor_convolve(p, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.random::<f64>()).collect()
    }

    #[test]
    fn delta_maps_to_constant() {
        let out = fast_xor_transform(&[1.0, 0.0, 0.0, 0.0], false).unwrap();
        assert_eq!(out, vec![1.0; 4]);
    }

    #[test]
    fn inverse_undoes_forward() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for len in [1usize, 2, 8, 64, 1024] {
            let v = random_vec(&mut rng, len);
            let back = fast_xor_transform(&fast_xor_transform(&v, false).unwrap(), true).unwrap();
            for (x, y) in v.iter().zip(&back) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(fast_xor_transform(&[1.0, 2.0, 3.0], false).is_err());
        assert!(fast_xor_transform(&[], false).is_err());
    }

    #[test]
    fn transform_product_is_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for len in [4usize, 16, 64, 256] {
            let a = random_vec(&mut rng, len);
            let b = random_vec(&mut rng, len);
            let slow = xor_convolve_bruteforce(&a, &b).unwrap();
            let fast = xor_convolve_fast(&a, &b).unwrap();
            for (x, y) in slow.iter().zip(&fast) {
                assert!((x - y).abs() < 1e-12, "len {len}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn bruteforce_hand_values() {
        let b = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(xor_convolve_bruteforce(&[1.0, 0.0, 0.0, 0.0], &b).unwrap(), b);
        // c[0] = 0.25 + 0.25, c[1] = 0.25 + 0.25, c[2] = c[3] = 0
        let h = [0.5, 0.5, 0.0, 0.0];
        assert_eq!(xor_convolve_bruteforce(&h, &h).unwrap(), vec![0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn convolution_length_checks() {
        assert!(xor_convolve_bruteforce(&[1.0; 4], &[1.0; 16]).is_err());
        assert!(xor_convolve_bruteforce(&[1.0; 8], &[1.0; 8]).is_err());
    }

    #[test]
    fn autocorrelation_cases() {
        let delta = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(xor_autocorrelation(&delta).unwrap(), delta.to_vec());

        let uniform = vec![1.0 / 16.0; 16];
        for x in xor_autocorrelation(&uniform).unwrap() {
            assert!((x - 1.0 / 16.0).abs() < 1e-15);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut p = random_vec(&mut rng, 16);
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        let s = xor_autocorrelation(&p).unwrap();
        for u in 0..16 {
            let direct: f64 = (0..16).map(|a| p[a] * p[a ^ u]).sum();
            assert!((s[u] - direct).abs() < 1e-12);
        }
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let sq: f64 = p.iter().map(|x| x * x).sum();
        assert!((s[0] - sq).abs() < 1e-15);
    }
}
