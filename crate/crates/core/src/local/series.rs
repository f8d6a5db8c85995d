//! Truncated power series in a uniformizer `u`, stored as `prec` raw digits.

use crate::field::PrimeField;

pub(crate) type Series = Vec<u64>;

pub(crate) fn valuation(s: &[u64]) -> Option<usize> {
    s.iter().position(|&c| c != 0)
}

pub(crate) fn add(f: PrimeField, a: &[u64], b: &[u64]) -> Series {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub(crate) fn sub(f: PrimeField, a: &[u64], b: &[u64]) -> Series {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub(crate) fn mul(f: PrimeField, a: &[u64], b: &[u64]) -> Series {
    let n = a.len().min(b.len());
    let p = f.modulus();
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

pub(crate) fn scale(f: PrimeField, a: &[u64], c: u64) -> Series {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// Inverse of a series with unit constant term.
pub(crate) fn inv_unit(f: PrimeField, a: &[u64]) -> Series {
    let n = a.len();
    let mut out = vec![0u64; n];
    if n == 0 {
        return out;
    }
    let a0_inv = f.inv(a[0]);
    out[0] = a0_inv;
    for k in 1..n {
        let mut acc = 0;
        for j in 1..=k {
            acc = f.add(acc, f.mul(a[j], out[k - j]));
        }
        out[k] = f.mul(f.neg(acc), a0_inv);
    }
    out
}

pub(crate) fn constant(c: u64, prec: usize) -> Series {
    let mut s = vec![0; prec];
    if prec > 0 {
        s[0] = c;
    }
    s
}
