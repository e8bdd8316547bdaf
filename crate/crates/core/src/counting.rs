//! Binary sequences whose ones are separated by a minimum number of zeros.
//!
//! `kappa(a, b)` counts length-`b` sequences with at least `a` zeros between
//! consecutive ones; `tau(a, b)` is the same count with the sequence wrapped
//! around a circle. A sequence with at most one `1` always qualifies.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest length accepted by [`enumerate_spaced_sequences`].
pub const MAX_ENUMERATION_LENGTH: usize = 24;

/// Memoized counts for one gap `a`.
#[derive(Debug, Clone)]
pub struct CountingTable {
    a: u32,
    kappa: Vec<BigUint>,
    tau: Vec<BigUint>,
}

impl CountingTable {
    /// Fills `kappa[0..=max_b]` and `tau[0..=max_b]`.
    pub fn new(a: u32, max_b: usize) -> Self {
        let kappa = kappa_sequence(a, max_b);
        let tau = (0..=max_b).map(|b| tau(a, b)).collect();
        Self { a, kappa, tau }
    }

    pub fn gap(&self) -> u32 {
        self.a
    }

    pub fn max_len(&self) -> usize {
        self.kappa.len() - 1
    }

    pub fn kappa(&self, b: usize) -> &BigUint {
        &self.kappa[b]
    }

    pub fn tau(&self, b: usize) -> &BigUint {
        &self.tau[b]
    }

    /// `kappa[b+1] / kappa[b]` as a float.
    pub fn growth_ratio(&self, b: usize) -> f64 {
        let num = self.kappa[b + 1].to_f64().unwrap_or(f64::INFINITY);
        let den = self.kappa[b].to_f64().unwrap_or(f64::INFINITY);
        num / den
    }
}

/// `kappa(a, 0..=max_b)`: one for the empty sequence, `b + 1` while at most
/// one `1` fits, then `kappa[b] = kappa[b-1] + kappa[b-a-1]` (the last bit is
/// either `0`, or `1` preceded by `a` zeros).
pub fn kappa_sequence(a: u32, max_b: usize) -> Vec<BigUint> {
    let a = a as usize;
    let mut kappa: Vec<BigUint> = Vec::with_capacity(max_b + 1);
    for b in 0..=max_b {
        let v = if b == 0 {
            BigUint::one()
        } else if b <= a + 1 {
            BigUint::from(b + 1)
        } else {
            &kappa[b - 1] + &kappa[b - a - 1]
        };
        kappa.push(v);
    }
    kappa
}

/// Non-circular count via the two-term recursion.
pub fn kappa(a: u32, b: usize) -> BigUint {
    kappa_sequence(a, b).pop().expect("nonempty")
}

/// Circular count: direct enumeration up to length 24, the closed form for
/// cyclic strings with a minimum gap beyond that.
pub fn tau(a: u32, b: usize) -> BigUint {
    if b <= MAX_ENUMERATION_LENGTH {
        let full = if b == 0 { 0 } else { u32::MAX >> (32 - b) };
        let n = (0..=full).filter(|&m| is_spaced(m, a, b, true)).count();
        BigUint::from(n)
    } else {
        tau_closed_form(a, b)
    }
}

/// Sum over weights `w` of the number of ways to place `w` ones on a cycle
/// of `b` cells with at least `a` empty cells between neighbours:
/// `b / (b - a·w) · C(b - a·w, w)` for `w >= 2`.
pub fn tau_closed_form(a: u32, b: usize) -> BigUint {
    if b == 0 {
        return BigUint::one();
    }
    let a = a as usize;
    let mut total = BigUint::one() + BigUint::from(b);
    let mut w = 2;
    while (a + 1) * w <= b {
        let free = b - a * w;
        total += binomial(free, w) * BigUint::from(b) / BigUint::from(free);
        w += 1;
    }
    total
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

/// Whether the ones of a `b`-bit mask are separated by at least `a` zeros.
pub fn is_spaced(mask: u32, a: u32, b: usize, circular: bool) -> bool {
    if mask.count_ones() <= 1 {
        return true;
    }
    let full = if b >= 32 { u32::MAX } else { (1u32 << b) - 1 };
    (1..=a as usize).all(|j| {
        let other = if circular {
            let j = j % b;
            if j == 0 {
                mask
            } else {
                ((mask >> j) | (mask << (b - j))) & full
            }
        } else if j >= 32 {
            0
        } else {
            mask >> j
        };
        mask & other == 0
    })
}

/// Every qualifying `b`-bit mask, ascending. Brute force over all `2^b` masks.
pub fn enumerate_spaced_sequences(a: u32, b: usize, circular: bool) -> Result<Vec<u32>> {
    if b > MAX_ENUMERATION_LENGTH {
        return Err(Error::LengthTooLarge(b));
    }
    let full = if b == 0 { 0 } else { u32::MAX >> (32 - b) };
    Ok((0..=full)
        .filter(|&m| is_spaced(m, a, b, circular))
        .collect())
}

fn characteristic(a: u32, z: f64) -> f64 {
    z.powi(a as i32 + 1) - z.powi(a as i32) - 1.0
}

/// Real root of `z^(a+1) - z^a - 1` in `(1, 2]`, by bisection to 1e-12.
pub fn growth_root(a: u32) -> f64 {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    if characteristic(a, hi) == 0.0 {
        return hi;
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if characteristic(a, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lower bound `((a+3)/2)^(1/(a+1))` on the growth root.
pub fn growth_root_lower_bound(a: u32) -> f64 {
    ((a as f64 + 3.0) / 2.0).powf(1.0 / (a as f64 + 1.0))
}

/// All complex roots of `z^(a+1) - z^a - 1` from its companion matrix.
pub fn characteristic_roots(a: u32) -> Vec<Complex<f64>> {
    let n = a as usize + 1;
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    // z^n = z^(n-1) + 1
    companion[(0, n - 1)] = 1.0;
    companion[(n - 1, n - 1)] += 1.0;
    companion.complex_eigenvalues().iter().copied().collect()
}

/// Whether the bisection root strictly dominates every other root in modulus.
pub fn growth_root_dominates(a: u32) -> bool {
    let gamma = growth_root(a);
    let roots = characteristic_roots(a);
    let mut matched = false;
    roots.iter().all(|r| {
        if !matched && (r - Complex::new(gamma, 0.0)).norm() < 1e-7 {
            matched = true;
            true
        } else {
            r.norm() < gamma - 1e-9
        }
    }) && matched
}

/// Decimal rendering helper for reports.
pub fn to_decimal(v: &BigUint) -> String {
    if v.is_zero() {
        "0".into()
    } else {
        v.to_str_radix(10)
    }
}
