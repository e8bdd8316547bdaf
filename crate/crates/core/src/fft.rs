//! Discrete Fourier transforms of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 kernel; every other length
//! goes through Bluestein's chirp-z reformulation as a power-of-two circular
//! convolution. [`dft_direct`] is the O(n²) reference.

use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    /// `exp(-2πi k / len)` for `k < len / 2`.
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        debug_assert!(len.is_power_of_two());
        let twiddles = (0..len / 2)
            .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / len as f64))
            .collect();
        Self { len, twiddles }
    }

    /// Unnormalized transform; `inverse` flips the exponent sign.
    fn process(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.len;
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                data.swap(i, j);
            }
        }
        let mut size = 2;
        while size <= n {
            let half = size / 2;
            let stride = n / size;
            for start in (0..n).step_by(size) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let t = data[start + k + half] * w;
                    let u = data[start + k];
                    data[start + k] = u + t;
                    data[start + k + half] = u - t;
                }
            }
            size *= 2;
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    inner: Radix2,
    /// `exp(-πi n² / len)`.
    chirp: Vec<Complex64>,
    /// Spectrum of the conjugate chirp, wrapped to the convolution length.
    kernel: Vec<Complex64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let conv = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(conv);
        let chirp: Vec<Complex64> = (0..len)
            .map(|n| {
                // n² mod 2·len keeps the angle small
                let q = (n as u128 * n as u128 % (2 * len as u128)) as f64;
                Complex64::from_polar(1.0, -PI * q / len as f64)
            })
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); conv];
        kernel[0] = chirp[0].conj();
        for n in 1..len {
            kernel[n] = chirp[n].conj();
            kernel[conv - n] = chirp[n].conj();
        }
        inner.process(&mut kernel, false);
        Self {
            len,
            inner,
            chirp,
            kernel,
        }
    }

    fn forward(&self, data: &mut [Complex64]) {
        let conv = self.inner.len;
        let mut buf = vec![Complex64::new(0.0, 0.0); conv];
        for (b, (x, w)) in buf.iter_mut().zip(data.iter().zip(&self.chirp)) {
            *b = x * w;
        }
        self.inner.process(&mut buf, false);
        for (b, k) in buf.iter_mut().zip(&self.kernel) {
            *b *= k;
        }
        self.inner.process(&mut buf, true);
        let scale = 1.0 / conv as f64;
        for (k, out) in data.iter_mut().enumerate().take(self.len) {
            *out = buf[k] * self.chirp[k] * scale;
        }
    }
}

#[derive(Debug, Clone)]
enum Kernel {
    Radix2(Radix2),
    Bluestein(Bluestein),
}

/// Precomputed transform of one fixed length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kernel: Kernel,
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "transform length must be positive");
        let kernel = if len.is_power_of_two() {
            Kernel::Radix2(Radix2::new(len))
        } else {
            Kernel::Bluestein(Bluestein::new(len))
        };
        Self { len, kernel }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In place `X[k] = Σ x[n] exp(-2πi kn/N)`.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len);
        match &self.kernel {
            Kernel::Radix2(r) => r.process(data, false),
            Kernel::Bluestein(b) => b.forward(data),
        }
    }

    /// In place inverse, normalized by `1/N`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len);
        match &self.kernel {
            Kernel::Radix2(r) => r.process(data, true),
            Kernel::Bluestein(b) => {
                data.iter_mut().for_each(|x| *x = x.conj());
                b.forward(data);
                data.iter_mut().for_each(|x| *x = x.conj());
            }
        }
        let scale = 1.0 / self.len as f64;
        data.iter_mut().for_each(|x| *x *= scale);
    }
}

/// Direct O(n²) DFT; the inverse is normalized by `1/N`.
pub fn dft_direct(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = input.len();
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut out: Vec<Complex64> = (0..n)
        .map(|k| {
            input
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let q = (j * k % n) as f64;
                    x * Complex64::from_polar(1.0, sign * 2.0 * PI * q / n as f64)
                })
                .sum()
        })
        .collect();
    if inverse {
        out.iter_mut().for_each(|x| *x /= n as f64);
    }
    out
}

/// FFT multiplication count used for cost accounting: `2·n·⌈log₂ n⌉`.
pub fn fft_mult_cost(n: usize) -> u64 {
    let log = if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    };
    2 * n as u64 * log as u64
}
