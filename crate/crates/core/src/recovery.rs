//! Matching-pursuit recovery over normalized sensing-matrix columns.
//!
//! Correlations `⟨r, a_j⟩` come from either a dense pass (`n·m` products) or
//! the orbit path: the columns of one orbit are the cyclic shifts of a
//! representative `a`, so their correlations with `r` form the circular
//! cross-correlation `IDFT(R · conj(A))`. When `a` has period `μ`, `A` is
//! supported on multiples of `m/μ`, and the `μ` distinct outputs come from a
//! `μ`-point inverse transform of the down-sampled product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{RngExt, SeedableRng};
use rand_distr::StandardNormal;
use rand_pcg::Pcg64;

use crate::error::{Error, Result};
use crate::fft::{fft_mult_cost, FftPlan};
use crate::matrices::SensingMatrix;

/// Spectral magnitudes at or below this count as zero.
pub const SPECTRUM_ZERO: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Naive,
    Dft,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Naive => "naive",
            Backend::Dft => "dft",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Backend::Naive),
            "dft" => Ok(Backend::Dft),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "backend must be naive or dft".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MpMode {
    /// Plain matching pursuit: subtract the selected projection.
    PureMp,
    /// Re-solve least squares on the selected support every iteration.
    #[default]
    LsRefine,
}

impl fmt::Display for MpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MpMode::PureMp => "pure_mp",
            MpMode::LsRefine => "ls_refine",
        })
    }
}

impl FromStr for MpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure_mp" => Ok(MpMode::PureMp),
            "ls_refine" => Ok(MpMode::LsRefine),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "mode must be pure_mp or ls_refine".into(),
            }),
        }
    }
}

fn check_len(matrix: &SensingMatrix, r: &[f64]) -> Result<()> {
    if r.len() != matrix.rows() {
        return Err(Error::DimensionMismatch {
            expected: matrix.rows(),
            found: r.len(),
        });
    }
    Ok(())
}

/// Dense correlation against every normalized column; adds `n·m` to `mult`.
pub fn correlate_naive(matrix: &SensingMatrix, r: &[f64], mult: &mut u64) -> Result<Vec<f64>> {
    check_len(matrix, r)?;
    let out = (0..matrix.cols())
        .map(|j| {
            let s: f64 = r
                .iter()
                .enumerate()
                .map(|(i, v)| v * matrix.entry(i, j) as f64)
                .sum();
            s * matrix.scale(j)
        })
        .collect();
    *mult += (matrix.rows() * matrix.cols()) as u64;
    Ok(out)
}

/// Precomputed spectrum of one orbit representative.
#[derive(Debug, Clone)]
pub struct OrbitSpectrum {
    /// `members[t]` is the representative shifted by `t`.
    pub members: Vec<usize>,
    /// `conj(A[q·m/μ]) · scale / m` for `q < μ`.
    weights: Vec<Complex64>,
    /// Frequencies where `|A| > SPECTRUM_ZERO`.
    pub nonzero_positions: Vec<usize>,
}

impl OrbitSpectrum {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
enum OrbitPath {
    Spectral(OrbitSpectrum),
    /// Spectrum failed verification; correlate these columns densely.
    Dense(Vec<usize>),
}

/// Correlation backend bound to one matrix. Immutable after construction.
#[derive(Debug, Clone)]
pub struct CorrelationEngine<'a> {
    matrix: &'a SensingMatrix,
    backend: Backend,
    /// Normalized columns, column-major.
    dense: Vec<f64>,
    paths: Vec<OrbitPath>,
    plans: BTreeMap<usize, FftPlan>,
}

fn real_spectrum(plan: &FftPlan, x: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    plan.forward(&mut buf);
    buf
}

/// Engine for the dft backend. Orbits whose spectrum does not verify fall
/// back to dense correlation individually.
pub fn orbit_spectra(matrix: &SensingMatrix) -> Result<CorrelationEngine<'_>> {
    CorrelationEngine::new(matrix, Backend::Dft)
}

impl<'a> CorrelationEngine<'a> {
    pub fn new(matrix: &'a SensingMatrix, backend: Backend) -> Result<Self> {
        let (m, n) = (matrix.rows(), matrix.cols());
        let mut dense = Vec::with_capacity(m * n);
        for j in 0..n {
            dense.extend(matrix.column(j));
        }
        let mut engine = Self {
            matrix,
            backend,
            dense,
            paths: Vec::new(),
            plans: BTreeMap::new(),
        };
        if backend == Backend::Dft {
            let orbits = matrix.orbits().ok_or(Error::BackendUnavailable)?;
            let full = FftPlan::new(m);
            for o in orbits {
                let mu = o.size();
                let rep = o.representative();
                let spec = real_spectrum(&full, engine.column(rep));
                let path = match Self::verify(&spec, m, mu) {
                    Some(nonzero_positions) => {
                        let stride = m / mu;
                        let weights = (0..mu)
                            .map(|q| spec[q * stride].conj() / m as f64)
                            .collect();
                        engine.plans.entry(mu).or_insert_with(|| FftPlan::new(mu));
                        OrbitPath::Spectral(OrbitSpectrum {
                            members: o.members.clone(),
                            weights,
                            nonzero_positions,
                        })
                    }
                    None => OrbitPath::Dense(o.members.clone()),
                };
                engine.paths.push(path);
            }
            engine.plans.entry(m).or_insert(full);
        }
        Ok(engine)
    }

    /// Nonzero positions of a representative spectrum, or `None` when they
    /// are not confined to multiples of `m/μ`.
    fn verify(spec: &[Complex64], m: usize, mu: usize) -> Option<Vec<usize>> {
        if mu == 0 || !m.is_multiple_of(mu) {
            return None;
        }
        let stride = m / mu;
        let nonzero: Vec<usize> = (0..m).filter(|&k| spec[k].norm() > SPECTRUM_ZERO).collect();
        nonzero.iter().all(|k| k % stride == 0).then_some(nonzero)
    }

    pub fn matrix(&self) -> &SensingMatrix {
        self.matrix
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Normalized column `j`.
    pub fn column(&self, j: usize) -> &[f64] {
        let m = self.matrix.rows();
        &self.dense[j * m..(j + 1) * m]
    }

    /// Orbits on the spectral path.
    pub fn spectra(&self) -> impl Iterator<Item = &OrbitSpectrum> {
        self.paths.iter().filter_map(|p| match p {
            OrbitPath::Spectral(s) => Some(s),
            OrbitPath::Dense(_) => None,
        })
    }

    /// Number of orbits that fell back to dense correlation.
    pub fn fallback_orbits(&self) -> usize {
        self.paths
            .iter()
            .filter(|p| matches!(p, OrbitPath::Dense(_)))
            .count()
    }

    fn dense_into(
        &self,
        r: &[f64],
        cols: impl Iterator<Item = usize>,
        out: &mut [f64],
        mult: &mut u64,
    ) {
        for j in cols {
            out[j] = self.column(j).iter().zip(r).map(|(a, b)| a * b).sum();
            *mult += r.len() as u64;
        }
    }

    /// `⟨r, a_j⟩` for every column through the engine's backend.
    pub fn correlate(&self, r: &[f64], mult: &mut u64) -> Result<Vec<f64>> {
        check_len(self.matrix, r)?;
        let n = self.matrix.cols();
        let mut out = vec![0.0; n];
        match self.backend {
            Backend::Naive => self.dense_into(r, 0..n, &mut out, mult),
            Backend::Dft => self.correlate_orbits(r, &mut out, mult),
        }
        Ok(out)
    }

    fn correlate_orbits(&self, r: &[f64], out: &mut [f64], mult: &mut u64) {
        let m = r.len();
        let spectrum = real_spectrum(&self.plans[&m], r);
        *mult += fft_mult_cost(m);
        for path in &self.paths {
            match path {
                OrbitPath::Dense(cols) => self.dense_into(r, cols.iter().copied(), out, mult),
                OrbitPath::Spectral(s) => {
                    let mu = s.size();
                    let stride = m / mu;
                    let mut z: Vec<Complex64> = s
                        .weights
                        .iter()
                        .enumerate()
                        .map(|(q, w)| spectrum[q * stride] * w)
                        .collect();
                    self.plans[&mu].inverse(&mut z);
                    for (t, &col) in s.members.iter().enumerate() {
                        // inverse() divides by μ; the weights already carry 1/m
                        out[col] = z[t].re * mu as f64;
                    }
                    *mult += fft_mult_cost(mu) + mu as u64;
                }
            }
        }
    }
}

/// Orbit-path correlation; fails when the matrix has no orbit table.
pub fn correlate_dft(
    engine: &CorrelationEngine<'_>,
    r: &[f64],
    mult: &mut u64,
) -> Result<Vec<f64>> {
    if engine.backend() != Backend::Dft {
        return Err(Error::BackendUnavailable);
    }
    engine.correlate(r, mult)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpParams {
    pub k_max: usize,
    pub tol: f64,
    pub mode: MpMode,
    pub backend: Backend,
}

impl MpParams {
    /// Defaults for a `k`-sparse target: `4k` iterations, tolerance `1e-10`.
    pub fn for_sparsity(k: usize) -> Self {
        Self {
            k_max: 4 * k.max(1),
            tol: 1e-10,
            mode: MpMode::LsRefine,
            backend: Backend::Naive,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    /// Distinct selected columns, ascending.
    pub support: Vec<usize>,
    pub coefficients: Vec<f64>,
    /// Residual ℓ2 norm before the first iteration and after each one.
    pub residual_history: Vec<f64>,
    pub iterations: usize,
    /// Selected column per iteration, in order.
    pub selected: Vec<usize>,
    /// Multiplications spent in correlation passes.
    pub mult_count: u64,
}

impl RecoveryResult {
    pub fn final_residual(&self) -> f64 {
        *self
            .residual_history
            .last()
            .expect("history starts non-empty")
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Index of the largest `|value|`; ties resolve to the lowest index.
fn argmax_abs(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, v) in values.iter().enumerate() {
        let a = v.abs();
        if best.is_none_or(|(_, b)| a > b) {
            best = Some((j, a));
        }
    }
    best.map(|(j, _)| j)
}

fn least_squares(engine: &CorrelationEngine<'_>, support: &[usize], y: &[f64]) -> Vec<f64> {
    let m = y.len();
    let a = DMatrix::from_fn(m, support.len(), |i, c| engine.column(support[c])[i]);
    let b = DVector::from_column_slice(y);
    let gram = a.transpose() * &a;
    let rhs = a.transpose() * &b;
    if let Some(ch) = gram.clone().cholesky() {
        return ch.solve(&rhs).iter().copied().collect();
    }
    a.svd(true, true)
        .solve(&b, 1e-12)
        .map(|x| x.iter().copied().collect())
        .unwrap_or_else(|_| vec![0.0; support.len()])
}

pub fn mp_recover(matrix: &SensingMatrix, y: &[f64], params: &MpParams) -> Result<RecoveryResult> {
    let engine = CorrelationEngine::new(matrix, params.backend)?;
    mp_recover_with(&engine, y, params)
}

/// Matching pursuit with a prebuilt engine, so spectra are reused across runs.
pub fn mp_recover_with(
    engine: &CorrelationEngine<'_>,
    y: &[f64],
    params: &MpParams,
) -> Result<RecoveryResult> {
    let matrix = engine.matrix();
    check_len(matrix, y)?;
    if params.k_max == 0 || params.tol.is_nan() || params.tol < 0.0 {
        return Err(Error::Inconsistent("k_max must be ≥ 1 and tol ≥ 0".into()));
    }
    let mut residual = y.to_vec();
    let mut coefficients = vec![0.0; matrix.cols()];
    let mut support: Vec<usize> = Vec::new();
    let mut selected = Vec::new();
    let mut history = vec![norm(&residual)];
    let mut mult = 0;

    while history.len() - 1 < params.k_max && history[history.len() - 1] > params.tol {
        let corr = engine.correlate(&residual, &mut mult)?;
        let Some(j) = argmax_abs(&corr) else { break };
        if corr[j] == 0.0 {
            break;
        }
        match params.mode {
            MpMode::PureMp => {
                coefficients[j] += corr[j];
                for (r, a) in residual.iter_mut().zip(engine.column(j)) {
                    *r -= corr[j] * a;
                }
                if !support.contains(&j) {
                    support.push(j);
                }
            }
            MpMode::LsRefine => {
                if support.contains(&j) {
                    // residual already orthogonal to this column; no progress left
                    break;
                }
                support.push(j);
                let x = least_squares(engine, &support, y);
                residual.copy_from_slice(y);
                for (&c, &v) in support.iter().zip(&x) {
                    coefficients[c] = v;
                    for (r, a) in residual.iter_mut().zip(engine.column(c)) {
                        *r -= v * a;
                    }
                }
            }
        }
        selected.push(j);
        history.push(norm(&residual));
    }

    support.sort_unstable();
    Ok(RecoveryResult {
        support,
        coefficients,
        iterations: selected.len(),
        residual_history: history,
        selected,
        mult_count: mult,
    })
}

/// Seeded `k`-sparse signal of length `n`: support drawn uniformly without
/// replacement, standard normal amplitudes. Returns the ascending support and
/// the dense vector.
pub fn random_sparse_signal(n: usize, k: usize, seed: u64) -> Result<(Vec<usize>, Vec<f64>)> {
    if k > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k,
        });
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut support = sample(&mut rng, n, k).into_vec();
    support.sort_unstable();
    let mut s = vec![0.0; n];
    for &j in &support {
        loop {
            let v: f64 = rng.sample(StandardNormal);
            if v != 0.0 {
                s[j] = v;
                break;
            }
        }
    }
    Ok((support, s))
}
