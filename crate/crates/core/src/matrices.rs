//! Sensing matrices with entries in {-1, 0, +1} and their coherence analysis.
//!
//! Entries are stored as two bit planes per column (`nz` marks nonzero
//! entries, `neg` marks negative ones), so a column is a contiguous trit
//! string and unnormalized inner products are exact popcount sums. Column
//! `j` is normalized by `1/sqrt(nnz_j)` on the fly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::index::sample;
use rand::{RngExt, SeedableRng};
use rand_pcg::{Lcg64Xsh32, Pcg64};

use crate::codes::{enumerate_even_codewords, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2m::FieldContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// Every entry is ±1.
    Pm1,
    /// Entries in {0, 1}.
    Bin,
    /// Entries in {-1, 0, 1} with a constant number of nonzeros per column.
    Tern,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Pm1 => "PM1",
            MatrixKind::Bin => "BIN",
            MatrixKind::Tern => "TERN",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PM1" => Ok(MatrixKind::Pm1),
            "BIN" => Ok(MatrixKind::Bin),
            "TERN" => Ok(MatrixKind::Tern),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "matrix kind must be PM1, BIN or TERN".into(),
            }),
        }
    }
}

/// Columns that are cyclic row shifts of one representative.
/// `members[t]` is the column equal to the representative shifted down by `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    /// Orbit size μ.
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SensingMatrix {
    kind: MatrixKind,
    rows: usize,
    cols: usize,
    words: usize,
    nz: Vec<u64>,
    neg: Vec<u64>,
    nnz: Vec<u32>,
    orbits: Option<Vec<Orbit>>,
    comments: Vec<String>,
}

impl fmt::Debug for SensingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SensingMatrix")
            .field("kind", &self.kind)
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("orbits", &self.orbits.as_ref().map(Vec::len))
            .finish()
    }
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

/// Cyclic shift of an `len`-bit string: bit `i` moves to `(i + t) mod len`.
fn rotate_bits(src: &[u64], len: usize, t: usize) -> Vec<u64> {
    let mut out = vec![0u64; src.len()];
    let t = t % len;
    for (wi, &w) in src.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let i = wi * 64 + w.trailing_zeros() as usize;
            set_bit(&mut out, (i + t) % len);
            w &= w - 1;
        }
    }
    out
}

impl SensingMatrix {
    /// Builds a matrix from unnormalized columns with entries in {-1, 0, 1}.
    pub fn from_columns<I>(kind: MatrixKind, rows: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: AsRef<[i8]>,
    {
        let words = rows.div_ceil(64).max(1);
        let mut m = Self {
            kind,
            rows,
            cols: 0,
            words,
            nz: Vec::new(),
            neg: Vec::new(),
            nnz: Vec::new(),
            orbits: None,
            comments: Vec::new(),
        };
        for col in columns {
            m.push_column(col.as_ref())?;
        }
        m.check_kind()?;
        Ok(m)
    }

    fn push_column(&mut self, col: &[i8]) -> Result<()> {
        if col.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: col.len(),
            });
        }
        let mut nz = vec![0u64; self.words];
        let mut neg = vec![0u64; self.words];
        let mut count = 0;
        for (r, &v) in col.iter().enumerate() {
            match v {
                0 => {}
                1 => {
                    set_bit(&mut nz, r);
                    count += 1;
                }
                -1 => {
                    set_bit(&mut nz, r);
                    set_bit(&mut neg, r);
                    count += 1;
                }
                other => {
                    return Err(Error::Inconsistent(format!(
                        "entry {other} outside {{-1,0,1}}"
                    )))
                }
            }
        }
        if count == 0 {
            return Err(Error::Inconsistent(format!(
                "column {} is all zero",
                self.cols
            )));
        }
        self.nz.extend(nz);
        self.neg.extend(neg);
        self.nnz.push(count);
        self.cols += 1;
        Ok(())
    }

    fn check_kind(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Inconsistent(format!("{} matrix: {msg}", self.kind)));
        match self.kind {
            MatrixKind::Pm1 => {
                if self.nnz.iter().any(|&c| c as usize != self.rows) {
                    return bad("zero entry");
                }
            }
            MatrixKind::Bin => {
                if self.neg.iter().any(|&w| w != 0) {
                    return bad("negative entry");
                }
            }
            MatrixKind::Tern => {
                if self.nnz.windows(2).any(|w| w[0] != w[1]) {
                    return bad("column weights differ");
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self, col: usize) -> u32 {
        self.nnz[col]
    }

    pub fn orbits(&self) -> Option<&[Orbit]> {
        self.orbits.as_deref()
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn push_comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    fn planes(&self, col: usize) -> (&[u64], &[u64]) {
        let s = col * self.words;
        (&self.nz[s..s + self.words], &self.neg[s..s + self.words])
    }

    /// Unnormalized entry.
    pub fn entry(&self, row: usize, col: usize) -> i8 {
        let (nz, neg) = self.planes(col);
        match (get_bit(nz, row), get_bit(neg, row)) {
            (false, _) => 0,
            (true, false) => 1,
            (true, true) => -1,
        }
    }

    pub fn column_trits(&self, col: usize) -> Vec<i8> {
        (0..self.rows).map(|r| self.entry(r, col)).collect()
    }

    /// Normalization factor `1/sqrt(nnz)` of a column.
    pub fn scale(&self, col: usize) -> f64 {
        1.0 / (self.nnz[col] as f64).sqrt()
    }

    /// Unit-norm column.
    pub fn column(&self, col: usize) -> Vec<f64> {
        let s = self.scale(col);
        (0..self.rows)
            .map(|r| self.entry(r, col) as f64 * s)
            .collect()
    }

    /// Exact inner product of two unnormalized columns.
    pub fn raw_inner(&self, a: usize, b: usize) -> i64 {
        let (nza, nega) = self.planes(a);
        let (nzb, negb) = self.planes(b);
        let mut both = 0i64;
        let mut differ = 0i64;
        for w in 0..self.words {
            let common = nza[w] & nzb[w];
            both += common.count_ones() as i64;
            differ += (common & (nega[w] ^ negb[w])).count_ones() as i64;
        }
        both - 2 * differ
    }

    /// Inner product of two normalized columns.
    pub fn inner(&self, a: usize, b: usize) -> f64 {
        self.raw_inner(a, b) as f64 * self.scale(a) * self.scale(b)
    }

    /// `y = A·s` over normalized columns.
    pub fn mul_vec(&self, s: &[f64]) -> Result<Vec<f64>> {
        if s.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: s.len(),
            });
        }
        let mut y = vec![0.0; self.rows];
        for (j, &v) in s.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let c = v * self.scale(j);
            for (r, out) in y.iter_mut().enumerate() {
                *out += c * self.entry(r, j) as f64;
            }
        }
        Ok(y)
    }

    /// Column `col` shifted down cyclically by `t` rows, as unnormalized trits.
    pub fn shifted_column(&self, col: usize, t: usize) -> Vec<i8> {
        let trits = self.column_trits(col);
        let m = self.rows;
        (0..m).map(|r| trits[(r + m - t % m) % m]).collect()
    }

    fn shifted_planes(&self, col: usize, t: usize) -> (Vec<u64>, Vec<u64>) {
        let (nz, neg) = self.planes(col);
        (
            rotate_bits(nz, self.rows, t),
            rotate_bits(neg, self.rows, t),
        )
    }

    fn column_index(&self) -> HashMap<(&[u64], &[u64]), usize> {
        let mut index = HashMap::with_capacity(self.cols);
        for c in 0..self.cols {
            index.entry(self.planes(c)).or_insert(c);
        }
        index
    }

    /// Decomposes the columns into cyclic-shift orbits. Returns `false` and
    /// leaves the table empty when the column set is not shift-closed or has
    /// repeated columns.
    pub fn detect_orbits(&mut self) -> bool {
        let index = self.column_index();
        if index.len() != self.cols {
            return false;
        }
        let mut seen = vec![false; self.cols];
        let mut orbits = Vec::new();
        for start in 0..self.cols {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            let (mut nz, mut neg) = self.shifted_planes(start, 1);
            loop {
                let Some(&c) = index.get(&(nz.as_slice(), neg.as_slice())) else {
                    return false;
                };
                if c == start {
                    break;
                }
                if seen[c] {
                    return false;
                }
                seen[c] = true;
                members.push(c);
                nz = rotate_bits(&nz, self.rows, 1);
                neg = rotate_bits(&neg, self.rows, 1);
            }
            orbits.push(Orbit { members });
        }
        self.orbits = Some(orbits);
        true
    }

    /// Rebuilds orbits from `(representative, size)` records and verifies them.
    pub fn set_orbits_from_records(&mut self, records: &[(usize, usize)]) -> Result<()> {
        let index = self.column_index();
        let mut orbits = Vec::with_capacity(records.len());
        for &(rep, mu) in records {
            if rep >= self.cols || mu == 0 {
                return Err(Error::Inconsistent(format!("bad orbit record {rep} {mu}")));
            }
            let mut members = Vec::with_capacity(mu);
            for t in 0..mu {
                let (nz, neg) = self.shifted_planes(rep, t);
                let c = *index.get(&(nz.as_slice(), neg.as_slice())).ok_or_else(|| {
                    Error::Inconsistent(format!("shift {t} of column {rep} is not a column"))
                })?;
                members.push(c);
            }
            orbits.push(Orbit { members });
        }
        let previous = self.orbits.replace(orbits);
        if let Err(e) = self.verify_orbits() {
            self.orbits = previous;
            return Err(e);
        }
        Ok(())
    }

    /// Checks every orbit invariant: `μ | m`, shifts `0..μ` land on the
    /// recorded members, shift `μ` returns the representative, and the
    /// orbits partition the columns.
    pub fn verify_orbits(&self) -> Result<()> {
        let Some(orbits) = &self.orbits else {
            return Ok(());
        };
        let fail = |msg: String| Err(Error::Inconsistent(msg));
        let mut covered = vec![false; self.cols];
        for o in orbits {
            let rep = o.representative();
            if !self.rows.is_multiple_of(o.size()) {
                return fail(format!(
                    "orbit size {} does not divide {}",
                    o.size(),
                    self.rows
                ));
            }
            for (t, &c) in o.members.iter().enumerate() {
                if c >= self.cols || covered[c] {
                    return fail(format!("column {c} repeated or out of range"));
                }
                covered[c] = true;
                if self.shifted_planes(rep, t)
                    != (self.planes(c).0.to_vec(), self.planes(c).1.to_vec())
                {
                    return fail(format!("shift {t} of column {rep} is not column {c}"));
                }
            }
            let back = self.shifted_planes(rep, o.size());
            if back.0 != self.planes(rep).0 || back.1 != self.planes(rep).1 {
                return fail(format!(
                    "orbit of column {rep} does not close after {}",
                    o.size()
                ));
            }
        }
        if covered.iter().any(|c| !c) {
            return fail("orbits do not cover every column".into());
        }
        Ok(())
    }
}

/// ±1 matrix from the even-parity subcode: codeword bit `r` becomes row `r`,
/// with `0 → -1`. Columns follow message order; orbits are recorded.
pub fn build_pm1(spec: &CodeSpec) -> Result<SensingMatrix> {
    let n = spec.n_tilde();
    let words = enumerate_even_codewords(spec)?;
    let cols = words.iter().map(|w| {
        let mut col = vec![-1i8; n];
        for e in w.bits.exponents() {
            col[e] = 1;
        }
        col
    });
    let mut m = SensingMatrix::from_columns(MatrixKind::Pm1, n, cols)?;
    if !m.detect_orbits() {
        return Err(Error::Inconsistent(
            "even-parity subcode is not shift-closed".into(),
        ));
    }
    m.push_comment(format!(
        "mtilde={} i={} primpoly={} parity=even",
        spec.m_tilde(),
        spec.gap(),
        spec.field().primitive_poly().to_hex()
    ));
    Ok(m)
}

/// Coherence as an exact quantity: `inner / sqrt(nnz_a · nnz_b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactCoherence {
    /// Absolute unnormalized inner product.
    pub inner: u64,
    pub nnz_a: u32,
    pub nnz_b: u32,
    /// Column pair attaining it.
    pub pair: Option<(usize, usize)>,
}

impl ExactCoherence {
    fn zero() -> Self {
        Self {
            inner: 0,
            nnz_a: 1,
            nnz_b: 1,
            pair: None,
        }
    }

    pub fn value(&self) -> f64 {
        self.inner as f64 / ((self.nnz_a as f64) * (self.nnz_b as f64)).sqrt()
    }

    fn denominator_sq(&self) -> u128 {
        self.nnz_a as u128 * self.nnz_b as u128
    }

    /// Strictly larger than `other`, compared exactly.
    pub fn exceeds(&self, other: &ExactCoherence) -> bool {
        let lhs = (self.inner as u128).pow(2) * other.denominator_sq();
        let rhs = (other.inner as u128).pow(2) * self.denominator_sq();
        lhs > rhs
    }

    /// Reduced `(num, den)` when the value is rational.
    pub fn rational(&self) -> Option<(u64, u64)> {
        let d2 = self.denominator_sq();
        let d = (d2 as f64).sqrt().round() as u128;
        let d = (d.saturating_sub(1)..=d + 1).find(|x| x * x == d2)? as u64;
        if self.inner == 0 {
            return Some((0, 1));
        }
        let g = gcd(self.inner, d);
        Some((self.inner / g, d / g))
    }

    /// `value <= num/den`, exactly.
    pub fn at_most(&self, num: u64, den: u64) -> bool {
        (self.inner as u128).pow(2) * (den as u128).pow(2)
            <= (num as u128).pow(2) * self.denominator_sq()
    }

    /// `value < num/den`, exactly.
    pub fn below(&self, num: u64, den: u64) -> bool {
        (self.inner as u128).pow(2) * (den as u128).pow(2)
            < (num as u128).pow(2) * self.denominator_sq()
    }

    /// `value == num/den`, exactly.
    pub fn equals(&self, num: u64, den: u64) -> bool {
        self.at_most(num, den) && !self.below(num, den)
    }
}

impl fmt::Display for ExactCoherence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational() {
            Some((0, _)) => write!(f, "0"),
            Some((n, d)) => write!(f, "{n}/{d}"),
            None => write!(f, "{}/sqrt({})", self.inner, self.denominator_sq()),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceMode {
    /// Every column pair; limited to 8192 columns.
    Full,
    /// `pairs` random distinct column pairs from a seeded LCG; a lower bound.
    Sampled { pairs: u64, seed: u64 },
}

pub const MAX_FULL_GRAM_COLUMNS: usize = 8192;

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub coherence: ExactCoherence,
    pub sampled: bool,
    pub pairs_examined: u64,
    /// Largest `k` with `(k-1)·coherence < 1`, capped at the column count.
    pub max_rip_order: usize,
}

impl AnalysisReport {
    /// Gershgorin RIP constant `δ_k = (k-1)·coherence`.
    pub fn delta(&self, k: usize) -> f64 {
        (k.saturating_sub(1)) as f64 * self.coherence.value()
    }

    /// `(k, δ_k)` for `k = 2..=max_rip_order`.
    pub fn delta_table(&self) -> Vec<(usize, f64)> {
        (2..=self.max_rip_order)
            .map(|k| (k, self.delta(k)))
            .collect()
    }
}

fn max_rip_order(c: &ExactCoherence, cols: usize) -> usize {
    if c.inner == 0 {
        return cols.max(1);
    }
    // largest k with (k-1)^2 · inner^2 < nnz_a · nnz_b
    let inner_sq = (c.inner as u128).pow(2);
    let d2 = c.denominator_sq();
    let mut k = 1usize;
    while k < cols && (k as u128).pow(2) * inner_sq < d2 {
        k += 1;
    }
    k
}

pub fn coherence(matrix: &SensingMatrix, mode: CoherenceMode) -> Result<AnalysisReport> {
    let n = matrix.cols();
    let mut best = ExactCoherence::zero();
    let consider = |a: usize, b: usize, best: &mut ExactCoherence| {
        let cand = ExactCoherence {
            inner: matrix.raw_inner(a, b).unsigned_abs(),
            nnz_a: matrix.nnz(a),
            nnz_b: matrix.nnz(b),
            pair: Some((a, b)),
        };
        if best.pair.is_none() || cand.exceeds(best) {
            *best = cand;
        }
    };
    let (sampled, pairs) = match mode {
        CoherenceMode::Full => {
            if n > MAX_FULL_GRAM_COLUMNS {
                return Err(Error::TooLargeForFullGram(n));
            }
            for a in 0..n {
                for b in a + 1..n {
                    consider(a, b, &mut best);
                }
            }
            (false, (n as u64 * n.saturating_sub(1) as u64) / 2)
        }
        CoherenceMode::Sampled { pairs, seed } => {
            if n >= 2 {
                let mut rng = Lcg64Xsh32::seed_from_u64(seed);
                for _ in 0..pairs {
                    let a = rng.random_range(0..n);
                    let mut b = rng.random_range(0..n - 1);
                    if b >= a {
                        b += 1;
                    }
                    consider(a.min(b), a.max(b), &mut best);
                }
            }
            (true, pairs)
        }
    };
    if best.pair.is_none() {
        best = ExactCoherence::zero();
    }
    Ok(AnalysisReport {
        max_rip_order: max_rip_order(&best, n),
        coherence: best,
        sampled,
        pairs_examined: pairs,
    })
}

#[derive(Debug, Clone)]
pub struct GershgorinReport {
    pub order: usize,
    pub trials: usize,
    pub delta: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Smallest distance from any eigenvalue to the nearer interval end;
    /// negative when some eigenvalue falls outside `[1-δ, 1+δ]`.
    pub worst_margin: f64,
    pub failures: usize,
}

impl GershgorinReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.worst_margin >= -tol
    }
}

/// Samples `trials` random `k`-column submatrices and checks every eigenvalue
/// of their Gram matrix against `1 ± (k-1)·coherence`.
pub fn gershgorin_check(
    matrix: &SensingMatrix,
    k: usize,
    trials: usize,
    seed: u64,
    coherence: f64,
) -> Result<GershgorinReport> {
    if k == 0 || k > matrix.cols() || k > matrix.rows() {
        return Err(Error::DimensionMismatch {
            expected: matrix.cols().min(matrix.rows()),
            found: k,
        });
    }
    let delta = (k - 1) as f64 * coherence;
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut report = GershgorinReport {
        order: k,
        trials,
        delta,
        min_eigenvalue: f64::INFINITY,
        max_eigenvalue: f64::NEG_INFINITY,
        worst_margin: f64::INFINITY,
        failures: 0,
    };
    for _ in 0..trials {
        let picked = sample(&mut rng, matrix.cols(), k).into_vec();
        let gram = DMatrix::from_fn(k, k, |a, b| matrix.inner(picked[a], picked[b]));
        let eig = SymmetricEigen::new(gram).eigenvalues;
        let mut failed = false;
        for &l in eig.iter() {
            report.min_eigenvalue = report.min_eigenvalue.min(l);
            report.max_eigenvalue = report.max_eigenvalue.max(l);
            let margin = (l - (1.0 - delta)).min((1.0 + delta) - l);
            report.worst_margin = report.worst_margin.min(margin);
            failed |= margin < -1e-9;
        }
        report.failures += usize::from(failed);
    }
    Ok(report)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest DeVore column count accepted.
pub const MAX_DEVORE_COLUMNS: u64 = 1 << 20;

/// Parameters of a DeVore binary matrix over the prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DevoreSpec {
    p: u64,
    r: u32,
}

impl DevoreSpec {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r as u64 >= p {
            return Err(Error::DegreeTooLarge { p, r });
        }
        let cols = p.checked_pow(r + 1).filter(|&c| c <= MAX_DEVORE_COLUMNS);
        if cols.is_none() {
            return Err(Error::SizeGuard(p.saturating_pow(r + 1)));
        }
        Ok(Self { p, r })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn rows(&self) -> usize {
        (self.p * self.p) as usize
    }

    pub fn cols(&self) -> usize {
        self.p.pow(self.r + 1) as usize
    }
}

/// Rows are pairs `(x, y)` at index `x·p + y`; column `j` is the polynomial
/// whose coefficient of `x^t` is base-`p` digit `t` of `j`, with a one at
/// every `(x, P(x))`.
pub fn build_devore(spec: &DevoreSpec) -> Result<SensingMatrix> {
    let p = spec.p;
    let rows = spec.rows();
    let cols = (0..spec.cols() as u64).map(|j| {
        let mut coeffs = Vec::with_capacity(spec.r as usize + 1);
        let mut rest = j;
        for _ in 0..=spec.r {
            coeffs.push(rest % p);
            rest /= p;
        }
        let mut col = vec![0i8; rows];
        for x in 0..p {
            let y = coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
            col[(x * p + y) as usize] = 1;
        }
        col
    });
    let mut m = SensingMatrix::from_columns(MatrixKind::Bin, rows, cols)?;
    m.push_comment(format!("devore p={} r={}", spec.p, spec.r));
    Ok(m)
}

/// Scatters `x` into the one-positions of `s`, in ascending row order.
pub fn mu_embed(s: &[bool], x: &[f64]) -> Result<Vec<f64>> {
    let ones = s.iter().filter(|&&b| b).count();
    if ones != x.len() {
        return Err(Error::LengthMismatch {
            expected: ones,
            found: x.len(),
        });
    }
    let mut values = x.iter();
    Ok(s.iter()
        .map(|&b| {
            if b {
                *values.next().expect("counted")
            } else {
                0.0
            }
        })
        .collect())
}

/// The pieces of a ternary construction.
#[derive(Debug, Clone)]
pub struct TernaryConstruction {
    pub p: u64,
    pub r: u32,
    pub gap: u32,
    pub devore: SensingMatrix,
    pub pm1: SensingMatrix,
    pub matrix: SensingMatrix,
}

/// Ternary matrix `[μ(s_a, x_b)]` from a DeVore matrix over GF(p),
/// `p = 2^m - 1` prime, and the ±1 code matrix of length `p`, with
/// `r = ⌊p/k⌋` and gap `i = ⌈log₂ k⌉`. Column index is `a·n_x + b`.
pub fn build_ternary_parts(k: u64, m_tilde: u32) -> Result<TernaryConstruction> {
    if !(2..=30).contains(&m_tilde) || !is_prime((1u64 << m_tilde) - 1) {
        return Err(Error::NotMersenne(m_tilde));
    }
    let p = (1u64 << m_tilde) - 1;
    if k < 2 || k >= p {
        return Err(Error::OrderTooLarge { k, p });
    }
    let r = (p / k) as u32;
    let gap = 64 - (k - 1).leading_zeros();
    let field = FieldContext::new(m_tilde, None)?;
    let code = crate::codes::build_code(&field, gap)?;
    let x_cols = 1u64 << (code.k_tilde() - 1);
    let total = p
        .checked_pow(r + 1)
        .and_then(|c| c.checked_mul(x_cols))
        .unwrap_or(u64::MAX);
    if total > MAX_DEVORE_COLUMNS {
        return Err(Error::SizeGuard(total));
    }
    let devore = build_devore(&DevoreSpec::new(p, r)?)?;
    let pm1 = build_pm1(&code)?;
    let x_trits: Vec<Vec<i8>> = (0..pm1.cols()).map(|b| pm1.column_trits(b)).collect();
    let rows = devore.rows();
    let cols = (0..devore.cols()).flat_map(|a| {
        let support: Vec<usize> = (0..rows).filter(|&q| devore.entry(q, a) != 0).collect();
        x_trits.iter().map(move |x| {
            let mut col = vec![0i8; rows];
            for (q, &v) in support.iter().zip(x) {
                col[*q] = v;
            }
            col
        })
    });
    let mut matrix = SensingMatrix::from_columns(MatrixKind::Tern, rows, cols)?;
    matrix.push_comment(format!(
        "ternary p={p} k={k} r={r} i={gap} mtilde={m_tilde} primpoly={}",
        field.primitive_poly().to_hex()
    ));
    Ok(TernaryConstruction {
        p,
        r,
        gap,
        devore,
        pm1,
        matrix,
    })
}

pub fn build_ternary(k: u64, m_tilde: u32) -> Result<SensingMatrix> {
    Ok(build_ternary_parts(k, m_tilde)?.matrix)
}
