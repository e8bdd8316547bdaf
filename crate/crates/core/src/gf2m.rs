//! Binary polynomials and binary extension fields GF(2^m).
//!
//! Field elements are `m`-bit masks in the polynomial basis; products go
//! through log/antilog tables built from a primitive polynomial.

use std::fmt;
use std::ops::{BitXor, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Polynomial over GF(2), one bit per power of `x`.
///
/// Words are little-endian and trimmed, so the zero polynomial has no words
/// and equality is structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_mask(1)
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut p = Self { words: vec![mask] };
        p.trim();
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(d, true);
        p
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// `x^n + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        Self::from_exponents([n, 0])
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Index of the highest set bit; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_i64(&self) -> i64 {
        self.degree().map_or(-1, |d| d as i64)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if value {
            if self.words.len() <= i / 64 {
                self.words.resize(i / 64 + 1, 0);
            }
            self.words[i / 64] |= 1 << (i % 64);
        } else if i / 64 < self.words.len() {
            self.words[i / 64] &= !(1 << (i % 64));
            self.trim();
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.coeff(i);
        self.set_coeff(i, !v);
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// The polynomial as a `u64` mask when the degree is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Multiplication by `x^s`.
    pub fn shl(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (s / 64, s % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] |= w << bs;
            if bs != 0 {
                words[i + ws + 1] |= w >> (64 - bs);
            }
        }
        Self::from_words(words)
    }

    fn xor_shifted_in_place(acc: &mut Vec<u64>, src: &[u64], s: usize) {
        let (ws, bs) = (s / 64, s % 64);
        let need = src.len() + ws + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        for (i, &w) in src.iter().enumerate() {
            acc[i + ws] ^= w << bs;
            if bs != 0 {
                acc[i + ws + 1] ^= w >> (64 - bs);
            }
        }
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; rem.len()];
        let mut top = self.degree();
        while let Some(dr) = top {
            if dr < db {
                break;
            }
            let s = dr - db;
            quot[s / 64] |= 1 << (s % 64);
            Self::xor_shifted_in_place(&mut rem, &divisor.words, s);
            top = (0..=dr / 64)
                .rev()
                .find(|&w| rem[w] != 0)
                .map(|w| w * 64 + 63 - rem[w].leading_zeros() as usize);
        }
        Ok((Gf2Poly::from_words(quot), Gf2Poly::from_words(rem)))
    }

    /// Cyclic shift by `by` positions within length `n` (multiplication by
    /// `x^by` modulo `x^n + 1`). Requires `deg self < n`.
    pub fn rotate(&self, n: usize, by: usize) -> Self {
        let by = by % n;
        let mut out = Gf2Poly::zero();
        for e in self.exponents() {
            out.set_coeff((e + by) % n, true);
        }
        out
    }

    /// Lowercase hexadecimal coefficient mask, e.g. `0x13` for `x^4+x+1`.
    pub fn to_hex(&self) -> String {
        let Some((top, rest)) = self.words.split_last() else {
            return "0x0".to_string();
        };
        let mut s = format!("0x{top:x}");
        for w in rest.iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    fn parse_hex(digits: &str, input: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let digits = digits.trim_start_matches('0');
        if digits.is_empty() {
            return Ok(Self::zero());
        }
        let mut words = Vec::new();
        let bytes = digits.as_bytes();
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).map_err(|_| err("bad utf-8"))?;
            words.push(u64::from_str_radix(chunk, 16).map_err(|_| err("bad hex digit"))?);
            end = start;
        }
        Ok(Self::from_words(words))
    }

    fn parse_monomials(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in compact.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                t => {
                    let exp = t
                        .strip_prefix("x^")
                        .or_else(|| t.strip_prefix("x**"))
                        .ok_or_else(|| err("terms must be 1, x or x^d"))?;
                    exp.parse::<usize>().map_err(|_| err("bad exponent"))?
                }
            };
            p.flip(e);
        }
        Ok(p)
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    /// Accepts either a hex mask (`0x13`) or a monomial sum (`x^4+x+1`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            Some(digits) => Self::parse_hex(digits, s),
            None => Self::parse_monomials(t),
        }
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({} = {})", self.to_hex(), self)
    }
}

impl BitXor for &Gf2Poly {
    type Output = Gf2Poly;

    fn bitxor(self, rhs: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Gf2Poly::from_words(words)
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;

    /// Carry-less product.
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        let (sparse, dense) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = Vec::new();
        for e in sparse.exponents() {
            Gf2Poly::xor_shifted_in_place(&mut acc, &dense.words, e);
        }
        Gf2Poly::from_words(acc)
    }
}

/// Carry-less product of two masks whose degrees sum below 64.
fn clmul(a: u64, b: u64) -> u64 {
    let mut r = 0;
    let mut b = b;
    let mut s = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << s;
        }
        b >>= 1;
        s += 1;
    }
    r
}

fn reduce(mut a: u64, modulus: u64, m: u32) -> u64 {
    while a != 0 {
        let d = 63 - a.leading_zeros();
        if d < m {
            break;
        }
        a ^= modulus << (d - m);
    }
    a
}

fn x_pow_mod(mut e: u64, modulus: u64, m: u32) -> u64 {
    let mut base = reduce(2, modulus, m);
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = reduce(clmul(acc, base), modulus, m);
        }
        base = reduce(clmul(base, base), modulus, m);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True when `mask` (degree `m`) is primitive: `x` has multiplicative order
/// exactly `2^m - 1` modulo the polynomial. A reducible modulus has fewer
/// than `2^m - 1` units, so the order test also rules out reducibility.
pub fn is_primitive_mask(mask: u64, m: u32) -> bool {
    if !(1..=31).contains(&m) || mask >> m != 1 || mask & 1 == 0 {
        return false;
    }
    let order = (1u64 << m) - 1;
    if x_pow_mod(order, mask, m) != 1 {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|q| x_pow_mod(order / q, mask, m) != 1)
}

/// All primitive polynomials of degree `m`, ascending by coefficient mask.
pub fn primitive_polynomials(m: u32) -> impl Iterator<Item = Gf2Poly> {
    let lo = (1u64 << m) | 1;
    let hi = 1u64 << (m + 1);
    (lo..hi)
        .step_by(2)
        .filter(move |&p| is_primitive_mask(p, m))
        .map(Gf2Poly::from_mask)
}

/// GF(2^m) with log/antilog tables for a fixed primitive element α.
#[derive(Clone)]
pub struct FieldContext {
    m_tilde: u32,
    primitive: Gf2Poly,
    /// `antilog[j] = α^j`, stored twice over for reduction-free products.
    antilog: Vec<u32>,
    /// `log[e]` for nonzero `e`; `log[0]` is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("m_tilde", &self.m_tilde)
            .field("primitive", &self.primitive)
            .finish()
    }
}

pub const MAX_EXTENSION_DEGREE: u32 = 16;

impl FieldContext {
    /// Builds GF(2^m). Without an explicit polynomial the lexicographically
    /// smallest primitive polynomial of degree `m` is used.
    pub fn new(m_tilde: u32, primitive: Option<Gf2Poly>) -> Result<Self> {
        if !(2..=MAX_EXTENSION_DEGREE).contains(&m_tilde) {
            return Err(Error::InvalidDegree(m_tilde));
        }
        let primitive = match primitive {
            Some(p) => {
                if p.degree() != Some(m_tilde as usize) {
                    return Err(Error::PolyDegreeMismatch {
                        poly: p.to_string(),
                        expected: m_tilde,
                        found: p.degree_i64(),
                    });
                }
                p
            }
            None => primitive_polynomials(m_tilde)
                .next()
                .expect("every degree has a primitive polynomial"),
        };
        let mask = primitive.to_mask().expect("degree <= 16") as u32;
        let order = (1usize << m_tilde) - 1;
        let mut antilog = vec![0u32; 2 * order];
        let mut log = vec![0u32; order + 1];
        let mut x = 1u32;
        for j in 0..order {
            if j > 0 && x == 1 {
                return Err(Error::NotPrimitive(primitive.to_string()));
            }
            antilog[j] = x;
            antilog[j + order] = x;
            log[x as usize] = j as u32;
            x <<= 1;
            if x >> m_tilde != 0 {
                x ^= mask;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive(primitive.to_string()));
        }
        Ok(Self {
            m_tilde,
            primitive,
            antilog,
            log,
        })
    }

    pub fn m_tilde(&self) -> u32 {
        self.m_tilde
    }

    pub fn primitive_poly(&self) -> &Gf2Poly {
        &self.primitive
    }

    /// Multiplicative group order, `2^m - 1`.
    pub fn order(&self) -> usize {
        (1usize << self.m_tilde) - 1
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.antilog[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// `α^e` for any exponent.
    pub fn alpha_pow(&self, e: u64) -> u32 {
        self.antilog[(e % self.order() as u64) as usize]
    }

    /// Discrete log base α; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        match self.log(a) {
            None if e == 0 => 1,
            None => 0,
            Some(l) => self.alpha_pow(l as u64 * (e % self.order() as u64)),
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        self.log(a)
            .map(|l| self.alpha_pow((self.order() as u64 - l as u64) % self.order() as u64))
    }

    /// `{e·2^j mod (2^m - 1)}`, ascending.
    pub fn cyclotomic_coset(&self, e: u64) -> Vec<u64> {
        let n = self.order() as u64;
        let start = e % n;
        let mut coset = vec![start];
        let mut x = (start * 2) % n;
        while x != start {
            coset.push(x);
            x = (x * 2) % n;
        }
        coset.sort_unstable();
        coset
    }

    /// Minimal polynomial of `α^e`: the product of `(x - α^c)` over the coset
    /// of `e`, expanded in the field and checked to land in GF(2)[x].
    pub fn minimal_polynomial(&self, e: u64) -> Result<Gf2Poly> {
        let coeffs = self.expand_roots(self.cyclotomic_coset(e));
        let mut p = Gf2Poly::zero();
        for (d, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => p.set_coeff(d, true),
                other => {
                    return Err(Error::Inconsistent(format!(
                        "minimal polynomial of alpha^{e} has coefficient {other:#x} at x^{d}"
                    )))
                }
            }
        }
        Ok(p)
    }

    /// Coefficients (low degree first) of `Π (x - α^r)` over GF(2^m).
    pub fn expand_roots<I: IntoIterator<Item = u64>>(&self, exponents: I) -> Vec<u32> {
        let mut coeffs = vec![1u32];
        for r in exponents {
            let root = self.alpha_pow(r);
            let mut next = vec![0u32; coeffs.len() + 1];
            for (d, &c) in coeffs.iter().enumerate() {
                next[d + 1] ^= c;
                next[d] ^= self.mul(c, root);
            }
            coeffs = next;
        }
        coeffs
    }

    /// Evaluates a binary polynomial at a field element (Horner).
    pub fn eval(&self, poly: &Gf2Poly, at: u32) -> u32 {
        let Some(deg) = poly.degree() else { return 0 };
        let mut acc = 0u32;
        for d in (0..=deg).rev() {
            acc = self.mul(acc, at) ^ u32::from(poly.coeff(d));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    fn gf16() -> FieldContext {
        FieldContext::new(4, Some(p("x^4+x+1"))).unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(p("0x13"), p("x^4+x+1"));
        assert_eq!(p("x^4 + x + 1").to_hex(), "0x13");
        assert_eq!(p("0x13").to_string(), "x^4+x+1");
        assert_eq!(p("x**3+1"), p("0x9"));
        assert_eq!(p("0"), Gf2Poly::zero());
        let big = Gf2Poly::x_n_plus_one(100);
        assert_eq!(big.to_hex().parse::<Gf2Poly>().unwrap(), big);
        assert!("x^a".parse::<Gf2Poly>().is_err());
        assert!("y+1".parse::<Gf2Poly>().is_err());
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(Gf2Poly::zero().degree(), None);
        assert_eq!(Gf2Poly::zero().degree_i64(), -1);
        assert_eq!(Gf2Poly::monomial(130).degree(), Some(130));
        let a = p("x^7+x^2");
        assert!((&a ^ &a).is_zero());
    }

    // Exhaustive order of α by repeated multiplication, independent of the tables.
    fn brute_order(mask: u64, m: u32) -> u64 {
        let mut x = 2u64;
        let mut k = 1;
        while x != 1 {
            x <<= 1;
            if x >> m != 0 {
                x ^= mask;
            }
            k += 1;
            if k > 1 << m {
                return 0;
            }
        }
        k
    }

    #[test]
    fn make_field_examples() {
        let f = gf16();
        assert_eq!(brute_order(0x13, 4), 15);
        assert_eq!(f.order(), 15);
        assert_eq!(brute_order(0x1f, 4), 5);
        assert_eq!(
            FieldContext::new(4, Some(p("x^4+x^3+x^2+x+1"))).unwrap_err(),
            Error::NotPrimitive("x^4+x^3+x^2+x+1".into())
        );
        // reducible: (x^2+x+1)^2
        assert!(matches!(
            FieldContext::new(4, Some(p("x^4+x^2+1"))),
            Err(Error::NotPrimitive(_))
        ));
        let gf4 = FieldContext::new(2, Some(p("x^2+x+1"))).unwrap();
        assert_eq!(gf4.order(), 3);
        assert_eq!(
            FieldContext::new(2, None).unwrap().primitive_poly(),
            &p("0x7")
        );
        assert_eq!(
            FieldContext::new(1, None).unwrap_err(),
            Error::InvalidDegree(1)
        );
        assert_eq!(
            FieldContext::new(17, None).unwrap_err(),
            Error::InvalidDegree(17)
        );
        assert!(matches!(
            FieldContext::new(5, Some(p("0x13"))),
            Err(Error::PolyDegreeMismatch { .. })
        ));
    }

    #[test]
    fn default_primitives_are_smallest() {
        for m in 2..=12 {
            let f = FieldContext::new(m, None).unwrap();
            let mask = f.primitive_poly().to_mask().unwrap();
            assert_eq!(brute_order(mask, m), (1 << m) - 1);
            for smaller in ((1u64 << m) | 1..mask).step_by(2) {
                assert_ne!(brute_order(smaller, m), (1 << m) - 1, "m={m} {smaller:#x}");
            }
        }
        assert_eq!(
            FieldContext::new(8, None)
                .unwrap()
                .primitive_poly()
                .to_hex(),
            "0x11d"
        );
        assert_eq!(FieldContext::new(16, None).unwrap().order(), 65535);
    }

    #[test]
    fn primitive_counts_match_totient() {
        // φ(2^m - 1) / m
        assert_eq!(primitive_polynomials(4).count(), 2);
        assert_eq!(primitive_polynomials(6).count(), 6);
        assert_eq!(primitive_polynomials(8).count(), 16);
        assert_eq!(primitive_polynomials(10).count(), 60);
    }

    #[test]
    fn mul_examples() {
        let f = gf16();
        assert_eq!(f.mul(0b0010, 0b1000), 0b0011);
        assert_eq!(f.alpha_pow(4), 0b0011);
        for a in 0..16 {
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
        }
    }

    #[test]
    fn mul_matches_carryless_reduction() {
        let f = gf16();
        for a in 0..16u32 {
            for b in 0..16u32 {
                let expect = reduce(clmul(a as u64, b as u64), 0x13, 4) as u32;
                assert_eq!(f.mul(a, b), expect);
            }
        }
    }

    #[test]
    fn mul_commutative_associative_exhaustive() {
        for m in 2..=4 {
            let f = FieldContext::new(m, None).unwrap();
            let q = 1u32 << m;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn fermat_sweep() {
        for m in 2..=10 {
            let f = FieldContext::new(m, None).unwrap();
            for a in 1..(1u32 << m) {
                assert_eq!(f.pow(a, f.order() as u64), 1);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn antilog_log_roundtrip() {
        let f = FieldContext::new(9, None).unwrap();
        for e in 1..(1u32 << 9) {
            assert_eq!(f.alpha_pow(f.log(e).unwrap() as u64), e);
        }
        for j in 0..600u64 {
            for k in [0u64, 1, 7, 300] {
                assert_eq!(f.mul(f.alpha_pow(j), f.alpha_pow(k)), f.alpha_pow(j + k));
            }
        }
    }

    #[test]
    fn cyclotomic_examples() {
        let f8 = FieldContext::new(8, None).unwrap();
        assert_eq!(f8.cyclotomic_coset(17), vec![17, 34, 68, 136]);
        assert_eq!(f8.cyclotomic_coset(0), vec![0]);
        assert_eq!(gf16().cyclotomic_coset(1), vec![1, 2, 4, 8]);
    }

    #[test]
    fn cosets_partition_exponents() {
        for m in 2..=10 {
            let f = FieldContext::new(m, None).unwrap();
            let n = f.order();
            let mut seen = vec![false; n];
            for e in 0..n as u64 {
                let c = f.cyclotomic_coset(e);
                assert_eq!(m as usize % c.len(), 0);
                if seen[e as usize] {
                    continue;
                }
                for &x in &c {
                    assert!(!seen[x as usize]);
                    seen[x as usize] = true;
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let f = gf16();
        assert_eq!(f.minimal_polynomial(1).unwrap(), p("x^4+x+1"));
        assert_eq!(f.minimal_polynomial(0).unwrap(), p("x+1"));
        assert_eq!(f.minimal_polynomial(5).unwrap(), p("x^2+x+1"));
        assert_eq!(f.minimal_polynomial(3).unwrap(), p("x^4+x^3+x^2+x+1"));
    }

    #[test]
    fn minimal_polynomials_divide_x_n_plus_one() {
        for m in 2..=9 {
            let f = FieldContext::new(m, None).unwrap();
            let xn1 = Gf2Poly::x_n_plus_one(f.order());
            for e in 0..f.order() as u64 {
                let mp = f.minimal_polynomial(e).unwrap();
                assert_eq!(mp.degree(), Some(f.cyclotomic_coset(e).len()));
                assert!(xn1.div_rem(&mp).unwrap().1.is_zero());
                assert_eq!(f.eval(&mp, f.alpha_pow(e)), 0);
            }
        }
    }

    #[test]
    fn division_examples() {
        let (q, r) = Gf2Poly::x_n_plus_one(15)
            .div_rem(&p("x^5+x^4+x^2+1"))
            .unwrap();
        assert!(r.is_zero());
        assert_eq!(q.degree(), Some(10));
        let a = p("x^9+x^3+x");
        assert_eq!(a.div_rem(&a).unwrap(), (Gf2Poly::one(), Gf2Poly::zero()));
        assert_eq!(
            p("x^3+1").div_rem(&p("x+1")).unwrap(),
            (p("x^2+x+1"), Gf2Poly::zero())
        );
        assert_eq!(
            a.div_rem(&Gf2Poly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn rotate_is_cyclic() {
        let c = p("x^6+x^2+1");
        assert_eq!(c.rotate(7, 1), p("x^3+x+1"));
        assert_eq!(c.rotate(7, 7), c);
    }

    fn arb_poly() -> impl Strategy<Value = Gf2Poly> {
        proptest::collection::vec(any::<u64>(), 0..4).prop_map(Gf2Poly::from_words)
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert!(r.degree_i64() < b.degree_i64());
            prop_assert_eq!(&(&q * &b) ^ &r, a);
        }

        #[test]
        fn text_forms_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_hex().parse::<Gf2Poly>().unwrap(), a.clone());
            prop_assert_eq!(a.to_string().parse::<Gf2Poly>().unwrap(), a);
        }

        #[test]
        fn shl_is_monomial_product(a in arb_poly(), s in 0usize..200) {
            prop_assert_eq!(a.shl(s), &a * &Gf2Poly::monomial(s));
        }
    }
}
