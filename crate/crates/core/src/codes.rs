//! Symmetric binary BCH codes with large minimum distance.
//!
//! The parity-check polynomial `h(x)` has as roots the powers `α^r` whose
//! exponent `r`, written as an `m`-bit word, has its ones circularly spaced
//! by at least `i` zeros. That set is closed under doubling, so `h` is
//! binary; it contains `r = 0`, so `(x+1) | h` and the all-ones word is a
//! codeword. Every exponent above the spacing threshold is a root of
//! `g = (x^n + 1) / h`, which gives the BCH distance bound.

use crate::counting::enumerate_spaced_sequences;
use crate::error::{Error, Result};
use crate::gf2m::{primitive_polynomials, FieldContext, Gf2Poly};

/// Largest code dimension accepted by the codeword enumerators.
pub const MAX_ENUMERATED_DIMENSION: usize = 21;
/// Upper bound on `n_tilde * 2^(k_tilde - 1)` stored bits.
const MAX_ENUMERATED_BITS: u64 = 1 << 31;

#[derive(Debug, Clone)]
pub struct CodeSpec {
    field: FieldContext,
    gap: u32,
    h_exponents: Vec<u64>,
    h: Gf2Poly,
    g: Gf2Poly,
}

impl CodeSpec {
    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn m_tilde(&self) -> u32 {
        self.field.m_tilde()
    }

    /// Minimum circular zero-gap `i`.
    pub fn gap(&self) -> u32 {
        self.gap
    }

    /// `l = m - i - 1`; equals -1 in the square PN case `i = m`.
    pub fn l(&self) -> i32 {
        self.m_tilde() as i32 - self.gap as i32 - 1
    }

    /// Code length `2^m - 1`.
    pub fn n_tilde(&self) -> usize {
        self.field.order()
    }

    /// Code dimension, `deg h`.
    pub fn k_tilde(&self) -> usize {
        self.h.degree().expect("h is nonzero")
    }

    pub fn h(&self) -> &Gf2Poly {
        &self.h
    }

    pub fn g(&self) -> &Gf2Poly {
        &self.g
    }

    /// Generator of the even-parity subcode, `(x+1)·g(x)`.
    pub fn even_generator(&self) -> Gf2Poly {
        &self.g * &Gf2Poly::from_mask(0b11)
    }

    /// Exponents `r` with `α^r` a root of `h`, ascending.
    pub fn h_exponents(&self) -> &[u64] {
        &self.h_exponents
    }

    /// Largest exponent the spacing rule can produce:
    /// `2^(m-1) + 2^l - 1`, or `2^(m-1)` when `l = -1`.
    pub fn root_threshold(&self) -> u64 {
        let half = 1u64 << (self.m_tilde() - 1);
        match self.l() {
            l if l >= 0 => half + (1u64 << l) - 1,
            _ => half,
        }
    }

    /// Designed distance `2^(m-1) - 2^l` (`2^(m-1) - 1` when `l = -1`):
    /// `g` vanishes on the consecutive exponents above the threshold.
    pub fn dmin_bound(&self) -> usize {
        self.n_tilde() - self.root_threshold() as usize
    }

    fn check_enumerable(&self, k: usize) -> Result<()> {
        let bits = (self.n_tilde() as u64).saturating_mul(1u64 << k.saturating_sub(1).min(62));
        if k > MAX_ENUMERATED_DIMENSION || bits > MAX_ENUMERATED_BITS {
            return Err(Error::TooManyCodewords {
                k_tilde: k,
                n_tilde: self.n_tilde(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A codeword as an `n_tilde`-bit mask; bit `r` is the coefficient of `x^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub bits: Gf2Poly,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    pub fn parity(&self) -> Parity {
        if self.weight().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn distance(&self, other: &Codeword) -> usize {
        (&self.bits ^ &other.bits).weight()
    }
}

fn check_gap(field: &FieldContext, i: u32) -> Result<()> {
    if i == 0 || i > field.m_tilde() {
        return Err(Error::InvalidGap {
            gap: i,
            m_tilde: field.m_tilde(),
        });
    }
    Ok(())
}

/// Decimal values of all `m`-bit words whose ones are circularly spaced by at
/// least `i` zeros.
pub fn build_h_exponents(field: &FieldContext, i: u32) -> Result<Vec<u64>> {
    check_gap(field, i)?;
    let seqs = enumerate_spaced_sequences(i, field.m_tilde() as usize, true)?;
    Ok(seqs.into_iter().map(u64::from).collect())
}

pub fn build_code(field: &FieldContext, i: u32) -> Result<CodeSpec> {
    let h_exponents = build_h_exponents(field, i)?;
    let mut h = Gf2Poly::one();
    let mut covered = vec![false; field.order()];
    for &e in &h_exponents {
        if covered[e as usize] {
            continue;
        }
        for c in field.cyclotomic_coset(e) {
            covered[c as usize] = true;
        }
        h = &h * &field.minimal_polynomial(e)?;
    }
    if h.degree() != Some(h_exponents.len()) {
        return Err(Error::Inconsistent(format!(
            "exponent set of size {} is not closed under doubling",
            h_exponents.len()
        )));
    }
    let (g, rem) = Gf2Poly::x_n_plus_one(field.order()).div_rem(&h)?;
    if !rem.is_zero() {
        return Err(Error::Inconsistent("h does not divide x^n + 1".into()));
    }
    Ok(CodeSpec {
        field: field.clone(),
        gap: i,
        h_exponents,
        h,
        g,
    })
}

/// All `message·generator` products for messages below `2^count`, indexed by
/// message mask. Each word differs from an earlier one by a single shifted
/// generator.
fn enumerate_multiples(generator: &Gf2Poly, count: usize) -> Vec<Gf2Poly> {
    let shifted: Vec<Gf2Poly> = (0..count).map(|t| generator.shl(t)).collect();
    let mut out: Vec<Gf2Poly> = Vec::with_capacity(1 << count);
    out.push(Gf2Poly::zero());
    for msg in 1usize..(1 << count) {
        let prev = &out[msg & (msg - 1)];
        let next = prev ^ &shifted[msg.trailing_zeros() as usize];
        out.push(next);
    }
    out
}

/// The even-parity subcode, one codeword per complement pair, ordered by
/// message mask ascending: codeword `j` is `j(x)·(x+1)·g(x)`.
pub fn enumerate_even_codewords(spec: &CodeSpec) -> Result<Vec<Codeword>> {
    let k = spec.k_tilde();
    spec.check_enumerable(k)?;
    Ok(enumerate_multiples(&spec.even_generator(), k - 1)
        .into_iter()
        .map(|bits| Codeword { bits })
        .collect())
}

/// Brute-force minimum weight over the nonzero words of the full code,
/// walking messages in Gray-code order.
pub fn min_distance(spec: &CodeSpec) -> Result<usize> {
    let k = spec.k_tilde();
    spec.check_enumerable(k)?;
    let words = spec.n_tilde().div_ceil(64);
    let shifted: Vec<Vec<u64>> = (0..k)
        .map(|t| {
            let mut w = spec.g.shl(t).words().to_vec();
            w.resize(words, 0);
            w
        })
        .collect();
    let mut current = vec![0u64; words];
    let mut best = usize::MAX;
    for step in 1u64..(1u64 << k) {
        let bit = step.trailing_zeros() as usize;
        for (c, s) in current.iter_mut().zip(&shifted[bit]) {
            *c ^= s;
        }
        let w: usize = current.iter().map(|x| x.count_ones() as usize).sum();
        best = best.min(w);
    }
    Ok(best)
}

/// Reference parity-check polynomials for gap `i = 3`, keyed by `m̃`.
pub const REFERENCE_GAP3_H: [(u32, &str); 4] = [
    (4, "x^5+x^4+x^2+1"),
    (6, "x^7+x^6+x^2+1"),
    (8, "x^13+x^12+x^10+x^9+x^8+x^4+x^3+1"),
    (
        10,
        "x^26+x^25+x^24+x^20+x^16+x^14+x^13+x^12+x^10+x^9+x^7+x^5+x^4+x^3+x+1",
    ),
];

/// Searches primitive polynomials of degree `m` (ascending) for one whose
/// code with gap `i` has parity-check polynomial `target_h`.
pub fn find_primitive_for_h(m_tilde: u32, i: u32, target_h: &Gf2Poly) -> Result<Option<Gf2Poly>> {
    for prim in primitive_polynomials(m_tilde) {
        let field = FieldContext::new(m_tilde, Some(prim.clone()))?;
        if build_code(&field, i)?.h() == target_h {
            return Ok(Some(prim));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::tau;
    use num_bigint::BigUint;
    use std::collections::HashSet;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    fn code(m: u32, i: u32, prim: Option<&str>) -> CodeSpec {
        let field = FieldContext::new(m, prim.map(p)).unwrap();
        build_code(&field, i).unwrap()
    }

    #[test]
    fn h_exponent_examples() {
        let f3 = FieldContext::new(3, None).unwrap();
        assert_eq!(build_h_exponents(&f3, 3).unwrap(), vec![0, 1, 2, 4]);
        let f4 = FieldContext::new(4, None).unwrap();
        assert_eq!(build_h_exponents(&f4, 3).unwrap(), vec![0, 1, 2, 4, 8]);
        let f8 = FieldContext::new(8, None).unwrap();
        let h8: HashSet<u64> = build_h_exponents(&f8, 3).unwrap().into_iter().collect();
        let mut expect: HashSet<u64> = [0].into();
        expect.extend(f8.cyclotomic_coset(1));
        expect.extend(f8.cyclotomic_coset(17));
        assert_eq!(h8, expect);
        assert_eq!(h8.len(), 13);
        assert!(matches!(
            build_h_exponents(&f4, 5),
            Err(Error::InvalidGap { .. })
        ));
        assert!(matches!(
            build_h_exponents(&f4, 0),
            Err(Error::InvalidGap { .. })
        ));
    }

    #[test]
    fn table_one_small_rows() {
        assert_eq!(code(4, 3, Some("x^4+x+1")).h(), &p("x^5+x^4+x^2+1"));
        assert_eq!(code(6, 3, Some("x^6+x+1")).h(), &p("x^7+x^6+x^2+1"));
    }

    #[test]
    fn pn_case_h_is_primitive_times_x_plus_one() {
        for m in 2..=8 {
            let c = code(m, m, None);
            let expect = c.field().primitive_poly() * &p("x+1");
            assert_eq!(c.h(), &expect);
            assert_eq!(c.k_tilde(), m as usize + 1);
        }
        assert_eq!(code(3, 3, None).dmin_bound(), 3);
    }

    #[test]
    fn structural_invariants() {
        for m in 2..=10 {
            for i in 1..=m {
                let c = code(m, i, None);
                let xn1 = Gf2Poly::x_n_plus_one(c.n_tilde());
                assert_eq!(&(c.h() * c.g()), &xn1);
                assert!(c.h().div_rem(&p("x+1")).unwrap().1.is_zero());
                assert_eq!(
                    BigUint::from(c.k_tilde()),
                    tau(i, m as usize),
                    "m={m} i={i}"
                );
                // h exponents = union of cosets inside the threshold
                let t = c.root_threshold();
                let mut inside = HashSet::new();
                for e in 0..c.n_tilde() as u64 {
                    let coset = c.field().cyclotomic_coset(e);
                    if coset.iter().all(|&x| x <= t) {
                        inside.insert(e);
                    }
                }
                let hs: HashSet<u64> = c.h_exponents().iter().copied().collect();
                assert_eq!(hs, inside, "m={m} i={i}");
                // g vanishes on every exponent above the threshold
                for j in (t + 1)..c.n_tilde() as u64 {
                    assert_eq!(c.field().eval(c.g(), c.field().alpha_pow(j)), 0);
                }
            }
        }
    }

    #[test]
    fn even_codewords_small() {
        let c = code(4, 3, None);
        let words = enumerate_even_codewords(&c).unwrap();
        assert_eq!(words.len(), 16);
        assert_eq!(words[0].weight(), 0);
        assert!(words[1..].iter().all(|w| w.weight() == 8));
        let gen = c.even_generator();
        assert!(words
            .iter()
            .all(|w| w.bits.div_rem(&gen).unwrap().1.is_zero()));
        assert!(words.iter().all(|w| w.parity() == Parity::Even));
    }

    #[test]
    fn even_codewords_shift_closed() {
        let c = code(6, 3, None);
        let words = enumerate_even_codewords(&c).unwrap();
        assert_eq!(words.len(), 64);
        let set: HashSet<&Gf2Poly> = words.iter().map(|w| &w.bits).collect();
        for w in &words {
            for s in 1..63 {
                assert!(set.contains(&w.bits.rotate(63, s)));
            }
        }
        // complements are odd and never selected
        let ones = Gf2Poly::from_exponents(0..63);
        for w in &words {
            assert!(!set.contains(&(&w.bits ^ &ones)));
        }
    }

    #[test]
    fn pairwise_distances_within_bounds() {
        for (m, i) in [(4, 3), (5, 2), (6, 3), (7, 4)] {
            let c = code(m, i, None);
            let words = enumerate_even_codewords(&c).unwrap();
            let d = c.dmin_bound();
            let n = c.n_tilde();
            for a in 0..words.len() {
                for b in a + 1..words.len() {
                    let l = words[a].distance(&words[b]);
                    assert!(d <= l && l <= n - d, "m={m} i={i} l={l}");
                }
            }
        }
    }

    #[test]
    fn min_distance_examples() {
        let c4 = code(4, 3, None);
        assert_eq!(min_distance(&c4).unwrap(), 7);
        assert_eq!(c4.dmin_bound(), 7);
        let c3 = code(3, 3, None);
        assert_eq!(min_distance(&c3).unwrap(), 3);
        assert_eq!(c3.dmin_bound(), 3);
        // all-ones is a codeword
        let ones = Gf2Poly::from_exponents(0..15);
        assert!(ones.div_rem(c4.g()).unwrap().1.is_zero());
        assert_eq!(ones.weight(), 15);
    }

    #[test]
    fn min_distance_meets_bound() {
        for m in 3..=8 {
            for i in 1..=m {
                let c = code(m, i, None);
                if c.k_tilde() > 14 {
                    continue;
                }
                assert!(min_distance(&c).unwrap() >= c.dmin_bound(), "m={m} i={i}");
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        let c = code(12, 1, None);
        assert!(c.k_tilde() > MAX_ENUMERATED_DIMENSION);
        assert!(matches!(
            min_distance(&c),
            Err(Error::TooManyCodewords { .. })
        ));
        assert!(matches!(
            enumerate_even_codewords(&c),
            Err(Error::TooManyCodewords { .. })
        ));
    }

    #[test]
    fn table_one_search() {
        assert_eq!(
            find_primitive_for_h(4, 3, &p("x^5+x^4+x^2+1")).unwrap(),
            Some(p("x^4+x+1"))
        );
        assert_eq!(
            find_primitive_for_h(6, 3, &p("x^7+x^6+x^2+1")).unwrap(),
            Some(p("x^6+x+1"))
        );
        assert_eq!(find_primitive_for_h(4, 3, &p("x^5+1")).unwrap(), None);
    }

    #[test]
    fn reference_rows_match_default_primitives() {
        for (m, h) in REFERENCE_GAP3_H {
            assert_eq!(code(m, 3, None).h(), &p(h), "m={m}");
        }
    }
}
