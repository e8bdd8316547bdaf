//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bch_sensing::codes::{
    build_code, enumerate_even_codewords, find_primitive_for_h, min_distance,
};
use bch_sensing::counting::{growth_root, growth_root_lower_bound, kappa_sequence, tau};
use bch_sensing::gf2m::{FieldContext, Gf2Poly};
use bch_sensing::matrices::{
    build_devore, build_pm1, build_ternary, coherence, gershgorin_check, CoherenceMode, DevoreSpec,
    SensingMatrix,
};
use bch_sensing::recovery::{
    correlate_dft, correlate_naive, mp_recover_with, orbit_spectra, random_sparse_signal, Backend,
    CorrelationEngine, MpMode, MpParams,
};
use num_bigint::BigUint;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn poly(s: &str) -> Gf2Poly {
    s.parse().unwrap()
}

fn pm1(m: u32, i: u32) -> SensingMatrix {
    let f = FieldContext::new(m, None).unwrap();
    build_pm1(&build_code(&f, i).unwrap()).unwrap()
}

/// Degree-`m` polynomials (as masks) whose root has order `2^m - 1`, found by
/// stepping `x^e mod p` until it returns to 1.
fn oracle_primitive_masks(m: u32) -> Vec<u64> {
    let order = (1u64 << m) - 1;
    (1u64 << m..1u64 << (m + 1))
        .filter(|&p| {
            let mut v = 1u64;
            for e in 1..=order {
                v <<= 1;
                if v >> m & 1 == 1 {
                    v ^= p;
                }
                if v == 1 {
                    return e == order;
                }
            }
            false
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (m, prim, expect) in [
        (4, "x^4+x+1", "x^5+x^4+x^2+1"),
        (6, "x^6+x+1", "x^7+x^6+x^2+1"),
    ] {
        let f = FieldContext::new(m, Some(poly(prim))).map_err(|e| e.to_string())?;
        let h = build_code(&f, 3).map_err(|e| e.to_string())?.h().clone();
        check(
            h == poly(expect),
            format!("m={m}: h = {h}, expected {expect}"),
        )?;
    }
    let mut notes = Vec::new();
    for (m, deg, target) in [
        (8u32, 13usize, "x^13+x^12+x^10+x^9+x^8+x^4+x^3+1"),
        (
            10,
            26,
            "x^26+x^25+x^24+x^20+x^16+x^14+x^13+x^12+x^10+x^9+x^7+x^5+x^4+x^3+x+1",
        ),
    ] {
        let prims = oracle_primitive_masks(m);
        for &p in &prims {
            let f = FieldContext::new(m, Some(Gf2Poly::from_mask(p))).map_err(|e| e.to_string())?;
            let d = build_code(&f, 3).map_err(|e| e.to_string())?.k_tilde();
            check(d == deg, format!("m={m} primitive {p:#x}: deg h = {d}"))?;
        }
        let found = find_primitive_for_h(m, 3, &poly(target)).map_err(|e| e.to_string())?;
        notes.push(format!(
            "m={m}: deg h={deg} for all {} primitives, reference h {}",
            prims.len(),
            found.map_or("not reproduced".into(), |p| format!(
                "reproduced by {}",
                p.to_hex()
            ))
        ));
    }
    within(start, Duration::from_secs(10))?;
    Ok(notes.join("; "))
}

/// Brute-force count of length-`b` words whose ones are separated by at least
/// `a` zeros, linearly or around the cycle.
fn oracle_count(a: u32, b: usize, circular: bool) -> u64 {
    let a = a as usize;
    (0u32..1 << b)
        .filter(|&w| {
            let ones: Vec<usize> = (0..b).filter(|&i| w >> i & 1 == 1).collect();
            let linear_ok = ones.windows(2).all(|p| p[1] - p[0] > a);
            let wrap_ok = !circular || ones.len() < 2 || ones[0] + b - ones[ones.len() - 1] > a;
            linear_ok && wrap_ok
        })
        .count() as u64
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for a in 0..=6u32 {
        let kappa = kappa_sequence(a, 16);
        for (b, kb) in kappa.iter().enumerate().skip(1) {
            let k = oracle_count(a, b, false);
            let t = oracle_count(a, b, true);
            check(
                *kb == BigUint::from(k),
                format!("kappa a={a} b={b}: {kb} vs {k}"),
            )?;
            let tt = tau(a, b);
            check(
                tt == BigUint::from(t),
                format!("tau a={a} b={b}: {tt} vs {t}"),
            )?;
            cells += 1;
        }
    }
    check(tau(3, 8) == BigUint::from(13u32), "tau_8^(3) != 13")?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("{cells} (a,b) cells agree; tau_8^(3) = 13"))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    for a in 1..=10u32 {
        let g = growth_root(a);
        let bound = growth_root_lower_bound(a);
        if g <= bound {
            failures.push(format!("a={a}: gamma={g:.10} <= bound {bound:.10}"));
        }
        let k = kappa_sequence(a, 201);
        let ratio = ratio_f64(&k[201], &k[200]);
        if (ratio - g).abs() >= 1e-6 {
            failures.push(format!("a={a}: kappa ratio {ratio:.10} vs gamma {g:.10}"));
        }
    }
    if failures.is_empty() {
        Ok("bound and ratio hold for a in 1..=10".into())
    } else {
        Err(failures.join("; "))
    }
}

/// `x / y` for large integers, via their top 64 bits.
fn ratio_f64(x: &BigUint, y: &BigUint) -> f64 {
    let shift = y.bits().saturating_sub(64);
    let xs = (x >> shift).to_string().parse::<f64>().unwrap();
    let ys = (y >> shift).to_string().parse::<f64>().unwrap();
    xs / ys
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let f4 = FieldContext::new(4, None).unwrap();
    let c4 = build_code(&f4, 3).unwrap();
    let d4 = min_distance(&c4).map_err(|e| e.to_string())?;
    check(
        d4 == 7 && c4.dmin_bound() == 7,
        format!("m=4: d={d4}, bound={}", c4.dmin_bound()),
    )?;
    let f6 = FieldContext::new(6, None).unwrap();
    let c6 = build_code(&f6, 3).unwrap();
    let d6 = min_distance(&c6).map_err(|e| e.to_string())?;
    check(
        c6.dmin_bound() == 28,
        format!("m=6 bound {}", c6.dmin_bound()),
    )?;
    check(d6 >= 28, format!("m=6: d={d6} < 28"))?;
    let weights: Vec<usize> = enumerate_even_codewords(&c4)
        .unwrap()
        .iter()
        .map(|w| w.weight())
        .filter(|&w| w > 0)
        .collect();
    check(
        weights.len() == 15 && weights.iter().all(|&w| w == 8),
        format!("m=4 even weights {weights:?}"),
    )?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("d(4,3)=7, d(6,3)={d6}, even subcode weights all 8"))
}

/// Dense integer inner product, independent of the bit-plane kernel.
fn dense_inner(m: &SensingMatrix, a: usize, b: usize) -> i64 {
    let (x, y) = (m.column_trits(a), m.column_trits(b));
    x.iter()
        .zip(&y)
        .map(|(p, q)| (*p as i64) * (*q as i64))
        .sum()
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let m4 = pm1(4, 3);
    for a in 0..16 {
        for b in 0..16 {
            if a != b && dense_inner(&m4, a, b) != -1 {
                failures.push(format!(
                    "m=4 Gram entry ({a},{b}) is {}/15",
                    dense_inner(&m4, a, b)
                ));
            }
        }
    }
    let c4 = coherence(&m4, CoherenceMode::Full).unwrap().coherence;
    if !c4.equals(1, 15) {
        failures.push(format!("m=4 coherence {c4}"));
    }
    let c6 = coherence(&pm1(6, 3), CoherenceMode::Full)
        .unwrap()
        .coherence;
    if !c6.equals(1, 9) {
        failures.push(format!("m=6 coherence is {c6}, expected 1/9"));
    }
    let c8 = coherence(
        &pm1(8, 3),
        CoherenceMode::Sampled {
            pairs: 100_000,
            seed: 5,
        },
    )
    .unwrap()
    .coherence;
    if !c8.at_most(31, 255) {
        failures.push(format!("m=8 sampled coherence {c8} > 31/255"));
    }
    if failures.is_empty() {
        Ok(format!("m=4 {c4}, m=6 {c6}, m=8 sampled {c8}"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let m = pm1(6, 3);
    let g = gershgorin_check(&m, 5, 1000, 6, 1.0 / 9.0).map_err(|e| e.to_string())?;
    check(
        (g.delta - 4.0 / 9.0).abs() < 1e-15,
        format!("delta_5 = {}", g.delta),
    )?;
    check(
        g.passed(1e-9),
        format!(
            "eigenvalues [{}, {}] leave [1-4/9, 1+4/9]",
            g.min_eigenvalue, g.max_eigenvalue
        ),
    )?;
    Ok(format!(
        "1000 subsets, eigenvalues in [{:.6}, {:.6}]",
        g.min_eigenvalue, g.max_eigenvalue
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let m = pm1(6, 3);
    let engine = CorrelationEngine::new(&m, Backend::Naive).unwrap();
    let mut exact = 0;
    let mut worst = 0.0f64;
    let mut pure_ok = 0;
    for t in 0..200u64 {
        let (support, s) = random_sparse_signal(m.cols(), 4, 7000 + t).unwrap();
        let y = m.mul_vec(&s).unwrap();
        let ls = mp_recover_with(&engine, &y, &MpParams::for_sparsity(4)).unwrap();
        if ls.support == support && ls.final_residual() < 1e-9 {
            exact += 1;
        }
        worst = worst.max(ls.final_residual());
        let pure = MpParams {
            mode: MpMode::PureMp,
            ..MpParams::for_sparsity(4)
        };
        let p = mp_recover_with(&engine, &y, &pure).unwrap();
        if p.selected.iter().all(|j| support.contains(j)) {
            pure_ok += 1;
        }
    }
    check(
        exact == 200,
        format!("ls_refine exact in {exact}/200, worst residual {worst:.2e}"),
    )?;
    check(
        pure_ok == 200,
        format!("pure_mp stayed in support in {pure_ok}/200"),
    )?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "200/200 exact, worst residual {worst:.2e}, pure_mp in-support 200/200"
    ))
}

fn criterion_8() -> Outcome {
    let m = pm1(6, 3);
    let engine = orbit_spectra(&m).unwrap();
    let mut rng = Pcg64::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let r: Vec<f64> = (0..m.rows()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (mut cn, mut cd) = (0, 0);
        let naive = correlate_naive(&m, &r, &mut cn).unwrap();
        let dft = correlate_dft(&engine, &r, &mut cd).unwrap();
        for (a, b) in naive.iter().zip(&dft) {
            worst = worst.max((a - b).abs());
        }
        check(cd < cn, format!("mult_count dft {cd} >= naive {cn}"))?;
    }
    check(worst < 1e-9, format!("max |dft - naive| = {worst:.2e}"))?;
    let (mut cn, mut cd) = (0, 0);
    let r = vec![1.0; m.rows()];
    correlate_naive(&m, &r, &mut cn).unwrap();
    correlate_dft(&engine, &r, &mut cd).unwrap();
    Ok(format!(
        "max diff {worst:.2e}, mult per pass dft {cd} < naive {cn}"
    ))
}

fn criterion_9() -> Outcome {
    let m = build_devore(&DevoreSpec::new(7, 2).unwrap()).unwrap();
    check(m.rows() == 49 && m.cols() == 343, "shape")?;
    for c in 0..m.cols() {
        let w = m.column_trits(c).iter().filter(|&&v| v != 0).count();
        check(w == 7, format!("column {c} weight {w}"))?;
    }
    let mut max = 0;
    for a in 0..m.cols() {
        for b in a + 1..m.cols() {
            max = max.max(dense_inner(&m, a, b));
        }
    }
    check(max <= 2, format!("max overlap {max}"))?;
    Ok(format!("343 columns of weight 7, max overlap {max}"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let small = build_ternary(2, 2).map_err(|e| e.to_string())?;
    check(small.rows() == 9 && small.cols() == 36, "p=3 shape")?;
    for c in 0..small.cols() {
        let n: f64 = small.column(c).iter().map(|v| v * v).sum();
        check((n - 1.0).abs() <= 1e-12, format!("column {c} norm^2 {n}"))?;
    }
    let cs = coherence(&small, CoherenceMode::Full).unwrap().coherence;
    check(cs.below(1, 1), format!("p=3 coherence {cs}"))?;
    let big = build_ternary(3, 3).map_err(|e| e.to_string())?;
    check(big.rows() == 49 && big.cols() == 2744, "p=7 shape")?;
    let cb = coherence(&big, CoherenceMode::Full).unwrap().coherence;
    check(cb.below(1, 2), format!("p=7 coherence {cb}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("9x36 coherence {cs}; 49x2744 coherence {cb}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "parity-check polynomial table", criterion_1),
        (2, "counting oracle equivalence", criterion_2),
        (3, "growth-root bound", criterion_3),
        (4, "minimum distance", criterion_4),
        (5, "coherence exactness", criterion_5),
        (6, "Gershgorin eigenvalue check", criterion_6),
        (7, "exact recovery", criterion_7),
        (8, "backend equivalence and cost", criterion_8),
        (9, "DeVore construction", criterion_9),
        (10, "ternary combination", criterion_10),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}) [{t:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}) [{t:.2?}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
