//! Browser bindings. Every export returns a JSON string; the `*_json`
//! functions hold the logic and run natively as well.

use bch_sensing::codes::build_code;
use bch_sensing::counting::tau;
use bch_sensing::gf2m::FieldContext;
use bch_sensing::matrices::{build_pm1, coherence, CoherenceMode};
use bch_sensing::recovery::{mp_recover, random_sparse_signal, Backend, MpMode, MpParams};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest extension degree the page may request for a full matrix.
pub const MAX_DEMO_MTILDE: u32 = 8;

/// `deg h` for every `2 <= m <= max_m` and `1 <= i <= m`.
pub fn degree_grid_json(max_m: u32) -> Result<String, String> {
    if !(2..=24).contains(&max_m) {
        return Err(format!("max_m must lie in 2..=24, got {max_m}"));
    }
    let rows: Vec<_> = (2..=max_m)
        .map(|m| {
            let degrees: Vec<String> = (1..=m).map(|i| tau(i, m as usize).to_string()).collect();
            json!({ "mtilde": m, "degrees": degrees })
        })
        .collect();
    Ok(json!({ "rows": rows }).to_string())
}

fn pm1(m_tilde: u32, i: u32) -> Result<bch_sensing::matrices::SensingMatrix, String> {
    if m_tilde > MAX_DEMO_MTILDE {
        return Err(format!(
            "mtilde above {MAX_DEMO_MTILDE} is too large for the page"
        ));
    }
    let field = FieldContext::new(m_tilde, None).map_err(|e| e.to_string())?;
    let code = build_code(&field, i).map_err(|e| e.to_string())?;
    build_pm1(&code).map_err(|e| e.to_string())
}

/// Entries (row-major, ±1), exact coherence and orbit sizes.
pub fn pm1_matrix_json(m_tilde: u32, i: u32) -> Result<String, String> {
    let m = pm1(m_tilde, i)?;
    let entries: Vec<Vec<i8>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.entry(r, c)).collect())
        .collect();
    let c = coherence(&m, CoherenceMode::Full).map_err(|e| e.to_string())?;
    let orbits: Vec<usize> = m.orbits().unwrap_or(&[]).iter().map(|o| o.size()).collect();
    Ok(json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
        "coherence": c.coherence.to_string(),
        "coherence_value": c.coherence.value(),
        "max_rip_order": c.max_rip_order,
        "orbit_sizes": orbits,
    })
    .to_string())
}

/// Recovers one seeded `k`-sparse signal and reports both vectors.
pub fn recover_demo_json(
    m_tilde: u32,
    i: u32,
    k: usize,
    seed: u64,
    pure_mp: bool,
) -> Result<String, String> {
    let m = pm1(m_tilde, i)?;
    let (support, s) = random_sparse_signal(m.cols(), k, seed).map_err(|e| e.to_string())?;
    let y = m.mul_vec(&s).map_err(|e| e.to_string())?;
    let params = MpParams {
        mode: if pure_mp {
            MpMode::PureMp
        } else {
            MpMode::LsRefine
        },
        backend: Backend::Dft,
        ..MpParams::for_sparsity(k)
    };
    let res = mp_recover(&m, &y, &params).map_err(|e| e.to_string())?;
    Ok(json!({
        "true_support": support,
        "signal": s,
        "recovered_support": res.support,
        "recovered": res.coefficients,
        "residual_history": res.residual_history,
        "exact": res.support == support,
        "mult_count": res.mult_count,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn degree_grid(max_m: u32) -> Result<String, JsError> {
    degree_grid_json(max_m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pm1_matrix(m_tilde: u32, i: u32) -> Result<String, JsError> {
    pm1_matrix_json(m_tilde, i).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn recover_demo(
    m_tilde: u32,
    i: u32,
    k: usize,
    seed: u64,
    pure_mp: bool,
) -> Result<String, JsError> {
    recover_demo_json(m_tilde, i, k, seed, pure_mp).map_err(|e| JsError::new(&e))
}
