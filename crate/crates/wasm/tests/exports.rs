use bch_sensing_wasm::{degree_grid_json, pm1_matrix_json, recover_demo_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn degree_grid_rows() {
    let v = parse(&degree_grid_json(10).unwrap());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let m4 = &rows[2];
    assert_eq!(m4["mtilde"], 4);
    assert_eq!(m4["degrees"][2], "5");
    assert_eq!(rows[8]["degrees"][2], "26");
    assert!(degree_grid_json(1).is_err());
}

#[test]
fn pm1_matrix_payload() {
    let v = parse(&pm1_matrix_json(4, 3).unwrap());
    assert_eq!(v["rows"], 15);
    assert_eq!(v["cols"], 16);
    assert_eq!(v["coherence"], "1/15");
    assert_eq!(v["entries"].as_array().unwrap().len(), 15);
    assert_eq!(v["entries"][0].as_array().unwrap().len(), 16);
    let mut sizes: Vec<u64> = v["orbit_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 15]);
    assert!(pm1_matrix_json(9, 3).is_err());
    assert!(pm1_matrix_json(4, 5).is_err());
}

#[test]
fn recover_demo_is_exact_and_seeded() {
    let a = recover_demo_json(6, 3, 4, 7, false).unwrap();
    let v = parse(&a);
    assert_eq!(v["exact"], true);
    assert_eq!(v["true_support"], v["recovered_support"]);
    assert_eq!(a, recover_demo_json(6, 3, 4, 7, false).unwrap());
    assert!(recover_demo_json(3, 3, 9, 0, true).is_err());
}
