use std::sync::Arc;

use proptest::prelude::*;
use quotcodes::codes::*;
use quotcodes::curve::build_curve;
use quotcodes::gf::Fe;
use quotcodes::linalg::{mul_transpose, Matrix};

fn random_code(seed: &[u32], k: usize, n: usize) -> Option<LinearCode> {
    let c = build_curve(3, 2).unwrap();
    let f = c.field_arc();
    let order = f.order();
    let rows: Vec<Vec<Fe>> = (0..k)
        .map(|r| (0..n).map(|i| f.from_vector_code(seed[(r * n + i) % seed.len()] % order)).collect())
        .collect();
    let labels = c.affine_points()[..n].to_vec();
    LinearCode::new(Arc::clone(&f), Matrix::from_rows(rows, n), labels).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_orthogonal_and_complementary(seed in prop::collection::vec(0u32..9, 40), k in 1usize..4) {
        if let Some(code) = random_code(&seed, k, 9) {
            let d = dual(&code);
            prop_assert_eq!(d.k() + code.k(), code.n());
            prop_assert!(mul_transpose(code.field(), code.generator(), d.generator()).is_zero());
            prop_assert!(dual(&d).same_code(&code));
        }
    }

    #[test]
    fn dual_distance_is_least_dual_weight(seed in prop::collection::vec(0u32..9, 40), k in 1usize..4) {
        if let Some(code) = random_code(&seed, k, 8) {
            let dd = dual_min_distance(&code, 8, DEFAULT_BUDGET);
            let least = (1..=8).find(|&w| brute_force_weight_count(&code, w) > 0);
            prop_assert_eq!(dd.exact(), least);
            if let DualDistance::Exact { d, witness } = dd {
                prop_assert!(verify_circuit(&code, &witness));
                let (circuits, _) = enumerate_circuits(&code, d, DEFAULT_BUDGET).unwrap();
                prop_assert_eq!(min_weight_codeword_count(&code, &circuits), brute_force_weight_count(&code, d));
            }
        }
    }

    #[test]
    fn scaling_round_trips(seed in prop::collection::vec(0u32..9, 40), logs in prop::collection::vec(0u64..8, 9)) {
        if let Some(code) = random_code(&seed, 3, 9) {
            let f = code.field();
            let x: Vec<Fe> = logs.iter().map(|&l| f.from_log(l)).collect();
            let inv: Vec<Fe> = x.iter().map(|&e| f.inv(e).unwrap()).collect();
            prop_assert!(code.scaled(&x).scaled(&inv).same_code(&code));
            prop_assert_eq!(
                dual_min_distance(&code.scaled(&x), 9, DEFAULT_BUDGET).exact(),
                dual_min_distance(&code, 9, DEFAULT_BUDGET).exact()
            );
        }
    }
}

#[test]
fn generator_yields_codes() {
    let seed: Vec<u32> = (0..40).map(|i| (i * 7 + 3) % 9).collect();
    let code = random_code(&seed, 3, 8).expect("valid code");
    assert_eq!(code.n(), 8);
    assert!(code.k() >= 1);
}
