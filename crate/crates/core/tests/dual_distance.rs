use quotcodes::codes::*;
use quotcodes::construct::*;
use quotcodes::curve::{build_curve, CurvePoint};
use quotcodes::gf::Fe;
use quotcodes::planegeom::{support_geometry, SupportGeometry};
use quotcodes::rrspace::EffectiveDivisor;

fn complete(q: u32, m: u32, d: u32) -> (quotcodes::curve::Curve, LinearCode) {
    let c = build_curve(q, m).unwrap();
    let code = build_complete(&c, d, &EffectiveDivisor::zero()).unwrap();
    (c, code)
}

fn symmetric_distance(c: &quotcodes::curve::Curve, code: &LinearCode, w_max: usize) -> DualDistance {
    let mut o = SearchOptions::new(w_max, DEFAULT_BUDGET);
    o.orbits = symmetry_orbits(c, code);
    o.hints = (1..=w_max).flat_map(|w| horizontal_hints(code, w)).collect();
    dual_distance_with(code, &o)
}

#[test]
fn distance_is_d_plus_two_when_d_at_most_m_minus_two() {
    for (q, m, d) in [(5, 3, 1), (8, 3, 1), (7, 4, 1), (7, 4, 2), (9, 5, 2), (11, 6, 2)] {
        let (c, code) = complete(q, m, d);
        let dd = symmetric_distance(&c, &code, d as usize + 3);
        let DualDistance::Exact { d: w, witness } = dd else { panic!("{q} {m} {d}: {dd:?}") };
        assert_eq!(w, d as usize + 2, "({q},{m},d={d})");
        assert!(verify_circuit(&code, &witness));
        let pts: Vec<CurvePoint> = witness.support.iter().map(|&i| code.labels()[i]).collect();
        assert_ne!(support_geometry(c.field(), &pts), SupportGeometry::NonCollinear);
    }
}

#[test]
fn small_c_example_has_four_point_circuits() {
    let (_, code) = complete(5, 2, 1);
    assert_eq!(code.k(), 4);
    assert_eq!(dual_min_distance(&code, 5, DEFAULT_BUDGET).exact(), Some(4));
}

#[test]
fn c_at_least_three_supports_are_horizontal() {
    let (c, code) = complete(8, 3, 1);
    let (circuits, extra) = enumerate_circuits(&code, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(extra, 0);
    // every 3-subset of a full horizontal fiber, and nothing else
    let full = c.horizontal_fibers().values().filter(|v| v.len() == 3).count();
    assert_eq!(full, 8 * 7);
    assert_eq!(circuits.len(), full);
    for ci in &circuits {
        assert!(verify_circuit(&code, ci));
        let pts: Vec<CurvePoint> = ci.support.iter().map(|&i| code.labels()[i]).collect();
        assert!(matches!(support_geometry(c.field(), &pts), SupportGeometry::Horizontal(_)));
    }
    assert_eq!(min_weight_codeword_count(&code, &circuits), 56 * 63);
}

#[test]
fn circuit_counts_match_exhaustive_words_on_a_prefix() {
    for (q, m, d) in [(5, 3, 1), (8, 3, 1), (5, 2, 1)] {
        let (_, code) = complete(q, m, d);
        let short = code.truncated(30);
        let dd = dual_min_distance(&short, 6, DEFAULT_BUDGET).exact().unwrap();
        let (circuits, _) = enumerate_circuits(&short, dd, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            min_weight_codeword_count(&short, &circuits),
            brute_force_weight_count(&short, dd),
            "({q},{m}) prefix"
        );
        assert_eq!(brute_force_weight_count(&short, dd - 1), 0);
    }
}

#[test]
fn c_two_has_non_horizontal_supports() {
    let (c, code) = complete(5, 3, 1);
    let (circuits, _) = enumerate_circuits(&code, 3, DEFAULT_BUDGET).unwrap();
    let h = support_histogram(&code, &circuits);
    assert!(h.get("other-line").copied().unwrap_or(0) > 0, "{h:?}");
    assert!(!h.contains_key("non-collinear"));
    let _ = c;
}

#[test]
fn point_at_horizontal_line_lowers_distance() {
    let c = build_curve(7, 4).unwrap();
    let p = *c
        .affine_points()
        .iter()
        .find(|p| p.coords().map_or(false, |(x, _)| x != Fe::ZERO))
        .unwrap();
    let code = build_complete(&c, 2, &EffectiveDivisor::point(p, 1)).unwrap();
    let dd = dual_min_distance(&code, 4, DEFAULT_BUDGET);
    assert_eq!(dd.exact(), Some(3));
    let (circuits, _) = enumerate_circuits(&code, 3, DEFAULT_BUDGET).unwrap();
    // only the rest of the fiber through P
    assert_eq!(circuits.len(), 1);
    let (_, yp) = p.coords().unwrap();
    assert!(circuits[0].support.iter().all(|&i| code.labels()[i].coords().unwrap().1 == yp));
}

#[test]
fn uncomplete_distance_bounded_by_complete() {
    for (q, m, d) in [(5, 3, 1), (5, 3, 2), (7, 4, 2), (5, 2, 1)] {
        let c = build_curve(q, m).unwrap();
        let b = build_uncomplete(&c, d, &quotcodes::planegeom::PlaneScheme::empty()).unwrap();
        let cc = build_complete(&c, d, &EffectiveDivisor::zero()).unwrap();
        assert!(b.is_subcode_of(&cc));
        let db = dual_min_distance(&b, 6, DEFAULT_BUDGET).exact().unwrap();
        let dc = dual_min_distance(&cc, 6, DEFAULT_BUDGET).exact().unwrap();
        assert!(dc >= db, "({q},{m},{d}): {dc} < {db}");
    }
}
