//! Dual-distance and circuit computations shared by the suites, plus the
//! JSON witness payloads.

use serde_json::{json, Value};

use quotcodes::codes::{
    dual_distance_with, enumerate_circuits, horizontal_hints, orbit_circuit_census, search_cost,
    support_histogram, verify_circuit, Circuit, CodeError, DualDistance, LinearCode, SearchOptions,
};
use quotcodes::construct::symmetry_orbits;
use quotcodes::curve::{Curve, CurvePoint};
use quotcodes::gf::{Fe, Field};
use quotcodes::planegeom::{support_geometry, SupportGeometry};

/// Run-wide knobs.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub budget: f64,
    pub timings: bool,
    pub seed: u64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { budget: quotcodes::codes::DEFAULT_BUDGET, timings: false, seed: 20240517 }
    }
}

/// Dual distance up to `w_max`, using the point symmetries when the code is
/// invariant under them and horizontal fibers as candidate witnesses.
pub fn distance(curve: &Curve, code: &LinearCode, w_max: usize, budget: f64) -> DualDistance {
    let mut opts = SearchOptions::new(w_max, budget);
    opts.orbits = symmetry_orbits(curve, code);
    opts.hints = (1..=w_max).flat_map(|w| horizontal_hints(code, w)).collect();
    dual_distance_with(code, &opts)
}

/// Circuits of one size: the full sorted list when affordable, otherwise
/// orbit representatives with the exact total.
#[derive(Clone, Debug)]
pub struct Census {
    pub circuits: Vec<Circuit>,
    pub total: u64,
    pub complete: bool,
    pub non_minimal: usize,
}

pub fn census(curve: &Curve, code: &LinearCode, w: usize, budget: f64) -> Result<Census, CodeError> {
    let full = search_cost(code.n(), w);
    if full <= budget {
        let (circuits, non_minimal) = enumerate_circuits(code, w, budget)?;
        return Ok(Census { total: circuits.len() as u64, circuits, complete: true, non_minimal });
    }
    match symmetry_orbits(curve, code) {
        Some(orbits) => {
            let c = orbit_circuit_census(code, w, &orbits, budget)?;
            Ok(Census { circuits: c.representatives, total: c.total, complete: false, non_minimal: c.non_minimal })
        }
        None => Err(CodeError::Budget { w, estimate: full, budget }),
    }
}

pub fn points_of(code: &LinearCode, support: &[usize]) -> Vec<CurvePoint> {
    support.iter().map(|&i| code.labels()[i]).collect()
}

pub fn geometry(code: &LinearCode, support: &[usize]) -> SupportGeometry {
    let pts = points_of(code, support);
    if pts.len() < 2 {
        // a single point lies on its horizontal line
        let (_, y) = pts[0].coords().expect("affine");
        return if y == Fe::ZERO { SupportGeometry::L0 } else { SupportGeometry::Horizontal(y) };
    }
    support_geometry(code.field(), &pts)
}

pub fn elems(f: &Field, v: &[Fe]) -> Vec<String> {
    v.iter().map(|&e| f.fmt_elem(e)).collect()
}

pub fn circuit_json(code: &LinearCode, c: &Circuit) -> Value {
    let f = code.field();
    let g = geometry(code, &c.support);
    let mut v = json!({
        "support": c.support,
        "points": points_of(code, &c.support).iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "coeffs": elems(f, &c.coeffs),
        "geometry": g.label(),
        "rechecked": verify_circuit(code, c),
    });
    if let Some(line) = g.line(f) {
        v["line"] = json!(line.display(f));
    }
    v
}

pub fn distance_json(code: &LinearCode, dd: &DualDistance) -> Value {
    match dd {
        DualDistance::Exact { d, witness } => json!({
            "dual_distance": d,
            "circuit": circuit_json(code, witness),
            "smaller_sizes": "excluded by exhaustive search",
        }),
        DualDistance::Exceeds { w_max } => json!({ "no_dependent_set_up_to": w_max }),
        DualDistance::Skipped { lower_bound, estimate, budget } => json!({
            "excluded_below": lower_bound,
            "search_estimate": format!("{estimate:.3e}"),
            "budget": format!("{budget:.3e}"),
        }),
        DualDistance::Trivial => json!({ "dual": "zero code" }),
    }
}

pub fn distance_text(dd: &DualDistance) -> String {
    match dd {
        DualDistance::Exact { d, .. } => d.to_string(),
        DualDistance::Exceeds { w_max } => format!("> {w_max}"),
        DualDistance::Skipped { lower_bound, .. } => format!(">= {lower_bound} (search over budget)"),
        DualDistance::Trivial => "none (zero dual)".into(),
    }
}

/// An exact witness must re-validate before it backs a verdict.
pub fn witness_ok(code: &LinearCode, dd: &DualDistance) -> bool {
    match dd {
        DualDistance::Exact { witness, .. } => verify_circuit(code, witness),
        _ => true,
    }
}

pub fn census_json(code: &LinearCode, c: &Census) -> Value {
    const SHOWN: usize = 256;
    let hist = support_histogram(code, &c.circuits);
    json!({
        "circuits": c.total,
        "listing": if c.complete { "all" } else { "orbit representatives" },
        "listed": c.circuits.len(),
        "geometry": hist,
        "non_minimal_dependent_sets": c.non_minimal,
        "supports": c.circuits.iter().take(SHOWN).map(|x| x.support.clone()).collect::<Vec<_>>(),
        "supports_truncated": c.circuits.len() > SHOWN,
        "all_rechecked": c.circuits.iter().all(|x| verify_circuit(code, x)),
    })
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotcodes::construct::build_complete;
    use quotcodes::curve::build_curve;
    use quotcodes::rrspace::EffectiveDivisor;

    #[test]
    fn binomials() {
        assert_eq!(binom(176, 3), 893_200);
        assert_eq!(binom(6, 3), 20);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(9, 0), 1);
    }

    #[test]
    fn census_modes_agree() {
        // (8,3) C(1): 175 columns, so a tiny budget forces the orbit census
        let curve = build_curve(8, 3).unwrap();
        let code = build_complete(&curve, 1, &EffectiveDivisor::zero()).unwrap();
        let full = census(&curve, &code, 3, 1e9).unwrap();
        let cheap = census(&curve, &code, 3, search_cost(code.n(), 3) / 2.0).unwrap();
        assert!(full.complete && !cheap.complete);
        assert_eq!(full.total, 56);
        assert_eq!(cheap.total, 56);
        assert!(cheap.circuits.iter().all(|c| full.circuits.contains(c)));
    }

    #[test]
    fn distance_payload_rechecks() {
        let curve = build_curve(5, 3).unwrap();
        let code = build_complete(&curve, 1, &EffectiveDivisor::zero()).unwrap();
        let dd = distance(&curve, &code, 4, 1e9);
        assert_eq!(dd.exact(), Some(3));
        assert!(witness_ok(&code, &dd));
        let v = distance_json(&code, &dd);
        assert_eq!(v["circuit"]["rechecked"], true);
        assert_eq!(distance_text(&DualDistance::Exceeds { w_max: 4 }), "> 4");
    }
}
