//! Reproductions of the two worked examples.

use serde_json::json;

use quotcodes::codes::{circuit_of, enumerate_circuits};
use quotcodes::construct::build_complete;
use quotcodes::curve::{build_curve, CurvePoint};
use quotcodes::planegeom::{support_geometry, ProjLine, SupportGeometry};
use quotcodes::rrspace::EffectiveDivisor;

use crate::engine::*;
use crate::report::{InstanceSpec, Verdict, VerificationReport};
use crate::{Result, VerifyError};

pub const EXAMPLES: &[&str] = &["example-4.2", "example-4.6"];

pub fn run_example(id: &str, ctx: &Ctx) -> Result<Vec<VerificationReport>> {
    match id {
        "example-4.2" => example_42(ctx),
        "example-4.6" => example_46(ctx),
        _ => Err(VerifyError::Usage(format!("unknown example {id:?}; known: {}", EXAMPLES.join(", ")))),
    }
}

fn rep(claim: &str, spec: &InstanceSpec, claimed: &str, computed: String, ok: bool, w: serde_json::Value) -> VerificationReport {
    VerificationReport {
        suite: "repro".into(),
        claim: claim.into(),
        instance: spec.clone(),
        claimed: claimed.into(),
        computed,
        verdict: Verdict::from_bool(ok),
        runtime_ms: None,
        witness: w,
    }
}

fn spec(q: u32, m: u32, d: u32) -> InstanceSpec {
    InstanceSpec { family: Some("complete".into()), d: Some(d), e: Some(Vec::new()), ..InstanceSpec::curve(q, m) }
}

/// `y^5 + y = x^2` over GF(25), `d = 1`: the minimum distance is reached by
/// a support with no three collinear points.
fn example_42(ctx: &Ctx) -> Result<Vec<VerificationReport>> {
    let curve = build_curve(5, 2)?;
    let f = curve.field();
    let s = spec(5, 2, 1);
    let code = build_complete(&curve, 1, &EffectiveDivisor::zero())?;
    let dd = distance(&curve, &code, 4, ctx.budget);
    let mut out = vec![rep(
        "example-4.2:distance",
        &s,
        "4",
        distance_text(&dd),
        dd.exact() == Some(4) && witness_ok(&code, &dd),
        distance_json(&code, &dd),
    )];
    let c = census(&curve, &code, 4, ctx.budget)?;
    let general: Vec<&Vec<usize>> = c
        .circuits
        .iter()
        .map(|x| &x.support)
        .filter(|sup| {
            let pts = points_of(&code, sup);
            (0..4).all(|skip| {
                let three: Vec<CurvePoint> = (0..4).filter(|&i| i != skip).map(|i| pts[i]).collect();
                support_geometry(f, &three) == SupportGeometry::NonCollinear
            })
        })
        .collect();
    out.push(rep(
        "example-4.2:general-position",
        &s,
        "some minimum-weight support has no three collinear points",
        format!("{} of {} supports", general.len(), c.total),
        !general.is_empty(),
        json!({ "census": census_json(&code, &c), "first_general": general.first().map(|v| points_of(&code, v).iter().map(|p| p.to_string()).collect::<Vec<_>>()) }),
    ));
    // the listed points, with the field generator a root of a^2 + 4a + 2
    let gm = f.generator_conversion(&[2, 4, 1])?;
    let listed: Vec<CurvePoint> = [(Some(3), Some(11)), (Some(21), Some(22)), (Some(9), Some(23)), (None, None)]
        .iter()
        .map(|&(i, j)| {
            let e = |k: Option<u64>| k.map_or(quotcodes::gf::Fe::ZERO, |k| gm.power(k));
            CurvePoint::affine(e(i), e(j))
        })
        .collect();
    let on_curve = listed.iter().all(|p| curve.contains(p));
    let mut idx: Vec<usize> = listed.iter().filter_map(|p| code.labels().iter().position(|l| l == p)).collect();
    idx.sort_unstable();
    let circuit = (idx.len() == 4).then(|| circuit_of(&code, &idx)).flatten();
    out.push(rep(
        "example-4.2:listed-support",
        &s,
        "the four listed points form a minimum-weight support",
        format!("on curve: {on_curve}, circuit: {}", circuit.is_some()),
        on_curve && circuit.is_some(),
        json!({
            "points": listed.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "circuit": circuit.as_ref().map(|c| circuit_json(&code, c)),
        }),
    ));
    Ok(out)
}

/// `y^5 + y = x^3` over GF(25), `d = 1`: minimum-weight supports are
/// collinear but not all horizontal.
fn example_46(ctx: &Ctx) -> Result<Vec<VerificationReport>> {
    let curve = build_curve(5, 3)?;
    let f = curve.field();
    let s = spec(5, 3, 1);
    let code = build_complete(&curve, 1, &EffectiveDivisor::zero())?;
    let dd = distance(&curve, &code, 3, ctx.budget);
    let mut out = vec![rep(
        "example-4.6:distance",
        &s,
        "3",
        distance_text(&dd),
        dd.exact() == Some(3) && witness_ok(&code, &dd),
        distance_json(&code, &dd),
    )];
    let (circuits, non_minimal) = enumerate_circuits(&code, 3, ctx.budget)?;
    let c = Census { total: circuits.len() as u64, circuits, complete: true, non_minimal };
    let mut collinear = 0;
    let mut other = 0;
    for x in &c.circuits {
        match geometry(&code, &x.support) {
            SupportGeometry::NonCollinear => {}
            SupportGeometry::OtherLine(_) => {
                collinear += 1;
                other += 1
            }
            _ => collinear += 1,
        }
    }
    out.push(rep(
        "example-4.6:collinear",
        &s,
        "all minimum-weight supports are collinear, some off the horizontal lines",
        format!("{} supports, {collinear} collinear, {other} on other lines", c.total),
        collinear as u64 == c.total && other > 0,
        census_json(&code, &c),
    ));
    // y = a x through the origin, a the field generator
    let gm = f.generator_conversion(&[2, 4, 1])?;
    let a = gm.root();
    let line = ProjLine::new(f, a, f.neg(quotcodes::gf::Fe::ONE), quotcodes::gf::Fe::ZERO).expect("line");
    let on: Vec<usize> = (0..code.n()).filter(|&i| line.contains(f, &code.labels()[i])).collect();
    let hit = c.circuits.iter().find(|x| x.support.iter().all(|i| on.contains(i)));
    out.push(rep(
        "example-4.6:line",
        &s,
        "a minimum-weight support lies on y = a x",
        format!("{} curve points on the line, circuit found: {}", on.len(), hit.is_some()),
        hit.is_some(),
        json!({
            "line": line.display(f),
            "points": points_of(&code, &on).iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "circuit": hit.map(|x| circuit_json(&code, x)),
        }),
    ));
    Ok(out)
}
