//! Instance matrix: TOML file shipped with the crate, overridable per run.

use serde::Deserialize;

use quotcodes::curve::{Curve, CurvePoint};
use quotcodes::gf::Fe;
use quotcodes::rrspace::EffectiveDivisor;

use crate::VerifyError;

pub const DEFAULT_INSTANCES: &str = include_str!("../instances.toml");

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Settings {
    pub seed: u64,
    pub lemma23_curves: Vec<(u32, u32)>,
    pub lemma23_schemes: usize,
    pub remark64_curves: Vec<(u32, u32)>,
    pub remark64_points: usize,
    pub goppa_curves: Vec<(u32, u32)>,
    pub goppa_divisors: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct CurveInstance {
    pub q: u32,
    pub m: u32,
    #[serde(default)]
    pub d: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct SchemeInstance {
    pub q: u32,
    pub m: u32,
    pub d: Vec<u32>,
    #[serde(rename = "E", default)]
    pub e: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct OnePointInstance {
    pub q: u32,
    pub m: u32,
    pub r: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct TwoPointInstance {
    pub q: u32,
    pub m: u32,
    pub a: u32,
    pub b: u32,
    #[serde(rename = "P")]
    pub p: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Config {
    pub settings: Settings,
    #[serde(default)]
    pub curve: Vec<CurveInstance>,
    #[serde(default)]
    pub scheme: Vec<SchemeInstance>,
    #[serde(default)]
    pub one_point: Vec<OnePointInstance>,
    #[serde(default)]
    pub two_point: Vec<TwoPointInstance>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, VerifyError> {
        toml::from_str(text).map_err(|e| VerifyError::Config(e.to_string()))
    }

    pub fn default_matrix() -> Config {
        Config::parse(DEFAULT_INSTANCES).expect("shipped instance file parses")
    }
}

/// Named points: "origin", "generic", "generic#k", or anything the curve
/// parser accepts.
pub fn resolve_point(curve: &Curve, s: &str) -> Result<CurvePoint, VerifyError> {
    let t = s.trim();
    if t == "origin" {
        return Ok(curve.origin());
    }
    if let Some(rest) = t.strip_prefix("generic") {
        let k: usize = match rest.strip_prefix('#') {
            Some(n) => n.parse().map_err(|_| VerifyError::Usage(format!("bad point name {s:?}")))?,
            None if rest.is_empty() => 0,
            None => return Err(VerifyError::Usage(format!("bad point name {s:?}"))),
        };
        return curve
            .affine_points()
            .iter()
            .filter(|p| p.coords().is_some_and(|(x, _)| x != Fe::ZERO))
            .nth(k)
            .copied()
            .ok_or_else(|| VerifyError::Usage(format!("no point {s:?}")));
    }
    Ok(curve.parse_point(t)?)
}

/// "point:mult" entries separated by ';' (or given as a list).
pub fn parse_divisor(curve: &Curve, entries: &[String]) -> Result<EffectiveDivisor, VerifyError> {
    let mut e = EffectiveDivisor::zero();
    for entry in entries.iter().flat_map(|s| s.split(';')).map(str::trim).filter(|s| !s.is_empty()) {
        let (pt, mult) = match entry.rsplit_once(':') {
            Some((p, m)) => match m.trim().parse::<u32>() {
                Ok(m) => (p, m),
                Err(_) => return Err(VerifyError::Usage(format!("bad multiplicity in {entry:?}"))),
            },
            None => (entry, 1),
        };
        e.add(resolve_point(curve, pt)?, mult);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotcodes::curve::build_curve;

    #[test]
    fn shipped_matrix() {
        let c = Config::default_matrix();
        let pairs: Vec<(u32, u32)> = c.curve.iter().map(|i| (i.q, i.m)).collect();
        assert_eq!(
            pairs,
            [(3, 2), (5, 2), (5, 3), (7, 2), (7, 4), (8, 3), (9, 5), (11, 2), (11, 3), (11, 4), (11, 6), (13, 7)]
        );
        for i in &c.curve {
            assert_eq!((i.q + 1) % i.m, 0);
        }
    }

    #[test]
    fn divisor_syntax() {
        let c = build_curve(7, 4).unwrap();
        let e = parse_divisor(&c, &["origin:2; generic ;Pinf:1".to_string()]).unwrap();
        assert_eq!(e.degree(), 4);
        assert_eq!(e.mult(&c.origin()), 2);
        assert_eq!(e.at_infinity(), 1);
        let g = resolve_point(&c, "generic").unwrap();
        let text = format!("{g}:3");
        assert_eq!(parse_divisor(&c, &[text]).unwrap().mult(&g), 3);
        assert_eq!(resolve_point(&c, &g.to_string()).unwrap(), g);
        assert!(resolve_point(&c, "generic#9999").is_err());
    }
}
