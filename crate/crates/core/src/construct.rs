//! The code families: uncomplete `B(d,-E)`, complete `C(d,-E)`, one-point and
//! two-point codes, and the divisor-equivalence reductions between them.

use std::fmt;

use thiserror::Error;

use crate::codes::{dual, evaluate_space, CodeError, LinearCode};
use crate::curve::{Curve, CurveError, CurvePoint};
use crate::gf::Fe;
use crate::linalg::kernel;
use crate::planegeom::{plane_monomials, scheme_conditions, PlaneScheme};
use crate::poly::BiPoly;
use crate::rrspace::{equivalence_function, rr_subspace, EffectiveDivisor, RrError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, ConstructError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Uncomplete { d: u32, e: PlaneScheme },
    Complete { d: u32, e: EffectiveDivisor },
    OnePoint { r: u32 },
    TwoPoint { a: u32, b: u32, p: CurvePoint },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Uncomplete { .. } => "uncomplete",
            Family::Complete { .. } => "complete",
            Family::OnePoint { .. } => "one-point",
            Family::TwoPoint { .. } => "two-point",
        }
    }
}

/// A code family instance with its evaluation set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub q: u32,
    pub m: u32,
    pub family: Family,
    pub points: Vec<CurvePoint>,
}

impl CodeSpec {
    pub fn new(curve: &Curve, family: Family) -> Self {
        let exclude: Vec<CurvePoint> = match &family {
            Family::Uncomplete { e, .. } => e.reduced_support(),
            Family::Complete { e, .. } => e.iter().map(|(p, _)| p).collect(),
            Family::OnePoint { .. } => Vec::new(),
            Family::TwoPoint { b: 0, .. } => Vec::new(),
            Family::TwoPoint { p, .. } => vec![*p],
        };
        CodeSpec { q: curve.q(), m: curve.m(), points: evaluation_set(curve, &exclude), family }
    }

    pub fn build(&self, curve: &Curve) -> Result<LinearCode> {
        match &self.family {
            Family::Uncomplete { d, e } => build_uncomplete(curve, *d, e),
            Family::Complete { d, e } => build_complete(curve, *d, e),
            Family::OnePoint { r } => build_one_point(curve, *r),
            Family::TwoPoint { a, b, p } => Ok(build_two_point(curve, *a, *b, p)?.0),
        }
    }
}

/// Affine points outside `exclude`, canonical order.
pub fn evaluation_set(curve: &Curve, exclude: &[CurvePoint]) -> Vec<CurvePoint> {
    curve.affine_points().iter().filter(|p| !exclude.contains(p)).copied().collect()
}

/// Basis of the degree-`d` plane forms vanishing on `E`, affine chart.
pub fn plane_form_space(curve: &Curve, d: u32, e: &PlaneScheme) -> Result<Vec<BiPoly>> {
    e.validate(curve)?;
    let f = curve.field();
    let monos = plane_monomials(d);
    let cond = scheme_conditions(curve, e, d)?;
    let basis = if cond.rows() == 0 {
        crate::linalg::Matrix::identity(monos.len())
    } else {
        kernel(f, &cond)
    };
    if basis.rows() == 0 {
        return Err(ConstructError::Invalid(format!("no degree-{d} form vanishes on {e}")));
    }
    Ok((0..basis.rows())
        .map(|r| {
            BiPoly::from_terms(f, monos.iter().zip(basis.row(r)).map(|(mo, &c)| ((mo.i, mo.j), c)))
        })
        .collect())
}

pub fn build_uncomplete(curve: &Curve, d: u32, e: &PlaneScheme) -> Result<LinearCode> {
    if d == 0 {
        return Err(ConstructError::Invalid("d must be positive".into()));
    }
    let funcs = plane_form_space(curve, d, e)?;
    Ok(evaluate_space(curve, &funcs, &evaluation_set(curve, &e.reduced_support()))?)
}

/// `L(dq Q∞ - E)` on the affine points outside `supp E`. A multiplicity at
/// `P∞` lowers the pole order.
pub fn build_complete(curve: &Curve, d: u32, e: &EffectiveDivisor) -> Result<LinearCode> {
    if d == 0 {
        return Err(ConstructError::Invalid("d must be positive".into()));
    }
    let space = rr_subspace(curve, (d * curve.q()) as i64, e)?;
    if space.dim() == 0 {
        return Err(ConstructError::Invalid(format!("L({}Qinf - {e}) is zero", d * curve.q())));
    }
    let exclude: Vec<CurvePoint> = e.iter().map(|(p, _)| p).collect();
    let funcs = space.polys(curve.field());
    Ok(evaluate_space(curve, &funcs, &evaluation_set(curve, &exclude))?)
}

pub fn build_one_point(curve: &Curve, r: u32) -> Result<LinearCode> {
    let space = rr_subspace(curve, r as i64, &EffectiveDivisor::zero())?;
    Ok(evaluate_space(curve, &space.polys(curve.field()), curve.affine_points())?)
}

/// `C = x · D` with the functions whose divisors justify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryWitness {
    pub scaling: Vec<Fe>,
    pub source: String,
    pub target: String,
    pub functions: Vec<BiPoly>,
}

impl IsometryWitness {
    fn identity(n: usize, source: String, target: String) -> Self {
        IsometryWitness { scaling: vec![Fe::ONE; n], source, target, functions: Vec::new() }
    }
}

/// A function with divisor `T P - T Q∞` for some `T >= b`: a power of `y` at
/// the origin, otherwise the equivalence function with the least `t`.
fn twist_function(curve: &Curve, p: &CurvePoint, b: u32) -> Result<(BiPoly, u32)> {
    if *p == curve.origin() {
        let s = b.div_ceil(curve.m()).max(1);
        Ok((BiPoly::y().pow(curve.field(), s), s * curve.m()))
    } else {
        let t = b.div_ceil(curve.q() + 1).max(1);
        Ok((equivalence_function(curve, p, t)?, t * (curve.q() + 1)))
    }
}

/// Values `h(P_i)^{-1}`; `h` must not vanish on `points`.
fn inverse_values(curve: &Curve, h: &BiPoly, points: &[CurvePoint]) -> Result<Vec<Fe>> {
    let f = curve.field();
    points
        .iter()
        .map(|p| {
            let (x, y) = p.coords().unwrap();
            f.inv(h.eval(f, x, y))
                .map_err(|_| ConstructError::Invalid(format!("twisting function vanishes at {p}")))
        })
        .collect()
}

/// `C(a, b, P)`: `L(aP∞ + bP)` on the affine points other than `P`, realized
/// as `{f/h : f ∈ L((a+T)Q∞ - (T-b)P)}` with `div h = TP - TQ∞`. The witness
/// records `C(a,b,P) = x · F` where `F` evaluates the numerators.
pub fn build_two_point(
    curve: &Curve,
    a: u32,
    b: u32,
    p: &CurvePoint,
) -> Result<(LinearCode, IsometryWitness)> {
    if a + b == 0 {
        return Err(ConstructError::Invalid("a + b must be positive".into()));
    }
    if p.is_infinity() || !curve.contains(p) {
        return Err(CurveError::BadPoint(p.to_string()).into());
    }
    if b == 0 {
        let code = build_one_point(curve, a)?;
        let n = code.n();
        return Ok((code, IsometryWitness::identity(n, format!("L({a}Qinf)"), format!("L({a}Qinf)"))));
    }
    let (h, big_t) = twist_function(curve, p, b)?;
    twisted(curve, a, b, p, h, big_t)
}

/// `C(a, b, P)` twisted by the equivalence function with divisor
/// `t(q+1)P - t(q+1)Q∞`; needs `t(q+1) >= b > 0`.
pub fn build_two_point_with_twist(
    curve: &Curve,
    a: u32,
    b: u32,
    p: &CurvePoint,
    t: u32,
) -> Result<(LinearCode, IsometryWitness)> {
    let big_t = t * (curve.q() + 1);
    if b == 0 || big_t < b || p.is_infinity() || !curve.contains(p) {
        return Err(ConstructError::Invalid(format!("twist {t} does not cover {b}P")));
    }
    let h = equivalence_function(curve, p, t)?;
    twisted(curve, a, b, p, h, big_t)
}

fn twisted(
    curve: &Curve,
    a: u32,
    b: u32,
    p: &CurvePoint,
    h: BiPoly,
    big_t: u32,
) -> Result<(LinearCode, IsometryWitness)> {
    let points = evaluation_set(curve, &[*p]);
    let space =
        rr_subspace(curve, (a + big_t) as i64, &EffectiveDivisor::point(*p, big_t - b))?;
    let numerators = evaluate_space(curve, &space.polys(curve.field()), &points)?;
    let x = inverse_values(curve, &h, &points)?;
    let code = numerators.scaled(&x);
    let witness = IsometryWitness {
        scaling: x,
        source: format!("L({}Qinf - {}P)", a + big_t, big_t - b),
        target: format!("L({a}Pinf + {b}P)"),
        functions: vec![h],
    };
    Ok((code, witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsometryCheck {
    pub isometric: bool,
    /// `C^⊥ = x^{-1} D^⊥`, checked only when `isometric`.
    pub dual_relation: Option<bool>,
}

/// Whether `C = x · D`, and if so whether the duals satisfy the inverse
/// relation.
pub fn strong_isometry_check(c: &LinearCode, d: &LinearCode, x: &[Fe]) -> Result<IsometryCheck> {
    if c.n() != d.n() || x.len() != c.n() {
        return Err(ConstructError::Invalid("length mismatch".into()));
    }
    if c.labels() != d.labels() {
        return Err(ConstructError::Invalid("codes use different evaluation points".into()));
    }
    if x.iter().any(|e| e.is_zero()) {
        return Err(ConstructError::Invalid("scaling vector has a zero entry".into()));
    }
    let isometric = c.same_code(&d.scaled(x));
    let dual_relation = isometric.then(|| {
        let f = c.field();
        let inv: Vec<Fe> = x.iter().map(|&e| f.inv(e).unwrap()).collect();
        dual(c).same_code(&dual(d).scaled(&inv))
    });
    Ok(IsometryCheck { isometric, dual_relation })
}

/// One reading of `r` against multiples of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePointReading {
    /// `"dq+e"` or `"dq-e"`.
    pub label: &'static str,
    pub d: u32,
    pub e: u32,
    /// Pole order of `L(dq Q∞ - e Q∞)`, the space of `C(d, -eP∞)`.
    pub candidate_pole_order: u32,
    pub code_dim: usize,
    pub candidate_dim: usize,
    pub isometric: bool,
}

/// Compares `C_r` with `C(d, -eP∞)` for `r = dq + e` and for
/// `r = d'q - e'`. Both codes live on all affine points, so the identity
/// scaling is the only candidate; any strong isometry preserves dimension.
pub fn one_point_reduction(curve: &Curve, r: u32) -> Result<Vec<OnePointReading>> {
    let q = curve.q();
    let code = build_one_point(curve, r)?;
    let ones = vec![Fe::ONE; code.n()];
    let mut out = Vec::new();
    for (label, d, e) in [("dq+e", r / q, r % q), ("dq-e", r.div_ceil(q), r.div_ceil(q) * q - r)] {
        if d == 0 {
            continue;
        }
        let cand = build_complete(curve, d, &EffectiveDivisor::point(CurvePoint::Infinity, e))?;
        let check = strong_isometry_check(&code, &cand, &ones)?;
        out.push(OnePointReading {
            label,
            d,
            e,
            candidate_pole_order: d * q - e,
            code_dim: code.k(),
            candidate_dim: cand.k(),
            isometric: check.isometric && check.dual_relation == Some(true),
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TwoPointCase {
    A,
    B,
    C,
}

impl fmt::Display for TwoPointCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoPointCase::A => "A",
            TwoPointCase::B => "B",
            TwoPointCase::C => "C",
        })
    }
}

pub fn two_point_case(curve: &Curve, a: u32, p: &CurvePoint) -> TwoPointCase {
    match (a == 0, *p == curve.origin()) {
        (true, true) => TwoPointCase::A,
        (true, false) | (false, true) => TwoPointCase::B,
        (false, false) => TwoPointCase::C,
    }
}

/// `aP∞ + bP ~ dqP∞ - a'P∞ - b'P` with the twisting function realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPointReduction {
    pub d: u32,
    pub a_prime: u32,
    pub b_prime: u32,
    /// `b + b'`, the order of the twisting function at `P`.
    pub twist_order: u32,
    pub case: TwoPointCase,
    pub witness: IsometryWitness,
    pub check: IsometryCheck,
    pub two_point: LinearCode,
    pub target: LinearCode,
}

impl TwoPointReduction {
    pub fn target_divisor(&self, p: &CurvePoint) -> EffectiveDivisor {
        EffectiveDivisor::from_pairs([(CurvePoint::Infinity, self.a_prime), (*p, self.b_prime)])
    }
}

/// The first `(d, b', a')` in increasing order with `d <= m-2`,
/// `1 <= b'`, `a' + b' <= d - 1`, `b + b' = dq - a' - a`, and `b + b'` a
/// multiple of `q + 1` (of `m` at the origin, where `y` has divisor
/// `mP_0 - mQ∞`).
pub fn admissible_triple(curve: &Curve, a: u32, b: u32, p: &CurvePoint) -> Option<(u32, u32, u32)> {
    let (q, m) = (curve.q(), curve.m());
    let step = if *p == curve.origin() { m } else { q + 1 };
    for d in 1..=m.saturating_sub(2) {
        for b2 in 1..d {
            for a2 in 0..d - b2 {
                let total = b + b2;
                if (d * q) as i64 - a2 as i64 - a as i64 == total as i64 && total % step == 0 {
                    return Some((d, a2, b2));
                }
            }
        }
    }
    None
}

/// Finds an admissible triple and verifies `C(a,b,P) = x · C(d, -E)` with
/// `E = a'P∞ + b'P` and `x_i = h(P_i)^{-1}`.
pub fn two_point_reduction(
    curve: &Curve,
    a: u32,
    b: u32,
    p: &CurvePoint,
) -> Result<Option<TwoPointReduction>> {
    let Some((d, a2, b2)) = admissible_triple(curve, a, b, p) else { return Ok(None) };
    let (two_point, _) = build_two_point(curve, a, b, p)?;
    let total = b + b2;
    let h = if *p == curve.origin() {
        BiPoly::y().pow(curve.field(), total / curve.m())
    } else {
        equivalence_function(curve, p, total / (curve.q() + 1))?
    };
    let e = EffectiveDivisor::from_pairs([(CurvePoint::Infinity, a2), (*p, b2)]);
    let points = evaluation_set(curve, &[*p]);
    let space = rr_subspace(curve, (d * curve.q()) as i64, &e)?;
    let target = evaluate_space(curve, &space.polys(curve.field()), &points)?;
    let x = inverse_values(curve, &h, &points)?;
    let check = strong_isometry_check(&two_point, &target, &x)?;
    let witness = IsometryWitness {
        scaling: x,
        source: format!("C({d}, -({a2}Pinf + {b2}P))"),
        target: format!("C({a}, {b}, P)"),
        functions: vec![h],
    };
    Ok(Some(TwoPointReduction {
        d,
        a_prime: a2,
        b_prime: b2,
        twist_order: total,
        case: two_point_case(curve, a, p),
        witness,
        check,
        two_point,
        target,
    }))
}

/// `D = a P∞ + sum b_i P_i` rewritten as `dqP∞ - E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoppaReduction {
    pub d: u32,
    pub e: EffectiveDivisor,
    pub twists: Vec<(CurvePoint, u32)>,
    pub code: LinearCode,
    /// Both twist choices give the same code and the scaling is a strong
    /// isometry onto `C(d, -E)`.
    pub verified: bool,
    pub failure: Option<String>,
}

impl GoppaReduction {
    /// `deg E <= d - 1` and `d <= m - 2`.
    pub fn theorem_applies(&self, m: u32) -> bool {
        self.e.degree() < self.d && self.d + 2 <= m
    }
}

/// Twists every affine `P_i` by `t_i(q+1)` with `t_i` least such that
/// `t_i(q+1) >= b_i`, then rounds the pole order up to a multiple of `q`.
fn goppa_twist(
    curve: &Curve,
    a_inf: u32,
    affine: &EffectiveDivisor,
    extra: u32,
) -> Result<(u32, EffectiveDivisor, Vec<(CurvePoint, u32)>, BiPoly)> {
    let (q, f) = (curve.q(), curve.field());
    let mut r = a_inf;
    let mut e = EffectiveDivisor::zero();
    let mut twists = Vec::new();
    let mut h = BiPoly::constant(Fe::ONE);
    for (p, b) in affine.iter() {
        let t = b.div_ceil(q + 1) + extra;
        let hp = equivalence_function(curve, &p, t)?;
        h = h.mul(f, &hp).reduce_mod_curve(f, q, curve.m());
        r += t * (q + 1);
        e.add(p, t * (q + 1) - b);
        twists.push((p, t));
    }
    let d = r.div_ceil(q).max(1);
    e.add(CurvePoint::Infinity, d * q - r);
    Ok((d, e, twists, h))
}

pub fn goppa_reduction(curve: &Curve, a_inf: u32, affine: &EffectiveDivisor) -> Result<GoppaReduction> {
    if affine.at_infinity() > 0 {
        return Err(ConstructError::Invalid("pass the P∞ coefficient separately".into()));
    }
    affine.validate(curve)?;
    let support: Vec<CurvePoint> = affine.iter().map(|(p, _)| p).collect();
    let points = evaluation_set(curve, &support);
    let realize = |extra: u32| -> Result<(u32, EffectiveDivisor, Vec<(CurvePoint, u32)>, LinearCode, LinearCode, Vec<Fe>)> {
        let (d, e, twists, h) = goppa_twist(curve, a_inf, affine, extra)?;
        let space = rr_subspace(curve, (d * curve.q()) as i64, &e)?;
        let target = evaluate_space(curve, &space.polys(curve.field()), &points)?;
        let x = inverse_values(curve, &h, &points)?;
        Ok((d, e, twists, target.scaled(&x), target, x))
    };
    let (d, e, twists, code, target, x) = realize(0)?;
    let (_, _, _, other, _, _) = realize(1)?;
    let check = strong_isometry_check(&code, &target, &x)?;
    let mut failure = None;
    if !code.same_code(&other) {
        failure = Some("twist choices disagree".to_string());
    } else if !(check.isometric && check.dual_relation == Some(true)) {
        failure = Some("scaling is not a strong isometry".to_string());
    }
    Ok(GoppaReduction { d, e, twists, code, verified: failure.is_none(), failure })
}

/// Point maps `(x, y) -> (λx, λ^m y + β)` with `λ^(m(q-1)) = 1` and
/// `β^q + β = 0`; they fix P∞ and preserve every pole order.
fn point_symmetries(curve: &Curve) -> Vec<(Fe, Fe)> {
    let f = curve.field();
    let q = curve.q();
    let lam = f.pow(f.generator(), ((q + 1) / curve.m()) as u64);
    let mut gens = vec![(lam, Fe::ZERO)];
    for b in f.elements() {
        if !b.is_zero() && f.add(f.pow(b, q as u64), b).is_zero() {
            gens.push((Fe::ONE, b));
        }
    }
    gens
}

fn apply_symmetry(curve: &Curve, g: (Fe, Fe), p: &CurvePoint) -> CurvePoint {
    let f = curve.field();
    match p.coords() {
        None => CurvePoint::Infinity,
        Some((x, y)) => {
            let lm = f.pow(g.0, curve.m() as u64);
            CurvePoint::Affine { x: f.mul(g.0, x), y: f.add(f.mul(lm, y), g.1) }
        }
    }
}

/// Column orbits under the point symmetries, when the code is checked to be
/// invariant under each generator. Orbits are sorted, representative first.
pub fn symmetry_orbits(curve: &Curve, code: &LinearCode) -> Option<Vec<Vec<usize>>> {
    let labels = code.labels();
    let index = |p: &CurvePoint| labels.binary_search(p).ok();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn root(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for g in point_symmetries(curve) {
        let perm: Vec<usize> = labels.iter().map(|p| index(&apply_symmetry(curve, g, p))).collect::<Option<_>>()?;
        let moved = code.generator().select_columns(&perm);
        let image = LinearCode::new(code.field_arc(), moved, labels.to_vec()).ok()?;
        if !image.same_code(code) {
            return None;
        }
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut orbits: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..labels.len() {
        let r = root(&mut parent, i);
        orbits.entry(r).or_default().push(i);
    }
    Some(orbits.into_values().collect())
}
