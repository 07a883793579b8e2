//! The plane curve `Y_m : y^q + y = x^m` over GF(q^2), `m | q + 1`.
//!
//! The only point at infinity is `P∞ = (1:0:0)`; it is also the only singular
//! point and has a single branch, so rational points of the normalization
//! are identified with those of `Y_m`. At every affine point `x - x_P` is a
//! local parameter, because the `y`-derivative of the equation is `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::gf::{make_field, parse_elem, prime_power, Fe, Field, GfError};
use crate::poly::{series_add_scaled, series_mul, series_order, BiPoly, Series};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("invalid curve parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("operation needs an affine point")]
    NotAffine,
    #[error("{0} is not in the subfield GF(q)")]
    NotInSubfield(String),
    #[error("polynomial has y-degree {0}, reduce modulo the curve first")]
    Unreduced(u32),
    #[error("cannot parse point {0:?}")]
    BadPoint(String),
}

/// A rational point. The derived order is the canonical coordinate order:
/// affine points by `(x, y)` in log order with zero first, `P∞` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Affine { x: Fe, y: Fe },
    Infinity,
}

impl CurvePoint {
    pub fn affine(x: Fe, y: Fe) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn coords(&self) -> Option<(Fe, Fe)> {
        match *self {
            CurvePoint::Affine { x, y } => Some((x, y)),
            CurvePoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |v: Fe| match v.log() {
            None => "0".to_string(),
            Some(k) => format!("g^{k}"),
        };
        match *self {
            CurvePoint::Affine { x, y } => write!(f, "({}, {})", e(x), e(y)),
            CurvePoint::Infinity => f.write_str("Pinf"),
        }
    }
}

/// Power-series branch of the curve at an affine point: `y = y_P + sum s_k t^k`
/// with `t = x - x_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub base: CurvePoint,
    /// `coeffs[k] = s_k` for `k = 0..=N`; `s_0 = 0`.
    pub coeffs: Vec<Fe>,
}

impl LocalExpansion {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Debug)]
pub struct Curve {
    field: Arc<Field>,
    q: u32,
    m: u32,
    points: OnceLock<Vec<CurvePoint>>,
    /// `fibers[code of c]` lists the `y` with `y^q + y = c`.
    fibers: OnceLock<Vec<Vec<Fe>>>,
}

/// Builds `Y_m` over GF(q^2).
pub fn build_curve(q: u32, m: u32) -> Result<Curve, CurveError> {
    let (p, e) = prime_power(q as u64)
        .ok_or_else(|| CurveError::InvalidParameters(format!("q = {q} is not a prime power")))?;
    if m == 0 || (q + 1) % m != 0 {
        return Err(CurveError::InvalidParameters(format!("m = {m} does not divide q + 1 = {}", q + 1)));
    }
    let field = make_field(p, 2 * e)?;
    Ok(Curve { field: Arc::new(field), q, m, points: OnceLock::new(), fibers: OnceLock::new() })
}

impl Curve {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `(q + 1) / m`
    pub fn c(&self) -> u32 {
        (self.q + 1) / self.m
    }

    pub fn genus(&self) -> u32 {
        (self.q - 1) * (self.m - 1) / 2
    }

    /// `m = q + 1`: the Hermitian curve itself, outside the family the
    /// verification suites cover.
    pub fn is_hermitian(&self) -> bool {
        self.m == self.q + 1
    }

    /// `1 + q(1 + (q - 1)m)`
    pub fn expected_point_count(&self) -> u64 {
        let (q, m) = (self.q as u64, self.m as u64);
        1 + q * (1 + (q - 1) * m)
    }

    fn fibers(&self) -> &Vec<Vec<Fe>> {
        self.fibers.get_or_init(|| {
            let f = &*self.field;
            let mut fibers = vec![Vec::new(); f.order() as usize];
            for y in f.elements() {
                let t = f.rel_trace(y, self.q).expect("field has order q^2");
                fibers[t.code() as usize].push(y);
            }
            fibers
        })
    }

    /// All `y` with `y^q + y = c`, in canonical order.
    pub fn solve_trace_fiber(&self, c: Fe) -> Result<&[Fe], CurveError> {
        if !self.field.contains(c) || !self.field.in_subfield(c, self.q) {
            return Err(CurveError::NotInSubfield(self.field.fmt_elem(c)));
        }
        Ok(&self.fibers()[c.code() as usize])
    }

    /// Rational points in canonical order, `P∞` last.
    pub fn points(&self) -> &[CurvePoint] {
        self.points.get_or_init(|| {
            let f = &*self.field;
            let mut pts = Vec::new();
            for x in f.elements() {
                let c = f.pow(x, self.m as u64);
                if let Ok(ys) = self.solve_trace_fiber(c) {
                    pts.extend(ys.iter().map(|&y| CurvePoint::affine(x, y)));
                }
            }
            pts.push(CurvePoint::Infinity);
            pts
        })
    }

    pub fn affine_points(&self) -> &[CurvePoint] {
        let pts = self.points();
        &pts[..pts.len() - 1]
    }

    /// Position of `pt` in the canonical order.
    pub fn point_index(&self, pt: &CurvePoint) -> Option<usize> {
        self.points().binary_search(pt).ok()
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match *pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let f = &*self.field;
                f.contains(x) && f.contains(y) && {
                    let lhs = f.add(f.pow(y, self.q as u64), y);
                    lhs == f.pow(x, self.m as u64)
                }
            }
        }
    }

    fn affine_coords(&self, pt: &CurvePoint) -> Result<(Fe, Fe), CurveError> {
        let (x, y) = pt.coords().ok_or(CurveError::NotAffine)?;
        if !self.contains(pt) {
            return Err(CurveError::NotOnCurve(pt.to_string()));
        }
        Ok((x, y))
    }

    /// The point `(0, 0)`.
    pub fn origin(&self) -> CurvePoint {
        CurvePoint::affine(Fe::ZERO, Fe::ZERO)
    }

    /// Branch expansion to precision `t^n`.
    ///
    /// Writing `y = y_P + S(t)`, the equation becomes
    /// `S + S^q = (x_P + t)^m - x_P^m`, and since the `y`-derivative is one the
    /// Newton step `S <- B - S^q` fixes one more coefficient per degree;
    /// because `S^q` only involves `s_{k/q}`, the coefficients follow directly.
    pub fn local_expand(&self, pt: &CurvePoint, n: usize) -> Result<LocalExpansion, CurveError> {
        let (x0, _) = self.affine_coords(pt)?;
        let f = &*self.field;
        let q = self.q as usize;
        let m = self.m as usize;
        let mut s = vec![Fe::ZERO; n + 1];
        // binomial coefficients of (x0 + t)^m mod p
        let mut binom = 1u64;
        let p = f.characteristic() as u64;
        let mut b = vec![Fe::ZERO; m + 1];
        for (k, bk) in b.iter_mut().enumerate() {
            if k > 0 {
                binom = binom_mod(m as u64, k as u64, p);
            }
            *bk = f.mul(f.from_int(binom as i64), f.pow(x0, (m - k) as u64));
        }
        for k in 1..=n {
            let mut v = if k <= m { b[k] } else { Fe::ZERO };
            if k % q == 0 {
                v = f.sub(v, f.pow(s[k / q], q as u64));
            }
            s[k] = v;
        }
        Ok(LocalExpansion { base: *pt, coeffs: s })
    }

    /// Series of `x^i y^j` restricted to the branch at an affine point.
    pub fn branch(&self, pt: &CurvePoint, n: usize) -> Result<Branch<'_>, CurveError> {
        let (x0, y0) = self.affine_coords(pt)?;
        let exp = self.local_expand(pt, n)?;
        let len = n + 1;
        let mut xs = vec![Fe::ZERO; len];
        xs[0] = x0;
        if len > 1 {
            xs[1] = Fe::ONE;
        }
        let mut ys = exp.coeffs.clone();
        ys[0] = y0;
        Ok(Branch { field: &self.field, len, x: xs, y: ys, x_pows: Vec::new(), y_pows: Vec::new() })
    }

    /// Order of vanishing of a reduced polynomial at `pt`; `None` is `+∞`
    /// (the zero polynomial). At `P∞` the value is `-max(qi + mj)`, exact
    /// because the weights `qi + mj` with `j < q` are pairwise distinct.
    pub fn valuation(&self, poly: &BiPoly, pt: &CurvePoint) -> Result<Option<i64>, CurveError> {
        if let Some(dy) = poly.y_degree() {
            if dy >= self.q {
                return Err(CurveError::Unreduced(dy));
            }
        }
        if poly.is_zero() {
            return Ok(None);
        }
        let pole = self.pole_order(poly);
        if pt.is_infinity() {
            return Ok(Some(-pole));
        }
        // A zero at P has order at most the total pole order, so precision
        // `pole` always settles the question.
        let cap = pole.max(1) as usize;
        let mut n = 2usize.min(cap);
        loop {
            let s = self.branch(pt, n)?.eval(poly);
            if let Some(v) = series_order(&s) {
                return Ok(Some(v as i64));
            }
            if n >= cap {
                unreachable!("nonzero reduced function vanishing beyond its pole order");
            }
            n = (2 * n).min(cap);
        }
    }

    /// `max(qi + mj)` over the monomials of a reduced polynomial.
    pub fn pole_order(&self, poly: &BiPoly) -> i64 {
        poly.terms()
            .map(|((i, j), _)| (self.q * i + self.m * j) as i64)
            .max()
            .unwrap_or(0)
    }

    /// Parses `"Pinf"`, `"(g^i, g^j)"`, `"(0, 0)"` or a canonical index.
    pub fn parse_point(&self, s: &str) -> Result<CurvePoint, CurveError> {
        let t = s.trim();
        let bad = || CurveError::BadPoint(s.to_string());
        let pt = if t.eq_ignore_ascii_case("pinf") {
            CurvePoint::Infinity
        } else if let Ok(idx) = t.parse::<usize>() {
            *self.points().get(idx).ok_or_else(bad)?
        } else {
            let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let x = parse_elem(&self.field, a).ok_or_else(bad)?;
            let y = parse_elem(&self.field, b).ok_or_else(bad)?;
            CurvePoint::affine(x, y)
        };
        if !self.contains(&pt) {
            return Err(CurveError::NotOnCurve(pt.to_string()));
        }
        Ok(pt)
    }

    /// One point per line.
    pub fn export_points(&self) -> String {
        let mut out = String::new();
        for p in self.points() {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Points grouped by `y`: the affine intersections with horizontal lines.
    pub fn horizontal_fibers(&self) -> BTreeMap<Fe, Vec<usize>> {
        let mut by_y: BTreeMap<Fe, Vec<usize>> = BTreeMap::new();
        for (i, p) in self.affine_points().iter().enumerate() {
            let (_, y) = p.coords().unwrap();
            by_y.entry(y).or_default().push(i);
        }
        by_y
    }
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        acc = acc * small_binom(a, b, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// `binom(n, k) mod p` for `n < p`.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k.min(n - k) {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Cached powers of the branch series `X = x_P + t`, `Y = y_P + S(t)`.
pub struct Branch<'c> {
    field: &'c Field,
    len: usize,
    x: Series,
    y: Series,
    x_pows: Vec<Series>,
    y_pows: Vec<Series>,
}

impl Branch<'_> {
    pub fn precision(&self) -> usize {
        self.len
    }

    fn ensure(pows: &mut Vec<Series>, base: &Series, e: usize, f: &Field, len: usize) {
        if pows.is_empty() {
            let mut one = vec![Fe::ZERO; len];
            one[0] = Fe::ONE;
            pows.push(one);
        }
        while pows.len() <= e {
            let next = series_mul(f, pows.last().unwrap(), base, len);
            pows.push(next);
        }
    }

    /// Series of `x^i y^j`.
    pub fn monomial(&mut self, i: u32, j: u32) -> Series {
        let (f, len) = (self.field, self.len);
        Self::ensure(&mut self.x_pows, &self.x, i as usize, f, len);
        Self::ensure(&mut self.y_pows, &self.y, j as usize, f, len);
        series_mul(f, &self.x_pows[i as usize], &self.y_pows[j as usize], len)
    }

    pub fn eval(&mut self, poly: &BiPoly) -> Series {
        let f = self.field;
        let mut acc = vec![Fe::ZERO; self.len];
        for ((i, j), c) in poly.terms() {
            let s = self.monomial(i, j);
            series_add_scaled(f, &mut acc, c, &s);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn genus_and_c() {
        let c = build_curve(5, 2).unwrap();
        assert_eq!((c.genus(), c.c()), (2, 3));
        let c = build_curve(5, 3).unwrap();
        assert_eq!((c.genus(), c.c()), (4, 2));
        for q in [3, 4, 5, 7, 8, 9] {
            assert_eq!(build_curve(q, 1).unwrap().genus(), 0);
        }
        assert!(build_curve(5, 6).unwrap().is_hermitian());
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(matches!(build_curve(6, 7), Err(CurveError::InvalidParameters(_))));
        assert!(matches!(build_curve(5, 4), Err(CurveError::InvalidParameters(_))));
        assert!(matches!(build_curve(5, 0), Err(CurveError::InvalidParameters(_))));
    }

    #[test]
    fn point_counts() {
        assert_eq!(build_curve(5, 3).unwrap().points().len(), 66);
        assert_eq!(build_curve(8, 3).unwrap().points().len(), 177);
        // brute force over all 625 pairs
        let c = build_curve(5, 2).unwrap();
        let f = c.field();
        let mut brute = Vec::new();
        for x in f.elements() {
            for y in f.elements() {
                if f.add(f.pow(y, 5), y) == f.pow(x, 2) {
                    brute.push(CurvePoint::affine(x, y));
                }
            }
        }
        brute.push(CurvePoint::Infinity);
        // 1 + 5(1 + 4*2)
        assert_eq!(brute.len(), 46);
        assert_eq!(c.points(), &brute[..]);
    }

    #[test]
    fn point_order_is_canonical() {
        let c = build_curve(7, 4).unwrap();
        let pts = c.points();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(pts[0], c.origin());
        assert_eq!(*pts.last().unwrap(), CurvePoint::Infinity);
        assert_eq!(c.point_index(&pts[17]), Some(17));
    }

    #[test]
    fn trace_fibers() {
        let c = build_curve(5, 3).unwrap();
        let f = c.field();
        let zero_fiber = c.solve_trace_fiber(Fe::ZERO).unwrap();
        assert_eq!(zero_fiber.len(), 5);
        assert!(zero_fiber.contains(&Fe::ZERO));
        let mut total = 0;
        for v in f.elements().filter(|&v| f.in_subfield(v, 5)) {
            let fib = c.solve_trace_fiber(v).unwrap();
            assert_eq!(fib.len(), 5);
            total += fib.len();
        }
        assert_eq!(total, 25);
        assert!(matches!(
            c.solve_trace_fiber(f.generator()),
            Err(CurveError::NotInSubfield(_))
        ));
    }

    /// Substitutes the branch back into `y^q + y - x^m` with plain series
    /// multiplication (no Frobenius shortcut).
    fn residual(c: &Curve, pt: &CurvePoint, e: &LocalExpansion) -> Series {
        let f = c.field();
        let len = e.coeffs.len();
        let (x0, y0) = pt.coords().unwrap();
        let mut y = e.coeffs.clone();
        y[0] = y0;
        let mut x = vec![Fe::ZERO; len];
        x[0] = x0;
        if len > 1 {
            x[1] = Fe::ONE;
        }
        let pow = |b: &Series, k: u32| {
            let mut acc = vec![Fe::ZERO; len];
            acc[0] = Fe::ONE;
            for _ in 0..k {
                acc = series_mul(f, &acc, b, len);
            }
            acc
        };
        let yq = pow(&y, c.q());
        let xm = pow(&x, c.m());
        (0..len).map(|k| f.sub(f.add(yq[k], y[k]), xm[k])).collect()
    }

    #[test]
    fn expansion_at_origin() {
        let c = build_curve(5, 3).unwrap();
        let e = c.local_expand(&c.origin(), 8).unwrap();
        assert_eq!(&e.coeffs[..4], &[Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]);
        assert!(residual(&c, &c.origin(), &e).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn expansion_linear_term() {
        let c = build_curve(7, 4).unwrap();
        let f = c.field();
        for p in c.affine_points() {
            let (x, _) = p.coords().unwrap();
            if x.is_zero() {
                continue;
            }
            let e = c.local_expand(p, 3).unwrap();
            assert_eq!(e.coeffs[1], f.mul(f.from_int(4), f.pow(x, 3)));
            assert!(!e.coeffs[1].is_zero());
        }
    }

    #[test]
    fn expansion_residual_vanishes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
        for (q, m) in [(5, 3), (8, 3), (7, 4), (9, 5)] {
            let c = build_curve(q, m).unwrap();
            for _ in 0..20 {
                let p = c.affine_points()[rng.gen_range(0..c.affine_points().len())];
                let e = c.local_expand(&p, 10).unwrap();
                assert_eq!(e.coeffs[0], Fe::ZERO);
                assert!(residual(&c, &p, &e).iter().all(|v| v.is_zero()), "{p}");
            }
        }
    }

    #[test]
    fn expansion_errors() {
        let c = build_curve(5, 3).unwrap();
        assert_eq!(c.local_expand(&CurvePoint::Infinity, 3), Err(CurveError::NotAffine));
        let off = CurvePoint::affine(Fe::ONE, Fe::ONE);
        assert!(matches!(c.local_expand(&off, 3), Err(CurveError::NotOnCurve(_))));
    }

    #[test]
    fn valuations_of_coordinates() {
        let c = build_curve(5, 3).unwrap();
        assert_eq!(c.valuation(&BiPoly::x(), &CurvePoint::Infinity).unwrap(), Some(-5));
        assert_eq!(c.valuation(&BiPoly::y(), &CurvePoint::Infinity).unwrap(), Some(-3));
        assert_eq!(c.valuation(&BiPoly::y(), &c.origin()).unwrap(), Some(3));
        let one = BiPoly::constant(Fe::ONE);
        for p in c.points() {
            assert_eq!(c.valuation(&one, p).unwrap(), Some(0));
        }
        assert_eq!(c.valuation(&BiPoly::zero(), &c.origin()).unwrap(), None);
        let unreduced = BiPoly::monomial(0, 5, Fe::ONE);
        assert_eq!(c.valuation(&unreduced, &c.origin()), Err(CurveError::Unreduced(5)));
    }

    fn random_reduced(c: &Curve, rng: &mut impl Rng, terms: usize) -> BiPoly {
        let f = c.field();
        let t: Vec<_> = (0..terms)
            .map(|_| {
                let key = (rng.gen_range(0..4), rng.gen_range(0..c.q()));
                (key, f.from_log(rng.gen_range(0..f.units() as u64)))
            })
            .collect();
        BiPoly::from_terms(f, t)
    }

    /// Zeros counted with multiplicity over all affine points equal the pole
    /// order at infinity.
    fn degree_sum(c: &Curve, poly: &BiPoly) {
        let zeros: i64 = c
            .affine_points()
            .iter()
            .map(|p| c.valuation(poly, p).unwrap().unwrap())
            .sum();
        assert_eq!(zeros, -c.valuation(poly, &CurvePoint::Infinity).unwrap().unwrap());
    }

    #[test]
    fn degree_sum_law() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for (q, m) in [(5, 2), (5, 3), (8, 3)] {
            let c = build_curve(q, m).unwrap();
            let f = c.field();
            let pts = c.affine_points();
            for &pt in pts.iter().step_by(pts.len() / 5) {
                let (x0, y0) = pt.coords().unwrap();
                degree_sum(&c, &BiPoly::x().sub(f, &BiPoly::constant(x0)));
                degree_sum(&c, &BiPoly::y().sub(f, &BiPoly::constant(y0)));
            }
            // Random products of coordinate lines: all of their zeros are
            // rational, so the affine zero count must match the pole order.
            for _ in 0..4 {
                let mut g = BiPoly::constant(Fe::ONE);
                for _ in 0..rng.gen_range(1..4) {
                    let (x0, y0) = pts[rng.gen_range(0..pts.len())].coords().unwrap();
                    let factor = if rng.gen_bool(0.5) {
                        BiPoly::x().sub(f, &BiPoly::constant(x0))
                    } else {
                        BiPoly::y().sub(f, &BiPoly::constant(y0))
                    };
                    g = g.mul(f, &factor).reduce_mod_curve(f, q, m);
                }
                degree_sum(&c, &g.scale(f, f.from_log(rng.gen_range(0..f.units() as u64))));
            }
        }
    }

    #[test]
    fn valuation_is_additive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let c = build_curve(5, 3).unwrap();
        let f = c.field();
        for _ in 0..30 {
            let a = random_reduced(&c, &mut rng, 3);
            let b = random_reduced(&c, &mut rng, 3);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a.mul(f, &b).reduce_mod_curve(f, c.q(), c.m());
            let pt = c.points()[rng.gen_range(0..c.points().len())];
            let va = c.valuation(&a, &pt).unwrap().unwrap();
            let vb = c.valuation(&b, &pt).unwrap().unwrap();
            assert_eq!(c.valuation(&ab, &pt).unwrap().unwrap(), va + vb);
        }
    }

    #[test]
    fn weights_are_distinct() {
        for (q, m) in [(3, 2), (5, 2), (5, 3), (7, 2), (7, 4), (8, 3), (9, 5), (11, 6), (13, 7)] {
            let mut seen = std::collections::HashSet::new();
            for j in 0..q {
                for i in 0..(2 * q) {
                    assert!(seen.insert(q * i + m * j), "q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn point_count_formula_all_small() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
            for m in (1..=q + 1).filter(|m| (q + 1) % m == 0) {
                let c = build_curve(q, m).unwrap();
                assert_eq!(c.points().len() as u64, c.expected_point_count(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn point_text_roundtrip() {
        let c = build_curve(5, 2).unwrap();
        for p in c.points() {
            assert_eq!(c.parse_point(&p.to_string()).unwrap(), *p);
        }
        assert_eq!(c.parse_point("3").unwrap(), c.points()[3]);
        assert_eq!(c.origin().to_string(), "(0, 0)");
        assert!(c.parse_point("(g^1, g^1)").is_err());
        assert_eq!(c.export_points().lines().count(), 46);
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binom_mod(5, 2, 7), 3);
        assert_eq!(binom_mod(8, 4, 2), 0);
        assert_eq!(binom_mod(8, 8, 2), 1);
        assert_eq!(binom_mod(6, 3, 2), 0);
        assert_eq!(binom_mod(10, 5, 3), 252 % 3);
    }
}
