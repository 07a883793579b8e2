//! Riemann-Roch spaces `L(rQ∞ - A)` in the monomial basis `x^i y^j`,
//! `j < q`, `qi + mj <= r`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::curve::{Curve, CurveError, CurvePoint};
use crate::gf::{Fe, Field};
use crate::linalg::{kernel, Matrix};
use crate::poly::BiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RrError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("multiplicity {mult} exceeds the truncation bound {cap}")]
    TruncationOverflow { mult: u32, cap: u32 },
    #[error("expected a {expected}-dimensional solution space, found dimension {found}")]
    KernelDimension { expected: usize, found: usize },
    #[error("{0}")]
    Anomaly(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    /// Pole order `qi + mj` at `Q∞`.
    pub fn weight(&self, q: u32, m: u32) -> u32 {
        q * self.i + m * self.j
    }
}

/// Basis of `L(rQ∞)`, sorted by `(qi + mj, j)`.
pub fn monomial_basis(curve: &Curve, r: i64) -> Vec<Monomial> {
    let (q, m) = (curve.q(), curve.m());
    if r < 0 {
        return Vec::new();
    }
    let r = r as u32;
    let mut out = Vec::new();
    for j in 0..q {
        if m * j > r {
            break;
        }
        for i in 0..=(r - m * j) / q {
            out.push(Monomial { i, j });
        }
    }
    out.sort_by_key(|mo| (mo.weight(q, m), mo.j));
    out
}

/// Multiplicities on curve points; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EffectiveDivisor {
    mults: BTreeMap<CurvePoint, u32>,
}

impl EffectiveDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(pt: CurvePoint, mult: u32) -> Self {
        let mut d = Self::zero();
        d.add(pt, mult);
        d
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (CurvePoint, u32)>) -> Self {
        let mut d = Self::zero();
        for (p, m) in pairs {
            d.add(p, m);
        }
        d
    }

    pub fn add(&mut self, pt: CurvePoint, mult: u32) {
        if mult > 0 {
            *self.mults.entry(pt).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, pt: &CurvePoint) -> u32 {
        self.mults.get(pt).copied().unwrap_or(0)
    }

    pub fn at_infinity(&self) -> u32 {
        self.mult(&CurvePoint::Infinity)
    }

    pub fn degree(&self) -> u32 {
        self.mults.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Points with positive multiplicity, canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (CurvePoint, u32)> + '_ {
        self.mults.iter().map(|(&p, &m)| (p, m))
    }

    pub fn affine_iter(&self) -> impl Iterator<Item = (CurvePoint, u32)> + '_ {
        self.iter().filter(|(p, _)| !p.is_infinity())
    }

    pub fn affine_part(&self) -> EffectiveDivisor {
        EffectiveDivisor::from_pairs(self.affine_iter())
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &EffectiveDivisor) -> bool {
        self.iter().all(|(p, m)| other.mult(&p) >= m)
    }

    pub fn validate(&self, curve: &Curve) -> Result<(), CurveError> {
        for (p, _) in self.iter() {
            if !curve.contains(&p) {
                return Err(CurveError::NotOnCurve(p.to_string()));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for EffectiveDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, m)| format!("{p}:{m}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A subspace of `L(rQ∞)`, rows are coefficient vectors over `basis`.
#[derive(Clone, Debug)]
pub struct FunctionSpace {
    pub r: i64,
    pub divisor: EffectiveDivisor,
    pub basis: Vec<Monomial>,
    pub rows: Matrix,
}

impl FunctionSpace {
    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn poly(&self, f: &Field, row: usize) -> BiPoly {
        BiPoly::from_terms(
            f,
            self.basis.iter().zip(self.rows.row(row)).map(|(mo, &c)| ((mo.i, mo.j), c)),
        )
    }

    pub fn polys(&self, f: &Field) -> Vec<BiPoly> {
        (0..self.dim()).map(|r| self.poly(f, r)).collect()
    }

    /// Header `L(<r>Qinf - A)`, then one row per basis function as
    /// `(i,j):g^k` pairs.
    pub fn export(&self, f: &Field) -> String {
        let mut out = String::new();
        if self.divisor.is_zero() {
            let _ = writeln!(out, "L({}Qinf)", self.r);
        } else {
            let _ = writeln!(out, "L({}Qinf - {})", self.r, self.divisor);
        }
        for r in 0..self.dim() {
            let pairs: Vec<String> = self
                .basis
                .iter()
                .zip(self.rows.row(r))
                .filter(|(_, c)| !c.is_zero())
                .map(|(mo, &c)| format!("({},{}):{}", mo.i, mo.j, f.fmt_elem(c)))
                .collect();
            let _ = writeln!(out, "{}", pairs.join(" "));
        }
        out
    }
}

/// Largest affine multiplicity handled by the jet conditions.
pub fn truncation_cap(curve: &Curve) -> u32 {
    4 * (curve.q() + curve.m())
}

/// Rows `k = 0..mult` of the jet conditions at `pt`: the `t^k` coefficient of
/// each basis monomial along the branch.
pub fn jet_rows(
    curve: &Curve,
    basis: &[Monomial],
    pt: &CurvePoint,
    mult: u32,
) -> Result<Vec<Vec<Fe>>, RrError> {
    let cap = truncation_cap(curve);
    if mult > cap {
        return Err(RrError::TruncationOverflow { mult, cap });
    }
    if mult == 0 {
        return Ok(Vec::new());
    }
    let mut branch = curve.branch(pt, mult as usize - 1)?;
    let series: Vec<_> = basis.iter().map(|mo| branch.monomial(mo.i, mo.j)).collect();
    Ok((0..mult as usize).map(|k| series.iter().map(|s| s[k]).collect()).collect())
}

/// `L(rQ∞ - A)`: the part of `A` at `Q∞` lowers `r`, affine multiplicities
/// become jet conditions.
pub fn rr_subspace(curve: &Curve, r: i64, a: &EffectiveDivisor) -> Result<FunctionSpace, RrError> {
    a.validate(curve)?;
    let f = curve.field();
    let shifted = r - a.at_infinity() as i64;
    let basis = monomial_basis(curve, shifted);
    let mut cond = Matrix::zeros(0, basis.len());
    for (pt, mult) in a.affine_iter() {
        for row in jet_rows(curve, &basis, &pt, mult)? {
            cond.push_row(&row);
        }
    }
    let rows = if cond.rows() == 0 { Matrix::identity(basis.len()) } else { kernel(f, &cond) };
    Ok(FunctionSpace { r, divisor: a.clone(), basis, rows })
}

/// The function `h` with `div(h) = t(q+1)P - t(q+1)Q∞`, unique up to scalars
/// (normalized so that its top monomial has coefficient one).
pub fn equivalence_function(curve: &Curve, pt: &CurvePoint, t: u32) -> Result<BiPoly, RrError> {
    if pt.is_infinity() {
        return Err(CurveError::NotAffine.into());
    }
    if t == 0 {
        return Err(RrError::Anomaly("equivalence exponent must be positive".into()));
    }
    let order = t * (curve.q() + 1);
    let space = rr_subspace(curve, order as i64, &EffectiveDivisor::point(*pt, order))?;
    if space.dim() != 1 {
        return Err(RrError::KernelDimension { expected: 1, found: space.dim() });
    }
    let f = curve.field();
    let h = space.poly(f, 0).monic_by_last(f);
    let at_p = curve.valuation(&h, pt)?;
    let pole = curve.pole_order(&h);
    if at_p != Some(order as i64) || pole != order as i64 {
        return Err(RrError::Anomaly(format!(
            "equivalence function has valuation {at_p:?} at {pt} and pole order {pole}"
        )));
    }
    Ok(h)
}
