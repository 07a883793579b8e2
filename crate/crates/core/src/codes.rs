//! Linear codes over GF(q^2) with labelled coordinates, duals, and the
//! circuit engine behind dual minimum distances.
//!
//! A set `S` of columns is dependent iff some dual codeword is supported in
//! `S`, so the dual minimum distance is the size of the smallest circuit.
//! Circuits of size `w` are found by fixing their `w - 2` smallest columns
//! `T`, projecting every later column onto the quotient by `span(T)`, and
//! grouping equal normalized projections: two later columns `i < j` complete
//! `T` to a dependent set iff their projections are proportional. Each
//! circuit is reached once, from its own smallest `w - 2` columns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::curve::{Curve, CurvePoint};
use crate::gf::{Fe, Field};
use crate::linalg::{kernel, normalize, rank, rref, Matrix};
use crate::planegeom::support_geometry;
use crate::poly::BiPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("no evaluation points")]
    NoPoints,
    #[error("every function vanishes on the evaluation set")]
    ZeroEvaluation,
    #[error("{0} labels for {1} columns")]
    LabelCount(usize, usize),
    #[error("evaluation point {0} repeated or out of order")]
    Labels(String),
    #[error("circuit search of size {w} needs about {estimate:.3e} steps, budget is {budget:.3e}")]
    Budget { w: usize, estimate: f64, budget: f64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<Field>,
    gen: Matrix,
    labels: Vec<CurvePoint>,
}

/// Indices of the rows that extend the span of the rows before them.
pub fn independent_rows(f: &Field, m: &Matrix) -> Vec<usize> {
    let mut t = m.transpose();
    rref(f, &mut t)
}

impl LinearCode {
    /// Keeps the independent rows of `gen`. Labels must be strictly
    /// increasing in canonical order.
    pub fn new(field: Arc<Field>, gen: Matrix, labels: Vec<CurvePoint>) -> Result<Self, CodeError> {
        if labels.len() != gen.cols() {
            return Err(CodeError::LabelCount(labels.len(), gen.cols()));
        }
        if let Some(w) = labels.windows(2).find(|w| w[0] >= w[1]) {
            return Err(CodeError::Labels(w[1].to_string()));
        }
        let keep = independent_rows(&field, &gen);
        let gen = if keep.len() == gen.rows() {
            gen
        } else {
            Matrix::from_rows(keep.iter().map(|&r| gen.row(r).to_vec()).collect(), gen.cols())
        };
        Ok(LinearCode { field, gen, labels })
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        self.field.clone()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn labels(&self) -> &[CurvePoint] {
        &self.labels
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        self.gen.column(c)
    }

    /// `x · C`, coordinatewise.
    pub fn scaled(&self, x: &[Fe]) -> LinearCode {
        let gen = crate::linalg::scale_columns(&self.field, &self.gen, x);
        LinearCode { field: self.field.clone(), gen, labels: self.labels.clone() }
    }

    /// The code restricted to its first `len` coordinates.
    pub fn truncated(&self, len: usize) -> LinearCode {
        let cols: Vec<usize> = (0..len).collect();
        let gen = self.gen.select_columns(&cols);
        LinearCode::new(self.field.clone(), gen, self.labels[..len].to_vec()).unwrap()
    }

    /// Header `n k GF(p^e)`, then `k` rows of `n` element tokens.
    pub fn export_text(&self) -> String {
        let f = &*self.field;
        let mut out = format!("{} {} {}\n", self.n(), self.k(), f);
        for r in 0..self.k() {
            let row: Vec<String> = self.gen.row(r).iter().map(|&e| f.fmt_elem(e)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// `self ⊆ other` as row spaces.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        crate::linalg::row_space_contains(&self.field, &other.gen, &self.gen)
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.n() == other.n() && crate::linalg::same_row_space(&self.field, &self.gen, &other.gen)
    }
}

/// Evaluates each function at `points` (affine chart). Functions vanishing on
/// all points and dependent rows are dropped.
pub fn evaluate_space(
    curve: &Curve,
    funcs: &[BiPoly],
    points: &[CurvePoint],
) -> Result<LinearCode, CodeError> {
    if points.is_empty() {
        return Err(CodeError::NoPoints);
    }
    let f = curve.field();
    let coords: Vec<(Fe, Fe)> = points
        .iter()
        .map(|p| p.coords().ok_or_else(|| CodeError::Labels(p.to_string())))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Fe>> =
        funcs.iter().map(|h| coords.iter().map(|&(x, y)| h.eval(f, x, y)).collect()).collect();
    let gen = Matrix::from_rows(rows, points.len());
    if gen.is_zero() {
        return Err(CodeError::ZeroEvaluation);
    }
    LinearCode::new(curve.field_arc(), gen, points.to_vec())
}

pub fn dual(code: &LinearCode) -> LinearCode {
    let h = if code.k() == 0 { Matrix::identity(code.n()) } else { kernel(&code.field, &code.gen) };
    LinearCode { field: code.field.clone(), gen: h, labels: code.labels.clone() }
}

/// A minimal dependent column set and its normalized dependency.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    pub support: Vec<usize>,
    pub coeffs: Vec<Fe>,
}

/// The dependency on `support` if those columns form a circuit.
pub fn circuit_of(code: &LinearCode, support: &[usize]) -> Option<Circuit> {
    let f = &*code.field;
    let sub = code.gen.select_columns(support);
    let ker = kernel(f, &sub);
    if ker.rows() != 1 {
        return None;
    }
    let mut coeffs = ker.row(0).to_vec();
    if coeffs.iter().any(|c| c.is_zero()) {
        return None;
    }
    normalize(f, &mut coeffs);
    Some(Circuit { support: support.to_vec(), coeffs })
}

/// Independent re-check: the columns are dependent with these coefficients
/// and every proper subset is independent.
pub fn verify_circuit(code: &LinearCode, c: &Circuit) -> bool {
    let f = &*code.field;
    if c.support.is_empty() || c.coeffs.iter().any(|e| e.is_zero()) {
        return false;
    }
    let sub = code.gen.select_columns(&c.support);
    let combo_zero = (0..sub.rows()).all(|r| {
        crate::linalg::dot(f, sub.row(r), &c.coeffs).is_zero()
    });
    combo_zero && rank(f, &sub) == c.support.len() - 1
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Rough work estimate for size-`w` circuits: projected column vectors.
pub fn search_cost(n: usize, w: usize) -> f64 {
    if w <= 2 {
        n as f64
    } else {
        binom_f64(n, w - 2) * n as f64 / (w - 1) as f64
    }
}

pub const DEFAULT_BUDGET: f64 = 3e9;

/// Columns still in play, each reduced modulo the span of the fixed set and
/// stored with stride `dim`.
#[derive(Clone)]
struct State {
    idx: Vec<usize>,
    dim: usize,
    data: Vec<Fe>,
}

impl State {
    fn initial(code: &LinearCode) -> State {
        let g = code.generator();
        let (k, n) = (g.rows(), g.cols());
        let mut data = Vec::with_capacity(n * k);
        for c in 0..n {
            for r in 0..k {
                data.push(g.get(r, c));
            }
        }
        State { idx: (0..n).collect(), dim: k, data }
    }

    fn from_columns(code: &LinearCode, cols: &[usize]) -> State {
        let g = code.generator();
        let k = g.rows();
        let mut data = Vec::with_capacity(cols.len() * k);
        for &c in cols {
            for r in 0..k {
                data.push(g.get(r, c));
            }
        }
        State { idx: cols.to_vec(), dim: k, data }
    }

    fn vec(&self, p: usize) -> &[Fe] {
        &self.data[p * self.dim..(p + 1) * self.dim]
    }

    /// Columns after position `p`, reduced modulo column `p`. `None` when
    /// column `p` is already zero (dependent on the fixed set).
    fn quotient_after(&self, f: &Field, p: usize) -> Option<State> {
        let v = self.vec(p);
        let piv = v.iter().position(|e| !e.is_zero())?;
        let inv = f.inv(v[piv]).unwrap();
        let dim = self.dim - 1;
        let rest = self.idx.len() - p - 1;
        let mut data = Vec::with_capacity(rest * dim);
        for q in p + 1..self.idx.len() {
            let u = self.vec(q);
            let factor = f.neg(f.mul(u[piv], inv));
            for (c, (&uc, &vc)) in u.iter().zip(v).enumerate() {
                if c != piv {
                    data.push(if factor.is_zero() { uc } else { f.add(uc, f.mul(factor, vc)) });
                }
            }
        }
        Some(State { idx: self.idx[p + 1..].to_vec(), dim, data })
    }

    /// Pairs of positions with proportional nonzero vectors, lexicographic.
    fn proportional_pairs(&self, f: &Field, mut emit: impl FnMut(usize, usize) -> bool) -> bool {
        let mut data = self.data.clone();
        let mut live = Vec::with_capacity(self.idx.len());
        for p in 0..self.idx.len() {
            if normalize(f, &mut data[p * self.dim..(p + 1) * self.dim]) {
                live.push(p);
            }
        }
        let dim = self.dim;
        let key = |p: usize| &data[p * dim..(p + 1) * dim];
        live.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
        let mut pairs = Vec::new();
        let mut s = 0;
        while s < live.len() {
            let mut e = s + 1;
            while e < live.len() && key(live[e]) == key(live[s]) {
                e += 1;
            }
            for a in s..e {
                for b in a + 1..e {
                    pairs.push((live[a], live[b]));
                }
            }
            s = e;
        }
        pairs.sort_unstable();
        for (a, b) in pairs {
            if !emit(a, b) {
                return false;
            }
        }
        true
    }
}

/// Reused buffers for `State::quotient_pairs`.
#[derive(Default)]
struct PairScratch {
    data: Vec<Fe>,
    keys: Vec<(u64, u32, u32)>,
    pairs: Vec<(usize, usize)>,
}

impl State {
    /// `quotient_after(p)` followed by `proportional_pairs`, without building
    /// the quotient. Positions passed to `emit` index `self`. `None` when
    /// column `p` is zero.
    fn quotient_pairs(
        &self,
        f: &Field,
        p: usize,
        buf: &mut PairScratch,
        mut emit: impl FnMut(usize, usize) -> bool,
    ) -> Option<bool> {
        let v = self.vec(p);
        let piv = v.iter().position(|e| !e.is_zero())?;
        let inv = f.inv(v[piv]).unwrap();
        let dim = self.dim - 1;
        buf.data.clear();
        buf.keys.clear();
        for q in p + 1..self.idx.len() {
            let u = self.vec(q);
            let factor = f.neg(f.mul(u[piv], inv));
            let start = buf.data.len();
            for (c, (&uc, &vc)) in u.iter().zip(v).enumerate() {
                if c != piv {
                    buf.data.push(if factor.is_zero() { uc } else { f.add(uc, f.mul(factor, vc)) });
                }
            }
            let row = &mut buf.data[start..];
            if !normalize(f, row) {
                buf.data.truncate(start);
                continue;
            }
            let h = row.iter().fold(0u64, |h, e| (h.rotate_left(5) ^ e.code() as u64).wrapping_mul(0x517c_c1b7_2722_0a95));
            buf.keys.push((h, q as u32, start as u32));
        }
        buf.keys.sort_unstable();
        buf.pairs.clear();
        let row = |off: u32| &buf.data[off as usize..off as usize + dim];
        let mut s = 0;
        while s < buf.keys.len() {
            let mut e = s + 1;
            while e < buf.keys.len() && buf.keys[e].0 == buf.keys[s].0 {
                e += 1;
            }
            for a in s..e {
                for b in a + 1..e {
                    if row(buf.keys[a].2) == row(buf.keys[b].2) {
                        buf.pairs.push((buf.keys[a].1 as usize, buf.keys[b].1 as usize));
                    }
                }
            }
            s = e;
        }
        buf.pairs.sort_unstable();
        Some(buf.pairs.iter().all(|&(a, b)| emit(a, b)))
    }
}

/// Depth-first over fixed sets of size `depth`, calling `emit` with candidate
/// supports in lexicographic order. Returns `false` once `emit` asks to stop.
fn search(
    f: &Field,
    st: &State,
    fixed: &mut Vec<usize>,
    depth: usize,
    emit: &mut dyn FnMut(Vec<usize>) -> bool,
) -> bool {
    if depth == 0 {
        return st.proportional_pairs(f, |a, b| {
            let mut s = fixed.clone();
            s.push(st.idx[a]);
            s.push(st.idx[b]);
            emit(s)
        });
    }
    if depth == 1 {
        let mut buf = PairScratch::default();
        for p in 0..st.idx.len() {
            let go = st.quotient_pairs(f, p, &mut buf, |a, b| {
                let mut s = fixed.clone();
                s.extend([st.idx[p], st.idx[a], st.idx[b]]);
                emit(s)
            });
            if go == Some(false) {
                return false;
            }
        }
        return true;
    }
    for p in 0..st.idx.len() {
        let Some(next) = st.quotient_after(f, p) else { continue };
        fixed.push(st.idx[p]);
        let go = search(f, &next, fixed, depth - 1, emit);
        fixed.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Candidate dependent sets of size `w` whose smallest element is the
/// column at position `first`.
fn search_from(code: &LinearCode, root: &State, first: usize, w: usize, find_one: bool) -> Vec<Vec<usize>> {
    let f = &*code.field;
    let mut out = Vec::new();
    let Some(next) = root.quotient_after(f, first) else { return out };
    let mut fixed = vec![root.idx[first]];
    search(f, &next, &mut fixed, w - 3, &mut |s| {
        out.push(s);
        !find_one
    });
    out
}

/// Like `search_from` with the second element spread over threads.
fn search_from_par(code: &LinearCode, root: &State, first: usize, w: usize, find_one: bool) -> Vec<Vec<usize>> {
    if w < 4 {
        return search_from(code, root, first, w, find_one);
    }
    let f = &*code.field;
    let Some(next) = root.quotient_after(f, first) else { return Vec::new() };
    let head = root.idx[first];
    let branch = |p: usize| {
        let mut out = Vec::new();
        let Some(nn) = next.quotient_after(f, p) else { return out };
        let mut fixed = vec![head, next.idx[p]];
        search(f, &nn, &mut fixed, w - 4, &mut |s| {
            out.push(s);
            !find_one
        });
        out
    };
    let len = next.idx.len();
    if find_one {
        (0..len).into_par_iter().find_map_first(|p| branch(p).into_iter().next()).into_iter().collect()
    } else {
        (0..len).into_par_iter().map(branch).collect::<Vec<_>>().into_iter().flatten().collect()
    }
}

/// Column sets searched per orbit: the representative first, then every
/// column of this and later orbits.
fn orbit_layouts(orbits: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..orbits.len())
        .map(|i| {
            let rep = orbits[i][0];
            let mut rest: Vec<usize> = orbits[i..].iter().flatten().copied().filter(|&c| c != rep).collect();
            rest.sort_unstable();
            let mut cols = vec![rep];
            cols.extend(rest);
            cols
        })
        .collect()
}

/// Dependent sets of size `w >= 3` up to the symmetry: each set is mapped so
/// that its first orbit contributes the representative.
fn orbit_candidates(code: &LinearCode, w: usize, orbits: &[Vec<usize>], find_one: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for cols in orbit_layouts(orbits) {
        let root = State::from_columns(code, &cols);
        for mut s in search_from_par(code, &root, 0, w, find_one) {
            s.sort_unstable();
            out.push(s);
            if find_one {
                return out;
            }
        }
    }
    out
}

fn branch_cost(n: usize, w: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    binom_f64(n - 1, w - 3) * (n - 1) as f64 / (w - 2) as f64
}

/// Work estimate of the orbit-reduced search.
pub fn orbit_search_cost(orbits: &[Vec<usize>], w: usize) -> f64 {
    orbit_layouts(orbits).iter().map(|c| branch_cost(c.len(), w)).sum()
}

fn zero_columns(code: &LinearCode) -> Vec<usize> {
    (0..code.n()).filter(|&c| (0..code.k()).all(|r| code.gen.get(r, c).is_zero())).collect()
}

fn candidates(code: &LinearCode, w: usize, find_one: bool) -> Vec<Vec<usize>> {
    let f = &*code.field;
    match w {
        0 => Vec::new(),
        1 => {
            let z = zero_columns(code).into_iter().map(|c| vec![c]);
            if find_one {
                z.take(1).collect()
            } else {
                z.collect()
            }
        }
        2 => {
            let root = State::initial(code);
            let mut out = Vec::new();
            search(f, &root, &mut Vec::new(), 0, &mut |s| {
                out.push(s);
                !find_one
            });
            out
        }
        _ => {
            let root = State::initial(code);
            let n = code.n();
            if find_one {
                (0..n)
                    .into_par_iter()
                    .find_map_first(|p| search_from(code, &root, p, w, true).into_iter().next())
                    .into_iter()
                    .collect()
            } else {
                (0..n)
                    .into_par_iter()
                    .map(|p| search_from(code, &root, p, w, false))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }
        }
    }
}

/// Outcome of the dual distance search.
#[derive(Clone, Debug, PartialEq)]
pub enum DualDistance {
    Exact { d: usize, witness: Circuit },
    /// No dependent set of size at most `w_max`.
    Exceeds { w_max: usize },
    /// Sizes below `lower_bound` are excluded; size `lower_bound` was over budget.
    Skipped { lower_bound: usize, estimate: f64, budget: f64 },
    /// The dual is the zero code.
    Trivial,
}

impl DualDistance {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DualDistance::Exact { d, .. } => Some(*d),
            _ => None,
        }
    }

    /// Largest `b` with `d >= b` established.
    pub fn lower_bound(&self) -> usize {
        match self {
            DualDistance::Exact { d, .. } => *d,
            DualDistance::Exceeds { w_max } => w_max + 1,
            DualDistance::Skipped { lower_bound, .. } => *lower_bound,
            DualDistance::Trivial => usize::MAX,
        }
    }
}

/// Smallest dependent column set by increasing size; each size is searched
/// exhaustively, so the first hit is minimal and is a circuit.
pub fn dual_min_distance(code: &LinearCode, w_max: usize, budget: f64) -> DualDistance {
    if code.k() == code.n() {
        return DualDistance::Trivial;
    }
    for w in 1..=w_max.min(code.k() + 1) {
        let estimate = search_cost(code.n(), w);
        if estimate > budget {
            return DualDistance::Skipped { lower_bound: w, estimate, budget };
        }
        if let Some(s) = candidates(code, w, true).into_iter().next() {
            let witness = circuit_of(code, &s).expect("first dependent set at minimal size");
            return DualDistance::Exact { d: w, witness };
        }
    }
    DualDistance::Exceeds { w_max }
}

/// Search parameters for `dual_distance_with`.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub w_max: usize,
    pub budget: f64,
    /// Column orbits under a group of code automorphisms, each listing its
    /// representative first. Only valid when the caller has checked the group.
    pub orbits: Option<Vec<Vec<usize>>>,
    /// Supports tried before a size is searched.
    pub hints: Vec<Vec<usize>>,
}

impl SearchOptions {
    pub fn new(w_max: usize, budget: f64) -> SearchOptions {
        SearchOptions { w_max, budget, orbits: None, hints: Vec::new() }
    }
}

/// `dual_min_distance` with symmetry reduction and witness hints. A hint of
/// size `w` is accepted only after all smaller sizes were excluded.
pub fn dual_distance_with(code: &LinearCode, opts: &SearchOptions) -> DualDistance {
    if code.k() == code.n() {
        return DualDistance::Trivial;
    }
    for w in 1..=opts.w_max.min(code.k() + 1) {
        if let Some(c) = opts.hints.iter().filter(|h| h.len() == w).find_map(|h| {
            let mut h = h.clone();
            h.sort_unstable();
            circuit_of(code, &h)
        }) {
            return DualDistance::Exact { d: w, witness: c };
        }
        let hit = match &opts.orbits {
            Some(orbits) if w >= 3 => {
                let estimate = orbit_search_cost(orbits, w);
                if estimate > opts.budget {
                    return DualDistance::Skipped { lower_bound: w, estimate, budget: opts.budget };
                }
                orbit_candidates(code, w, orbits, true).into_iter().next()
            }
            _ => {
                let estimate = search_cost(code.n(), w);
                if estimate > opts.budget {
                    return DualDistance::Skipped { lower_bound: w, estimate, budget: opts.budget };
                }
                candidates(code, w, true).into_iter().next()
            }
        };
        if let Some(s) = hit {
            let witness = circuit_of(code, &s).expect("first dependent set at minimal size");
            return DualDistance::Exact { d: w, witness };
        }
    }
    DualDistance::Exceeds { w_max: opts.w_max }
}

/// Supports of `w` points sharing a `y` coordinate: the first `w` points of
/// every horizontal fiber large enough.
pub fn horizontal_hints(code: &LinearCode, w: usize) -> Vec<Vec<usize>> {
    let mut fibers: BTreeMap<Fe, Vec<usize>> = BTreeMap::new();
    for (i, p) in code.labels.iter().enumerate() {
        if let Some((_, y)) = p.coords() {
            fibers.entry(y).or_default().push(i);
        }
    }
    fibers.into_values().filter(|v| v.len() >= w).map(|v| v[..w].to_vec()).collect()
}

/// All circuits of size `w`, sorted. Dependent sets of size `w` that are not
/// circuits (only possible when `w` exceeds the dual distance) are counted in
/// the second component and left out.
pub fn enumerate_circuits(
    code: &LinearCode,
    w: usize,
    budget: f64,
) -> Result<(Vec<Circuit>, usize), CodeError> {
    let estimate = search_cost(code.n(), w);
    if estimate > budget {
        return Err(CodeError::Budget { w, estimate, budget });
    }
    let mut circuits = Vec::new();
    let mut non_minimal = 0;
    for s in candidates(code, w, false) {
        match circuit_of(code, &s) {
            Some(c) => circuits.push(c),
            None => non_minimal += 1,
        }
    }
    circuits.sort();
    circuits.dedup();
    Ok((circuits, non_minimal))
}

/// Circuits of one size up to a symmetry group.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitCensus {
    /// Circuits through an orbit representative, avoiding earlier orbits.
    pub representatives: Vec<Circuit>,
    /// Number of all circuits of this size.
    pub total: u64,
    pub non_minimal: usize,
}

/// Circuit count from the orbit-reduced search. A circuit whose first orbit
/// is `O` meets it in `k` points; by transitivity each point of `O` lies on
/// the same number of such circuits, so these circuits number
/// `|O| * sum(1/k)` over the ones through the representative.
pub fn orbit_circuit_census(
    code: &LinearCode,
    w: usize,
    orbits: &[Vec<usize>],
    budget: f64,
) -> Result<OrbitCensus, CodeError> {
    if w < 3 {
        let (c, non_minimal) = enumerate_circuits(code, w, budget)?;
        return Ok(OrbitCensus { total: c.len() as u64, representatives: c, non_minimal });
    }
    let estimate = orbit_search_cost(orbits, w);
    if estimate > budget {
        return Err(CodeError::Budget { w, estimate, budget });
    }
    let lcm = (1..=w as u128).fold(1u128, |acc, k| acc * k / gcd_u128(acc, k));
    let mut scaled_total = 0u128;
    let mut reps = Vec::new();
    let mut non_minimal = 0;
    for (i, cols) in orbit_layouts(orbits).into_iter().enumerate() {
        let root = State::from_columns(code, &cols);
        for mut s in search_from_par(code, &root, 0, w, false) {
            s.sort_unstable();
            match circuit_of(code, &s) {
                Some(c) => {
                    let k = c.support.iter().filter(|j| orbits[i].contains(j)).count() as u128;
                    scaled_total += orbits[i].len() as u128 * (lcm / k);
                    reps.push(c);
                }
                None => non_minimal += 1,
            }
        }
    }
    reps.sort();
    Ok(OrbitCensus { representatives: reps, total: (scaled_total / lcm) as u64, non_minimal })
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

/// Minimum-weight dual codewords: `(q^2 - 1)` scalar multiples per circuit.
pub fn min_weight_codeword_count(code: &LinearCode, circuits: &[Circuit]) -> u64 {
    circuits.len() as u64 * code.field.units() as u64
}

/// Histogram of circuit supports by geometry label.
pub fn support_histogram(code: &LinearCode, circuits: &[Circuit]) -> BTreeMap<&'static str, usize> {
    let mut h = BTreeMap::new();
    for c in circuits {
        let pts: Vec<CurvePoint> = c.support.iter().map(|&i| code.labels[i]).collect();
        let label = if pts.len() < 2 { "point" } else { support_geometry(&code.field, &pts).label() };
        *h.entry(label).or_insert(0) += 1;
    }
    h
}

/// Exhaustive count of dual codewords of weight exactly `w`: every support,
/// every choice of the inner coefficients with leading entry one, the last
/// coefficient solved for, times `q^2 - 1`. Meant for short codes only.
pub fn brute_force_weight_count(code: &LinearCode, w: usize) -> u64 {
    let f = &*code.field;
    let n = code.n();
    let units = f.units() as u64;
    let mut total = 0u64;
    let mut support: Vec<usize> = (0..w).collect();
    if w == 0 || w > n {
        return 0;
    }
    loop {
        let cols: Vec<Vec<Fe>> = support.iter().map(|&c| code.column(c)).collect();
        if w == 1 {
            if cols[0].iter().all(|e| e.is_zero()) {
                total += units;
            }
        } else {
            let last = &cols[w - 1];
            let mut logs = vec![0u64; w - 2];
            loop {
                let mut acc = cols[0].clone();
                for (j, &l) in logs.iter().enumerate() {
                    let coef = f.from_log(l);
                    for (a, &v) in acc.iter_mut().zip(&cols[j + 1]) {
                        *a = f.add(*a, f.mul(coef, v));
                    }
                }
                // acc + c * last = 0 for some nonzero c
                if let Some(r) = last.iter().position(|e| !e.is_zero()) {
                    let c = f.neg(f.div(acc[r], last[r]).unwrap());
                    if !c.is_zero() && acc.iter().zip(last).all(|(&a, &v)| f.add(a, f.mul(c, v)).is_zero()) {
                        total += units;
                    }
                }
                let mut pos = 0;
                while pos < logs.len() {
                    logs[pos] += 1;
                    if logs[pos] < units {
                        break;
                    }
                    logs[pos] = 0;
                    pos += 1;
                }
                if pos == logs.len() {
                    break;
                }
            }
        }
        let mut i = w;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if support[i] < n - w + i {
                support[i] += 1;
                for j in i + 1..w {
                    support[j] = support[j - 1] + 1;
                }
                break;
            }
        }
    }
}
