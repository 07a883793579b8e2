//! Finite fields GF(p^n) with discrete-log representation.
//!
//! Nonzero elements are stored as powers of a canonical generator `g`, the
//! root of the lexicographically smallest primitive polynomial of degree `n`
//! (coefficients compared as `(c_0, c_1, ..., c_{n-1})`). Addition goes
//! through a Zech-logarithm table, so every operation is a table lookup plus
//! a modular add.

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("invalid field parameters: {0}")]
    InvalidParameters(String),
    #[error("operands belong to different fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    WrongField(String),
}

/// A field element in log encoding: `0` is zero, `k + 1` is `g^k`.
///
/// The derived ordering puts zero first and then follows the discrete log,
/// which is the ordering used for curve points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw log code (zero for the zero element).
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    /// Discrete log with respect to the canonical generator.
    #[inline]
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let (mut rest, mut e) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

#[derive(Clone)]
pub struct Field {
    p: u32,
    n: u32,
    order: u32,
    /// Monic defining polynomial, low coefficients `c_0..c_{n-1}`.
    poly: Vec<u32>,
    /// `exp[k]` is the base-p vector code of `g^k`.
    exp: Vec<u32>,
    /// Inverse of `exp` on nonzero vector codes.
    log: Vec<u32>,
    /// `zech[k] = 1 + g^k`.
    zech: Vec<Fe>,
    neg_one: Fe,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("poly", &self.poly)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.n)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}

impl Eq for Field {}

/// Multiplies the vector `a` (coefficients of a polynomial in the root) by the
/// root, reducing with the monic polynomial `poly`.
fn mul_by_root(a: &mut [u32], poly: &[u32], p: u32) {
    let n = a.len();
    let carry = a[n - 1];
    for i in (1..n).rev() {
        a[i] = a[i - 1];
    }
    a[0] = 0;
    if carry != 0 {
        for i in 0..n {
            // x^n = -sum c_i x^i
            a[i] = ((a[i] as u64 + carry as u64 * (p - poly[i]) as u64) % p as u64) as u32;
        }
    }
}

fn encode(a: &[u32], p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Runs the powers of the root of `poly`; returns the vector codes of
/// `root^0 .. root^(order-2)` when the root has multiplicative order
/// `order - 1`.
fn primitive_powers(poly: &[u32], p: u32, order: u32) -> Option<Vec<u32>> {
    if poly[0] == 0 {
        return None;
    }
    let n = poly.len();
    let mut a = vec![0u32; n];
    a[0] = 1;
    let mut codes = Vec::with_capacity(order as usize - 1);
    codes.push(1);
    for _ in 1..order - 1 {
        mul_by_root(&mut a, poly, p);
        let c = encode(&a, p);
        if c == 1 {
            return None;
        }
        codes.push(c);
    }
    mul_by_root(&mut a, poly, p);
    (encode(&a, p) == 1).then_some(codes)
}

/// Builds GF(p^n) with the canonical primitive polynomial.
pub fn make_field(p: u32, n: u32) -> Result<Field, GfError> {
    if !is_prime(p as u64) {
        return Err(GfError::InvalidParameters(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(GfError::InvalidParameters("extension degree must be >= 1".into()));
    }
    let order = (p as u64).checked_pow(n).filter(|&o| o <= MAX_ORDER).ok_or_else(|| {
        GfError::InvalidParameters(format!("order {p}^{n} exceeds the bound {MAX_ORDER}"))
    })? as u32;

    // Candidates in lexicographic order of (c_0, ..., c_{n-1}): c_0 is the
    // most significant digit of the counter.
    let mut found = None;
    for idx in 0..order {
        let mut poly = vec![0u32; n as usize];
        let mut rest = idx;
        for i in (0..n as usize).rev() {
            poly[i] = rest % p;
            rest /= p;
        }
        if let Some(codes) = primitive_powers(&poly, p, order) {
            found = Some((poly, codes));
            break;
        }
    }
    let (poly, exp) = found.expect("a primitive polynomial exists for every degree");

    let mut log = vec![u32::MAX; order as usize];
    for (k, &c) in exp.iter().enumerate() {
        log[c as usize] = k as u32;
    }
    let zech = exp
        .iter()
        .map(|&c| {
            let d0 = c % p;
            let c1 = c - d0 + (d0 + 1) % p;
            if c1 == 0 {
                Fe::ZERO
            } else {
                Fe(log[c1 as usize] + 1)
            }
        })
        .collect();
    let neg_one = if p == 2 { Fe::ONE } else { Fe((order - 1) / 2 + 1) };
    Ok(Field { p, n, order, poly, exp, log, zech, neg_one })
}

impl Field {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients `c_0..c_{n-1}` of the monic defining polynomial.
    pub fn defining_poly(&self) -> &[u32] {
        &self.poly
    }

    /// Size of the multiplicative group.
    #[inline]
    pub fn units(&self) -> u32 {
        self.order - 1
    }

    pub fn generator(&self) -> Fe {
        self.from_log(1)
    }

    #[inline]
    pub fn from_log(&self, k: u64) -> Fe {
        Fe((k % self.units() as u64) as u32 + 1)
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, v: i64) -> Fe {
        let r = v.rem_euclid(self.p as i64) as u32;
        self.from_vector_code(r)
    }

    /// Element from its base-p coordinate code in the polynomial basis.
    pub fn from_vector_code(&self, code: u32) -> Fe {
        if code == 0 {
            Fe::ZERO
        } else {
            Fe(self.log[code as usize] + 1)
        }
    }

    pub fn vector_code(&self, a: Fe) -> u32 {
        match a.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    /// All elements, zero first, then by discrete log.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.order
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let u = self.units();
        let (i, j) = (a.0 - 1, b.0 - 1);
        let diff = if j >= i { j - i } else { j + u - i };
        let z = self.zech[diff as usize];
        if z.0 == 0 {
            return Fe::ZERO;
        }
        let s = i + z.0 - 1;
        Fe(if s >= u { s - u } else { s } + 1)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let u = self.units();
        let s = a.0 - 1 + b.0 - 1;
        Fe(if s >= u { s - u } else { s } + 1)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        match a.log() {
            None => Err(GfError::DivisionByZero),
            Some(k) => Ok(Fe((self.units() - k) % self.units() + 1)),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `0^0 = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a * b + c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: Fe, b: Fe, c: Fe) -> Fe {
        self.add(self.mul(a, b), c)
    }

    fn check_quadratic(&self, q: u32) -> Result<(), GfError> {
        if q as u64 * q as u64 != self.order as u64 {
            return Err(GfError::WrongField(format!(
                "{self} does not have order {q}^2"
            )));
        }
        Ok(())
    }

    /// The `q`-Frobenius `a -> a^q` of GF(q^2).
    pub fn frobenius_q(&self, a: Fe, q: u32) -> Result<Fe, GfError> {
        self.check_quadratic(q)?;
        Ok(match a.log() {
            None => Fe::ZERO,
            Some(k) => self.from_log(k as u64 * q as u64),
        })
    }

    /// Relative trace GF(q^2) -> GF(q), `a^q + a`.
    pub fn rel_trace(&self, a: Fe, q: u32) -> Result<Fe, GfError> {
        Ok(self.add(self.frobenius_q(a, q)?, a))
    }

    /// Relative norm GF(q^2) -> GF(q), `a^(q+1)`.
    pub fn rel_norm(&self, a: Fe, q: u32) -> Result<Fe, GfError> {
        self.check_quadratic(q)?;
        Ok(self.pow(a, q as u64 + 1))
    }

    /// Membership in the subfield of order `q` (which must divide the order
    /// as `q^k`).
    pub fn in_subfield(&self, a: Fe, q: u32) -> bool {
        match a.log() {
            None => true,
            Some(k) => k % (self.units() / (q - 1)) == 0,
        }
    }

    /// Evaluates a polynomial with `F_p` coefficients (low degree first).
    pub fn eval_prime_poly(&self, coeffs: &[u32], a: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, a), self.from_int(c as i64)))
    }

    /// Roots of a polynomial with `F_p` coefficients, ascending by log.
    pub fn roots_of(&self, coeffs: &[u32]) -> Vec<Fe> {
        self.elements()
            .filter(|&a| self.eval_prime_poly(coeffs, a).is_zero())
            .collect()
    }

    /// Maps exponents of another primitive generator (given by its minimal
    /// polynomial) to canonical elements.
    pub fn generator_conversion(&self, coeffs: &[u32]) -> Result<GeneratorMap, GfError> {
        let root = self
            .roots_of(coeffs)
            .into_iter()
            .find(|&r| r.log().is_some_and(|k| gcd(k as u64, self.units() as u64) == 1))
            .ok_or_else(|| {
                GfError::InvalidParameters(format!(
                    "{coeffs:?} has no primitive root in {self}"
                ))
            })?;
        Ok(GeneratorMap { root, units: self.units() })
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        ElemDisplay(a).to_string()
    }

    pub fn elem<'f>(&'f self, a: Fe) -> FieldElement<'f> {
        FieldElement { field: self, value: a }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Translation between a foreign generator `a` and the canonical one.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorMap {
    root: Fe,
    units: u32,
}

impl GeneratorMap {
    pub fn root(&self) -> Fe {
        self.root
    }

    /// Canonical element equal to `a^k`.
    pub fn power(&self, k: u64) -> Fe {
        let l = self.root.log().unwrap() as u64;
        Fe(((l * (k % self.units as u64)) % self.units as u64) as u32 + 1)
    }

    /// Exponent `k` with `a^k = x`, or `None` for zero.
    pub fn exponent_of(&self, x: Fe) -> Option<u64> {
        let u = self.units as u64;
        let inv = mod_inverse(self.root.log().unwrap() as u64, u).unwrap();
        x.log().map(|k| (k as u64 * inv) % u)
    }
}

struct ElemDisplay(Fe);

impl fmt::Display for ElemDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.log() {
            None => f.write_str("0"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

/// Parses the `"0"` / `"g^k"` token format.
pub fn parse_elem(field: &Field, s: &str) -> Option<Fe> {
    let s = s.trim();
    if s == "0" {
        return Some(Fe::ZERO);
    }
    let k: u64 = s.strip_prefix("g^")?.parse().ok()?;
    (k < field.units() as u64).then(|| field.from_log(k))
}

/// An element bound to its field, for call sites that mix fields and want the
/// mismatch reported instead of silently producing garbage.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement<'f> {
    field: &'f Field,
    value: Fe,
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    fn wrap(&self, value: Fe) -> Self {
        FieldElement { field: self.field, value }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ElemDisplay(self.value).fmt(f)
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn big() -> &'static Field {
        static F: OnceLock<Field> = OnceLock::new();
        F.get_or_init(|| make_field(3, 7).unwrap())
    }

    #[test]
    fn ring_laws_seeded_triples() {
        use rand::{Rng, SeedableRng};
        let f = big();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let [a, b, c] = [(); 3].map(|_| Fe(rng.gen_range(0..f.order())));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.sub(f.add(a, b), b), a);
        }
    }

    proptest! {
        #[test]
        fn pow_matches_log_arithmetic(a in 1u32..2187, e in 0u64..100_000) {
            let f = big();
            let a = Fe(a);
            prop_assert_eq!(f.pow(a, e), f.from_log(a.log().unwrap() as u64 * e));
        }
    }
}
