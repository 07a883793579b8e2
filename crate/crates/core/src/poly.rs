//! Sparse bivariate polynomials in `x, y` and truncated power series in one
//! variable.

use std::collections::BTreeMap;

use crate::gf::{Fe, Field};

/// Sparse polynomial `sum c_ij x^i y^j`, keyed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Fe>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Fe) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Fe) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c, None);
        p
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 0, Fe::ONE)
    }

    pub fn y() -> Self {
        BiPoly::monomial(0, 1, Fe::ONE)
    }

    pub fn from_terms(f: &Field, terms: impl IntoIterator<Item = ((u32, u32), Fe)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c, Some(f));
        }
        p
    }

    /// Adds `c x^i y^j`. Without a field the monomial must be new.
    fn add_term(&mut self, i: u32, j: u32, c: Fe, f: Option<&Field>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = f.expect("field needed to combine terms").add(*old, c);
                if s.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *old = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Fe)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Fe {
        self.terms.get(&(i, j)).copied().unwrap_or(Fe::ZERO)
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn add(&self, f: &Field, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c, Some(f));
        }
        out
    }

    pub fn sub(&self, f: &Field, other: &BiPoly) -> BiPoly {
        self.add(f, &other.scale(f, f.neg(Fe::ONE)))
    }

    pub fn scale(&self, f: &Field, c: Fe) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&k, &v)| (k, f.mul(v, c))).collect() }
    }

    pub fn mul(&self, f: &Field, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in other.terms() {
                out.add_term(i1 + i2, j1 + j2, f.mul(c1, c2), Some(f));
            }
        }
        out
    }

    pub fn pow(&self, f: &Field, e: u32) -> BiPoly {
        let mut acc = BiPoly::constant(Fe::ONE);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn eval(&self, f: &Field, x: Fe, y: Fe) -> Fe {
        self.terms().fold(Fe::ZERO, |acc, ((i, j), c)| {
            let t = f.mul(c, f.mul(f.pow(x, i as u64), f.pow(y, j as u64)));
            f.add(acc, t)
        })
    }

    /// Reduces modulo `y^q + y - x^m`, i.e. rewrites `y^q` as `x^m - y` until
    /// every `y`-exponent is below `q`.
    pub fn reduce_mod_curve(&self, f: &Field, q: u32, m: u32) -> BiPoly {
        let mut work = self.clone();
        loop {
            let Some((&(i, j), &c)) = work.terms.iter().find(|(&(_, j), _)| j >= q) else {
                return work;
            };
            work.terms.remove(&(i, j));
            let rest = j - q;
            work.add_term(i + m, rest, c, Some(f));
            work.add_term(i, rest + 1, f.neg(c), Some(f));
        }
    }

    /// Scales so that the coefficient of the largest monomial key is one.
    pub fn monic_by_last(&self, f: &Field) -> BiPoly {
        match self.terms.values().next_back() {
            None => BiPoly::zero(),
            Some(&lead) => self.scale(f, f.inv(lead).unwrap()),
        }
    }

    /// Text form such as `x^2*y + g^3*y^2 + 1`, monomials in key order.
    pub fn display(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|((i, j), c)| {
                let mut factors = Vec::new();
                if c != Fe::ONE || (i == 0 && j == 0) {
                    factors.push(f.fmt_elem(c));
                }
                match i {
                    0 => {}
                    1 => factors.push("x".into()),
                    _ => factors.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => factors.push("y".into()),
                    _ => factors.push(format!("y^{j}")),
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Truncated power series; `len()` is the precision.
pub type Series = Vec<Fe>;

pub fn series_mul(f: &Field, a: &[Fe], b: &[Fe], len: usize) -> Series {
    let mut out = vec![Fe::ZERO; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] = f.add(out[i + j], f.mul(ai, bj));
            }
        }
    }
    out
}

pub fn series_add_scaled(f: &Field, acc: &mut [Fe], c: Fe, a: &[Fe]) {
    if c.is_zero() {
        return;
    }
    for (d, &s) in acc.iter_mut().zip(a) {
        if !s.is_zero() {
            *d = f.add(*d, f.mul(c, s));
        }
    }
}

/// Index of the first nonzero coefficient.
pub fn series_order(s: &[Fe]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn reduction_removes_high_y_powers() {
        let f = make_field(5, 2).unwrap();
        // y^5 -> x^3 - y on y^5 + y = x^3
        let r = BiPoly::monomial(0, 5, Fe::ONE).reduce_mod_curve(&f, 5, 3);
        let expect = BiPoly::from_terms(&f, [((3, 0), Fe::ONE), ((0, 1), f.neg(Fe::ONE))]);
        assert_eq!(r, expect);
        let big = BiPoly::y().pow(&f, 13).reduce_mod_curve(&f, 5, 3);
        assert!(big.y_degree().unwrap() < 5);
    }

    #[test]
    fn reduction_preserves_values_on_curve() {
        let f = make_field(3, 2).unwrap();
        let poly = BiPoly::from_terms(
            &f,
            [((1, 7), f.generator()), ((0, 4), Fe::ONE), ((2, 0), f.from_int(2))],
        );
        let red = poly.reduce_mod_curve(&f, 3, 2);
        for x in f.elements() {
            for y in f.elements() {
                let lhs = f.add(f.pow(y, 3), y);
                if lhs == f.pow(x, 2) {
                    assert_eq!(poly.eval(&f, x, y), red.eval(&f, x, y));
                }
            }
        }
    }

    #[test]
    fn arithmetic_cancels() {
        let f = make_field(7, 1).unwrap();
        let a = BiPoly::x().add(&f, &BiPoly::y());
        assert!(a.sub(&f, &a).is_zero());
        let sq = a.mul(&f, &a);
        assert_eq!(sq.coeff(1, 1), f.from_int(2));
        assert_eq!(sq.display(&f), "y^2 + g^2*x*y + x^2".replace("g^2", &f.fmt_elem(f.from_int(2))));
    }

    #[test]
    fn series_products() {
        let f = make_field(5, 1).unwrap();
        // (1 + t)^2 = 1 + 2t + t^2
        let a = vec![Fe::ONE, Fe::ONE, Fe::ZERO];
        let s = series_mul(&f, &a, &a, 3);
        assert_eq!(s, vec![Fe::ONE, f.from_int(2), Fe::ONE]);
        assert_eq!(series_order(&[Fe::ZERO, Fe::ZERO, Fe::ONE]), Some(2));
        assert_eq!(series_order(&[Fe::ZERO]), None);
    }
}
