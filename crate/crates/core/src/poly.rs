//! Sparse multivariate polynomials over a field context.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::scalar::{format_scalar, parse_scalar, LocalScalar};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^k`, `k > 0`.
    pub fn pure_power(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Monomial orders, all with `x_1 > ... > x_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the
    /// rest; eliminates the first block.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(k) => grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..])),
        }
    }
}

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, m: &Monomial) -> E {
        self.terms.get(m).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms sorted from largest to smallest.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, E)> {
        let mut t: Vec<(Monomial, E)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &E)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn from_terms<F: Field<Elem = E>>(f: &F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, E)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(f, m, &c);
        }
        p
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nvars: usize, c: E) -> Self {
        Poly::from_terms(f, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var<F: Field<Elem = E>>(f: &F, nvars: usize, i: usize) -> Self {
        Poly::from_terms(f, nvars, [(Monomial::var(nvars, i), f.one())])
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, m: Monomial, c: &E) {
        if f.is_zero(c) {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => f.add(&old, c),
            None => c.clone(),
        };
        if !f.is_zero(&v) {
            self.terms.insert(m, v);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(f, m.clone(), c);
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(f, m.clone(), &f.neg(c));
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), f.mul(x, c))).collect() }
    }

    /// `c * m * self`.
    pub fn mul_term<F: Field<Elem = E>>(&self, f: &F, m: &Monomial, c: &E) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(k, x)| (k.mul(m), f.mul(x, c))).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &other.terms {
            for (k, x) in &self.terms {
                out.add_term(f, k.mul(m), &f.mul(x, c));
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut out = Poly::constant(f, self.nvars, f.one());
        for _ in 0..e {
            out = out.mul(f, self);
        }
        out
    }

    /// Substitutes `x_i -> images[i]` (all in the same variable count).
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, images: &[Poly<E>]) -> Poly<E> {
        let n = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(f, n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(f, &images[i].pow(f, e));
                }
            }
            out = out.add(f, &t);
        }
        out
    }

    pub fn map<F2: Field>(&self, f2: &F2, g: impl Fn(&E) -> F2::Elem) -> Poly<F2::Elem> {
        Poly::from_terms(f2, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), g(c))))
    }

    pub fn constant_term<F: Field<Elem = E>>(&self, f: &F) -> E {
        self.coeff(f, &Monomial::one(self.nvars))
    }

    /// Coefficients of `x_1, ..., x_n`.
    pub fn linear_part<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        (0..self.nvars).map(|i| self.coeff(f, &Monomial::var(self.nvars, i))).collect()
    }

    /// Drops variable `i`, which must not occur.
    pub fn remove_var(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert_eq!(m.0[i], 0);
                let mut e = m.0.clone();
                e.remove(i);
                (Monomial(e), c.clone())
            })
            .collect();
        Poly { nvars: self.nvars - 1, terms }
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Adds `k` fresh variables in front.
    pub fn shift_vars(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; k];
                e.extend(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        Poly { nvars: self.nvars + k, terms }
    }
}

/// Polynomials with coefficients in `E`, used for presentations over `O`.
pub type QPoly = Poly<LocalScalar>;

/// Default variable names `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl QPoly {
    /// Parses `c*x1^a*x2^b + ...` over the given variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Error::Validation(format!("polynomial `{}`: {msg}", text.trim()));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut poly = Poly::zero(n);
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        let bytes = s.as_bytes();
        let mut i = 0;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            neg = bytes[0] == b'-';
            start = 1;
            i = 1;
        }
        while i < bytes.len() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && i > start && bytes[i - 1] != b'^' && bytes[i - 1] != b'/' {
                terms.push((neg, &s[start..i]));
                neg = c == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((neg, &s[start..]));
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let mut coeff = LocalScalar::one();
            let mut mono = Monomial::one(n);
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor".into()));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    coeff *= parse_scalar(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let idx = names.iter().position(|v| v == name).ok_or_else(|| bad(format!("unknown variable `{name}`")))?;
                mono.0[idx] += exp;
            }
            if neg {
                coeff = -coeff;
            }
            poly.add_term(&Rationals, mono, &coeff);
        }
        Ok(poly)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a QPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(MonomialOrder::Grevlex);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(format_scalar(&a));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.names[i])),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Whether every coefficient lies in `O`.
pub fn is_integral(o: &crate::Dvr, p: &QPoly) -> bool {
    p.terms().all(|(_, c)| o.is_integral(c))
}

/// `x_i -> x_i + shift[i]`.
pub fn translate(p: &QPoly, shift: &[LocalScalar]) -> QPoly {
    let n = p.nvars();
    let f = Rationals;
    let images: Vec<QPoly> = (0..n)
        .map(|i| Poly::var(&f, n, i).add(&f, &Poly::constant(&f, n, shift[i].clone())))
        .collect();
    p.compose(&f, &images)
}

pub fn eval(p: &QPoly, point: &[LocalScalar]) -> LocalScalar {
    let mut acc = LocalScalar::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t *= &point[i];
            }
        }
        acc += t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::Grevlex;
        let m = |v: &[u32]| Monomial(v.to_vec());
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[2, 0, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
        let b = MonomialOrder::Block(1);
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn parse_print_round_trip() {
        let v = names(&["x", "y"]);
        for s in ["x^2 - 8*x", "-x*y + 1/3*y^2 + 4", "x", "0", "-2", "x^3*y^2 - x*y + 5/7"] {
            let p = QPoly::parse(s, &v).unwrap();
            assert_eq!(p.display(&v).to_string(), s);
        }
        let p = QPoly::parse("y*x + x*y - 2*x*x", &v).unwrap();
        assert_eq!(p.display(&v).to_string(), "-2*x^2 + 2*x*y");
        assert!(QPoly::parse("x + z", &v).is_err());
        assert!(QPoly::parse("x +", &v).is_err());
        assert!(QPoly::parse("x^-1", &v).is_err());
    }

    #[test]
    fn translation_examples() {
        let v = names(&["x", "y"]);
        let f = QPoly::parse("x^2 - 8*x", &v).unwrap();
        let g = translate(&f, &[int(8), int(0)]);
        assert_eq!(g.display(&v).to_string(), "x^2 + 8*x");
        let f = QPoly::parse("x*y - 4", &v).unwrap();
        let g = translate(&f, &[int(2), int(2)]);
        assert_eq!(g.display(&v).to_string(), "x*y + 2*x + 2*y");
        assert_eq!(eval(&f, &[int(2), int(2)]), int(0));
    }

    #[test]
    fn arithmetic() {
        let v = names(&["x", "y"]);
        let f = Rationals;
        let a = QPoly::parse("x + y", &v).unwrap();
        let sq = a.mul(&f, &a);
        assert_eq!(sq.display(&v).to_string(), "x^2 + 2*x*y + y^2");
        assert!(sq.sub(&f, &a.pow(&f, 2)).is_zero());
        assert_eq!(a.linear_part(&f), vec![int(1), int(1)]);
    }
}
