//! Exact arithmetic in `O = Z_(p)`, its fraction field `E = Q` and its
//! residue field `F_p`.
//!
//! Elements of `O` are stored as reduced rationals whose denominator is
//! prime to `p`; the same type doubles as an element of `E`. Which ring a
//! value is read in is decided by the [`Dvr`] context, never by the value.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of `O` (or of `E` in fraction-field mode).
pub type LocalScalar = BigRational;

/// A `p`-adic valuation; zero has valuation `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Whether a division must stay inside `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivMode {
    Ring,
    Fraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The base discrete valuation ring, fixed by its residue characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dvr {
    p: u64,
    prime: BigInt,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Dvr {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Dvr { p, prime: BigInt::from(p) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    /// `p^k` as a scalar.
    pub fn uniformizer_pow(&self, k: u64) -> LocalScalar {
        BigRational::from_integer(num_traits::pow(self.prime.clone(), k as usize))
    }

    fn int_valuation(&self, n: &BigInt) -> i64 {
        debug_assert!(!n.is_zero());
        let mut n = n.abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&self.prime);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    }

    pub fn valuation(&self, s: &LocalScalar) -> Valuation {
        if s.is_zero() {
            return Valuation::Infinite;
        }
        Valuation::Finite(self.int_valuation(s.numer()) - self.int_valuation(s.denom()))
    }

    /// True when `s` lies in `O`.
    pub fn is_integral(&self, s: &LocalScalar) -> bool {
        self.valuation(s) >= Valuation::Finite(0)
    }

    pub fn is_unit(&self, s: &LocalScalar) -> bool {
        self.valuation(s) == Valuation::Finite(0)
    }

    pub fn arith(&self, a: &LocalScalar, b: &LocalScalar, op: ArithOp, mode: DivMode) -> Result<LocalScalar> {
        match op {
            ArithOp::Add => Ok(a + b),
            ArithOp::Sub => Ok(a - b),
            ArithOp::Mul => Ok(a * b),
            ArithOp::Div => self.div(a, b, mode),
        }
    }

    pub fn div(&self, a: &LocalScalar, b: &LocalScalar, mode: DivMode) -> Result<LocalScalar> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = a / b;
        if mode == DivMode::Ring && !self.is_integral(&q) {
            return Err(Error::DivisionLeavesRing);
        }
        Ok(q)
    }

    /// Reduction `O -> F_p`. Panics on a non-integral input.
    pub fn residue(&self, s: &LocalScalar) -> u64 {
        assert!(self.is_integral(s), "residue of a non-integral scalar");
        let p = &self.prime;
        let num = s.numer().mod_floor(p).to_u64().unwrap();
        let den = s.denom().mod_floor(p).to_u64().unwrap();
        num * inv_mod(den, self.p) % self.p
    }

    /// The representative in `[0, p^k)` of an integral scalar mod `p^k`.
    pub fn residue_mod(&self, s: &LocalScalar, k: u64) -> LocalScalar {
        assert!(self.is_integral(s), "residue of a non-integral scalar");
        let m = num_traits::pow(self.prime.clone(), k as usize);
        let den = s.denom().mod_floor(&m);
        let g = den.extended_gcd(&m);
        debug_assert!(g.gcd.is_one());
        let r = (s.numer() * g.x).mod_floor(&m);
        BigRational::from_integer(r)
    }

    /// Splits a nonzero scalar as `u * p^v` with `u` a unit of `O`.
    pub fn unit_part(&self, s: &LocalScalar) -> (LocalScalar, i64) {
        let v = self.valuation(s).finite().expect("unit part of zero");
        let pv = self.uniformizer_pow(v.unsigned_abs());
        let u = if v >= 0 { s / pv } else { s * pv };
        (u, v)
    }

    pub fn parse(&self, text: &str) -> Result<LocalScalar> {
        parse_scalar(text)
    }
}

/// Inverse modulo a prime, by Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Parses `a` or `a/b` in decimal, with an optional sign.
pub fn parse_scalar(text: &str) -> Result<LocalScalar> {
    let t = text.trim();
    let bad = || Error::Validation(format!("malformed scalar `{text}`"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
    }
}

/// Canonical printing: `a` for integers, `a/b` otherwise.
pub fn format_scalar(s: &LocalScalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn int(n: i64) -> LocalScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Total order used for deterministic pivot tie-breaking: by numerator
/// magnitude, then denominator.
pub fn magnitude_cmp(a: &LocalScalar, b: &LocalScalar) -> Ordering {
    a.numer()
        .abs()
        .cmp(&b.numer().abs())
        .then_with(|| a.denom().cmp(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> LocalScalar {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(Dvr::new(2).unwrap().valuation(&int(12)), Valuation::Finite(2));
        assert_eq!(Dvr::new(3).unwrap().valuation(&int(0)), Valuation::Infinite);
        assert_eq!(Dvr::new(5).unwrap().valuation(&q(7, 3)), Valuation::Finite(0));
    }

    #[test]
    fn arith_examples() {
        let o = Dvr::new(2).unwrap();
        assert_eq!(o.arith(&q(1, 3), &q(1, 3), ArithOp::Add, DivMode::Ring).unwrap(), q(2, 3));
        assert_eq!(o.div(&int(1), &int(2), DivMode::Ring), Err(Error::DivisionLeavesRing));
        assert_eq!(o.div(&int(1), &int(2), DivMode::Fraction).unwrap(), q(1, 2));
        assert_eq!(o.arith(&int(2), &q(3, 5), ArithOp::Mul, DivMode::Ring).unwrap(), q(6, 5));
        assert_eq!(o.div(&int(1), &int(0), DivMode::Fraction), Err(Error::DivisionByZero));
    }

    #[test]
    fn residue_examples() {
        // brute-force inverse search for 3 mod 5
        let inv3 = (1..5u64).find(|x| (3 * x) % 5 == 1).unwrap();
        assert_eq!(inv3, 2);
        assert_eq!(Dvr::new(5).unwrap().residue(&q(7, 3)), (7 * inv3) % 5);
        assert_eq!(Dvr::new(5).unwrap().residue(&q(7, 3)), 4);
        assert_eq!(Dvr::new(2).unwrap().residue(&int(4)), 0);
        assert_eq!(Dvr::new(3).unwrap().residue(&int(1)), 1);
        assert_eq!(Dvr::new(3).unwrap().residue(&int(-1)), 2);
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Dvr::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Dvr::new(1), Err(Error::NotPrime(1)));
        assert!(Dvr::new(7).is_ok());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_scalar("-6/4").unwrap(), q(-3, 2));
        assert_eq!(format_scalar(&q(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&int(8)), "8");
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/").is_err());
        assert_eq!(parse_scalar("3/0"), Err(Error::DivisionByZero));
    }

    fn scalar() -> impl Strategy<Value = LocalScalar> {
        (-500i64..500, prop::sample::select(vec![1i64, 3, 5, 7, 9, 11, 13]))
            .prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn valuation_is_multiplicative(a in scalar(), b in scalar()) {
            let o = Dvr::new(2).unwrap();
            let (va, vb) = (o.valuation(&a), o.valuation(&b));
            let vab = o.valuation(&(&a * &b));
            match (va, vb) {
                (Valuation::Finite(x), Valuation::Finite(y)) => prop_assert_eq!(vab, Valuation::Finite(x + y)),
                _ => prop_assert_eq!(vab, Valuation::Infinite),
            }
        }

        #[test]
        fn valuation_is_ultrametric(a in scalar(), b in scalar()) {
            let o = Dvr::new(2).unwrap();
            let (va, vb) = (o.valuation(&a), o.valuation(&b));
            let vs = o.valuation(&(&a + &b));
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }

        #[test]
        fn print_parse_roundtrip(a in scalar()) {
            prop_assert_eq!(parse_scalar(&format_scalar(&a)).unwrap(), a);
        }
    }
}
