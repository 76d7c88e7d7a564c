// SPDX-License-Identifier: Apache-2.0
//! Exact scalars over ℚ, F_p (p an odd prime) and ℚ(√d).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// F_p for an odd prime p.
    Prime(u64),
    /// ℚ(√d) for squarefree d, d ∉ {0, 1}.
    Quadratic(i64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("{p} is not a supported odd prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn quadratic(d: i64) -> Result<Field> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!("{d} is not a squarefree non-square")));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every field")
    }

    /// n/d as a field element; fails when d vanishes in the field.
    pub fn frac(&self, n: i64, d: i64) -> Result<Scalar> {
        self.from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(&self, r: BigRational) -> Result<Scalar> {
        match *self {
            Field::Rationals => Ok(Scalar::Rat(r)),
            Field::Quadratic(d) => Ok(Scalar::Quad { a: r, b: BigRational::zero(), d }),
            Field::Prime(p) => {
                let num = reduce_mod(r.numer(), p);
                let den = reduce_mod(r.denom(), p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Mod { v: mul_mod(num, inv_mod(den, p), p), p })
            }
        }
    }

    /// The surd √d of a quadratic field.
    pub fn surd(&self) -> Result<Scalar> {
        match *self {
            Field::Quadratic(d) => Ok(Scalar::Quad { a: BigRational::zero(), b: BigRational::one(), d }),
            _ => Err(Error::NotInField("s".into())),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        parse_scalar(text, *self)
    }

    /// A square root of the integer n, when the field contains one.
    pub fn sqrt_int(&self, n: i64) -> Option<Scalar> {
        let isqrt = |m: i64| -> Option<i64> {
            if m < 0 {
                return None;
            }
            let r = (m as f64).sqrt().round() as i64;
            (r - 1..=r + 1).find(|k| *k >= 0 && k * k == m)
        };
        match *self {
            Field::Rationals => isqrt(n).map(|k| self.int(k)),
            Field::Quadratic(d) => {
                if let Some(k) = isqrt(n) {
                    return Some(self.int(k));
                }
                if n % d != 0 {
                    return None;
                }
                let k = isqrt(n / d)?;
                Some(Scalar::Quad { a: BigRational::zero(), b: BigRational::from_integer(k.into()), d })
            }
            Field::Prime(p) => {
                let a = reduce_mod(&BigInt::from(n), p);
                tonelli_shanks(a, p).map(|v| Scalar::Mod { v, p })
            }
        }
    }
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::Quadratic(d) => write!(f, "qsqrt:{d}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| Error::InvalidField(s.into()))?;
            return Field::prime(p);
        }
        if let Some(d) = s.strip_prefix("qsqrt:") {
            let d: i64 = d.parse().map_err(|_| Error::InvalidField(s.into()))?;
            return Field::quadratic(d);
        }
        Err(Error::InvalidField(s.into()))
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    ((x as u128 * y as u128) % p as u128) as u64
}

fn pow_mod(mut x: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, x, p);
        }
        x = mul_mod(x, x, p);
        e >>= 1;
    }
    r
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
    /// a + b√d
    Quad { a: BigRational, b: BigRational, d: i64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Quad { d, .. } => Field::Quadratic(*d),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
            Scalar::Quad { a, b, .. } => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
            Scalar::Quad { a, b, .. } => a.is_one() && b.is_zero(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x + y)),
            (Scalar::Mod { v: x, p }, Scalar::Mod { v: y, p: q }) if p == q => {
                Ok(Scalar::Mod { v: ((*x as u128 + *y as u128) % *p as u128) as u64, p: *p })
            }
            (Scalar::Quad { a, b, d }, Scalar::Quad { a: c, b: e, d: d2 }) if d == d2 => {
                Ok(Scalar::Quad { a: a + c, b: b + e, d: *d })
            }
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x * y)),
            (Scalar::Mod { v: x, p }, Scalar::Mod { v: y, p: q }) if p == q => {
                Ok(Scalar::Mod { v: mul_mod(*x, *y, *p), p: *p })
            }
            (Scalar::Quad { a, b, d }, Scalar::Quad { a: c, b: e, d: d2 }) if d == d2 => {
                let dd = BigRational::from_integer(BigInt::from(*d));
                Ok(Scalar::Quad { a: a * c + b * e * dd, b: a * e + b * c, d: *d })
            }
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        if self.field() != o.field() {
            return Err(self.mismatch(o));
        }
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { v, p } => Scalar::Mod { v: inv_mod(*v, *p), p: *p },
            Scalar::Quad { a, b, d } => {
                // (a − b√d)/(a² − d b²); the norm is nonzero since d is not a square.
                let norm = a * a - b * b * BigRational::from_integer(BigInt::from(*d));
                Scalar::Quad { a: a / &norm, b: -(b / &norm), d: *d }
            }
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
            Scalar::Quad { a, b, d } => Scalar::Quad { a: -a, b: -b, d: *d },
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = self.field().one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// The rational value, when the scalar is rational (b = 0 in the quadratic case).
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Quad { a, b, .. } if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$try(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

// Operator forms panic on field mismatch or division by zero; the try_* forms report errors.
forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

macro_rules! int_op {
    ($tr:ident, $m:ident) => {
        impl $tr<i64> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: i64) -> Scalar {
                self.$m(&self.field().int(o))
            }
        }
        impl $tr<i64> for Scalar {
            type Output = Scalar;
            fn $m(self, o: i64) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

// Integer operands are embedded in the scalar's own field.
int_op!(Add, add);
int_op!(Sub, sub);
int_op!(Mul, mul);
int_op!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scalars serialize as their text form, which `parse_scalar` reads back.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
            Scalar::Quad { a, b, .. } => {
                if b.is_zero() {
                    write!(f, "{}", fmt_rat(a))
                } else {
                    let sign = if b.is_negative() { '-' } else { '+' };
                    write!(f, "{}{}{}s", fmt_rat(a), sign, fmt_rat(&b.abs()))
                }
            }
        }
    }
}

fn parse_int(t: &str, whole: &str) -> Result<BigInt> {
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad integer in {whole:?}")));
    }
    t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer in {whole:?}")))
}

fn parse_rat(t: &str, whole: &str) -> Result<BigRational> {
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(t, whole)?)),
        Some((n, d)) => {
            let n = parse_int(n, whole)?;
            if d.starts_with(['+', '-']) {
                return Err(Error::Parse(format!("signed denominator in {whole:?}")));
            }
            let d = parse_int(d, whole)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Parses `int`, `int/int`, or `q (+|-) q s` where `s` denotes the surd.
pub fn parse_scalar(text: &str, f: Field) -> Result<Scalar> {
    let mut t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.starts_with('(') && t.ends_with(')') {
        t = t[1..t.len() - 1].to_string();
    }
    if t.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let Some(body) = t.strip_suffix('s') else {
        return f.from_rational(parse_rat(&t, text)?);
    };
    let Field::Quadratic(d) = f else {
        return Err(Error::NotInField(text.into()));
    };
    // Split at the last sign that is not the leading one.
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .next_back();
    let (rat_part, coef_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let a = if rat_part.is_empty() { BigRational::zero() } else { parse_rat(rat_part, text)? };
    let b = match coef_part {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rat(c, text)?,
    };
    Ok(Scalar::Quad { a, b, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        parse_scalar(s, Field::Rationals).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q("1/4") + q("1/32"), q("9/32"));
        assert_eq!((q("1/4") + q("1/32")).to_string(), "9/32");
    }

    #[test]
    fn prime_inverse() {
        let f = Field::prime(11).unwrap();
        assert_eq!(f.int(2).inv().unwrap().to_string(), "6");
        assert_eq!(f.parse("7").unwrap(), f.int(-4));
        assert_eq!(f.parse("1/2").unwrap(), f.int(6));
        assert_eq!(f.parse("1/11"), Err(Error::DivisionByZero));
    }

    #[test]
    fn quadratic_scaling() {
        let f = Field::quadratic(97).unwrap();
        let x = f.parse("1/24+1/24s").unwrap();
        assert_eq!(&x * &f.int(24), f.parse("1+s").unwrap());
        let y = f.parse("53/192+5/192s").unwrap();
        assert_eq!(y.to_string(), "53/192+5/192s");
        let s = f.surd().unwrap();
        assert_eq!(&s * &s, f.int(97));
        assert_eq!(f.parse("-s").unwrap(), -s.clone());
        assert_eq!(f.parse("(1-3/4s)").unwrap().to_string(), "1-3/4s");
    }

    #[test]
    fn characteristics() {
        assert_eq!(Field::Rationals.characteristic(), 0);
        assert_eq!(Field::prime(11).unwrap().characteristic(), 11);
        assert_eq!(Field::quadratic(97).unwrap().characteristic(), 0);
    }

    #[test]
    fn descriptor_rules() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::quadratic(4).is_err());
        assert!(Field::quadratic(12).is_err());
        assert!(Field::quadratic(1).is_err());
        assert!(Field::quadratic(-1).is_ok());
        for s in ["Q", "fp:11", "qsqrt:97", "qsqrt:-3"] {
            assert_eq!(s.parse::<Field>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(q("1").try_div(&q("0")), Err(Error::DivisionByZero));
        assert!(matches!(parse_scalar("1+s", Field::Rationals), Err(Error::NotInField(_))));
        assert!(matches!(parse_scalar("1/", Field::Rationals), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar("x", Field::Rationals), Err(Error::Parse(_))));
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(q("1").try_add(&f7.one()), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn square_roots() {
        for f in fields() {
            for n in [-5, -1, 2, 4, 9, 97, 3 * 97] {
                if let Some(r) = f.sqrt_int(n) {
                    assert_eq!(r.square(), f.int(n), "{f} {n}");
                }
            }
        }
        assert!(Field::Rationals.sqrt_int(2).is_none());
        assert!(Field::quadratic(97).unwrap().sqrt_int(97).is_some());
        // 97 ≡ 5 (mod 23) is not a square modulo 23; 97 ≡ 1 (mod 3) is.
        assert!(Field::prime(23).unwrap().sqrt_int(97).is_none());
        assert!(Field::prime(3).unwrap().sqrt_int(97).is_some());
        assert!(Field::prime(101).unwrap().sqrt_int(-1).is_some());
    }

    fn fields() -> Vec<Field> {
        vec![Field::Rationals, Field::prime(7).unwrap(), Field::prime(101).unwrap(), Field::quadratic(97).unwrap(), Field::quadratic(-5).unwrap()]
    }

    fn mk(f: Field, a: (i64, i64), b: (i64, i64)) -> Scalar {
        let x = f.frac(a.0, a.1).unwrap_or_else(|_| f.int(a.0));
        match f {
            Field::Quadratic(_) => &x + &(&f.frac(b.0, b.1).unwrap() * &f.surd().unwrap()),
            _ => x,
        }
    }

    fn arb() -> impl Strategy<Value = ((i64, i64), (i64, i64))> {
        ((-50i64..50, 1i64..20), (-50i64..50, 1i64..20))
    }

    proptest! {
        #[test]
        fn field_axioms(fi in 0usize..5, x in arb(), y in arb(), z in arb()) {
            let f = fields()[fi];
            let (x, y, z) = (mk(f, x.0, x.1), mk(f, y.0, y.1), mk(f, z.0, z.1));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &(-&x), f.zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), f.one());
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
        }

        #[test]
        fn print_parse_round_trip(fi in 0usize..5, x in arb()) {
            let f = fields()[fi];
            let x = mk(f, x.0, x.1);
            prop_assert_eq!(parse_scalar(&x.to_string(), f).unwrap(), x);
        }
    }
}
