//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)−1}` reduced modulo
//! the cyclotomic polynomial Φ_N, so every element has exactly one coefficient
//! list per conductor. Operands with different conductors are embedded into the
//! field of the lcm conductor before combining.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("value {0} is not a rational integer")]
    NotAnInteger(String),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("invalid cyclotomic literal at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Φ_N with integer coefficients, lowest degree first.
///
/// Computed as (x^N − 1) divided exactly by Φ_d for every proper divisor d of N.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs a positive index");
    let mut numerator = vec![BigInt::zero(); n as usize + 1];
    numerator[0] = -BigInt::one();
    numerator[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        numerator = div_exact_monic(&numerator, &cyclotomic_polynomial(d));
    }
    numerator
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Remainder of `poly` modulo the monic integer polynomial `modulus`, padded to
/// length `deg(modulus)`.
fn reduce_mod(mut poly: Vec<BigRational>, modulus: &[BigInt]) -> Vec<BigRational> {
    let deg = modulus.len() - 1;
    while poly.len() > deg {
        let top = poly.pop().expect("non-empty");
        if top.is_zero() {
            continue;
        }
        let shift = poly.len() - deg;
        for (j, mj) in modulus[..deg].iter().enumerate() {
            poly[shift + j] -= &top * BigRational::from_integer(mj.clone());
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

/// An exact element of Q(ζ_N).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds the element Σ c_k ζ_N^k from an arbitrary-length coefficient list.
    pub fn from_power_coeffs(conductor: u64, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let n = conductor as usize;
        // fold exponents modulo N first so the division only runs on degree < N
        let mut folded = vec![BigRational::zero(); n];
        for (k, c) in coeffs.into_iter().enumerate() {
            folded[k % n] += c;
        }
        let coeffs = reduce_mod(folded, &cyclotomic_polynomial(conductor));
        Ok(Cyclotomic { conductor, coeffs })
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// ζ_N^k for any integer exponent k.
    pub fn zeta(conductor: u64, k: i64) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::from_power_coeffs(conductor, coeffs)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients; the length is φ(conductor).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Result<BigInt, CycloError> {
        match self.as_rational() {
            Some(r) if r.is_integer() => Ok(r.to_integer()),
            _ => Err(CycloError::NotAnInteger(self.to_string())),
        }
    }

    /// Re-expresses the element in Q(ζ_L) via ζ_N = ζ_L^{L/N}.
    ///
    /// Panics if `target` is not a multiple of the current conductor.
    pub fn embed(&self, target: u64) -> Self {
        assert!(target.is_multiple_of(self.conductor), "cannot embed Q(ζ_{}) into Q(ζ_{})", self.conductor, target);
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_power_coeffs(target, poly).expect("positive conductor")
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let l = self.conductor.lcm(&other.conductor);
        (self.embed(l), other.embed(l))
    }

    /// Complex conjugation, ζ_N ↦ ζ_N^{N−1}.
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut poly = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n] += c;
        }
        Self::from_power_coeffs(self.conductor, poly).expect("positive conductor")
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.unify(rhs);
        Cyclotomic { conductor: a.conductor, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.unify(rhs);
        Cyclotomic { conductor: a.conductor, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        let (a, b) = self.unify(rhs);
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Cyclotomic { conductor: a.conductor, coeffs: reduce_mod(prod, &cyclotomic_polynomial(a.conductor)) }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders in the literal grammar accepted by [`FromStr`]: rationals and
/// `c*z(N,k)` terms joined by `+`/`-`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "z({},{})", self.conductor, k)?;
            } else {
                write!(f, "{}*z({},{})", fmt_rational(&mag), self.conductor, k)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct LiteralParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LiteralParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, CycloError> {
        Err(CycloError::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), CycloError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt, CycloError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn small(&mut self) -> Result<i64, CycloError> {
        let start = self.pos;
        let n = self.integer()?;
        i64::try_from(n).or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn root(&mut self) -> Result<Cyclotomic, CycloError> {
        self.expect(b'z')?;
        self.expect(b'(')?;
        let at = self.pos;
        let n = self.small()?;
        if n < 1 {
            self.pos = at;
            return self.err("conductor must be positive");
        }
        self.expect(b',')?;
        let k = self.small()?;
        self.expect(b')')?;
        Cyclotomic::zeta(n as u64, k)
    }

    fn term(&mut self) -> Result<Cyclotomic, CycloError> {
        match self.peek() {
            Some(b'z') => self.root(),
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut coeff = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if !den.is_positive() {
                        self.pos = at;
                        return self.err("denominator must be positive");
                    }
                    coeff /= BigRational::from_integer(den);
                }
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok(self.root()?.scale(&coeff))
                } else {
                    Ok(Cyclotomic::from_rational(coeff))
                }
            }
            _ => self.err("expected a number or z(N,k)"),
        }
    }

    fn literal(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                None => return Ok(acc),
                _ => return self.err("unexpected character"),
            }
        }
    }
}

impl FromStr for Cyclotomic {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LiteralParser { src: s.as_bytes(), pos: 0 }.literal()
    }
}
