//! Exact rationals and commutative polynomials in the fifteen structure
//! parameters of a three-generator bi-quadratic presentation.
//!
//! [`Rational`] is the coefficient field for everything else in the crate.
//! [`ParamPoly`] is used to evaluate closed-form conditions symbolically, both
//! the consistency conditions of a presentation and the side constraints of
//! catalog entries.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Multiplicative inverse.
    ///
    /// Panics on zero; callers hold the invariant that the value is a unit.
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Optional sign, decimal integer, optional `/` and a positive integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let invalid = || RationalParseError::Invalid(s.to_string());
        let (sign, body) = match s.as_bytes()[0] {
            b'-' => (-1, &s[1..]),
            b'+' => (1, &s[1..]),
            _ => (1, s),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(num) {
            return Err(invalid());
        }
        let numer: BigInt = num.parse().map_err(|_| invalid())?;
        let denom: BigInt = match den {
            Some(d) if digits(d) => d.parse().map_err(|_| invalid())?,
            Some(_) => return Err(invalid()),
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(numer * sign, denom)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// The fifteen parameter names of a presentation, in their fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamSymbol {
    Q1,
    Q2,
    Q3,
    A,
    B,
    C,
    Alpha,
    Beta,
    Gamma,
    Lambda,
    Mu,
    Nu,
    B1,
    B2,
    B3,
}

impl ParamSymbol {
    pub const ALL: [ParamSymbol; 15] = [
        ParamSymbol::Q1,
        ParamSymbol::Q2,
        ParamSymbol::Q3,
        ParamSymbol::A,
        ParamSymbol::B,
        ParamSymbol::C,
        ParamSymbol::Alpha,
        ParamSymbol::Beta,
        ParamSymbol::Gamma,
        ParamSymbol::Lambda,
        ParamSymbol::Mu,
        ParamSymbol::Nu,
        ParamSymbol::B1,
        ParamSymbol::B2,
        ParamSymbol::B3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ParamSymbol::Q1 => "q1",
            ParamSymbol::Q2 => "q2",
            ParamSymbol::Q3 => "q3",
            ParamSymbol::A => "a",
            ParamSymbol::B => "b",
            ParamSymbol::C => "c",
            ParamSymbol::Alpha => "alpha",
            ParamSymbol::Beta => "beta",
            ParamSymbol::Gamma => "gamma",
            ParamSymbol::Lambda => "lambda",
            ParamSymbol::Mu => "mu",
            ParamSymbol::Nu => "nu",
            ParamSymbol::B1 => "b1",
            ParamSymbol::B2 => "b2",
            ParamSymbol::B3 => "b3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|s| s.name() == name)
    }
}

impl fmt::Display for ParamSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A total or partial assignment of values to parameter symbols.
pub type Assignment = BTreeMap<ParamSymbol, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value assigned to `{0}`")]
    MissingSymbol(ParamSymbol),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse parameter polynomial at byte {pos}: {message}")]
pub struct PolyParseError {
    pub pos: usize,
    pub message: String,
}

type Exponents = [u16; 15];

/// A commutative polynomial with rational coefficients in the parameter
/// symbols. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term([0; 15], c);
        p
    }

    pub fn symbol(s: ParamSymbol) -> Self {
        let mut e = [0; 15];
        e[s.index()] = 1;
        let mut p = ParamPoly::zero();
        p.add_term(e, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Symbols that occur with a positive exponent.
    pub fn symbols(&self) -> Vec<ParamSymbol> {
        ParamSymbol::ALL
            .iter()
            .copied()
            .filter(|s| self.terms.keys().any(|e| e[s.index()] > 0))
            .collect()
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ParamPoly::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates under the ring homomorphism extending `assignment`.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, EvalError> {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for s in ParamSymbol::ALL {
                let k = e[s.index()];
                if k == 0 {
                    continue;
                }
                let v = assignment.get(&s).ok_or(EvalError::MissingSymbol(s))?;
                term *= &v.pow(k as u32);
            }
            total += &term;
        }
        Ok(total)
    }

    /// Parses an expression over `+ - * ^`, parentheses, rational literals
    /// and the symbol names, e.g. `(1 - q1*q2)*lambda`.
    pub fn parse(src: &str) -> Result<Self, PolyParseError> {
        let mut parser = PolyParser { src: src.as_bytes(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != src.len() {
            return Err(parser.err("trailing input"));
        }
        Ok(p)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().map(|&k| k as u32).sum();
            let db: u32 = eb.iter().map(|&k| k as u32).sum();
            db.cmp(&da).then(eb.cmp(ea))
        });
        for (i, (e, c)) in terms.iter().enumerate() {
            let is_const = e.iter().all(|&k| k == 0);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if is_const || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for s in ParamSymbol::ALL {
                match e[s.index()] {
                    0 => {}
                    1 => factors.push(s.name().to_string()),
                    k => factors.push(format!("{}^{}", s.name(), k)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0u16; 15];
                for i in 0..15 {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err(&self, message: &str) -> PolyParseError {
        PolyParseError {
            pos: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<ParamPoly, PolyParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, PolyParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<ParamPoly, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamPoly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let r: Rational = lit.parse().map_err(|_| self.err("bad rational literal"))?;
                Ok(ParamPoly::constant(r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                ParamSymbol::from_name(name)
                    .map(ParamPoly::symbol)
                    .ok_or_else(|| PolyParseError {
                        pos: start,
                        message: format!("unknown symbol `{}`", name),
                    })
            }
            _ => Err(self.err("expected operand")),
        }
    }
}

/// Left-hand sides of the ten consistency conditions, each moved to the form
/// `lhs - rhs`, in their conventional order (labelled r11 through r20).
pub fn pbw_condition_polys() -> &'static [ParamPoly; 10] {
    static POLYS: OnceLock<[ParamPoly; 10]> = OnceLock::new();
    POLYS.get_or_init(|| {
        const SRC: [&str; 10] = [
            "(1 - q3)*alpha - (1 - q2)*mu",
            "(1 - q3)*a - (1 - q1)*nu",
            "(1 - q2)*b - (1 - q1)*gamma",
            "(1 - q1*q2)*lambda",
            "(q1 - q3)*beta",
            "(1 - q2*q3)*c",
            "((1 - q3)*alpha - mu)*a + (b + q1*gamma)*lambda - nu*alpha + (q1*q2 - 1)*b3",
            "(a - nu)*beta + q1*gamma*mu - q3*alpha*b + (q1 - q3)*b2",
            "(a + (q1 - 1)*nu)*gamma + b*nu - (mu + q3*alpha)*c + (1 - q2*q3)*b1",
            "-(mu + q3*alpha)*b1 + (a - nu)*b2 + (b + q1*gamma)*b3",
        ];
        SRC.map(|s| ParamPoly::parse(s).expect("built-in condition parses"))
    })
}
