//! Laurent polynomials in a formal root `u` with rational coefficients.
//!
//! The quantum parameter is `q = u^N` for a [`RootOrder`] `N` fixed by the
//! caller. Everything outside the braiding code uses `N = 1`, where `u` and
//! `q` coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot specialize at u = 0")]
    ZeroInput,
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// Order of the formal root: `q = u^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOrder(u32);

impl RootOrder {
    pub const ONE: RootOrder = RootOrder(1);

    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "root order must be positive");
        RootOrder(n)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn exp(self, q_exp: i64) -> i64 {
        q_exp * self.0 as i64
    }
}

impl Default for RootOrder {
    fn default() -> Self {
        RootOrder::ONE
    }
}

/// An element of `Q[u, u^-1]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    coeffs: BTreeMap<i64, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Scalar::monomial(0, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::monomial(0, c)
    }

    /// `c * u^e`.
    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Scalar { coeffs }
    }

    pub fn u_pow(e: i64) -> Self {
        Scalar::monomial(e, BigRational::one())
    }

    /// `q^e` under the given root order.
    pub fn q_pow(e: i64, root: RootOrder) -> Self {
        Scalar::u_pow(root.exp(e))
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i64, root: RootOrder) -> Self {
        let s = Scalar::q_pow(e, root);
        if e.rem_euclid(2) == 1 {
            -s
        } else {
            s
        }
    }

    /// `(-1)^e`.
    pub fn sign(e: i64) -> Self {
        Scalar::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The single monomial `(e, c)` if `self` has exactly one term.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    fn add_term(&mut self, e: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Replaces `u` by `u^factor`; used to move from root order `N` to `N * factor`.
    pub fn embed(&self, factor: u32) -> Scalar {
        Scalar {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * factor as i64, c.clone()))
                .collect(),
        }
    }

    /// Replaces `u` by `u^-1`.
    pub fn bar(&self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Evaluates at `u = u0`.
    pub fn specialize(&self, u0: &BigRational) -> Result<BigRational, ScalarError> {
        if u0.is_zero() {
            return Err(ScalarError::ZeroInput);
        }
        let inv = u0.recip();
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let base = if *e >= 0 { u0 } else { &inv };
            acc += c * pow_rat(base, e.unsigned_abs());
        }
        Ok(acc)
    }

    /// Exact quotient in `Q[u, u^-1]`, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Scalar) -> Option<Scalar> {
        if divisor.is_zero() {
            return None;
        }
        if let Some((e, c)) = divisor.as_monomial() {
            let inv = c.recip();
            return Some(Scalar {
                coeffs: self.coeffs.iter().map(|(x, v)| (x - e, v * &inv)).collect(),
            });
        }
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        let (dtop, dlead) = divisor
            .coeffs
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))?;
        let dlow = divisor.min_exp()?;
        while let Some(rtop) = rem.max_exp() {
            let rlow = rem.min_exp().unwrap_or(rtop);
            if rtop - dtop < rlow - dlow {
                return None;
            }
            let c = rem.coeff(rtop) / &dlead;
            let shift = rtop - dtop;
            quot.add_term(shift, &c);
            for (e, dc) in &divisor.coeffs {
                rem.add_term(e + shift, &(-(dc * &c)));
            }
        }
        Some(quot)
    }

    /// Renders sorted monomials, highest power first, in `q` when `N = 1` and in `u` otherwise.
    pub fn render(&self, root: RootOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let var = if root == RootOrder::ONE { "q" } else { "u" };
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Parses the grammar produced by [`Scalar::render`]. Both `q` and `u` are accepted;
    /// `q^e` is read as `u^(N e)`.
    pub fn parse(text: &str, root: RootOrder) -> Result<Scalar, ScalarError> {
        Parser::new(text, root).parse()
    }
}

fn pow_rat(base: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= base;
    }
    acc
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    root: RootOrder,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, root: RootOrder) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            pos: 0,
            root,
            _src: src,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        let col = self
            .chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or(self._src.len())
            + 1;
        Err(ScalarError::Parse {
            col,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        s.parse().ok()
    }

    fn parse(mut self) -> Result<Scalar, ScalarError> {
        let mut acc = Scalar::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty scalar");
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut neg = false;
            match self.peek() {
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    neg = true;
                    self.pos += 1
                }
                None if !first => break,
                _ if first => {}
                _ => return self.err("expected '+' or '-'"),
            }
            self.skip_ws();
            let term = self.term()?;
            acc += if neg { -term } else { term };
            first = false;
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut coeff = BigRational::one();
        let mut have_coeff = false;
        if let Some(num) = self.integer() {
            have_coeff = true;
            let mut c = BigRational::from_integer(num);
            if self.peek() == Some('/') {
                self.pos += 1;
                match self.integer() {
                    Some(d) if !d.is_zero() => c /= BigRational::from_integer(d),
                    _ => return self.err("expected nonzero denominator"),
                }
            }
            coeff = c;
            self.skip_ws();
            if self.peek() != Some('*') {
                return Ok(Scalar::from_rational(coeff));
            }
            self.pos += 1;
            self.skip_ws();
        }
        let var = match self.peek() {
            Some(v @ ('q' | 'u')) => {
                self.pos += 1;
                v
            }
            _ if have_coeff => return self.err("expected variable after '*'"),
            _ => return self.err("expected number or variable"),
        };
        let mut e: i64 = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(v) = self.integer() else {
                return self.err("expected exponent");
            };
            let Ok(v) = i64::try_from(v) else {
                return self.err("exponent out of range");
            };
            e = if neg { -v } else { v };
        }
        let e = if var == 'q' { self.root.exp(e) } else { e };
        Ok(Scalar::monomial(e, coeff))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.render(RootOrder::new(2)))
    }
}

/// Renders in `q`, i.e. assumes `N = 1`. Use [`Scalar::render`] otherwise.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RootOrder::ONE))
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &-c);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.coeffs.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(mut self, rhs: &Scalar) -> Scalar {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(mut self, rhs: Scalar) -> Scalar {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl Mul<Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul<&Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        &self * rhs
    }
}

impl Mul<Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self * &rhs
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::one();
        for x in iter {
            acc = &acc * &x;
        }
        acc
    }
}

/// `[n]_q`, with `[-n]_q = -[n]_q`.
pub fn quantum_int(n: i64, root: RootOrder) -> Scalar {
    if n < 0 {
        return -quantum_int(-n, root);
    }
    (0..n).map(|j| Scalar::q_pow(n - 1 - 2 * j, root)).sum()
}

/// `[r]_q [r-1]_q ... [1]_q`.
pub fn quantum_factorial(r: i64, root: RootOrder) -> Scalar {
    (1..=r).map(|j| quantum_int(j, root)).product()
}

/// Balanced Gaussian binomial `[n k]_q`.
///
/// For `n >= 0` this runs the recursion `[n k] = q^k [n-1 k] + q^(k-n) [n-1 k-1]`.
/// Negative tops use `[-m k] = (-1)^k [m+k-1 k]`, which keeps
/// `[a t] = [a][a-1]...[a-t+1] / [t]!` valid for every integer `a`.
pub fn quantum_binomial(n: i64, k: i64, root: RootOrder) -> Scalar {
    if k < 0 {
        return Scalar::zero();
    }
    if n < 0 {
        return Scalar::sign(k) * quantum_binomial(-n + k - 1, k, root);
    }
    if k > n {
        return Scalar::zero();
    }
    // row[j] holds [m j] for the current m
    let k = k as usize;
    let mut row = vec![Scalar::zero(); k + 1];
    row[0] = Scalar::one();
    for m in 1..=n {
        for j in (1..=k.min(m as usize)).rev() {
            let j_i = j as i64;
            row[j] =
                Scalar::q_pow(j_i, root) * &row[j] + Scalar::q_pow(j_i - m, root) * &row[j - 1];
        }
    }
    row[k].clone()
}
