//! Exact Laurent polynomials in the variable `z = t^(1/2)`.
//!
//! All Jones-type invariants in this crate are stored with integer exponents
//! in `z`, so half-integer powers of `t` never require fractional arithmetic.
//! Coefficients are arbitrary-precision integers. Rendering in the variable
//! `t` divides exponents by two and prints `t^{k/2}` for odd `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Errors produced by polynomial operations and parsing.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    /// Degree queries are undefined for the zero polynomial.
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    /// A string could not be parsed back into a polynomial.
    #[error("cannot parse polynomial term `{0}`")]
    Parse(String),
    /// Division with remainder where exactness was required.
    #[error("polynomial division is not exact")]
    InexactDivision,
}

/// A Laurent polynomial over the integers in a single variable `z`.
///
/// Internally a sparse map from exponent to nonzero coefficient; the zero
/// polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * z^e` (drops the term if `c == 0`).
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no nonzero terms (alias of [`Self::is_zero`]).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `z^e` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Highest exponent in `z`. Errors on the zero polynomial.
    pub fn deg_hi(&self) -> Result<i64, PolyError> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(PolyError::ZeroDegree)
    }

    /// Lowest exponent in `z`. Errors on the zero polynomial.
    pub fn deg_lo(&self) -> Result<i64, PolyError> {
        self.terms.keys().next().copied().ok_or(PolyError::ZeroDegree)
    }

    /// Substitutes `z -> z^-1` (the mirror-image symmetry of the Jones
    /// polynomial).
    /// Exact division: returns `self / divisor` when the division leaves no
    /// remainder, and an error otherwise.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (d_lo, d_c) = divisor
            .terms
            .iter()
            .next()
            .map(|(e, c)| (*e, c.clone()))
            .expect("non-zero divisor");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((r_lo, r_c)) = rem.terms.iter().next().map(|(e, c)| (*e, c.clone())) {
            use num_integer::Integer;
            let (q, r) = r_c.div_rem(&d_c);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let term = Self::monomial(r_lo - d_lo, q);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Ok(quot)
    }

    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Raises to a non-negative integer power by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// True when every exponent is congruent to `parity` mod 2.
    pub fn exponents_have_parity(&self, parity: i64) -> bool {
        let p = parity.rem_euclid(2);
        self.terms.keys().all(|e| e.rem_euclid(2) == p)
    }

    /// Serializes to ascending `[exponent, coefficient-string]` pairs.
    pub fn to_json_pairs(&self) -> Vec<(i64, String)> {
        self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }

    /// Rebuilds from the representation produced by [`Self::to_json_pairs`].
    pub fn from_json_pairs(pairs: &[(i64, String)]) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        for (e, c) in pairs {
            let coeff: BigInt = c.parse().map_err(|_| PolyError::Parse(c.clone()))?;
            p.add_term(*e, coeff);
        }
        Ok(p)
    }

    /// Renders in the variable `t` (descending powers, half-integer exponents
    /// written `t^{k/2}`). The zero polynomial renders as `"0"`.
    pub fn render_t(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if *e != 0 {
                out.push('t');
                let half = *e / 2;
                if *e % 2 == 0 {
                    if half != 1 {
                        out.push_str(&format!("^{half}"));
                    }
                } else {
                    out.push_str(&format!("^{{{e}/2}}"));
                }
            }
        }
        out
    }

    /// Parses the output of [`Self::render_t`]. Accepts `t`, `t^k`, `t^{k}`,
    /// and `t^{k/2}` with optional integer coefficients and signs.
    pub fn parse_t(input: &str) -> Result<Self, PolyError> {
        let s = input.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        // Split into signed terms; a leading '+' is implicit.
        let normalized = s.replace(" - ", " + -").replace(['\t'], " ");
        let first = normalized.trim_start();
        let (lead_sign, rest) = match first.strip_prefix('-') {
            Some(r) => (-1i64, r),
            None => (1i64, first),
        };
        for (i, raw) in rest.split(" + ").enumerate() {
            let term = raw.trim();
            if term.is_empty() {
                return Err(PolyError::Parse(input.to_string()));
            }
            let (mut sign, body) = match term.strip_prefix('-') {
                Some(r) => (-1i64, r.trim()),
                None => (1i64, term),
            };
            if i == 0 {
                sign *= lead_sign;
            }
            let (exp_z, coeff) = Self::parse_term(body).ok_or_else(|| PolyError::Parse(term.to_string()))?;
            p.add_term(exp_z, coeff * BigInt::from(sign));
        }
        Ok(p)
    }

    /// Parses a single unsigned term like `2t^{-3/2}` into `(z-exponent, coeff)`.
    fn parse_term(body: &str) -> Option<(i64, BigInt)> {
        if let Some(pos) = body.find('t') {
            let coeff_str = body[..pos].trim();
            let coeff: BigInt = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str.parse().ok()?
            };
            let exp_part = body[pos + 1..].trim();
            let exp_z = if exp_part.is_empty() {
                2
            } else {
                let inner = exp_part.strip_prefix('^')?.trim();
                let inner = inner
                    .strip_prefix('{')
                    .and_then(|x| x.strip_suffix('}'))
                    .unwrap_or(inner);
                if let Some(num) = inner.strip_suffix("/2") {
                    num.trim().parse::<i64>().ok()?
                } else {
                    2 * inner.trim().parse::<i64>().ok()?
                }
            };
            Some((exp_z, coeff))
        } else {
            // Constant term.
            let coeff: BigInt = body.trim().parse().ok()?;
            Some((0, coeff))
        }
    }

    /// Renders in the internal variable `z`, ascending powers, for debugging.
    pub fn render_z(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| format!("{c}*z^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_t())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

/// Serde representation: ascending `[exp, coeff]` pairs with string coefficients.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i64, String)>::deserialize(d)?;
        LaurentPoly::from_json_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}
