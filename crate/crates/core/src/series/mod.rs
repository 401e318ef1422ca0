//! Exact truncated power series over the rationals.
//!
//! A [`TruncatedSeries`] of order `N` knows `c_0..=c_N` and nothing beyond.
//! Binary operations truncate to the smaller order; nothing is ever padded
//! with zeros, since a padded zero would be a claim about an unknown
//! coefficient.

mod poly;
mod supercritical;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::CountTable;
use crate::error::{Error, Result};
use crate::io::RationalPair;

pub use poly::Polynomial;
pub use supercritical::{
    probe_truncated, rational_supercritical, PoleLocation, RationalFunction, SupercriticalStatus, SupercriticalVerdict,
    Witness, DEFAULT_CHECK_ORDER,
};

/// Which counting series to read off a [`CountTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sum_n Av_n z^n`, with constant term 1.
    Total,
    /// `sum_n Av_{n,l} z^n` for the given block count `l`.
    Blocks(usize),
}

/// Outcome of a coefficientwise comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    Holds,
    /// Smallest `n` with `c_n(F) < c_n(G)`.
    ViolatedAt(usize),
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SeriesJson", try_from = "SeriesJson")]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// `coeffs` holds `c_0..=c_N`; it must be nonempty.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { coeffs }
    }

    /// Parses `c_0,...,c_N` (integers or fractions); the order is the number
    /// of entries minus one, trailing zeros included.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text.split(',').map(|item| poly::parse_rational(item.trim())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone().into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `z` truncated at `order` (which must be at least 1 to hold the `z` term).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn from_counts(table: &CountTable, kind: SeriesKind) -> Result<Self> {
        let n_max = table.n_max();
        let coeffs = match kind {
            SeriesKind::Total => table.totals().iter().map(ratio_of_unsigned).collect(),
            SeriesKind::Blocks(ell) => {
                if ell == 0 || ell > n_max {
                    return Err(Error::BlockCountOutOfRange { ell, n_max });
                }
                (0..=n_max).map(|n| ratio_of_unsigned(&table.by_blocks(n, ell))).collect()
            }
        };
        Ok(Self::new(coeffs))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `self^exp` by binary exponentiation; `power(0)` is the series 1.
    pub fn power(&self, mut exp: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.multiply(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ConstantTerm { expected: "nonzero".into(), found: "0".into() });
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let s: BigRational = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-s * &inv0);
        }
        Ok(Self::new(out))
    }

    /// `1 / (1 - G)`, i.e. `sum_l G^l`; needs `c_0 = 0`.
    pub fn quasi_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0".into(), found: self.coeffs[0].to_string() });
        }
        let mut out = vec![BigRational::one()];
        for n in 1..=self.order() {
            out.push((1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum());
        }
        Ok(Self::new(out))
    }

    /// `1 - 1/A`; needs `c_0 = 1`.
    pub fn indecomposable_part(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm { expected: "1".into(), found: self.coeffs[0].to_string() });
        }
        Ok(Self::one(self.order()).sub(&self.reciprocal()?))
    }

    /// Checks `c_n(self) >= c_n(other)` for every `n <= N`.
    pub fn dominates(&self, other: &Self) -> Result<Dominance> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a < b)
            .map_or(Dominance::Holds, Dominance::ViolatedAt))
    }

    /// Exact value of the truncated polynomial at `z0`.
    pub fn eval_partial(&self, z0: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z0 + c)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

pub(crate) fn ratio_of_unsigned(c: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(c.clone()))
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (wrote, negative) {
                (false, true) => f.write_str("-")?,
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, false) => {}
            }
            let coeff = if mag.is_one() && n > 0 { String::new() } else { mag.to_string() };
            match n {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}z")?,
                _ => write!(f, "{coeff}z^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coefficients: Vec<RationalPair>,
}

impl From<TruncatedSeries> for SeriesJson {
    fn from(s: TruncatedSeries) -> Self {
        Self { order: s.order(), coefficients: s.coeffs.iter().map(RationalPair::from).collect() }
    }
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = String;

    fn try_from(j: SeriesJson) -> std::result::Result<Self, String> {
        if j.coefficients.len() != j.order + 1 {
            return Err(format!(
                "order {} needs {} coefficients, found {}",
                j.order,
                j.order + 1,
                j.coefficients.len()
            ));
        }
        let coeffs = j.coefficients.into_iter().map(BigRational::try_from).collect::<std::result::Result<_, _>>()?;
        Ok(Self::new(coeffs))
    }
}
