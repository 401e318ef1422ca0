use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with exact rational coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// Parses a comma-separated coefficient list, constant term first.
    /// Entries are integers or fractions: `"0,1"`, `"1,-1/2,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text.split(',').map(|item| parse_rational(item.trim())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d && !rem.is_empty() {
            let shift = rem.len() - 1 - d;
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// `1 + max |a_i / a_d|`; every real root lies in `[-bound, bound]`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().map(Signed::abs).unwrap_or_else(BigRational::one);
        let max = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }
}

pub(crate) fn parse_rational(item: &str) -> Result<BigRational> {
    let bad = || Error::Polynomial(format!("`{item}` is not an integer or fraction"));
    let (num, den) = match item.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (item, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Polynomial(format!("`{item}` has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let items: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&items.join(","))
    }
}

/// Sign changes along a Sturm sequence at `x`, ignoring zeros.
pub(crate) fn sign_variations(sturm: &[Polynomial], x: &BigRational) -> usize {
    let signs: Vec<bool> = sturm.iter().map(|p| p.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub(crate) fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}
