//! Supercriticality of `F = 1/(1 - G)`: whether `G` exceeds 1 inside its
//! disc of convergence.
//!
//! For rational `G` with nonnegative coefficients the smallest positive root
//! of the reduced denominator is the radius of convergence and a pole, so `G`
//! grows without bound there. The root is isolated by bisection driven by
//! exact Sturm root counts; the witness is a rational point below the pole at
//! which `G` is evaluated exactly. No floating point is involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::{sign_variations, sturm_sequence, Polynomial};
use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::io::RationalPair;

/// Maclaurin coefficients checked for nonnegativity by default.
pub const DEFAULT_CHECK_ORDER: usize = 64;

/// Pole isolation stops once the bracket is narrower than this.
fn isolation_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(9)))
}

/// Extra halvings toward the pole allowed while looking for a witness.
const WITNESS_STEPS: usize = 256;

/// A ratio of polynomials in lowest terms with denominator constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Polynomial("denominator is zero".into()));
        }
        let g = numerator.gcd(&denominator);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (numerator.div_rem(&g).0, denominator.div_rem(&g).0)
        } else {
            (numerator, denominator)
        };
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Polynomial("denominator vanishes at 0 after reduction".into()));
        }
        let inv = d0.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(Self { numerator: num, denominator: den })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self { numerator: p, denominator: Polynomial::constant(BigRational::one()) }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == Some(0)
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.denominator.eval(x);
        (!d.is_zero()).then(|| self.numerator.eval(x) / d)
    }

    /// Maclaurin expansion to `order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let pad = |p: &Polynomial| TruncatedSeries::new((0..=order).map(|i| p.coeff(i)).collect());
        let inv = pad(&self.denominator).reciprocal().expect("denominator has constant term 1");
        pad(&self.numerator).multiply(&inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupercriticalStatus {
    Supercritical,
    NotSupercritical,
    Inconclusive,
}

/// A point `z0` with the exact value of `G` (or of its truncation) there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_rational")]
    pub z0: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
}

/// The smallest positive pole lies in `(lower, upper]`; `lower == upper` when it is known exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleLocation {
    #[serde(serialize_with = "ser_rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: BigRational,
}

impl PoleLocation {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupercriticalVerdict {
    pub status: SupercriticalStatus,
    pub witness: Option<Witness>,
    pub pole: Option<PoleLocation>,
    pub evidence: String,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    RationalPair::from(q).serialize(s)
}

/// Decides supercriticality of `1/(1 - G)` for rational `G`, checking the
/// first [`DEFAULT_CHECK_ORDER`] Maclaurin coefficients for nonnegativity.
pub fn rational_supercritical(g: &RationalFunction) -> Result<SupercriticalVerdict> {
    rational_supercritical_checked(g, DEFAULT_CHECK_ORDER)
}

pub fn rational_supercritical_checked(g: &RationalFunction, check_order: usize) -> Result<SupercriticalVerdict> {
    let expansion = g.expand(check_order);
    if !expansion.coeff(0).is_zero() {
        return Err(Error::ConstantTerm { expected: "0".into(), found: expansion.coeff(0).to_string() });
    }
    if let Some(index) = expansion.coefficients().iter().position(Signed::is_negative) {
        return Err(Error::NegativeCoefficient { index, value: expansion.coeff(index).to_string() });
    }

    if g.is_polynomial() {
        if g.numerator.is_zero() {
            return Ok(SupercriticalVerdict {
                status: SupercriticalStatus::NotSupercritical,
                witness: None,
                pole: None,
                evidence: "G is identically zero".into(),
            });
        }
        // nonzero with nonnegative coefficients: unbounded on the positive axis
        let mut z0 = BigRational::one();
        let witness = loop {
            let value = g.numerator.eval(&z0);
            if value > BigRational::one() {
                break Witness { z0, value };
            }
            z0 *= BigRational::from_integer(2.into());
        };
        return Ok(SupercriticalVerdict {
            status: SupercriticalStatus::Supercritical,
            witness: Some(witness),
            pole: None,
            evidence: "polynomial, radius of convergence infinite".into(),
        });
    }

    let Some(isolation) = smallest_positive_root(&g.denominator) else {
        return Ok(SupercriticalVerdict {
            status: SupercriticalStatus::Inconclusive,
            witness: None,
            pole: None,
            evidence: "denominator has no positive real root".into(),
        });
    };
    let pole = PoleLocation { lower: isolation.lower.clone(), upper: isolation.upper.clone() };
    let evidence = if pole.is_exact() {
        format!("pole at {}", pole.lower)
    } else {
        format!("pole in ({}, {}]", pole.lower, pole.upper)
    };
    match find_witness(g, &isolation) {
        Some(witness) => Ok(SupercriticalVerdict {
            status: SupercriticalStatus::Supercritical,
            witness: Some(witness),
            pole: Some(pole),
            evidence,
        }),
        None => Ok(SupercriticalVerdict {
            status: SupercriticalStatus::Inconclusive,
            witness: None,
            pole: Some(pole),
            evidence: format!("{evidence}, but no point below it with G > 1 was found"),
        }),
    }
}

/// Probe for a truncated series: a partial sum above 1 at `z0` is reported as
/// a witness, anything else is inconclusive. A truncation never proves the
/// absence of supercriticality.
pub fn probe_truncated(g: &TruncatedSeries, z0: &BigRational) -> Result<SupercriticalVerdict> {
    if !g.coeff(0).is_zero() {
        return Err(Error::ConstantTerm { expected: "0".into(), found: g.coeff(0).to_string() });
    }
    if let Some(index) = g.coefficients().iter().position(Signed::is_negative) {
        return Err(Error::NegativeCoefficient { index, value: g.coeff(index).to_string() });
    }
    let value = g.eval_partial(z0);
    if value > BigRational::one() {
        Ok(SupercriticalVerdict {
            status: SupercriticalStatus::Supercritical,
            evidence: format!(
                "partial sum to order {} exceeds 1 at {z0}; conclusive when {z0} lies inside the disc of convergence",
                g.order()
            ),
            witness: Some(Witness { z0: z0.clone(), value }),
            pole: None,
        })
    } else {
        Ok(SupercriticalVerdict {
            status: SupercriticalStatus::Inconclusive,
            evidence: format!("partial sum to order {} is {value} <= 1 at {z0}", g.order()),
            witness: None,
            pole: None,
        })
    }
}

struct Isolation {
    square_free: Polynomial,
    /// No root in `(0, lower]`.
    lower: BigRational,
    /// Exactly the smallest positive root lies in `(lower, upper]`.
    upper: BigRational,
    /// Lower ends visited while bisecting, increasing.
    visited: Vec<BigRational>,
}

fn smallest_positive_root(p: &Polynomial) -> Option<Isolation> {
    let square_free = p.square_free();
    let sturm = sturm_sequence(&square_free);
    let count = |a: &BigRational, b: &BigRational| sign_variations(&sturm, a) - sign_variations(&sturm, b);
    let mut lower = BigRational::zero();
    let mut upper = square_free.cauchy_bound();
    if count(&lower, &upper) == 0 {
        return None;
    }
    let two = BigRational::from_integer(2.into());
    let width = isolation_width();
    let mut visited = vec![lower.clone()];
    while &upper - &lower >= width {
        let mid = (&lower + &upper) / &two;
        let below = count(&lower, &mid);
        if below >= 1 {
            if below == 1 && square_free.eval(&mid).is_zero() {
                lower = mid.clone();
                upper = mid;
                break;
            }
            upper = mid;
        } else {
            lower = mid;
            visited.push(lower.clone());
        }
    }
    Some(Isolation { square_free, lower, upper, visited })
}

fn find_witness(g: &RationalFunction, iso: &Isolation) -> Option<Witness> {
    let one = BigRational::one();
    let try_point = |z: &BigRational| -> Option<Witness> {
        if !z.is_positive() {
            return None;
        }
        let value = g.eval(z)?;
        (value > one).then(|| Witness { z0: z.clone(), value })
    };
    if let Some(w) = iso.visited.iter().find_map(try_point) {
        return Some(w);
    }
    // keep halving the gap to the pole; G is increasing and unbounded below it
    let two = BigRational::from_integer(2.into());
    let sturm = sturm_sequence(&iso.square_free);
    let mut lower = iso.lower.clone();
    let mut upper = iso.upper.clone();
    let exact = lower == upper;
    if exact {
        lower = iso.visited.last().cloned().unwrap_or_else(BigRational::zero);
    }
    for _ in 0..WITNESS_STEPS {
        let mid = (&lower + &upper) / &two;
        let root_below = sign_variations(&sturm, &lower) > sign_variations(&sturm, &mid);
        if root_below && !exact {
            upper = mid;
            continue;
        }
        if let Some(w) = try_point(&mid) {
            return Some(w);
        }
        lower = mid;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_integers(num), Polynomial::from_integers(den)).unwrap()
    }

    #[test]
    fn reduces_to_lowest_terms() {
        // z(1 - z) / (2(1 - z)^2) = (z/2) / (1 - z)
        let g = rf(&[0, 1, -1], &[2, -4, 2]);
        assert_eq!(g.numerator(), &Polynomial::new(vec![q(0, 1), q(1, 2)]));
        assert_eq!(g.denominator(), &Polynomial::from_integers(&[1, -1]));
        assert!(RationalFunction::new(Polynomial::from_integers(&[1]), Polynomial::from_integers(&[0, 1])).is_err());
        assert!(RationalFunction::new(Polynomial::from_integers(&[1]), Polynomial::default()).is_err());
    }

    #[test]
    fn geometric_pole() {
        let v = rational_supercritical(&rf(&[0, 1], &[1, -1])).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Supercritical);
        let pole = v.pole.unwrap();
        assert!(pole.is_exact());
        assert_eq!(pole.lower, q(1, 1));
        let w = v.witness.unwrap();
        assert!(w.z0 < q(1, 1) && w.z0 > q(0, 1));
        assert!(w.value > q(1, 1));
        assert_eq!(rf(&[0, 1], &[1, -1]).eval(&q(1, 2)), Some(q(1, 1)));
    }

    #[test]
    fn polynomial_and_zero() {
        let v = rational_supercritical(&rf(&[0, 2], &[1])).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Supercritical);
        assert_eq!(v.evidence, "polynomial, radius of convergence infinite");
        assert!(v.witness.unwrap().value > q(1, 1));
        let v = rational_supercritical(&rf(&[0], &[1])).unwrap();
        assert_eq!(v.status, SupercriticalStatus::NotSupercritical);
    }

    #[test]
    fn irrational_pole_is_bracketed() {
        // z / (1 - z - z^2), pole at (sqrt 5 - 1)/2
        let v = rational_supercritical(&rf(&[0, 1], &[1, -1, -1])).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Supercritical);
        let pole = v.pole.unwrap();
        assert!(!pole.is_exact());
        assert!(&pole.upper - &pole.lower < isolation_width());
        let d = Polynomial::from_integers(&[1, -1, -1]);
        assert!(d.eval(&pole.lower).is_positive());
        assert!(!d.eval(&pole.upper).is_positive());
        assert!(v.witness.unwrap().z0 <= pole.lower);
    }

    #[test]
    fn double_pole() {
        // z / (1 - z)^2
        let v = rational_supercritical(&rf(&[0, 1], &[1, -2, 1])).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Supercritical);
        assert_eq!(v.pole.unwrap().lower, q(1, 1));
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(rational_supercritical(&rf(&[1, 1], &[1, -1])), Err(Error::ConstantTerm { .. })));
        assert!(matches!(
            rational_supercritical(&rf(&[0, 1], &[1, 1])),
            Err(Error::NegativeCoefficient { index: 2, .. })
        ));
        assert!(matches!(
            rational_supercritical(&rf(&[0, 1, -1], &[1])),
            Err(Error::NegativeCoefficient { index: 2, .. })
        ));
    }

    #[test]
    fn no_positive_root_is_inconclusive() {
        // z / (1 + z^2) has a negative coefficient at z^3, caught at order 3
        assert!(rational_supercritical_checked(&rf(&[0, 1], &[1, 0, 1]), 3).is_err());
        // checked only to order 2 it slips through and no positive root exists
        let v = rational_supercritical_checked(&rf(&[0, 1], &[1, 0, 1]), 2).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Inconclusive);
    }

    #[test]
    fn truncated_probe() {
        let g = TruncatedSeries::from_integers(&[0, 1, 1]);
        let v = probe_truncated(&g, &q(1, 1)).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Supercritical);
        assert_eq!(v.witness.unwrap().value, q(2, 1));
        let v = probe_truncated(&g, &q(1, 2)).unwrap();
        assert_eq!(v.status, SupercriticalStatus::Inconclusive);
        assert!(probe_truncated(&TruncatedSeries::from_integers(&[1, 1]), &q(1, 2)).is_err());
    }
}
