//! Exact arithmetic in the field of fractions of multivariate polynomials
//! over ℚ, with named parameters, substitution, and deterministic random
//! specialization.
//!
//! A [`Scalar`] is a reduced fraction `num/den`: the pair is divided by its
//! polynomial gcd and the denominator is made monic in the global monomial
//! order, so mathematically equal fractions are structurally equal. The base
//! field ℚ has characteristic 0, which keeps every division by 2 exact.

mod param;
mod parse;
mod poly;
mod random;

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

pub use param::ParamName;
pub use poly::{Monomial, Poly};
pub use random::{specialize_random, Assignment, MAX_RESAMPLES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("substitution introduced a zero denominator")]
    SubstitutionZeroDenominator,
    #[error("random specialization failed after {MAX_RESAMPLES} resamples")]
    ResamplesExhausted,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Element of the fraction field ℚ(α, βᵢ, γᵢ, λᵢⱼ, η_S, μ).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn reduced(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar {
                num,
                den: Poly::one(),
            };
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else if let Some(c) = den.as_constant() {
            (num.scale(&(BigRational::one() / c)), Poly::one())
        } else {
            let g = num.gcd(&den);
            let num = num.div_exact(&g).expect("gcd divides");
            let den = den.div_exact(&g).expect("gcd divides");
            let lc = den.leading().expect("den nonzero").1.clone();
            if lc.is_one() {
                (num, den)
            } else {
                let inv = BigRational::one() / lc;
                (num.scale(&inv), den.scale(&inv))
            }
        };
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_i64(v: i64) -> Scalar {
        Scalar {
            num: Poly::from_i64(v),
            den: Poly::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Scalar {
        Scalar {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    pub fn param(p: ParamName) -> Scalar {
        Scalar {
            num: Poly::var(p),
            den: Poly::one(),
        }
    }

    pub fn from_fraction(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(num, den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.add(&other.num),
                den: Poly::one(),
            };
        }
        Scalar::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        Scalar::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale_i64(&self, k: i64) -> Scalar {
        self.mul(&Scalar::from_i64(k))
    }

    /// `self^e` for a signed exponent; negative exponents require `self ≠ 0`.
    pub fn powi(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Simultaneous substitution of parameters, then canonicalization.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<ParamName, Scalar>,
    ) -> Result<Scalar, ScalarError> {
        let sub_poly = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut term = Scalar::from_rational(c.clone());
                for &(v, e) in m.factors() {
                    let base = bindings
                        .get(&v)
                        .cloned()
                        .unwrap_or_else(|| Scalar::param(v));
                    for _ in 0..e {
                        term = term.mul(&base);
                    }
                }
                acc = acc.add(&term);
            }
            acc
        };
        let num = sub_poly(&self.num);
        let den = sub_poly(&self.den);
        if den.is_zero() {
            return Err(ScalarError::SubstitutionZeroDenominator);
        }
        num.div(&den)
    }

    /// All parameters occurring in the reduced fraction.
    pub fn variables(&self) -> Vec<ParamName> {
        let mut vs = self.num.variables();
        vs.extend(self.den.variables());
        vs.sort();
        vs.dedup();
        vs
    }

    /// Exact evaluation under an assignment; fails if the denominator vanishes.
    pub fn eval(&self, asn: &Assignment) -> Result<BigRational, ScalarError> {
        let den = self.den.eval(&mut |p| asn.value(p));
        if den == BigRational::from_integer(0.into()) {
            return Err(ScalarError::SubstitutionZeroDenominator);
        }
        Ok(self.num.eval(&mut |p| asn.value(p)) / den)
    }

    /// Parses the expression grammar over `+ - * / ^`, integer literals,
    /// parameter names, and parentheses.
    pub fn parse(input: &str) -> Result<Scalar, ScalarError> {
        parse::parse(input)
    }
}

/// Parses a bare parameter name like `alpha`, `beta2`, `lambda12`, `eta13`.
pub fn parse_param_name(word: &str) -> Option<ParamName> {
    parse::parse_param(word)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den_simple =
            self.den.is_monomial() && self.den.terms()[0].0.factors().len() == 1 && {
                let (m, c) = &self.den.terms()[0];
                c.is_one() && m.factors()[0].1 == 1
            };
        if den_simple {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
