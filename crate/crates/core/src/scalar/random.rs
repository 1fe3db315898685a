//! Deterministic random specialization of parameters to exact rationals.
//!
//! Values are a pure function of `(parameter, seed, salt)` through a splitmix64
//! step, so independent call sites agree on the assignment and reports are
//! reproducible across runs and platforms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::param::ParamName;
use super::{Scalar, ScalarError};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// A deterministic assignment of nonzero rationals to parameters.
#[derive(Clone, Copy, Debug)]
pub struct Assignment {
    seed: u64,
    salt: u64,
}

/// Resample limit when an assignment hits a denominator zero or a collision.
pub const MAX_RESAMPLES: u64 = 32;

impl Assignment {
    pub fn new(seed: u64) -> Self {
        Assignment { seed, salt: 0 }
    }

    pub fn with_salt(seed: u64, salt: u64) -> Self {
        Assignment { seed, salt }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The nonzero rational assigned to `p`: sign · (1 + h mod 2^20) / (1 + h' mod 16).
    pub fn value(&self, p: ParamName) -> BigRational {
        let h = splitmix64(p.key() ^ splitmix64(self.seed ^ self.salt.wrapping_mul(0x517c_c1b7_2722_0a95)));
        let numer = 1 + (h & 0xfffff) as i64;
        let denom = 1 + ((h >> 24) & 0xf) as i64;
        let sign = if h >> 63 == 1 { -1 } else { 1 };
        BigRational::new(BigInt::from(sign * numer), BigInt::from(denom))
    }

    /// First salt from `self.salt` that gives pairwise distinct values on `params`.
    pub fn distinct_on(mut self, params: &[ParamName]) -> Result<Assignment, ScalarError> {
        'outer: for _ in 0..MAX_RESAMPLES {
            let mut vals: Vec<BigRational> = params.iter().map(|&p| self.value(p)).collect();
            vals.sort();
            if vals.windows(2).all(|w| w[0] != w[1]) {
                return Ok(self);
            }
            self.salt += 1;
            continue 'outer;
        }
        Err(ScalarError::ResamplesExhausted)
    }
}

/// Evaluates `a` exactly under the deterministic assignment for `seed`,
/// resalting (boundedly) whenever the denominator specializes to zero.
pub fn specialize_random(a: &Scalar, seed: u64) -> Result<BigRational, ScalarError> {
    let mut vars = a.numerator().variables();
    vars.extend(a.denominator().variables());
    vars.sort();
    vars.dedup();
    let mut asn = Assignment::new(seed).distinct_on(&vars)?;
    for _ in 0..MAX_RESAMPLES {
        let den = a.denominator().eval(&mut |p| asn.value(p));
        if !den.is_zero() {
            let num = a.numerator().eval(&mut |p| asn.value(p));
            return Ok(num / den);
        }
        asn.salt += 1;
        asn = asn.distinct_on(&vars)?;
    }
    Err(ScalarError::ResamplesExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcombin::SubsetIndex;
    use num_traits::One;

    #[test]
    fn deterministic_and_nonzero() {
        let p = ParamName::Gamma(3);
        let a = Assignment::new(7);
        let b = Assignment::new(7);
        assert_eq!(a.value(p), b.value(p));
        assert!(!a.value(p).is_zero());
        assert_ne!(Assignment::new(8).value(p), a.value(p));
    }

    #[test]
    fn distinct_across_full_parameter_set() {
        // Every parameter in play at n = 5, plus η on all small subsets.
        let mut params = vec![ParamName::Alpha, ParamName::Mu];
        for i in 1..=5u8 {
            params.push(ParamName::Beta(i));
            params.push(ParamName::Gamma(i));
            for j in i + 1..=5 {
                params.push(ParamName::lambda(i, j));
            }
        }
        for mask in 1u32..1 << 5 {
            params.push(ParamName::eta(SubsetIndex::from_mask(mask << 1)));
        }
        for seed in 0..10u64 {
            let asn = Assignment::new(seed).distinct_on(&params).unwrap();
            let mut vals: Vec<_> = params.iter().map(|&p| asn.value(p)).collect();
            let before = vals.len();
            vals.sort();
            vals.dedup();
            assert_eq!(vals.len(), before, "collision at seed {seed}");
        }
    }

    #[test]
    fn specializes_simple_scalars() {
        assert!(specialize_random(&Scalar::zero(), 1).unwrap().is_zero());
        let alpha = Scalar::param(ParamName::Alpha);
        let expr = alpha.clone().mul(&alpha.inv().unwrap());
        assert!(specialize_random(&expr, 123).unwrap().is_one());
    }
}
