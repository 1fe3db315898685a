//! Construction of the elements `t_{0,Q}` and `t_{1,Q}`, assembly of
//! right-trivial Casimir tables, and classification of the parameter
//! families that admit them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clifford::{self, Params};
use crate::cowreath::{CasimirTable, TFamily};
use crate::linalg::{AlgebraElement, BasisIndex};
use crate::scalar::{Assignment, ParamName, Scalar, ScalarError};
use crate::setcombin::{enumerate_matchings, matching_sign, s_count, s_sign, SubsetIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CasimirError {
    #[error("parameters admit no right-trivial Casimir table (classified NotRT)")]
    NotRightTrivial,
    #[error("the zero family admits no right-trivial h-separable table: (t_{{1,∅}})² = μ²·0 ≠ 1")]
    ZeroFamilyNotHSeparable,
    #[error("μ²α = 1 must hold identically for an h-separable table")]
    MuConstraintViolated,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which parameter family the defining scalars fall into.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyTag {
    /// All defining scalars vanish.
    ZeroFamily,
    /// `α ≠ 0`, `βᵢ = γᵢ²/4α`, `λᵢⱼ = γᵢγⱼ/2α`.
    AlphaFamily,
    /// Anything else: no right-trivial Casimir table exists.
    NotRT,
}

/// Decides the family of `params` by exact scalar identities.
pub fn classify(params: &Params) -> FamilyTag {
    let n = params.n() as u8;
    let all_zero = params.alpha().is_zero()
        && (1..=n).all(|i| params.beta(i).is_zero() && params.gamma(i).is_zero())
        && (1..=n).all(|i| (i + 1..=n).all(|j| params.lambda(i, j).is_zero()));
    if all_zero {
        return FamilyTag::ZeroFamily;
    }
    if params.alpha().is_zero() {
        return FamilyTag::NotRT;
    }
    let four_alpha = params.alpha().scale_i64(4);
    let two_alpha = params.alpha().scale_i64(2);
    for i in 1..=n {
        let expect = params.gamma(i).mul(&params.gamma(i)).div(&four_alpha).unwrap();
        if params.beta(i) != expect {
            return FamilyTag::NotRT;
        }
        for j in i + 1..=n {
            let expect = params.gamma(i).mul(&params.gamma(j)).div(&two_alpha).unwrap();
            if params.lambda(i, j) != expect {
                return FamilyTag::NotRT;
            }
        }
    }
    FamilyTag::AlphaFamily
}

/// The free scalars `η_S` entering `t_{0,Q}`, with `η_∅ = 1` fixed.
///
/// In constrained mode (the `α ≠ 0` family) the odd-cardinality values are
/// derived from the even ones through
/// `η_T = Σ_{i∈T} (-1)^{S({i},T)+1} η_{T∖{i}} γᵢ/2α` and are never stored.
#[derive(Clone, Debug)]
pub struct EtaAssignment {
    derive_odd: bool,
    values: BTreeMap<SubsetIndex, Scalar>,
}

impl EtaAssignment {
    /// All nonempty values free, defaulting to 0 (the zero-family shape).
    pub fn free() -> EtaAssignment {
        EtaAssignment {
            derive_odd: false,
            values: BTreeMap::new(),
        }
    }

    /// Even values free (default 0), odd values derived (the `α ≠ 0` shape).
    pub fn constrained() -> EtaAssignment {
        EtaAssignment {
            derive_odd: true,
            values: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, s: SubsetIndex, value: Scalar) {
        assert!(!s.is_empty(), "η_∅ = 1 is fixed");
        assert!(!s.contains(0));
        assert!(
            !(self.derive_odd && s.len() % 2 == 1),
            "odd-cardinality η are derived, never stored"
        );
        self.values.insert(s, value);
    }

    /// Constrained assignment with a free symbol `η_S` on every even subset.
    pub fn symbolic_even(n: usize) -> EtaAssignment {
        let mut eta = EtaAssignment::constrained();
        for s in SubsetIndex::range(1, n as u8).subsets() {
            if !s.is_empty() && s.len() % 2 == 0 {
                eta.insert(s, Scalar::param(ParamName::eta(s)));
            }
        }
        eta
    }

    /// Free assignment with a free symbol `η_S` on every nonempty subset.
    pub fn symbolic_all(n: usize) -> EtaAssignment {
        let mut eta = EtaAssignment::free();
        for s in SubsetIndex::range(1, n as u8).subsets() {
            if !s.is_empty() {
                eta.insert(s, Scalar::param(ParamName::eta(s)));
            }
        }
        eta
    }

    /// Free assignment with deterministic random rationals on every nonempty
    /// subset.
    pub fn random(n: usize, seed: u64) -> EtaAssignment {
        let asn = Assignment::new(seed);
        let mut eta = EtaAssignment::free();
        for s in SubsetIndex::range(1, n as u8).subsets() {
            if !s.is_empty() {
                eta.insert(s, Scalar::from_rational(asn.value(ParamName::eta(s))));
            }
        }
        eta
    }

    /// `η_T` for this assignment over the given parameters.
    pub fn eta(&self, params: &Params, t: SubsetIndex) -> Scalar {
        if t.is_empty() {
            return Scalar::one();
        }
        if self.derive_odd && t.len() % 2 == 1 {
            let two_alpha = params.alpha().scale_i64(2);
            let mut acc = Scalar::zero();
            for i in t.elements() {
                let prev = self.eta(params, t.remove(i));
                let sign = -s_sign(SubsetIndex::singleton(i), t).expect("subset");
                let term = prev
                    .mul(&params.gamma(i))
                    .div(&two_alpha)
                    .expect("derived η requires α ≠ 0")
                    .scale_i64(sign);
                acc = acc.add(&term);
            }
            return acc;
        }
        self.values.get(&t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn variables(&self) -> Vec<ParamName> {
        let mut vs: Vec<ParamName> = self.values.values().flat_map(|s| s.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn specialize(&self, asn: &Assignment) -> Result<EtaAssignment, ScalarError> {
        let values = self
            .values
            .iter()
            .map(|(&k, v)| Ok((k, Scalar::from_rational(v.eval(asn)?))))
            .collect::<Result<_, ScalarError>>()?;
        Ok(EtaAssignment {
            derive_odd: self.derive_odd,
            values,
        })
    }
}

/// `t_{0,Q} = Σ_{R ⊆ Q̄, |R| ≡₂ |Q|} (-1)^{S(Q∖R, Q)} η_{Q∖R} X_R`, where
/// `Q̄ = Q ⊔ {0}`.
pub fn build_t0(params: &Params, q: SubsetIndex, eta: &EtaAssignment) -> AlgebraElement {
    debug_assert!(!q.contains(0));
    let qbar = q.insert(0);
    let mut out = AlgebraElement::zero(clifford::registry(params));
    for r in qbar.subsets() {
        if r.len() % 2 != q.len() % 2 {
            continue;
        }
        let rest = q.difference(r);
        let sign = s_sign(rest, q).expect("subset");
        out.add_term(BasisIndex::Cl(r), eta.eta(params, rest).scale_i64(sign));
    }
    out
}

/// Product of `λ` over the blocks of a perfect matching, with `Λ(∅) = 1`.
fn lambda_product(params: &Params, blocks: &[(u8, u8)]) -> Scalar {
    blocks.iter().fold(Scalar::one(), |acc, &(a, b)| {
        acc.mul(&params.lambda(a, b))
    })
}

/// `t_{1,Q} = μ/2^{⌊|Q̄|/2⌋} Σ_{R ⊆ Q̄, |R| ≡₂ |Q̄|} 𝔰_Q(R)
///     Σ_{𝒫 ∈ π₂(Q̄∖R)} sgn(𝒫) Λ(𝒫) X_R`
/// with `𝔰_Q(R) = (-1)^{S(R,Q̄) + (|Q̄|-|R|)/2} 2^{⌊|R|/2⌋}`.
pub fn build_t1(params: &Params, q: SubsetIndex, mu: &Scalar) -> AlgebraElement {
    debug_assert!(!q.contains(0));
    let qbar = q.insert(0);
    let nbar = qbar.len();
    let prefactor = mu
        .div(&Scalar::from_i64(1 << (nbar / 2)))
        .expect("power of two");
    let mut out = AlgebraElement::zero(clifford::registry(params));
    for r in qbar.subsets() {
        if r.len() % 2 != nbar % 2 {
            continue;
        }
        let exp = s_count(r, qbar).expect("subset") + ((nbar - r.len()) / 2) as i64;
        let spart = Scalar::from_i64(if exp % 2 == 0 { 1 } else { -1 })
            .scale_i64(1 << (r.len() / 2));
        let mut matching_sum = Scalar::zero();
        for m in enumerate_matchings(qbar.difference(r)).expect("even complement") {
            let term = lambda_product(params, m.blocks()).scale_i64(matching_sign(&m));
            matching_sum = matching_sum.add(&term);
        }
        out.add_term(
            BasisIndex::Cl(r),
            prefactor.mul(&spart).mul(&matching_sum),
        );
    }
    out
}

/// The whole family `t_{k,Q}` from an η-assignment and μ; defined for any
/// parameters (verification decides whether the conditions hold).
pub fn build_t_family(params: &Params, eta: &EtaAssignment, mu: &Scalar) -> TFamily {
    TFamily::build(params, |k, q| {
        if k == 0 {
            build_t0(params, q, eta)
        } else {
            build_t1(params, q, mu)
        }
    })
}

/// Right-trivial Casimir table; rejects parameters outside the two families.
pub fn build_casimir_rt(
    params: &Params,
    eta: &EtaAssignment,
    mu: &Scalar,
) -> Result<CasimirTable, CasimirError> {
    if classify(params) == FamilyTag::NotRT {
        return Err(CasimirError::NotRightTrivial);
    }
    Ok(CasimirTable::from_t_family(
        params,
        build_t_family(params, eta, mu),
    ))
}

/// `B^A(1 ⊗ x_Q)` of the h-separable table in closed form:
/// γ-products over `Q∖R` against `X_R` on matching parity and `GX_R`
/// otherwise, with the α-powers of the constrained family.
pub fn rth_t0(params: &Params, q: SubsetIndex) -> AlgebraElement {
    debug_assert!(!q.contains(0));
    let mut out = AlgebraElement::zero(clifford::registry(params));
    for r in q.subsets() {
        let rest = q.difference(r);
        let k = rest.len();
        let gprod = rest
            .elements()
            .fold(Scalar::one(), |acc, j| acc.mul(&params.gamma(j)));
        let base_sign = s_count(rest, q).expect("subset");
        let half_up = k.div_ceil(2) as i64;
        let (exp, alpha_pow, idx) = if k % 2 == 0 {
            (base_sign + (k / 2) as i64, (k / 2) as i64, r)
        } else {
            (base_sign + half_up, half_up, r.insert(0))
        };
        let denom = params
            .alpha()
            .powi(alpha_pow)
            .expect("α ≠ 0 in the constrained family")
            .scale_i64(1 << k);
        let coeff = gprod
            .div(&denom)
            .expect("nonzero denominator")
            .scale_i64(if exp % 2 == 0 { 1 } else { -1 });
        out.add_term(BasisIndex::Cl(idx), coeff);
    }
    out
}

/// The `t`-family of the h-separable table: `t_{0,Q}` in closed form and
/// `t_{1,Q} = (μG) t_{0,Q}`, requiring `μ²α = 1`.
pub fn build_rth_t_family(params: &Params, mu: &Scalar) -> Result<TFamily, CasimirError> {
    match classify(params) {
        FamilyTag::ZeroFamily => return Err(CasimirError::ZeroFamilyNotHSeparable),
        FamilyTag::NotRT => return Err(CasimirError::NotRightTrivial),
        FamilyTag::AlphaFamily => {}
    }
    if !mu.mul(mu).mul(params.alpha()).is_one() {
        return Err(CasimirError::MuConstraintViolated);
    }
    let mu_g = clifford::g_elem(params).scale(mu);
    Ok(TFamily::build(params, |k, q| {
        let t0 = rth_t0(params, q);
        if k == 0 {
            t0
        } else {
            mu_g.mul(&t0)
        }
    }))
}

/// Right-trivial h-separable Casimir table over [`build_rth_t_family`].
pub fn build_casimir_rth(params: &Params, mu: &Scalar) -> Result<CasimirTable, CasimirError> {
    Ok(CasimirTable::from_t_family(
        params,
        build_rth_t_family(params, mu)?,
    ))
}
