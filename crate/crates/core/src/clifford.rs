//! Parametric Clifford algebras on generators `G, X₁, …, Xₙ` with
//! `G² = α`, `Xᵢ² = βᵢ`, `GXᵢ + XᵢG = γᵢ`, `XᵢXⱼ + XⱼXᵢ = λᵢⱼ` (i < j),
//! basis `{X_R | R ⊆ {0, …, n}}` where `X_0 := G`, together with the main
//! involution, the distinguished skew-derivations, antiderivatives, and the
//! canonical E(n)-coaction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::enhopf::{self, EnBasis};
use crate::linalg::{AlgebraElement, BasisIndex, BasisRegistry, LinearMap};
use crate::scalar::{Assignment, ParamName, Scalar, ScalarError};
use crate::setcombin::{s_sign, SubsetIndex};

/// Defining scalars of `Cl(α, βᵢ, γᵢ, λᵢⱼ)`.
///
/// Derived accessors extend the tables: `β₀ = α`, `λ₀ᵢ = γᵢ`, `λᵢᵢ = 2βᵢ`,
/// and `λⱼᵢ = λᵢⱼ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordParams {
    n: usize,
    alpha: Scalar,
    beta: Vec<Scalar>,
    gamma: Vec<Scalar>,
    lambda: BTreeMap<(u8, u8), Scalar>,
}

pub type Params = Arc<CliffordParams>;

impl CliffordParams {
    pub fn new(
        n: usize,
        alpha: Scalar,
        beta: Vec<Scalar>,
        gamma: Vec<Scalar>,
        lambda: BTreeMap<(u8, u8), Scalar>,
    ) -> Params {
        assert!((1..=crate::setcombin::MAX_ELEMENT as usize).contains(&n));
        assert_eq!(beta.len(), n);
        assert_eq!(gamma.len(), n);
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                assert!(lambda.contains_key(&(i, j)), "missing λ({i},{j})");
            }
        }
        Arc::new(CliffordParams {
            n,
            alpha,
            beta,
            gamma,
            lambda,
        })
    }

    /// All scalars left as free parameters.
    pub fn symbolic(n: usize) -> Params {
        CliffordParams::new(
            n,
            Scalar::param(ParamName::Alpha),
            (1..=n as u8).map(|i| Scalar::param(ParamName::Beta(i))).collect(),
            (1..=n as u8).map(|i| Scalar::param(ParamName::Gamma(i))).collect(),
            pairs(n)
                .map(|(i, j)| ((i, j), Scalar::param(ParamName::lambda(i, j))))
                .collect(),
        )
    }

    /// `Cl(0, 0, 0, 0)`.
    pub fn zero_family(n: usize) -> Params {
        CliffordParams::new(
            n,
            Scalar::zero(),
            vec![Scalar::zero(); n],
            vec![Scalar::zero(); n],
            pairs(n).map(|k| (k, Scalar::zero())).collect(),
        )
    }

    /// `Cl(α, γᵢ²/4α, γᵢ, γᵢγⱼ/2α)` with `α`, `γᵢ` free.
    pub fn alpha_family(n: usize) -> Params {
        let alpha = Scalar::param(ParamName::Alpha);
        let gamma: Vec<Scalar> = (1..=n as u8).map(|i| Scalar::param(ParamName::Gamma(i))).collect();
        let beta: Vec<Scalar> = gamma
            .iter()
            .map(|g| g.mul(g).div(&alpha.scale_i64(4)).expect("α ≠ 0"))
            .collect();
        let lambda = pairs(n)
            .map(|(i, j)| {
                let v = gamma[i as usize - 1]
                    .mul(&gamma[j as usize - 1])
                    .div(&alpha.scale_i64(2))
                    .expect("α ≠ 0");
                ((i, j), v)
            })
            .collect();
        CliffordParams::new(n, alpha, beta, gamma, lambda)
    }

    /// The α-constrained family with `α ↦ μ⁻²` imposed, so `μ²α = 1` holds
    /// identically while `μ` stays a free nonzero parameter.
    pub fn rth_family(n: usize) -> Params {
        let mut bindings = BTreeMap::new();
        bindings.insert(
            ParamName::Alpha,
            Scalar::param(ParamName::Mu).powi(-2).expect("μ ≠ 0"),
        );
        CliffordParams::alpha_family(n)
            .substitute(&bindings)
            .expect("μ⁻² is a valid binding")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    /// `βᵢ`, with `β₀ = α`.
    pub fn beta(&self, i: u8) -> Scalar {
        if i == 0 {
            self.alpha.clone()
        } else {
            self.beta[i as usize - 1].clone()
        }
    }

    pub fn gamma(&self, i: u8) -> Scalar {
        self.gamma[i as usize - 1].clone()
    }

    /// `λᵢⱼ` for any pair of indices in `{0, …, n}` via the derived tables.
    pub fn lambda(&self, i: u8, j: u8) -> Scalar {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if i == j {
            self.beta(i).scale_i64(2)
        } else if i == 0 {
            self.gamma(j)
        } else {
            self.lambda[&(i, j)].clone()
        }
    }

    pub fn substitute(
        self: &Arc<Self>,
        bindings: &BTreeMap<ParamName, Scalar>,
    ) -> Result<Params, ScalarError> {
        Ok(CliffordParams::new(
            self.n,
            self.alpha.substitute(bindings)?,
            self.beta
                .iter()
                .map(|s| s.substitute(bindings))
                .collect::<Result<_, _>>()?,
            self.gamma
                .iter()
                .map(|s| s.substitute(bindings))
                .collect::<Result<_, _>>()?,
            self.lambda
                .iter()
                .map(|(&k, s)| Ok((k, s.substitute(bindings)?)))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// Exact rational instance under a deterministic assignment.
    pub fn specialize(self: &Arc<Self>, asn: &Assignment) -> Result<Params, ScalarError> {
        let ev = |s: &Scalar| -> Result<Scalar, ScalarError> { Ok(Scalar::from_rational(s.eval(asn)?)) };
        Ok(CliffordParams::new(
            self.n,
            ev(&self.alpha)?,
            self.beta.iter().map(ev).collect::<Result<_, _>>()?,
            self.gamma.iter().map(ev).collect::<Result<_, _>>()?,
            self.lambda
                .iter()
                .map(|(&k, s)| Ok((k, ev(s)?)))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// Free parameters occurring in the defining scalars.
    pub fn variables(&self) -> Vec<ParamName> {
        let mut vs = self.alpha.variables();
        for s in self.beta.iter().chain(&self.gamma).chain(self.lambda.values()) {
            vs.extend(s.variables());
        }
        vs.sort();
        vs.dedup();
        vs
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (u8, u8)> {
    (1..=n as u8).flat_map(move |i| (i + 1..=n as u8).map(move |j| (i, j)))
}

pub fn registry(params: &Params) -> BasisRegistry {
    BasisRegistry::Clifford(params.clone())
}

pub fn one(params: &Params) -> AlgebraElement {
    AlgebraElement::one(registry(params))
}

pub fn basis_elem(params: &Params, r: SubsetIndex) -> AlgebraElement {
    AlgebraElement::from_term(registry(params), BasisIndex::Cl(r), Scalar::one())
}

/// `G` (that is, `X_0`).
pub fn g_elem(params: &Params) -> AlgebraElement {
    basis_elem(params, SubsetIndex::singleton(0))
}

pub fn x_elem(params: &Params, i: u8) -> AlgebraElement {
    debug_assert!(1 <= i && i as usize <= params.n());
    basis_elem(params, SubsetIndex::singleton(i))
}

/// Normal form of `X_Q · X_j` as signed λ/β-weighted basis terms.
///
/// For `j ∈ Q` the single-step expansion
/// `X_QX_j = Σ_{i∈Q, i>j} (-1)^{S(Q∖{i},Q)} λᵢⱼ X_{Q∖{i}} + (-1)^{S(Q∖{j},Q)} βⱼ X_{Q∖{j}}`
/// is already in normal form; for `j ∉ Q` the top generator `m = max Q > j`
/// is peeled off through `X_mX_j = λⱼₘ - XⱼX_m`.
fn mul_basis_by_gen(params: &CliffordParams, q: SubsetIndex, j: u8) -> Vec<(SubsetIndex, Scalar)> {
    if q.contains(j) {
        let mut out = Vec::new();
        for i in q.elements() {
            if i > j {
                let sign = s_sign(q.remove(i), q).expect("subset");
                out.push((q.remove(i), params.lambda(i, j).scale_i64(sign)));
            }
        }
        let sign = s_sign(q.remove(j), q).expect("subset");
        out.push((q.remove(j), params.beta(j).scale_i64(sign)));
        return out;
    }
    match q.max() {
        None => vec![(SubsetIndex::singleton(j), Scalar::one())],
        Some(m) if m < j => vec![(q.insert(j), Scalar::one())],
        Some(m) => {
            let mut out = vec![(q.remove(m), params.lambda(j, m))];
            for (r, c) in mul_basis_by_gen(params, q.remove(m), j) {
                out.push((r.insert(m), c.neg()));
            }
            out
        }
    }
}

/// Normal form of `X_R · X_T`.
pub(crate) fn basis_product(
    params: &Params,
    r: SubsetIndex,
    t: SubsetIndex,
) -> AlgebraElement {
    let mut acc: Vec<(SubsetIndex, Scalar)> = vec![(r, Scalar::one())];
    for j in t.elements() {
        let mut next: BTreeMap<SubsetIndex, Scalar> = BTreeMap::new();
        for (q, c) in &acc {
            for (s, d) in mul_basis_by_gen(params, *q, j) {
                let e = next.entry(s).or_insert_with(Scalar::zero);
                *e = e.add(&c.mul(&d));
            }
        }
        acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    AlgebraElement::from_terms(
        registry(params),
        acc.into_iter().map(|(s, c)| (BasisIndex::Cl(s), c)),
    )
}

/// Product, linear in both arguments.
pub fn mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    a.mul(b)
}

/// Main involution `σ(X_R) = (-1)^{|R|} X_R`, an algebra automorphism.
pub fn main_involution(a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.registry().clone());
    for (idx, c) in a.iter() {
        let sign = if idx.as_cl().len() % 2 == 0 { 1 } else { -1 };
        out.add_term(idx.clone(), c.scale_i64(sign));
    }
    out
}

/// `σʲ` for `j ∈ {0, 1}` (and any parity beyond).
pub fn involution_power(a: &AlgebraElement, j: u8) -> AlgebraElement {
    if j % 2 == 0 {
        a.clone()
    } else {
        main_involution(a)
    }
}

/// `dᵢ(X_R) = δ_{i∈R} (-1)^{S({i},R)+1} X_{R∖{i}}` on a basis index.
pub(crate) fn d_single_basis(i: u8, r: SubsetIndex) -> Option<(i64, SubsetIndex)> {
    if !r.contains(i) {
        return None;
    }
    let sign = -s_sign(SubsetIndex::singleton(i), r).expect("subset");
    Some((sign, r.remove(i)))
}

/// `d_P(X_R) = δ_{P⊆R} (-1)^{S(P,R)+|P|(|P|+1)/2} X_{R∖P}` on a basis index.
pub(crate) fn d_composite_basis(p: SubsetIndex, r: SubsetIndex) -> Option<(i64, SubsetIndex)> {
    if !p.is_subset_of(r) {
        return None;
    }
    let k = p.len() as i64;
    let exp = crate::setcombin::s_count(p, r).expect("subset") + k * (k + 1) / 2;
    Some((if exp % 2 == 0 { 1 } else { -1 }, r.difference(p)))
}

/// The skew-derivation `dᵢ`, extended linearly.
pub fn d_single(i: u8, a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.registry().clone());
    for (idx, c) in a.iter() {
        if let Some((sign, r)) = d_single_basis(i, idx.as_cl()) {
            out.add_term(BasisIndex::Cl(r), c.scale_i64(sign));
        }
    }
    out
}

/// `d_P`, the ordered composition `d_{i₁} ∘ … ∘ d_{i_{|P|}}` in closed form.
pub fn d_composite(p: SubsetIndex, a: &AlgebraElement) -> AlgebraElement {
    debug_assert!(!p.contains(0));
    let mut out = AlgebraElement::zero(a.registry().clone());
    for (idx, c) in a.iter() {
        if let Some((sign, r)) = d_composite_basis(p, idx.as_cl()) {
            out.add_term(BasisIndex::Cl(r), c.scale_i64(sign));
        }
    }
    out
}

/// The tuple of maps attached to a coaction: an involution `φ` and
/// anticommuting `φ`-derivations `d₁, …, dₙ` with `dᵢ² = 0` and `φdᵢ = -dᵢφ`.
#[derive(Clone, Debug)]
pub struct ComoduleTuple {
    pub phi: LinearMap,
    pub ds: Vec<LinearMap>,
}

impl ComoduleTuple {
    /// The canonical tuple `(σ, d₁, …, dₙ)` with `dⱼ(G) = 0`, `dⱼ(Xᵢ) = -δᵢⱼ`.
    pub fn canonical(params: &Params) -> ComoduleTuple {
        let reg = registry(params);
        let phi = LinearMap::new(reg.clone(), reg.clone(), |idx| {
            main_involution(&AlgebraElement::from_term(
                reg.clone(),
                idx.clone(),
                Scalar::one(),
            ))
        })
        .expect("well-typed");
        let ds = (1..=params.n() as u8)
            .map(|i| {
                LinearMap::new(reg.clone(), reg.clone(), |idx| {
                    d_single(
                        i,
                        &AlgebraElement::from_term(reg.clone(), idx.clone(), Scalar::one()),
                    )
                })
                .expect("well-typed")
            })
            .collect();
        ComoduleTuple { phi, ds }
    }
}

/// A particular antiderivative together with the kernel basis that
/// parametrizes the full solution set.
#[derive(Clone, Debug)]
pub struct Antiderivative {
    pub particular: AlgebraElement,
    pub kernel_basis: Vec<SubsetIndex>,
}

/// Solves `d_P(b) = a`.
///
/// A solution exists iff no basis monomial of `a` meets `P`; then one
/// particular solution is `Σ_R c_R (-1)^{|P|(|P|+1)/2 + |R||P|} X_R X_P` and
/// `ker d_P` has basis `{X_Q | P ⊄ Q}`.
pub fn antiderivative(
    params: &Params,
    a: &AlgebraElement,
    p: SubsetIndex,
) -> Option<Antiderivative> {
    debug_assert!(!p.contains(0));
    let mut particular = AlgebraElement::zero(registry(params));
    for (idx, c) in a.iter() {
        let r = idx.as_cl();
        if !r.intersection(p).is_empty() {
            return None;
        }
        let k = p.len() as i64;
        let exp = k * (k + 1) / 2 + (r.len() as i64) * k;
        let sign = if exp % 2 == 0 { 1 } else { -1 };
        particular = particular.add(&basis_product(params, r, p).scale(&c.scale_i64(sign)));
    }
    let kernel_basis = SubsetIndex::range(0, params.n() as u8)
        .subsets()
        .filter(|q| !p.is_subset_of(*q))
        .collect();
    Some(Antiderivative {
        particular,
        kernel_basis,
    })
}

/// The canonical E(n)-coaction `ρ: A → A ⊗ E(n)` determined by
/// `ρ(G) = G⊗g`, `ρ(Xᵢ) = Xᵢ⊗g + 1⊗xᵢ`, evaluated through its tuple of maps:
/// `ρ(a) = Σ_{j,P} (-1)^{|P|(|P|+1)/2} σʲ(d_P(a)) ⊗ (x_P + (-1)^{|P|+j} g x_P)/2`.
#[derive(Clone, Debug)]
pub struct Coaction {
    params: Params,
    map: LinearMap,
}

impl Coaction {
    pub fn canonical(params: &Params) -> Coaction {
        let n = params.n();
        let reg = registry(params);
        let target = BasisRegistry::tensor(vec![reg.clone(), enhopf::registry(n)]);
        let half = Scalar::from_i64(2).inv().expect("2 ≠ 0 in ℚ");
        let map = LinearMap::new(reg.clone(), target.clone(), |idx| {
            let r = idx.as_cl();
            let mut out = AlgebraElement::zero(target.clone());
            for p in r.remove(0).subsets() {
                let Some((dsign, rest)) = d_composite_basis(p, r) else {
                    continue;
                };
                let np = p.len() as i64;
                let prefactor = if (np * (np + 1) / 2) % 2 == 0 { 1 } else { -1 };
                for j in 0..=1u8 {
                    let ssign = if (j as usize * rest.len()) % 2 == 0 { 1 } else { -1 };
                    let c = half.scale_i64(dsign * prefactor * ssign);
                    let gsign = if (np + j as i64) % 2 == 0 { 1 } else { -1 };
                    out.add_term(
                        BasisIndex::Tuple(vec![
                            BasisIndex::Cl(rest),
                            BasisIndex::En(EnBasis::new(0, p)),
                        ]),
                        c.clone(),
                    );
                    out.add_term(
                        BasisIndex::Tuple(vec![
                            BasisIndex::Cl(rest),
                            BasisIndex::En(EnBasis::new(1, p)),
                        ]),
                        c.scale_i64(gsign),
                    );
                }
            }
            out
        })
        .expect("well-typed");
        Coaction {
            params: params.clone(),
            map,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// `ρ(a) ∈ A ⊗ E(n)`.
    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        self.map.apply(a).expect("element of A")
    }

    /// `(Id ⊗ Δ)ρ(a) ∈ A ⊗ E(n) ⊗ E(n)`, the two-step coaction.
    pub fn apply_twice(&self, a: &AlgebraElement) -> AlgebraElement {
        let n = self.params.n();
        let reg3 = BasisRegistry::tensor(vec![
            registry(&self.params),
            enhopf::registry(n),
            enhopf::registry(n),
        ]);
        let mut out = AlgebraElement::zero(reg3);
        for (idx, c) in self.apply(a).iter() {
            let parts = idx.as_tuple();
            for (h1, h2, sign) in enhopf::comul_basis(parts[1].as_en()) {
                out.add_term(
                    BasisIndex::Tuple(vec![
                        parts[0].clone(),
                        BasisIndex::En(h1),
                        BasisIndex::En(h2),
                    ]),
                    c.scale_i64(sign),
                );
            }
        }
        out
    }
}

/// Independent coaction route: extend the generator values multiplicatively,
/// `ρ(X_R) = ρ(X_{i₁}) ⋯ ρ(X_{i_s})` in `A ⊗ E(n)`.
pub fn coaction_by_generators(params: &Params, a: &AlgebraElement) -> AlgebraElement {
    let n = params.n();
    let target = BasisRegistry::tensor(vec![registry(params), enhopf::registry(n)]);
    let gen_image = |i: u8| -> AlgebraElement {
        if i == 0 {
            g_elem(params).tensor(&enhopf::g_elem(n))
        } else {
            x_elem(params, i)
                .tensor(&enhopf::g_elem(n))
                .add(&one(params).tensor(&enhopf::x_elem(n, i)))
        }
    };
    let mut out = AlgebraElement::zero(target.clone());
    for (idx, c) in a.iter() {
        let mut acc = AlgebraElement::one(target.clone());
        for i in idx.as_cl().elements() {
            acc = acc.mul(&gen_image(i));
        }
        out = out.add(&acc.scale(c));
    }
    out
}
