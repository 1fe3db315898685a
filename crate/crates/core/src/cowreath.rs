//! The entwining map ψ, the cowreath structure maps (δ_H, ε_H), composition
//! in the transfer-morphism category, Casimir tables, and the layered
//! separability condition checkers.
//!
//! Throughout, `A` is a Clifford algebra with its canonical E(n)-coaction,
//! `H = E(n)`, and the ambient algebra of the transfer category is `A ⊗ Hᵒᵖ`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::clifford::{self, ComoduleTuple, Params};
use crate::enhopf::{self, EnBasis};
use crate::linalg::{AlgebraElement, AlgebraError, BasisIndex, BasisRegistry, LinearMap};
use crate::report::{ConditionChecker, ConditionReport};
use crate::scalar::Scalar;
use crate::setcombin::{s_sign, SubsetIndex};

/// Registries and precomputed coaction data shared by the checkers.
pub struct CowreathContext {
    params: Params,
    n: usize,
    a_reg: BasisRegistry,
    h_reg: BasisRegistry,
    ah_reg: BasisRegistry,
    rho: BTreeMap<SubsetIndex, Vec<(SubsetIndex, EnBasis, Scalar)>>,
    rho2: BTreeMap<SubsetIndex, Vec<(SubsetIndex, EnBasis, EnBasis, Scalar)>>,
}

impl CowreathContext {
    pub fn new(params: &Params) -> Self {
        let n = params.n();
        let a_reg = clifford::registry(params);
        let h_reg = enhopf::registry(n);
        let hop_reg = BasisRegistry::Opposite(Box::new(h_reg.clone()));
        let ah_reg = BasisRegistry::tensor(vec![a_reg.clone(), hop_reg]);
        let coaction = clifford::Coaction::canonical(params);
        let mut rho = BTreeMap::new();
        let mut rho2 = BTreeMap::new();
        for idx in a_reg.basis() {
            let r = idx.as_cl();
            let image = coaction.map().image_of(&idx);
            let mut terms = Vec::new();
            let mut terms2 = Vec::new();
            for (t, c) in image.iter() {
                let parts = t.as_tuple();
                let (a0, a1) = (parts[0].as_cl(), parts[1].as_en());
                terms.push((a0, a1, c.clone()));
                for (h1, h2, s) in enhopf::comul_basis(a1) {
                    terms2.push((a0, h1, h2, c.scale_i64(s)));
                }
            }
            rho.insert(r, terms);
            rho2.insert(r, terms2);
        }
        CowreathContext {
            params: params.clone(),
            n,
            a_reg,
            h_reg,
            ah_reg,
            rho,
            rho2,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn en_basis(&self) -> Vec<EnBasis> {
        self.h_reg.basis().iter().map(|b| b.as_en()).collect()
    }

    fn cl_basis(&self) -> Vec<SubsetIndex> {
        self.a_reg.basis().iter().map(|b| b.as_cl()).collect()
    }

    /// Basis vector `X_a ⊗ l` of `A ⊗ Hᵒᵖ`.
    fn ah_term(&self, a: SubsetIndex, l: EnBasis, c: Scalar) -> AlgebraElement {
        AlgebraElement::from_term(
            self.ah_reg.clone(),
            BasisIndex::Tuple(vec![BasisIndex::Cl(a), BasisIndex::En(l)]),
            c,
        )
    }

    fn ah_one(&self) -> AlgebraElement {
        AlgebraElement::one(self.ah_reg.clone())
    }

    fn a_elem(&self, r: SubsetIndex) -> AlgebraElement {
        clifford::basis_elem(&self.params, r)
    }

    /// `ρ(X_r)` as `(a₀, a₁, coeff)` triples.
    fn rho_basis(&self, r: SubsetIndex) -> &[(SubsetIndex, EnBasis, Scalar)] {
        &self.rho[&r]
    }

    /// `(Id ⊗ Δ)ρ(X_r)` as `(a₀, a₁, a₂, coeff)` quadruples.
    fn rho2_basis(&self, r: SubsetIndex) -> &[(SubsetIndex, EnBasis, EnBasis, Scalar)] {
        &self.rho2[&r]
    }

    /// The entwining map `ψ(h ⊗ a ⊗ l) = a₀ ⊗ l₁ ⊗ l₂ha₁` as a linear map
    /// `H ⊗ (A ⊗ Hᵒᵖ) → (A ⊗ Hᵒᵖ) ⊗ H`.
    pub fn psi_map(&self) -> LinearMap {
        let domain = BasisRegistry::tensor(vec![self.h_reg.clone(), self.ah_reg.clone()]);
        let codomain = BasisRegistry::tensor(vec![self.ah_reg.clone(), self.h_reg.clone()]);
        LinearMap::new(domain, codomain.clone(), |idx| {
            let parts = idx.as_tuple();
            let h = parts[0].as_en();
            let a = parts[1].as_cl();
            let l = parts[2].as_en();
            let mut out = AlgebraElement::zero(codomain.clone());
            for (a0, a1, c) in self.rho_basis(a) {
                for (l1, l2, s) in enhopf::comul_basis(l) {
                    let Some((m1, sg1)) = enhopf::basis_mul_signed(l2, h) else {
                        continue;
                    };
                    let Some((m2, sg2)) = enhopf::basis_mul_signed(m1, *a1) else {
                        continue;
                    };
                    out.add_term(
                        BasisIndex::Tuple(vec![
                            BasisIndex::Cl(*a0),
                            BasisIndex::En(l1),
                            BasisIndex::En(m2),
                        ]),
                        c.scale_i64(s * sg1 * sg2),
                    );
                }
            }
            out
        })
        .expect("well-typed")
    }

    /// Applies a ψ-shaped map to the basis tuple `(h, a ⊗ l)`.
    fn psi_of(
        &self,
        psi: &LinearMap,
        h: EnBasis,
        a: SubsetIndex,
        l: EnBasis,
    ) -> AlgebraElement {
        let idx = BasisIndex::Tuple(vec![
            BasisIndex::En(h),
            BasisIndex::Cl(a),
            BasisIndex::En(l),
        ]);
        psi.image_of(&idx).clone()
    }

    /// `δ_H(h) = 1_A ⊗ 1_H ⊗ h₁ ⊗ h₂` in `(A ⊗ Hᵒᵖ) ⊗ H ⊗ H`.
    pub fn delta_h(&self, h: EnBasis) -> AlgebraElement {
        let reg = BasisRegistry::tensor(vec![
            self.ah_reg.clone(),
            self.h_reg.clone(),
            self.h_reg.clone(),
        ]);
        let unit_a = self.a_reg.unit_index();
        let unit_h = self.h_reg.unit_index();
        let mut out = AlgebraElement::zero(reg);
        for (h1, h2, s) in enhopf::comul_basis(h) {
            out.add_term(
                BasisIndex::Tuple(vec![
                    unit_a.clone(),
                    unit_h.clone(),
                    BasisIndex::En(h1),
                    BasisIndex::En(h2),
                ]),
                Scalar::from_i64(s),
            );
        }
        out
    }

    /// `ε_H(h) = ε(h) 1_A ⊗ 1_H`.
    pub fn eps_h(&self, h: EnBasis) -> AlgebraElement {
        let c = if h.p().is_empty() { 1 } else { 0 };
        self.ah_one().scale_i64(c)
    }
}

/// `δ_H` as a transfer morphism `H → (A⊗Hᵒᵖ) ⊗ H ⊗ H`.
pub fn delta_h_map(ctx: &CowreathContext) -> LinearMap {
    LinearMap::new(
        ctx.h_reg.clone(),
        BasisRegistry::tensor(vec![
            ctx.ah_reg.clone(),
            ctx.h_reg.clone(),
            ctx.h_reg.clone(),
        ]),
        |idx| ctx.delta_h(idx.as_en()),
    )
    .expect("well-typed")
}

/// `ε_H` as a transfer morphism `H → A⊗Hᵒᵖ`.
pub fn eps_h_map(ctx: &CowreathContext) -> LinearMap {
    LinearMap::new(ctx.h_reg.clone(), ctx.ah_reg.clone(), |idx| {
        ctx.eps_h(idx.as_en())
    })
    .expect("well-typed")
}

/// The identity transfer morphism `u ⊗ Id_H : H → (A⊗Hᵒᵖ) ⊗ H`.
pub fn transfer_identity(ctx: &CowreathContext) -> LinearMap {
    LinearMap::new(
        ctx.h_reg.clone(),
        BasisRegistry::tensor(vec![ctx.ah_reg.clone(), ctx.h_reg.clone()]),
        |idx| ctx.ah_one().tensor(&AlgebraElement::from_term(
            ctx.h_reg.clone(),
            idx.clone(),
            Scalar::one(),
        )),
    )
    .expect("well-typed")
}

/// Composition `g ⊙ f = (m ⊗ Id)(Id ⊗ g)f` of transfer morphisms
/// `f: X → (A⊗Hᵒᵖ) ⊗ Y` and `g: Y → (A⊗Hᵒᵖ) ⊗ Z`.
pub fn odot(g: &LinearMap, f: &LinearMap) -> Result<LinearMap, AlgebraError> {
    let f_factors = f.codomain().factors();
    let g_factors = g.codomain().factors();
    if f_factors.len() < 2 || g_factors.len() < 2 || f_factors[..2] != g_factors[..2] {
        return Err(AlgebraError::RegistryMismatch {
            expected: "transfer morphisms over a common A ⊗ Hᵒᵖ".into(),
            got: format!("{} and {}", f.codomain(), g.codomain()),
        });
    }
    let y_reg = BasisRegistry::tensor(f_factors[2..].to_vec());
    if y_reg != *g.domain() {
        return Err(AlgebraError::RegistryMismatch {
            expected: g.domain().to_string(),
            got: y_reg.to_string(),
        });
    }
    let ah_reg = BasisRegistry::tensor(f_factors[..2].to_vec());
    let mut codomain_factors = f_factors[..2].to_vec();
    codomain_factors.extend(g_factors[2..].to_vec());
    let codomain = BasisRegistry::tensor(codomain_factors);
    LinearMap::new(f.domain().clone(), codomain.clone(), |x| {
        let mut out = AlgebraElement::zero(codomain.clone());
        for (idx, c) in f.image_of(x).iter() {
            let parts = idx.as_tuple();
            let ah1 = AlgebraElement::from_term(
                ah_reg.clone(),
                BasisIndex::Tuple(parts[..2].to_vec()),
                Scalar::one(),
            );
            let y_idx = if g.domain().arity() == 1 {
                parts[2].clone()
            } else {
                BasisIndex::Tuple(parts[2..].to_vec())
            };
            for (idx2, d) in g.image_of(&y_idx).iter() {
                let parts2 = idx2.as_tuple();
                let ah2 = AlgebraElement::from_term(
                    ah_reg.clone(),
                    BasisIndex::Tuple(parts2[..2].to_vec()),
                    Scalar::one(),
                );
                for (pidx, e) in ah1.mul(&ah2).iter() {
                    let mut v = pidx.as_tuple().to_vec();
                    v.extend(parts2[2..].iter().cloned());
                    out.add_term(BasisIndex::Tuple(v), c.mul(d).mul(e));
                }
            }
        }
        out
    })
}

/// Verifies the two transfer-morphism axioms for `(H, ψ)` and the five
/// coalgebra axioms for `(δ_H, ε_H)` over `A ⊗ Hᵒᵖ`, each as a linear-map
/// equality evaluated on full bases.
pub fn check_cowreath_axioms(params: &Params) -> Vec<ConditionReport> {
    let ctx = CowreathContext::new(params);
    let psi = ctx.psi_map();
    check_cowreath_axioms_with(&ctx, &psi)
}

/// Same checks against an externally supplied ψ (used for corrupted-map
/// negative controls).
pub fn check_cowreath_axioms_with(ctx: &CowreathContext, psi: &LinearMap) -> Vec<ConditionReport> {
    let en = ctx.en_basis();
    let cl = ctx.cl_basis();
    let mut out = Vec::new();

    // ψ(Id⊗m) = (m⊗Id)(Id⊗ψ)(ψ⊗Id) on H ⊗ (A⊗Hᵒᵖ) ⊗ (A⊗Hᵒᵖ)
    let mut c1 = ConditionChecker::new("psi-mult", "h ∈ basis(H); p, q ∈ basis(A⊗Hᵒᵖ)");
    for &h in &en {
        for &a1 in &cl {
            for &l1 in &en {
                let p = ctx.ah_term(a1, l1, Scalar::one());
                let psi_hp = ctx.psi_of(psi, h, a1, l1);
                for &a2 in &cl {
                    for &l2 in &en {
                        let q = ctx.ah_term(a2, l2, Scalar::one());
                        let pq = p.mul(&q);
                        let mut lhs = AlgebraElement::zero(psi.codomain().clone());
                        for (idx, c) in pq.iter() {
                            let parts = idx.as_tuple();
                            lhs = lhs.add(
                                &ctx.psi_of(psi, h, parts[0].as_cl(), parts[1].as_en()).scale(c),
                            );
                        }
                        let mut rhs = AlgebraElement::zero(psi.codomain().clone());
                        for (idx, c) in psi_hp.iter() {
                            let parts = idx.as_tuple();
                            let mid = AlgebraElement::from_term(
                                ctx.ah_reg.clone(),
                                BasisIndex::Tuple(parts[..2].to_vec()),
                                Scalar::one(),
                            );
                            let h1 = parts[2].as_en();
                            for (idx2, d) in ctx.psi_of(psi, h1, a2, l2).iter() {
                                let parts2 = idx2.as_tuple();
                                let tail = AlgebraElement::from_term(
                                    ctx.ah_reg.clone(),
                                    BasisIndex::Tuple(parts2[..2].to_vec()),
                                    Scalar::one(),
                                );
                                let prod = mid.mul(&tail);
                                for (pidx, e) in prod.iter() {
                                    let mut v = pidx.as_tuple().to_vec();
                                    v.push(parts2[2].clone());
                                    rhs.add_term(
                                        BasisIndex::Tuple(v),
                                        c.mul(d).mul(e),
                                    );
                                }
                            }
                        }
                        c1.eq_elements(|| format!("h={h}, p={a1}⊗{l1}, q={a2}⊗{l2}"), &lhs, &rhs);
                    }
                }
            }
        }
    }
    out.push(c1.finish());

    // ψ(Id⊗u) = u ⊗ Id
    let mut c2 = ConditionChecker::new("psi-unit", "h ∈ basis(H)");
    for &h in &en {
        let lhs = ctx.psi_of(psi, h, SubsetIndex::EMPTY, EnBasis::unit());
        let rhs = ctx
            .ah_one()
            .tensor(&enhopf::basis_elem(ctx.n, h));
        c2.eq_elements(|| format!("h={h}"), &lhs, &rhs);
    }
    out.push(c2.finish());

    // δ_H is a morphism in the transfer category
    let reg_d = BasisRegistry::tensor(vec![
        ctx.ah_reg.clone(),
        ctx.h_reg.clone(),
        ctx.h_reg.clone(),
    ]);
    let mut c3 = ConditionChecker::new("delta-morphism", "h ∈ basis(H); p ∈ basis(A⊗Hᵒᵖ)");
    for &h in &en {
        for &a in &cl {
            for &l in &en {
                // lhs: (m⊗Id⊗Id)(Id⊗ψ⊗Id)(Id⊗Id⊗ψ)(δ⊗Id)
                let mut lhs = AlgebraElement::zero(reg_d.clone());
                for (h1, h2, s) in enhopf::comul_basis(h) {
                    for (idx, c) in ctx.psi_of(psi, h2, a, l).iter() {
                        let parts = idx.as_tuple();
                        let ph2 = parts[2].as_en();
                        for (idx2, d) in ctx
                            .psi_of(psi, h1, parts[0].as_cl(), parts[1].as_en())
                            .iter()
                        {
                            let parts2 = idx2.as_tuple();
                            lhs.add_term(
                                BasisIndex::Tuple(vec![
                                    parts2[0].clone(),
                                    parts2[1].clone(),
                                    parts2[2].clone(),
                                    BasisIndex::En(ph2),
                                ]),
                                c.mul(d).scale_i64(s),
                            );
                        }
                    }
                }
                // rhs: (m⊗Id⊗Id)(Id⊗δ)ψ
                let mut rhs = AlgebraElement::zero(reg_d.clone());
                for (idx, c) in ctx.psi_of(psi, h, a, l).iter() {
                    let parts = idx.as_tuple();
                    for (h1, h2, s) in enhopf::comul_basis(parts[2].as_en()) {
                        rhs.add_term(
                            BasisIndex::Tuple(vec![
                                parts[0].clone(),
                                parts[1].clone(),
                                BasisIndex::En(h1),
                                BasisIndex::En(h2),
                            ]),
                            c.scale_i64(s),
                        );
                    }
                }
                c3.eq_elements(|| format!("h={h}, p={a}⊗{l}"), &lhs, &rhs);
            }
        }
    }
    out.push(c3.finish());

    // coassociativity of δ_H
    let reg_c = BasisRegistry::tensor(vec![
        ctx.ah_reg.clone(),
        ctx.h_reg.clone(),
        ctx.h_reg.clone(),
        ctx.h_reg.clone(),
    ]);
    let unit_a = ctx.a_reg.unit_index();
    let unit_h = ctx.h_reg.unit_index();
    let mut c4 = ConditionChecker::new("delta-coassoc", "h ∈ basis(H)");
    for &h in &en {
        let mut lhs = AlgebraElement::zero(reg_c.clone());
        let mut rhs = AlgebraElement::zero(reg_c.clone());
        for (h1, h2, s) in enhopf::comul_basis(h) {
            for (h11, h12, s2) in enhopf::comul_basis(h1) {
                lhs.add_term(
                    BasisIndex::Tuple(vec![
                        unit_a.clone(),
                        unit_h.clone(),
                        BasisIndex::En(h11),
                        BasisIndex::En(h12),
                        BasisIndex::En(h2),
                    ]),
                    Scalar::from_i64(s * s2),
                );
            }
            for (h21, h22, s2) in enhopf::comul_basis(h2) {
                for (idx, c) in ctx.psi_of(psi, h1, SubsetIndex::EMPTY, EnBasis::unit()).iter() {
                    let parts = idx.as_tuple();
                    rhs.add_term(
                        BasisIndex::Tuple(vec![
                            parts[0].clone(),
                            parts[1].clone(),
                            parts[2].clone(),
                            BasisIndex::En(h21),
                            BasisIndex::En(h22),
                        ]),
                        c.scale_i64(s * s2),
                    );
                }
            }
        }
        c4.eq_elements(|| format!("h={h}"), &lhs, &rhs);
    }
    out.push(c4.finish());

    // ε_H is a morphism in the transfer category
    let mut c5 = ConditionChecker::new("eps-morphism", "h ∈ basis(H); p ∈ basis(A⊗Hᵒᵖ)");
    for &h in &en {
        for &a in &cl {
            for &l in &en {
                let mut lhs = AlgebraElement::zero(ctx.ah_reg.clone());
                for (idx, c) in ctx.psi_of(psi, h, a, l).iter() {
                    let parts = idx.as_tuple();
                    if parts[2].as_en().p().is_empty() {
                        lhs.add_term(BasisIndex::Tuple(parts[..2].to_vec()), c.clone());
                    }
                }
                let rhs = ctx.ah_term(a, l, Scalar::one()).scale_i64(if h.p().is_empty() {
                    1
                } else {
                    0
                });
                c5.eq_elements(|| format!("h={h}, p={a}⊗{l}"), &lhs, &rhs);
            }
        }
    }
    out.push(c5.finish());

    // left and right counit properties
    let reg_u = BasisRegistry::tensor(vec![ctx.ah_reg.clone(), ctx.h_reg.clone()]);
    let mut c6 = ConditionChecker::new("counit-left", "h ∈ basis(H)");
    let mut c7 = ConditionChecker::new("counit-right", "h ∈ basis(H)");
    for &h in &en {
        let expected = ctx
            .ah_one()
            .tensor(&enhopf::basis_elem(ctx.n, h));
        let mut left = AlgebraElement::zero(reg_u.clone());
        let mut right = AlgebraElement::zero(reg_u.clone());
        for (h1, h2, s) in enhopf::comul_basis(h) {
            if h1.p().is_empty() {
                left.add_term(
                    BasisIndex::Tuple(vec![
                        unit_a.clone(),
                        unit_h.clone(),
                        BasisIndex::En(h2),
                    ]),
                    Scalar::from_i64(s),
                );
            }
            if h2.p().is_empty() {
                for (idx, c) in ctx.psi_of(psi, h1, SubsetIndex::EMPTY, EnBasis::unit()).iter() {
                    right = right.add(&AlgebraElement::from_term(
                        reg_u.clone(),
                        idx.clone(),
                        c.scale_i64(s),
                    ));
                }
            }
        }
        c6.eq_elements(|| format!("h={h}"), &left, &expected);
        c7.eq_elements(|| format!("h={h}"), &right, &expected);
    }
    out.push(c6.finish());
    out.push(c7.finish());

    out
}

/// The family `t_{k,Q} = B^A(1 ⊗ gᵏx_Q)` of elements of `A`.
#[derive(Clone, Debug)]
pub struct TFamily {
    n: usize,
    t: BTreeMap<(u8, SubsetIndex), AlgebraElement>,
}

impl TFamily {
    pub fn build(
        params: &Params,
        mut f: impl FnMut(u8, SubsetIndex) -> AlgebraElement,
    ) -> TFamily {
        let n = params.n();
        let mut t = BTreeMap::new();
        for q in SubsetIndex::range(1, n as u8).subsets() {
            for k in 0..=1u8 {
                let v = f(k, q);
                assert!(v.registry() == &clifford::registry(params));
                t.insert((k, q), v);
            }
        }
        TFamily { n, t }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self, k: u8, q: SubsetIndex) -> &AlgebraElement {
        &self.t[&(k, q)]
    }

    /// `B^A` on a basis pair, through the antipode pullback
    /// `B^A(gʲx_P ⊗ gᵏx_Q) = B^A(1 ⊗ S(gʲx_P) gᵏx_Q)`.
    pub fn pullback(&self, h: EnBasis, hp: EnBasis) -> AlgebraElement {
        let (sh, sgn) = enhopf::antipode_basis(h);
        match enhopf::basis_mul_signed(sh, hp) {
            None => AlgebraElement::zero(self.t[&(0, SubsetIndex::EMPTY)].registry().clone()),
            Some((b, sgn2)) => self.t(b.j(), b.p()).scale_i64(sgn * sgn2),
        }
    }
}

/// A Casimir table `B : H ⊗ H → A ⊗ Hᵒᵖ` on the basis square of `H`.
///
/// Right-trivial tables (`B = B^A ⊗ 1_H`) are backed by a [`TFamily`] and
/// fill their entries lazily through the antipode pullback, memoizing per
/// key; explicit tables store every entry.
pub struct CasimirTable {
    params: Params,
    rt: bool,
    source: TableSource,
    ah_reg: BasisRegistry,
    memo: Mutex<BTreeMap<(EnBasis, EnBasis), Arc<AlgebraElement>>>,
}

enum TableSource {
    RtFamily(TFamily),
    Explicit(BTreeMap<(EnBasis, EnBasis), AlgebraElement>),
}

impl CasimirTable {
    pub fn from_t_family(params: &Params, tfam: TFamily) -> CasimirTable {
        assert_eq!(tfam.n(), params.n());
        CasimirTable {
            params: params.clone(),
            rt: true,
            source: TableSource::RtFamily(tfam),
            ah_reg: ah_registry(params),
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    /// Builds from explicit `A ⊗ Hᵒᵖ`-valued entries on every basis pair.
    pub fn from_entries(
        params: &Params,
        entries: BTreeMap<(EnBasis, EnBasis), AlgebraElement>,
        rt: bool,
    ) -> CasimirTable {
        let ah_reg = ah_registry(params);
        let hs: Vec<EnBasis> = enhopf::registry(params.n())
            .basis()
            .iter()
            .map(|b| b.as_en())
            .collect();
        for &h in &hs {
            for &hp in &hs {
                let e = entries
                    .get(&(h, hp))
                    .unwrap_or_else(|| panic!("missing entry ({h}, {hp})"));
                assert!(e.registry() == &ah_reg, "entry ({h}, {hp}) lives in the wrong space");
                if rt {
                    let unit_h = enhopf::registry(params.n()).unit_index();
                    assert!(
                        e.iter().all(|(idx, _)| idx.as_tuple()[1] == unit_h),
                        "rt table has a non-trivial Hᵒᵖ component at ({h}, {hp})"
                    );
                }
            }
        }
        CasimirTable {
            params: params.clone(),
            rt,
            source: TableSource::Explicit(entries),
            ah_reg,
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn is_rt(&self) -> bool {
        self.rt
    }

    /// `B` on a basis pair, as an element of `A ⊗ Hᵒᵖ`.
    pub fn entry(&self, h: EnBasis, hp: EnBasis) -> Arc<AlgebraElement> {
        if let Some(hit) = self.memo.lock().unwrap().get(&(h, hp)) {
            return hit.clone();
        }
        let value = match &self.source {
            TableSource::Explicit(map) => map[&(h, hp)].clone(),
            TableSource::RtFamily(tfam) => {
                let a_part = tfam.pullback(h, hp);
                let mut out = AlgebraElement::zero(self.ah_reg.clone());
                let unit_h = enhopf::registry(self.params.n()).unit_index();
                for (idx, c) in a_part.iter() {
                    out.add_term(
                        BasisIndex::Tuple(vec![idx.clone(), unit_h.clone()]),
                        c.clone(),
                    );
                }
                out
            }
        };
        let arc = Arc::new(value);
        self.memo
            .lock()
            .unwrap()
            .entry((h, hp))
            .or_insert_with(|| arc.clone())
            .clone()
    }

    /// Bilinear extension of `B` to elements of `H`.
    pub fn b_of(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.ah_reg.clone());
        for (iu, cu) in u.iter() {
            for (iv, cv) in v.iter() {
                out = out.add(&self.entry(iu.as_en(), iv.as_en()).scale(&cu.mul(cv)));
            }
        }
        out
    }

    /// The `A`-part `B^A` on a basis pair; the table must be right-trivial.
    pub fn b_a(&self, h: EnBasis, hp: EnBasis) -> AlgebraElement {
        assert!(self.rt, "B^A is only defined for right-trivial tables");
        let mut out = AlgebraElement::zero(clifford::registry(&self.params));
        for (idx, c) in self.entry(h, hp).iter() {
            out.add_term(idx.as_tuple()[0].clone(), c.clone());
        }
        out
    }

    /// Bilinear extension of `B^A`.
    pub fn b_a_of(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(clifford::registry(&self.params));
        for (iu, cu) in u.iter() {
            for (iv, cv) in v.iter() {
                out = out.add(&self.b_a(iu.as_en(), iv.as_en()).scale(&cu.mul(cv)));
            }
        }
        out
    }

    /// All entries, eagerly computed (for perturbation corpora).
    pub fn materialize(&self) -> BTreeMap<(EnBasis, EnBasis), AlgebraElement> {
        let hs: Vec<EnBasis> = enhopf::registry(self.params.n())
            .basis()
            .iter()
            .map(|b| b.as_en())
            .collect();
        let mut out = BTreeMap::new();
        for &h in &hs {
            for &hp in &hs {
                out.insert((h, hp), (*self.entry(h, hp)).clone());
            }
        }
        out
    }
}

pub fn ah_registry(params: &Params) -> BasisRegistry {
    BasisRegistry::tensor(vec![
        clifford::registry(params),
        BasisRegistry::Opposite(Box::new(enhopf::registry(params.n()))),
    ])
}

/// The separability conditions for a Casimir table of general form,
/// quantified over bases (sound and complete by multilinearity); the
/// h-separability condition is checked when `include_h` is set.
pub fn check_casimir_general(table: &CasimirTable, include_h: bool) -> Vec<ConditionReport> {
    let ctx = CowreathContext::new(table.params());
    let en = ctx.en_basis();
    let cl = ctx.cl_basis();
    let n = ctx.n;
    let el = |b: EnBasis| enhopf::basis_elem(n, b);
    let mut out = Vec::new();

    let mut c1 = ConditionChecker::new(
        "B1-4.23",
        "a ∈ basis(A); g, h, h′ ∈ basis(H)",
    );
    for &a in &cl {
        for &g in &en {
            let d2g: Vec<(EnBasis, EnBasis, EnBasis, i64)> = enhopf::comul_basis(g)
                .into_iter()
                .flat_map(|(g1, g2, s)| {
                    enhopf::comul_basis(g2)
                        .into_iter()
                        .map(move |(g2a, g3, s2)| (g1, g2a, g3, s * s2))
                })
                .collect();
            for &h in &en {
                for &hp in &en {
                    let mut lhs = AlgebraElement::zero(ctx.ah_reg.clone());
                    for (a0, a1, a2, c) in ctx.rho2_basis(a) {
                        for (g1, g2, g3, s) in &d2g {
                            let u = el(*g2).mul(&el(h)).mul(&el(*a1));
                            let v = el(*g3).mul(&el(hp)).mul(&el(*a2));
                            let b = table.b_of(&u, &v);
                            let prefix = ctx.ah_term(*a0, *g1, c.scale_i64(*s));
                            lhs = lhs.add(&prefix.mul(&b));
                        }
                    }
                    let rhs = table
                        .b_of(&el(h), &el(hp))
                        .mul(&ctx.ah_term(a, g, Scalar::one()));
                    c1.eq_elements(|| format!("a={a}, g={g}, h={h}, h′={hp}"), &lhs, &rhs);
                }
            }
        }
    }
    out.push(c1.finish());

    let reg_b2 = BasisRegistry::tensor(vec![
        ctx.a_reg.clone(),
        ctx.h_reg.clone(),
        ctx.h_reg.clone(),
    ]);
    let mut c2 = ConditionChecker::new("B2-4.24", "h, h′ ∈ basis(H)");
    for &h in &en {
        for &hp in &en {
            let mut lhs = AlgebraElement::zero(reg_b2.clone());
            for (h1, h2, s) in enhopf::comul_basis(h) {
                for (idx, c) in table.entry(h2, hp).iter() {
                    let parts = idx.as_tuple();
                    let b_a_idx = parts[0].as_cl();
                    let b_h = parts[1].as_en();
                    for (b0, b1, e) in ctx.rho_basis(b_a_idx) {
                        for (bh1, bh2, s2) in enhopf::comul_basis(b_h) {
                            let Some((m1, sg1)) = enhopf::basis_mul_signed(bh2, h1) else {
                                continue;
                            };
                            let Some((m2, sg2)) = enhopf::basis_mul_signed(m1, *b1) else {
                                continue;
                            };
                            lhs.add_term(
                                BasisIndex::Tuple(vec![
                                    BasisIndex::Cl(*b0),
                                    BasisIndex::En(bh1),
                                    BasisIndex::En(m2),
                                ]),
                                c.mul(e).scale_i64(s * s2 * sg1 * sg2),
                            );
                        }
                    }
                }
            }
            let mut rhs = AlgebraElement::zero(reg_b2.clone());
            for (hp1, hp2, s) in enhopf::comul_basis(hp) {
                for (idx, c) in table.entry(h, hp1).iter() {
                    let parts = idx.as_tuple();
                    rhs.add_term(
                        BasisIndex::Tuple(vec![
                            parts[0].clone(),
                            parts[1].clone(),
                            BasisIndex::En(hp2),
                        ]),
                        c.scale_i64(s),
                    );
                }
            }
            c2.eq_elements(|| format!("h={h}, h′={hp}"), &lhs, &rhs);
        }
    }
    out.push(c2.finish());

    let mut c3 = ConditionChecker::new("B3-4.25", "h ∈ basis(H)");
    for &h in &en {
        let mut lhs = AlgebraElement::zero(ctx.ah_reg.clone());
        for (h1, h2, s) in enhopf::comul_basis(h) {
            lhs = lhs.add(&table.entry(h1, h2).scale_i64(s));
        }
        let rhs = ctx.ah_one().scale_i64(if h.p().is_empty() { 1 } else { 0 });
        c3.eq_elements(|| format!("h={h}"), &lhs, &rhs);
    }
    out.push(c3.finish());

    if include_h {
        let mut c4 = ConditionChecker::new("B4-4.26", "h, h′, h″ ∈ basis(H)");
        for &h in &en {
            for &hp in &en {
                for &hpp in &en {
                    let mut lhs = AlgebraElement::zero(ctx.ah_reg.clone());
                    for (hp1, hp2, s) in enhopf::comul_basis(hp) {
                        lhs = lhs.add(
                            &table
                                .entry(h, hp1)
                                .mul(&table.entry(hp2, hpp))
                                .scale_i64(s),
                        );
                    }
                    let rhs = table
                        .entry(h, hpp)
                        .scale_i64(if hp.p().is_empty() { 1 } else { 0 });
                    c4.eq_elements(|| format!("h={h}, h′={hp}, h″={hpp}"), &lhs, &rhs);
                }
            }
        }
        out.push(c4.finish());
    }

    out
}

/// The simplified right-trivial conditions on `B^A`; `include_h` adds the
/// h-separability product condition.
pub fn check_casimir_rt(table: &CasimirTable, include_h: bool) -> Vec<ConditionReport> {
    let ctx = CowreathContext::new(table.params());
    let en = ctx.en_basis();
    let cl = ctx.cl_basis();
    let n = ctx.n;
    let el = |b: EnBasis| enhopf::basis_elem(n, b);
    let mut out = Vec::new();

    let mut c1 = ConditionChecker::new("B1S", "a ∈ basis(A); h, h′ ∈ basis(H)");
    for &a in &cl {
        for &h in &en {
            for &hp in &en {
                let mut lhs = AlgebraElement::zero(ctx.a_reg.clone());
                for (a0, a1, a2, c) in ctx.rho2_basis(a) {
                    let u = el(h).mul(&el(*a1));
                    let v = el(hp).mul(&el(*a2));
                    lhs = lhs.add(&ctx.a_elem(*a0).mul(&table.b_a_of(&u, &v)).scale(c));
                }
                let rhs = table.b_a(h, hp).mul(&ctx.a_elem(a));
                c1.eq_elements(|| format!("a={a}, h={h}, h′={hp}"), &lhs, &rhs);
            }
        }
    }
    out.push(c1.finish());

    out.push(check_b2s(&ctx, table, "B2S"));

    let mut c3 = ConditionChecker::new("B3S", "h, h′, h″ ∈ basis(H); plus B^A(1⊗1) = 1");
    c3.eq_elements(
        || "B^A(1⊗1)".to_string(),
        &table.b_a(EnBasis::unit(), EnBasis::unit()),
        &clifford::one(&ctx.params),
    );
    for &h in &en {
        for &hp in &en {
            for &hpp in &en {
                let mut lhs = AlgebraElement::zero(ctx.a_reg.clone());
                for (h1, h2, s) in enhopf::comul_basis(h) {
                    let u = el(h1).mul(&el(hp));
                    let v = el(h2).mul(&el(hpp));
                    lhs = lhs.add(&table.b_a_of(&u, &v).scale_i64(s));
                }
                let rhs = table
                    .b_a(hp, hpp)
                    .scale_i64(if h.p().is_empty() { 1 } else { 0 });
                c3.eq_elements(|| format!("h={h}, h′={hp}, h″={hpp}"), &lhs, &rhs);
            }
        }
    }
    out.push(c3.finish());

    if include_h {
        let mut c4 = ConditionChecker::new("B4S", "h, h′ ∈ basis(H)");
        for &h in &en {
            for &hp in &en {
                let lhs = table
                    .b_a(h, EnBasis::unit())
                    .mul(&table.b_a(EnBasis::unit(), hp));
                let rhs = table.b_a(h, hp);
                c4.eq_elements(|| format!("h={h}, h′={hp}"), &lhs, &rhs);
            }
        }
        out.push(c4.finish());
    }

    out
}

/// The reduced right-trivial conditions, phrased through `B^A(1 ⊗ -)` only;
/// `include_h` adds the multiplicativity condition.
pub fn check_casimir_reduced(table: &CasimirTable, include_h: bool) -> Vec<ConditionReport> {
    let ctx = CowreathContext::new(table.params());
    let en = ctx.en_basis();
    let cl = ctx.cl_basis();
    let n = ctx.n;
    let el = |b: EnBasis| enhopf::basis_elem(n, b);
    let one_h = EnBasis::unit();
    let mut out = Vec::new();

    let mut c1 = ConditionChecker::new("B1S1", "a ∈ basis(A); h ∈ basis(H)");
    for &a in &cl {
        for &h in &en {
            let mut lhs = AlgebraElement::zero(ctx.a_reg.clone());
            for (a0, a1, a2, c) in ctx.rho2_basis(a) {
                let (sa1, sgn) = enhopf::antipode_basis(*a1);
                let v = el(sa1).mul(&el(h)).mul(&el(*a2)).scale_i64(sgn);
                lhs = lhs.add(
                    &ctx.a_elem(*a0)
                        .mul(&table.b_a_of(&el(one_h), &v))
                        .scale(c),
                );
            }
            let rhs = table.b_a(one_h, h).mul(&ctx.a_elem(a));
            c1.eq_elements(|| format!("a={a}, h={h}"), &lhs, &rhs);
        }
    }
    out.push(c1.finish());

    out.push(check_b2s(&ctx, table, "B2S1"));

    let mut c3 = ConditionChecker::new("B3S1", "h, h′ ∈ basis(H); plus B^A(1⊗1) = 1");
    c3.eq_elements(
        || "B^A(1⊗1)".to_string(),
        &table.b_a(one_h, one_h),
        &clifford::one(&ctx.params),
    );
    for &h in &en {
        for &hp in &en {
            let (sh, sgn) = enhopf::antipode_basis(h);
            let v = el(sh).mul(&el(hp)).scale_i64(sgn);
            let rhs = table.b_a_of(&el(one_h), &v);
            c3.eq_elements(|| format!("h={h}, h′={hp}"), &table.b_a(h, hp), &rhs);
        }
    }
    out.push(c3.finish());

    if include_h {
        let mut c4 = ConditionChecker::new("B4S1", "h, h′ ∈ basis(H)");
        for &h in &en {
            for &hp in &en {
                let lhs = table.b_a(one_h, h).mul(&table.b_a(one_h, hp));
                let rhs = table.b_a_of(&el(one_h), &el(h).mul(&el(hp)));
                c4.eq_elements(|| format!("h={h}, h′={hp}"), &lhs, &rhs);
            }
        }
        out.push(c4.finish());
    }

    out
}

/// `ρ(B^A(1⊗h)) = B^A(1⊗h₁) ⊗ h₂`, shared between the rt and reduced suites.
fn check_b2s(ctx: &CowreathContext, table: &CasimirTable, id: &str) -> ConditionReport {
    let coaction = clifford::Coaction::canonical(&ctx.params);
    let reg = BasisRegistry::tensor(vec![ctx.a_reg.clone(), ctx.h_reg.clone()]);
    let mut checker = ConditionChecker::new(id, "h ∈ basis(H)");
    for &h in &ctx.en_basis() {
        let lhs = coaction.apply(&table.b_a(EnBasis::unit(), h));
        let mut rhs = AlgebraElement::zero(reg.clone());
        for (h1, h2, s) in enhopf::comul_basis(h) {
            for (idx, c) in table.b_a(EnBasis::unit(), h1).iter() {
                rhs.add_term(
                    BasisIndex::Tuple(vec![idx.clone(), BasisIndex::En(h2)]),
                    c.scale_i64(s),
                );
            }
        }
        checker.eq_elements(|| format!("h={h}"), &lhs, &rhs);
    }
    checker.finish()
}

/// Conditions on a `t`-family for a finite-dimensional comodule algebra with
/// tuple maps `(φ, d₁, …, dₙ)`; `include_h` adds the h-separability pair.
pub fn check_en_conditions(
    params: &Params,
    tuple: &ComoduleTuple,
    tfam: &TFamily,
    include_h: bool,
) -> Vec<ConditionReport> {
    let n = params.n();
    let ground = SubsetIndex::range(1, n as u8);
    let a_reg = clifford::registry(params);
    let one_a = clifford::one(params);
    let phi = |e: &AlgebraElement, pow: usize| -> AlgebraElement {
        if pow % 2 == 0 {
            e.clone()
        } else {
            tuple.phi.apply(e).expect("element of A")
        }
    };
    let d_p = |e: &AlgebraElement, p: SubsetIndex| -> AlgebraElement {
        let mut acc = e.clone();
        let idxs: Vec<u8> = p.elements().collect();
        for &i in idxs.iter().rev() {
            acc = tuple.ds[i as usize - 1].apply(&acc).expect("element of A");
        }
        acc
    };
    let mut out = Vec::new();

    let mut c0 = ConditionChecker::new("B0E", "t_{0,∅} = 1");
    c0.eq_elements(|| "t_{0,∅}".into(), tfam.t(0, SubsetIndex::EMPTY), &one_a);
    out.push(c0.finish());

    let mut c2 = ConditionChecker::new("B2E", "k ∈ {0,1}; Q ⊆ {1..n}");
    for q in ground.subsets() {
        for k in 0..=1u8 {
            let t = tfam.t(k, q);
            let sign = if (k as usize + q.len()) % 2 == 0 { 1 } else { -1 };
            c2.eq_elements(
                || format!("k={k}, Q={q}"),
                &phi(t, 1),
                &t.scale_i64(sign),
            );
        }
    }
    out.push(c2.finish());

    let mut c3 = ConditionChecker::new("B3E", "P, Q ⊆ {1..n}; k ∈ {0,1}");
    for p in ground.subsets() {
        if p.is_empty() {
            continue;
        }
        for q in ground.subsets() {
            for k in 0..=1u8 {
                let lhs = d_p(tfam.t(k, q), p);
                let rhs = if p.is_subset_of(q) {
                    let np = p.len() as i64;
                    let exp = crate::setcombin::s_count(p, q).expect("subset")
                        + np * (np + 2 * k as i64 + 1) / 2;
                    tfam.t(k, q.difference(p))
                        .scale_i64(if exp % 2 == 0 { 1 } else { -1 })
                } else {
                    AlgebraElement::zero(a_reg.clone())
                };
                c3.eq_elements(|| format!("P={p}, k={k}, Q={q}"), &lhs, &rhs);
            }
        }
    }
    out.push(c3.finish());

    let mut c4 = ConditionChecker::new("B4E", "a ∈ basis(A); k ∈ {0,1}; Q ⊆ {1..n}");
    for a_idx in a_reg.basis() {
        let a = AlgebraElement::from_term(a_reg.clone(), a_idx.clone(), Scalar::one());
        for q in ground.subsets() {
            let qc = ground.difference(q);
            for k in 0..=1u8 {
                let t = tfam.t(k, q);
                let lhs = t.mul(&a);
                let mut rhs = phi(&a, q.len()).mul(t);
                if k == 1 {
                    for p in qc.subsets() {
                        if p.is_empty() {
                            continue;
                        }
                        let np = p.len() as i64;
                        let exp = np * (np + 3) / 2
                            + crate::setcombin::s_count(p, p.union(q)).expect("subset");
                        let sign = if exp % 2 == 0 { 1 } else { -1 };
                        let coeff = Scalar::from_i64(sign << p.len());
                        let dpart = d_p(&phi(&a, p.len() + q.len()), p);
                        rhs = rhs.add(&dpart.mul(tfam.t(k, p.union(q))).scale(&coeff));
                    }
                }
                c4.eq_elements(|| format!("a={a_idx}, k={k}, Q={q}"), &lhs, &rhs);
            }
        }
    }
    out.push(c4.finish());

    if include_h {
        out.push(check_h_pair(tfam, &one_a, "B6S"));
    }

    out
}

/// `(t_{1,∅})² = 1` and `t_{1,P} = (-1)^{|P|} t_{0,P} t_{1,∅}`.
fn check_h_pair(tfam: &TFamily, one_a: &AlgebraElement, id: &str) -> ConditionReport {
    let mut c = ConditionChecker::new(id, "P ⊆ {1..n}; plus (t_{1,∅})² = 1");
    let t1e = tfam.t(1, SubsetIndex::EMPTY);
    c.eq_elements(|| "(t_{1,∅})²".into(), &t1e.mul(t1e), one_a);
    for p in SubsetIndex::range(1, tfam.n() as u8).subsets() {
        let sign = if p.len() % 2 == 0 { 1 } else { -1 };
        c.eq_elements(
            || format!("P={p}"),
            tfam.t(1, p),
            &tfam.t(0, p).mul(t1e).scale_i64(sign),
        );
    }
    c.finish()
}

/// Which h-separability layer a Clifford-condition run should include.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckMode {
    Rt,
    Rth,
}

/// The Clifford-specialized conditions: the tuple is the canonical
/// `(σ, d₁, …, dₙ)` and the commutation family is checked on the algebra
/// generators `G, X₁, …, Xₙ`, which suffices by multiplicativity.
pub fn check_clifford_conditions(
    params: &Params,
    table: &CasimirTable,
    tfam: &TFamily,
    mode: CheckMode,
) -> Vec<ConditionReport> {
    let n = params.n();
    let ground = SubsetIndex::range(1, n as u8);
    let a_reg = clifford::registry(params);
    let one_a = clifford::one(params);
    let g = clifford::g_elem(params);
    let en_basis: Vec<EnBasis> = enhopf::registry(n).basis().iter().map(|b| b.as_en()).collect();
    let mut out = Vec::new();

    let mut c0 = ConditionChecker::new("B0cl", "t_{0,∅} = 1");
    c0.eq_elements(|| "t_{0,∅}".into(), tfam.t(0, SubsetIndex::EMPTY), &one_a);
    out.push(c0.finish());

    let mut c1 = ConditionChecker::new("B1cl", "gʲx_P, gᵏx_Q ∈ basis(H)");
    for &h in &en_basis {
        for &hp in &en_basis {
            let stored = table.b_a(h, hp);
            let rule = tfam.pullback(h, hp);
            c1.eq_elements(|| format!("h={h}, h′={hp}"), &stored, &rule);
        }
    }
    out.push(c1.finish());

    let mut c2 = ConditionChecker::new("B2cl", "k ∈ {0,1}; Q ⊆ {1..n}");
    for q in ground.subsets() {
        for k in 0..=1u8 {
            let t = tfam.t(k, q);
            let sign = if (k as usize + q.len()) % 2 == 0 { 1 } else { -1 };
            c2.eq_elements(
                || format!("k={k}, Q={q}"),
                &clifford::main_involution(t),
                &t.scale_i64(sign),
            );
        }
    }
    out.push(c2.finish());

    let mut c3 = ConditionChecker::new("B3cl", "P, Q ⊆ {1..n}; k ∈ {0,1}");
    for p in ground.subsets() {
        if p.is_empty() {
            continue;
        }
        for q in ground.subsets() {
            for k in 0..=1u8 {
                let lhs = clifford::d_composite(p, tfam.t(k, q));
                let rhs = if p.is_subset_of(q) {
                    let np = p.len() as i64;
                    let exp = crate::setcombin::s_count(p, q).expect("subset")
                        + np * (np + 2 * k as i64 + 1) / 2;
                    tfam.t(k, q.difference(p))
                        .scale_i64(if exp % 2 == 0 { 1 } else { -1 })
                } else {
                    AlgebraElement::zero(a_reg.clone())
                };
                c3.eq_elements(|| format!("P={p}, k={k}, Q={q}"), &lhs, &rhs);
            }
        }
    }
    out.push(c3.finish());

    let mut c4 = ConditionChecker::new("B4cl", "k ∈ {0,1}; Q ⊆ {1..n}");
    for q in ground.subsets() {
        for k in 0..=1u8 {
            let t = tfam.t(k, q);
            let sign = if q.len() % 2 == 0 { 1 } else { -1 };
            c4.eq_elements(
                || format!("k={k}, Q={q}"),
                &t.mul(&g),
                &g.mul(t).scale_i64(sign),
            );
        }
    }
    out.push(c4.finish());

    let mut c5 = ConditionChecker::new("B5cl", "k ∈ {0,1}; Q ⊆ {1..n}; i ∈ {1..n}");
    for q in ground.subsets() {
        for i in 1..=n as u8 {
            let xi = clifford::x_elem(params, i);
            for k in 0..=1u8 {
                let t = tfam.t(k, q);
                let sign = if q.len() % 2 == 0 { 1 } else { -1 };
                let mut rhs = xi.mul(t).scale_i64(sign);
                if k == 1 && !q.contains(i) {
                    let s = s_sign(q, q.insert(i)).expect("subset");
                    rhs = rhs.add(&tfam.t(k, q.insert(i)).scale_i64(2 * s));
                }
                c5.eq_elements(|| format!("k={k}, Q={q}, i={i}"), &t.mul(&xi), &rhs);
            }
        }
    }
    out.push(c5.finish());

    if mode == CheckMode::Rth {
        out.push(check_h_pair(tfam, &one_a, "B6cl"));
    }

    out
}
