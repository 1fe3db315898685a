//! Named verification suites: combinatorial sweeps, structure axioms, and
//! the layered Casimir condition families, with optional randomized
//! specialization for large `n`.

use crate::casimir::{self, CasimirError, EtaAssignment};
use crate::clifford::{self, CliffordParams, ComoduleTuple, Params};
use crate::cowreath::{
    check_casimir_general, check_casimir_reduced, check_casimir_rt,
    check_clifford_conditions, check_cowreath_axioms, check_en_conditions, CasimirTable,
    CheckMode,
};
use crate::enhopf;
use crate::linalg::{AlgebraElement, BasisIndex, BasisRegistry};
use crate::report::{
    merge_random_runs, ConditionChecker, ConditionReport, Strategy, VerificationReport,
};
use crate::scalar::{Assignment, ParamName, Scalar};
use crate::setcombin::{
    double_factorial, enumerate_matchings, matching_sign, s_count, SubsetIndex,
};

/// Strategy-aware driver: one exact run, or one exact run per seed on a
/// fully specialized instance, merged into a probabilistic verdict.
fn drive(
    suite: &str,
    n: usize,
    strategy: &Strategy,
    vars: &[ParamName],
    run: impl Fn(Option<&Assignment>) -> Result<Vec<ConditionReport>, CasimirError>,
) -> Result<VerificationReport, CasimirError> {
    let conditions = match strategy {
        Strategy::Symbolic => run(None)?,
        Strategy::Random(seeds) => {
            let mut runs = Vec::new();
            for &seed in seeds {
                let asn = Assignment::new(seed).distinct_on(vars)?;
                runs.push((seed, run(Some(&asn))?));
            }
            merge_random_runs(runs)
        }
    };
    Ok(VerificationReport::new(suite, n, strategy.clone(), conditions))
}

fn specialized_params(params: &Params, asn: Option<&Assignment>) -> Result<Params, CasimirError> {
    Ok(match asn {
        None => params.clone(),
        Some(a) => params.specialize(a)?,
    })
}

fn collect_vars(params: &Params, extra: &[Vec<ParamName>]) -> Vec<ParamName> {
    let mut vs = params.variables();
    for e in extra {
        vs.extend(e.iter().copied());
    }
    vs.sort();
    vs.dedup();
    vs
}

/// Brute-force sweep of the six position-sum identities over all chains in
/// `{1..bound}`, plus the perfect-matching counting and sign laws over even
/// subsets of `{0..bound+1}`.
pub fn suite_lemmas(bound: u8) -> VerificationReport {
    let mut out = Vec::new();
    let ground = SubsetIndex::range(1, bound);
    let sc = |f, p| s_count(f, p).expect("subset");
    let int = Scalar::from_i64;

    let mut c = ConditionChecker::new("SFP-i", format!("i ∈ P ⊆ {{1..{bound}}}").as_str());
    for p in ground.subsets() {
        for i in p.elements() {
            let bigger = p.elements().filter(|&e| e > i).count() as i64;
            let lhs = sc(p.remove(i), p);
            c.eq_scalars(
                || format!("i={i}, P={p}"),
                &int(lhs),
                &int(p.len() as i64 - 1 - sc(SubsetIndex::singleton(i), p)),
            );
            c.eq_scalars(|| format!("i={i}, P={p} (count)"), &int(lhs), &int(bigger));
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("SFP-ii", format!("F ⊆ P ⊆ {{1..{bound}}}").as_str());
    for p in ground.subsets() {
        for f in p.subsets() {
            let lhs: i64 = f.elements().map(|l| sc(SubsetIndex::singleton(l), p)).sum();
            let r = f.len() as i64;
            c.eq_scalars(
                || format!("F={f}, P={p}"),
                &int(lhs),
                &int(sc(f, p) + r * (r - 1) / 2),
            );
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("SFP-iii", format!("F ⊆ P ⊆ {{1..{bound}}}").as_str());
    for p in ground.subsets() {
        for f in p.subsets() {
            c.eq_scalars(
                || format!("F={f}, P={p}"),
                &int(sc(f, p) + sc(p.difference(f), p)),
                &int(f.len() as i64 * (p.len() as i64 - f.len() as i64)),
            );
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("SFP-iv", format!("F ⊆ P ⊆ {{1..{bound}}}; F′ ⊆ P∖F").as_str());
    for p in ground.subsets() {
        for f in p.subsets() {
            for fp in p.difference(f).subsets() {
                let lhs: i64 = fp
                    .elements()
                    .map(|j| sc(SubsetIndex::singleton(j), f.insert(j)))
                    .sum();
                c.eq_scalars(
                    || format!("F={f}, P={p}, F′={fp}"),
                    &int(lhs),
                    &int(sc(fp, p) - sc(fp, p.difference(f))),
                );
            }
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("SFP-v", format!("F′ ⊆ F ⊆ P ⊆ {{1..{bound}}}").as_str());
    for p in ground.subsets() {
        for f in p.subsets() {
            for fp in f.subsets() {
                c.eq_scalars(
                    || format!("F′={fp}, F={f}, P={p}"),
                    &int(sc(f.difference(fp), p.difference(fp))),
                    &int(sc(f, p) - sc(fp, p) + sc(fp, f)),
                );
            }
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new(
        "SFP-vi",
        format!("F ⊆ P ⊆ {{1..{bound}}}; i > max(P)").as_str(),
    );
    for p in ground.subsets() {
        let lo = p.max().map_or(1, |m| m + 1);
        for f in p.subsets() {
            for i in lo..=bound {
                c.eq_scalars(
                    || format!("F={f}, P={p}, i={i}"),
                    &int(sc(f.insert(i), p.insert(i))),
                    &int(sc(f, p) + p.len() as i64 - f.len() as i64),
                );
            }
        }
    }
    out.push(c.finish());

    let mground = SubsetIndex::range(0, bound + 1);
    let mut cc = ConditionChecker::new(
        "matching-count",
        format!("even S ⊆ {{0..{}}}", bound + 1).as_str(),
    );
    let mut cs = ConditionChecker::new(
        "matching-sign-sum",
        format!("even S ⊆ {{0..{}}}", bound + 1).as_str(),
    );
    for s in mground.subsets() {
        if s.len() % 2 != 0 {
            continue;
        }
        let ms = enumerate_matchings(s).expect("even");
        cc.eq_scalars(
            || format!("S={s}"),
            &int(ms.len() as i64),
            &int(double_factorial(s.len() as i64 - 1) as i64),
        );
        let sum: i64 = ms.iter().map(matching_sign).sum();
        cs.eq_scalars(|| format!("S={s}"), &int(sum), &int(1));
    }
    out.push(cc.finish());
    out.push(cs.finish());

    VerificationReport::new("lemmas", bound as usize, Strategy::Symbolic, out)
}

/// Hopf-algebra axioms for E(n), exhaustively on basis tuples, plus the
/// reordering and matching-factorization laws and the `Cl(1,0,0,0)`
/// cross-check.
pub fn suite_hopf(n: usize) -> VerificationReport {
    let reg = enhopf::registry(n);
    let basis = reg.basis();
    let el = |idx: &BasisIndex| AlgebraElement::from_term(reg.clone(), idx.clone(), Scalar::one());
    let one = enhopf::one(n);
    let mut out = Vec::new();

    let mut c = ConditionChecker::new("en-assoc", "a, b, c ∈ basis(E(n))");
    for a in &basis {
        for b in &basis {
            let ab = el(a).mul(&el(b));
            for cc in &basis {
                c.eq_elements(
                    || format!("a={a}, b={b}, c={cc}"),
                    &ab.mul(&el(cc)),
                    &el(a).mul(&el(b).mul(&el(cc))),
                );
            }
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("en-coassoc", "h ∈ basis(E(n))");
    let reg3 = BasisRegistry::tensor(vec![reg.clone(), reg.clone(), reg.clone()]);
    for h in &basis {
        let lhs = enhopf::comul2(&el(h));
        // (Id ⊗ Δ)Δ
        let mut rhs = AlgebraElement::zero(reg3.clone());
        for (h1, h2, s) in enhopf::comul_basis(h.as_en()) {
            for (h21, h22, s2) in enhopf::comul_basis(h2) {
                rhs.add_term(
                    BasisIndex::Tuple(vec![
                        BasisIndex::En(h1),
                        BasisIndex::En(h21),
                        BasisIndex::En(h22),
                    ]),
                    Scalar::from_i64(s * s2),
                );
            }
        }
        c.eq_elements(|| format!("h={h}"), &lhs, &rhs);
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("en-counit", "h ∈ basis(E(n))");
    for h in &basis {
        let mut left = AlgebraElement::zero(reg.clone());
        let mut right = AlgebraElement::zero(reg.clone());
        for (h1, h2, s) in enhopf::comul_basis(h.as_en()) {
            if h1.p().is_empty() {
                left.add_term(BasisIndex::En(h2), Scalar::from_i64(s));
            }
            if h2.p().is_empty() {
                right.add_term(BasisIndex::En(h1), Scalar::from_i64(s));
            }
        }
        c.eq_elements(|| format!("h={h} (left)"), &left, &el(h));
        c.eq_elements(|| format!("h={h} (right)"), &right, &el(h));
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("en-bialgebra", "a, b ∈ basis(E(n))");
    c.eq_elements(|| "Δ(1)".into(), &enhopf::comul(&one), &one.tensor(&one));
    for a in &basis {
        for b in &basis {
            let lhs = enhopf::comul(&el(a).mul(&el(b)));
            let rhs = enhopf::comul(&el(a)).mul(&enhopf::comul(&el(b)));
            c.eq_elements(|| format!("a={a}, b={b}"), &lhs, &rhs);
            c.eq_scalars(
                || format!("a={a}, b={b} (ε)"),
                &enhopf::counit(&el(a).mul(&el(b))),
                &enhopf::counit(&el(a)).mul(&enhopf::counit(&el(b))),
            );
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("en-antipode", "h ∈ basis(E(n))");
    for h in &basis {
        let mut conv_left = AlgebraElement::zero(reg.clone());
        let mut conv_right = AlgebraElement::zero(reg.clone());
        for (h1, h2, s) in enhopf::comul_basis(h.as_en()) {
            let e1 = enhopf::basis_elem(n, h1);
            let e2 = enhopf::basis_elem(n, h2);
            conv_left = conv_left.add(&enhopf::antipode(&e1).mul(&e2).scale_i64(s));
            conv_right = conv_right.add(&e1.mul(&enhopf::antipode(&e2)).scale_i64(s));
        }
        let expected = one.scale(&enhopf::counit(&el(h)));
        c.eq_elements(|| format!("h={h} (S⋆Id)"), &conv_left, &expected);
        c.eq_elements(|| format!("h={h} (Id⋆S)"), &conv_right, &expected);
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("en-reorder", "F ⊆ P ⊆ {1..n}");
    for p in SubsetIndex::range(1, n as u8).subsets() {
        let xp = enhopf::x_word(n, p);
        for f in p.subsets() {
            let sign = crate::setcombin::s_sign(f, p).expect("subset");
            c.eq_elements(
                || format!("F={f}, P={p}"),
                &enhopf::x_word(n, f)
                    .mul(&enhopf::x_word(n, p.difference(f)))
                    .scale_i64(sign),
                &xp,
            );
        }
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("en-matching-factor", "even S ⊆ {1..n}; 𝒫 ∈ π₂(S)");
    for s in SubsetIndex::range(1, n as u8).subsets() {
        if s.len() % 2 != 0 {
            continue;
        }
        let xs = enhopf::x_word(n, s);
        for m in enumerate_matchings(s).expect("even") {
            let mut prod = one.clone();
            for &(a, b) in m.blocks() {
                prod = prod.mul(&enhopf::x_word(n, SubsetIndex::EMPTY.insert(a).insert(b)));
            }
            c.eq_elements(
                || format!("S={s}, 𝒫={m}"),
                &prod.scale_i64(matching_sign(&m)),
                &xs,
            );
        }
    }
    out.push(c.finish());

    // E(n) = Cl(1, 0, 0, 0) under gʲx_P ↦ X_{({0} if j) ⊔ P}
    let mut c = ConditionChecker::new("en-clifford-agree", "a, b ∈ basis(E(n))");
    let cl_params = CliffordParams::new(
        n,
        Scalar::one(),
        vec![Scalar::zero(); n],
        vec![Scalar::zero(); n],
        (1..=n as u8)
            .flat_map(|i| (i + 1..=n as u8).map(move |j| ((i, j), Scalar::zero())))
            .collect(),
    );
    let to_cl = |b: &BasisIndex| -> SubsetIndex {
        let en = b.as_en();
        if en.j() == 1 {
            en.p().insert(0)
        } else {
            en.p()
        }
    };
    for a in &basis {
        for b in &basis {
            let en_prod = el(a).mul(&el(b));
            let cl_prod = clifford::basis_elem(&cl_params, to_cl(a))
                .mul(&clifford::basis_elem(&cl_params, to_cl(b)));
            let mut mapped = AlgebraElement::zero(clifford::registry(&cl_params));
            for (idx, coeff) in en_prod.iter() {
                mapped.add_term(BasisIndex::Cl(to_cl(idx)), coeff.clone());
            }
            c.eq_elements(|| format!("a={a}, b={b}"), &mapped, &cl_prod);
        }
    }
    out.push(c.finish());

    VerificationReport::new("hopf", n, Strategy::Symbolic, out)
}

/// Comodule-algebra axioms for the canonical coaction, agreement of its two
/// implementations, and the axioms of the associated tuple of maps.
pub fn suite_comodule(
    params: &Params,
    strategy: &Strategy,
) -> Result<VerificationReport, CasimirError> {
    let vars = collect_vars(params, &[]);
    drive("comodule", params.n(), strategy, &vars, |asn| {
        let p = specialized_params(params, asn)?;
        Ok(comodule_conditions(&p))
    })
}

fn comodule_conditions(params: &Params) -> Vec<ConditionReport> {
    let n = params.n();
    let a_reg = clifford::registry(params);
    let basis = a_reg.basis();
    let el = |idx: &BasisIndex| AlgebraElement::from_term(a_reg.clone(), idx.clone(), Scalar::one());
    let rho = clifford::Coaction::canonical(params);
    let mut out = Vec::new();

    let mut c = ConditionChecker::new("coaction-agree", "a ∈ basis(A)");
    for a in &basis {
        c.eq_elements(
            || format!("a={a}"),
            &rho.apply(&el(a)),
            &clifford::coaction_by_generators(params, &el(a)),
        );
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("coaction-unit", "ρ(1) = 1⊗1");
    c.eq_elements(
        || "ρ(1)".into(),
        &rho.apply(&clifford::one(params)),
        &clifford::one(params).tensor(&enhopf::one(n)),
    );
    out.push(c.finish());

    let mut c = ConditionChecker::new("coaction-counit", "a ∈ basis(A)");
    for a in &basis {
        let mut contracted = AlgebraElement::zero(a_reg.clone());
        for (idx, coeff) in rho.apply(&el(a)).iter() {
            let parts = idx.as_tuple();
            if parts[1].as_en().p().is_empty() {
                contracted.add_term(parts[0].clone(), coeff.clone());
            }
        }
        c.eq_elements(|| format!("a={a}"), &contracted, &el(a));
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("coaction-coassoc", "a ∈ basis(A)");
    let reg3 = BasisRegistry::tensor(vec![
        a_reg.clone(),
        enhopf::registry(n),
        enhopf::registry(n),
    ]);
    for a in &basis {
        // (ρ ⊗ Id)ρ
        let mut lhs = AlgebraElement::zero(reg3.clone());
        for (idx, coeff) in rho.apply(&el(a)).iter() {
            let parts = idx.as_tuple();
            for (idx2, coeff2) in rho.apply(&el(&parts[0])).iter() {
                let parts2 = idx2.as_tuple();
                lhs.add_term(
                    BasisIndex::Tuple(vec![
                        parts2[0].clone(),
                        parts2[1].clone(),
                        parts[1].clone(),
                    ]),
                    coeff.mul(coeff2),
                );
            }
        }
        c.eq_elements(|| format!("a={a}"), &lhs, &rho.apply_twice(&el(a)));
    }
    out.push(c.finish());

    let mut c = ConditionChecker::new("coaction-mult", "a, b ∈ basis(A)");
    for a in &basis {
        for b in &basis {
            c.eq_elements(
                || format!("a={a}, b={b}"),
                &rho.apply(&el(a).mul(&el(b))),
                &rho.apply(&el(a)).mul(&rho.apply(&el(b))),
            );
        }
    }
    out.push(c.finish());

    let tuple = ComoduleTuple::canonical(params);
    let mut inv = ConditionChecker::new("tuple-involution", "a ∈ basis(A)");
    let mut dsq = ConditionChecker::new("tuple-d-squared", "i ∈ {1..n}; a ∈ basis(A)");
    let mut anti = ConditionChecker::new("tuple-phi-anticommute", "i ∈ {1..n}; a ∈ basis(A)");
    let mut danti = ConditionChecker::new("tuple-d-anticommute", "i < j; a ∈ basis(A)");
    for a in &basis {
        let ea = el(a);
        inv.eq_elements(
            || format!("a={a}"),
            &tuple.phi.apply(&tuple.phi.apply(&ea).unwrap()).unwrap(),
            &ea,
        );
        for (i, di) in tuple.ds.iter().enumerate() {
            dsq.eq_elements(
                || format!("i={}, a={a}", i + 1),
                &di.apply(&di.apply(&ea).unwrap()).unwrap(),
                &AlgebraElement::zero(a_reg.clone()),
            );
            anti.eq_elements(
                || format!("i={}, a={a}", i + 1),
                &tuple.phi.apply(&di.apply(&ea).unwrap()).unwrap(),
                &di.apply(&tuple.phi.apply(&ea).unwrap()).unwrap().neg(),
            );
            for (j, dj) in tuple.ds.iter().enumerate().skip(i + 1) {
                danti.eq_elements(
                    || format!("i={}, j={}, a={a}", i + 1, j + 1),
                    &di.apply(&dj.apply(&ea).unwrap()).unwrap(),
                    &dj.apply(&di.apply(&ea).unwrap()).unwrap().neg(),
                );
            }
        }
    }
    out.push(inv.finish());
    out.push(dsq.finish());
    out.push(anti.finish());
    out.push(danti.finish());

    let mut c = ConditionChecker::new("tuple-skew-derivation", "i ∈ {1..n}; a, b ∈ basis(A)");
    for i in 1..=n as u8 {
        for a in &basis {
            for b in &basis {
                let (ea, eb) = (el(a), el(b));
                let lhs = clifford::d_single(i, &ea.mul(&eb));
                let rhs = clifford::d_single(i, &ea)
                    .mul(&eb)
                    .add(&clifford::main_involution(&ea).mul(&clifford::d_single(i, &eb)));
                c.eq_elements(|| format!("i={i}, a={a}, b={b}"), &lhs, &rhs);
            }
        }
    }
    out.push(c.finish());

    out
}

/// The seven cowreath axioms for `(A ⊗ E(n)ᵒᵖ, E(n), ψ)`.
pub fn suite_cowreath(
    params: &Params,
    strategy: &Strategy,
) -> Result<VerificationReport, CasimirError> {
    let vars = collect_vars(params, &[]);
    drive("cowreath", params.n(), strategy, &vars, |asn| {
        let p = specialized_params(params, asn)?;
        Ok(check_cowreath_axioms(&p))
    })
}

/// Right-trivial separability conditions for the table built from `η`, `μ`.
pub fn suite_casimir_rt(
    params: &Params,
    eta: &EtaAssignment,
    mu: &Scalar,
    strategy: &Strategy,
) -> Result<VerificationReport, CasimirError> {
    let vars = collect_vars(params, &[eta.variables(), mu.variables()]);
    drive("casimir-rt", params.n(), strategy, &vars, |asn| {
        let p = specialized_params(params, asn)?;
        let (eta, mu) = match asn {
            None => (eta.clone(), mu.clone()),
            Some(a) => (eta.specialize(a)?, Scalar::from_rational(mu.eval(a)?)),
        };
        let tfam = casimir::build_t_family(&p, &eta, &mu);
        let table = CasimirTable::from_t_family(&p, tfam.clone());
        Ok(check_clifford_conditions(&p, &table, &tfam, CheckMode::Rt))
    })
}

/// The h-separable table in closed form, checked through `B6cl` as well.
pub fn suite_casimir_rth(
    params: &Params,
    mu: &Scalar,
    strategy: &Strategy,
) -> Result<VerificationReport, CasimirError> {
    let vars = collect_vars(params, &[mu.variables()]);
    drive("casimir-rth", params.n(), strategy, &vars, |asn| {
        let p = specialized_params(params, asn)?;
        let mu = match asn {
            None => mu.clone(),
            Some(a) => Scalar::from_rational(mu.eval(a)?),
        };
        let tfam = casimir::build_rth_t_family(&p, &mu)?;
        let table = CasimirTable::from_t_family(&p, tfam.clone());
        Ok(check_clifford_conditions(&p, &table, &tfam, CheckMode::Rth))
    })
}

/// The general-form conditions together with both simplified layers and the
/// tuple-level condition family, all on the same table. In `Rth` mode the
/// table is the closed-form h-separable one and the h-layer conditions are
/// included; in `Rt` mode they are omitted (a plain rt table need not
/// satisfy them).
pub fn suite_general(
    params: &Params,
    eta: &EtaAssignment,
    mu: &Scalar,
    mode: CheckMode,
    strategy: &Strategy,
) -> Result<VerificationReport, CasimirError> {
    let vars = collect_vars(params, &[eta.variables(), mu.variables()]);
    let include_h = mode == CheckMode::Rth;
    drive("general", params.n(), strategy, &vars, |asn| {
        let p = specialized_params(params, asn)?;
        let (eta, mu) = match asn {
            None => (eta.clone(), mu.clone()),
            Some(a) => (eta.specialize(a)?, Scalar::from_rational(mu.eval(a)?)),
        };
        let tfam = match mode {
            CheckMode::Rt => casimir::build_t_family(&p, &eta, &mu),
            CheckMode::Rth => casimir::build_rth_t_family(&p, &mu)?,
        };
        let table = CasimirTable::from_t_family(&p, tfam.clone());
        let mut conditions = check_casimir_general(&table, include_h);
        conditions.extend(check_casimir_rt(&table, include_h));
        conditions.extend(check_casimir_reduced(&table, include_h));
        let tuple = ComoduleTuple::canonical(&p);
        conditions.extend(check_en_conditions(&p, &tuple, &tfam, include_h));
        Ok(conditions)
    })
}

/// The suite names accepted by the front end.
pub const SUITE_NAMES: [&str; 7] = [
    "lemmas",
    "hopf",
    "comodule",
    "cowreath",
    "casimir-rt",
    "casimir-rth",
    "general",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_sweep_is_clean() {
        let report = suite_lemmas(6);
        assert!(report.passed);
        assert_eq!(report.conditions.len(), 8);
    }

    #[test]
    fn hopf_suite_small() {
        let report = suite_hopf(2);
        assert!(report.passed, "{:?}", report.conditions);
    }

    #[test]
    fn comodule_suite_small() {
        let params = CliffordParams::symbolic(2);
        let report = suite_comodule(&params, &Strategy::Symbolic).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn casimir_rt_zero_family() {
        let params = CliffordParams::zero_family(2);
        let eta = EtaAssignment::random(2, 7);
        let report =
            suite_casimir_rt(&params, &eta, &Scalar::one(), &Strategy::Symbolic).unwrap();
        assert!(report.passed, "{:?}", report.conditions);
    }

    #[test]
    fn casimir_rt_alpha_family_symbolic_eta() {
        let params = CliffordParams::alpha_family(2);
        let eta = EtaAssignment::symbolic_even(2);
        let report = suite_casimir_rt(
            &params,
            &eta,
            &Scalar::param(ParamName::Mu),
            &Strategy::Symbolic,
        )
        .unwrap();
        assert!(report.passed, "{:?}", report.conditions);
    }

    #[test]
    fn casimir_rth_symbolic_small() {
        let params = CliffordParams::rth_family(2);
        let report =
            suite_casimir_rth(&params, &Scalar::param(ParamName::Mu), &Strategy::Symbolic)
                .unwrap();
        assert!(report.passed, "{:?}", report.conditions);
    }

    #[test]
    fn casimir_rth_random_strategy() {
        let params = CliffordParams::rth_family(2);
        let report = suite_casimir_rth(
            &params,
            &Scalar::param(ParamName::Mu),
            &Strategy::Random(vec![1, 2, 3]),
        )
        .unwrap();
        assert!(report.passed);
        for c in &report.conditions {
            assert_eq!(c.status, crate::report::Status::ProbabilisticPass);
            assert_eq!(c.seeds, vec![1, 2, 3]);
        }
    }

    #[test]
    fn perturbed_beta_fails_b5cl_with_witness() {
        // β₁ ↦ β₁ + 1 on the α-constrained family at n = 2
        let good = CliffordParams::alpha_family(2);
        let params = CliffordParams::new(
            2,
            good.alpha().clone(),
            vec![good.beta(1).add(&Scalar::one()), good.beta(2)],
            vec![good.gamma(1), good.gamma(2)],
            [((1u8, 2u8), good.lambda(1, 2))].into_iter().collect(),
        );
        let eta = EtaAssignment::symbolic_even(2);
        let report = suite_casimir_rt(
            &params,
            &eta,
            &Scalar::param(ParamName::Mu),
            &Strategy::Symbolic,
        )
        .unwrap();
        assert!(!report.passed);
        let b5 = report.condition("B5cl").unwrap();
        assert!(b5.failures > 0);
        assert!(b5.witnesses.iter().any(|w| w.instantiation.contains("Q={1}, i=1")));
    }
}
