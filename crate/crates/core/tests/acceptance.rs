//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and asserting its runtime bound.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cowreath::casimir::{
    self, build_casimir_rt, build_casimir_rth, classify, CasimirError, EtaAssignment, FamilyTag,
};
use cowreath::clifford::{self, CliffordParams, Params};
use cowreath::cowreath::{
    check_casimir_general, check_casimir_reduced, check_casimir_rt, CasimirTable,
};
use cowreath::enhopf::EnBasis;
use cowreath::linalg::{AlgebraElement, BasisIndex};
use cowreath::report::{ConditionReport, Status, Strategy};
use cowreath::scalar::{ParamName, Scalar};
use cowreath::setcombin::SubsetIndex;
use cowreath::suites;

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "criterion {criterion}: PASS ({:.2}s of {:.0}s budget)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn sub(elems: &[u8]) -> SubsetIndex {
    SubsetIndex::new(elems).unwrap()
}

fn assert_all_pass(conditions: &[ConditionReport], label: &str) {
    for c in conditions {
        assert_eq!(
            c.status,
            Status::Pass,
            "{label}: {} failed with witnesses {:?}",
            c.id,
            c.witnesses
        );
    }
}

#[test]
fn criterion_1_sweedler_case() {
    let started = Instant::now();
    let params = CliffordParams::alpha_family(1);
    let eta = EtaAssignment::symbolic_even(1);
    let mu = Scalar::param(ParamName::Mu);

    let report = suites::suite_casimir_rt(&params, &eta, &mu, &Strategy::Symbolic).unwrap();
    assert!(report.passed, "{:?}", report.conditions);

    // t_{0,{1}} = ηG + X with η = -γ/2α, 2αη + γ = 0, 2β + ηγ = 0
    let eta1 = eta.eta(&params, sub(&[1]));
    let expected_eta = params
        .gamma(1)
        .div(&params.alpha().scale_i64(2))
        .unwrap()
        .neg();
    assert_eq!(eta1, expected_eta);
    let t01 = casimir::build_t0(&params, sub(&[1]), &eta);
    let expected = clifford::g_elem(&params)
        .scale(&eta1)
        .add(&clifford::x_elem(&params, 1));
    assert_eq!(t01, expected);
    assert!(params
        .alpha()
        .scale_i64(2)
        .mul(&eta1)
        .add(&params.gamma(1))
        .is_zero());
    assert!(params
        .beta(1)
        .scale_i64(2)
        .add(&eta1.mul(&params.gamma(1)))
        .is_zero());

    finish("1 (Sweedler case, n=1)", started, Duration::from_secs(5));
}

#[test]
fn criterion_2_rt_separability_families() {
    let started = Instant::now();
    for n in 1..=3usize {
        let zero = CliffordParams::zero_family(n);
        let eta = EtaAssignment::random(n, 41 + n as u64);
        let report =
            suites::suite_casimir_rt(&zero, &eta, &Scalar::one(), &Strategy::Symbolic).unwrap();
        assert!(report.passed, "zero family failed at n={n}");

        let alpha = CliffordParams::alpha_family(n);
        let eta = EtaAssignment::symbolic_even(n);
        let mu = Scalar::param(ParamName::Mu);
        let report = suites::suite_casimir_rt(&alpha, &eta, &mu, &Strategy::Symbolic).unwrap();
        assert!(report.passed, "alpha family failed at n={n}");
    }
    finish("2 (rt separability, n ≤ 3 symbolic)", started, Duration::from_secs(180));
}

#[test]
fn criterion_3_rth_separability_families() {
    let started = Instant::now();
    let mu = Scalar::param(ParamName::Mu);
    for n in 1..=3usize {
        let params = CliffordParams::rth_family(n);
        let report = suites::suite_casimir_rth(&params, &mu, &Strategy::Symbolic).unwrap();
        assert!(report.passed, "rth suite failed symbolically at n={n}");
        assert_all_pass(&report.conditions, "rth symbolic");
    }
    for n in 4..=5usize {
        let params = CliffordParams::rth_family(n);
        let strategy = Strategy::Random(vec![11, 22, 33]);
        let report = suites::suite_casimir_rth(&params, &mu, &strategy).unwrap();
        assert!(report.passed, "rth failed probabilistically at n={n}");
        for c in &report.conditions {
            assert_eq!(c.status, Status::ProbabilisticPass, "{} at n={n}", c.id);
            assert_eq!(c.seeds, vec![11, 22, 33]);
        }
    }
    finish("3 (rth separability, n ≤ 5)", started, Duration::from_secs(600));
}

#[test]
fn criterion_4_negative_controls() {
    let started = Instant::now();

    // (a) β₁ ↦ β₁ + 1 at n = 2 fails B5cl with a recorded witness
    let good = CliffordParams::alpha_family(2);
    let perturbed = CliffordParams::new(
        2,
        good.alpha().clone(),
        vec![good.beta(1).add(&Scalar::one()), good.beta(2)],
        vec![good.gamma(1), good.gamma(2)],
        [((1u8, 2u8), good.lambda(1, 2))].into_iter().collect(),
    );
    let eta = EtaAssignment::symbolic_even(2);
    let mu = Scalar::param(ParamName::Mu);
    let report = suites::suite_casimir_rt(&perturbed, &eta, &mu, &Strategy::Symbolic).unwrap();
    assert!(!report.passed);
    let b5 = report.condition("B5cl").unwrap();
    assert_eq!(b5.status, Status::Fail);
    assert!(!b5.witnesses.is_empty(), "B5cl must record a witness");
    assert!(b5
        .witnesses
        .iter()
        .any(|w| w.instantiation.contains("Q={1}, i=1")));

    // (b) α = 0, γ₁ = 1 is classified NotRT
    let degenerate = CliffordParams::new(
        1,
        Scalar::zero(),
        vec![Scalar::zero()],
        vec![Scalar::one()],
        BTreeMap::new(),
    );
    assert_eq!(classify(&degenerate), FamilyTag::NotRT);
    assert!(matches!(
        build_casimir_rt(&degenerate, &EtaAssignment::free(), &Scalar::one()),
        Err(CasimirError::NotRightTrivial)
    ));

    // (c) zero family + rth is rejected
    assert!(matches!(
        build_casimir_rth(&CliffordParams::zero_family(2), &mu),
        Err(CasimirError::ZeroFamilyNotHSeparable)
    ));

    finish("4 (negative controls)", started, Duration::from_secs(60));
}

/// Builds the layered-consistency corpus at n = 1: valid tables of all three
/// constructions plus systematic single-entry perturbations of each.
fn corpus_n1() -> Vec<(String, Params, CasimirTable)> {
    let mut corpus: Vec<(String, Params, CasimirTable)> = Vec::new();

    let zero = CliffordParams::zero_family(1);
    let alpha = CliffordParams::alpha_family(1);
    let rth = CliffordParams::rth_family(1);
    let mu = Scalar::param(ParamName::Mu);

    let valid: Vec<(String, Params, CasimirTable)> = vec![
        (
            "zero/η random".into(),
            zero.clone(),
            build_casimir_rt(&zero, &EtaAssignment::random(1, 5), &Scalar::one()).unwrap(),
        ),
        (
            "alpha/η symbolic".into(),
            alpha.clone(),
            build_casimir_rt(&alpha, &EtaAssignment::symbolic_even(1), &mu).unwrap(),
        ),
        (
            "rth/μ symbolic".into(),
            rth.clone(),
            build_casimir_rth(&rth, &mu).unwrap(),
        ),
        (
            "zero/η zero".into(),
            zero.clone(),
            build_casimir_rt(&zero, &EtaAssignment::free(), &Scalar::one()).unwrap(),
        ),
    ];

    let x1 = BasisIndex::Cl(SubsetIndex::singleton(1));
    for (name, params, table) in &valid {
        let entries = table.materialize();
        corpus.push((
            name.clone(),
            params.clone(),
            CasimirTable::from_entries(params, entries.clone(), true),
        ));
        // one perturbation family per valid table keeps the corpus ≥ 20
        let g_h = EnBasis::new(1, SubsetIndex::EMPTY);
        let x_h = EnBasis::new(0, SubsetIndex::singleton(1));
        let gx_h = EnBasis::new(1, SubsetIndex::singleton(1));
        let one_h = EnBasis::unit();
        let perturb = |key: (EnBasis, EnBasis),
                       f: &dyn Fn(&AlgebraElement) -> AlgebraElement|
         -> CasimirTable {
            let mut m = entries.clone();
            let v = m[&key].clone();
            m.insert(key, f(&v));
            CasimirTable::from_entries(params, m, true)
        };
        let reg = cowreath::cowreath::ah_registry(params);
        corpus.push((
            format!("{name} + scaled (g,g)"),
            params.clone(),
            perturb((g_h, g_h), &|v| v.scale_i64(2)),
        ));
        corpus.push((
            format!("{name} + negated (1,x)"),
            params.clone(),
            perturb((one_h, x_h), &|v| v.neg()),
        ));
        corpus.push((
            format!("{name} + shifted (1,gx)"),
            params.clone(),
            perturb((one_h, gx_h), &|v| {
                v.add(&AlgebraElement::from_term(
                    reg.clone(),
                    BasisIndex::Tuple(vec![x1.clone(), BasisIndex::En(one_h)]),
                    Scalar::one(),
                ))
            }),
        ));
        corpus.push((
            format!("{name} + zeroed (g,x)"),
            params.clone(),
            perturb((g_h, x_h), &|v| v.sub(v)),
        ));
    }

    // ε-shaped and zero tables over the alpha family
    let hs: Vec<EnBasis> = cowreath::enhopf::registry(1)
        .basis()
        .iter()
        .map(|b| b.as_en())
        .collect();
    let ah_one = AlgebraElement::one(cowreath::cowreath::ah_registry(&alpha));
    let mut eps_entries = BTreeMap::new();
    let mut zero_entries = BTreeMap::new();
    for &h in &hs {
        for &hp in &hs {
            let eps = if h.p().is_empty() && hp.p().is_empty() {
                ah_one.clone()
            } else {
                ah_one.sub(&ah_one)
            };
            eps_entries.insert((h, hp), eps);
            zero_entries.insert((h, hp), ah_one.sub(&ah_one));
        }
    }
    corpus.push((
        "ε-table".into(),
        alpha.clone(),
        CasimirTable::from_entries(&alpha, eps_entries, true),
    ));
    corpus.push((
        "zero table".into(),
        alpha.clone(),
        CasimirTable::from_entries(&alpha, zero_entries, true),
    ));

    corpus
}

fn all_pass(cs: &[ConditionReport], ids: &[&str]) -> bool {
    ids.iter().all(|id| {
        cs.iter()
            .find(|c| c.id == *id)
            .map(|c| c.status == Status::Pass)
            .unwrap_or(false)
    })
}

#[test]
fn criterion_5_layer_consistency() {
    let started = Instant::now();
    let corpus = corpus_n1();
    assert!(corpus.len() >= 20, "corpus has {} tables", corpus.len());

    let mut rt_passes = 0usize;
    for (name, _params, table) in &corpus {
        let simplified = check_casimir_rt(table, true);
        let reduced = check_casimir_reduced(table, true);

        // Conjunction-level agreement, with and without the h-condition.
        let s_rt = all_pass(&simplified, &["B1S", "B2S", "B3S"]);
        let r_rt = all_pass(&reduced, &["B1S1", "B2S1", "B3S1"]);
        assert_eq!(s_rt, r_rt, "rt-level verdicts disagree on {name}");
        let s_h = s_rt && all_pass(&simplified, &["B4S"]);
        let r_h = r_rt && all_pass(&reduced, &["B4S1"]);
        assert_eq!(s_h, r_h, "h-level verdicts disagree on {name}");

        // Every rt-pass also passes the general-form conditions with B^H ≡ 1.
        if s_rt {
            rt_passes += 1;
            let general = check_casimir_general(table, s_h);
            let core = all_pass(&general, &["B1-4.23", "B2-4.24", "B3-4.25"]);
            assert!(core, "{name} passes rt but fails the general conditions");
            if s_h {
                assert!(
                    all_pass(&general, &["B4-4.26"]),
                    "{name} passes rth but fails the general h-condition"
                );
            }
        }
    }
    assert!(rt_passes >= 4, "expected the valid tables to pass, got {rt_passes}");
    finish("5 (layer consistency, ≥20 tables)", started, Duration::from_secs(120));
}

#[test]
fn criterion_6_combinatorics() {
    let started = Instant::now();
    let report = suites::suite_lemmas(8);
    assert!(report.passed);
    for c in &report.conditions {
        assert_eq!(c.failures, 0, "{} has failures", c.id);
    }
    // chains F′ ⊆ F ⊆ P ⊆ {1..8} are swept in full
    let sfp_v = report.condition("SFP-v").unwrap();
    assert_eq!(sfp_v.instances, 4usize.pow(8));
    // matchings cover every even S ⊆ {0..9}
    let mc = report.condition("matching-count").unwrap();
    assert_eq!(mc.instances, 512);
    finish("6 (combinatorics)", started, Duration::from_secs(60));
}

#[test]
fn criterion_7_structure_axioms() {
    let started = Instant::now();
    for n in 1..=3usize {
        let report = suites::suite_hopf(n);
        assert!(report.passed, "Hopf axioms failed at n={n}");

        let params = CliffordParams::symbolic(n);
        let reg = clifford::registry(&params);
        let basis = reg.basis();
        for a in &basis {
            for b in &basis {
                let ea = AlgebraElement::from_term(reg.clone(), a.clone(), Scalar::one());
                let eb = AlgebraElement::from_term(reg.clone(), b.clone(), Scalar::one());
                let ab = ea.mul(&eb);
                for c in &basis {
                    let ec = AlgebraElement::from_term(reg.clone(), c.clone(), Scalar::one());
                    assert_eq!(
                        ab.mul(&ec),
                        ea.mul(&eb.mul(&ec)),
                        "associativity fails at n={n}: {a}, {b}, {c}"
                    );
                }
            }
        }

        let report = suites::suite_comodule(&params, &Strategy::Symbolic).unwrap();
        assert!(report.passed, "comodule axioms failed at n={n}");
    }
    finish("7 (structure axioms, n ≤ 3)", started, Duration::from_secs(120));
}

#[test]
fn criterion_8_cowreath_axioms() {
    let started = Instant::now();
    for n in 1..=2usize {
        let params = CliffordParams::symbolic(n);
        let report = suites::suite_cowreath(&params, &Strategy::Symbolic).unwrap();
        assert!(report.passed, "cowreath axioms failed at n={n}");
        assert_eq!(report.conditions.len(), 7);
        assert_all_pass(&report.conditions, "cowreath");
    }
    finish("8 (cowreath axioms, n ≤ 2)", started, Duration::from_secs(120));
}

#[test]
fn criterion_9_derivation_calculus() {
    let started = Instant::now();
    let n = 4;
    let params = CliffordParams::symbolic(n);
    let ground = SubsetIndex::range(1, n as u8);
    let full = SubsetIndex::range(0, n as u8);

    for p in ground.subsets() {
        for r in full.subsets() {
            let e = clifford::basis_elem(&params, r);
            let closed = clifford::d_composite(p, &e);
            let mut composed = e;
            let idxs: Vec<u8> = p.elements().collect();
            for &i in idxs.iter().rev() {
                composed = clifford::d_single(i, &composed);
            }
            assert_eq!(closed, composed, "closed form vs composition at P={p}, R={r}");
        }
    }

    for p in ground.subsets() {
        if p.is_empty() {
            continue;
        }
        for r in full.subsets() {
            let a = clifford::basis_elem(&params, r);
            match clifford::antiderivative(&params, &a, p) {
                None => assert!(!r.intersection(p).is_empty()),
                Some(sol) => {
                    assert_eq!(clifford::d_composite(p, &sol.particular), a);
                    let shift = clifford::basis_elem(&params, sol.kernel_basis[0]);
                    assert_eq!(
                        clifford::d_composite(p, &sol.particular.add(&shift)),
                        a,
                        "kernel shift must preserve solutions"
                    );
                    for q in full.subsets() {
                        let in_kernel =
                            clifford::d_composite(p, &clifford::basis_elem(&params, q)).is_zero();
                        assert_eq!(in_kernel, !p.is_subset_of(q), "kernel basis at P={p} Q={q}");
                    }
                }
            }
        }
    }
    finish("9 (derivation calculus, n = 4)", started, Duration::from_secs(60));
}

/// The ε-shaped table is normalized but not a Casimir morphism; the zero
/// table is not even normalized.
#[test]
fn general_checker_negative_controls() {
    let corpus = corpus_n1();
    let (_, _, eps_table) = corpus
        .iter()
        .find(|(name, _, _)| name == "ε-table")
        .unwrap();
    let general = check_casimir_general(eps_table, false);
    assert!(all_pass(&general, &["B3-4.25"]), "ε-table must be normalized");
    let b2 = general.iter().find(|c| c.id == "B2-4.24").unwrap();
    assert_eq!(b2.status, Status::Fail, "ε-table must fail colinearity");
    assert!(!b2.witnesses.is_empty());

    let (_, _, zero_table) = corpus
        .iter()
        .find(|(name, _, _)| name == "zero table")
        .unwrap();
    let general = check_casimir_general(zero_table, false);
    let b3 = general.iter().find(|c| c.id == "B3-4.25").unwrap();
    assert_eq!(b3.status, Status::Fail, "the zero table is not normalized");
}

/// Quantifier soundness: conditions checked on bases extend to random
/// non-basis elements by multilinearity.
#[test]
fn quantifier_soundness_spot_check() {
    let params = CliffordParams::alpha_family(1);
    let eta = EtaAssignment::symbolic_even(1);
    let mu = Scalar::param(ParamName::Mu);
    let table = build_casimir_rt(&params, &eta, &mu).unwrap();
    // basis-level verdict: B1S passes (alpha family is rt-separable)
    assert!(all_pass(&check_casimir_rt(&table, false), &["B1S", "B2S", "B3S"]));

    // element-level: a = 3·G + X₁ − 2, h = g + x₁, h′ = 1 − gx₁
    let rho = clifford::Coaction::canonical(&params);
    let a = clifford::g_elem(&params)
        .scale_i64(3)
        .add(&clifford::x_elem(&params, 1))
        .sub(&clifford::one(&params).scale_i64(2));
    let h = cowreath::enhopf::g_elem(1).add(&cowreath::enhopf::x_elem(1, 1));
    let hp = cowreath::enhopf::one(1).sub(
        &cowreath::enhopf::g_elem(1).mul(&cowreath::enhopf::x_elem(1, 1)),
    );
    // a₀ B^A(h a₁ ⊗ h′ a₂) = B^A(h ⊗ h′) a with Sweedler legs expanded
    let mut lhs = AlgebraElement::zero(clifford::registry(&params));
    for (idx, c) in rho.apply_twice(&a).iter() {
        let parts = idx.as_tuple();
        let a0 = AlgebraElement::from_term(
            clifford::registry(&params),
            parts[0].clone(),
            Scalar::one(),
        );
        let u = h.mul(&AlgebraElement::from_term(
            cowreath::enhopf::registry(1),
            parts[1].clone(),
            Scalar::one(),
        ));
        let v = hp.mul(&AlgebraElement::from_term(
            cowreath::enhopf::registry(1),
            parts[2].clone(),
            Scalar::one(),
        ));
        lhs = lhs.add(&a0.mul(&table.b_a_of(&u, &v)).scale(c));
    }
    let rhs = table.b_a_of(&h, &hp).mul(&a);
    assert_eq!(lhs, rhs, "multilinearity extends the basis verdict");
}
