//! Verification battery: spin test, prime sets, single checks, bundles and
//! sweeps.

mod common;

use common::*;
use ortho8::forms::Sign;
use ortho8::generators::{build_pair, Family};
use ortho8::gf::Fe;
use ortho8::linalg::Matrix;
use ortho8::verify::registry::{parse_registry, registry};
use ortho8::verify::run::run_point;
use ortho8::verify::sweep::{run_sweep, Summary, SweepConfig};
use ortho8::verify::{all_pass, check, generation_evidence, prime_set_omega, spin_dimension, Status, VerifyError};

#[test]
fn spin_dimension_examples() {
    let k = ortho8::gf::Field::prime(3).unwrap();
    let i = Matrix::identity(&k, 8);
    assert_eq!(spin_dimension(&i, &i).dimension, 1);
    // a = omega is encoded as 2 in GF(4).
    let pr = build_pair(Family::PlusEven, 4, Some(2), None).unwrap();
    let s = spin_dimension(&pr.x, &pr.y);
    assert_eq!(s.dimension, 64);
    assert_eq!(s.basis_words.len(), 64);
    assert_eq!(s.basis_words[0], "I");
    let pr = build_pair(Family::MinusOdd, 5, Some(1), Some(2)).unwrap();
    assert_eq!(spin_dimension(&pr.x, &pr.y).dimension, 64);
}

#[test]
fn spin_witness_words_evaluate_to_a_basis() {
    let pr = build_pair(Family::PlusOdd, 7, Some(1), None).unwrap();
    let s = spin_dimension(&pr.x, &pr.y);
    let mats: Vec<Vec<Fe>> = s
        .basis_words
        .iter()
        .map(|w| {
            let m = w.split('*').filter(|t| *t != "I").fold(Matrix::identity(&pr.field, 8), |acc, g| {
                acc.mul(if g == "x" { &pr.x } else { &pr.y })
            });
            m.entries().to_vec()
        })
        .collect();
    assert_eq!(brute_rank(&Matrix::from_rows(&pr.field, mats).unwrap()), 64);
}

#[test]
fn prime_sets_from_the_order_polynomial() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let qq = q as u128;
        for sign in [Sign::Plus, Sign::Minus] {
            let last = if sign == Sign::Plus { qq.pow(4) - 1 } else { qq.pow(4) + 1 };
            let order = qq.pow(12) * (qq * qq - 1) * (qq.pow(4) - 1) * (qq.pow(6) - 1) * last;
            assert_eq!(prime_set_omega(sign, q), trial_primes(order), "{sign} q={q}");
        }
    }
}

#[test]
fn check_examples() {
    let r = check("C2.case1-orders", None, 5, Some(1), None).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.evidence[0].ends_with(": 62"), "{:?}", r.evidence);

    let r = check("pol_irr.carlitz", None, 8, None, None).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.evidence.iter().any(|e| e.ends_with(": 4")), "{:?}", r.evidence);

    // tr([x, y]) = a^2 = omega^2, which is omega + 1, encoded as 3.
    let r = check("C5.traces", None, 4, Some(2), None).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.evidence.iter().any(|e| e.ends_with(": 3")), "{:?}", r.evidence);

    // Orders are stated only for particular (q, a).
    let r = check("C2.case1-orders", None, 11, Some(1), None).unwrap();
    assert_eq!(r.status, Status::Skipped);

    assert_eq!(check("nope", None, 5, Some(1), None).unwrap_err(), VerifyError::UnknownCheck("nope".into()));
    let r = check("C5.traces", None, 5, Some(2), None).unwrap();
    assert_eq!(r.status, Status::Rejected);
    assert!(r.reason.unwrap().contains("2 and -2"));
}

#[test]
fn skips_name_the_hypothesis() {
    // irr+tau excludes a = -2; at a = -w the first N branch applies.
    let r = check("irr+tau.N", Some(Family::PlusOdd), 7, Some(1), None).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(r.reason.unwrap().contains("hypothesis a = "));
    let r = check("irr+2.detMbar", None, 4, Some(2), None).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(r.reason.unwrap().contains("a^2 + a + w"));
}

#[test]
fn generation_evidence_examples() {
    let b = generation_evidence(Family::PlusEven, 4, Some(2), None);
    assert!(all_pass(&b), "{:#?}", b.iter().filter(|r| r.status == Status::Fail).collect::<Vec<_>>());
    for id in ["pair.gate", "pair.sign", "pair.spin", "pair.spin-tau", "steinberg.words", "irr+2.detM"] {
        assert!(b.iter().any(|r| r.check_id == id && r.status == Status::Pass), "{id}");
    }
    let b = generation_evidence(Family::resolve("plus", 3).unwrap(), 3, Some(1), None);
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].status, Status::Rejected);
    let b = generation_evidence(Family::MinusOdd, 3, Some(1), Some(2));
    assert!(all_pass(&b));
    assert!(b.iter().any(|r| r.check_id == "pair.spin" && r.status == Status::Pass));
}

#[test]
fn a_wrong_expectation_fails() {
    // The engine must be able to fail: perturb a known identity.
    let src = "[neg.control]\nfamilies = plus-even\ncheck = det(x) == a\n";
    let e = &parse_registry(src).unwrap()[0];
    let pr = build_pair(Family::PlusEven, 4, Some(2), None).unwrap();
    let r = run_point(e, pr.family, &pr.field, pr.a, pr.xi).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.evidence[0].contains("computed 1 expected"), "{:?}", r.evidence);
}

#[test]
fn every_registry_row_has_a_family_and_steps() {
    for e in registry() {
        assert!(!e.families.is_empty() && !e.steps.is_empty(), "{} {}", e.id, e.tag);
    }
}

#[test]
fn pseudorandom_instances_beyond_the_bounds() {
    let cfg = SweepConfig { beyond: 10, seed: Some(17), symbolic: false, ..Default::default() };
    let r = run_sweep(&cfg).unwrap();
    let far: Vec<_> = r.iter().filter(|r| r.params.mode == "point" && (r.params.q > 64 || (r.params.q % 2 == 1 && r.params.q > 49))).collect();
    let instances: std::collections::BTreeSet<_> = far.iter().map(|r| (r.params.family.clone(), r.params.q, r.params.a)).collect();
    assert_eq!(instances.len(), 10, "{instances:?}");
    let s = Summary::of(&r);
    assert_eq!(s.fail, 0);
    assert_eq!(s.rejected, 0);
}

#[test]
fn sweep_filter_and_sampling() {
    let cfg = SweepConfig {
        q_even_max: 16,
        q_odd_max: 11,
        checks: "C5*".into(),
        a_policy: ortho8::verify::sweep::APolicy::Sample { n: 2, seed: 3 },
        ..Default::default()
    };
    let r = run_sweep(&cfg).unwrap();
    assert!(!r.is_empty());
    assert!(r.iter().all(|r| r.check_id.starts_with("C5")));
    assert!(r.iter().all(|r| r.status == Status::Pass));
    let per_field = r.iter().filter(|r| r.check_id == "C5.traces" && r.params.q == 16 && r.params.mode == "point").count();
    assert_eq!(per_field, 2);
    assert!(SweepConfig { beyond: 1, seed: None, ..Default::default() }.validate().is_err());
    assert!(SweepConfig { q_even_max: 1 << 21, ..Default::default() }.validate().is_err());
}
