use super::*;
use proptest::prelude::*;

fn run(g: &Graph, req: CertificateRequest) -> CertificateReport {
    certify(g, &req).unwrap()
}

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

#[test]
fn fractional_condition_on_k5() {
    let r = run(&Graph::complete(5), CertificateRequest::new(TheoremId::Thm11, 1).with_d(2));
    assert_eq!(r.outcome, Outcome::Certified);
    assert_eq!(r.measured, Some(Scalar::Exact(Rational::new(5, 2))));
    assert_eq!(threshold_rational(&r), Some(Rational::new(3, 2)));
    assert_eq!(r.cross_check.unwrap().status, "FOUND");
    assert_eq!(r.conclusion.as_deref(), Some("P(1,2) holds"));
}

#[test]
fn fractional_boundary_is_exact() {
    // ν_f(C4) = 4/3 = 1 + (3-1)/3 exactly: not strictly greater
    let r = run(&Graph::cycle(4), CertificateRequest::new(TheoremId::Thm11, 1).with_d(3));
    assert_eq!(r.outcome, Outcome::ConditionFails);
}

#[test]
fn degree_hypothesis_fails_on_c4() {
    let r = run(&Graph::cycle(4), CertificateRequest::new(TheoremId::Thm12, 2));
    assert_eq!(r.outcome, Outcome::HypothesisFailed);
    assert!(!r.hypothesis_checks.min_degree);
    assert!(r.hypothesis_checks.parameter_constraints);
}

#[test]
fn laplacian_condition_on_k7() {
    let r = run(&Graph::complete(7), CertificateRequest::new(TheoremId::Thm12, 2));
    assert_eq!(r.outcome, Outcome::Certified);
    assert_eq!(threshold_rational(&r), Some(Rational::new(136, 63)));
    assert!((r.measured.unwrap().value() - 7.0).abs() < 1e-9);
    assert_eq!(r.hypothesis_checks.class_membership, Some(true));
    assert_eq!(r.cross_check.unwrap().status, "FOUND");
}

#[test]
fn fourth_laplacian_condition_on_k10() {
    let r = run(&Graph::complete(10), CertificateRequest::new(TheoremId::Thm13, 2));
    assert_eq!(r.outcome, Outcome::Certified);
    assert_eq!(threshold_rational(&r), Some(Rational::new(13, 5)));
    assert!((r.measured.unwrap().value() - 10.0).abs() < 1e-9);
    assert_eq!(r.cross_check.unwrap().status, "FOUND");
}

#[test]
fn signless_condition_on_k7() {
    let r = run(&Graph::complete(7), CertificateRequest::new(TheoremId::Cor53i, 2));
    assert_eq!(r.outcome, Outcome::Certified);
    assert_eq!(threshold_rational(&r), Some(Rational::from_integer(12) - Rational::new(17, 21)));
    assert!((r.measured.unwrap().value() - 5.0).abs() < 1e-9);
}

#[test]
fn parameter_errors() {
    let g = Graph::complete(6);
    let bad = |req: CertificateRequest| matches!(certify(&g, &req), Err(CertifyError::Parameter(_)));
    assert!(bad(CertificateRequest::new(TheoremId::Thm12, 0)));
    assert!(bad(CertificateRequest::new(TheoremId::Cor31i, 2)));
    assert!(bad(CertificateRequest::new(TheoremId::Cor31ii, 2).with_a(q("1"))));
    assert!(bad(CertificateRequest::new(TheoremId::Cor31ii, 2).with_ab(q("1"), q("-1"))));
    assert!(bad(CertificateRequest::new(TheoremId::Cor31iii, 2).with_ab(q("1"), q("0"))));
    assert!(bad(CertificateRequest::new(TheoremId::Cor52i, 1).with_a(Scalar::Float(f64::NAN))));
    assert!(bad(CertificateRequest::new(TheoremId::Thm11, 1).with_d(0)));
    let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
    assert!(matches!(
        certify(&split, &CertificateRequest::new(TheoremId::Thm11, 1)),
        Err(CertifyError::Precondition(_))
    ));
}

#[test]
fn theorem_parameter_ranges_are_enforced() {
    let g = Graph::complete(8);
    let err = |req: CertificateRequest| match certify(&g, &req) {
        Err(CertifyError::Parameter(msg)) => msg,
        other => panic!("expected a parameter error, got {other:?}"),
    };
    assert!(err(CertificateRequest::new(TheoremId::Thm12, 1)).contains("k >= 2"));
    assert!(err(CertificateRequest::new(TheoremId::Cor31i, 2).with_a(q("-2"))).contains("a >= -1"));
    assert!(err(CertificateRequest::new(TheoremId::Cor31iii, 2).with_ab(q("2"), q("-1"))).contains("a/b >= -1"));
    assert!(err(CertificateRequest::new(TheoremId::Cor52ii, 1).with_ab(q("-1/2"), q("1"))).contains("a >= 0"));
    let ok = run(&g, CertificateRequest::new(TheoremId::Cor31iii, 2).with_ab(q("1"), q("-1")));
    assert!(ok.hypothesis_checks.parameter_constraints);
}

#[test]
fn theorem_ids_round_trip() {
    for id in TheoremId::ALL {
        assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
    }
    assert!("thm9.9".parse::<TheoremId>().is_err());
}

#[test]
fn report_json_has_stable_keys() {
    let r = run(&Graph::complete(7), CertificateRequest::new(TheoremId::Thm12, 2));
    let v = serde_json::to_value(&r).unwrap();
    for key in [
        "theorem_id",
        "k",
        "d",
        "a",
        "b",
        "hypothesis_checks",
        "measured",
        "threshold_num",
        "threshold_den",
        "threshold_decimal",
        "outcome",
        "conclusion",
        "cross_check",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["outcome"], "CERTIFIED");
    assert_eq!(v["threshold_num"], 136);
    assert_eq!(v["cross_check"]["consistent"], true);
}

#[test]
fn decision_band() {
    let t = Scalar::Exact(Rational::new(1, 3));
    assert_eq!(decide(Scalar::Float(1.0 / 3.0), t, Relation::Less, 1e-8), Outcome::Marginal);
    assert_eq!(decide(Scalar::Float(0.3), t, Relation::Less, 1e-8), Outcome::Certified);
    assert_eq!(decide(Scalar::Float(0.3), t, Relation::Greater, 1e-8), Outcome::ConditionFails);
    assert_eq!(decide(Scalar::Exact(Rational::new(1, 3)), t, Relation::Greater, 1e-8), Outcome::ConditionFails);
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (5..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.75), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] && v != u + 1 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn away_from_band(r: &CertificateReport, tol: f64) -> bool {
    r.measured.is_some_and(|m| (m.value() - r.threshold_decimal).abs() > tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn specializations_agree(g in arb_connected(9), k in 2usize..4) {
        let c = Certifier::new(&g);
        let off = |id| CertificateRequest::new(id, k).with_cross_verify(false);
        let pairs = [
            (off(TheoremId::Cor32i), off(TheoremId::Cor31i).with_a(q("0"))),
            (off(TheoremId::Cor32ii), off(TheoremId::Cor31i).with_a(q("1"))),
            (off(TheoremId::Cor43i), off(TheoremId::Cor42i).with_a(q("0"))),
            (off(TheoremId::Cor43ii), off(TheoremId::Cor42i).with_a(q("1"))),
            (off(TheoremId::Cor53i), off(TheoremId::Cor52i).with_a(q("1"))),
        ];
        for (x, y) in pairs {
            let (rx, ry) = (c.certify(&x).unwrap(), c.certify(&y).unwrap());
            prop_assert_eq!(rx.outcome, ry.outcome);
            prop_assert_eq!(threshold_rational(&rx), threshold_rational(&ry));
        }
    }

    #[test]
    fn scaled_variants_agree(g in arb_connected(9), k in 2usize..4, a in -1i64..=1, b in 1i64..4) {
        let c = Certifier::new(&g);
        let (a, b) = (Rational::from_integer(a), Rational::from_integer(b));
        for (i_id, ii_id, iii_id) in [
            (TheoremId::Cor31i, TheoremId::Cor31ii, TheoremId::Cor31iii),
            (TheoremId::Cor42i, TheoremId::Cor42ii, TheoremId::Cor42iii),
        ] {
            let base = c.certify(&CertificateRequest::new(i_id, k).with_a((a / b).into()).with_cross_verify(false)).unwrap();
            let pos = c.certify(&CertificateRequest::new(ii_id, k).with_ab(a.into(), b.into()).with_cross_verify(false)).unwrap();
            let neg = c.certify(&CertificateRequest::new(iii_id, k).with_ab((-a).into(), (-b).into()).with_cross_verify(false)).unwrap();
            let tol = DEFAULT_DECISION_TOL * 4.0 * (1.0 + b.to_integer() as f64);
            if away_from_band(&base, tol) && away_from_band(&pos, tol) && away_from_band(&neg, tol) {
                prop_assert_eq!(base.outcome, pos.outcome);
                prop_assert_eq!(base.outcome, neg.outcome);
            }
        }
    }

    #[test]
    fn raising_k_never_helps(g in arb_connected(9), k in 1usize..3) {
        let c = Certifier::new(&g);
        for id in TheoremId::ALL {
            let req = |k| {
                let r = CertificateRequest::new(id, k).with_cross_verify(false);
                match id.b_sign() {
                    Some(s) => r.with_ab(q("1"), Scalar::from_integer(s as i64)),
                    None if id.uses_a() => r.with_a(q("1")),
                    None => r.with_d(2),
                }
            };
            let Ok(lo) = c.certify(&req(k)) else { continue };
            let hi = c.certify(&req(k + 1)).unwrap();
            if lo.outcome == Outcome::HypothesisFailed {
                prop_assert_ne!(hi.outcome, Outcome::Certified);
            }
        }
    }

    #[test]
    fn certified_is_never_refuted(g in arb_connected(8), k in 1usize..3) {
        let c = Certifier::new(&g);
        for id in TheoremId::ALL {
            let req = CertificateRequest::new(id, k).with_cross_verify(true);
            let req = match id.b_sign() {
                Some(s) => req.with_ab(q("1/2"), Scalar::from_integer(s as i64)),
                None if id.uses_a() => req.with_a(q("1/2")),
                None => req,
            };
            let Ok(r) = c.certify(&req) else { continue };
            prop_assert!(!r.is_counterexample(), "{} on {:?}", id, g.edges());
        }
    }
}
