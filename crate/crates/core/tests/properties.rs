use cornerjet::cli::parse::{parse_halfline, parse_quadrant};
use cornerjet::cli::print::{format_halfline, format_quadrant};
use cornerjet::numeric::{numeric_pullback_probe, ProbeReport};
use cornerjet::*;
use proptest::prelude::*;

const N: usize = 10;

fn rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |r| *r != q(0))
}

fn jet1(order: usize) -> impl Strategy<Value = Jet1Q> {
    prop::collection::vec(rat(), order + 1).prop_map(move |c| Jet1Q::new(order, c))
}

fn unit(order: usize) -> impl Strategy<Value = Jet1Q> {
    (1i64..=9, 1i64..=5, prop::collection::vec(rat(), 0..=3)).prop_map(move |(n, d, mut rest)| {
        rest.insert(0, ratio(n, d));
        Jet1Q::new(order, rest)
    })
}

fn laurent(lo: i64, order: i64) -> impl Strategy<Value = LaurentJetQ> {
    prop::collection::vec((lo..=order, rat()), 0..8).prop_map(move |t| LaurentJetQ::from_terms(t, order))
}

fn jet2(order: usize) -> impl Strategy<Value = Jet2Q> {
    prop::collection::vec(((0..=order, 0..=order), rat()), 0..10)
        .prop_map(move |t| Jet2Q::from_terms(order, t.into_iter().filter(|((a, b), _)| a + b <= order)))
}

fn laurent2(lo: i64, order: i64) -> impl Strategy<Value = LaurentJet2Q> {
    prop::collection::vec(((lo..=order, lo..=order), rat()), 0..10)
        .prop_map(move |t| LaurentJet2Q::from_terms(order, t.into_iter().filter(|((a, b), _)| a + b <= order)))
}

fn halfline(k: i64, c: LaurentJetQ) -> HalfLineTensorQ {
    make_halfline_tensor(k, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet1_ring_laws(a in jet1(N), b in jet1(N), c in jet1(N)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in jet1(N), b in jet1(N)) {
        let lhs = differentiate(&(&a * &b)).unwrap();
        let rhs = &(&differentiate(&a).unwrap() * &b) + &(&a * &differentiate(&b).unwrap());
        prop_assert_eq!(lhs, rhs.truncate(N - 1));
    }

    #[test]
    fn divide_round_trip(num in laurent(-3, 8), den in laurent(-3, 8)) {
        prop_assume!(den.known_valuation().is_some());
        let q = laurent_divide(&num, &den).unwrap();
        let back = &q * &den;
        let order = back.order();
        prop_assert_eq!(back, num.truncate(order));
    }

    #[test]
    fn valuation_is_additive(a in laurent(-3, 8), b in laurent(-3, 8)) {
        let p = &a * &b;
        if let (Some(va), Some(vb)) = (a.known_valuation(), b.known_valuation()) {
            if va + vb <= p.order() {
                prop_assert_eq!(p.known_valuation(), Some(va + vb));
            }
        }
    }

    #[test]
    fn descend_inverts_square_substitution(f in jet1(N)) {
        let g = compose(&f, &Jet1Q::monomial(q(1), 2, 2 * N + 1)).unwrap();
        prop_assert_eq!(g.order(), 2 * N + 1);
        let h = whitney_descend(&g).unwrap();
        prop_assert_eq!(h, f);
    }

    #[test]
    fn parity_parts_sum_to_input(j in jet2(N), l in laurent2(-3, 8)) {
        let p = parity_decompose2(&j);
        prop_assert_eq!(&(&p.even_even + &p.even_odd) + &(&p.odd_even + &p.odd_odd), j);
        let p = l.parity_decompose();
        prop_assert_eq!(&(&p.even_even + &p.even_odd) + &(&p.odd_even + &p.odd_odd), l);
    }

    #[test]
    fn realized_boundary_plot(m in 1u32..=4, u in unit(6)) {
        let p = make_boundary_plot(m as i64, u.clone()).unwrap();
        let j = realize_jet(&p, 16).unwrap();
        prop_assert_eq!(j.known_valuation(), Some(2 * m as i64));
        prop_assert_eq!(j.leading_coeff(), Some(u.constant_term()));
        for d in 0..=16i64 {
            let want = if d >= 2 * m as i64 { u.coeff((d - 2 * m as i64) as usize).cloned().unwrap_or(q(0)) } else { q(0) };
            prop_assert_eq!(j.coeff(d), Some(want));
        }
    }

    #[test]
    fn status_independent_of_unit(k in 0i64..=4, p in 0i64..=3, m in 1u32..=3, u in unit(4)) {
        let tau = halfline(k, LaurentJetQ::monomial(q(1), -p, 16));
        let bare = pullback_halfline(&tau, &PlotGermQ::power(m), 16).unwrap();
        let with_unit = pullback_halfline(&tau, &make_boundary_plot(m as i64, u).unwrap(), 16).unwrap();
        prop_assert_eq!(bare.status, with_unit.status);
    }

    #[test]
    fn square_pullback_parity(a in laurent2(0, 8), b in laurent2(0, 8), c in laurent2(0, 8)) {
        let tau = make_quadrant_tensor(a, b, c).unwrap();
        let report = check_gamma_parity(&tau);
        prop_assert!(report.holds());
    }

    #[test]
    fn halfline_decomposition_round_trip(c in rat(), r in jet1(N)) {
        let input = &LaurentJetQ::monomial(c.clone(), -1, N as i64) + &LaurentJetQ::from_jet1(&r);
        let d = decompose_halfline(&halfline(2, input.clone())).unwrap();
        prop_assert_eq!(&d.c, &c);
        prop_assert_eq!(&d.regular, &r);
        prop_assert_eq!(d.reconstruct(), input);
    }

    #[test]
    fn halfline_decomposition_is_unique(c1 in rat(), r1 in jet1(6), c2 in rat(), r2 in jet1(6)) {
        let build = |c: &Rational, r: &Jet1Q| &LaurentJetQ::monomial(c.clone(), -1, 6) + &LaurentJetQ::from_jet1(r);
        let (t1, t2) = (build(&c1, &r1), build(&c2, &r2));
        let (d1, d2) = (
            decompose_halfline(&halfline(2, t1.clone())).unwrap(),
            decompose_halfline(&halfline(2, t2.clone())).unwrap(),
        );
        prop_assert_eq!(t1 == t2, (d1.c, d1.regular) == (d2.c, d2.regular));
    }

    #[test]
    fn quadrant_decomposition_round_trip(
        a_s in jet1(7), b_s in jet1(7), r11 in jet2(6), r22 in jet2(6), r12 in jet2(6)
    ) {
        let a = &LaurentJet2Q::from_y_series(&a_s, -1) + &LaurentJet2Q::from_jet2(&r11);
        let b = &LaurentJet2Q::from_y_series(&b_s, -1).transpose() + &LaurentJet2Q::from_jet2(&r22);
        let tau = make_quadrant_tensor(a, b, LaurentJet2Q::from_jet2(&r12)).unwrap();
        let d = decompose_quadrant(&tau).unwrap();
        let (ra, rb, rc) = d.reconstruct();
        prop_assert_eq!(ra.truncate(6), tau.a().clone());
        prop_assert_eq!(rb.truncate(6), tau.b().clone());
        prop_assert_eq!(rc.truncate(6), tau.c().clone());
    }

    #[test]
    fn singular_part_never_a_metric(c in nonzero_rat(), r in laurent(0, 12)) {
        let g = halfline(2, &LaurentJetQ::monomial(c, -1, 12) + &r);
        let fam = TestPlotFamily { order: 12, ..TestPlotFamily::default() };
        let v = check_metric(&g, &fam).unwrap();
        prop_assert!(!v.accepted);
        prop_assert!(v.witness.unwrap().plot.is_boundary());
    }

    #[test]
    fn metric_verdict_scale_invariant(r in laurent(0, 10), n in 1i64..=20, d in 1i64..=20) {
        let g = halfline(2, r);
        let fam = TestPlotFamily { order: 10, ..TestPlotFamily::default() };
        let v1 = check_metric(&g, &fam).unwrap();
        let v2 = check_metric(&g.scale(&ratio(n, d)), &fam).unwrap();
        prop_assert_eq!(v1.accepted, v2.accepted);
        prop_assert_eq!(v1.witness.map(|w| (w.plot, w.clause)), v2.witness.map(|w| (w.plot, w.clause)));
    }

    #[test]
    fn capacity_monotone(k in 0i64..=7, p in 1i64..=5) {
        let here = verify_capacity(k, p, 6).unwrap().admissible;
        if here {
            prop_assert!(verify_capacity(k, p - 1, 6).unwrap().admissible);
            prop_assert!(verify_capacity(k + 1, p, 6).unwrap().admissible);
        }
        prop_assert_eq!(here, p <= capacity(k).unwrap() as i64);
    }

    #[test]
    fn halfline_print_parse_round_trip(k in 0i64..=3, c in laurent(-4, 12)) {
        let tau = halfline(k, c);
        prop_assert_eq!(parse_halfline(&format_halfline(&tau), 12).unwrap(), tau);
    }

    #[test]
    fn quadrant_print_parse_round_trip(a in laurent2(-4, 8), b in laurent2(-4, 8), c in laurent2(-4, 8)) {
        let tau = make_quadrant_tensor(a, b, c).unwrap();
        prop_assert_eq!(parse_quadrant(&format_quadrant(&tau), 8).unwrap(), tau);
    }
}

fn sos() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-10i64..=10).prop_map(q), 1..=4), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn glaeser_landau_holds_for_sums_of_squares(
        ps in sos(), a in -30i64..=30, len in 1i64..=40, grid in 512usize..=1024
    ) {
        let f = SampledFunction::new(Representation::SumOfSquares(ps), ratio(a, 10), ratio(a + len, 10), grid).unwrap();
        let rep = glaeser_landau_check(&f, 1e-9).unwrap();
        prop_assert!(rep.pass, "violation {:e}", rep.max_violation);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn numeric_probe_agrees_with_exact(k in 0i64..=4, p in 0i64..=3, m in 1u32..=2, a in -4i64..=4) {
        let tau = halfline(k, LaurentJetQ::monomial(q(1), -p, 16));
        let unit = vec![q(1), ratio(a, 4)];
        let plot = make_boundary_plot(m as i64, Jet1Q::from_poly(unit.clone())).unwrap();
        let exact = pullback_halfline(&tau, &plot, 16).unwrap();
        let mut poly = vec![q(0); 2 * m as usize];
        poly.extend(unit);
        let f = SampledFunction::new(Representation::Polynomial(poly), q(0), ratio(1, 2), 64).unwrap();
        let probe: ProbeReport<f64> = numeric_pullback_probe(&tau, &f, 1e-9).unwrap();
        prop_assert_eq!(probe.bounded, exact.is_smooth(), "sups {:?}", probe.sups);
    }
}
