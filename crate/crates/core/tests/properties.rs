use proptest::prelude::*;
use quasi_core::condition::{
    enumerate_family, make_c1, make_c2, make_c3, make_cx, Family, Operand, RelaxationSpec, TermSpec,
};
use quasi_core::exec::exponent_grid;
use quasi_core::lab::{claim1_certificates, claim2_certificates, verify_claim1, verify_claim2};
use quasi_core::metric::{pow2_dist_sq, triangle_holds_sq, zeta_dist_sq, AffineMap, Point, Space};
use quasi_core::ring::{leq_q_scaled, zeta_pow, Rational, RingElem};
use quasi_core::solver::{
    apriori_bound_check, estimate_q, pair_ratio, picard_iterate, IterationConfig, SupRatio, Verdict,
};
use quasi_core::{Error, Exec};

fn grid(space: &Space, max_exp: u64) -> Vec<(Point, Point)> {
    exponent_grid(max_exp).into_iter().map(|(m, n)| (space.point(m), space.point(n))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn norm_is_multiplicative(a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000,
                              c in -1_000_000i64..=1_000_000, d in -1_000_000i64..=1_000_000) {
        let (x, y) = (RingElem::new(a, b), RingElem::new(c, d));
        prop_assert_eq!((&x * &y).sqnorm(), x.sqnorm() * y.sqnorm());
    }
}

proptest! {
    #[test]
    fn ring_laws(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000,
                 d in -1000i64..1000, e in -1000i64..1000, f in -1000i64..1000) {
        let (x, y, z) = (RingElem::new(a, b), RingElem::new(c, d), RingElem::new(e, f));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x);
    }

    #[test]
    fn zeta_pow_matches_repeated_product(n in 0u64..200) {
        let slow = (0..n).fold(RingElem::one(), |acc, _| &acc * &RingElem::zeta());
        prop_assert_eq!(zeta_pow(n), slow);
    }

    /// Away from equality a double-precision comparison must agree.
    #[test]
    fn leq_q_scaled_agrees_with_floats(lhs in 0u64..1_000_000, rhs in 0u64..1_000_000,
                                       num in 1i64..1000, extra in 1i64..1000) {
        let q = Rational::frac(num, num + extra);
        let qf = num as f64 / (num + extra) as f64;
        let gap = lhs as f64 - qf * rhs as f64;
        prop_assume!(gap.abs() > 1e-6 * (1.0 + lhs as f64));
        prop_assert_eq!(leq_q_scaled(&lhs.into(), &q, &rhs.into()), gap <= 0.0);
    }

    #[test]
    fn metric_symmetry_and_identity(m in 0u64..=32, n in 0u64..=32) {
        for space in [Space::Pow2, Space::Zeta] {
            let d = space.dist_sq(&space.point(m), &space.point(n)).unwrap();
            prop_assert_eq!(&d, &space.dist_sq(&space.point(n), &space.point(m)).unwrap());
            prop_assert_eq!(d.is_zero(), m == n);
        }
    }

    #[test]
    fn distances_scale_by_four(m in 0u64..=40, n in 0u64..=40) {
        prop_assert_eq!(pow2_dist_sq(m + 1, n + 1), pow2_dist_sq(m, n) * 4u32);
        prop_assert_eq!(zeta_dist_sq(m + 1, n + 1), zeta_dist_sq(m, n) * 4u32);
    }

    #[test]
    fn term_normalization_is_symmetric(xa in 0u32..6, a in 0u32..6, yb in 0u32..6, b in 0u32..6) {
        let p = if xa % 2 == 0 { Operand::x(a) } else { Operand::y(a) };
        let q = if yb % 2 == 0 { Operand::x(b) } else { Operand::y(b) };
        prop_assume!(p != q);
        let t = TermSpec::new(p, q).unwrap();
        prop_assert_eq!(t, TermSpec::new(q, p).unwrap());
        prop_assert_eq!(TermSpec::new(t.left(), t.right()).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contracting_affine_maps_converge(p in -19i64..=19, den in 2i64..=20, beta in -20i64..=20, x0 in -20i64..=20) {
        prop_assume!(p != 0 && p.abs() < den);
        let alpha = Rational::frac(p, den);
        let q_sq = &alpha * &alpha;
        let space = Space::Demo(AffineMap::new(alpha, Rational::integer(beta)));
        let tol = Rational::frac(1, 1_000_000_000_000);
        let cfg = IterationConfig::with_tolerance(2000, tol.clone()).unwrap();
        let out = picard_iterate(&space, &Point::Demo(Rational::integer(x0)), &cfg).unwrap();
        prop_assert_eq!(out.verdict, Verdict::Converged);
        let step0 = out.step_distances_sq[0].value().clone();
        for (i, d) in out.step_distances_sq.iter().enumerate() {
            prop_assert!(apriori_bound_check(&q_sq, &step0, i as u32, d.value()));
        }
        let t = space.apply_map(&out.final_point, 1).unwrap();
        prop_assert!(space.dist_sq(&out.final_point, &t).unwrap().value() <= &tol);
    }

    #[test]
    fn power_spaces_never_converge(n in 0u64..=32, tol_num in 1i64..1000, extra in 1i64..1000) {
        let tol = Rational::frac(tol_num, tol_num + extra);
        let cfg = IterationConfig::with_tolerance(100, tol).unwrap();
        for space in [Space::Pow2, Space::Zeta] {
            let out = picard_iterate(&space, &space.point(n), &cfg).unwrap();
            prop_assert_ne!(out.verdict, Verdict::Converged);
        }
    }
}

#[test]
fn triangle_inequality_on_all_triples() {
    for (p, r, s) in (0..=12u64).flat_map(|p| (0..=12u64).flat_map(move |r| (0..=12u64).map(move |s| (p, r, s)))) {
        assert!(triangle_holds_sq(&pow2_dist_sq(p, r), &pow2_dist_sq(r, s), &pow2_dist_sq(p, s)));
        assert!(triangle_holds_sq(&zeta_dist_sq(p, r), &zeta_dist_sq(r, s), &zeta_dist_sq(p, s)));
    }
}

#[test]
fn no_fixed_points_up_to_64() {
    for space in [Space::Pow2, Space::Zeta] {
        for n in 0..=64 {
            let p = space.point(n);
            assert!(!space.dist_sq(&p, &space.apply_map(&p, 1).unwrap()).unwrap().is_zero());
        }
    }
}

fn all_templates(d: &RelaxationSpec) -> [quasi_core::condition::ConditionTemplate; 4] {
    [make_c1(), make_c2(), make_c3(), make_cx(d)]
}

#[test]
fn max_is_monotone_in_the_term_set() {
    for d in enumerate_family(5, 5) {
        let ts = all_templates(&d);
        for w in ts.windows(2) {
            assert!(w[0].is_subset(&w[1]));
        }
        for space in [Space::Pow2, Space::Zeta] {
            for (x, y) in grid(&space, 8) {
                let maxes: Vec<_> = ts.iter().map(|t| t.rhs_max_sq(&space, &x, &y).unwrap().0).collect();
                assert!(maxes.windows(2).all(|w| w[0].value() <= w[1].value()), "{d} at {x}, {y}");
            }
        }
    }
}

#[test]
fn estimate_is_monotone_in_the_term_set() {
    let d = RelaxationSpec::new(Family::Yy, 3, 1).unwrap();
    for space in [Space::Pow2, Space::Zeta] {
        let pairs = grid(&space, 10);
        let sups: Vec<SupRatio> =
            all_templates(&d).iter().map(|t| estimate_q(&space, t, &pairs, Exec::Sequential).unwrap().sup).collect();
        assert!(sups.windows(2).all(|w| w[0] >= w[1]), "{sups:?}");
    }
}

#[test]
fn ratios_are_shift_invariant() {
    for d in enumerate_family(4, 4) {
        for space in [Space::Pow2, Space::Zeta] {
            let cx = make_cx(&d);
            for (m, n) in exponent_grid(8) {
                let base = pair_ratio(&space, &cx, &space.point(m), &space.point(n)).unwrap().ratio;
                for s in 1..=3 {
                    let shifted = pair_ratio(&space, &cx, &space.point(m + s), &space.point(n + s)).unwrap().ratio;
                    assert_eq!(base, shifted, "{d} at ({m}, {n}) + {s}");
                }
            }
        }
    }
}

#[test]
fn grid_sup_is_shift_invariant() {
    let d = RelaxationSpec::new(Family::XyB2, 1, 3).unwrap();
    let cx = make_cx(&d);
    let space = Space::Zeta;
    let base = estimate_q(&space, &cx, &grid(&space, 8), Exec::Sequential).unwrap();
    let shifted: Vec<_> = exponent_grid(8).into_iter().map(|(m, n)| (space.point(m + 5), space.point(n + 5))).collect();
    let shifted = estimate_q(&space, &cx, &shifted, Exec::Sequential).unwrap();
    assert_eq!(base.sup, shifted.sup);
}

/// The certificate case id covering `(m, n)`.
fn covering_case(ids: &[String], m: u64, n: u64) -> Option<&String> {
    use std::cmp::Ordering::*;
    let pow2 = ids.iter().any(|i| i.starts_with("claim1/"));
    let key = match (m.cmp(&n), m.abs_diff(n)) {
        (Equal, _) => return None,
        (Greater, _) if pow2 => "m>n",
        (Greater, 1) => "m=n+1",
        (Greater, _) => "m=n+s",
        (Less, 1) => "m=n-1",
        (Less, _) if pow2 => "m<n-1",
        (Less, _) => "n=m+s",
    };
    ids.iter().find(|i| i.split('/').nth(1) == Some(key))
}

#[test]
fn certificates_bound_every_grid_ratio() {
    let mut cases: Vec<(Space, RelaxationSpec, Vec<quasi_core::lab::CaseCertificate>)> = Vec::new();
    for k in 2..=5 {
        let d = RelaxationSpec::new(Family::XyA3, k + 1, k).unwrap();
        cases.push((Space::Pow2, d, claim1_certificates(k).unwrap()));
    }
    for d in enumerate_family(5, 5).into_iter().filter(|d| !d.is_pow2_shape()) {
        cases.push((Space::Zeta, d, claim2_certificates(&d).unwrap()));
    }
    for (space, d, certs) in cases {
        assert!(certs.iter().all(|c| c.verified), "{d}");
        let ids: Vec<String> = certs.iter().map(|c| c.case_id.clone()).collect();
        let cx = make_cx(&d);
        for (m, n) in exponent_grid(12) {
            if m == n {
                continue;
            }
            let id = covering_case(&ids, m, n).unwrap_or_else(|| panic!("{d}: no case covers ({m}, {n})"));
            let cert = certs.iter().find(|c| &c.case_id == id).unwrap();
            let ratio = pair_ratio(&space, &cx, &space.point(m), &space.point(n)).unwrap().ratio;
            assert!(ratio <= SupRatio::Finite(cert.q_sq.clone()), "{d} ({m}, {n}) under {id}: {ratio:?}");
        }
    }
}

#[test]
fn dispatch_is_total() {
    for d in enumerate_family(6, 6) {
        if d.is_pow2_shape() {
            assert!(verify_claim1(d.b(), 8, Exec::Sequential).unwrap().status.is_pass(), "{d}");
            assert!(matches!(verify_claim2(&d, 8, Exec::Sequential), Err(Error::WrongExample(_))));
        } else {
            assert!(verify_claim2(&d, 8, Exec::Sequential).unwrap().status.is_pass(), "{d}");
        }
    }
}

#[test]
fn claim1_sup_drops_below_the_constant_for_larger_k() {
    for k in 3..=5 {
        let r = verify_claim1(k, 14, Exec::default()).unwrap();
        assert!(r.status.is_pass());
        let sup = r.grid.unwrap().sup_ratio_sq.unwrap();
        assert!(sup < Rational::frac(9, 16), "k={k}: {sup}");
    }
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let d = RelaxationSpec::new(Family::Xx, 4, 1).unwrap();
    let a = verify_claim2(&d, 10, Exec::Sequential).unwrap();
    let b = verify_claim2(&d, 10, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}
