use proptest::prelude::*;
use ri_orthopoly::exactmath::{Poly, Scalar, Series};
use ri_orthopoly::ortho::{
    cf_series, p_sequence, p_star_sequence, parse_expr, tiling, truncated_cf, CoeffSystem, Session, VElem,
};
use ri_orthopoly::paths::{enumerate, weight_sum, NumericWeights, Point};
use ri_orthopoly::Error;

fn ones(len: usize) -> CoeffSystem {
    CoeffSystem::constant(Scalar::one(), Scalar::one(), Scalar::one(), len)
}

/// Oracle: the moment `mu_n` as a brute-force sum over enumerated paths.
fn mu_by_enumeration(cs: &CoeffSystem, n: usize) -> Scalar {
    enumerate(Point::new(0, 0), Point::new(n, 0), 1_000_000)
        .unwrap()
        .iter()
        .map(|p| p.weight(&NumericWeights(cs)))
        .sum()
}

#[test]
fn first_moments_of_the_all_ones_system() {
    let mut s = Session::new(ones(8));
    let mu: Vec<i64> = s.moments(5).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
    assert_eq!(mu, vec![1, 2, 7, 29, 133, 650]);
}

#[test]
fn moments_agree_across_recurrence_paths_and_fraction() {
    for seed in 0..6 {
        let cs = CoeffSystem::random(seed, 9, false);
        let mut s = Session::new(cs.clone());
        let cf = cf_series(&cs, 8).unwrap();
        for n in 0..=6 {
            let rec = s.mu(n).unwrap();
            assert_eq!(rec, mu_by_enumeration(&cs, n), "seed {seed} n {n}");
            assert_eq!(rec, cf.coeff(n), "seed {seed} n {n}");
            assert_eq!(
                rec,
                weight_sum(Point::new(0, 0), Point::new(n, 0), &NumericWeights(&cs), None).unwrap()
            );
        }
    }
}

#[test]
fn l_of_one_over_d1() {
    let cs = CoeffSystem::random(5, 4, false);
    let mut s = Session::new(cs.clone());
    let expected = Scalar::one() / (cs.lambda(1) + cs.a(1) * cs.b(0));
    assert_eq!(s.l_eval(&VElem::x_pow_over_d(0, 1)).unwrap(), expected);
    assert_eq!(s.nu(0, 1).unwrap(), expected);
}

#[test]
fn nu_recurrence_matches_decomposition() {
    for seed in 10..14 {
        let cs = CoeffSystem::random(seed, 10, false);
        let mut s = Session::new(cs.clone());
        for m in 0..=4 {
            for n in 0..=6 {
                let rec = s.nu(n, m).unwrap();
                let dec = s.l_eval(&VElem::x_pow_over_d(n, m)).unwrap();
                assert_eq!(rec, dec, "seed {seed} nu({n},{m})");
            }
        }
    }
}

#[test]
fn biorthogonality_of_p_and_q() {
    let cs = CoeffSystem::random(21, 10, false);
    let mut s = Session::new(cs.clone());
    for n in 0..=6 {
        for m in 0..=6 {
            let v = s.q(m).unwrap().mul_poly(&s.p(n).unwrap());
            let got = s.l_eval(&v).unwrap();
            let want = if n >= m {
                ((m + 1)..=n).map(|i| cs.a(i).clone()).product()
            } else {
                Scalar::zero()
            };
            assert_eq!(got, want, "L(P_{n} Q_{m})");
        }
    }
}

#[test]
fn mu_nml_is_a_path_sum_between_heights() {
    let cs = CoeffSystem::random(3, 10, false);
    let mut s = Session::new(cs.clone());
    for (n, m, l) in [(0, 1, 0), (2, 1, 1), (3, 0, 2), (3, 2, 1), (4, 2, 2)] {
        let paths = weight_sum(Point::new(0, m), Point::new(n, l), &NumericWeights(&cs), None).unwrap();
        assert_eq!(s.mu_nml(n, m, l).unwrap(), paths, "({n},{m},{l})");
    }
}

#[test]
fn expansion_in_p_round_trips() {
    let cs = CoeffSystem::random(8, 10, false);
    let mut s = Session::new(cs.clone());
    let p = Poly::new(vec![Scalar::frac(1, 3), Scalar::from_int(-2), Scalar::zero(), Scalar::frac(5, 7), Scalar::one()]);
    let c = s.expand_in_p(&p).unwrap();
    let ps = p_sequence(&cs, 4).unwrap();
    let back = c.iter().zip(&ps).fold(Poly::zero(), |acc, (ci, pi)| &acc + &pi.scale(ci));
    assert_eq!(back, p);
}

#[test]
fn vm_series_satisfies_closed_form() {
    let cs = CoeffSystem::random(31, 10, false);
    let mut s = Session::new(cs.clone());
    for m in 1..=3 {
        let v = s.vm_series(m, 6).unwrap();
        let closed = s.vm_closed_form(m, 6).unwrap();
        assert_eq!(v, closed, "m = {m}");
        // a_m (V_m - nu_{0,m}) + lambda_m x V_m = x V_{m-1}
        let prev = s.vm_series(m - 1, 6).unwrap();
        let nu0 = Series::new(vec![s.nu(0, m).unwrap()], 6);
        let lhs = &(&v - &nu0).scale(cs.a(m)) + &v.shift(1).scale(cs.lambda(m));
        assert_eq!(lhs, prev.shift(1));
    }
}

#[test]
fn tilings_reproduce_the_recurrence() {
    for seed in 0..3 {
        let cs = CoeffSystem::random(seed, 10, false);
        let p = p_sequence(&cs, 9).unwrap();
        let ps = p_star_sequence(&cs, 9).unwrap();
        for n in 0..=9 {
            assert_eq!(tiling::p_via_tilings(&cs, n).unwrap(), p[n]);
            assert_eq!(tiling::p_star_via_tilings(&cs, n).unwrap(), ps[n]);
        }
    }
}

#[test]
fn truncated_fraction_is_the_reversed_ratio() {
    let cs = CoeffSystem::random(4, 9, false);
    for k in 0..=6 {
        let (num, den) = truncated_cf(&cs, k).unwrap();
        assert_eq!(den, p_star_sequence(&cs, k + 1).unwrap()[k + 1]);
        assert_eq!(num, p_star_sequence(&cs.shift(1).unwrap(), k).unwrap()[k]);
    }
}

#[test]
fn expressions_parse_into_v() {
    let cs = CoeffSystem::random(2, 8, false);
    let mut s = Session::new(cs.clone());
    let v = parse_expr("x^3*Q_2", &mut s).unwrap();
    assert_eq!(v.den, 2);
    assert_eq!(s.l_eval(&v).unwrap(), s.mu_nm(3, 2).unwrap());
    let w = parse_expr("2*P_1 - 1/2*1/d_1", &mut s).unwrap();
    let want = s.p(1).unwrap().scale(&Scalar::from_int(2));
    let direct = s.l_poly(&want).unwrap() - s.nu(0, 1).unwrap() * Scalar::frac(1, 2);
    assert_eq!(s.l_eval(&w).unwrap(), direct);
    assert!(matches!(parse_expr("Q_1*Q_2", &mut s), Err(Error::NotInV(_))));
    assert!(matches!(parse_expr("x^-1", &mut s), Err(Error::NotInV(_))));
}

#[test]
fn degenerate_system_is_reported() {
    // P_1(-lambda_1/a_1) = -lambda_1/a_1 - b_0 = 0 when lambda_1 = -a_1 b_0
    let cs = CoeffSystem::new(
        vec![Scalar::one(), Scalar::one(), Scalar::one()],
        vec![Scalar::zero(), Scalar::from_int(2), Scalar::one()],
        vec![Scalar::zero(), Scalar::from_int(-2), Scalar::one()],
    )
    .unwrap();
    let mut s = Session::new(cs);
    assert!(matches!(s.nu(0, 1), Err(Error::Degenerate { k: 1, .. })));
}

#[test]
fn memo_limit_is_enforced() {
    let mut s = Session::with_memo_limit(ones(40), Some(50));
    assert!(matches!(s.mu(30), Err(Error::MemoLimit { limit: 50 })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moments_match_fraction_for_random_systems(seed in 0u64..10_000, n in 0usize..7) {
        let cs = CoeffSystem::random(seed, 8, false);
        let mut s = Session::new(cs.clone());
        prop_assert_eq!(s.mu(n).unwrap(), cf_series(&cs, 7).unwrap().coeff(n));
    }

    #[test]
    fn orthogonality_of_q_against_low_powers(seed in 0u64..10_000, m in 1usize..6) {
        let cs = CoeffSystem::random(seed, 8, false);
        let mut s = Session::new(cs);
        prop_assume!(s.check_nondegenerate(m).is_ok());
        for n in 0..m {
            prop_assert!(s.mu_nm(n, m).unwrap().is_zero());
            let v = s.q(m).unwrap().mul_poly(&Poly::monomial(n, Scalar::one()));
            prop_assert!(s.l_eval(&v).unwrap().is_zero());
        }
        let v = s.q(m).unwrap().mul_poly(&Poly::monomial(m, Scalar::one()));
        prop_assert!(s.l_eval(&v).unwrap().is_one());
    }
}
