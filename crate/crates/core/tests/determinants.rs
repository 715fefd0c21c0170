use proptest::prelude::*;
use ri_orthopoly::determinants::{self, det_exact, DetKind, Matrix};
use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::ortho::{CoeffSystem, Session};
use ri_orthopoly::Error;

/// Oracle: cofactor expansion along the first row.
fn det_cofactor(m: &Matrix) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    (0..n)
        .map(|j| {
            let minor: Matrix = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][j] * &det_cofactor(&minor);
            if j % 2 == 0 { t } else { -t }
        })
        .sum()
}

fn session(seed: u64) -> Session {
    let mut s = Session::new(CoeffSystem::random_full(seed, 16));
    s.check_nondegenerate(8).expect("nondegenerate sample");
    s
}

#[test]
fn det_of_singular_and_identity() {
    let id: Matrix = (0..4)
        .map(|i| (0..4).map(|j| Scalar::from_int(i64::from(i == j))).collect())
        .collect();
    assert_eq!(det_exact(&id), Scalar::one());
    let sing = vec![vec![Scalar::from_int(1), Scalar::from_int(2)], vec![Scalar::from_int(2), Scalar::from_int(4)]];
    assert!(det_exact(&sing).is_zero());
    assert_eq!(det_exact(&Vec::new()), Scalar::one());
}

#[test]
fn product_formulas_hold_for_a_fixed_system() {
    let mut s = session(11);
    for n in 0..5 {
        for kind in DetKind::UNSHIFTED {
            let r = determinants::delta(kind, n, &mut s).unwrap();
            assert!(r.matched, "{kind} n={n}: {} vs {}", r.computed, r.predicted);
            assert_eq!(det_cofactor(&determinants::nu_matrix(kind, n, &mut s).unwrap()), r.computed);
        }
        for kind in DetKind::SHIFTED.into_iter().filter(|_| n >= 1) {
            let r = determinants::delta_shifted(kind, n, 1, &mut s).unwrap();
            assert!(r.matched, "{kind} n={n}");
            assert!(matches!(determinants::delta_shifted(kind, n, 2, &mut s), Err(Error::Unsupported(_))));
        }
    }
}

#[test]
fn determinant_polynomials_are_monic_and_match_recurrence() {
    let mut s = session(12);
    for n in 0..5 {
        let p = s.p(n).unwrap();
        let d = determinants::p_via_det(n, &mut s).unwrap();
        assert!(d.is_monic());
        assert_eq!(d, p);
    }
}

#[test]
fn constant_system_hankel_matches_prediction() {
    for (a, b, c) in [(1, 1, 1), (2, 3, 5), (-1, 2, 4)] {
        let (a, b, c) = (Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c));
        let mut s = Session::new(CoeffSystem::constant(a.clone(), b.clone(), c.clone(), 16));
        for n in 0..5 {
            let h = determinants::hankel(n, &mut s).unwrap();
            assert_eq!(h, determinants::hankel_constant_prediction(&a, &b, &c, n), "n={n}");
        }
    }
}

#[test]
fn kind_names_parse_back() {
    for kind in DetKind::UNSHIFTED.into_iter().chain(DetKind::SHIFTED).chain([DetKind::Hankel]) {
        assert_eq!(kind.name().parse::<DetKind>().unwrap(), kind);
    }
    assert!("bogus".parse::<DetKind>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elimination_matches_cofactor_expansion(
        n in 0usize..5,
        entries in prop::collection::vec((-6i64..7, 1i64..5), 25),
    ) {
        let m: Matrix = (0..n)
            .map(|i| (0..n).map(|j| { let (p, q) = entries[i * 5 + j]; Scalar::frac(p, q) }).collect())
            .collect();
        prop_assert_eq!(det_exact(&m), det_cofactor(&m));
    }

    #[test]
    fn row_swap_flips_sign(entries in prop::collection::vec(-9i64..10, 9)) {
        let m: Matrix = (0..3).map(|i| (0..3).map(|j| Scalar::from_int(entries[i * 3 + j])).collect()).collect();
        let mut w = m.clone();
        w.swap(0, 2);
        prop_assert_eq!(det_exact(&w), -det_exact(&m));
    }
}
