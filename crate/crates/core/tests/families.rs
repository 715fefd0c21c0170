use std::collections::BTreeMap;

use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::families::FamilySpec;
use ri_orthopoly::ortho::cf_series;
use ri_orthopoly::verify::family_points;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn rising(x: &Scalar, k: usize) -> Scalar {
    (0..k).map(|i| x + Scalar::from(i)).product()
}

/// Stirling numbers of the second kind by the triangle recurrence.
fn stirling2(n: usize, k: usize) -> Scalar {
    let mut row = vec![Scalar::one()];
    for m in 1..=n {
        let mut next = vec![Scalar::zero(); m + 1];
        for j in 1..=m {
            let keep = if j < m { &row[j] * Scalar::from(j) } else { Scalar::zero() };
            next[j] = keep + row[j - 1].clone();
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(Scalar::zero)
}

fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

#[test]
fn laguerre_moments_are_rising_factorials() {
    let a = q(1, 3);
    let f = FamilySpec::laguerre(a.clone()).unwrap();
    let ser = cf_series(&f.build(10).unwrap(), 8).unwrap();
    for k in 0..8 {
        assert_eq!(ser.coeff(k), rising(&(&a + Scalar::one()), k), "k={k}");
    }
}

#[test]
fn jacobi01_moments_are_rising_ratios() {
    let (a, b) = (q(2, 3), q(-1, 5));
    let f = FamilySpec::from_params("jacobi01", &params(&[("a", "2/3"), ("b", "-1/5")])).unwrap();
    let ser = cf_series(&f.build(10).unwrap(), 8).unwrap();
    for k in 0..8 {
        let want = rising(&(&a + Scalar::one()), k) / rising(&(&a + &b + Scalar::from_int(2)), k);
        assert_eq!(ser.coeff(k), want, "k={k}");
    }
}

#[test]
fn meixner_moments_expand_in_stirling_numbers() {
    let (b, c) = (q(3, 2), q(1, 3));
    let f = FamilySpec::meixner(b.clone(), c.clone()).unwrap();
    let ser = cf_series(&f.build(10).unwrap(), 7).unwrap();
    let ratio = &c / (Scalar::one() - &c);
    for k in 0..7 {
        let want: Scalar = (0..=k).map(|j| stirling2(k, j) * rising(&b, j) * ratio.powu(j as u32)).sum();
        assert_eq!(ser.coeff(k), want, "k={k}");
    }
}

#[test]
fn constant_family_counts_paths() {
    let f = FamilySpec::from_params("constant", &params(&[("A", "1"), ("B", "1"), ("C", "1")])).unwrap();
    let ser = cf_series(&f.build(8).unwrap(), 6).unwrap();
    let want = [1, 2, 7, 29, 133, 650];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(ser.coeff(k), Scalar::from_int(*w));
    }
    assert!(f.moment_series_check(8).unwrap().matched);
}

#[test]
fn sample_families_pass_their_checks() {
    for f in family_points() {
        let top = match &f {
            FamilySpec::QRacah { n, .. } => (*n).min(4),
            _ => 4,
        };
        let xs = f.sample_points(4);
        for n in 0..=top {
            let r = f.glue_shift_check(n, &xs).unwrap();
            assert!(r.proportional && r.polys_equal, "{f} n={n}");
        }
        assert!(f.moment_series_check(6).unwrap().matched, "{f}");
    }
}

#[test]
fn family_specs_round_trip_through_json() {
    for f in family_points() {
        let back = FamilySpec::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(FamilySpec::from_params(f.name(), &f.params()).unwrap(), f);
    }
}

#[test]
fn q_racah_terminates_after_n() {
    let big_n = 4;
    let f = FamilySpec::q_racah(q(1, 3), q(2, 5), q(3, 7), big_n, q(1, 2)).unwrap();
    let cs = f.build(big_n + 4).unwrap();
    let (_, a, l) = f.coefficients(big_n + 1).unwrap();
    assert!(a.is_zero() && l.is_zero());
    for n in 1..=big_n {
        assert!(!cs.lambda(n).is_zero(), "lambda_{n}");
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    let cases: &[(&str, &[(&str, &str)])] = &[
        ("meixner", &[("b", "1"), ("c", "1")]),
        ("meixner", &[("b", "1"), ("c", "0")]),
        ("little_q_jacobi", &[("a", "1/2"), ("b", "1/3"), ("q", "1")]),
        ("little_q_jacobi", &[("a", "0"), ("b", "1/3"), ("q", "1/2")]),
        ("askey_wilson", &[("a", "1/2"), ("b", "1/3"), ("c", "1"), ("d", "1"), ("q", "-1")]),
        ("q_racah", &[("b", "1/2"), ("c", "1/3"), ("d", "1/5"), ("N", "0"), ("q", "1/2")]),
        ("q_racah", &[("b", "1/2"), ("c", "1/3"), ("d", "1/5"), ("N", "3/2"), ("q", "1/2")]),
        ("laguerre", &[("a", "x")]),
        ("laguerre", &[]),
        ("laguerre", &[("a", "1"), ("z", "2")]),
        ("jacobi11", &[("a", "1"), ("b", "1"), ("variant", "sideways")]),
        ("chebyshev", &[]),
    ];
    for (name, ps) in cases {
        let err = FamilySpec::from_params(name, &params(ps)).unwrap_err();
        assert_eq!(err.exit_code(), 3, "{name} {ps:?}: {err}");
    }
}
