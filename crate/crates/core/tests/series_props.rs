//! Property tests for the truncated series algebra and the operator.

use num_complex::Complex64;
use proptest::prelude::*;

use salagean::fuzz::random_member;
use salagean::{salagean_normalized, ClassParams, NormalizedFunction, TruncatedSeries};

const ORDER: usize = 24;

fn coeff() -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(coeff(), ORDER + 1).prop_map(|c| TruncatedSeries::new(c).unwrap())
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    series().prop_map(|s| {
        let mut c = s.coeffs().to_vec();
        c[0] = Complex64::new(1.0, 0.0);
        TruncatedSeries::new(c).unwrap()
    })
}

fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
    let scale = a.coeffs().iter().chain(b.coeffs()).map(|c| c.norm()).fold(1.0, f64::max);
    a.max_abs_diff(b) <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mul_commutes(a in series(), b in series()) {
        prop_assert!(close(&a.mul(&b), &b.mul(&a), 1e-13));
    }

    #[test]
    fn mul_associates(a in series(), b in series(), c in series()) {
        prop_assert!(close(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), 1e-12));
    }

    #[test]
    fn pow_adds_exponents(g in unit_series(), x in -2.0..3.0f64, y in -2.0..3.0f64) {
        let lhs = g.pow_real(x).unwrap().mul(&g.pow_real(y).unwrap());
        prop_assert!(close(&lhs, &g.pow_real(x + y).unwrap(), 1e-10));
    }

    #[test]
    fn integer_pow_is_repeated_mul(g in unit_series(), m in 0u32..5) {
        let repeated = (0..m).fold(TruncatedSeries::one(ORDER), |acc, _| acc.mul(&g));
        prop_assert!(close(&g.pow_real(m as f64).unwrap(), &repeated, 1e-11));
    }

    #[test]
    fn reciprocal_inverts(g in unit_series()) {
        let product = g.mul(&g.reciprocal().unwrap());
        prop_assert!(close(&product, &TruncatedSeries::one(ORDER), 1e-9));
    }

    #[test]
    fn operator_has_unit_constant_term(
        tail in prop::collection::vec(coeff(), 1..12),
        alpha in 0.1..4.0f64,
        beta in 0.0..0.99f64,
        n in 0u32..5,
    ) {
        let f = NormalizedFunction::from_tail(&tail).unwrap();
        let image = salagean_normalized(&f, &ClassParams::new(alpha, beta, n).unwrap()).unwrap();
        prop_assert_eq!(image.coeffs()[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn operator_composes(
        seed in any::<u64>(),
        alpha in 0.5..3.0f64,
        beta in 0.0..0.9f64,
        n1 in 0u32..3,
        n2 in 0u32..3,
    ) {
        // class members keep f/z and its operator images zero-free on the disk
        let p = ClassParams::new(alpha, beta, n1).unwrap();
        let (_, f) = random_member(&p, seed, 24).unwrap();
        let first = salagean_normalized(&f, &p).unwrap();
        let g = NormalizedFunction::from_quotient(&first.pow_real(alpha.recip()).unwrap()).unwrap();
        let composed = salagean_normalized(&g, &p.with_n(n2)).unwrap();
        let direct = salagean_normalized(&f, &p.with_n(n1 + n2)).unwrap();
        prop_assert!(close(&composed, &direct.truncate(composed.order()), 1e-10));
    }

    #[test]
    fn circle_values_match_horner(s in series(), r in 0.05..0.95f64, points in 1usize..40) {
        let fast = s.eval_circle(r, points);
        for (j, v) in fast.iter().enumerate() {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / points as f64);
            prop_assert!((v - s.eval(z)).norm() < 1e-11);
        }
    }
}
