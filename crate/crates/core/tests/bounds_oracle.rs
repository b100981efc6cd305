//! Independent elimination oracle for the derived coefficient bounds.
//!
//! Writes `a2, a3, a4` as polynomials in the Caratheodory coefficients
//! `c1, c2, c3` by expanding `(1 + u)^alpha` with the generalized binomial
//! series (not the recurrence the library uses), solving the triangular
//! system `((alpha+k)/alpha)^n h_k = (1 - beta) c_k` term by term, and then
//! bounding each monomial with `|c_i| <= 2`.

use std::collections::BTreeMap;

use salagean::bounds::{bound_a3, bound_a4, fekete_szego_bound, Provenance};
use salagean::ClassParams;

/// Exponents of (c1, c2, c3).
type Mono = [u8; 3];

#[derive(Clone, Debug, Default)]
struct Poly(BTreeMap<Mono, f64>);

impl Poly {
    fn constant(x: f64) -> Self {
        let mut m = BTreeMap::new();
        if x != 0.0 {
            m.insert([0, 0, 0], x);
        }
        Poly(m)
    }

    fn var(i: usize, scale: f64) -> Self {
        let mut e = [0u8; 3];
        e[i] = 1;
        Poly(BTreeMap::from([(e, scale)]))
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            *m.entry(*k).or_insert(0.0) += v;
        }
        Poly(m)
    }

    fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|(k, v)| (*k, v * s)).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut m = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                *m.entry(e).or_insert(0.0) += x * y;
            }
        }
        Poly(m)
    }

    /// Worst case of `|poly|` under `|c_i| <= 2`, by the triangle inequality.
    fn triangle_bound(&self) -> f64 {
        self.0
            .iter()
            .map(|(e, v)| v.abs() * 2f64.powi((e[0] + e[1] + e[2]) as i32))
            .sum()
    }
}

/// Series in z (orders 0..=3) with polynomial coefficients.
fn series_mul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    (0..a.len())
        .map(|k| (0..=k).fold(Poly::default(), |acc, j| acc.add(&a[j].mul(&b[k - j]))))
        .collect()
}

fn binom(alpha: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (alpha - i as f64) / (i as f64 + 1.0))
}

/// `(1 + u)^alpha` for `u` with zero constant term, to order 3.
fn binomial_power(u: &[Poly], alpha: f64) -> Vec<Poly> {
    let mut out = vec![Poly::constant(1.0), Poly::default(), Poly::default(), Poly::default()];
    let mut power = out.clone();
    for j in 1..=3 {
        power = series_mul(&power, u);
        for k in 0..4 {
            out[k] = out[k].add(&power[k].scale(binom(alpha, j)));
        }
    }
    out
}

/// `[a2, a3, a4]` as polynomials in `c1, c2, c3`.
fn eliminate(params: &ClassParams) -> Vec<Poly> {
    let alpha = params.alpha();
    let mut a: Vec<Poly> = Vec::new();
    for k in 1..=3 {
        // h_k with the unknown a_{k+1} set to zero
        let mut u = vec![Poly::default()];
        u.extend(a.iter().cloned());
        u.resize(4, Poly::default());
        let h = binomial_power(&u, alpha);
        let weight = ((alpha + k as f64) / alpha).powi(params.n() as i32);
        let target = Poly::var(k - 1, (1.0 - params.beta()) / weight);
        // h_k is linear in a_{k+1} with slope alpha
        a.push(target.add(&h[k].scale(-1.0)).scale(1.0 / alpha));
    }
    a
}

fn grid() -> Vec<ClassParams> {
    let mut out = Vec::new();
    for n in 0..5 {
        for alpha in [0.1, 0.25, 0.5, 0.75, 0.9, 1.0, 1.5, 2.0, 3.0] {
            for beta in [0.0, 0.25, 0.5, 0.9] {
                out.push(ClassParams::new(alpha, beta, n).unwrap());
            }
        }
    }
    out
}

#[test]
fn a2_identity_matches_closed_form() {
    for p in grid() {
        let a = eliminate(&p);
        let d = p.alpha().powi(p.n() as i32 - 1) * (1.0 - p.beta()) / (p.alpha() + 1.0).powi(p.n() as i32);
        assert_eq!(a[0].0.len(), 1);
        assert!((a[0].0[&[1, 0, 0]] - d).abs() < 1e-14);
    }
}

#[test]
fn derived_a4_equals_triangle_elimination() {
    for p in grid() {
        let oracle = eliminate(&p)[2].triangle_bound();
        let got = bound_a4(&p, Provenance::Derived);
        assert!((oracle - got).abs() < 1e-9 * oracle.max(1.0), "{p}: oracle {oracle}, library {got}");
    }
}

#[test]
fn derived_a3_small_alpha_equals_triangle_elimination() {
    for p in grid().into_iter().filter(|p| p.alpha() <= 1.0) {
        let oracle = eliminate(&p)[1].triangle_bound();
        assert!((oracle - bound_a3(&p, Provenance::Derived)).abs() < 1e-12, "{p}");
    }
}

#[test]
fn derived_fekete_szego_equals_triangle_elimination() {
    for p in grid() {
        let a = eliminate(&p);
        for mu in [-2.0, -0.5, 0.0, 0.7, 2.0] {
            let functional = a[1].add(&a[0].mul(&a[0]).scale(-mu));
            let oracle = functional.triangle_bound();
            let got = fekete_szego_bound(&p, mu, Provenance::Derived);
            assert!((oracle - got).abs() < 1e-12 * oracle.max(1.0), "{p} mu = {mu}");
        }
    }
}

#[test]
fn frozen_a4_value() {
    // (n = 2, alpha = 1/2, beta = 1/4), value produced by the elimination above
    let p = ClassParams::new(0.5, 0.25, 2).unwrap();
    let oracle = eliminate(&p)[2].triangle_bound();
    let frozen = FROZEN_A4_N2_HALF_QUARTER;
    assert!((oracle - frozen).abs() < 1e-12, "oracle {oracle:.17}");
    assert!((bound_a4(&p, Provenance::Derived) - frozen).abs() < 1e-9);
}

#[test]
fn frozen_a3_value() {
    // (n = 1, alpha = 1/2, beta = 0)
    let p = ClassParams::new(0.5, 0.0, 1).unwrap();
    let oracle = eliminate(&p)[1].triangle_bound();
    assert!((oracle - FROZEN_A3_N1_HALF).abs() < 1e-12, "oracle {oracle:.17}");
}

const FROZEN_A4_N2_HALF_QUARTER: f64 = 0.081_224_489_795_918_37;
const FROZEN_A3_N1_HALF: f64 = 1.244_444_444_444_444_5;
