//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0, ..., c_N` and stands for
//! `sum c_k z^k + O(z^{N+1})`. Binary operations truncate to the smaller order
//! of their operands; nothing is ever zero-padded implicitly. Use
//! [`TruncatedSeries::with_order`] when padding is really meant (for exact
//! polynomials).

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ClassParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for TruncatedSeries {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<TruncatedSeries> for Vec<Complex64> {
    fn from(s: TruncatedSeries) -> Self {
        s.coeffs
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Internal constructor for results of finite arithmetic on finite inputs.
    fn from_vec(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// `1 + z + ... + z^order`, the truncation of `1/(1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_vec(vec![Complex64::new(1.0, 0.0); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<Complex64> {
        self.coeffs.get(k).copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self::from_vec(self.coeffs[..keep].to_vec())
    }

    /// Same coefficients, re-declared at `order`: truncates or pads with
    /// zeros. Padding asserts that the missing coefficients are exactly zero,
    /// which is only right for polynomials.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::from_vec(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let order = self.order().min(other.order());
        Self::from_vec((0..=order).map(|k| op(self.coeffs[k], other.coeffs[k])).collect())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_vec(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Adds `value` to the constant term.
    pub fn add_constant(&self, value: Complex64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += value;
        Self::from_vec(coeffs)
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=order)
            .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
            .collect();
        Self::from_vec(coeffs)
    }

    /// Multiplication by `z`; the order grows by one and the new top
    /// coefficient is known exactly.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_vec(coeffs)
    }

    /// Division by `z`, requiring `c_0 = 0`. Order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("division by z needs a zero constant term".into()));
        }
        if self.coeffs.len() < 2 {
            return Err(Error::EmptySeries);
        }
        Ok(Self::from_vec(self.coeffs[1..].to_vec()))
    }

    /// Multiplicative inverse by the triangular coefficient recurrence
    /// `b_0 = 1/a_0`, `b_k = -(1/a_0) sum_{j=1..k} a_j b_{k-j}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0] == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a[0].inv();
        let mut b = Vec::with_capacity(a.len());
        b.push(inv0);
        for k in 1..a.len() {
            let acc: Complex64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
            b.push(-acc * inv0);
        }
        Self::new(b)
    }

    /// Principal branch of `g^alpha` for `g_0 = 1`, via the recurrence
    /// `k h_k = sum_{j=1..k} ((alpha + 1) j - k) g_j h_{k-j}`, `h_0 = 1`.
    pub fn pow_real(&self, alpha: f64) -> Result<Self> {
        let g = &self.coeffs;
        if g[0] != Complex64::new(1.0, 0.0) {
            return Err(Error::NonUnitConstantTerm { re: g[0].re, im: g[0].im });
        }
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("exponent must be finite, got {alpha}")));
        }
        let mut h = Vec::with_capacity(g.len());
        h.push(Complex64::new(1.0, 0.0));
        for k in 1..g.len() {
            let kf = k as f64;
            let acc: Complex64 = (1..=k)
                .map(|j| g[j] * h[k - j] * ((alpha + 1.0) * j as f64 - kf))
                .sum();
            h.push(acc / kf);
        }
        Self::new(h)
    }

    /// Term-wise derivative. The order drops by one (the top coefficient of
    /// the derivative would need `c_{N+1}`); a constant differentiates to the
    /// zero series of order 0.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Multiplies coefficient `k` by `weight(k)`. Covers the diagonal
    /// operators used here: `z d/dz` (weight `k`), the normalized Salagean
    /// operator and the Bernardi-type integral (weight `(a + c)/(a + c + k)`).
    pub fn integral_coeffwise(&self, weight: impl Fn(usize) -> f64) -> Self {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c * weight(k))
                .collect(),
        )
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Values at the `points` equispaced points `r e^{2 pi i j / points}`,
    /// `j = 0..points`, by one inverse FFT of `c_k r^k` (coefficients beyond
    /// `points` are folded onto their residue, which is exact).
    pub fn eval_circle(&self, r: f64, points: usize) -> Vec<Complex64> {
        circle_values(&self.coeffs, r, points)
    }

    /// Heuristic truncation error on `|z| <= r`:
    /// `max(|c_{N-2}|, |c_{N-1}|, |c_N|) r^{N+1} / (1 - r)`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        let n = self.order();
        let peak = self.coeffs[n.saturating_sub(2)..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        peak * r.powi(n as i32 + 1) / (1.0 - r)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `sum_k coeffs[k] (r w^j)^k` for `w = e^{2 pi i / points}` and every `j`.
pub(crate) fn circle_values(coeffs: &[Complex64], r: f64, points: usize) -> Vec<Complex64> {
    if points == 0 {
        return Vec::new();
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); points];
    let mut rk = 1.0;
    for (k, c) in coeffs.iter().enumerate() {
        buf[k % points] += c * rk;
        rk *= r;
    }
    FFT_PLANNER.with(|planner| planner.borrow_mut().plan_fft_inverse(points).process(&mut buf));
    buf
}

thread_local! {
    static FFT_PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// A series `z + a_2 z^2 + ...` with `f(0) = 0` and `f'(0) = 1` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TruncatedSeries", into = "TruncatedSeries")]
pub struct NormalizedFunction {
    series: TruncatedSeries,
}

impl TryFrom<TruncatedSeries> for NormalizedFunction {
    type Error = Error;

    fn try_from(series: TruncatedSeries) -> Result<Self> {
        Self::new(series)
    }
}

impl From<NormalizedFunction> for TruncatedSeries {
    fn from(f: NormalizedFunction) -> Self {
        f.series
    }
}

impl NormalizedFunction {
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        let c = series.coeffs();
        if c.len() < 2 || c[0] != Complex64::new(0.0, 0.0) || c[1] != Complex64::new(1.0, 0.0) {
            return Err(Error::NotNormalized);
        }
        Ok(Self { series })
    }

    /// `z + a_2 z^2 + ... + a_{m+1} z^{m+1}` from `[a_2, ..., a_{m+1}]`.
    pub fn from_tail(tail: &[Complex64]) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        coeffs.extend_from_slice(tail);
        Self::new(TruncatedSeries::new(coeffs)?)
    }

    /// `f(z) = z` at the given order.
    pub fn identity(order: usize) -> Self {
        let order = order.max(1);
        Self { series: TruncatedSeries::one(order - 1).shift_up() }
    }

    /// Builds `z * h` from a series with `h_0 = 1`.
    pub fn from_quotient(h: &TruncatedSeries) -> Result<Self> {
        if h.coeffs()[0] != Complex64::new(1.0, 0.0) {
            return Err(Error::NotNormalized);
        }
        Ok(Self { series: h.shift_up() })
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Coefficient `a_k` (with `a_1 = 1`); `None` beyond the order.
    pub fn a(&self, k: usize) -> Option<Complex64> {
        self.series.coeff(k)
    }

    /// `f(z) / z`, of order one less than `f`.
    pub fn quotient(&self) -> TruncatedSeries {
        TruncatedSeries::from_vec(self.series.coeffs()[1..].to_vec())
    }

    /// `(f/z)^alpha`, the `z^alpha`-free factor of `f^alpha`.
    pub fn quotient_pow(&self, alpha: f64) -> Result<TruncatedSeries> {
        self.quotient().pow_real(alpha)
    }

    /// Zero-pads a polynomial to `order`. Only meaningful when `f` is an
    /// exact polynomial rather than a truncation.
    pub fn padded(&self, order: usize) -> Self {
        Self { series: self.series.with_order(order.max(self.order())) }
    }
}

/// `L_n(f) = D^n[f^alpha] / (alpha^n z^alpha)`: with `h = (f/z)^alpha`, the
/// result has coefficients `((alpha + k)/alpha)^n h_k` and constant term 1.
pub fn salagean_normalized(f: &NormalizedFunction, params: &ClassParams) -> Result<TruncatedSeries> {
    let h = f.quotient_pow(params.alpha())?;
    Ok(h.integral_coeffwise(|k| params.operator_weight(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn binomial_square() {
        let s = TruncatedSeries::from_real(&[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(s.mul(&s).coeffs(), &[c(1.0), c(2.0), c(1.0)]);
    }

    #[test]
    fn mul_by_one_is_identity() {
        let f = TruncatedSeries::new(vec![c(0.0), c(1.0), Complex64::new(0.3, -0.2), c(4.0)]).unwrap();
        assert_eq!(f.mul(&TruncatedSeries::one(3)), f);
    }

    #[test]
    fn geometric_times_one_minus_z() {
        let n = 12;
        let one_minus_z = TruncatedSeries::from_real(&[1.0, -1.0]).unwrap().with_order(n);
        let prod = TruncatedSeries::geometric(n).mul(&one_minus_z);
        assert_eq!(prod, TruncatedSeries::one(n));
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = TruncatedSeries::geometric(7);
        let b = TruncatedSeries::geometric(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert_eq!(TruncatedSeries::new(vec![]), Err(Error::EmptySeries));
        assert_eq!(
            TruncatedSeries::from_real(&[1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        );
    }

    #[test]
    fn pow_real_binomial() {
        let g = TruncatedSeries::from_real(&[1.0, 1.0]).unwrap().with_order(4);
        let h = g.pow_real(2.0).unwrap();
        let expect = [1.0, 2.0, 1.0, 0.0, 0.0];
        for (got, want) in h.coeffs().iter().zip(expect) {
            assert!((got - c(want)).norm() < 1e-14);
        }
    }

    #[test]
    fn pow_real_low_coefficients() {
        let a2 = Complex64::new(0.4, -1.1);
        let a3 = Complex64::new(-0.7, 0.25);
        let g = TruncatedSeries::new(vec![c(1.0), a2, a3]).unwrap();
        for alpha in [0.3, 1.0, 2.5, -1.5] {
            let h = g.pow_real(alpha).unwrap();
            assert!((h.coeffs()[1] - a2 * alpha).norm() < 1e-14);
            let want = a3 * alpha + a2 * a2 * (alpha * (alpha - 1.0) / 2.0);
            assert!((h.coeffs()[2] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn pow_real_requires_unit_constant() {
        let g = TruncatedSeries::from_real(&[1.0 + 1e-15, 2.0]).unwrap();
        assert!(matches!(g.pow_real(0.5), Err(Error::NonUnitConstantTerm { .. })));
    }

    #[test]
    fn sqrt_then_square_round_trip() {
        let g = TruncatedSeries::new((0..=32).map(|k| c(k as f64 + 1.0)).collect()).unwrap();
        let back = g.pow_real(0.5).unwrap().pow_real(2.0).unwrap();
        assert!(back.max_abs_diff(&g) < 1e-10);
        let by_mul = {
            let r = g.pow_real(0.5).unwrap();
            r.mul(&r)
        };
        assert!(by_mul.max_abs_diff(&g) < 1e-10);
    }

    #[test]
    fn reciprocal_of_one_minus_z() {
        let s = TruncatedSeries::from_real(&[1.0, -1.0]).unwrap().with_order(9);
        assert_eq!(s.reciprocal().unwrap(), TruncatedSeries::geometric(9));
        assert_eq!(TruncatedSeries::zero(3).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn eval_geometric_partial_sum() {
        for n in [0usize, 1, 5, 20] {
            let s = TruncatedSeries::geometric(n);
            let got = s.eval(c(0.5));
            let want = 2.0 - 0.5f64.powi(n as i32);
            assert!((got - c(want)).norm() < 1e-15, "n = {n}");
            assert!((s.tail_bound(0.5) - 0.5f64.powi(n as i32)).abs() < 1e-15);
        }
        assert_eq!(TruncatedSeries::one(5).eval(Complex64::new(0.3, 0.4)), c(1.0));
    }

    #[test]
    fn circle_values_match_horner() {
        let s = TruncatedSeries::new(
            (0..=40).map(|k| Complex64::new((k as f64 * 0.37).sin(), 1.0 / (k as f64 + 1.0))).collect(),
        )
        .unwrap();
        // fewer points than coefficients exercises the folding
        for (r, m) in [(0.9, 256usize), (0.5, 7), (0.3, 1), (0.75, 41)] {
            let fast = s.eval_circle(r, m);
            for (j, v) in fast.iter().enumerate() {
                let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / m as f64);
                assert!((v - s.eval(z)).norm() < 1e-12, "r = {r}, m = {m}, j = {j}");
            }
        }
        assert!(s.eval_circle(0.5, 0).is_empty());
    }

    #[test]
    fn derivative_rules() {
        let z2 = TruncatedSeries::from_real(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(z2.derivative().coeffs(), &[c(0.0), c(2.0)]);
        assert_eq!(TruncatedSeries::one(0).derivative(), TruncatedSeries::zero(0));
        assert_eq!(TruncatedSeries::from_real(&[3.0]).unwrap().derivative().coeffs(), &[c(0.0)]);
        let d = TruncatedSeries::geometric(10).derivative();
        assert_eq!(d.order(), 9);
        for (k, v) in d.coeffs().iter().enumerate() {
            assert_eq!(*v, c(k as f64 + 1.0));
        }
    }

    #[test]
    fn coeffwise_weights() {
        let s = TruncatedSeries::geometric(4).integral_coeffwise(|k| 1.0 / (k as f64 + 1.0));
        assert_eq!(s.coeffs()[0], c(1.0));
        assert_eq!(s.coeffs()[3], c(0.25));
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn normalized_function_invariants() {
        assert!(NormalizedFunction::new(TruncatedSeries::from_real(&[0.0, 1.0, 3.0]).unwrap()).is_ok());
        assert_eq!(
            NormalizedFunction::new(TruncatedSeries::from_real(&[0.0, 2.0]).unwrap()),
            Err(Error::NotNormalized)
        );
        assert_eq!(
            NormalizedFunction::new(TruncatedSeries::from_real(&[0.0]).unwrap()),
            Err(Error::NotNormalized)
        );
        let f = NormalizedFunction::identity(8);
        assert_eq!(f.order(), 8);
        assert_eq!(f.quotient(), TruncatedSeries::one(7));
    }

    #[test]
    fn operator_on_identity_is_one() {
        let f = NormalizedFunction::identity(16);
        for (a, b, n) in [(0.5, 0.0, 0), (2.0, 0.3, 3), (1.0, 0.9, 7)] {
            let p = ClassParams::new(a, b, n).unwrap();
            assert_eq!(salagean_normalized(&f, &p).unwrap(), TruncatedSeries::one(15));
        }
    }

    #[test]
    fn operator_linear_coefficient() {
        let a2 = Complex64::new(0.3, 0.8);
        let f = NormalizedFunction::from_tail(&[a2, c(0.1)]).unwrap();
        let p = ClassParams::new(1.7, 0.2, 3).unwrap();
        let l = salagean_normalized(&f, &p).unwrap();
        assert_eq!(l.coeffs()[0], c(1.0));
        let alpha = 1.7f64;
        let want = a2 * (alpha * (alpha + 1.0).powi(3) / alpha.powi(3));
        assert!((l.coeffs()[1] - want).norm() < 1e-13);
    }

    #[test]
    fn operator_on_koebe_is_derivative() {
        let n = 32;
        let koebe = NormalizedFunction::new(
            TruncatedSeries::new((0..=n).map(|k| c(k as f64)).collect()).unwrap(),
        )
        .unwrap();
        let derivative = koebe.series().derivative();
        let p = ClassParams::new(1.0, 0.0, 1).unwrap();
        let l = salagean_normalized(&koebe, &p).unwrap();
        assert_eq!(l.order(), derivative.order());
        assert!(l.max_abs_diff(&derivative) < 1e-12);
        for (k, v) in l.coeffs().iter().enumerate() {
            assert_eq!(*v, c(((k + 1) * (k + 1)) as f64));
        }
    }
}
