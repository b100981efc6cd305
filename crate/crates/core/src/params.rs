use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(alpha, beta, n)` selecting one class `T_n^alpha(beta)`.
///
/// `alpha > 0`, `0 <= beta < 1`. `beta = 1` is rejected: the only function
/// whose operator image has real part `>= 1` and value 1 at the origin is the
/// identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ClassParams {
    alpha: f64,
    beta: f64,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    alpha: f64,
    beta: f64,
    n: u32,
}

impl TryFrom<RawParams> for ClassParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ClassParams::new(raw.alpha, raw.beta, raw.n)
    }
}

impl From<ClassParams> for RawParams {
    fn from(p: ClassParams) -> Self {
        RawParams { alpha: p.alpha, beta: p.beta, n: p.n }
    }
}

impl ClassParams {
    pub fn new(alpha: f64, beta: f64, n: u32) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
            return Err(Error::InvalidParams(format!("beta must lie in [0, 1), got {beta}")));
        }
        Ok(Self { alpha, beta, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.alpha, beta, self.n)
    }

    pub fn with_n(&self, n: u32) -> Self {
        Self { n, ..*self }
    }

    /// Factor `((alpha + k) / alpha)^n` that the normalized operator applies to
    /// coefficient `k` of `(f/z)^alpha`.
    pub fn operator_weight(&self, k: usize) -> f64 {
        ((self.alpha + k as f64) / self.alpha).powi(self.n as i32)
    }

    /// `alpha^n`, the factor between the normalized operator and `D^n[f^alpha] / z^alpha`.
    pub fn alpha_pow_n(&self) -> f64 {
        self.alpha.powi(self.n as i32)
    }
}

impl std::fmt::Display for ClassParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T_{}^{}({})", self.n, self.alpha, self.beta)
    }
}
