//! q-arithmetic: basic numbers, q-factorials, q-Pochhammer symbols and the
//! coefficient functionals `Ψ_q(n, λ)` and `Φ_n(λ, α, k)`.
//!
//! Ratios of q-gamma values only ever enter through the product
//! `[λ+1]_{n-1} / [n-1]!`, so `Γ_q` itself is never evaluated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest admissible `q`; the largest is `1 - Q_MARGIN`.
pub const Q_MARGIN: f64 = 1e-6;

/// The `q` used to probe classical (`q → 1⁻`) limits.
pub const Q_NEAR_ONE: f64 = 1.0 - Q_MARGIN;

/// Default series truncation order `N`.
pub const DEFAULT_TRUNC: usize = 64;

/// Parameters `(q, λ, α, k)` of the class together with the truncation order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassParams<T> {
    q: T,
    lambda: T,
    alpha: T,
    k: T,
    trunc: usize,
}

impl<T: Scalar> ClassParams<T> {
    /// Validated constructor with the default truncation order.
    pub fn new(q: T, lambda: T, alpha: T, k: T) -> Result<Self> {
        Self::with_trunc(q, lambda, alpha, k, DEFAULT_TRUNC)
    }

    pub fn with_trunc(q: T, lambda: T, alpha: T, k: T, trunc: usize) -> Result<Self> {
        let lo = T::lit(Q_MARGIN);
        let hi = T::lit(Q_NEAR_ONE);
        if !(q >= lo && q <= hi) {
            return Err(Error::param(
                "q",
                q,
                "must lie in (0,1), within [1e-6, 1-1e-6]",
            ));
        }
        if lambda <= -T::one() || !lambda.is_finite() {
            return Err(Error::param("lambda", lambda, "must be finite and > -1"));
        }
        if !(alpha >= T::zero() && alpha < T::one()) {
            return Err(Error::param("alpha", alpha, "must lie in [0,1)"));
        }
        if k < T::zero() || !k.is_finite() {
            return Err(Error::param("k", k, "must be finite and >= 0"));
        }
        if trunc < 2 {
            return Err(Error::param("trunc", trunc, "must be >= 2"));
        }
        Ok(Self {
            q,
            lambda,
            alpha,
            k,
            trunc,
        })
    }

    pub fn q(&self) -> T {
        self.q
    }
    pub fn lambda(&self) -> T {
        self.lambda
    }
    pub fn alpha(&self) -> T {
        self.alpha
    }
    pub fn k(&self) -> T {
        self.k
    }
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient budget `1 - α` of the membership criterion.
    pub fn budget(&self) -> T {
        T::one() - self.alpha
    }

    /// Same parameters, different truncation order.
    pub fn retruncated(&self, trunc: usize) -> Result<Self> {
        Self::with_trunc(self.q, self.lambda, self.alpha, self.k, trunc)
    }
}

/// Basic number `[n] = (1 - qⁿ)/(1 - q) = 1 + q + … + q^{n-1}`; `[0] = 0`.
pub fn basic_number<T: Scalar>(n: usize, q: T) -> T {
    (0..n).fold(T::zero(), |acc, _| acc * q + T::one())
}

/// Generalized basic number `[t] = (1 - q^t)/(1 - q)` for real `t`.
///
/// Non-negative integral `t` is routed through [`basic_number`] so that the
/// integer and real forms agree bit for bit.
pub fn basic_number_real<T: Scalar>(t: T, q: T) -> T {
    if t >= T::zero() && t.fract() == T::zero() && t < T::lit(1e6) {
        if let Some(n) = t.to_usize() {
            return basic_number(n, q);
        }
    }
    -(t * q.ln()).exp_m1() / (T::one() - q)
}

/// q-factorial `[n]! = [1][2]…[n]`, with `[0]! = 1`.
pub fn q_factorial<T: Scalar>(n: usize, q: T) -> T {
    (1..=n).fold(T::one(), |acc, j| acc * basic_number(j, q))
}

/// q-Pochhammer symbol `[t]_n = [t][t+1]…[t+n-1]`, with `[t]_0 = 1`.
pub fn q_pochhammer<T: Scalar>(t: T, n: usize, q: T) -> T {
    (0..n).fold(T::one(), |acc, j| {
        acc * basic_number_real(t + T::from_index(j), q)
    })
}

/// `Ψ_q(n, λ) = [λ+1]_{n-1} / [n-1]!`, the n-th coefficient of the
/// Ruscheweyh kernel. `n = 1` gives the leading coefficient 1.
///
/// Evaluated as the running product of `[λ+j]/[j]` for `j = 1..n-1`, which
/// keeps intermediate values O(1) and makes `λ = 0` exactly 1.
pub fn psi<T: Scalar>(n: usize, lambda: T, q: T) -> T {
    debug_assert!(n >= 1, "psi is defined for n >= 1");
    (1..n).fold(T::one(), |acc, j| {
        acc * (basic_number_real(lambda + T::from_index(j), q) / basic_number(j, q))
    })
}

/// `Φ_n(λ, α, k) = ([n](1+k) - k - α) Ψ_q(n, λ)`.
pub fn phi<T: Scalar>(n: usize, params: &ClassParams<T>) -> T {
    let bn = basic_number(n, params.q);
    (bn * (T::one() + params.k) - params.k - params.alpha) * psi(n, params.lambda, params.q)
}
