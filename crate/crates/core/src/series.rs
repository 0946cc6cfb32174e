//! Truncated power series `z ± Σ_{n=2}^{N} a_n zⁿ` on the unit disc, with
//! Horner evaluation, the Hadamard product, the Jackson q-derivative and the
//! Ruscheweyh q-differential operator.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{basic_number, psi, ClassParams};
use crate::scalar::Scalar;

/// Which of the two normalized forms a series is stored in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// `z + Σ a_n zⁿ`
    Plus,
    /// `z - Σ a_n zⁿ` with every `a_n ≥ 0`
    Minus,
}

impl Sign {
    fn factor<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct RawSeries<T> {
    sign: Sign,
    coeffs: Vec<T>,
}

/// Normalized analytic function `f(z) = z ± Σ_{n=2}^{N} a_n zⁿ`.
///
/// `coeffs` holds `a_2, …, a_N`; the coefficient of `z` is implicitly 1.
/// Under [`Sign::Minus`] every stored coefficient is non-negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawSeries<T>",
    bound(serialize = "T: Scalar", deserialize = "T: Scalar")
)]
pub struct PowerSeries<T> {
    sign: Sign,
    coeffs: Vec<T>,
}

impl<T: Scalar> TryFrom<RawSeries<T>> for PowerSeries<T> {
    type Error = Error;

    fn try_from(raw: RawSeries<T>) -> Result<Self> {
        PowerSeries::new(raw.sign, raw.coeffs)
    }
}

impl<T: Scalar> PowerSeries<T> {
    pub fn new(sign: Sign, coeffs: Vec<T>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "coefficient a_{} is not finite",
                bad + 2
            )));
        }
        if sign == Sign::Minus {
            if let Some(bad) = coeffs.iter().position(|&c| c < T::zero()) {
                return Err(Error::InvalidSeries(format!(
                    "minus-convention coefficient a_{} is negative",
                    bad + 2
                )));
            }
        }
        Ok(Self { sign, coeffs })
    }

    /// `f(z) = z` with `trunc - 1` zero coefficients.
    pub fn identity(trunc: usize) -> Self {
        Self {
            sign: Sign::Plus,
            coeffs: vec![T::zero(); trunc.saturating_sub(1)],
        }
    }

    /// `z/(1-z)` truncated at order `trunc`: every `a_n = 1`.
    pub fn geometric(trunc: usize) -> Self {
        Self {
            sign: Sign::Plus,
            coeffs: vec![T::one(); trunc.saturating_sub(1)],
        }
    }

    /// `z ± c zⁿ`, padded to order `trunc`.
    pub fn monomial(sign: Sign, n: usize, c: T, trunc: usize) -> Result<Self> {
        if n < 2 || n > trunc {
            return Err(Error::IndexOutOfRange { n, max: trunc });
        }
        let mut coeffs = vec![T::zero(); trunc - 1];
        coeffs[n - 2] = c;
        Self::new(sign, coeffs)
    }

    /// Builds the series from Taylor coefficients `t_2, …, t_N` (the leading
    /// coefficient of `z` must be 1 and is not passed). Prefers the minus form
    /// whenever it is admissible and `prefer` asks for it.
    pub fn from_taylor(taylor: Vec<T>, prefer: Sign) -> Self {
        let all_nonpositive = taylor.iter().all(|&t| t <= T::zero());
        if prefer == Sign::Minus && all_nonpositive {
            Self {
                sign: Sign::Minus,
                coeffs: taylor.into_iter().map(|t| -t).collect(),
            }
        } else {
            Self {
                sign: Sign::Plus,
                coeffs: taylor,
            }
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Stored magnitudes `a_2, …, a_N`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Truncation order `N` (index of the highest stored coefficient).
    pub fn trunc(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// Stored coefficient `a_n`; zero beyond the truncation order and 1 at `n = 1`.
    pub fn coeff(&self, n: usize) -> T {
        match n {
            0 => T::zero(),
            1 => T::one(),
            _ => self.coeffs.get(n - 2).copied().unwrap_or_else(T::zero),
        }
    }

    /// Taylor coefficient of `zⁿ`, sign convention applied.
    pub fn taylor_coeff(&self, n: usize) -> T {
        if n <= 1 {
            return self.coeff(n);
        }
        self.sign.factor::<T>() * self.coeff(n)
    }

    /// Full Taylor coefficient vector `[0, 1, t_2, …, t_N]`.
    pub fn taylor(&self) -> Vec<T> {
        (0..=self.trunc()).map(|n| self.taylor_coeff(n)).collect()
    }

    /// Copy padded with zeros (never shortened) to order `trunc`.
    pub fn padded(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < trunc.saturating_sub(1) {
            coeffs.resize(trunc - 1, T::zero());
        }
        Self {
            sign: self.sign,
            coeffs,
        }
    }

    /// Copy with trailing zero coefficients removed.
    pub fn trimmed(&self) -> Self {
        let len = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1);
        Self {
            sign: self.sign,
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    /// `f(z)` for `|z| < 1`.
    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        check_in_disc(z)?;
        Ok(self.eval(z))
    }

    /// Horner evaluation without the disc check.
    pub(crate) fn eval(&self, z: Complex<T>) -> Complex<T> {
        z * self.eval_over_z(z)
    }

    /// `f(z)/z = 1 ± Σ a_n z^{n-1}`, analytic at the origin.
    pub(crate) fn eval_over_z(&self, z: Complex<T>) -> Complex<T> {
        let s = self.sign.factor::<T>();
        let tail = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &a| {
                acc * z + s * a
            });
        tail * z + T::one()
    }
}

pub(crate) fn check_in_disc<T: Scalar>(z: Complex<T>) -> Result<()> {
    let m = z.norm();
    if m >= T::one() || m.is_nan() {
        return Err(Error::OutsideDisc {
            modulus: m.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Point `z = r e^{iθ}` of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscPoint<T> {
    r: T,
    theta: T,
}

impl<T: Scalar> DiscPoint<T> {
    /// `theta` is reduced into `[0, 2π)`.
    pub fn new(r: T, theta: T) -> Result<Self> {
        if !(r >= T::zero() && r < T::one()) {
            return Err(Error::param("r", r, "must lie in [0,1)"));
        }
        if !theta.is_finite() {
            return Err(Error::param("theta", theta, "must be finite"));
        }
        let tau = T::TAU();
        let mut theta = theta % tau;
        if theta < T::zero() {
            theta = theta + tau;
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn to_complex(&self) -> Complex<T> {
        Complex::from_polar(self.r, self.theta)
    }
}

/// Finite Taylor sequence `Σ_{m≥0} c_m z^m` (constant term included), the
/// shape of `D_q f` and of the Schwarz witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffSeq<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CoeffSeq<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `z^m`, zero past the end.
    pub fn coeff(&self, m: usize) -> T {
        self.coeffs.get(m).copied().unwrap_or_else(T::zero)
    }

    /// Evaluation anywhere in the plane (the sequence is a polynomial).
    pub fn evaluate(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }
}

/// Jackson q-derivative in coefficient form: `D_q f(z) = 1 ± Σ [n] a_n z^{n-1}`.
pub fn q_derivative<T: Scalar>(f: &PowerSeries<T>, q: T) -> CoeffSeq<T> {
    let coeffs = (1..=f.trunc())
        .map(|n| basic_number(n, q) * f.taylor_coeff(n))
        .collect();
    CoeffSeq::new(coeffs)
}

/// Jackson difference quotient `(f(z) - f(qz)) / ((1-q) z)`, with `f'(0) = 1`
/// at the origin.
pub fn jackson_quotient<T: Scalar>(f: &PowerSeries<T>, q: T, z: Complex<T>) -> Result<Complex<T>> {
    check_in_disc(z)?;
    if z.norm_sqr().is_zero() {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    Ok((f.eval(z) - f.eval(z * q)) / (z * (T::one() - q)))
}

/// Coefficient-wise (Hadamard) product. The shorter operand is zero-padded.
pub fn hadamard<T: Scalar>(f: &PowerSeries<T>, g: &PowerSeries<T>) -> PowerSeries<T> {
    let trunc = f.trunc().max(g.trunc());
    let sign = f.sign.times(g.sign);
    let coeffs: Vec<T> = (2..=trunc).map(|n| f.coeff(n) * g.coeff(n)).collect();
    if sign == Sign::Minus && coeffs.iter().any(|&c| c < T::zero()) {
        PowerSeries::from_taylor(coeffs.into_iter().map(|c| -c).collect(), Sign::Plus)
    } else {
        PowerSeries { sign, coeffs }
    }
}

/// Kernel `F_{q,λ+1}(z) = z + Σ Ψ_q(n, λ) zⁿ` of the Ruscheweyh operator.
pub fn ruscheweyh_kernel<T: Scalar>(params: &ClassParams<T>) -> PowerSeries<T> {
    kernel_to(params, params.trunc())
}

fn kernel_to<T: Scalar>(params: &ClassParams<T>, trunc: usize) -> PowerSeries<T> {
    let coeffs = (2..=trunc)
        .map(|n| psi(n, params.lambda(), params.q()))
        .collect();
    PowerSeries {
        sign: Sign::Plus,
        coeffs,
    }
}

/// `R^λ_q f = f * F_{q,λ+1}`: coefficients `Ψ_q(n, λ) a_n`.
pub fn ruscheweyh<T: Scalar>(f: &PowerSeries<T>, params: &ClassParams<T>) -> PowerSeries<T> {
    let kernel = kernel_to(params, f.trunc().max(params.trunc()));
    hadamard(f, &kernel)
}

/// `D_q(R^λ_q f)`: coefficient of `z^{n-1}` is `[n] Ψ_q(n, λ) a_n`.
pub fn ruscheweyh_q_derivative<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
) -> CoeffSeq<T> {
    q_derivative(&ruscheweyh(f, params), params.q())
}
