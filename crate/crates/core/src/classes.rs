//! Membership machinery for the class `ST^λ_q(k, α)`: the sufficient
//! coefficient test, sampling of the defining analytic criterion, the sharp
//! extremal functions and a seeded sampler of certified members.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{phi, ClassParams};
use crate::scalar::{min_of, Scalar};
use crate::series::{q_derivative, ruscheweyh, DiscPoint, PowerSeries, Sign};

/// Below this modulus `R^λ_q f(z)` is treated as zero.
pub const DEGENERATE_THRESHOLD: f64 = 1e-14;

/// Outcome of the coefficient test. The test is only sufficient, so a failure
/// says nothing about non-membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    SufficientPass,
    SufficientFail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermContribution<T> {
    pub n: usize,
    pub phi: T,
    pub contribution: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport<T> {
    /// `Σ Φ_n |a_n|`
    pub coefficient_sum: T,
    /// `1 - α`
    pub budget: T,
    /// `budget - coefficient_sum`
    pub margin: T,
    /// Contributions of the non-zero coefficients, in increasing `n`.
    pub per_term: Vec<TermContribution<T>>,
    pub verdict: Verdict,
}

impl<T: Scalar> MembershipReport<T> {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::SufficientPass
    }
}

/// Evaluates `Σ_{n=2}^{N} Φ_n(λ, α, k) |a_n| ≤ 1 - α`.
pub fn coefficient_test<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
) -> MembershipReport<T> {
    let per_term: Vec<TermContribution<T>> = (2..=f.trunc())
        .filter(|&n| !f.coeff(n).is_zero())
        .map(|n| {
            let phi_n = phi(n, params);
            TermContribution {
                n,
                phi: phi_n,
                contribution: phi_n * f.coeff(n).abs(),
            }
        })
        .collect();
    let coefficient_sum = per_term
        .iter()
        .fold(T::zero(), |acc, t| acc + t.contribution);
    let budget = params.budget();
    let margin = budget - coefficient_sum;
    let verdict = if margin >= T::zero() {
        Verdict::SufficientPass
    } else {
        Verdict::SufficientFail
    };
    MembershipReport {
        coefficient_sum,
        budget,
        margin,
        per_term,
        verdict,
    }
}

/// Extremal function `f_n(z) = z - (1-α)/Φ_n zⁿ`, padded to `params.trunc()`.
pub fn extremal_function<T: Scalar>(n: usize, params: &ClassParams<T>) -> Result<PowerSeries<T>> {
    if n < 2 || n > params.trunc() {
        return Err(Error::IndexOutOfRange {
            n,
            max: params.trunc(),
        });
    }
    let phi_n = phi(n, params);
    let mut a = params.budget() / phi_n;
    // keep Φ_n a_n ≤ 1 - α after rounding so the function is certified
    let shrink = T::one() - T::epsilon();
    while phi_n * a > params.budget() {
        a = a * shrink;
    }
    PowerSeries::monomial(Sign::Minus, n, a, params.trunc())
}

/// `W(z) = z D_q(R^λ_q f)(z) / R^λ_q f(z)`.
fn criterion_ratio<T: Scalar>(rf: &PowerSeries<T>, q: T, z: Complex<T>) -> Result<Complex<T>> {
    if z.norm_sqr().is_zero() {
        // both numerator and denominator vanish like z; the limit is D_q(Rf)(0)/1
        return Ok(Complex::new(T::one(), T::zero()));
    }
    let over_z = rf.eval_over_z(z);
    let modulus = over_z.norm() * z.norm();
    if modulus < T::lit(DEGENERATE_THRESHOLD) {
        return Err(Error::Degenerate {
            modulus: modulus.to_f64().unwrap_or(0.0),
            re: z.re.to_f64().unwrap_or(f64::NAN),
            im: z.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(q_derivative(rf, q).evaluate(z) / over_z)
}

fn margin_of<T: Scalar>(w: Complex<T>, params: &ClassParams<T>) -> T {
    let one = Complex::new(T::one(), T::zero());
    (w.re - params.alpha()) - params.k() * (w - one).norm()
}

/// `Re(W - α) - k |W - 1|` at `z`; positive where the defining inequality holds.
pub fn analytic_criterion_margin<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
    z: DiscPoint<T>,
) -> Result<T> {
    let rf = ruscheweyh(f, params);
    Ok(margin_of(
        criterion_ratio(&rf, params.q(), z.to_complex())?,
        params,
    ))
}

/// Polar sampling grid: every radius crossed with equally spaced angles
/// `2πj / angles`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscGrid<T> {
    radii: Vec<T>,
    angles: usize,
}

impl<T: Scalar> DiscGrid<T> {
    pub fn new(radii: Vec<T>, angles: usize) -> Result<Self> {
        if angles == 0 {
            return Err(Error::param("angles", angles, "must be positive"));
        }
        if let Some(&r) = radii.iter().find(|&&r| !(r >= T::zero() && r < T::one())) {
            return Err(Error::param("r", r, "must lie in [0,1)"));
        }
        Ok(Self { radii, angles })
    }

    /// Radii 0.1, 0.2, …, 0.9 with 64 angles.
    pub fn criterion_default() -> Self {
        Self {
            radii: (1..=9).map(|i| T::from_index(i) / T::lit(10.0)).collect(),
            angles: 64,
        }
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn points(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        let step = T::TAU() / T::from_index(self.angles);
        self.radii.iter().flat_map(move |&r| {
            (0..self.angles).map(move |j| Complex::from_polar(r, step * T::from_index(j)))
        })
    }
}

/// Minimum of [`analytic_criterion_margin`] over a grid. The Ruscheweyh image
/// and its q-derivative are built once.
pub fn criterion_grid_min<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
    grid: &DiscGrid<T>,
) -> Result<T> {
    let rf = ruscheweyh(f, params);
    let drf = q_derivative(&rf, params.q());
    let mut margins = Vec::with_capacity(grid.radii().len() * grid.angles());
    for z in grid.points() {
        let w = if z.norm_sqr().is_zero() {
            Complex::new(T::one(), T::zero())
        } else {
            let over_z = rf.eval_over_z(z);
            let modulus = over_z.norm() * z.norm();
            if modulus < T::lit(DEGENERATE_THRESHOLD) {
                return Err(Error::Degenerate {
                    modulus: modulus.to_f64().unwrap_or(0.0),
                    re: z.re.to_f64().unwrap_or(f64::NAN),
                    im: z.im.to_f64().unwrap_or(f64::NAN),
                });
            }
            drf.evaluate(z) / over_z
        };
        margins.push(margin_of(w, params));
    }
    Ok(min_of(margins))
}

/// Seeded certified member: a minus-form series with
/// `Σ Φ_n a_n = density · (1 - α)`, so the coefficient test always passes.
///
/// Each index `2..=trunc` is kept with probability `density` (at least one is
/// always kept) and given a magnitude uniform in `(0, 1)` before rescaling.
pub fn random_member<T: Scalar>(
    params: &ClassParams<T>,
    seed: u64,
    density: T,
) -> Result<PowerSeries<T>> {
    if !(density > T::zero() && density <= T::one()) {
        return Err(Error::param("density", density, "must lie in (0,1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keep_p = density.to_f64().unwrap_or(1.0);
    let len = params.trunc() - 1;
    let mut raw: Vec<f64> = (0..len)
        .map(|_| {
            let keep = rng.gen_bool(keep_p);
            let mag: f64 = rng.gen_range(f64::EPSILON..1.0);
            if keep {
                mag
            } else {
                0.0
            }
        })
        .collect();
    if raw.iter().all(|&a| a == 0.0) {
        let idx = rng.gen_range(0..len);
        raw[idx] = rng.gen_range(f64::EPSILON..1.0);
    }
    let raw: Vec<T> = raw.into_iter().map(T::lit).collect();
    let weighted = raw
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &a)| acc + phi(i + 2, params) * a);
    let scale = density * params.budget() / weighted;
    let mut f = PowerSeries::new(Sign::Minus, raw.into_iter().map(|a| a * scale).collect())?;
    // rounding can leave the sum a few ulps above the budget at density 1
    let shrink = T::one() - T::lit(4.0) * T::epsilon();
    while !coefficient_test(&f, params).passed() {
        f = PowerSeries::new(
            Sign::Minus,
            f.coeffs().iter().map(|&a| a * shrink).collect(),
        )?;
    }
    Ok(f)
}
