//! Numerical checks of the integral-means inequality and the subordination
//! results: circle quadrature, the explicit Schwarz witness, Wilf positivity,
//! the sharp subordination constant and its extremal real-part minimum.

use num_complex::Complex;
use serde::Serialize;

use crate::classes::{coefficient_test, extremal_function, DiscGrid};
use crate::error::{Error, Result};
use crate::qcore::{phi, ClassParams};
use crate::scalar::{min_of, pairwise_sum, Scalar};
use crate::series::{CoeffSeq, PowerSeries, Sign};

/// Multiplicative slack allowed on the right-hand side of the integral-means
/// inequality.
pub const INTEGRAL_MEANS_SLACK: f64 = 1e-9;

/// Angles used by [`sharpness_minimum`].
pub const SHARPNESS_ANGLES: usize = 4096;

/// Relative slack on the Schwarz-lemma containment `|w(z)| ≤ |z|`.
pub const CONTAINMENT_TOL: f64 = 1e-10;

/// Uniform trapezoidal rule on the circle `|z| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig<T> {
    nodes: usize,
    r: T,
    eta: T,
}

impl<T: Scalar> QuadratureConfig<T> {
    pub fn new(nodes: usize, r: T, eta: T) -> Result<Self> {
        if nodes < 16 || !nodes.is_power_of_two() {
            return Err(Error::param("nodes", nodes, "must be a power of two >= 16"));
        }
        if !(r > T::zero() && r < T::one()) {
            return Err(Error::param("r", r, "must lie in (0,1)"));
        }
        if eta <= T::zero() || !eta.is_finite() {
            return Err(Error::param("eta", eta, "must be finite and > 0"));
        }
        Ok(Self { nodes, r, eta })
    }

    /// Node count `max(256, 4 N)` rounded up to a power of two.
    pub fn default_nodes(trunc: usize) -> usize {
        (4 * trunc).max(256).next_power_of_two()
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }
    pub fn r(&self) -> T {
        self.r
    }
    pub fn eta(&self) -> T {
        self.eta
    }
}

/// `∫₀^{2π} |g(r e^{iθ})|^η dθ` for an arbitrary map `g`.
pub fn circle_mean<T: Scalar>(
    g: impl Fn(Complex<T>) -> Complex<T>,
    cfg: &QuadratureConfig<T>,
) -> T {
    let step = T::TAU() / T::from_index(cfg.nodes);
    let half_eta = cfg.eta / T::lit(2.0);
    let samples: Vec<T> = (0..cfg.nodes)
        .map(|j| {
            let z = Complex::from_polar(cfg.r, step * T::from_index(j));
            g(z).norm_sqr().powf(half_eta)
        })
        .collect();
    pairwise_sum(&samples) * step
}

/// Integral mean `∫₀^{2π} |f(r e^{iθ})|^η dθ` of a series.
pub fn integral_means<T: Scalar>(f: &PowerSeries<T>, cfg: &QuadratureConfig<T>) -> T {
    circle_mean(|z| f.eval(z), cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralMeansCheck<T> {
    pub r: T,
    pub eta: T,
    /// Integral mean of the tested function.
    pub lhs: T,
    /// Integral mean of the extremal `f₂`.
    pub rhs: T,
    /// `rhs - lhs`
    pub margin: T,
    /// Whether the coefficient test certified the hypothesis.
    pub hypothesis_certified: bool,
    /// `lhs ≤ rhs (1 + INTEGRAL_MEANS_SLACK)`
    pub holds: bool,
}

/// Compares the integral mean of `f` with that of `f₂ = extremal_function(2)`.
///
/// The comparison is always computed; `hypothesis_certified` is false when
/// the coefficient test does not certify `f`, in which case a violation is
/// not a counterexample.
pub fn verify_integral_means<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralMeansCheck<T>> {
    let f2 = extremal_function(2, params)?;
    let lhs = integral_means(f, cfg);
    let rhs = integral_means(&f2, cfg);
    Ok(IntegralMeansCheck {
        r: cfg.r,
        eta: cfg.eta,
        lhs,
        rhs,
        margin: rhs - lhs,
        hypothesis_certified: coefficient_test(f, params).passed(),
        holds: lhs <= rhs * (T::one() + T::lit(INTEGRAL_MEANS_SLACK)),
    })
}

/// Runs [`verify_integral_means`] over every `(r, η)` pair, radii outermost.
pub fn integral_means_sweep<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
    radii: &[T],
    etas: &[T],
    nodes: usize,
) -> Result<Vec<IntegralMeansCheck<T>>> {
    let mut rows = Vec::with_capacity(radii.len() * etas.len());
    for &r in radii {
        for &eta in etas {
            let cfg = QuadratureConfig::new(nodes, r, eta)?;
            rows.push(verify_integral_means(f, params, &cfg)?);
        }
    }
    Ok(rows)
}

/// Schwarz function `w(z) = Φ₂/(1-α) Σ_{n≥2} a_n z^{n-1}` realizing
/// `1 - Σ a_n z^{n-1} = 1 - (1-α)/Φ₂ · w(z)`.
///
/// Bounding `|w(z)| ≤ |z|` for certified members needs `Φ_n ≥ Φ₂`, which
/// holds for `λ ≥ 0`.
pub fn schwarz_witness<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
) -> Result<CoeffSeq<T>> {
    if f.sign() != Sign::Minus {
        return Err(Error::InvalidSeries(
            "the Schwarz witness is defined for minus-convention series".into(),
        ));
    }
    let scale = phi(2, params) / params.budget();
    let mut coeffs = Vec::with_capacity(f.trunc());
    coeffs.push(T::zero());
    coeffs.extend(f.coeffs().iter().map(|&a| scale * a));
    Ok(CoeffSeq::new(coeffs))
}

/// Grid minimum of `Re(1 + 2 Σ_{n≥1} b_n zⁿ)`; `b[0]` is `b_1`.
pub fn wilf_positivity<T: Scalar>(b: &[T], grid: &DiscGrid<T>) -> T {
    let mut coeffs = Vec::with_capacity(b.len() + 1);
    coeffs.push(T::zero());
    coeffs.extend_from_slice(b);
    let series = CoeffSeq::new(coeffs);
    let two = T::lit(2.0);
    min_of(
        grid.points()
            .map(|z| T::one() + two * series.evaluate(z).re),
    )
}

/// Sharp factor `Φ₂ / (2 (1 - α + Φ₂))`.
pub fn subordination_constant<T: Scalar>(params: &ClassParams<T>) -> T {
    let phi2 = phi(2, params);
    phi2 / (T::lit(2.0) * (params.budget() + phi2))
}

/// Lower bound `-(1 - α + Φ₂) / Φ₂` on `Re f` for members of the class.
pub fn realpart_bound<T: Scalar>(params: &ClassParams<T>) -> T {
    let phi2 = phi(2, params);
    -(params.budget() + phi2) / phi2
}

/// `min_θ Re(c F(r e^{iθ}))` over [`SHARPNESS_ANGLES`] angles, where
/// `F(z) = z - (1-α)/Φ₂ z²` and `c` is the subordination constant.
/// Tends to `-1/2` as `r → 1⁻`.
pub fn sharpness_minimum<T: Scalar>(params: &ClassParams<T>, r: T) -> Result<T> {
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::param("r", r, "must lie in (0,1)"));
    }
    let c = subordination_constant(params);
    let a2 = params.budget() / phi(2, params);
    let step = T::TAU() / T::from_index(SHARPNESS_ANGLES);
    Ok(min_of((0..SHARPNESS_ANGLES).map(|j| {
        let z = Complex::from_polar(r, step * T::from_index(j));
        (z - z * z * a2).re * c
    })))
}

/// Minimum of `Re f` over a grid.
pub fn realpart_minimum<T: Scalar>(f: &PowerSeries<T>, grid: &DiscGrid<T>) -> T {
    min_of(grid.points().map(|z| f.eval(z).re))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubordinationReport<T> {
    /// `Φ₂ / (2 (1 - α + Φ₂))`
    pub constant: T,
    /// `-(1 - α + Φ₂) / Φ₂`
    pub realpart_bound: T,
    /// Sampled minimum of `Re f` for the supplied member.
    pub realpart_min: T,
    /// Grid minimum of `Re(1 + 2 Σ c a_n zⁿ)`.
    pub wilf_min: T,
    /// `min_θ Re(c F(r e^{iθ}))` at the probed radius.
    pub sharpness_min: T,
}

impl<T: Scalar> SubordinationReport<T> {
    /// All sampled consequences hold.
    pub fn verified(&self) -> bool {
        self.wilf_min > T::zero()
            && self.realpart_min > self.realpart_bound
            && self.sharpness_min >= T::lit(-0.5 - 1e-9)
    }
}

/// Collects the subordination quantities for a member `f`.
pub fn subordination_report<T: Scalar>(
    f: &PowerSeries<T>,
    params: &ClassParams<T>,
    grid: &DiscGrid<T>,
    sharpness_r: T,
) -> Result<SubordinationReport<T>> {
    let constant = subordination_constant(params);
    let b: Vec<T> = (1..=f.trunc())
        .map(|n| constant * f.taylor_coeff(n))
        .collect();
    Ok(SubordinationReport {
        constant,
        realpart_bound: realpart_bound(params),
        realpart_min: realpart_minimum(f, grid),
        wilf_min: wilf_positivity(&b, grid),
        sharpness_min: sharpness_minimum(params, sharpness_r)?,
    })
}

/// Comparison function `g` in a subordination check `g_sub ≺ g`.
#[derive(Debug, Clone, PartialEq)]
pub enum ComparisonMap<T> {
    /// `g(z) = z/(1-z)`, inverse `w = G/(1+G)`.
    Geometric,
    /// Arbitrary series; no inverse is available.
    Series(PowerSeries<T>),
}

impl<T: Scalar> ComparisonMap<T> {
    pub fn evaluate(&self, z: Complex<T>) -> Complex<T> {
        match self {
            ComparisonMap::Geometric => z / (Complex::new(T::one(), T::zero()) - z),
            ComparisonMap::Series(g) => g.eval(z),
        }
    }

    pub fn inverse(&self, value: Complex<T>) -> Option<Complex<T>> {
        match self {
            ComparisonMap::Geometric => Some(value / (value + T::one())),
            ComparisonMap::Series(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusEvidence<T> {
    pub r: T,
    /// Largest `|g⁻¹(g_sub(z))|` on the circle `|z| = r`.
    pub max_preimage: T,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubordinationEvidence<T> {
    pub origin_match: bool,
    pub per_radius: Vec<RadiusEvidence<T>>,
    pub pass: bool,
}

/// Checks necessary consequences of `g_sub ≺ g` on a grid: `g_sub(0) = g(0)`
/// and, on every sampled circle `|z| = r`, `g_sub(z) ∈ g(|ζ| ≤ r)`, tested as
/// `|g⁻¹(g_sub(z))| ≤ r`.
pub fn check_subordination<T: Scalar>(
    g_sub: impl Fn(Complex<T>) -> Complex<T>,
    g: &ComparisonMap<T>,
    grid: &DiscGrid<T>,
) -> Result<SubordinationEvidence<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    if g.inverse(zero).is_none() {
        return Err(Error::UnsupportedComparison);
    }
    let tol = T::lit(CONTAINMENT_TOL);
    let origin_match = (g_sub(zero) - g.evaluate(zero)).norm() <= tol;
    let step = T::TAU() / T::from_index(grid.angles());
    let per_radius: Vec<RadiusEvidence<T>> = grid
        .radii()
        .iter()
        .map(|&r| {
            let max_preimage = (0..grid.angles())
                .map(|j| {
                    let z = Complex::from_polar(r, step * T::from_index(j));
                    g.inverse(g_sub(z)).map_or(T::infinity(), |w| w.norm())
                })
                .fold(
                    T::zero(),
                    |acc, m| if m.is_nan() { T::nan() } else { acc.max(m) },
                );
            RadiusEvidence {
                r,
                max_preimage,
                pass: max_preimage <= r * (T::one() + tol) + T::lit(1e-14),
            }
        })
        .collect();
    let pass = origin_match && per_radius.iter().all(|e| e.pass);
    Ok(SubordinationEvidence {
        origin_match,
        per_radius,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::random_member;
    use crate::qcore::Q_NEAR_ONE;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn p(q: f64, lambda: f64, alpha: f64, k: f64) -> ClassParams<f64> {
        ClassParams::with_trunc(q, lambda, alpha, k, 16).unwrap()
    }

    fn cfg(nodes: usize, r: f64, eta: f64) -> QuadratureConfig<f64> {
        QuadratureConfig::new(nodes, r, eta).unwrap()
    }

    fn minus(coeffs: &[f64]) -> PowerSeries<f64> {
        PowerSeries::new(Sign::Minus, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn quadrature_config_validation() {
        assert!(QuadratureConfig::new(8, 0.5, 1.0).is_err());
        assert!(QuadratureConfig::new(100, 0.5, 1.0).is_err());
        assert!(QuadratureConfig::new(64, 1.0, 1.0).is_err());
        assert!(QuadratureConfig::new(64, 0.0, 1.0).is_err());
        assert!(QuadratureConfig::new(64, 0.5, 0.0).is_err());
        assert_eq!(QuadratureConfig::<f64>::default_nodes(64), 256);
        assert_eq!(QuadratureConfig::<f64>::default_nodes(100), 512);
    }

    #[test]
    fn integral_means_examples() {
        let id = PowerSeries::<f64>::identity(8);
        assert_relative_eq!(
            integral_means(&id, &cfg(256, 0.5, 2.0)),
            TAU * 0.25,
            max_relative = 1e-14
        );

        let f = minus(&[0.5]);
        let parseval = TAU * (0.25 + 0.25 * 0.0625);
        assert!((integral_means(&f, &cfg(256, 0.5, 2.0)) - parseval).abs() < 1e-8);
        assert!((parseval - 1.6690).abs() < 1e-4);

        let a = integral_means(&f, &cfg(2048, 0.9, 1.0));
        let b = integral_means(&f, &cfg(4096, 0.9, 1.0));
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn parseval_and_self_convergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = 64;
            let coeffs: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = PowerSeries::new(Sign::Plus, coeffs.clone()).unwrap();
            for &r in &[0.3f64, 0.6, 0.95] {
                let oracle = TAU
                    * (r * r
                        + coeffs
                            .iter()
                            .enumerate()
                            .map(|(i, a)| a * a * r.powi(2 * (i as i32 + 2)))
                            .sum::<f64>());
                let q = integral_means(&f, &cfg(4 * n, r, 2.0));
                assert_relative_eq!(q, oracle, max_relative = 1e-8);
                let coarse = integral_means(&f, &cfg(256, r, 2.0));
                let fine = integral_means(&f, &cfg(512, r, 2.0));
                assert!((coarse - fine).abs() < 1e-10 * fine);
            }
        }
        // non-integer exponents need a zero-free integrand: use certified members
        let params = ClassParams::with_trunc(0.5, 1.0, 0.2, 1.0, 64).unwrap();
        for seed in 0..10 {
            let f = random_member(&params, seed, 1.0).unwrap();
            for &eta in &[0.5, 1.5, 3.0] {
                let coarse = integral_means(&f, &cfg(256, 0.95, eta));
                let fine = integral_means(&f, &cfg(512, 0.95, eta));
                assert!(
                    (coarse - fine).abs() < 1e-10 * fine,
                    "seed={seed} eta={eta}"
                );
            }
        }
    }

    #[test]
    fn verify_integral_means_examples() {
        let params = p(0.5, 1.0, 0.2, 1.0);
        let f2 = extremal_function(2, &params).unwrap();
        let c = cfg(256, 0.7, 1.3);
        let check = verify_integral_means(&f2, &params, &c).unwrap();
        assert_eq!(check.lhs, check.rhs);
        assert!(check.holds && check.hypothesis_certified);

        let check = verify_integral_means(&PowerSeries::identity(16), &params, &cfg(256, 0.5, 2.0))
            .unwrap();
        let a2 = f2.coeff(2);
        assert_relative_eq!(check.lhs, TAU * 0.25, max_relative = 1e-14);
        assert_relative_eq!(
            check.rhs,
            TAU * (0.25 + a2 * a2 * 0.0625),
            max_relative = 1e-12
        );
        assert!(check.lhs < check.rhs);

        let heavy = minus(&[3.0]);
        let check = verify_integral_means(&heavy, &params, &cfg(256, 0.9, 2.0)).unwrap();
        assert!(!check.hypothesis_certified);
        assert!(!check.holds);
    }

    #[test]
    fn littlewood_for_polynomial_schwarz_functions() {
        let g = ComparisonMap::<f64>::Geometric;
        let schwarz: [fn(Complex<f64>) -> Complex<f64>; 3] = [
            |z| z * z,
            |z| z * (z + 1.0) * 0.5,
            |z| z * z * z * 0.3 + z * 0.6,
        ];
        for w in schwarz {
            for &r in &[0.2, 0.5, 0.8, 0.95] {
                for &eta in &[0.5, 1.0, 2.0, 4.0] {
                    let c = cfg(1024, r, eta);
                    let sub = circle_mean(|z| g.evaluate(w(z)), &c);
                    let sup = circle_mean(|z| g.evaluate(z), &c);
                    assert!(sub <= sup * (1.0 + 1e-9), "r={r} eta={eta}");
                }
            }
        }
    }

    #[test]
    fn schwarz_witness_examples() {
        let params = p(0.4, 0.5, 0.3, 2.0);
        let w = schwarz_witness(
            &PowerSeries::new(Sign::Minus, vec![0.0; 15]).unwrap(),
            &params,
        )
        .unwrap();
        assert!(w.coeffs().iter().all(|&c| c == 0.0));

        let f2 = extremal_function(2, &params).unwrap();
        let w = schwarz_witness(&f2, &params).unwrap();
        assert_eq!(w.coeff(0), 0.0);
        assert_relative_eq!(w.coeff(1), 1.0, max_relative = 1e-14);
        assert!(w.coeffs()[2..].iter().all(|&c| c == 0.0));

        assert!(schwarz_witness(&PowerSeries::identity(4), &params).is_err());
    }

    #[test]
    fn schwarz_witness_reproduces_the_identity() {
        let params = p(0.4, 0.5, 0.3, 2.0);
        let f = random_member(&params, 9, 0.7).unwrap();
        let w = schwarz_witness(&f, &params).unwrap();
        let a = params.budget() / phi(2, &params);
        let z = Complex::new(0.3, -0.4);
        let lhs = f.eval_over_z(z);
        let rhs = Complex::new(1.0, 0.0) - w.evaluate(z) * a;
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn wilf_examples() {
        let grid = DiscGrid::new(vec![0.5, 0.99], 64).unwrap();
        assert_eq!(wilf_positivity(&[0.0, 0.0], &grid), 1.0);
        assert_relative_eq!(
            wilf_positivity(&[1.0], &grid),
            1.0 - 2.0 * 0.99,
            max_relative = 1e-12
        );
    }

    #[test]
    fn constant_and_bound_examples() {
        let classical = p(Q_NEAR_ONE, 0.0, 0.0, 0.0);
        assert!((subordination_constant(&classical) - 1.0 / 3.0).abs() < 1e-5);
        assert!((realpart_bound(&classical) + 1.5).abs() < 1e-5);
        assert_relative_eq!(
            subordination_constant(&p(0.5, 0.0, 0.0, 1.0)),
            1.0 / 3.0,
            max_relative = 1e-15
        );

        let mut prev = 0.0;
        for &alpha in &[0.0, 0.5, 0.9, 0.99, 0.999999] {
            let c = subordination_constant(&p(0.5, 1.0, alpha, 1.0));
            assert!(c > prev && c < 0.5);
            prev = c;
        }
        assert!(0.5 - prev < 1e-6);
        for &(q, lam, alpha, k) in &[(0.1, -0.9, 0.0, 0.0), (0.9, 3.0, 0.9, 20.0)] {
            let params = p(q, lam, alpha, k);
            assert!(realpart_bound(&params) < -1.0);
            let c = subordination_constant(&params);
            assert!(c > 0.0 && c < 0.5);
        }
    }

    #[test]
    fn sharpness_examples() {
        let params = p(0.5, 1.0, 0.2, 1.0);
        assert!(sharpness_minimum(&params, 0.1).unwrap() > -0.1);
        let classical = p(Q_NEAR_ONE, 0.0, 0.0, 0.0);
        let values: Vec<f64> = [0.9, 0.99, 0.999, 0.9999]
            .iter()
            .map(|&r| sharpness_minimum(&classical, r).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
        assert!((values[3] + 0.5).abs() < 5e-3);
        assert!(values.iter().all(|&v| v >= -0.5 - 1e-9));
        assert!(sharpness_minimum(&classical, 1.0).is_err());
        // classical value is -(r + r²/2)/3, so the -1/2 + 1e-2 band is left near r = 0.985
        for &r in &[0.5, 0.9, 0.95, 0.98] {
            assert!(sharpness_minimum(&classical, r).unwrap() > -0.5 + 1e-2);
        }
    }

    #[test]
    fn subordination_checks() {
        let g = ComparisonMap::<f64>::Geometric;
        let grid = DiscGrid::new(vec![0.0, 0.3, 0.7, 0.99], 128).unwrap();
        let reflexive = check_subordination(|z| g.evaluate(z), &g, &grid).unwrap();
        assert!(reflexive.pass);
        let squared = check_subordination(|z| g.evaluate(z * z), &g, &grid).unwrap();
        assert!(squared.pass);

        let params = p(0.5, 1.0, 0.2, 1.0);
        let f2 = extremal_function(2, &params).unwrap();
        let conv = crate::series::hadamard(&f2, &PowerSeries::geometric(16));
        let c = subordination_constant(&params);
        let ev = check_subordination(|z| conv.eval(z) * c, &g, &grid).unwrap();
        assert!(ev.pass, "{ev:?}");

        // 2z is not subordinate to z/(1-z) near the boundary
        let ev = check_subordination(|z| z * 2.0, &g, &grid).unwrap();
        assert!(!ev.pass);
        // constant shift breaks g_sub(0) = g(0)
        let ev = check_subordination(|z| g.evaluate(z) + 0.1, &g, &grid).unwrap();
        assert!(!ev.origin_match);

        let other = ComparisonMap::Series(PowerSeries::geometric(8));
        assert!(matches!(
            check_subordination(|z| z, &other, &grid),
            Err(Error::UnsupportedComparison)
        ));
    }

    #[test]
    fn report_for_member_is_verified() {
        let params = p(0.5, 1.0, 0.2, 1.0);
        let f = random_member(&params, 4, 0.9).unwrap();
        let grid = DiscGrid::new(vec![0.5, 0.9, 0.99], 256).unwrap();
        let rep = subordination_report(&f, &params, &grid, 0.9999).unwrap();
        assert!(rep.verified(), "{rep:?}");
        assert!(rep.constant > 0.0 && rep.constant < 0.5);
    }
}
