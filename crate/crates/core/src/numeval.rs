//! Floating-point cross-checks of the exact sequences against the densities
//! they are moments of.
//!
//! Three densities are covered: the M/M/1 busy-period pdf, the mixing density
//! of the busy-period stationary excess, and the mixing density of the
//! reflected-Brownian-motion first-moment cdf (moments = Catalan numbers).
//! Moments are computed by adaptive Gauss-Kronrod quadrature. The two
//! mixing densities have square-root behaviour at both ends of their
//! support, removed by the substitution `y = a + (b - a) sin^2(theta)`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::{Error, Result};

/// Largest argument accepted by [`bessel_i`].
pub const BESSEL_MAX_ARG: f64 = 50.0;

/// Integrand magnitude below which the busy-period tail is dropped.
pub const TAIL_CUTOFF: f64 = 1e-16;

/// Default limit on the number of quadrature panels.
pub const PANEL_BUDGET: usize = 4000;

/// Modified Bessel function `I_0` or `I_1` by its ascending series
/// `sum_j (t/2)^(2j+nu) / (j! (j+nu)!)`, for `0 <= t <= 50`.
pub fn bessel_i(order: u32, t: f64) -> Result<f64> {
    if order > 1 {
        return Err(Error::Domain(format!("bessel_i supports orders 0 and 1, got {order}")));
    }
    if !(0.0..=BESSEL_MAX_ARG).contains(&t) {
        return Err(Error::Domain(format!(
            "bessel_i argument {t} outside the series range [0, {BESSEL_MAX_ARG}]"
        )));
    }
    let half = t / 2.0;
    let quarter_sq = half * half;
    let mut term = if order == 0 { 1.0 } else { half };
    let mut sum = term;
    let nu = order as f64;
    let mut j = 0.0;
    loop {
        j += 1.0;
        term *= quarter_sq / (j * (j + nu));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    Ok(sum)
}

/// Busy-period pdf `b(t) = e^{-(1+rho)t} I_1(2t sqrt(rho)) / (t sqrt(rho))`,
/// summed as `e^{-(1+rho)t} sum_j (rho t^2)^j / (j! (j+1)!)` with every
/// term formed in log space so that large `t` neither overflows nor loses
/// the exponential damping.
fn busy_pdf(rho: f64, t: f64) -> f64 {
    let damping = -(1.0 + rho) * t;
    if t == 0.0 {
        return 1.0;
    }
    let log_step = (rho * t * t).ln();
    let mut log_term = damping;
    let mut sum = 0.0;
    let mut j = 0.0_f64;
    let peak = t * rho.sqrt();
    loop {
        let term = log_term.exp();
        sum += term;
        if j > peak && term <= sum * 1e-17 {
            break;
        }
        log_term += log_step - (j + 1.0).ln() - (j + 2.0).ln();
        j += 1.0;
    }
    sum
}

/// Laplace transform of the busy-period pdf,
/// `(1 + rho + s - sqrt((1 + rho + s)^2 - 4 rho)) / (2 rho)`.
pub fn busy_laplace(rho: f64, s: f64) -> f64 {
    let a = 1.0 + rho + s;
    (a - (a * a - 4.0 * rho).sqrt()) / (2.0 * rho)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensitySpec {
    /// M/M/1 busy-period pdf at traffic intensity `rho`, support `[0, inf)`.
    BusyPdf { rho: f64 },
    /// Mixing density of the busy-period stationary excess, support
    /// `[1/tau, tau]` with `tau = 1 + 2 sigma + 2 sqrt(sigma (1 + sigma))`.
    MixingBe { sigma: f64, tau: f64 },
    /// `sqrt(4 - y) / (2 pi sqrt(y))` on `[0, 4]`.
    MixingH1,
}

impl DensitySpec {
    pub fn busy_pdf(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Domain(format!("busy pdf needs 0 < rho < 1, got {rho}")));
        }
        Ok(DensitySpec::BusyPdf { rho })
    }

    pub fn mixing_be(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Domain(format!("mixing density needs sigma > 0, got {sigma}")));
        }
        let tau = 1.0 + 2.0 * sigma + 2.0 * (sigma * (1.0 + sigma)).sqrt();
        Ok(DensitySpec::MixingBe { sigma, tau })
    }

    pub fn mixing_h1() -> Self {
        DensitySpec::MixingH1
    }

    pub fn support(&self) -> (f64, f64) {
        match *self {
            DensitySpec::BusyPdf { .. } => (0.0, f64::INFINITY),
            DensitySpec::MixingBe { tau, .. } => (1.0 / tau, tau),
            DensitySpec::MixingH1 => (0.0, 4.0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DensitySpec::BusyPdf { .. } => "busy-pdf",
            DensitySpec::MixingBe { .. } => "mixing-be",
            DensitySpec::MixingH1 => "mixing-h1",
        }
    }
}

/// Density value at `t`. The closed support is accepted; `MixingH1` is
/// infinite at `y = 0`.
pub fn density_eval(spec: &DensitySpec, t: f64) -> Result<f64> {
    let (lo, hi) = spec.support();
    if !(t >= lo && t <= hi) || t.is_infinite() {
        return Err(Error::Domain(format!(
            "{} evaluated at {t}, outside its support [{lo}, {hi}]",
            spec.name()
        )));
    }
    Ok(match *spec {
        DensitySpec::BusyPdf { rho } => busy_pdf(rho, t),
        DensitySpec::MixingBe { sigma, tau } => {
            ((tau - t) * (t - 1.0 / tau)).max(0.0).sqrt() / (2.0 * sigma * PI * t)
        }
        DensitySpec::MixingH1 => (4.0 - t).sqrt() / (2.0 * PI * t.sqrt()),
    })
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

// 15-point Kronrod rule with its embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`:
/// the panel with the largest error estimate is bisected until the summed
/// error is below `tol * |integral|`. Panel contributions are summed in
/// left-to-right order so the result does not depend on refinement order.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<Quadrature> {
    let mut panels = vec![kronrod_panel(&f, a, b)];
    loop {
        panels.sort_by(|p, q| p.a.total_cmp(&q.a));
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= tol * value.abs() || error < 1e-300 {
            return Ok(Quadrature {
                value,
                error,
                panels: panels.len(),
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::NoConvergence {
                panels: panels.len(),
                estimate: value,
                error,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        panels.push(kronrod_panel(&f, a, mid));
        panels.push(kronrod_panel(&f, mid, b));
    }
}

/// Integral of `weight(y) * density(y)` over the support of `spec`.
pub fn quad_weighted<W: Fn(f64) -> f64>(spec: &DensitySpec, weight: W, tol: f64) -> Result<Quadrature> {
    if !(1e-10..1.0).contains(&tol) {
        return Err(Error::Domain(format!("tolerance {tol} outside [1e-10, 1)")));
    }
    match *spec {
        DensitySpec::BusyPdf { rho } => {
            let integrand = |t: f64| weight(t) * busy_pdf(rho, t);
            let upper = tail_cutoff(&integrand)?;
            integrate(integrand, 0.0, upper, tol, PANEL_BUDGET)
        }
        DensitySpec::MixingBe { .. } | DensitySpec::MixingH1 => {
            let (lo, hi) = spec.support();
            let width = hi - lo;
            let integrand = |theta: f64| {
                let (s, c) = theta.sin_cos();
                let y = lo + width * s * s;
                let jacobian = 2.0 * width * s * c;
                weight(y) * density_eval(spec, y).unwrap_or(0.0) * jacobian
            };
            integrate(integrand, 0.0, FRAC_PI_2, tol, PANEL_BUDGET)
        }
    }
}

/// First power-of-two `t` past the integrand's peak where it has fallen
/// below [`TAIL_CUTOFF`].
fn tail_cutoff<F: Fn(f64) -> f64>(integrand: &F) -> Result<f64> {
    let mut t = 1.0;
    let mut previous = integrand(0.5).abs();
    while t < 1e6 {
        let value = integrand(t).abs();
        if value < TAIL_CUTOFF && value <= previous {
            return Ok(t);
        }
        previous = value;
        t *= 2.0;
    }
    Err(Error::Domain("busy-period tail does not decay within t < 1e6".into()))
}

/// `n`-th moment of the density, `n <= 8`.
pub fn quad_moment(spec: &DensitySpec, n: u32, tol: f64) -> Result<f64> {
    if n > 8 {
        return Err(Error::Domain(format!("moment order {n} above 8")));
    }
    quad_weighted(spec, |y| y.powi(n as i32), tol).map(|q| q.value)
}

/// `E[e^{x X}]` for the busy period at `rho` by quadrature. Requires
/// `x < (1 - sqrt(rho))^2`, where the transform converges.
pub fn quad_busy_mgf(rho: f64, x: f64, tol: f64) -> Result<f64> {
    let spec = DensitySpec::busy_pdf(rho)?;
    let abscissa = (1.0 - rho.sqrt()).powi(2);
    if x >= abscissa {
        return Err(Error::Domain(format!(
            "busy-period mgf diverges for x >= {abscissa}, got {x}"
        )));
    }
    quad_weighted(&spec, |t| (x * t).exp(), tol).map(|q| q.value)
}

/// Exponential generating function of the Catalan numbers,
/// `e^{2x} (I_0(2x) - I_1(2x))`, for `0 <= x <= 10`.
pub fn catalan_egf(x: f64) -> Result<f64> {
    if !(0.0..=10.0).contains(&x) {
        return Err(Error::Domain(format!("catalan_egf argument {x} outside [0, 10]")));
    }
    Ok((2.0 * x).exp() * (bessel_i(0, 2.0 * x)? - bessel_i(1, 2.0 * x)?))
}

/// Partial sum `sum_{n < terms} C_n x^n / n!`.
pub fn catalan_egf_partial_sum(x: f64, terms: usize) -> f64 {
    // C_{n+1} / C_n = 2(2n+1)/(n+2)
    let mut sum = 0.0;
    let mut term = 1.0;
    for n in 0..terms {
        sum += term;
        let nf = n as f64;
        term *= 2.0 * (2.0 * nf + 1.0) / (nf + 2.0) * x / (nf + 1.0);
    }
    sum
}
