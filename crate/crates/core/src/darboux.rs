//! Structure-preserving Darboux transformation for fields `(ε, 0, F₃(t))`.
//!
//! A solution `V` for `(ε, 0, F₃)` maps to `V′ = [α − i(εσ₁ + βσ₃)] V`, a
//! solution for `(ε, 0, 2β − F₃)`, whenever the pair `(α, β)` obeys
//!
//! ```text
//! α̇ = 2β(F₃ − β),   β̇ = −2α(F₃ − β),
//! ```
//!
//! which conserves `α² + β² = R²`. Pairs come from a closed form for constant
//! `F₃ = f`, from a seed solution at `ε₀ = iR`, or from the phase equation
//! `μ̇ = 2(R sin μ − F₃)` with `(α, β) = (R cos μ, R sin μ)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat2::Mat2;
use crate::numeric::{self, diff, ode};
use crate::spinor::{anticonjugate, l_vector, CVec3, Spinor};

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Relative size of `Q − f` (or `L₃`) treated as a pole.
pub const POLE_TOL: f64 = 1e-12;
/// Largest grid residual accepted for an input solution of `darboux_apply`.
pub const PRECONDITION_TOL: f64 = 1e-4;
/// Fraction of the window trimmed from each side of a pole-free subwindow.
pub const POLE_MARGIN: f64 = 0.01;

type SpinorFn = Arc<dyn Fn(f64) -> Result<Spinor> + Send + Sync>;
type ScalarFn = Arc<dyn Fn(f64) -> Result<C64> + Send + Sync>;

#[derive(Clone)]
enum Source {
    Constant { alpha: C64, beta: C64 },
    ConstantF { f: C64, r: C64, phi0: C64 },
    Seed { seed: SpinorFn, eps0: C64 },
    Phase { sol: Arc<ode::OdeSolution<1>>, r: f64 },
    Samples,
}

/// A solution `(α, β)` of the pair equations, sampled on `times` and
/// evaluable anywhere in the window.
#[derive(Clone)]
pub struct DarbouxParams {
    pub times: Vec<f64>,
    pub alpha: Vec<C64>,
    pub beta: Vec<C64>,
    /// The conserved `R` with `α² + β² = R²`.
    pub r: C64,
    /// Phase `μ` when built from the phase equation.
    pub mu: Option<Vec<f64>>,
    source: Source,
}

impl fmt::Debug for DarbouxParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DarbouxParams")
            .field("window", &self.window())
            .field("samples", &self.times.len())
            .field("r", &self.r)
            .finish()
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() || times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invalid("sample times must be finite and strictly increasing".into()));
    }
    Ok(())
}

impl DarbouxParams {
    fn sampled(times: &[f64], r: C64, source: Source) -> Result<Self> {
        check_times(times)?;
        let mut p = DarbouxParams { times: times.to_vec(), alpha: vec![], beta: vec![], r, mu: None, source };
        for &t in times {
            let (a, b) = p.eval(t)?;
            p.alpha.push(a);
            p.beta.push(b);
        }
        Ok(p)
    }

    /// `α = 0`, `β = F₃` for constant `F₃`: the partner field equals the
    /// original one.
    pub fn identity(f3: C64, times: &[f64]) -> Result<Self> {
        Self::sampled(times, f3, Source::Constant { alpha: ZERO, beta: f3 })
    }

    /// The closed-form pair for constant `F₃ = f`; see
    /// [`darboux_params_constant_f`].
    pub fn constant_f(f: C64, r: C64, phi0: C64, times: &[f64]) -> Result<Self> {
        Self::sampled(times, r, Source::ConstantF { f, r, phi0 })
    }

    /// The pair built from a seed solution at `ε = eps0`. Fails with the
    /// location of the first zero of `L₃` if one lies among `times`.
    pub fn from_seed_fn(
        seed: impl Fn(f64) -> Result<Spinor> + Send + Sync + 'static,
        eps0: C64,
        times: &[f64],
    ) -> Result<Self> {
        check_times(times)?;
        let seed: SpinorFn = Arc::new(seed);
        let s = seed.clone();
        let zeros = l3_zeros(&move |t| Ok(seed_l(&s(t)?).z), times)?;
        if let Some(&t) = zeros.first() {
            return Err(Error::singular(t, "seed vector component L3 vanishes"));
        }
        Self::sampled(times, I * eps0, Source::Seed { seed, eps0 })
    }

    /// Integrates `μ̇ = 2(R sin μ − F₃)` from `μ(times[0]) = mu0` for real
    /// `R` and real `F₃`, and sets `(α, β) = (R cos μ, R sin μ)`.
    pub fn from_phase(
        f3: impl Fn(f64) -> Result<f64>,
        r: f64,
        mu0: f64,
        times: &[f64],
        tol: f64,
    ) -> Result<Self> {
        check_times(times)?;
        let sol = ode::integrate(
            |t, y: &[f64; 1]| Ok([2.0 * (r * y[0].sin() - f3(t)?)]),
            times[0],
            [mu0],
            times,
            &ode::OdeOptions::with_tol(tol),
        )?;
        let mu: Vec<f64> = sol.y_out.iter().map(|y| y[0]).collect();
        let mut p = Self::sampled(times, C64::new(r, 0.0), Source::Phase { sol: Arc::new(sol), r })?;
        p.mu = Some(mu);
        Ok(p)
    }

    pub fn window(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    /// `(α(t), β(t))`. Exact for closed forms and seeds; sampled pairs use
    /// local polynomial interpolation.
    pub fn eval(&self, t: f64) -> Result<(C64, C64)> {
        match &self.source {
            Source::Constant { alpha, beta } => Ok((*alpha, *beta)),
            Source::ConstantF { f, r, phi0 } => darboux_params_constant_f(*f, *r, *phi0, t),
            Source::Seed { seed, eps0 } => seed_params(&seed(t)?, *eps0, t),
            Source::Phase { sol, r } => {
                let mu = sol
                    .dense(t)
                    .ok_or_else(|| Error::domain(format!("t = {t} is outside the integrated window")))?[0];
                Ok((C64::new(r * mu.cos(), 0.0), C64::new(r * mu.sin(), 0.0)))
            }
            Source::Samples => {
                let a = numeric::interpolate(&self.times, &self.alpha, t);
                let b = numeric::interpolate(&self.times, &self.beta, t);
                a.zip(b).ok_or_else(|| Error::domain(format!("t = {t} is outside the sampled window")))
            }
        }
    }

    /// `max |α² + β² − R²|` over the samples.
    pub fn first_integral_deviation(&self) -> f64 {
        let r2 = self.r * self.r;
        self.alpha.iter().zip(&self.beta).map(|(a, b)| (a * a + b * b - r2).norm()).fold(0.0, f64::max)
    }
}

/// `ω₀ = √(R² − f²)` and the phase offset actually used. For `f`, `R` both
/// real or both imaginary with `R² < f²` and real `φ₀`, the offset becomes
/// `iφ₀` so that `Q = R cos(2(|ω₀|t + φ₀))` and the partner field keeps the
/// reality class of `f`.
pub fn effective_phase(f: C64, r: C64, phi0: C64) -> (C64, C64) {
    let d = r * r - f * f;
    let w0 = d.sqrt();
    let same_axis = (f.im == 0.0 && r.im == 0.0) || (f.re == 0.0 && r.re == 0.0);
    if same_axis && d.im.abs() <= 1e-300 && d.re < 0.0 && phi0.im == 0.0 {
        (w0, I * phi0)
    } else {
        (w0, phi0)
    }
}

fn q_and_rate(f: C64, r: C64, phi0: C64, t: f64) -> (C64, C64) {
    let (w0, p0) = effective_phase(f, r, phi0);
    let phi = (w0 * t + p0) * 2.0;
    (r * phi.cosh(), w0 * r * phi.sinh() * 2.0)
}

fn check_pole(qf: C64, scale: f64, t: f64) -> Result<()> {
    if qf.norm() <= POLE_TOL * scale.max(1.0) {
        return Err(Error::singular(t, "Q(t) = f"));
    }
    Ok(())
}

/// `α = −Q̇/(2(Q − f))`, `β = f + (f² − R²)/(Q − f)` with
/// `Q = R cosh 2(ω₀t + φ₀)`, `ω₀² = R² − f²`.
pub fn darboux_params_constant_f(f: C64, r: C64, phi0: C64, t: f64) -> Result<(C64, C64)> {
    let (q, dq) = q_and_rate(f, r, phi0, t);
    let qf = q - f;
    check_pole(qf, q.norm().max(f.norm()), t)?;
    Ok((-dq / (qf * 2.0), f + (f * f - r * r) / qf))
}

/// Closed form of the partner `F₃′ = f + 2(f² − R²)/(Q − f)`.
pub fn constant_f_partner(f: C64, r: C64, phi0: C64, t: f64) -> Result<C64> {
    let (q, _) = q_and_rate(f, r, phi0, t);
    let qf = q - f;
    check_pole(qf, q.norm().max(f.norm()), t)?;
    Ok(f + (f * f - r * r) * 2.0 / qf)
}

/// Recovers the offset `φ₀` of a constant-`f` pair from its value at `t`,
/// modulo `iπ`. Inverse of [`darboux_params_constant_f`] for offsets used
/// as given (see [`effective_phase`]).
pub fn constant_f_phase(f: C64, r: C64, alpha: C64, beta: C64, t: f64) -> Result<C64> {
    let w0 = (r * r - f * f).sqrt();
    if w0.norm() == 0.0 || (beta - f).norm() == 0.0 {
        return Err(Error::domain("offset is undetermined for R² = f² or β = f"));
    }
    let qf = (f * f - r * r) / (beta - f);
    let q = f + qf;
    let dq = -alpha * qf * 2.0;
    let phi = ((q + dq / (w0 * 2.0)) / r).ln();
    Ok(phi * 0.5 - w0 * t)
}

/// The three-constant family `c₀ + 2(c₁² − c₀²)/(Q + c₀)` with
/// `Q = c₁ cosh φ` (`c₁² > c₀²`) or `c₁ cos φ` (`c₁² < c₀²`),
/// `φ = 2(t√|c₁² − c₀²| + c₂)`; real constants.
pub fn three_parameter_field(c0: f64, c1: f64, c2: f64, t: f64) -> Result<f64> {
    let d = c1 * c1 - c0 * c0;
    let phi = 2.0 * (t * d.abs().sqrt() + c2);
    let q = if d > 0.0 { c1 * phi.cosh() } else { c1 * phi.cos() };
    if (q + c0).abs() <= POLE_TOL * q.abs().max(c0.abs()).max(1.0) {
        return Err(Error::singular(t, "Q(t) = -c0"));
    }
    Ok(c0 + 2.0 * d / (q + c0))
}

/// Constants `(c₀, c₁, c₂) = (f, −R, φ₀)` placing a real constant-`f`
/// partner field in the three-constant family.
pub fn three_parameter_constants(f: f64, r: f64, phi0: f64) -> (f64, f64, f64) {
    (f, -r, phi0)
}

/// Solution for constant `F₃ = f` and transverse component `ε`:
/// `(i(f − ω)p e^{iωt} − εq e^{−iωt}, iεp e^{iωt} + (f − ω)q e^{−iωt})`,
/// `ω² = f² + ε²`.
pub fn constant_f_solution(f: C64, eps: C64, p: C64, q: C64, t: f64) -> Spinor {
    let w = (f * f + eps * eps).sqrt();
    let (ep, em) = ((I * w * t).exp(), (-I * w * t).exp());
    Spinor::new(I * (f - w) * p * ep - eps * q * em, I * eps * p * ep + (f - w) * q * em)
}

/// `L = (V̄, σV)` of a seed spinor.
pub fn seed_l(v: &Spinor) -> CVec3 {
    l_vector(&anticonjugate(v), v)
}

/// `α = −ε₀L₂/L₃`, `β = −ε₀L₁/L₃` from a seed solution at `ε₀`.
pub fn seed_params(v: &Spinor, eps0: C64, t: f64) -> Result<(C64, C64)> {
    let l = seed_l(v);
    if l.z.norm() <= POLE_TOL * l.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::singular(t, "seed vector component L3 vanishes"));
    }
    Ok((-eps0 * l.y / l.z, -eps0 * l.x / l.z))
}

/// Zeros of a complex function on the real line, located by golden-section
/// refinement of every sampled local minimum of its modulus. A minimum counts
/// as a zero when it drops below `1e-8` of the largest sampled modulus.
fn l3_zeros(l3: &dyn Fn(f64) -> Result<C64>, times: &[f64]) -> Result<Vec<f64>> {
    let mags = times.iter().map(|&t| Ok(l3(t)?.norm())).collect::<Result<Vec<f64>>>()?;
    let scale = mags.iter().cloned().fold(0.0, f64::max);
    if !(scale > 0.0) {
        return Err(Error::domain("seed vector component L3 vanishes identically"));
    }
    let n = times.len();
    let mut zeros = Vec::new();
    for k in 0..n {
        let left = if k == 0 { f64::INFINITY } else { mags[k - 1] };
        let right = if k + 1 == n { f64::INFINITY } else { mags[k + 1] };
        if !(mags[k] <= left && mags[k] < right) {
            continue;
        }
        let (mut a, mut b) = (times[k.saturating_sub(1)], times[(k + 1).min(n - 1)]);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..200 {
            if b - a <= 1e-15 * b.abs().max(1.0) {
                break;
            }
            let (x1, x2) = (b - g * (b - a), a + g * (b - a));
            if l3(x1)?.norm() < l3(x2)?.norm() {
                b = x2;
            } else {
                a = x1;
            }
        }
        let t = 0.5 * (a + b);
        if l3(t)?.norm() <= 1e-8 * scale {
            zeros.push(t);
        }
    }
    zeros.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    Ok(zeros)
}

/// The longest piece of `window` between consecutive `zeros`, trimmed by
/// [`POLE_MARGIN`] of the window width at each interior end.
pub fn largest_pole_free_window(window: (f64, f64), zeros: &[f64]) -> (f64, f64) {
    let margin = POLE_MARGIN * (window.1 - window.0);
    let mut cuts = vec![window.0];
    cuts.extend(zeros.iter().copied().filter(|z| *z > window.0 && *z < window.1));
    cuts.push(window.1);
    let last = cuts.len() - 2;
    (0..=last)
        .map(|k| {
            let a = if k == 0 && cuts[0] == window.0 && !zeros.contains(&window.0) { cuts[0] } else { cuts[k] + margin };
            let b = if k == last && !zeros.contains(&window.1) { cuts[k + 1] } else { cuts[k + 1] - margin };
            (a, b)
        })
        .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
        .expect("at least one piece")
}

/// Result of a seed construction over a window that may contain poles.
#[derive(Clone, Debug)]
pub struct SeedConstruction {
    pub params: DarbouxParams,
    /// Zeros of `L₃` found in the requested window.
    pub zeros: Vec<f64>,
    /// The subwindow actually sampled.
    pub window: (f64, f64),
}

/// Builds the pair from a seed on the largest pole-free part of `window`,
/// sampled at `samples` uniform points.
pub fn darboux_from_seed_fn(
    seed: impl Fn(f64) -> Result<Spinor> + Send + Sync + 'static,
    eps0: C64,
    window: (f64, f64),
    samples: usize,
) -> Result<SeedConstruction> {
    if !(window.1 > window.0) || samples < 2 {
        return Err(Error::Invalid("need a nonempty window and at least 2 samples".into()));
    }
    let seed: SpinorFn = Arc::new(seed);
    let grid = |w: (f64, f64)| -> Vec<f64> {
        (0..samples).map(|k| w.0 + (w.1 - w.0) * k as f64 / (samples - 1) as f64).collect()
    };
    let s = seed.clone();
    let zeros = l3_zeros(&move |t| Ok(seed_l(&s(t)?).z), &grid(window))?;
    let sub = largest_pole_free_window(window, &zeros);
    let s = seed.clone();
    let params = DarbouxParams::sampled(&grid(sub), I * eps0, Source::Seed { seed: s, eps0 })?;
    Ok(SeedConstruction { params, zeros, window: sub })
}

/// Builds the pair from sampled seed data. A zero of `L₃` inside the window
/// is reported with its location and the largest pole-free subwindow.
pub fn darboux_from_seed(seed: &Trajectory, eps0: C64) -> Result<DarbouxParams> {
    let ls: Vec<C64> = seed.states.iter().map(|v| seed_l(v).z).collect();
    let (ts, ls2) = (seed.times.clone(), ls.clone());
    let interp = move |t: f64| {
        numeric::interpolate(&ts, &ls2, t).ok_or_else(|| Error::domain("outside the seed window"))
    };
    let zeros = l3_zeros(&interp, &seed.times)?;
    if let Some(&t) = zeros.first() {
        let w = (seed.times[0], seed.times[seed.len() - 1]);
        let sub = largest_pole_free_window(w, &zeros);
        return Err(Error::singular(
            t,
            format!("seed vector component L3 vanishes; largest pole-free subwindow is [{}, {}]", sub.0, sub.1),
        ));
    }
    let mut alpha = Vec::with_capacity(seed.len());
    let mut beta = Vec::with_capacity(seed.len());
    for (&t, v) in seed.times.iter().zip(&seed.states) {
        let (a, b) = seed_params(v, eps0, t)?;
        alpha.push(a);
        beta.push(b);
    }
    Ok(DarbouxParams { times: seed.times.clone(), alpha, beta, r: I * eps0, mu: None, source: Source::Samples })
}

/// `F₃′ = 2β − F₃`.
pub fn darboux_field(f3: impl Fn(f64) -> Result<C64>, params: &DarbouxParams, t: f64) -> Result<C64> {
    Ok(params.eval(t)?.1 * 2.0 - f3(t)?)
}

/// The partner field `(ε, 0, 2β − F₃)`.
#[derive(Clone)]
pub struct PartnerField {
    pub eps: C64,
    pub f3: ScalarFn,
    pub params: DarbouxParams,
}

impl PartnerField {
    pub fn new(eps: C64, f3: impl Fn(f64) -> Result<C64> + Send + Sync + 'static, params: DarbouxParams) -> Self {
        PartnerField { eps, f3: Arc::new(f3), params }
    }
}

impl Field for PartnerField {
    fn eval(&self, t: f64) -> Result<CVec3> {
        let f3p = darboux_field(|s| (self.f3)(s), &self.params, t)?;
        Ok(CVec3::new(self.eps, ZERO, f3p))
    }
}

/// `α − i(εσ₁ + βσ₃)`.
pub fn transformation_matrix(eps: C64, alpha: C64, beta: C64) -> Mat2 {
    Mat2::new(alpha - I * beta, -I * eps, -I * eps, alpha + I * beta)
}

/// Maps a solution for `(ε, 0, F₃)` to one for `(ε, 0, 2β − F₃)`. The input
/// must carry its field column; it is checked for the `(ε, 0, ·)` shape and
/// for a grid residual within [`PRECONDITION_TOL`].
pub fn darboux_apply(v: &Trajectory, eps: C64, params: &DarbouxParams) -> Result<Trajectory> {
    let scale = eps.norm().max(1.0);
    if let Some(k) = v.fields.iter().position(|f| (f.x - eps).norm() > 1e-12 * scale || f.y.norm() > 1e-12 * scale) {
        return Err(Error::Invalid(format!(
            "input field at t = {} is not of the form (eps, 0, F3) with eps = {eps}",
            v.times[k]
        )));
    }
    let r = v.max_interior_residual(None)?;
    if r > PRECONDITION_TOL {
        return Err(Error::Invalid(format!("input is not a solution of its field (residual {r:.3e})")));
    }
    let mut states = Vec::with_capacity(v.len());
    let mut fields = Vec::with_capacity(v.len());
    for ((&t, s), f) in v.times.iter().zip(&v.states).zip(&v.fields) {
        let (a, b) = params.eval(t)?;
        states.push(transformation_matrix(eps, a, b).apply(s));
        fields.push(CVec3::new(eps, ZERO, b * 2.0 - f.z));
    }
    Trajectory::new(v.times.clone(), states, fields, v.est_error)
}

/// The transformation written through the seed directly (overall constant
/// one): `σ₂[(σ·L)/L₃ + (ε/ε₀ − 1)σ₃] V`. Equals `i` times the image from
/// [`transformation_matrix`] with the seed pair.
pub fn seed_transform(v: &Spinor, seed: &Spinor, eps: C64, eps0: C64) -> Result<Spinor> {
    let l = seed_l(seed);
    if l.z.norm() <= POLE_TOL * l.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::domain("seed vector component L3 vanishes"));
    }
    let m = Mat2::sigma_dot(&l).scale(1.0 / l.z) + Mat2::sigma(3).scale(eps / eps0 - 1.0);
    Ok((Mat2::sigma(2) * m).apply(v))
}

/// Residual of the pair equations at `t`, with central differences.
pub fn pair_equation_residual(f3: impl Fn(f64) -> Result<C64>, params: &DarbouxParams, t: f64) -> Result<f64> {
    let h = diff::default_step(t) * 10.0;
    let da = diff::derivative(|s| Ok(params.eval(s)?.0), t, h)?;
    let db = diff::derivative(|s| Ok(params.eval(s)?.1), t, h)?;
    let (a, b) = params.eval(t)?;
    let g = f3(t)? - b;
    Ok((da - b * g * 2.0).norm().max((db + a * g * 2.0).norm()))
}

/// Largest matrix-norm residual of the two intertwining relations
/// `σ₁A − Aσ₁ + σ₂(F₃′ − F₃) = 0` and `σ₁Ȧ + σ₂AF₃′ − σ₂Ḟ₃ − Aσ₂F₃ = 0`
/// for `A = α + i(F₃ − β)σ₃`, with central differences.
pub fn intertwine_residual(
    f3: impl Fn(f64) -> Result<C64>,
    f3p: impl Fn(f64) -> Result<C64>,
    params: &DarbouxParams,
    t: f64,
) -> Result<f64> {
    let a_of = |s: f64| -> Result<Mat2> {
        let (a, b) = params.eval(s)?;
        Ok(Mat2::scalar(a) + Mat2::sigma(3).scale(I * (f3(s)? - b)))
    };
    let h = diff::default_step(t) * 10.0;
    let a = a_of(t)?;
    let da = diff::derivative(&a_of, t, h)?;
    let df3 = diff::derivative(&f3, t, h)?;
    let (x, y) = (f3(t)?, f3p(t)?);
    let (s1, s2) = (Mat2::sigma(1), Mat2::sigma(2));
    let first = s1 * a - a * s1 + s2.scale(y - x);
    let second = s1 * da + (s2 * a).scale(y) - s2.scale(df3) - (a * s2).scale(x);
    Ok(first.norm().max(second.norm()))
}
