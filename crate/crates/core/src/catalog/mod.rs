//! Catalog of 26 closed-form (field, solution) pairs for fields of the form
//! `(F₁(φ), 0, F₃(φ))`, `φ = ωt + φ₀`.
//!
//! Each entry carries its parameter constraints, the singular points of the
//! field and solution (as a lattice in `φ`), a default window and a
//! verification status. Four entries fail the residual test as printed; they
//! are kept verbatim, flagged [`Status::Unverified`], and expose an amended
//! solution that does pass.

mod entries;

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{ExprField, FieldSpec, Params};
use crate::spinor::{sigma_apply, CVec3, Spinor};
use entries::{FieldFn, SolutionFn};

const I: C64 = C64 { re: 0.0, im: 1.0 };

pub const ENTRY_COUNT: u8 = 26;
/// Default window in `φ`.
pub const DEFAULT_PHASE_WINDOW: (f64, f64) = (0.2, 1.4);
/// Residual threshold used by verification.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// Number of sample points used by verification.
pub const VERIFY_POINTS: usize = 50;
/// Step of the central difference used for `du/dt` in residuals.
pub const RESIDUAL_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub omega: f64,
    pub phi0: f64,
}

impl Default for EntryParams {
    fn default() -> Self {
        EntryParams {
            a: C64::new(0.7, 0.0),
            b: C64::new(0.4, 0.0),
            c: C64::new(0.3, 0.0),
            omega: 1.0,
            phi0: 0.0,
        }
    }
}

impl EntryParams {
    pub fn from_map(m: &Params) -> Result<Self> {
        let mut p = EntryParams::default();
        for (k, v) in m {
            match k.as_str() {
                "a" => p.a = *v,
                "b" => p.b = *v,
                "c" => p.c = *v,
                "omega" | "w" => p.omega = real_param(k, *v)?,
                "phi0" => p.phi0 = real_param(k, *v)?,
                other => return Err(Error::Invalid(format!("unknown catalog parameter `{other}`"))),
            }
        }
        Ok(p)
    }

    pub fn to_map(&self) -> Params {
        [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("omega", C64::new(self.omega, 0.0)),
            ("phi0", C64::new(self.phi0, 0.0)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    pub fn phase(&self, t: f64) -> f64 {
        self.omega * t + self.phi0
    }
}

fn real_param(name: &str, v: C64) -> Result<f64> {
    if v.im != 0.0 || !v.re.is_finite() {
        return Err(Error::Invalid(format!("catalog parameter `{name}` must be real and finite")));
    }
    Ok(v.re)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    ANonZero,
    BNonZero,
    CNonZero,
    /// `b` real and positive (the solution takes `√b`).
    BPositive,
}

impl Constraint {
    fn check(self, p: &EntryParams) -> Result<()> {
        let ok = match self {
            Constraint::ANonZero => p.a.norm() > 0.0,
            Constraint::BNonZero => p.b.norm() > 0.0,
            Constraint::CNonZero => p.c.norm() > 0.0,
            Constraint::BPositive => p.b.im == 0.0 && p.b.re > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("catalog parameters violate constraint: {}", self.describe())))
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Constraint::ANonZero => "a != 0",
            Constraint::BNonZero => "b != 0",
            Constraint::CNonZero => "c != 0",
            Constraint::BPositive => "b real and > 0",
        }
    }
}

/// Points in `φ` where the field has a pole or the solution a branch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Singular {
    None,
    /// `φ = 0` only.
    Origin,
    /// `φ = kπ/2` for every integer `k`.
    QuarterTurns,
}

impl Singular {
    /// Singular phases inside `[lo, hi]`.
    pub fn phases_in(self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            Singular::None => vec![],
            Singular::Origin => {
                if lo <= 0.0 && 0.0 <= hi {
                    vec![0.0]
                } else {
                    vec![]
                }
            }
            Singular::QuarterTurns => {
                let k0 = (lo / FRAC_PI_2).ceil() as i64;
                let k1 = (hi / FRAC_PI_2).floor() as i64;
                (k0..=k1).map(|k| k as f64 * FRAC_PI_2).collect()
            }
        }
    }

    /// Open pole-free interval in `φ` containing `x`.
    pub fn cell(self, x: f64) -> (f64, f64) {
        match self {
            Singular::None => (f64::NEG_INFINITY, f64::INFINITY),
            Singular::Origin => {
                if x > 0.0 {
                    (0.0, f64::INFINITY)
                } else {
                    (f64::NEG_INFINITY, 0.0)
                }
            }
            Singular::QuarterTurns => {
                let k = (x / FRAC_PI_2).floor();
                (k * FRAC_PI_2, (k + 1.0) * FRAC_PI_2)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Verified,
    /// Printed solution fails the residual test; `note` describes the
    /// discrepancy and the amendment that passes.
    Unverified { note: &'static str },
}

/// Which solution formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    /// As transcribed.
    #[default]
    Printed,
    /// The corrected formula for unverified entries; identical to `Printed`
    /// for verified ones.
    Amended,
}

pub struct CatalogEntry {
    pub id: u8,
    /// Field as a DSL program in `P`, the phase placeholder.
    field_template: &'static str,
    /// Human-readable solution.
    pub solution_text: &'static str,
    /// Field components are `ω·F(φ)` rather than `F(φ)`.
    pub scaled_by_omega: bool,
    pub constraints: &'static [Constraint],
    pub singular: Singular,
    pub status: Status,
    field_fn: FieldFn,
    solution_fn: SolutionFn,
    amended_fn: Option<SolutionFn>,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry").field("id", &self.id).field("status", &self.status).finish()
    }
}

pub const PARAM_NAMES: [&str; 5] = ["a", "b", "c", "omega", "phi0"];

/// Entry `id`, `1 ≤ id ≤ 26`.
pub fn entry(id: u8) -> Result<&'static CatalogEntry> {
    if !(1..=ENTRY_COUNT).contains(&id) {
        return Err(Error::Invalid(format!("catalog id must be in 1..=26, got {id}")));
    }
    Ok(&ENTRIES[id as usize - 1])
}

pub fn all() -> &'static [CatalogEntry] {
    &ENTRIES
}

impl CatalogEntry {
    pub fn default_params(&self) -> EntryParams {
        EntryParams::default()
    }

    /// Fills in defaults and checks constraints.
    pub fn resolve_params(&self, m: &Params) -> Result<Params> {
        let p = EntryParams::from_map(m)?;
        self.validate(&p)?;
        Ok(p.to_map())
    }

    pub fn validate(&self, p: &EntryParams) -> Result<()> {
        if p.omega == 0.0 || !p.omega.is_finite() {
            return Err(Error::Invalid("catalog parameter `omega` must be nonzero".into()));
        }
        for c in self.constraints {
            c.check(p)?;
        }
        Ok(())
    }

    /// DSL program of the field with parameters `a, b, c, omega, phi0`.
    pub fn field_program(&self) -> String {
        let prog = self.field_template.replace('P', "(omega*t + phi0)");
        if !self.scaled_by_omega {
            return prog;
        }
        prog.split("; ")
            .map(|s| {
                let (lhs, rhs) = s.split_once(" = ").expect("template statement");
                format!("{lhs} = omega*({rhs})")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// The field as an expression spec, for comparison with [`Self::field`].
    pub fn expr_field(&self, params: &Params) -> Result<FieldSpec> {
        let p = EntryParams::from_map(params)?;
        Ok(FieldSpec::Expr(ExprField::new(&self.field_program(), p.to_map())?))
    }

    pub fn field_at(&self, p: &EntryParams, t: f64) -> Result<CVec3> {
        let x = p.phase(t);
        self.check_regular(x, t)?;
        let (f1, f3) = (self.field_fn)(p, x);
        let k = if self.scaled_by_omega { p.omega } else { 1.0 };
        let f = CVec3::new(f1 * k, C64::new(0.0, 0.0), f3 * k);
        if !f.is_finite() {
            return Err(Error::singular(t, format!("catalog entry {} field", self.id)));
        }
        Ok(f)
    }

    pub fn field(&self, params: &Params, t: f64) -> Result<CVec3> {
        let p = EntryParams::from_map(params)?;
        self.validate(&p)?;
        self.field_at(&p, t)
    }

    fn check_regular(&self, x: f64, t: f64) -> Result<()> {
        let eps = 1e-12 * x.abs().max(1.0);
        if !self.singular.phases_in(x - eps, x + eps).is_empty() {
            return Err(Error::singular(t, format!("catalog entry {} is singular at phase {x}", self.id)));
        }
        Ok(())
    }

    pub fn solution_at(&self, p: &EntryParams, t: f64, variant: Variant) -> Result<Spinor> {
        let x = p.phase(t);
        self.check_regular(x, t)?;
        let f = match (variant, self.amended_fn) {
            (Variant::Amended, Some(f)) => f,
            _ => self.solution_fn,
        };
        let v = f(p, x)?;
        if !v.is_finite() {
            return Err(Error::Accuracy(format!("catalog entry {} solution is not finite at t = {t}", self.id)));
        }
        Ok(v)
    }

    pub fn solution(&self, params: &Params, t: f64) -> Result<Spinor> {
        let p = EntryParams::from_map(params)?;
        self.validate(&p)?;
        self.solution_at(&p, t, Variant::Printed)
    }

    pub fn has_amendment(&self) -> bool {
        self.amended_fn.is_some()
    }

    /// Default time window: `φ ∈ [0.2, 1.4]` mapped through `φ = ωt + φ₀`.
    pub fn default_window(&self, p: &EntryParams) -> (f64, f64) {
        let (x0, x1) = DEFAULT_PHASE_WINDOW;
        let (t0, t1) = ((x0 - p.phi0) / p.omega, (x1 - p.phi0) / p.omega);
        (t0.min(t1), t0.max(t1))
    }

    /// Singular times in `[t0, t1]`.
    pub fn poles_in(&self, p: &EntryParams, t0: f64, t1: f64) -> Vec<f64> {
        let (x0, x1) = (p.phase(t0), p.phase(t1));
        let mut ts: Vec<f64> = self
            .singular
            .phases_in(x0.min(x1), x0.max(x1))
            .into_iter()
            .map(|x| (x - p.phi0) / p.omega)
            .collect();
        ts.sort_by(f64::total_cmp);
        ts
    }

    /// Errors unless `[t0, t1]` (plus the finite-difference margin) lies in
    /// one pole-free cell, where the principal branches are continuous.
    pub fn check_window(&self, p: &EntryParams, t0: f64, t1: f64) -> Result<()> {
        if !(t0 < t1) {
            return Err(Error::Invalid(format!("window [{t0}, {t1}] is empty")));
        }
        let m = 2.0 * RESIDUAL_STEP;
        let (x0, x1) = (p.phase(t0 - m), p.phase(t1 + m));
        let (lo, hi) = (x0.min(x1), x0.max(x1));
        let (c0, c1) = self.singular.cell(0.5 * (lo + hi));
        if lo <= c0 || hi >= c1 {
            return Err(Error::Invalid(format!(
                "window [{t0}, {t1}] of entry {} crosses a singular point (phase cell ({c0}, {c1}))",
                self.id
            )));
        }
        Ok(())
    }

    pub fn descriptor(&self, p: &EntryParams) -> Value {
        let (t0, t1) = self.default_window(p);
        let (status, note) = match self.status {
            Status::Verified => ("verified", Value::Null),
            Status::Unverified { note } => ("unverified", json!(note)),
        };
        let singular = match self.singular {
            Singular::None => "none",
            Singular::Origin => "phase = 0",
            Singular::QuarterTurns => "phase = k*pi/2",
        };
        json!({
            "id": self.id,
            "field": self.field_program(),
            "solution": self.solution_text,
            "params": crate::field::params_to_json(&p.to_map()),
            "param_names": PARAM_NAMES,
            "constraints": self.constraints.iter().map(|c| c.describe()).collect::<Vec<_>>(),
            "singular_set": singular,
            "poles_in_default_window": self.poles_in(p, t0, t1),
            "default_window": [t0, t1],
            "status": status,
            "note": note,
            "amended_solution": self.has_amendment(),
        })
    }
}

/// Free-function form of [`CatalogEntry::solution`].
pub fn entry_solution(id: u8, params: &Params, t: f64) -> Result<Spinor> {
    entry(id)?.solution(params, t)
}

/// Relative residual `‖i du/dt − (σ·F)u‖ / max(‖u‖, 1e-30)` with `du/dt` from
/// a five-point central difference of step `h`.
pub fn residual(
    field: impl Fn(f64) -> Result<CVec3>,
    sol: impl Fn(f64) -> Result<Spinor>,
    t: f64,
    h: f64,
) -> Result<f64> {
    let v = sol(t)?;
    let dv = crate::numeric::diff::derivative(&sol, t, h)?;
    let r = dv * I - sigma_apply(&field(t)?, &v);
    Ok(r.norm() / v.norm().max(1e-30))
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub id: u8,
    pub window: (f64, f64),
    pub points: usize,
    pub max_residual: f64,
    /// `true` when the printed solution passes.
    pub passed: bool,
    pub flagged: bool,
    /// Max residual of the amended solution, if the entry has one.
    pub amended_residual: Option<f64>,
}

/// Residual check of entry `id` at `points` equispaced times of `window`
/// (the default window when `None`).
pub fn verify_entry(id: u8, params: &Params, window: Option<(f64, f64)>, points: usize) -> Result<VerifyReport> {
    let e = entry(id)?;
    let p = EntryParams::from_map(params)?;
    e.validate(&p)?;
    let (t0, t1) = window.unwrap_or_else(|| e.default_window(&p));
    e.check_window(&p, t0, t1)?;
    let points = points.max(2);
    let ts: Vec<f64> = (0..points).map(|k| t0 + (t1 - t0) * k as f64 / (points - 1) as f64).collect();
    let h = RESIDUAL_STEP / p.omega.abs().max(1.0);
    let max_res = |variant: Variant| -> Result<f64> {
        let mut m = 0.0f64;
        for &t in &ts {
            let r = residual(|s| e.field_at(&p, s), |s| e.solution_at(&p, s, variant), t, h)?;
            m = m.max(r);
        }
        Ok(m)
    };
    let max_residual = max_res(Variant::Printed)?;
    let amended_residual = if e.has_amendment() { Some(max_res(Variant::Amended)?) } else { None };
    Ok(VerifyReport {
        id,
        window: (t0, t1),
        points,
        max_residual,
        passed: max_residual <= RESIDUAL_TOL,
        flagged: matches!(e.status, Status::Unverified { .. }),
        amended_residual,
    })
}

/// Verifies every entry concurrently with default parameters.
pub fn verify_all(points: usize) -> Vec<Result<VerifyReport>> {
    (1..=ENTRY_COUNT)
        .into_par_iter()
        .map(|id| verify_entry(id, &Params::new(), None, points))
        .collect()
}

/// Field spec of the family `(αF₁(φ), 0, βF₃(φ))`, `φ = ωt + φ₀`, built
/// from entry `id` at parameters `base`, with the solution parameters
/// rescaled to match.
pub fn scale_family(id: u8, base: &Params, alpha: f64, beta: f64, omega: f64, phi0: f64) -> Result<FieldSpec> {
    let e = entry(id)?;
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::Invalid("scale_family: omega must be nonzero".into()));
    }
    if !(alpha.is_finite() && beta.is_finite() && phi0.is_finite()) {
        return Err(Error::Invalid("scale_family: scale factors must be finite".into()));
    }
    let p = EntryParams::from_map(base)?;
    e.validate(&p)?;
    // ω-scaled entries carry ω in front of the field; fold the ratio into
    // the amplitudes so that only α and β remain.
    let k = if e.scaled_by_omega { p.omega / omega } else { 1.0 };
    let q = EntryParams { a: p.a * alpha * k, b: p.b * beta * k, c: p.c * beta * k, omega, phi0 };
    e.validate(&q)?;
    FieldSpec::catalog(id, q.to_map())
}

macro_rules! entry {
    ($id:expr, $tmpl:expr, $sol:expr, $omega:expr, $cons:expr, $sing:expr, $sfn:path) => {
        CatalogEntry {
            id: $id,
            field_template: $tmpl,
            solution_text: $sol,
            scaled_by_omega: $omega,
            constraints: $cons,
            singular: $sing,
            status: Status::Verified,
            field_fn: field_fn::<$id>,
            solution_fn: $sfn,
            amended_fn: None,
        }
    };
    ($id:expr, $tmpl:expr, $sol:expr, $omega:expr, $cons:expr, $sing:expr, $sfn:path, $afn:path, $note:expr) => {
        CatalogEntry {
            id: $id,
            field_template: $tmpl,
            solution_text: $sol,
            scaled_by_omega: $omega,
            constraints: $cons,
            singular: $sing,
            status: Status::Unverified { note: $note },
            field_fn: field_fn::<$id>,
            solution_fn: $sfn,
            amended_fn: Some($afn),
        }
    };
}

fn field_fn<const ID: u8>(p: &EntryParams, x: f64) -> (C64, C64) {
    entries::field(ID, p, x)
}

use Constraint::*;
use Singular::{None as NoPoles, Origin, QuarterTurns};

static ENTRIES: [CatalogEntry; 26] = [
    entry!(1, "F1 = a*P; F3 = b*P + c/P",
        "u = (a s^(g+2) e^(-z/2) Phi(al+1, g+2; z), 2(i-c) s^g e^(-z/2) Phi(al, g; z)); z = i s^2 sqrt(a^2+b^2), al = (g/2)(1 + b/sqrt(a^2+b^2)), g = ic; s = phase",
        true, &[CNonZero], Origin, entries::s1),
    entry!(2, "F1 = a/P; F3 = b/P + c*P",
        "u = (-a s^(g-1) e^(-z/2) Phi(al, g; z), (sqrt(a^2+b^2)+b) s^(g-1) e^(-z/2) Phi(al+1, g; z)); z = ic s^2, 2al = i(sqrt(a^2+b^2)+b), g = 1 + i sqrt(a^2+b^2); s = phase",
        true, &[], Origin, entries::s2),
    entry!(3, "F1 = a/P; F3 = b/P + c",
        "u = (-a s^((g-1)/2) e^(-z/2) Phi(al, g; z), -ia s^((g-1)/2) e^(-z/2) Phi(1+al, g; z)); z = 2ics, al = i(sqrt(a^2+b^2)+b), g = 1 + 2i sqrt(a^2+b^2); s = phase",
        true, &[], Origin, entries::s3, entries::s3_amended,
        "printed lower component fails the equation; replacing the prefactor -ia by (sqrt(a^2+b^2)+b) gives a solution"),
    entry!(4, "F1 = a/sin(2*P); F3 = (b*cos(2*P) + c)/sin(2*P)",
        "u = (-a z^mu (1-z)^nu F(al+1, be; g; z), (-4i w mu + b + c) z^mu (1-z)^nu F(al, be+1; g; z)); z = sin^2, mu = (i/4w) sqrt(a^2+(b+c)^2), nu = (i/4w) sqrt(a^2+(b-c)^2), al = mu+nu-ib/2w, be = mu+nu+ib/2w, g = 1+2mu",
        false, &[], QuarterTurns, entries::s4),
    entry!(5, "F1 = a*tan(P); F3 = b*tan(P) + c*cot(P)",
        "u = (2(c+iw) z^mu (1-z)^nu F(al, be; 2mu; z), a z^(mu+1) (1-z)^nu F(al+1, be+1; 2mu+2; z)); z = sin^2, mu = -ic/2w, nu = (i/2w) sqrt(a^2+b^2), lam = (i/2w) sqrt(a^2+(b-c)^2), al = nu+mu+lam, be = nu+mu-lam",
        false, &[CNonZero], QuarterTurns, entries::s5),
    entry!(6, "F1 = a/sin(P); F3 = b*tan(P) + c*cot(P)",
        "u = (-a z^mu (1-z)^(nu+1/2) F(al+1, be; 2mu+1; z), (sqrt(a^2+c^2)+c) z^mu (1-z)^nu F(al, be; 2mu+1; z)); z = sin^2, mu = (i/2w) sqrt(a^2+c^2), nu = -ib/2w, al = mu - ic/2w, be = 1/2 + mu + 2nu + ic/2w",
        false, &[], QuarterTurns, entries::s6),
    entry!(7, "F1 = a/cos(P); F3 = b*tan(P) + c",
        "u = ((w+2c-2ib) z^mu (1-z)^nu F(al, be; g; z), 2ia z^(mu+1/2) (1-z)^nu F(al, be+1; g+1; z)); z = -exp(-2i phase), mu = (c-ib)/2w, nu = (i/w) sqrt(a^2+b^2), al = 1/2 + c/w + nu, be = nu - ib/w, g = 1/2 + 2mu",
        false, &[], QuarterTurns, entries::s7, entries::s7_amended,
        "printed lower component has the wrong sign; -2ia in place of 2ia gives a solution"),
    entry!(8, "F1 = a/sinh(P); F3 = b*tanh(P) + c*coth(P)",
        "u = (-a z^mu (1-z)^nu F(al, be; g; z), (-2i w mu a + c) z^mu (1-z)^(nu+1/2) F(al, be+1; g; z)); z = tanh^2, mu = (i/2w) sqrt(a^2+c^2), nu = i(b+c)/2w, be = mu + ic/2w, al = 1/2 + ib/w + be, g = 2mu+1",
        false, &[], Origin, entries::s8, entries::s8_amended,
        "printed lower prefactor (-2i w mu a + c) fails unless a = 1; (-2i w mu + c) gives a solution"),
    entry!(9, "F1 = a/cosh(P); F3 = b*tanh(P) + c*coth(P)",
        "u = ((2c+iw) z^mu (1-z)^nu F(al, be; g; z), a z^(mu+1/2) (1-z)^(nu+1/2) F(al+1, be+1; g+1; z)); z = tanh^2, mu = -ic/2w, nu = i(b+c)/2w, lam = sqrt(a^2-b^2)/2w, al = ib/2w + lam, be = ib/2w - lam, g = 1/2 - ic/w",
        false, &[], Origin, entries::s9),
    entry!(10, "F1 = a/sinh(2*P); F3 = (b*cosh(2*P) + c)/sinh(2*P)",
        "u = (-a z^mu (1-z)^nu F(al, be; g; z), (-4i w mu + b + c) z^mu (1-z)^(nu+1) F(al+1, be+1; g; z)); z = tanh^2, mu = (i/4w) sqrt(a^2+(b+c)^2), lam = (i/4w) sqrt(a^2+(b-c)^2), nu = ib/2w, al = mu+nu+lam, be = mu+nu-lam, g = 1+2mu",
        false, &[], Origin, entries::s10),
    entry!(11, "F1 = a/cosh(P); F3 = (b*sinh(P) + c)/cosh(P)",
        "u = (a z^mu (1-z)^nu F(al, be; g; z), (2w mu - c + ib) z^mu (1-z)^(nu+1) F(al+1, be+1; g; z)); z = ((e^phase + i)/(e^phase - i))^2, mu = sqrt(a^2+(c-ib)^2)/2w, lam = sqrt(a^2+(c+ib)^2)/2w, nu = ib/w, al = mu+nu+lam, be = mu+nu-lam, g = 1+2mu",
        false, &[], Origin, entries::s11),
    entry!(12, "F1 = a*tanh(P); F3 = b*tanh(P) + c*coth(P)",
        "u = (2(c+iw) z^mu (1-z)^nu F(al, be; 2mu; z), a z^(mu+1) (1-z)^nu F(al+1, be+1; 2mu+2; z)); z = tanh^2, mu = -ic/2w, nu = (i/2w) sqrt(a^2+(b+c)^2), lam = (i/2w) sqrt(a^2+b^2), al = mu+nu+lam, be = mu+nu-lam",
        false, &[CNonZero], Origin, entries::s12),
    entry!(13, "F1 = a*coth(P); F3 = b*tanh(P) + c*coth(P)",
        "u = (-a z^mu (1-z)^nu F(al+1, be; g; z), (2w mu + c) z^mu (1-z)^nu F(al, be+1; g; z)); z = tanh^2, mu = (i/2w) sqrt(a^2+c^2), nu = (i/2w) sqrt(a^2+(b+c)^2), al = mu+nu+ib/2w, be = mu+nu-ib/2w, g = 1+2mu",
        false, &[], Origin, entries::s13, entries::s13_amended,
        "printed lower prefactor (2w mu + c) fails the equation; (-2i w mu + c) gives a solution"),
    entry!(14, "F1 = a/cosh(P); F3 = b*tanh(P) + c",
        "u = ((2b+2c-iw) z^mu (1-z)^nu F(al, be; g; z), 2a z^(mu+1/2) (1-z)^(nu+1/2) F(al+1, be+1; g+1; z)); z = (1 - tanh)/2, mu = i(b+c)/2w, nu = i(b-c)/2w, g = 1/2 + 2mu, lam = sqrt(a^2-b^2)/w, al = mu+nu+lam, be = mu+nu-lam",
        false, &[], NoPoles, entries::s14),
    entry!(15, "F1 = a/sinh(P); F3 = b*coth(P) + c",
        "u = (-a z^mu (1-z)^nu F(al, be; g; z), (-i w mu + b) z^mu (1-z)^(nu+1/2) F(al, be+1; g; z)); z = 1 - exp(-2 phase), mu = (i/w) sqrt(a^2+b^2), nu = i(b+c)/2w, al = 1/2 + mu + ic/w, be = mu + ib/w, g = 1+2mu",
        false, &[], Origin, entries::s15),
    entry!(16, "F1 = a; F3 = b*P + c",
        "u = (2 sqrt(b) D_mu(z), (1+i) a D_(mu-1)(z)); z = (1+i)(bs+c)/sqrt(b), mu = -ia^2/2b; s = phase",
        true, &[BNonZero, BPositive], NoPoles, entries::s16),
    entry!(17, "F1 = a; F3 = b/P + c",
        "u = ((1-2ib) s^g e^(-z/2) Phi(al, 2g; z), -ia s^(g+1) e^(-z/2) Phi(al+1, 2g+2; z)); z = 2is sqrt(a^2+c^2), g = -ib, al = g(1 - c/sqrt(a^2+c^2)); s = phase",
        true, &[BNonZero], Origin, entries::s17),
    entry!(18, "F1 = a; F3 = b/P + c*P",
        "u = ((2b+i) s^(g-1/2) e^(-z/2) Phi(al, g; z), a s^(g+1/2) e^(-z/2) Phi(al+1, g+1; z)); z = ic s^2, al = ia^2/4c, g = 1/2 - ib; s = phase",
        true, &[CNonZero], Origin, entries::s18),
    entry!(19, "F1 = a; F3 = (b*cos(2*P) + c)/sin(2*P)",
        "u = ((b+c+iw) z^mu (1-z)^nu F(al, be; g; z), a z^(mu+1/2) (1-z)^(nu+1/2) F(al+1, be+1; g+1; z)); z = sin^2, mu = -i(b+c)/4w, nu = i(c-b)/4w, g = 1/2 + 2mu, al = (sqrt(a^2-b^2) - ib)/2w, be = -(sqrt(a^2-b^2) + ib)/2w",
        false, &[], QuarterTurns, entries::s19),
    entry!(20, "F1 = a; F3 = b*tan(P) + c*cot(P)",
        "u = ((2c+iw) z^mu (1-z)^nu F(al, be; g; z), a z^(mu+1/2) (1-z)^(nu+1/2) F(al+1, be+1; g+1; z)); z = sin^2, mu = -ic/2w, nu = ib/2w, lam = sqrt(a^2-(b-c)^2)/2w, al = mu+nu+lam, be = mu+nu-lam, g = 1/2 + 2mu",
        false, &[], QuarterTurns, entries::s20),
    entry!(21, "F1 = a; F3 = b*tan(P) + c",
        "u = (a z^mu (1-z)^nu F(al, be; g; z), (2w mu - c + ib) z^mu (1-z)^(nu+1) F(al+1, be+1; g; z)); z = -exp(-2i phase), mu = sqrt(a^2+(c-ib)^2)/2w, lam = sqrt(a^2+(c+ib)^2)/2w, nu = ib/w, al = mu+nu+lam, be = mu+nu-lam, g = 1+2mu",
        false, &[], QuarterTurns, entries::s21),
    entry!(22, "F1 = a; F3 = b*tanh(P) + c*coth(P)",
        "u = ((2c+iw) z^mu (1-z)^nu F(al, be; g; z), a z^(mu+1/2) (1-z)^nu F(al, be+1; g+1; z)); z = tanh^2, mu = -ic/2w, nu = (i/2w) sqrt(a^2+(b+c)^2), g = 1/2 + 2mu, al = g + nu + i(b+c)/2w, be = nu - i(b+c)/2w",
        false, &[], Origin, entries::s22),
    entry!(23, "F1 = a; F3 = (b*cosh(2*P) + c)/sinh(2*P)",
        "u = ((b+c+iw) z^mu (1-z)^nu F(al, be; g; z), a z^(mu+1/2) (1-z)^nu F(al, be+1; g+1; z)); z = tanh^2, mu = -i(b+c)/4w, nu = (i/2w) sqrt(a^2+b^2), al = 1/2 + nu - ic/2w, be = nu - ib/2w, g = 1/2 + 2mu",
        false, &[], Origin, entries::s23),
    entry!(24, "F1 = a; F3 = (b*sinh(P) + c)/cosh(P)",
        "u = ((2b+2ic+iw) z^mu (1-z)^nu F(al, be; g; z), 2a z^(mu+1/2) (1-z)^nu F(al, be+1; g+1; z)); z = ((e^phase + i)/(e^phase - i))^2, mu = (c-ib)/2w, nu = (i/w) sqrt(a^2+b^2), al = 1/2 + nu + c/w, be = nu - ib/w, g = 1/2 + 2mu",
        false, &[], Origin, entries::s24),
    entry!(25, "F1 = a; F3 = b*tanh(P) + c",
        "u = (a z^mu (1-z)^nu F(al+1, be; g; z), -(2i w mu + b + c) z^mu (1-z)^nu F(al, be+1; g; z)); z = (1 - tanh)/2, nu = (i/2w) sqrt(a^2+(b-c)^2), mu = (i/2w) sqrt(a^2+(b+c)^2), al = mu+nu+ib/w, be = mu+nu-ib/w, g = 1+2mu",
        false, &[], NoPoles, entries::s25),
    entry!(26, "F1 = a; F3 = b*coth(P) + c",
        "u = (2(2b+iw) z^mu (1-z)^nu F(al, be; g; z), a z^(mu+1) (1-z)^nu F(al+1, be+1; g+2; z)); z = 1 - exp(-2 phase), mu = -ib/w, nu = (i/2w) sqrt(a^2+(b+c)^2), lam = (i/2w) sqrt(a^2+(b-c)^2), al = nu - ib/w + lam, be = nu - ib/w - lam, g = -2ib/w",
        false, &[BNonZero], Origin, entries::s26),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, f64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), C64::new(*v, 0.0))).collect()
    }

    #[test]
    fn lookup_and_range() {
        assert_eq!(entry(16).unwrap().id, 16);
        assert!(entry(0).is_err() && entry(27).is_err());
        for (k, e) in all().iter().enumerate() {
            assert_eq!(e.id as usize, k + 1);
        }
    }

    #[test]
    fn entry_16_field_example() {
        let f = entry(16).unwrap().field(&params(&[("a", 1.0), ("b", 2.0), ("c", 0.0)]), 1.0).unwrap();
        assert_eq!(f, CVec3::from_real([1.0, 0.0, 2.0]));
    }

    #[test]
    fn spot_residuals() {
        let cases: [(u8, &[(&str, f64)], f64); 3] = [
            (16, &[("a", 1.0), ("b", 1.0), ("c", 0.0)], 0.5),
            (2, &[("a", 1.0), ("b", 0.0), ("c", 1.0)], 1.0),
            (26, &[("a", 1.0), ("b", 0.5), ("c", 0.2), ("omega", 1.0), ("phi0", 0.3)], 1.0),
        ];
        for (id, ps, t) in cases {
            let e = entry(id).unwrap();
            let p = EntryParams::from_map(&params(ps)).unwrap();
            let r = residual(|s| e.field_at(&p, s), |s| e.solution_at(&p, s, Variant::Printed), t, 1e-3).unwrap();
            assert!(r <= 1e-6, "entry {id}: residual {r}");
        }
    }

    #[test]
    fn constraints_are_enforced() {
        assert!(entry(1).unwrap().field(&params(&[("c", 0.0)]), 1.0).is_err());
        assert!(entry(16).unwrap().field(&params(&[("b", -1.0)]), 1.0).is_err());
        assert!(entry(5).unwrap().field(&params(&[("omega", 0.0)]), 1.0).is_err());
        assert!(EntryParams::from_map(&params(&[("zeta", 1.0)])).is_err());
    }

    #[test]
    fn singular_points() {
        let e = entry(5).unwrap();
        let p = EntryParams::default();
        assert!(matches!(e.field_at(&p, 0.0), Err(Error::Singularity { .. })));
        let poles = e.poles_in(&p, -0.1, 3.2);
        assert_eq!(poles.len(), 3);
        assert!((poles[1] - FRAC_PI_2).abs() < 1e-15);
        assert!(e.check_window(&p, 0.2, 1.4).is_ok());
        assert!(e.check_window(&p, 0.2, 2.0).is_err());
        // ω = 2 halves the spacing in t
        let p2 = EntryParams { omega: 2.0, ..p };
        let poles = entry(20).unwrap().poles_in(&p2, 0.1, 1.7);
        assert_eq!(poles.len(), 2);
        assert!((poles[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert_eq!(entry(16).unwrap().poles_in(&p, -10.0, 10.0), Vec::<f64>::new());
    }

    #[test]
    fn expr_field_matches_closed_field() {
        for e in all() {
            let spec = e.expr_field(&Params::new()).unwrap();
            let p = EntryParams { omega: 1.3, phi0: 0.05, ..Default::default() };
            let m = p.to_map();
            let spec_p = e.expr_field(&m).unwrap();
            for k in 0..10 {
                let t = 0.2 + 0.1 * k as f64;
                let want = e.field_at(&EntryParams::default(), t).unwrap();
                let got = crate::field::Field::eval(&spec, t).unwrap();
                assert!((got - want).norm() <= 1e-14 * want.norm().max(1.0), "entry {}", e.id);
                let tp = (0.2 + 0.1 * k as f64 - p.phi0) / p.omega;
                let want = e.field_at(&p, tp).unwrap();
                let got = crate::field::Field::eval(&spec_p, tp).unwrap();
                assert!((got - want).norm() <= 1e-14 * want.norm().max(1.0), "entry {}", e.id);
            }
        }
    }

    #[test]
    fn scale_family_identity_and_residual() {
        let base = Params::new();
        let spec = scale_family(4, &base, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(spec, FieldSpec::catalog(4, Params::new()).unwrap());
        let spec = scale_family(1, &base, 1.5, 0.5, 2.0, 0.1).unwrap();
        let FieldSpec::Catalog { id, params } = &spec else { panic!() };
        let e = entry(*id).unwrap();
        let p = EntryParams::from_map(params).unwrap();
        let base_e = EntryParams::default();
        // (αF₁(φ), βF₃(φ)) with the base functions
        let t = 0.4;
        let x = p.phase(t);
        let f = e.field_at(&p, t).unwrap();
        let (f1, f3) = entries::field(1, &base_e, x);
        assert!((f.x - f1 * 1.5).norm() < 1e-14 && (f.z - f3 * 0.5).norm() < 1e-14);
        let r = verify_entry(1, params, None, 20).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(scale_family(1, &base, 1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn full_catalog_verification() {
        let reports: Vec<VerifyReport> = verify_all(VERIFY_POINTS).into_iter().map(|r| r.unwrap()).collect();
        for r in &reports {
            eprintln!("{:>2} printed {:.2e} amended {:?}", r.id, r.max_residual, r.amended_residual);
            if r.flagged {
                assert!(!r.passed, "entry {} is flagged but passes", r.id);
                assert!(r.amended_residual.unwrap() <= RESIDUAL_TOL, "entry {} amendment fails", r.id);
            } else {
                assert!(r.passed, "entry {} fails: {:e}", r.id, r.max_residual);
            }
        }
        assert!(reports.iter().filter(|r| r.passed && !r.flagged).count() >= 20);
    }
}
