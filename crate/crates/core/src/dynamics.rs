//! Charged-particle evolution in proper time.
//!
//! The exponential-map stepper advances the four-velocity by the exact group
//! element `exp(k dτ Λ(E,B))`, so for a constant field each step is the exact
//! solution of `du/dτ = k F u` and the Minkowski norm is preserved to rounding.
//! Euler (the literal first-order update `(I + k dτ Λ) u`) and classical RK4
//! are provided as references.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fields::{field_matrix, FieldProvider};
use crate::lie::mat_expm1;
use crate::minkowski::{minkowski_dot, FourVector, INTEGRATION_TOL};

/// Charge-to-mass coupling `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChargeRatio(pub f64);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleState {
    pub tau: f64,
    pub position: FourVector,
    pub u: FourVector,
}

impl ParticleState {
    pub fn new(tau: f64, position: FourVector, u: FourVector) -> Self {
        ParticleState { tau, position, u }
    }

    /// `|u·u − 1|`.
    pub fn norm_error(&self) -> f64 {
        (minkowski_dot(&self.u, &self.u) - 1.0).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepperKind {
    ExpMap,
    Euler,
    Rk4,
}

impl StepperKind {
    pub const ALL: [StepperKind; 3] = [StepperKind::ExpMap, StepperKind::Euler, StepperKind::Rk4];

    pub fn name(&self) -> &'static str {
        match self {
            StepperKind::ExpMap => "expmap",
            StepperKind::Euler => "euler",
            StepperKind::Rk4 => "rk4",
        }
    }
}

impl fmt::Display for StepperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StepperKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StepperKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown stepper `{s}` (expected expmap, euler or rk4)"
                ))
            })
    }
}

fn check_step(dtau: f64, k: ChargeRatio) -> Result<()> {
    if dtau <= 0.0 || !dtau.is_finite() {
        return Err(Error::InvalidInput(format!(
            "dtau must be positive and finite, got {dtau}"
        )));
    }
    if !k.0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "charge ratio must be finite, got {}",
            k.0
        )));
    }
    Ok(())
}

/// One exponential-map step.
///
/// The field is sampled at the midpoint event `x + u dτ/2` (old `u`), and the
/// position is advanced with the average of the old and new four-velocities.
pub fn step_expmap(
    s: &ParticleState,
    fp: &FieldProvider,
    k: ChargeRatio,
    dtau: f64,
) -> Result<ParticleState> {
    check_step(dtau, k)?;
    let midpoint = s.position + s.u * (0.5 * dtau);
    let field = fp.eval(&midpoint)?;
    // u + (exp(hΛ) − I)u keeps the increment at full relative precision
    let delta = mat_expm1(&field_matrix(&field), k.0 * dtau)?;
    let u = s.u + delta * s.u;
    let position = s.position + (s.u + u) * (0.5 * dtau);
    Ok(ParticleState {
        tau: s.tau + dtau,
        position,
        u,
    })
}

/// One forward-Euler step: `u ← (I + k dτ Λ) u`, `x ← x + u dτ`, with the
/// field sampled at the current event.
pub fn step_euler(
    s: &ParticleState,
    fp: &FieldProvider,
    k: ChargeRatio,
    dtau: f64,
) -> Result<ParticleState> {
    check_step(dtau, k)?;
    let field = fp.eval(&s.position)?;
    let du = field_matrix(&field) * s.u;
    Ok(ParticleState {
        tau: s.tau + dtau,
        position: s.position + s.u * dtau,
        u: s.u + du * (k.0 * dtau),
    })
}

/// One classical Runge–Kutta step for `dx/dτ = u`, `du/dτ = k F(x) u`.
pub fn step_rk4(
    s: &ParticleState,
    fp: &FieldProvider,
    k: ChargeRatio,
    dtau: f64,
) -> Result<ParticleState> {
    check_step(dtau, k)?;
    let rhs = |x: FourVector, u: FourVector| -> Result<(FourVector, FourVector)> {
        let field = fp.eval(&x)?;
        Ok((u, (field_matrix(&field) * u) * k.0))
    };
    let h = dtau;
    let (x0, u0) = (s.position, s.u);
    let (dx1, du1) = rhs(x0, u0)?;
    let (dx2, du2) = rhs(x0 + dx1 * (0.5 * h), u0 + du1 * (0.5 * h))?;
    let (dx3, du3) = rhs(x0 + dx2 * (0.5 * h), u0 + du2 * (0.5 * h))?;
    let (dx4, du4) = rhs(x0 + dx3 * h, u0 + du3 * h)?;
    let sixth = h / 6.0;
    Ok(ParticleState {
        tau: s.tau + h,
        position: x0 + (dx1 + dx2 * 2.0 + dx3 * 2.0 + dx4) * sixth,
        u: u0 + (du1 + du2 * 2.0 + du3 * 2.0 + du4) * sixth,
    })
}

pub fn step(
    kind: StepperKind,
    s: &ParticleState,
    fp: &FieldProvider,
    k: ChargeRatio,
    dtau: f64,
) -> Result<ParticleState> {
    match kind {
        StepperKind::ExpMap => step_expmap(s, fp, k, dtau),
        StepperKind::Euler => step_euler(s, fp, k, dtau),
        StepperKind::Rk4 => step_rk4(s, fp, k, dtau),
    }
}

/// A trajectory sample with its diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub state: ParticleState,
    /// `|u·u − 1|`.
    pub norm_err: f64,
    /// `u⁰`.
    pub energy: f64,
}

impl Sample {
    pub fn new(state: ParticleState) -> Self {
        Sample {
            state,
            norm_err: state.norm_error(),
            energy: state.u[0],
        }
    }
}

/// Samples at `τ₀, τ₀ + dτ, …, τ₀ + n dτ`. Never empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    dtau: f64,
    samples: Vec<Sample>,
}

impl Trajectory {
    pub fn dtau(&self) -> f64 {
        self.dtau
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        &self.samples[self.samples.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Validates an initial four-velocity. Values within `1e-9` of unit norm are
/// projected back onto the unit hyperboloid; anything further off is rejected.
pub fn normalize_initial(u: FourVector) -> Result<FourVector> {
    if !u.is_finite() {
        return Err(Error::InvalidInput(format!(
            "non-finite four-velocity {:?}",
            u.0
        )));
    }
    let deviation = minkowski_dot(&u, &u) - 1.0;
    if deviation.abs() > INTEGRATION_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    if u[0] <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "four-velocity must be future-pointing, u0 = {}",
            u[0]
        )));
    }
    Ok(FourVector::velocity_from_spatial(u.spatial()))
}

/// Runs `steps` steps and hands every sample (including the initial one) to
/// `on_sample` in order. Step failures carry the index of the sample that
/// could not be produced.
pub fn simulate_each(
    initial: &ParticleState,
    fp: &FieldProvider,
    k: ChargeRatio,
    dtau: f64,
    steps: usize,
    kind: StepperKind,
    mut on_sample: impl FnMut(usize, &Sample),
) -> Result<()> {
    check_step(dtau, k)?;
    let mut state = ParticleState {
        u: normalize_initial(initial.u)?,
        ..*initial
    };
    on_sample(0, &Sample::new(state));
    for n in 1..=steps {
        let mut next = step(kind, &state, fp, k, dtau).map_err(|e| Error::StepFailed {
            step: n,
            source: Box::new(e),
        })?;
        next.tau = initial.tau + n as f64 * dtau;
        if !next.u.is_finite() || !next.position.is_finite() {
            return Err(Error::StepFailed {
                step: n,
                source: Box::new(Error::InternalConsistency("state became non-finite".into())),
            });
        }
        state = next;
        on_sample(n, &Sample::new(state));
    }
    Ok(())
}

pub fn simulate(
    initial: &ParticleState,
    fp: &FieldProvider,
    k: ChargeRatio,
    dtau: f64,
    steps: usize,
    kind: StepperKind,
) -> Result<Trajectory> {
    let mut samples = Vec::with_capacity(steps + 1);
    simulate_each(initial, fp, k, dtau, steps, kind, |_, s| samples.push(*s))?;
    Ok(Trajectory { dtau, samples })
}

/// Summary of invariant diagnostics over a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantReport {
    pub samples: usize,
    /// max `|u·u − 1|`.
    pub max_norm_err: f64,
    /// max `|(Δu/Δτ)·ū|` with `ū` the average of neighbouring samples.
    pub max_orthogonality: f64,
    /// max `|u⁰ − u⁰₀|`; constant in pure magnetic fields.
    pub max_energy_drift: f64,
}

/// Streaming accumulator behind [`invariant_report`].
#[derive(Clone, Debug)]
pub struct InvariantMonitor {
    dtau: f64,
    first_energy: Option<f64>,
    prev_u: Option<FourVector>,
    report: InvariantReport,
}

impl InvariantMonitor {
    pub fn new(dtau: f64) -> Self {
        InvariantMonitor {
            dtau,
            first_energy: None,
            prev_u: None,
            report: InvariantReport {
                samples: 0,
                max_norm_err: 0.0,
                max_orthogonality: 0.0,
                max_energy_drift: 0.0,
            },
        }
    }

    pub fn observe(&mut self, sample: &Sample) {
        let r = &mut self.report;
        r.samples += 1;
        r.max_norm_err = r.max_norm_err.max(sample.norm_err);
        let e0 = *self.first_energy.get_or_insert(sample.energy);
        r.max_energy_drift = r.max_energy_drift.max((sample.energy - e0).abs());
        let u = sample.state.u;
        if let Some(prev) = self.prev_u {
            let du = (u - prev) * (1.0 / self.dtau);
            let mid = (u + prev) * 0.5;
            r.max_orthogonality = r.max_orthogonality.max(minkowski_dot(&du, &mid).abs());
        }
        self.prev_u = Some(u);
    }

    pub fn report(&self) -> InvariantReport {
        self.report
    }
}

pub fn invariant_report(t: &Trajectory) -> InvariantReport {
    let mut monitor = InvariantMonitor::new(t.dtau());
    t.samples().iter().for_each(|s| monitor.observe(s));
    monitor.report()
}

/// Spatial four-velocity magnitude `w` of a circular orbit of radius `radius`
/// around a point source of strength `q` (field `q/r²`), from the balance
/// `w²/R = |kq| u⁰ / R²` with `u⁰ = √(1 + w²)`. Requires `kq < 0`
/// (attraction).
pub fn circular_orbit_speed(k: ChargeRatio, q: f64, radius: f64) -> Result<f64> {
    let a = k.0 * q / radius;
    if radius <= 0.0 || !a.is_finite() || a >= 0.0 {
        return Err(Error::InvalidInput(format!(
            "circular orbit needs an attractive source and positive radius (k q = {}, R = {radius})",
            k.0 * q
        )));
    }
    // w⁴ = a²(1 + w²)
    let a2 = a * a;
    Ok(((a2 + (a2 * a2 + 4.0 * a2).sqrt()) / 2.0).sqrt())
}
