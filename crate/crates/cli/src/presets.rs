//! Built-in scenarios.

use std::f64::consts::PI;

use lorentzgen_core::dynamics::circular_orbit_speed;
use lorentzgen_core::fields::{Coulomb, EMField};
use lorentzgen_core::{ChargeRatio, StepperKind, ThreeVector};

use crate::config::{FieldSpec, ScenarioConfig};

pub const PRESETS: [&str; 5] = [
    "free",
    "hyperbolic",
    "cyclotron",
    "crossed",
    "coulomb-orbit",
];

fn base(name: &str, field: FieldSpec, steps: usize) -> ScenarioConfig {
    ScenarioConfig {
        name: name.to_string(),
        field,
        k: 1.0,
        u_spatial: ThreeVector::ZERO,
        position: ThreeVector::ZERO,
        dtau: 1e-3,
        steps,
        stepper: StepperKind::ExpMap,
        output: None,
        stride: 1,
    }
}

fn uniform(f: EMField) -> FieldSpec {
    FieldSpec {
        uniform: Some(f),
        coulomb: None,
    }
}

pub fn preset(name: &str) -> Option<ScenarioConfig> {
    let cfg = match name {
        // straight worldline
        "free" => ScenarioConfig {
            u_spatial: ThreeVector::new(0.3, 0.4, 0.0),
            ..base(name, uniform(EMField::ZERO), 1000)
        },
        // from rest in E = x̂ to τ = 1: u = (cosh τ, sinh τ, 0, 0)
        "hyperbolic" => base(
            name,
            uniform(EMField::electric(ThreeVector::new(1.0, 0.0, 0.0))),
            1000,
        ),
        // radius 0.5, proper-time period π
        "cyclotron" => ScenarioConfig {
            u_spatial: ThreeVector::new(1.0, 0.0, 0.0),
            ..base(
                name,
                uniform(EMField::magnetic(ThreeVector::new(0.0, 0.0, 2.0))),
                10_000,
            )
        },
        // |E| < |B|: bounded motion drifting along E × B
        "crossed" => base(
            name,
            uniform(EMField::new(
                ThreeVector::new(0.0, 0.5, 0.0),
                ThreeVector::new(0.0, 0.0, 1.0),
            )),
            10_000,
        ),
        // one circular orbit of radius 1 around an attracting point source
        "coulomb-orbit" => {
            let (k, q, radius) = (1.0, -1.0, 1.0);
            let w = circular_orbit_speed(ChargeRatio(k), q, radius).ok()?;
            let dtau = 5e-5;
            let period = 2.0 * PI * radius / w;
            ScenarioConfig {
                k,
                u_spatial: ThreeVector::new(0.0, w, 0.0),
                position: ThreeVector::new(radius, 0.0, 0.0),
                dtau,
                stride: 100,
                ..base(
                    name,
                    FieldSpec {
                        uniform: None,
                        coulomb: Some(Coulomb::new(q)),
                    },
                    (period / dtau).ceil() as usize,
                )
            }
        }
        _ => return None,
    };
    Some(cfg)
}
