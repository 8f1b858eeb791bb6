//! Finite boosts between inertial frames and the transformation of
//! infinitesimal boost/rotation parameters from one frame to another.
//!
//! Orientation: a frame `S'` moves with velocity `v` as seen from `S`, axes
//! parallel. [`finite_boost`] maps `S'` components to `S` components, and
//! quantities are always transformed primed → unprimed.

use crate::error::{Error, Result};
use crate::lie::{
    adjoint, boost_generator, extract_params, lie_matrix, mat_exp, LieParams, DEFAULT_EXTRACT_TOL,
};
use crate::minkowski::{lorentz_factor, FourVector, Matrix4, ThreeVector};

/// Velocity of one inertial frame relative to another, `|v| < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameBoost {
    velocity: ThreeVector,
    gamma: f64,
}

impl FrameBoost {
    pub fn new(velocity: ThreeVector) -> Result<Self> {
        if !velocity.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite frame velocity {:?}",
                velocity.0
            )));
        }
        let gamma = lorentz_factor(velocity.norm())?;
        Ok(FrameBoost { velocity, gamma })
    }

    pub fn along_axis1(v: f64) -> Result<Self> {
        FrameBoost::new(ThreeVector::new(v, 0.0, 0.0))
    }

    pub fn velocity(&self) -> ThreeVector {
        self.velocity
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Rapidity `ζ = atanh |v|`.
    pub fn rapidity(&self) -> f64 {
        self.velocity.norm().atanh()
    }

    /// The boost matrix
    ///
    /// ```text
    /// L⁰⁰ = γ,  L⁰ⁱ = Lⁱ⁰ = γvᵢ,  Lⁱʲ = δᵢⱼ + (γ − 1) vᵢvⱼ / v²
    /// ```
    ///
    /// which equals `exp(ζ n̂·K)` and reduces to the familiar `γ, γv` block for
    /// motion along a single axis.
    pub fn matrix(&self) -> Matrix4 {
        let v = self.velocity.0;
        let g = self.gamma;
        let v2 = self.velocity.norm_sqr();
        let mut m = Matrix4::IDENTITY;
        m[(0, 0)] = g;
        for i in 0..3 {
            m[(0, i + 1)] = g * v[i];
            m[(i + 1, 0)] = g * v[i];
        }
        if v2 > 0.0 {
            let c = (g - 1.0) / v2;
            for i in 0..3 {
                for j in 0..3 {
                    m[(i + 1, j + 1)] += c * v[i] * v[j];
                }
            }
        }
        m
    }

    pub fn inverse(&self) -> FrameBoost {
        FrameBoost {
            velocity: -self.velocity,
            gamma: self.gamma,
        }
    }
}

/// Finite Lorentz boost taking components in a frame moving at `v` to the
/// frame in which that velocity is measured.
pub fn finite_boost(v: ThreeVector) -> Result<Matrix4> {
    Ok(FrameBoost::new(v)?.matrix())
}

/// The infinitesimal transformation `p` performed in `S'`, expressed in `S`.
///
/// Computed as the adjoint action of the finite boost on the algebra element,
/// so the result is exact (not first-order) in the frame velocity.
pub fn transform_params(p: &LieParams, frame_velocity: ThreeVector) -> Result<LieParams> {
    let l = finite_boost(frame_velocity)?;
    let conjugated = adjoint(&l, &lie_matrix(p))?;
    extract_params(&conjugated, DEFAULT_EXTRACT_TOL)
}

/// Solution of the two-frame experiment along `x₂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoFrameSolution {
    /// Boost parameter along `x₂` seen in `S`.
    pub delta_v2: f64,
    /// Rotation angle about `x₃` seen in `S`.
    pub delta_phi3: f64,
    /// Euclidean residual of the three-row least-squares solve.
    pub residual: f64,
}

/// Reproduces the two-frame experiment step by step.
///
/// In `S'` (moving at `v` along `x₁`) a particle with four-velocity
/// `u' = (u'⁰, 0, u'², 0)` is boosted along `x'₂` by `d`. Both four-velocities
/// are carried into `S` with the finite boost, and the observed change is
/// matched against `(I + d_v K₂ − d_φ S₃ − I)·u`, i.e. the three nonzero rows
///
/// ```text
/// δv₂·u²           = δu⁰
/// δφ₃·u²           = δu¹
/// δv₂·u⁰ − δφ₃·u¹  = δu²
/// ```
///
/// are solved for `(δv₂, δφ₃)` by least squares. The `S'` boost is applied as
/// the exact exponential, so the result matches `γd` and `γvd` only to first
/// order: the discrepancy is O(d²), and so is the consistency residual, which
/// is checked against `1e-10 + 4(γ(1+|v|)d)²·|u|`.
pub fn two_frame_boost(
    v: f64,
    u_prime: FourVector,
    delta_v_prime2: f64,
) -> Result<TwoFrameSolution> {
    if !u_prime.is_finite() || !delta_v_prime2.is_finite() {
        return Err(Error::InvalidInput("non-finite input".into()));
    }
    if u_prime[1] != 0.0 || u_prime[3] != 0.0 {
        return Err(Error::InvalidInput(format!(
            "u' must have zero x1 and x3 components, got {:?}",
            u_prime.0
        )));
    }
    let frame = FrameBoost::along_axis1(v)?;
    let l = frame.matrix();
    let boost_prime = mat_exp(&boost_generator(2)?, delta_v_prime2)?;

    let u = l * u_prime;
    let u_next = l * (boost_prime * u_prime);
    let du = u_next - u;

    // columns of the 3×2 system
    let c1 = [u[2], 0.0, u[0]];
    let c2 = [0.0, u[2], -u[1]];
    let rhs = [du[0], du[1], du[2]];
    let dot3 = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];

    let (g11, g12, g22) = (dot3(&c1, &c1), dot3(&c1, &c2), dot3(&c2, &c2));
    let det = g11 * g22 - g12 * g12;
    if g11 == 0.0 || g22 == 0.0 || det <= 1e-24 * g11 * g22 {
        return Err(Error::Underdetermined(format!(
            "u = {:?} leaves the rotation angle indeterminate (u² = 0)",
            u.0
        )));
    }
    let (r1, r2) = (dot3(&c1, &rhs), dot3(&c2, &rhs));
    let delta_v2 = (g22 * r1 - g12 * r2) / det;
    let delta_phi3 = (g11 * r2 - g12 * r1) / det;

    let residual = (0..3)
        .map(|i| c1[i] * delta_v2 + c2[i] * delta_phi3 - rhs[i])
        .map(|r| r * r)
        .sum::<f64>()
        .sqrt();
    let u_norm = u.0.iter().map(|c| c * c).sum::<f64>().sqrt();
    let scale = frame.gamma() * (1.0 + v.abs()) * delta_v_prime2.abs();
    let tolerance = 1e-10 + 4.0 * scale * scale * u_norm;
    if residual > tolerance {
        return Err(Error::InconsistentSystem {
            residual,
            tolerance,
        });
    }
    Ok(TwoFrameSolution {
        delta_v2,
        delta_phi3,
        residual,
    })
}
