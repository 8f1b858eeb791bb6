//! The Lorentz algebra in the (boost, rotation) basis.
//!
//! An algebra element is written `Λ = ε·K − b·S`, where `K_i` are the boost
//! generators and `S_i` the rotation generators. Rotations enter with a minus
//! sign, so the spatial block of `Λ` carries `+b₃` at `(1,2)`, `−b₂` at `(1,3)`
//! and `+b₁` at `(2,3)`. Every other module converts between parameters and
//! matrices through [`lie_matrix`] and [`extract_params`] only.

use crate::error::{Error, Result};
use crate::minkowski::{mat_inverse, Matrix4, ThreeVector};

/// Default shape tolerance for [`extract_params`].
pub const DEFAULT_EXTRACT_TOL: f64 = 1e-9;

/// Largest `‖tM‖₁` accepted by [`mat_exp`] and [`mat_expm1`].
pub const MAX_EXP_NORM: f64 = 10.0;

/// Six real parameters of a Lorentz algebra element.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LieParams {
    pub boost: ThreeVector,
    pub rotation: ThreeVector,
}

impl LieParams {
    pub const ZERO: LieParams = LieParams {
        boost: ThreeVector::ZERO,
        rotation: ThreeVector::ZERO,
    };

    pub fn new(boost: ThreeVector, rotation: ThreeVector) -> Self {
        LieParams { boost, rotation }
    }

    pub fn pure_boost(boost: ThreeVector) -> Self {
        LieParams {
            boost,
            rotation: ThreeVector::ZERO,
        }
    }

    pub fn pure_rotation(rotation: ThreeVector) -> Self {
        LieParams {
            boost: ThreeVector::ZERO,
            rotation,
        }
    }

    pub fn scale(&self, s: f64) -> LieParams {
        LieParams {
            boost: self.boost.scale(s),
            rotation: self.rotation.scale(s),
        }
    }

    /// Components in the order (ε₁, ε₂, ε₃, b₁, b₂, b₃).
    pub fn components(&self) -> [f64; 6] {
        let (e, b) = (self.boost.0, self.rotation.0);
        [e[0], e[1], e[2], b[0], b[1], b[2]]
    }

    pub fn max_abs_diff(&self, other: &LieParams) -> f64 {
        self.components()
            .iter()
            .zip(other.components().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_axis(axis: usize) -> Result<usize> {
    if (1..=3).contains(&axis) {
        Ok(axis)
    } else {
        Err(Error::InvalidAxis(axis))
    }
}

/// Boost generator `K_axis`: ones at `(0, axis)` and `(axis, 0)`.
pub fn boost_generator(axis: usize) -> Result<Matrix4> {
    let a = check_axis(axis)?;
    let mut m = Matrix4::ZERO;
    m[(0, a)] = 1.0;
    m[(a, 0)] = 1.0;
    Ok(m)
}

/// Rotation generator `S_axis`.
///
/// `S_1` has −1 at (2,3), `S_2` has −1 at (3,1), `S_3` has −1 at (1,2), each
/// with the opposite sign mirrored across the diagonal.
pub fn rotation_generator(axis: usize) -> Result<Matrix4> {
    let a = check_axis(axis)?;
    // cyclic successors of the axis: (2,3), (3,1), (1,2)
    let i = a % 3 + 1;
    let j = (a + 1) % 3 + 1;
    let mut m = Matrix4::ZERO;
    m[(i, j)] = -1.0;
    m[(j, i)] = 1.0;
    Ok(m)
}

/// The algebra element `Λ = ε·K − b·S` for the given parameters.
pub fn lie_matrix(p: &LieParams) -> Matrix4 {
    let [e1, e2, e3] = p.boost.0;
    let [b1, b2, b3] = p.rotation.0;
    Matrix4([
        [0.0, e1, e2, e3],
        [e1, 0.0, b3, -b2],
        [e2, -b3, 0.0, b1],
        [e3, b2, -b1, 0.0],
    ])
}

/// Inverse of [`lie_matrix`]. Fails when `m` deviates from the algebra shape
/// (zero diagonal, symmetric time row/column, antisymmetric spatial block) by
/// more than `tol`.
pub fn extract_params(m: &Matrix4, tol: f64) -> Result<LieParams> {
    let mut worst = (0.0f64, String::new());
    let mut note = |dev: f64, what: String| {
        if dev > worst.0 {
            worst = (dev, what);
        }
    };
    for i in 0..4 {
        note(
            m[(i, i)].abs(),
            format!("diagonal ({i},{i}) = {:e}", m[(i, i)]),
        );
    }
    for i in 1..4 {
        let d = (m[(0, i)] - m[(i, 0)]).abs();
        note(d, format!("time row/column mismatch at index {i}: {:e}", d));
        for j in (i + 1)..4 {
            let d = (m[(i, j)] + m[(j, i)]).abs();
            note(
                d,
                format!("spatial block not antisymmetric at ({i},{j}): {:e}", d),
            );
        }
    }
    if !m.is_finite() || worst.0 > tol {
        let detail = if m.is_finite() {
            worst.1
        } else {
            "non-finite entry".to_string()
        };
        return Err(Error::NotLieElement { detail });
    }
    Ok(LieParams {
        boost: ThreeVector([m[(0, 1)], m[(0, 2)], m[(0, 3)]]),
        rotation: ThreeVector([m[(2, 3)], -m[(1, 3)], m[(1, 2)]]),
    })
}

/// `exp(tM) − I`, computed without forming the identity so that small
/// perturbations keep full relative precision.
///
/// Scaling and squaring over a truncated Taylor series: the argument is halved
/// until `‖A‖₁ ≤ 1/2`, the series is summed to machine precision, and the
/// result is squared back via `(I + Y)² − I = Y(2I + Y)`.
pub fn mat_expm1(m: &Matrix4, t: f64) -> Result<Matrix4> {
    let a = m.scale(t);
    let norm = if a.is_finite() {
        a.norm_one()
    } else {
        f64::INFINITY
    };
    if norm > MAX_EXP_NORM {
        return Err(Error::NormOverflow {
            norm,
            limit: MAX_EXP_NORM,
        });
    }
    if norm == 0.0 {
        return Ok(Matrix4::ZERO);
    }

    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let a = a.scale(0.5f64.powi(squarings as i32));

    let mut term = a;
    let mut sum = a;
    for n in 2..=30 {
        term = (term * a).scale(1.0 / n as f64);
        sum = sum + term;
        if term.norm_one() <= f64::EPSILON * 1e-2 * sum.norm_one() {
            break;
        }
    }

    for _ in 0..squarings {
        sum = sum.scale(2.0) + sum * sum;
    }
    Ok(sum)
}

/// Matrix exponential `exp(tM)`.
///
/// Accurate to about 1e-13 relative for `‖tM‖₁ ≤ 10`; larger arguments are
/// rejected with [`Error::NormOverflow`].
pub fn mat_exp(m: &Matrix4, t: f64) -> Result<Matrix4> {
    Ok(Matrix4::IDENTITY + mat_expm1(m, t)?)
}

pub fn commutator(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    *a * *b - *b * *a
}

/// Conjugation `L·M·L⁻¹`: the element `M` of one frame as seen from a frame
/// related to it by `L`.
pub fn adjoint(l: &Matrix4, m: &Matrix4) -> Result<Matrix4> {
    let inv = mat_inverse(l)?;
    Ok(*l * *m * inv)
}
