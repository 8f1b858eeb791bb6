//! Electromagnetic fields as Lorentz algebra elements.
//!
//! A field `(E, B)` is identified with the algebra element whose boost part is
//! `E` and whose rotation part is `B`, so the mixed tensor `Fᵅ_β` is exactly
//! [`lie_matrix`] of those parameters.

use crate::error::{Error, Result};
use crate::frames::{transform_params, FrameBoost};
use crate::lie::{lie_matrix, LieParams};
use crate::minkowski::{FourVector, Matrix4, ThreeVector};

/// Default minimum radius below which a point source is treated as singular.
pub const DEFAULT_R_MIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EMField {
    pub e: ThreeVector,
    pub b: ThreeVector,
}

impl EMField {
    pub const ZERO: EMField = EMField {
        e: ThreeVector::ZERO,
        b: ThreeVector::ZERO,
    };

    pub fn new(e: ThreeVector, b: ThreeVector) -> Self {
        EMField { e, b }
    }

    pub fn electric(e: ThreeVector) -> Self {
        EMField {
            e,
            b: ThreeVector::ZERO,
        }
    }

    pub fn magnetic(b: ThreeVector) -> Self {
        EMField {
            e: ThreeVector::ZERO,
            b,
        }
    }

    pub fn as_params(&self) -> LieParams {
        LieParams {
            boost: self.e,
            rotation: self.b,
        }
    }

    pub fn from_params(p: &LieParams) -> Self {
        EMField {
            e: p.boost,
            b: p.rotation,
        }
    }

    /// `E·B`, a Lorentz invariant.
    pub fn e_dot_b(&self) -> f64 {
        self.e.dot(&self.b)
    }

    /// `|E|² − |B|²`, a Lorentz invariant.
    pub fn e2_minus_b2(&self) -> f64 {
        self.e.norm_sqr() - self.b.norm_sqr()
    }

    pub fn is_zero(&self) -> bool {
        self.e == ThreeVector::ZERO && self.b == ThreeVector::ZERO
    }

    /// Component names in the order of [`EMField::components`].
    pub const COMPONENT_NAMES: [&'static str; 6] = ["E1", "E2", "E3", "B1", "B2", "B3"];

    pub fn components(&self) -> [f64; 6] {
        self.as_params().components()
    }
}

impl std::ops::Add for EMField {
    type Output = EMField;
    fn add(self, rhs: EMField) -> EMField {
        EMField {
            e: self.e + rhs.e,
            b: self.b + rhs.b,
        }
    }
}

/// The mixed field tensor `Fᵅ_β`.
pub fn field_matrix(f: &EMField) -> Matrix4 {
    lie_matrix(&f.as_params())
}

/// The antisymmetric covariant tensor `F_αβ = η_αδ Fᵟ_β`.
pub fn covariant_field_tensor(f: &EMField) -> Matrix4 {
    let mixed = field_matrix(f);
    // η = diag(1,−1,−1,−1): negate the spatial rows
    Matrix4::from_fn(|r, c| {
        if r == 0 {
            mixed[(r, c)]
        } else {
            -mixed[(r, c)]
        }
    })
}

/// Fields in `S'` (moving at `+v` along `x₁` in `S`) expressed in `S`:
///
/// ```text
/// E₁ = E'₁   E₂ = γ(E'₂ + vB'₃)   E₃ = γ(E'₃ − vB'₂)
/// B₁ = B'₁   B₂ = γ(B'₂ − vE'₃)   B₃ = γ(B'₃ + vE'₂)
/// ```
pub fn transform_field_axis1(f: &EMField, v: f64) -> Result<EMField> {
    let g = FrameBoost::along_axis1(v)?.gamma();
    let [e1, e2, e3] = f.e.0;
    let [b1, b2, b3] = f.b.0;
    Ok(EMField {
        e: ThreeVector::new(e1, g * (e2 + v * b3), g * (e3 - v * b2)),
        b: ThreeVector::new(b1, g * (b2 - v * e3), g * (b3 + v * e2)),
    })
}

/// Fields in a frame moving at `frame_velocity`, expressed in the frame where
/// that velocity is measured. Goes through the adjoint action of the finite
/// boost on the field tensor.
pub fn transform_field_general(f: &EMField, frame_velocity: ThreeVector) -> Result<EMField> {
    match transform_params(&f.as_params(), frame_velocity) {
        Ok(p) => Ok(EMField::from_params(&p)),
        Err(Error::NotLieElement { detail }) => Err(Error::InternalConsistency(format!(
            "boosted field tensor lost its algebra shape: {detail}"
        ))),
        Err(e) => Err(e),
    }
}

/// Static point source at the spatial origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coulomb {
    /// Field strength at unit radius.
    pub q: f64,
    pub r_min: f64,
}

impl Coulomb {
    pub fn new(q: f64) -> Self {
        Coulomb {
            q,
            r_min: DEFAULT_R_MIN,
        }
    }

    pub fn field_at(&self, event: &FourVector) -> Result<EMField> {
        let r_vec = event.spatial();
        let r = r_vec.norm();
        if r.is_nan() || r <= self.r_min || r == 0.0 {
            return Err(Error::FieldSingularity {
                radius: r,
                r_min: self.r_min,
            });
        }
        Ok(EMField::electric(r_vec.scale(self.q / (r * r * r))))
    }
}

/// `E = q r̂ / r²`, `B = 0`, with the default minimum radius.
pub fn coulomb_field(event: &FourVector, q: f64) -> Result<EMField> {
    Coulomb::new(q).field_at(event)
}

/// A pure mapping from events to fields.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldProvider {
    Uniform(EMField),
    Coulomb(Coulomb),
    Superposition(Vec<FieldProvider>),
}

impl FieldProvider {
    pub fn eval(&self, event: &FourVector) -> Result<EMField> {
        match self {
            FieldProvider::Uniform(f) => Ok(*f),
            FieldProvider::Coulomb(c) => c.field_at(event),
            FieldProvider::Superposition(parts) => parts
                .iter()
                .try_fold(EMField::ZERO, |acc, p| Ok(acc + p.eval(event)?)),
        }
    }

    /// True when the field does not depend on the event.
    pub fn is_uniform(&self) -> bool {
        match self {
            FieldProvider::Uniform(_) => true,
            FieldProvider::Coulomb(_) => false,
            FieldProvider::Superposition(parts) => parts.iter().all(FieldProvider::is_uniform),
        }
    }

    /// True when no provider in the tree has an electric part.
    pub fn is_pure_magnetic(&self) -> bool {
        match self {
            FieldProvider::Uniform(f) => f.e == ThreeVector::ZERO,
            FieldProvider::Coulomb(c) => c.q == 0.0,
            FieldProvider::Superposition(parts) => {
                parts.iter().all(FieldProvider::is_pure_magnetic)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{boost_generator, rotation_generator};

    fn close(a: &EMField, b: &EMField, tol: f64) -> bool {
        a.components()
            .iter()
            .zip(b.components().iter())
            .all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn field_matrix_examples() {
        let m = field_matrix(&EMField::electric(ThreeVector::new(1.0, 0.0, 0.0)));
        assert_eq!(m, boost_generator(1).unwrap());
        let m = field_matrix(&EMField::magnetic(ThreeVector::new(0.0, 0.0, 1.0)));
        assert_eq!(m, -rotation_generator(3).unwrap());
        assert_eq!(m[(1, 2)], 1.0);
        assert_eq!(m[(2, 1)], -1.0);
        let f = EMField::new(
            ThreeVector::new(0.1, 0.2, 0.3),
            ThreeVector::new(0.4, 0.5, 0.6),
        );
        assert_eq!(field_matrix(&f), lie_matrix(&f.as_params()));
    }

    #[test]
    fn covariant_tensor() {
        let t = covariant_field_tensor(&EMField::electric(ThreeVector::new(1.0, 0.0, 0.0)));
        let mut expected = Matrix4::ZERO;
        expected[(0, 1)] = 1.0;
        expected[(1, 0)] = -1.0;
        assert_eq!(t, expected);
        assert_eq!(t, Matrix4::METRIC * boost_generator(1).unwrap());
        assert_eq!(covariant_field_tensor(&EMField::ZERO), Matrix4::ZERO);
        let f = EMField::new(
            ThreeVector::new(-1.5, 0.2, 3.0),
            ThreeVector::new(0.7, -0.25, 2.0),
        );
        let t = covariant_field_tensor(&f);
        assert_eq!(t.transpose(), -t);
    }

    #[test]
    fn axis1_examples() {
        let f = EMField::new(
            ThreeVector::new(0.3, -1.0, 2.0),
            ThreeVector::new(0.5, 0.1, -0.2),
        );
        assert_eq!(transform_field_axis1(&f, 0.0).unwrap(), f);

        let out = transform_field_axis1(&EMField::electric(ThreeVector::new(0.0, 1.0, 0.0)), 0.6)
            .unwrap();
        let expected = EMField::new(
            ThreeVector::new(0.0, 1.25, 0.0),
            ThreeVector::new(0.0, 0.0, 0.75),
        );
        assert!(close(&out, &expected, 1e-15));

        let out = transform_field_axis1(&EMField::magnetic(ThreeVector::new(0.0, 0.0, 1.0)), 0.6)
            .unwrap();
        let expected = EMField::new(
            ThreeVector::new(0.0, 0.75, 0.0),
            ThreeVector::new(0.0, 0.0, 1.25),
        );
        assert!(close(&out, &expected, 1e-15));

        assert!(matches!(
            transform_field_axis1(&f, 1.0),
            Err(Error::Superluminal { .. })
        ));
    }

    #[test]
    fn general_examples() {
        let f = EMField::electric(ThreeVector::new(0.0, 1.0, 0.0));
        let out = transform_field_general(&f, ThreeVector::new(0.6, 0.0, 0.0)).unwrap();
        let expected = EMField::new(
            ThreeVector::new(0.0, 1.25, 0.0),
            ThreeVector::new(0.0, 0.0, 0.75),
        );
        assert!(close(&out, &expected, 1e-12));
        let g = EMField::new(
            ThreeVector::new(0.3, -1.0, 2.0),
            ThreeVector::new(0.5, 0.1, -0.2),
        );
        assert!(close(
            &transform_field_general(&g, ThreeVector::ZERO).unwrap(),
            &g,
            1e-15
        ));
        assert!(transform_field_general(&g, ThreeVector::new(0.0, 0.99, 0.2)).is_err());
    }

    #[test]
    fn coulomb_examples() {
        let f = coulomb_field(&FourVector::new(0.0, 1.0, 0.0, 0.0), 1.0).unwrap();
        assert_eq!(f, EMField::electric(ThreeVector::new(1.0, 0.0, 0.0)));
        let f = coulomb_field(&FourVector::new(7.0, 2.0, 0.0, 0.0), 1.0).unwrap();
        assert_eq!(f.e, ThreeVector::new(0.25, 0.0, 0.0));
        assert_eq!(f.b, ThreeVector::ZERO);
        assert!(matches!(
            coulomb_field(&FourVector::ZERO, 1.0),
            Err(Error::FieldSingularity { .. })
        ));
        let c = Coulomb { q: 1.0, r_min: 0.1 };
        assert!(c.field_at(&FourVector::new(0.0, 0.05, 0.0, 0.0)).is_err());
        assert!(c.field_at(&FourVector::new(0.0, 0.0, 0.2, 0.0)).is_ok());
    }

    #[test]
    fn superposition_adds() {
        let fp = FieldProvider::Superposition(vec![
            FieldProvider::Uniform(EMField::new(
                ThreeVector::new(1.0, 0.0, 0.0),
                ThreeVector::new(0.0, 0.0, 2.0),
            )),
            FieldProvider::Coulomb(Coulomb::new(-1.0)),
        ]);
        let f = fp.eval(&FourVector::new(0.0, 0.0, 2.0, 0.0)).unwrap();
        assert_eq!(f.e, ThreeVector::new(1.0, -0.25, 0.0));
        assert_eq!(f.b, ThreeVector::new(0.0, 0.0, 2.0));
        assert!(!fp.is_uniform());
        assert!(!fp.is_pure_magnetic());
        assert!(fp.eval(&FourVector::ZERO).is_err());
    }
}
