//! Four-vectors, three-vectors and dense 4×4 matrices over the Minkowski
//! metric with signature (+,−,−,−) in units where c = 1.
//!
//! Matrices act on column four-vectors: element `(r, c)` multiplies
//! component `c` of the vector and contributes to component `r` of the
//! result. Index 0 is always the time component.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Absolute tolerance for algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Absolute tolerance for integrated quantities.
pub const INTEGRATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ThreeVector(pub [f64; 3]);

impl ThreeVector {
    pub const ZERO: ThreeVector = ThreeVector([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ThreeVector([x, y, z])
    }

    /// Unit vector along `axis` (1, 2 or 3).
    pub fn unit(axis: usize) -> Result<Self> {
        if !(1..=3).contains(&axis) {
            return Err(Error::InvalidAxis(axis));
        }
        let mut v = [0.0; 3];
        v[axis - 1] = 1.0;
        Ok(ThreeVector(v))
    }

    pub fn dot(&self, other: &ThreeVector) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &ThreeVector) -> ThreeVector {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        ThreeVector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> ThreeVector {
        ThreeVector(self.0.map(|c| c * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Index<usize> for ThreeVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for ThreeVector {
    type Output = ThreeVector;
    fn add(self, rhs: ThreeVector) -> ThreeVector {
        ThreeVector([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl Sub for ThreeVector {
    type Output = ThreeVector;
    fn sub(self, rhs: ThreeVector) -> ThreeVector {
        ThreeVector([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ])
    }
}

impl Neg for ThreeVector {
    type Output = ThreeVector;
    fn neg(self) -> ThreeVector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for ThreeVector {
    type Output = ThreeVector;
    fn mul(self, s: f64) -> ThreeVector {
        self.scale(s)
    }
}

/// A contravariant four-vector `(x⁰, x¹, x², x³)`, time component first.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);
    /// Four-velocity of a particle at rest.
    pub const REST: FourVector = FourVector([1.0, 0.0, 0.0, 0.0]);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    pub fn from_parts(time: f64, space: ThreeVector) -> Self {
        FourVector([time, space.0[0], space.0[1], space.0[2]])
    }

    /// Unit timelike four-velocity with the given spatial part, `u⁰ = √(1 + |u|²)`.
    pub fn velocity_from_spatial(space: ThreeVector) -> Self {
        FourVector::from_parts((1.0 + space.norm_sqr()).sqrt(), space)
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> ThreeVector {
        ThreeVector([self.0[1], self.0[2], self.0[3]])
    }

    /// Minkowski square `u·u`.
    pub fn norm_sqr(&self) -> f64 {
        minkowski_dot(self, self)
    }

    pub fn scale(&self, s: f64) -> FourVector {
        FourVector(self.0.map(|c| c * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Largest absolute difference over the four components.
    pub fn max_abs_diff(&self, other: &FourVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for FourVector {
    fn add_assign(&mut self, rhs: FourVector) {
        *self = *self + rhs;
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        self.scale(s)
    }
}

/// `a⁰b⁰ − a¹b¹ − a²b² − a³b³`.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

/// Dense 4×4 real matrix, row-major storage, acting on column vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Matrix4(pub [[f64; 4]; 4]);

impl Matrix4 {
    pub const ZERO: Matrix4 = Matrix4([[0.0; 4]; 4]);
    pub const IDENTITY: Matrix4 = Matrix4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);
    /// The metric η = diag(1, −1, −1, −1).
    pub const METRIC: Matrix4 = Matrix4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
    ]);

    pub fn from_fn(f: impl Fn(usize, usize) -> f64) -> Self {
        Matrix4(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn transpose(&self) -> Matrix4 {
        Matrix4::from_fn(|r, c| self.0[c][r])
    }

    pub fn scale(&self, s: f64) -> Matrix4 {
        Matrix4::from_fn(|r, c| self.0[r][c] * s)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..4)
            .map(|c| (0..4).map(|r| self.0[r][c].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Matrix4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.0[r][c]
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

impl Neg for Matrix4 {
    type Output = Matrix4;
    fn neg(self) -> Matrix4 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Matrix4 {
    type Output = Matrix4;
    fn mul(self, s: f64) -> Matrix4 {
        self.scale(s)
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        mat_mul(&self, &rhs)
    }
}

impl Mul<FourVector> for Matrix4 {
    type Output = FourVector;
    fn mul(self, u: FourVector) -> FourVector {
        mat_apply(&self, &u)
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(
                f,
                "[{:>12.6} {:>12.6} {:>12.6} {:>12.6}]",
                row[0], row[1], row[2], row[3]
            )?;
        }
        Ok(())
    }
}

pub fn mat_apply(m: &Matrix4, u: &FourVector) -> FourVector {
    FourVector(std::array::from_fn(|r| {
        m.0[r][0] * u.0[0] + m.0[r][1] * u.0[1] + m.0[r][2] * u.0[2] + m.0[r][3] * u.0[3]
    }))
}

pub fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    Matrix4::from_fn(|r, c| (0..4).map(|k| a.0[r][k] * b.0[k][c]).sum())
}

/// Gauss–Jordan inverse with partial pivoting.
///
/// A pivot smaller than `4ε·max|A|` is treated as singular.
pub fn mat_inverse(a: &Matrix4) -> Result<Matrix4> {
    let scale = a.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Singular { pivot: 0.0 });
    }
    let threshold = 4.0 * f64::EPSILON * scale;
    let mut lhs = a.0;
    let mut rhs = Matrix4::IDENTITY.0;

    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&i, &j| lhs[i][col].abs().total_cmp(&lhs[j][col].abs()))
            .unwrap_or(col);
        let pivot = lhs[pivot_row][col];
        if pivot.abs() <= threshold {
            return Err(Error::Singular { pivot });
        }
        lhs.swap(col, pivot_row);
        rhs.swap(col, pivot_row);

        let inv = 1.0 / pivot;
        for k in 0..4 {
            lhs[col][k] *= inv;
            rhs[col][k] *= inv;
        }
        for row in 0..4 {
            if row == col {
                continue;
            }
            let factor = lhs[row][col];
            if factor != 0.0 {
                for k in 0..4 {
                    lhs[row][k] -= factor * lhs[col][k];
                    rhs[row][k] -= factor * rhs[col][k];
                }
            }
        }
    }
    Ok(Matrix4(rhs))
}

/// Lorentz factor γ = (1 − v²)^(−1/2) for a speed `|v| < 1`.
pub fn lorentz_factor(speed: f64) -> Result<f64> {
    if !speed.is_finite() || speed.abs() >= 1.0 {
        return Err(Error::Superluminal { speed: speed.abs() });
    }
    Ok(1.0 / (1.0 - speed * speed).sqrt())
}
