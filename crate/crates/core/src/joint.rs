use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Number of joints per arm (J1..J3 plus the gripper).
pub const JOINTS: usize = 4;

/// Index of the gripper joint (J4).
pub const GRIPPER: usize = 3;

/// One scalar per joint, J1..J4. Used for angles, velocities and torques.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JointVector(pub [f64; JOINTS]);

impl JointVector {
    pub const ZERO: JointVector = JointVector([0.0; JOINTS]);

    pub const fn new(values: [f64; JOINTS]) -> Self {
        Self(values)
    }

    pub const fn splat(value: f64) -> Self {
        Self([value; JOINTS])
    }

    /// Vector that is zero everywhere except the gripper.
    pub fn gripper(value: f64) -> Self {
        let mut v = Self::ZERO;
        v.0[GRIPPER] = value;
        v
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self(self.0.map(f))
    }

    pub fn zip_with(self, other: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = [0.0; JOINTS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = f(self.0[i], other.0[i]);
        }
        Self(out)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.0.iter()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl From<[f64; JOINTS]> for JointVector {
    fn from(values: [f64; JOINTS]) -> Self {
        Self(values)
    }
}

impl Index<usize> for JointVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for JointVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for JointVector {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for JointVector {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for JointVector {
    type Output = Self;

    fn neg(self) -> Self {
        self.map(|v| -v)
    }
}

impl Mul<f64> for JointVector {
    type Output = Self;

    fn mul(self, k: f64) -> Self {
        self.map(|v| v * k)
    }
}

impl Mul<JointVector> for JointVector {
    type Output = Self;

    /// Element-wise product.
    fn mul(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a * b)
    }
}
