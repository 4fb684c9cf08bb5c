//! Integer vectors in ℤ² used for lattice points and slopes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An integer 2-vector; doubles as lattice point and slope.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

pub type LatticePoint = Vec2;
pub type Slope = Vec2;

impl From<[i64; 2]> for Vec2 {
    fn from(v: [i64; 2]) -> Self {
        Vec2 { x: v[0], y: v[1] }
    }
}

impl From<Vec2> for [i64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Vec2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Integral length: gcd of the coordinates.
    pub fn lattice_length(self) -> i64 {
        self.x.abs().gcd(&self.y.abs())
    }

    pub fn primitive(self) -> Vec2 {
        let g = self.lattice_length();
        if g == 0 {
            self
        } else {
            Vec2::new(self.x / g, self.y / g)
        }
    }

    pub fn det(self, other: Vec2) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Rotation by +90°.
    pub fn rot90(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn mirror_x(self) -> Vec2 {
        Vec2::new(-self.x, self.y)
    }

    pub fn mirror_y(self) -> Vec2 {
        Vec2::new(self.x, -self.y)
    }

    /// Total order by polar angle in `[0, 2π)`; zero vectors sort first.
    pub fn angle_cmp(self, other: Vec2) -> Ordering {
        fn half(v: Vec2) -> u8 {
            if v.is_zero() {
                0
            } else if v.y > 0 || (v.y == 0 && v.x > 0) {
                1
            } else {
                2
            }
        }
        half(self)
            .cmp(&half(other))
            .then_with(|| 0.cmp(&self.det(other)))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<i64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: i64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}
