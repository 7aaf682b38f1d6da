use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{LinalgError, C64};

/// A point `(x : y)` of `P^1`.
///
/// Stored with the larger-modulus coordinate scaled to exactly `1`, so equal
/// points built from proportional pairs usually share a representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    x: C64,
    y: C64,
}

impl ProjPoint {
    pub const INF: ProjPoint = ProjPoint { x: C64::new(1.0, 0.0), y: C64::new(0.0, 0.0) };
    pub const ZERO: ProjPoint = ProjPoint { x: C64::new(0.0, 0.0), y: C64::new(1.0, 0.0) };
    pub const ONE: ProjPoint = ProjPoint { x: C64::new(1.0, 0.0), y: C64::new(1.0, 0.0) };

    pub fn new(x: C64, y: C64) -> Result<Self, LinalgError> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(LinalgError::ZeroPoint);
        }
        let (ax, ay) = (x.norm(), y.norm());
        if ax == 0.0 && ay == 0.0 {
            return Err(LinalgError::ZeroPoint);
        }
        Ok(if ax >= ay {
            ProjPoint { x: C64::new(1.0, 0.0), y: y / x }
        } else {
            ProjPoint { x: x / y, y: C64::new(1.0, 0.0) }
        })
    }

    /// The point `(v : 1)`, whose affine coordinate is `v`.
    pub fn from_affine(v: C64) -> Self {
        Self::new(v, C64::new(1.0, 0.0)).unwrap_or(Self::INF)
    }

    pub fn x(&self) -> C64 {
        self.x
    }

    pub fn y(&self) -> C64 {
        self.y
    }

    /// `x / y`, or `None` at infinity.
    pub fn affine(&self) -> Option<C64> {
        if self.y.norm() == 0.0 {
            None
        } else {
            Some(self.x / self.y)
        }
    }

    /// `[x_re, x_im, y_re, y_im]`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.x.re, self.x.im, self.y.re, self.y.im]
    }

    pub fn from_array(a: [f64; 4]) -> Result<Self, LinalgError> {
        ProjPoint::new(C64::new(a[0], a[1]), C64::new(a[2], a[3]))
    }

    /// Swapped coordinates `(y : x)`, i.e. affine value inverted.
    pub fn flip(&self) -> Self {
        ProjPoint { x: self.y, y: self.x }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            None => write!(f, "inf"),
            Some(v) => write!(f, "{:e},{:e}", v.re, v.im),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // normalisation is idempotent on representatives, so written points read back bit for bit
        let a = <[f64; 4]>::deserialize(d)?;
        ProjPoint::from_array(a).map_err(serde::de::Error::custom)
    }
}

/// `|a.x b.y - a.y b.x|` on representatives whose larger coordinate has modulus one.
pub fn proj_dist(a: &ProjPoint, b: &ProjPoint) -> f64 {
    let na = a.x.norm().max(a.y.norm());
    let nb = b.x.norm().max(b.y.norm());
    (a.x * b.y - a.y * b.x).norm() / (na * nb)
}

pub fn proj_eq(a: &ProjPoint, b: &ProjPoint, tol: f64) -> bool {
    proj_dist(a, b) <= tol
}
