use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of Z^d. One-dimensional sites keep `y == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Site {
    pub x: i64,
    pub y: i64,
}

impl Site {
    pub const ORIGIN: Site = Site { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Site { x, y }
    }

    pub fn d1(x: i64) -> Self {
        Site { x, y: 0 }
    }

    pub fn l1(self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    pub fn linf(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    /// Coordinates as a vector of length `dim`.
    pub fn coords(self, dim: usize) -> Vec<i64> {
        if dim == 1 {
            vec![self.x]
        } else {
            vec![self.x, self.y]
        }
    }

    pub fn from_coords(c: &[i64]) -> Option<Self> {
        match c {
            [x] => Some(Site::d1(*x)),
            [x, y] => Some(Site::new(*x, *y)),
            _ => None,
        }
    }

    /// The 2d nearest neighbours of the site (d = 1 or 2).
    pub fn neighbours(self, dim: usize) -> Vec<Site> {
        let mut out = vec![self + Site::d1(-1), self + Site::d1(1)];
        if dim == 2 {
            out.push(self + Site::new(0, -1));
            out.push(self + Site::new(0, 1));
        }
        out
    }
}

impl Add for Site {
    type Output = Site;
    fn add(self, o: Site) -> Site {
        Site::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Site {
    type Output = Site;
    fn sub(self, o: Site) -> Site {
        Site::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Site {
    type Output = Site;
    fn neg(self) -> Site {
        Site::new(-self.x, -self.y)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}
