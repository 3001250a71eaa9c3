use serde::Serialize;

use crate::error::{domain, Result};

/// Uniform grid on `[r_min, r_max]` with `r_min > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    points: usize,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 16;

    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_min < r_max) {
            return Err(domain(format!(
                "grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if points < Self::MIN_POINTS {
            return Err(domain(format!(
                "grid needs at least {} points, got {points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            r_min,
            r_max,
            points,
        })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.r_max
        } else {
            self.r_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.node(i)).collect()
    }

    /// Same interval with the spacing halved (`2 points - 1` nodes).
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points - 1,
            ..*self
        }
    }

    /// Trapezoid weights for `integral f(r) r dr`.
    pub fn radial_weights(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points)
            .map(|i| {
                let w = if i == 0 || i + 1 == self.points {
                    0.5 * h
                } else {
                    h
                };
                w * self.node(i)
            })
            .collect()
    }
}
