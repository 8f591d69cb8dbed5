use crate::error::{Axis, Error};

/// Two equal-length vectors of finite observations, paired index by index.
///
/// Construction is the single validation gate for the whole crate: once a
/// `PairedSample` exists, every downstream kernel may assume equal lengths,
/// `n >= 2`, and fully finite values, which is what lets the sorting and
/// counting code use plain `partial_cmp` without a panic path.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl PairedSample {
    /// Validates and wraps two observation vectors.
    ///
    /// Checks, in order: equal lengths, at least two observations, and no
    /// NaN or infinity anywhere (x is scanned before y, so the reported
    /// offender is the first in that order).
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, Error> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                x_len: x.len(),
                y_len: y.len(),
            });
        }
        if x.len() < 2 {
            return Err(Error::TooShort { n: x.len() });
        }
        for (axis, values) in [(Axis::X, &x), (Axis::Y, &y)] {
            if let Some(index) = values.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    axis,
                    index,
                    value: values[index],
                });
            }
        }
        Ok(PairedSample { x, y })
    }

    /// Convenience constructor that copies out of slices.
    pub fn from_slices(x: &[f64], y: &[f64]) -> Result<Self, Error> {
        Self::new(x.to_vec(), y.to_vec())
    }

    /// The first observation vector.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// The second observation vector.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Number of paired observations (always at least 2).
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// The same observations with the roles of x and y exchanged.
    pub fn swapped(&self) -> PairedSample {
        PairedSample {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}
