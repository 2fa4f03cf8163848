//! Square information-loss masks over adjacency images.
//!
//! Mask positions are 1-based upper-left corners drawn from `1..=n-s` on
//! both axes, so a mask never touches the last row or column of the image.
//! A null mask overwrites the square with 0 (missing edges look like absent
//! edges); a confusion mask overwrites it with 0.5 (missing edges are marked
//! unknown).

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GrayImage;
use crate::rng::Rng;

pub const NULL_FILL: f32 = 0.0;
pub const CONFUSION_FILL: f32 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskKind {
    Null,
    Confusion,
}

impl MaskKind {
    pub fn fill(self) -> f32 {
        match self {
            MaskKind::Null => NULL_FILL,
            MaskKind::Confusion => CONFUSION_FILL,
        }
    }
}

impl fmt::Display for MaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MaskKind::Null => "null",
            MaskKind::Confusion => "confusion",
        })
    }
}

impl FromStr for MaskKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "null" => Ok(MaskKind::Null),
            "confusion" => Ok(MaskKind::Confusion),
            _ => Err(Error::InvalidMask(format!(
                "unknown mask kind {s:?} (expected null or confusion)"
            ))),
        }
    }
}

/// One `size x size` mask with a 1-based upper-left corner at `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MaskSpec {
    pub kind: MaskKind,
    pub size: usize,
    pub row: usize,
    pub col: usize,
}

impl MaskSpec {
    pub fn new(kind: MaskKind, size: usize, row: usize, col: usize) -> Self {
        MaskSpec {
            kind,
            size,
            row,
            col,
        }
    }

    /// Mask of the given kind and size at a uniformly random admissible corner.
    pub fn random(kind: MaskKind, n: usize, size: usize, rng: &mut Rng) -> Result<Self> {
        let (row, col) = sample_mask_position(n, size, rng)?;
        Ok(MaskSpec::new(kind, size, row, col))
    }

    pub fn fill(&self) -> f32 {
        self.kind.fill()
    }

    /// Checks `1 <= size < n` and `1 <= row, col <= n - size`.
    pub fn validate(&self, n: usize) -> Result<()> {
        check_size(n, self.size)?;
        let max = n - self.size;
        for (axis, v) in [("row", self.row), ("col", self.col)] {
            if v < 1 || v > max {
                return Err(Error::InvalidMask(format!(
                    "{axis}={v} outside 1..={max} for a {}-pixel mask on a {n}-pixel image",
                    self.size
                )));
            }
        }
        Ok(())
    }

    /// 0-based row/col ranges covered by the mask.
    pub fn pixel_ranges(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let r0 = self.row - 1;
        let c0 = self.col - 1;
        (r0..r0 + self.size, c0..c0 + self.size)
    }

    pub fn contains(&self, row0: usize, col0: usize) -> bool {
        let (rows, cols) = self.pixel_ranges();
        rows.contains(&row0) && cols.contains(&col0)
    }
}

fn check_size(n: usize, s: usize) -> Result<()> {
    if s < 1 || s >= n {
        return Err(Error::InvalidMask(format!(
            "mask size {s} must satisfy 1 <= S <= {} for a {n}-pixel image",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Independent uniform corner coordinates in `1..=n-s`.
pub fn sample_mask_position(n: usize, s: usize, rng: &mut Rng) -> Result<(usize, usize)> {
    check_size(n, s)?;
    let max = n - s;
    let row = rng.gen_range(1..=max);
    let col = rng.gen_range(1..=max);
    Ok((row, col))
}

/// Copy of `img` with the masked square set to the mask's fill value.
pub fn apply_mask(img: &GrayImage, m: &MaskSpec) -> Result<GrayImage> {
    if !img.is_square() {
        return Err(Error::InvalidMask(format!(
            "image is {}x{}, masks need a square image",
            img.height(),
            img.width()
        )));
    }
    m.validate(img.height())?;
    let mut out = img.clone();
    let (rows, cols) = m.pixel_ranges();
    for r in rows {
        for c in cols.clone() {
            out.set(r, c, m.fill());
        }
    }
    Ok(out)
}

/// Fraction of pixels hidden by an `s x s` mask on an `n x n` image.
pub fn pixel_loss_ratio(n: usize, s: usize) -> f64 {
    let (num, den) = pixel_loss_fraction(n, s);
    num as f64 / den as f64
}

/// `(s^2, n^2)` as an unreduced exact fraction.
pub fn pixel_loss_fraction(n: usize, s: usize) -> (u64, u64) {
    let (n, s) = (n as u64, s as u64);
    (s * s, n * n)
}
