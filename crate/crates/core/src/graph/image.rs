/// Single-channel image, row-major, intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    height: usize,
    width: usize,
    pixels: Vec<f32>,
}

impl GrayImage {
    pub fn zeros(height: usize, width: usize) -> Self {
        GrayImage {
            height,
            width,
            pixels: vec![0.0; height * width],
        }
    }

    /// Returns `None` when the buffer length or any intensity is invalid.
    pub fn from_pixels(height: usize, width: usize, pixels: Vec<f32>) -> Option<Self> {
        if pixels.len() != height.checked_mul(width)? {
            return None;
        }
        if !pixels.iter().all(|p| (0.0..=1.0).contains(p)) {
            return None;
        }
        Some(GrayImage {
            height,
            width,
            pixels,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_square(&self) -> bool {
        self.height == self.width
    }

    pub fn pixels(&self) -> &[f32] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f32 {
        self.pixels[row * self.width + col]
    }

    /// Panics if `value` is outside `[0, 1]`.
    pub fn set(&mut self, row: usize, col: usize, value: f32) {
        assert!(
            (0.0..=1.0).contains(&value),
            "intensity {value} outside [0,1]"
        );
        self.pixels[row * self.width + col] = value;
    }
}
