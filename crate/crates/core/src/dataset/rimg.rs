//! `RIMG1` binary images.
//!
//! Layout: magic `RIMG`, version byte `0x01`, height and width as
//! little-endian `u32`, then `height * width` little-endian `f32` pixels in
//! row-major order.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::GrayImage;

pub const RIMG_MAGIC: &[u8; 4] = b"RIMG";
pub const RIMG_VERSION: u8 = 0x01;
pub const RIMG_HEADER_LEN: usize = 4 + 1 + 4 + 4;

pub fn encode_rimg(img: &GrayImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(RIMG_HEADER_LEN + 4 * img.pixels().len());
    out.extend_from_slice(RIMG_MAGIC);
    out.push(RIMG_VERSION);
    out.extend_from_slice(&(img.height() as u32).to_le_bytes());
    out.extend_from_slice(&(img.width() as u32).to_le_bytes());
    for p in img.pixels() {
        out.extend_from_slice(&p.to_le_bytes());
    }
    out
}

pub fn decode_rimg(bytes: &[u8]) -> Result<GrayImage> {
    const CTX: &str = "RIMG1";
    if bytes.len() < RIMG_HEADER_LEN {
        return Err(Error::parse(
            CTX,
            format!("truncated header ({} bytes)", bytes.len()),
        ));
    }
    if &bytes[..4] != RIMG_MAGIC {
        return Err(Error::parse(CTX, "bad magic"));
    }
    if bytes[4] != RIMG_VERSION {
        return Err(Error::parse(
            CTX,
            format!("unsupported version {}", bytes[4]),
        ));
    }
    let u32_at = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()) as usize;
    let height = u32_at(5);
    let width = u32_at(9);
    let payload = &bytes[RIMG_HEADER_LEN..];
    let expected = height
        .checked_mul(width)
        .and_then(|c| c.checked_mul(4))
        .ok_or_else(|| Error::parse(CTX, "dimensions overflow"))?;
    if payload.len() != expected {
        return Err(Error::parse(
            CTX,
            format!(
                "{height}x{width} image needs {expected} payload bytes, found {}",
                payload.len()
            ),
        ));
    }
    let pixels: Vec<f32> = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    GrayImage::from_pixels(height, width, pixels)
        .ok_or_else(|| Error::parse(CTX, "pixel intensity outside [0, 1]"))
}

pub fn write_image(img: &GrayImage, path: &Path) -> Result<()> {
    fs::write(path, encode_rimg(img)).map_err(|e| Error::io(path, e))
}

pub fn read_image(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_rimg(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_by_two_layout() {
        let img = GrayImage::from_pixels(2, 2, vec![0.0, 1.0, 0.5, 1.0]).unwrap();
        let bytes = encode_rimg(&img);
        assert_eq!(bytes.len(), 5 + 8 + 16);
        assert_eq!(&bytes[..5], b"RIMG\x01");
        assert_eq!(&bytes[5..13], &[2, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(&bytes[17..21], &1.0f32.to_le_bytes());
        assert_eq!(decode_rimg(&bytes).unwrap(), img);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        let img = GrayImage::from_pixels(2, 2, vec![0.0, 1.0, 0.5, 1.0]).unwrap();
        let bytes = encode_rimg(&img);
        for cut in [0, 3, 12, 20, bytes.len() - 1] {
            assert!(matches!(
                decode_rimg(&bytes[..cut]),
                Err(Error::Parse { .. })
            ));
        }
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(decode_rimg(&bad).is_err());
        let mut bad = bytes.clone();
        bad[4] = 2;
        assert!(decode_rimg(&bad).is_err());
        let mut bad = bytes.clone();
        bad[13..17].copy_from_slice(&2.0f32.to_le_bytes());
        assert!(decode_rimg(&bad).is_err());
        let mut huge = bytes[..13].to_vec();
        huge[5..13].copy_from_slice(&[0xff; 8]);
        assert!(decode_rimg(&huge).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.rimg");
        let img = GrayImage::from_pixels(1, 3, vec![0.25, 0.0, 1.0]).unwrap();
        write_image(&img, &path).unwrap();
        assert_eq!(read_image(&path).unwrap(), img);
        assert!(read_image(&dir.path().join("missing.rimg"))
            .unwrap_err()
            .is_io());
    }

    proptest! {
        #[test]
        fn encode_decode_is_identity(h in 0usize..6, w in 0usize..6, seed in any::<u64>()) {
            let mut rng = crate::rng::seeded(seed);
            let pixels: Vec<f32> = (0..h * w).map(|_| rand::Rng::gen_range(&mut rng, 0.0f32..=1.0)).collect();
            let img = GrayImage::from_pixels(h, w, pixels).unwrap();
            prop_assert_eq!(decode_rimg(&encode_rimg(&img)).unwrap(), img);
        }
    }
}
