//! Planar 4:2:0 frames with 8-bit samples.

use crate::error::{Error, Result};

/// One video frame: full-resolution luma plane plus half-resolution chroma
/// planes. Dimensions are luma pixels and must be multiples of 16 so the
/// frame tiles exactly into macroblocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub width: usize,
    pub height: usize,
    pub y: Vec<u8>,
    pub u: Vec<u8>,
    pub v: Vec<u8>,
}

impl Frame {
    /// Mid-gray frame of the given dimensions.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            y: vec![128; width * height],
            u: vec![128; (width / 2) * (height / 2)],
            v: vec![128; (width / 2) * (height / 2)],
        })
    }

    pub fn from_planes(width: usize, height: usize, y: Vec<u8>, u: Vec<u8>, v: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        let cw = width / 2;
        let ch = height / 2;
        if y.len() != width * height || u.len() != cw * ch || v.len() != cw * ch {
            return Err(Error::Dimension(format!(
                "plane sizes ({}, {}, {}) do not match {width}x{height} 4:2:0",
                y.len(),
                u.len(),
                v.len()
            )));
        }
        Ok(Self { width, height, y, u, v })
    }

    pub fn chroma_width(&self) -> usize {
        self.width / 2
    }

    pub fn chroma_height(&self) -> usize {
        self.height / 2
    }

    /// Total bytes of one frame in planar order (Y then U then V).
    pub fn byte_len(&self) -> usize {
        self.y.len() + self.u.len() + self.v.len()
    }

    pub fn mb_cols(&self) -> usize {
        self.width / 16
    }

    pub fn mb_rows(&self) -> usize {
        self.height / 16
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 || width % 16 != 0 || height % 16 != 0 {
        return Err(Error::Dimension(format!(
            "frame dimensions must be nonzero multiples of 16, got {width}x{height}"
        )));
    }
    Ok(())
}
