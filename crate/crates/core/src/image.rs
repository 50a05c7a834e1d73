//! 8-bit raster types shared by every other module.
//!
//! An [`Image`] stores 1 (grayscale) or 3 (RGB) channels interleaved in
//! row-major order. Filters work on single-channel [`Plane`]s; colour images
//! are processed by splitting into planes and merging the results back.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::UnsupportedChannels(channels));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| Error::InvalidImage("dimensions overflow".into()))?;
        if data.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{width}x{height}x{channels} needs {expected} samples, got {}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn gray(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        Self::new(width, height, 1, data)
    }

    pub fn rgb(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        Self::new(width, height, 3, data)
    }

    /// An image with every sample set to `value`.
    pub fn filled(width: usize, height: usize, channels: usize, value: u8) -> Result<Self> {
        Self::new(
            width,
            height,
            channels,
            vec![value; width.saturating_mul(height).saturating_mul(channels)],
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    /// Sample at (`row`, `col`) in channel `channel`.
    pub fn get(&self, row: usize, col: usize, channel: usize) -> u8 {
        self.data[(row * self.width + col) * self.channels + channel]
    }

    pub fn same_shape(&self, other: &Image) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    pub(crate) fn ensure_same_shape(&self, other: &Image, what: &str) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{what}: {}x{}x{} vs {}x{}x{}",
                self.width, self.height, self.channels, other.width, other.height, other.channels
            )))
        }
    }

    /// Splits the image into one plane per channel.
    pub fn split_channels(&self) -> Vec<Plane> {
        if self.channels == 1 {
            return vec![Plane {
                width: self.width,
                height: self.height,
                data: self.data.clone(),
            }];
        }
        (0..self.channels)
            .map(|k| Plane {
                width: self.width,
                height: self.height,
                data: self
                    .data
                    .iter()
                    .skip(k)
                    .step_by(self.channels)
                    .copied()
                    .collect(),
            })
            .collect()
    }

    /// Interleaves 1 or 3 equally sized planes back into an image.
    pub fn merge_channels(planes: &[Plane]) -> Result<Image> {
        let first = match planes {
            [] => return Err(Error::UnsupportedChannels(0)),
            [p] => return Image::new(p.width, p.height, 1, p.data.clone()),
            [first, ..] if planes.len() == 3 => first,
            _ => return Err(Error::UnsupportedChannels(planes.len())),
        };
        if let Some(bad) = planes
            .iter()
            .find(|p| p.width != first.width || p.height != first.height)
        {
            return Err(Error::DimensionMismatch(format!(
                "plane {}x{} does not match {}x{}",
                bad.width, bad.height, first.width, first.height
            )));
        }
        let mut data = Vec::with_capacity(first.data.len() * planes.len());
        for i in 0..first.data.len() {
            data.extend(planes.iter().map(|p| p.data[i]));
        }
        Image::new(first.width, first.height, planes.len(), data)
    }
}

/// A single channel of intensities, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if width.checked_mul(height) != Some(data.len()) {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} plane needs {} samples, got {}",
                width.saturating_mul(height),
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds a plane from equal-length rows.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != width) {
            return Err(Error::InvalidImage("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::new(width, rows.len(), data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    pub fn into_image(self) -> Image {
        Image {
            width: self.width,
            height: self.height,
            channels: 1,
            data: self.data,
        }
    }
}
