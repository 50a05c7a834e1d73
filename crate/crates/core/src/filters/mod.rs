//! Salt-and-pepper removal filters.
//!
//! Every filter is non-recursive: windows are read from the input plane and
//! results go to a fresh buffer, so the output does not depend on the order
//! in which pixels are visited. [`Execution::Parallel`] splits output rows
//! across rayon workers and is bit-identical to [`Execution::Serial`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::{Image, Plane};

mod amf;
mod awmf;
mod mdbptgmf;
mod mdbutmf;
mod mf;
mod pa;
mod window;

pub use amf::filter_amf;
pub use awmf::filter_awmf;
pub use mdbptgmf::filter_mdbptgmf;
pub use mdbutmf::filter_mdbutmf;
pub use mf::filter_mf;
pub use pa::{filter_pa, trace_pa, PaOutcome, PaTrace, TraceStep};
pub use window::{extract_window, is_clean, mean_int, median_int, WindowView};

pub(crate) use window::Gather;

/// Window schedule for the adaptive filters.
///
/// `w_init` and `w_max` are odd side lengths; the window grows by `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterParams {
    w_init: usize,
    h: usize,
    w_max: usize,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            w_init: 3,
            h: 2,
            w_max: 9,
        }
    }
}

impl FilterParams {
    pub fn new(w_init: usize, h: usize, w_max: usize) -> Result<Self> {
        if w_init < 3 || w_init.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "w_init must be odd and at least 3, got {w_init}"
            )));
        }
        if h < 2 || !h.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "h must be even and at least 2, got {h}"
            )));
        }
        if w_max < w_init || w_max.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "w_max must be odd and at least w_init ({w_init}), got {w_max}"
            )));
        }
        if !(w_max - w_init).is_multiple_of(h) {
            return Err(Error::InvalidParams(format!(
                "w_max - w_init ({}) must be a multiple of h ({h})",
                w_max - w_init
            )));
        }
        Ok(Self { w_init, h, w_max })
    }

    pub fn w_init(&self) -> usize {
        self.w_init
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn w_max(&self) -> usize {
        self.w_max
    }

    /// Upper bound on window extractions per noisy pixel.
    pub fn max_extractions(&self) -> usize {
        1 + (self.w_max - self.w_init) / self.h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FilterKind {
    /// Plain median over a fixed window.
    Mf,
    /// Two-level adaptive median filter.
    Amf,
    /// Modified decision based unsymmetric trimmed median filter.
    Mdbutmf,
    /// Modified decision based partially trimmed global mean filter.
    Mdbptgmf,
    /// Adaptive weighted mean filter with uniform weights.
    AwmfApprox,
    /// Adaptive window trimmed median/mean filter.
    Pa,
}

impl FilterKind {
    pub const ALL: [FilterKind; 6] = [
        FilterKind::Mf,
        FilterKind::Amf,
        FilterKind::Mdbutmf,
        FilterKind::Mdbptgmf,
        FilterKind::AwmfApprox,
        FilterKind::Pa,
    ];

    pub fn designator(self) -> &'static str {
        match self {
            FilterKind::Mf => "mf",
            FilterKind::Amf => "amf",
            FilterKind::Mdbutmf => "mdbutmf",
            FilterKind::Mdbptgmf => "mdbptgmf",
            FilterKind::AwmfApprox => "awmf-approx",
            FilterKind::Pa => "pa",
        }
    }

    pub fn valid_designators() -> String {
        Self::ALL.map(FilterKind::designator).join(", ")
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.designator())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.designator() == s)
            .ok_or_else(|| Error::UnknownFilter {
                name: s.to_string(),
                valid: Self::valid_designators(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// A filter together with its window schedule.
///
/// `mf` uses `w_init` as its fixed side; `amf` and `awmf-approx` grow up to
/// `w_max`; `mdbutmf` and `mdbptgmf` always use a 3x3 window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Filter {
    pub kind: FilterKind,
    pub params: FilterParams,
}

impl Filter {
    pub fn new(kind: FilterKind, params: FilterParams) -> Self {
        Self { kind, params }
    }

    pub fn apply_plane(&self, plane: &Plane, exec: Execution) -> Plane {
        let p = self.params;
        match self.kind {
            FilterKind::Mf => mf::run(plane, p.w_init, exec),
            FilterKind::Amf => amf::run(plane, p.w_max, exec),
            FilterKind::Mdbutmf => mdbutmf::run(plane, exec),
            FilterKind::Mdbptgmf => mdbptgmf::run(plane, exec),
            FilterKind::AwmfApprox => awmf::run(plane, p.w_max, exec),
            FilterKind::Pa => pa::run(plane, &p, exec),
        }
    }

    /// Filters each channel independently.
    pub fn apply_image(&self, img: &Image, exec: Execution) -> Image {
        let planes: Vec<Plane> = img
            .split_channels()
            .iter()
            .map(|p| self.apply_plane(p, exec))
            .collect();
        Image::merge_channels(&planes).expect("filters preserve plane shape")
    }
}

/// Looks up `designator` and filters every channel of `img`.
pub fn apply_to_image(designator: &str, params: FilterParams, img: &Image) -> Result<Image> {
    let kind: FilterKind = designator.parse()?;
    Ok(Filter::new(kind, params).apply_image(img, Execution::Parallel))
}

/// Runs `pixel` for every position, reading `plane` and writing a new one.
pub(crate) fn map_plane<F>(plane: &Plane, exec: Execution, pixel: F) -> Plane
where
    F: Fn(&Plane, usize, usize, &mut Gather) -> u8 + Sync,
{
    let width = plane.width();
    let mut out = vec![0u8; plane.data().len()];
    let fill_row = |gather: &mut Gather, (row, out_row): (usize, &mut [u8])| {
        for (col, slot) in out_row.iter_mut().enumerate() {
            *slot = pixel(plane, row, col, gather);
        }
    };
    match exec {
        Execution::Serial => {
            let mut gather = Gather::default();
            out.chunks_mut(width)
                .enumerate()
                .for_each(|job| fill_row(&mut gather, job));
        }
        Execution::Parallel => {
            out.par_chunks_mut(width)
                .enumerate()
                .for_each_init(Gather::default, fill_row);
        }
    }
    Plane::new(width, plane.height(), out).expect("output has the input shape")
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::image::Plane;

    /// The 9x9 worked example; its centre (4, 4) is a salt pixel.
    pub const ILLUSTRATION: [[u8; 9]; 9] = [
        [0, 0, 0, 0, 0, 0, 0, 255, 124],
        [115, 0, 118, 187, 0, 116, 115, 0, 112],
        [255, 67, 0, 0, 255, 0, 0, 255, 255],
        [255, 97, 0, 134, 0, 0, 255, 0, 0],
        [255, 0, 255, 0, 255, 123, 0, 255, 0],
        [0, 255, 0, 255, 255, 0, 255, 0, 0],
        [0, 119, 116, 255, 0, 255, 0, 0, 0],
        [0, 178, 255, 0, 255, 0, 0, 255, 0],
        [113, 255, 0, 0, 110, 234, 255, 0, 112],
    ];

    pub fn illustration_plane() -> Plane {
        Plane::from_rows(&ILLUSTRATION).unwrap()
    }

    /// Deterministic pseudo-random plane for property checks.
    pub fn random_plane(width: usize, height: usize, seed: u64) -> Plane {
        let mut rng = crate::noise::SplitMix64::new(seed);
        let data = (0..width * height)
            .map(|_| (rng.next_u64() >> 56) as u8)
            .collect();
        Plane::new(width, height, data).unwrap()
    }
}
