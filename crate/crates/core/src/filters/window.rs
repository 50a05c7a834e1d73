//! Square neighbourhoods and the integer statistics the filters use.
//!
//! Windows are truncated at the plane border: only in-bounds samples are
//! gathered, so a 3x3 window at a corner holds 4 values.

use crate::error::{Error, Result};
use crate::image::Plane;

/// A sample is treated as noise-free iff it is strictly between 0 and 255.
#[inline]
pub fn is_clean(v: u8) -> bool {
    v != 0 && v != 255
}

/// One extracted window around a processing pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowView {
    pub center: (usize, usize),
    pub side: usize,
    /// In-bounds samples, row-major.
    pub values: Vec<u8>,
    /// Samples in `[1, 254]`, sorted ascending.
    pub clean_values: Vec<u8>,
}

impl WindowView {
    pub fn clean_count(&self) -> usize {
        self.clean_values.len()
    }

    pub fn center_value(&self, plane: &Plane) -> u8 {
        plane.get(self.center.0, self.center.1)
    }
}

/// Gathers the `side`x`side` window centred at (`row`, `col`).
///
/// # Panics
///
/// Panics if the centre is out of bounds or `side` is even.
pub fn extract_window(plane: &Plane, row: usize, col: usize, side: usize) -> WindowView {
    let mut gather = Gather::default();
    gather.collect(plane, row, col, side);
    let mut clean_values = gather.clean;
    clean_values.sort_unstable();
    WindowView {
        center: (row, col),
        side,
        values: gather.values,
        clean_values,
    }
}

/// Median; even counts average the two middle values, rounding half up.
pub fn median_int(values: &[u8]) -> Result<u8> {
    if values.is_empty() {
        return Err(Error::EmptyInput("median"));
    }
    let mut buf = values.to_vec();
    Ok(median_in_place(&mut buf))
}

/// Arithmetic mean rounded half up.
pub fn mean_int(values: &[u8]) -> Result<u8> {
    if values.is_empty() {
        return Err(Error::EmptyInput("mean"));
    }
    Ok(mean_unchecked(values))
}

/// Median of a nonempty buffer, reordering it.
pub(crate) fn median_in_place(buf: &mut [u8]) -> u8 {
    debug_assert!(!buf.is_empty());
    let n = buf.len();
    let mid = n / 2;
    let (lower, &mut upper, _) = buf.select_nth_unstable(mid);
    if n % 2 == 1 {
        return upper;
    }
    let below = *lower.iter().max().expect("even count has a lower half");
    (below as u16 + upper as u16).div_ceil(2) as u8
}

pub(crate) fn mean_unchecked(values: &[u8]) -> u8 {
    debug_assert!(!values.is_empty());
    let n = values.len() as u64;
    let sum: u64 = values.iter().map(|&v| v as u64).sum();
    // floor(sum / n + 1/2)
    ((2 * sum + n) / (2 * n)).min(255) as u8
}

/// Reusable per-worker buffers for window extraction.
#[derive(Debug, Default)]
pub(crate) struct Gather {
    pub values: Vec<u8>,
    pub clean: Vec<u8>,
    pub zeros: usize,
    pub saturated: usize,
}

impl Gather {
    pub fn collect(&mut self, plane: &Plane, row: usize, col: usize, side: usize) {
        assert!(side % 2 == 1, "window side must be odd, got {side}");
        assert!(
            row < plane.height() && col < plane.width(),
            "centre ({row}, {col}) outside {}x{} plane",
            plane.width(),
            plane.height()
        );
        let half = side / 2;
        let r0 = row.saturating_sub(half);
        let r1 = (row + half).min(plane.height() - 1);
        let c0 = col.saturating_sub(half);
        let c1 = (col + half).min(plane.width() - 1);

        self.values.clear();
        self.clean.clear();
        self.zeros = 0;
        self.saturated = 0;
        for r in r0..=r1 {
            let row_values = &plane.row(r)[c0..=c1];
            self.values.extend_from_slice(row_values);
            for &v in row_values {
                match v {
                    0 => self.zeros += 1,
                    255 => self.saturated += 1,
                    _ => self.clean.push(v),
                }
            }
        }
    }

    pub fn clean_median(&mut self) -> u8 {
        median_in_place(&mut self.clean)
    }

    pub fn clean_mean(&self) -> u8 {
        mean_unchecked(&self.clean)
    }

    pub fn window_mean(&self) -> u8 {
        mean_unchecked(&self.values)
    }

    pub fn window_median(&mut self) -> u8 {
        median_in_place(&mut self.values)
    }

    pub fn all_zero(&self) -> bool {
        self.zeros == self.values.len()
    }

    pub fn all_saturated(&self) -> bool {
        self.saturated == self.values.len()
    }
}
