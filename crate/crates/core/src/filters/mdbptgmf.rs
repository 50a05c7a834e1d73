//! Modified decision based partially trimmed global mean filter (fixed 3x3).
//!
//! Noisy pixels (0 or 255) are replaced by:
//! - 255 if the window is all 0;
//! - 0 if the window is all 255;
//! - the window mean if it holds only 0s and 255s;
//! - otherwise the median of the window with 0s and 255s removed.

use super::{is_clean, map_plane, Execution, Gather};
use crate::image::Plane;

pub fn filter_mdbptgmf(plane: &Plane) -> Plane {
    run(plane, Execution::Parallel)
}

pub(super) fn run(plane: &Plane, exec: Execution) -> Plane {
    map_plane(plane, exec, restore)
}

fn restore(plane: &Plane, row: usize, col: usize, gather: &mut Gather) -> u8 {
    let value = plane.get(row, col);
    if is_clean(value) {
        return value;
    }
    gather.collect(plane, row, col, 3);
    if gather.all_zero() {
        255
    } else if gather.all_saturated() {
        0
    } else if gather.clean.is_empty() {
        gather.window_mean()
    } else {
        gather.clean_median()
    }
}
