//! Modified decision based unsymmetric trimmed median filter (fixed 3x3).
//!
//! Noisy pixels take the median of the clean samples in the window, or the
//! mean of the whole window when it holds no clean sample at all.

use super::{is_clean, map_plane, Execution, Gather};
use crate::image::Plane;

pub fn filter_mdbutmf(plane: &Plane) -> Plane {
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
    if gather.clean.is_empty() {
        gather.window_mean()
    } else {
        gather.clean_median()
    }
}
