//! Adaptive median filter.
//!
//! Level A grows the window from 3x3 until its median is strictly between
//! the window minimum and maximum; if `w_max` is exceeded first the pixel
//! becomes the last median. Level B keeps the pixel when it is itself
//! strictly between min and max, and otherwise outputs the median.

use super::{map_plane, Execution, Gather};
use crate::image::Plane;

/// # Panics
///
/// Panics if `w_max` is even or below 3.
pub fn filter_amf(plane: &Plane, w_max: usize) -> Plane {
    run(plane, w_max, Execution::Parallel)
}

pub(super) fn run(plane: &Plane, w_max: usize, exec: Execution) -> Plane {
    assert!(
        w_max >= 3 && w_max % 2 == 1,
        "w_max must be odd and at least 3, got {w_max}"
    );
    map_plane(plane, exec, |plane, row, col, gather| {
        restore(plane, row, col, w_max, gather)
    })
}

fn restore(plane: &Plane, row: usize, col: usize, w_max: usize, gather: &mut Gather) -> u8 {
    let value = plane.get(row, col);
    let mut side = 3;
    loop {
        gather.collect(plane, row, col, side);
        let (lo, hi) = min_max(&gather.values);
        let med = gather.window_median();
        if lo < med && med < hi {
            return if lo < value && value < hi { value } else { med };
        }
        side += 2;
        if side > w_max {
            return med;
        }
    }
}

fn min_max(values: &[u8]) -> (u8, u8) {
    values
        .iter()
        .fold((u8::MAX, u8::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_plane_unchanged() {
        let plane = Plane::filled(7, 7, 201).unwrap();
        assert_eq!(filter_amf(&plane, 9), plane);
    }

    #[test]
    fn level_b_keeps_interior_and_replaces_extremes() {
        // Interior 3x3 medians are all strictly inside their window range.
        let plane = Plane::from_rows(&[
            [20, 90, 30, 80],
            [70, 50, 60, 40],
            [35, 85, 25, 95],
            [65, 45, 75, 55],
        ])
        .unwrap();
        let out = filter_amf(&plane, 9);
        assert_eq!(out.get(1, 1), 50);
        assert_eq!(out.get(1, 2), 60);
        // 85 is its window maximum, 25 its window minimum.
        assert_eq!(out.get(2, 1), 60);
        assert_eq!(out.get(2, 2), 55);
    }

    #[test]
    fn hand_trace_five_by_five() {
        // Centre: 3x3 = {0 x4, 255 x5}, median 255 = max -> grow.
        // 5x5 = {0 x4, 10 x16, 255 x5}, median 10 strictly inside (0, 255);
        // centre 255 equals max -> output median 10.
        // Ring pixels: each 3x3 median is 10, pixel is an extreme -> 10.
        // Border 10s: either pass level B directly or after one growth.
        let plane = Plane::from_rows(&[
            [10, 10, 10, 10, 10],
            [10, 0, 255, 0, 10],
            [10, 255, 255, 255, 10],
            [10, 0, 255, 0, 10],
            [10, 10, 10, 10, 10],
        ])
        .unwrap();
        assert_eq!(filter_amf(&plane, 5), Plane::filled(5, 5, 10).unwrap());
        // With w_max = 3 the centre cannot grow and keeps its 3x3 median.
        assert_eq!(filter_amf(&plane, 3).get(2, 2), 255);
    }

    #[test]
    fn level_a_exhausted_outputs_median() {
        let mut rows = vec![vec![255u8; 5]; 5];
        rows[0][0] = 7;
        let out = filter_amf(&Plane::from_rows(&rows).unwrap(), 5);
        assert_eq!(out.get(2, 2), 255);
    }
}
