//! Adaptive weighted mean filter, uniform-weight variant ("awmf-approx").
//!
//! The window grows from 3x3 in steps of 2 until the minimum and maximum of
//! the current window equal those of the next larger one and the current
//! window holds at least one clean sample, or until `w_max`. A pixel equal
//! to the window minimum or maximum is replaced by the rounded mean of the
//! window's clean samples (all weights 1); other pixels are kept. With no
//! clean sample available the pixel is kept.

use super::{is_clean, map_plane, Execution, Gather};
use crate::image::Plane;

/// # Panics
///
/// Panics if `w_max` is even or below 3.
pub fn filter_awmf(plane: &Plane, w_max: usize) -> Plane {
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

#[derive(Clone, Copy, PartialEq, Eq)]
struct Extremes {
    lo: u8,
    hi: u8,
}

fn summarize(gather: &Gather) -> (Extremes, Option<u8>) {
    let (lo, hi) = gather
        .values
        .iter()
        .fold((u8::MAX, u8::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mean = (!gather.clean.is_empty()).then(|| gather.clean_mean());
    (Extremes { lo, hi }, mean)
}

fn restore(plane: &Plane, row: usize, col: usize, w_max: usize, gather: &mut Gather) -> u8 {
    let value = plane.get(row, col);
    let mut side = 3;
    gather.collect(plane, row, col, side);
    let (mut extremes, mut mean) = summarize(gather);
    while side + 2 <= w_max {
        gather.collect(plane, row, col, side + 2);
        let (next, next_mean) = summarize(gather);
        if next == extremes && mean.is_some() {
            break;
        }
        side += 2;
        extremes = next;
        mean = next_mean;
    }
    if value == extremes.lo || value == extremes.hi {
        mean.unwrap_or(value)
    } else {
        debug_assert!(is_clean(value));
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_plane_unchanged() {
        let plane = Plane::filled(6, 6, 128).unwrap();
        assert_eq!(filter_awmf(&plane, 9), plane);
    }

    #[test]
    fn pepper_spike_in_flat_region() {
        let mut rows = vec![vec![100u8; 7]; 7];
        rows[3][3] = 0;
        let out = filter_awmf(&Plane::from_rows(&rows).unwrap(), 9);
        assert!(out.data().iter().all(|&v| v == 100));
    }

    #[test]
    fn non_extreme_pixels_unchanged() {
        let plane = Plane::from_rows(&[[10, 200, 10], [200, 90, 200], [10, 200, 10]]).unwrap();
        assert_eq!(filter_awmf(&plane, 9).get(1, 1), 90);
    }

    #[test]
    fn no_clean_samples_keeps_pixel() {
        let plane = Plane::filled(5, 5, 255).unwrap();
        assert_eq!(filter_awmf(&plane, 5), plane);
    }

    #[test]
    fn grows_past_noise_only_window() {
        // Centre 3x3 holds only extremes; the 5x5 ring supplies clean 60s and 80s.
        let plane = Plane::from_rows(&[
            [60, 80, 60, 80, 60],
            [80, 0, 255, 0, 80],
            [60, 255, 0, 255, 60],
            [80, 0, 255, 0, 80],
            [60, 80, 60, 80, 60],
        ])
        .unwrap();
        // 16 ring samples: 8 x 60 and 8 x 80 -> mean 70.
        assert_eq!(filter_awmf(&plane, 9).get(2, 2), 70);
    }
}
