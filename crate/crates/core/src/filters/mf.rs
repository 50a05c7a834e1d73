//! Unconditional median filter.

use super::{map_plane, Execution};
use crate::image::Plane;

/// Replaces every pixel with the median of its `side`x`side` window.
///
/// # Panics
///
/// Panics if `side` is even.
pub fn filter_mf(plane: &Plane, side: usize) -> Plane {
    run(plane, side, Execution::Parallel)
}

pub(super) fn run(plane: &Plane, side: usize, exec: Execution) -> Plane {
    assert!(side % 2 == 1, "median window side must be odd, got {side}");
    map_plane(plane, exec, |plane, row, col, gather| {
        gather.collect(plane, row, col, side);
        gather.window_median()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_plane_unchanged() {
        let plane = Plane::filled(6, 5, 33).unwrap();
        assert_eq!(filter_mf(&plane, 3), plane);
    }

    #[test]
    fn interior_spike_removed() {
        let mut rows = vec![vec![10u8; 5]; 5];
        rows[2][2] = 255;
        let out = filter_mf(&Plane::from_rows(&rows).unwrap(), 3);
        assert!(out.data().iter().all(|&v| v == 10));
    }

    #[test]
    fn border_uses_truncated_window() {
        // Corner window [0, 100, 100, 100] has even count: (100 + 100) / 2.
        let plane = Plane::from_rows(&[[0, 100], [100, 100]]).unwrap();
        assert_eq!(filter_mf(&plane, 3).get(0, 0), 100);
        // [10, 20, 30, 40] -> 25
        let plane = Plane::from_rows(&[[10, 20], [30, 40]]).unwrap();
        assert_eq!(filter_mf(&plane, 3).data(), &[25; 4]);
    }
}
