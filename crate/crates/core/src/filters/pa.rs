//! Adaptive window trimmed median/mean filter.
//!
//! A pixel is noisy iff it is 0 or 255; clean pixels are copied. For a noisy
//! pixel the window starts at `w_init` and grows by `h`. As soon as the
//! window holds at least as many clean samples as its nominal side length,
//! the pixel becomes the median of those clean samples. If the window reaches
//! `w_max` without that happening, the fallbacks are, in order:
//!
//! 1. mean of the clean samples, if there are any;
//! 2. mean of the whole window, if it mixes 0s and 255s;
//! 3. 255 if the window is all 0s;
//! 4. 0 if the window is all 255s.
//!
//! The clean-count test compares against the nominal side `W`, even where
//! the border truncates the window.

use super::{is_clean, map_plane, Execution, FilterParams, Gather};
use crate::image::Plane;

/// How a pixel's output value was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaOutcome {
    /// Input was in `[1, 254]`.
    Unchanged,
    /// Median of the clean samples once the clean count reached `side`.
    CleanMedian { side: usize },
    /// `w_max` reached with some, but too few, clean samples.
    CleanMean,
    /// `w_max` reached, window holds both 0s and 255s only.
    WindowMean,
    /// `w_max` reached, window is all 0.
    AllPepper,
    /// `w_max` reached, window is all 255.
    AllSalt,
}

/// One window extraction: nominal side and clean count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub side: usize,
    pub clean_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaTrace {
    pub input: u8,
    pub output: u8,
    pub outcome: PaOutcome,
    pub steps: Vec<TraceStep>,
}

pub fn filter_pa(plane: &Plane, params: &FilterParams) -> Plane {
    run(plane, params, Execution::Parallel)
}

pub(super) fn run(plane: &Plane, params: &FilterParams, exec: Execution) -> Plane {
    map_plane(plane, exec, |plane, row, col, gather| {
        restore(plane, row, col, params, gather, &mut |_| {}).0
    })
}

/// Records every window the filter examines at (`row`, `col`).
pub fn trace_pa(plane: &Plane, row: usize, col: usize, params: &FilterParams) -> PaTrace {
    let mut steps = Vec::new();
    let mut gather = Gather::default();
    let (output, outcome) = restore(plane, row, col, params, &mut gather, &mut |s| steps.push(s));
    PaTrace {
        input: plane.get(row, col),
        output,
        outcome,
        steps,
    }
}

fn restore(
    plane: &Plane,
    row: usize,
    col: usize,
    params: &FilterParams,
    gather: &mut Gather,
    on_step: &mut dyn FnMut(TraceStep),
) -> (u8, PaOutcome) {
    let value = plane.get(row, col);
    if is_clean(value) {
        return (value, PaOutcome::Unchanged);
    }

    let mut side = params.w_init();
    loop {
        gather.collect(plane, row, col, side);
        let clean_count = gather.clean.len();
        on_step(TraceStep { side, clean_count });
        // Also covers side == w_max with enough clean samples.
        if clean_count >= side {
            return (gather.clean_median(), PaOutcome::CleanMedian { side });
        }
        if side >= params.w_max() {
            break;
        }
        side += params.h();
    }

    if !gather.clean.is_empty() {
        (gather.clean_mean(), PaOutcome::CleanMean)
    } else if gather.all_zero() {
        (255, PaOutcome::AllPepper)
    } else if gather.all_saturated() {
        (0, PaOutcome::AllSalt)
    } else {
        (gather.window_mean(), PaOutcome::WindowMean)
    }
}
