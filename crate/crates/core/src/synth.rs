//! Deterministic synthetic test images.
//!
//! Classic benchmark photographs cannot be redistributed, so tests and the
//! `gen-corpus` command use generated images instead. Generation only uses
//! IEEE add/multiply/divide, so outputs are identical on every platform.
//! Intensities stay inside `[16, 239]`: the clean originals contain no 0 or
//! 255 samples that a detector would mistake for noise.

use crate::image::Image;
use crate::noise::SplitMix64;

const LO: f64 = 16.0;
const HI: f64 = 239.0;

fn to_intensity(x: f64) -> u8 {
    (LO + x.clamp(0.0, 1.0) * (HI - LO) + 0.5) as u8
}

fn lattice(seed: u64, octave: u64, i: u64, j: u64) -> f64 {
    let key = seed ^ octave.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    let index = i.wrapping_mul(0x1_0000_0001).wrapping_add(j);
    (SplitMix64::nth(key, index) >> 11) as f64 / (1u64 << 53) as f64
}

fn smoothstep(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

/// Multi-octave value noise in `[0, 1]`; each octave halves the cell size
/// and scales the amplitude by `gain`.
fn fractal_noise(seed: u64, x: f64, y: f64, base_cell: f64, octaves: u32, gain: f64) -> f64 {
    let mut total = 0.0;
    let mut norm = 0.0;
    let mut cell = base_cell;
    let mut amplitude = 1.0;
    for octave in 0..octaves {
        let fx = x / cell;
        let fy = y / cell;
        let (ix, iy) = (fx.floor(), fy.floor());
        let (tx, ty) = (smoothstep(fx - ix), smoothstep(fy - iy));
        let (i, j) = (iy as u64, ix as u64);
        let o = octave as u64;
        let top = lattice(seed, o, i, j) * (1.0 - tx) + lattice(seed, o, i, j + 1) * tx;
        let bottom = lattice(seed, o, i + 1, j) * (1.0 - tx) + lattice(seed, o, i + 1, j + 1) * tx;
        total += amplitude * (top * (1.0 - ty) + bottom * ty);
        norm += amplitude;
        amplitude *= gain;
        cell = (cell / 2.0).max(1.0);
    }
    total / norm
}

/// Diagonal ramp.
pub fn gradient(width: usize, height: usize) -> Image {
    let span = (width + height).saturating_sub(2).max(1) as f64;
    let data = (0..height)
        .flat_map(|r| (0..width).map(move |c| to_intensity((r + c) as f64 / span)))
        .collect();
    Image::gray(width, height, data).expect("valid dimensions")
}

/// Alternating dark and light squares of side `cell`.
pub fn checkerboard(width: usize, height: usize, cell: usize) -> Image {
    let cell = cell.max(1);
    let data = (0..height)
        .flat_map(|r| {
            (0..width).map(move |c| {
                if (r / cell + c / cell).is_multiple_of(2) {
                    48
                } else {
                    208
                }
            })
        })
        .collect();
    Image::gray(width, height, data).expect("valid dimensions")
}

/// Fractal value-noise texture.
pub fn texture(width: usize, height: usize, seed: u64) -> Image {
    let data = (0..height)
        .flat_map(|r| {
            (0..width)
                .map(move |c| to_intensity(fractal_noise(seed, c as f64, r as f64, 64.0, 7, 0.6)))
        })
        .collect();
    Image::gray(width, height, data).expect("valid dimensions")
}

fn scene_value(seed: u64, width: usize, height: usize, r: usize, c: usize) -> f64 {
    let (w, h) = (width as f64, height as f64);
    let (x, y) = (c as f64, r as f64);
    // Soft illumination gradient plus natural-looking texture.
    let mut v =
        0.30 * (x / w) + 0.15 * (y / h) + 0.55 * fractal_noise(seed, x, y, w / 6.0, 8, 0.62);

    // A bright disc and a dark rectangle give sharp edges.
    let (cx, cy, radius) = (0.62 * w, 0.38 * h, 0.18 * w.min(h));
    let (dx, dy) = (x - cx, y - cy);
    if dx * dx + dy * dy <= radius * radius {
        v = 0.25 + 0.6 * v + 0.15 * fractal_noise(seed ^ 1, x, y, 8.0, 2, 0.5);
    }
    if x > 0.12 * w && x < 0.40 * w && y > 0.58 * h && y < 0.86 * h {
        v *= 0.45;
    }
    // Fine stripes in the lower right.
    if x > 0.55 * w && y > 0.65 * h && (c / 3).is_multiple_of(2) {
        v = 0.8 * v + 0.1;
    }
    // Sensor-like grain, about +-4 intensity levels.
    v + 0.035 * (lattice(seed ^ 0xA5, 99, r as u64, c as u64) - 0.5)
}

/// Grayscale scene with smooth regions, edges and fine texture.
pub fn scene(width: usize, height: usize, seed: u64) -> Image {
    let data = (0..height)
        .flat_map(|r| (0..width).map(move |c| to_intensity(scene_value(seed, width, height, r, c))))
        .collect();
    Image::gray(width, height, data).expect("valid dimensions")
}

/// RGB scene; channels share structure but differ in tint and texture.
pub fn scene_rgb(width: usize, height: usize, seed: u64) -> Image {
    let mut data = Vec::with_capacity(width * height * 3);
    for r in 0..height {
        for c in 0..width {
            let base = scene_value(seed, width, height, r, c);
            let tint = fractal_noise(seed ^ 7, c as f64, r as f64, 32.0, 4, 0.5);
            data.push(to_intensity(0.85 * base + 0.15 * tint));
            data.push(to_intensity(base));
            data.push(to_intensity(0.7 * base + 0.3 * (1.0 - tint)));
        }
    }
    Image::rgb(width, height, data).expect("valid dimensions")
}

/// Named corpus written by `gen-corpus`.
pub fn corpus(size: usize, seed: u64) -> Vec<(&'static str, Image)> {
    vec![
        ("scene", scene(size, size, seed)),
        ("texture", texture(size, size, seed)),
        ("gradient", gradient(size, size)),
        ("checkerboard", checkerboard(size, size, 16)),
        ("scene_rgb", scene_rgb(size, size, seed)),
    ]
}
