//! Seeded salt-and-pepper noise injection.
//!
//! Randomness comes from an embedded SplitMix64 generator so that noisy
//! images, and every benchmark number derived from them, are reproducible on
//! any platform and from any language that reimplements the same stream:
//!
//! ```text
//! state_k = seed + (k + 1) * 0x9E3779B97F4A7C15          (wrapping)
//! z = state_k
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9               (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB               (wrapping)
//! out_k = z ^ (z >> 31)
//! uniform_k = (out_k >> 11) * 2^-53                      in [0, 1)
//! ```
//!
//! Sample `i` of the interleaved data buffer consumes draws `2i` (corrupt iff
//! `uniform < density`) and `2i + 1` (salt iff `uniform < salt_fraction`).
//! Both draws are always consumed, so the stream position of a sample never
//! depends on earlier samples.

use crate::error::{Error, Result};
use crate::image::Image;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        to_unit(self.next_u64())
    }

    /// The `index`-th output of the stream started at `seed`, without
    /// stepping through the preceding outputs.
    pub fn nth(seed: u64, index: u64) -> u64 {
        mix(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
    }
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    density: f64,
    salt_fraction: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(density: f64, salt_fraction: f64, seed: u64) -> Result<Self> {
        for (name, value) in [("density", density), ("salt fraction", salt_fraction)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidNoise(format!(
                    "{name} must lie in [0, 1], got {value}"
                )));
            }
        }
        Ok(Self {
            density,
            salt_fraction,
            seed,
        })
    }

    /// Equal salt and pepper probability.
    pub fn with_density(density: f64, seed: u64) -> Result<Self> {
        Self::new(density, 0.5, seed)
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn salt_fraction(&self) -> f64 {
        self.salt_fraction
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The injected value for data sample `index`, or `None` when the
    /// sample is left untouched.
    #[inline]
    pub fn decision(&self, index: usize) -> Option<u8> {
        let k = 2 * index as u64;
        if to_unit(SplitMix64::nth(self.seed, k)) >= self.density {
            return None;
        }
        if to_unit(SplitMix64::nth(self.seed, k + 1)) < self.salt_fraction {
            Some(255)
        } else {
            Some(0)
        }
    }
}

/// Corrupts each sample (each channel of each pixel) independently.
pub fn inject(img: &Image, spec: &NoiseSpec) -> Image {
    let data = img
        .data()
        .iter()
        .enumerate()
        .map(|(i, &v)| spec.decision(i).unwrap_or(v))
        .collect();
    Image::new(img.width(), img.height(), img.channels(), data)
        .expect("shape preserved from a valid image")
}

/// Fraction of samples where `noisy` is 0 or 255 and differs from `original`.
///
/// Samples already at an extreme in `original` that were overwritten with
/// the same extreme are not counted.
pub fn corruption_rate(original: &Image, noisy: &Image) -> Result<f64> {
    original.ensure_same_shape(noisy, "corruption rate")?;
    let corrupted = original
        .data()
        .iter()
        .zip(noisy.data())
        .filter(|&(&a, &b)| (b == 0 || b == 255) && a != b)
        .count();
    Ok(corrupted as f64 / original.data().len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_stream() {
        // Published SplitMix64 outputs for seed 1234567.
        let mut rng = SplitMix64::new(1234567);
        let expected = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        for (k, &want) in expected.iter().enumerate() {
            assert_eq!(rng.next_u64(), want);
            assert_eq!(SplitMix64::nth(1234567, k as u64), want);
        }
    }

    #[test]
    fn rejects_out_of_range_spec() {
        assert!(NoiseSpec::new(-0.1, 0.5, 0).is_err());
        assert!(NoiseSpec::new(0.5, 1.5, 0).is_err());
        assert!(NoiseSpec::new(f64::NAN, 0.5, 0).is_err());
        assert!(NoiseSpec::new(1.0, 0.0, 0).is_ok());
    }

    #[test]
    fn zero_density_is_identity() {
        let img = Image::filled(16, 16, 3, 77).unwrap();
        let spec = NoiseSpec::with_density(0.0, 9).unwrap();
        assert_eq!(inject(&img, &spec), img);
    }

    #[test]
    fn full_density_only_extremes() {
        let img = Image::filled(32, 32, 1, 128).unwrap();
        let spec = NoiseSpec::with_density(1.0, 3).unwrap();
        let noisy = inject(&img, &spec);
        assert!(noisy.data().iter().all(|&v| v == 0 || v == 255));
        assert_eq!(corruption_rate(&img, &noisy).unwrap(), 1.0);
    }

    #[test]
    fn salt_fraction_extremes() {
        let img = Image::filled(8, 8, 1, 50).unwrap();
        let salt = inject(&img, &NoiseSpec::new(1.0, 1.0, 5).unwrap());
        assert!(salt.data().iter().all(|&v| v == 255));
        let pepper = inject(&img, &NoiseSpec::new(1.0, 0.0, 5).unwrap());
        assert!(pepper.data().iter().all(|&v| v == 0));
    }

    #[test]
    fn corruption_rate_cases() {
        let a = Image::filled(4, 4, 1, 128).unwrap();
        assert_eq!(corruption_rate(&a, &a).unwrap(), 0.0);
        let b = Image::filled(4, 4, 1, 255).unwrap();
        assert_eq!(corruption_rate(&a, &b).unwrap(), 1.0);
        let c = Image::filled(4, 5, 1, 255).unwrap();
        assert!(matches!(
            corruption_rate(&a, &c),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn seeds_give_different_streams() {
        let img = Image::filled(32, 32, 1, 128).unwrap();
        let a = inject(&img, &NoiseSpec::with_density(0.5, 1).unwrap());
        let b = inject(&img, &NoiseSpec::with_density(0.5, 2).unwrap());
        assert_ne!(a, b);
    }
}
