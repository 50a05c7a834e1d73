//! Restoration quality: MSE, PSNR and IEF.
//!
//! All metrics pool every sample of every channel. Squared differences are
//! summed exactly in `u64` and divided once at the end.

use crate::error::{Error, Result};
use crate::image::Image;

const PEAK_SQUARED: f64 = 255.0 * 255.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub mse: f64,
    /// `+inf` when `mse` is zero.
    pub psnr_db: f64,
    /// `+inf` when the restoration is exact.
    pub ief: f64,
}

impl MetricsReport {
    pub fn compute(original: &Image, restored: &Image, noisy: &Image) -> Result<Self> {
        let mse = mse(original, restored)?;
        Ok(Self {
            mse,
            psnr_db: psnr_from_mse(mse),
            ief: ief(original, restored, noisy)?,
        })
    }
}

/// Sum of squared sample differences.
pub fn squared_error(a: &Image, b: &Image) -> Result<u64> {
    a.ensure_same_shape(b, "squared error")?;
    Ok(a.data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum())
}

pub fn mse(original: &Image, restored: &Image) -> Result<f64> {
    let sse = squared_error(original, restored)?;
    Ok(sse as f64 / original.data().len() as f64)
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK_SQUARED / mse).log10()
    }
}

pub fn psnr_db(original: &Image, restored: &Image) -> Result<f64> {
    Ok(psnr_from_mse(mse(original, restored)?))
}

/// Noise energy divided by residual energy after restoration.
pub fn ief(original: &Image, restored: &Image, noisy: &Image) -> Result<f64> {
    original.ensure_same_shape(restored, "ief")?;
    let noise = squared_error(noisy, original)?;
    if noise == 0 {
        return Err(Error::UndefinedMetric(
            "IEF needs a noisy image that differs from the original".into(),
        ));
    }
    let residual = squared_error(restored, original)?;
    if residual == 0 {
        Ok(f64::INFINITY)
    } else {
        Ok(noise as f64 / residual as f64)
    }
}

/// Four decimals, `inf` for infinities, `nan` for undefined values.
pub fn format_metric(value: f64) -> String {
    if value.is_nan() {
        "nan".to_string()
    } else if value.is_infinite() {
        if value > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{value:.4}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(data: &[u8]) -> Image {
        Image::gray(data.len(), 1, data.to_vec()).unwrap()
    }

    #[test]
    fn mse_examples() {
        let a = gray(&[10, 20, 30, 40]);
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        assert_eq!(mse(&gray(&[0]), &gray(&[255])).unwrap(), 65025.0);
        let b = Image::gray(2, 2, vec![11, 22, 33, 44]).unwrap();
        let a = Image::gray(2, 2, vec![10, 20, 30, 40]).unwrap();
        assert_eq!(mse(&a, &b).unwrap(), 7.5);
    }

    #[test]
    fn psnr_examples() {
        let a = gray(&[1, 2]);
        assert_eq!(psnr_db(&a, &a).unwrap(), f64::INFINITY);
        assert_eq!(psnr_db(&gray(&[0]), &gray(&[255])).unwrap(), 0.0);
        assert!((psnr_from_mse(1.0) - 48.1308).abs() < 1e-3);
    }

    #[test]
    fn ief_examples() {
        let y = gray(&[100, 100]);
        let noisy = gray(&[0, 100]);
        assert_eq!(ief(&y, &noisy, &noisy).unwrap(), 1.0);
        assert_eq!(ief(&y, &y, &noisy).unwrap(), f64::INFINITY);
        assert_eq!(ief(&y, &gray(&[90, 100]), &noisy).unwrap(), 100.0);
        assert!(matches!(
            ief(&y, &noisy, &y),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn shape_mismatch() {
        let a = gray(&[1, 2]);
        let b = gray(&[1, 2, 3]);
        assert!(matches!(mse(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(ief(&a, &a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(ief(&a, &b, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn color_pools_all_samples() {
        let a = Image::rgb(1, 1, vec![0, 0, 0]).unwrap();
        let b = Image::rgb(1, 1, vec![3, 0, 0]).unwrap();
        assert_eq!(mse(&a, &b).unwrap(), 3.0);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_metric(f64::INFINITY), "inf");
        assert_eq!(format_metric(f64::NAN), "nan");
        assert_eq!(format_metric(48.130803), "48.1308");
        assert_eq!(format_metric(1.0), "1.0000");
    }
}
