use std::ffi::{CStr, CString};
use std::ptr;

use spdenoise_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(spd_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn new_gray(width: usize, height: usize, data: &[u8]) -> *mut SpdImage {
    let mut out = ptr::null_mut();
    let status = unsafe { spd_image_new(width, height, 1, data.as_ptr(), data.len(), &mut out) };
    assert_eq!(status, SpdStatus::Ok, "{}", last_error());
    out
}

fn samples(img: *const SpdImage) -> Vec<u8> {
    let mut len = 0;
    let data = unsafe { spd_image_data(img, &mut len) };
    unsafe { std::slice::from_raw_parts(data, len) }.to_vec()
}

const ILLUSTRATION: [u8; 81] = [
    0, 0, 0, 0, 0, 0, 0, 255, 124, //
    115, 0, 118, 187, 0, 116, 115, 0, 112, //
    255, 67, 0, 0, 255, 0, 0, 255, 255, //
    255, 97, 0, 134, 0, 0, 255, 0, 0, //
    255, 0, 255, 0, 255, 123, 0, 255, 0, //
    0, 255, 0, 255, 255, 0, 255, 0, 0, //
    0, 119, 116, 255, 0, 255, 0, 0, 0, //
    0, 178, 255, 0, 255, 0, 0, 255, 0, //
    113, 255, 0, 0, 110, 234, 255, 0, 112,
];

#[test]
fn denoise_illustration_through_handles() {
    let img = new_gray(9, 9, &ILLUSTRATION);
    let filter = CString::new("pa").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe {
        spd_denoise(
            img,
            filter.as_ptr(),
            SPD_DEFAULT_W_INIT,
            SPD_DEFAULT_H,
            SPD_DEFAULT_W_MAX,
            &mut out,
        )
    };
    assert_eq!(status, SpdStatus::Ok);
    assert_eq!(
        unsafe {
            (
                spd_image_width(out),
                spd_image_height(out),
                spd_image_channels(out),
            )
        },
        (9, 9, 1)
    );
    let restored = samples(out);
    assert_eq!(restored[4 * 9 + 4], 118);
    assert!(restored.iter().all(|&v| v != 0 && v != 255));
    unsafe {
        spd_image_free(out);
        spd_image_free(img);
    }
}

#[test]
fn pnm_round_trip() {
    let img = new_gray(3, 2, &[1, 2, 3, 4, 5, 6]);
    let (mut buf, mut len) = (ptr::null_mut(), 0);
    assert_eq!(
        unsafe { spd_image_save_pnm(img, &mut buf, &mut len) },
        SpdStatus::Ok
    );
    let encoded = unsafe { std::slice::from_raw_parts(buf, len) };
    assert_eq!(&encoded[..11], b"P5\n3 2\n255\n");
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { spd_image_load_pnm(buf, len, &mut back) },
        SpdStatus::Ok
    );
    assert_eq!(samples(back), [1, 2, 3, 4, 5, 6]);
    unsafe {
        spd_buffer_free(buf, len);
        spd_image_free(back);
        spd_image_free(img);
    }
}

#[test]
fn noise_and_metrics() {
    let clean = new_gray(64, 64, &[128; 64 * 64]);
    let mut noisy = ptr::null_mut();
    assert_eq!(
        unsafe { spd_inject_noise(clean, 0.3, 0.5, 7, &mut noisy) },
        SpdStatus::Ok
    );
    let corrupted = samples(noisy).iter().filter(|&&v| v != 128).count();
    assert!(corrupted > 0 && corrupted < 64 * 64);

    let mut m = SpdMetrics {
        mse: -1.0,
        psnr_db: -1.0,
        ief: -1.0,
    };
    assert_eq!(
        unsafe { spd_metrics(clean, noisy, noisy, &mut m) },
        SpdStatus::Ok
    );
    assert_eq!(m.ief, 1.0);
    assert!(m.mse > 0.0 && m.psnr_db.is_finite());

    assert_eq!(
        unsafe { spd_metrics(clean, clean, ptr::null(), &mut m) },
        SpdStatus::Ok
    );
    assert_eq!((m.mse, m.psnr_db), (0.0, f64::INFINITY));
    assert!(m.ief.is_nan());

    assert_eq!(
        unsafe { spd_metrics(clean, noisy, clean, &mut m) },
        SpdStatus::UndefinedMetric
    );
    unsafe {
        spd_image_free(noisy);
        spd_image_free(clean);
    }
}

#[test]
fn error_codes() {
    let img = new_gray(2, 2, &[1, 2, 3, 4]);
    let mut out = ptr::null_mut();

    let status = unsafe { spd_image_new(2, 2, 1, ptr::null(), 4, &mut out) };
    assert_eq!(status, SpdStatus::NullPointer);
    assert_eq!(last_error(), "data is NULL");

    let status = unsafe { spd_image_new(2, 2, 2, [0u8; 8].as_ptr(), 8, &mut out) };
    assert_eq!(status, SpdStatus::InvalidArgument);

    let status = unsafe { spd_image_load_pnm(b"P2\n1 1\n255\n0".as_ptr(), 12, &mut out) };
    assert_eq!(status, SpdStatus::Parse);

    let name = CString::new("gauss").unwrap();
    let status = unsafe { spd_denoise(img, name.as_ptr(), 3, 2, 9, &mut out) };
    assert_eq!(status, SpdStatus::UnknownFilter);
    assert!(last_error().contains("awmf-approx"), "{}", last_error());

    let name = CString::new("pa").unwrap();
    let status = unsafe { spd_denoise(img, name.as_ptr(), 4, 2, 9, &mut out) };
    assert_eq!(status, SpdStatus::InvalidArgument);

    let status = unsafe { spd_inject_noise(img, 1.5, 0.5, 1, &mut out) };
    assert_eq!(status, SpdStatus::InvalidArgument);

    let other = new_gray(1, 4, &[1, 2, 3, 4]);
    let mut m = SpdMetrics {
        mse: 0.0,
        psnr_db: 0.0,
        ief: 0.0,
    };
    assert_eq!(
        unsafe { spd_metrics(img, other, ptr::null(), &mut m) },
        SpdStatus::DimensionMismatch
    );
    assert!(out.is_null(), "failed calls must not write a handle");

    // A successful call clears the previous message.
    assert_eq!(
        unsafe { spd_metrics(img, img, ptr::null(), &mut m) },
        SpdStatus::Ok
    );
    assert_eq!(last_error(), "");
    unsafe {
        spd_image_free(other);
        spd_image_free(img);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        assert_eq!(spd_image_width(ptr::null()), 0);
        assert_eq!(spd_image_channels(ptr::null()), 0);
        let mut len = 99;
        assert!(spd_image_data(ptr::null(), &mut len).is_null());
        assert_eq!(len, 0);
        spd_image_free(ptr::null_mut());
        spd_buffer_free(ptr::null_mut(), 0);
        let mut m = SpdMetrics {
            mse: 0.0,
            psnr_db: 0.0,
            ief: 0.0,
        };
        assert_eq!(
            spd_metrics(ptr::null(), ptr::null(), ptr::null(), &mut m),
            SpdStatus::NullPointer
        );
    }
}

#[test]
fn status_messages() {
    for (status, text) in [
        (SpdStatus::Ok, "ok"),
        (SpdStatus::UnknownFilter, "unknown filter"),
        (SpdStatus::Panic, "internal panic"),
    ] {
        let msg = unsafe { CStr::from_ptr(spd_status_message(status)) };
        assert_eq!(msg.to_str().unwrap(), text);
    }
}
