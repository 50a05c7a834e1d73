//! C ABI over the `spdenoise` library.
//!
//! Images cross the boundary as opaque `SpdImage` handles. Every function
//! returns an `SpdStatus`; on failure a human-readable description is
//! available from `spd_last_error_message` on the same thread. Panics never
//! unwind into C: they are caught and reported as `SPD_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spdenoise::filters::{apply_to_image, FilterParams};
use spdenoise::metrics::{ief, mse, psnr_from_mse};
use spdenoise::noise::inject;
use spdenoise::{load_pnm, save_pnm, Error, Image, NoiseSpec};

/// Default initial window side for `spd_denoise`.
pub const SPD_DEFAULT_W_INIT: usize = 3;
/// Default window growth step for `spd_denoise`.
pub const SPD_DEFAULT_H: usize = 2;
/// Default maximum window side for `spd_denoise`.
pub const SPD_DEFAULT_W_MAX: usize = 9;

/// Result code of every `spd_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpdStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument was out of range or malformed.
    InvalidArgument = 2,
    /// PNM bytes could not be decoded.
    Parse = 3,
    /// Images passed together have different shapes.
    DimensionMismatch = 4,
    /// The filter name is not recognised.
    UnknownFilter = 5,
    /// The metric is not defined for these inputs.
    UndefinedMetric = 6,
    /// An internal panic was caught.
    Panic = 7,
}

/// Opaque image handle. Free with `spd_image_free`.
pub struct SpdImage {
    inner: Image,
}

/// Output of `spd_metrics`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdMetrics {
    pub mse: f64,
    /// `INFINITY` when the images are identical.
    pub psnr_db: f64,
    /// `INFINITY` for an exact restoration, `NAN` when no noisy image was given.
    pub ief: f64,
}

struct Failure {
    status: SpdStatus,
    message: String,
}

impl Failure {
    fn new(status: SpdStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Self::new(SpdStatus::NullPointer, format!("{name} is NULL"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => SpdStatus::Parse,
            Error::DimensionMismatch(_) => SpdStatus::DimensionMismatch,
            Error::UnknownFilter { .. } => SpdStatus::UnknownFilter,
            Error::UndefinedMetric(_) => SpdStatus::UndefinedMetric,
            _ => SpdStatus::InvalidArgument,
        };
        Self::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".to_string())
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SpdStatus {
    set_last_error("");
    let failure = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => return SpdStatus::Ok,
        Ok(Err(f)) => f,
        Err(payload) => Failure::new(
            SpdStatus::Panic,
            format!("internal panic: {}", panic_message(payload.as_ref())),
        ),
    };
    set_last_error(&failure.message);
    failure.status
}

unsafe fn image_ref<'a>(handle: *const SpdImage, name: &str) -> Result<&'a Image, Failure> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::null(name))
}

unsafe fn bytes<'a>(data: *const u8, len: usize, name: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(Failure::null(name));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn emit(out: *mut *mut SpdImage, img: Image) {
    *out = Box::into_raw(Box::new(SpdImage { inner: img }));
}

/// Static description of a status code. Never NULL.
#[no_mangle]
pub extern "C" fn spd_status_message(status: SpdStatus) -> *const c_char {
    let text: &'static CStr = match status {
        SpdStatus::Ok => c"ok",
        SpdStatus::NullPointer => c"null pointer argument",
        SpdStatus::InvalidArgument => c"invalid argument",
        SpdStatus::Parse => c"PNM parse error",
        SpdStatus::DimensionMismatch => c"image dimensions differ",
        SpdStatus::UnknownFilter => c"unknown filter",
        SpdStatus::UndefinedMetric => c"metric undefined",
        SpdStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}

/// Detail of the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next `spd_*` call on the same thread.
#[no_mangle]
pub extern "C" fn spd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Copies `len` interleaved samples into a new image.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spd_image_new(
    width: usize,
    height: usize,
    channels: usize,
    data: *const u8,
    len: usize,
    out: *mut *mut SpdImage,
) -> SpdStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let samples = bytes(data, len, "data")?.to_vec();
        emit(out, Image::new(width, height, channels, samples)?);
        Ok(())
    })
}

/// Decodes binary PGM (P5) or PPM (P6) bytes.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spd_image_load_pnm(
    data: *const u8,
    len: usize,
    out: *mut *mut SpdImage,
) -> SpdStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        emit(out, load_pnm(bytes(data, len, "data")?)?);
        Ok(())
    })
}

/// Encodes an image as PGM or PPM. Release the buffer with `spd_buffer_free`.
///
/// # Safety
/// `image` must be a live handle; `out_data` and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spd_image_save_pnm(
    image: *const SpdImage,
    out_data: *mut *mut u8,
    out_len: *mut usize,
) -> SpdStatus {
    guard(|| {
        let img = image_ref(image, "image")?;
        if out_data.is_null() || out_len.is_null() {
            return Err(Failure::null("output buffer"));
        }
        let encoded = save_pnm(img).into_boxed_slice();
        *out_len = encoded.len();
        *out_data = Box::into_raw(encoded).cast::<u8>();
        Ok(())
    })
}

/// Frees a buffer returned by `spd_image_save_pnm`. NULL is ignored.
///
/// # Safety
/// `data` and `len` must come from one `spd_image_save_pnm` call and the
/// buffer must not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn spd_buffer_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(data, len)));
    }
}

/// Releases an image handle. NULL is ignored.
///
/// # Safety
/// `image` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spd_image_free(image: *mut SpdImage) {
    if !image.is_null() {
        drop(Box::from_raw(image));
    }
}

/// Width in pixels, or 0 for NULL.
///
/// # Safety
/// `image` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spd_image_width(image: *const SpdImage) -> usize {
    image.as_ref().map_or(0, |h| h.inner.width())
}

/// Height in pixels, or 0 for NULL.
///
/// # Safety
/// `image` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spd_image_height(image: *const SpdImage) -> usize {
    image.as_ref().map_or(0, |h| h.inner.height())
}

/// 1 for grayscale, 3 for RGB, 0 for NULL.
///
/// # Safety
/// `image` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spd_image_channels(image: *const SpdImage) -> usize {
    image.as_ref().map_or(0, |h| h.inner.channels())
}

/// Borrowed pointer to the interleaved row-major samples, valid while the
/// handle lives. Writes the sample count to `out_len` when it is not NULL.
///
/// # Safety
/// `image` must be NULL or a live handle; `out_len` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn spd_image_data(image: *const SpdImage, out_len: *mut usize) -> *const u8 {
    let data = image.as_ref().map_or(&[][..], |h| h.inner.data());
    if !out_len.is_null() {
        *out_len = data.len();
    }
    if image.is_null() {
        ptr::null()
    } else {
        data.as_ptr()
    }
}

/// Corrupts a copy of `image` with salt-and-pepper noise.
///
/// # Safety
/// `image` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spd_inject_noise(
    image: *const SpdImage,
    density: f64,
    salt_fraction: f64,
    seed: u64,
    out: *mut *mut SpdImage,
) -> SpdStatus {
    guard(|| {
        let img = image_ref(image, "image")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let spec = NoiseSpec::new(density, salt_fraction, seed)?;
        emit(out, inject(img, &spec));
        Ok(())
    })
}

/// Restores `image` with the named filter: "mf", "amf", "mdbutmf",
/// "mdbptgmf", "awmf-approx" or "pa".
///
/// # Safety
/// `image` must be a live handle, `filter` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spd_denoise(
    image: *const SpdImage,
    filter: *const c_char,
    w_init: usize,
    h: usize,
    w_max: usize,
    out: *mut *mut SpdImage,
) -> SpdStatus {
    guard(|| {
        let img = image_ref(image, "image")?;
        if filter.is_null() {
            return Err(Failure::null("filter"));
        }
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let name = CStr::from_ptr(filter)
            .to_str()
            .map_err(|_| Failure::new(SpdStatus::InvalidArgument, "filter name is not UTF-8"))?;
        let params = FilterParams::new(w_init, h, w_max)?;
        emit(out, apply_to_image(name, params, img)?);
        Ok(())
    })
}

/// Compares `restored` with `original`. `noisy` may be NULL, in which case
/// `ief` is NAN.
///
/// # Safety
/// `original` and `restored` must be live handles, `noisy` NULL or a live
/// handle, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spd_metrics(
    original: *const SpdImage,
    restored: *const SpdImage,
    noisy: *const SpdImage,
    out: *mut SpdMetrics,
) -> SpdStatus {
    guard(|| {
        let original = image_ref(original, "original")?;
        let restored = image_ref(restored, "restored")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let mse = mse(original, restored)?;
        let ief = match noisy.as_ref() {
            Some(n) => ief(original, restored, &n.inner)?,
            None => f64::NAN,
        };
        *out = SpdMetrics {
            mse,
            psnr_db: psnr_from_mse(mse),
            ief,
        };
        Ok(())
    })
}
