//! C ABI over `steercoh`.
//!
//! States are opaque `ScState` handles owned by the caller and released with
//! `sc_state_free`. Every fallible call returns an `ScStatus`; on failure the
//! message is kept per thread and can be read with `sc_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use steercoh::channels::{amplitude_damping, apply_on_b};
use steercoh::msc::{msc_general, msc_two_qubit, Measurement, MscOptions};
use steercoh::qcore::{Complex64, ComplexMatrix, DensityMatrix};
use steercoh::states::{maximally_obese, rho_c, rho_p, werner, StateFamilyResult};
use steercoh::steering::qse;
use steercoh::Error;

/// Opaque bipartite density matrix.
pub struct ScState {
    rho: DensityMatrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    /// Input matrix is not a density matrix.
    InvalidState = 2,
    /// Dimension or parameter outside the supported range.
    InvalidArgument = 3,
    /// The state has no defined value (e.g. pure product state).
    Undefined = 4,
    NotConverged = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ScMscResult {
    pub value: f64,
    /// Bloch vector of the optimal projective outcome; zero when
    /// `has_bloch_measurement` is 0 (non-qubit Alice).
    pub measurement: [f64; 3],
    pub has_bloch_measurement: i32,
    pub degenerate_path: i32,
    pub converged: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ScEllipsoid {
    pub center: [f64; 3],
    /// Descending.
    pub semiaxes: [f64; 3],
    /// `axes[i]` is the unit direction of `semiaxes[i]`.
    pub axes: [[f64; 3]; 3],
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> ScStatus {
    match err {
        Error::NotHermitian { .. } | Error::NotUnitTrace { .. } | Error::NotPsd { .. } | Error::Parse(_) => {
            ScStatus::InvalidState
        }
        Error::TrivialProductState(_) | Error::SingularMarginal(_) | Error::ZeroProbability(_) => {
            ScStatus::Undefined
        }
        Error::DidNotConverge(_) => ScStatus::NotConverged,
        _ => ScStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ScStatus>) -> ScStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            ScStatus::Internal
        }
    }
}

fn lift<T>(r: steercoh::Result<T>) -> Result<T, ScStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), ScStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(ScStatus::NullPointer);
    }
    Ok(())
}

/// # Safety
/// `out` must be valid for a write.
unsafe fn emit(out: *mut *mut ScState, rho: DensityMatrix) {
    *out = Box::into_raw(Box::new(ScState { rho }));
}

/// Builds a state from row-major real and imaginary parts of a
/// `(dim_a*dim_b) x (dim_a*dim_b)` matrix.
///
/// # Safety
/// `re` and `im` must point to `(dim_a*dim_b)^2` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_state_from_matrix(
    re: *const f64,
    im: *const f64,
    dim_a: usize,
    dim_b: usize,
    out: *mut *mut ScState,
) -> ScStatus {
    guard(|| {
        non_null(re, "re")?;
        non_null(im, "im")?;
        non_null(out, "out")?;
        let n = dim_a
            .checked_mul(dim_b)
            .filter(|&n| n > 0 && n <= 64)
            .ok_or_else(|| {
                set_error(format!("unsupported dimensions {dim_a} x {dim_b}"));
                ScStatus::InvalidArgument
            })?;
        let (re, im) = (
            std::slice::from_raw_parts(re, n * n),
            std::slice::from_raw_parts(im, n * n),
        );
        let data = re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        let m = lift(ComplexMatrix::from_vec(n, n, data))?;
        emit(out, lift(DensityMatrix::new(m, &[dim_a, dim_b]))?);
        Ok(())
    })
}

unsafe fn family(
    out: *mut *mut ScState,
    build: impl FnOnce() -> steercoh::Result<StateFamilyResult>,
) -> ScStatus {
    guard(|| {
        non_null(out, "out")?;
        emit(out, lift(build())?.state);
        Ok(())
    })
}

/// Werner state `p |psi-><psi-| + (1-p) 1/4`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_state_werner(p: f64, out: *mut *mut ScState) -> ScStatus {
    family(out, || werner(p))
}

/// `p |Psi><Psi| + (1-p)/4` with `|Psi> = cos(theta/2)|++> + sin(theta/2)|-->`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_state_rho_p(p: f64, theta: f64, out: *mut *mut ScState) -> ScStatus {
    family(out, || rho_p(p, theta))
}

/// `t |++><++| + (1-t) |--><--|`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_state_rho_c(t: f64, out: *mut *mut ScState) -> ScStatus {
    family(out, || rho_c(t))
}

/// Maximally obese state whose Bob marginal has Bloch vector `(0, 0, b)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_state_maximally_obese(b: f64, out: *mut *mut ScState) -> ScStatus {
    family(out, || maximally_obese(b))
}

/// # Safety
/// `state` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_state_free(state: *mut ScState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; `dim_a`, `dim_b` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_state_dims(
    state: *const ScState,
    dim_a: *mut usize,
    dim_b: *mut usize,
) -> ScStatus {
    guard(|| {
        non_null(state, "state")?;
        non_null(dim_a, "dim_a")?;
        non_null(dim_b, "dim_b")?;
        let (a, b) = lift((*state).rho.bipartite_dims())?;
        (*dim_a, *dim_b) = (a, b);
        Ok(())
    })
}

/// Copies the row-major matrix into `re` and `im`, each of length `len`,
/// which must be at least `(dim_a*dim_b)^2`.
///
/// # Safety
/// `re` and `im` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sc_state_matrix(
    state: *const ScState,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> ScStatus {
    guard(|| {
        non_null(state, "state")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let entries = (*state).rho.matrix().as_slice();
        if len < entries.len() {
            set_error(format!("buffer holds {len} entries, need {}", entries.len()));
            return Err(ScStatus::InvalidArgument);
        }
        for (k, z) in entries.iter().enumerate() {
            *re.add(k) = z.re;
            *im.add(k) = z.im;
        }
        Ok(())
    })
}

/// New state with amplitude damping of strength `gamma` applied to Bob's qubit.
///
/// # Safety
/// `state` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_amplitude_damping_b(
    state: *const ScState,
    gamma: f64,
    out: *mut *mut ScState,
) -> ScStatus {
    guard(|| {
        non_null(state, "state")?;
        non_null(out, "out")?;
        let ch = lift(amplitude_damping(gamma))?;
        emit(out, lift(apply_on_b(&(*state).rho, &ch))?);
        Ok(())
    })
}

/// Maximal steered coherence with default optimizer settings and the given seed.
///
/// # Safety
/// `state` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_msc(state: *const ScState, seed: u64, out: *mut ScMscResult) -> ScStatus {
    guard(|| {
        non_null(state, "state")?;
        non_null(out, "out")?;
        let rho = &(*state).rho;
        let opts = MscOptions {
            seed,
            ..MscOptions::default()
        };
        let res = if lift(rho.bipartite_dims())? == (2, 2) {
            lift(msc_two_qubit(rho, &opts))?
        } else {
            lift(msc_general(rho, &opts))?
        };
        let (measurement, has_bloch) = match res.measurement {
            Measurement::Bloch(m) => (m.to_array(), 1),
            Measurement::Vector(_) => ([0.0; 3], 0),
        };
        *out = ScMscResult {
            value: res.value,
            measurement,
            has_bloch_measurement: has_bloch,
            degenerate_path: res.degenerate_path as i32,
            converged: res.converged as i32,
        };
        Ok(())
    })
}

/// Quantum steering ellipsoid of a two-qubit state.
///
/// # Safety
/// `state` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_qse(state: *const ScState, out: *mut ScEllipsoid) -> ScStatus {
    guard(|| {
        non_null(state, "state")?;
        non_null(out, "out")?;
        let e = lift(qse(&(*state).rho))?;
        *out = ScEllipsoid {
            center: e.center.to_array(),
            semiaxes: e.semiaxes,
            axes: e.frame.map(|v| v.to_array()),
        };
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
