//! C ABI over the `lns` crate.
//!
//! Networks are opaque `LnsNetwork` handles created by the `lns_network_*`
//! constructors and released with [`lns_network_free`]. Every fallible call
//! returns an [`LnsStatus`] and writes its result through an out pointer;
//! on failure [`lns_last_error`] describes the problem. Strings returned to
//! the caller are released with [`lns_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::c_char;
use lns::navigation::{average_navigation_length, navigate};
use lns::{average_distance, diameter, Error, GeneratorSpec, NavPolicy, Network, TwoLevelMode};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnsStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad parameter, node label or shortcut.
    InvalidArgument = 2,
    /// Malformed text input (network encoding, parameter line, UTF-8).
    ParseError = 3,
    /// Failure while generating or evaluating.
    RuntimeError = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Navigation rule for [`lns_navigation_length`] and [`lns_navigate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnsPolicy {
    Greedy = 0,
    /// Two-level, deciding again after every hop.
    TwoLevel = 1,
    /// Two-level, taking both hops of a chosen move.
    TwoLevelCommit = 2,
}

impl From<LnsPolicy> for NavPolicy {
    fn from(p: LnsPolicy) -> Self {
        match p {
            LnsPolicy::Greedy => NavPolicy::Greedy,
            LnsPolicy::TwoLevel => NavPolicy::TwoLevel(TwoLevelMode::Rehop),
            LnsPolicy::TwoLevelCommit => NavPolicy::TwoLevel(TwoLevelMode::Commit),
        }
    }
}

/// Opaque network handle.
pub struct LnsNetwork {
    inner: Network,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let mut bytes = message.into();
    bytes.retain(|&b| b != 0);
    let text = CString::new(bytes).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn status_of(e: &Error) -> LnsStatus {
    match e {
        Error::Parse { .. } => LnsStatus::ParseError,
        e if e.is_validation() => LnsStatus::InvalidArgument,
        _ => LnsStatus::RuntimeError,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LnsStatus, String)>) -> LnsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LnsStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            set_error(message);
            LnsStatus::Panic
        }
    }
}

fn lift(e: Error) -> (LnsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (LnsStatus, String) {
    (LnsStatus::NullPointer, format!("`{name}` is null"))
}

unsafe fn network<'a>(handle: *const LnsNetwork) -> Result<&'a Network, (LnsStatus, String)> {
    handle.as_ref().map(|h| &h.inner).ok_or_else(|| null("network"))
}

unsafe fn text<'a>(s: *const c_char, name: &str) -> Result<&'a str, (LnsStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (LnsStatus::ParseError, format!("`{name}` is not UTF-8: {e}")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (LnsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn boxed(net: Network) -> *mut LnsNetwork {
    Box::into_raw(Box::new(LnsNetwork { inner: net }))
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lns_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lns_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Plain ring of `size` nodes.
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn lns_network_ring(size: usize, out: *mut *mut LnsNetwork) -> LnsStatus {
    guard(|| {
        let net = Network::new_ring(size).map_err(lift)?;
        write(out, boxed(net))
    })
}

/// Builds a network from a parameter line such as `family=d4 L=1024 b=4 k=4`.
/// `seed` only matters for stochastic families.
///
/// # Safety
/// `params` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_network_generate(
    params: *const c_char,
    seed: u64,
    out: *mut *mut LnsNetwork,
) -> LnsStatus {
    guard(|| {
        let spec = GeneratorSpec::parse_line(text(params, "params")?).map_err(lift)?;
        let net = spec.build(seed).map_err(lift)?;
        write(out, boxed(net))
    })
}

/// Parses the JSON network encoding `{"L":n,"shortcuts":[[i,j],...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_network_decode(json: *const c_char, out: *mut *mut LnsNetwork) -> LnsStatus {
    guard(|| {
        let net = Network::decode(text(json, "json")?).map_err(lift)?;
        write(out, boxed(net))
    })
}

/// Canonical JSON encoding. Release the string with [`lns_string_free`].
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_network_encode(net: *const LnsNetwork, out: *mut *mut c_char) -> LnsStatus {
    guard(|| {
        let json = network(net)?.encode();
        let c = CString::new(json).map_err(|e| (LnsStatus::RuntimeError, e.to_string()))?;
        write(out, c.into_raw())
    })
}

/// Copy of `net` with the shortcut `{i, j}` added.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_network_add_shortcut(
    net: *const LnsNetwork,
    i: usize,
    j: usize,
    out: *mut *mut LnsNetwork,
) -> LnsStatus {
    guard(|| {
        let bigger = network(net)?.add_shortcut(i, j).map_err(lift)?;
        write(out, boxed(bigger))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `net` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lns_network_free(net: *mut LnsNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Node count, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lns_network_size(net: *const LnsNetwork) -> usize {
    net.as_ref().map_or(0, |h| h.inner.size())
}

/// Shortcut count, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lns_network_shortcut_count(net: *const LnsNetwork) -> usize {
    net.as_ref().map_or(0, |h| h.inner.shortcut_count())
}

/// Total lattice length of the shortcuts divided by the node count.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_unit_cost(net: *const LnsNetwork, out: *mut f64) -> LnsStatus {
    guard(|| write(out, network(net)?.wiring_cost().unit_cost))
}

/// Mean hop distance over all node pairs.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_average_distance(net: *const LnsNetwork, out: *mut f64) -> LnsStatus {
    guard(|| write(out, average_distance(network(net)?)))
}

/// Largest hop distance.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_diameter(net: *const LnsNetwork, out: *mut u32) -> LnsStatus {
    guard(|| write(out, diameter(network(net)?)))
}

/// Average navigation length over ordered pairs under `policy`.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_navigation_length(net: *const LnsNetwork, policy: LnsPolicy, out: *mut f64) -> LnsStatus {
    guard(|| write(out, average_navigation_length(network(net)?, policy.into())))
}

/// Hops taken from `source` to `target` under `policy`.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lns_navigate(
    net: *const LnsNetwork,
    source: u32,
    target: u32,
    policy: LnsPolicy,
    out: *mut usize,
) -> LnsStatus {
    guard(|| {
        let net = network(net)?;
        for node in [source, target] {
            if node as usize >= net.size() {
                return Err(lift(Error::NodeOutOfRange {
                    node: node as usize,
                    size: net.size(),
                }));
            }
        }
        write(out, navigate(net, policy.into(), source, target).hops)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::InvalidSize(2)), LnsStatus::InvalidArgument);
        assert_eq!(status_of(&Error::Saturated { node: 0 }), LnsStatus::RuntimeError);
        let parse = Network::decode("{").unwrap_err();
        assert_eq!(status_of(&parse), LnsStatus::ParseError);
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), LnsStatus::Panic);
        let msg = unsafe { CStr::from_ptr(lns_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "boom");
    }
}
