use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lns_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lns_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn generate(params: &str, seed: u64) -> Result<*mut LnsNetwork, LnsStatus> {
    let line = CString::new(params).unwrap();
    let mut net = ptr::null_mut();
    match unsafe { lns_network_generate(line.as_ptr(), seed, &mut net) } {
        LnsStatus::Ok => Ok(net),
        status => Err(status),
    }
}

#[test]
fn d2_metrics_through_the_abi() {
    let net = generate("family=d2 L=1024", 0).unwrap();
    unsafe {
        assert_eq!(lns_network_size(net), 1024);
        let mut cost = 0.0;
        assert_eq!(lns_unit_cost(net, &mut cost), LnsStatus::Ok);
        assert_eq!(cost, 8.5);
        let mut d = 0.0;
        assert_eq!(lns_average_distance(net, &mut d), LnsStatus::Ok);
        assert!((d - 11.4563).abs() < 5e-4);
        let mut l2 = 0.0;
        assert_eq!(lns_navigation_length(net, LnsPolicy::TwoLevel, &mut l2), LnsStatus::Ok);
        assert!(l2 >= d);
        lns_network_free(net);
    }
}

#[test]
fn ring_and_shortcut() {
    unsafe {
        let mut ring = ptr::null_mut();
        assert_eq!(lns_network_ring(5, &mut ring), LnsStatus::Ok);
        let mut d = 0.0;
        lns_average_distance(ring, &mut d);
        assert_eq!(d, 1.5);
        let mut diam = 0;
        assert_eq!(lns_diameter(ring, &mut diam), LnsStatus::Ok);
        assert_eq!(diam, 2);

        let mut bigger = ptr::null_mut();
        assert_eq!(lns_network_add_shortcut(ring, 0, 2, &mut bigger), LnsStatus::Ok);
        assert_eq!(lns_network_shortcut_count(bigger), 1);
        assert_eq!(lns_network_shortcut_count(ring), 0);
        let mut hops = 0;
        assert_eq!(lns_navigate(bigger, 0, 2, LnsPolicy::Greedy, &mut hops), LnsStatus::Ok);
        assert_eq!(hops, 1);
        assert_eq!(
            lns_navigate(bigger, 0, 9, LnsPolicy::Greedy, &mut hops),
            LnsStatus::InvalidArgument
        );

        let mut again = ptr::null_mut();
        assert_eq!(
            lns_network_add_shortcut(bigger, 0, 1, &mut again),
            LnsStatus::InvalidArgument
        );
        assert!(last_error().contains("ring edge"));
        assert!(again.is_null());
        lns_network_free(bigger);
        lns_network_free(ring);
    }
}

#[test]
fn encoding_round_trip() {
    let net = generate("family=s2 L=64 t=20 c=5 alpha=1", 3).unwrap();
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(lns_network_encode(net, &mut json), LnsStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(lns_network_decode(json, &mut back), LnsStatus::Ok);
        assert_eq!(lns_network_shortcut_count(back), 20);
        let mut again = ptr::null_mut();
        lns_network_encode(back, &mut again);
        assert_eq!(CStr::from_ptr(json), CStr::from_ptr(again));
        lns_string_free(json);
        lns_string_free(again);
        lns_network_free(back);
        lns_network_free(net);
    }
}

#[test]
fn error_codes() {
    assert_eq!(generate("family=d4 L=100 b=4 k=4", 0), Err(LnsStatus::InvalidArgument));
    assert!(last_error().contains("D4-2"), "{}", last_error());
    assert!(generate("family=nope", 0).is_err());
    unsafe {
        let bad = CString::new("{\"L\":5,").unwrap();
        let mut net = ptr::null_mut();
        assert_eq!(lns_network_decode(bad.as_ptr(), &mut net), LnsStatus::ParseError);
        assert_eq!(lns_network_decode(ptr::null(), &mut net), LnsStatus::NullPointer);
        let mut d = 0.0;
        assert_eq!(lns_average_distance(ptr::null(), &mut d), LnsStatus::NullPointer);
        assert_eq!(lns_network_size(ptr::null()), 0);
        lns_network_free(ptr::null_mut());
        lns_string_free(ptr::null_mut());
    }
    let ok = generate("family=ring L=8", 0).unwrap();
    assert_eq!(last_error(), "");
    unsafe { lns_network_free(ok) };
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lns.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct LnsNetwork LnsNetwork;"));
    assert!(header.contains("LNS_STATUS_INVALID_ARGUMENT = 2"));
}

/// Compiles a small C program against the header and the static library.
#[test]
fn c_program_links() {
    let Some(compiler) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("liblns_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "lns.h"
int main(void) {
    LnsNetwork *net = NULL;
    if (lns_network_generate("family=d2 L=1024", 0, &net) != LNS_STATUS_OK) return 1;
    double cost = 0;
    lns_unit_cost(net, &cost);
    LnsNetwork *bad = NULL;
    LnsStatus s = lns_network_generate("family=d4 L=100 b=4 k=4", 0, &bad);
    printf("%zu %.1f %d\n", lns_network_size(net), cost, (int)s);
    lns_network_free(net);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new(compiler)
        .arg(&src)
        .arg(format!("-I{include}"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1024 8.5 2\n");
}

fn which_cc() -> Option<PathBuf> {
    ["cc", "gcc", "clang"].iter().find_map(|name| {
        let ok = Command::new(name)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success());
        ok.then(|| PathBuf::from(name))
    })
}
