//! Compiles tests/smoke.c against the generated header and the static
//! library, then runs it — proving the shipped artifacts work from C.

#![cfg(unix)]

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_client_compiles_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    let source = manifest.join("tests").join("smoke.c");
    assert!(
        header_dir.join("carpet_perc.h").exists(),
        "header not generated"
    );

    // target/debug, found relative to this test binary
    let mut lib_dir = std::env::current_exe().unwrap();
    lib_dir.pop();
    if lib_dir.ends_with("deps") {
        lib_dir.pop();
    }
    let static_lib = lib_dir.join("libcarpet_perc_ffi.a");
    assert!(
        static_lib.exists(),
        "static library missing: {}",
        static_lib.display()
    );

    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let compile = Command::new(&cc)
        .arg(&source)
        .arg("-I")
        .arg(&header_dir)
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("failed to invoke the C compiler");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe)
        .output()
        .expect("failed to run smoke binary");
    assert!(
        run.status.success(),
        "smoke client exited with {:?}\nstdout: {}\nstderr: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
