use std::path::{Path, PathBuf};
use std::process::Command;

/// Builds the static library into a target directory of its own; the outer
/// `cargo test` does not produce it.
fn static_library() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let target = exe.ancestors().nth(3).unwrap().join("c-abi");
    let status = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "fusioncheck-ffi", "--target-dir"])
        .arg(&target)
        .status()
        .unwrap();
    assert!(status.success());
    target.join("debug/libfusioncheck_ffi.a")
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = static_library();
    assert!(lib.exists(), "missing {}", lib.display());
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(
        run.status.success(),
        "{stdout}{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(stdout.contains("order=24 sylow=8 op=4 supersolvable=0 nilpotent=0 p_supersolvable=0"));
    assert!(stdout.contains("b_report_has_theorem=1"));
    assert!(stdout.contains("generated=6"));
    assert!(stdout.contains("missing=unknown source"));
}
