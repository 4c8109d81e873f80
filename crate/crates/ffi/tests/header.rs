use std::path::Path;
use std::process::Command;

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/nichols_ext.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct NxSession NxSession;",
        "nx_session_new(",
        "nx_session_free(",
        "nx_algebra_dim(",
        "nx_ext_dims(",
        "nx_verify(",
        "nx_multiply(",
        "nx_last_error(",
        "nx_string_free(",
        "NX_STATUS_BUFFER_TOO_SMALL = 5",
    ] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/nichols_ext.h");
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
