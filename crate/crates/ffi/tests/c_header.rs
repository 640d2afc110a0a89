//! Compiles a C client against the generated header and, when the static
//! library sits next to the test binary, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const CLIENT: &str = r#"
#include <math.h>
#include <stdio.h>
#include "seqlab.h"

int main(void) {
    SeqlabEngine *e = NULL;
    if (seqlab_engine_new("day", &e) != SEQLAB_STATUS_OK) return 10;
    SeqlabVector *v = seqlab_vector_new();
    if (seqlab_vector_push(v, 1, 1.0) != SEQLAB_STATUS_OK) return 11;
    double out = 0.0;
    if (seqlab_norm(e, v, &out) != SEQLAB_STATUS_OK) return 12;
    if (fabs(out - sqrt(0.5)) > 1e-15) return 13;
    SeqlabEngine *bad = NULL;
    if (seqlab_engine_new("nope", &bad) != SEQLAB_STATUS_BAD_ENGINE) return 14;
    printf("%.12f %s\n", out, seqlab_last_error());
    seqlab_vector_free(v);
    seqlab_engine_free(e);
    return 0;
}
"#;

fn cc() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .map(String::from)
}

fn include_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(&src, CLIENT).unwrap();
    let syntax = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include_dir())
        .arg(&src)
        .output()
        .unwrap();
    assert!(syntax.status.success(), "{}", String::from_utf8_lossy(&syntax.stderr));

    // target/<profile>/deps/<test> -> target/<profile>/libseqlab_ffi.a
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(Path::parent).map(|p| p.join("libseqlab_ffi.a"));
    let Some(lib) = lib.filter(|l| l.exists()) else {
        eprintln!("static library not built; link step skipped");
        return;
    };
    let bin = dir.path().join("client");
    let link = Command::new(&cc)
        .arg("-I")
        .arg(include_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(link.status.success(), "{}", String::from_utf8_lossy(&link.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "client exited with {:?}", run.status.code());
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.starts_with("0.707106781187 unknown engine `nope`"), "{stdout}");
}
