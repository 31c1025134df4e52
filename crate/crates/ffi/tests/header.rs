use std::path::{Path, PathBuf};
use std::process::Command;

const HEADER: &str = include_str!("../include/zeta_routes.h");

#[test]
fn header_declares_the_api() {
    assert!(HEADER.contains("#ifndef ZETA_ROUTES_H"));
    for item in [
        "typedef struct ZrEvaluator ZrEvaluator;",
        "ZR_STATUS_OK = 0",
        "ZR_STATUS_PANIC = 8",
        "ZR_ROUTE_DEFAULT = -1",
        "ZR_ROUTE_DIRICHLET_SERIES = 6",
        "ZR_DISTRIBUTION_ELLIPTIC_LOGISTIC = 2",
        "#define ZR_ROUTE_COUNT 7",
        "struct ZrEvaluator *zr_evaluator_new(double tol, size_t max_evals);",
        "void zr_evaluator_free(struct ZrEvaluator *evaluator);",
        "zr_eval(",
        "zr_compare(",
        "zr_bernoulli(size_t n, char **out);",
        "void zr_string_free(char *s);",
        "zr_mc_moment(",
        "const char *zr_last_error_message(void);",
        "const char *zr_version(void);",
    ] {
        assert!(HEADER.contains(item), "missing {item}");
    }
}

fn target_dir() -> Option<PathBuf> {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    Some(exe.parent()?.parent()?.to_path_buf())
}

fn find_staticlib() -> Option<PathBuf> {
    let dir = target_dir()?;
    [dir.join("libzeta_routes_ffi.a"), dir.join("deps/libzeta_routes_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
}

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "zeta_routes.h"

int main(void) {
    ZrEvaluator *ev = zr_evaluator_new(1e-12, 0);
    if (!ev) return 10;
    ZrValue v;
    if (zr_eval(ev, 3.0, ZR_ROUTE_COTANGENT_ODD, &v) != ZR_STATUS_OK) return 11;
    if (fabs(v.value - 1.2020569031595942) > 1e-10) return 12;
    if (zr_eval(ev, 1.0, ZR_ROUTE_DEFAULT, &v) != ZR_STATUS_POLE) return 13;
    if (zr_last_error_message() == NULL) return 14;
    ZrComparison c;
    if (zr_compare(ev, 6.0, 1e-9, 0.0, &c) != ZR_STATUS_OK || !c.pass) return 15;
    char *b = NULL;
    if (zr_bernoulli(6, &b) != ZR_STATUS_OK || strcmp(b, "1/42") != 0) return 16;
    zr_string_free(b);
    zr_evaluator_free(ev);
    printf("%.16e\n", v.value);
    return 0;
}
"#;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok()?.status.success().then_some(cc)
}

#[test]
fn c_program_links_against_staticlib() {
    let (Some(lib), Some(cc)) = (find_staticlib(), compiler()) else {
        eprintln!("skipping: static library or C compiler not found");
        return;
    };
    let work = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c_smoke");
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let exe = work.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new(cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
}
