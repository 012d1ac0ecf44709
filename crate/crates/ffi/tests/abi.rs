use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use tempus_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = tempus_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn witness() -> *mut TempusGraph {
    let b = tempus_builder_new(2005, 2011);
    assert!(!b.is_null());
    assert_eq!(
        tempus_builder_add_edge(b, c("u").as_ptr(), c("v").as_ptr(), 2007),
        TempusStatus::Ok
    );
    assert_eq!(
        tempus_builder_add_edge(b, c("v").as_ptr(), c("w").as_ptr(), 2006),
        TempusStatus::Ok
    );
    let mut g = ptr::null_mut();
    assert_eq!(tempus_builder_build(b, &mut g), TempusStatus::Ok);
    g
}

unsafe fn rows(s: *const TempusScores) -> Vec<(String, f64, usize)> {
    (0..tempus_scores_len(s))
        .map(|i| {
            let (mut score, mut rank) = (0.0, 0);
            assert_eq!(
                tempus_scores_get(s, i, &mut score, &mut rank),
                TempusStatus::Ok
            );
            let id = CStr::from_ptr(tempus_scores_node(s, i))
                .to_str()
                .unwrap()
                .to_owned();
            (id, score, rank)
        })
        .collect()
}

#[test]
fn witness_scores_through_the_abi() {
    unsafe {
        let g = witness();
        assert_eq!(tempus_graph_node_count(g), 3);
        assert_eq!(tempus_graph_edge_count(g), 2);

        let mut s = ptr::null_mut();
        assert_eq!(
            tempus_static_betweenness(g, 2005, 2011, true, &mut s),
            TempusStatus::Ok
        );
        let st = rows(s);
        assert_eq!(st[0], ("v".to_owned(), 1.0, 1));
        tempus_scores_free(s);

        assert_eq!(
            tempus_foremost_betweenness(g, 2005, 2011, true, &mut s),
            TempusStatus::Ok
        );
        assert!(rows(s).iter().all(|r| r.1 == 0.0));
        assert!(tempus_scores_node(s, 3).is_null());
        let mut x = 0.0;
        assert_eq!(
            tempus_scores_get(s, 3, &mut x, ptr::null_mut()),
            TempusStatus::OutOfRange
        );
        tempus_scores_free(s);
        tempus_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        assert!(tempus_builder_new(2011, 2005).is_null());

        let b = tempus_builder_new(2005, 2011);
        assert_eq!(
            tempus_builder_add_node(b, c("x").as_ptr(), c("ROBOT").as_ptr(), 2005),
            TempusStatus::InvalidArgument
        );
        assert!(last_error().contains("ROBOT"));
        assert_eq!(
            tempus_builder_add_edge(b, c("a").as_ptr(), c("a").as_ptr(), 2006),
            TempusStatus::Ok
        );
        let mut g = ptr::null_mut();
        assert_eq!(tempus_builder_build(b, &mut g), TempusStatus::InvalidGraph);
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            tempus_builder_add_edge(ptr::null_mut(), c("a").as_ptr(), c("b").as_ptr(), 1),
            TempusStatus::NullPointer
        );
        assert_eq!(
            tempus_graph_load(ptr::null(), c("/nonexistent/edges.csv").as_ptr(), &mut g),
            TempusStatus::Io
        );

        let g = witness();
        let mut s = ptr::null_mut();
        assert_eq!(
            tempus_static_betweenness(g, 2009, 2001, true, &mut s),
            TempusStatus::InvalidGraph
        );
        tempus_graph_free(g);

        tempus_graph_free(ptr::null_mut());
        tempus_scores_free(ptr::null_mut());
        tempus_builder_free(ptr::null_mut());
    }
}

#[test]
fn classify_labels() {
    let mut label = TempusFlowLabel::Neutral;
    unsafe {
        assert_eq!(
            tempus_classify(8, 115, 20, 100, &mut label),
            TempusStatus::Ok
        );
        assert_eq!(label, TempusFlowLabel::InvisibleRapid);
        assert_eq!(
            tempus_classify(117, 9, 20, 100, &mut label),
            TempusStatus::Ok
        );
        assert_eq!(label, TempusFlowLabel::InvisibleBrook);
        assert_eq!(
            tempus_classify(1, 1, 100, 20, &mut label),
            TempusStatus::InvalidArgument
        );
    }
}

#[test]
fn generate_save_load() {
    let dir = tempfile::tempdir().unwrap();
    let (np, ep) = (dir.path().join("n.csv"), dir.path().join("e.csv"));
    let (np, ep) = (c(np.to_str().unwrap()), c(ep.to_str().unwrap()));
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(tempus_graph_generate(3, &mut g), TempusStatus::Ok);
        assert_eq!(tempus_graph_node_count(g), 366);
        assert_eq!(
            tempus_graph_save(g, np.as_ptr(), ep.as_ptr()),
            TempusStatus::Ok
        );
        let mut h = ptr::null_mut();
        assert_eq!(
            tempus_graph_load(np.as_ptr(), ep.as_ptr(), &mut h),
            TempusStatus::Ok
        );
        assert_eq!(tempus_graph_edge_count(h), 750);
        tempus_graph_free(g);
        tempus_graph_free(h);
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps/
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_owned()
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtempus_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
