use std::ffi::{c_void, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use misenum_ffi::*;

fn p4() -> *mut MisGraph {
    let edges = [0u32, 1, 1, 2, 2, 3];
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { mis_graph_from_edges(4, edges.as_ptr(), 3, &mut g) },
        MisStatus::Ok
    );
    g
}

unsafe extern "C" fn collect(members: *const u32, len: usize, user_data: *mut c_void) -> i32 {
    let sets = &mut *(user_data as *mut Vec<Vec<u32>>);
    sets.push(std::slice::from_raw_parts(members, len).to_vec());
    0
}

unsafe extern "C" fn stop_after_one(_: *const u32, _: usize, _: *mut c_void) -> i32 {
    1
}

#[test]
fn enumerate_through_callback() {
    let g = p4();
    for algorithm in [
        MisAlgorithm::Auto,
        MisAlgorithm::GenericMinor,
        MisAlgorithm::GenericSparse,
        MisAlgorithm::Bounded,
        MisAlgorithm::Brute,
    ] {
        let mut sets: Vec<Vec<u32>> = Vec::new();
        let mut count = 0;
        let status = unsafe {
            mis_enumerate(
                g,
                algorithm,
                MisOrder::Degeneracy,
                0,
                Some(collect),
                &mut sets as *mut _ as *mut c_void,
                &mut count,
            )
        };
        assert_eq!(status, MisStatus::Ok);
        sets.sort();
        assert_eq!(sets, [vec![0, 2], vec![0, 3], vec![1, 3]]);
        assert_eq!(count, 3);
    }
    let mut count = 0;
    let status = unsafe {
        mis_enumerate(
            g,
            MisAlgorithm::Auto,
            MisOrder::Input,
            0,
            Some(stop_after_one),
            ptr::null_mut(),
            &mut count,
        )
    };
    assert_eq!((status, count), (MisStatus::Ok, 1));
    unsafe { mis_graph_free(g) };
}

#[test]
fn parse_and_count() {
    let text = CString::new("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            mis_graph_parse(text.as_ptr(), MisFormat::Dimacs, &mut g),
            MisStatus::Ok
        );
        assert_eq!(
            (
                mis_graph_vertex_count(g),
                mis_graph_edge_count(g),
                mis_graph_degeneracy(g)
            ),
            (3, 2, 1)
        );
        mis_graph_free(g);
        let bad = CString::new("0 0\n").unwrap();
        assert_eq!(
            mis_graph_parse(bad.as_ptr(), MisFormat::EdgeList, &mut g),
            MisStatus::Parse
        );
    }
}

#[test]
fn invalid_arguments() {
    let g = p4();
    let mut d = ptr::null_mut();
    unsafe {
        let edges = [0u32, 9];
        let mut bad = ptr::null_mut();
        assert_eq!(
            mis_graph_from_edges(3, edges.as_ptr(), 1, &mut bad),
            MisStatus::InvalidArgument
        );
        assert_eq!(
            mis_dominance_new(g, MisStructure::Minor, 1, &mut d),
            MisStatus::InvalidArgument
        );
        assert_eq!(
            mis_enumerate(
                g,
                MisAlgorithm::GenericMinor,
                MisOrder::Degeneracy,
                1,
                None,
                ptr::null_mut(),
                ptr::null_mut()
            ),
            MisStatus::InvalidArgument
        );
        mis_graph_free(g);

        let edges: Vec<u32> = (0..25).flat_map(|v| [v, v + 1]).collect();
        let mut big = ptr::null_mut();
        assert_eq!(
            mis_graph_from_edges(26, edges.as_ptr(), 25, &mut big),
            MisStatus::Ok
        );
        assert_eq!(
            mis_enumerate(
                big,
                MisAlgorithm::Brute,
                MisOrder::Input,
                0,
                None,
                ptr::null_mut(),
                ptr::null_mut()
            ),
            MisStatus::TooLarge
        );
        mis_graph_free(big);
    }
}

#[test]
fn dominance_handles() {
    let g = p4();
    for structure in [MisStructure::Minor, MisStructure::Sparse] {
        let mut d = ptr::null_mut();
        let mut count = 0;
        unsafe {
            assert_eq!(mis_dominance_new(g, structure, 0, &mut d), MisStatus::Ok);
            assert_eq!(mis_dominance_insert(d, 1), MisStatus::Ok);
            assert_eq!(mis_dominance_undominated(d, &mut count), MisStatus::Ok);
            assert_eq!(count, 1);
            assert_eq!(mis_dominance_insert(d, 1), MisStatus::AlreadyMember);
            assert_eq!(mis_dominance_delete(d, 2), MisStatus::NotMember);
            assert_eq!(mis_dominance_insert(d, 99), MisStatus::InvalidArgument);
            assert_eq!(mis_dominance_delete(d, 1), MisStatus::Ok);
            assert_eq!(mis_dominance_undominated(d, &mut count), MisStatus::Ok);
            assert_eq!(count, 4);
            mis_dominance_free(d);
        }
    }
    unsafe { mis_graph_free(g) };
}

#[test]
fn independence_handle() {
    let g = p4();
    let mut i = ptr::null_mut();
    let mut independent = false;
    unsafe {
        assert_eq!(mis_independence_new(g, &mut i), MisStatus::Ok);
        mis_graph_free(g);
        assert_eq!(mis_independence_insert(i, 0), MisStatus::Ok);
        assert_eq!(mis_independence_insert(i, 2), MisStatus::Ok);
        mis_independence_is_independent(i, &mut independent);
        assert!(independent);
        assert_eq!(mis_independence_insert(i, 1), MisStatus::Ok);
        mis_independence_is_independent(i, &mut independent);
        assert!(!independent);
        assert_eq!(mis_independence_delete(i, 1), MisStatus::Ok);
        mis_independence_is_independent(i, &mut independent);
        assert!(independent);
        mis_independence_free(i);
    }
}

#[test]
fn status_strings() {
    let text = unsafe { CStr::from_ptr(mis_status_str(MisStatus::NotMember)) };
    assert_eq!(text.to_str().unwrap(), "vertex not in the set");
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn compile_c(extra: &[&str], out: &Path) -> std::process::Output {
    Command::new("cc")
        .args(["-std=c99", "-Wall", "-Wextra", "-Werror", "-I"])
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-o")
        .arg(out)
        .args(extra)
        .output()
        .expect("run cc")
}

#[test]
fn header_compiles_as_c() {
    let header = crate_dir().join("include/misenum.h");
    assert!(header.exists(), "generated header missing");
    let o = Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Wextra",
            "-Werror",
            "-fsyntax-only",
            "-I",
        ])
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .output()
        .expect("run cc");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn c_program_links_against_static_library() {
    // Integration tests run from target/<profile>/deps.
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libmisenum_ffi.a");
    assert!(
        lib.exists(),
        "static library not built at {}",
        lib.display()
    );
    let out = profile_dir.join(format!("misenum-ffi-smoke-{}", std::process::id()));
    let o = compile_c(&[lib.to_str().unwrap(), "-lpthread", "-ldl", "-lm"], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let run = Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok ok\n");
}
