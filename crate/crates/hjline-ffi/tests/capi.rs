//! Exercises the C entry points the way a binding would: through raw
//! pointers and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use hjline_ffi::*;

fn cstr(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let out = CStr::from_ptr(ptr).to_str().unwrap().to_owned();
    hj_string_free(ptr);
    out
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(hj_last_error_message())
            .to_str()
            .unwrap()
            .to_owned()
    }
}

#[test]
fn version_is_non_empty() {
    let version = unsafe { CStr::from_ptr(hj_version()) };
    assert!(!version.to_bytes().is_empty());
}

#[test]
fn word_string_ops() {
    unsafe {
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        let word = cstr("1111221331");
        assert_eq!(hj_word_contract(word.as_ptr(), &mut out), HjStatus::Ok);
        assert_eq!(take_string(out), "12131");

        let word = cstr("11122133");
        let mut out = ptr::null_mut();
        assert_eq!(hj_word_plus_extend(word.as_ptr(), &mut out), HjStatus::Ok);
        assert_eq!(take_string(out), "1111221331");

        let empty = cstr("-");
        let mut out = ptr::null_mut();
        assert_eq!(hj_word_plus_extend(empty.as_ptr(), &mut out), HjStatus::Ok);
        assert_eq!(take_string(out), "11");

        let bad = cstr("10x");
        let mut out = ptr::null_mut();
        assert_eq!(hj_word_contract(bad.as_ptr(), &mut out), HjStatus::ParseError);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn weights_and_colors() {
    unsafe {
        let mut weights: *mut HjWeights = ptr::null_mut();
        let entries: [i64; 3] = [2, -1, 2];
        assert_eq!(
            hj_weights_new(5, entries.as_ptr(), entries.len(), &mut weights),
            HjStatus::Ok
        );

        let word = cstr("11122133");
        let mut color = u32::MAX;
        assert_eq!(hj_tplus_color(word.as_ptr(), weights, &mut color), HjStatus::Ok);
        assert_eq!(color, 2);
        hj_weights_free(weights);

        let mut canonical: *mut HjWeights = ptr::null_mut();
        assert_eq!(hj_weights_canonical(5, &mut canonical), HjStatus::Ok);
        let mut color2 = u32::MAX;
        assert_eq!(hj_tplus_color(word.as_ptr(), canonical, &mut color2), HjStatus::Ok);
        assert_eq!(color2, 2);
        hj_weights_free(canonical);

        let mut bad: *mut HjWeights = ptr::null_mut();
        assert_eq!(hj_weights_canonical(4, &mut bad), HjStatus::InvalidArgument);
        assert!(last_error().contains("odd"));
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        assert_eq!(
            hj_weights_canonical(5, ptr::null_mut()),
            HjStatus::NullPointer
        );
        let mut out = ptr::null_mut();
        assert_eq!(hj_word_contract(ptr::null(), &mut out), HjStatus::NullPointer);
        let mut color = 0u32;
        assert_eq!(
            hj_tplus_color(ptr::null(), ptr::null(), &mut color),
            HjStatus::NullPointer
        );
    }
}

#[test]
fn scan_and_report_accessors() {
    unsafe {
        let mut weights: *mut HjWeights = ptr::null_mut();
        assert_eq!(hj_weights_canonical(3, &mut weights), HjStatus::Ok);
        let mut coloring: *mut HjColoring = ptr::null_mut();
        assert_eq!(hj_coloring_tplus(6, weights, &mut coloring), HjStatus::Ok);
        hj_weights_free(weights);

        assert_eq!(hj_coloring_m(coloring), 3);
        assert_eq!(hj_coloring_n(coloring), 6);
        assert_eq!(hj_coloring_r(coloring), 3);

        let word = cstr("121212");
        let mut color = u32::MAX;
        assert_eq!(hj_coloring_color(coloring, word.as_ptr(), &mut color), HjStatus::Ok);
        assert!(color < 3);

        let mut report: *mut HjReport = ptr::null_mut();
        assert_eq!(hj_scan(coloring, 2, 0, &mut report), HjStatus::Ok);
        assert_eq!(
            hj_report_templates_scanned(report),
            4u64.pow(6) - 3u64.pow(6)
        );
        // n = 6 admits q = 3 lines, so the canonical r=3 coloring has
        // monochromatic lines here.
        assert!(hj_report_monochromatic_count(report) > 0);
        let mut q = 0u32;
        assert_eq!(hj_report_min_q(report, &mut q), HjStatus::Ok);
        assert_eq!(q, 3);
        let mut witness = ptr::null_mut();
        assert_eq!(hj_report_witness(report, &mut witness), HjStatus::Ok);
        let witness = take_string(witness);
        assert_eq!(witness.matches('*').count(), 3);

        let mut json = ptr::null_mut();
        assert_eq!(hj_report_json(report, &mut json), HjStatus::Ok);
        let json = take_string(json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["min_q"], 3);

        hj_report_free(report);
        hj_coloring_free(coloring);
    }
}

#[test]
fn scan_budget_is_enforced() {
    unsafe {
        let mut weights: *mut HjWeights = ptr::null_mut();
        assert_eq!(hj_weights_canonical(3, &mut weights), HjStatus::Ok);
        let mut coloring: *mut HjColoring = ptr::null_mut();
        assert_eq!(hj_coloring_tplus(10, weights, &mut coloring), HjStatus::Ok);
        hj_weights_free(weights);
        let mut report: *mut HjReport = ptr::null_mut();
        assert_eq!(hj_scan(coloring, 1, 100, &mut report), HjStatus::BudgetExceeded);
        hj_coloring_free(coloring);
    }
}

#[test]
fn verify_entry_points() {
    unsafe {
        let mut verified = false;
        let mut witness: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(hj_verify(3, 7, 0, &mut verified, &mut witness), HjStatus::Ok);
        assert!(verified);
        assert!(witness.is_null());

        assert_eq!(
            hj_verify(4, 3, 0, &mut verified, ptr::null_mut()),
            HjStatus::InvalidArgument
        );

        let mut verified_even = false;
        assert_eq!(
            hj_verify_even(4, 6, 0, &mut verified_even, ptr::null_mut()),
            HjStatus::Ok
        );
        assert!(verified_even);
    }
}

#[test]
fn random_and_file_colorings() {
    unsafe {
        let mut coloring: *mut HjColoring = ptr::null_mut();
        assert_eq!(hj_coloring_random(3, 4, 5, 99, &mut coloring), HjStatus::Ok);

        let dir = std::env::temp_dir().join("hjline-ffi-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("random.hjcolor");
        let path_c = cstr(path.to_str().unwrap());
        assert_eq!(hj_coloring_save(coloring, path_c.as_ptr()), HjStatus::Ok);

        let mut loaded: *mut HjColoring = ptr::null_mut();
        assert_eq!(hj_coloring_load(path_c.as_ptr(), &mut loaded), HjStatus::Ok);
        assert_eq!(hj_coloring_m(loaded), 3);
        assert_eq!(hj_coloring_n(loaded), 4);
        assert_eq!(hj_coloring_r(loaded), 5);

        // Table lookups must agree with the original coloring.
        let word = cstr("3121");
        let mut a = u32::MAX;
        let mut b = u32::MAX;
        assert_eq!(hj_coloring_color(coloring, word.as_ptr(), &mut a), HjStatus::Ok);
        assert_eq!(hj_coloring_color(loaded, word.as_ptr(), &mut b), HjStatus::Ok);
        assert_eq!(a, b);

        hj_coloring_free(coloring);
        hj_coloring_free(loaded);
        std::fs::remove_file(&path).unwrap();

        let missing = cstr("/does/not/exist.hjcolor");
        let mut broken: *mut HjColoring = ptr::null_mut();
        assert_eq!(hj_coloring_load(missing.as_ptr(), &mut broken), HjStatus::IoError);
    }
}

#[test]
fn pigeonhole_and_oracle() {
    unsafe {
        let colors = [0u32, 0, 1];
        let mut out = ptr::null_mut();
        assert_eq!(
            hj_pigeonhole_line(colors.as_ptr(), colors.len(), &mut out),
            HjStatus::Ok
        );
        assert_eq!(take_string(out), "1*");

        let distinct = [0u32, 1, 2];
        let mut out = ptr::null_mut();
        assert_eq!(
            hj_pigeonhole_line(distinct.as_ptr(), distinct.len(), &mut out),
            HjStatus::NoValue
        );

        let mut every = false;
        assert_eq!(hj_decide_all_colorings(2, 2, 2, 0, &mut every), HjStatus::Ok);
        assert!(every);
        assert_eq!(hj_decide_all_colorings(2, 2, 3, 0, &mut every), HjStatus::Ok);
        assert!(!every);
        assert_eq!(
            hj_decide_all_colorings(3, 3, 2, 0, &mut every),
            HjStatus::BudgetExceeded
        );
    }
}

#[test]
fn template_interval_count() {
    unsafe {
        let template = cstr("2**3*1");
        let mut q = 0u32;
        assert_eq!(
            hj_template_interval_count(template.as_ptr(), 3, &mut q),
            HjStatus::Ok
        );
        assert_eq!(q, 2);

        let starless = cstr("123");
        assert_eq!(
            hj_template_interval_count(starless.as_ptr(), 3, &mut q),
            HjStatus::InvalidArgument
        );
    }
}

/// The generated header must be valid C.
#[test]
fn generated_header_compiles_as_c() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("hjline.h");
    assert!(header.exists(), "build.rs must generate include/hjline.h");
    let Ok(cc) = which_cc() else {
        eprintln!("skipping header compile check: no C compiler found");
        return;
    };
    let dir = std::env::temp_dir().join("hjline-ffi-header-check");
    std::fs::create_dir_all(&dir).unwrap();
    let main_c = dir.join("check.c");
    std::fs::write(&main_c, "#include \"hjline.h\"\nint main(void) { return 0; }\n").unwrap();
    let status = std::process::Command::new(cc)
        .arg("-fsyntax-only")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&main_c)
        .status()
        .expect("failed to run the C compiler");
    assert!(status.success(), "header failed to compile as C");
}

fn which_cc() -> Result<&'static str, ()> {
    for candidate in ["cc", "gcc", "clang"] {
        if std::process::Command::new(candidate)
            .arg("--version")
            .output()
            .is_ok()
        {
            return Ok(candidate);
        }
    }
    Err(())
}
