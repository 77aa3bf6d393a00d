use proptest::prelude::*;
use std::path::Path;
use std::process::{Command, Output};

const CODE: &[&str] =
    &["--field", "2^8:0x11d", "--group", "t=255,tfac=3.5.17,gamma=0x1", "--k", "45", "--fold-level", "2"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burstfft-cli")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn words(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn pipeline(dir: &Path, seed: u64, burst: usize, mode: &str) -> (Output, String) {
    let (cw, rx) = (dir.join("cw.txt"), dir.join("rx.txt"));
    let seed = seed.to_string();
    let burst = burst.to_string();
    let mut enc = vec!["encode", "--seed", &seed, "--out", cw.to_str().unwrap()];
    enc.extend_from_slice(CODE);
    run_ok(&enc);
    run_ok(&[
        "corrupt",
        "--burst-len",
        &burst,
        "--seed",
        &seed,
        "--in",
        cw.to_str().unwrap(),
        "--out",
        rx.to_str().unwrap(),
    ]);
    let mut dec = vec!["decode", "--mode", mode, "--in", rx.to_str().unwrap()];
    dec.extend_from_slice(CODE);
    (run(&dec), std::fs::read_to_string(cw).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]
    #[test]
    fn encode_corrupt_decode(seed in any::<u64>(), burst in 0..=149usize) {
        let dir = tempdir(seed);
        for mode in ["unique", "list"] {
            let (out, cw) = pipeline(&dir, seed, burst, mode);
            prop_assert!(out.status.success());
            let stdout = String::from_utf8(out.stdout).unwrap();
            prop_assert!(words(&stdout).contains(&words(&cw)[0]));
        }
        std::fs::remove_dir_all(dir).unwrap();
    }
}

fn tempdir(tag: u64) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("burstfft-cli-{}-{tag:x}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn exit_codes() {
    let dir = tempdir(u64::MAX);
    // far beyond the radius the decoder reports a detected failure
    let (out, _) = pipeline(&dir, 3, 250, "unique");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("decoding failure"));
    std::fs::remove_dir_all(dir).unwrap();
    let bad = run(&["encode", "--field", "2^8:0x11d", "--k", "45"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}

#[test]
fn mc_is_reproducible() {
    let mut args = vec!["mc", "--burst-len", "100", "--trials", "50", "--seed", "9", "--format", "json"];
    args.extend_from_slice(CODE);
    let a = run_ok(&args);
    assert_eq!(a, run_ok(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v.is_object());
}
