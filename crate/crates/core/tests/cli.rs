use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toffoli-shor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn synth_then_sim() {
    let path = scratch("add.txt");
    let o = bin(&[
        "synth",
        "add",
        "--n",
        "8",
        "--c",
        "255",
        "--mode",
        "serial",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("toffoli=80 "));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("width 9\n"));
    // 3 + 255 = 258 = 2 mod 256; qubit 8 is the dirty qubit
    let o = bin(&[
        "sim",
        "--circuit",
        path.to_str().unwrap(),
        "--input",
        "110000001",
    ]);
    assert_eq!(stdout(&o), "010000001\n");
}

#[test]
fn shor_is_deterministic() {
    let a = bin(&["shor", "--N", "15", "--seed", "7"]);
    let b = bin(&["shor", "--N", "15", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).trim_end().ends_with("factors=3,5"));
    let fixed = bin(&["shor", "--N", "15", "--a", "7", "--seed", "3"]);
    let text = stdout(&fixed);
    assert_eq!(text.lines().filter(|l| l.starts_with("i=")).count(), 8);
    assert!(text.lines().last().unwrap().starts_with("y="));
}

#[test]
fn scale_writes_csv() {
    let path = scratch("scale.csv");
    let o = bin(&[
        "scale",
        "--harness",
        "modmul",
        "--sizes",
        "8,16,...,32",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,toffoli,depth,seconds");
    let ns: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ns, ["8", "16", "32"]);
}

#[test]
fn faultscan_localizes() {
    let circuit = scratch("fs_circuit.txt");
    let faults = scratch("fs_faults.txt");
    bin(&[
        "synth",
        "add",
        "--n",
        "16",
        "--c",
        "65535",
        "--out",
        circuit.to_str().unwrap(),
    ]);
    fs::write(&faults, "missing 100\n").unwrap();
    let o = bin(&[
        "faultscan",
        "--circuit",
        circuit.to_str().unwrap(),
        "--faults",
        faults.to_str().unwrap(),
        "--vectors",
        "64",
        "--seed",
        "1",
    ]);
    let text = stdout(&o);
    assert!(text.contains("detected=true"), "{text}");
    assert!(text.contains("range 100 101"), "{text}");
}

#[test]
fn bad_input_fails_cleanly() {
    assert!(!bin(&["synth", "add", "--n", "x"]).status.success());
    assert!(!bin(&["shor", "--N", "16", "--seed", "0"]).status.success());
    assert!(!bin(&["frobnicate"]).status.success());
}

#[test]
fn every_subcommand_has_help() {
    for (sub, flags) in [
        (
            "synth",
            &["--n", "--c", "--mode", "--N", "--a", "--ctrls", "--out"][..],
        ),
        ("sim", &["--circuit", "--input"]),
        ("scale", &["--harness", "--sizes", "--out"]),
        ("shor", &["--N", "--a", "--seed"]),
        (
            "faultscan",
            &["--circuit", "--faults", "--vectors", "--seed"],
        ),
    ] {
        let o = bin(&[sub, "--help"]);
        assert!(o.status.success());
        let text = stdout(&o);
        for f in flags {
            assert!(text.contains(f), "{sub} help lacks {f}");
        }
    }
}
