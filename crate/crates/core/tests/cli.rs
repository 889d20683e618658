use std::io::Write;
use std::process::{Command, Output};

fn cusploop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusploop")).args(args).env_remove("CUSPLOOP_TOL").output().unwrap()
}

fn params_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn reduce_example() {
    let o = cusploop(&["reduce", "--i", "0", "--j", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), r#"{"p1":"12/7 h","p2":"0","p3":"1/7"}"#);
}

#[test]
fn exit_codes() {
    assert_eq!(cusploop(&["nonsense"]).status.code(), Some(2));
    assert_eq!(cusploop(&["verify", "--criterion", "7"]).status.code(), Some(0));
    assert_eq!(cusploop(&["verify", "--criterion", "1"]).status.code(), Some(1));
    assert_eq!(cusploop(&["verify", "--criterion", "11"]).status.code(), Some(2));
    let bad = params_file("p_121 = three\n");
    assert_eq!(cusploop(&["simulate", "--params", bad.path().to_str().unwrap(), "--eps", "1e-4", "--h", "0.005"]).status.code(), Some(2));
}

#[test]
fn tolerance_from_environment_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_cusploop"))
        .args(["oracle", "--i", "0", "--j", "1", "--h", "0.01"])
        .env("CUSPLOOP_TOL", "1e-2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let p = params_file("# first-order point\nq_111 = 1\nq_211 = -1.0861\n");
    let path = p.path().to_str().unwrap();
    let runs: [&[&str]; 4] = [
        &["zeros"],
        &["simulate", "--params", path, "--eps", "1e-4", "--h", "-0.01"],
        &["scan", "--params", path, "--eps", "1e-4", "--hmin", "0.004", "--hmax", "0.006", "--n", "3"],
        &["melnikov", "--order", "1", "--params", path, "--side", "-", "--coeffs", "5"],
    ];
    for args in runs {
        let (a, b) = (cusploop(args), cusploop(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
    let csv = String::from_utf8(cusploop(runs[2]).stdout).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("h,displacement\n"));
}

#[test]
fn ten_zero_report() {
    let o = cusploop(&["zeros"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["plus"]["count"], 6);
    assert_eq!(v["minus"]["count"], 4);
    assert_eq!(v["total"], 10);
}
