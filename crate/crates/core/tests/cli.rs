use std::path::Path;
use std::process::{Command, Output};

fn padic_gkz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-gkz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn integral_verdict_exits_zero() {
    let out = padic_gkz(&["verdict", "--preset", "example1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("integral-up-to-3, w(v)=w(R_{β,b})=1"), "{text}");
    assert!(text.contains("certificate: certified"), "{text}");
}

#[test]
fn witness_exits_one() {
    let out = padic_gkz(&["verdict", "--preset", "example1", "--p", "7", "--v=-2/3,-2/3,0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("not integral: witness at b=1"), "{}", stdout(&out));
}

#[test]
fn undecided_is_stated() {
    let out = padic_gkz(&["verdict", "--preset", "example1", "--v=-1/2,0,-1/4", "--b-max", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("certificate: undecided by this route"));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["weight", "--preset", "example1", "--p", "4"][..],
        &["weight", "--preset", "example1", "--v", "1/0,0,0"][..],
        &["verdict", "--preset", "nonexistent"][..],
        &["verdict", "--columns", "3,0;0,x"][..],
    ] {
        let out = padic_gkz(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn cap_exceeded_exits_three() {
    let out = padic_gkz(&["search", "--preset", "example3", "--max-cells", "10"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn json_report_and_files() {
    let dir = std::env::temp_dir().join(format!("padic-gkz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let prefix = dir.join("classical");
    let out = padic_gkz(&["classical", "--preset", "example2", "--json", "--report", prefix.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["command"], "classical");
    assert_eq!(json["p"], 3);
    let written = std::fs::read_to_string(prefix.with_extension("json")).unwrap();
    assert_eq!(written, stdout(&out));
    let text = std::fs::read_to_string(prefix.with_extension("txt")).unwrap();
    assert!(text.starts_with("Prop4.7: true, Prop4.10: false"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn demo_matches_golden_reports() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    let out = padic_gkz(&["demo", "--golden", golden.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(code(&out), 0, "{text}");
    assert!(text.contains("demo: 7 of 7 reports match"), "{text}");
}
