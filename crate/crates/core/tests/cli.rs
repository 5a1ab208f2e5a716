use std::process::Command;

fn ignatiev(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ignatiev"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn golden_outputs() {
    assert_eq!(
        ignatiev(&["eval", "D1 T"]),
        (0, "w,1\n".into(), String::new())
    );
    assert_eq!(ignatiev(&["eval", "D1 T & D0 D1 T"]).1, "w*2,1\n");
    assert_eq!(ignatiev(&["eval", "T"]).1, "0\n");
    assert_eq!(
        ignatiev(&["entails", "D0 D0 T", "D0 T"]),
        (0, "yes\n".into(), String::new())
    );
    assert_eq!(
        ignatiev(&["entails", "D0 T", "D1 T"]),
        (1, "no\n".into(), String::new())
    );
    assert_eq!(ignatiev(&["sigma", "1", ";1"]).1, "w+1,2;1\n");
    assert_eq!(ignatiev(&["sigma", "1", "e0,1;1"]).1, "e0,2;1\n");
    assert_eq!(ignatiev(&["glb", "w,1", "w+1"]).1, "w*2,1\n");
    assert_eq!(
        ignatiev(&["suitable", "w,2;1"]),
        (0, "no 0\n".into(), String::new())
    );
    assert_eq!(ignatiev(&["forces", "w+1,2;1", "D1 T"]).0, 0);
    assert_eq!(ignatiev(&["rel", "R1", "w+1,2;1", ";1"]).1, "yes\n");
}

#[test]
fn outputs_reparse() {
    let p = ignatiev(&["eval", "D2 T & D0 D0 T"]).1;
    assert_eq!(ignatiev(&["glb", p.trim(), p.trim()]).1, p);
    let s = ignatiev(&["sigma", "2", "e0,w^w+1;1"]).1;
    assert_eq!(ignatiev(&["suitable", s.trim()]).1, "yes\n");
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        &["eval", "D T"][..],
        &["glb", "1,1", "0"],
        &["sigma", "1", "w,2;1"],
        &["suitable", "w;x"],
        &["rel", "T1", ";1", ";1"],
        &["entails", "T"],
    ] {
        let (code, out, err) = ignatiev(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_small_bound() {
    let (code, out, _) = ignatiev(&[
        "verify",
        "--height",
        "1",
        "--terms",
        "2",
        "--coeff",
        "2",
        "--support",
        "2",
        "--suite",
        "glb",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}
