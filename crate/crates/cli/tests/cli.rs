use std::path::PathBuf;
use std::process::{Command, Output};

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn m(name: &str) -> String {
    models().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxjordan"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn failure(args: &[&str]) -> (i32, String) {
    let out = run(args);
    assert!(out.stdout.is_empty(), "partial output for {args:?}");
    (out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn report_for_example_4_1() {
    let out = stdout(&["report", &m("ex4_1.json"), "--atlas", &m("ex4_1.atlas.json")]);
    assert!(out.lines().any(|l| l == "3\t1\t1\t1\t1\tcomputed"), "{out}");
    assert!(out.lines().any(|l| l == "1\t1\t2\t1\t1\tduality"), "{out}");
    let one = stdout(&[
        "report",
        &m("ex4_1.json"),
        "--atlas",
        &m("ex4_1.atlas.json"),
        "--lambda",
        "3:2",
        "--degree",
        "1",
    ]);
    assert_eq!(
        one,
        "d\ta\tj\tnu\tnu_c\tsource\n3\t2\t1\t1\t1\tcomputed\n3\t2\t1\t1\t1\tduality\n"
    );
}

#[test]
fn b_complex_of_example_4_3() {
    let out = stdout(&[
        "complex",
        &m("ex4_3A.json"),
        "--lambda",
        "3:1",
        "--kind",
        "b",
        "--atlas",
        &m("ex4_3A.atlas.json"),
    ]);
    let dims: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(4).unwrap()).collect();
    assert_eq!(dims, ["0", "3", "6"]);
    let c = stdout(&["complex", &m("ex4_3B.json"), "--lambda", "3:1", "--format", "pretty"]);
    assert!(c.contains("dims        1 5 6"), "{c}");
}

#[test]
fn spectrum_of_xyz() {
    assert_eq!(
        stdout(&["spectrum", "--n", "2", "--d", "3", "--alphas", "1,1,1"]),
        "1\t1\n2\t-2\n"
    );
    assert_eq!(
        stdout(&["spectrum", "--n", "2", "--d", "3", "--alphas", "1,1,1", "--shift"]),
        "0\t1\n1\t-2\n"
    );
    let file = std::env::temp_dir().join(format!("maxjordan-alphas-{}.json", std::process::id()));
    std::fs::write(&file, r#"[1, "1", "2/2"]"#).unwrap();
    let out = stdout(&[
        "spectrum",
        "--n",
        "2",
        "--d",
        "3",
        "--k",
        "1",
        "--alphas-file",
        file.to_str().unwrap(),
    ]);
    std::fs::remove_file(&file).unwrap();
    assert_eq!(out, "1\t1\n5/4\t3\n3/2\t3\n7/4\t3\n2\t1\n");
}

#[test]
fn criteria_commands() {
    let t3 = stdout(&[
        "theorem3",
        &m("ex4_3B.json"),
        "--atlas",
        &m("ex4_3B.atlas.json"),
        "--lambda",
        "3:1",
        "--degree",
        "2",
    ]);
    assert_eq!(t3, "d\ta\tj\tnu\tsource\n3\t1\t2\t2\ttheorem3\n");
    let t4 = stdout(&[
        "theorem4",
        &m("ex4_4_a3.json"),
        "--h1",
        &m("ex4_4_a3.h1.json"),
        "--lambda",
        "2",
    ]);
    assert!(t4.starts_with("order 2: B^j = C^j for j = 0..1: yes yes"), "{t4}");
    let curve = stdout(&["curve03", &m("ex4_4_a4.json"), "--lambda", "2"]);
    assert_eq!(curve, "d\tpairs\tisolated\tnu1\n2\t6\t5\t1\n");
    let sing = stdout(&[
        "singular-nuc",
        &m("hyper_two_sheets.json"),
        "--lambda",
        "1",
        "--degree",
        "0",
    ]);
    assert_eq!(sing, "d\ta\tj\tnu_c\tupper\n1\t1\t0\t1\t2\n");
    let nuc = stdout(&[
        "nuc",
        &m("ex4_1_open.json"),
        "--atlas",
        &m("ex4_1_open.atlas.json"),
        "--lambda",
        "1",
    ]);
    assert_eq!(nuc, "d\ta\tj\tnu_c\n1\t1\t0\t0\n1\t1\t1\t0\n");
    let nu = stdout(&[
        "nu",
        &m("ex4_1_open.json"),
        "--atlas",
        &m("ex4_1_open.atlas.json"),
        "--lambda",
        "1",
    ]);
    assert_eq!(nu, "d\ta\tj\tnu\n1\t1\t0\t1\n1\t1\t1\t0\n");
}

#[test]
fn validate_and_orders() {
    let v = stdout(&[
        "validate",
        &m("ex4_4_a2.json"),
        "--atlas",
        &m("ex4_4_a2.atlas.json"),
        "--h1",
        &m("ex4_4_a2.h1.json"),
    ]);
    assert_eq!(v.lines().count(), 3, "{v}");
    let o = stdout(&["orders", &m("cusp.json")]);
    assert_eq!(
        o,
        "d\tcomplete\tJ\n1\tyes\tE1,E2,E3,G\n2\tyes\tE1,E3\n3\tyes\tE2,E3\n6\tyes\tE3\n"
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "report",
        &m("ex4_3A.json"),
        "--atlas",
        &m("ex4_3A.atlas.json"),
        "--format",
        "pretty",
    ];
    let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn inconsistent_constants_exit_with_2() {
    let (code, err) = failure(&[
        "nu",
        &m("negative/triple_point.json"),
        "--atlas",
        &m("negative/twisted_kappa.atlas.json"),
        "--lambda",
        "2",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("'A'") && err.contains("'T'"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn input_errors_exit_with_1_and_locate_the_problem() {
    let cases: [(&[&str], &str); 6] = [
        (&["validate", &m("negative/missing_parent.json")], "'P'"),
        (&["validate", &m("negative/unknown_vertical.json")], "'Z'"),
        (&["validate", &m("negative/truncated.json")], "truncated.json"),
        (
            &[
                "validate",
                &m("ex4_1.json"),
                "--atlas",
                &m("negative/unknown_stratum.atlas.json"),
            ],
            "'P99'",
        ),
        (&["nu", &m("ex4_2_multiplicities.json"), "--lambda", "3"], "'Y0'"),
        (&["nu", &m("ex4_1.json"), "--lambda", "3:3"], "--lambda"),
    ];
    for (args, needle) in cases {
        let (code, err) = failure(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(err.contains(needle), "{args:?}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
    }
    let (code, err) = failure(&[
        "theorem3",
        &m("ex4_1.json"),
        "--atlas",
        &m("ex4_1.atlas.json"),
        "--lambda",
        "3",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("isolated_singularity_compactification"), "{err}");
}
