use std::io::Write;
use std::process::{Command, Output, Stdio};

use parry_attractors::attractors::gamma;
use parry_attractors::{ParryParameters, PrefixEngine};
use serde_json::Value;

fn parry(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parry"))
        .args(args)
        .env_remove("PARRY_MAX_WORD")
        .output()
        .expect("binary runs")
}

fn parry_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_parry"))
        .args(args)
        .env_remove("PARRY_MAX_WORD")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn positions(v: &Value) -> Vec<u64> {
    v["positions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_u64().unwrap())
        .collect()
}

#[test]
fn gen_prints_prefixes() {
    assert_eq!(
        stdout(&parry(&["gen", "--t", "2,1,1", "--level", "2"])),
        "00100102\n"
    );
    assert_eq!(
        stdout(&parry(&["gen", "--t", "2,1,1", "--len", "1"])),
        "0\n"
    );
    assert_eq!(
        stdout(&parry(&["gen", "--nsp", "3,1", "--level", "1"])),
        "0001\n"
    );
    let o = parry(&["gen", "--t", "2,1,1", "--level", "3", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["length"], 20);
    assert_eq!(v["word"], "00100102001001020010");
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(code(&parry(&["attractor", "--t", "3,1", "--nsp"])), 2);
    assert_eq!(
        code(&parry(&[
            "attractor",
            "--t",
            "3,1",
            "--nsp",
            "3,1",
            "--level",
            "1"
        ])),
        2
    );
    assert_eq!(code(&parry(&["gen", "--t", "1,2", "--level", "1"])), 2);
    assert_eq!(code(&parry(&["gen", "--nsp", "1,3", "--level", "1"])), 2);
    assert_eq!(code(&parry(&["gen", "--t", "2,1,1", "--len", "U3*2"])), 2);
    assert_eq!(code(&parry(&["gen", "--t", "2,1,1"])), 2);
}

#[test]
fn caps_exit_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_parry"))
        .args(["gen", "--t", "2,1,1", "--level", "3"])
        .env("PARRY_MAX_WORD", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = parry(&["gen", "--t", "2,1,1", "--level", "3", "--max-word", "19"]);
    assert_eq!(code(&o), 3);
    let o = parry(&[
        "sweep",
        "--t-max",
        "1",
        "--m-max",
        "2",
        "--levels",
        "3",
        "--minimality-len",
        "65",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn preconditions_exit_4() {
    // the restricted theorem needs t1 > max(t_{m-1}, t_m)
    let o = parry(&[
        "attractor",
        "--t",
        "1,1",
        "--level",
        "3",
        "--theorem",
        "restricted",
    ]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
    // 5 is not |φⁿ(0)| for (3,1)
    assert_eq!(
        code(&parry(&["attractor", "--nsp", "3,1", "--len", "5"])),
        4
    );
}

#[test]
fn attractor_records() {
    let o = parry(&["attractor", "--nsp", "3,1", "--level", "2", "--verify"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(positions(&v), vec![4, 11]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["length"], 14);

    let o = parry(&[
        "attractor",
        "--t",
        "2,1,2,1",
        "--len",
        "U6+9",
        "--theorem",
        "prior",
        "--verify",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(positions(&v).len(), 5);
    assert_eq!(v["verified"], true);
    assert_eq!(v["theorem"], "PriorCorollary");

    let o = parry(&["attractor", "--t", "2,1,2,1", "--len", "U6+9", "--verify"]);
    let v = json(&o);
    let e = PrefixEngine::new(ParryParameters::simple(vec![2, 1, 2, 1]).unwrap()).unwrap();
    let u = |n| e.len_u(n) - 1;
    assert_eq!(
        positions(&v),
        vec![u(3), u(4), u(5), e.len_u(6) - e.len_u(3) - 1]
    );
    assert_eq!(v["verified"], true);

    let o = parry(&[
        "attractor",
        "--t",
        "2,2",
        "--level",
        "2",
        "--format",
        "plain",
    ]);
    assert_eq!(stdout(&o), "0,2\n");
}

#[test]
fn verify_exit_codes_and_witnesses() {
    let o = parry_stdin(&["verify", "--word", "-", "--gamma", "0,1,5"], "ananas");
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["holds"], true);

    let o = parry_stdin(&["verify", "--word", "-", "--gamma", "0,1"], "ananas\n");
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["witness"]["factor"], "s");
    assert_eq!(v["witness"]["occurrences"], serde_json::json!([[5, 6]]));

    let o = parry_stdin(&["verify", "--word", "-", "--gamma", "0,9"], "ananas");
    assert_eq!(code(&o), 2);

    let o = parry_stdin(
        &[
            "verify", "--word", "-", "--gamma", "1,2", "--format", "plain",
        ],
        "3,10,3,10",
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "holds\n");
}

#[test]
fn verify_from_file_rejects_gamma_6() {
    let e = PrefixEngine::new(ParryParameters::simple(vec![2, 1, 2, 1]).unwrap()).unwrap();
    let len = e.len_u(6) as usize + 9;
    let word = stdout(&parry(&["gen", "--t", "2,1,2,1", "--len", "U6+9"]));
    assert_eq!(word.trim().len(), len);
    let dir = std::env::temp_dir().join(format!("parry-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v.txt");
    std::fs::write(&path, &word).unwrap();
    for n in [5, 6] {
        let g: Vec<String> = gamma(&e, n)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        let o = parry(&[
            "verify",
            "--word",
            path.to_str().unwrap(),
            "--gamma",
            &g.join(","),
        ]);
        assert_eq!(code(&o), 1, "gamma {n}");
        let v = json(&o);
        let factor = v["witness"]["factor"].as_str().unwrap();
        for occ in v["witness"]["occurrences"].as_array().unwrap() {
            let (i, j) = (
                occ[0].as_u64().unwrap() as usize,
                occ[1].as_u64().unwrap() as usize,
            );
            assert_eq!(&word[i..j], factor);
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(
        code(&parry(&[
            "verify",
            "--word",
            "/nonexistent/word",
            "--gamma",
            "0"
        ])),
        2
    );
}

#[test]
fn fabre_and_beta() {
    let v = json(&parry(&["fabre", "--t", "2,1,1", "--pos", "5"]));
    assert_eq!(v["digits"], "12");
    assert_eq!(v["admissible"], true);
    assert_eq!(
        json(&parry(&["fabre", "--t", "2,1,1", "--pos", "0"]))["digits"],
        "0"
    );
    let v = json(&parry(&["fabre", "--t", "1,1", "--digits", "101"]));
    assert_eq!(v["position"], 4);
    assert_eq!(v["admissible"], true);
    let v = json(&parry(&["fabre", "--t", "1,1", "--digits", "110"]));
    assert_eq!(v["admissible"], false);
    assert!(v["position"].is_null());

    let v = json(&parry(&["beta", "--t", "1,1"]));
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((v["beta"].as_f64().unwrap() - golden).abs() < 1e-12);
    let d: Vec<f64> = v["deltas"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!((d[0] - 1.0).abs() < 1e-10 && (d[1] - (golden - 1.0)).abs() < 1e-10);
    assert_eq!(v["d_star"], "(10)^w");
    assert_eq!(v["polynomial"], "x^2 - x - 1");

    let v = json(&parry(&["beta", "--t", "2,1,1"]));
    assert!((v["deltas"][0].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let v = json(&parry(&["beta", "--nsp", "3,1"]));
    assert_eq!(v["polynomial"], "x^2 - 4x + 2");
    assert!((v["beta"].as_f64().unwrap() - (2.0 + 2f64.sqrt())).abs() < 1e-12);
}

#[test]
fn sweep_reports() {
    let o = parry(&["sweep", "--t-max", "2", "--m-max", "3", "--levels", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "params\tlength\ttheorem\tsize\tverified\tstatus"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with("\tPASS")));
    assert!(rows[0].starts_with("1,1\t1\t"));

    let o = parry(&["sweep", "--t-max", "2", "--m-max", "1", "--levels", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = parry(&[
        "sweep", "--t-max", "2", "--m-max", "1", "--levels", "5", "--quiet",
    ]);
    assert!(o.stderr.is_empty());

    let o = parry(&[
        "sweep",
        "--t-max",
        "2",
        "--m-max",
        "3",
        "--levels",
        "4",
        "--minimality-len",
        "40",
    ]);
    assert_eq!(code(&o), 0);
    for row in stdout(&o).lines().skip(1) {
        let cols: Vec<&str> = row.split('\t').collect();
        let (len, size, minimal) = (cols[1].parse::<usize>().unwrap(), cols[3], cols[5]);
        if len <= 40 {
            assert_eq!(minimal, size, "{row}");
        } else {
            assert_eq!(minimal, "-");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sweep", "--t-max", "3", "--m-max", "3", "--levels", "4", "-q",
    ];
    assert_eq!(parry(&args).stdout, parry(&args).stdout);
    let args = ["attractor", "--t", "3,0,2", "--len", "Z4", "--verify"];
    assert_eq!(parry(&args).stdout, parry(&args).stdout);
}

/// `gen` piped into `verify` with the positions from `attractor`.
#[test]
fn gen_attractor_verify_round_trip() {
    for t in [
        "1,1",
        "2,1",
        "2,2",
        "1,0,1",
        "2,1,1",
        "2,0,2",
        "3,0,2",
        "2,1,2,1",
        "1,1,0,1,1",
    ] {
        let params: Vec<u32> = t.split(',').map(|d| d.parse().unwrap()).collect();
        let e = PrefixEngine::new(ParryParameters::simple(params).unwrap()).unwrap();
        let top = e.len_u(4) as usize;
        for len in (1..=top).step_by(3) {
            let len = len.to_string();
            let word = stdout(&parry(&["gen", "--t", t, "--len", &len]));
            let set = stdout(&parry(&[
                "attractor",
                "--t",
                t,
                "--len",
                &len,
                "--format",
                "plain",
            ]));
            let o = parry_stdin(&["verify", "--word", "-", "--gamma", set.trim()], &word);
            assert_eq!(code(&o), 0, "t={t} len={len} gamma={set}");
        }
    }
}
