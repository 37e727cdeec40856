use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use gsdec::{derive_params, hamming_distance, Elem, Field, GrsCode, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn config(name: &str) -> String {
    format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gsdec(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gsdec"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ints(text: &str) -> Vec<u32> {
    text.split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn code_file(dir: &TempDir, code: &GrsCode) -> PathBuf {
    let pts: Vec<u32> = code.abscissas().iter().map(|e| e.value()).collect();
    let f = code.field();
    let text = format!(
        "p = {}\nm = {}\nn = {}\nk = {}\nlocators = {:?}\nabscissas = {:?}\n",
        f.characteristic(),
        f.degree(),
        code.n(),
        code.k(),
        pts,
        pts
    );
    write(dir, "code.toml", &text)
}

#[test]
fn analyze_matches_golden_and_is_stable() {
    let args = [
        "analyze",
        "--code",
        &config("f27.toml"),
        "--params",
        &config("r10_l13.toml"),
    ];
    let golden = include_str!("golden/analyze_f27_r10_l13.txt");
    let a = gsdec(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, golden);
    assert_eq!(gsdec(&args).stdout, a.stdout);
}

#[test]
fn analyze_json_counts() {
    let run = gsdec(&[
        "analyze",
        "--code",
        &config("f256_191.toml"),
        "--params",
        &config("r16_l18.toml"),
        "--json",
    ]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let counts: Vec<u64> = v["modes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["unknowns"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![34694, 8718, 31379, 7886]);
    assert_eq!(v["t0"], 15);
}

#[test]
fn analyze_marks_sierpinski_inapplicable() {
    let run = gsdec(&[
        "analyze",
        "--code",
        &config("f27.toml"),
        "--params",
        &config("r1_l1.toml"),
    ]);
    assert_eq!(run.code, 0);
    let line = run
        .stdout
        .lines()
        .find(|l| l.starts_with("sierpinski"))
        .unwrap();
    assert!(line.ends_with("inapplicable"), "{line}");
    assert!(run.stdout.contains("maximal zero column: none"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.toml", "p = 11\nn = ten\n");
    let unknown = write(&dir, "unknown.toml", "p = 11\nn = 10\nk = 5\ncolour = 1\n");
    let short = write(&dir, "short.txt", "1 2 3");
    let big = write(&dir, "big.txt", "11 0 0 0 0 0 0 0 0 0");
    let code = PathBuf::from(config("f11_example1.toml"));
    let params = PathBuf::from(config("r2_l3.toml"));
    for c in [&bad, &unknown] {
        let run = gsdec(&["analyze", "--code", path(c), "--params", path(&params)]);
        assert_eq!(run.code, 2);
        assert!(run.stderr.starts_with("error:"));
    }
    for y in [&short, &big] {
        let run = gsdec(&[
            "decode",
            "--code",
            path(&code),
            "--params",
            path(&params),
            "--received",
            path(y),
        ]);
        assert_eq!(run.code, 2, "{}", run.stderr);
    }
    let run = gsdec(&[
        "decode",
        "--code",
        path(&code),
        "--params",
        path(&params),
        "--received",
        path(&short),
        "--mode",
        "fast",
    ]);
    assert_eq!(run.code, 2);
    let run = gsdec(&[
        "bench",
        "--code",
        path(&code),
        "--params",
        path(&params),
        "--errors",
        "x",
        "--trials",
        "1",
    ]);
    assert_eq!(run.code, 2);
}

#[test]
fn decode_example_one() {
    let run = gsdec(&[
        "decode",
        "--code",
        &config("f11_example1.toml"),
        "--params",
        &config("r2_l3.toml"),
        "--received",
        &config("example1_received.txt"),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["eps_max"], 3);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 4);
    for r in results {
        let uses_j = matches!(r["mode"].as_str().unwrap(), "reencoding" | "combined");
        let j = if uses_j {
            serde_json::json!([5, 6, 7, 8, 9])
        } else {
            serde_json::json!([])
        };
        assert_eq!(r["J"], j);
        let hit = r["list"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["codeword"] == serde_json::json!([5, 3, 8, 10, 7, 8, 4, 5, 6, 4]))
            .unwrap();
        assert_eq!(hit["distance"], 3);
    }
}

#[test]
fn decode_codeword_and_empty_list() {
    let dir = TempDir::new().unwrap();
    let code = PathBuf::from(config("f11_example1.toml"));
    let params = PathBuf::from(config("r2_l3.toml"));
    let c = write(&dir, "c.txt", "5 3 8 10 7 8 4 5 6 4");
    let run = gsdec(&[
        "decode",
        "--code",
        path(&code),
        "--params",
        path(&params),
        "--received",
        path(&c),
        "--mode",
        "combined",
    ]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["results"][0]["list"][0]["distance"], 0);

    // a word farther than eps_max from all 49 codewords of the F_7 toy code
    let toy = GrsCode::inverse_powers(Arc::new(Field::prime(7).unwrap()), 6, 2).unwrap();
    let tp = derive_params(&toy, 1, 2).unwrap();
    let all: Vec<Vec<Elem>> = (0..49u16)
        .map(|i| toy.encode(&Poly::from_values(&[i % 7, i / 7])).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let far = loop {
        let y: Vec<Elem> = (0..6).map(|_| Elem(rng.gen_range(0..7))).collect();
        if all
            .iter()
            .all(|c| hamming_distance(c, &y).unwrap() as i64 > tp.eps_max)
        {
            break y;
        }
    };
    let code = code_file(&dir, &toy);
    let params = write(&dir, "p.toml", "r = 1\nell = 2\n");
    let y: Vec<u32> = far.iter().map(|e| e.value()).collect();
    let y = write(&dir, "y.txt", &join(&y));
    let run = gsdec(&[
        "decode",
        "--code",
        path(&code),
        "--params",
        path(&params),
        "--received",
        path(&y),
    ]);
    assert_eq!(run.code, 1, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["list"].as_array().unwrap().is_empty()));
}

#[test]
fn gen_and_corrupt() {
    let dir = TempDir::new().unwrap();
    let code = PathBuf::from(config("f11_example1.toml"));
    let zero = write(&dir, "zero.txt", "0 0 0 0 0");
    let run = gsdec(&["gen", "--code", path(&code), "--message", path(&zero)]);
    assert_eq!(run.code, 0);
    assert_eq!(ints(&run.stdout), vec![0; 10]);

    // the erasure-decoded word of Example 1, regenerated from its message
    let f11 = GrsCode::inverse_powers(Arc::new(Field::prime(11).unwrap()), 10, 5).unwrap();
    let known: Vec<(usize, Elem)> = [1u16, 6, 6, 9, 7]
        .iter()
        .enumerate()
        .map(|(i, &x)| (5 + i, Elem(x)))
        .collect();
    let u = f11.interpolate_message(&known).unwrap();
    let m: Vec<u32> = u.coeffs().iter().map(|e| e.value()).collect();
    let msg = write(&dir, "msg.txt", &join(&m));
    let run = gsdec(&["gen", "--code", path(&code), "--message", path(&msg)]);
    assert_eq!(ints(&run.stdout), vec![3, 3, 4, 10, 5, 1, 6, 6, 9, 7]);

    let c = write(&dir, "c.txt", &run.stdout);
    let run = gsdec(&[
        "corrupt",
        "--code",
        path(&code),
        "--input",
        path(&c),
        "--weight",
        "0",
        "--seed",
        "4",
    ]);
    assert_eq!(ints(&run.stdout), vec![3, 3, 4, 10, 5, 1, 6, 6, 9, 7]);
    for w in 1..=10 {
        let ws = w.to_string();
        let a = gsdec(&[
            "corrupt",
            "--code",
            path(&code),
            "--input",
            path(&c),
            "--weight",
            &ws,
            "--seed",
            "4",
        ]);
        let b = gsdec(&[
            "corrupt",
            "--code",
            path(&code),
            "--input",
            path(&c),
            "--weight",
            &ws,
            "--seed",
            "4",
        ]);
        assert_eq!(a.stdout, b.stdout);
        let diff = ints(&a.stdout)
            .iter()
            .zip([3, 3, 4, 10, 5, 1, 6, 6, 9, 7])
            .filter(|(x, y)| **x != *y)
            .count();
        assert_eq!(diff, w);
    }
    let run = gsdec(&[
        "corrupt",
        "--code",
        path(&code),
        "--input",
        path(&c),
        "--weight",
        "11",
    ]);
    assert_eq!(run.code, 2);
}

#[test]
fn bench_is_deterministic() {
    let args = |e: &'static str| {
        vec![
            "bench".to_string(),
            "--code".into(),
            config("f11_example1.toml"),
            "--params".into(),
            config("r2_l3.toml"),
            "--errors".into(),
            e.into(),
            "--trials".into(),
            "30".into(),
            "--seed".into(),
            "17".into(),
        ]
    };
    let run = |e| {
        let a = args(e);
        gsdec(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let a = run("3");
    let b = run("3");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.contains("prepare ms"));
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert!(v["prng"].as_str().unwrap().starts_with("ChaCha8Rng"));
    let zero: Value = serde_json::from_str(&run("0").stdout).unwrap();
    for m in zero["modes"].as_array().unwrap() {
        assert_eq!(m["success_rate"], 1.0);
        assert_eq!(m["max_distance_found"], 0);
    }
}

fn round_trip(
    code_cfg: &str,
    params_cfg: &str,
    mode: &str,
    code: &GrsCode,
    eps_max: u64,
    seed: u64,
) {
    let dir = TempDir::new().unwrap();
    let q = code.field().order();
    let failures: Vec<String> = (0..100u64)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed + t);
            let m: Vec<u32> = (0..code.k()).map(|_| rng.gen_range(0..q)).collect();
            let msg = write(&dir, &format!("m{t}.txt"), &join(&m));
            let gen = gsdec(&["gen", "--code", code_cfg, "--message", path(&msg)]);
            let c = write(&dir, &format!("c{t}.txt"), &gen.stdout);
            let w = (t % (eps_max + 1)).to_string();
            let s = t.to_string();
            let bad = gsdec(&[
                "corrupt",
                "--code",
                code_cfg,
                "--input",
                path(&c),
                "--weight",
                &w,
                "--seed",
                &s,
            ]);
            let y = write(&dir, &format!("y{t}.txt"), &bad.stdout);
            let dec = gsdec(&[
                "decode",
                "--code",
                code_cfg,
                "--params",
                params_cfg,
                "--received",
                path(&y),
                "--mode",
                mode,
            ]);
            let v: Value = serde_json::from_str(&dec.stdout).ok()?;
            let found = v["results"].as_array().unwrap().iter().all(|r| {
                r["list"].as_array().unwrap().iter().any(|e| {
                    let mut msg: Vec<u32> = e["message"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|x| x.as_u64().unwrap() as u32)
                        .collect();
                    msg.resize(m.len(), 0);
                    msg == m
                })
            });
            (dec.code != 0 || !found).then(|| format!("trial {t}"))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn round_trip_f11() {
    let code = GrsCode::inverse_powers(Arc::new(Field::prime(11).unwrap()), 10, 5).unwrap();
    round_trip(
        &config("f11_example1.toml"),
        &config("r2_l3.toml"),
        "all",
        &code,
        3,
        1100,
    );
}

#[test]
fn round_trip_f27() {
    let code = GrsCode::inverse_powers(Arc::new(Field::new(3, 3, None).unwrap()), 26, 16).unwrap();
    round_trip(
        &config("f27_decode.toml"),
        &config("r10_l13.toml"),
        "combined",
        &code,
        6,
        2700,
    );
}
