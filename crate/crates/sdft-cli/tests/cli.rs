//! End-to-end tests of the `sdft` binary: every subcommand, the documented
//! exit codes, and byte-level determinism of outputs.

use num_complex::Complex64;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sdft")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn assert_exit(out: &Output, code: i32, context: &str) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "{context}: stdout={} stderr={}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sdft-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_real_csv(path: &Path, values: &[f64]) {
    let text: String = values.iter().map(|v| format!("{v:.16e}\n")).collect();
    std::fs::write(path, text).unwrap();
}

/// Parse a CSV of 1-field (real) or 2-field (complex) rows.
fn read_csv(path: &Path) -> Vec<Complex64> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let fields: Vec<f64> = l.split(',').map(|f| f.trim().parse().unwrap()).collect();
            match fields.as_slice() {
                [re] => Complex64::new(*re, 0.0),
                [re, im] => Complex64::new(*re, *im),
                _ => panic!("unexpected row {l:?}"),
            }
        })
        .collect()
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn transform_with_zero_key_is_the_plain_dft() {
    let dir = tmpdir("dft");
    let input = dir.join("x.csv");
    write_real_csv(&input, &[1.0, 2.0, 3.0, 4.0]);
    let key = dir.join("key.json");
    std::fs::write(&key, r#"{"version":1,"mode":"1d","n":4,"angles":[0.0]}"#).unwrap();
    let out = dir.join("spectrum.csv");
    let r = run(&[
        "transform",
        "--dim",
        "1",
        "--key",
        s(&key),
        "--in",
        s(&input),
        "--out",
        s(&out),
    ]);
    assert_exit(&r, 0, "forward transform");
    let got = read_csv(&out);
    let want = [
        Complex64::new(10.0, 0.0),
        Complex64::new(-2.0, 2.0),
        Complex64::new(-2.0, 0.0),
        Complex64::new(-2.0, -2.0),
    ];
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).norm() <= 1e-12, "got {g}, want {w}");
    }
}

#[test]
fn transform_roundtrip_restores_the_file_within_printed_precision() {
    let dir = tmpdir("roundtrip");
    let input = dir.join("x.csv");
    let values: Vec<f64> = (0..16)
        .map(|i| ((i * i + 3) % 17) as f64 / 4.0 - 2.0)
        .collect();
    write_real_csv(&input, &values);
    let key = dir.join("key.json");
    assert_exit(
        &run(&["keygen", "--seed", "0x5eed", "--n", "16", "--out", s(&key)]),
        0,
        "keygen",
    );
    let spectrum = dir.join("spectrum.csv");
    let back = dir.join("back.csv");
    assert_exit(
        &run(&[
            "transform",
            "--dim",
            "1",
            "--key",
            s(&key),
            "--in",
            s(&input),
            "--out",
            s(&spectrum),
        ]),
        0,
        "forward",
    );
    assert_exit(
        &run(&[
            "transform",
            "--dim",
            "1",
            "--inverse",
            "--key",
            s(&key),
            "--in",
            s(&spectrum),
            "--out",
            s(&back),
        ]),
        0,
        "inverse",
    );
    for (g, w) in read_csv(&back).iter().zip(&values) {
        assert!(
            (g.re - w).abs() <= 1e-12 && g.im.abs() <= 1e-12,
            "got {g}, want {w}"
        );
    }
}

#[test]
fn transform_matches_the_library_call_bit_for_bit() {
    let dir = tmpdir("inproc");
    let n = 16usize;
    let values: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
    let input = dir.join("x.csv");
    write_real_csv(&input, &values);
    let key_path = dir.join("key.json");
    assert_exit(
        &run(&[
            "keygen",
            "--seed",
            "0xabc",
            "--n",
            "16",
            "--out",
            s(&key_path),
        ]),
        0,
        "keygen",
    );
    let out = dir.join("spectrum.csv");
    assert_exit(
        &run(&[
            "transform",
            "--dim",
            "1",
            "--key",
            s(&key_path),
            "--in",
            s(&input),
            "--out",
            s(&out),
        ]),
        0,
        "forward",
    );

    let key = sdft::keygen(0xabc, n, sdft::KeyPurpose::General).unwrap();
    let x = sdft::Signal1D::from_real(&values).unwrap();
    let want = sdft::sdft_forward_1d(&x, &key).unwrap();
    let got = read_csv(&out);
    assert_eq!(got.len(), n);
    for (g, w) in got.iter().zip(want.coefficients()) {
        assert_eq!(g.re.to_bits(), w.re.to_bits(), "got {g}, want {w}");
        assert_eq!(g.im.to_bits(), w.im.to_bits(), "got {g}, want {w}");
    }
}

#[test]
fn transform_handles_2d_files_and_shape_errors() {
    let dir = tmpdir("twod");
    let n = 4usize;
    let values: Vec<f64> = (0..n * n).map(|i| (i as f64 - 7.5) / 3.0).collect();
    let input = dir.join("x.csv");
    write_real_csv(&input, &values);
    let key_path = dir.join("key.json");
    let angles: Vec<String> = (0..6).map(|i| format!("{:.3}", 0.2 * i as f64)).collect();
    std::fs::write(
        &key_path,
        format!(
            r#"{{"version":1,"mode":"2d-sym","n":4,"angles":[{}]}}"#,
            angles.join(",")
        ),
    )
    .unwrap();
    let spectrum = dir.join("spectrum.bin");
    let back = dir.join("back.csv");
    assert_exit(
        &run(&[
            "transform",
            "--dim",
            "2",
            "--key",
            s(&key_path),
            "--in",
            s(&input),
            "--out",
            s(&spectrum),
        ]),
        0,
        "2d forward to binary",
    );
    assert_exit(
        &run(&[
            "transform",
            "--dim",
            "2",
            "--inverse",
            "--key",
            s(&key_path),
            "--in",
            s(&spectrum),
            "--out",
            s(&back),
        ]),
        0,
        "2d inverse from binary",
    );
    for (g, w) in read_csv(&back).iter().zip(&values) {
        assert!((g.re - w).abs() <= 1e-12 && g.im.abs() <= 1e-12);
    }

    // CSV whose length is not a perfect square: malformed for --dim 2.
    let crooked = dir.join("crooked.csv");
    write_real_csv(&crooked, &[1.0, 2.0, 3.0, 4.0, 5.0]);
    let r = run(&[
        "transform",
        "--dim",
        "2",
        "--key",
        s(&key_path),
        "--in",
        s(&crooked),
        "--out",
        s(&dir.join("no.csv")),
    ]);
    assert_exit(&r, 2, "non-square csv");

    // Binary file declaring 1D shape used with --dim 2: mode mismatch.
    let flat = dir.join("flat.bin");
    assert_exit(
        &run(&[
            "keygen",
            "--seed",
            "0x1",
            "--n",
            "16",
            "--out",
            s(&dir.join("k1.json")),
        ]),
        0,
        "keygen 1d",
    );
    assert_exit(
        &run(&[
            "transform",
            "--dim",
            "1",
            "--key",
            s(&dir.join("k1.json")),
            "--in",
            s(&input),
            "--out",
            s(&flat),
        ]),
        0,
        "make 1d binary",
    );
    let r = run(&[
        "transform",
        "--dim",
        "2",
        "--key",
        s(&key_path),
        "--in",
        s(&flat),
        "--out",
        s(&dir.join("no2.bin")),
    ]);
    assert_exit(&r, 3, "1d binary with --dim 2");
}

#[test]
fn transform_rejects_mismatched_key_dim_and_size() {
    let dir = tmpdir("mismatch");
    let input = dir.join("x.csv");
    write_real_csv(&input, &[1.0, 2.0, 3.0, 4.0]);
    let key2d = dir.join("k2.json");
    std::fs::write(
        &key2d,
        r#"{"version":1,"mode":"2d-sym","n":4,"angles":[0,0,0,0,0,0]}"#,
    )
    .unwrap();
    let r = run(&[
        "transform",
        "--dim",
        "1",
        "--key",
        s(&key2d),
        "--in",
        s(&input),
        "--out",
        s(&dir.join("o.csv")),
    ]);
    assert_exit(&r, 3, "2d key with --dim 1");

    let key8 = dir.join("k8.json");
    assert_exit(
        &run(&["keygen", "--seed", "0x2", "--n", "8", "--out", s(&key8)]),
        0,
        "keygen n=8",
    );
    let r = run(&[
        "transform",
        "--dim",
        "1",
        "--key",
        s(&key8),
        "--in",
        s(&input),
        "--out",
        s(&dir.join("o.csv")),
    ]);
    assert_exit(&r, 3, "size-8 key on size-4 data");

    let r = run(&[
        "transform",
        "--dim",
        "1",
        "--key",
        s(&key8),
        "--in",
        s(&dir.join("absent.csv")),
        "--out",
        s(&dir.join("o.csv")),
    ]);
    assert_exit(&r, 2, "missing input file");
}

#[test]
fn trace_grid_covers_the_circle_and_starts_at_the_dft() {
    let dir = tmpdir("trace");
    let input = dir.join("x.csv");
    write_real_csv(&input, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
    let table = dir.join("t.csv");
    assert_exit(
        &run(&[
            "trace",
            "--k",
            "1",
            "--samples",
            "4",
            "--in",
            s(&input),
            "--out",
            s(&table),
        ]),
        0,
        "trace",
    );
    let text = std::fs::read_to_string(&table).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re_k,im_k,re_nk,im_nk"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);

    // Uniform grid over [0, 2π), endpoint excluded.
    for (t, row) in rows.iter().enumerate() {
        let theta = std::f64::consts::TAU * t as f64 / 4.0;
        assert!((row[0] - theta).abs() <= 1e-15);
    }

    // θ=0 row is the plain DFT pair (k=1, N−1=7) of the ramp, by direct sum.
    let mut want_k = Complex64::new(0.0, 0.0);
    for j in 0..8 {
        let phase = -std::f64::consts::TAU * j as f64 / 8.0;
        want_k += (j + 1) as f64 * Complex64::new(phase.cos(), phase.sin());
    }
    let got_k = Complex64::new(rows[0][1], rows[0][2]);
    assert!(
        (got_k - want_k).norm() <= 1e-10,
        "got {got_k}, want {want_k}"
    );
    let got_nk = Complex64::new(rows[0][3], rows[0][4]);
    assert!((got_nk - want_k.conj()).norm() <= 1e-10);

    // Pair energy recomputed from the emitted columns is constant.
    let energy =
        |row: &[f64]| row[1] * row[1] + row[2] * row[2] + row[3] * row[3] + row[4] * row[4];
    let first = energy(&rows[0]);
    for row in &rows {
        assert!((energy(row) - first).abs() <= 1e-10 * first.max(1.0));
    }
}

#[test]
fn trace_rejects_out_of_range_pair_indices() {
    let dir = tmpdir("trace-bad");
    let input = dir.join("x.csv");
    write_real_csv(&input, &[1.0, 2.0, 3.0, 4.0]);
    let r = run(&[
        "trace",
        "--k",
        "2",
        "--samples",
        "4",
        "--in",
        s(&input),
        "--out",
        s(&dir.join("t.csv")),
    ]);
    assert_exit(&r, 2, "k = N/2 is not a rotating pair");
}

#[test]
fn hilbert_shifts_a_cosine_into_a_sine() {
    let dir = tmpdir("hilbert");
    let n = 8usize;
    let cosine: Vec<f64> = (0..n)
        .map(|j| (std::f64::consts::TAU * j as f64 / n as f64).cos())
        .collect();
    let input = dir.join("x.csv");
    write_real_csv(&input, &cosine);
    let out = dir.join("h.csv");
    assert_exit(
        &run(&["hilbert", "--in", s(&input), "--out", s(&out)]),
        0,
        "hilbert",
    );
    for (j, g) in read_csv(&out).iter().enumerate() {
        let want = (std::f64::consts::TAU * j as f64 / n as f64).sin();
        assert!((g.re - want).abs() <= 1e-12 && g.im == 0.0);
    }
}

#[test]
fn filter_parts_sum_back_to_the_original() {
    let dir = tmpdir("filter");
    let values: Vec<f64> = (0..8).map(|i| ((i * 5 + 2) % 11) as f64 - 5.0).collect();
    let input = dir.join("x.csv");
    write_real_csv(&input, &values);
    let even = dir.join("even.csv");
    let odd = dir.join("odd.csv");
    assert_exit(
        &run(&[
            "filter",
            "--part",
            "even",
            "--in",
            s(&input),
            "--out",
            s(&even),
        ]),
        0,
        "even filter",
    );
    assert_exit(
        &run(&[
            "filter",
            "--part",
            "odd",
            "--in",
            s(&input),
            "--out",
            s(&odd),
        ]),
        0,
        "odd filter",
    );
    for ((e, o), w) in read_csv(&even).iter().zip(read_csv(&odd)).zip(&values) {
        assert!((e.re + o.re - w).abs() <= 1e-12);
    }

    // Banded filtering over a 2D grid is undefined.
    let r = run(&[
        "filter",
        "--part",
        "even",
        "--dim",
        "2",
        "--bands",
        "1",
        "--in",
        s(&input),
        "--out",
        s(&dir.join("no.csv")),
    ]);
    assert_exit(&r, 2, "bands with --dim 2");

    let r = run(&[
        "filter",
        "--part",
        "even",
        "--bands",
        "1,x",
        "--in",
        s(&input),
        "--out",
        s(&dir.join("no.csv")),
    ]);
    assert_exit(&r, 2, "unparsable band list");
}

#[test]
fn filter_handles_2d_grids() {
    let dir = tmpdir("filter2d");
    let values: Vec<f64> = (0..16).map(|i| ((i * 7 + 1) % 13) as f64 / 2.0).collect();
    let input = dir.join("x.csv");
    write_real_csv(&input, &values);
    let even = dir.join("even.csv");
    let odd = dir.join("odd.csv");
    assert_exit(
        &run(&[
            "filter",
            "--part",
            "even",
            "--dim",
            "2",
            "--in",
            s(&input),
            "--out",
            s(&even),
        ]),
        0,
        "2d even",
    );
    assert_exit(
        &run(&[
            "filter",
            "--part",
            "odd",
            "--dim",
            "2",
            "--in",
            s(&input),
            "--out",
            s(&odd),
        ]),
        0,
        "2d odd",
    );
    for ((e, o), w) in read_csv(&even).iter().zip(read_csv(&odd)).zip(&values) {
        assert!((e.re + o.re - w).abs() <= 1e-12);
    }
}

#[test]
fn scramble_pipeline_roundtrips_and_validates_keys() {
    let dir = tmpdir("scramble");
    let values: Vec<f64> = (0..16).map(|i| (i as f64 * 1.3).cos() * 2.0).collect();
    let input = dir.join("x.csv");
    write_real_csv(&input, &values);
    let key = dir.join("key.json");
    assert_exit(
        &run(&[
            "keygen",
            "--seed",
            "0xfeed",
            "--n",
            "16",
            "--purpose",
            "scramble",
            "--out",
            s(&key),
        ]),
        0,
        "keygen scramble",
    );
    let payload = dir.join("p.bin");
    let back = dir.join("back.csv");
    assert_exit(
        &run(&[
            "scramble",
            "--key",
            s(&key),
            "--in",
            s(&input),
            "--out",
            s(&payload),
        ]),
        0,
        "scramble",
    );
    assert_exit(
        &run(&[
            "descramble",
            "--key",
            s(&key),
            "--in",
            s(&payload),
            "--out",
            s(&back),
        ]),
        0,
        "descramble",
    );
    for (g, w) in read_csv(&back).iter().zip(&values) {
        assert!((g.re - w).abs() <= 1e-10);
    }

    // A π/4 angle makes descrambling divide by ~0: designated error, exit 3.
    let degenerate = dir.join("bad.json");
    let quarter = std::f64::consts::FRAC_PI_4;
    let angles: Vec<String> = (0..7).map(|_| format!("{quarter:.17}")).collect();
    std::fs::write(
        &degenerate,
        format!(
            r#"{{"version":1,"mode":"1d","n":16,"angles":[{}]}}"#,
            angles.join(",")
        ),
    )
    .unwrap();
    let r = run(&[
        "scramble",
        "--key",
        s(&degenerate),
        "--in",
        s(&input),
        "--out",
        s(&dir.join("no.bin")),
    ]);
    assert_exit(&r, 3, "degenerate key on scramble");
    let r = run(&[
        "descramble",
        "--key",
        s(&degenerate),
        "--in",
        s(&payload),
        "--out",
        s(&dir.join("no.csv")),
    ]);
    assert_exit(&r, 3, "degenerate key on descramble");

    // Payloads carry their own shape: a wrong-size key is a size mismatch.
    let key8 = dir.join("k8.json");
    assert_exit(
        &run(&[
            "keygen",
            "--seed",
            "0x9",
            "--n",
            "8",
            "--purpose",
            "scramble",
            "--out",
            s(&key8),
        ]),
        0,
        "keygen n=8",
    );
    let r = run(&[
        "descramble",
        "--key",
        s(&key8),
        "--in",
        s(&payload),
        "--out",
        s(&dir.join("no.csv")),
    ]);
    assert_exit(&r, 3, "wrong-size key on descramble");
}

#[test]
fn keygen_is_deterministic_byte_for_byte() {
    let dir = tmpdir("keygen");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        assert_exit(
            &run(&[
                "keygen",
                "--seed",
                "0xDEADBEEF",
                "--n",
                "32",
                "--purpose",
                "scramble",
                "--out",
                s(path),
            ]),
            0,
            "keygen",
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = run(&[
        "keygen",
        "--seed",
        "beef",
        "--n",
        "8",
        "--out",
        s(&dir.join("c.json")),
    ]);
    assert_exit(&r, 2, "seed without 0x prefix");
}

#[test]
fn graph_verify_passes_for_both_graphs_and_reports_the_merge() {
    let r = run(&["graph", "verify", "--dim", "1", "--n", "8"]);
    assert_exit(&r, 0, "cycle verify");
    let report: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(report["kind"], "cycle");
    assert!(report["max_residual"].as_f64().unwrap() <= 1e-12);

    let r = run(&["graph", "verify", "--dim", "2", "--n", "8"]);
    assert_exit(&r, 0, "torus verify");
    let report: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    let classes = report["classes"].as_array().unwrap();
    let total: usize = classes
        .iter()
        .map(|c| c["members"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, 64);
    let merges = report["merges"].as_array().unwrap();
    assert!(merges
        .iter()
        .any(|m| (m["mu"].as_f64().unwrap() - 4.0).abs() <= 1e-6
            && m["observed_multiplicity"].as_u64() == Some(14)));
}

#[test]
fn graph_verify_accepts_a_steered_key_and_enforces_limits() {
    let dir = tmpdir("graph-key");
    let key = dir.join("key.json");
    assert_exit(
        &run(&["keygen", "--seed", "0x11", "--n", "12", "--out", s(&key)]),
        0,
        "keygen",
    );
    let r = run(&[
        "graph",
        "verify",
        "--dim",
        "1",
        "--n",
        "12",
        "--key",
        s(&key),
    ]);
    assert_exit(&r, 0, "steered cycle verify");
    let report: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert!(report["max_residual"].as_f64().unwrap() <= 1e-9);

    assert_exit(
        &run(&["graph", "verify", "--dim", "1", "--n", "7"]),
        4,
        "odd size",
    );
    assert_exit(
        &run(&["graph", "verify", "--dim", "2", "--n", "18"]),
        4,
        "over the cap",
    );
    assert_exit(
        &run(&["graph", "verify", "--dim", "2", "--n", "18", "--cap", "20"]),
        0,
        "explicit cap raise",
    );
}

#[test]
fn bench_emits_stage_timings_as_json() {
    let r = run(&["bench", "--dim", "1", "--n", "1024", "--iters", "1"]);
    assert_exit(&r, 0, "bench");
    let timing: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(timing["n"].as_u64(), Some(1024));
    assert!(timing["fft_ns"].as_u64().unwrap() > 0);
    assert!(timing["rotate_ns"].as_u64().unwrap() > 0);

    assert_exit(
        &run(&["bench", "--dim", "1", "--n", "1000", "--iters", "1"]),
        2,
        "non-power-of-two",
    );
    assert_exit(
        &run(&["bench", "--dim", "2", "--n", "1024", "--iters", "1"]),
        2,
        "2d bench",
    );
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = tmpdir("determinism");
    let input = dir.join("x.csv");
    write_real_csv(&input, &[0.25, -1.5, 3.0, 0.125, -2.0, 0.5, 1.0, -0.75]);
    let key = dir.join("key.json");
    assert_exit(
        &run(&["keygen", "--seed", "0x77", "--n", "8", "--out", s(&key)]),
        0,
        "keygen",
    );
    let a = dir.join("a.bin");
    let b = dir.join("b.bin");
    for path in [&a, &b] {
        assert_exit(
            &run(&[
                "transform",
                "--dim",
                "1",
                "--key",
                s(&key),
                "--in",
                s(&input),
                "--out",
                s(path),
            ]),
            0,
            "transform",
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
