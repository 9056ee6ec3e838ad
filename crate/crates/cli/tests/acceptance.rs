//! CLI contract acceptance: golden-file byte reproduction with fixed
//! seeds, the exit-code table, CSV round-tripping, and output-path
//! handling. Run with `cargo test -p meanbound-cli --test acceptance`.

#![allow(clippy::excessive_precision)] // frozen reference values

use std::process::Command;
use std::time::Instant;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_meanbound"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf8 stdout"),
        String::from_utf8(output.stderr).expect("utf8 stderr"),
    )
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing golden {path}: {e}"))
}

/// Parse one sweep CSV body into rows of (r2, xia, tung, margin, flag).
fn parse_csv(text: &str) -> Vec<(f64, f64, f64, f64, bool)> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("r2,xia_bound,tung_bound,margin,domain_ok"),
        "csv header"
    );
    lines
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 5, "row {line}");
            (
                cells[0].parse().unwrap(),
                cells[1].parse().unwrap(),
                cells[2].parse().unwrap(),
                cells[3].parse().unwrap(),
                cells[4].parse().unwrap(),
            )
        })
        .collect()
}

const BOUND_XIA: &[&str] = &["bound", "--mode", "am", "-n", "10", "-r", "5,1", "--formula", "xia"];
const BOUND_ALL_UNIT: &[&str] = &["bound", "--mode", "am", "-n", "10", "-r", "1,1", "--formula", "all"];
const BOUND_GM_ALL: &[&str] = &["bound", "--mode", "gm", "-n", "10", "-r", "5,1", "--formula", "all"];
const SWEEP_AM: &[&str] = &[
    "sweep", "--mode", "am", "-n", "10", "--r1", "5", "--r2-start", "0.1", "--r2-end", "1.0",
    "--points", "10",
];
const SWEEP_GM: &[&str] = &[
    "sweep", "--mode", "gm", "-n", "5", "--r1", "5", "--r2-start", "0.1", "--r2-end", "1.0",
    "--points", "10",
];
const VERIFY_JSON: &[&str] = &["verify", "--mode", "gm", "-n", "10", "-r", "5,1", "--seed", "7", "--json"];

/// Golden-file reproduction: fixed commands (fixed seed where one is
/// used) reproduce the committed outputs byte for byte, twice in a row.
#[test]
fn criterion_cli_golden_byte_reproduction() {
    let start = Instant::now();
    for (args, file) in [
        (BOUND_XIA, "bound_am_xia.txt"),
        (BOUND_ALL_UNIT, "bound_am_all_unit.txt"),
        (BOUND_GM_ALL, "bound_gm_all.txt"),
        (SWEEP_AM, "sweep_am_n10.csv"),
        (SWEEP_GM, "sweep_gm_n5.csv"),
    ] {
        let (code, first, _) = run(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(first, golden(file), "{file} diverged");
        let (_, second, _) = run(args);
        assert_eq!(first, second, "{file} not reproducible");
    }

    // The verify report contains a wall-clock field; byte identity is
    // checked after zeroing it on both sides.
    let (code, first, _) = run(VERIFY_JSON);
    assert_eq!(code, 0);
    let normalize = |text: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(text).expect("valid json");
        let duration = v
            .get("duration_seconds")
            .and_then(serde_json::Value::as_f64)
            .expect("duration present");
        assert!(duration >= 0.0);
        v["duration_seconds"] = serde_json::json!(0.0);
        v
    };
    let expected: serde_json::Value =
        serde_json::from_str(&golden("verify_gm_seed7.json")).unwrap();
    assert_eq!(normalize(&first), expected);
    let (_, second, _) = run(VERIFY_JSON);
    assert_eq!(normalize(&first), normalize(&second));

    println!("acceptance: CLI golden reproduction: PASS in {:.2?}", start.elapsed());
}

/// Exit codes: 0 success, 1 verification failure, 2 infeasible
/// instance, 64 usage error, 73 output I/O error.
#[test]
fn criterion_cli_exit_code_table() {
    let start = Instant::now();

    // 0: successful evaluation and verification.
    assert_eq!(run(BOUND_XIA).0, 0);
    let (code, _, _) = run(&["verify", "--mode", "am", "-n", "10", "-r", "1,1"]);
    assert_eq!(code, 0);

    // 1: verification gate failure. The measured gap for this instance
    // is a nonzero rounding residual (~1e-16), so a 1e-18 gate must
    // reject it while the output still reports the run.
    let (code, stdout, _) = run(&[
        "verify", "--mode", "gm", "-n", "10", "-r", "5,1", "--seed", "7", "--tolerance", "1e-18",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("converged true"));

    // 2: infeasible instance, with the verdict on stderr.
    let (code, _, stderr) = run(&["bound", "--mode", "am", "-n", "3", "-r", "2,2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("sum of ratios ≥ n"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["verify", "--mode", "am", "-n", "3", "-r", "2,2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("sum of ratios ≥ n"));

    // 2: two-ratio bounds outside their domain or arity (both too many
    // and too few ratios).
    let (code, _, stderr) = run(&[
        "bound", "--mode", "am", "-n", "10", "-r", "5,1,1", "--formula", "tung",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("exactly two ratios"));

    let (code, _, stderr) = run(&[
        "bound", "--mode", "am", "-n", "10", "-r", "5", "--formula", "gap",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("exactly two ratios"));

    let (code, _, stderr) = run(&[
        "bound", "--mode", "am", "-n", "10", "-r", "0.5,0.5", "--formula", "tung",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("1 ≤ r1"));

    let (code, _, stderr) = run(&[
        "bound", "--mode", "am", "-n", "10", "-r", "1,5", "--formula", "gap",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("disordered"));

    // 64: parse and usage errors.
    assert_eq!(run(&["bound", "--mode", "am", "-r", "5,1"]).0, 64); // missing -n
    assert_eq!(run(&["bound", "--mode", "am", "-n", "10", "-r", "5,abc"]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&[]).0, 64);
    assert_eq!(
        run(&["sweep", "--mode", "am", "-n", "10", "--r1", "0.5", "--r2-start", "0.1",
              "--r2-end", "1.0", "--points", "5"]).0,
        64
    ); // r1 below 1
    assert_eq!(
        run(&["sweep", "--mode", "am", "-n", "10", "--r1", "5", "--r2-start", "0.2",
              "--r2-end", "0.1", "--points", "5"]).0,
        64
    ); // reversed grid
    assert_eq!(
        run(&["sweep", "--mode", "am", "-n", "10", "--r1", "5", "--r2-start", "0.1",
              "--r2-end", "0.5", "--points", "1"]).0,
        64
    ); // single point needs start = end

    // 0 again: --help and --version are not usage errors.
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);

    // 73: unwritable output path.
    let (code, _, stderr) = run(&[
        "sweep", "--mode", "am", "-n", "10", "--r1", "5", "--r2-start", "0.1", "--r2-end", "1.0",
        "--points", "3", "--out", "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(code, 73);
    assert!(stderr.contains("cannot write output"));

    println!("acceptance: CLI exit-code table: PASS in {:.2?}", start.elapsed());
}

/// Emitted CSV parses and re-renders byte-identically, and its values
/// match independently computed references.
#[test]
fn sweep_csv_round_trips_and_matches_references() {
    let (code, text, _) = run(SWEEP_GM);
    assert_eq!(code, 0);
    let rows = parse_csv(&text);
    assert_eq!(rows.len(), 10);

    // Re-render from the parsed values with the same 17-significant-digit
    // format; the text must be identical.
    let mut rendered = String::from("r2,xia_bound,tung_bound,margin,domain_ok\n");
    for (r2, xia, tung, margin, ok) in &rows {
        rendered.push_str(&format!("{r2:.16e},{xia:.16e},{tung:.16e},{margin:.16e},{ok}\n"));
    }
    assert_eq!(text, rendered);

    // Frozen 50-digit reference values for the geometric panel at n = 5,
    // r1 = 5 (r2 = 0.1, 0.2, .., 1.0).
    let expected: [(f64, f64); 10] = [
        (0.563_078_081_669_057_11, 0.575_653_112_807_374_02),
        (0.609_756_097_560_975_61, 0.609_756_097_560_975_61),
        (0.631_254_039_382_684_23, 0.636_901_275_990_767_21),
        (0.642_582_537_949_056_92, 0.660_364_772_601_147_67),
        (0.648_473_197_808_876_99, 0.681_410_357_115_629_89),
        (0.651_034_560_976_068_22, 0.700_682_623_312_961_07),
        (0.651_389_306_012_590_53, 0.718_561_915_950_539_43),
        (0.650_205_071_604_438_98, 0.735_294_117_647_058_82),
        (0.647_910_051_404_940_95, 0.751_048_541_172_467_27),
        (0.644_794_328_058_982_31, 0.765_947_324_504_929_67),
    ];
    for (i, ((r2, xia, tung, margin, ok), (exp_xia, exp_tung))) in
        rows.iter().zip(expected).enumerate()
    {
        assert!(ok, "row {i}");
        assert!((r2 - (0.1 + 0.1 * i as f64)).abs() < 1e-12);
        assert!((xia - exp_xia).abs() / exp_xia < 1e-14, "row {i} xia");
        assert!((tung - exp_tung).abs() / exp_tung < 1e-14, "row {i} tung");
        if i == 1 {
            // Tangency at r1·r2 = 1: the true margin at the f64 grid
            // point is ~9.5e-35; the cancellation-aware evaluator must
            // keep it strictly positive.
            assert!(*margin > 0.0 && *margin < 1e-30, "tangency margin {margin}");
        } else {
            assert!((margin - (exp_tung - exp_xia)).abs() < 1e-14, "row {i} margin");
            assert!(*margin > 0.0);
        }
    }
}

/// The arithmetic panel references, same construction.
#[test]
fn sweep_am_values_match_references() {
    let (code, text, _) = run(SWEEP_AM);
    assert_eq!(code, 0);
    let rows = parse_csv(&text);
    let expected: [(f64, f64); 10] = [
        (0.630_350_170_823_776_42, 0.631_421_356_237_309_5),
        (0.664_539_805_948_973_97, 0.68),
        (0.680_480_089_766_594_61, 0.714_948_974_278_317_81),
        (0.688_394_315_321_540_34, 0.742_842_712_474_619_01),
        (0.691_658_983_848_929_24, 0.766_227_766_016_837_93),
        (0.691_834_598_296_024_99, 0.786_410_161_513_775_46),
        (0.689_778_382_106_551_46, 0.804_165_738_677_394_14),
        (0.686_014_731_497_672_96, 0.82),
        (0.680_889_045_629_459_41, 0.834_264_068_711_928_51),
        (0.674_641_423_836_781_66, 0.847_213_595_499_957_94),
    ];
    for (i, ((_, xia, tung, margin, ok), (exp_xia, exp_tung))) in
        rows.iter().zip(expected).enumerate()
    {
        assert!(ok, "row {i}");
        assert!((xia - exp_xia).abs() / exp_xia < 1e-14, "row {i} xia");
        assert!((tung - exp_tung).abs() / exp_tung < 1e-14, "row {i} tung");
        assert!((margin - (exp_tung - exp_xia)).abs() < 1e-14, "row {i} margin");
        assert!(*margin > 0.0, "row {i}");
    }
}

/// `--out` writes exactly what stdout would have carried.
#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let (_, stdout, _) = run(SWEEP_AM);
    let mut with_out: Vec<&str> = SWEEP_AM.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &path_str]);
    let (code, empty_stdout, _) = run(&with_out);
    assert_eq!(code, 0);
    assert!(empty_stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}

/// A single-point grid at the degenerate corner r1 = r2 = 1: both
/// bounds are 1 and the margin is exactly zero.
#[test]
fn single_point_sweep_degenerate_corner() {
    let (code, text, _) = run(&[
        "sweep", "--mode", "am", "-n", "10", "--r1", "1", "--r2-start", "1", "--r2-end", "1",
        "--points", "1",
    ]);
    assert_eq!(code, 0);
    let rows = parse_csv(&text);
    assert_eq!(rows.len(), 1);
    let (r2, xia, tung, margin, ok) = rows[0];
    assert!(ok);
    assert_eq!(r2, 1.0);
    assert_eq!(xia, 1.0);
    assert_eq!(tung, 1.0);
    assert_eq!(margin, 0.0);
}

/// Out-of-domain sweep cells carry NaN columns and a false flag; JSON
/// renders them as nulls.
#[test]
fn out_of_domain_rows_are_flagged_not_fatal() {
    // n = 5 arithmetic with r1 = 5 violates r1 <= n - r2 everywhere.
    let (code, text, _) = run(&[
        "sweep", "--mode", "am", "-n", "5", "--r1", "5", "--r2-start", "0.1", "--r2-end", "1.0",
        "--points", "5",
    ]);
    assert_eq!(code, 0);
    let rows = parse_csv(&text);
    assert_eq!(rows.len(), 5);
    for (_, xia, tung, margin, ok) in rows {
        assert!(!ok);
        assert!(xia.is_nan() && tung.is_nan() && margin.is_nan());
    }

    let (code, json_text, _) = run(&[
        "sweep", "--mode", "am", "-n", "5", "--r1", "5", "--r2-start", "0.1", "--r2-end", "1.0",
        "--points", "5", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!(row["xia_bound"].is_null());
        assert_eq!(row["domain_ok"], serde_json::json!(false));
    }
}

/// A degenerate instance (ratio sum exactly n) is accepted with a
/// collapsed bound and a stderr warning.
#[test]
fn degenerate_instance_warns_but_evaluates() {
    let (code, stdout, stderr) = run(&["bound", "--mode", "am", "-n", "2", "-r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "xia 0.0000000000000000e0\n");
    assert!(stderr.contains("degenerate instance"), "stderr: {stderr}");
}

/// Near-degenerate but strictly feasible verification still passes.
#[test]
fn verify_near_degenerate_instance() {
    let (code, stdout, _) = run(&[
        "verify", "--mode", "am", "-n", "10", "-r", "9.99,0.005", "--seed", "7",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("violations 0"));
}

/// The bound report in JSON echoes the command and instance so a run
/// can be reproduced from the report alone.
#[test]
fn json_report_echoes_command_and_instance() {
    let (code, text, _) = run(&[
        "bound", "--mode", "am", "-n", "10", "-r", "5,1", "--formula", "xia", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        v["command"],
        serde_json::json!("meanbound bound --mode am -n 10 -r 5,1 --formula xia --json")
    );
    assert_eq!(v["mode"], serde_json::json!("am"));
    assert_eq!(v["n"], serde_json::json!(10));
    assert_eq!(v["ratios"], serde_json::json!([5.0, 1.0]));
    assert_eq!(v["seed"], serde_json::json!(0));
    let xia = v["bounds"]["xia"].as_f64().unwrap();
    assert!((xia - 0.674_641_423_836_781_66).abs() < 1e-14);
}
