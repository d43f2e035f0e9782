use faraday::cli::{main_with_args, parse_args, Command};
use faraday::table::Format;
use faraday_core::model::CaseKind;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("faraday").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn run_flags_map_to_config() {
    let spec = parse_args(["faraday", "run", "--case", "II", "--delta1", "15", "--delta2", "30", "--lambda2", "2.5"]).unwrap();
    let Command::Run { config, input } = spec.command else { panic!() };
    assert_eq!(config.case(), CaseKind::CaseII);
    assert_eq!((config.lambda1(), config.lambda2(), config.delta1(), config.delta2()), (1.0, 2.5, 15.0, 30.0));
    assert_eq!(config.time(), std::f64::consts::PI);
    assert_eq!(input.alpha_minus.re, 1.0);
    assert_eq!(spec.format, Format::Csv);
    assert!(spec.output.is_none());
}

#[test]
fn case_i_rejects_delta1() {
    let (code, out, err) = run(&["run", "--case", "I", "--delta1", "3"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("--delta1"), "{err}");
}

#[test]
fn unknown_flag_and_bad_amplitude_are_usage_errors() {
    assert_eq!(run(&["run", "--bogus", "1"]).0, 1);
    let (code, _, err) = run(&["run", "--alpha-minus", "0.5@0"]);
    assert_eq!(code, 1);
    assert!(err.contains("alpha"), "{err}");
    assert_eq!(run(&["run", "--alpha-minus", "abc"]).0, 1);
    assert_eq!(run(&["fig3", "--samples", "0"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn amplitudes_accept_magnitude_and_phase() {
    let (code, out, _) = run(&[
        "run", "--alpha-plus", "0.6@90", "--alpha-minus", "0.8", "--beta-plus", "0.7071067811865476@-30",
        "--beta-minus", "0.7071067811865476@10", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let ap = &v["metadata"]["input"]["alpha_plus"];
    assert!(ap[0].as_f64().unwrap().abs() < 1e-15);
    assert!((ap[1].as_f64().unwrap() - 0.6).abs() < 1e-15);
}

#[test]
fn default_run_reports_p0() {
    let (code, out, _) = run(&["run"]);
    assert_eq!(code, 0);
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    let header = rd.headers().unwrap().clone();
    let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    let p0_col = header.iter().position(|h| h == "p0").unwrap();
    let p0: f64 = rows[0][p0_col].parse().unwrap();
    assert!(p0 >= 0.99);
    // phases of the superposition are undefined for a single pair: empty fields
    let col = header.iter().position(|h| h == "dphi_plus_deg").unwrap();
    assert_eq!(&rows[0][col], "");
}

#[test]
fn fig3_csv_has_header_and_requested_rows() {
    let (code, out, _) = run(&["fig3", "--samples", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "t,P8:a-b+|0>,P5:a-|-1>,P2:a+|+1>,P7:a+b-|0>,P1:|2>");
    assert_eq!(lines[1], "0.0,1.0,0.0,0.0,0.0,0.0");
}

#[test]
fn cnot_json_distance_within_bound() {
    let (code, out, _) = run(&["cnot", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = &v["rows"][0];
    assert!(row["distance_per_block"].as_f64().unwrap() <= 2e-2);
    assert_eq!(row["applications"].as_u64(), Some(3));
    assert_eq!(v["metadata"]["config"]["delta2"].as_f64(), Some(70.0));
}

/// Parses CSV text into rows of raw fields.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().unwrap().iter().map(String::from).collect();
    let rows = rd.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn csv_and_json_carry_identical_values() {
    for args in [
        vec!["fig4", "--case", "II", "--alpha-points", "11"],
        vec!["fig5", "--alpha-points", "6", "--phase-variant"],
        vec!["fig2", "--case", "II", "--delta2", "20,30", "--lambda2-points", "4"],
        vec!["cnot"],
        vec!["run", "--case", "II", "--delta1", "15", "--delta2", "30", "--lambda2", "2.5"],
    ] {
        let (c1, csv_out, _) = run(&args);
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        let (c2, json_out, _) = run(&json_args);
        assert_eq!((c1, c2), (0, 0));
        let (header, rows) = csv_rows(&csv_out);
        let v: Value = serde_json::from_str(&json_out).unwrap();
        let jrows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), jrows.len(), "{args:?}");
        for (r, j) in rows.iter().zip(jrows) {
            for (name, field) in header.iter().zip(r) {
                let jv = &j[name.as_str()];
                match jv {
                    Value::Null => assert_eq!(field, "", "{name}"),
                    Value::Number(n) => {
                        let parsed: f64 = field.parse().unwrap();
                        assert_eq!(parsed.to_bits(), n.as_f64().unwrap().to_bits(), "{name}");
                    }
                    Value::Bool(b) => assert_eq!(field, &b.to_string()),
                    Value::String(s) => assert_eq!(field, s),
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }
}

#[test]
fn json_round_trip_is_bit_exact() {
    let spec = parse_args(["faraday", "fig4", "--case", "I", "--alpha-points", "9"]).unwrap();
    let table = faraday::cli::build_table(&spec.command).unwrap();
    let mut buf = Vec::new();
    table.write_json(&mut buf).unwrap();
    let v: Value = serde_json::from_slice(&buf).unwrap();
    for (row, jrow) in table.rows.iter().zip(v["rows"].as_array().unwrap()) {
        for (name, cell) in table.columns.iter().zip(row) {
            if let faraday_core::sweep::Cell::Num(x) = cell {
                assert_eq!(jrow[name.as_str()].as_f64().unwrap().to_bits(), x.to_bits());
            }
        }
    }
}

#[test]
fn output_file_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.csv");
    let (code, out, _) = run(&["fig3", "--samples", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);

    let bad = dir.path().join("missing").join("x.csv");
    let (code, _, err) = run(&["fig3", "--samples", "3", "--output", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}
