use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use blm_cli::files::{parse_placement, Instance};
use blm_core::{placement_cost, DistanceOracle};
use tempfile::TempDir;

fn blm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blm"))
        .args(args)
        .current_dir(dir)
        .env_remove("BLM_BRUTE_FORCE_BUDGET")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = blm(args, dir);
    assert!(
        out.status.success(),
        "blm {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn generate_is_reproducible_and_parses_back() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(&["generate", "--side", "8", "--seed", "7", "--out", "a.txt"], d);
    ok(&["generate", "--side", "8", "--seed", "7", "--out", "b.txt"], d);
    let a = fs::read_to_string(d.join("a.txt")).unwrap();
    assert_eq!(a, fs::read_to_string(d.join("b.txt")).unwrap());
    assert!(a.starts_with("8 25 ACGT\n"));
    let inst = Instance::parse(&a).unwrap();
    assert_eq!(inst.probes.len(), 64);
    assert_eq!(inst.to_text(), a);

    let stdout = ok(
        &[
            "generate",
            "--side",
            "2",
            "--length",
            "1",
            "--alphabet",
            "01",
            "--seed",
            "0",
        ],
        d,
    );
    assert_eq!(stdout.lines().count(), 5);
    assert_eq!(stdout.lines().next(), Some("2 1 01"));
}

#[test]
fn reduction_instances() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let special = ok(&["generate", "--reduction", "alternate_special", "--n", "4"], d);
    let inst = Instance::parse(&special).unwrap();
    assert_eq!((inst.probes.len(), inst.probes.length()), (16, 33));

    let main = ok(
        &[
            "generate",
            "--reduction",
            "main_blmp",
            "--n",
            "8",
            "--length",
            "1",
            "--seed",
            "3",
        ],
        d,
    );
    assert!(main.starts_with("3 66 01\n"));

    let ring = ok(
        &[
            "generate",
            "--reduction",
            "padded_4n_htsp",
            "--n",
            "5",
            "--length",
            "2",
            "--seed",
            "3",
        ],
        d,
    );
    assert!(ring.starts_with("8 22 01 ring\n"));
    write(d, "ring.txt", &ring);
    let exact = ok(&["bound", "--in", "ring.txt", "--exact"], d);
    assert!(exact.starts_with("htsp_optimum "));

    write(d, "src.txt", "4 1 01 ring\n0\n1\n1\n0\n");
    let from_file = ok(&["generate", "--reduction", "main_blmp", "--source", "src.txt"], d);
    assert!(from_file.starts_with("2 34 01\n"));
}

#[test]
fn solve_writes_valid_placements_and_reports() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(&["generate", "--side", "9", "--seed", "1", "--out", "inst.txt"], d);
    let inst = Instance::read(&d.join("inst.txt")).unwrap();
    let oracle = DistanceOracle::auto(&inst.probes);
    for algo in ["rand", "sort", "swm", "repx", "epx", "qepx", "tsp", "epx+hra+rhra"] {
        ok(
            &[
                "solve",
                "--in",
                "inst.txt",
                "--algo",
                algo,
                "--seed",
                "4",
                "--out",
                "p.txt",
                "--report",
                "r.csv",
                "--degree",
                "3",
                "--iterations",
                "20",
            ],
            d,
        );
        let p = parse_placement(&fs::read_to_string(d.join("p.txt")).unwrap(), 9).unwrap();
        let cost = placement_cost(&p, &oracle).unwrap();
        let report = fs::read_to_string(d.join("r.csv")).unwrap();
        let row: Vec<&str> = report.lines().last().unwrap().split(',').collect();
        assert_eq!(row[4], algo);
        assert_eq!(row[5], cost.to_string());
        let (init, fin): (f64, f64) = (row[3].parse().unwrap(), row[5].parse().unwrap());
        assert_eq!(row[7], format!("{:.2}", 100.0 * (init - fin) / init));
        assert!(row[2].parse::<u64>().unwrap() <= cost);
    }
    let report = fs::read_to_string(d.join("r.csv")).unwrap();
    assert_eq!(report.lines().count(), 9);
    assert_eq!(
        report.lines().next().unwrap(),
        "test_case,probes,lower_bound,init_cost,algo,final_cost,time_sec,refined_percent,seed"
    );
    // rand reports no refinement
    assert!(report.lines().nth(1).unwrap().contains(",rand,") && report.lines().nth(1).unwrap().contains(",0.00,"));
}

#[test]
fn refine_modes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(
        &[
            "generate",
            "--side",
            "3",
            "--length",
            "6",
            "--alphabet",
            "01",
            "--seed",
            "2",
            "--out",
            "i.txt",
        ],
        d,
    );
    ok(&["solve", "--in", "i.txt", "--algo", "rand", "--out", "p.txt"], d);
    let exact = ok(&["bound", "--in", "i.txt", "--exact"], d);
    let optimum: u64 = exact
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();

    let hra = ok(
        &[
            "refine",
            "--in",
            "i.txt",
            "--placement",
            "p.txt",
            "--mode",
            "hra",
            "--degree",
            "3",
            "--omit-time",
        ],
        d,
    );
    let row: Vec<&str> = hra.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[5].parse::<u64>().unwrap(), optimum);

    let none = ok(
        &[
            "refine",
            "--in",
            "i.txt",
            "--placement",
            "p.txt",
            "--mode",
            "rhra",
            "--iterations",
            "0",
            "--seed",
            "1",
        ],
        d,
    );
    let row: Vec<&str> = none.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], row[5]);
}

#[test]
fn bound_on_small_instances() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write(d, "gray.txt", "2 2 01\n00\n01\n10\n11\n");
    assert_eq!(
        ok(&["bound", "--in", "gray.txt", "--exact"], d),
        "lower_bound 4\noptimum 4\n"
    );
    write(d, "same.txt", "2 3 ACGT\nAAA\nAAA\nAAA\nAAA\n");
    assert_eq!(
        ok(&["bound", "--in", "same.txt", "--exact"], d),
        "lower_bound 0\noptimum 0\n"
    );
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(&["generate", "--side", "32", "--seed", "1", "--out", "big.txt"], d);
    let out = blm(&["bound", "--in", "big.txt", "--exact"], d);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    // the bound alone still works
    assert!(ok(&["bound", "--in", "big.txt"], d).starts_with("lower_bound "));

    // budget override through the environment
    write(d, "gray.txt", "2 2 01\n00\n01\n10\n11\n");
    let out = Command::new(env!("CARGO_BIN_EXE_blm"))
        .args(["bound", "--in", "gray.txt", "--exact"])
        .current_dir(d)
        .env("BLM_BRUTE_FORCE_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    write(d, "bad.txt", "2 2 01\n00\n01\n10\n");
    assert_eq!(
        blm(&["solve", "--in", "bad.txt", "--algo", "rand"], d).status.code(),
        Some(2)
    );
    assert_eq!(
        blm(&["solve", "--in", "big.txt", "--algo", "greedy"], d).status.code(),
        Some(2)
    );
    // randomized algorithms insist on a seed
    assert_eq!(
        blm(&["solve", "--in", "big.txt", "--algo", "epx"], d).status.code(),
        Some(2)
    );
    assert_eq!(
        blm(&["solve", "--in", "missing.txt", "--algo", "rand"], d)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        blm(&["refine", "--in", "big.txt", "--placement", "missing.txt"], d)
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bench_rows_and_determinism() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let args = [
        "bench",
        "--sizes",
        "16,64",
        "--algos",
        "epx,qepx,sort+hra",
        "--seeds",
        "0..2,5",
        "--omit-time",
    ];
    let a = ok(&args, d);
    assert_eq!(a, ok(&args, d));
    let rows: Vec<&str> = a.lines().collect();
    assert_eq!(rows.len(), 1 + 2 * 3 * 3);
    for row in &rows[1..] {
        let f: Vec<&str> = row.split(',').collect();
        let (init, fin): (f64, f64) = (f[3].parse().unwrap(), f[5].parse().unwrap());
        assert_eq!(f[7], format!("{:.2}", 100.0 * (init - fin) / init));
        assert_eq!(f[6], "-");
    }
    let skipped = ok(
        &[
            "bench",
            "--sizes",
            "16",
            "--algos",
            "rand",
            "--seeds",
            "1",
            "--lower-bound-max",
            "4",
        ],
        d,
    );
    assert_eq!(skipped.lines().nth(1).unwrap().split(',').nth(2), Some("-"));

    // a failing cell is reported but the others are still written
    let out = blm(
        &[
            "bench",
            "--sizes",
            "36",
            "--algos",
            "rand,rand+hra",
            "--seeds",
            "0",
            "--out",
            "b.csv",
        ],
        d,
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_to_string(d.join("b.csv")).unwrap().lines().count(), 2);
}
