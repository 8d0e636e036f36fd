use std::process::{Command, Output};

use fermat_mld::cli::RunReport;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat-mld"))
        .args(args)
        .env_remove("FERMAT_MLD_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (RunReport, String, Output) {
    let o = bin(args);
    let text = stdout(&o);
    let report: RunReport = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, text, o)
}

#[test]
fn compute_reports_the_value() {
    let (r, _, o) = json(&["compute", "--n", "3", "--d", "3", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(r.command, "compute");
    assert_eq!(r.results.len(), 1);
    assert_eq!(r.results[0].value, 30);
    assert_eq!(r.results[0].strategy, "partitioning-diff");
    assert!(r.mismatches.is_empty());
    assert_eq!(r.environment.primes, vec![32003, 65537]);
}

#[test]
fn compute_with_closed_and_explicit_strategy() {
    let (r, _, _) = json(&["compute", "--n", "2", "--d", "2", "--strategy", "closed", "--format", "json"]);
    assert_eq!(r.results[0].value, 6);
    let (r, _, _) = json(&["compute", "--n", "4", "--d", "5", "--strategy", "partitioning-diff", "--format", "json"]);
    assert_eq!(r.results[0].value, 725);
}

#[test]
fn compute_breakdown_in_text() {
    let o = bin(&["compute", "--n", "3", "--d", "3", "--breakdown", "--prime", "101"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("= 30"));
    assert!(text.contains("(2,1,1)"));
}

#[test]
fn bad_input_fails() {
    assert_eq!(bin(&["compute", "--n", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["compute", "--n", "3", "--d", "3", "--strategy", "magic"]).status.code(), Some(2));
    assert_eq!(bin(&["compute", "--n", "3", "--d", "3", "--prime", "97"]).status.code(), Some(1));
    assert_eq!(bin(&["compute", "--n", "3", "--d", "3", "--strategy", "closed"]).status.code(), Some(1));
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["compute", "--n", "3", "--d", "4", "--breakdown", "--format", "json"][..],
        &["partitions", "--n", "4", "--d", "3", "--format", "json"][..],
        &["verify", "--max-n", "3", "--max-d", "3", "--format", "json"][..],
    ] {
        let (r, text, _) = json(args);
        assert_eq!(format!("{}\n", r.to_json()), text, "{args:?}");
    }
}

#[test]
fn verify_small_grid() {
    let (r, _, o) = json(&["verify", "--max-n", "4", "--max-d", "4", "--format", "json"]);
    assert!(o.status.success());
    let mut cells: Vec<(usize, usize)> = r.results.iter().map(|x| (x.n, x.d)).collect();
    cells.dedup();
    assert_eq!(cells.len(), 9);
    assert!(r.mismatches.is_empty());
}

#[test]
fn verify_quadric_column() {
    let o = bin(&["verify", "--max-n", "9", "--max-d", "2", "--strategies", "closed,partitioning"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("8 cells, 0 failed"));
}

#[test]
fn verify_empty_grid() {
    let o = bin(&["verify", "--max-n", "1", "--max-d", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("nothing to verify"));
}

#[test]
fn verify_against_a_corrupted_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.txt");
    std::fs::write(&path, "# wrong on purpose\n2 2 6\n3 3 31\n").unwrap();
    let (r, _, o) = json(&[
        "verify",
        "--max-n",
        "3",
        "--max-d",
        "3",
        "--strategies",
        "partitioning",
        "--table",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!((r.mismatches[0].n, r.mismatches[0].d), (3, 3));
    assert_eq!(r.mismatches[0].expected, Some(31));
    assert_eq!(r.mismatches[0].got, Some(30));
}

#[test]
fn bench_writes_one_row_per_cell_and_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let o = bin(&[
        "bench",
        "--grid",
        "2..3",
        "2..3",
        "--strategies",
        "partitioning,random",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["n", "d", "strategy", "status", "seconds", "value"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    for pair in rows.chunks(2) {
        assert_eq!(&pair[0][3], "ok");
        assert!(pair[0][4].parse::<f64>().unwrap() > 0.0);
        assert_eq!(&pair[0][5], &pair[1][5]);
    }
}

#[test]
fn bench_records_timeouts() {
    let o = bin(&["bench", "--grid", "5", "5", "--strategies", "partitioning", "--timeout", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().starts_with("5,5,partitioning,timeout,"), "{text}");
}

#[test]
fn bench_rejects_unwritable_output() {
    let o = bin(&["bench", "--grid", "2", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn partitions_listing() {
    let (r, _, _) = json(&["partitions", "--n", "2", "--d", "3", "--format", "json"]);
    let rows = r.partitions.unwrap();
    let got: Vec<(Vec<usize>, u128, u128)> = rows.iter().map(|p| (p.partition.parts().to_vec(), p.c, p.o)).collect();
    assert_eq!(got, vec![(vec![2, 1], 3, 1), (vec![1, 1, 1], 6, 6)]);

    let (r, _, _) = json(&["partitions", "--n", "2", "--d", "2", "--format", "json"]);
    assert_eq!(r.partitions.unwrap().len(), 1);

    let (r, _, _) = json(&["partitions", "--n", "8", "--d", "3", "--format", "json"]);
    let rows = r.partitions.unwrap();
    assert!(rows.iter().all(|p| (2..=3).contains(&p.partition.len()) && p.partition.total() == 9));
    assert_eq!(rows.len(), 4 + 7);
}

#[test]
fn threads_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fermat-mld"))
        .args(["compute", "--n", "3", "--d", "3"])
        .env("FERMAT_MLD_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("= 30"));
}
