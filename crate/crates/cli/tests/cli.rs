use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn trimod(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimod"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn graph_exports() {
    let dir = TempDir::new().unwrap();
    let dot = trimod(dir.path(), &["graph", "--n", "40", "--format", "dot"]);
    assert_eq!(code(&dot), 0);
    let text = stdout(&dot);
    assert!(text.starts_with("graph T40 {\n"));
    assert!(text.ends_with("}\n"));

    let csv = dir.path().join("adj.csv");
    let o = trimod(
        dir.path(),
        &["graph", "--n", "200", "--format", "adjacency-csv", "--out", csv.to_str().unwrap()],
    );
    assert_eq!(code(&o), 0);
    let rows: Vec<String> = fs::read_to_string(&csv).unwrap().lines().map(String::from).collect();
    assert_eq!(rows.len(), 199);
    assert!(rows.iter().all(|r| r.split(',').count() == 199));
    // symmetric, zero diagonal
    let cell = |i: usize, j: usize| rows[i].split(',').nth(j).unwrap().to_string();
    for i in (0..199).step_by(17) {
        assert_eq!(cell(i, i), "0");
        for j in (0..199).step_by(13) {
            assert_eq!(cell(i, j), cell(j, i));
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&trimod(dir.path(), &["graph", "--n", "1"])), 2);
    assert_eq!(code(&trimod(dir.path(), &["graph", "--n", "12", "--bogus"])), 2);
    assert_eq!(code(&trimod(dir.path(), &["graph", "--n", "12", "--format", "png"])), 2);
    let big = trimod(dir.path(), &["clique", "--n", "3000"]);
    assert_eq!(code(&big), 2);
    assert!(String::from_utf8_lossy(&big.stderr).contains("--budget"));
    assert_eq!(code(&trimod(dir.path(), &["clique"])), 2);
    let unwritable = dir.path().join("missing").join("x.txt");
    let o = trimod(dir.path(), &["graph", "--n", "12", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cache_is_reused_and_repaired() {
    let dir = TempDir::new().unwrap();
    let first = stdout(&trimod(dir.path(), &["graph", "--n", "60"]));
    let file = dir.path().join("t60.v1.trigraph");
    assert!(file.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1, "no temporary files left behind");

    // a corrupt cache entry is rebuilt, not trusted
    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, &text[..text.len() / 2]).unwrap();
    let again = trimod(dir.path(), &["graph", "--n", "60"]);
    assert_eq!(code(&again), 0);
    assert_eq!(stdout(&again), first);
    assert_eq!(fs::read_to_string(&file).unwrap(), text);

    let fresh = trimod(dir.path(), &["--no-cache", "graph", "--n", "60"]);
    assert_eq!(stdout(&fresh), first);
}

#[test]
fn clique_of_ten() {
    let dir = TempDir::new().unwrap();
    let coloring = dir.path().join("c10.txt");
    let o = trimod(
        dir.path(),
        &["clique", "--n", "10", "--coloring-out", coloring.to_str().unwrap()],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "n=10 omega=5 count=1\nn=10 size=5 members=2,4,5,6,8\n");
    let v = trimod(dir.path(), &["verify", "--coloring", coloring.to_str().unwrap()]);
    assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stderr));
}

#[test]
fn record_table() {
    let dir = TempDir::new().unwrap();
    let o = trimod(dir.path(), &["clique", "--range", "2..82", "--table"]);
    assert_eq!(code(&o), 0);
    let a: Vec<(usize, usize)> = stdout(&o)
        .lines()
        .map(|l| {
            let mut it = l.split(' ');
            let k = it.next().unwrap().strip_prefix("k=").unwrap().parse().unwrap();
            let n = it.next().unwrap().strip_prefix("a=").unwrap().parse().unwrap();
            (k, n)
        })
        .collect();
    assert_eq!(a, vec![(2, 3), (3, 5), (4, 5), (5, 10), (6, 11), (7, 22), (8, 41), (9, 82)]);
}

#[test]
fn moduli_and_verification() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.txt");
    let certs = dir.path().join("certs");
    let o = trimod(
        dir.path(),
        &[
            "moduli",
            "--n",
            "20",
            "--members",
            "12,4",
            "--c",
            "3",
            "--out",
            out.to_str().unwrap(),
            "--certificates",
            certs.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("MODULI 1\nn=20 c=3 k=4,12\n"));
    assert_eq!(code(&trimod(dir.path(), &["verify", "--moduli", out.to_str().unwrap()])), 0);

    let cert = certs.join("scalable_n20_k4_j12.txt");
    assert_eq!(code(&trimod(dir.path(), &["verify", "--scalable", cert.to_str().unwrap()])), 0);
    let original = fs::read_to_string(&cert).unwrap();
    fs::write(&cert, original.replacen("b=1/1,", "b=2/1,", 1)).unwrap();
    assert_eq!(code(&trimod(dir.path(), &["verify", "--scalable", cert.to_str().unwrap()])), 1);
    fs::write(&cert, original.replacen("resultant=1\n", "resultant=3\n", 1)).unwrap();
    assert_eq!(code(&trimod(dir.path(), &["verify", "--scalable", cert.to_str().unwrap()])), 1);

    let tampered = text.replacen("hex=1000001", "hex=1000003", 1);
    assert_ne!(tampered, text);
    fs::write(&out, tampered).unwrap();
    assert_eq!(code(&trimod(dir.path(), &["verify", "--moduli", out.to_str().unwrap()])), 1);

    // {1, 3} is not an edge of T(10)
    let bad = trimod(dir.path(), &["moduli", "--n", "10", "--members", "1,3", "--c", "2"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn verify_cliques() {
    let dir = TempDir::new().unwrap();
    let ok = trimod(dir.path(), &["verify", "--clique", "n=781,members=720,760,765,768,780"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("OK"));
    let record = trimod(dir.path(), &["verify", "--clique", "n=10 size=5 members=2,4,5,6,8"]);
    assert_eq!(code(&record), 0);
    assert_eq!(code(&trimod(dir.path(), &["verify", "--clique", "n=10,members=1,3"])), 1);
    assert_eq!(code(&trimod(dir.path(), &["verify", "--clique", "n=10,members=1,10"])), 2);
}

#[test]
fn verify_graph_files() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("g.trigraph");
    let o = trimod(
        dir.path(),
        &["graph", "--n", "30", "--format", "cache", "--out", file.to_str().unwrap()],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(code(&trimod(dir.path(), &["verify", "--graph", file.to_str().unwrap()])), 0);
    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, text.replacen("\n1 2\n", "\n1 3\n", 1)).unwrap();
    assert_eq!(code(&trimod(dir.path(), &["verify", "--graph", file.to_str().unwrap()])), 1);
}

#[test]
fn stats_csv() {
    let dir = TempDir::new().unwrap();
    let o = trimod(dir.path(), &["stats", "--range", "3..40"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,edge_density,coprime_density"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 38);
    for r in &rows {
        // fixed six places, so string order is numeric order
        assert!(r[1] <= r[2], "{r:?}");
    }
    assert_eq!(rows[0], vec!["3", "1.000000", "1.000000"]);

    let empty = trimod(dir.path(), &["stats", "--range", "5..4"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(stdout(&empty), "n,edge_density,coprime_density\n");
}

#[test]
fn sequences() {
    let dir = TempDir::new().unwrap();
    let o = trimod(dir.path(), &["seq", "--count", "6"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[4].contains("members={720, 760, 765, 768, 780}") && lines[4].ends_with("resultants=ok"));
    assert!(lines[5].contains("n=48439665"));
    assert!(lines[5].ends_with("divisibility=ok resultants=skipped"));
}

#[test]
fn bench_is_exact_and_deterministic_in_its_samples() {
    let dir = TempDir::new().unwrap();
    let args = ["bench", "--n", "10", "--c", "8", "--values", "50", "--seed", "7", "--sequential"];
    let o = trimod(dir.path(), &args);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("clique=n=10 size=5 members=2,4,5,6,8\n"));
    assert!(text.contains("roundtrip_exact=true"));
    assert!(text.contains("capacity_bits=400"));
    assert!(text.contains("bit_size=400"));
}
