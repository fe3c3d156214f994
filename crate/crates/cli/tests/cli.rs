use std::path::Path;
use std::process::{Command, Output};

fn hapdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hapdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV report (comments and header skipped), split on commas.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_bcc_prefix_sums_count_ternary_ones() {
    let out = hapdisc(&["gen", "bcc", "--N", "243"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("edpseq v1 N=243 kind=pm1 seed=0"));
    let mut s = 0i64;
    for (i, l) in lines.enumerate() {
        s += if l == "+1" { 1 } else { -1 };
        let mut n = i + 1;
        let mut ones = 0;
        while n > 0 {
            ones += (n % 3 == 1) as i64;
            n /= 3;
        }
        assert_eq!(s, ones, "n = {}", i + 1);
    }
}

#[test]
fn gen_factorial_alt_matches_listed_terms() {
    let out = hapdisc(&["gen", "factorial-alt", "--N", "18"]);
    let body: Vec<String> = stdout(&out).lines().skip(1).map(str::to_string).collect();
    let expected = "+1 -1 -1 +1 +1 -1 -1 +1 +1 -1 -1 +1 +1 -1 -1 +1 +1 -1";
    assert_eq!(body.join(" "), expected);
}

#[test]
fn gen_character_has_zeros_at_multiples() {
    let out = hapdisc(&["gen", "character", "--q", "3", "--N", "9"]);
    let text = stdout(&out);
    assert!(text.starts_with("edpseq v1 N=9 kind=character"));
    let body: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(body, ["1,0", "-1,0", "0,0", "1,0", "-1,0", "0,0", "1,0", "-1,0", "0,0"]);
}

#[test]
fn disc_reports() {
    let dir = tempfile::tempdir().unwrap();
    let bcc = path(dir.path(), "bcc.txt");
    assert!(hapdisc(&["gen", "bcc", "--N", "243", "--out", &bcc]).status.success());
    let out = hapdisc(&["disc", &bcc]);
    assert_eq!(rows(&stdout(&out)), vec![vec!["243", "5", "121", "1"]]);

    let chi = path(dir.path(), "chi3.txt");
    hapdisc(&["gen", "character", "--q", "3", "--N", "10000", "--out", &chi]);
    let r = rows(&stdout(&hapdisc(&["disc", &chi])));
    assert!(r[0][1].parse::<f64>().unwrap() <= 3.0);

    let ones = path(dir.path(), "ones.txt");
    std::fs::write(&ones, format!("edpseq v1 N=10 kind=pm1\n{}", "+1\n".repeat(10))).unwrap();
    assert_eq!(rows(&stdout(&hapdisc(&["disc", &ones])))[0][1], "10");

    let table = stdout(&hapdisc(&["disc", &bcc, "--per-d"]));
    assert!(table.contains("# N=243 sup=5 witness_n=121 witness_d=1"));
    assert_eq!(rows(&table).len(), 243);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.txt");
    std::fs::write(&bad, "edpseq v1 N=3 kind=pm1\n+1\n-1\n").unwrap();
    assert_eq!(hapdisc(&["disc", &bad]).status.code(), Some(2));
    std::fs::write(&bad, "edpseq v1 N=1 kind=pm1\n0\n").unwrap();
    assert_eq!(hapdisc(&["disc", &bad]).status.code(), Some(2));
    assert_eq!(hapdisc(&["gen", "bcc"]).status.code(), Some(2));
    assert_eq!(hapdisc(&["gen", "character", "--q", "3", "--index", "5", "--N", "3"]).status.code(), Some(2));
}

#[test]
fn growth_columns() {
    let text = stdout(&hapdisc(&["growth", "bcc", "--base", "3", "--k-max", "10", "--log-base", "3"]));
    let r = rows(&text);
    assert_eq!(r.len(), 10);
    for (k, row) in r.iter().enumerate() {
        assert_eq!(row[1], (k + 1).to_string());
        assert_eq!(row[2], "1");
    }
    let text = stdout(&hapdisc(&["growth", "vector-bcc", "--Ns", "1,4,13,40,121"]));
    for (k, row) in rows(&text).iter().enumerate() {
        let v: f64 = row[1].parse().unwrap();
        assert!((v - ((k + 1) as f64).sqrt()).abs() < 1e-12);
    }
    let text = stdout(&hapdisc(&["growth", "constant", "--Ns", "5,50"]));
    assert!(rows(&text).iter().all(|r| r[4] == "1"));
}

#[test]
fn search_verify_and_cnf() {
    let dir = tempfile::tempdir().unwrap();
    let cert = path(dir.path(), "cert.txt");
    let out = hapdisc(&["search", "--C", "1", "--cert", &cert]);
    assert!(out.status.success());
    let r = rows(&stdout(&out));
    assert_eq!((r[0][2].as_str(), r[0][3].as_str()), ("11", "true"));
    assert_eq!(hapdisc(&["verify", &cert, "--C", "1"]).status.code(), Some(0));
    assert_eq!(hapdisc(&["verify", &cert, "--C", "0"]).status.code(), Some(1));

    let out = hapdisc(&["search", "--C", "2", "--mode", "cm"]);
    assert_eq!(rows(&stdout(&out))[0][2], "246");

    let out = hapdisc(&["search", "--C", "2", "--node-limit", "100"]);
    assert_eq!(out.status.code(), Some(3));

    let seq = path(dir.path(), "seq.txt");
    std::fs::write(&seq, "edpseq v1 N=4 kind=pm1\n+1\n-1\n-1\n-1\n").unwrap();
    assert_eq!(hapdisc(&["verify", &seq, "--C", "2", "--mode", "cm"]).status.code(), Some(1));

    let cnf = stdout(&hapdisc(&["cnf", "--N", "12", "--C", "1"]));
    assert!(cnf.lines().any(|l| l.starts_with("p cnf ")));
    assert!(cnf.lines().next().unwrap().starts_with("c "));
}

#[test]
fn numerical_commands() {
    let out = stdout(&hapdisc(&["pretend", "--f", "bcc", "--g", "legendre:3", "--x", "100"]));
    assert_eq!(rows(&out)[0][1], (1.0f64 / 3.0).to_string());

    let out = stdout(&hapdisc(&["series", "--x", "22026.465794806718", "--truncation", "1000000"]));
    let r = &rows(&out)[0];
    let completed: f64 = r[6].parse().unwrap();
    let target: f64 = r[8].parse().unwrap();
    assert!((completed - target).abs() / target < 0.02);

    let out = hapdisc(&["identity", "--construction", "random:3", "--primes", "2,3,5", "--M", "7", "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(rows(&stdout(&out))[0][3], "true");

    let out = stdout(&hapdisc(&["reduce", "--construction", "one", "--primes", "2,3", "--M", "3"]));
    assert!(out.contains("# total=1"));
    assert!(out.contains("# sampled_xi=0 0"));

    let out = stdout(&hapdisc(&["adversary", "--k", "12", "--seed", "5"]));
    let r = &rows(&out)[0];
    assert!(2 * r[3].parse::<u64>().unwrap() >= 13);

    let out = hapdisc(&["qform", "--N", "3", "--c", "1:1:1,1:2:1,1:3:1", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn runs_are_reproducible() {
    for args in [
        vec!["mc", "--n", "40,100", "--trials", "500", "--seed", "11"],
        vec!["gen", "random-bcc", "--k", "4", "--seed", "11"],
        vec!["reduce", "--construction", "bcc", "--primes", "2,3", "--M", "4", "--seed", "11"],
    ] {
        let a = hapdisc(&args);
        let b = hapdisc(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).contains("seed=11"));
    }
    let a = stdout(&hapdisc(&["gen", "random-bcc", "--k", "4", "--seed", "1"]));
    let b = stdout(&hapdisc(&["gen", "random-bcc", "--k", "4", "--seed", "2"]));
    assert_ne!(a.lines().skip(1).collect::<Vec<_>>(), b.lines().skip(1).collect::<Vec<_>>());
}

#[test]
fn corr_reports() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "f.txt");
    hapdisc(&["gen", "bcc", "--N", "2000", "--out", &f]);
    let out = hapdisc(&["corr", &f, "--x", "1000", "--h1", "1", "--h2", "2", "--window", "3"]);
    assert!(out.status.success());
    assert_eq!(rows(&stdout(&out))[0].len(), 8);
    assert_eq!(hapdisc(&["corr", &f, "--x", "5000"]).status.code(), Some(2));
}
