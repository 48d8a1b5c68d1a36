//! Acceptance suite. Each test prints one `[acceptance]` line with its
//! verdict, the instance counts and the wall time, then asserts.
//!
//! Run with `cargo test -p tropical-psd --test acceptance -- --nocapture`.
//! Set `UPDATE_GOLDEN=1` to rewrite the CLI golden files.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use tropical_psd::cli::MatrixDocument;
use tropical_psd::factor::{
    decompose_rank_one, gram_factor, rank_upper_bound, symmetric_barvinok_rank,
};
use tropical_psd::factor::{rank_oracle_small, ORACLE_MAX_R};
use tropical_psd::psd_cone::{cone_decompose, is_trop_psd_inequalities};
use tropical_psd::random::{
    random_matrix, random_member, random_sign_pattern, random_symmetric, rng,
};
use tropical_psd::sweep::{certify, classify, reconstruct_all};
use tropical_psd::tropical::{trop_det_assignment, trop_det_bruteforce, trop_mat_mul};
use tropical_psd::{Exec, Rat, SymMatrix};

fn report(id: &str, title: &str, ok: bool, detail: &str, elapsed: Duration, limit: Duration) {
    let verdict = if ok && elapsed < limit {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "[acceptance] {id} {title}: {verdict} ({detail}; {:.2}s, limit {}s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "{id} failed: {detail}");
    assert!(elapsed < limit, "{id} exceeded {}s", limit.as_secs());
}

#[test]
fn c1_membership_tests_agree() {
    let start = Instant::now();
    let mut r = rng(1);
    let mut total = 0;
    let mut members = 0;
    let mut disagreements = 0;
    for n in 2..=5 {
        let mats: Vec<SymMatrix> = (0..2000).map(|_| random_symmetric(n, &mut r)).collect();
        let verdicts = classify(&mats, Exec::default()).unwrap();
        total += verdicts.len();
        members += verdicts.iter().filter(|v| v.inequalities).count();
        disagreements += verdicts.iter().filter(|v| !v.agree()).count();
    }
    report(
        "C1",
        "inequality, determinant and subdivision tests agree",
        disagreements == 0,
        &format!("{total} matrices, {members} members, {disagreements} disagreements"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn c2_assignment_matches_bruteforce() {
    let start = Instant::now();
    let mut r = rng(2);
    let mut total = 0;
    let mut mismatches = 0;
    for n in 2..=8 {
        let mats: Vec<_> = (0..500).map(|_| random_matrix(n, n, &mut r)).collect();
        let ok = Exec::default().map(&mats, |a| {
            trop_det_assignment(a).unwrap() == trop_det_bruteforce(a).unwrap().value
        });
        total += ok.len();
        mismatches += ok.iter().filter(|&&b| !b).count();
    }
    report(
        "C2",
        "assignment determinant equals brute force",
        mismatches == 0,
        &format!("{total} matrices, {mismatches} mismatches"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn c3_witnesses_certify_members() {
    let start = Instant::now();
    let mut r = rng(3);
    let u = Rat::frac(1, 1000);
    let mut total = 0;
    let mut failures = 0;
    for n in 2..=5 {
        let mats: Vec<SymMatrix> = (0..200).map(|_| random_member(n, &mut r)).collect();
        let signs: Vec<_> = (0..200).map(|_| random_sign_pattern(n, &mut r)).collect();
        let checks = certify(&mats, &signs, &u, Exec::default()).unwrap();
        total += checks.len();
        failures += checks
            .iter()
            .filter(|c| !(c.verified && c.specialized))
            .count();
    }
    report(
        "C3",
        "Puiseux witnesses verify and specialize at u = 1/1000",
        failures == 0,
        &format!("{total} members, {failures} failures"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn c4_decomposition_and_gram_factor() {
    let start = Instant::now();
    let mut r = rng(4);
    let mut members = 0;
    let mut failures = 0;
    for n in 2..=5 {
        let mats: Vec<SymMatrix> = (0..200).map(|_| random_member(n, &mut r)).collect();
        let rebuilt = reconstruct_all(&mats, Exec::default()).unwrap();
        let gram = Exec::default().map(&mats, |a| {
            gram_factor(a).unwrap().product() == a.to_matrix()
                && decompose_rank_one(a).unwrap().reconstruct() == *a
        });
        members += mats.len();
        failures += rebuilt
            .iter()
            .zip(&gram)
            .filter(|(x, y)| !(**x && **y))
            .count();
    }
    let mut products = 0;
    let mut outside = 0;
    for n in 1..=5 {
        for cols in 1..=6 {
            for _ in 0..10 {
                let b = random_matrix(n, cols, &mut r);
                let a = trop_mat_mul(&b, &b.transpose()).unwrap().to_sym().unwrap();
                products += 1;
                if !is_trop_psd_inequalities(&a).is_member {
                    outside += 1;
                }
            }
        }
    }
    report(
        "C4",
        "rank-one decomposition and B (.) B^T factorization",
        failures == 0 && outside == 0 && products >= 200,
        &format!(
            "{members} members, {failures} failed round trips; {products} products, {outside} outside the cone"
        ),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn c5_rank_golden_values_and_bound() {
    let start = Instant::now();
    let goldens = [
        (SymMatrix::zeros(3), 1),
        (SymMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap(), 2),
        (
            SymMatrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap(),
            3,
        ),
    ];
    let golden_ok = goldens
        .iter()
        .all(|(a, want)| symmetric_barvinok_rank(a).unwrap() == *want);

    let mut r = rng(5);
    let mut total = 0;
    let mut over = 0;
    let mut max_seen = Vec::new();
    for n in 1..=6 {
        let mats: Vec<SymMatrix> = (0..100).map(|_| random_member(n, &mut r)).collect();
        let ranks = Exec::default().map(&mats, |a| symmetric_barvinok_rank(a).unwrap());
        total += ranks.len();
        over += ranks.iter().filter(|&&k| k > rank_upper_bound(n)).count();
        max_seen.push(ranks.iter().copied().max().unwrap_or(0));
    }
    report(
        "C5",
        "rank golden values and max(n, floor(n^2/4)) bound",
        golden_ok && over == 0,
        &format!(
            "goldens {}, {total} members, {over} above bound, max rank by n {:?}",
            if golden_ok { "ok" } else { "WRONG" },
            max_seen
        ),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn rank_corpus() -> Vec<SymMatrix> {
    std::fs::read_to_string(fixtures().join("rank_corpus.jsonl"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| MatrixDocument::parse(l).unwrap().into_matrix())
        .collect()
}

#[test]
fn c6_rank_agrees_with_oracle() {
    let start = Instant::now();
    let corpus = rank_corpus();
    assert_eq!(corpus.len(), 100);
    let results = Exec::default().map(&corpus, |a| {
        let rank = symmetric_barvinok_rank(a).unwrap();
        let oracle = (1..=ORACLE_MAX_R).find(|&k| rank_oracle_small(a, k).unwrap());
        (rank, oracle)
    });
    let mismatches = results.iter().filter(|(k, o)| Some(*k) != *o).count();
    let mut histogram = [0usize; ORACLE_MAX_R + 1];
    for (k, _) in &results {
        histogram[*k] += 1;
    }
    report(
        "C6",
        "exact rank equals the independent oracle minimum",
        mismatches == 0,
        &format!(
            "{} members, {mismatches} mismatches, rank histogram {:?}",
            corpus.len(),
            &histogram[1..]
        ),
        start.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn c7_cone_structure() {
    let start = Instant::now();
    let mut r = rng(7);
    let mut total = 0;
    let mut failures = 0;
    for n in 1..=6 {
        for k in 0..500 {
            let a = if k % 2 == 0 {
                random_symmetric(n, &mut r)
            } else {
                random_member(n, &mut r)
            };
            let member = is_trop_psd_inequalities(&a).is_member;
            let comb = cone_decompose(&a);
            let mu_nonneg = comb.ray_coeffs.values().all(|m| !m.is_negative());
            let i = k % n;
            let c = Rat::frac(k as i64 % 17 - 8, (k as i64 % 5) + 1);
            let shifted = a.add(&SymMatrix::lineality(n, i).scale(&c)).unwrap();
            let ok = comb.reconstruct() == a
                && mu_nonneg == member
                && is_trop_psd_inequalities(&shifted).is_member == member;
            total += 1;
            if !ok {
                failures += 1;
            }
        }
    }
    report(
        "C7",
        "cone decomposition, ray coefficients and lineality invariance",
        failures == 0,
        &format!("{total} matrices, {failures} failures"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

/// (golden file, arguments, fixture, expected exit code)
const CLI_CASES: &[(&str, &[&str], &str, i32)] = &[
    (
        "check_zero2_inequalities.txt",
        &["check", "--method", "inequalities"],
        "zero2.json",
        0,
    ),
    (
        "check_zero2_det.txt",
        &["check", "--method", "det"],
        "zero2.json",
        0,
    ),
    (
        "check_zero2_subdivision.txt",
        &["check", "--method", "subdivision"],
        "zero2.json",
        0,
    ),
    (
        "check_offdiag_minus_one.txt",
        &["check"],
        "offdiag_minus_one.json",
        1,
    ),
    (
        "check_offdiag_minus_one_subdivision.txt",
        &["check", "--method", "subdivision"],
        "offdiag_minus_one.json",
        1,
    ),
    (
        "check_j3_inequalities.txt",
        &["check", "--method", "inequalities"],
        "j3.json",
        0,
    ),
    (
        "check_j3_det.txt",
        &["check", "--method", "det"],
        "j3.json",
        0,
    ),
    (
        "check_j3_subdivision.txt",
        &["check", "--method", "subdivision"],
        "j3.json",
        0,
    ),
    ("check_j3.json", &["--json", "check"], "j3.json", 0),
    ("check_asymmetric.txt", &["check"], "asymmetric.json", 2),
    ("check_malformed.txt", &["check"], "malformed.json", 2),
    (
        "witness_offdiag_one_plus.txt",
        &["witness", "--signs", "+"],
        "offdiag_one.json",
        0,
    ),
    (
        "witness_offdiag_one_minus.txt",
        &["witness", "--signs", "-"],
        "offdiag_one.json",
        0,
    ),
    (
        "witness_offdiag_one_specialize.txt",
        &["witness", "--specialize", "1/1000"],
        "offdiag_one.json",
        0,
    ),
    (
        "witness_j3_minus.txt",
        &["witness", "--signs", "---"],
        "j3.json",
        0,
    ),
    (
        "witness_fractional3.txt",
        &["witness", "--signs", "+-+"],
        "fractional3.json",
        0,
    ),
    (
        "witness_offdiag_minus_one.txt",
        &["witness"],
        "offdiag_minus_one.json",
        1,
    ),
    (
        "witness_offdiag_one.json",
        &["--json", "witness"],
        "offdiag_one.json",
        0,
    ),
    ("decompose_zero2.txt", &["decompose"], "zero2.json", 0),
    (
        "decompose_offdiag_one.txt",
        &["decompose"],
        "offdiag_one.json",
        0,
    ),
    ("decompose_j3.txt", &["decompose"], "j3.json", 0),
    (
        "decompose_fractional3.txt",
        &["decompose"],
        "fractional3.json",
        0,
    ),
    (
        "decompose_offdiag_minus_one.txt",
        &["decompose"],
        "offdiag_minus_one.json",
        1,
    ),
    ("rank_zero3.txt", &["rank"], "zero3.json", 0),
    ("rank_offdiag_one.txt", &["rank"], "offdiag_one.json", 0),
    ("rank_j3.txt", &["rank"], "j3.json", 0),
    ("rank_j3.json", &["--json", "rank"], "j3.json", 0),
    (
        "rank_offdiag_minus_one.txt",
        &["rank"],
        "offdiag_minus_one.json",
        1,
    ),
    ("factor_zero2.txt", &["factor"], "zero2.json", 0),
    ("factor_offdiag_one.txt", &["factor"], "offdiag_one.json", 0),
    ("factor_fractional3.txt", &["factor"], "fractional3.json", 0),
    (
        "factor_offdiag_minus_one.txt",
        &["factor"],
        "offdiag_minus_one.json",
        1,
    ),
    ("svg_j3.svg", &["svg"], "j3.json", 0),
    ("svg_violated3.svg", &["svg"], "violated3.json", 0),
    ("svg_zero3.svg", &["svg"], "zero3.json", 0),
    ("svg_fractional3.svg", &["svg"], "fractional3.json", 0),
    ("svg_zero2.txt", &["svg"], "zero2.json", 2),
    (
        "random_n3_seed7.txt",
        &["--seed", "7", "random", "--n", "3", "--count", "4"],
        "",
        0,
    ),
    (
        "random_verify.txt",
        &[
            "--seed", "7", "random", "--n", "4", "--any", "--count", "50", "--verify",
        ],
        "",
        0,
    ),
];

/// Runs the binary; stdout, then stderr under a marker line when non-empty.
fn run_cli(args: &[&str], fixture: &str) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropsd"));
    cmd.args(args);
    if !fixture.is_empty() {
        cmd.arg(fixtures().join(fixture));
    }
    let out = cmd.output().unwrap();
    let mut text = String::from_utf8(out.stdout).unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    if !err.is_empty() {
        text.push_str("--- stderr ---\n");
        text.push_str(&err);
    }
    (text, out.status.code().unwrap_or(-1))
}

#[test]
fn c8_cli_golden_files() {
    let start = Instant::now();
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for (name, args, fixture, want_code) in CLI_CASES {
        let (text, code) = run_cli(args, fixture);
        if code != *want_code {
            problems.push(format!("{name}: exit {code}, expected {want_code}"));
        }
        let path = golden_dir.join(name);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == text => {}
            Ok(_) => problems.push(format!("{name}: output differs from golden")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }

    // Writing through --out twice must give identical bytes.
    let dir = std::env::temp_dir().join(format!("tropsd-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut files = Vec::new();
    for k in 0..2 {
        let file = dir.join(format!("out{k}.svg"));
        let file_arg = file.to_str().unwrap().to_owned();
        let (_, code) = run_cli(&["svg", "--out", &file_arg], "violated3.json");
        if code != 0 {
            problems.push(format!("svg --out exit {code}"));
        }
        files.push(std::fs::read(&file).unwrap_or_default());
    }
    let stdout_svg = std::fs::read(golden_dir.join("svg_violated3.svg")).unwrap_or_default();
    if files[0] != files[1] || files[0] != stdout_svg {
        problems.push("svg --out is not byte-identical across runs and with stdout".into());
    }
    let _ = std::fs::remove_dir_all(&dir);

    report(
        "C8",
        "CLI golden files, byte-exact",
        problems.is_empty(),
        &format!(
            "{} cases{}{}",
            CLI_CASES.len() + 1,
            if problems.is_empty() { "" } else { "; " },
            problems.join("; ")
        ),
        start.elapsed(),
        Duration::from_secs(60),
    );
}
