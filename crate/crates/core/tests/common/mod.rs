//! Helpers shared by the integration targets that drive the binary.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const VERBS_WITH_INPUT: [&str; 10] = [
    "koszul-dual",
    "cobar-homology",
    "verify",
    "cohomology",
    "deform",
    "quantize",
    "classical-limit",
    "gauge",
    "conformal-check",
    "conformal-d2",
];

/// (golden name, verb, input fixture, extra flags)
pub const CASES: &[(&str, &str, Option<&str>, &[&str])] = &[
    ("koszul_dual_lie_4", "koszul-dual", Some("lie.json"), &["--arity", "4"]),
    ("cobar_homology_lie_4", "cobar-homology", Some("lie.json"), &["--arity", "4"]),
    ("verify_cross_product", "verify", Some("cross_product.json"), &[]),
    ("cohomology_cross_product", "cohomology", Some("cross_product.json"), &["--arity-max", "2"]),
    ("cohomology_dual_numbers", "cohomology", Some("dual_numbers.json"), &["--arity-max", "3"]),
    ("deform_plane", "deform", Some("plane_first_order.json"), &[]),
    ("quantize_plane_2", "quantize", Some("plane_quantize.json"), &["--order", "2"]),
    ("classical_limit_plane", "classical-limit", Some("plane_exponential.json"), &[]),
    ("gauge_plane", "gauge", Some("plane_gauge.json"), &["--order", "2"]),
    ("conformal_check_virasoro", "conformal-check", Some("virasoro.json"), &[]),
    ("conformal_check_bent", "conformal-check", Some("virasoro_bent.json"), &["--format", "text"]),
    ("conformal_d2_virasoro", "conformal-d2", Some("virasoro.json"), &["--lambda-cap", "12"]),
    ("conformal_d2_current", "conformal-d2", Some("current_solvable.json"), &["--lambda-cap", "12"]),
    ("partitions_3", "partitions", None, &["--arity", "3"]),
    ("partitions_5_text", "partitions", None, &["--arity", "5", "--format", "text"]),
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn run_cli(args: &[String], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operad-deform"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .output()
        .expect("binary runs")
}

pub fn case_args(verb: &str, input: Option<&str>, flags: &[&str]) -> Vec<String> {
    let mut args = vec![verb.to_string()];
    if let Some(i) = input {
        args.push(fixtures().join("inputs").join(i).display().to_string());
    }
    args.extend(flags.iter().map(|s| s.to_string()));
    args
}
