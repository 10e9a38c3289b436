//! Golden end-to-end runs of the `homkit` binary. `HOMKIT_BLESS=1` rewrites the goldens.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

/// (golden name, args, expected exit code)
const CASES: &[(&str, &str, i32)] = &[
    ("check_aff2_lambda2", "check fixtures/aff2_lambda2.json", 0),
    ("check_aff2_lambda0", "check fixtures/aff2_lambda0.json", 0),
    ("check_heis3_twisted", "check fixtures/heis3_twisted.json", 0),
    ("check_sl2", "check fixtures/sl2.json", 0),
    ("check_abelian3_twisted", "check fixtures/abelian3_twisted.json", 0),
    ("check_broken_heis3", "check fixtures/broken_heis3.json", 1),
    ("check_sl2_bad_alpha", "check fixtures/sl2_bad_alpha.json", 1),
    ("check_broken_heis3_json", "--format json check fixtures/broken_heis3.json", 1),
    ("check_bad_skew", "check fixtures/bad_skew.json", 2),
    ("check_bad_rational", "check fixtures/bad_rational.json", 2),
    ("check_bad_json", "check fixtures/bad_json.json", 2),
    ("check_missing", "check fixtures/missing.json", 2),
    ("dgca_verify_sl2", "dgca verify fixtures/sl2.json", 0),
    ("dgca_verify_heis3", "--format json dgca verify fixtures/heis3.json", 0),
    ("dgca_verify_broken_heis3", "dgca verify fixtures/broken_heis3.json", 1),
    ("dgca_verify_sl2_bad_alpha", "dgca verify fixtures/sl2_bad_alpha.json", 1),
    ("dgca_roundtrip_aff2_lambda2", "dgca roundtrip fixtures/aff2_lambda2.json", 0),
    ("dgca_roundtrip_broken_heis3", "dgca roundtrip fixtures/broken_heis3.json", 1),
    ("rep_check_aff2_adjoint", "rep check fixtures/rep_aff2_adjoint.json", 0),
    ("rep_check_aff2_trivial", "rep check fixtures/rep_aff2_trivial.json --s-max 1 --k-max 2", 0),
    ("rep_check_heis3_bad", "rep check fixtures/rep_heis3_bad.json", 1),
    ("rep_check_heis3_singular", "--format json rep check fixtures/rep_heis3_singular.json", 0),
    ("cohomology_aff2_trivial", "cohomology fixtures/rep_aff2_trivial.json", 0),
    ("cohomology_aff2_adjoint", "cohomology fixtures/rep_aff2_adjoint.json --s 1 --k 1", 0),
    ("cohomology_bad_rep", "cohomology fixtures/rep_heis3_bad.json --k 1", 2),
    ("cohomology_bad_degree", "cohomology fixtures/rep_aff2_trivial.json --k 5", 2),
    ("omni_check_diag12", "omni check fixtures/omni_diag12.json", 0),
    ("omni_check_diag12_q", "omni check fixtures/omni_diag12.json --q -2 --trials 20", 0),
    ("omni_check_id3", "--seed 7 --format json omni check fixtures/omni_id3.json --q 1", 0),
    ("omni_check_singular", "omni check fixtures/omni_singular.json", 2),
    ("omni_dirac_graph_aff2", "omni dirac fixtures/omni_graph_aff2.json", 0),
    ("omni_dirac_vectors", "omni dirac fixtures/omni_vectors.json", 0),
    ("omni_dirac_nonisotropic", "omni dirac fixtures/omni_nonisotropic.json", 1),
    ("omni_graph_aff2", "omni graph fixtures/aff2_bilinear.json --beta [[1,0],[0,2]]", 0),
    ("omni_graph_heis3", "omni graph fixtures/heis3_beta2_bilinear.json", 0),
    ("omni_graph_bad_beta", "omni graph fixtures/aff2_bilinear.json --beta [[1,0,0]]", 2),
    ("omni_thm1_aff2", "omni thm1 fixtures/aff2_bilinear.json --beta [[1,0],[0,2]]", 0),
    ("omni_thm1_nonskew", "omni thm1 fixtures/nonskew_bilinear.json", 0),
    ("omni_thm1_nonmorphic", "omni thm1 fixtures/heis3_beta2_bilinear.json", 0),
    ("omni_thm1_broken_heis3", "--format json omni thm1 fixtures/broken_heis3_bilinear.json", 0),
    ("homlie2_check_m1", "homlie2 check fixtures/homlie2_m1.json", 0),
    ("homlie2_check_diag12", "homlie2 check fixtures/homlie2_diag12.json", 0),
    ("homlie2_check_m3", "homlie2 check fixtures/homlie2_m3.json", 0),
    ("homlie2_check_m3_sampled", "homlie2 check fixtures/homlie2_m3.json --samples 500", 0),
    ("homlie2_check_bad_phi1", "homlie2 check fixtures/homlie2_bad_phi1.json", 1),
    ("homlie2_from_omni_m1", "homlie2 from-omni --dim 1 --beta [[3]]", 0),
    ("homlie2_from_omni_m2", "homlie2 from-omni --dim 2 --beta [[1,0],[0,2]]", 0),
    ("homlie2_from_omni_mismatch", "homlie2 from-omni --dim 2 --beta [[3]]", 2),
    ("homlie2_from_omni_singular", "homlie2 from-omni --dim 2 --beta [[1,2],[2,4]]", 2),
    ("catalog_list", "catalog list", 0),
    ("catalog_emit_sl2", "catalog emit sl2", 0),
    ("catalog_emit_unknown", "catalog emit nope", 2),
    ("usage_unknown_subcommand", "bogus", 2),
    ("usage_missing_file", "check", 2),
];

fn run_case(args: &str) -> (String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_homkit"))
        .args(args.split_whitespace())
        .current_dir(root())
        .env("HOMKIT_THREADS", "2")
        .output()
        .unwrap();
    let mut text = format!("$ homkit {args}\n");
    text.push_str(&String::from_utf8(output.stdout).unwrap());
    let stderr = String::from_utf8(output.stderr).unwrap();
    if !stderr.is_empty() {
        text.push_str("--- stderr\n");
        text.push_str(&stderr);
    }
    let code = output.status.code().unwrap();
    text.push_str(&format!("--- exit {code}\n"));
    (text, code)
}

#[test]
fn goldens() {
    let dir = root().join("fixtures/golden");
    let bless = std::env::var_os("HOMKIT_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args, want_code) in CASES {
        let (text, code) = run_case(args);
        if code != *want_code {
            failures.push(format!("{name}: exit {code}, expected {want_code}"));
        }
        let path = dir.join(format!("{name}.txt"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else {
            match std::fs::read_to_string(&path) {
                Ok(golden) if golden == text => {}
                Ok(golden) => failures.push(format!("{name}: output differs\n--- golden\n{golden}--- actual\n{text}")),
                Err(_) => failures.push(format!("{name}: missing golden {}", path.display())),
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_golden_has_a_case() {
    let dir = root().join("fixtures/golden");
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let stem = name.trim_end_matches(".txt");
        assert!(CASES.iter().any(|(n, _, _)| *n == stem), "stale golden {name}");
    }
}

#[test]
fn every_fixture_is_used() {
    let dir = root().join("fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".json") {
            assert!(CASES.iter().any(|(_, a, _)| a.contains(&name)), "fixture {name} has no case");
        }
    }
}

#[test]
fn out_files_match_stdout() {
    let tmp = std::env::temp_dir().join(format!("homkit-e2e-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let graph = tmp.join("graph.json");
    let pairs = [
        (
            format!("omni graph fixtures/aff2_bilinear.json --beta [[1,0],[0,2]] --out {}", graph.display()),
            "omni graph fixtures/aff2_bilinear.json --beta [[1,0],[0,2]]",
            graph.clone(),
        ),
        (
            format!("homlie2 from-omni --dim 2 --beta [[1,0],[0,2]] --out {}", tmp.join("h2.json").display()),
            "homlie2 from-omni --dim 2 --beta [[1,0],[0,2]]",
            tmp.join("h2.json"),
        ),
        (
            format!("catalog emit heis3 --out {}", tmp.join("heis3.json").display()),
            "catalog emit heis3",
            tmp.join("heis3.json"),
        ),
    ];
    for (with_out, plain, path) in pairs {
        let (text, code) = run_case(&with_out);
        assert_eq!(code, 0, "{text}");
        let written = std::fs::read_to_string(&path).unwrap();
        let stdout = Command::new(env!("CARGO_BIN_EXE_homkit"))
            .args(plain.split_whitespace())
            .current_dir(root())
            .output()
            .unwrap()
            .stdout;
        assert_eq!(written, String::from_utf8(stdout).unwrap());
    }
    // The emitted graph is a Dirac structure.
    let (text, code) = run_case(&format!("omni dirac {}", graph.display()));
    assert_eq!(code, 0, "{text}");
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn committed_fixtures_match_generators() {
    let cases = [
        ("catalog emit aff2_lambda2", "aff2_lambda2.json"),
        ("catalog emit sl2", "sl2.json"),
        ("omni graph fixtures/aff2_bilinear.json --beta [[1,0],[0,2]]", "omni_graph_aff2.json"),
        ("homlie2 from-omni --dim 2 --beta [[1,0],[0,2]]", "homlie2_diag12.json"),
        ("homlie2 from-omni --dim 3 --beta [[1,1,0],[0,2,0],[0,0,3]]", "homlie2_m3.json"),
    ];
    for (args, file) in cases {
        let stdout = Command::new(env!("CARGO_BIN_EXE_homkit"))
            .args(args.split_whitespace())
            .current_dir(root())
            .output()
            .unwrap()
            .stdout;
        let fixture = std::fs::read_to_string(root().join("fixtures").join(file)).unwrap();
        assert_eq!(String::from_utf8(stdout).unwrap(), fixture, "{file}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    for args in ["--help", "--version", "omni --help"] {
        let (text, code) = run_case(args);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("homkit"));
    }
}

#[test]
fn seed_changes_nothing_on_passing_checks() {
    for seed in [0, 1, 99] {
        let (text, code) = run_case(&format!("--seed {seed} omni check fixtures/omni_diag12.json --trials 10"));
        assert_eq!(code, 0, "{text}");
        assert!(text.contains(&format!("info seed: {seed}")));
    }
}

fn reserialize(text: &str) -> homkit::Result<String> {
    use homkit::io;
    if text.contains("\"dim1\"") {
        Ok(io::serialize_homlie2(&io::parse_homlie2(text)?))
    } else if text.contains("\"rho\"") {
        Ok(io::serialize_representation(&io::parse_representation(text)?))
    } else if text.contains("\"basis\"") {
        Ok(io::serialize_omni_subspace(&io::parse_omni_subspace(text)?))
    } else if text.contains("\"map\"") {
        Ok(io::serialize_bilinear(&io::parse_bilinear(text)?))
    } else if text.contains("\"bracket\"") {
        Ok(io::serialize_algebra(&io::parse_algebra(text)?))
    } else {
        Ok(io::serialize_omni_space(&io::parse_omni_space(text)?))
    }
}

#[test]
fn fixtures_are_canonical() {
    let bless = std::env::var_os("HOMKIT_BLESS").is_some();
    let dir = root().join("fixtures");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    for name in names {
        let text = std::fs::read_to_string(dir.join(&name)).unwrap();
        match reserialize(&text) {
            Ok(canonical) if bless => std::fs::write(dir.join(&name), canonical).unwrap(),
            Ok(canonical) => assert_eq!(canonical, text, "{name} is not in canonical form"),
            Err(e) => assert!(name.starts_with("bad_") || name == "omni_singular.json", "{name}: {e}"),
        }
    }
}
