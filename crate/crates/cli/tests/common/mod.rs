#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Runs the binary from the fixture directory; returns stdout and exit code.
pub fn run(args: &[&str]) -> (String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_gameforge"))
        .current_dir(fixtures())
        .env_remove("GAMEFORGE_LIMITS")
        .args(args)
        .output()
        .expect("failed to spawn gameforge");
    (
        String::from_utf8(output.stdout).expect("utf-8 output"),
        output.status.code().unwrap_or(-1),
    )
}

/// Transcript name and arguments for every worked example.
pub const CASES: &[(&str, &[&str])] = &[
    ("info_pd_tabular", &["info", "pd_tabular.game"]),
    ("payoff_pd_tabular", &["payoff", "pd_tabular.game", "--profile", "d,c", "--player", "2"]),
    ("payoff_pd_tabular_mixed", &["payoff", "pd_tabular.game", "--mixed", "pd_tabular.mix"]),
    ("payoff_three_player", &["payoff", "three_player_tabular.game", "--profile", "a_2,b_1,c_2"]),
    ("iso_check_example", &["iso", "iso_a.game", "iso_b.game", "--bijection", "iso_a_to_iso_b.bij"]),
    ("iso_search_example", &["iso", "iso_a.game", "iso_b.game", "--all"]),
    ("iso_pd_all", &["iso", "--mode", "strict", "pd_a.game", "pd_b.game", "--all"]),
    ("iso_pd_ordinal", &["iso", "--mode", "ordinal", "pd_tabular.game", "pd_a.game", "--all"]),
    ("iso_pd_cardinal", &["iso", "--mode", "cardinal", "pd_a.game", "pd_b.game"]),
    ("iso_pd_identity", &["iso", "pd_a.game", "pd_a.game", "--bijection", "pd_a_identity.bij"]),
    ("iso_shape_mismatch", &["iso", "--mode", "ordinal", "pd_a.game", "rps.game"]),
    ("aut_pd", &["aut", "pd_a.game"]),
    ("aut_mp", &["aut", "mp.game"]),
    ("aut_non_fully_standard_3p", &["aut", "non_fully_standard_3p.game"]),
    ("classify_fully_standard_3p", &["classify", "fully_standard_3p.game"]),
    ("classify_non_fully_standard_3p", &["classify", "non_fully_standard_3p.game"]),
    ("classify_4p_a", &["classify", "non_fully_non_standard_4p_a.game"]),
    ("classify_4p_b", &["classify", "non_fully_non_standard_4p_b.game"]),
    ("classify_fully_non_standard_4p", &["classify", "fully_non_standard_4p.game"]),
    ("classify_mp", &["classify", "mp.game"]),
    ("classify_cheng", &["classify", "cheng_counterexample_3p.game"]),
    ("classify_vnm_2p", &["classify", "vnm_2p.game"]),
    ("classify_vnm_3p", &["classify", "vnm_3p.game"]),
    ("classify_pd_b", &["classify", "pd_b.game"]),
    ("classify_iso_a", &["classify", "iso_a.game"]),
    ("pure_nash_pd", &["pure-nash", "pd_a.game"]),
    ("pure_nash_rps", &["pure-nash", "rps.game"]),
    ("pure_nash_cheng", &["pure-nash", "cheng_counterexample_3p.game"]),
    ("best_response_pd", &["best-response", "pd_a.game", "--profile", "d,c"]),
    ("best_response_mp_uniform", &["best-response", "mp.game", "--mixed", "mp_uniform.mix"]),
    ("dominance_pd", &["dominance", "pd_a.game"]),
    ("verify_ne_pd", &["verify-ne", "pd_a.game", "--profile", "c,c"]),
    ("verify_ne_pd_fails", &["verify-ne", "pd_a.game", "--profile", "d,d"]),
    ("verify_ne_mp_uniform", &["verify-ne", "mp.game", "--mixed", "mp_uniform.mix"]),
    ("construct_standard_2x2", &["construct", "--generators", "standard_2x2.gen", "--values", "1,2,3,4"]),
    ("construct_diagonal_s3", &["construct", "--generators", "diagonal_s3.gen", "--seed", "7"]),
    ("census_2x2", &["census-2x2"]),
];

/// Text and JSON runs of one case, as stored in its golden file.
pub fn transcript(args: &[&str]) -> String {
    let mut out = String::new();
    let (text, code) = run(args);
    out.push_str(&format!("$ gameforge {}\n{text}[exit {code}]\n", args.join(" ")));
    let mut json_args = vec!["--format", "json"];
    json_args.extend_from_slice(args);
    let (json, code) = run(&json_args);
    out.push_str(&format!("$ gameforge {}\n{json}[exit {code}]\n", json_args.join(" ")));
    out
}
