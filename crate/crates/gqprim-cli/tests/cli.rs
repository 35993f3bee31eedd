use serde_json::Value;
use std::process::{Command, Output};

fn gqprim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqprim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn solve_reports_the_alt7_parameters() {
    let out = gqprim(&["solve", "--x", "2520"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["s"], "11");
    assert_eq!(rows[0]["t"], "19");
    assert_eq!(rows[0]["coprime"], true);
    assert_eq!(rows[0]["complete"], true);
}

#[test]
fn solve_and_scan_agree_on_a_perfect_square() {
    let fast = stdout_json(&gqprim(&["solve", "--x", "129600"]));
    let slow = stdout_json(&gqprim(&["solve", "--x", "129600", "--scan"]));
    assert_eq!(fast, slow);
    assert_eq!(fast[0]["s"], "19");
    assert_eq!(fast[0]["t"], "341");
}

#[test]
fn scan_refuses_oversized_input() {
    let out = gqprim(&["solve", "--x", "10000000000", "--scan"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_subcommands_and_flags_are_usage_errors() {
    assert_eq!(gqprim(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(gqprim(&["solve", "--nonsense"]).status.code(), Some(3));
    assert_eq!(gqprim(&["solve"]).status.code(), Some(3));
}

#[test]
fn group_specs_parse_strictly() {
    let out = gqprim(&["order", "--group", "Spor:M11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["order"], "7920");

    let psl29 = stdout_json(&gqprim(&["order", "--group", "A:n=1,q=9"]));
    assert_eq!(psl29["group"], "PSL2(9)");
    assert_eq!(psl29["order"], "360");

    let psu34 = stdout_json(&gqprim(&["order", "--group", "A:n=2,q=4,eps=-"]));
    assert_eq!(psu34["group"], "PSU3(4)");

    assert_eq!(gqprim(&["order", "--group", "Tits"]).status.code(), Some(0));
    assert_eq!(gqprim(&["order", "--group", "2B2:q=8"]).status.code(), Some(0));

    for bad in [
        "Alt7",            // missing colon
        "Alt:x",           // not a degree
        "Spor:M99",        // not a sporadic group
        "A:n=1,q=9,zz=3",  // unknown key
        "A:n=1",           // missing q
        "D:n=4,q=2",       // D needs eps
        "A:n=1,q=6",       // not a prime power
        "Q:n=1,q=2",       // unknown family
    ] {
        let out = gqprim(&["order", "--group", bad]);
        assert_eq!(out.status.code(), Some(3), "{bad}");
        assert!(!out.stderr.is_empty(), "{bad} should explain itself");
    }
}

#[test]
fn table3_concludes_consistent_and_exits_zero() {
    let out = gqprim(&["table3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["conclusion"], "consistent-with-paper");
    let anchors: Vec<&str> = v["comparisons"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["anchor"].as_str().unwrap())
        .collect();
    assert!(anchors.contains(&"m11-r2-point-degree"));
}

#[test]
fn contradicted_scenarios_exit_one() {
    let sd = gqprim(&["sd-scenario", "--group", "Alt:5", "--k", "2", "--r", "3"]);
    assert_eq!(sd.status.code(), Some(1));
    assert_eq!(stdout_json(&sd)["conclusion"], "contradiction-found");

    let fx = gqprim(&["fixity-scenario", "--id", "m23-r3"]);
    assert_eq!(fx.status.code(), Some(1));
    let v = stdout_json(&fx);
    assert_eq!(v["conclusion"], "contradiction-found");
    let caps: Vec<&Value> = v["comparisons"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["anchor"] == "s0-w0-fixed-cap")
        .collect();
    assert_eq!(caps.len(), 1);
    assert_eq!(caps[0]["lhs"], "8128512000");
    assert_eq!(caps[0]["rhs"], "1625783040");
}

#[test]
fn fixity_scenario_list_names_every_row() {
    let out = gqprim(&["fixity-scenario", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 23);
    assert!(rows.iter().any(|r| r["id"] == "b-r3"));
    assert_eq!(gqprim(&["fixity-scenario", "--id", "nope"]).status.code(), Some(3));
}

#[test]
fn pds_surveys_every_alt6_candidate() {
    let out = gqprim(&["pds", "--group", "Alt:6", "--r", "2", "--s", "19", "--t", "341"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["candidates"], 680);
    assert_eq!(v["passes"], 0);
    assert_eq!(v["truncated"], false);
    assert_eq!(v["lambda"], 18);
    assert_eq!(v["mu"], 342);
}

#[test]
fn pds_gates_m11_behind_the_long_flag() {
    let out = gqprim(&["pds", "--group", "Spor:M11", "--r", "2", "--s", "89", "--t", "7831"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["conclusion"], "inconclusive");
}

#[test]
fn partition_rejects_the_small_targets() {
    let out = gqprim(&["partition", "--group", "Alt:7", "--target", "220"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["reachable"], false);
    assert_eq!(v["class-sizes"], 8);

    let v = stdout_json(&gqprim(&[
        "partition", "--group", "Alt:6", "--r", "2", "--target", "6498", "--enumerate",
    ]));
    assert_eq!(v["reachable"], true);
    assert_eq!(v["subsets"], 680);
    assert_eq!(v["truncated"], false);
}

#[test]
fn bounds_sweep_finds_the_two_small_exceptions() {
    let out = gqprim(&["bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let exceptions: Vec<(u64, u64)> = v["four-fifths-exceptions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["s"].as_u64().unwrap(), e["t"].as_u64().unwrap()))
        .collect();
    assert_eq!(exceptions, vec![(2, 2), (2, 4)]);

    let single = stdout_json(&gqprim(&["bounds", "--s", "3", "--t", "5"]));
    assert_eq!(single["branch"], "main");
    assert_eq!(single["s-plus-2"]["seven-ninths-strict"], true);
}

#[test]
fn geometry_verifies_and_profiles_the_small_quadrangles() {
    let w = stdout_json(&gqprim(&["geometry", "--build", "w32", "--q", "2", "--aut"]));
    assert_eq!(w["points"], 15);
    assert_eq!(w["s"], 2);
    assert_eq!(w["t"], 2);
    assert_eq!(w["aut-order"], "720");

    let q = stdout_json(&gqprim(&["fixity-profile", "--build", "Qminus5", "--q", "2"]));
    assert_eq!(q["aut-order"], "51840");
    assert_eq!(q["fixity-profile"]["15"], 36);
    assert_eq!(q["fixity-profile"]["27"], 1);
}

#[test]
fn geometry_census_matches_the_substructure_taxonomy() {
    let w = stdout_json(&gqprim(&["geometry", "--build", "w32", "--q", "2", "--census"]));
    assert_eq!(w["census"]["empty"], 304);
    assert_eq!(w["census"]["on-one-line"], 360);
    assert_eq!(w["census"]["star-of-point"], 55);
}

#[test]
fn replicate_claims_holds_on_small_fields() {
    let out = gqprim(&["replicate-claims", "--q-max", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["instances-checked"].as_u64().unwrap() > 0);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn psl2_sweep_stays_empty() {
    let out = gqprim(&["psl2-sweep", "--q-max", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["conclusion"], "consistent-with-paper");
}

#[test]
fn csv_format_renders_report_comparisons_as_a_table() {
    let out = gqprim(&["--format", "csv", "sd-scenario", "--group", "Alt:5", "--k", "2", "--r", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("anchor,lhs,relation,rhs"));
    assert!(lines.next().unwrap().starts_with("fifth-power-threshold,"));
}

#[test]
fn text_format_renders_key_value_lines() {
    let out = gqprim(&["--format", "text", "order", "--group", "Alt:7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("group: Alt7"));
    assert!(text.contains("order: 2520"));
}

#[test]
fn output_is_byte_identical_across_parallelism_modes() {
    let seq = gqprim(&["--threads", "1", "psl2-sweep", "--q-max", "300"]);
    let par = gqprim(&["--threads", "4", "psl2-sweep", "--q-max", "300"]);
    assert_eq!(seq.status.code(), par.status.code());
    assert_eq!(seq.stdout, par.stdout);
}
