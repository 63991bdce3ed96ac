use std::process::{Command, Output};

fn tropid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn check_exit_codes() {
    let yes = tropid(&["check", "abbaababba", "abbabaabba"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("identity:"));

    let no = tropid(&["check", "abbaababba", "abbabaabba", "--n", "3"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("not an identity:"));

    let usage = tropid(&["check", "abba"]);
    assert_eq!(usage.status.code(), Some(2));

    let bad_word = tropid(&["check", "ab!a", "abab"]);
    assert_eq!(bad_word.status.code(), Some(2));
}

#[test]
fn minmax_json_matches_example() {
    let out = tropid(&["minmax", "baabbaabbabaabaaababaaba", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["min"], "baababababbaaabaababaaba");
    assert_eq!(v["max"], "baabbabababaabaabaabaaba");
    assert_eq!(v["size"], "32");
}

#[test]
fn class_lists_the_adjan_twin() {
    let out = tropid(&["class", "abbaababba", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let members: Vec<&str> = v["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert_eq!(members, ["abbaababba", "abbabaabba"]);
}

#[test]
fn enumerate_csv_counts_classes() {
    let out = tropid(&["enumerate", "--content", "5,5", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("min,max,size"));
    let rows: Vec<&str> = lines.collect();
    // C(10,5) = 252 words: 244 isoterms plus the four twin classes
    assert_eq!(rows.len(), 248);
    assert_eq!(rows.iter().filter(|r| r.ends_with(",2")).count(), 4);
    assert_eq!(rows.iter().filter(|r| r.ends_with(",1")).count(), 244);
}

#[test]
fn shortest_finds_nothing_below_ten() {
    let out = tropid(&["shortest", "--length", "8", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["identities"].as_array().unwrap().len(), 0);
}

#[test]
fn stats_isolated_is_csv_with_header() {
    let out = tropid(&[
        "stats", "isolated", "--content", "4,4", "--samples", "50", "--seed", "1",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("experiment,param,estimate,ci_low,ci_high,samples,seed")
    );
    let row = lines.next().expect("one data row");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "isolated");
    assert_eq!(fields[1], "8");
    // every word of W(4,4) is an isoterm
    assert_eq!(fields[2].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn plot_emits_svg() {
    let dir = std::env::temp_dir().join("tropid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("plot.svg");
    let out = tropid(&[
        "plot",
        "abbaababba",
        "abbabaabba",
        "--boxes",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = std::fs::read_to_string(&path).unwrap();
    assert!(doc.starts_with("<svg"));
    assert!(doc.contains("<polyline"));
    assert!(doc.contains("stroke=\"red\""));
    assert!(doc.contains("<rect"));
    std::fs::remove_file(&path).ok();
}
