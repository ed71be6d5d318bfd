use cliffordt::cli::run;
use cliffordt::GroupTable;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cliffordt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn normalize_uses_canonical_tail() {
    let g = GroupTable::clifford();
    let tail = g.display_word(g.id_of_word("HPHPPPH").unwrap());
    let (code, out, _) = cli(&["normalize", "HPPHT"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("T|{tail}\n"));
}

#[test]
fn equivalence_verdicts() {
    assert_eq!(cli(&["equiv", "HHP", "PHH"]), (0, "equivalent\n".into(), String::new()));
    assert_eq!(cli(&["equiv", "T", "P"]).1, "inequivalent\n");
    assert_eq!(cli(&["equiv", "TT", "P"]).1, "equivalent\n");
}

#[test]
fn counts() {
    assert_eq!(cli(&["count", "2"]), (0, "1920\n".into(), String::new()));
    assert_eq!(cli(&["count", "3", "--exact"]).1, "2304\n");
    assert_eq!(cli(&["count", "3", "--oracle"]).1, "4224\noracle 4224\n");
    assert_eq!(cli(&["count", "60"]).1, "664082786653543857792\n");
    let (code, _, err) = cli(&["count", "5", "--oracle"]);
    assert_eq!(code, 1);
    assert!(err.contains('5'), "{err}");
}

#[test]
fn parse_errors_exit_with_one() {
    let (code, out, err) = cli(&["normalize", "HXT"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("position 1"), "{err}");
    assert_eq!(cli(&["tcount", "hpt"]).0, 1);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(cli(&["frobnicate"]).0, 1);
    assert_eq!(cli(&["normalize"]).0, 1);
    assert_eq!(cli(&["count", "2", "--fast"]).0, 1);
    assert_eq!(cli(&[]).0, 1);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("normalize"));
}

#[test]
fn tcount_and_matrix() {
    assert_eq!(cli(&["tcount", "TTTTTTTT"]).1, "0\n");
    assert_eq!(cli(&["tcount", "T H T"]).1, "2\n");
    assert_eq!(
        cli(&["matrix", "H"]).1,
        "{\"den_exp\":1,\"entries\":[[[1,0,0,0],[1,0,0,0]],[[1,0,0,0],[-1,0,0,0]]]}\n"
    );
}

#[test]
fn stab_trace_lines() {
    let (code, out, _) = cli(&["stab", "HTHT"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("ℓ=0 x=(0,0) y=(0,0) z=(1,0)"), "{out}");
    assert!(lines[2].starts_with("ℓ=2 ") && lines[2].ends_with("class=T2"), "{out}");
    assert_eq!(lines[3], "final class=T2");
}

#[test]
fn enumerate_jsonl() {
    let (code, out, _) = cli(&["enumerate", "1", "--format", "jsonl"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 768);
    let v: serde_json::Value = serde_json::from_str(lines[192]).unwrap();
    assert_eq!(v["blocks"], serde_json::json!(["T"]));
    assert_eq!(v["tcount"], 1);
    assert!(lines[0].starts_with("{\"blocks\":[],\"clifford\":\"\",\"tcount\":0,\"matrix\":"));
    let last: serde_json::Value = serde_json::from_str(lines[767]).unwrap();
    assert_eq!(last["blocks"], serde_json::json!(["PHT"]));
}

#[test]
fn output_is_deterministic() {
    for args in [&["enumerate", "2"][..], &["tables", "--dump-group"], &["tables", "--emit-rules"]] {
        assert_eq!(cli(args), cli(args));
    }
}

#[test]
fn tables() {
    let (code, out, _) = cli(&["tables", "--dump-group"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 192);
    assert!(out.starts_with("0\tI\tS_I\t{\"den_exp\":0"));
    let (_, rules, _) = cli(&["tables", "--emit-rules"]);
    assert_eq!(rules.lines().count(), 195);
}

#[test]
fn check_appendix_exit_codes() {
    let dir = std::env::temp_dir().join(format!("cliffordt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, cliffordt::rules::APPENDIX_FIXTURE).unwrap();
    let (code, out, _) = cli(&["tables", "--check-appendix", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("192 rows, 192 distinct W0, 0 mismatches\n"));

    let bad = dir.join("bad.txt");
    let corrupted = cliffordt::rules::APPENDIX_FIXTURE.replace("HPPHT = THPHPPPH", "HPPHT = THPHPPP");
    std::fs::write(&bad, corrupted).unwrap();
    let (code, out, err) = cli(&["tables", "--check-appendix", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("HPPHT = THPHPPP"), "{out}");
    assert!(err.starts_with("verification failed"));

    let (code, _, _) = cli(&["tables", "--check-appendix", dir.join("missing.txt").to_str().unwrap()]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_small_budget() {
    let (code, out, _) = cli(&["verify", "--tmax", "3", "--oracle-max", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().all(|l| l.starts_with("ok")));
}
