use std::path::PathBuf;
use std::process::{Command, Output};

use liftspace_cli::config::{parse_config, render};
use liftspace_cli::report::parse_machine;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn corpus() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "conf"))
        .collect();
    files.sort();
    files
}

fn liftspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liftspace")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_on(file: &str, args: &[&str]) -> Output {
    let path = config(file);
    let mut all = args.to_vec();
    all.extend(["--config", path.to_str().unwrap()]);
    liftspace(&all)
}

#[test]
fn lift_on_the_dyadic_tower() {
    let o = run_on("dyadic.conf", &["lift", "--word", "a a", "--start", "0", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(0, 2, 2)\n");
    let o = run_on("dyadic.conf", &["lift", "--word", "a'", "--start", "5", "--depth", "3", "--format", "machine"]);
    assert_eq!(stdout(&o), "lift\t(0, 0, 4)\n");
    let o = run_on("dyadic.conf", &["lift", "--word", "a^3", "--level", "2"]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn equalizer_on_the_s3_cover() {
    let o = run_on("wedge_s3.conf", &["actions", "compare", "--word", "a", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().find(|l| l.starts_with("equalizer\t")).unwrap().to_string();
    assert_eq!(line.split('\t').nth(1).unwrap().split_whitespace().count(), 2);
    // the irregular cover has no left action
    let o = run_on("wedge_s3_irregular.conf", &["actions", "compare", "--word", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn theta_prints_the_tuple() {
    let o = run_on("dyadic.conf", &["tower", "theta", "--word", "a^5", "--depth", "4"]);
    assert_eq!(stdout(&o), "(1, 1, 5, 5)\n");
}

#[test]
fn dyadic_suite_passes_at_depth_4() {
    let o = run_on("dyadic.conf", &["suite", "--depth", "4", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let report = parse_machine(&stdout(&o)).unwrap();
    assert!(report.all_passed());
    assert!(report.entry("borel/4-4").is_some());
}

#[test]
fn exit_code_tracks_failures() {
    for path in corpus() {
        let p = path.to_str().unwrap();
        let o = liftspace(&["suite", "--config", p, "--format", "machine"]);
        let report = parse_machine(&stdout(&o)).unwrap();
        assert_eq!(o.status.code(), Some(if report.all_passed() { 0 } else { 1 }), "{p}");

        // both renderings list the same checks
        let human = stdout(&liftspace(&["suite", "--config", p]));
        let names: Vec<&str> = human.lines().skip(1).filter_map(|l| l.split_whitespace().nth(1)).collect();
        let expected: Vec<&str> = report.entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(&names[..names.len() - 1], &expected[..], "{p}");
    }
}

#[test]
fn tower_verify_and_borel_check() {
    let o = run_on("wedge_tower.conf", &["tower", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run_on("wedge_tower.conf", &["borel", "check", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_machine(&stdout(&o)).unwrap().entries.iter().filter(|e| e.name.starts_with("borel/")).count(), 6);
    let o = run_on("nondense.conf", &["tower", "verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  dense-leaf/level-2"));
}

#[test]
fn dot_is_stable() {
    for (file, nodes, edges) in
        [("circle_z2.conf", 2, 2), ("wedge_klein.conf", 4, 8), ("wedge_s3_irregular.conf", 3, 6)]
    {
        let first = stdout(&run_on(file, &["cover", "dot"]));
        assert_eq!(first, stdout(&run_on(file, &["cover", "dot"])));
        assert!(first.starts_with("graph cover {\n"));
        assert_eq!(
            first.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count(),
            nodes,
            "{file}"
        );
        assert_eq!(first.lines().filter(|l| l.contains(" -- ")).count(), edges, "{file}");
    }
    let level = stdout(&run_on("wedge_tower.conf", &["cover", "dot", "--level", "1"]));
    assert_eq!(level, stdout(&run_on("wedge_klein.conf", &["cover", "dot"])));
}

#[test]
fn cover_build_summaries() {
    let o = run_on("wedge_s3_irregular.conf", &["cover", "build", "--format", "machine"]);
    let text = stdout(&o);
    assert!(text.contains("sheets\t3\n"));
    assert!(text.contains("regular\tno\n"));
    assert!(text.contains("deck group order\t1\n"));
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(liftspace(&["validate"]).status.code(), Some(2));
    assert_eq!(liftspace(&["validate", "--config", "/nonexistent.conf"]).status.code(), Some(2));
    assert_eq!(run_on("wedge_s3.conf", &["lift", "--word", "c"]).status.code(), Some(2));
    assert_eq!(run_on("wedge_s3.conf", &["lift", "--word", "a", "--start", "6"]).status.code(), Some(2));
    assert_eq!(run_on("dyadic.conf", &["suite", "--depth", "9"]).status.code(), Some(2));
    assert_eq!(run_on("wedge_s3.conf", &["tower", "theta", "--word", "a"]).status.code(), Some(2));
    assert_eq!(liftspace(&["frobnicate"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("liftspace-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "[graph]\nvertices = 1\nedges = 0-0\n[cover]\ngroup = H\nimages = 1\n").unwrap();
    let o = liftspace(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown reference `H`"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_round_trips() {
    for path in corpus() {
        let doc = parse_config(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse_config(&render(&doc)).unwrap(), doc, "{}", path.display());
    }
}
