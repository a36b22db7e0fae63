use std::fs;
use std::process::{Command, Output};

use distance_games::format::parse_graph;

fn distgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distgame")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k2.graph");
    let f = file.to_str().unwrap();
    let o = distgame(&["gen", "--kind", "path", "--n", "2", "--ruleset", "D=1 S=", "--out", f]);
    assert!(o.status.success());
    let o = distgame(&["solve", "--in", f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("outcome FirstWins\n"), "{text}");
    assert!(text.contains("left wins_first=true best=v0"));
}

#[test]
fn random_kinds_need_a_seed() {
    let o = distgame(&["gen", "--kind", "gnp", "--n", "5", "--prob", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let a = stdout(&distgame(&["gen", "--kind", "bipartite", "--n", "3", "--q", "2", "--prob", "0.5", "--seed", "4"]));
    let b = stdout(&distgame(&["gen", "--kind", "bipartite", "--n", "3", "--q", "2", "--prob", "0.5", "--seed", "4"]));
    assert_eq!(a, b);
    assert!(a.contains("variant bigraph"));
}

#[test]
fn reduce_writes_graph_and_mapping() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("p3.graph");
    fs::write(&src, "ruleset D=1 S=\nvertex a\nvertex b\nvertex c\nedge a b\nedge b c\n").unwrap();
    let out = dir.path().join("out.graph");
    let o = distgame(&[
        "reduce", "--from", "snort", "--to", "D=1,2,3 S=1", "--in", src.to_str().unwrap(), "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let target = parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(target.ruleset.to_string(), "D=1,2,3 S=1");
    let map = fs::read_to_string(dir.path().join("out.graph.map")).unwrap();
    assert_eq!(map, "a -> a\nb -> b\nc -> c\n");

    let o = distgame(&["reduce", "--from", "col", "--to", "D=1,2,3 S=1", "--in", src.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn window_override_is_explicit() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("xyz.graph");
    fs::write(
        &src,
        "ruleset D=1 S=1\nvariant bigraph\nvertex x owner=L\nvertex y owner=R\nvertex z owner=L\nedge x y\nedge y z\n",
    )
    .unwrap();
    let s = src.to_str().unwrap();
    let o = distgame(&["reduce", "--from", "bgnk", "--to", "D=1,2 S=1,2,3,4", "--in", s]);
    assert_eq!(o.status.code(), Some(2));
    let o = distgame(&["reduce", "--from", "bgnk", "--to", "D=1,2 S=1,2,3,4", "--in", s, "--allow-out-of-range"]);
    assert!(o.status.success());
}

#[test]
fn gadget_check_records() {
    let o = distgame(&["gadget", "--r", "4", "--check", "D=1,2,3,4 S=1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS gadget")).count(), 4);
    let o = distgame(&["gadget", "--r", "4", "--check", "D=1 S="]);
    assert_eq!(o.status.code(), Some(2));
    let o = distgame(&["gadget", "--r", "2", "--t", "3"]);
    let g = parse_graph(&stdout(&o)).unwrap();
    assert_eq!(g.graph.vertex_count(), 15);
}

#[test]
fn verify_exit_codes() {
    let o = distgame(&["verify", "--reduction", "snort-family", "--corpus", "exhaustive:3", "--params", "n=2,3", "S=empty|1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS") || l.starts_with("SUMMARY")));
    let o = distgame(&["verify", "--reduction", "bgnk-window", "--corpus", "exhaustive:2", "--params", "D=1,2", "k=4", "override=true"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL "));
    let o = distgame(&["verify", "--reduction", "bgnk-window", "--corpus", "exhaustive:2", "--params", "D=1,2", "k=4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = distgame(&["verify", "--reduction", "snort-family", "--corpus", "exhaustive:9", "--params", "n=2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = distgame(&["verify", "--reduction", "snort-family", "--corpus", "exhaustive:2", "--params", "n=2", "--format", "kv"]);
    assert!(stdout(&o).lines().next().unwrap().contains('='));
}

#[test]
fn dot_highlights_gadgets() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("f.graph");
    let o = distgame(&["gadget", "--r", "1", "--out", g.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&distgame(&["dot", "--in", g.to_str().unwrap(), "--highlight", "gadgets"]));
    assert!(text.starts_with("graph {"));
    assert_eq!(text.matches("dashed").count(), 3);
    assert_eq!(text.matches(" -- ").count(), 2);
}

#[test]
fn bad_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.graph");
    fs::write(&g, "vertex a\nedge a b\n").unwrap();
    let o = distgame(&["solve", "--in", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = distgame(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
