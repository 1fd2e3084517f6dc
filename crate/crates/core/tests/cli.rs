//! End-to-end runs of the `wordlen` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn wordlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordlen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data lines of a CSV written by the tool (comment and header skipped).
fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

/// A deterministic text of exactly `words` words over lengths 1..=9.
fn text(words: usize, salt: usize) -> String {
    (0..words)
        .map(|i| "abcdefghi"[..(i * 7 + salt + i / 5) % 9 + 1].to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes `<lang>/<genre>/doc.txt` files and a JSON manifest listing them.
fn corpus(docs: &[(&str, &str, usize)]) -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let mut entries = Vec::new();
    for (i, (lang, genre, words)) in docs.iter().enumerate() {
        let rel = format!("{lang}/{genre}/doc{i}.txt");
        let p = dir.path().join(&rel);
        std::fs::create_dir_all(p.parent().unwrap()).unwrap();
        std::fs::write(&p, text(*words, i)).unwrap();
        entries.push(serde_json::json!({"path": rel, "language": lang, "genre": genre}));
    }
    let manifest = dir.path().join("manifest.json");
    std::fs::write(&manifest, serde_json::to_string(&entries).unwrap()).unwrap();
    (dir, manifest)
}

#[test]
fn ingest_writes_series_per_category() {
    let (dir, manifest) = corpus(&[("en", "news", 30), ("en", "news", 20), ("el", "sports", 10)]);
    let out = dir.path().join("series");
    let o = wordlen(&["ingest", "--manifest", s(&manifest), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["en_news.wls", "en_news.json", "el_sports.wls", "el_sports.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let sidecar: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("en_news.json")).unwrap()).unwrap();
    assert_eq!(sidecar["length"], 50);
    assert_eq!(sidecar["documents"][1]["start"], 30);
    assert_eq!(sidecar["config_hash"].as_str().unwrap().len(), 64);

    let text_out = dir.path().join("text");
    let o = wordlen(&["ingest", "--corpus-root", s(dir.path()), "--out", s(&text_out), "--series-format", "text"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lines = std::fs::read_to_string(text_out.join("el_sports.txt")).unwrap();
    assert_eq!(lines.lines().count(), 10);
}

#[test]
fn ingest_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");

    let missing = dir.path().join("m.json");
    std::fs::write(&missing, r#"[{"path": "gone.txt", "language": "en", "genre": "news"}]"#).unwrap();
    let o = wordlen(&["ingest", "--manifest", s(&missing), "--out", s(&out)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("gone.txt"), "{}", stderr(&o));

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let o = wordlen(&["ingest", "--manifest", s(&empty), "--out", s(&out)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("no documents"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, b"caf\xe9 au lait").unwrap();
    std::fs::write(dir.path().join("ok.txt"), "fine text").unwrap();
    let m = dir.path().join("mixed.csv");
    std::fs::write(&m, "path,language,genre\nbad.txt,en,news\nok.txt,en,news\nalso_gone.txt,en,news\n").unwrap();
    let o = wordlen(&["ingest", "--manifest", s(&m), "--out", s(&out)]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("bad.txt") && err.contains("byte offset 3"), "{err}");
    assert!(err.contains("also_gone.txt"), "{err}");

    let malformed = dir.path().join("mal.json");
    std::fs::write(&malformed, "{not json").unwrap();
    assert_eq!(code(&wordlen(&["ingest", "--manifest", s(&malformed), "--out", s(&out)])), 2);
    assert_eq!(code(&wordlen(&["ingest", "--out", s(&out)])), 2);
    assert_eq!(code(&wordlen(&["frobnicate"])), 2);
}

#[test]
fn entropy_outputs() {
    let (dir, manifest) = corpus(&[("en", "news", 5000), ("en", "literature", 3200)]);
    let series = dir.path().join("series");
    assert_eq!(code(&wordlen(&["ingest", "--manifest", s(&manifest), "--out", s(&series)])), 0);

    let out = dir.path().join("ent");
    let o = wordlen(&["entropy", "--series", s(&series), "--out", s(&out), "--segment-length", "1000"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let est = rows(&out.join("estimates.csv"));
    assert_eq!(est.iter().filter(|r| r[0] == "en/news").count(), 15);
    assert_eq!(est.iter().filter(|r| r[0] == "en/literature").count(), 9);
    for f in ["fig3_bars.csv", "fig5_ranks_n1.csv", "fig5_ranks_n2.csv", "fig5_ranks_n3.csv", "fig6_hist.csv", "entropy.json"] {
        let body = std::fs::read_to_string(out.join(f)).unwrap();
        assert!(body.contains("config_hash"), "{f} lacks provenance");
        assert!(body.contains(env!("CARGO_PKG_VERSION")), "{f} lacks version");
    }
    let bundle: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("entropy.json")).unwrap()).unwrap();
    assert_eq!(bundle["orderings"].as_array().unwrap().len(), 3);

    let only1 = dir.path().join("only1");
    let o = wordlen(&["entropy", "--series", s(&series), "--out", s(&only1), "--orders", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = std::fs::read_dir(&only1)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["estimates.csv", "fig3_bars.csv", "fig5_ranks_n1.csv", "fig6_hist.csv"]);

    let again = dir.path().join("again");
    wordlen(&["entropy", "--series", s(&series), "--out", s(&again), "--segment-length", "1000"]);
    for f in ["estimates.csv", "fig5_ranks_n3.csv", "entropy.json"] {
        assert_eq!(std::fs::read(out.join(f)).unwrap(), std::fs::read(again.join(f)).unwrap());
    }
}

#[test]
fn short_series_is_data_insufficiency() {
    let (dir, manifest) = corpus(&[("en", "tiny", 999)]);
    let o = wordlen(&["entropy", "--manifest", s(&manifest), "--out", s(&dir.path().join("o"))]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("en/tiny"));
}

#[test]
fn sweep_grid() {
    let (dir, manifest) = corpus(&[("en", "news", 6100)]);
    let run = |range: &str, tag: &str| {
        let out = dir.path().join(tag);
        let o = wordlen(&["sweep", "--manifest", s(&manifest), "--out", s(&out), "--sweep", range, "--orders", "2,3"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        rows(&out.join("fig4_sweep.csv"))
    };
    let full = run("250:3000:250", "full");
    assert_eq!(full.iter().filter(|r| r[1] == "2").count(), 12);
    assert_eq!(full.iter().filter(|r| r[1] == "3").count(), 12);

    let single = run("1000:1000", "single");
    assert_eq!(single.len(), 2);
    let ent = dir.path().join("ent");
    wordlen(&["entropy", "--manifest", s(&manifest), "--out", s(&ent), "--orders", "2,3"]);
    let bars = rows(&ent.join("fig3_bars.csv"));
    assert_eq!(single[0][3], bars[0][4]);
    assert_eq!(single[1][3], bars[1][4]);

    let degenerate = run("400:600:1000", "degenerate");
    assert!(degenerate.iter().all(|r| r[2] == "400"));
    assert_eq!(degenerate.len(), 2);
}

#[test]
fn shuffle_compare_table() {
    let (dir, manifest) = corpus(&[
        ("en", "news", 2000),
        ("en", "sports", 2000),
        ("el", "news", 2000),
        ("el", "sports", 2000),
    ]);
    let out = dir.path().join("cmp");
    let o = wordlen(&[
        "shuffle-compare", "--manifest", s(&manifest), "--out", s(&out),
        "--orders", "2,3", "--seed", "11", "--replicates", "4",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = std::fs::read_to_string(out.join("table2_compare.csv")).unwrap();
    assert!(table.lines().next().unwrap().ends_with("seed=11"));
    let t = rows(&out.join("table2_compare.csv"));
    assert_eq!(t.len(), 4);
    assert!(t.iter().all(|r| r.len() == 5));
    assert_eq!(
        t.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(),
        ["phi_2", "phi_2_shuffled", "phi_3", "phi_3_shuffled"]
    );
    // 4 categories x 2 orders x 2 segments x (1 real + 4 shuffled)
    assert_eq!(rows(&out.join("compare_long.csv")).len(), 80);

    let u = dir.path().join("uni");
    wordlen(&["shuffle-compare", "--manifest", s(&manifest), "--out", s(&u), "--orders", "1", "--format", "json"]);
    let bundle: serde_json::Value = serde_json::from_slice(&std::fs::read(u.join("compare.json")).unwrap()).unwrap();
    for r in bundle["reports"].as_array().unwrap() {
        assert_eq!(r["delta"].as_f64().unwrap(), 0.0);
    }
    assert_eq!(bundle["meta"]["seed"], 0);
}

#[test]
fn config_file_with_flag_override() {
    let (dir, manifest) = corpus(&[("en", "news", 3000)]);
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "manifest = \"{}\"\nout = \"from_file\"\norders = [1, 2]\nsegment_length = 500\n",
            manifest.file_name().unwrap().to_str().unwrap()
        ),
    )
    .unwrap();
    let o = wordlen(&["entropy", "--config", s(&cfg), "--segment-length", "1000"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let est = rows(&dir.path().join("from_file/estimates.csv"));
    assert_eq!(est.len(), 3 * 2);

    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(code(&wordlen(&["entropy", "--config", s(&cfg)])), 2);
}
