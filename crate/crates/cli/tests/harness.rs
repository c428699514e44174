use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;

use dynpdt::hashing::SplitMix64;
use dynpdt::{Config, LabelMapKind, Repr};
use dynpdt_cli::bench::{mutate, run_query, sample_queries};
use dynpdt_cli::{emit_report, load_corpus, run_bench, run_bounds, run_build, Corpus, Format};

const TECH_WORDS: &str = "technology\ntechnics\ntechnique\ntechnically\n";

fn file(contents: &[u8]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents).unwrap();
    f
}

/// Host-and-path style URLs with heavy prefix sharing.
fn url_corpus(n: usize, seed: u64) -> Corpus {
    let mut g = SplitMix64::new(seed);
    let words = ["news", "wiki", "item", "blog", "tag", "user", "page", "img", "docs", "api"];
    let hosts: Vec<String> = (0..n / 25 + 1)
        .map(|i| format!("http://www.site{}.{}", i * 7919 % 100_003, ["com", "org", "jp"][i % 3]))
        .collect();
    let mut text = String::new();
    for _ in 0..n {
        let mut u = hosts[g.below(hosts.len() as u64) as usize].clone();
        for _ in 0..1 + g.below(3) {
            u.push('/');
            u.push_str(words[g.below(10) as usize]);
        }
        u.push_str(&format!("/{}\n", g.below(1_000_000)));
        text.push_str(&u);
    }
    let c = Corpus::parse(text.as_bytes(), "urls", true);
    assert!(c.keys.len() > n * 9 / 10);
    c
}

#[test]
fn loads_the_worked_example() {
    let f = file(TECH_WORDS.as_bytes());
    let c = load_corpus(f.path(), false).unwrap();
    assert_eq!(c.keys.len(), 4);
    assert_eq!(c.stats.count, 4);
}

#[test]
fn blank_lines_are_skipped_and_counted() {
    let f = file(b"a\n\nb\r\n\r\nc");
    let c = load_corpus(f.path(), false).unwrap();
    assert_eq!(c.keys, [b"a", b"b", b"c"]);
    assert_eq!(c.stats.skipped_lines, 2);
}

#[test]
fn dedupe_matches_sort_unique() {
    let mut g = SplitMix64::new(1);
    let lines: Vec<String> = (0..5_000).map(|_| format!("k{}", g.below(1_500))).collect();
    let f = file(lines.join("\n").as_bytes());
    let c = load_corpus(f.path(), true).unwrap();
    let mut sorted = lines.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(c.keys.len(), sorted.len());
    assert_eq!(c.stats.duplicates_removed as usize, lines.len() - sorted.len());
}

#[test]
fn unreadable_and_empty_inputs_fail() {
    assert!(load_corpus(std::path::Path::new("/nonexistent/keys.txt"), false).is_err());
    let f = file(b"\n\n");
    assert!(matches!(load_corpus(f.path(), false), Err(dynpdt_cli::CliError::EmptyCorpus(_))));
}

#[test]
fn shuffle_is_seeded_and_conserving() {
    let base = url_corpus(1_000, 2);
    let (mut a, mut b) = (base.clone(), base.clone());
    a.shuffle(9);
    b.shuffle(9);
    assert_eq!(a.keys, b.keys);
    assert_ne!(a.keys, base.keys);
    let sorted = |c: &Corpus| c.keys.iter().cloned().collect::<BTreeSet<_>>();
    assert_eq!(sorted(&a), sorted(&base));
    assert_eq!(a.keys.len(), base.keys.len());
}

#[test]
fn shuffle_is_uniform_on_three_keys() {
    let base = Corpus::parse(b"x\ny\nz\n", "three", false);
    let mut counts = std::collections::BTreeMap::new();
    for seed in 0..10_000 {
        let mut c = base.clone();
        c.shuffle(seed);
        *counts.entry(c.keys).or_insert(0u32) += 1;
    }
    assert_eq!(counts.len(), 6);
    for (perm, n) in counts {
        let p = n as f64 / 10_000.0;
        assert!((p - 1.0 / 6.0).abs() <= 0.02, "{perm:?}: {p}");
    }
}

#[test]
fn build_is_complete_and_deterministic() {
    let c = url_corpus(5_000, 3);
    let cfg = Config::new(Repr::Cbt, LabelMapKind::Slm);
    let (d, r1) = run_build(&c, cfg).unwrap();
    for k in &c.keys {
        assert!(d.lookup(k).unwrap().is_some());
    }
    let (_, r2) = run_build(&c, cfg).unwrap();
    assert_eq!(r1.memory_bytes, r2.memory_bytes);
    assert_eq!((r1.ave_height, r1.steps_pct, r1.ave_nll), (r2.ave_height, r2.steps_pct, r2.ave_nll));
    assert_eq!(r1.memory_bytes, r1.trie_bytes + r1.label_bytes);
    assert!(r1.insert_ns_per_op.unwrap() >= 0.0);
}

#[test]
fn compact_sparse_saves_space_on_urls() {
    let c = url_corpus(100_000, 4);
    let compact = run_build(&c, Config::new(Repr::Cbt, LabelMapKind::Slm)).unwrap().1;
    let plain = run_build(&c, Config::new(Repr::Pbt, LabelMapKind::Plm)).unwrap().1;
    let saving = 1.0 - compact.memory_bytes as f64 / plain.memory_bytes as f64;
    assert!(saving >= 0.40, "saving {saving:.3}");
}

#[test]
fn every_combo_hits_all_and_misses_all() {
    let c = url_corpus(10_000, 5);
    let hits = sample_queries(&c, 1);
    let misses = mutate(&hits, &c);
    assert_eq!(hits.len(), c.keys.len());
    for repr in Repr::ALL {
        for nlm in LabelMapKind::ALL {
            for lambda in [4, 64] {
                for ell in [8, 64] {
                    let cfg = Config::new(repr, nlm).with_lambda(lambda).with_ell(ell);
                    let (d, _) = run_build(&c, cfg).unwrap();
                    assert_eq!(run_query(&d, &hits, 1).unwrap().1, 1.0);
                    assert_eq!(run_query(&d, &misses, 1).unwrap().1, 0.0);
                }
            }
        }
    }
}

#[test]
fn reports_round_trip() {
    let c = Corpus::parse(TECH_WORDS.as_bytes(), "tech-words", false);
    let r = run_bench(&c, Config::default(), 0, 2).unwrap();
    assert_eq!(r.node_count, 4);
    assert_eq!((r.hit_rate, r.miss_rate), (Some(1.0), Some(1.0)));

    let mut json = Vec::new();
    emit_report(&r, Format::Json, &mut json).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
    assert_eq!(v, serde_json::to_value(&r).unwrap());
    assert_eq!(v["node_count"], 4);
    assert_eq!(v["memory_bytes"], r.memory_bytes);

    let b = run_bounds(&c, Config::default()).unwrap();
    let mut tsv = Vec::new();
    emit_report(&b, Format::Tsv, &mut tsv).unwrap();
    let text = String::from_utf8(tsv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split('\t').count(), lines[1].split('\t').count());
    assert!(lines[0].split('\t').any(|h| h == "ave_height_lb"));
}

#[test]
fn binary_reports_and_fails_cleanly() {
    let f = file(TECH_WORDS.as_bytes());
    let bin = env!("CARGO_BIN_EXE_dynpdt");
    for cmd in ["build", "bench", "stats", "bounds"] {
        let out = Command::new(bin)
            .args([cmd, f.path().to_str().unwrap(), "--repr", "pfkt", "--nlm", "plm", "--lambda", "8", "--ell", "8", "--seed", "1", "--dedupe"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["command"], cmd);
        assert_eq!(v["count"], 4);
        assert_eq!(v["seed"], 1);
    }
    let out = Command::new(bin).args(["stats", "/nonexistent/keys.txt"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = Command::new(bin).args(["stats", f.path().to_str().unwrap(), "--ell", "7"]).output().unwrap();
    assert!(!out.status.success());
}
