//! The attachment experiment over `data/suite.tsv`, checked against the
//! brute-force oracle.

use std::time::{Duration, Instant};

use gbparse::corpus::{read_lexicon, read_tables};
use gbparse::engine::ParseOptions;
use gbparse::eval::{evaluate, read_suite, EvalReport};
use gbparse::model::{Category, PhraseMarker};
use gbparse::ranking::{rank_sentence, Scorer};

use super::{oracle_lexicon, oracle_parses, oracle_rank, read_data, verb_takes_pp, OracleTables};

pub fn run_suite() -> EvalReport {
    let lexicon = read_lexicon(&read_data("lexicon.tsv")).unwrap();
    let (schema, theta) = read_tables(&read_data("tables.txt")).unwrap();
    let items = read_suite(&read_data("suite.tsv"));
    let scorer = Scorer::new(&schema, &theta);
    evaluate(&items, &lexicon, &scorer, &ParseOptions::default())
}

pub fn attachment(marker: &PhraseMarker) -> &'static str {
    let pp = marker.leaves().iter().any(|l| {
        l.category.is_verbal() && l.selected_grid().internal_roles().any(|r| r.selects == Category::P)
    });
    if pp {
        "complement"
    } else {
        "adjunct"
    }
}

/// `(sentence, label)` pairs from `data/suite_expected.tsv`.
pub fn expected() -> Vec<(String, String)> {
    read_data("suite_expected.tsv")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (s, a) = l.split_once('\t').expect("two columns");
            (s.to_string(), a.trim().to_string())
        })
        .collect()
}

/// Median the long way: average of the two middle values for even counts.
pub fn median(counts: &[usize]) -> f64 {
    let mut c = counts.to_vec();
    c.sort();
    let n = c.len();
    if n % 2 == 1 {
        c[n / 2] as f64
    } else {
        (c[n / 2 - 1] + c[n / 2]) as f64 / 2.0
    }
}

/// Checks every suite property; returns a summary on success.
pub fn check_experiment() -> Result<String, String> {
    let report = run_suite();
    if report.sentences.len() != 16 {
        return Err(format!("{} suite sentences", report.sentences.len()));
    }
    if report.failed() != 0 {
        return Err(format!("{} sentences failed", report.failed()));
    }
    let counts = report.analysis_counts();
    if let Some((s, n)) = report.sentences.iter().zip(&counts).find(|(_, &n)| n < 2) {
        return Err(format!("{:?} has {} analyses", s.sentence, n));
    }
    let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
    if report.mean_analyses() != Some(mean) || report.median_analyses() != Some(median(&counts)) {
        return Err("mean or median disagrees with the per-sentence counts".into());
    }
    let again = run_suite();
    if again.render_text() != report.render_text() || again.render_kv() != report.render_kv() {
        return Err("report differs between runs".into());
    }

    let expected = expected();
    if expected.len() != report.sentences.len() {
        return Err("expected file length differs from the suite".into());
    }
    let lex_text = read_data("lexicon.tsv");
    let olex = oracle_lexicon(&lex_text);
    let otables = OracleTables::from_file(&read_data("tables.txt"));
    for (s, (sentence, label)) in report.sentences.iter().zip(&expected) {
        if &s.sentence != sentence {
            return Err(format!("expected file out of order at {:?}", sentence));
        }
        let tokens: Vec<&str> = sentence.split_whitespace().collect();
        let parses = oracle_parses(&tokens, &olex, true);
        if parses.len() != s.ranked().len() {
            return Err(format!("{:?}: oracle {} vs engine {}", sentence, parses.len(), s.ranked().len()));
        }
        let top = oracle_rank(&otables, &parses)[0];
        let oracle_label = if verb_takes_pp(&top.leaf_readings) { "complement" } else { "adjunct" };
        let engine_top = &s.ranked()[0].marker;
        if engine_top.bracketed() != top.bracketed {
            return Err(format!("{:?}: rank-1 differs from the oracle", sentence));
        }
        let engine_label = attachment(engine_top);
        if engine_label != label || oracle_label != label {
            return Err(format!(
                "{:?}: expected {}, engine {}, oracle {}",
                sentence, label, engine_label, oracle_label
            ));
        }
    }
    Ok(format!(
        "16 sentences, mean {} median {}, top matches {}/{}",
        mean,
        median(&counts),
        report.top_matches(),
        report.gold_count()
    ))
}

pub const LONG_SENTENCES: &[&str] = &[
    "the old man put the big book on the table",
    "the girl saw the old man with the big telescope",
    "the big dog near the house ate the cake",
    "mary said that the old man slept in the park",
    "john gave the book of the girl to the boy",
];

/// Slowest single parse-and-rank over the suite and some 9 to 10 token
/// sentences.
pub fn slowest_parse() -> (Duration, String) {
    let lexicon = read_lexicon(&read_data("lexicon.tsv")).unwrap();
    let (schema, theta) = read_tables(&read_data("tables.txt")).unwrap();
    let scorer = Scorer::new(&schema, &theta);
    let suite = read_suite(&read_data("suite.tsv"));
    let mut worst = (Duration::ZERO, String::new());
    for s in suite.iter().map(|i| i.sentence.as_str()).chain(LONG_SENTENCES.iter().copied()) {
        assert!(s.split_whitespace().count() <= 10);
        let t = Instant::now();
        rank_sentence(s, &lexicon, &scorer, &ParseOptions::default()).unwrap();
        let d = t.elapsed();
        if d > worst.0 {
            worst = (d, s.to_string());
        }
    }
    worst
}
