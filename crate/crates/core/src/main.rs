use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gbparse::corpus::{format_probability, read_corpus, read_lexicon, read_tables, train, write_tables};
use gbparse::engine::ParseOptions;
use gbparse::eval::{evaluate, read_suite};
use gbparse::model::{Lexicon, PhraseMarker};
use gbparse::ranking::{rank_sentence, Scorer};
use gbparse::theta::ThetaTable;
use gbparse::xbar::{EstimationMode, SchemaTable};
use gbparse::Error;

#[derive(Parser)]
#[command(name = "gbparse", version, about = "Probabilistic principle-based parser")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conditioning {
    Flat,
    Mother,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate schema and theta-grid tables from a bracketed corpus.
    Train {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "flat")]
        conditioning: Conditioning,
        /// Grid probability for heads absent from the table.
        #[arg(long, default_value_t = 1.0)]
        default_probability: f64,
    },
    /// Parse one sentence and list its ranked analyses.
    Parse {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        tables: PathBuf,
        #[arg(long)]
        top: Option<usize>,
        #[arg(long)]
        no_case_filter: bool,
        #[arg(long)]
        trace: bool,
        #[arg(required = true)]
        sentence: Vec<String>,
    },
    /// Parse and rank every sentence of a suite.
    Eval {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        tables: PathBuf,
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        no_case_filter: bool,
        /// Also write the key=value report here.
        #[arg(long)]
        kv_out: Option<PathBuf>,
    },
}

enum Failure {
    /// Exit 2.
    File(String),
    /// Exit 1.
    Data(String),
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::File(format!("cannot read {}: {}", path.display(), e)))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::File(format!("cannot write {}: {}", path.display(), e)))
}

fn located(path: &Path, err: Error) -> Failure {
    let msg = match &err {
        Error::Load { line, message } => format!("{}:{}: {}", path.display(), line, message),
        Error::Unclassifiable { line, branch } => {
            format!("{}:{}: unclassifiable branch {}", path.display(), line, branch)
        }
        _ => format!("{}: {}", path.display(), err),
    };
    Failure::Data(msg)
}

fn load_lexicon(path: &Path) -> Result<Lexicon, Failure> {
    read_lexicon(&read_file(path)?).map_err(|e| located(path, e))
}

fn load_tables(path: &Path) -> Result<(SchemaTable, ThetaTable), Failure> {
    read_tables(&read_file(path)?).map_err(|e| located(path, e))
}

fn cmd_train(
    corpus: &Path,
    lexicon: &Path,
    out: &Path,
    conditioning: Conditioning,
    default_probability: f64,
) -> Result<String, Failure> {
    let text = read_file(corpus)?;
    let lex = load_lexicon(lexicon)?;
    let trees = read_corpus(&text).map_err(|e| located(corpus, e))?;
    let mode = match conditioning {
        Conditioning::Flat => EstimationMode::Flat,
        Conditioning::Mother => EstimationMode::MotherConditioned,
    };
    let t = train(&trees, &lex, mode, default_probability).map_err(|e| located(corpus, e))?;
    write_file(out, &write_tables(&t.schema_table, &t.theta_table))?;

    let mut s = String::new();
    let _ = writeln!(s, "trees: {}", t.counts.tree_count);
    let _ = writeln!(s, "branches: {}", t.counts.schema_counts.total());
    let _ = writeln!(s, "mode: {}", mode.as_str());
    for (id, n) in t.counts.schema_counts.iter() {
        let _ = writeln!(
            s,
            "schema {}: {} {}",
            id,
            n,
            format_probability(t.schema_table.probability(id))
        );
    }
    let _ = writeln!(s, "theta observations: {}", t.counts.theta_observations.len());
    let _ = writeln!(s, "theta heads: {}", t.theta_table.heads().count());
    let _ = writeln!(s, "wrote {}", out.display());
    Ok(s)
}

fn trace(marker: &PhraseMarker, out: &mut String) {
    for b in marker.branches() {
        let (l, r) = match b.head_side() {
            gbparse::model::HeadSide::Left => ("^", if b.schema.is_complement() { "+" } else { "" }),
            gbparse::model::HeadSide::Right => ("", "^"),
        };
        let _ = writeln!(
            out,
            "    {} schema {}: {} <- {}{} {}{}",
            b.mother.span,
            b.schema,
            b.mother.label(),
            l,
            b.left.label(),
            r,
            b.right.label()
        );
        if let Some(ev) = &b.theta_event {
            let _ = writeln!(
                out,
                "      theta {} from {}@{} to {}",
                ev.role, ev.licenser_word, ev.licenser, ev.receiver
            );
        }
        if let Some(c) = &b.case_event {
            let _ = writeln!(
                out,
                "      case {} from {}@{} to {}",
                c.value.as_str(),
                c.assigner_word,
                c.assigner,
                c.receiver
            );
        }
    }
}

fn cmd_parse(
    lexicon: &Path,
    tables: &Path,
    top: Option<usize>,
    case_filter: bool,
    with_trace: bool,
    sentence: &[String],
) -> Result<String, Failure> {
    let lex = load_lexicon(lexicon)?;
    let (schema, theta) = load_tables(tables)?;
    let scorer = Scorer::new(&schema, &theta);
    let options = ParseOptions {
        case_filter,
        ..ParseOptions::default()
    };
    let sentence = sentence.join(" ");
    let ranked =
        rank_sentence(&sentence, &lex, &scorer, &options).map_err(|e| Failure::Data(e.to_string()))?;
    let mut s = String::new();
    let _ = writeln!(s, "sentence: {}", sentence.split_whitespace().collect::<Vec<_>>().join(" "));
    let _ = writeln!(s, "analyses: {}", ranked.len());
    for r in ranked.iter().take(top.unwrap_or(usize::MAX)) {
        let _ = writeln!(
            s,
            "rank {}  global {}  xbar {}  theta {}",
            r.rank,
            format_probability(r.global_prob),
            format_probability(r.xbar_prob),
            format_probability(r.theta_prob)
        );
        let _ = writeln!(s, "  {}", r.marker.bracketed());
        if with_trace {
            trace(&r.marker, &mut s);
        }
    }
    Ok(s)
}

fn cmd_eval(
    lexicon: &Path,
    tables: &Path,
    suite: &Path,
    case_filter: bool,
    kv_out: Option<&Path>,
) -> Result<String, Failure> {
    let lex = load_lexicon(lexicon)?;
    let (schema, theta) = load_tables(tables)?;
    let items = read_suite(&read_file(suite)?);
    let scorer = Scorer::new(&schema, &theta);
    let options = ParseOptions {
        case_filter,
        ..ParseOptions::default()
    };
    let report = evaluate(&items, &lex, &scorer, &options);
    if let Some(path) = kv_out {
        write_file(path, &report.render_kv())?;
    }
    Ok(report.render_text())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Train {
            corpus,
            lexicon,
            out,
            conditioning,
            default_probability,
        } => cmd_train(corpus, lexicon, out, *conditioning, *default_probability),
        Command::Parse {
            lexicon,
            tables,
            top,
            no_case_filter,
            trace,
            sentence,
        } => cmd_parse(lexicon, tables, *top, !no_case_filter, *trace, sentence),
        Command::Eval {
            lexicon,
            tables,
            suite,
            no_case_filter,
            kv_out,
        } => cmd_eval(lexicon, tables, suite, !no_case_filter, kv_out.as_deref()),
    };
    match result {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Data(msg)) => {
            eprintln!("gbparse: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::File(msg)) => {
            eprintln!("gbparse: {}", msg);
            ExitCode::from(2)
        }
    }
}
