//! The `tashkil` command-line tool.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tashkil::context::{ContextMode, RuleSet};
use tashkil::db::AnalysisDb;
use tashkil::pipeline::{
    self, normalize_text, tokenize_line, windows, EvaluateOptions, GoldPredictions,
    PipelineOptions, Predictor,
};
use tashkil::script::hsb::{from_hsb, to_hsb};
use tashkil::stats::{analyze_corpus, correlate, CorpusStats};
use tashkil::wellformed::Validator;
use tashkil::Result;

#[derive(Parser)]
#[command(
    name = "tashkil",
    version,
    about = "Arabic diacritics toolkit: statistics, well-formedness checking, \
             normalization, diacritization, and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus diacritic-usage statistics, as one JSON document.
    Stats {
        /// Input file; standard input when omitted.
        input: Option<PathBuf>,
        /// Read and write HSB transliteration instead of Arabic script.
        #[arg(long)]
        hsb: bool,
        /// Write here instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Stats JSON of a reference corpus; adds `correlation` (of the
        /// diacritic distributions) to the output.
        #[arg(long, value_name = "REF.json")]
        compare: Option<PathBuf>,
    },
    /// Well-formedness report: one `word<TAB>ok<TAB>codes` row per Arabic word.
    Check {
        /// Input file; standard input when omitted.
        input: Option<PathBuf>,
        /// Read and write HSB transliteration instead of Arabic script.
        #[arg(long)]
        hsb: bool,
        /// Write here instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Rewrite diacritic clusters into canonical order.
    Normalize {
        /// Input file; standard input when omitted.
        input: Option<PathBuf>,
        /// Read and write HSB transliteration instead of Arabic script.
        #[arg(long)]
        hsb: bool,
        /// Write here instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Diacritize text against an analysis database.
    Diacritize {
        /// Input file; standard input when omitted.
        input: Option<PathBuf>,
        /// Analysis database (TSV).
        #[arg(long, value_name = "FILE")]
        db: PathBuf,
        /// Feature predictor: `null` or `gold:FILE`.
        #[arg(long, default_value = "null", value_parser = parse_predictor)]
        predictor: PredictorArg,
        /// How much context the post-edit cascade sees.
        #[arg(long, value_enum, default_value = "full")]
        context: ContextArg,
        /// Candidate ranking function.
        #[arg(long, value_enum, default_value = "extended")]
        ranking: RankingArg,
        /// Contextual edit rules (TSV); built-in cascade when omitted.
        #[arg(long, value_name = "FILE")]
        rules: Option<PathBuf>,
        /// Read and write HSB transliteration instead of Arabic script.
        #[arg(long)]
        hsb: bool,
        /// Write here instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Score a hypothesis file against a reference file.
    Evaluate {
        /// Hypothesis: one whitespace-tokenized sentence per line.
        hyp: PathBuf,
        /// Reference: `sentence[<TAB>id[<TAB>genre]]` per line; per-token
        /// alternatives joined with `|`.
        reference: PathBuf,
        /// Compare raw strings instead of normalized ones.
        #[arg(long)]
        raw: bool,
        /// Read both files as HSB transliteration.
        #[arg(long)]
        hsb: bool,
        /// Write here instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone)]
enum PredictorArg {
    Null,
    Gold(PathBuf),
}

fn parse_predictor(s: &str) -> std::result::Result<PredictorArg, String> {
    if s == "null" {
        return Ok(PredictorArg::Null);
    }
    match s.strip_prefix("gold:") {
        Some(path) if !path.is_empty() => Ok(PredictorArg::Gold(PathBuf::from(path))),
        _ => Err(format!("expected `null` or `gold:FILE`, got `{s}`")),
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ContextArg {
    None,
    Solo,
    Full,
}

impl From<ContextArg> for ContextMode {
    fn from(arg: ContextArg) -> ContextMode {
        match arg {
            ContextArg::None => ContextMode::None,
            ContextArg::Solo => ContextMode::Solo,
            ContextArg::Full => ContextMode::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RankingArg {
    Base,
    Extended,
}

impl From<RankingArg> for pipeline::Ranking {
    fn from(arg: RankingArg) -> pipeline::Ranking {
        match arg {
            RankingArg::Base => pipeline::Ranking::Base,
            RankingArg::Extended => pipeline::Ranking::Extended,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("tashkil: {err}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(path) => Ok(fs::read_to_string(path)?),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_doc(value: &serde_json::Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stats { input, hsb, output, compare } => {
            let mut text = read_input(input.as_deref())?;
            if hsb {
                text = from_hsb(&text)?;
            }
            let stats = analyze_corpus(text.lines());
            let mut doc = serde_json::to_value(&stats)?;
            if let Some(ref_path) = compare {
                let reference: CorpusStats =
                    serde_json::from_str(&fs::read_to_string(ref_path)?)?;
                let correlation =
                    correlate(&stats.diac_distribution, &reference.diac_distribution);
                doc["correlation"] = serde_json::to_value(correlation)?;
            }
            write_output(output.as_deref(), &json_doc(&doc)?)
        }
        Command::Check { input, hsb, output } => {
            let mut text = read_input(input.as_deref())?;
            if hsb {
                text = from_hsb(&text)?;
            }
            let validator = Validator::new();
            let mut report = String::new();
            for (idx, line) in text.lines().enumerate() {
                let tokens = tokenize_line(line, idx + 1);
                for window in windows(&tokens) {
                    let texts: Vec<&str> = window.iter().map(|t| t.text.as_str()).collect();
                    for (token, verdict) in window.iter().zip(validator.check_context(&texts)) {
                        if !verdict.applicable {
                            continue;
                        }
                        let surface =
                            if hsb { to_hsb(&token.text)? } else { token.text.clone() };
                        let codes = verdict
                            .codes()
                            .iter()
                            .map(|c| format!("{c:?}"))
                            .collect::<Vec<_>>()
                            .join(",");
                        let codes = if codes.is_empty() { "-".to_string() } else { codes };
                        report.push_str(&format!("{surface}\t{}\t{codes}\n", verdict.ok));
                    }
                }
            }
            write_output(output.as_deref(), &report)
        }
        Command::Normalize { input, hsb, output } => {
            let mut text = read_input(input.as_deref())?;
            if hsb {
                text = from_hsb(&text)?;
            }
            let mut text = normalize_text(&text);
            if hsb {
                text = to_hsb(&text)?;
            }
            write_output(output.as_deref(), &text)
        }
        Command::Diacritize { input, db, predictor, context, ranking, rules, hsb, output } => {
            let mut text = read_input(input.as_deref())?;
            if hsb {
                text = from_hsb(&text)?;
            }
            let db = AnalysisDb::load(&fs::read_to_string(db)?)?;
            let predictor = match predictor {
                PredictorArg::Null => Predictor::Null,
                PredictorArg::Gold(path) => {
                    Predictor::Gold(GoldPredictions::load(&fs::read_to_string(path)?)?)
                }
            };
            let options = PipelineOptions {
                mode: context.into(),
                ranking: ranking.into(),
                rules: match rules {
                    Some(path) => RuleSet::parse(&fs::read_to_string(path)?)?,
                    None => RuleSet::default(),
                },
                counted: None,
            };
            let result = pipeline::diacritize(&text, &db, &predictor, &options)?;
            if result.no_analysis > 0 {
                eprintln!(
                    "tashkil: {} word(s) without analysis passed through verbatim",
                    result.no_analysis
                );
            }
            let mut text = result.text;
            if hsb {
                text = to_hsb(&text)?;
            }
            write_output(output.as_deref(), &text)
        }
        Command::Evaluate { hyp, reference, raw, hsb, output } => {
            let mut hyp = fs::read_to_string(hyp)?;
            let mut reference = fs::read_to_string(reference)?;
            if hsb {
                hyp = from_hsb(&hyp)?;
                // only the sentence field is transliterated text; ids and
                // genre labels stay as-is
                reference = reference
                    .lines()
                    .map(|line| match line.split_once('\t') {
                        Some((sentence, rest)) => {
                            Ok(format!("{}\t{}", from_hsb(sentence)?, rest))
                        }
                        None => from_hsb(line),
                    })
                    .collect::<Result<Vec<_>>>()?
                    .join("\n");
            }
            let report = pipeline::evaluate(&hyp, &reference, &EvaluateOptions { raw })?;
            write_output(output.as_deref(), &json_doc(&serde_json::to_value(&report)?)?)
        }
    }
}
