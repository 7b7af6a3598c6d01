//! Command-line front end: `tables`, `decode`, `search`, `simulate`,
//! `enumerate`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::composition::CompositionClass;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::frequency::{tally_classes, tally_letters, FrequencyTable, Letter, LetterSet, TieBreakPolicy};
use crate::genome_io::{drop_ambiguous, extract_windows, parse_fasta, AmbiguityMode, Direction, GenomeSequence, WindowSpec};
use crate::report::{self, InputDigest, Provenance};
use crate::significance::{quantile, run_null_model, NullModel};
use crate::substitution::{build_mapping, SubstitutionTable};
use crate::word_search::{
    assemble_phrases, load_dictionary, scan_exact, scan_reconstruction_with, Dictionary, ReconstructionOptions,
};

#[derive(Debug, Parser)]
#[command(name = "helixtext", version, about = "Helix-turn composition classes, rank substitution and word search")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Genome file: FASTA (first record used) or plain bases.
    #[arg(long, global = true)]
    pub genome: Option<PathBuf>,
    /// 1-based coordinate the windowing starts from.
    #[arg(long, global = true, default_value_t = 168_900)]
    pub anchor: usize,
    /// Number of turn windows.
    #[arg(long, global = true, default_value_t = 3183)]
    pub count: usize,
    #[arg(long, global = true, default_value = "backward")]
    pub direction: Direction,
    #[arg(long, global = true, default_value_t = 10)]
    pub window_size: usize,
    /// Accept IUPAC ambiguity codes and drop the windows containing them.
    #[arg(long, global = true)]
    pub skip_ambiguous: bool,
    /// Letters excluded from the letter table.
    #[arg(long, global = true, default_value = "C,Q,V,X,Z")]
    pub omit: String,
    /// Plain-text corpus for letter frequencies.
    #[arg(long, global = true, conflicts_with = "letter_fixture")]
    pub corpus: Option<PathBuf>,
    /// Built-in letter table (`fig1b`), used when no corpus is given.
    #[arg(long, global = true)]
    pub letter_fixture: Option<String>,
    /// Substitution table TSV to use instead of building one.
    #[arg(long, global = true)]
    pub mapping: Option<PathBuf>,
    /// Word list, one word per line (default: built-in list).
    #[arg(long, global = true)]
    pub dict: Option<PathBuf>,
    /// Largest reconstruction edit cost; 0 disables reconstruction.
    #[arg(long, global = true, default_value_t = 2)]
    pub budget: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Write class, letter and substitution tables as TSV.
    Tables(TablesArgs),
    /// Write the decoded letter text.
    Decode(DecodeArgs),
    /// Probable-word search over the decoded text.
    Search(SearchArgs),
    /// Monte Carlo null model for the word yield (JSON).
    Simulate(SimulateArgs),
    /// List the composition class space.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TablesArgs {
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Built-in class table (`fig1a`) instead of tallying a genome.
    #[arg(long)]
    pub class_fixture: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecodeArgs {
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    /// File holding already decoded text, searched instead of a genome.
    #[arg(long)]
    pub text: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Letters allowed between words of a phrase.
    #[arg(long, default_value_t = 0)]
    pub max_gap: usize,
    /// Surface length slack for reconstruction (default: the budget).
    #[arg(long)]
    pub slack: Option<usize>,
    /// Shortest dictionary word for the exact scan.
    #[arg(long, default_value_t = 2)]
    pub min_len: usize,
    /// Shortest dictionary word for reconstruction.
    #[arg(long, default_value_t = 3)]
    pub fuzzy_min_len: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value = "shuffle-stream")]
    pub model: NullModel,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Shortest dictionary word counted.
    #[arg(long, default_value_t = 3)]
    pub min_len: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 8)]
    pub max_count: u32,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunConfig<'a> {
    global: &'a GlobalArgs,
    command: &'a Command,
}

/// Pipeline state shared by the subcommands.
struct Session<'a> {
    global: &'a GlobalArgs,
    inputs: Vec<InputDigest>,
    warnings: Vec<String>,
}

impl<'a> Session<'a> {
    fn new(global: &'a GlobalArgs) -> Self {
        Session { global, inputs: Vec::new(), warnings: Vec::new() }
    }

    fn provenance(&self, cli: &Cli) -> Provenance {
        let config = RunConfig { global: &cli.global, command: &cli.command };
        Provenance::new(command_name(&cli.command), &config, self.inputs.clone())
    }

    fn genome(&mut self) -> Result<GenomeSequence> {
        let path = self
            .global
            .genome
            .clone()
            .ok_or_else(|| Error::InvalidParameter("--genome is required for this command".into()))?;
        let raw = report::read_input("genome", &path, &mut self.inputs)?;
        let mode = if self.global.skip_ambiguous { AmbiguityMode::Skip } else { AmbiguityMode::Reject };
        let loaded = parse_fasta(&raw, mode)?;
        if !loaded.skipped_records.is_empty() {
            self.warnings.push(format!(
                "{}: using first record {:?}; skipped {}",
                path.display(),
                loaded.genome.id(),
                loaded.skipped_records.join(", ")
            ));
        }
        Ok(loaded.genome)
    }

    fn window_spec(&self) -> WindowSpec {
        WindowSpec {
            anchor: self.global.anchor,
            count: self.global.count,
            direction: self.global.direction,
            size: self.global.window_size,
        }
    }

    fn class_stream(&mut self, genome: &GenomeSequence) -> Result<Vec<CompositionClass>> {
        let windows = extract_windows(genome, &self.window_spec())?;
        let (windows, dropped) = drop_ambiguous(windows);
        if dropped > 0 {
            self.warnings.push(format!("dropped {dropped} windows containing ambiguity codes"));
        }
        Ok(windows.iter().map(|w| crate::composition::compose(w).classify()).collect())
    }

    fn omit(&self) -> Result<LetterSet> {
        self.global.omit.parse()
    }

    fn letter_table(&mut self) -> Result<FrequencyTable<Letter>> {
        let omit = self.omit()?;
        if let Some(path) = self.global.corpus.clone() {
            let corpus = report::read_input("corpus", &path, &mut self.inputs)?;
            return tally_letters(&corpus, &omit);
        }
        let name = self.global.letter_fixture.as_deref().unwrap_or("fig1b");
        let fixture = fixtures::letter_fixture(name)?;
        let table = FrequencyTable::from_counts(fixture.iter().filter(|(l, _)| !omit.contains(**l)).map(|(l, n)| (*l, n)));
        if table.is_empty() {
            return Err(Error::NoCountableLetters);
        }
        Ok(table)
    }

    fn mapping(&mut self, classes: &FrequencyTable<CompositionClass>) -> Result<SubstitutionTable> {
        if let Some(path) = self.global.mapping.clone() {
            let raw = report::read_input("mapping", &path, &mut self.inputs)?;
            return SubstitutionTable::from_tsv(&String::from_utf8_lossy(&raw));
        }
        let letters = self.letter_table()?;
        build_mapping(classes, &letters, TieBreakPolicy::default())
    }

    fn dictionary(&mut self, min_len: usize) -> Result<Dictionary> {
        match self.global.dict.clone() {
            Some(path) => {
                let raw = report::read_input("dictionary", &path, &mut self.inputs)?;
                load_dictionary(raw.as_slice(), min_len)
            }
            None => Dictionary::builtin(min_len),
        }
    }

    /// Decoded text plus the class stream it came from.
    fn decode(&mut self) -> Result<(String, Vec<CompositionClass>)> {
        let genome = self.genome()?;
        let classes = self.class_stream(&genome)?;
        let table = FrequencyTable::from_counts(classes.iter().map(|c| (*c, 1)));
        let mapping = self.mapping(&table)?;
        Ok((mapping.apply(&classes)?, classes))
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Tables(_) => "tables",
        Command::Decode(_) => "decode",
        Command::Search(_) => "search",
        Command::Simulate(_) => "simulate",
        Command::Enumerate(_) => "enumerate",
    }
}

fn emit(path: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| Error::io(p, e)),
        None => stdout.write_all(content.as_bytes()).map_err(Error::from),
    }
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Runs one parsed command. Reports go to files or `stdout`; warnings go
/// to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut session = Session::new(&cli.global);
    let result = dispatch(cli, &mut session, stdout);
    for w in &session.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    result
}

fn dispatch(cli: &Cli, session: &mut Session<'_>, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Tables(args) => tables(cli, session, args),
        Command::Decode(args) => {
            let (text, _) = session.decode()?;
            emit(args.output.as_deref(), &format!("{text}\n"), stdout)
        }
        Command::Search(args) => search(cli, session, args, stdout),
        Command::Simulate(args) => simulate(cli, session, args, stdout),
        Command::Enumerate(args) => {
            let size = u32::try_from(cli.global.window_size)
                .map_err(|_| Error::InvalidParameter("window size too large".into()))?;
            let body = report::enumeration_tsv(size, args.max_count)?;
            let out = format!("{}{body}", session.provenance(cli).tsv_header());
            emit(args.output.as_deref(), &out, stdout)
        }
    }
}

fn tables(cli: &Cli, session: &mut Session<'_>, args: &TablesArgs) -> Result<()> {
    fs::create_dir_all(&args.out_dir).map_err(|e| Error::io(&args.out_dir, e))?;
    let mut variants = None;
    let classes = match &args.class_fixture {
        Some(name) => fixtures::class_fixture(name)?,
        None => {
            let genome = session.genome()?;
            let windows = extract_windows(&genome, &session.window_spec())?;
            let (windows, dropped) = drop_ambiguous(windows);
            if dropped > 0 {
                session.warnings.push(format!("dropped {dropped} windows containing ambiguity codes"));
            }
            let g = &cli.global;
            let candidates = report::windowing_variants(genome.len(), g.anchor, g.count, g.window_size);
            variants = Some(report::compare_variants(&genome, &candidates, &fixtures::fig1a_classes()));
            tally_classes(windows.iter())
        }
    };
    let letters = session.letter_table()?;
    let header = session.provenance(cli).tsv_header();

    write_file(&args.out_dir, "classes.tsv", &format!("{header}{}", report::class_table_tsv(&classes)))?;
    write_file(&args.out_dir, "letters.tsv", &format!("{header}{}", report::letter_table_tsv(&letters)))?;
    if let Some(outcomes) = variants {
        let body = report::variants_tsv(&outcomes, &fixtures::fig1a_classes());
        write_file(&args.out_dir, "variants.tsv", &format!("{header}{body}"))?;
    }
    let mapping = session.mapping(&classes)?;
    let header = session.provenance(cli).tsv_header();
    write_file(&args.out_dir, "substitution.tsv", &format!("{header}{}", report::substitution_tsv(&mapping)))?;
    Ok(())
}

fn search(cli: &Cli, session: &mut Session<'_>, args: &SearchArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = match &args.text {
        Some(path) => {
            let raw = report::read_input("text", path, &mut session.inputs)?;
            let text: String = String::from_utf8_lossy(&raw).split_whitespace().collect::<String>().to_ascii_uppercase();
            if let Some((position, c)) = text.char_indices().find(|(_, c)| !c.is_ascii_uppercase()) {
                return Err(Error::InvalidSymbol { position: position + 1, symbol: c });
            }
            text
        }
        None => session.decode()?.0,
    };
    let dict = session.dictionary(args.min_len)?;
    let exact = scan_exact(&text, &dict);
    let budget = cli.global.budget;
    let fuzzy = if budget == 0 {
        Vec::new()
    } else {
        let opts = ReconstructionOptions {
            budget,
            window_slack: args.slack.unwrap_or(budget),
            min_word_len: args.fuzzy_min_len,
            include_exact: false,
        };
        scan_reconstruction_with(&text, &dict, &opts)
    };
    let phrases = assemble_phrases(&exact, args.max_gap);

    let mut out = session.provenance(cli).tsv_header();
    out.push_str(&format!("# text-length\t{}\n", text.len()));
    out.push_str(report::MATCH_COLUMNS);
    for m in &exact {
        out.push_str(&report::match_row("exact", m));
    }
    for m in &fuzzy {
        out.push_str(&report::match_row("reconstruction", m));
    }
    for p in &phrases {
        out.push_str(&report::phrase_row(&text, p));
    }
    out.push_str(&report::length_summary(&exact, &fuzzy));
    emit(args.output.as_deref(), &out, stdout)
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    provenance: Provenance,
    result: &'a crate::significance::NullModelResult,
    null_total_mean: f64,
    null_total_q025: u64,
    null_total_q975: u64,
}

fn simulate(cli: &Cli, session: &mut Session<'_>, args: &SimulateArgs, stdout: &mut dyn Write) -> Result<()> {
    let genome = session.genome()?;
    let classes = session.class_stream(&genome)?;
    let table = FrequencyTable::from_counts(classes.iter().map(|c| (*c, 1)));
    let mapping = session.mapping(&table)?;
    let dict = session.dictionary(args.min_len)?;
    let result = run_null_model(&classes, &mapping, &dict, args.model, args.trials, cli.global.seed)?;
    let totals = result.null_totals();
    let report = SimulationReport {
        provenance: session.provenance(cli),
        result: &result,
        null_total_mean: totals.iter().sum::<u64>() as f64 / totals.len() as f64,
        null_total_q025: quantile(&totals, 0.025),
        null_total_q975: quantile(&totals, 0.975),
    };
    let json = serde_json::to_string(&report).expect("report serializes");
    emit(args.output.as_deref(), &format!("{json}\n"), stdout)
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.kind().exit_code()
        }
    }
}
