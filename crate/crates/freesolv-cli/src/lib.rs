//! Command line front end for the `freesolv` solvers.
//!
//! Decision commands (`wp`, `bglp`, `rstp` with a bound) speak through
//! the exit code: `0` yes/trivial, `1` no/nontrivial, `2` usage or parse
//! error, `3` undecided at the configured exactness budget. Value
//! commands print text or JSON (with `--json`) to standard output;
//! diagnostics go to standard error.

pub mod bench;
pub mod json;
pub mod words;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use freesolv::solvable::fox_solvable_all;
use freesolv::{
    fox_abelian, fox_solvable, geodesic_with_limits, magnus_image, path_flow, steiner_size,
    wp_metabelian, wp_solvable, Error as LibError, ExactLimits,
    SolvableRingElement, Word,
};

use bench::{run_bench, BenchConfig, Suite};
use json::{word_text, DecisionJson};

/// Environment variable overriding the default exact-mode terminal
/// budget.
pub const EXACT_LIMIT_ENV: &str = "FREESOLV_EXACT_LIMIT";

#[derive(Debug, Parser)]
#[command(
    name = "freesolv",
    about = "Word problem, Fox derivatives, flows and geodesics in free solvable groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct WordInput {
    /// Word in compact (`abAB`) or explicit (`x1 x2^-1`) syntax.
    #[arg(long)]
    word: Option<String>,
    /// File containing the word text.
    #[arg(long, value_name = "PATH")]
    word_file: Option<PathBuf>,
}

impl WordInput {
    fn text(&self) -> Result<String, AppError> {
        match (&self.word, &self.word_file) {
            (Some(w), _) => Ok(w.clone()),
            (None, Some(path)) => Ok(std::fs::read_to_string(path)?.trim().to_string()),
            (None, None) => unreachable!("clap enforces one input source"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the word problem in S_{r,d} (exit 0 trivial, 1 nontrivial).
    Wp {
        #[arg(long)]
        rank: usize,
        /// Solvability class d >= 1; d = 2 is the free metabelian group.
        #[arg(long, default_value_t = 2)]
        class: usize,
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        json: bool,
    },
    /// Fox derivatives in Z S_{r,class} (class 1 is the abelian base).
    Fox {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        class: usize,
        #[command(flatten)]
        input: WordInput,
        /// Restrict to the derivative with respect to one generator.
        #[arg(long)]
        gen: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Image under the Magnus embedding of S_{r,class}.
    Magnus {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        class: usize,
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        json: bool,
    },
    /// Path flow of a word on the integer grid, or (with --realize) a
    /// word realizing a flow read from JSON.
    Flow {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, value_name = "PATH")]
        word_file: Option<PathBuf>,
        /// Read a flow JSON file and output a word realizing it.
        #[arg(long, requires = "flow_file")]
        realize: bool,
        #[arg(long, value_name = "PATH", requires = "realize")]
        flow_file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Geodesic representative and length in the free metabelian group.
    Geodesic {
        #[arg(long)]
        rank: usize,
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        json: bool,
        /// Exact-forest terminal budget (default from FREESOLV_EXACT_LIMIT or 10).
        #[arg(long)]
        exact_limit: Option<usize>,
    },
    /// Bounded geodesic length: is l(w) <= bound? (exit 0/1/3).
    Bglp {
        #[arg(long)]
        rank: usize,
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        exact_limit: Option<usize>,
    },
    /// Rectilinear Steiner trees: size/tree for a point set, or (with
    /// --bound k) decide s(A) < k through the word encoding (exit 0/1/3).
    Rstp {
        /// Semicolon-separated x,y pairs, e.g. "0,0;2,0;1,2".
        #[arg(long)]
        points: Option<String>,
        #[arg(long, value_name = "PATH")]
        points_file: Option<PathBuf>,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        exact_limit: Option<usize>,
    },
    /// Time a word-problem suite over seeded random words.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Comma-separated nondecreasing word lengths.
        #[arg(long, default_value = "")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Solvability class for the solvable suite.
        #[arg(long, default_value_t = 3)]
        class: usize,
        /// Distinct random words per size.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        /// Timing repetitions per word (minimum kept).
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum AppError {
    Lib(LibError),
    Io(std::io::Error),
    Json(serde_json::Error),
    Usage(String),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Lib(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
            AppError::Json(e) => write!(f, "{e}"),
            AppError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<LibError> for AppError {
    fn from(e: LibError) -> AppError {
        AppError::Lib(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> AppError {
        AppError::Io(e)
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> AppError {
        AppError::Json(e)
    }
}

impl AppError {
    fn exit_code(&self) -> i32 {
        match self {
            AppError::Lib(LibError::Undecided { .. })
            | AppError::Lib(LibError::ExactLimitExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// Parses and dispatches; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_word(text: &str, rank: usize) -> Result<Word, AppError> {
    if rank == 0 {
        return Err(AppError::Usage("rank must be at least 1".into()));
    }
    Ok(Word::parse(text, rank)?)
}

fn limits_with(exact_limit: Option<usize>) -> ExactLimits {
    let mut limits = ExactLimits::default();
    if let Some(n) = exact_limit {
        limits.max_terminals = n;
    } else if let Ok(value) = std::env::var(EXACT_LIMIT_ENV) {
        if let Ok(n) = value.parse::<usize>() {
            limits.max_terminals = n;
        }
    }
    limits
}

fn dispatch(command: Command) -> Result<i32, AppError> {
    match command {
        Command::Wp {
            rank,
            class,
            input,
            json,
        } => {
            if class < 1 {
                return Err(AppError::Usage("class must be at least 1".into()));
            }
            let w = parse_word(&input.text()?, rank)?;
            let trivial = if class == 2 {
                wp_metabelian(&w)
            } else {
                wp_solvable(&w, class)
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "rank": rank, "class": class, "trivial": trivial })
                );
            } else {
                println!("{}", if trivial { "trivial" } else { "nontrivial" });
            }
            Ok(if trivial { 0 } else { 1 })
        }
        Command::Fox {
            rank,
            class,
            input,
            gen,
            json,
        } => {
            if class < 1 {
                return Err(AppError::Usage("class must be at least 1".into()));
            }
            let w = parse_word(&input.text()?, rank)?;
            run_fox(&w, class, gen, json)
        }
        Command::Magnus {
            rank,
            class,
            input,
            json,
        } => {
            if class < 2 {
                return Err(AppError::Usage(
                    "the Magnus embedding needs class at least 2".into(),
                ));
            }
            let w = parse_word(&input.text()?, rank)?;
            let image = magnus_image(&w, class);
            let encoded = json::magnus_to_json(&image);
            if json {
                println!("{}", serde_json::to_string(&encoded)?);
            } else {
                println!("class {}", encoded.class);
                match &encoded.diagonal {
                    json::MagnusDiagonalJson::Abelian(v) => println!("diagonal: {v:?}"),
                    json::MagnusDiagonalJson::Solvable { prefix_word, .. } => {
                        println!("diagonal: [{prefix_word}]")
                    }
                }
                for (i, row) in encoded.rows.iter().enumerate() {
                    match row {
                        json::MagnusRowJson::Abelian(_) => {
                            let map = fox_abelian(&w);
                            println!("t{}: {}", i + 1, map.derivative(i + 1).expect("in range"));
                        }
                        json::MagnusRowJson::Solvable(e) => {
                            println!("t{}: {}", i + 1, render_solvable_json(e));
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Flow {
            rank,
            word,
            word_file,
            realize,
            flow_file,
            json,
        } => run_flow(rank, word, word_file, realize, flow_file, json),
        Command::Geodesic {
            rank,
            input,
            json,
            exact_limit,
        } => {
            let w = parse_word(&input.text()?, rank)?;
            let result = geodesic_with_limits(&w, &limits_with(exact_limit));
            if json {
                println!("{}", serde_json::to_string(&json::geodesic_to_json(&result))?);
            } else {
                println!(
                    "word={} length={} exact={} forest_edges={}",
                    word_text(&result.word),
                    result.length,
                    result.exact,
                    result.forest.len()
                );
            }
            Ok(0)
        }
        Command::Bglp {
            rank,
            input,
            bound,
            json,
            exact_limit,
        } => {
            let w = parse_word(&input.text()?, rank)?;
            let verdict = freesolv::bglp_with_limits(&w, bound, &limits_with(exact_limit));
            decision_output(verdict, json)
        }
        Command::Rstp {
            points,
            points_file,
            bound,
            json,
            exact_limit,
        } => run_rstp(points, points_file, bound, json, exact_limit),
        Command::Bench {
            suite,
            sizes,
            seed,
            rank,
            class,
            seeds,
            repeats,
            json,
        } => {
            let sizes = parse_sizes(&sizes)?;
            if rank == 0 || class == 0 {
                return Err(AppError::Usage("rank and class must be positive".into()));
            }
            let report = run_bench(&BenchConfig {
                suite,
                sizes,
                seed,
                rank,
                class,
                seeds,
                repeats,
            });
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                print!("{}", report.render_text());
            }
            Ok(0)
        }
    }
}

fn run_fox(w: &Word, class: usize, gen: Option<usize>, json_out: bool) -> Result<i32, AppError> {
    if let Some(k) = gen {
        if k == 0 || k > w.rank() {
            return Err(AppError::Lib(LibError::GeneratorOutOfRange {
                gen: k,
                rank: w.rank(),
            }));
        }
    }
    if class == 1 {
        let map = fox_abelian(w);
        match gen {
            None => {
                if json_out {
                    println!("{}", serde_json::to_string(&json::derivative_map_to_json(&map))?);
                } else {
                    println!("{map}");
                }
            }
            Some(k) => {
                let element = map.derivative(k)?;
                if json_out {
                    println!("{}", serde_json::to_string(&json::ring_element_to_json(&element))?);
                } else {
                    println!("{element}");
                }
            }
        }
    } else {
        match gen {
            Some(k) => {
                let element = fox_solvable(w, class, k)?;
                emit_solvable(&element, w, json_out)?;
            }
            None => {
                let (_, rows) = fox_solvable_all(w, class);
                if json_out {
                    let encoded: Vec<json::SolvableElementJson> = rows
                        .iter()
                        .map(|e| json::solvable_element_to_json(e, w))
                        .collect();
                    println!("{}", serde_json::to_string(&encoded)?);
                } else {
                    for (k, element) in rows.iter().enumerate() {
                        println!(
                            "d/dx{} = {}",
                            k + 1,
                            render_solvable_json(&json::solvable_element_to_json(element, w))
                        );
                    }
                }
            }
        }
    }
    Ok(0)
}

fn emit_solvable(e: &SolvableRingElement, w: &Word, json_out: bool) -> Result<(), AppError> {
    let encoded = json::solvable_element_to_json(e, w);
    if json_out {
        println!("{}", serde_json::to_string(&encoded)?);
    } else {
        println!("{}", render_solvable_json(&encoded));
    }
    Ok(())
}

fn render_solvable_json(e: &json::SolvableElementJson) -> String {
    if e.terms.is_empty() {
        return "0".to_string();
    }
    e.terms
        .iter()
        .map(|t| format!("{}*[{}]", t.coeff, t.prefix_word))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn run_flow(
    rank: usize,
    word: Option<String>,
    word_file: Option<PathBuf>,
    realize: bool,
    flow_file: Option<PathBuf>,
    json_out: bool,
) -> Result<i32, AppError> {
    if realize {
        if word.is_some() || word_file.is_some() {
            return Err(AppError::Usage(
                "--realize takes a flow file, not a word".into(),
            ));
        }
        let path = flow_file.expect("clap requires flow_file with realize");
        let parsed: json::FlowJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let flow = json::flow_from_json(&parsed)?;
        let realized = flow.flow_to_path()?;
        if json_out {
            println!("{}", serde_json::json!({ "word": word_text(&realized) }));
        } else {
            println!("{}", word_text(&realized));
        }
        return Ok(0);
    }
    let text = match (word, word_file) {
        (Some(w), None) => w,
        (None, Some(path)) => std::fs::read_to_string(path)?.trim().to_string(),
        _ => {
            return Err(AppError::Usage(
                "provide exactly one of --word or --word-file".into(),
            ))
        }
    };
    let w = parse_word(&text, rank)?;
    let flow = path_flow(&w);
    let encoded = json::flow_to_json(&flow);
    if json_out {
        println!("{}", serde_json::to_string(&encoded)?);
    } else {
        println!("source={:?} sink={:?}", encoded.source, encoded.sink);
        for edge in &encoded.edges {
            println!("vertex={:?} axis={} value={}", edge.vertex, edge.axis, edge.value);
        }
    }
    Ok(0)
}

fn run_rstp(
    points: Option<String>,
    points_file: Option<PathBuf>,
    bound: Option<usize>,
    json_out: bool,
    exact_limit: Option<usize>,
) -> Result<i32, AppError> {
    let text = match (points, points_file) {
        (Some(p), None) => p,
        (None, Some(path)) => std::fs::read_to_string(path)?.trim().to_string(),
        _ => {
            return Err(AppError::Usage(
                "provide exactly one of --points or --points-file".into(),
            ))
        }
    };
    let pts = freesolv::parse_points(&text)?;
    let limits = limits_with(exact_limit);
    match bound {
        Some(k) => {
            let verdict = freesolv::rstp::rstp_decide_with_limits(&pts, k, &limits);
            decision_output(verdict, json_out)
        }
        None => {
            let tree = steiner_size(&pts, &limits)?;
            if json_out {
                println!("{}", serde_json::to_string(&json::steiner_to_json(&tree))?);
            } else {
                println!("size={}", tree.size);
            }
            Ok(0)
        }
    }
}

fn decision_output(verdict: freesolv::Result<bool>, json_out: bool) -> Result<i32, AppError> {
    match verdict {
        Ok(yes) => {
            let answer = if yes { "yes" } else { "no" };
            if json_out {
                let body = DecisionJson {
                    answer: answer.to_string(),
                    lower: None,
                    upper: None,
                };
                println!("{}", serde_json::to_string(&body)?);
            } else {
                println!("{answer}");
            }
            Ok(if yes { 0 } else { 1 })
        }
        Err(LibError::Undecided { lower, upper }) => {
            if json_out {
                let body = DecisionJson {
                    answer: "undecided".to_string(),
                    lower: Some(lower),
                    upper: Some(upper),
                };
                println!("{}", serde_json::to_string(&body)?);
            } else {
                println!("undecided");
            }
            eprintln!("undecided at this budget: length is in [{lower}, {upper}]");
            Ok(3)
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, AppError> {
    let mut sizes = Vec::new();
    for chunk in text.split(',') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let value: usize = chunk
            .parse()
            .map_err(|_| AppError::Usage(format!("bad size {chunk:?}")))?;
        sizes.push(value);
    }
    if sizes.windows(2).any(|pair| pair[0] > pair[1]) {
        return Err(AppError::Usage("sizes must be nondecreasing".into()));
    }
    Ok(sizes)
}
