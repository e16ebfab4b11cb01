//! Command line definition and dispatch. Every command returns its output
//! and exit code instead of printing, so tests can drive it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use liftspace::borel::{borel_report, cover_report, structure_report, theorem_suite, Report, SuiteOptions};
use liftspace::covers::{CoverSpec, FibrePoint};
use liftspace::tower::TowerSpec;
use thiserror::Error;

use crate::config::{parse_config, ConfigError, Model};
use crate::dot::export_dot;
use crate::report::{render_human, render_machine};
use crate::word::{format_word, parse_word, WordError};

#[derive(Parser, Debug)]
#[command(name = "liftspace", version, about = "Finite covers of graphs, towers of covers and their checks")]
pub struct Cli {
    /// Config document describing a cover or a tower.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Truncate a tower to its first n levels.
    #[arg(long, global = true, value_name = "N")]
    pub depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and build the document, then summarize it.
    Validate,
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Transport a fibre point along a word.
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Fibre point; for a tower, an element of the top level.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Lift in a single level of a tower (1-based).
        #[arg(long)]
        level: Option<usize>,
    },
    #[command(subcommand)]
    Actions(ActionsCommand),
    #[command(subcommand)]
    Tower(TowerCommand),
    #[command(subcommand)]
    Borel(BorelCommand),
    /// Run every check and exit 1 if any fails.
    Suite {
        /// Sampled word triples per cover.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Build the cover graph and summarize it.
    Build {
        #[arg(long)]
        level: Option<usize>,
    },
    /// Print the cover graph in DOT.
    Dot {
        #[arg(long)]
        level: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ActionsCommand {
    /// Compare the left and right actions of a word on the fibre.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        level: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TowerCommand {
    /// Print θ(w) as a compatible tuple.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Check groups, bonds, density, the kernel chain and the cover maps.
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum BorelCommand {
    /// Borel bijectivity for every level pair and the reconstruction.
    Check,
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Word(#[from] WordError),
    #[error("{0}")]
    Math(#[from] liftspace::Error),
}

impl AppError {
    /// 1 for mathematical failures, 2 for malformed input.
    pub fn exit_code(&self) -> u8 {
        use liftspace::Error as E;
        match self {
            AppError::Math(
                E::NotRegular | E::NotSurjective | E::NotDense { .. } | E::NotACovering { .. } | E::Inconsistent(_),
            ) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

/// A loaded document, truncated to `--depth`.
pub fn load(cli: &Cli) -> Result<Model, AppError> {
    let path = cli.config.clone().ok_or_else(|| AppError::Usage("--config <PATH> is required".into()))?;
    let text = std::fs::read_to_string(&path).map_err(|source| AppError::Io { path, source })?;
    let model = parse_config(&text)?.build()?;
    match (model, cli.depth) {
        (model, None) => Ok(model),
        (Model::Tower(t), Some(d)) => {
            if d == 0 {
                return Err(AppError::Usage("--depth must be at least 1".into()));
            }
            Ok(Model::Tower(t.truncate(d)?))
        }
        (Model::Cover(_), Some(_)) => Err(AppError::Usage("--depth applies to towers only".into())),
    }
}

fn fields(format: Format, pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = match format {
            Format::Human => writeln!(out, "{k}: {v}"),
            Format::Machine => writeln!(out, "{k}\t{v}"),
        };
    }
    out
}

fn report_outcome(format: Format, report: &Report, title: &str) -> Outcome {
    let text = match format {
        Format::Human => render_human(report, title),
        Format::Machine => render_machine(report),
    };
    Outcome { text, code: if report.all_passed() { 0 } else { 1 } }
}

/// The cover of a document, or level `level` (1-based, default top) of a tower.
fn select_cover(model: &Model, level: Option<usize>) -> Result<CoverSpec, AppError> {
    match (model, level) {
        (Model::Cover(c), None) => Ok(c.clone()),
        (Model::Cover(_), Some(_)) => Err(AppError::Usage("--level applies to towers only".into())),
        (Model::Tower(t), level) => {
            let l = level.unwrap_or(t.depth());
            if l == 0 || l > t.depth() {
                return Err(AppError::Usage(format!("--level must be between 1 and {}", t.depth())));
            }
            Ok(t.cover_spec(l - 1))
        }
    }
}

fn require_tower(model: &Model) -> Result<&TowerSpec, AppError> {
    match model {
        Model::Tower(t) => Ok(t),
        Model::Cover(_) => Err(AppError::Usage("this command needs a [tower] document".into())),
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn regularity(spec: &CoverSpec) -> String {
    match spec.is_regular() {
        Ok(b) => yes_no(b),
        Err(liftspace::Error::NotSurjective) => "no (φ is not surjective)".into(),
        Err(e) => format!("undetermined ({e})"),
    }
}

fn points(list: &[FibrePoint]) -> String {
    list.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Result<Outcome, AppError> {
    let model = load(cli)?;
    let options = |samples| SuiteOptions { seed: cli.seed, samples, ..SuiteOptions::default() };
    match &cli.command {
        Command::Validate => Ok(Outcome::ok(validate(cli.format, &model))),
        Command::Cover(CoverCommand::Build { level }) => {
            let spec = select_cover(&model, *level)?;
            let graph = spec.build();
            graph.check_covering(spec.base())?;
            let deck = spec.deck_group().map(|d| d.order().to_string()).unwrap_or_else(|e| format!("undefined ({e})"));
            Ok(Outcome::ok(fields(
                cli.format,
                &[
                    ("sheets", graph.sheets().to_string()),
                    ("vertices", graph.vertex_count().to_string()),
                    ("edges", (graph.darts().len() / 2).to_string()),
                    ("components", graph.component_count().to_string()),
                    ("regular", regularity(&spec)),
                    ("deck group order", deck),
                ],
            )))
        }
        Command::Cover(CoverCommand::Dot { level }) => {
            let spec = select_cover(&model, *level)?;
            Ok(Outcome::ok(export_dot(spec.base(), spec.basis(), &spec.build())))
        }
        Command::Lift { word, start, level } => {
            let value = match (&model, level) {
                (Model::Tower(t), None) => {
                    let w = parse_word(word, t.basis())?;
                    let top = t.level(t.depth() - 1);
                    if *start >= top.order() {
                        return Err(AppError::Usage(format!("--start must be below {}", top.order())));
                    }
                    let x = t.element_from_top(*start, t.depth())?;
                    t.fibre_mul(&x, &t.theta(&w, t.depth())?)?.to_string()
                }
                (model, level) => {
                    let spec = select_cover(model, *level)?;
                    let w = parse_word(word, spec.basis())?;
                    if *start >= spec.fibre_size() {
                        return Err(AppError::Usage(format!("--start must be below {}", spec.fibre_size())));
                    }
                    spec.monodromy(FibrePoint(*start), &w)?.0.to_string()
                }
            };
            Ok(Outcome::ok(match cli.format {
                Format::Human => format!("{value}\n"),
                Format::Machine => format!("lift\t{value}\n"),
            }))
        }
        Command::Actions(ActionsCommand::Compare { word, level }) => {
            let spec = select_cover(&model, *level)?;
            let w = parse_word(word, spec.basis())?;
            let equalizer = spec.equalizer_set(&w)?;
            let mut out = String::new();
            let name = format_word(&w, spec.basis());
            for x in spec.fibre() {
                let (right, left) = (spec.monodromy(x, &w)?, spec.left_action(&w, x)?);
                let _ = match cli.format {
                    Format::Human => writeln!(
                        out,
                        "x = {:<3} x·w = {:<3} w·x = {:<3}{}",
                        x.0,
                        right.0,
                        left.0,
                        if left == right { " equal" } else { "" }
                    ),
                    Format::Machine => writeln!(out, "point\t{}\t{}\t{}", x.0, right.0, left.0),
                };
            }
            let _ = match cli.format {
                Format::Human => writeln!(
                    out,
                    "equalizer of {name}: {{{}}} ({} of {} points)",
                    equalizer.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(", "),
                    equalizer.len(),
                    spec.fibre_size()
                ),
                Format::Machine => writeln!(out, "equalizer\t{}", points(&equalizer)),
            };
            Ok(Outcome::ok(out))
        }
        Command::Tower(TowerCommand::Theta { word }) => {
            let t = require_tower(&model)?;
            let w = parse_word(word, t.basis())?;
            let value = t.theta(&w, t.depth())?;
            Ok(Outcome::ok(match cli.format {
                Format::Human => format!("{value}\n"),
                Format::Machine => format!("theta\t{value}\n"),
            }))
        }
        Command::Tower(TowerCommand::Verify) => {
            let t = require_tower(&model)?;
            Ok(report_outcome(cli.format, &structure_report(t, &options(100)), &format!("verify: {t}")))
        }
        Command::Borel(BorelCommand::Check) => {
            let t = require_tower(&model)?;
            Ok(report_outcome(cli.format, &borel_report(t, &options(100)), &format!("borel: {t}")))
        }
        Command::Suite { samples } => match &model {
            Model::Tower(t) => {
                Ok(report_outcome(cli.format, &theorem_suite(t, &options(*samples)), &format!("suite: {t}")))
            }
            Model::Cover(c) => {
                let title = format!("suite: cover of {} sheets by {}", c.fibre_size(), c.group().name());
                Ok(report_outcome(cli.format, &cover_report(c, &options(*samples)), &title))
            }
        },
    }
}

fn validate(format: Format, model: &Model) -> String {
    match model {
        Model::Cover(c) => {
            let b = c.base();
            fields(
                format,
                &[
                    ("kind", "cover".into()),
                    (
                        "graph",
                        format!("{} vertices, {} edges, rank {}", b.vertex_count(), b.edge_count(), c.basis().rank()),
                    ),
                    ("generators", c.basis().generator_names().join(" ")),
                    ("group", format!("{} of order {}", c.group().name(), c.group().order())),
                    ("subgroup order", c.subgroup().len().to_string()),
                    ("sheets", c.fibre_size().to_string()),
                    ("connected", yes_no(c.is_connected_cover())),
                    ("regular", regularity(c)),
                ],
            )
        }
        Model::Tower(t) => {
            let b = t.base();
            let dense = match t.dense_leaf_check().first_failure() {
                None => "yes".to_string(),
                Some(l) => format!("no (fails at level {})", l + 1),
            };
            fields(
                format,
                &[
                    ("kind", "tower".into()),
                    (
                        "graph",
                        format!("{} vertices, {} edges, rank {}", b.vertex_count(), b.edge_count(), t.basis().rank()),
                    ),
                    ("generators", t.basis().generator_names().join(" ")),
                    ("depth", t.depth().to_string()),
                    (
                        "levels",
                        t.levels()
                            .iter()
                            .map(|g| format!("{} ({})", g.name(), g.order()))
                            .collect::<Vec<_>>()
                            .join(" <- "),
                    ),
                    ("dense leaf", dense),
                ],
            )
        }
    }
}
