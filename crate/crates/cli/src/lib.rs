//! Command line front end: reads `.curve` files, runs the library and
//! writes text, JSON, DOT or SVG.

pub mod dot;
pub mod input;
pub mod json;
pub mod svg;
pub mod text;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use lotus_core::engine::{fan_tree, pseudo_resolve, AuxStrategy, FanTree, ResolutionRecord};
use lotus_core::ewtree::{build_ew_tree, intersection_number, EwTree};
use lotus_core::lattice::{parse_rat, regularize, Rat};
use lotus_core::lotus::{
    build_newton_lotus, dual_graph, enriques_tree, glue_lotuses, proximity_graph, truncate_lotus, DualGraph,
    EnriquesTree, Lotus, TruncatedLotus, VertexId,
};
use lotus_core::polygon::{
    edge_restriction, is_newton_nondegenerate, newton_fan, polygon_from_branches, polygon_from_support, NewtonPolygon,
    Point,
};
use lotus_core::PuiseuxSeries;

use crate::input::{parse_curve, CurveFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

impl From<lotus_core::Error> for CliError {
    fn from(e: lotus_core::Error) -> Self {
        use lotus_core::Error as E;
        match e {
            E::Parse { pos, msg } => CliError::Parse { line: 1, col: pos + 1, msg },
            E::Domain(m) => CliError::Domain(m),
            E::DuplicateBranch(..) => CliError::Domain(e.to_string()),
            E::UnsupportedCoefficient(_) => CliError::Unsupported(e.to_string()),
            E::Invariant(m) => CliError::Invariant(m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) => 1,
            CliError::Domain(_) | CliError::Unsupported(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse error",
            CliError::Io(_) => "input error",
            CliError::Domain(_) => "domain error",
            CliError::Unsupported(_) => "unsupported input",
            CliError::Invariant(_) => "invariant violation",
        }
    }

    /// One-line diagnostic for stderr.
    pub fn diagnostic(&self, path: Option<&str>) -> String {
        match path {
            Some(p) => format!("lotus: {}: {p}: {self}", self.kind()),
            None => format!("lotus: {}: {self}", self.kind()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    #[default]
    Text,
    Json,
    Dot,
    Svg,
}

impl Emit {
    fn name(self) -> &'static str {
        match self {
            Emit::Text => "text",
            Emit::Json => "json",
            Emit::Dot => "dot",
            Emit::Svg => "svg",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    #[default]
    Truncation,
}

impl From<Strategy> for AuxStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Truncation => AuxStrategy::Truncation,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lotus", version, about = "Toroidal resolution of plane curve singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    pub emit: Emit,
}

#[derive(Debug, Args)]
pub struct Input {
    /// A `.curve` file.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct Resolve {
    pub input: PathBuf,
    /// Choice of auxiliary curves.
    #[arg(long, value_enum, default_value_t = Strategy::Truncation)]
    pub aux_strategy: Strategy,
}

#[derive(Debug, Args)]
pub struct Truncatable {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Truncation)]
    pub aux_strategy: Strategy,
    /// Remove the basic vertices that are not branches.
    #[arg(long)]
    pub truncate: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polygon of the support, or of the branches.
    NewtonPolygon(Input),
    /// Slopes of the Newton fan.
    Fan(Input),
    /// Newton non-degeneracy of the support.
    CheckNdeg(Input),
    /// Toroidal pseudo-resolution record.
    Resolve(Resolve),
    /// Fan tree of the resolution.
    FanTree(Resolve),
    /// Eggers-Wall tree of the branches.
    EggersWall(Input),
    /// Glued lotus of the resolution, or the Newton lotus of `--slopes`.
    Lotus {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Strategy::Truncation)]
        aux_strategy: Strategy,
        #[arg(long)]
        truncate: bool,
        /// Comma separated positive slopes; may be empty.
        #[arg(long, conflicts_with = "input")]
        slopes: Option<String>,
    },
    /// Weighted dual graph of the total transform.
    DualGraph(Truncatable),
    /// Enriques tree of the lotus.
    Enriques(Resolve),
    /// Proximity graph of the exceptional divisors.
    Proximity(Resolve),
    /// Intersection number of two branches of the file.
    Intersect { input: PathBuf, a: String, b: String },
    /// Regularization of the Newton fan of a file, or of `--slopes`.
    Regularize {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        slopes: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::NewtonPolygon(_) => "newton-polygon",
            Command::Fan(_) => "fan",
            Command::CheckNdeg(_) => "check-ndeg",
            Command::Resolve(_) => "resolve",
            Command::FanTree(_) => "fan-tree",
            Command::EggersWall(_) => "eggers-wall",
            Command::Lotus { .. } => "lotus",
            Command::DualGraph(_) => "dual-graph",
            Command::Enriques(_) => "enriques",
            Command::Proximity(_) => "proximity",
            Command::Intersect { .. } => "intersect",
            Command::Regularize { .. } => "regularize",
        }
    }

    fn path(&self) -> Option<&PathBuf> {
        match self {
            Command::NewtonPolygon(i) | Command::Fan(i) | Command::CheckNdeg(i) | Command::EggersWall(i) => {
                Some(&i.input)
            }
            Command::Resolve(r) | Command::FanTree(r) | Command::Enriques(r) | Command::Proximity(r) => Some(&r.input),
            Command::DualGraph(t) => Some(&t.input),
            Command::Intersect { input, .. } => Some(input),
            Command::Lotus { input, .. } | Command::Regularize { input, .. } => input.as_ref(),
        }
    }
}

/// Restriction of the support to one compact edge.
#[derive(Clone, Debug)]
pub struct EdgeCheck {
    pub edge: (Point, Point),
    pub restriction: Vec<Rat>,
    pub squarefree: bool,
}

/// Everything a command can produce.
pub enum Artifact {
    Polygon(NewtonPolygon),
    Fan(Vec<Rat>),
    NonDegeneracy { nondegenerate: bool, edges: Vec<EdgeCheck> },
    Resolution(ResolutionRecord),
    FanTree(FanTree),
    EggersWall(EwTree),
    Lotus { lotus: Lotus, truncated: Option<TruncatedLotus> },
    DualGraph { lotus: Lotus, graph: DualGraph, truncated: bool },
    Enriques { lotus: Lotus, tree: EnriquesTree },
    Proximity { lotus: Lotus, edges: Vec<(VertexId, VertexId)> },
    Intersection { a: String, b: String, value: num_bigint::BigInt },
    Regularization { fan: Vec<Rat>, regular: Vec<Rat> },
}

pub fn parse_slopes(text: &str) -> Result<Vec<Rat>, CliError> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in text.split(',') {
        let t = part.trim();
        if !t.is_empty() {
            let r = parse_rat(t).map_err(|_| CliError::Parse { line: 1, col, msg: format!("invalid slope `{t}`") })?;
            out.push(r);
        }
        col += part.len() + 1;
    }
    Ok(out)
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &PathBuf) -> Result<(CurveFile, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let text =
        String::from_utf8(bytes.clone()).map_err(|_| CliError::Io(format!("{} is not UTF-8", path.display())))?;
    Ok((parse_curve(&text)?, bytes))
}

fn polygon_of(file: &CurveFile) -> Result<NewtonPolygon, CliError> {
    match &file.support {
        Some(s) => Ok(polygon_from_support(s)?),
        None => Ok(polygon_from_branches(file.require_branches()?, &PuiseuxSeries::zero())?),
    }
}

fn resolve(file: &CurveFile, strategy: Strategy) -> Result<ResolutionRecord, CliError> {
    Ok(pseudo_resolve(file.require_branches()?, strategy.into())?)
}

fn glued(file: &CurveFile, strategy: Strategy) -> Result<Lotus, CliError> {
    Ok(glue_lotuses(&resolve(file, strategy)?)?)
}

/// Runs one command; returns the artifact and the bytes that identify the input.
pub fn compute(cmd: &Command) -> Result<(Artifact, Vec<u8>), CliError> {
    let loaded = match cmd.path() {
        Some(p) => Some(read(p)?),
        None => None,
    };
    let (file, bytes) = match loaded {
        Some((f, b)) => (f, b),
        None => (CurveFile::default(), Vec::new()),
    };
    let artifact = match cmd {
        Command::NewtonPolygon(_) => Artifact::Polygon(polygon_of(&file)?),
        Command::Fan(_) => Artifact::Fan(newton_fan(&polygon_of(&file)?)),
        Command::CheckNdeg(_) => {
            let s =
                file.support.as_ref().ok_or_else(|| CliError::Domain("check-ndeg needs a `support` block".into()))?;
            let nondegenerate = is_newton_nondegenerate(s)?;
            let mut edges = Vec::new();
            for (u, v) in polygon_from_support(s)?.edges() {
                let restriction = edge_restriction(s, (&u, &v))?;
                let squarefree = lotus_core::polygon::is_squarefree(&restriction);
                edges.push(EdgeCheck { edge: (u, v), restriction, squarefree });
            }
            Artifact::NonDegeneracy { nondegenerate, edges }
        }
        Command::Resolve(r) => Artifact::Resolution(resolve(&file, r.aux_strategy)?),
        Command::FanTree(r) => Artifact::FanTree(fan_tree(&resolve(&file, r.aux_strategy)?)),
        Command::EggersWall(_) => Artifact::EggersWall(build_ew_tree(file.require_branches()?)?),
        Command::Lotus { aux_strategy, truncate, slopes, .. } => {
            let lotus = match slopes {
                Some(s) => build_newton_lotus(&parse_slopes(s)?)?,
                None if cmd.path().is_some() => glued(&file, *aux_strategy)?,
                None => return Err(CliError::Domain("lotus needs an input file or --slopes".into())),
            };
            let truncated = truncate.then(|| truncate_lotus(&lotus));
            Artifact::Lotus { lotus, truncated }
        }
        Command::DualGraph(t) => {
            let lotus = glued(&file, t.aux_strategy)?;
            let graph = if t.truncate { truncate_lotus(&lotus).dual } else { dual_graph(&lotus) };
            Artifact::DualGraph { lotus, graph, truncated: t.truncate }
        }
        Command::Enriques(r) => {
            let lotus = glued(&file, r.aux_strategy)?;
            let tree = enriques_tree(&lotus);
            Artifact::Enriques { lotus, tree }
        }
        Command::Proximity(r) => {
            let lotus = glued(&file, r.aux_strategy)?;
            let edges = proximity_graph(&lotus);
            Artifact::Proximity { lotus, edges }
        }
        Command::Intersect { a, b, .. } => {
            let (x, y) = (file.branch(a)?, file.branch(b)?);
            if a == b {
                return Err(CliError::Domain("intersection of a branch with itself".into()));
            }
            Artifact::Intersection { a: a.clone(), b: b.clone(), value: intersection_number(x, y)? }
        }
        Command::Regularize { slopes, .. } => {
            let fan = match slopes {
                Some(s) => parse_slopes(s)?,
                None if cmd.path().is_some() => newton_fan(&polygon_of(&file)?),
                None => return Err(CliError::Domain("regularize needs an input file or --slopes".into())),
            };
            let regular = regularize(&fan)?;
            let mut fan = fan;
            fan.sort();
            fan.dedup();
            Artifact::Regularization { fan, regular }
        }
    };
    let bytes = match cmd {
        Command::Lotus { slopes: Some(s), .. } | Command::Regularize { slopes: Some(s), .. } => s.as_bytes().to_vec(),
        _ => bytes,
    };
    Ok((artifact, bytes))
}

/// Renders the artifact in the requested format.
pub fn render(cli: &Cli, artifact: &Artifact, input: &[u8]) -> Result<String, CliError> {
    let unavailable =
        || CliError::Domain(format!("`--emit {}` is not available for `{}`", cli.emit.name(), cli.command.name()));
    match cli.emit {
        Emit::Text => Ok(text::render(artifact)),
        Emit::Json => Ok(json::report(cli.command.name(), &digest(input), artifact)),
        Emit::Dot => dot::render(artifact).ok_or_else(unavailable),
        Emit::Svg => svg::render(artifact).ok_or_else(unavailable),
    }
}

/// Parses the arguments, runs the command and returns `(exit code, stdout, stderr)`.
pub fn run_with_args<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 { (0, msg, String::new()) } else { (code, String::new(), msg) };
        }
    };
    let path = cli.command.path().map(|p| p.display().to_string());
    match compute(&cli.command).and_then(|(a, bytes)| render(&cli, &a, &bytes)) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), e.diagnostic(path.as_deref()) + "\n"),
    }
}
