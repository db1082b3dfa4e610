use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use focal_core::{Space, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Lightlike,
    Arcs,
    Frame,
    Focal,
    Cuspidal,
    Bifurcation,
    Classify,
    Ld,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartKind {
    Frenet,
    Lightlike,
}

impl ChartKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChartKind::Frenet => "frenet",
            ChartKind::Lightlike => "lightlike",
        }
    }
}

/// How 4-vectors are flattened for OBJ output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Projection {
    /// Keep `(x1, x2, x3)`.
    #[default]
    Drop4,
    /// Stereographic projection from the pole `e4`.
    Stereo,
}

impl Projection {
    pub fn apply(self, p: &[f64]) -> Option<[f64; 3]> {
        let out = match (p.len(), self) {
            (3, _) | (_, Projection::Drop4) => [p[0], p[1], p[2]],
            (_, Projection::Stereo) => {
                let d = 1.0 - p[3];
                [p[0] / d, p[1] / d, p[2] / d]
            }
        };
        out.iter().all(|x| x.is_finite()).then_some(out)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "focal",
    version,
    about = "Focal sets, lightlike points and singularities of curves in Minkowski and de Sitter space",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Curve description file.
    pub curve: PathBuf,

    /// Reinterpret the curve in this space (R31, S21, S31).
    #[arg(long, value_parser = parse_space)]
    pub space: Option<Space>,

    #[arg(long, value_enum)]
    pub chart: Option<ChartKind>,

    /// Samples along the curve, then along μ.
    #[arg(long, num_args = 1..=2, value_names = ["N", "M"])]
    pub grid: Vec<usize>,

    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub s_range: Vec<f64>,

    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub mu_range: Vec<f64>,

    /// Relative zero gate.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Arc-length guard band, as a fraction of the median speed.
    #[arg(long)]
    pub guard: Option<f64>,

    #[arg(long, value_enum, default_value_t = Projection::Drop4)]
    pub projection: Projection,

    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Per-vertex attribute CSV for `focal`/`bifurcation`.
    #[arg(long)]
    pub attrs: Option<PathBuf>,

    /// Suite for `verify`.
    #[arg(long, default_value = "all")]
    pub suite: String,

    /// Curve parameter for `classify`.
    #[arg(long)]
    pub at: Option<f64>,

    /// Point for `classify`, as coordinates.
    #[arg(long, num_args = 1..=4, value_delimiter = ',')]
    pub v: Vec<f64>,
}

fn parse_space(s: &str) -> Result<Space, String> {
    s.parse()
}

/// Validated knobs shared by the commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: (usize, usize),
    pub s_range: Option<(f64, f64)>,
    pub mu_range: Option<(f64, f64)>,
    pub tolerances: Tolerances,
    pub projection: Projection,
    pub out: Option<PathBuf>,
    pub attrs: Option<PathBuf>,
}

pub const DEFAULT_GRID: (usize, usize) = (64, 32);

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, String> {
        let grid = match cli.grid.as_slice() {
            [] => DEFAULT_GRID,
            [n] => (*n, DEFAULT_GRID.1),
            [n, m] => (*n, *m),
            _ => unreachable!("clap limits --grid to two values"),
        };
        if grid.0 == 0 || grid.1 == 0 {
            return Err("--grid sizes must be positive".into());
        }
        let range = |v: &[f64], flag: &str| -> Result<Option<(f64, f64)>, String> {
            match v {
                [] => Ok(None),
                [a, b] if a.is_finite() && b.is_finite() && a <= b => Ok(Some((*a, *b))),
                _ => Err(format!("{flag} needs finite a <= b")),
            }
        };
        let mut tolerances = Tolerances::default();
        if let Some(t) = cli.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err("--tol must be positive".into());
            }
            tolerances = tolerances.with_zero(t);
        }
        if let Some(g) = cli.guard {
            if !(g > 0.0 && g.is_finite()) {
                return Err("--guard must be positive".into());
            }
            tolerances = tolerances.with_guard(g);
        }
        Ok(RunConfig {
            grid,
            s_range: range(&cli.s_range, "--s-range")?,
            mu_range: range(&cli.mu_range, "--mu-range")?,
            tolerances,
            projection: cli.projection,
            out: cli.out.clone(),
            attrs: cli.attrs.clone(),
        })
    }
}
