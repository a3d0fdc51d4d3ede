//! Command line definitions and dispatch.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use posetdegen::exact::{self, Point};
use posetdegen::polytope::LatticePolytope;
use posetdegen::{
    build_flag_poset, build_mrpp, build_polytope, check_normality, cone_position, ehrhart_values,
    flag_polytope, ideal_presentation, marked, mrpp_subdivide, refinement_epsilon, standardize,
    subdivide, zhu_components, ConeClass, Error, FlagData, FlagMode, Ideal, IdealLattice,
    Marking, NormalityReport, PlueckerMode, PolytopeKind, PresentationKind, RelativeStructure,
    StandardizedStructure, WeightVector,
};
use serde_json::{json, Map, Value};

use crate::error::{CliError, ParseError};
use crate::files::{ideal_key, load_structure, PosetFile, WeightsFile};
use crate::report::{self, Format, Report};

/// Bound on the element count for commands that enumerate linear extensions or boxes.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;
pub const SIZE_BOUND_VAR: &str = "POSETDEGEN_SIZE_BOUND";

#[derive(Debug, Parser)]
#[command(name = "posetdegen", version, about = "Relative poset polytopes and their degenerations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Order,
    Chain,
    Relative,
    Mrpp,
    Gt,
    Fflv,
    Mcop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GensArg {
    Hibi,
    Hibili,
    Relative,
    Monomial,
}

impl From<GensArg> for PresentationKind {
    fn from(k: GensArg) -> Self {
        match k {
            GensArg::Hibi => PresentationKind::Hibi,
            GensArg::Hibili => PresentationKind::HibiLi,
            GensArg::Relative => PresentationKind::Relative,
            GensArg::Monomial => PresentationKind::Monomial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Gt,
    Fflv,
}

impl From<ModeArg> for FlagMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Gt => FlagMode::Gt,
            ModeArg::Fflv => FlagMode::Fflv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    O,
    C,
    Gt,
    Fflv,
}

impl From<MapArg> for PlueckerMode {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::O => PlueckerMode::O,
            MapArg::C => PlueckerMode::C,
            MapArg::Gt => PlueckerMode::Gt,
            MapArg::Fflv => PlueckerMode::Fflv,
        }
    }
}

#[derive(Clone, Debug, clap::Args)]
pub struct WeightArgs {
    /// Weights file keyed by comma-joined ideal labels.
    pub weights: PathBuf,
    /// Treat ideals missing from the weights file as weight 0.
    #[arg(long)]
    pub default_zero: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a poset file and print it in normal form.
    Validate { poset: PathBuf },
    /// List the order ideals.
    Ideals { poset: PathBuf },
    /// Vertices and lattice points of a polytope.
    Polytope {
        /// Poset file (not used for `gt` and `fflv`).
        poset: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Chain part `C` of the unmarked elements, for `--kind mcop`.
        #[arg(long, value_delimiter = ',')]
        chain_part: Vec<String>,
        /// Rank `n` of `gl_n`, for `gt` and `fflv`.
        #[arg(long)]
        n: Option<usize>,
        /// Flag dimensions `0,d_1,...,n`, for `gt` and `fflv`.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// Lattice-point counts of the dilations `1..=M`.
    Ehrhart {
        poset: PathBuf,
        #[arg(long)]
        max_dilation: usize,
    },
    /// Check that lattice points of dilations are sums of vertices.
    Normality {
        poset: PathBuf,
        #[arg(long)]
        max_dilation: usize,
    },
    /// Position of a weight vector relative to the cone of regular weights.
    ConeCheck {
        poset: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Regular subdivision induced by a weight vector.
    Subdivide {
        poset: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Components of the degeneration induced by a weight vector.
    Components {
        poset: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Quadratic generators of a toric or monomial ideal.
    IdealGens {
        poset: PathBuf,
        #[arg(long, value_enum)]
        kind: GensArg,
    },
    /// Standard form of a marked structure.
    Standardize { poset: PathBuf },
    /// Find a chain-order partition whose polytope equals the marked polytope.
    McopRecognize { poset: PathBuf },
    /// Flag poset of type A.
    Flag {
        /// Rank `n` of `gl_n`.
        #[arg(long)]
        n: usize,
        /// Flag dimensions `0,d_1,...,n`.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Gelfand-Tsetlin or FFLV weak order.
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(subcommand)]
        action: FlagAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FlagAction {
    /// Print the structure as a poset file.
    Poset,
    /// Validate the flag structure.
    Validate,
    /// List the order ideals with their Plücker variables.
    Ideals,
    /// Vertices and lattice points of the GT or FFLV polytope.
    Polytope,
    /// Lattice-point counts of the dilations `1..=M`.
    Ehrhart {
        #[arg(long)]
        max_dilation: usize,
    },
    /// Check that lattice points of dilations are sums of vertices.
    Normality {
        #[arg(long)]
        max_dilation: usize,
    },
    /// Position of a weight vector relative to the cone of regular weights.
    ConeCheck {
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Regular subdivision induced by a weight vector.
    Subdivide {
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Quadratic generators of a toric or monomial ideal.
    IdealGens {
        #[arg(long, value_enum)]
        kind: GensArg,
    },
    /// Standard form of the marked structure.
    Standardize,
    /// Find a chain-order partition whose polytope equals the flag polytope.
    McopRecognize,
    /// Plücker index maps; all indices unless `--index` is given.
    Pluecker {
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long, value_delimiter = ',')]
        index: Vec<usize>,
    },
}

/// A validated structure, optionally coming from a flag poset.
struct Input {
    structure: RelativeStructure,
    flag: Option<(FlagData, FlagMode)>,
    context: String,
}

impl Input {
    fn from_file(path: &Path) -> Result<Self, CliError> {
        Ok(Input {
            structure: load_structure(path)?,
            flag: None,
            context: path.display().to_string(),
        })
    }

    fn from_flag(n: usize, dims: &[usize], mode: FlagMode) -> Result<Self, CliError> {
        let context = format!("flag n={n} dims={dims:?}");
        let data = build_flag_poset(n, dims).map_err(CliError::validation(&context))?;
        let structure = data.structure(mode).map_err(CliError::validation(&context))?;
        Ok(Input {
            structure,
            flag: Some((data, mode)),
            context,
        })
    }

    fn fail(&self) -> impl FnOnce(Error) -> CliError {
        CliError::validation(&self.context)
    }

    fn marking(&self) -> Result<&Marking, CliError> {
        self.structure
            .marking()
            .ok_or_else(|| (self.fail())(Error::MarkingMissing))
    }

    fn check_size(&self) -> Result<(), CliError> {
        let bound = size_bound();
        if self.structure.len() > bound {
            return Err((self.fail())(Error::SizeBoundExceeded {
                size: self.structure.len(),
                bound,
            }));
        }
        Ok(())
    }

    fn standardized(&self) -> Result<StandardizedStructure, CliError> {
        standardize(&self.structure, self.marking()?).map_err(self.fail())
    }

    /// The ideals the weights file is keyed by: `J(P)` unmarked, `J_λ` marked.
    fn weight_ideals(&self) -> Result<Vec<Ideal>, CliError> {
        Ok(match self.structure.marking() {
            None => IdealLattice::enumerate(self.structure.poset()).ideals().to_vec(),
            Some(_) => self.standardized()?.sublattice.ideals().to_vec(),
        })
    }

    fn weights(&self, args: &WeightArgs) -> Result<WeightVector, CliError> {
        let file = WeightsFile::load(&args.weights)?;
        let ideals = self.weight_ideals()?;
        Ok(file.to_weights(
            self.structure.poset(),
            &ideals,
            args.default_zero,
            &args.weights.display().to_string(),
        )?)
    }

    /// Plücker variable name for flag inputs, the ideal key otherwise.
    fn variable(&self, j: Ideal) -> String {
        if let Some((data, mode)) = &self.flag {
            if let Ok(name) = data.variable_name(*mode, j) {
                return name;
            }
        }
        format!("X_{{{}}}", ideal_key(self.structure.poset(), j))
    }
}

fn size_bound() -> usize {
    std::env::var(SIZE_BOUND_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BOUND)
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { poset } => validate(&Input::from_file(poset)?),
        Command::Ideals { poset } => ideals(&Input::from_file(poset)?),
        Command::Polytope {
            poset,
            kind,
            chain_part,
            n,
            dims,
        } => match kind {
            KindArg::Gt | KindArg::Fflv => {
                let n = n.ok_or_else(|| ParseError::Usage("--kind gt|fflv needs --n".into()))?;
                if dims.is_empty() {
                    return Err(ParseError::Usage("--kind gt|fflv needs --dims".into()).into());
                }
                let mode = if *kind == KindArg::Gt {
                    FlagMode::Gt
                } else {
                    FlagMode::Fflv
                };
                polytope(&Input::from_flag(n, dims, mode)?, None, &[])
            }
            _ => {
                let path = poset
                    .as_ref()
                    .ok_or_else(|| ParseError::Usage("missing poset file".into()))?;
                polytope(&Input::from_file(path)?, Some(*kind), chain_part)
            }
        },
        Command::Ehrhart {
            poset,
            max_dilation,
        } => ehrhart(&Input::from_file(poset)?, *max_dilation),
        Command::Normality {
            poset,
            max_dilation,
        } => normality(&Input::from_file(poset)?, *max_dilation),
        Command::ConeCheck { poset, weights } => cone_check(&Input::from_file(poset)?, weights),
        Command::Subdivide { poset, weights } => subdivision(&Input::from_file(poset)?, weights),
        Command::Components { poset, weights } => components(&Input::from_file(poset)?, weights),
        Command::IdealGens { poset, kind } => ideal_gens(&Input::from_file(poset)?, *kind),
        Command::Standardize { poset } => standard_form(&Input::from_file(poset)?),
        Command::McopRecognize { poset } => mcop(&Input::from_file(poset)?),
        Command::Flag {
            n,
            dims,
            mode,
            action,
        } => {
            let input = Input::from_flag(*n, dims, (*mode).into())?;
            match action {
                FlagAction::Poset | FlagAction::Validate => validate(&input),
                FlagAction::Ideals => ideals(&input),
                FlagAction::Polytope => polytope(&input, None, &[]),
                FlagAction::Ehrhart { max_dilation } => ehrhart(&input, *max_dilation),
                FlagAction::Normality { max_dilation } => normality(&input, *max_dilation),
                FlagAction::ConeCheck { weights } => cone_check(&input, weights),
                FlagAction::Subdivide { weights } => subdivision(&input, weights),
                FlagAction::IdealGens { kind } => ideal_gens(&input, *kind),
                FlagAction::Standardize => standard_form(&input),
                FlagAction::McopRecognize => mcop(&input),
                FlagAction::Pluecker { map, index } => pluecker(&input, (*map).into(), index),
            }
        }
    }
}

fn validate(input: &Input) -> Result<Report, CliError> {
    let s = &input.structure;
    let file = PosetFile::from_structure(s);
    let mut text = format!(
        "valid: {} elements, {} relations, {} weak relations, {} marked\n",
        s.len(),
        s.poset().relation_count(),
        s.weak().relation_count(),
        file.marked.len()
    );
    text.push_str("order:\n");
    text.push_str(&report::hasse_text(s.poset(), 2));
    text.push_str("weak order:\n");
    text.push_str(&report::hasse_text(s.weak(), 2));
    let json = serde_json::to_value(&file).expect("poset files serialize");
    Ok(Report::new(json, text))
}

fn ideals(input: &Input) -> Result<Report, CliError> {
    let s = &input.structure;
    let lattice = IdealLattice::enumerate(s.poset());
    let mut text = format!("{} ideals\n", lattice.len());
    for &j in lattice.ideals() {
        let _ = writeln!(text, "{}", report::ideal_text(s.poset(), j));
    }
    let json = json!({
        "count": lattice.len(),
        "ideals": lattice.ideals().iter().map(|&j| report::ideal(s.poset(), j)).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text))
}

fn polytope_report(kind: &str, p: &LatticePolytope) -> Report {
    let mut text = format!(
        "{kind} polytope in R^{}: {} vertices, {} lattice points, dimension {}\n",
        p.ambient_dim(),
        p.vertices.len(),
        p.lattice_points.len(),
        p.dimension().map_or("empty".to_string(), |d| d.to_string())
    );
    let _ = writeln!(text, "coordinates: {}", p.coordinates.join(" "));
    text.push_str("vertices:\n");
    for v in &p.vertices {
        let _ = writeln!(text, "  {}", report::point_text(v));
    }
    let json = json!({
        "kind": kind,
        "coordinates": p.coordinates,
        "dimension": p.dimension(),
        "vertices": report::points(&p.vertices),
        "lattice_points": report::points(&p.lattice_points),
    });
    Report::new(json, text)
}

fn polytope(input: &Input, kind: Option<KindArg>, chain_part: &[String]) -> Result<Report, CliError> {
    let s = &input.structure;
    let (name, p) = match kind {
        None => {
            let (data, mode) = input.flag.as_ref().expect("flag input");
            let name = match mode {
                FlagMode::Gt => "gt",
                FlagMode::Fflv => "fflv",
            };
            (name, flag_polytope(data, *mode).map_err(input.fail())?)
        }
        Some(KindArg::Order) => ("order", build_polytope(s, PolytopeKind::Order)),
        Some(KindArg::Chain) => ("chain", build_polytope(s, PolytopeKind::Chain)),
        Some(KindArg::Relative) => ("relative", build_polytope(s, PolytopeKind::Relative)),
        Some(KindArg::Mrpp) => ("mrpp", build_mrpp(s, input.marking()?).map_err(input.fail())?),
        Some(KindArg::Mcop) => {
            let lambda = input.marking()?;
            let poset = s.poset();
            let mut c = 0u64;
            for label in chain_part {
                let p = poset.require(label).map_err(input.fail())?;
                c |= 1u64 << p;
            }
            let o = poset.full() & !lambda.marked_set() & !c;
            let p = marked::mcop_build(poset, lambda, c, o).map_err(input.fail())?;
            ("mcop", p)
        }
        Some(KindArg::Gt | KindArg::Fflv) => unreachable!("handled by the flag path"),
    };
    Ok(polytope_report(name, &p))
}

fn ehrhart(input: &Input, max_dilation: usize) -> Result<Report, CliError> {
    let s = &input.structure;
    let counts: Vec<usize> = match s.marking() {
        None => ehrhart_values(s, max_dilation)[1..].to_vec(),
        Some(lambda) => (1..=max_dilation)
            .map(|m| marked::mrpp_points(s, lambda, m).map(|p| p.len()))
            .collect::<posetdegen::Result<_>>()
            .map_err(input.fail())?,
    };
    let mut map = Map::new();
    let mut text = String::new();
    for (i, c) in counts.iter().enumerate() {
        map.insert((i + 1).to_string(), json!(c));
        let _ = writeln!(text, "{}: {c}", i + 1);
    }
    Ok(Report::new(Value::Object(map), text))
}

fn normality(input: &Input, max_dilation: usize) -> Result<Report, CliError> {
    input.check_size()?;
    let (json, text) = match check_normality(&input.structure, max_dilation) {
        NormalityReport::Certified { k_max } => (
            json!({"normal": true, "max_dilation": k_max}),
            format!("normal up to dilation {k_max}\n"),
        ),
        NormalityReport::Counterexample { k, point } => (
            json!({"normal": false, "dilation": k, "point": point}),
            format!("not normal: {} in dilation {k}\n", report::point_text(&point)),
        ),
    };
    Ok(Report::new(json, text))
}

fn pair_keys(input: &Input, lift: &dyn Fn(Ideal) -> Ideal, pairs: &[(Ideal, Ideal)]) -> Value {
    let poset = input.structure.poset();
    Value::Array(
        pairs
            .iter()
            .map(|&(a, b)| json!([ideal_key(poset, lift(a)), ideal_key(poset, lift(b))]))
            .collect(),
    )
}

fn cone_check(input: &Input, args: &WeightArgs) -> Result<Report, CliError> {
    let w = input.weights(args)?;
    let (target, w, std) = match input.structure.marking() {
        None => (input.structure.clone(), w, None),
        Some(_) => {
            let std = input.standardized()?;
            let w = std.transport_weights(&w);
            (std.quotient.clone(), w, Some(std))
        }
    };
    let lift = |m: Ideal| std.as_ref().map_or(m, |st| st.lift_ideal(m));
    let cone = cone_position(&target, &w).map_err(input.fail())?;
    let mut json = json!({
        "class": cone.class.name(),
        "tight": pair_keys(input, &lift, &cone.tight),
        "violated": pair_keys(input, &lift, &cone.violated),
    });
    let mut text = format!(
        "{}: {} tight, {} violated\n",
        cone.class.name(),
        cone.tight.len(),
        cone.violated.len()
    );
    if cone.class != ConeClass::Outside {
        let eps = refinement_epsilon(&target, &w).map_err(input.fail())?;
        json["refinement_epsilon"] = report::rational(&eps);
        let _ = writeln!(text, "refinement epsilon: {eps}");
    }
    let status = if cone.class == ConeClass::Outside { 3 } else { 0 };
    Ok(Report::new(json, text).with_status(status))
}

fn vanishing(input: &Input, ideals: &[Ideal], inside: &[Ideal]) -> Vec<String> {
    ideals
        .iter()
        .filter(|j| !inside.contains(j))
        .map(|&j| input.variable(j))
        .collect()
}

fn subdivision(input: &Input, args: &WeightArgs) -> Result<Report, CliError> {
    input.check_size()?;
    let w = input.weights(args)?;
    let s = &input.structure;
    let ideals = input.weight_ideals()?;
    let mut parts = Vec::new();
    let mut text = String::new();
    match s.marking() {
        None => {
            let sub = subdivide(s, &w).map_err(input.fail())?;
            let _ = writeln!(
                text,
                "{} parts over {} simplices",
                sub.parts.len(),
                sub.linearization_count
            );
            for (i, part) in sub.parts.iter().enumerate() {
                let mut vertices = part.vertices(s.weak());
                vertices.sort();
                let added = part.added_covers(s.poset());
                parts.push(json!({
                    "added_covers": report::label_pairs(s.poset(), &added),
                    "order_covers": report::label_pairs(s.poset(), &part.order.covers()),
                    "vertices": report::points(&vertices),
                    "lattice_points": report::points(&vertices),
                    "vanishing_variables": vanishing(input, &ideals, &part.sublattice),
                    "simplex_count": part.simplices.len(),
                    "affine": {
                        "normal": part.affine.normal.iter().map(report::rational).collect::<Vec<_>>(),
                        "constant": report::rational(&part.affine.constant),
                    },
                }));
                part_text(&mut text, i, &part.order, &added, vertices.len(), part.simplices.len());
            }
            Ok(Report::new(
                json!({"linearization_count": sub.linearization_count, "parts": parts}),
                text,
            ))
        }
        Some(lambda) => {
            let sub = mrpp_subdivide(s, lambda, &w).map_err(input.fail())?;
            let std = &sub.standardized;
            let q = std.quotient.poset();
            let _ = writeln!(text, "{} parts", sub.parts.len());
            for (i, part) in sub.parts.iter().enumerate() {
                let source = &sub.unmarked.parts[part.source];
                let inside: Vec<Ideal> = source.sublattice.iter().map(|&m| std.lift_ideal(m)).collect();
                let vertices = exact::extreme_points(&part.lattice_points);
                let added: Vec<(usize, usize)> = part
                    .order
                    .covers()
                    .into_iter()
                    .filter(|&(a, b)| !q.less(a, b))
                    .collect();
                parts.push(json!({
                    "added_covers": report::label_pairs(q, &added),
                    "order_covers": report::label_pairs(q, &part.order.covers()),
                    "vertices": report::points(&sorted(vertices.clone())),
                    "lattice_points": report::points(&part.lattice_points),
                    "vanishing_variables": vanishing(input, &ideals, &inside),
                }));
                part_text(&mut text, i, &part.order, &added, vertices.len(), source.simplices.len());
            }
            Ok(Report::new(
                json!({
                    "coordinates": q.labels(),
                    "dimension": sub.dimension,
                    "parts": parts,
                }),
                text,
            ))
        }
    }
}

fn sorted(mut v: Vec<Point>) -> Vec<Point> {
    v.sort();
    v
}

fn part_text(
    text: &mut String,
    i: usize,
    order: &posetdegen::Poset,
    added: &[(usize, usize)],
    vertex_count: usize,
    simplex_count: usize,
) {
    let _ = writeln!(
        text,
        "part {i}: {vertex_count} vertices, {simplex_count} simplices, {} added covers",
        added.len()
    );
    for &(p, q) in added {
        let _ = writeln!(text, "  adds {} < {}", order.label(p), order.label(q));
    }
    text.push_str("  order:\n");
    text.push_str(&report::hasse_text(order, 4));
}

fn generator_json(input: &Input, g: &posetdegen::degeneration::Generator) -> Value {
    let key = |j: Ideal| ideal_key(input.structure.poset(), j);
    json!({
        "left": [key(g.left.0), key(g.left.1)],
        "right": g.right.map(|(a, b)| json!([key(a), key(b)])),
    })
}

fn generator_text(input: &Input, g: &posetdegen::degeneration::Generator) -> String {
    let left = format!("{} {}", input.variable(g.left.0), input.variable(g.left.1));
    match g.right {
        Some((a, b)) => format!("{left} - {} {}", input.variable(a), input.variable(b)),
        None => left,
    }
}

fn components(input: &Input, args: &WeightArgs) -> Result<Report, CliError> {
    input.check_size()?;
    if input.structure.marking().is_some() {
        return Err((input.fail())(Error::KindMismatch(
            "components are computed for unmarked structures".into(),
        )));
    }
    let w = input.weights(args)?;
    let s = &input.structure;
    let poset = s.poset();
    let comps = zhu_components(s, &w).map_err(input.fail())?;
    let mut out = Vec::new();
    let mut text = format!("{} components\n", comps.len());
    for (i, c) in comps.iter().enumerate() {
        out.push(json!({
            "sublattice": c.sublattice.iter().map(|&j| ideal_key(poset, j)).collect::<Vec<_>>(),
            "order_covers": report::label_pairs(poset, &c.order.covers()),
            "generators": c.presentation.generators.iter().map(|g| generator_json(input, g)).collect::<Vec<_>>(),
            "vanishing_variables": c.vanishing.iter().map(|&j| input.variable(j)).collect::<Vec<_>>(),
        }));
        let _ = writeln!(
            text,
            "component {i}: {} ideals, {} generators, {} vanishing variables",
            c.sublattice.len(),
            c.presentation.generators.len(),
            c.vanishing.len()
        );
        text.push_str(&report::hasse_text(&c.order, 2));
    }
    Ok(Report::new(json!({ "components": out }), text))
}

fn ideal_gens(input: &Input, kind: GensArg) -> Result<Report, CliError> {
    let pres = ideal_presentation(&input.structure, kind.into()).map_err(input.fail())?;
    let mut text = format!("{} generators ({})\n", pres.generators.len(), pres.kind.name());
    for g in &pres.generators {
        let _ = writeln!(text, "{}", generator_text(input, g));
    }
    let json = json!({
        "kind": pres.kind.name(),
        "generators": pres.generators.iter().map(|g| generator_json(input, g)).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text))
}

fn standard_form(input: &Input) -> Result<Report, CliError> {
    let std = input.standardized()?;
    let p = input.structure.poset();
    let q = std.quotient.poset();
    let mut classes = BTreeMap::new();
    let mut theta = BTreeMap::new();
    for (i, label) in q.labels().iter().enumerate() {
        classes.insert(label.clone(), p.names(std.classes[i]));
        theta.insert(label.clone(), p.label(std.theta[i]).to_string());
    }
    let file = PosetFile::from_structure(&std.quotient);
    let mut text = format!(
        "{} classes{}\n",
        q.len(),
        if std.is_identity() { ", already standard" } else { "" }
    );
    for (label, members) in &classes {
        let _ = writeln!(text, "  {label}: {}", members.join(" "));
    }
    text.push_str("order:\n");
    text.push_str(&report::hasse_text(q, 2));
    let json = json!({
        "identity": std.is_identity(),
        "classes": classes,
        "theta": theta,
        "structure": serde_json::to_value(&file).expect("poset files serialize"),
    });
    Ok(Report::new(json, text))
}

fn mcop(input: &Input) -> Result<Report, CliError> {
    input.check_size()?;
    let s = &input.structure;
    let lambda = input.marking()?;
    let target = build_mrpp(s, lambda).map_err(input.fail())?;
    let found = marked::mcop_recognize(s, lambda, &target).map_err(input.fail())?;
    let poset = s.poset();
    Ok(match found {
        Some((c, o)) => Report::new(
            json!({"mcop": {"chain_part": poset.names(c), "order_part": poset.names(o)}}),
            format!(
                "marked chain-order polytope with C = {{{}}}, O = {{{}}}\n",
                poset.names(c).join(","),
                poset.names(o).join(",")
            ),
        ),
        None => Report::new(
            json!({ "mcop": null }),
            "not a marked chain-order polytope\n".to_string(),
        ),
    })
}

fn pluecker(input: &Input, mode: PlueckerMode, index: &[usize]) -> Result<Report, CliError> {
    let (data, _) = input.flag.as_ref().expect("flag input");
    let labels_of = |j: Ideal| -> Result<Vec<String>, Error> {
        Ok(match mode {
            PlueckerMode::O | PlueckerMode::C => data.grassmann(mode)?.poset.names(j.bits()),
            _ => data.poset().names(j.bits()),
        })
    };
    let indices = if index.is_empty() {
        data.pluecker_indices(mode).map_err(input.fail())?
    } else {
        vec![index.to_vec()]
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    for idx in indices {
        let j = data.pluecker_to_ideal(mode, &idx).map_err(input.fail())?;
        let back = data.ideal_to_pluecker(mode, j).map_err(input.fail())?;
        let labels = labels_of(j).map_err(input.fail())?;
        let _ = writeln!(text, "{:?} -> {{{}}}", idx, labels.join(","));
        rows.push(json!({"index": idx, "ideal": labels, "inverse": back}));
    }
    Ok(Report::new(json!({"map": mode.name(), "entries": rows}), text))
}

/// Parses arguments and runs, returning the rendered output and exit status.
pub fn execute<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (rendered, String::new(), 0)
            } else {
                (String::new(), rendered, code)
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let out = report.render(cli.format);
            match &cli.out {
                Some(path) => match std::fs::write(path, &out) {
                    Ok(()) => (String::new(), String::new(), report.status),
                    Err(e) => (String::new(), format!("{}\n", CliError::Output(e)), 1),
                },
                None => (out, String::new(), report.status),
            }
        }
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
