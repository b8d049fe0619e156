//! `bialg`: enumeration, construction, verification, identification and
//! classification of almost-factorizable real Lie bialgebra data.

pub mod verify;

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use simple_bialgebras::bdtriple::{enumerate_bd_triples, BDTriple, BDTripleJson, DiagramAutomorphism};
use simple_bialgebras::involution::{enumerate_canonical, Involution, InvolutionJson};
use simple_bialgebras::parameter::{apply_reality, check_compatibility, solve_parameters, ParameterSpaceJson};
use simple_bialgebras::realform::{identify, painted_from_j, RealFormReport};
use simple_bialgebras::rmatrix::{classify, BialgebraDatum, BialgebraDatumJson, TClass};
use simple_bialgebras::rootsystem::{build_root_system, RootSystem, SimpleType};
use simple_bialgebras::scalar::{format_scalar, from_int, imag_unit, parse_scalar, GaussianRational};

use crate::verify::{verify_json, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] simple_bialgebras::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bialg", version, about = "Almost-factorizable Lie bialgebra structures on real simple Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List BD triples, canonical involutions or bialgebra data.
    Enumerate(EnumerateArgs),
    /// Build one datum.
    Build(BuildArgs),
    /// Re-check every identity of serialized data.
    Verify(VerifyArgs),
    /// Name the real form of a canonical involution.
    Identify(IdentifyArgs),
    /// Group data into isomorphism classes.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Series letter (A..G), or a full type such as `B3`.
    #[arg(long = "type")]
    pub series: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

impl TypeArgs {
    pub fn simple_type(&self) -> CliResult<SimpleType> {
        let text = match self.rank {
            Some(r) if self.series.len() == 1 => format!("{}{r}", self.series.to_uppercase()),
            None if self.series.len() > 1 => self.series.to_uppercase(),
            Some(_) => return Err(usage("give the rank either in --type or in --rank, not both")),
            None => return Err(usage("--rank is required")),
        };
        Ok(text.parse()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SigmaKind {
    Varsigma,
    VarsigmaMu,
    Omega,
    #[value(name = "omega-J")]
    OmegaJ,
    #[value(name = "omega-mu-J")]
    OmegaMuJ,
}

impl SigmaKind {
    fn label(self) -> &'static str {
        match self {
            SigmaKind::Varsigma => "varsigma",
            SigmaKind::VarsigmaMu => "varsigma-mu",
            SigmaKind::Omega => "omega",
            SigmaKind::OmegaJ => "omega-J",
            SigmaKind::OmegaMuJ => "omega-mu-J",
        }
    }

    fn takes_j(self) -> bool {
        matches!(self, SigmaKind::OmegaJ | SigmaKind::OmegaMuJ)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct SigmaArgs {
    #[arg(long, value_enum)]
    pub sigma: Option<SigmaKind>,
    /// Diagram involution as a 1-based permutation, e.g. `3,2,1`.
    #[arg(long, value_delimiter = ',')]
    pub mu: Vec<usize>,
    /// Compact μ-fixed simple roots (1-based).
    #[arg(long = "J", value_delimiter = ',')]
    pub j: Vec<usize>,
    /// Painted (non-compact) μ-fixed simple roots (1-based); alternative to --J.
    #[arg(long, value_delimiter = ',')]
    pub painted: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    BdTriples,
    Involutions,
    Bialgebras,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[arg(long, value_enum, default_value_t = What::Bialgebras)]
    pub what: What,
    #[command(flatten)]
    pub sigma: SigmaArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TKind {
    Real,
    Imaginary,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[command(flatten)]
    pub sigma: SigmaArgs,
    /// BD triple as 1-based arrows, e.g. `1->2,2->3`; `none` for empty.
    #[arg(long, default_value = "none")]
    pub bd: String,
    #[arg(long, value_enum)]
    pub t: Option<TKind>,
    /// Positive magnitude of t, e.g. `2` or `3/2`.
    #[arg(long, default_value = "1")]
    pub t_value: String,
    /// Real coordinates of λ along the parameter directions.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Datum JSON (object, array, or `enumerate` output); `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct IdentifyArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[command(flatten)]
    pub sigma: SigmaArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Data to classify; without it, the enumerated base-point data of
    /// --type are used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long = "type")]
    pub series: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[command(flatten)]
    pub sigma: SigmaArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Column table for the `csv` and `pretty` formats.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| usage(e.to_string()))
    }

    fn pretty(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> =
                cells.iter().zip(&width).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = vec![line(self.header.clone())];
        for r in &self.rows {
            out.push(line(r.iter().map(String::as_str).collect()));
        }
        out.join("\n") + "\n"
    }
}

fn emit(output: &OutputArgs, json: &impl Serialize, table: Table) -> CliResult<()> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Csv => table.csv()?,
        Format::Pretty => table.pretty(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn one_based(v: &[usize]) -> String {
    v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn zero_based(v: &[usize], rank: usize, flag: &str) -> CliResult<BTreeSet<usize>> {
    v.iter()
        .map(|&i| {
            if (1..=rank).contains(&i) {
                Ok(i - 1)
            } else {
                Err(usage(format!("--{flag} index {i} out of range 1..={rank}")))
            }
        })
        .collect()
}

/// Canonical involutions matching the sigma flags, in enumeration order.
pub fn matching_involutions(rs: &RootSystem, args: &SigmaArgs) -> CliResult<Vec<Involution>> {
    let n = rs.rank();
    let has_j = !args.j.is_empty() || !args.painted.is_empty();
    if !args.j.is_empty() && !args.painted.is_empty() {
        return Err(usage("--J and --painted are mutually exclusive"));
    }
    if has_j && !args.sigma.is_some_and(SigmaKind::takes_j) {
        return Err(usage("--J/--painted require --sigma omega-J or omega-mu-J"));
    }
    let mu = if args.mu.is_empty() {
        None
    } else {
        if args.mu.len() != n || zero_based(&args.mu, n, "mu")?.len() != n {
            return Err(usage("--mu must be a permutation of 1..=rank"));
        }
        let perm: Vec<usize> = args.mu.iter().map(|i| i - 1).collect();
        Some(DiagramAutomorphism::new(perm, rs.cartan_matrix())?)
    };
    let j = zero_based(&args.j, n, "J")?;
    let painted = zero_based(&args.painted, n, "painted")?;
    Ok(enumerate_canonical(rs)
        .into_iter()
        .filter(|s| {
            let row = s.table_row().expect("canonical");
            args.sigma.is_none_or(|k| k.label() == row.label())
                && mu.as_ref().is_none_or(|m| s.mu() == Some(m))
                && (args.j.is_empty() || s.j() == Some(&j))
                && (args.painted.is_empty() || painted_from_j(s) == Some(painted.clone()))
        })
        .collect())
}

fn single_involution(rs: &RootSystem, args: &SigmaArgs) -> CliResult<Involution> {
    if args.sigma.is_none() {
        return Err(usage("--sigma is required"));
    }
    let mut found = matching_involutions(rs, args)?;
    match found.len() {
        0 => Err(usage("no canonical involution matches the given --sigma/--mu/--J")),
        1 => Ok(found.remove(0)),
        k => Err(usage(format!("{k} involutions match; narrow the choice with --mu and --J/--painted"))),
    }
}

fn sigma_columns(s: &Involution) -> (String, String, String) {
    let json = s.to_json().expect("canonical");
    let row = s.table_row().expect("canonical");
    (row.label().to_string(), one_based(&json.mu), one_based(&json.j))
}

#[derive(Serialize)]
struct BdRow {
    index: usize,
    arrows: String,
    #[serde(flatten)]
    triple: BDTripleJson,
}

#[derive(Serialize)]
struct InvolutionRow {
    index: usize,
    table_row: usize,
    sigma: InvolutionJson,
    kind: String,
    real_form: String,
    painted: Vec<usize>,
}

#[derive(Serialize)]
pub struct BialgebraRow {
    pub index: usize,
    #[serde(rename = "type")]
    pub simple_type: String,
    pub table_row: usize,
    pub kind: String,
    pub real_form: String,
    pub bd: String,
    pub parameter_dim: usize,
    pub t_class: TClass,
    pub datum: BialgebraDatumJson,
    pub parameter_space: ParameterSpaceJson,
}

fn default_t(s: &Involution) -> GaussianRational {
    if s.table_row().expect("canonical").t_is_real() {
        from_int(1)
    } else {
        imag_unit()
    }
}

/// Base-point data for every compatible (σ, triple) pair.
pub fn enumerate_bialgebras(rs: &RootSystem, sigmas: &[Involution]) -> CliResult<Vec<BialgebraRow>> {
    let triples = enumerate_bd_triples(rs);
    let pairs: Vec<(&Involution, &BDTriple)> =
        sigmas.iter().flat_map(|s| triples.iter().filter(|bd| check_compatibility(s, bd).is_ok()).map(move |bd| (s, bd))).collect();
    let names: Vec<String> =
        sigmas.iter().map(|s| identify(rs, s).map(|r| r.name)).collect::<Result<_, _>>()?;
    let rows: Vec<CliResult<BialgebraRow>> = pairs
        .par_iter()
        .enumerate()
        .map(|(index, (s, bd))| {
            let ps = apply_reality(&solve_parameters(rs, bd)?, s, bd)?;
            let d = BialgebraDatum::new(rs, (*s).clone(), (*bd).clone(), ps.base_point.clone(), default_t(s))?;
            let name = &names[sigmas.iter().position(|x| x == *s).expect("listed")];
            Ok(BialgebraRow {
                index,
                simple_type: rs.simple_type().to_string(),
                table_row: d.row().number(),
                kind: d.row().label().to_string(),
                real_form: name.clone(),
                bd: bd.arrows(),
                parameter_dim: ps.directions.len(),
                t_class: d.t_class(),
                datum: d.to_json(),
                parameter_space: ps.to_json(),
            })
        })
        .collect();
    rows.into_iter().collect()
}

fn cmd_enumerate(a: &EnumerateArgs) -> CliResult<Outcome> {
    let rs = build_root_system(a.ty.simple_type()?);
    match a.what {
        What::BdTriples => {
            if a.sigma.sigma.is_some() || !a.sigma.mu.is_empty() {
                return Err(usage("--sigma does not apply to --what bd-triples"));
            }
            let rows: Vec<BdRow> = enumerate_bd_triples(&rs)
                .iter()
                .enumerate()
                .map(|(index, bd)| BdRow { index, arrows: bd.arrows(), triple: bd.to_json() })
                .collect();
            let table = Table {
                header: vec!["index", "gamma1", "gamma2", "arrows"],
                rows: rows
                    .iter()
                    .map(|r| vec![r.index.to_string(), one_based(&r.triple.gamma1), one_based(&r.triple.gamma2), r.arrows.clone()])
                    .collect(),
            };
            emit(&a.output, &rows, table)?;
        }
        What::Involutions => {
            let sigmas = matching_involutions(&rs, &a.sigma)?;
            let mut rows = Vec::new();
            for (index, s) in sigmas.iter().enumerate() {
                let rep = identify(&rs, s)?;
                rows.push(InvolutionRow {
                    index,
                    table_row: s.table_row().expect("canonical").number(),
                    sigma: s.to_json().expect("canonical"),
                    kind: s.table_row().expect("canonical").label().into(),
                    real_form: rep.name,
                    painted: rep.vogan_painted.into_iter().collect(),
                });
            }
            let table = Table {
                header: vec!["index", "table_row", "kind", "mu", "J", "painted", "real_form"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.index.to_string(),
                            r.table_row.to_string(),
                            r.kind.clone(),
                            one_based(&r.sigma.mu),
                            one_based(&r.sigma.j),
                            one_based(&r.painted),
                            r.real_form.clone(),
                        ]
                    })
                    .collect(),
            };
            emit(&a.output, &rows, table)?;
        }
        What::Bialgebras => {
            let sigmas = matching_involutions(&rs, &a.sigma)?;
            let rows = enumerate_bialgebras(&rs, &sigmas)?;
            let table = Table {
                header: vec!["index", "type", "table_row", "kind", "mu", "J", "real_form", "bd", "parameter_dim", "t"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.index.to_string(),
                            r.simple_type.clone(),
                            r.table_row.to_string(),
                            r.kind.clone(),
                            one_based(&r.datum.sigma.mu),
                            one_based(&r.datum.sigma.j),
                            r.real_form.clone(),
                            r.bd.clone(),
                            r.parameter_dim.to_string(),
                            r.datum.t.clone(),
                        ]
                    })
                    .collect(),
            };
            emit(&a.output, &rows, table)?;
        }
    }
    Ok(Outcome::Success)
}

fn datum_table(d: &BialgebraDatum) -> Table {
    let (kind, mu, j) = sigma_columns(&d.sigma);
    Table {
        header: vec!["type", "table_row", "kind", "mu", "J", "bd", "t", "r0_terms"],
        rows: vec![vec![
            d.simple_type.to_string(),
            d.row().number().to_string(),
            kind,
            mu,
            j,
            d.bd.arrows(),
            format_scalar(&d.t),
            d.r0.nonzeros().count().to_string(),
        ]],
    }
}

fn cmd_build(a: &BuildArgs) -> CliResult<Outcome> {
    let rs = build_root_system(a.ty.simple_type()?);
    let sigma = single_involution(&rs, &a.sigma)?;
    let bd = BDTriple::parse_arrows(&a.bd, &rs)?;
    let row = check_compatibility(&sigma, &bd)?;
    let magnitude = parse_scalar(&a.t_value)?;
    if !magnitude.im.is_zero() || !magnitude.re.is_positive() {
        return Err(usage("--t-value must be a positive rational"));
    }
    let kind = a.t.unwrap_or(if row.t_is_real() { TKind::Real } else { TKind::Imaginary });
    let t = match kind {
        TKind::Real => magnitude,
        TKind::Imaginary => magnitude * imag_unit(),
    };
    let ps = apply_reality(&solve_parameters(&rs, &bd)?, &sigma, &bd)?;
    let lambda = if a.coeffs.is_empty() {
        ps.base_point.clone()
    } else {
        let coeffs = a.coeffs.iter().map(|c| parse_scalar(c)).collect::<Result<Vec<_>, _>>()?;
        ps.point(&coeffs)?
    };
    let d = BialgebraDatum::new(&rs, sigma, bd, lambda, t)?;
    emit(&a.output, &d.to_json(), datum_table(&d))?;
    Ok(Outcome::Success)
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Accepts a datum, an `enumerate` row, or an array of either.
pub fn parse_data(text: &str) -> CliResult<Vec<BialgebraDatumJson>> {
    let value: Value = serde_json::from_str(text)?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|mut v| {
            if let Some(inner) = v.get_mut("datum") {
                v = inner.take();
            }
            Ok(serde_json::from_value(v)?)
        })
        .collect()
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let data = parse_data(&read_input(&a.input)?)?;
    let reports: Vec<VerificationReport> =
        data.par_iter().map(verify_json).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        for c in &r.checks {
            rows.push(vec![i.to_string(), r.simple_type.clone(), r.bd.clone(), c.name.to_string(), c.pass.to_string()]);
        }
    }
    let table = Table { header: vec!["datum", "type", "bd", "check", "pass"], rows };
    let all = reports.iter().all(|r| r.all_pass);
    if reports.len() == 1 {
        emit(&a.output, &reports[0], table)?;
    } else {
        emit(&a.output, &reports, table)?;
    }
    Ok(if all { Outcome::Success } else { Outcome::VerificationFailed })
}

fn cmd_identify(a: &IdentifyArgs) -> CliResult<Outcome> {
    let rs = build_root_system(a.ty.simple_type()?);
    let sigma = single_involution(&rs, &a.sigma)?;
    let rep: RealFormReport = identify(&rs, &sigma)?;
    let table = Table {
        header: vec!["name", "dim_k", "dim_p", "character", "dc", "dnc", "painted", "maximally_compact"],
        rows: vec![vec![
            rep.name.clone(),
            rep.dim_k.to_string(),
            rep.dim_p.to_string(),
            rep.character.to_string(),
            rep.dc.to_string(),
            rep.dnc.to_string(),
            one_based(&rep.vogan_painted.iter().copied().collect::<Vec<_>>()),
            rep.maximally_compact.to_string(),
        ]],
    };
    emit(&a.output, &rep, table)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct ClassRow {
    class: usize,
    representative: BialgebraDatumJson,
    members: Vec<usize>,
}

fn cmd_classify(a: &ClassifyArgs) -> CliResult<Outcome> {
    let (rs, data) = match (&a.input, &a.series) {
        (Some(path), None) => {
            let jsons = parse_data(&read_input(path)?)?;
            let first = jsons.first().ok_or_else(|| usage("no data in input"))?;
            let rs = build_root_system(first.simple_type);
            let data = jsons.iter().map(|j| BialgebraDatum::from_json(j, &rs)).collect::<Result<Vec<_>, _>>()?;
            (rs, data)
        }
        (None, Some(series)) => {
            let ty = TypeArgs { series: series.clone(), rank: a.rank }.simple_type()?;
            let rs = build_root_system(ty);
            let sigmas = matching_involutions(&rs, &a.sigma)?;
            let rows = enumerate_bialgebras(&rs, &sigmas)?;
            let data = rows.iter().map(|r| BialgebraDatum::from_json(&r.datum, &rs)).collect::<Result<Vec<_>, _>>()?;
            (rs, data)
        }
        _ => return Err(usage("give exactly one of --input or --type")),
    };
    let classes = classify(&rs, &data)?;
    let rows: Vec<ClassRow> = classes
        .iter()
        .enumerate()
        .map(|(class, c)| ClassRow { class, representative: c.representative.to_json(), members: c.members.clone() })
        .collect();
    let table = Table {
        header: vec!["class", "table_row", "mu", "J", "bd", "members"],
        rows: classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (_, mu, j) = sigma_columns(&c.representative.sigma);
                vec![
                    i.to_string(),
                    c.representative.row().number().to_string(),
                    mu,
                    j,
                    c.representative.bd.arrows(),
                    c.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                ]
            })
            .collect(),
    };
    emit(&a.output, &rows, table)?;
    Ok(Outcome::Success)
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Identify(a) => cmd_identify(a),
        Command::Classify(a) => cmd_classify(a),
    }
}
