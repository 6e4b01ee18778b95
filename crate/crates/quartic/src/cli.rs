//! Argument parsing and dispatch for the `quartic` binary.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quartic_core::endo::{derive_validated_forms, reconcile, EndoForms, Endomorphisms};
use quartic_core::orbit::{density_histogram, fibre_spread, generate_orbit_with, Chart, OrbitReport, Strategy};
use quartic_core::props::Suite;
use quartic_core::surface::classify_point;
use quartic_core::torsion::{certify_infinite_order, order_class, OrderKind};
use quartic_core::ellcurve::fibre_to_weierstrass;
use quartic_core::exact::parse_rat;
use quartic_core::{Error, ProjPoint, Rat, RulingPair, Surface};

use crate::parallel::Parallel;
use crate::records::*;

#[derive(Debug, Parser)]
#[command(name = "quartic", version, about = "Rational points on diagonal quartic surfaces with square coefficient product")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Target {
    /// Coefficients `a,b,c,d` (integers or fractions).
    #[arg(long, allow_hyphen_values = true)]
    surface: String,
    /// Point `x:y:z:w`.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

#[derive(Debug, Args)]
struct Budget {
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_digits: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Surface membership and point classification.
    Check(Target),
    /// Both endomorphism images.
    ApplyE(Target),
    /// Fibre values and singularity flags.
    Fibre(Target),
    /// Torsion order class for each fibration.
    Torsion {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        fibration: Option<u8>,
    },
    /// Weierstrass model of the fibre through the point.
    Weierstrass {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        fibration: Option<u8>,
    },
    /// Orbit of the point under the endomorphisms and sign changes.
    Orbit {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        budget: Budget,
        /// Histogram resolution; omitted means no histogram.
        #[arg(long)]
        bins: Option<usize>,
        /// Chart box `x0,x1,y0,y1`.
        #[arg(long, allow_hyphen_values = true)]
        chart: Option<String>,
        /// Close under sign changes only.
        #[arg(long)]
        sigma_only: bool,
    },
    /// Property suite on the orbit of the point.
    VerifyProps {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        budget: Budget,
    },
    /// Derive closed forms and compare them with the printed ones.
    ReconcileForms,
}

/// A fully validated command line.
#[derive(Debug, Clone)]
pub enum Invocation {
    Check { surface: Surface, point: ProjPoint },
    ApplyE { surface: Surface, point: ProjPoint },
    Fibre { surface: Surface, point: ProjPoint },
    Torsion { surface: Surface, point: ProjPoint, fibrations: Vec<usize> },
    Weierstrass { surface: Surface, point: ProjPoint, fibrations: Vec<usize>, explicit: bool },
    Orbit {
        surface: Surface,
        point: ProjPoint,
        strategy: Strategy,
        format: Format,
        bins: Option<usize>,
        chart: Chart,
    },
    VerifyProps { surface: Surface, point: ProjPoint, strategy: Strategy, format: Format },
    ReconcileForms,
}

#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    fn usage(code: &str, message: impl Into<String>) -> Self {
        CliError {
            code: code.to_string(),
            message: message.into(),
            exit: 2,
        }
    }

    fn record(&self) -> ErrorRecord {
        ErrorRecord {
            error: self.code.clone(),
            message: self.message.clone(),
            exit: self.exit,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let r = ErrorRecord::from_error(&e);
        CliError {
            code: r.error,
            message: r.message,
            exit: r.exit,
        }
    }
}

/// Outcome of parsing when no invocation results: help text or an error.
#[derive(Debug)]
pub enum ParseOutcome {
    Display(String),
    Error(CliError),
}

fn parse_surface(spec: &str) -> Result<Surface, CliError> {
    match Surface::parse(spec) {
        None => Err(CliError::usage("BadSurfaceSpec", format!("cannot parse surface '{spec}'"))),
        Some(Err(e)) => Err(CliError::usage("BadSurfaceSpec", format!("surface '{spec}': {e}"))),
        Some(Ok(s)) => Ok(s),
    }
}

fn parse_point(spec: &str) -> Result<ProjPoint, CliError> {
    match ProjPoint::parse(spec) {
        None => Err(CliError::usage("BadPointSpec", format!("cannot parse point '{spec}'"))),
        Some(Err(e)) => Err(CliError::usage("BadPointSpec", format!("point '{spec}': {e}"))),
        Some(Ok(p)) => Ok(p),
    }
}

fn parse_chart(spec: &str) -> Result<Chart, CliError> {
    let v: Option<Vec<Rat>> = spec.split(',').map(parse_rat).collect();
    match v.as_deref() {
        Some([x0, x1, y0, y1]) if x0 < x1 && y0 < y1 => Ok(Chart {
            x0: x0.clone(),
            x1: x1.clone(),
            y0: y0.clone(),
            y1: y1.clone(),
        }),
        _ => Err(CliError::usage("BadChartSpec", format!("cannot parse chart '{spec}'"))),
    }
}

fn parse_target(t: &Target) -> Result<(Surface, ProjPoint), CliError> {
    Ok((parse_surface(&t.surface)?, parse_point(&t.point)?))
}

fn strategy(b: &Budget, nodes: usize, digits: usize) -> Strategy {
    Strategy::new(b.max_nodes.unwrap_or(nodes), b.max_digits.unwrap_or(digits))
}

fn fibrations(f: Option<u8>) -> Vec<usize> {
    f.map_or(vec![1, 2], |i| vec![i as usize])
}

pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                ParseOutcome::Display(e.to_string())
            }
            ErrorKind::InvalidSubcommand => ParseOutcome::Error(CliError::usage("UnknownSubcommand", e.to_string())),
            _ => ParseOutcome::Error(CliError::usage("Usage", e.to_string())),
        }
    })?;
    let inv = (|| -> Result<Invocation, CliError> {
        Ok(match &cli.command {
            Command::Check(t) => {
                let (surface, point) = parse_target(t)?;
                Invocation::Check { surface, point }
            }
            Command::ApplyE(t) => {
                let (surface, point) = parse_target(t)?;
                Invocation::ApplyE { surface, point }
            }
            Command::Fibre(t) => {
                let (surface, point) = parse_target(t)?;
                Invocation::Fibre { surface, point }
            }
            Command::Torsion { target, fibration } => {
                let (surface, point) = parse_target(target)?;
                Invocation::Torsion { surface, point, fibrations: fibrations(*fibration) }
            }
            Command::Weierstrass { target, fibration } => {
                let (surface, point) = parse_target(target)?;
                Invocation::Weierstrass {
                    surface,
                    point,
                    fibrations: fibrations(*fibration),
                    explicit: fibration.is_some(),
                }
            }
            Command::Orbit { target, budget, bins, chart, sigma_only } => {
                let (surface, point) = parse_target(target)?;
                let mut strategy = strategy(budget, 200, 2000);
                strategy.endomorphisms = !sigma_only;
                let chart = chart.as_deref().map(parse_chart).transpose()?.unwrap_or_default();
                Invocation::Orbit { surface, point, strategy, format: budget.format, bins: *bins, chart }
            }
            Command::VerifyProps { target, budget } => {
                let (surface, point) = parse_target(target)?;
                Invocation::VerifyProps { surface, point, strategy: strategy(budget, 24, 200), format: budget.format }
            }
            Command::ReconcileForms => Invocation::ReconcileForms,
        })
    })();
    inv.map_err(ParseOutcome::Error)
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
struct CheckRecord {
    surface: String,
    point: Vec<String>,
    on_surface: bool,
    class: Option<String>,
    pairing: Option<String>,
}

#[derive(Serialize)]
struct ApplyRecord {
    e1: Vec<String>,
    e2: Vec<String>,
}

#[derive(Serialize)]
struct FibreEntry {
    value: String,
    singular: bool,
}

#[derive(Serialize)]
struct FibreRecord {
    f1: FibreEntry,
    f2: FibreEntry,
}

#[derive(Serialize)]
struct SkippedModel {
    fibration: usize,
    error: String,
}

/// Build the rulings and reject points outside `U`.
fn prepare(surface: &Surface, point: &ProjPoint) -> Result<RulingPair, CliError> {
    surface.require(point)?;
    if point.zero_count() >= 2 {
        return Err(Error::OmegaPoint.into());
    }
    Ok(RulingPair::for_surface(surface, point)?)
}

fn endomorphisms(surface: &Surface, rulings: &RulingPair) -> Result<Endomorphisms, CliError> {
    let forms: EndoForms = derive_validated_forms()?;
    Ok(Endomorphisms::new(surface.clone(), rulings.clone(), Some(forms)))
}

pub fn run_orbit(surface: &Surface, point: &ProjPoint, strategy: &Strategy) -> Result<(Endomorphisms, OrbitReport), CliError> {
    surface.require(point)?;
    if point.zero_count() >= 2 {
        return Err(Error::SeedInOmega.into());
    }
    let rulings = RulingPair::for_surface(surface, point)?;
    let endos = endomorphisms(surface, &rulings)?;
    let report = generate_orbit_with(&endos, point, strategy, &Parallel::from_env())?;
    Ok((endos, report))
}

fn execute(inv: &Invocation, out: &mut dyn Write, meta: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError {
        code: "Io".into(),
        message: e.to_string(),
        exit: 5,
    };
    match inv {
        Invocation::Check { surface, point } => {
            let on = surface.contains(point);
            let class = if on { Some(classify_point(surface, point)?) } else { None };
            let rec = CheckRecord {
                surface: surface.to_string(),
                point: coords(point),
                on_surface: on,
                class: class.as_ref().map(|c| c.name().to_string()),
                pairing: match class {
                    Some(quartic_core::PointClass::OnLine(p)) => Some(p.name().to_string()),
                    _ => None,
                },
            };
            json_line(out, &rec).map_err(io)?;
            Ok(if on { 0 } else { 3 })
        }
        Invocation::ApplyE { surface, point } => {
            let r = prepare(surface, point)?;
            let pair = Endomorphisms::new(surface.clone(), r, None).richmond(point)?;
            json_line(out, &ApplyRecord { e1: coords(&pair.e1), e2: coords(&pair.e2) }).map_err(io)?;
            Ok(0)
        }
        Invocation::Fibre { surface, point } => {
            let r = prepare(surface, point)?;
            let entry = |i: usize| -> Result<FibreEntry, CliError> {
                let id = r.fibre_value(i, point)?;
                Ok(FibreEntry {
                    singular: r.is_singular_fibre(i, &id),
                    value: id.to_string(),
                })
            };
            json_line(out, &FibreRecord { f1: entry(1)?, f2: entry(2)? }).map_err(io)?;
            Ok(0)
        }
        Invocation::Torsion { surface, point, fibrations } => {
            let r = prepare(surface, point)?;
            for &i in fibrations {
                let c = order_class(surface, &r, i, point)?;
                let cert = if c.kind == OrderKind::Infinite {
                    Some(certify_infinite_order(surface, &r, i, point)?)
                } else {
                    None
                };
                json_line(out, &TorsionRecord::new(i, &c, cert.as_ref())).map_err(io)?;
            }
            Ok(0)
        }
        Invocation::Weierstrass { surface, point, fibrations, explicit } => {
            let r = prepare(surface, point)?;
            for &i in fibrations {
                match fibre_to_weierstrass(surface, &r, i, point) {
                    Ok((e, map)) => {
                        let image = map.forward(map.residual())?;
                        let id = r.fibre_value(i, point)?.to_string();
                        json_line(out, &CurveRecord::new(i, id, &e, &map, &image)).map_err(io)?;
                    }
                    Err(Error::SingularFibre) if !explicit => {
                        json_line(out, &SkippedModel { fibration: i, error: Error::SingularFibre.code().into() })
                            .map_err(io)?;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(0)
        }
        Invocation::Orbit { surface, point, strategy, format, bins, chart } => {
            let (_, report) = run_orbit(surface, point, strategy)?;
            write_nodes(out, &report, *format).map_err(io)?;
            let histogram = match bins {
                Some(n) => Some(HistogramRecord::from(&density_histogram(surface, &report.nodes, chart, *n)?)),
                None => None,
            };
            let summary = OrbitSummary {
                nodes: report.nodes.len(),
                fibre_spread: [fibre_spread(&report.nodes, 1), fibre_spread(&report.nodes, 2)],
                singular_skips: report.singular_skips,
                pruned: report.pruned.iter().map(PrunedRecord::from).collect(),
                histogram,
            };
            json_line(meta, &summary).map_err(io)?;
            Ok(0)
        }
        Invocation::VerifyProps { surface, point, strategy, format } => {
            let (endos, report) = run_orbit(surface, point, strategy)?;
            let points: Vec<ProjPoint> = report.nodes.iter().map(|n| n.point.clone()).collect();
            let checks = Suite::new(&endos).run(&points);
            let rows: Vec<PropRecord> = checks.iter().map(PropRecord::from).collect();
            match format {
                Format::Jsonl => {
                    for r in &rows {
                        json_line(out, r).map_err(io)?;
                    }
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    for r in &rows {
                        w.serialize(r).map_err(|e| io(e.into()))?;
                    }
                    w.flush().map_err(io)?;
                }
            }
            Ok(if checks.iter().any(|c| c.status() == "fail") { 5 } else { 0 })
        }
        Invocation::ReconcileForms => {
            let derived = derive_validated_forms()?;
            let report = reconcile(&derived)?;
            json_line(out, &ReconcileRecord::new(&report, &derived)).map_err(io)?;
            Ok(0)
        }
    }
}

pub fn write_nodes(out: &mut dyn Write, report: &OrbitReport, format: Format) -> std::io::Result<()> {
    match format {
        Format::Jsonl => {
            for n in &report.nodes {
                json_line(out, &NodeRecord::from(n))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for n in &report.nodes {
                w.serialize(NodeRow::from(n))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Run a validated invocation. Data goes to `out`, run metadata and error
/// objects to `meta`. Returns the process exit code.
pub fn dispatch(inv: &Invocation, out: &mut dyn Write, meta: &mut dyn Write) -> i32 {
    match execute(inv, out, meta) {
        Ok(code) => code,
        Err(e) => {
            let _ = json_line(meta, &e.record());
            e.exit
        }
    }
}

/// Parse and run; the whole process in one call.
pub fn run<I, T>(argv: I, out: &mut dyn Write, meta: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_invocation(argv) {
        Ok(inv) => dispatch(&inv, out, meta),
        Err(ParseOutcome::Display(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(ParseOutcome::Error(e)) => {
            let _ = json_line(meta, &e.record());
            e.exit
        }
    }
}
