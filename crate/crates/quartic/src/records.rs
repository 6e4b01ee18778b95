//! Serializable views of the core types. Every number is a decimal string.

use serde::Serialize;

use quartic_core::ellcurve::{CurveMap, EllPoint, WeierstrassCurve};
use quartic_core::endo::{EndoForms, ReconcileReport};
use quartic_core::endo::forms::format_poly;
use quartic_core::exact::format_rat;
use quartic_core::orbit::{Histogram, OrbitNode, Pruned};
use quartic_core::props::PropCheck;
use quartic_core::torsion::{Certificate, OrderClass};
use quartic_core::{Error, ExitClass, ProjPoint};

pub fn coords(p: &ProjPoint) -> Vec<String> {
    p.coords().iter().map(|c| c.to_string()).collect()
}

pub fn exit_code(class: ExitClass) -> i32 {
    match class {
        ExitClass::InvalidSurface | ExitClass::Usage => 2,
        ExitClass::NotOnSurface => 3,
        ExitClass::Omega => 4,
        ExitClass::Internal => 5,
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: String,
    pub message: String,
    pub exit: i32,
}

impl ErrorRecord {
    pub fn from_error(e: &Error) -> Self {
        ErrorRecord {
            error: e.code().to_string(),
            message: e.to_string(),
            exit: exit_code(e.exit_class()),
        }
    }
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct NodeRecord {
    pub id: usize,
    pub coords: Vec<String>,
    pub op: String,
    pub parent: Option<usize>,
    pub height_digits: usize,
    pub f1: String,
    pub f2: String,
}

impl From<&OrbitNode> for NodeRecord {
    fn from(n: &OrbitNode) -> Self {
        NodeRecord {
            id: n.id,
            coords: coords(&n.point),
            op: n.op.tag(),
            parent: n.parent,
            height_digits: n.height_digits(),
            f1: n.fibres[0].to_string(),
            f2: n.fibres[1].to_string(),
        }
    }
}

/// The CSV row of a node; coordinates are joined with `:`.
#[derive(Debug, Serialize)]
pub struct NodeRow {
    pub id: usize,
    pub coords: String,
    pub op: String,
    pub parent: Option<usize>,
    pub height_digits: usize,
    pub f1: String,
    pub f2: String,
}

impl From<&OrbitNode> for NodeRow {
    fn from(n: &OrbitNode) -> Self {
        NodeRow {
            id: n.id,
            coords: n.point.to_string(),
            op: n.op.tag(),
            parent: n.parent,
            height_digits: n.height_digits(),
            f1: n.fibres[0].to_string(),
            f2: n.fibres[1].to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PrunedRecord {
    pub parent: usize,
    pub op: String,
    pub height_digits: usize,
}

impl From<&Pruned> for PrunedRecord {
    fn from(p: &Pruned) -> Self {
        PrunedRecord {
            parent: p.parent,
            op: p.op.tag(),
            height_digits: p.height_digits,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HistogramRecord {
    pub bins: usize,
    pub occupied: usize,
    pub outside: usize,
    pub counts: Vec<Vec<usize>>,
}

impl From<&Histogram> for HistogramRecord {
    fn from(h: &Histogram) -> Self {
        HistogramRecord {
            bins: h.bins,
            occupied: h.occupied(),
            outside: h.outside,
            counts: h.counts.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OrbitSummary {
    pub nodes: usize,
    pub fibre_spread: [usize; 2],
    pub singular_skips: usize,
    pub pruned: Vec<PrunedRecord>,
    pub histogram: Option<HistogramRecord>,
}

pub fn ell_point(p: &EllPoint) -> Option<[String; 2]> {
    match p {
        EllPoint::Infinity => None,
        EllPoint::Affine(x, y) => Some([format_rat(x), format_rat(y)]),
    }
}

#[derive(Debug, Serialize)]
pub struct CurveRecord {
    pub fibration: usize,
    pub fibre: String,
    pub curve: [String; 5],
    pub discriminant: String,
    pub origin: Vec<String>,
    pub residual: Vec<String>,
    pub residual_image: Option<[String; 2]>,
}

impl CurveRecord {
    pub fn new(i: usize, fibre: String, e: &WeierstrassCurve, map: &CurveMap, image: &EllPoint) -> Self {
        CurveRecord {
            fibration: i,
            fibre,
            curve: e.to_strings(),
            discriminant: format_rat(&e.discriminant()),
            origin: coords(map.base()),
            residual: coords(map.residual()),
            residual_image: ell_point(image),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessRecord {
    pub e1: Option<Vec<String>>,
    pub e2: Option<Vec<String>>,
    pub sigma: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TorsionRecord {
    pub fibration: usize,
    pub class: String,
    pub witness: WitnessRecord,
    pub certificate: Option<Vec<Option<[String; 2]>>>,
}

impl TorsionRecord {
    pub fn new(i: usize, c: &OrderClass, cert: Option<&Certificate>) -> Self {
        TorsionRecord {
            fibration: i,
            class: c.kind.name().to_string(),
            witness: WitnessRecord {
                e1: c.witness.e1.as_ref().map(coords),
                e2: c.witness.e2.as_ref().map(coords),
                sigma: c.witness.sigma.map(|s| s.tag()),
            },
            certificate: cert.map(|c| c.multiples.iter().map(ell_point).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PropRecord {
    pub check: String,
    pub status: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_failure: Option<String>,
}

impl From<&PropCheck> for PropRecord {
    fn from(c: &PropCheck) -> Self {
        PropRecord {
            check: c.name.to_string(),
            status: c.status().to_string(),
            passed: c.passed,
            failed: c.failed,
            skipped: c.skipped,
            first_failure: c.first_failure.clone(),
        }
    }
}

/// Coefficient table of closed forms: one `(monomial, coefficient)` list per
/// output coordinate, exponents over `(a, b, c, n)`.
#[derive(Debug, Serialize)]
pub struct FormsRecord {
    pub provenance: String,
    pub coords: Vec<Vec<([u16; 4], String)>>,
    pub display: Vec<String>,
}

impl From<&EndoForms> for FormsRecord {
    fn from(f: &EndoForms) -> Self {
        FormsRecord {
            provenance: f.provenance().name().to_string(),
            coords: f
                .coords()
                .iter()
                .map(|p| p.terms().map(|(e, c)| (*e, format_rat(c))).collect())
                .collect(),
            display: f.coords().iter().map(format_poly).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReconcileRecord {
    pub matches: bool,
    pub sign_binding: Option<i8>,
    pub differences: Vec<String>,
    pub counterexample: Option<CounterexampleRecord>,
    pub points_checked: usize,
    pub derived: FormsRecord,
}

#[derive(Debug, Serialize)]
pub struct CounterexampleRecord {
    pub surface: [i64; 4],
    pub point: Vec<String>,
    pub construction: Vec<String>,
    pub printed: Vec<String>,
}

impl ReconcileRecord {
    pub fn new(r: &ReconcileReport, derived: &EndoForms) -> Self {
        ReconcileRecord {
            matches: r.matches,
            sign_binding: r.sign_binding,
            differences: r.differences.iter().map(format_poly).collect(),
            counterexample: r.counterexample.as_ref().map(|(s, p, c, q)| CounterexampleRecord {
                surface: *s,
                point: coords(p),
                construction: coords(c),
                printed: coords(q),
            }),
            points_checked: r.points_checked,
            derived: FormsRecord::from(derived),
        }
    }
}
