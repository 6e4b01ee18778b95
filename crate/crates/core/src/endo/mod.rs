//! The endomorphisms `e₁, e₂` of the surface minus the 24 points with two
//! zero coordinates.

pub mod forms;
pub mod richmond;

pub use forms::{derive_validated_forms, eval_printed_forms, reconcile, EndoForms, Provenance, ReconcileReport};
pub use richmond::{node_tangents, restricted_quartic, richmond_pair, EndoPair};

use crate::error::{Error, Result};
use crate::exact::ProjPoint;
use crate::fibration::RulingPair;
use crate::surface::Surface;

/// Sign of the ruling invariant `θ_i = ±N` of fibration `i`.
pub fn theta_sign(i: usize) -> i8 {
    match i {
        1 => 1,
        2 => -1,
        _ => panic!("fibration index is 1 or 2"),
    }
}

/// `e_i(P)` by the tangent-plane construction.
pub fn apply_endo(s: &Surface, r: &RulingPair, i: usize, p: &ProjPoint) -> Result<ProjPoint> {
    Ok(richmond_pair(s, r, p)?.get(i).clone())
}

/// A surface with its rulings and, optionally, derived closed forms used as
/// a fast path. Every fast-path result is checked for surface membership and
/// fibre invariance before it is returned; on failure the construction is
/// used instead.
#[derive(Clone, Debug)]
pub struct Endomorphisms {
    surface: Surface,
    rulings: RulingPair,
    forms: Option<EndoForms>,
}

impl Endomorphisms {
    pub fn new(surface: Surface, rulings: RulingPair, forms: Option<EndoForms>) -> Self {
        if let Some(f) = &forms {
            assert_eq!(f.provenance(), Provenance::Derived, "fast path needs derived forms");
        }
        Endomorphisms {
            surface,
            rulings,
            forms,
        }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn rulings(&self) -> &RulingPair {
        &self.rulings
    }

    pub fn forms(&self) -> Option<&EndoForms> {
        self.forms.as_ref()
    }

    pub fn richmond(&self, p: &ProjPoint) -> Result<EndoPair> {
        richmond_pair(&self.surface, &self.rulings, p)
    }

    /// `e_i(P)` from the closed forms alone, when they are available.
    pub fn via_forms(&self, i: usize, p: &ProjPoint) -> Option<Result<ProjPoint>> {
        self.forms
            .as_ref()
            .map(|f| f.eval(&self.surface, theta_sign(i), p))
    }

    pub fn apply(&self, i: usize, p: &ProjPoint) -> Result<ProjPoint> {
        self.surface.require(p)?;
        match p.zero_count() {
            0 => {}
            1 => return Ok(p.clone()),
            _ => return Err(Error::OmegaPoint),
        }
        if let Some(Ok(q)) = self.via_forms(i, p) {
            if self.surface.contains(&q)
                && q.zero_count() < 2
                && self.rulings.fibre_value(i, &q).ok() == self.rulings.fibre_value(i, p).ok()
            {
                return Ok(q);
            }
        }
        apply_endo(&self.surface, &self.rulings, i, p)
    }

    pub fn pair(&self, p: &ProjPoint) -> Result<EndoPair> {
        Ok(EndoPair {
            e1: self.apply(1, p)?,
            e2: self.apply(2, p)?,
        })
    }
}
