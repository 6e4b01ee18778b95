//! Property checks of the endomorphisms, one per geometric statement, run
//! pointwise over a sample of rational points.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::Zero;

use crate::ellcurve::{bounded_torsion_order, fibre_to_weierstrass, CurveMap, EllPoint, TorsionOrder, WeierstrassCurve};
use crate::endo::{node_tangents, restricted_quartic, Endomorphisms};
use crate::error::Result;
use crate::exact::{Int, ProjPoint};
use crate::fibration::RulingPair;
use crate::surface::{classify_point, tangent_coeffs, Perm, PointClass, SignAut, Surface};
use crate::torsion::{order_class, OrderKind};

/// Names of the checks, in report order.
pub const CHECKS: [&str; 15] = [
    "zerofix",
    "onlines",
    "sigmacomm",
    "permute",
    "essence-tangent-in-A",
    "hyp",
    "fibre-preservation",
    "u-stable",
    "esquared",
    "phipistwo",
    "twotorsion",
    "fourtorsion-rational",
    "ordtwo",
    "orderthree",
    "atmostfour-agreement",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropCheck {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_failure: Option<String>,
}

impl PropCheck {
    fn new(name: &'static str) -> Self {
        PropCheck {
            name,
            passed: 0,
            failed: 0,
            skipped: 0,
            first_failure: None,
        }
    }

    /// `"pass"`, `"fail"` or `"n/a"` when no point applied.
    pub fn status(&self) -> &'static str {
        if self.failed > 0 {
            "fail"
        } else if self.passed > 0 {
            "pass"
        } else {
            "n/a"
        }
    }

    fn record(&mut self, p: &ProjPoint, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Skip => self.skipped += 1,
            Outcome::Fail(why) => {
                self.failed += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(alloc::format!("{} at {}", why, p));
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(&'static str),
    Skip,
}

fn check(ok: bool, why: &'static str) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(why)
    }
}

fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut any = false;
    for o in outcomes {
        match o {
            Outcome::Fail(_) => return o,
            Outcome::Pass => any = true,
            Outcome::Skip => {}
        }
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip
    }
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or(Outcome::Fail("operation failed"))
}

fn is_sign_image(p: &ProjPoint, q: &ProjPoint) -> bool {
    SignAut::pairs().iter().any(|s| s.apply(p) == *q)
}

fn nonsingular(r: &RulingPair, i: usize, p: &ProjPoint) -> Result<bool> {
    Ok(!r.is_singular_at(i, p)?)
}

/// Whether the surface is `x⁴ + y⁴ = z⁴ + w⁴` up to scaling.
fn is_v0(s: &Surface) -> bool {
    let c = s.int_coeffs();
    c[0] == c[1] && c[2] == c[3] && c[0] == -c[2].clone()
}

/// Weierstrass model of a fibre together with `ψ(e_i(P))`.
type Model = Rc<(WeierstrassCurve, CurveMap, EllPoint)>;

pub struct Suite<'a> {
    endos: &'a Endomorphisms,
    models: RefCell<BTreeMap<(usize, ProjPoint), Result<Model>>>,
}

impl<'a> Suite<'a> {
    pub fn new(endos: &'a Endomorphisms) -> Self {
        Suite {
            endos,
            models: RefCell::new(BTreeMap::new()),
        }
    }

    fn model(&self, i: usize, p: &ProjPoint) -> Result<Model> {
        let key = (i, p.clone());
        if let Some(m) = self.models.borrow().get(&key) {
            return m.clone();
        }
        let built = fibre_to_weierstrass(self.s(), self.r(), i, p).and_then(|(curve, map)| {
            let q = map.forward(&self.e(i, p)?)?;
            Ok(Rc::new((curve, map, q)))
        });
        self.models.borrow_mut().insert(key, built.clone());
        built
    }

    fn model_order(&self, i: usize, p: &ProjPoint) -> Result<TorsionOrder> {
        let m = self.model(i, p)?;
        Ok(bounded_torsion_order(&m.0, &m.2))
    }

    fn s(&self) -> &Surface {
        self.endos.surface()
    }

    fn r(&self) -> &RulingPair {
        self.endos.rulings()
    }

    fn e(&self, i: usize, p: &ProjPoint) -> Result<ProjPoint> {
        self.endos.apply(i, p)
    }

    pub fn run_one(&self, name: &str, p: &ProjPoint) -> Outcome {
        match name {
            "zerofix" => lift(self.zerofix(p)),
            "onlines" => lift(self.onlines(p)),
            "sigmacomm" => lift(self.sigmacomm(p)),
            "permute" => lift(self.permute(p)),
            "essence-tangent-in-A" => lift(self.essence(p)),
            "hyp" => lift(self.hyp(p)),
            "fibre-preservation" => lift(self.fibre_preservation(p)),
            "u-stable" => lift(self.u_stable(p)),
            "esquared" => self.on_model(p, |m| m.esquared()),
            "phipistwo" => self.on_model(p, |m| m.phipistwo()),
            "twotorsion" => self.on_model(p, |m| m.twotorsion()),
            "fourtorsion-rational" => lift(self.fourtorsion(p)),
            "ordtwo" => lift(self.ordtwo(p)),
            "orderthree" => lift(self.orderthree(p)),
            "atmostfour-agreement" => lift(self.atmostfour(p)),
            _ => Outcome::Fail("unknown check"),
        }
    }

    pub fn run(&self, points: &[ProjPoint]) -> Vec<PropCheck> {
        CHECKS
            .iter()
            .map(|&name| {
                let mut c = PropCheck::new(name);
                for p in points {
                    c.record(p, self.run_one(name, p));
                }
                c
            })
            .collect()
    }

    fn zerofix(&self, p: &ProjPoint) -> Result<Outcome> {
        let fixed = [self.e(1, p)? == *p, self.e(2, p)? == *p];
        Ok(if p.zero_count() == 1 {
            check(fixed == [true, true], "coordinate-plane point moved")
        } else {
            check(fixed == [false, false], "fixed point off the coordinate planes")
        })
    }

    fn onlines(&self, p: &ProjPoint) -> Result<Outcome> {
        if !matches!(classify_point(self.s(), p)?, PointClass::OnLine(_)) {
            return Ok(Outcome::Skip);
        }
        let mut outcomes = Vec::new();
        let singular: Vec<usize> = (1..=2)
            .filter(|&i| self.r().is_singular_at(i, p).unwrap_or(false))
            .collect();
        outcomes.push(check(!singular.is_empty(), "line point on two nonsingular fibres"));
        for &i in &singular {
            let j = 3 - i;
            outcomes.push(check(is_sign_image(p, &self.e(j, p)?), "e_j(P) is not a σ_uv image"));
            let ei = self.e(i, p)?;
            outcomes.push(check(
                ei.zero_count() < 2 && matches!(classify_point(self.s(), &ei)?, PointClass::OnLine(_)),
                "e_i(P) is not on a line outside Ω",
            ));
        }
        Ok(all(outcomes))
    }

    fn sigmacomm(&self, p: &ProjPoint) -> Result<Outcome> {
        let mut outcomes = Vec::new();
        for sigma in SignAut::all() {
            let q = sigma.apply(p);
            for i in 1..=2 {
                outcomes.push(check(self.e(i, &q)? == sigma.apply(&self.e(i, p)?), "e_i does not commute with σ"));
            }
        }
        Ok(all(outcomes))
    }

    fn permute(&self, p: &ProjPoint) -> Result<Outcome> {
        let perms = [
            Perm::transposition(0, 1),
            Perm::transposition(1, 2),
            Perm::transposition(2, 3),
            Perm([1, 2, 0, 3]),
            Perm([1, 0, 3, 2]),
        ];
        let mut outcomes = Vec::new();
        for pi in perms {
            let s2 = self.s().permuted(&pi);
            let q = pi.apply_point(p);
            let r2 = RulingPair::for_surface(&s2, &q)?;
            let other = Endomorphisms::new(s2, r2, self.endos.forms().cloned());
            for i in 1..=2 {
                let k = if pi.is_even() { i } else { 3 - i };
                outcomes.push(check(
                    other.apply(k, &q)? == pi.apply_point(&self.e(i, p)?),
                    "π e_i ≠ e_k π",
                ));
            }
        }
        Ok(all(outcomes))
    }

    fn essence(&self, p: &ProjPoint) -> Result<Outcome> {
        if p.zero_count() > 0 {
            return Ok(Outcome::Skip);
        }
        let sq: [Int; 4] = core::array::from_fn(|k| &p.coords()[k] * &p.coords()[k]);
        let c = self.s().int_coeffs();
        let a: [Int; 4] = core::array::from_fn(|k| &c[k] * &sq[k]);
        let mut outcomes = Vec::new();
        for e in node_tangents(self.s(), p)? {
            let x = p.coords();
            let coef = |u: &[Int; 4], v: &[Int; 4]| (0..4).fold(Int::zero(), |acc, k| acc + &a[k] * &u[k] * &v[k]);
            outcomes.push(check(
                coef(x, x).is_zero() && coef(x, &e).is_zero() && coef(&e, &e).is_zero(),
                "node tangent not contained in A",
            ));
        }
        Ok(all(outcomes))
    }

    fn hyp(&self, p: &ProjPoint) -> Result<Outcome> {
        if p.zero_count() > 0 {
            return Ok(Outcome::Skip);
        }
        let mut outcomes = Vec::new();
        for e in node_tangents(self.s(), p)? {
            let q = restricted_quartic(self.s(), p.coords(), &e);
            outcomes.push(check(q.coeffs()[..3].iter().all(|c| c.is_zero()), "node tangent meets P fewer than 3 times"));
        }
        let t = tangent_coeffs(self.s(), p);
        for i in 1..=2 {
            let ei = self.e(i, p)?;
            let v = (0..4).fold(Int::zero(), |acc, k| acc + &t[k] * &ei.coords()[k]);
            outcomes.push(check(v.is_zero(), "tangent plane misses e_i(P)"));
        }
        Ok(all(outcomes))
    }

    fn fibre_preservation(&self, p: &ProjPoint) -> Result<Outcome> {
        let mut outcomes = Vec::new();
        for i in 1..=2 {
            let q = self.e(i, p)?;
            outcomes.push(check(
                self.r().fibre_value(i, &q)? == self.r().fibre_value(i, p)?,
                "e_i(P) left the fibre",
            ));
        }
        Ok(all(outcomes))
    }

    fn u_stable(&self, p: &ProjPoint) -> Result<Outcome> {
        let mut outcomes = Vec::new();
        for i in 1..=2 {
            let q = self.e(i, p)?;
            outcomes.push(check(self.s().contains(&q) && q.zero_count() < 2, "e_i(P) not in U"));
        }
        Ok(all(outcomes))
    }

    fn on_model(&self, p: &ProjPoint, f: impl Fn(&ModelCheck) -> Result<Outcome>) -> Outcome {
        let mut outcomes = Vec::new();
        for i in 1..=2 {
            match nonsingular(self.r(), i, p) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(_) => {
                    outcomes.push(Outcome::Fail("fibre value failed"));
                    continue;
                }
            }
            let m = ModelCheck { suite: self, i, p };
            outcomes.push(lift(f(&m)));
        }
        all(outcomes)
    }

    fn fourtorsion(&self, p: &ProjPoint) -> Result<Outcome> {
        if !is_v0(self.s()) || p.zero_count() > 0 {
            return Ok(Outcome::Skip);
        }
        let c = p.coords();
        let shuffles: [[usize; 4]; 2] = [[2, 3, 0, 1], [3, 2, 1, 0]];
        let mut outcomes = Vec::new();
        for i in 1..=2 {
            if !nonsingular(self.r(), i, p)? {
                continue;
            }
            let m = self.model(i, p)?;
            let (curve, map) = (&m.0, &m.1);
            let shuffle = shuffles[i - 1];
            let mut on_fibre = 0;
            for neg in 0..4 {
                let mut v: [Int; 4] = core::array::from_fn(|k| c[shuffle[k]].clone());
                v[neg] = -v[neg].clone();
                let q = ProjPoint::from_ints(v)?;
                if map.contains(&q) {
                    on_fibre += 1;
                    outcomes.push(check(
                        bounded_torsion_order(curve, &map.forward(&q)?) == TorsionOrder::Finite(4),
                        "sign-pattern point is not of order 4",
                    ));
                }
            }
            outcomes.push(check(on_fibre == 4, "sign-pattern point off the fibre"));
        }
        Ok(all(outcomes))
    }

    fn ordtwo(&self, p: &ProjPoint) -> Result<Outcome> {
        let mut outcomes = Vec::new();
        let on_line = matches!(classify_point(self.s(), p)?, PointClass::OnLine(_));
        for i in 1..=2 {
            if !nonsingular(self.r(), i, p)? || p.zero_count() > 0 {
                continue;
            }
            let two = order_class(self.s(), self.r(), i, p)?.kind == OrderKind::Two;
            outcomes.push(check(two == on_line, "order two does not match the line locus"));
        }
        Ok(all(outcomes))
    }

    fn orderthree(&self, p: &ProjPoint) -> Result<Outcome> {
        let mut outcomes = Vec::new();
        for i in 1..=2 {
            if !nonsingular(self.r(), i, p)? || p.zero_count() > 0 {
                continue;
            }
            let e1 = self.e(i, p)?;
            let e2 = self.e(i, &e1)?;
            let three = self.model_order(i, p)? == TorsionOrder::Finite(3);
            outcomes.push(check(three == (e1 == e2), "order three does not match e_i² = e_i"));
        }
        Ok(all(outcomes))
    }

    fn atmostfour(&self, p: &ProjPoint) -> Result<Outcome> {
        let mut outcomes = Vec::new();
        for i in 1..=2 {
            if !nonsingular(self.r(), i, p)? {
                continue;
            }
            let class = order_class(self.s(), self.r(), i, p)?.kind;
            let model = self.model_order(i, p)?;
            let agree = match (class.order(), model) {
                (Some(k), TorsionOrder::Finite(m)) => k == m,
                (None, TorsionOrder::Infinite) => class == OrderKind::Infinite,
                _ => false,
            };
            let small = !matches!(model, TorsionOrder::Finite(k) if k > 4);
            outcomes.push(check(agree && small, "classifier and model disagree"));
        }
        Ok(all(outcomes))
    }
}

struct ModelCheck<'s, 'a> {
    suite: &'s Suite<'a>,
    i: usize,
    p: &'s ProjPoint,
}

impl ModelCheck<'_, '_> {
    fn model(&self) -> Result<(WeierstrassCurve, CurveMap, EllPoint)> {
        let m = self.suite.model(self.i, self.p)?;
        Ok((m.0.clone(), m.1.clone(), m.2.clone()))
    }

    fn esquared(&self) -> Result<Outcome> {
        let (curve, map, q) = self.model()?;
        let e2 = self.suite.e(self.i, &self.suite.e(self.i, self.p)?)?;
        Ok(check(map.forward(&e2)? == curve.mul(-2, &q), "ψ(e_i²P) ≠ −2ψ(e_iP)"))
    }

    fn phipistwo(&self) -> Result<Outcome> {
        let (curve, map, q) = self.model()?;
        let mut outcomes = Vec::new();
        for u in 0..4 {
            let t = map.forward(&SignAut::single(u).apply(self.p))?;
            outcomes.push(check(curve.mul(2, &t) == q, "ψ(e_iP) ≠ 2ψ(σ_uP)"));
        }
        Ok(all(outcomes))
    }

    fn twotorsion(&self) -> Result<Outcome> {
        let (curve, map, _) = self.model()?;
        let mut images = Vec::new();
        for sigma in SignAut::pairs() {
            let t = map.forward(&sigma.apply(self.p))?;
            if bounded_torsion_order(&curve, &t) != TorsionOrder::Finite(2) {
                return Ok(Outcome::Fail("ψ(σ_uv P) is not of order 2"));
            }
            images.push(t);
        }
        let distinct = images[0] != images[1] && images[0] != images[2] && images[1] != images[2];
        Ok(check(distinct, "2-torsion images coincide"))
    }
}
