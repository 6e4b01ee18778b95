//! Order of the class `(e_i(P)) − (P)` on the fibre of `f_i` through `P`.
//!
//! With `P` as origin and `Q` the image of `e_i(P)`, the image of `e_i²(P)`
//! is `−2Q` and the three points `σ_{uv}(P)` are the nontrivial 2-torsion
//! points. The order of `Q` is therefore decided by comparing `e_i(P)` and
//! `e_i²(P)` with `P` and its sign images, without leaving ℚ.

use alloc::vec::Vec;

use crate::ellcurve::{
    bounded_torsion_order, fibre_to_weierstrass, half_multiples, order_from_half_multiples, EllPoint, TorsionOrder,
    WeierstrassCurve,
};
use crate::endo::apply_endo;
use crate::error::{Error, Result};
use crate::exact::ProjPoint;
use crate::fibration::RulingPair;
use crate::surface::{SignAut, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    One,
    Two,
    Three,
    Four,
    Infinite,
    UndefinedSingularFibre,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::One => "One",
            OrderKind::Two => "Two",
            OrderKind::Three => "Three",
            OrderKind::Four => "Four",
            OrderKind::Infinite => "Infinite",
            OrderKind::UndefinedSingularFibre => "UndefinedSingularFibre",
        }
    }

    /// The numeric order, where one is defined and finite.
    pub fn order(self) -> Option<u8> {
        match self {
            OrderKind::One => Some(1),
            OrderKind::Two => Some(2),
            OrderKind::Three => Some(3),
            OrderKind::Four => Some(4),
            _ => None,
        }
    }
}

/// The points the decision was read from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness {
    /// `e_i(P)`.
    pub e1: Option<ProjPoint>,
    /// `e_i(e_i(P))`.
    pub e2: Option<ProjPoint>,
    /// The sign automorphism `σ` with `σ(P)` equal to the compared point.
    pub sigma: Option<SignAut>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderClass {
    pub kind: OrderKind,
    pub witness: Witness,
}

impl OrderClass {
    fn bare(kind: OrderKind) -> Self {
        OrderClass {
            kind,
            witness: Witness::default(),
        }
    }
}

fn sign_match(p: &ProjPoint, q: &ProjPoint) -> Option<SignAut> {
    SignAut::pairs().into_iter().find(|s| s.apply(p) == *q)
}

pub fn order_class(s: &Surface, r: &RulingPair, i: usize, p: &ProjPoint) -> Result<OrderClass> {
    s.require(p)?;
    if p.zero_count() >= 2 {
        return Err(Error::OmegaPoint);
    }
    if r.is_singular_at(i, p)? {
        return Ok(OrderClass::bare(OrderKind::UndefinedSingularFibre));
    }
    if p.zero_count() == 1 {
        return Ok(OrderClass::bare(OrderKind::One));
    }
    let e1 = apply_endo(s, r, i, p)?;
    if let Some(sigma) = sign_match(p, &e1) {
        return Ok(OrderClass {
            kind: OrderKind::Two,
            witness: Witness {
                e1: Some(e1),
                e2: None,
                sigma: Some(sigma),
            },
        });
    }
    let e2 = apply_endo(s, r, i, &e1)?;
    let (kind, sigma) = if e2 == e1 {
        (OrderKind::Three, None)
    } else if let Some(sigma) = sign_match(p, &e2) {
        (OrderKind::Four, Some(sigma))
    } else {
        (OrderKind::Infinite, None)
    };
    Ok(OrderClass {
        kind,
        witness: Witness {
            e1: Some(e1),
            e2: Some(e2),
            sigma,
        },
    })
}

/// The order of `ψ(e_i(P))` on the Weierstrass model, bounded by 12.
pub fn model_order(s: &Surface, r: &RulingPair, i: usize, p: &ProjPoint) -> Result<TorsionOrder> {
    let (curve, map) = fibre_to_weierstrass(s, r, i, p)?;
    let q = map.forward(&apply_endo(s, r, i, p)?)?;
    Ok(bounded_torsion_order(&curve, &q))
}

/// The multiples `k·ψ(e_i(P))`, `k = 1..6`. None of them is `O` and no two of
/// them are equal or opposite, which rules out every order up to twelve.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub curve: WeierstrassCurve,
    pub multiples: Vec<EllPoint>,
}

pub fn certify_infinite_order(s: &Surface, r: &RulingPair, i: usize, p: &ProjPoint) -> Result<Certificate> {
    if order_class(s, r, i, p)?.kind != OrderKind::Infinite {
        return Err(Error::NotInfinite);
    }
    let (curve, map) = fibre_to_weierstrass(s, r, i, p)?;
    let q = map.forward(&apply_endo(s, r, i, p)?)?;
    let mut multiples = half_multiples(&curve, &q);
    if order_from_half_multiples(&curve, &multiples) != TorsionOrder::Infinite {
        return Err(Error::Contradiction);
    }
    multiples.remove(0);
    Ok(Certificate { curve, multiples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: [i64; 4]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    fn v0() -> (Surface, RulingPair) {
        let s = Surface::from_i64([1, 1, -1, -1]).unwrap();
        let r = RulingPair::for_surface(&s, &pt([1, 1, 1, 1])).unwrap();
        (s, r)
    }

    #[test]
    fn zero_coordinate_is_one() {
        let s = Surface::from_i64([-2, 1, 1, -2]).unwrap();
        let p = pt([0, 1, 1, 1]);
        let r = RulingPair::for_surface(&s, &p).unwrap();
        for i in 1..=2 {
            let k = order_class(&s, &r, i, &p).unwrap().kind;
            assert!(k == OrderKind::One || k == OrderKind::UndefinedSingularFibre);
        }
    }

    #[test]
    fn line_points() {
        let (s, r) = v0();
        for i in 1..=2 {
            let c = order_class(&s, &r, i, &pt([1, 1, 1, 1])).unwrap();
            assert_eq!(c.kind, OrderKind::UndefinedSingularFibre);
        }
        let c = order_class(&s, &r, 1, &pt([1, 2, 1, 2])).unwrap();
        assert_eq!(c.kind, OrderKind::Two);
        assert_eq!(model_order(&s, &r, 1, &pt([1, 2, 1, 2])).unwrap(), TorsionOrder::Finite(2));
        assert_eq!(certify_infinite_order(&s, &r, 1, &pt([1, 2, 1, 2])).unwrap_err(), Error::NotInfinite);
    }

    #[test]
    fn euler_point_is_infinite() {
        let (s, r) = v0();
        let p = pt([133, 134, 158, 59]);
        for i in 1..=2 {
            assert_eq!(order_class(&s, &r, i, &p).unwrap().kind, OrderKind::Infinite);
            let cert = certify_infinite_order(&s, &r, i, &p).unwrap();
            assert_eq!(cert.multiples.len(), 6);
            assert!(cert.multiples.iter().all(|m| cert.curve.contains(m) && !m.is_infinity()));
        }
        assert_eq!(order_class(&s, &r, 1, &pt([1, 0, 1, 0])), Err(Error::OmegaPoint));
    }
}
