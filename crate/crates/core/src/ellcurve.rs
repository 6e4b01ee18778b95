//! Weierstrass models of the fibres, with the base point as origin.
//!
//! A nonsingular fibre `C` of `f_i` is the intersection of two diagonal
//! quadrics `G, H`. The tangent plane `T` of the surface at `P` cuts `C` in
//! `3(P) + (R)` with `R = e_i(P)`. With a plane `L_x` through `P` and `R`
//! and a plane `L_y` through `R` avoiding `P`, the functions `x = L_x/T` and
//! `y = L_y/T` have poles of order 2 and 3 at `P` and nowhere else, so they
//! satisfy a cubic relation that is read off as a long Weierstrass equation.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::endo::apply_endo;
use crate::error::{Error, Result};
use crate::exact::{format_rat, Int, ProjPoint, Rat};
use crate::fibration::{Form, RulingPair};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, unit, Poly};
use crate::surface::{tangent_coeffs, Surface};

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

/// A point of a Weierstrass curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EllPoint {
    Infinity,
    Affine(Rat, Rat),
}

impl EllPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, EllPoint::Infinity)
    }

    /// Decimal strings `[X, Y]`, or an empty list for the point at infinity.
    pub fn to_strings(&self) -> Vec<String> {
        match self {
            EllPoint::Infinity => Vec::new(),
            EllPoint::Affine(x, y) => alloc::vec![format_rat(x), format_rat(y)],
        }
    }
}

impl fmt::Display for EllPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllPoint::Infinity => write!(f, "O"),
            EllPoint::Affine(x, y) => write!(f, "({}, {})", format_rat(x), format_rat(y)),
        }
    }
}

/// The operations of [`group_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Add,
    Neg,
    Mul(i64),
}

/// Result of [`bounded_torsion_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionOrder {
    Finite(u8),
    Infinite,
}

/// Largest torsion order of a rational point on an elliptic curve over ℚ.
pub const MAZUR_BOUND: u8 = 12;

impl WeierstrassCurve {
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<Self> {
        let e = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::SingularFibre);
        }
        Ok(e)
    }

    pub fn coefficients(&self) -> [&Rat; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn discriminant(&self) -> Rat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = Rat::from_integer(Int::from(2));
        let four = Rat::from_integer(Int::from(4));
        let b2 = a1 * a1 + &four * a2;
        let b4 = &two * a4 + a1 * a3;
        let b6 = a3 * a3 + &four * a6;
        let b8 = a1 * a1 * a6 + &four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c = |v: i64| Rat::from_integer(Int::from(v));
        -(&b2 * &b2 * &b8) - c(8) * &b4 * &b4 * &b4 - c(27) * &b6 * &b6 + c(9) * &b2 * &b4 * &b6
    }

    pub fn contains(&self, p: &EllPoint) -> bool {
        match p {
            EllPoint::Infinity => true,
            EllPoint::Affine(x, y) => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    fn require(&self, p: &EllPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    pub fn neg(&self, p: &EllPoint) -> EllPoint {
        match p {
            EllPoint::Infinity => EllPoint::Infinity,
            EllPoint::Affine(x, y) => {
                EllPoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3)
            }
        }
    }

    pub fn add(&self, p: &EllPoint, q: &EllPoint) -> EllPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (EllPoint::Infinity, _) => return q.clone(),
            (_, EllPoint::Infinity) => return p.clone(),
            (EllPoint::Affine(x1, y1), EllPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            let den = Rat::from_integer(Int::from(2)) * y1 + &self.a1 * x1 + &self.a3;
            if den.is_zero() || y1 != y2 {
                return EllPoint::Infinity;
            }
            let three = Rat::from_integer(Int::from(3));
            let two = Rat::from_integer(Int::from(2));
            (three * x1 * x1 + two * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / den
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - nu - &self.a3;
        EllPoint::Affine(x3, y3)
    }

    pub fn mul(&self, k: i64, p: &EllPoint) -> EllPoint {
        let mut base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = EllPoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Serialized coefficient list `[a₁, a₂, a₃, a₄, a₆]`.
    pub fn to_strings(&self) -> [String; 5] {
        self.coefficients().map(format_rat)
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.to_strings();
        write!(f, "[{}, {}, {}, {}, {}]", a1, a2, a3, a4, a6)
    }
}

/// Chord-tangent group law. `Add` takes two points, the others one.
pub fn group_op(e: &WeierstrassCurve, op: GroupOp, args: &[EllPoint]) -> Result<EllPoint> {
    for p in args {
        e.require(p)?;
    }
    let arity = if op == GroupOp::Add { 2 } else { 1 };
    if args.len() != arity {
        return Err(Error::Internal("wrong number of group operands"));
    }
    Ok(match op {
        GroupOp::Add => e.add(&args[0], &args[1]),
        GroupOp::Neg => e.neg(&args[0]),
        GroupOp::Mul(k) => e.mul(k, &args[0]),
    })
}

/// Multiples `0·Q, 1·Q, …, (MAZUR_BOUND/2)·Q`.
pub fn half_multiples(e: &WeierstrassCurve, q: &EllPoint) -> Vec<EllPoint> {
    let half = (MAZUR_BOUND / 2) as usize;
    let mut out = Vec::with_capacity(half + 1);
    out.push(EllPoint::Infinity);
    for k in 1..=half {
        let next = e.add(&out[k - 1], q);
        out.push(next);
    }
    out
}

/// Smallest `n ≤ 12` with `nQ = O`, otherwise `Infinite`.
///
/// `nQ = O` exactly when `⌈n/2⌉·Q = −⌊n/2⌋·Q`, so only multiples up to six
/// are ever formed.
pub fn bounded_torsion_order(e: &WeierstrassCurve, q: &EllPoint) -> TorsionOrder {
    order_from_half_multiples(e, &half_multiples(e, q))
}

pub fn order_from_half_multiples(e: &WeierstrassCurve, m: &[EllPoint]) -> TorsionOrder {
    for n in 1..=MAZUR_BOUND as usize {
        let k = n.div_ceil(2);
        if m[k] == e.neg(&m[n - k]) {
            return TorsionOrder::Finite(n as u8);
        }
    }
    TorsionOrder::Infinite
}

/// The birational map between a fibre and its Weierstrass model.
#[derive(Clone, Debug)]
pub struct CurveMap {
    quadrics: [Form; 2],
    base: ProjPoint,
    residual: ProjPoint,
    t: [Int; 4],
    lx: [Int; 4],
    ly: [Int; 4],
    /// `X = s_x · L_x/T`, `Y = s_y · L_y/T`.
    sx: Rat,
    sy: Rat,
    /// Points of the fibre at which `T` vanishes; forward images there are
    /// computed as limits.
    pub exceptions: Vec<ProjPoint>,
}

/// Direction for [`transport_point`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A point on either side of a [`CurveMap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carried {
    Fibre(ProjPoint),
    Curve(EllPoint),
}

fn lin(f: &[Int; 4], v: &[Int; 4]) -> Int {
    (0..4).fold(Int::zero(), |acc, k| acc + &f[k] * &v[k])
}

fn quad(g: &Form, u: &[Int; 4], v: &[Int; 4]) -> Int {
    (0..4).fold(Int::zero(), |acc, k| acc + &g[k] * &u[k] * &v[k])
}

fn int_rows(rows: &[&[Int; 4]]) -> Matrix {
    let r: Vec<Vec<Rat>> = rows
        .iter()
        .map(|v| v.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    Matrix::from_rows(&r)
}

fn to_int4(v: &[Rat]) -> [Int; 4] {
    let p = crate::exact::primitive_from_rats(v).expect("nonzero vector");
    core::array::from_fn(|k| p[k].clone())
}

fn proportional(a: &[Int; 4], b: &[Int; 4]) -> bool {
    (0..4).all(|k| (k + 1..4).all(|l| &a[k] * &b[l] == &a[l] * &b[k]))
}

/// A tangent direction of `C` at `q`, not proportional to `q`.
fn tangent_direction(quadrics: &[Form; 2], q: &ProjPoint) -> Result<[Int; 4]> {
    let grads: [[Int; 4]; 2] = core::array::from_fn(|j| {
        core::array::from_fn(|k| &quadrics[j][k] * &q.coords()[k])
    });
    let m = int_rows(&[&grads[0], &grads[1]]);
    if m.rank() != 2 {
        return Err(Error::SingularFibre);
    }
    m.nullspace()
        .iter()
        .map(|v| to_int4(v))
        .find(|v| !proportional(v, q.coords()))
        .ok_or(Error::Internal("tangent direction"))
}

fn on_fibre(quadrics: &[Form; 2], q: &ProjPoint) -> bool {
    quadrics.iter().all(|g| quad(g, q.coords(), q.coords()).is_zero())
}

impl CurveMap {
    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn residual(&self) -> &ProjPoint {
        &self.residual
    }

    pub fn quadrics(&self) -> &[Form; 2] {
        &self.quadrics
    }

    pub fn contains(&self, q: &ProjPoint) -> bool {
        on_fibre(&self.quadrics, q)
    }

    fn affine(&self, num_x: Int, num_y: Int, den: Int) -> EllPoint {
        let d = Rat::from_integer(den);
        EllPoint::Affine(
            &self.sx * Rat::from_integer(num_x) / &d,
            &self.sy * Rat::from_integer(num_y) / &d,
        )
    }

    pub fn forward(&self, q: &ProjPoint) -> Result<EllPoint> {
        if !self.contains(q) {
            return Err(Error::PointNotOnCurve);
        }
        if *q == self.base {
            return Ok(EllPoint::Infinity);
        }
        let c = q.coords();
        let den = lin(&self.t, c);
        if !den.is_zero() {
            return Ok(self.affine(lin(&self.lx, c), lin(&self.ly, c), den));
        }
        if *q != self.residual {
            return Err(Error::Internal("tangent plane meets the fibre outside P and R"));
        }
        let v = tangent_direction(&self.quadrics, q)?;
        let den = lin(&self.t, &v);
        if den.is_zero() {
            return Err(Error::ExceptionalPoint);
        }
        Ok(self.affine(lin(&self.lx, &v), lin(&self.ly, &v), den))
    }

    pub fn inverse(&self, e: &EllPoint) -> Result<ProjPoint> {
        let (x, y) = match e {
            EllPoint::Infinity => return Ok(self.base.clone()),
            EllPoint::Affine(x, y) => (x / &self.sx, y / &self.sy),
        };
        let plane = |l: &[Int; 4], c: &Rat| -> [Int; 4] {
            let v: Vec<Rat> = (0..4)
                .map(|k| Rat::from_integer(l[k].clone()) - c * Rat::from_integer(self.t[k].clone()))
                .collect();
            to_int4(&v)
        };
        let p1 = plane(&self.lx, &x);
        let p2 = plane(&self.ly, &y);
        let k = if self.residual == self.base { &self.base } else { &self.residual };
        let line = int_rows(&[&p1, &p2]);
        if line.rank() != 2 {
            return Err(Error::ExceptionalPoint);
        }
        let d = line
            .nullspace()
            .iter()
            .map(|v| to_int4(v))
            .find(|v| !proportional(v, k.coords()))
            .ok_or(Error::ExceptionalPoint)?;
        for g in &self.quadrics {
            let gd = quad(g, &d, &d);
            let b = quad(g, k.coords(), &d);
            if gd.is_zero() && b.is_zero() {
                continue;
            }
            let two_b = Int::from(2) * b;
            let q = ProjPoint::from_ints(core::array::from_fn(|j| &gd * &k.coords()[j] - &two_b * &d[j]))?;
            if !self.contains(&q) {
                return Err(Error::ExceptionalPoint);
            }
            return Ok(q);
        }
        Err(Error::ExceptionalPoint)
    }
}

/// Move a point across a [`CurveMap`].
pub fn transport_point(map: &CurveMap, point: &Carried, direction: Direction) -> Result<Carried> {
    match (point, direction) {
        (Carried::Fibre(q), Direction::Forward) => Ok(Carried::Curve(map.forward(q)?)),
        (Carried::Curve(e), Direction::Inverse) => Ok(Carried::Fibre(map.inverse(e)?)),
        _ => Err(Error::Internal("point does not match the transport direction")),
    }
}

fn linear_poly(f: &[Int; 4]) -> Poly {
    let c: [Rat; 4] = core::array::from_fn(|k| Rat::from_integer(f[k].clone()));
    Poly::linear(&c)
}

/// Weierstrass model of the `f_i`-fibre through `P`, with `P` as origin.
pub fn fibre_to_weierstrass(
    s: &Surface,
    r: &RulingPair,
    i: usize,
    p: &ProjPoint,
) -> Result<(WeierstrassCurve, CurveMap)> {
    s.require(p)?;
    if p.zero_count() >= 2 {
        return Err(Error::OmegaPoint);
    }
    let fib = r.fibration(i);
    let id = fib.value(p)?;
    if fib.is_singular(&id) {
        return Err(Error::SingularFibre);
    }
    let (g, h) = fib.fibre_quadrics(&id);
    let quadrics = [g, h];
    let residual = apply_endo(s, r, i, p)?;
    let t = tangent_coeffs(s, p);
    if !lin(&t, residual.coords()).is_zero() || !on_fibre(&quadrics, &residual) {
        return Err(Error::Internal("residual point of the tangent section"));
    }

    let second = if residual == *p {
        tangent_direction(&quadrics, p)?
    } else {
        residual.coords().clone()
    };
    let lx = int_rows(&[p.coords(), &second])
        .nullspace()
        .iter()
        .map(|v| to_int4(v))
        .find(|v| !proportional(v, &t))
        .ok_or(Error::Internal("no plane for x"))?;
    let avoid = if residual == *p { &second } else { p.coords() };
    let ly = int_rows(&[residual.coords()])
        .nullspace()
        .iter()
        .map(|v| to_int4(v))
        .find(|v| !lin(v, avoid).is_zero())
        .ok_or(Error::Internal("no plane for y"))?;

    let (tp, xp, yp) = (linear_poly(&t), linear_poly(&lx), linear_poly(&ly));
    let terms: [Poly; 7] = [
        &(&yp * &yp) * &tp,
        &(&xp * &yp) * &tp,
        &(&yp * &tp) * &tp,
        &(&xp * &xp) * &xp,
        &(&xp * &xp) * &tp,
        &(&xp * &tp) * &tp,
        &(&tp * &tp) * &tp,
    ];
    let qpolys: Vec<Poly> = quadrics
        .iter()
        .flat_map(|q| {
            let qc: [Rat; 4] = core::array::from_fn(|k| Rat::from_integer(q[k].clone()));
            let qp = Poly::diagonal_quadric(&qc);
            (0..4)
                .map(move |k| &qp * &Poly::monomial(unit(k), Rat::one()))
                .collect::<Vec<_>>()
        })
        .collect();
    let monos = monomials_of_degree(3);
    let columns: Vec<&Poly> = terms.iter().chain(qpolys.iter()).collect();
    let rows: Vec<Vec<Rat>> = monos
        .iter()
        .map(|m| columns.iter().map(|c| c.coeff(m)).collect())
        .collect();
    let ns = Matrix::from_rows(&rows).nullspace();
    if ns.len() != 1 {
        return Err(Error::Internal("cubic relation is not unique"));
    }
    let c = &ns[0];
    let beta = c[0].clone();
    let alpha = -c[3].clone();
    if beta.is_zero() || alpha.is_zero() {
        return Err(Error::Internal("cubic relation lacks x³ or y²"));
    }
    let ab = &alpha * &beta;
    let curve = WeierstrassCurve::new(
        c[1].clone(),
        -c[4].clone() * &beta,
        c[2].clone() * &ab,
        -c[5].clone() * &ab * &beta,
        -c[6].clone() * &alpha * &ab * &beta * &beta,
    )?;
    let mut exceptions = alloc::vec![p.clone()];
    if residual != *p {
        exceptions.push(residual.clone());
    }
    let map = CurveMap {
        quadrics,
        base: p.clone(),
        residual,
        t,
        lx,
        ly,
        sx: ab.clone(),
        sy: &ab * &beta,
        exceptions,
    };
    Ok((curve, map))
}

/// Naive size of an elliptic point, the larger digit count of the numerator
/// and denominator of `X`.
pub fn x_digits(p: &EllPoint) -> usize {
    match p {
        EllPoint::Infinity => 0,
        EllPoint::Affine(x, _) => {
            let n = crate::exact::decimal_digits(&x.numer().abs());
            let d = crate::exact::decimal_digits(x.denom());
            n.max(d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SignAut;

    fn pt(v: [i64; 4]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    fn v0() -> (Surface, RulingPair) {
        let s = Surface::from_i64([1, 1, -1, -1]).unwrap();
        let r = RulingPair::for_surface(&s, &pt([1, 1, 1, 1])).unwrap();
        (s, r)
    }

    fn euler() -> ProjPoint {
        pt([133, 134, 158, 59])
    }

    #[test]
    fn group_law_basics() {
        let e = WeierstrassCurve::new(Rat::zero(), Rat::zero(), Rat::zero(), -Rat::one(), Rat::zero())
            .unwrap();
        let q = EllPoint::Affine(Rat::zero(), Rat::zero());
        assert_eq!(e.add(&q, &EllPoint::Infinity), q);
        assert_eq!(e.add(&q, &e.neg(&q)), EllPoint::Infinity);
        assert_eq!(bounded_torsion_order(&e, &q), TorsionOrder::Finite(2));
        assert_eq!(bounded_torsion_order(&e, &EllPoint::Infinity), TorsionOrder::Finite(1));
        let bad = EllPoint::Affine(Rat::one(), Rat::one());
        assert_eq!(group_op(&e, GroupOp::Neg, &[bad]), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn infinite_order_point() {
        // y² = x³ − 2 has (3, 5) of infinite order.
        let two = Rat::from_integer(Int::from(2));
        let e = WeierstrassCurve::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), -two).unwrap();
        let q = EllPoint::Affine(Rat::from_integer(Int::from(3)), Rat::from_integer(Int::from(5)));
        assert!(e.contains(&q));
        assert_eq!(bounded_torsion_order(&e, &q), TorsionOrder::Infinite);
        assert_eq!(e.mul(-3, &q), e.neg(&e.mul(3, &q)));
        assert_eq!(e.mul(5, &q), e.add(&e.mul(2, &q), &e.mul(3, &q)));
    }

    #[test]
    fn euler_fibre_model() {
        let (s, r) = v0();
        let p = euler();
        let (e, map) = fibre_to_weierstrass(&s, &r, 1, &p).unwrap();
        assert!(!e.discriminant().is_zero());
        assert_eq!(map.forward(&p).unwrap(), EllPoint::Infinity);
        assert_eq!(map.inverse(&EllPoint::Infinity).unwrap(), p);
        let q = map.forward(map.residual()).unwrap();
        assert!(e.contains(&q));
        assert_eq!(map.inverse(&q).unwrap(), *map.residual());
        assert_eq!(bounded_torsion_order(&e, &q), TorsionOrder::Infinite);
        for sigma in SignAut::pairs() {
            let t = map.forward(&sigma.apply(&p)).unwrap();
            assert_eq!(bounded_torsion_order(&e, &t), TorsionOrder::Finite(2));
        }
    }

    #[test]
    fn doubling_identities() {
        let (s, r) = v0();
        let p = euler();
        for i in 1..=2 {
            let (e, map) = fibre_to_weierstrass(&s, &r, i, &p).unwrap();
            let e1 = apply_endo(&s, &r, i, &p).unwrap();
            let e2 = apply_endo(&s, &r, i, &e1).unwrap();
            let q1 = map.forward(&e1).unwrap();
            let q2 = map.forward(&e2).unwrap();
            assert_eq!(q2, e.mul(-2, &q1));
            for u in 0..4 {
                let t = map.forward(&SignAut::single(u).apply(&p)).unwrap();
                assert_eq!(e.mul(2, &t), q1);
            }
            for pt in [&e1, &e2] {
                let back = map.inverse(&map.forward(pt).unwrap()).unwrap();
                assert_eq!(&back, pt);
            }
        }
    }

    #[test]
    fn fourth_torsion_sign_patterns() {
        let (s, r) = v0();
        let p = euler();
        let (e, map) = fibre_to_weierstrass(&s, &r, 1, &p).unwrap();
        let c = p.coords();
        let mut found = 0;
        for neg in 0..4 {
            let mut v: [Int; 4] = [c[2].clone(), c[3].clone(), c[0].clone(), c[1].clone()];
            v[neg] = -v[neg].clone();
            let q = ProjPoint::from_ints(v).unwrap();
            if map.contains(&q) {
                assert_eq!(bounded_torsion_order(&e, &map.forward(&q).unwrap()), TorsionOrder::Finite(4));
                found += 1;
            }
        }
        assert_eq!(found, 4);
    }

    #[test]
    fn zero_coordinate_base() {
        let s = Surface::from_i64([-2, 1, 1, -2]).unwrap();
        let p = pt([0, 1, 1, 1]);
        let r = RulingPair::for_surface(&s, &p).unwrap();
        let mut models = 0;
        for i in 1..=2 {
            let fib = r.fibration(i);
            if fib.is_singular(&fib.value(&p).unwrap()) {
                continue;
            }
            models += 1;
            let (e, map) = fibre_to_weierstrass(&s, &r, i, &p).unwrap();
            assert_eq!(map.forward(&p).unwrap(), EllPoint::Infinity);
            for sigma in SignAut::pairs() {
                let q = sigma.apply(&p);
                if q != p {
                    let t = map.forward(&q).unwrap();
                    assert_eq!(bounded_torsion_order(&e, &t), TorsionOrder::Finite(2));
                    assert_eq!(map.inverse(&t).unwrap(), q);
                }
            }
        }
        assert!(models > 0);
    }
}
