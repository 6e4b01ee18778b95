//! The tangent-plane construction of `e₁(P), e₂(P)`.
//!
//! The tangent plane at `P` cuts the surface in a plane quartic with a node
//! at `P`. Its two node tangents `M₁, M₂` are the tangent lines at `P` of the
//! two fibres through `P`. If `M_j` is tangent to the fibre of `f_j`, the
//! fourth point in which `M_j` meets the surface is `e_i(P)` for `i ≠ j`.
//! When `M_j` lies on the surface that fourth point is undefined, and the
//! second point of `M_j` on the fibre of `f_i` is used instead.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{deflate_triple_root, primitive, split_square_disc_quadratic, BinaryForm, Int, ProjPoint};
use crate::fibration::{Form, RulingPair};
use crate::surface::{tangent_coeffs, Surface};

/// `e₁(P)` and `e₂(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoPair {
    pub e1: ProjPoint,
    pub e2: ProjPoint,
}

impl EndoPair {
    pub fn get(&self, i: usize) -> &ProjPoint {
        match i {
            1 => &self.e1,
            2 => &self.e2,
            _ => panic!("fibration index is 1 or 2"),
        }
    }
}

/// The two node tangent directions at a point with no zero coordinate.
/// A direction `E` stands for the line through `P` and `E`.
pub fn node_tangents(s: &Surface, p: &ProjPoint) -> Result<[[Int; 4]; 2]> {
    s.require(p)?;
    if p.zero_count() > 0 {
        return Err(Error::ZeroCoordinate);
    }
    let t = tangent_coeffs(s, p);
    let pc = p.coords();
    let k = p.dominant_index();
    let dirs: Vec<[Int; 4]> = (0..4)
        .filter(|&j| j != k)
        .map(|j| {
            let mut d: [Int; 4] = Default::default();
            d[j] = t[k].clone();
            d[k] = -&t[j];
            d
        })
        .collect();
    let mut basis = None;
    'outer: for a in 0..dirs.len() {
        for b in a + 1..dirs.len() {
            if rank3(pc, &dirs[a], &dirs[b]) {
                basis = Some((&dirs[a], &dirs[b]));
                break 'outer;
            }
        }
    }
    let (d1, d2) = basis.ok_or(Error::Internal("tangent plane basis"))?;
    let c = s.int_coeffs();
    let mut q = [Int::zero(), Int::zero(), Int::zero()];
    for j in 0..4 {
        let w = &c[j] * &pc[j] * &pc[j];
        q[0] += &w * &d1[j] * &d1[j];
        q[1] += Int::from(2) * &w * &d1[j] * &d2[j];
        q[2] += &w * &d2[j] * &d2[j];
    }
    let (f1, f2) = split_square_disc_quadratic(&BinaryForm::from_ints(q.to_vec()))?;
    if f1 == f2 {
        return Err(Error::Internal("coincident node tangents"));
    }
    let dir = |f: &BinaryForm| -> [Int; 4] {
        let (al, be) = (&f.coeffs()[0], &f.coeffs()[1]);
        primitive4((0..4).map(|j| be * &d1[j] - al * &d2[j]).collect())
    };
    Ok([dir(&f1), dir(&f2)])
}

fn primitive4(v: Vec<Int>) -> [Int; 4] {
    let mut it = primitive(v).expect("nonzero direction").into_iter();
    core::array::from_fn(|_| it.next().expect("four entries"))
}

fn rank3(p: &[Int; 4], a: &[Int; 4], b: &[Int; 4]) -> bool {
    let minor = |c: [usize; 3]| {
        let m = |r: &[Int; 4], k: usize| r[c[k]].clone();
        m(p, 0) * (m(a, 1) * m(b, 2) - m(a, 2) * m(b, 1)) - m(p, 1) * (m(a, 0) * m(b, 2) - m(a, 2) * m(b, 0))
            + m(p, 2) * (m(a, 0) * m(b, 1) - m(a, 1) * m(b, 0))
    };
    [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .into_iter()
        .any(|c| !minor(c).is_zero())
}

/// The quartic restricted to the line `s·P + t·E`, coefficients of
/// `s⁴, s³t, s²t², st³, t⁴`.
pub fn restricted_quartic(s: &Surface, p: &[Int; 4], e: &[Int; 4]) -> BinaryForm {
    let c = s.int_coeffs();
    let mut q = vec![Int::zero(); 5];
    let binom = [1, 4, 6, 4, 1];
    for k in 0..4 {
        let mut pw_p = vec![Int::from(1)];
        let mut pw_e = vec![Int::from(1)];
        for _ in 0..4 {
            pw_p.push(pw_p.last().unwrap() * &p[k]);
            pw_e.push(pw_e.last().unwrap() * &e[k]);
        }
        for j in 0..5 {
            q[j] += &c[k] * Int::from(binom[j]) * &pw_p[4 - j] * &pw_e[j];
        }
    }
    BinaryForm::from_ints(q)
}

fn quad(g: &Form, u: &[Int; 4], v: &[Int; 4]) -> Int {
    (0..4).fold(Int::zero(), |acc, k| acc + &g[k] * &u[k] * &v[k])
}

/// The second point of the line through `P` (on the quadric) in direction
/// `E` on the quadric `g`, or `None` if the line lies on `g`.
fn second_on_quadric(g: &Form, p: &[Int; 4], e: &[Int; 4]) -> Option<ProjPoint> {
    let ge = quad(g, e, e);
    let b = quad(g, p, e);
    if ge.is_zero() && b.is_zero() {
        return None;
    }
    let two_b = Int::from(2) * b;
    ProjPoint::from_ints(core::array::from_fn(|k| &ge * &p[k] - &two_b * &e[k])).ok()
}

fn on_quadric(g: &Form, p: &ProjPoint) -> bool {
    quad(g, p.coords(), p.coords()).is_zero()
}

/// Second intersection of `P + t·E` with the fibre `C_i` through `P`.
fn other_point(r: &RulingPair, i: usize, p: &ProjPoint, e: &[Int; 4]) -> Result<ProjPoint> {
    let fib = r.fibration(i);
    let (g, h) = fib.fibre_quadrics(&fib.value(p)?);
    let cands: Vec<ProjPoint> = [&g, &h]
        .iter()
        .filter_map(|q| second_on_quadric(q, p.coords(), e))
        .collect();
    let first = cands.first().ok_or(Error::TangentInCurve)?;
    if cands.iter().any(|c| c != first) || !on_quadric(&g, first) || !on_quadric(&h, first) {
        return Err(Error::Internal("line meets the fibre outside the expected point"));
    }
    Ok(first.clone())
}

fn tangent_to_fibre(r: &RulingPair, j: usize, p: &ProjPoint, e: &[Int; 4]) -> Result<bool> {
    let fib = r.fibration(j);
    let (g, h) = fib.fibre_quadrics(&fib.value(p)?);
    Ok(quad(&g, p.coords(), e).is_zero() && quad(&h, p.coords(), e).is_zero())
}

/// Fourth intersection of the line `P + t·E` with the surface, or `None`
/// when the line lies on the surface.
pub fn fourth_point(s: &Surface, p: &ProjPoint, e: &[Int; 4]) -> Result<Option<ProjPoint>> {
    let q = restricted_quartic(s, p.coords(), e);
    let root = crate::exact::P1Point::from_i64(1, 0)?;
    match deflate_triple_root(&q, &root) {
        Ok(st) => {
            let pt = ProjPoint::from_ints(core::array::from_fn(|k| {
                st.s() * &p.coords()[k] + st.t() * &e[k]
            }))?;
            Ok(Some(pt))
        }
        Err(Error::IdenticallyZero) => Ok(None),
        Err(err) => Err(err),
    }
}

/// `(e₁(P), e₂(P))` by the tangent-plane construction.
pub fn richmond_pair(s: &Surface, r: &RulingPair, p: &ProjPoint) -> Result<EndoPair> {
    s.require(p)?;
    match p.zero_count() {
        0 => {}
        1 => {
            return Ok(EndoPair {
                e1: p.clone(),
                e2: p.clone(),
            })
        }
        _ => return Err(Error::OmegaPoint),
    }
    let tangents = node_tangents(s, p)?;
    let mut out: [Option<ProjPoint>; 2] = [None, None];
    for e in &tangents {
        let t1 = tangent_to_fibre(r, 1, p, e)?;
        let t2 = tangent_to_fibre(r, 2, p, e)?;
        let i = match (t1, t2) {
            (true, false) => 2,
            (false, true) => 1,
            _ => return Err(Error::Internal("node tangent not matched to a fibre")),
        };
        let via_surface = fourth_point(s, p, e)?;
        let via_fibre = other_point(r, i, p, e);
        let point = match (via_surface, via_fibre) {
            (Some(a), Ok(b)) => {
                if a != b {
                    return Err(Error::Internal("fourth point and fibre point differ"));
                }
                a
            }
            (Some(a), Err(_)) => a,
            (None, Ok(b)) => b,
            (None, Err(err)) => return Err(err),
        };
        if out[i - 1].is_some() {
            return Err(Error::Internal("both node tangents matched one fibre"));
        }
        out[i - 1] = Some(point);
    }
    let [Some(e1), Some(e2)] = out else {
        return Err(Error::Internal("missing endomorphism image"));
    };
    for (i, q) in [(1, &e1), (2, &e2)] {
        if !s.contains(q) || q.zero_count() >= 2 {
            return Err(Error::Internal("image left the surface"));
        }
        if r.fibre_value(i, q)? != r.fibre_value(i, p)? {
            return Err(Error::Internal("image left the fibre"));
        }
    }
    Ok(EndoPair { e1, e2 })
}
