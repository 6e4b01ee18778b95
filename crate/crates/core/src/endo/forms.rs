//! Closed-form polynomial descriptions of `e₁, e₂`.
//!
//! On a surface with `a + b + c + d = 0` the point `(1:1:1:1)` has image
//! `F(a, b, c, n)` where each coordinate of `F` is weighted-homogeneous of
//! degree 3 (`a, b, c` of weight 1, `n` of weight 2, `d = −a − b − c`) and
//! `n = θ_i` is the ruling invariant of the fibration. Rescaling coordinates
//! moves any point with nonzero coordinates to `(1:1:1:1)`, so on a general
//! surface
//!
//! `e_i(P)_u = P_u · F_u(A x⁴, B y⁴, C z⁴, θ_i x² y² z² w²)`,
//!
//! a form of degree 13 in `P`.

use alloc::string::String;
use alloc::vec::Vec;

use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use super::richmond::richmond_pair;
use crate::error::{Error, Result};
use crate::exact::{common_denominator, gcd_all, Int, ProjPoint, Rat};
use crate::fibration::RulingPair;
use crate::linalg::Matrix;
use crate::poly::{Exponent, Poly};
use crate::surface::{Perm, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Printed,
    Derived,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Printed => "printed",
            Provenance::Derived => "derived",
        }
    }
}

/// Integer polynomial in `(a, b, c, n)`, evaluated without rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    terms: Vec<(Exponent, Int)>,
}

impl IntPoly {
    fn from_poly(p: &Poly, scale: &Int) -> Self {
        let s = Rat::from_integer(scale.clone());
        IntPoly {
            terms: p
                .terms()
                .map(|(e, c)| {
                    let v = c * &s;
                    debug_assert!(v.is_integer());
                    (*e, v.to_integer())
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Exponent, Int)] {
        &self.terms
    }

    fn eval(&self, powers: &[Vec<Int>; 4]) -> Int {
        let mut acc = Int::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..4 {
                if e[k] > 0 {
                    t *= &powers[k][e[k] as usize];
                }
            }
            acc += t;
        }
        acc
    }
}

/// The universal map `F`, one polynomial per output coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoForms {
    provenance: Provenance,
    coords: [Poly; 4],
    int_coords: [IntPoly; 4],
}

impl EndoForms {
    fn new(provenance: Provenance, coords: [Poly; 4]) -> Self {
        let den = common_denominator(coords.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
        let nums: Vec<Int> = coords
            .iter()
            .flat_map(|p| p.terms().map(|(_, c)| (c * Rat::from_integer(den.clone())).to_integer()))
            .collect();
        let g = gcd_all(nums.iter());
        let scale = Rat::new(den, g);
        let coords = coords.map(|p| p.scale(&scale));
        let int_coords = core::array::from_fn(|k| IntPoly::from_poly(&coords[k], &Int::one()));
        EndoForms {
            provenance,
            coords,
            int_coords,
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Coordinate polynomials in `(a, b, c, n)`, scaled to coprime integers.
    pub fn coords(&self) -> &[Poly; 4] {
        &self.coords
    }

    pub fn int_coords(&self) -> &[IntPoly; 4] {
        &self.int_coords
    }

    /// Raw (unnormalized) image vector for one ordering of the coordinates.
    fn raw_image(&self, coeffs: &[Int; 4], n_int: &Int, sign: i8, x: &[Int; 4]) -> [Int; 4] {
        let sq: [Int; 4] = core::array::from_fn(|k| &x[k] * &x[k]);
        let alpha: [Int; 4] = core::array::from_fn(|k| &coeffs[k] * &sq[k] * &sq[k]);
        let mut n = n_int * &sq[0] * &sq[1] * &sq[2] * &sq[3];
        if sign < 0 {
            n = -n;
        }
        let inputs = [&alpha[0], &alpha[1], &alpha[2], &n];
        let powers: [Vec<Int>; 4] = core::array::from_fn(|k| {
            let max = self
                .int_coords
                .iter()
                .flat_map(|p| p.terms.iter().map(move |(e, _)| e[k]))
                .max()
                .unwrap_or(0) as usize;
            let mut v = alloc::vec![Int::one()];
            for j in 1..=max {
                let next = &v[j - 1] * inputs[k];
                v.push(next);
            }
            v
        });
        core::array::from_fn(|u| &x[u] * self.int_coords[u].eval(&powers))
    }

    /// Image of `p` under the map with ruling-invariant sign `sign`, trying
    /// the conjugates by double transpositions when the forms vanish.
    pub fn eval(&self, s: &Surface, sign: i8, p: &ProjPoint) -> Result<ProjPoint> {
        for perm in Perm::KLEIN {
            let coeffs = perm.apply_array(s.int_coeffs());
            let x = perm.apply_array(p.coords());
            let img = self.raw_image(&coeffs, s.int_n(), sign, &x);
            if img.iter().all(|v| v.is_zero()) {
                continue;
            }
            let back = perm.inverse().apply_array(&img);
            return ProjPoint::from_ints(back);
        }
        Err(Error::AllVariantsVanish)
    }

    /// The four degree-13 forms in `x, y, z, w` for `s` and a sign.
    pub fn expand(&self, s: &Surface, sign: i8) -> [Poly; 4] {
        let c = s.int_coeffs();
        let mut args: [Poly; 4] = Default::default();
        for k in 0..3 {
            let mut e = [0u16; 4];
            e[k] = 4;
            args[k] = Poly::monomial(e, Rat::from_integer(c[k].clone()));
        }
        let n = if sign < 0 { -s.int_n().clone() } else { s.int_n().clone() };
        args[3] = Poly::monomial([2, 2, 2, 2], Rat::from_integer(n));
        core::array::from_fn(|u| &Poly::var(u) * &self.coords[u].compose(&args))
    }
}

/// The sum-zero formulas as printed, with `d` replaced by `−a − b − c`, as
/// polynomials in `(a, b, c, n)`.
pub fn printed_sum_zero_forms() -> EndoForms {
    let a = Poly::var(0);
    let b = Poly::var(1);
    let c = Poly::var(2);
    let n = Poly::var(3);
    let d = &(&(-&a) - &b) - &c;
    let k = |v: i64| Poly::constant(Rat::from_integer(Int::from(v)));
    let three = k(3);
    let four = k(4);
    let nine = k(9);
    let x = &(&(&(&three * &(&b * &c)) + &(&a * &d)) * &(&a + &d)) + &(&(&four * &n) * &(&b - &c));
    let y = &(&(&(&three * &(&a * &c)) + &(&b * &d)) * &(&b + &d)) + &(&(&four * &n) * &(&c - &a));
    let z = &(&(&(&three * &(&a * &b)) + &(&c * &d)) * &(&c + &d)) + &(&(&four * &n) * &(&a - &b));
    let w = &(&(-&d) * &(&(&(&a * &b) + &(&a * &c)) + &(&b * &c))) - &(&nine * &(&(&a * &b) * &c));
    EndoForms::new(Provenance::Printed, [x, y, z, w])
}

/// The degree-13 formulas as printed, evaluated directly at `p` with the
/// surface's own coefficients (no sum-zero reduction) and `N` of the given
/// sign; conjugates by double transpositions are tried when all four vanish.
pub fn eval_printed_forms(s: &Surface, sign: i8, p: &ProjPoint) -> Result<ProjPoint> {
    for perm in Perm::KLEIN {
        let c = perm.apply_array(s.int_coeffs());
        let x = perm.apply_array(p.coords());
        let img = printed_raw(&c, s.int_n(), sign, &x);
        if img.iter().all(|v| v.is_zero()) {
            continue;
        }
        return ProjPoint::from_ints(perm.inverse().apply_array(&img));
    }
    Err(Error::AllVariantsVanish)
}

fn printed_raw(c: &[Int; 4], n_int: &Int, sign: i8, x: &[Int; 4]) -> [Int; 4] {
    let [a, b, cc, d] = c;
    let sq: [Int; 4] = core::array::from_fn(|k| &x[k] * &x[k]);
    let q: [Int; 4] = core::array::from_fn(|k| &sq[k] * &sq[k]);
    let (xx, yy, zz, ww) = (&q[0], &q[1], &q[2], &q[3]);
    let mut n = n_int * &sq[0] * &sq[1] * &sq[2] * &sq[3];
    if sign < 0 {
        n = -n;
    }
    let three = Int::from(3);
    let four = Int::from(4);
    let nine = Int::from(9);
    let x1 = &x[0]
        * ((&three * b * cc * yy * zz + a * d * xx * ww) * (a * xx + d * ww)
            + &four * &n * (b * yy - cc * zz));
    let y1 = &x[1]
        * ((&three * a * cc * xx * zz + b * d * yy * ww) * (b * yy + d * ww)
            + &four * &n * (cc * zz - a * xx));
    let z1 = &x[2]
        * ((&three * a * b * xx * yy + cc * d * zz * ww) * (cc * zz + d * ww)
            + &four * &n * (a * xx - b * yy));
    let w1 = &x[3] * (cc * d * zz * ww * (cc * zz + d * ww) - a * b * xx * yy * (&nine * cc * zz + d * ww));
    [x1, y1, z1, w1]
}

/// Exponents of the 13 monomials of weighted degree 3 in `(a, b, c, n)`.
pub fn weighted_cubic_monomials() -> Vec<Exponent> {
    let mut out = Vec::new();
    for e in crate::poly::monomials_of_degree(3) {
        if e[3] == 0 {
            out.push([e[0], e[1], e[2], 0]);
        }
    }
    for k in 0..3 {
        let mut e = [0u16; 4];
        e[k] = 1;
        e[3] = 1;
        out.push(e);
    }
    out
}

/// A sum-zero surface `(a, b, c, −a−b−c)` with square product for which
/// `(1:1:1:1)` is not on a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub coeffs: [i64; 4],
    pub n: i64,
    pub image: ProjPoint,
}

/// Sum-zero coefficient quadruples in a fixed deterministic order.
pub fn sum_zero_surfaces(limit: usize) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    let range = 12i64;
    for a in 1..=range {
        for b in -range..=range {
            for c in -range..=range {
                let d = -a - b - c;
                if b == 0 || c == 0 || d == 0 {
                    continue;
                }
                if a + b == 0 || a + c == 0 || a + d == 0 {
                    continue;
                }
                let g = [a, b, c, d].iter().fold(0i64, |g, v| g.gcd(v));
                if g != 1 {
                    continue;
                }
                let prod = a * b * c * d;
                if prod <= 0 {
                    continue;
                }
                let r = prod.sqrt();
                if r * r != prod {
                    continue;
                }
                out.push([a, b, c, d]);
                if out.len() == limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Images of `(1:1:1:1)` under `e₁` and `e₂` on a sum-zero surface.
pub fn samples_for(coeffs: [i64; 4]) -> Result<[Sample; 2]> {
    let s = Surface::from_i64(coeffs)?;
    let one = ProjPoint::from_i64([1, 1, 1, 1])?;
    let r = RulingPair::for_surface(&s, &one)?;
    let e = richmond_pair(&s, &r, &one)?;
    let n: i64 = s
        .int_n()
        .try_into()
        .map_err(|_| Error::Internal("sample product too large"))?;
    Ok([
        Sample {
            coeffs,
            n,
            image: e.e1,
        },
        Sample {
            coeffs,
            n: -n,
            image: e.e2,
        },
    ])
}

/// Number of sample surfaces used in the fit.
pub const FIT_SURFACES: usize = 16;
/// Number of further surfaces used to confirm the fit.
pub const CHECK_SURFACES: usize = 8;

/// Fit `F` to the images of `(1:1:1:1)` on the given sum-zero surfaces.
///
/// Agreement on samples alone leaves a three-dimensional space of tuples,
/// since the quartic relation `n² + abc(a+b+c) = 0` lets different
/// polynomials define the same map. The tuple is pinned by asking it to
/// commute with permutations of `(a, b, c)`, where an odd permutation also
/// negates `n`.
pub fn fit_forms(surfaces: &[[i64; 4]]) -> Result<EndoForms> {
    let monos = weighted_cubic_monomials();
    let m = monos.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for coeffs in surfaces {
        for sample in samples_for(*coeffs)? {
            let vals: Vec<Int> = monos
                .iter()
                .map(|e| {
                    let inputs = [sample.coeffs[0], sample.coeffs[1], sample.coeffs[2], sample.n];
                    (0..4).fold(Int::one(), |acc, k| {
                        acc * num_traits::pow(Int::from(inputs[k]), e[k] as usize)
                    })
                })
                .collect();
            let img = sample.image.coords();
            let p = (0..4).find(|&k| !img[k].is_zero()).expect("nonzero point");
            for l in (0..4).filter(|&l| l != p) {
                // F_p · img_l − F_l · img_p = 0
                let mut row = alloc::vec![Rat::zero(); 4 * m];
                for (j, v) in vals.iter().enumerate() {
                    row[p * m + j] = Rat::from_integer(v * &img[l]);
                    row[l * m + j] = Rat::from_integer(-(v * &img[p]));
                }
                rows.push(row);
            }
        }
    }
    for sigma in [[1usize, 0, 2], [0, 2, 1]] {
        for u in 0..4 {
            let su = if u < 3 { sigma[u] } else { 3 };
            for (j, f) in monos.iter().enumerate() {
                let g: Exponent = [f[sigma[0]], f[sigma[1]], f[sigma[2]], f[3]];
                let jj = monos.iter().position(|e| *e == g).expect("closed monomial set");
                let mut row = alloc::vec![Rat::zero(); 4 * m];
                row[u * m + j] += Rat::one();
                let sgn = if f[3] % 2 == 0 { Rat::one() } else { -Rat::one() };
                row[su * m + jj] -= sgn;
                rows.push(row);
            }
        }
    }
    let ns = Matrix::from_rows(&rows).nullspace();
    if ns.len() != 1 {
        return Err(Error::InterpolationFailure("solution space is not one-dimensional"));
    }
    let v = &ns[0];
    let coords: [Poly; 4] = core::array::from_fn(|u| {
        let mut p = Poly::zero();
        for (j, e) in monos.iter().enumerate() {
            p.add_term(*e, v[u * m + j].clone());
        }
        p
    });
    Ok(EndoForms::new(Provenance::Derived, coords))
}

/// Interpolate `F` from the tangent-plane construction at `(1:1:1:1)` on a
/// list of sum-zero surfaces and confirm it on further surfaces.
pub fn derive_validated_forms() -> Result<EndoForms> {
    let surfaces = sum_zero_surfaces(FIT_SURFACES + CHECK_SURFACES);
    if surfaces.len() < FIT_SURFACES + CHECK_SURFACES {
        return Err(Error::InterpolationFailure("not enough sample surfaces"));
    }
    let forms = fit_forms(&surfaces[..FIT_SURFACES])?;
    for coeffs in &surfaces[FIT_SURFACES..] {
        let s = Surface::from_i64(*coeffs)?;
        let one = ProjPoint::from_i64([1, 1, 1, 1])?;
        for sample in samples_for(*coeffs)? {
            let sign = if sample.n > 0 { 1 } else { -1 };
            if forms.eval(&s, sign, &one)? != sample.image {
                return Err(Error::InterpolationFailure("fit disagrees on a check surface"));
            }
        }
    }
    Ok(forms)
}

/// Outcome of comparing the derived forms with the printed ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconcileReport {
    /// Whether the derived map equals the printed one for some choice of the
    /// sign of `N`.
    pub matches: bool,
    /// `ε` such that `e_i` is the printed map with `N = ε·θ_i`.
    pub sign_binding: Option<i8>,
    /// Derived minus printed (scaled to the same normalization) for each
    /// coordinate, for the better of the two sign choices.
    pub differences: [Poly; 4],
    /// A surface and point where the printed map and the construction differ.
    pub counterexample: Option<([i64; 4], ProjPoint, ProjPoint, ProjPoint)>,
    /// Points on which printed formulas were compared with the construction.
    pub points_checked: usize,
}

fn substitute_sign(p: &Poly, eps: i8) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let flip = eps < 0 && e[3] % 2 == 1;
        out.add_term(*e, if flip { -c.clone() } else { c.clone() });
    }
    out
}

/// Compare derived and printed forms coefficient by coefficient and on the
/// check surfaces.
pub fn reconcile(derived: &EndoForms) -> Result<ReconcileReport> {
    let printed = printed_sum_zero_forms();
    let mut best: Option<(i8, [Poly; 4], usize)> = None;
    for eps in [1i8, -1] {
        let flipped: [Poly; 4] = core::array::from_fn(|u| substitute_sign(&printed.coords[u], eps));
        let renorm = EndoForms::new(Provenance::Printed, flipped);
        // Both sides are primitive integer polynomials; fix the overall sign
        // by the first nonzero coefficient.
        let lead = |f: &EndoForms| -> Rat {
            f.coords
                .iter()
                .flat_map(|p| p.terms().map(|(_, c)| c.clone()))
                .next()
                .unwrap_or_else(Rat::one)
        };
        let ratio = lead(derived) / lead(&renorm);
        let diffs: [Poly; 4] =
            core::array::from_fn(|u| &derived.coords[u] - &renorm.coords[u].scale(&ratio));
        let size: usize = diffs.iter().map(|d| d.len()).sum();
        if best.as_ref().is_none_or(|b| size < b.2) {
            best = Some((eps, diffs, size));
        }
    }
    let (eps, differences, size) = best.expect("two candidates");
    let matches = size == 0;

    let mut counterexample = None;
    let mut points_checked = 0;
    for coeffs in sum_zero_surfaces(FIT_SURFACES + CHECK_SURFACES) {
        let s = Surface::from_i64(coeffs)?;
        let one = ProjPoint::from_i64([1, 1, 1, 1])?;
        for sample in samples_for(coeffs)? {
            let theta_sign: i8 = if sample.n > 0 { 1 } else { -1 };
            let printed_pt = eval_printed_forms(&s, theta_sign * eps, &one)?;
            points_checked += 1;
            if printed_pt != sample.image && counterexample.is_none() {
                counterexample = Some((coeffs, one.clone(), sample.image.clone(), printed_pt));
            }
        }
    }
    Ok(ReconcileReport {
        matches: matches && counterexample.is_none(),
        sign_binding: if matches { Some(eps) } else { None },
        differences,
        counterexample,
        points_checked,
    })
}

/// Human-readable rendering of a polynomial in `(a, b, c, n)`.
pub fn format_poly(p: &Poly) -> String {
    use core::fmt::Write;
    let names = ["a", "b", "c", "n"];
    let mut out = String::new();
    for (e, c) in p.terms() {
        if !out.is_empty() {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            out.push('-');
        }
        let _ = write!(out, "{}", crate::exact::format_rat(&c.abs()));
        for k in 0..4 {
            match e[k] {
                0 => {}
                1 => {
                    let _ = write!(out, "*{}", names[k]);
                }
                m => {
                    let _ = write!(out, "*{}^{}", names[k], m);
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
