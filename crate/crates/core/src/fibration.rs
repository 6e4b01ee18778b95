//! The quadric `Q: a X² + b Y² + c Z² + d W² = 0` that the surface maps onto
//! under squaring, its two rulings over the rationals, and the elliptic
//! fibrations obtained by composing a ruling with the squaring map.
//!
//! Both rulings come from one determinantal identity `L1·L4 − L2·L3 = λ·Q`
//! with `L1..L4` independent linear forms in the squared coordinates. The
//! ruling `(L1:L2) = (L3:L4)` and the ruling `(L4:L2) = (L3:L1)` each get two
//! representations whose base loci on `Q` are disjoint.
//!
//! Labels are intrinsic: for a ruling with representations `(n0:d0)` and
//! `(n1:d1)` satisfying `n0·d1 − d0·n1 = λ·Q`, the quantity
//! `θ = det(n0, d0, n1, d1) / (4λ²)` satisfies `θ² = abcd` and does not depend
//! on the chosen representations. Fibration 1 is the ruling with `θ = +N`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    primitive, primitive_from_rats, rational_sqrt, split_square_disc_quadratic, BinaryForm, Int,
    P1Point, ProjPoint, Rat,
};
use crate::linalg::{det4, Matrix};
use crate::surface::{Pairing, Surface};

pub type FibreId = P1Point;

/// Coefficient vector of a linear form in the squared coordinates, that is,
/// a diagonal quadratic form in `x, y, z, w`.
pub type Form = [Int; 4];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub num: Form,
    pub den: Form,
}

impl Representation {
    fn new(num: Form, den: Form) -> Self {
        let joined: Vec<Int> = num.iter().chain(den.iter()).cloned().collect();
        let v = primitive(joined).expect("representation forms are nonzero");
        Representation {
            num: core::array::from_fn(|k| v[k].clone()),
            den: core::array::from_fn(|k| v[k + 4].clone()),
        }
    }

    fn from_rats(num: &[Rat; 4], den: &[Rat; 4]) -> Self {
        let joined: Vec<Rat> = num.iter().chain(den.iter()).cloned().collect();
        let v = primitive_from_rats(&joined).expect("representation forms are nonzero");
        Representation {
            num: core::array::from_fn(|k| v[k].clone()),
            den: core::array::from_fn(|k| v[k + 4].clone()),
        }
    }

    /// Value at squared coordinates, or `None` on the base locus.
    pub fn value(&self, sq: &[Int; 4]) -> Option<P1Point> {
        P1Point::new(dot(&self.num, sq), dot(&self.den, sq)).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibration {
    reps: Vec<Representation>,
    pair_quadratics: Vec<((usize, usize), BinaryForm)>,
    sextic: BinaryForm,
}

impl Fibration {
    fn new(reps: Vec<Representation>) -> Self {
        let mut pair_quadratics = Vec::new();
        for k in 0..4 {
            for l in k + 1..4 {
                pair_quadratics.push(((k, l), pair_quadratic(&reps[0], &reps[1], k, l)));
            }
        }
        let sextic = pair_quadratics[0]
            .1
            .mul(&pair_quadratics[1].1)
            .mul(&pair_quadratics[2].1);
        Fibration {
            reps,
            pair_quadratics,
            sextic,
        }
    }

    pub fn representations(&self) -> &[Representation] {
        &self.reps
    }

    /// Binary sextic vanishing exactly at the parameters of singular fibres.
    pub fn singular_sextic(&self) -> &BinaryForm {
        &self.sextic
    }

    /// The quadratic `g_k h_l − g_l h_k` in the fibre parameter for the
    /// coordinate pair `(k, l)`, where `g, h` are the fibre quadrics.
    pub fn pair_quadratic(&self, k: usize, l: usize) -> &BinaryForm {
        &self
            .pair_quadratics
            .iter()
            .find(|(kl, _)| *kl == (k, l))
            .expect("k < l")
            .1
    }

    pub fn value(&self, p: &ProjPoint) -> Result<FibreId> {
        let sq = squares(p.coords());
        self.reps
            .iter()
            .find_map(|r| r.value(&sq))
            .ok_or(Error::AllRepresentationsVanish)
    }

    /// The two diagonal quadrics whose intersection is the fibre over `id`.
    pub fn fibre_quadrics(&self, id: &FibreId) -> (Form, Form) {
        let q = |r: &Representation| -> Form {
            core::array::from_fn(|k| id.t() * &r.num[k] - id.s() * &r.den[k])
        };
        (q(&self.reps[0]), q(&self.reps[1]))
    }

    pub fn is_singular(&self, id: &FibreId) -> bool {
        self.pair_quadratics
            .iter()
            .any(|(_, f)| f.eval(id.s(), id.t()).is_zero())
    }
}

fn pair_quadratic(r0: &Representation, r1: &Representation, k: usize, l: usize) -> BinaryForm {
    let (n0, d0, n1, d1) = (&r0.num, &r0.den, &r1.num, &r1.den);
    let ss = &d0[k] * &d1[l] - &d0[l] * &d1[k];
    let st = &n0[l] * &d1[k] + &d0[l] * &n1[k] - &n0[k] * &d1[l] - &d0[k] * &n1[l];
    let tt = &n0[k] * &n1[l] - &n0[l] * &n1[k];
    BinaryForm::from_ints(vec![ss, st, tt])
}

/// The two elliptic fibrations, indexed 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RulingPair {
    quadric: [Int; 4],
    fibrations: [Fibration; 2],
}

impl RulingPair {
    pub fn fibration(&self, i: usize) -> &Fibration {
        assert!(i == 1 || i == 2, "fibration index is 1 or 2");
        &self.fibrations[i - 1]
    }

    pub fn quadric(&self) -> &[Int; 4] {
        &self.quadric
    }

    pub fn fibre_value(&self, i: usize, p: &ProjPoint) -> Result<FibreId> {
        self.fibration(i).value(p)
    }

    pub fn is_singular_fibre(&self, i: usize, id: &FibreId) -> bool {
        self.fibration(i).is_singular(id)
    }

    pub fn is_singular_at(&self, i: usize, p: &ProjPoint) -> Result<bool> {
        Ok(self.is_singular_fibre(i, &self.fibre_value(i, p)?))
    }

    /// Rulings for `s`, preferring the decomposition read off a pairing whose
    /// two halves factor over the rationals and otherwise building them from
    /// the image of `seed` on the quadric.
    pub fn for_surface(s: &Surface, seed: &ProjPoint) -> Result<RulingPair> {
        for pr in Pairing::ALL {
            if let Some(r) = Self::from_pairing(s, pr) {
                return Ok(r);
            }
        }
        build_rulings(s, &tau_square(seed))
    }

    /// The decomposition `a_k(X_k² − r²X_l²) + a_m(X_m² − r'²X_n²)` when
    /// `r² = −a_l/a_k` is a rational square.
    pub fn from_pairing(s: &Surface, pr: Pairing) -> Option<RulingPair> {
        let ([k, l], [m, n]) = pr.pairs();
        let c = s.int_coeffs();
        let r = rational_sqrt(&Rat::new(-&c[l], c[k].clone()))?;
        let r2 = rational_sqrt(&Rat::new(-&c[n], c[m].clone()))?;
        let lin = |i: usize, j: usize, coef: Rat| -> [Rat; 4] {
            let mut v: [Rat; 4] = Default::default();
            v[i] = Rat::from_integer(Int::from(1));
            v[j] = coef;
            v
        };
        let pp = lin(k, l, r.clone());
        let pm = lin(k, l, -r);
        let mp = lin(m, n, r2.clone());
        let mm = lin(m, n, -r2);
        let scaled = |f: &[Rat; 4], c: Int| -> [Rat; 4] {
            let c = Rat::from_integer(c);
            core::array::from_fn(|j| &f[j] * &c)
        };
        let neg_am_mm = scaled(&mm, -&c[m]);
        let fam_a = vec![
            Representation::from_rats(&pp, &mp),
            Representation::from_rats(&neg_am_mm, &scaled(&pm, c[k].clone())),
        ];
        let fam_b = vec![
            Representation::from_rats(&pm, &mp),
            Representation::from_rats(&neg_am_mm, &scaled(&pp, c[k].clone())),
        ];
        Some(Self::assemble(c, fam_a, fam_b).expect("natural decomposition is valid"))
    }

    fn assemble(
        q: &[Int; 4],
        fam_a: Vec<Representation>,
        fam_b: Vec<Representation>,
    ) -> Result<RulingPair> {
        let n = q.iter().fold(Int::from(1), |acc, v| acc * v);
        let theta_a = theta(q, &fam_a[0], &fam_a[1])?;
        let theta_b = theta(q, &fam_b[0], &fam_b[1])?;
        if &theta_a * &theta_a != Rat::from_integer(n) || theta_a != -theta_b.clone() {
            return Err(Error::Internal("ruling invariant θ² = abcd failed"));
        }
        let (first, second) = if theta_a.is_positive() {
            (fam_a, fam_b)
        } else {
            (fam_b, fam_a)
        };
        Ok(RulingPair {
            quadric: q.clone(),
            fibrations: [Fibration::new(first), Fibration::new(second)],
        })
    }
}

/// The ruling invariant of a family given two of its representations.
pub fn theta(q: &[Int; 4], r0: &Representation, r1: &Representation) -> Result<Rat> {
    let lambda = proportionality(q, &r0.num, &r1.den, &r0.den, &r1.num)
        .ok_or(Error::Internal("representations do not define one ruling"))?;
    let rows = [&r0.num, &r0.den, &r1.num, &r1.den].map(to_rats);
    let det = det4([&rows[0], &rows[1], &rows[2], &rows[3]]);
    Ok(det / (Rat::from_integer(Int::from(4)) * &lambda * &lambda))
}

/// λ with `a·b − c·d = λ·Q`, if it exists and is nonzero.
fn proportionality(q: &[Int; 4], a: &Form, b: &Form, c: &Form, d: &Form) -> Option<Rat> {
    let prod = sym_product(a, b);
    let prod2 = sym_product(c, d);
    let diff: Vec<Int> = prod.iter().zip(&prod2).map(|(x, y)| x - y).collect();
    let qv = sym_diag(q);
    let mut lambda: Option<Rat> = None;
    for (dv, qq) in diff.iter().zip(&qv) {
        if qq.is_zero() {
            if !dv.is_zero() {
                return None;
            }
            continue;
        }
        let l = Rat::new(dv.clone(), qq.clone());
        match &lambda {
            None => lambda = Some(l),
            Some(prev) if *prev != l => return None,
            _ => {}
        }
    }
    lambda.filter(|l| !l.is_zero())
}

/// Coefficients of the product of two linear forms on the 10 quadratic
/// monomials `X_i X_j` with `i ≤ j`.
fn sym_product(a: &Form, b: &Form) -> Vec<Int> {
    let mut out = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            if i == j {
                out.push(&a[i] * &b[i]);
            } else {
                out.push(&a[i] * &b[j] + &a[j] * &b[i]);
            }
        }
    }
    out
}

fn sym_diag(q: &[Int; 4]) -> Vec<Int> {
    let mut out = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            out.push(if i == j { q[i].clone() } else { Int::zero() });
        }
    }
    out
}

fn to_form(v: &[Rat]) -> Form {
    let p = primitive_from_rats(v).expect("nonzero form");
    core::array::from_fn(|k| p[k].clone())
}

fn to_rats(f: &Form) -> [Rat; 4] {
    f.clone().map(Rat::from_integer)
}

fn dot(a: &[Int; 4], b: &[Int; 4]) -> Int {
    (0..4).fold(Int::zero(), |acc, k| acc + &a[k] * &b[k])
}

pub fn squares(v: &[Int; 4]) -> [Int; 4] {
    core::array::from_fn(|k| &v[k] * &v[k])
}

pub fn tau_square(p: &ProjPoint) -> ProjPoint {
    ProjPoint::from_ints(squares(p.coords())).expect("nonzero point")
}

fn quad_value(q: &[Int; 4], v: &[Int; 4]) -> Int {
    (0..4).fold(Int::zero(), |acc, k| acc + &q[k] * &v[k] * &v[k])
}

fn bilinear(q: &[Int; 4], u: &[Int; 4], v: &[Int; 4]) -> Int {
    (0..4).fold(Int::zero(), |acc, k| acc + &q[k] * &u[k] * &v[k])
}

fn rank_of(rows: &[&[Int; 4]]) -> usize {
    Matrix::from_rows(&rows.iter().map(|r| to_rats(r).to_vec()).collect::<Vec<_>>()).rank()
}

/// Directions of the two lines of `Q` through `r` (which lies on `Q`).
fn tangent_lines(q: &[Int; 4], r: &[Int; 4]) -> Result<[[Int; 4]; 2]> {
    let t: Vec<Int> = (0..4).map(|k| &q[k] * &r[k]).collect();
    let t = primitive(t).ok_or(Error::Internal("zero gradient on the quadric"))?;
    let mut k = 0;
    for j in 1..4 {
        if t[j].abs() > t[k].abs() {
            k = j;
        }
    }
    let dirs: Vec<[Int; 4]> = (0..4)
        .filter(|&j| j != k)
        .map(|j| {
            let mut d: [Int; 4] = Default::default();
            d[j] = t[k].clone();
            d[k] = -&t[j];
            d
        })
        .collect();
    let mut chosen = None;
    'outer: for a in 0..dirs.len() {
        for b in a + 1..dirs.len() {
            if rank_of(&[r, &dirs[a], &dirs[b]]) == 3 {
                chosen = Some((dirs[a].clone(), dirs[b].clone()));
                break 'outer;
            }
        }
    }
    let (d1, d2) = chosen.ok_or(Error::Internal("tangent plane basis"))?;
    let form = BinaryForm::from_ints(vec![
        quad_value(q, &d1),
        Int::from(2) * bilinear(q, &d1, &d2),
        quad_value(q, &d2),
    ]);
    let (f1, f2) = split_square_disc_quadratic(&form)?;
    if f1 == f2 {
        return Err(Error::DegenerateTangent);
    }
    let dir = |f: &BinaryForm| -> [Int; 4] {
        let (al, be) = (&f.coeffs()[0], &f.coeffs()[1]);
        core::array::from_fn(|j| be * &d1[j] - al * &d2[j])
    };
    Ok([dir(&f1), dir(&f2)])
}

/// Basis (in reduced echelon form, primitive rows) of the linear forms
/// vanishing at the given points.
fn forms_vanishing_on(points: &[&[Int; 4]]) -> Vec<Form> {
    let m = Matrix::from_rows(&points.iter().map(|p| to_rats(p).to_vec()).collect::<Vec<_>>());
    let ns = m.nullspace();
    let mut basis = Matrix::from_rows(&ns);
    basis.rref();
    (0..basis.rows())
        .map(|i| to_form(basis.row(i)))
        .collect()
}

fn pivot(f: &Form) -> usize {
    f.iter().position(|c| !c.is_zero()).expect("nonzero form")
}

/// Build both rulings from a point `r0` of `Q` by splitting tangent
/// sections.
pub fn build_rulings(s: &Surface, r0: &ProjPoint) -> Result<RulingPair> {
    let q = s.int_coeffs().clone();
    let r = r0.coords().clone();
    if !quad_value(&q, &r).is_zero() {
        return Err(Error::NotOnQuadric);
    }
    let [e1, e2] = tangent_lines(&q, &r)?;
    let l12 = forms_vanishing_on(&[&r, &e1]);
    let (l1, l2) = (l12[0].clone(), l12[1].clone());

    // A second line of the same family as span(r, e1), through a point of the
    // other line span(r, e2).
    let r_alt: [Int; 4] = core::array::from_fn(|k| &r[k] + &e2[k]);
    let alt = tangent_lines(&q, &r_alt)?;
    let e_alt = alt
        .iter()
        .find(|d| rank_of(&[&r_alt, d, &r]) == 3)
        .ok_or(Error::Internal("second ruling line"))?;
    let b12 = forms_vanishing_on(&[&r_alt, e_alt]);

    // Solve l1·(ρ b1 + σ b2) − l2·(π b1 + κ b2) = λ Q for (ρ, σ, π, κ, λ).
    let cols = [
        sym_product(&l1, &b12[0]),
        sym_product(&l1, &b12[1]),
        sym_product(&l2, &b12[0]).into_iter().map(|v| -v).collect(),
        sym_product(&l2, &b12[1]).into_iter().map(|v| -v).collect(),
        sym_diag(&q).into_iter().map(|v| -v).collect::<Vec<_>>(),
    ];
    let rows: Vec<Vec<Rat>> = (0..10)
        .map(|i| cols.iter().map(|c| Rat::from_integer(c[i].clone())).collect())
        .collect();
    let ns = Matrix::from_rows(&rows).nullspace();
    if ns.len() != 1 || ns[0][4].is_zero() {
        return Err(Error::Internal("determinantal decomposition"));
    }
    let v = &ns[0];
    let comb = |x: &Rat, y: &Rat| -> [Rat; 4] {
        core::array::from_fn(|k| {
            x * Rat::from_integer(b12[0][k].clone()) + y * Rat::from_integer(b12[1][k].clone())
        })
    };
    let mut l4 = comb(&v[0], &v[1]);
    let mut l3 = comb(&v[2], &v[3]);
    // Normalize the shift (l3, l4) ↦ (l3 + μ l1, l4 + μ l2).
    let p2 = pivot(&l2);
    let mu = -&l4[p2] / Rat::from_integer(l2[p2].clone());
    for k in 0..4 {
        l3[k] += &mu * Rat::from_integer(l1[k].clone());
        l4[k] += &mu * Rat::from_integer(l2[k].clone());
    }
    let joined: Vec<Rat> = l3.iter().chain(l4.iter()).cloned().collect();
    let p = primitive_from_rats(&joined).ok_or(Error::Internal("zero partner forms"))?;
    let l3: Form = core::array::from_fn(|k| p[k].clone());
    let l4: Form = core::array::from_fn(|k| p[k + 4].clone());
    let fam_a = vec![
        Representation::new(l1.clone(), l2.clone()),
        Representation::new(l3.clone(), l4.clone()),
    ];
    let fam_b = vec![Representation::new(l4, l2), Representation::new(l3, l1)];
    RulingPair::assemble(&q, fam_a, fam_b)
}

pub fn fibre_value(r: &RulingPair, i: usize, p: &ProjPoint) -> Result<FibreId> {
    r.fibre_value(i, p)
}
