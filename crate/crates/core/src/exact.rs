//! Exact scalars, canonical projective points and the two binary-form
//! kernels (splitting a split quadratic, deflating a triple root).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// The nonnegative square root of `r` when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
    values.into_iter().fold(Int::zero(), |acc, v| acc.gcd(v))
}

/// Scale a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. Returns `None` for the zero vector.
pub fn primitive_from_rats(values: &[Rat]) -> Option<Vec<Int>> {
    let den = common_denominator(values.iter());
    let ints: Vec<Int> = values
        .iter()
        .map(|v| (v * Rat::from_integer(den.clone())).to_integer())
        .collect();
    primitive(ints)
}

/// Divide an integer vector by its content and fix the sign so that the
/// first nonzero entry is positive. Returns `None` for the zero vector.
pub fn primitive(mut values: Vec<Int>) -> Option<Vec<Int>> {
    let g = gcd_all(values.iter());
    if g.is_zero() {
        return None;
    }
    let negate = values
        .iter()
        .find(|v| !v.is_zero())
        .map(|v| v.is_negative())
        .unwrap_or(false);
    for v in values.iter_mut() {
        *v = &*v / &g;
        if negate {
            *v = -&*v;
        }
    }
    Some(values)
}

/// Number of decimal digits of `|n|` (with `0` having one digit).
pub fn decimal_digits(n: &Int) -> usize {
    let s = n.magnitude().to_str_radix(10);
    s.len()
}

/// Render a rational as "p" or "p/q".
pub fn format_rat(r: &Rat) -> String {
    use alloc::string::ToString;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p" or "p/q" with arbitrary-length decimal integers.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = n.parse().ok()?;
    let d: Int = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// A point of P³ with coprime integer coordinates whose first nonzero
/// coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Int; 4],
}

impl ProjPoint {
    /// Canonical representative of the projective class of `raw`.
    pub fn normalize(raw: &[Rat; 4]) -> Result<Self> {
        let v = primitive_from_rats(raw).ok_or(Error::AllZero)?;
        Ok(Self::from_primitive(v))
    }

    pub fn from_ints(raw: [Int; 4]) -> Result<Self> {
        let v = primitive(raw.to_vec()).ok_or(Error::AllZero)?;
        Ok(Self::from_primitive(v))
    }

    pub fn from_i64(raw: [i64; 4]) -> Result<Self> {
        Self::from_ints(raw.map(Int::from))
    }

    /// Parse `"x:y:z:w"` with integer or rational entries. `None` signals a
    /// syntax error; the all-zero vector parses but does not normalize.
    pub fn parse(text: &str) -> Option<Result<Self>> {
        let parts: Vec<Rat> = text.split(':').map(parse_rat).collect::<Option<_>>()?;
        let raw: [Rat; 4] = parts.try_into().ok()?;
        Some(Self::normalize(&raw))
    }

    fn from_primitive(v: Vec<Int>) -> Self {
        let mut it = v.into_iter();
        let coords = [
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ];
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[Int; 4] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Int {
        &self.coords[k]
    }

    pub fn to_rats(&self) -> [Rat; 4] {
        self.coords.clone().map(Rat::from_integer)
    }

    /// Naive height: the largest absolute coordinate.
    pub fn height(&self) -> Int {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }

    pub fn height_digits(&self) -> usize {
        decimal_digits(&self.height())
    }

    pub fn zero_count(&self) -> usize {
        self.coords.iter().filter(|c| c.is_zero()).count()
    }

    /// Index of the coordinate of largest absolute value (first on ties).
    pub fn dominant_index(&self) -> usize {
        let mut best = 0;
        for k in 1..4 {
            if self.coords[k].abs() > self.coords[best].abs() {
                best = k;
            }
        }
        best
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = &self.coords;
        write!(f, "{x}:{y}:{z}:{w}")
    }
}

pub fn normalize_point(raw: &[Rat; 4]) -> Result<ProjPoint> {
    ProjPoint::normalize(raw)
}

pub fn height(p: &ProjPoint) -> Int {
    p.height()
}

/// A point of P¹ as a coprime pair with canonical sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    s: Int,
    t: Int,
}

impl P1Point {
    pub fn new(s: Int, t: Int) -> Result<Self> {
        let v = primitive(alloc::vec![s, t]).ok_or(Error::AllZero)?;
        let mut it = v.into_iter();
        Ok(P1Point {
            s: it.next().unwrap(),
            t: it.next().unwrap(),
        })
    }

    pub fn from_rats(s: &Rat, t: &Rat) -> Result<Self> {
        let v = primitive_from_rats(&[s.clone(), t.clone()]).ok_or(Error::AllZero)?;
        let mut it = v.into_iter();
        Ok(P1Point {
            s: it.next().unwrap(),
            t: it.next().unwrap(),
        })
    }

    pub fn from_i64(s: i64, t: i64) -> Result<Self> {
        Self::new(Int::from(s), Int::from(t))
    }

    pub fn s(&self) -> &Int {
        &self.s
    }

    pub fn t(&self) -> &Int {
        &self.t
    }

    /// Parse "s:t".
    pub fn parse(text: &str) -> Option<Self> {
        let (s, t) = text.split_once(':')?;
        Self::new(s.trim().parse().ok()?, t.trim().parse().ok()?).ok()
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.s, self.t)
    }
}

/// A homogeneous form in two variables `s`, `t`, stored as the primitive
/// integer coefficient vector of `s^d, s^(d-1) t, ..., t^d`.
///
/// The zero form keeps its degree and is flagged by [`BinaryForm::is_zero`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<Int>,
}

pub type BinaryQuadratic = BinaryForm;
pub type BinaryQuartic = BinaryForm;
pub type LinearForm2 = BinaryForm;

impl BinaryForm {
    pub fn from_ints(coeffs: Vec<Int>) -> Self {
        let degree_len = coeffs.len();
        match primitive(coeffs) {
            Some(c) => BinaryForm { coeffs: c },
            None => BinaryForm {
                coeffs: alloc::vec![Int::zero(); degree_len],
            },
        }
    }

    pub fn from_rats(coeffs: &[Rat]) -> Self {
        match primitive_from_rats(coeffs) {
            Some(c) => BinaryForm { coeffs: c },
            None => BinaryForm {
                coeffs: alloc::vec![Int::zero(); coeffs.len()],
            },
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_ints(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &Int, t: &Int) -> Int {
        let d = self.degree();
        let mut acc = Int::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(s.clone(), d - i) * num_traits::pow(t.clone(), i);
        }
        acc
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = alloc::vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::from_ints(out)
    }

    /// True when `self = λ·other` for some nonzero rational λ.
    pub fn proportional(&self, other: &BinaryForm) -> bool {
        // Both are primitive with canonical sign, so proportional means equal.
        self.coeffs == other.coeffs && !self.is_zero()
    }

    pub fn discriminant_quadratic(&self) -> Int {
        debug_assert_eq!(self.degree(), 2);
        let [a, b, c] = [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]];
        b * b - Int::from(4) * a * c
    }
}

/// Split `q = α u² + β uv + γ v²` with square discriminant into two
/// linear factors, returned in lexicographic order of their primitive
/// coefficient vectors.
pub fn split_square_disc_quadratic(q: &BinaryQuadratic) -> Result<(LinearForm2, LinearForm2)> {
    if q.degree() != 2 {
        return Err(Error::Internal("split expects a quadratic"));
    }
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    let disc = q.discriminant_quadratic();
    let root = int_sqrt_exact(&disc).ok_or(Error::NonSquareDiscriminant)?;
    let (a, b, c) = (&q.coeffs[0], &q.coeffs[1], &q.coeffs[2]);
    let (l1, l2) = if !a.is_zero() {
        let two_a = Int::from(2) * a;
        (
            BinaryForm::from_ints(alloc::vec![two_a.clone(), b - &root]),
            BinaryForm::from_ints(alloc::vec![two_a, b + &root]),
        )
    } else {
        // b u v + c v² = v (b u + c v)
        (
            BinaryForm::from_i64(&[0, 1]),
            BinaryForm::from_ints(alloc::vec![b.clone(), c.clone()]),
        )
    };
    if l1 <= l2 {
        Ok((l1, l2))
    } else {
        Ok((l2, l1))
    }
}

/// Zero of a linear form `α s + β t`, as a point of P¹.
pub fn linear_root(l: &LinearForm2) -> Result<P1Point> {
    if l.degree() != 1 {
        return Err(Error::Internal("linear_root expects a linear form"));
    }
    P1Point::new(l.coeffs[1].clone(), -&l.coeffs[0])
}

/// Divide `coeffs` (highest power of s first) by `r1 s - r0 t`, returning
/// the quotient when the division is exact.
fn divide_by_root(coeffs: &[Rat], r0: &Rat, r1: &Rat) -> Option<Vec<Rat>> {
    // Synthetic division in x = s/t by (x - r0/r1), valid because r1 != 0.
    let root = r0 / r1;
    let mut quot: Vec<Rat> = Vec::with_capacity(coeffs.len() - 1);
    let mut carry = Rat::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let v = c + &carry * &root;
        if i + 1 == coeffs.len() {
            if !v.is_zero() {
                return None;
            }
        } else {
            quot.push(v.clone());
            carry = v;
        }
    }
    // The quotient by (x - root) equals the quotient by (r1 x - r0) times r1.
    Some(quot.into_iter().map(|v| v / r1).collect())
}

/// Given a binary quartic with a root of multiplicity at least three,
/// return its remaining root.
pub fn deflate_triple_root(q: &BinaryQuartic, root: &P1Point) -> Result<P1Point> {
    if q.degree() != 4 {
        return Err(Error::Internal("deflate expects a quartic"));
    }
    if q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let mut coeffs: Vec<Rat> = q.coeffs.iter().cloned().map(Rat::from_integer).collect();
    let (mut r0, mut r1) = (
        Rat::from_integer(root.s().clone()),
        Rat::from_integer(root.t().clone()),
    );
    // Work in the chart where the root has nonzero second coordinate.
    let swapped = r1.is_zero();
    if swapped {
        coeffs.reverse();
        core::mem::swap(&mut r0, &mut r1);
    }
    for _ in 0..3 {
        coeffs = divide_by_root(&coeffs, &r0, &r1).ok_or(Error::NotTripleRoot)?;
    }
    // coeffs = [m0, m1] for m0 s + m1 t; its root is (m1 : -m0).
    let (m0, m1) = (&coeffs[0], &coeffs[1]);
    let (mut rs, mut rt) = (m1.clone(), -m0);
    if swapped {
        core::mem::swap(&mut rs, &mut rt);
    }
    P1Point::from_rats(&rs, &rt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pt(v: [i64; 4]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(pt([84, -60, 324, -348]), pt([7, -5, 27, -29]));
        assert_eq!(pt([84, -60, 324, -348]).coords(), pt([7, -5, 27, -29]).coords());
        assert_eq!(pt([0, 0, 2, 0]).to_string(), "0:0:1:0");
        assert_eq!(pt([-3, 3, 3, 3]).to_string(), "1:-1:-1:-1");
        assert_eq!(ProjPoint::from_i64([0, 0, 0, 0]), Err(Error::AllZero));
        let half = [ratio(1, 2), ratio(-1, 3), rat(0), rat(2)];
        assert_eq!(normalize_point(&half).unwrap().to_string(), "3:-2:0:12");
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&pt([7, -5, 27, -29])), int(29));
        assert_eq!(height(&pt([1, 1, 1, 1])), int(1));
        assert_eq!(height(&pt([133, 134, 158, 59])), int(158));
        assert_eq!(pt([133, 134, 158, 59]).height_digits(), 3);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(rational_sqrt(&rat(36)), Some(rat(6)));
        assert_eq!(rational_sqrt(&ratio(4, 9)), Some(ratio(2, 3)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
        assert_eq!(rational_sqrt(&rat(0)), Some(rat(0)));
    }

    #[test]
    fn split_examples() {
        // u² − v²
        let (l1, l2) = split_square_disc_quadratic(&BinaryForm::from_i64(&[1, 0, -1])).unwrap();
        assert_eq!(l1, BinaryForm::from_i64(&[1, -1]));
        assert_eq!(l2, BinaryForm::from_i64(&[1, 1]));
        // u²
        let (l1, l2) = split_square_disc_quadratic(&BinaryForm::from_i64(&[1, 0, 0])).unwrap();
        assert_eq!(l1, BinaryForm::from_i64(&[1, 0]));
        assert_eq!(l2, l1);
        assert_eq!(
            split_square_disc_quadratic(&BinaryForm::from_i64(&[1, 0, 1])),
            Err(Error::NonSquareDiscriminant)
        );
        assert_eq!(
            split_square_disc_quadratic(&BinaryForm::from_i64(&[0, 0, 0])),
            Err(Error::ZeroForm)
        );
        // v(3u + 2v), leading coefficient zero
        let (l1, l2) = split_square_disc_quadratic(&BinaryForm::from_i64(&[0, 3, 2])).unwrap();
        assert_eq!(l1.mul(&l2), BinaryForm::from_i64(&[0, 3, 2]));
    }

    #[test]
    fn deflate_examples() {
        // (s − t)³ (s − 5t) has roots (1:1) and (5:1).
        let cubed = BinaryForm::from_i64(&[1, -1])
            .mul(&BinaryForm::from_i64(&[1, -1]))
            .mul(&BinaryForm::from_i64(&[1, -1]));
        let q = cubed.mul(&BinaryForm::from_i64(&[1, -5]));
        let one = P1Point::from_i64(1, 1).unwrap();
        assert_eq!(deflate_triple_root(&q, &one).unwrap(), P1Point::from_i64(5, 1).unwrap());
        let fourth = cubed.mul(&BinaryForm::from_i64(&[1, -1]));
        assert_eq!(deflate_triple_root(&fourth, &one).unwrap(), one);
        // s t² (3s + 2t) vanishes only to order two at (1:0).
        let q = BinaryForm::from_i64(&[0, 0, 3, 2, 0]);
        assert_eq!(
            deflate_triple_root(&q, &P1Point::from_i64(1, 0).unwrap()),
            Err(Error::NotTripleRoot)
        );
        let q = BinaryForm::from_i64(&[0, 0, 0, 2, 3]);
        assert_eq!(
            deflate_triple_root(&q, &P1Point::from_i64(1, 0).unwrap()).unwrap(),
            P1Point::from_i64(3, -2).unwrap()
        );
        assert_eq!(
            deflate_triple_root(&BinaryForm::from_i64(&[0; 5]), &one),
            Err(Error::IdenticallyZero)
        );
    }

    #[test]
    fn rat_text_round_trip() {
        assert_eq!(parse_rat("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(format_rat(&ratio(-1, 2)), "-1/2");
        assert_eq!(format_rat(&rat(7)), "7");
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }
}
