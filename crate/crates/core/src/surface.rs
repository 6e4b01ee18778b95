//! Diagonal quartic surfaces `a x⁴ + b y⁴ + c z⁴ + d w⁴ = 0` with `abcd` a
//! nonzero square, point taxonomy and the coordinate symmetries that are
//! defined over the rationals.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{common_denominator, parse_rat, rational_sqrt, Int, ProjPoint, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    coeffs: [Rat; 4],
    n: Rat,
    icoeffs: [Int; 4],
    n_int: Int,
}

impl Surface {
    pub fn new(coeffs: [Rat; 4]) -> Result<Self> {
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::ZeroCoefficient);
        }
        let prod = coeffs.iter().fold(Rat::one(), |acc, c| acc * c);
        let n = rational_sqrt(&prod).ok_or(Error::ProductNotSquare)?;
        let l = common_denominator(coeffs.iter());
        let lr = Rat::from_integer(l.clone());
        let icoeffs = coeffs.clone().map(|c| (c * &lr).to_integer());
        let n_int = (&n * &lr * &lr).to_integer();
        Ok(Surface {
            coeffs,
            n,
            icoeffs,
            n_int,
        })
    }

    pub fn from_i64(c: [i64; 4]) -> Result<Self> {
        Self::new(c.map(|v| Rat::from_integer(Int::from(v))))
    }

    /// Parse "a,b,c,d" with rational entries.
    pub fn parse(spec: &str) -> Option<Result<Self>> {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 4 {
            return None;
        }
        let mut c: [Rat; 4] = Default::default();
        for (k, p) in parts.iter().enumerate() {
            c[k] = parse_rat(p)?;
        }
        Some(Self::new(c))
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.coeffs
    }

    /// The positive square root of `abcd`.
    pub fn n(&self) -> &Rat {
        &self.n
    }

    /// Coefficients scaled by the least common denominator.
    pub fn int_coeffs(&self) -> &[Int; 4] {
        &self.icoeffs
    }

    /// Positive square root of the product of [`Surface::int_coeffs`].
    pub fn int_n(&self) -> &Int {
        &self.n_int
    }

    /// Value of the scaled quartic at integer coordinates.
    pub fn quartic_at(&self, v: &[Int; 4]) -> Int {
        let mut acc = Int::zero();
        for k in 0..4 {
            let sq = &v[k] * &v[k];
            acc += &self.icoeffs[k] * &sq * &sq;
        }
        acc
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.quartic_at(p.coords()).is_zero()
    }

    /// Value of `a X² + b Y² + c Z² + d W²` (scaled) at integer coordinates.
    pub fn quadric_at(&self, v: &[Int; 4]) -> Int {
        let mut acc = Int::zero();
        for k in 0..4 {
            acc += &self.icoeffs[k] * &v[k] * &v[k];
        }
        acc
    }

    pub fn require(&self, p: &ProjPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnSurface)
        }
    }

    /// True when two coefficients are positive and two are negative.
    pub fn has_real_points(&self) -> bool {
        self.coeffs.iter().filter(|c| c.is_positive()).count() == 2
    }

    pub fn permuted(&self, perm: &Perm) -> Surface {
        let c = perm.apply_array(&self.coeffs);
        Surface::new(c).expect("permutation preserves validity")
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "{a},{b},{c},{d}")
    }
}

pub fn make_surface(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Surface> {
    Surface::new([a, b, c, d])
}

pub fn contains(s: &Surface, p: &ProjPoint) -> bool {
    s.contains(p)
}

/// One of the three ways of splitting the coordinates into two pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pairing {
    XyZw,
    XzYw,
    XwYz,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::XyZw, Pairing::XzYw, Pairing::XwYz];

    /// The two index pairs, the first containing coordinate 0.
    pub fn pairs(self) -> ([usize; 2], [usize; 2]) {
        match self {
            Pairing::XyZw => ([0, 1], [2, 3]),
            Pairing::XzYw => ([0, 2], [1, 3]),
            Pairing::XwYz => ([0, 3], [1, 2]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pairing::XyZw => "xy|zw",
            Pairing::XzYw => "xz|yw",
            Pairing::XwYz => "xw|yz",
        }
    }

    /// Whether `a_k x_k⁴ + a_l x_l⁴` vanishes on the first pair at `p`.
    pub fn vanishes(self, s: &Surface, p: &ProjPoint) -> bool {
        let ([k, l], _) = self.pairs();
        let c = s.int_coeffs();
        let x = p.coords();
        let term = |j: usize| {
            let sq = &x[j] * &x[j];
            &c[j] * &sq * &sq
        };
        (term(k) + term(l)).is_zero()
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    OmegaPoint,
    CoordinatePlane,
    OnLine(Pairing),
    Generic,
}

impl PointClass {
    pub fn name(&self) -> &'static str {
        match self {
            PointClass::OmegaPoint => "OmegaPoint",
            PointClass::CoordinatePlane => "CoordinatePlane",
            PointClass::OnLine(_) => "OnLine",
            PointClass::Generic => "Generic",
        }
    }
}

/// Pairings whose pair sums vanish at `p`. Only meaningful for points with
/// no zero coordinate.
pub fn vanishing_pairings(s: &Surface, p: &ProjPoint) -> Vec<Pairing> {
    Pairing::ALL
        .iter()
        .copied()
        .filter(|pr| pr.vanishes(s, p))
        .collect()
}

pub fn classify_point(s: &Surface, p: &ProjPoint) -> Result<PointClass> {
    s.require(p)?;
    Ok(match p.zero_count() {
        0 => match vanishing_pairings(s, p).first() {
            Some(&pr) => PointClass::OnLine(pr),
            None => PointClass::Generic,
        },
        1 => PointClass::CoordinatePlane,
        _ => PointClass::OmegaPoint,
    })
}

/// A sign change of a subset of coordinates, up to negating all four.
///
/// The stored mask is the representative with at most two elements; for
/// two-element subsets it is the one containing `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignAut(u8);

impl SignAut {
    pub const IDENTITY: SignAut = SignAut(0);

    pub fn from_mask(mask: u8) -> Self {
        let mut m = mask & 0xF;
        let pc = m.count_ones();
        if pc > 2 || (pc == 2 && m & 1 == 0) {
            m ^= 0xF;
        }
        SignAut(m)
    }

    /// Parse a subset written with the letters x, y, z, w.
    pub fn from_letters(s: &str) -> Option<Self> {
        let mut m = 0u8;
        for ch in s.chars() {
            m ^= 1 << "xyzw".find(ch)?;
        }
        Some(Self::from_mask(m))
    }

    pub fn pair(u: usize, v: usize) -> Self {
        Self::from_mask((1 << u) | (1 << v))
    }

    pub fn single(u: usize) -> Self {
        Self::from_mask(1 << u)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// All eight elements in mask order of their representatives.
    pub fn all() -> [SignAut; 8] {
        [0u8, 1, 2, 4, 8, 3, 5, 9].map(SignAut)
    }

    /// The three elements negating exactly two coordinates.
    pub fn pairs() -> [SignAut; 3] {
        [SignAut(3), SignAut(5), SignAut(9)]
    }

    /// The four single-coordinate flips.
    pub fn singles() -> [SignAut; 4] {
        [SignAut(1), SignAut(2), SignAut(4), SignAut(8)]
    }

    pub fn compose(self, other: SignAut) -> SignAut {
        SignAut::from_mask(self.0 ^ other.0)
    }

    pub fn apply(self, p: &ProjPoint) -> ProjPoint {
        let mut c = p.coords().clone();
        for (k, v) in c.iter_mut().enumerate() {
            if self.0 & (1 << k) != 0 {
                *v = -&*v;
            }
        }
        ProjPoint::from_ints(c).expect("sign change keeps a nonzero point")
    }

    /// Tag such as "sigma_xz", or "id" for the identity.
    pub fn tag(self) -> alloc::string::String {
        if self.0 == 0 {
            return "id".into();
        }
        let mut s = alloc::string::String::from("sigma_");
        for (k, ch) in "xyzw".chars().enumerate() {
            if self.0 & (1 << k) != 0 {
                s.push(ch);
            }
        }
        s
    }
}

pub fn apply_sign_aut(sigma: SignAut, p: &ProjPoint) -> ProjPoint {
    sigma.apply(p)
}

/// A permutation of the four coordinates: `apply` sends the coordinate at
/// index `k` to index `perm[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub [usize; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    /// The three double transpositions together with the identity.
    pub const KLEIN: [Perm; 4] = [
        Perm([0, 1, 2, 3]),
        Perm([1, 0, 3, 2]),
        Perm([2, 3, 0, 1]),
        Perm([3, 2, 1, 0]),
    ];

    pub fn transposition(i: usize, j: usize) -> Perm {
        let mut p = [0, 1, 2, 3];
        p.swap(i, j);
        Perm(p)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0; 4];
        for k in 0..4 {
            inv[self.0[k]] = k;
        }
        Perm(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn apply_array<T: Clone>(&self, v: &[T; 4]) -> [T; 4] {
        let mut out = v.clone();
        for k in 0..4 {
            out[self.0[k]] = v[k].clone();
        }
        out
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::from_ints(self.apply_array(p.coords())).expect("nonzero")
    }
}

/// A diagonal rescaling of coordinates `u_k ↦ factor_k · u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalMap {
    factors: [Rat; 4],
}

impl DiagonalMap {
    pub fn factors(&self) -> &[Rat; 4] {
        &self.factors
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let r = p.to_rats();
        let img: [Rat; 4] = core::array::from_fn(|k| &r[k] * &self.factors[k]);
        ProjPoint::normalize(&img).expect("invertible diagonal map")
    }
}

/// Rescale coordinates so that `p` becomes `(1:1:1:1)` on a surface whose
/// coefficients sum to zero. Returns the new surface, the forward map and
/// its inverse.
pub fn transport_sum_zero(
    s: &Surface,
    p: &ProjPoint,
) -> Result<(Surface, DiagonalMap, DiagonalMap)> {
    s.require(p)?;
    if p.zero_count() > 0 {
        return Err(Error::ZeroCoordinate);
    }
    let r = p.to_rats();
    let coeffs: [Rat; 4] = core::array::from_fn(|k| {
        let sq = &r[k] * &r[k];
        &s.coeffs[k] * &sq * &sq
    });
    let forward = DiagonalMap {
        factors: core::array::from_fn(|k| Rat::one() / &r[k]),
    };
    let inverse = DiagonalMap { factors: r };
    Ok((Surface::new(coeffs)?, forward, inverse))
}

/// Content-normalized gradient `(a x³, b y³, c z³, d w³)` at `p`.
pub fn tangent_plane(s: &Surface, p: &ProjPoint) -> Result<[Int; 4]> {
    s.require(p)?;
    Ok(tangent_coeffs(s, p))
}

pub(crate) fn tangent_coeffs(s: &Surface, p: &ProjPoint) -> [Int; 4] {
    let x = p.coords();
    let g: Vec<Int> = (0..4)
        .map(|k| &s.icoeffs[k] * &x[k] * &x[k] * &x[k])
        .collect();
    let v = crate::exact::primitive(g).expect("surface is smooth");
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn v0() -> Surface {
        Surface::from_i64([1, 1, -1, -1]).unwrap()
    }

    fn pt(v: [i64; 4]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(v0().n(), &Rat::one());
        assert_eq!(
            Surface::from_i64([1, 1, 1, -1]),
            Err(Error::ProductNotSquare)
        );
        assert_eq!(
            Surface::from_i64([6, -2, -3, -1]),
            Err(Error::ProductNotSquare)
        );
        assert_eq!(Surface::from_i64([6, -2, 3, -1]).unwrap().n(), &Rat::from_integer(int(6)));
        assert_eq!(Surface::from_i64([1, 0, 1, 1]), Err(Error::ZeroCoefficient));
        let half = Surface::parse("1/2,2,-1,-1").unwrap().unwrap();
        assert_eq!(half.int_coeffs(), &[int(1), int(4), int(-2), int(-2)]);
        assert_eq!(half.int_n(), &int(4));
    }

    #[test]
    fn membership() {
        assert!(v0().contains(&pt([1, 1, 1, 1])));
        assert!(v0().contains(&pt([133, 134, 158, 59])));
        assert!(!v0().contains(&pt([1, 0, 0, 0])));
    }

    #[test]
    fn classification() {
        let s = v0();
        assert_eq!(classify_point(&s, &pt([1, 0, 1, 0])).unwrap(), PointClass::OmegaPoint);
        assert_eq!(
            classify_point(&s, &pt([1, 1, 1, 1])).unwrap(),
            PointClass::OnLine(Pairing::XzYw)
        );
        assert_eq!(
            vanishing_pairings(&s, &pt([1, 1, 1, 1])),
            alloc::vec![Pairing::XzYw, Pairing::XwYz]
        );
        assert_eq!(
            classify_point(&s, &pt([133, 134, 158, 59])).unwrap(),
            PointClass::Generic
        );
        let t = Surface::from_i64([-2, 1, 1, -2]).unwrap();
        assert_eq!(
            classify_point(&t, &pt([0, 1, 1, 1])).unwrap(),
            PointClass::CoordinatePlane
        );
        assert_eq!(classify_point(&s, &pt([1, 2, 3, 4])), Err(Error::NotOnSurface));
    }

    #[test]
    fn sign_auts() {
        let xz = SignAut::from_letters("xz").unwrap();
        assert_eq!(xz.apply(&pt([1, 1, 1, 1])), pt([1, -1, 1, -1]));
        assert_eq!(SignAut::from_letters("xyzw").unwrap().apply(&pt([1, 2, 3, 4])), pt([1, 2, 3, 4]));
        assert_eq!(SignAut::from_letters("y").unwrap().apply(&pt([0, 1, 1, 1])), pt([0, -1, 1, 1]));
        assert_eq!(SignAut::from_letters("yw").unwrap(), xz);
        assert_eq!(SignAut::all().len(), 8);
        for a in SignAut::all() {
            for b in SignAut::all() {
                let p = pt([3, 5, 7, 11]);
                assert_eq!(a.compose(b).apply(&p), a.apply(&b.apply(&p)));
            }
        }
    }

    #[test]
    fn sum_zero_transport() {
        let s = v0();
        let (t, _, _) = transport_sum_zero(&s, &pt([1, 1, 1, 1])).unwrap();
        assert_eq!(t, s);
        let p = pt([133, 134, 158, 59]);
        let (t, fwd, inv) = transport_sum_zero(&s, &p).unwrap();
        let sum = t.coeffs().iter().fold(Rat::zero(), |acc, c| acc + c);
        assert!(sum.is_zero());
        assert_eq!(fwd.apply(&p), pt([1, 1, 1, 1]));
        assert_eq!(inv.apply(&pt([1, 1, 1, 1])), p);
        assert!(t.contains(&pt([1, 1, 1, 1])));
        assert_eq!(transport_sum_zero(&s, &pt([1, 0, 1, 0])), Err(Error::ZeroCoordinate));
    }

    #[test]
    fn tangent_planes() {
        assert_eq!(
            tangent_plane(&v0(), &pt([1, 1, 1, 1])).unwrap(),
            [int(1), int(1), int(-1), int(-1)]
        );
        let t = Surface::from_i64([-2, 1, 1, -2]).unwrap();
        assert_eq!(
            tangent_plane(&t, &pt([0, 1, 1, 1])).unwrap(),
            [int(0), int(1), int(1), int(-2)]
        );
    }

    #[test]
    fn permutations() {
        let p = Perm([1, 2, 3, 0]);
        assert!(!p.is_even());
        assert!(Perm::KLEIN.iter().all(|k| k.is_even()));
        let q = pt([1, 2, 3, 4]);
        assert_eq!(p.inverse().apply_point(&p.apply_point(&q)), q);
        assert_eq!(p.apply_point(&q), pt([4, 1, 2, 3]));
    }
}
