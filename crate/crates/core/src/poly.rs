//! Sparse polynomials in four variables with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::Rat;

pub type Exponent = [u16; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exp: Exponent, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// The linear form `Σ c_k v_k`.
    pub fn linear(c: &[Rat; 4]) -> Self {
        let mut p = Poly::zero();
        for (k, ck) in c.iter().enumerate() {
            p.add_term(unit(k), ck.clone());
        }
        p
    }

    /// The diagonal quadratic form `Σ c_k v_k²`.
    pub fn diagonal_quadric(c: &[Rat; 4]) -> Self {
        let mut p = Poly::zero();
        for (k, ck) in c.iter().enumerate() {
            let mut e = [0; 4];
            e[k] = 2;
            p.add_term(e, ck.clone());
        }
        p
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Exponent) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::constant(Rat::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, at: &[Rat; 4]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..4 {
                if e[k] > 0 {
                    t *= num_traits::pow(at[k].clone(), e[k] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `args[k]` for the k-th variable.
    pub fn compose(&self, args: &[Poly; 4]) -> Poly {
        let mut powers: [Vec<Poly>; 4] = Default::default();
        for k in 0..4 {
            let max = self.terms.keys().map(|e| e[k]).max().unwrap_or(0);
            powers[k].push(Poly::constant(Rat::one()));
            for j in 1..=max as usize {
                let next = &powers[k][j - 1] * &args[k];
                powers[k].push(next);
            }
        }
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for k in 0..4 {
                if e[k] > 0 {
                    t = &t * &powers[k][e[k] as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Degree of the highest-degree term, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as u32).sum::<u32>() == degree)
    }
}

pub fn unit(k: usize) -> Exponent {
    let mut e = [0; 4];
    e[k] = 1;
    e
}

/// All exponent vectors of total degree `d`, in lexicographic order.
pub fn monomials_of_degree(d: u16) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn difference_of_squares() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert!(p.is_homogeneous(2));
        assert_eq!(p.eval(&[rat(3), rat(2), rat(0), rat(0)]), rat(5));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(1).len(), 4);
        assert_eq!(monomials_of_degree(2).len(), 10);
        assert_eq!(monomials_of_degree(3).len(), 20);
    }

    #[test]
    fn composition_matches_evaluation() {
        let x = Poly::var(0);
        let w = Poly::var(3);
        let f = &(&x * &x) + &w;
        let args = [
            &Poly::var(1) + &Poly::var(2),
            Poly::zero(),
            Poly::zero(),
            Poly::var(1).pow(3),
        ];
        let g = f.compose(&args);
        let at = [rat(0), rat(2), rat(5), rat(0)];
        assert_eq!(g.eval(&at), rat(49 + 8));
    }
}
