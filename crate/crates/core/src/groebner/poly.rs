//! Sparse commutative polynomials in the even generators, terms kept in
//! descending monomial order.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use super::order::MonomialOrder;

pub(crate) type Exp = Vec<u32>;

pub(crate) trait Coeff: Clone + Num + Neg<Output = Self> + Debug {}

impl<T: Clone + Num + Neg<Output = T> + Debug> Coeff for T {}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

pub(crate) fn sub_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Poly<C> {
    pub terms: Vec<(Exp, C)>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn monomial(e: Exp, c: C) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(e, c)] }
        }
    }

    pub fn from_terms(mut terms: Vec<(Exp, C)>, order: &MonomialOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Exp, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.clone() + c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].1
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// `a·self + b·x^shift·other`, merging in one pass.
    pub fn combine(&self, a: &C, b: &C, shift: &[u32], other: &Poly<C>, order: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut rhs = other.terms.iter().map(|(e, c)| (add_exp(e, shift), c.clone() * b.clone())).peekable();
        let one = a.is_one();
        let lhs_coeff = |c: &C| if one { c.clone() } else { c.clone() * a.clone() };
        loop {
            match (self.terms.get(i), rhs.peek()) {
                (None, None) => break,
                (Some((e, c)), None) => {
                    out.push((e.clone(), lhs_coeff(c)));
                    i += 1;
                }
                (None, Some(_)) => out.push(rhs.next().unwrap()),
                (Some((e, c)), Some((f, _))) => match order.cmp(e, f) {
                    Ordering::Greater => {
                        out.push((e.clone(), lhs_coeff(c)));
                        i += 1;
                    }
                    Ordering::Less => out.push(rhs.next().unwrap()),
                    Ordering::Equal => {
                        let (f, d) = rhs.next().unwrap();
                        let s = lhs_coeff(c) + d;
                        if !s.is_zero() {
                            out.push((f, s));
                        }
                        i += 1;
                    }
                },
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly<C>, order: &MonomialOrder) -> Self {
        let zero_shift = vec![0; self.terms.first().or(other.terms.first()).map_or(0, |t| t.0.len())];
        self.combine(&C::one(), &C::one(), &zero_shift, other, order)
    }

    pub fn mul(&self, other: &Poly<C>, order: &MonomialOrder) -> Self {
        let mut acc = Poly::zero();
        for (e, c) in &self.terms {
            acc = acc.combine(&C::one(), c, e, other, order);
        }
        acc
    }
}

impl Poly<BigInt> {
    /// Divides out the content and makes the leading coefficient positive.
    /// Returns the factor divided out (signed).
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
        g
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl Poly<BigRational> {
    /// Clears denominators: returns `(p, k)` with `p = k·self` integral and
    /// primitive.
    pub fn to_integer(&self) -> (Poly<BigInt>, BigRational) {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut p = Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.numer() * (&den / c.denom())))
                .collect(),
        };
        let content = p.make_primitive();
        (p, BigRational::new(den, content))
    }

    pub fn monic(&self) -> (Self, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let inv = self.lc().recip();
        (self.scale(&inv), inv)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Poly<BigRational>, order: &MonomialOrder) -> Option<Self> {
        let mut p = self.clone();
        let mut q = Vec::new();
        while !p.is_zero() {
            if !divides(d.lm(), p.lm()) {
                return None;
            }
            let shift = sub_exp(p.lm(), d.lm());
            let c = p.lc() / d.lc();
            p = p.combine(&BigRational::one(), &-c.clone(), &shift, d, order);
            q.push((shift, c));
        }
        Some(Poly::from_terms(q, order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn combine_cancels() {
        let o = MonomialOrder::weighted_grevlex(vec![1, 1]);
        let p = Poly::from_terms(vec![(vec![2, 0], ri(1)), (vec![0, 2], ri(-1))], &o);
        let q = p.combine(&ri(1), &ri(-1), &[0, 0], &p, &o);
        assert!(q.is_zero());
    }

    #[test]
    fn exact_division() {
        let o = MonomialOrder::weighted_grevlex(vec![1, 1]);
        let a = Poly::from_terms(vec![(vec![1, 0], ri(1)), (vec![0, 1], ri(1))], &o);
        let b = Poly::from_terms(vec![(vec![1, 0], ri(1)), (vec![0, 1], ri(-1))], &o);
        let ab = a.mul(&b, &o);
        assert_eq!(ab.div_exact(&a, &o), Some(b.clone()));
        assert_eq!(a.div_exact(&b, &o), None);
    }

    #[test]
    fn integer_clearing() {
        let o = MonomialOrder::weighted_grevlex(vec![1]);
        let half = BigRational::new(1.into(), 2.into());
        let p = Poly::from_terms(vec![(vec![1], half.clone()), (vec![0], ri(3))], &o);
        let (ip, k) = p.to_integer();
        assert_eq!(ip.terms[0].1, BigInt::from(1));
        assert_eq!(ip.terms[1].1, BigInt::from(6));
        assert_eq!(k, ri(2));
    }
}
