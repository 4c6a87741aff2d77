//! Ideals in the even polynomial part ΛX.
//!
//! Everything the structure theory asks of commutative algebra lands here:
//! ideal membership (with cofactors), ideal quotients, zero-divisor and
//! regular-sequence tests, and finite-dimensionality of quotient rings.

mod engine;
mod order;
mod poly;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Element, GeneratorSet, Monomial};
use crate::error::{Error, Result};

pub use order::MonomialOrder;
use poly::{divides, sub_exp, Poly};

fn to_poly(e: &Element, order: &MonomialOrder) -> Result<Poly<BigRational>> {
    if !e.is_even_only() {
        return Err(Error::OddGeneratorPresent(e.to_string()));
    }
    Ok(Poly::from_terms(
        e.terms().map(|(m, c)| (m.even_exponents().to_vec(), c.clone())).collect(),
        order,
    ))
}

fn from_poly(space: &Arc<GeneratorSet>, p: &Poly<BigRational>) -> Element {
    let mut e = Element::zero(space);
    for (exp, c) in &p.terms {
        e.add_term(Monomial::from_even(exp.clone()), c.clone());
    }
    e
}

/// Normal form of `f`, written `f = Σ cofactors[k]·g_k + remainder`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub remainder: Element,
    pub cofactors: Vec<Element>,
}

/// A reduced Gröbner basis under a fixed [`MonomialOrder`].
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    space: Arc<GeneratorSet>,
    order: MonomialOrder,
    inputs: Vec<Element>,
    polys: Vec<Poly<BigRational>>,
    lifts: Option<Vec<Vec<Poly<BigRational>>>>,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in the default
/// order of `space`.
pub fn buchberger(space: &Arc<GeneratorSet>, gens: &[Element]) -> Result<GroebnerBasis> {
    GroebnerBasis::new(space, gens)
}

impl GroebnerBasis {
    pub fn default_order(space: &GeneratorSet) -> MonomialOrder {
        MonomialOrder::weighted_grevlex(space.even_degrees())
    }

    pub fn new(space: &Arc<GeneratorSet>, gens: &[Element]) -> Result<Self> {
        Self::build(space, gens, Self::default_order(space), false)
    }

    pub fn with_order(space: &Arc<GeneratorSet>, gens: &[Element], order: MonomialOrder) -> Result<Self> {
        Self::build(space, gens, order, false)
    }

    /// Like [`GroebnerBasis::new`], but remembers how each basis element is
    /// built from `gens`, so membership can be certified by cofactors over
    /// the original generators (see [`GroebnerBasis::lift`]).
    pub fn tracked(space: &Arc<GeneratorSet>, gens: &[Element]) -> Result<Self> {
        Self::build(space, gens, Self::default_order(space), true)
    }

    fn build(space: &Arc<GeneratorSet>, gens: &[Element], order: MonomialOrder, track: bool) -> Result<Self> {
        assert_eq!(order.num_vars(), space.n_even());
        let inputs = gens
            .iter()
            .map(|g| {
                if !crate::algebra::same_space(g.space(), space) {
                    return Err(Error::GeneratorSetMismatch);
                }
                to_poly(g, &order)
            })
            .collect::<Result<Vec<_>>>()?;
        let out = engine::groebner(&inputs, &order, track);
        Ok(GroebnerBasis {
            space: space.clone(),
            order,
            inputs: gens.to_vec(),
            polys: out.basis,
            lifts: out.lifts,
        })
    }

    pub fn space(&self) -> &Arc<GeneratorSet> {
        &self.space
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Always true: bases are inter-reduced and monic on construction.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn inputs(&self) -> &[Element] {
        &self.inputs
    }

    pub fn generators(&self) -> Vec<Element> {
        self.polys.iter().map(|p| from_poly(&self.space, p)).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| Monomial::from_even(p.lm().clone())).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.lm().iter().all(|&e| e == 0))
    }

    fn reduce(&self, f: &Poly<BigRational>) -> (Poly<BigRational>, Vec<Poly<BigRational>>) {
        let mut p = f.clone();
        let mut quotients: Vec<Vec<(Vec<u32>, BigRational)>> = vec![Vec::new(); self.polys.len()];
        let mut pos = 0;
        while pos < p.terms.len() {
            let e = &p.terms[pos].0;
            match self.polys.iter().position(|g| divides(g.lm(), e)) {
                None => pos += 1,
                Some(k) => {
                    let g = &self.polys[k];
                    let shift = sub_exp(e, g.lm());
                    let c = &p.terms[pos].1 / g.lc();
                    p = p.combine(&BigRational::one(), &-c.clone(), &shift, g, &self.order);
                    quotients[k].push((shift, c));
                }
            }
        }
        let q = quotients
            .into_iter()
            .map(|t| Poly::from_terms(t, &self.order))
            .collect();
        (p, q)
    }

    pub fn normal_form(&self, f: &Element) -> Result<NormalForm> {
        let p = to_poly(f, &self.order)?;
        let (r, q) = self.reduce(&p);
        Ok(NormalForm {
            remainder: from_poly(&self.space, &r),
            cofactors: q.iter().map(|p| from_poly(&self.space, p)).collect(),
        })
    }

    pub fn member(&self, f: &Element) -> Result<bool> {
        let p = to_poly(f, &self.order)?;
        Ok(self.reduce(&p).0.is_zero())
    }

    /// Cofactors `m_j` with `f = Σ m_j·inputs[j]`, or `None` when `f` is
    /// not in the ideal.
    pub fn lift(&self, f: &Element) -> Result<Option<Vec<Element>>> {
        let Some(lifts) = &self.lifts else {
            let tracked = Self::build(&self.space, &self.inputs, self.order.clone(), true)?;
            return tracked.lift(f);
        };
        let p = to_poly(f, &self.order)?;
        let (r, q) = self.reduce(&p);
        if !r.is_zero() {
            return Ok(None);
        }
        let mut out = vec![Poly::zero(); self.inputs.len()];
        for (qk, lift) in q.iter().zip(lifts) {
            if qk.is_zero() {
                continue;
            }
            for (j, l) in lift.iter().enumerate() {
                out[j] = out[j].add(&qk.mul(l, &self.order), &self.order);
            }
        }
        Ok(Some(out.iter().map(|p| from_poly(&self.space, p)).collect()))
    }

    /// Gröbner basis of (I : a) = { f : f·a ∈ I }, via I ∩ (a) computed by
    /// eliminating an auxiliary variable t from t·I + (1 − t)·a.
    pub fn ideal_quotient(&self, a: &Element) -> Result<GroebnerBasis> {
        let a = to_poly(a, &self.order)?;
        if a.is_zero() {
            return Err(Error::QuotientByZero);
        }
        let elim = self.order.with_elimination_variable();
        let lift_t = |p: &Poly<BigRational>, t: u32| -> Vec<(Vec<u32>, BigRational)> {
            p.terms
                .iter()
                .map(|(e, c)| {
                    let mut x = vec![t];
                    x.extend_from_slice(e);
                    (x, c.clone())
                })
                .collect()
        };
        let mut inputs: Vec<Poly<BigRational>> = self
            .polys
            .iter()
            .map(|g| Poly::from_terms(lift_t(g, 1), &elim))
            .collect();
        let mut one_minus_t = lift_t(&a, 0);
        one_minus_t.extend(lift_t(&a, 1).into_iter().map(|(e, c)| (e, -c)));
        inputs.push(Poly::from_terms(one_minus_t, &elim));
        let out = engine::groebner(&inputs, &elim, false);
        let quotient_gens: Vec<Element> = out
            .basis
            .iter()
            .filter(|p| p.lm()[0] == 0)
            .map(|p| {
                let stripped = Poly::from_terms(
                    p.terms.iter().map(|(e, c)| (e[1..].to_vec(), c.clone())).collect(),
                    &self.order,
                );
                let q = stripped
                    .div_exact(&a, &self.order)
                    .expect("elements of I ∩ (a) are divisible by a");
                from_poly(&self.space, &q)
            })
            .collect();
        Self::with_order(&self.space, &quotient_gens, self.order.clone())
    }

    /// Ideal inclusion: every generator of `other` lies in this ideal.
    pub fn contains(&self, other: &GroebnerBasis) -> bool {
        other.polys.iter().all(|p| self.reduce(p).0.is_zero())
    }

    /// A witness that `a` is a zero divisor modulo this ideal: some `f ∉ I`
    /// with `f·a ∈ I`. The zero ring has no zero divisors.
    pub fn zero_divisor_witness(&self, a: &Element) -> Result<Option<Element>> {
        if self.is_unit_ideal() {
            to_poly(a, &self.order)?;
            return Ok(None);
        }
        if self.member(a)? {
            return Ok(Some(Element::one(&self.space)));
        }
        let quotient = self.ideal_quotient(a)?;
        for q in quotient.generators() {
            if !self.member(&q)? {
                return Ok(Some(q));
            }
        }
        Ok(None)
    }

    pub fn is_zero_divisor(&self, a: &Element) -> Result<bool> {
        Ok(self.zero_divisor_witness(a)?.is_some())
    }

    /// True iff every even generator has a pure power among the leading
    /// monomials, i.e. ΛX/I is finite-dimensional.
    pub fn is_finite_dimensional(&self) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        let lms: Vec<&Vec<u32>> = self.polys.iter().map(|p| p.lm()).collect();
        (0..self.space.n_even()).all(|i| {
            lms.iter()
                .any(|lm| lm[i] > 0 && lm.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
    }

    /// Monomials divisible by no leading monomial; a basis of ΛX/I.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if !self.is_finite_dimensional() {
            return Err(Error::InfiniteQuotient);
        }
        if self.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let lms: Vec<&Vec<u32>> = self.polys.iter().map(|p| p.lm()).collect();
        let mut out = Vec::new();
        let mut exp = vec![0u32; self.space.n_even()];
        collect_standard(0, &mut exp, &lms, &mut out);
        Ok(out.into_iter().map(Monomial::from_even).collect())
    }

    pub fn quotient_dimension(&self) -> Result<u64> {
        Ok(self.standard_monomials()?.len() as u64)
    }
}

fn collect_standard(i: usize, exp: &mut Vec<u32>, lms: &[&Vec<u32>], out: &mut Vec<Vec<u32>>) {
    if i == exp.len() {
        out.push(exp.clone());
        return;
    }
    loop {
        if lms.iter().any(|lm| divides(lm, exp)) {
            break;
        }
        collect_standard(i + 1, exp, lms, out);
        exp[i] += 1;
    }
    exp[i] = 0;
}

/// Free-function form of [`GroebnerBasis::normal_form`].
pub fn normal_form(f: &Element, g: &GroebnerBasis) -> Result<NormalForm> {
    g.normal_form(f)
}

pub fn ideal_quotient(g: &GroebnerBasis, a: &Element) -> Result<GroebnerBasis> {
    g.ideal_quotient(a)
}

pub fn is_zero_divisor(a: &Element, g: &GroebnerBasis) -> Result<bool> {
    g.is_zero_divisor(a)
}

pub fn quotient_is_finite_dimensional(g: &GroebnerBasis) -> bool {
    g.is_finite_dimensional()
}

pub fn quotient_dimension(g: &GroebnerBasis) -> Result<u64> {
    g.quotient_dimension()
}

/// Outcome of a regular-sequence test. `failing_index` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularSequenceCheck {
    pub regular: bool,
    pub failing_index: Option<usize>,
    /// For a failure at index i: some f outside (α_1,…,α_{i−1}) with
    /// f·α_i inside it.
    pub witness: Option<Element>,
}

/// Is `seq` a regular sequence in Λ⁺X (X the even generators of `space`)?
/// Each element is tested as a non-zero-divisor modulo its predecessors.
pub fn is_regular_sequence(space: &Arc<GeneratorSet>, seq: &[Element]) -> Result<RegularSequenceCheck> {
    for a in seq {
        if !a.is_even_only() {
            return Err(Error::OddGeneratorPresent(a.to_string()));
        }
        if !a.constant_term().is_zero() {
            return Err(Error::ConstantTerm(a.to_string()));
        }
    }
    for (k, a) in seq.iter().enumerate() {
        let ideal = GroebnerBasis::new(space, &seq[..k])?;
        if let Some(w) = ideal.zero_divisor_witness(a)? {
            return Ok(RegularSequenceCheck {
                regular: false,
                failing_index: Some(k + 1),
                witness: Some(w),
            });
        }
    }
    Ok(RegularSequenceCheck {
        regular: true,
        failing_index: None,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::text::parse_element;

    fn xy(d1: u32, d2: u32) -> Arc<GeneratorSet> {
        GeneratorSet::new([Generator::new("x1", d1), Generator::new("x2", d2)]).unwrap()
    }

    fn el(s: &Arc<GeneratorSet>, t: &str) -> Element {
        parse_element(s, t).unwrap()
    }

    fn gb(s: &Arc<GeneratorSet>, gens: &[&str]) -> GroebnerBasis {
        let gens: Vec<Element> = gens.iter().map(|t| el(s, t)).collect();
        GroebnerBasis::new(s, &gens).unwrap()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let s = xy(6, 8);
        let g = gb(&s, &["x1^2"]);
        assert_eq!(g.generators(), vec![el(&s, "x1^2")]);
    }

    #[test]
    fn linear_reduction() {
        let s = xy(2, 2);
        let g = gb(&s, &["x1", "x1 + x2"]);
        let mut names: Vec<String> = g.generators().iter().map(|e| e.to_string()).collect();
        names.sort();
        assert_eq!(names, ["x1", "x2"]);
    }

    #[test]
    fn example_table_membership() {
        let s = xy(6, 8);
        let g = gb(&s, &["x1^5 + x1*x2^3", "x1^4*x2 + x2^4"]);
        assert!(g.member(&el(&s, "x1*(x1^4*x2 + x2^4)")).unwrap());

        let dy1 = gb(&s, &["x1^5 + x1*x2^3"]);
        let nf = dy1.normal_form(&el(&s, "x1*(x1^4*x2 + x2^4)")).unwrap();
        assert!(nf.remainder.is_zero());
        assert_eq!(nf.cofactors, vec![el(&s, "x2")]);

        assert!(dy1.member(&el(&s, "(x1^4 + x2^3)*x1^3*x2^2")).unwrap());
    }

    #[test]
    fn normal_form_single_division_step() {
        let s = xy(6, 8);
        let g = gb(&s, &["x1^5 + x1*x2^3"]);
        let nf = g.normal_form(&el(&s, "x1^5")).unwrap();
        assert_eq!(nf.remainder, el(&s, "-x1*x2^3"));
        assert_eq!(nf.cofactors, vec![el(&s, "1")]);

        let zero = g.normal_form(&Element::zero(&s)).unwrap();
        assert!(zero.remainder.is_zero());
        assert!(zero.cofactors.iter().all(Element::is_zero));
    }

    #[test]
    fn simple_membership() {
        let s = xy(2, 2);
        assert!(!gb(&s, &["x1"]).member(&el(&s, "1")).unwrap());
        assert!(gb(&s, &["x1*x2"]).member(&el(&s, "x2^4*x1")).unwrap());
    }

    #[test]
    fn odd_input_rejected() {
        let s = GeneratorSet::new([Generator::new("x", 2), Generator::new("y", 3)]).unwrap();
        let y = el(&s, "x*y");
        assert!(matches!(GroebnerBasis::new(&s, std::slice::from_ref(&y)), Err(Error::OddGeneratorPresent(_))));
        let g = GroebnerBasis::new(&s, &[el(&s, "x^2")]).unwrap();
        assert!(matches!(g.normal_form(&y), Err(Error::OddGeneratorPresent(_))));
    }

    #[test]
    fn quotients() {
        let s = xy(2, 2);
        let q = gb(&s, &["x1^2"]).ideal_quotient(&el(&s, "x1")).unwrap();
        assert_eq!(q.generators(), vec![el(&s, "x1")]);
        let q = gb(&s, &["x1"]).ideal_quotient(&el(&s, "x2")).unwrap();
        assert_eq!(q.generators(), vec![el(&s, "x1")]);
        assert_eq!(
            gb(&s, &["x1"]).ideal_quotient(&Element::zero(&s)).unwrap_err(),
            Error::QuotientByZero
        );

        let t = xy(6, 8);
        let q = gb(&t, &["x1^5 + x1*x2^3"]).ideal_quotient(&el(&t, "x1^4*x2 + x2^4")).unwrap();
        assert!(q.member(&el(&t, "x1")).unwrap());
    }

    #[test]
    fn zero_divisors() {
        let s = xy(6, 8);
        let dy1 = gb(&s, &["x1^5 + x1*x2^3"]);
        assert!(dy1.is_zero_divisor(&el(&s, "x1^4*x2 + x2^4")).unwrap());
        assert!(dy1.is_zero_divisor(&el(&s, "x1^3*x2^2")).unwrap());
        let t = xy(2, 2);
        assert!(!gb(&t, &["x1"]).is_zero_divisor(&el(&t, "x2")).unwrap());
        assert!(gb(&t, &["x1"]).is_zero_divisor(&Element::zero(&t)).unwrap());
    }

    #[test]
    fn regular_sequences() {
        let s = xy(6, 8);
        let r = is_regular_sequence(&s, &[el(&s, "x1^5+x1*x2^3"), el(&s, "x1^4*x2+x2^4")]).unwrap();
        assert!(!r.regular);
        assert_eq!(r.failing_index, Some(2));
        let r = is_regular_sequence(&s, &[el(&s, "x1^3*x2^2"), el(&s, "(x1+x2)*(x1^4+x2^3)")]).unwrap();
        assert!(r.regular);
        let one = GeneratorSet::new([Generator::new("x1", 2)]).unwrap();
        assert!(is_regular_sequence(&one, &[el(&one, "x1")]).unwrap().regular);
        assert!(matches!(
            is_regular_sequence(&one, &[el(&one, "x1 + 1")]),
            Err(Error::ConstantTerm(_))
        ));
    }

    #[test]
    fn finite_dimensionality() {
        let one = GeneratorSet::new([Generator::new("x1", 2)]).unwrap();
        assert!(gb(&one, &["x1^2"]).is_finite_dimensional());
        assert_eq!(gb(&one, &["x1^2"]).quotient_dimension(), Ok(2));
        for n in 1..6 {
            assert_eq!(gb(&one, &[&format!("x1^{}", n + 1)]).quotient_dimension(), Ok(n + 1));
        }
        let s = xy(6, 8);
        assert!(gb(&s, &["x1^5 + x1*x2^3", "x1^4*x2 + x2^4", "x1^3*x2^2"]).is_finite_dimensional());
        let t = xy(2, 2);
        assert!(!gb(&t, &["x1*x2"]).is_finite_dimensional());
        assert_eq!(gb(&t, &["x1*x2"]).quotient_dimension(), Err(Error::InfiniteQuotient));
        assert_eq!(gb(&t, &["x1^2", "x2^2"]).quotient_dimension(), Ok(4));
    }

    #[test]
    fn tracked_lift_reconstructs_member() {
        let s = xy(2, 2);
        let gens = vec![el(&s, "x1^2 + x1*x2"), el(&s, "x2^2 + x1*x2"), el(&s, "x1*x2")];
        let g = GroebnerBasis::tracked(&s, &gens).unwrap();
        let f = el(&s, "x1^3");
        let cof = g.lift(&f).unwrap().unwrap();
        let mut sum = Element::zero(&s);
        for (c, gen) in cof.iter().zip(&gens) {
            sum = &sum + &(c * gen);
        }
        assert_eq!(sum, f);
        assert_eq!(g.lift(&el(&s, "x1")).unwrap(), None);
    }
}
