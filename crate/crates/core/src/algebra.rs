//! The free graded-commutative algebra ΛV = ΛX ⊗ ΛY over the rationals.
//!
//! Even generators commute with everything; odd generators anticommute with
//! each other and square to zero. A [`Monomial`] keeps the even exponents
//! densely and the odd generators as a strictly increasing index list, so a
//! monomial has exactly one canonical spelling and signs appear only when two
//! monomials are multiplied.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    name: String,
    degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_even(&self) -> bool {
        self.degree.is_multiple_of(2)
    }
}

/// An ordered, named set of graded generators.
///
/// Global indices run over the even generators first (ascending degree,
/// stable in declaration order) and then the odd generators in declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
    n_even: usize,
    by_name: HashMap<String, usize>,
}

impl GeneratorSet {
    pub fn new(decls: impl IntoIterator<Item = Generator>) -> Result<Arc<Self>> {
        let decls: Vec<Generator> = decls.into_iter().collect();
        let mut seen = BTreeSet::new();
        for g in &decls {
            if g.degree < 2 {
                return Err(Error::DegreeTooSmall {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut evens: Vec<Generator> = decls.iter().filter(|g| g.is_even()).cloned().collect();
        evens.sort_by_key(|g| g.degree);
        let n_even = evens.len();
        let mut gens = evens;
        gens.extend(decls.into_iter().filter(|g| !g.is_even()));
        let by_name = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i))
            .collect();
        Ok(Arc::new(GeneratorSet {
            gens,
            n_even,
            by_name,
        }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.gens.len() - self.n_even
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, idx: usize) -> &Generator {
        &self.gens[idx]
    }

    pub fn evens(&self) -> &[Generator] {
        &self.gens[..self.n_even]
    }

    pub fn odds(&self) -> &[Generator] {
        &self.gens[self.n_even..]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn is_even(&self, idx: usize) -> bool {
        idx < self.n_even
    }

    pub fn even_degrees(&self) -> Vec<u32> {
        self.evens().iter().map(|g| g.degree).collect()
    }

    pub(crate) fn odd_degree(&self, odd_idx: u32) -> u32 {
        self.gens[self.n_even + odd_idx as usize].degree
    }

    pub(crate) fn odd_name(&self, odd_idx: u32) -> &str {
        &self.gens[self.n_even + odd_idx as usize].name
    }

    /// Canonical descending order: degree, then reverse-lex on the even
    /// part, then the odd part.
    pub(crate) fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree(self)
            .cmp(&b.degree(self))
            .then_with(|| {
                for i in (0..self.n_even).rev() {
                    if a.even[i] != b.even[i] {
                        return b.even[i].cmp(&a.even[i]);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| b.odd.cmp(&a.odd))
    }

    /// Every monomial of topological degree `degree`, largest first.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut odd = Vec::new();
        self.odd_subsets(0, degree, &mut odd, &mut out);
        out.sort_by(|a, b| self.cmp_monomials(b, a));
        out
    }

    fn odd_subsets(&self, from: u32, budget: u32, odd: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let mut even = vec![0u32; self.n_even];
        self.even_fill(0, budget, &mut even, odd, out);
        for j in from..self.n_odd() as u32 {
            let d = self.odd_degree(j);
            if d <= budget {
                odd.push(j);
                self.odd_subsets(j + 1, budget - d, odd, out);
                odd.pop();
            }
        }
    }

    fn even_fill(&self, i: usize, budget: u32, even: &mut Vec<u32>, odd: &[u32], out: &mut Vec<Monomial>) {
        if i == self.n_even {
            if budget == 0 {
                out.push(Monomial {
                    even: even.clone(),
                    odd: odd.to_vec(),
                });
            }
            return;
        }
        let d = self.gens[i].degree;
        let mut e = 0;
        while e * d <= budget {
            even[i] = e;
            self.even_fill(i + 1, budget - e * d, even, odd, out);
            e += 1;
        }
        even[i] = 0;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub(crate) even: Vec<u32>,
    pub(crate) odd: Vec<u32>,
}

impl Monomial {
    pub fn one(space: &GeneratorSet) -> Self {
        Monomial {
            even: vec![0; space.n_even],
            odd: Vec::new(),
        }
    }

    pub(crate) fn from_even(even: Vec<u32>) -> Self {
        Monomial {
            even,
            odd: Vec::new(),
        }
    }

    pub fn even_exponents(&self) -> &[u32] {
        &self.even
    }

    /// Indices of the odd factors, relative to the odd generators.
    pub fn odd_part(&self) -> &[u32] {
        &self.odd
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_empty() && self.even.iter().all(|&e| e == 0)
    }

    pub fn is_even_only(&self) -> bool {
        self.odd.is_empty()
    }

    pub fn word_length(&self) -> u32 {
        self.even.iter().sum::<u32>() + self.odd.len() as u32
    }

    pub fn degree(&self, space: &GeneratorSet) -> u32 {
        let e: u32 = self
            .even
            .iter()
            .zip(space.evens())
            .map(|(e, g)| e * g.degree)
            .sum();
        e + self.odd.iter().map(|&j| space.odd_degree(j)).sum::<u32>()
    }

    /// Product with its Koszul sign, or `None` when an odd generator repeats.
    /// The flag is true when the sign is negative.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        let (a, b) = (&self.odd, &other.odd);
        let mut odd = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j, mut swaps) = (0, 0, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    odd.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    // b[j] moves past every remaining factor of a
                    swaps += a.len() - i;
                    odd.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        odd.extend_from_slice(&a[i..]);
        odd.extend_from_slice(&b[j..]);
        Some((Monomial { even, odd }, swaps % 2 == 1))
    }

    pub(crate) fn render(&self, space: &GeneratorSet) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.even.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(space.gens[i].name.clone()),
                _ => parts.push(format!("{}^{}", space.gens[i].name, e)),
            }
        }
        for &j in &self.odd {
            parts.push(space.odd_name(j).to_string());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Result of asking an element for its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero element, homogeneous of every degree.
    Any,
    Homogeneous(u32),
    Mixed,
}

impl Degree {
    pub fn value(self) -> Option<u32> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// A rational linear combination of monomials over a fixed generator set.
///
/// The arithmetic operators panic when the operands live over different
/// generator sets; [`Element::multiply`] is the checked form.
#[derive(Clone)]
pub struct Element {
    space: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for Element {}

pub(crate) fn same_space(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Element {
    pub fn zero(space: &Arc<GeneratorSet>) -> Self {
        Element {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Arc<GeneratorSet>) -> Self {
        Element::constant(space, Rational::one())
    }

    pub fn constant(space: &Arc<GeneratorSet>, c: Rational) -> Self {
        Element::monomial(space, Monomial::one(space), c)
    }

    pub fn monomial(space: &Arc<GeneratorSet>, m: Monomial, c: Rational) -> Self {
        let mut e = Element::zero(space);
        e.add_term(m, c);
        e
    }

    pub fn generator(space: &Arc<GeneratorSet>, idx: usize) -> Self {
        let mut m = Monomial::one(space);
        if space.is_even(idx) {
            m.even[idx] = 1;
        } else {
            m.odd.push((idx - space.n_even) as u32);
        }
        Element::monomial(space, m, Rational::one())
    }

    pub fn var(space: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        Ok(Element::generator(space, space.lookup(name)?))
    }

    pub fn space(&self) -> &Arc<GeneratorSet> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.space);
        }
        Element {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::GeneratorSetMismatch);
        }
        let mut out = Element::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(&self.space);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|m| m.degree(&self.space));
        match degrees.next() {
            None => Degree::Any,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Mixed
                }
            }
        }
    }

    pub fn word_lengths(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::word_length).collect()
    }

    /// True when no term involves an odd generator.
    pub fn is_even_only(&self) -> bool {
        self.terms.keys().all(Monomial::is_even_only)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(&self.space))
    }

    pub fn homogeneous_component(&self, degree: u32) -> Element {
        Element {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.space) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when some term involves generator `idx`.
    pub fn involves(&self, idx: usize) -> bool {
        let n_even = self.space.n_even;
        self.terms.keys().any(|m| {
            if idx < n_even {
                m.even[idx] > 0
            } else {
                m.odd.contains(&((idx - n_even) as u32))
            }
        })
    }

    /// Applies the algebra homomorphism sending generator `i` of this
    /// element's space to `images[i]`.
    pub fn map_generators(&self, target: &Arc<GeneratorSet>, images: &[Element]) -> Result<Element> {
        assert_eq!(images.len(), self.space.len());
        if images.iter().any(|e| !same_space(&e.space, target)) {
            return Err(Error::GeneratorSetMismatch);
        }
        let n_even = self.space.n_even;
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Element::constant(target, c.clone());
            for (i, &e) in m.even.iter().enumerate() {
                if e > 0 {
                    acc = &acc * &images[i].pow(e);
                }
            }
            for &j in &m.odd {
                acc = &acc * &images[n_even + j as usize];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Moves an element to another generator set by generator name;
    /// generators missing from `target` are sent to zero.
    pub fn transport(&self, target: &Arc<GeneratorSet>) -> Element {
        let images: Vec<Element> = self
            .space
            .gens
            .iter()
            .map(|g| match target.index_of(&g.name) {
                Some(i) if target.gens[i].degree == g.degree => Element::generator(target, i),
                _ => Element::zero(target),
            })
            .collect();
        self.map_generators(target, &images)
            .expect("images built over target")
    }

    /// Terms in canonical display order: largest degree and leading
    /// monomial first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.space.cmp_monomials(b.0, a.0));
        v
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.render(&self.space))?;
            } else {
                write!(f, "{abs}*{}", m.render(&self.space))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        assert!(same_space(&self.space, &rhs.space), "generator set mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        assert!(same_space(&self.space, &rhs.space), "generator set mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("generator set mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        -&self
    }
}
