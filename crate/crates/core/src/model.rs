//! Sullivan models (ΛV, d): validation, structural predicates and the
//! quotient / sub-model constructions.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Degree, Element, Generator, GeneratorSet, Monomial};
use crate::error::{Error, Result};

/// Word-length profile of the differential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DifferentialLength {
    /// Every generator is closed, so no length is determined.
    AllZero,
    Constant(u32),
    Mixed(BTreeSet<u32>),
}

impl DifferentialLength {
    pub fn constant(&self) -> Option<u32> {
        match self {
            DifferentialLength::Constant(l) => Some(*l),
            _ => None,
        }
    }

    pub fn lengths(&self) -> Vec<u32> {
        match self {
            DifferentialLength::AllZero => Vec::new(),
            DifferentialLength::Constant(l) => vec![*l],
            DifferentialLength::Mixed(s) => s.iter().copied().collect(),
        }
    }
}

impl std::fmt::Display for DifferentialLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DifferentialLength::AllZero => f.write_str("all differentials zero"),
            DifferentialLength::Constant(l) => write!(f, "constant length {l}"),
            DifferentialLength::Mixed(s) => {
                let v: Vec<String> = s.iter().map(u32::to_string).collect();
                write!(f, "mixed lengths {{{}}}", v.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub pure: bool,
    pub minimal: bool,
    pub length: DifferentialLength,
    pub elliptic: Option<bool>,
    pub chi_pi: i64,
    pub formal_dimension: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanModel {
    name: String,
    space: Arc<GeneratorSet>,
    diff: Vec<Element>,
}

impl SullivanModel {
    /// Assembles a model from named differential assignments. Unassigned
    /// generators are closed. No mathematical checks happen here; see
    /// [`SullivanModel::validate`].
    pub fn new<'a>(
        name: impl Into<String>,
        space: Arc<GeneratorSet>,
        assignments: impl IntoIterator<Item = (&'a str, Element)>,
    ) -> Result<Self> {
        let mut diff = vec![Element::zero(&space); space.len()];
        for (g, image) in assignments {
            let idx = space.lookup(g)?;
            if !crate::algebra::same_space(image.space(), &space) {
                return Err(Error::GeneratorSetMismatch);
            }
            diff[idx] = image;
        }
        Ok(SullivanModel {
            name: name.into(),
            space,
            diff,
        })
    }

    pub(crate) fn from_images(name: impl Into<String>, space: Arc<GeneratorSet>, diff: Vec<Element>) -> Self {
        debug_assert_eq!(diff.len(), space.len());
        SullivanModel {
            name: name.into(),
            space,
            diff,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<GeneratorSet> {
        &self.space
    }

    pub fn generators(&self) -> &[Generator] {
        self.space.generators()
    }

    pub fn n_even(&self) -> usize {
        self.space.n_even()
    }

    pub fn n_odd(&self) -> usize {
        self.space.n_odd()
    }

    pub fn var(&self, name: &str) -> Result<Element> {
        Element::var(&self.space, name)
    }

    /// d applied to generator `idx`.
    pub fn image(&self, idx: usize) -> &Element {
        &self.diff[idx]
    }

    pub fn image_of(&self, name: &str) -> Result<&Element> {
        Ok(&self.diff[self.space.lookup(name)?])
    }

    /// Differentials of the odd generators, in order.
    pub fn odd_images(&self) -> &[Element] {
        &self.diff[self.space.n_even()..]
    }

    /// The degree +1 derivation extending the generator assignments.
    pub fn apply_differential(&self, e: &Element) -> Element {
        let space = &self.space;
        let n_even = space.n_even();
        let mut out = Element::zero(space);
        for (m, c) in e.terms() {
            let odd_factors: Vec<Element> = m
                .odd_part()
                .iter()
                .map(|&j| Element::generator(space, n_even + j as usize))
                .collect();
            let even_part = Element::monomial(space, Monomial::from_even(m.even_exponents().to_vec()), c.clone());
            // d of the even part; even factors are central
            for (i, &exp) in m.even_exponents().iter().enumerate() {
                if exp == 0 || self.diff[i].is_zero() {
                    continue;
                }
                let mut rest = m.even_exponents().to_vec();
                rest[i] -= 1;
                let mut t = Element::monomial(space, Monomial::from_even(rest), c * crate::algebra::rat(exp as i64));
                t = &t * &self.diff[i];
                for f in &odd_factors {
                    t = &t * f;
                }
                out = &out + &t;
            }
            // d of the odd part, sign (-1)^k for the k-th odd factor
            for k in 0..odd_factors.len() {
                let j = n_even + m.odd_part()[k] as usize;
                if self.diff[j].is_zero() {
                    continue;
                }
                let mut t = even_part.clone();
                for f in &odd_factors[..k] {
                    t = &t * f;
                }
                t = &t * &self.diff[j];
                for f in &odd_factors[k + 1..] {
                    t = &t * f;
                }
                if k % 2 == 1 {
                    t = -t;
                }
                out = &out + &t;
            }
        }
        out
    }

    /// Checks minimality, degrees and d² = 0, in that order.
    pub fn validate(&self) -> Result<ModelReport> {
        for (g, image) in self.space.generators().iter().zip(&self.diff) {
            if image.word_lengths().iter().any(|&l| l < 2) {
                return Err(Error::NotMinimal(g.name().to_string()));
            }
        }
        for (g, image) in self.space.generators().iter().zip(&self.diff) {
            check_degree(g, image)?;
        }
        for (i, g) in self.space.generators().iter().enumerate() {
            if !self.apply_differential(&self.diff[i]).is_zero() {
                return Err(Error::DifferentialNotSquareZero(g.name().to_string()));
            }
        }
        Ok(ModelReport {
            pure: self.is_pure(),
            minimal: true,
            length: self.differential_length(),
            elliptic: None,
            chi_pi: self.chi_pi(),
            formal_dimension: None,
        })
    }

    pub fn is_pure(&self) -> bool {
        let n_even = self.space.n_even();
        self.diff[..n_even].iter().all(Element::is_zero)
            && self.diff[n_even..].iter().all(Element::is_even_only)
    }

    pub fn differential_length(&self) -> DifferentialLength {
        let lengths: BTreeSet<u32> = self.diff.iter().flat_map(|e| e.word_lengths()).collect();
        match lengths.len() {
            0 => DifferentialLength::AllZero,
            1 => DifferentialLength::Constant(*lengths.iter().next().unwrap()),
            _ => DifferentialLength::Mixed(lengths),
        }
    }

    pub fn chi_pi(&self) -> i64 {
        self.space.n_even() as i64 - self.space.n_odd() as i64
    }

    /// Σ|y| − Σ(|x| − 1), the top cohomology degree of an elliptic model.
    pub fn formal_dimension(&self) -> Result<i64> {
        if !crate::ellipticity::is_elliptic(self)? {
            return Err(Error::NotElliptic);
        }
        Ok(self.formal_dimension_formula())
    }

    pub(crate) fn formal_dimension_formula(&self) -> i64 {
        let odd: i64 = self.space.odds().iter().map(|g| g.degree() as i64).sum();
        let even: i64 = self.space.evens().iter().map(|g| g.degree() as i64 - 1).sum();
        odd - even
    }

    pub fn basis_of_degree(&self, degree: u32) -> Vec<Monomial> {
        self.space.monomials_of_degree(degree)
    }

    /// The pure model obtained by keeping only the ΛX-component of each odd
    /// differential and closing the even generators.
    pub fn associated_pure(&self) -> SullivanModel {
        let n_even = self.space.n_even();
        let diff = self
            .diff
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if i < n_even {
                    Element::zero(&self.space)
                } else {
                    let mut p = Element::zero(&self.space);
                    for (m, c) in e.terms().filter(|(m, _)| m.is_even_only()) {
                        p.add_term(m.clone(), c.clone());
                    }
                    p
                }
            })
            .collect();
        SullivanModel::from_images(format!("{}(pure)", self.name), self.space.clone(), diff)
    }

    /// (ΛW, d̄): the killed generators go to zero.
    ///
    /// The killed generators must span a differential ideal: every term of
    /// the image of a killed generator must contain a killed generator.
    pub fn quotient_model(&self, kill: &[&str]) -> Result<SullivanModel> {
        let mut killed = BTreeSet::new();
        for name in kill {
            killed.insert(self.space.lookup(name)?);
        }
        for &k in &killed {
            let image = &self.diff[k];
            let closed = image
                .terms()
                .all(|(m, _)| killed.iter().any(|&j| involves(&self.space, m, j)));
            if !closed {
                return Err(Error::NotDifferentialIdeal(self.space.get(k).name().to_string()));
            }
        }
        let survivors: Vec<Generator> = self
            .space
            .generators()
            .iter()
            .enumerate()
            .filter(|(i, _)| !killed.contains(i))
            .map(|(_, g)| g.clone())
            .collect();
        let target = GeneratorSet::new(survivors)?;
        let diff = target
            .generators()
            .iter()
            .map(|g| self.diff[self.space.index_of(g.name()).unwrap()].transport(&target))
            .collect();
        let names: Vec<&str> = killed.iter().map(|&i| self.space.get(i).name()).collect();
        let q = SullivanModel::from_images(format!("{}/({})", self.name, names.join(",")), target, diff);
        q.validate()?;
        Ok(q)
    }

    /// The sub-algebra on `keep`, which must be closed under d.
    pub fn sub_model(&self, keep: &[&str]) -> Result<SullivanModel> {
        let mut kept = BTreeSet::new();
        for name in keep {
            kept.insert(self.space.lookup(name)?);
        }
        for &k in &kept {
            if (0..self.space.len()).any(|j| !kept.contains(&j) && self.diff[k].involves(j)) {
                return Err(Error::NotClosedUnderDifferential {
                    generator: self.space.get(k).name().to_string(),
                    image: self.diff[k].to_string(),
                });
            }
        }
        let gens: Vec<Generator> = kept.iter().map(|&i| self.space.get(i).clone()).collect();
        let target = GeneratorSet::new(gens)?;
        let diff = target
            .generators()
            .iter()
            .map(|g| self.diff[self.space.index_of(g.name()).unwrap()].transport(&target))
            .collect();
        let names: Vec<&str> = target.generators().iter().map(|g| g.name()).collect();
        Ok(SullivanModel::from_images(
            format!("{}[{}]", self.name, names.join(",")),
            target,
            diff,
        ))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn involves(space: &GeneratorSet, m: &Monomial, idx: usize) -> bool {
    if space.is_even(idx) {
        m.even_exponents()[idx] > 0
    } else {
        m.odd_part().contains(&((idx - space.n_even()) as u32))
    }
}

pub(crate) fn check_degree(g: &Generator, image: &Element) -> Result<()> {
    let expected = g.degree() + 1;
    match image.degree() {
        Degree::Any => Ok(()),
        Degree::Homogeneous(d) if d == expected => Ok(()),
        Degree::Homogeneous(d) => Err(Error::DegreeMismatch {
            generator: g.name().to_string(),
            expected,
            found: d.to_string(),
        }),
        Degree::Mixed => Err(Error::DegreeMismatch {
            generator: g.name().to_string(),
            expected,
            found: "mixed".to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_model;

    const EX23: &str = "model \"ex23\"\neven x1 : 6\neven x2 : 8\nodd y1 : 29 = x1^5 + x1*x2^3\nodd y2 : 31 = x1^4*x2 + x2^4\nodd y3 : 33 = x1^3*x2^2\n";

    #[test]
    fn differential_on_generators() {
        let m = parse_model(EX23).unwrap();
        let y1 = m.var("y1").unwrap();
        assert_eq!(m.apply_differential(&y1).to_string(), "x1^5 + x1*x2^3");
        assert!(m.apply_differential(&m.var("x1").unwrap()).is_zero());
    }

    #[test]
    fn differential_on_odd_product_has_koszul_sign() {
        let m = parse_model(EX23).unwrap();
        let (y1, y2) = (m.var("y1").unwrap(), m.var("y2").unwrap());
        let lhs = m.apply_differential(&(&y1 * &y2));
        let rhs = &(&m.apply_differential(&y1) * &y2) - &(&y1 * &m.apply_differential(&y2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn validate_example() {
        let m = parse_model(EX23).unwrap();
        let r = m.validate().unwrap();
        assert!(r.pure && r.minimal);
        assert_eq!(r.length, DifferentialLength::Mixed(BTreeSet::from([4, 5])));
        assert_eq!(r.chi_pi, -1);
    }

    fn raw(gens: &[(&str, u32)], diffs: &[(&str, &str)]) -> SullivanModel {
        let space = GeneratorSet::new(gens.iter().map(|&(n, d)| Generator::new(n, d))).unwrap();
        let assignments: Vec<(&str, Element)> = diffs
            .iter()
            .map(|&(g, e)| (g, crate::text::parse_element(&space, e).unwrap()))
            .collect();
        SullivanModel::new("m", space, assignments).unwrap()
    }

    #[test]
    fn validate_rejects_linear_part() {
        let m = raw(&[("x", 2), ("y", 3)], &[("y", "x")]);
        assert_eq!(m.validate(), Err(Error::NotMinimal("y".into())));
    }

    #[test]
    fn validate_rejects_nonzero_square() {
        let m = raw(&[("x", 2), ("y", 3), ("w", 3), ("z", 5)], &[("y", "x^2"), ("z", "y*w")]);
        assert_eq!(m.validate(), Err(Error::DifferentialNotSquareZero("z".into())));
    }

    #[test]
    fn purity() {
        assert!(parse_model(EX23).unwrap().is_pure());
        let m = raw(&[("y1", 3), ("y2", 3), ("z", 5)], &[("z", "y1*y2")]);
        assert!(!m.is_pure());
        assert!(raw(&[("y", 3)], &[]).is_pure());
    }

    #[test]
    fn lengths() {
        let cp3 = raw(&[("x", 2), ("y", 7)], &[("y", "x^4")]);
        assert_eq!(cp3.differential_length(), DifferentialLength::Constant(4));
        let m = raw(&[("x", 2), ("y", 3), ("z", 5)], &[("y", "x^2")]);
        assert_eq!(m.differential_length(), DifferentialLength::Constant(2));
        assert_eq!(raw(&[("y", 3)], &[]).differential_length(), DifferentialLength::AllZero);
    }

    #[test]
    fn chi_pi_counts() {
        assert_eq!(parse_model(EX23).unwrap().chi_pi(), -1);
        assert_eq!(raw(&[("y", 3)], &[]).chi_pi(), -1);
        assert_eq!(raw(&[("x", 2), ("y", 3)], &[("y", "x^2")]).chi_pi(), 0);
    }

    #[test]
    fn formal_dimensions() {
        assert_eq!(raw(&[("y", 3)], &[]).formal_dimension(), Ok(3));
        for n in 1..5u32 {
            let m = raw(&[("x", 2), ("y", 2 * n + 1)], &[("y", &format!("x^{}", n + 1))]);
            assert_eq!(m.formal_dimension(), Ok(2 * n as i64));
        }
        assert_eq!(parse_model(EX23).unwrap().formal_dimension(), Ok(81));
        assert_eq!(raw(&[("x", 2)], &[]).formal_dimension(), Err(Error::NotElliptic));
    }

    fn three_squares() -> SullivanModel {
        raw(
            &[("x1", 2), ("x2", 2), ("y1", 3), ("y2", 3), ("y3", 3)],
            &[("y1", "x1^2"), ("y2", "x1*x2"), ("y3", "x2^2")],
        )
    }

    #[test]
    fn quotient_kills_generators() {
        let q = three_squares().quotient_model(&["x1", "y1"]).unwrap();
        let names: Vec<_> = q.generators().iter().map(|g| g.name()).collect();
        assert_eq!(names, ["x2", "y2", "y3"]);
        assert!(q.image_of("y2").unwrap().is_zero());
        assert_eq!(q.image_of("y3").unwrap().to_string(), "x2^2");
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let m = three_squares();
        let q = m.quotient_model(&[]).unwrap();
        assert_eq!(q.generators(), m.generators());
        for i in 0..m.generators().len() {
            assert_eq!(q.image(i).to_string(), m.image(i).to_string());
        }
    }

    #[test]
    fn quotient_requires_differential_ideal() {
        let m = raw(&[("x", 2), ("y", 3)], &[("y", "x^2")]);
        assert_eq!(m.quotient_model(&["y"]), Err(Error::NotDifferentialIdeal("y".into())));
    }

    #[test]
    fn sub_models() {
        let m = parse_model(EX23).unwrap();
        let s = m.sub_model(&["x1", "x2", "y1"]).unwrap();
        assert_eq!(s.image_of("y1").unwrap().to_string(), "x1^5 + x1*x2^3");
        assert!(matches!(
            m.sub_model(&["x1", "y1"]),
            Err(Error::NotClosedUnderDifferential { .. })
        ));
        let all = m.sub_model(&["x1", "x2", "y1", "y2", "y3"]).unwrap();
        assert_eq!(all.generators(), m.generators());
    }
}
