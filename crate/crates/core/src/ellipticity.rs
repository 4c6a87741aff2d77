//! Ellipticity of pure models, nilpotency exponents, exactness
//! certificates, and the degreewise cohomology oracle.
//!
//! For a pure model d(Σ m_j y_j) = Σ m_j dy_j, so x^N is exact exactly when
//! x^N lies in the ideal (dY) ⊂ ΛX, and the model is elliptic exactly when
//! ΛX/(dY) is finite-dimensional. The oracle computes H* by brute force
//! and is only used to cross-check these answers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{rank, SparseRow};
use crate::model::SullivanModel;

/// dξ = x^N, with ξ ∈ ΛX ⊗ Λ¹Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub generator: String,
    pub exponent: u32,
    pub witness: Element,
}

impl Certificate {
    pub fn verify(&self, m: &SullivanModel) -> bool {
        match m.var(&self.generator) {
            Ok(x) => m.apply_differential(&self.witness) == x.pow(self.exponent),
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateView {
    pub generator: String,
    pub exponent: u32,
    pub witness: String,
}

impl From<&Certificate> for CertificateView {
    fn from(c: &Certificate) -> Self {
        CertificateView {
            generator: c.generator.clone(),
            exponent: c.exponent,
            witness: c.witness.to_string(),
        }
    }
}

/// The ideal (dY) of a pure model, kept around for repeated queries.
pub struct PureIdeal<'m> {
    model: &'m SullivanModel,
    ideal: GroebnerBasis,
    /// Global indices of the odd generators whose differentials generate
    /// the ideal, aligned with `ideal.inputs()`.
    sources: Vec<usize>,
}

impl<'m> PureIdeal<'m> {
    pub fn new(model: &'m SullivanModel) -> Result<Self> {
        if !model.is_pure() {
            return Err(Error::NotPure);
        }
        let n_even = model.n_even();
        let sources: Vec<usize> = (n_even..model.generators().len())
            .filter(|&i| !model.image(i).is_zero())
            .collect();
        let gens: Vec<Element> = sources.iter().map(|&i| model.image(i).clone()).collect();
        let ideal = GroebnerBasis::tracked(model.space(), &gens)?;
        Ok(PureIdeal {
            model,
            ideal,
            sources,
        })
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.ideal
    }

    pub fn is_elliptic(&self) -> bool {
        self.ideal.is_finite_dimensional()
    }

    fn even_generator(&self, name: &str) -> Result<Element> {
        let idx = self.model.space().lookup(name)?;
        if !self.model.space().is_even(idx) {
            return Err(Error::NotEvenGenerator(name.to_string()));
        }
        Ok(Element::generator(self.model.space(), idx))
    }

    /// Least N ≥ 1 with x^N ∈ (dY).
    pub fn nilpotency_exponent(&self, x: &str) -> Result<u32> {
        let gen = self.even_generator(x)?;
        if !self.is_elliptic() {
            return Err(Error::NotElliptic);
        }
        // a pure power outside the ideal is a standard monomial, so the
        // exponent cannot exceed the quotient dimension
        let cap = self.ideal.quotient_dimension()? + 1;
        let mut power = gen.clone();
        for n in 1..=cap {
            if self.ideal.member(&power)? {
                return Ok(n as u32);
            }
            power = &power * &gen;
        }
        Err(Error::VerificationFailed(format!(
            "{x}^{cap} escaped the ideal although the quotient is finite"
        )))
    }

    /// ξ with dξ = x^N, read off from cofactors over the odd differentials.
    pub fn certificate(&self, x: &str, exponent: u32) -> Result<Certificate> {
        let gen = self.even_generator(x)?;
        let target = gen.pow(exponent);
        let not_exact = || Error::NotExact {
            generator: x.to_string(),
            exponent,
        };
        let cofactors = self.ideal.lift(&target)?.ok_or_else(not_exact)?;
        let space = self.model.space();
        let degree = target.degree().value().unwrap_or(0);
        let mut witness = Element::zero(space);
        for (c, &src) in cofactors.iter().zip(&self.sources) {
            let image_degree = self.model.image(src).degree().value().expect("homogeneous differential");
            let Some(d) = degree.checked_sub(image_degree) else {
                continue;
            };
            // cofactor junk outside this degree cancels in the sum
            let c = c.homogeneous_component(d);
            witness = &witness + &(&c * &Element::generator(space, src));
        }
        let cert = Certificate {
            generator: x.to_string(),
            exponent,
            witness,
        };
        if !cert.verify(self.model) {
            return Err(Error::VerificationFailed(format!(
                "d({}) != {x}^{exponent}",
                cert.witness
            )));
        }
        Ok(cert)
    }
}

/// Ellipticity of a pure model: ΛX/(dY) is finite-dimensional.
pub fn is_elliptic_pure(m: &SullivanModel) -> Result<bool> {
    Ok(PureIdeal::new(m)?.is_elliptic())
}

/// Ellipticity of any model of finite type, decided on its associated pure
/// model.
pub fn is_elliptic(m: &SullivanModel) -> Result<bool> {
    if m.is_pure() {
        is_elliptic_pure(m)
    } else {
        is_elliptic_pure(&m.associated_pure())
    }
}

pub fn nilpotency_exponent(m: &SullivanModel, x: &str) -> Result<u32> {
    PureIdeal::new(m)?.nilpotency_exponent(x)
}

pub fn exactness_certificate(m: &SullivanModel, x: &str, exponent: u32) -> Result<Certificate> {
    PureIdeal::new(m)?.certificate(x, exponent)
}

fn differential_rows(m: &SullivanModel, source: &[Monomial], target: &[Monomial]) -> Vec<SparseRow> {
    let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let space = m.space();
    source
        .iter()
        .map(|b| {
            let image = m.apply_differential(&Element::monomial(space, b.clone(), One::one()));
            let mut den = BigInt::one();
            for (_, c) in image.terms() {
                den = den.lcm(c.denom());
            }
            image
                .terms()
                .map(|(mono, c)| (index[mono], c.numer() * (&den / c.denom())))
                .collect()
        })
        .collect()
}

/// dim H^k(ΛV, d) for 0 ≤ k ≤ `up_to`, by exact linear algebra on the
/// cochains in each degree.
pub fn cohomology_dims(m: &SullivanModel, up_to: u32) -> Vec<usize> {
    let bases: Vec<Vec<Monomial>> = (0..=up_to + 1)
        .into_par_iter()
        .map(|k| m.basis_of_degree(k))
        .collect();
    let ranks: Vec<usize> = (0..=up_to as usize)
        .into_par_iter()
        .map(|k| rank(differential_rows(m, &bases[k], &bases[k + 1])))
        .collect();
    (0..=up_to as usize)
        .map(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            bases[k].len() - ranks[k] - incoming
        })
        .collect()
}
