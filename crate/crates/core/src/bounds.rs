//! Upper bounds for rational LS category and topological complexity of
//! elliptic models of constant length.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ellipticity::{is_elliptic, is_elliptic_pure};
use crate::error::{Error, Result};
use crate::model::{DifferentialLength, SullivanModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatProvenance {
    /// Quadratic differential: cat = dim V^odd.
    Coformal,
    /// Constant length l: cat = dim V^odd + (l − 2)·dim V^even.
    LechugaMurillo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TcProvenance {
    /// Pure model: TC ≤ 2·cat + χ_π.
    #[serde(rename = "thm-3.1")]
    Pure,
    /// Pure coformal model: TC ≤ dim V.
    #[serde(rename = "cor-3.2")]
    PureCoformal,
    /// Model containing a pure sub-model with the same even part.
    #[serde(rename = "thm-3.3")]
    Extension,
    /// Coformal case of the previous one: TC ≤ dim V.
    #[serde(rename = "cor-3.5")]
    ExtensionCoformal,
}

impl TcProvenance {
    pub fn tag(self) -> &'static str {
        match self {
            TcProvenance::Pure => "thm-3.1",
            TcProvenance::PureCoformal => "cor-3.2",
            TcProvenance::Extension => "thm-3.3",
            TcProvenance::ExtensionCoformal => "cor-3.5",
        }
    }
}

impl CatProvenance {
    pub fn tag(self) -> &'static str {
        match self {
            CatProvenance::Coformal => "coformal",
            CatProvenance::LechugaMurillo => "lechuga-murillo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatEstimate {
    pub value: u32,
    pub provenance: CatProvenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub chi_pi: i64,
    pub cat: Option<u32>,
    pub cat_provenance: Option<CatProvenance>,
    pub tc_upper: Option<i64>,
    pub provenance: Option<TcProvenance>,
    pub dim_v: usize,
    pub applicability_notes: Vec<String>,
}

fn length_of(m: &SullivanModel) -> Result<u32> {
    match m.differential_length() {
        DifferentialLength::Constant(l) => Ok(l),
        DifferentialLength::AllZero => Ok(2),
        other => Err(Error::NonConstantLength(other.lengths())),
    }
}

/// cat ≤ dim V^odd + (l − 2)·dim V^even for an elliptic model whose
/// differential has constant word length l.
pub fn cat_estimate(m: &SullivanModel) -> Result<CatEstimate> {
    let l = length_of(m)?;
    if !is_elliptic(m)? {
        return Err(Error::NotElliptic);
    }
    let value = m.n_odd() as u32 + (l - 2) * m.n_even() as u32;
    let provenance = if l == 2 {
        CatProvenance::Coformal
    } else {
        CatProvenance::LechugaMurillo
    };
    Ok(CatEstimate { value, provenance })
}

fn coformal_identity(tc: i64, m: &SullivanModel) -> Result<()> {
    let dim = m.generators().len() as i64;
    if tc != dim {
        return Err(Error::VerificationFailed(format!(
            "coformal bound {tc} differs from dim V = {dim}"
        )));
    }
    Ok(())
}

/// TC ≤ 2·cat + χ_π for a pure elliptic model of constant length.
pub fn tc_upper_bound(m: &SullivanModel) -> Result<BoundReport> {
    if !m.is_pure() {
        return Err(Error::NotPure);
    }
    let cat = cat_estimate(m)?;
    let chi_pi = m.chi_pi();
    let tc = 2 * i64::from(cat.value) + chi_pi;
    let mut notes = vec!["pure elliptic model of constant length".to_string()];
    let provenance = if cat.provenance == CatProvenance::Coformal {
        coformal_identity(tc, m)?;
        notes.push("coformal: the bound equals dim V".into());
        TcProvenance::PureCoformal
    } else {
        TcProvenance::Pure
    };
    Ok(BoundReport {
        chi_pi,
        cat: Some(cat.value),
        cat_provenance: Some(cat.provenance),
        tc_upper: Some(tc),
        provenance: Some(provenance),
        dim_v: m.generators().len(),
        applicability_notes: notes,
    })
}

/// TC ≤ 2·cat + χ_π for an elliptic model of constant length containing a
/// pure elliptic sub-model on `pure_sub` with the same even generators.
pub fn tc_upper_bound_nonpure(m: &SullivanModel, pure_sub: &[&str]) -> Result<BoundReport> {
    let evens: BTreeSet<&str> = m.space().evens().iter().map(|g| g.name()).collect();
    let mut kept = BTreeSet::new();
    for name in pure_sub {
        let idx = m.space().lookup(name)?;
        if m.space().is_even(idx) {
            kept.insert(*name);
        }
    }
    let missing: Vec<String> = evens.difference(&kept).map(|s| s.to_string()).collect();
    if !missing.is_empty() {
        return Err(Error::EvenMismatch(missing));
    }
    let sub = m.sub_model(pure_sub).map_err(|e| match e {
        Error::NotClosedUnderDifferential { generator, image } => {
            Error::SubModelNotClosed(format!("d{generator} = {image}"))
        }
        other => other,
    })?;
    if !sub.is_pure() {
        return Err(Error::SubModelNotPure);
    }
    let cat = cat_estimate(m)?;
    if !is_elliptic_pure(&sub)? {
        return Err(Error::NotElliptic);
    }
    let mut notes = vec![
        "sub-model closed under d".to_string(),
        "sub-model pure and elliptic".to_string(),
        "sub-model has the same even generators".to_string(),
    ];
    if sub.validate().is_err() {
        notes.push("warning: sub-model is not minimal".into());
    }
    let chi_pi = m.chi_pi();
    let tc = 2 * i64::from(cat.value) + chi_pi;
    let provenance = if cat.provenance == CatProvenance::Coformal {
        coformal_identity(tc, m)?;
        notes.push("coformal: the bound equals dim V".into());
        TcProvenance::ExtensionCoformal
    } else {
        TcProvenance::Extension
    };
    Ok(BoundReport {
        chi_pi,
        cat: Some(cat.value),
        cat_provenance: Some(cat.provenance),
        tc_upper: Some(tc),
        provenance: Some(provenance),
        dim_v: m.generators().len(),
        applicability_notes: notes,
    })
}
