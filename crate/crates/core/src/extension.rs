//! F₀-basis extensions of pure elliptic models of constant length.
//!
//! The recursion peels off the even generators of least degree together
//! with a regular sequence of odd differentials living over them, passes
//! to the quotient model, and repeats. The chosen odd elements keep their
//! original differentials, which lie in ΛX because the model is pure.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat, Element, Generator, GeneratorSet, Rational};
use crate::ellipticity::{is_elliptic_pure, Certificate, PureIdeal};
use crate::error::{Error, Result};
use crate::groebner::{is_regular_sequence, GroebnerBasis};
use crate::model::{DifferentialLength, SullivanModel};

/// A rational combination of odd generators, all of one degree when
/// homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCombination {
    terms: Vec<(String, Rational)>,
}

impl OddCombination {
    pub fn generator(name: impl Into<String>) -> Self {
        OddCombination {
            terms: vec![(name.into(), Rational::one())],
        }
    }

    /// Zero coefficients are dropped; repeated names are merged.
    pub fn new(terms: impl IntoIterator<Item = (String, Rational)>) -> Self {
        let mut merged: Vec<(String, Rational)> = Vec::new();
        for (name, c) in terms {
            match merged.iter_mut().find(|(n, _)| *n == name) {
                Some((_, acc)) => *acc += c,
                None => merged.push((name, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        OddCombination { terms: merged }
    }

    pub fn terms(&self) -> &[(String, Rational)] {
        &self.terms
    }

    /// The generator name when this is a single generator with coefficient 1.
    pub fn as_generator(&self) -> Option<&str> {
        match self.terms.as_slice() {
            [(name, c)] if c.is_one() => Some(name),
            _ => None,
        }
    }

    /// The common degree of the constituents, or `None` if they differ or
    /// the combination is empty.
    pub fn degree(&self, m: &SullivanModel) -> Result<Option<u32>> {
        let mut degrees = Vec::with_capacity(self.terms.len());
        for (name, _) in &self.terms {
            let idx = m.space().lookup(name)?;
            let g = m.space().get(idx);
            if g.is_even() {
                return Err(Error::UnknownGenerator(format!("{name} is not odd")));
            }
            degrees.push(g.degree());
        }
        Ok(match degrees.split_first() {
            Some((&d, rest)) if rest.iter().all(|&e| e == d) => Some(d),
            _ => None,
        })
    }

    pub fn to_element(&self, m: &SullivanModel) -> Result<Element> {
        let mut e = Element::zero(m.space());
        for (name, c) in &self.terms {
            e = &e + &m.var(name)?.scale(c);
        }
        Ok(e)
    }

    pub fn differential(&self, m: &SullivanModel) -> Result<Element> {
        Ok(m.apply_differential(&self.to_element(m)?))
    }
}

impl fmt::Display for OddCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (name, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{a}*{name}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for OddCombination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Enumeration knobs for the coefficient search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// 0 keeps the natural order; anything else shuffles within a height.
    pub seed: u64,
    pub max_height: u32,
    pub max_candidates: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_height: 6,
            max_candidates: 200_000,
        }
    }
}

/// The even generators of least degree and the odd generators that can
/// map into their polynomial ring.
#[derive(Debug, Clone)]
pub struct FirstStage {
    pub length: u32,
    pub x1: Vec<String>,
    pub y1: Vec<String>,
    /// Members of `y1` with nonzero differential, all of degree
    /// `length·|x1| − 1`.
    pub r: Vec<String>,
    /// Members of `y1` with zero differential.
    pub t: Vec<String>,
    /// The sub-model on `x1 ∪ y1`.
    pub model: SullivanModel,
}

fn constant_length(m: &SullivanModel) -> Result<u32> {
    match m.differential_length() {
        DifferentialLength::Constant(l) => Ok(l),
        DifferentialLength::AllZero if m.n_even() > 0 => Err(Error::NotElliptic),
        DifferentialLength::AllZero => Ok(2),
        other => Err(Error::NonConstantLength(other.lengths())),
    }
}

fn check_hypotheses(m: &SullivanModel) -> Result<u32> {
    if !m.is_pure() {
        return Err(Error::NotPure);
    }
    let l = constant_length(m)?;
    if !is_elliptic_pure(m)? {
        return Err(Error::NotElliptic);
    }
    Ok(l)
}

pub fn first_stage(m: &SullivanModel) -> Result<FirstStage> {
    let length = check_hypotheses(m)?;
    let evens = m.space().evens();
    let Some(d1) = evens.iter().map(Generator::degree).min() else {
        return Err(Error::NotEvenGenerator("no even generators".into()));
    };
    let bound = length * d1 - 1;
    let x1: Vec<String> = evens
        .iter()
        .filter(|g| g.degree() == d1)
        .map(|g| g.name().to_string())
        .collect();
    let y1: Vec<String> = m
        .space()
        .odds()
        .iter()
        .filter(|g| g.degree() <= bound)
        .map(|g| g.name().to_string())
        .collect();
    let (r, t): (Vec<String>, Vec<String>) = y1
        .iter()
        .cloned()
        .partition(|y| !m.image_of(y).map(Element::is_zero).unwrap_or(true));
    for y in &r {
        let degree = m.space().get(m.space().lookup(y)?).degree();
        if degree != bound {
            return Err(Error::VerificationFailed(format!(
                "{y} has nonzero differential in degree {degree}, expected {bound}"
            )));
        }
    }
    let keep: Vec<&str> = x1.iter().chain(&y1).map(String::as_str).collect();
    let model = m
        .sub_model(&keep)
        .map_err(|e| Error::VerificationFailed(format!("first stage is not closed: {e}")))?;
    if !is_elliptic_pure(&model)? {
        return Err(Error::VerificationFailed("first stage is not elliptic".into()));
    }
    Ok(FirstStage {
        length,
        x1,
        y1,
        r,
        t,
        model,
    })
}

/// Coefficient values of absolute value at most `h`, smallest first.
fn values_up_to(h: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=h {
        v.push(k);
        v.push(-k);
    }
    v
}

/// Positions (row, column) left free in the reduced echelon basis with the
/// given pivot columns.
fn free_positions(pivots: &[usize], ncols: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in p + 1..ncols {
            if !pivots.contains(&col) {
                out.push((row, col));
            }
        }
    }
    out
}

/// Calls `visit` on each integer echelon basis of a `p`-dimensional
/// subspace of Q^ncols whose free entries have maximum absolute value
/// exactly `h`. Stops when `visit` returns true.
fn for_each_echelon_basis(
    ncols: usize,
    p: usize,
    h: i64,
    rng: Option<&mut ChaCha8Rng>,
    mut visit: impl FnMut(&[Vec<i64>]) -> Result<bool>,
) -> Result<bool> {
    let mut pivot_sets: Vec<Vec<usize>> = (0..ncols).combinations(p).collect();
    let mut values = values_up_to(h);
    if let Some(rng) = rng {
        pivot_sets.shuffle(rng);
        values.shuffle(rng);
    }
    for pivots in pivot_sets {
        let free = free_positions(&pivots, ncols);
        if free.is_empty() {
            continue;
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            if digits.iter().any(|&d| values[d].abs() == h) {
                let mut rows = vec![vec![0i64; ncols]; p];
                for (row, &col) in pivots.iter().enumerate() {
                    rows[row][col] = 1;
                }
                for (&(row, col), &d) in free.iter().zip(&digits) {
                    rows[row][col] = values[d];
                }
                if visit(&rows)? {
                    return Ok(true);
                }
            }
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < values.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    Ok(false)
}

fn combination_from_row(names: &[String], row: &[i64]) -> OddCombination {
    OddCombination::new(names.iter().zip(row).map(|(n, &c)| (n.clone(), rat(c))))
}

/// Does `cands` cut ΛX1 down to a finite-dimensional quotient?
fn is_complete_intersection(model: &SullivanModel, cands: &[OddCombination]) -> Result<bool> {
    let dus: Vec<Element> = cands.iter().map(|u| u.differential(model)).try_collect()?;
    if dus.iter().any(Element::is_zero) {
        return Ok(false);
    }
    Ok(GroebnerBasis::new(model.space(), &dus)?.is_finite_dimensional())
}

/// `|x1|` homogeneous elements of span(R) whose differentials form a regular
/// sequence in ΛX1. Subsets of R are tried first, then integer echelon
/// combinations of growing height.
pub fn find_homogeneous_regular_subset(stage: &FirstStage, config: &SearchConfig) -> Result<Vec<OddCombination>> {
    let p = stage.x1.len();
    let model = &stage.model;
    if stage.r.len() < p {
        return Err(Error::SearchExhausted);
    }
    for subset in stage.r.iter().combinations(p) {
        let cands: Vec<OddCombination> = subset.into_iter().map(OddCombination::generator).collect();
        if is_complete_intersection(model, &cands)? {
            return Ok(cands);
        }
    }
    let mut rng = (config.seed != 0).then(|| ChaCha8Rng::seed_from_u64(config.seed));
    let mut examined = 0usize;
    let mut found = None;
    for h in 1..=i64::from(config.max_height) {
        let hit = for_each_echelon_basis(stage.r.len(), p, h, rng.as_mut(), |rows| {
            examined += 1;
            if examined > config.max_candidates {
                return Err(Error::SearchExhausted);
            }
            let cands: Vec<OddCombination> = rows.iter().map(|row| combination_from_row(&stage.r, row)).collect();
            if is_complete_intersection(model, &cands)? {
                found = Some(cands);
                return Ok(true);
            }
            Ok(false)
        })?;
        if hit {
            break;
        }
    }
    found.ok_or(Error::SearchExhausted)
}

/// One level of the recursion.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionLevel {
    pub level: usize,
    pub x1: Vec<String>,
    pub r: Vec<String>,
    pub chosen: Vec<OddCombination>,
    /// The model passed to the next level.
    pub quotient: String,
}

#[derive(Debug, Clone)]
pub struct ExtensionResult {
    /// One odd element per even generator, as combinations of the original
    /// odd generators.
    pub z_odd: Vec<OddCombination>,
    pub degrees: Vec<u32>,
    /// The F₀-model ΛZ; combination elements are named `u1`, `u2`, ….
    pub sub_model: SullivanModel,
    /// One per even generator, with witnesses expressed in ΛV.
    pub certificates: Vec<Certificate>,
    pub trace: Vec<ExtensionLevel>,
}

fn summary(m: &SullivanModel) -> String {
    let gens = m
        .generators()
        .iter()
        .map(|g| {
            let image = m.image_of(g.name()).expect("own generator");
            if image.is_zero() {
                format!("{}:{}", g.name(), g.degree())
            } else {
                format!("{}:{} -> {image}", g.name(), g.degree())
            }
        })
        .join(", ");
    format!("Λ({gens})")
}

fn extend_levels(
    m: &SullivanModel,
    config: &SearchConfig,
    trace: &mut Vec<ExtensionLevel>,
) -> Result<Vec<OddCombination>> {
    if m.n_even() == 0 {
        return Ok(Vec::new());
    }
    let stage = first_stage(m)?;
    let chosen = find_homogeneous_regular_subset(&stage, config)?;
    let kill: Vec<&str> = stage.x1.iter().chain(&stage.r).map(String::as_str).collect();
    let quotient = m.quotient_model(&kill)?;
    trace.push(ExtensionLevel {
        level: trace.len() + 1,
        x1: stage.x1.clone(),
        r: stage.r.clone(),
        chosen: chosen.clone(),
        quotient: summary(&quotient),
    });
    let mut rest = extend_levels(&quotient, config, trace)?;
    let mut all = chosen;
    all.append(&mut rest);
    Ok(all)
}

fn fresh_name(space: &GeneratorSet, taken: &[String], base: String) -> String {
    let mut name = base;
    while space.index_of(&name).is_some() || taken.contains(&name) {
        name.push('_');
    }
    name
}

/// The F₀-model ΛZ on all even generators of `m` and the given odd
/// elements, together with the inclusion of its generators into ΛV.
pub fn extension_model(m: &SullivanModel, z_odd: &[OddCombination]) -> Result<(SullivanModel, Vec<Element>)> {
    let mut decls: Vec<Generator> = m.space().evens().to_vec();
    let mut names: Vec<String> = Vec::new();
    for (i, u) in z_odd.iter().enumerate() {
        let degree = u
            .degree(m)?
            .ok_or_else(|| Error::VerificationFailed(format!("{u} is not homogeneous")))?;
        let name = match u.as_generator() {
            Some(g) => g.to_string(),
            None => fresh_name(m.space(), &names, format!("u{}", i + 1)),
        };
        decls.push(Generator::new(name.clone(), degree));
        names.push(name);
    }
    let space = GeneratorSet::new(decls)?;
    let mut assignments = Vec::new();
    for (name, u) in names.iter().zip(z_odd) {
        assignments.push((name.as_str(), u.differential(m)?.transport(&space)));
    }
    let sub = SullivanModel::new(format!("{}[F0]", m.name()), space.clone(), assignments)?;
    let mut inclusion = Vec::with_capacity(space.len());
    for g in space.generators() {
        match names.iter().position(|n| n == g.name()) {
            Some(i) => inclusion.push(z_odd[i].to_element(m)?),
            None => inclusion.push(m.var(g.name())?),
        }
    }
    Ok((sub, inclusion))
}

/// Constructs and verifies an F₀-basis extension ΛZ ↪ ΛV.
pub fn f0_extend(m: &SullivanModel) -> Result<ExtensionResult> {
    f0_extend_with(m, &SearchConfig::default())
}

pub fn f0_extend_with(m: &SullivanModel, config: &SearchConfig) -> Result<ExtensionResult> {
    m.validate()?;
    check_hypotheses(m)?;
    let mut trace = Vec::new();
    let z_odd = extend_levels(m, config, &mut trace)?;
    let report = verify_f0_extension(m, &z_odd)?;
    if !report.passed {
        return Err(Error::VerificationFailed(format!(
            "constructed extension fails {}",
            report.first_failure.map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    let (sub, inclusion) = extension_model(m, &z_odd)?;
    sub.validate()
        .map_err(|e| Error::VerificationFailed(format!("extension model invalid: {e}")))?;
    if sub.chi_pi() != 0 || !sub.is_pure() {
        return Err(Error::VerificationFailed("extension model is not an F0-model".into()));
    }
    let ideal = PureIdeal::new(&sub)?;
    if !ideal.is_elliptic() {
        return Err(Error::VerificationFailed("extension model is not elliptic".into()));
    }
    let mut certificates = Vec::new();
    for x in sub.space().evens() {
        let n = ideal.nilpotency_exponent(x.name())?;
        let local = ideal.certificate(x.name(), n)?;
        let cert = Certificate {
            generator: local.generator,
            exponent: local.exponent,
            witness: local.witness.map_generators(m.space(), &inclusion)?,
        };
        if !cert.verify(m) {
            return Err(Error::VerificationFailed(format!(
                "certificate for {}^{} does not transfer to the ambient model",
                cert.generator, cert.exponent
            )));
        }
        certificates.push(cert);
    }
    let degrees = z_odd
        .iter()
        .map(|u| u.degree(m).map(|d| d.unwrap_or(0)))
        .try_collect()?;
    Ok(ExtensionResult {
        z_odd,
        degrees,
        sub_model: sub,
        certificates,
        trace,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Homogeneity,
    Count,
    Closure,
    RegularSequence,
    FiniteQuotient,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Homogeneity => "homogeneity",
            CheckKind::Count => "count",
            CheckKind::Closure => "closure",
            CheckKind::RegularSequence => "regular-sequence",
            CheckKind::FiniteQuotient => "finite-quotient",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub first_failure: Option<CheckKind>,
    /// 1-based position at which the sequence stops being regular.
    pub failing_index: Option<usize>,
    /// f ∉ (du_1,…,du_{i−1}) with f·du_i ∈ (du_1,…,du_{i−1}).
    pub witness: Option<String>,
}

/// Runs every F₀-basis extension check on `z_odd` and reports all of them.
/// Errors only on malformed input (names that are not odd generators).
pub fn verify_f0_extension(m: &SullivanModel, z_odd: &[OddCombination]) -> Result<VerificationReport> {
    let mut checks = Vec::new();

    let mut mixed = Vec::new();
    for u in z_odd {
        if u.degree(m)?.is_none() {
            mixed.push(u.to_string());
        }
    }
    checks.push(CheckOutcome {
        check: CheckKind::Homogeneity,
        passed: mixed.is_empty(),
        detail: if mixed.is_empty() {
            "every element has a single degree".into()
        } else {
            format!("not homogeneous: {}", mixed.join("; "))
        },
    });

    let n = m.n_even();
    checks.push(CheckOutcome {
        check: CheckKind::Count,
        passed: z_odd.len() == n,
        detail: format!("{} odd elements for {n} even generators", z_odd.len()),
    });

    let dus: Vec<Element> = z_odd.iter().map(|u| u.differential(m)).try_collect()?;
    let open: Vec<String> = z_odd
        .iter()
        .zip(&dus)
        .filter(|(_, du)| !du.is_even_only())
        .map(|(u, _)| u.to_string())
        .collect();
    let closed = open.is_empty();
    checks.push(CheckOutcome {
        check: CheckKind::Closure,
        passed: closed,
        detail: if closed {
            "every differential lies in ΛX".into()
        } else {
            format!("differential leaves ΛX: {}", open.join("; "))
        },
    });

    let (mut failing_index, mut witness) = (None, None);
    if closed {
        if dus.iter().any(|d| !d.constant_term().is_zero()) {
            checks.push(CheckOutcome {
                check: CheckKind::RegularSequence,
                passed: false,
                detail: "a differential has a constant term".into(),
            });
        } else {
            let check = is_regular_sequence(m.space(), &dus)?;
            failing_index = check.failing_index;
            witness = check.witness.as_ref().map(Element::to_string);
            checks.push(CheckOutcome {
                check: CheckKind::RegularSequence,
                passed: check.regular,
                detail: match (&check.failing_index, &check.witness) {
                    (Some(i), Some(w)) => format!(
                        "({w})·d({}) lies in the ideal of the preceding differentials",
                        z_odd[i - 1]
                    ),
                    _ => "the differentials form a regular sequence".into(),
                },
            });
        }
        let finite = GroebnerBasis::new(m.space(), &dus)?.is_finite_dimensional();
        checks.push(CheckOutcome {
            check: CheckKind::FiniteQuotient,
            passed: finite,
            detail: if finite {
                "ΛX/(dZ) is finite-dimensional".into()
            } else {
                "ΛX/(dZ) is infinite-dimensional".into()
            },
        });
    } else {
        for check in [CheckKind::RegularSequence, CheckKind::FiniteQuotient] {
            checks.push(CheckOutcome {
                check,
                passed: false,
                detail: "skipped: closure failed".into(),
            });
        }
    }

    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.check);
    Ok(VerificationReport {
        passed: first_failure.is_none(),
        checks,
        first_failure,
        failing_index,
        witness,
    })
}

/// A candidate rejected (or accepted) by the exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchTrial {
    pub members: Vec<OddCombination>,
    pub passed: bool,
    pub first_failure: Option<CheckKind>,
    pub failing_index: Option<usize>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub found: Option<Vec<OddCombination>>,
    /// Every subset of odd generators of the right size, with its verdict.
    pub subsets: Vec<SearchTrial>,
    pub combinations_examined: usize,
    /// True when the candidates tried cover every graded subspace of the
    /// right dimension, so `found == None` is a proof of non-existence.
    pub exhaustive: bool,
}

/// Grid bases inside one degree class: for each class either the whole
/// class, nothing, or echelon integer bases of the requested dimension.
fn class_bases(names: &[String], k: usize, h: i64) -> Result<Vec<Vec<OddCombination>>> {
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    if k == names.len() {
        return Ok(vec![names.iter().map(OddCombination::generator).collect()]);
    }
    let mut out = Vec::new();
    for height in 0..=h {
        if height == 0 {
            for subset in names.iter().combinations(k) {
                out.push(subset.into_iter().map(OddCombination::generator).collect());
            }
            continue;
        }
        for_each_echelon_basis(names.len(), k, height, None, |rows| {
            out.push(rows.iter().map(|r| combination_from_row(names, r)).collect());
            Ok(false)
        })?;
    }
    Ok(out)
}

/// Searches graded subspaces of the odd generators for an F₀-basis
/// extension: every subset first, then integer combinations with
/// coefficients in {−2,…,2} inside each degree.
pub fn exhaustive_homogeneous_search(m: &SullivanModel, max_candidates: usize) -> Result<SearchOutcome> {
    if !m.is_pure() {
        return Err(Error::NotPure);
    }
    if !is_elliptic_pure(m)? {
        return Err(Error::NotElliptic);
    }
    let n = m.n_even();
    let odd_names: Vec<String> = m.space().odds().iter().map(|g| g.name().to_string()).collect();

    let mut subsets = Vec::new();
    let mut found = None;
    for subset in odd_names.iter().combinations(n) {
        let members: Vec<OddCombination> = subset.into_iter().map(OddCombination::generator).collect();
        let report = verify_f0_extension(m, &members)?;
        if report.passed && found.is_none() {
            found = Some(members.clone());
        }
        subsets.push(SearchTrial {
            members,
            passed: report.passed,
            first_failure: report.first_failure,
            failing_index: report.failing_index,
            witness: report.witness,
        });
    }

    let mut classes: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    for g in m.space().odds() {
        classes.entry(g.degree()).or_default().push(g.name().to_string());
    }
    let classes: Vec<Vec<String>> = classes.into_values().collect();
    let assignments: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| 0..=c.len())
        .multi_cartesian_product()
        .filter(|ks| ks.iter().sum::<usize>() == n)
        .collect();
    let exhaustive = assignments
        .iter()
        .all(|ks| ks.iter().zip(&classes).all(|(&k, c)| k == 0 || k == c.len()));

    let mut examined = 0usize;
    if found.is_none() && !exhaustive {
        let mut per_assignment = Vec::new();
        let mut total = 0usize;
        for ks in &assignments {
            if ks.iter().zip(&classes).all(|(&k, c)| k == 0 || k == c.len()) {
                continue;
            }
            let bases: Vec<Vec<Vec<OddCombination>>> =
                ks.iter().zip(&classes).map(|(&k, c)| class_bases(c, k, 2)).try_collect()?;
            let count = bases.iter().map(Vec::len).try_fold(1usize, |acc, n| acc.checked_mul(n));
            total = count.and_then(|c| total.checked_add(c)).unwrap_or(usize::MAX);
            if total > max_candidates {
                return Err(Error::SearchSpaceTooLarge(total));
            }
            per_assignment.push(bases);
        }
        'outer: for bases in per_assignment {
            for choice in bases.iter().map(|b| b.iter()).multi_cartesian_product() {
                let members: Vec<OddCombination> = choice.into_iter().flatten().cloned().collect();
                examined += 1;
                if !is_complete_intersection(m, &members)? {
                    continue;
                }
                if verify_f0_extension(m, &members)?.passed {
                    found = Some(members);
                    break 'outer;
                }
            }
        }
    }
    Ok(SearchOutcome {
        found,
        subsets,
        combinations_examined: examined,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_model;

    const EX23: &str = "even x1 : 6\neven x2 : 8\nodd y1 : 29 = x1^5 + x1*x2^3\nodd y2 : 31 = x1^4*x2 + x2^4\nodd y3 : 33 = x1^3*x2^2\n";
    const STAIR: &str = "even x1 : 2\neven x2 : 4\nodd y1 : 3 = x1^2\nodd y2 : 5 = x1*x2\nodd y3 : 7 = x2^2\n";

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn first_stage_filters_by_degree() {
        let m = parse_model(STAIR).unwrap();
        let s = first_stage(&m).unwrap();
        assert_eq!(s.length, 2);
        assert_eq!(s.x1, names(&["x1"]));
        assert_eq!(s.y1, names(&["y1"]));
        assert_eq!(s.r, names(&["y1"]));
        assert!(s.t.is_empty());
    }

    #[test]
    fn first_stage_rejects_mixed_length() {
        let m = parse_model(EX23).unwrap();
        assert_eq!(first_stage(&m).unwrap_err(), Error::NonConstantLength(vec![4, 5]));
    }

    #[test]
    fn single_degree_takes_all_evens() {
        let m = parse_model(
            "even x1 : 2\neven x2 : 2\nodd y1 : 3 = x1^2\nodd y2 : 3 = x1*x2\nodd y3 : 3 = x2^2\n",
        )
        .unwrap();
        let s = first_stage(&m).unwrap();
        assert_eq!(s.x1, names(&["x1", "x2"]));
        let chosen = find_homogeneous_regular_subset(&s, &SearchConfig::default()).unwrap();
        assert_eq!(chosen, vec![OddCombination::generator("y1"), OddCombination::generator("y3")]);
    }

    #[test]
    fn combinations_when_no_subset_works() {
        // pairwise common linear factors, no common factor overall
        let m = parse_model("even a : 2\neven b : 2\nodd y1 : 3 = a*b\nodd y2 : 3 = a^2 + a*b\nodd y3 : 3 = a*b + b^2\n")
            .unwrap();
        let s = first_stage(&m).unwrap();
        let chosen = find_homogeneous_regular_subset(&s, &SearchConfig::default()).unwrap();
        assert_eq!(chosen.len(), 2);
        assert!(chosen.iter().any(|u| u.as_generator().is_none()));
        assert!(is_complete_intersection(&s.model, &chosen).unwrap());
        let res = f0_extend(&m).unwrap();
        assert!(verify_f0_extension(&m, &res.z_odd).unwrap().passed);
        assert!(res.certificates.iter().all(|c| c.verify(&m)));
        let seeded = SearchConfig { seed: 7, ..SearchConfig::default() };
        let other = find_homogeneous_regular_subset(&s, &seeded).unwrap();
        assert!(is_complete_intersection(&s.model, &other).unwrap());
    }

    #[test]
    fn exhausted_when_span_too_small() {
        let m = parse_model("even a : 2\neven b : 2\nodd y1 : 3 = a^2\nodd y2 : 3 = b^2\n").unwrap();
        let mut s = first_stage(&m).unwrap();
        s.r.truncate(1);
        assert_eq!(
            find_homogeneous_regular_subset(&s, &SearchConfig::default()),
            Err(Error::SearchExhausted)
        );
    }

    #[test]
    fn staircase_extension() {
        let m = parse_model(STAIR).unwrap();
        let res = f0_extend(&m).unwrap();
        assert_eq!(res.z_odd, vec![OddCombination::generator("y1"), OddCombination::generator("y3")]);
        assert_eq!(res.trace.len(), 2);
        assert_eq!(res.certificates.len(), 2);
        assert!(res.certificates.iter().all(|c| c.verify(&m)));
    }

    #[test]
    fn f0_model_keeps_everything() {
        let m = parse_model("even x : 2\nodd y : 7 = x^4\n").unwrap();
        let res = f0_extend(&m).unwrap();
        assert_eq!(res.z_odd, vec![OddCombination::generator("y")]);
        assert_eq!(res.certificates[0].exponent, 4);
    }

    #[test]
    fn example_rejected_by_extension() {
        let m = parse_model(EX23).unwrap();
        assert_eq!(f0_extend(&m).unwrap_err(), Error::NonConstantLength(vec![4, 5]));
    }

    #[test]
    fn verification_reports_witness() {
        let m = parse_model(EX23).unwrap();
        let r = verify_f0_extension(&m, &[OddCombination::generator("y1"), OddCombination::generator("y2")]).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure, Some(CheckKind::RegularSequence));
        assert_eq!(r.failing_index, Some(2));
        assert_eq!(r.witness.as_deref(), Some("x1"));
    }

    #[test]
    fn verification_reports_both_facts() {
        let m = parse_model(EX23).unwrap();
        let sum = OddCombination::new(names(&["y1", "y2"]).into_iter().map(|n| (n, rat(1))));
        let r = verify_f0_extension(&m, &[OddCombination::generator("y3"), sum]).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure, Some(CheckKind::Homogeneity));
        let regular = r.checks.iter().find(|c| c.check == CheckKind::RegularSequence).unwrap();
        assert!(regular.passed);
    }

    #[test]
    fn search_on_example_finds_nothing() {
        let m = parse_model(EX23).unwrap();
        let out = exhaustive_homogeneous_search(&m, 10_000).unwrap();
        assert!(out.found.is_none());
        assert!(out.exhaustive);
        assert_eq!(out.subsets.len(), 3);
        assert!(out.subsets.iter().all(|t| !t.passed));
    }

    #[test]
    fn search_on_staircase() {
        let m = parse_model(STAIR).unwrap();
        let out = exhaustive_homogeneous_search(&m, 10_000).unwrap();
        assert_eq!(out.found, Some(vec![OddCombination::generator("y1"), OddCombination::generator("y3")]));
    }

    #[test]
    fn rendering() {
        let c = OddCombination::new(vec![("y1".to_string(), rat(2)), ("y2".to_string(), rat(-1))]);
        assert_eq!(c.to_string(), "2*y1 - y2");
        assert_eq!(OddCombination::generator("y").to_string(), "y");
    }
}
