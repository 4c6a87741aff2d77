use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Weighted-degree reverse lexicographic order on exponent vectors.
///
/// Monomials are compared by weighted degree first (weights are the
/// topological degrees of the even generators); ties are broken reverse
/// lexicographically, looking at the variables in `tie_break` from last to
/// first, where a smaller exponent wins. The default tie-break is the
/// generator order, so x1 > x2 > … > xn among equal-degree variables.
///
/// An order may additionally carry a leading elimination block, compared
/// lexicographically before anything else. That block is only used
/// internally for ideal quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u32>,
    tie_break: Vec<usize>,
    elim: usize,
}

impl MonomialOrder {
    pub fn weighted_grevlex(weights: Vec<u32>) -> Self {
        let tie_break = (0..weights.len()).collect();
        MonomialOrder {
            weights,
            tie_break,
            elim: 0,
        }
    }

    /// Same weights, with the variables ranked by `priority` (highest first)
    /// for tie-breaking.
    pub fn with_tie_break(&self, priority: Vec<usize>) -> Result<Self> {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        let expected: Vec<usize> = (self.elim..self.weights.len()).collect();
        if sorted != expected {
            return Err(Error::VerificationFailed(format!(
                "tie-break {priority:?} is not a permutation of the variables"
            )));
        }
        Ok(MonomialOrder {
            weights: self.weights.clone(),
            tie_break: priority,
            elim: self.elim,
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn tie_break(&self) -> &[usize] {
        &self.tie_break
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    /// This order on one extra variable (index 0, weight 0) that dominates
    /// every monomial free of it.
    pub(crate) fn with_elimination_variable(&self) -> Self {
        assert_eq!(self.elim, 0);
        let mut weights = vec![0];
        weights.extend_from_slice(&self.weights);
        MonomialOrder {
            weights,
            tie_break: self.tie_break.iter().map(|i| i + 1).collect(),
            elim: 1,
        }
    }

    pub fn weighted_degree(&self, e: &[u32]) -> u64 {
        e.iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for i in 0..self.elim {
            if a[i] != b[i] {
                return a[i].cmp(&b[i]);
            }
        }
        let by_degree = self.weighted_degree(a).cmp(&self.weighted_degree(b));
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for &i in self.tie_break.iter().rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }
}
