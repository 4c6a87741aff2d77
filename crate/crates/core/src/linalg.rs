//! Exact rank of sparse integer matrices by fraction-free elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type SparseRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// `a·r − b·p` for rows sorted by column.
fn combine(r: &SparseRow, a: &BigInt, p: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, &r[i].1 * a));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(&p[j].1 * b)));
            j += 1;
        } else {
            let v = &r[i].1 * a - &p[j].1 * b;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over Q of the matrix whose rows are given sparsely. Entries of a
/// row must have distinct columns; they need not be sorted.
pub(crate) fn rank(mut rows: Vec<SparseRow>) -> usize {
    for r in rows.iter_mut() {
        r.retain(|(_, c)| !c.is_zero());
        r.sort_by_key(|(c, _)| *c);
    }
    rows.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut r in rows {
        while let Some((col, lead)) = r.first().cloned() {
            let Some(p) = pivots.get(&col) else {
                make_primitive(&mut r);
                pivots.insert(col, r);
                break;
            };
            let g = lead.gcd(&p[0].1);
            r = combine(&r, &(&p[0].1 / &g), p, &(&lead / &g));
            make_primitive(&mut r);
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SparseRow {
        v.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, BigInt::from(c)))
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(vec![row(&[1, 2, 3]), row(&[4, 5, 6]), row(&[7, 8, 9])]), 2);
        assert_eq!(rank(vec![row(&[2, 0, 0]), row(&[0, 3, 0]), row(&[0, 0, 5])]), 3);
        assert_eq!(rank(vec![row(&[0, 0]), row(&[0, 0])]), 0);
    }
}
