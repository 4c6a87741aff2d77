//! Buchberger's algorithm over integer polynomials.
//!
//! Basis elements are kept primitive over Z and reduced fraction-free; the
//! finished basis is made monic over Q. Pairs are pruned with the
//! Gebauer–Möller update and chosen by the normal strategy (smallest
//! weighted lcm degree, then by insertion order). Optionally every basis
//! element carries its representation in terms of the input polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::order::MonomialOrder;
use super::poly::{coprime, divides, lcm, sub_exp, Exp, Poly};

type Lift = Vec<Poly<BigRational>>;

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    degree: u64,
}

pub(crate) struct Output {
    pub basis: Vec<Poly<BigRational>>,
    pub lifts: Option<Vec<Lift>>,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    n_inputs: usize,
    polys: Vec<Poly<BigInt>>,
    lifts: Option<Vec<Lift>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

fn scale_lift(lift: &Lift, c: &BigRational) -> Lift {
    lift.iter().map(|p| p.scale(c)).collect()
}

/// `a·l1 − b·x^shift·l2`
fn combine_lifts(l1: &Lift, a: &BigInt, b: &BigInt, shift: &[u32], l2: &Lift, order: &MonomialOrder) -> Lift {
    let a = BigRational::from_integer(a.clone());
    let b = -BigRational::from_integer(b.clone());
    l1.iter()
        .zip(l2)
        .map(|(p, q)| p.combine(&a, &b, shift, q, order))
        .collect()
}

impl<'a> Engine<'a> {
    fn divisor_of(&self, e: &[u32], skip: Option<usize>) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&k| Some(k) != skip && divides(self.polys[k].lm(), e))
    }

    /// Fully reduces `p` (from position `start` on) against the active set.
    fn reduce(&self, mut p: Poly<BigInt>, mut lift: Option<Lift>, start: usize, skip: Option<usize>) -> (Poly<BigInt>, Option<Lift>) {
        let mut pos = start;
        let mut steps = 0u32;
        while pos < p.terms.len() {
            let Some(k) = self.divisor_of(&p.terms[pos].0, skip) else {
                pos += 1;
                continue;
            };
            let g = &self.polys[k];
            let c = &p.terms[pos].1;
            let gcd = c.gcd(g.lc());
            let a = g.lc() / &gcd;
            let b = c / &gcd;
            let shift = sub_exp(&p.terms[pos].0, g.lm());
            p = p.combine(&a, &-b.clone(), &shift, g, self.order);
            if let (Some(l), Some(lifts)) = (lift.as_mut(), self.lifts.as_ref()) {
                *l = combine_lifts(l, &a, &b, &shift, &lifts[k], self.order);
            }
            steps += 1;
            if steps.is_multiple_of(8) {
                let content = p.make_primitive();
                if let Some(l) = lift.as_mut() {
                    *l = scale_lift(l, &BigRational::new(BigInt::one(), content));
                }
            }
        }
        let content = p.make_primitive();
        if let Some(l) = lift.as_mut() {
            *l = scale_lift(l, &BigRational::new(BigInt::one(), content));
        }
        (p, lift)
    }

    fn push(&mut self, p: Poly<BigInt>, lift: Option<Lift>) -> usize {
        self.polys.push(p);
        if let (Some(lifts), Some(l)) = (self.lifts.as_mut(), lift) {
            lifts.push(l);
        }
        self.polys.len() - 1
    }

    /// Gebauer–Möller installation of the new element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let mut candidates: Vec<(usize, Exp)> = self
            .active
            .iter()
            .map(|&g| (g, lcm(&lm_h, self.polys[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Exp)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1) = candidates.remove(0);
            let disjoint = coprime(&lm_h, self.polys[g1].lm());
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| divides(l2, &l1));
            if disjoint || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<(usize, Exp)> = kept
            .into_iter()
            .filter(|(g, _)| !coprime(&lm_h, self.polys[*g].lm()))
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides(&lm_h, &p.lcm)
                && lcm(polys[p.i].lm(), &lm_h) != p.lcm
                && lcm(polys[p.j].lm(), &lm_h) != p.lcm)
        });
        for (g, l) in new_pairs {
            let degree = self.order.weighted_degree(&l);
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm: l,
                degree,
            });
        }
        let lm_polys = &self.polys;
        self.active.retain(|&g| !divides(&lm_h, lm_polys[g].lm()));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.degree, p.j, p.i))?
            .0;
        Some(self.pairs.swap_remove(best))
    }

    fn s_poly(&self, pair: &Pair) -> (Poly<BigInt>, Option<Lift>) {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let gcd = f.lc().gcd(g.lc());
        let a = g.lc() / &gcd;
        let b = f.lc() / &gcd;
        let sf = sub_exp(&pair.lcm, f.lm());
        let sg = sub_exp(&pair.lcm, g.lm());
        let s = f
            .combine(&BigInt::zero(), &a, &sf, f, self.order)
            .combine(&BigInt::one(), &-b.clone(), &sg, g, self.order);
        let lift = self.lifts.as_ref().map(|lifts| {
            let zero = vec![Poly::zero(); self.n_inputs];
            let lf = combine_lifts(&zero, &BigInt::one(), &-a.clone(), &sf, &lifts[pair.i], self.order);
            combine_lifts(&lf, &BigInt::one(), &b, &sg, &lifts[pair.j], self.order)
        });
        (s, lift)
    }

    fn run(mut self, inputs: &[Poly<BigRational>]) -> Output {
        for (k, f) in inputs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let (p, factor) = f.to_integer();
            let lift = self.lifts.as_ref().map(|_| {
                let mut l = vec![Poly::zero(); self.n_inputs];
                l[k] = Poly::monomial(vec![0; f.lm().len()], factor.clone());
                l
            });
            let (h, lift) = self.reduce(p, lift, 0, None);
            if !h.is_zero() {
                let idx = self.push(h, lift);
                self.update(idx);
            }
        }
        while let Some(pair) = self.next_pair() {
            let (s, lift) = self.s_poly(&pair);
            let (h, lift) = self.reduce(s, lift, 0, None);
            if !h.is_zero() {
                let idx = self.push(h, lift);
                self.update(idx);
            }
        }
        self.finish()
    }

    /// Inter-reduces the active set and normalizes to monic rationals,
    /// sorted by ascending leading monomial.
    fn finish(mut self) -> Output {
        let order = self.order;
        self.active.sort_by(|&a, &b| order.cmp(self.polys[a].lm(), self.polys[b].lm()));
        let mut basis = Vec::new();
        let mut lifts = self.lifts.as_ref().map(|_| Vec::new());
        for &k in &self.active {
            let lift = self.lifts.as_ref().map(|l| l[k].clone());
            let (p, lift) = self.reduce(self.polys[k].clone(), lift, 1, Some(k));
            let rp = p.to_rational();
            let (monic, inv) = rp.monic();
            basis.push(monic);
            if let (Some(out), Some(l)) = (lifts.as_mut(), lift) {
                out.push(scale_lift(&l, &inv));
            }
        }
        Output { basis, lifts }
    }
}

pub(crate) fn groebner(inputs: &[Poly<BigRational>], order: &MonomialOrder, track: bool) -> Output {
    let engine = Engine {
        order,
        n_inputs: inputs.len(),
        polys: Vec::new(),
        lifts: track.then(Vec::new),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    engine.run(inputs)
}
