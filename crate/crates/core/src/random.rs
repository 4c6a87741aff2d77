//! Random pure elliptic models of constant length.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Element, Generator, GeneratorSet, Monomial};
use crate::groebner::GroebnerBasis;
use crate::model::SullivanModel;

const EVEN_DEGREES: [u32; 3] = [2, 4, 6];

/// Exponent vectors of word length `l` in `n` variables.
fn words(n: usize, l: u32) -> Vec<Vec<u32>> {
    (0..n)
        .combinations_with_replacement(l as usize)
        .map(|w| {
            let mut e = vec![0; n];
            for i in w {
                e[i] += 1;
            }
            e
        })
        .collect()
}

fn degree_of(e: &[u32], degrees: &[u32]) -> u32 {
    e.iter().zip(degrees).map(|(a, d)| a * d).sum()
}

/// A nonzero homogeneous polynomial of word length `l`, biased toward the
/// pure power of `focus` so that regular sequences are common.
fn random_image(rng: &mut impl Rng, space: &std::sync::Arc<GeneratorSet>, l: u32, focus: Option<usize>) -> Element {
    let degrees = space.even_degrees();
    let all = words(degrees.len(), l);
    let target = match focus {
        Some(i) if rng.gen_bool(0.7) => l * degrees[i],
        _ => degree_of(all.choose(rng).expect("nonempty"), &degrees),
    };
    let pool: Vec<&Vec<u32>> = all.iter().filter(|e| degree_of(e, &degrees) == target).collect();
    loop {
        let mut p = Element::zero(space);
        for e in &pool {
            if rng.gen_bool(0.6) {
                let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
                p = &p + &Element::monomial(space, Monomial::from_even((*e).clone()), rat(c));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Draws one model: 1–3 even generators of degree 2, 4 or 6, length
/// l ∈ {2, 3}, one odd generator per even one with images forming a
/// regular sequence, then 0–2 further odd generators with random images of
/// length l or zero.
pub fn random_pure_elliptic(rng: &mut impl Rng, name: &str) -> SullivanModel {
    let n = rng.gen_range(1..=3);
    let mut even_degrees: Vec<u32> = (0..n).map(|_| *EVEN_DEGREES.choose(rng).unwrap()).collect();
    even_degrees.sort_unstable();
    let l = rng.gen_range(2..=3u32);
    let even_decls: Vec<Generator> = even_degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Generator::new(format!("x{}", i + 1), d))
        .collect();
    let ring = GeneratorSet::new(even_decls.clone()).expect("distinct names");

    let images = loop {
        let images: Vec<Element> = (0..n).map(|i| random_image(rng, &ring, l, Some(i))).collect();
        if GroebnerBasis::new(&ring, &images).expect("even").is_finite_dimensional() {
            break images;
        }
    };
    let mut images = images;
    let extra = rng.gen_range(0..=2);
    let mut closed_degrees = Vec::new();
    for _ in 0..extra {
        if rng.gen_bool(0.5) {
            images.push(random_image(rng, &ring, l, None));
        } else {
            images.push(Element::zero(&ring));
            closed_degrees.push(*[3u32, 5, 7].choose(rng).unwrap());
        }
    }

    let mut closed = closed_degrees.into_iter();
    let mut decls = even_decls;
    for (j, image) in images.iter().enumerate() {
        let degree = match image.degree().value() {
            Some(d) if !image.is_zero() => d - 1,
            _ => closed.next().expect("one degree per closed generator"),
        };
        decls.push(Generator::new(format!("y{}", j + 1), degree));
    }
    let space = GeneratorSet::new(decls).expect("distinct names");
    let names: Vec<String> = (1..=images.len()).map(|j| format!("y{j}")).collect();
    let assignments: Vec<(&str, Element)> = names
        .iter()
        .zip(&images)
        .map(|(y, image)| (y.as_str(), image.transport(&space)))
        .collect();
    let m = SullivanModel::new(name, space, assignments).expect("consistent spaces");
    debug_assert!(m.validate().is_ok());
    m
}

/// `count` models from a fixed seed, named `random-<seed>-<i>`.
pub fn random_suite(seed: u64, count: usize) -> Vec<SullivanModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_pure_elliptic(&mut rng, &format!("random-{seed}-{i}")))
        .collect()
}
