//! Seeded adversarial instance samplers.
//!
//! Weightings mix small-denominator rationals with deliberately colliding
//! values (one shared weight per degree class). Lists are exact-size subsets
//! of one small shared pool, so neighbouring edges compete for the same
//! labels.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};
use crate::labeling::{ListAssignment, Weighting};
use crate::Rational;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R, magnitude: i64) -> Rational {
    let den = rng.gen_range(1..=3i64);
    let num = rng.gen_range(-magnitude * den..=magnitude * den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Each degree class either shares one weight or draws per vertex; every
/// third sample is integral.
pub fn adversarial_weighting<R: Rng>(g: &Graph, rng: &mut R) -> Weighting<Rational> {
    let integral = rng.gen_ratio(1, 3);
    let draw = |rng: &mut R| {
        if integral {
            Rational::from_integer(BigInt::from(rng.gen_range(-4..=4i64)))
        } else {
            small_rational(rng, 4)
        }
    };
    let mut classes: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in g.vertices() {
        classes.entry(g.degree(v)).or_default().push(v);
    }
    let mut weights = BTreeMap::new();
    for vertices in classes.values() {
        if rng.gen_bool(0.5) {
            let w = draw(rng);
            weights.extend(vertices.iter().map(|&v| (v, w.clone())));
        } else {
            for &v in vertices {
                weights.insert(v, draw(rng));
            }
        }
    }
    Weighting::from_map(weights)
}

/// `pool_extra` values beyond `size` go into the shared pool; 0 makes every
/// list identical.
pub fn adversarial_lists<R: Rng>(
    g: &Graph,
    size: usize,
    pool_extra: usize,
    rng: &mut R,
) -> ListAssignment<Rational> {
    let target = size + pool_extra;
    let mut pool = BTreeSet::new();
    let mut magnitude = (target as i64).max(2);
    while pool.len() < target {
        pool.insert(small_rational(rng, magnitude));
        if pool.len() < target && rng.gen_ratio(1, 8) {
            magnitude += 1;
        }
    }
    let pool: Vec<Rational> = pool.into_iter().collect();
    let mut lists = BTreeMap::new();
    for e in g.edges() {
        let chosen: BTreeSet<Rational> = pool.choose_multiple(rng, size).cloned().collect();
        lists.insert(e, chosen);
    }
    ListAssignment::from_map(lists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn lists_have_exact_size() {
        let g = generate::complete(5);
        let mut r = rng(3);
        for extra in [0, 1, 4] {
            let lists = adversarial_lists(&g, 16, extra, &mut r);
            assert!(lists.check_against(&g, Some(16)).is_ok());
            assert!(lists.entries().all(|(_, l)| l.len() == 16));
            let union: BTreeSet<_> = lists.entries().flat_map(|(_, l)| l.iter()).collect();
            assert!(union.len() <= 16 + extra);
        }
    }

    #[test]
    fn seeded_reproducible() {
        let g = generate::wheel(6);
        let a = adversarial_weighting(&g, &mut rng(11));
        let b = adversarial_weighting(&g, &mut rng(11));
        assert_eq!(a, b);
        assert!(a.check_against(&g).is_ok());
    }

    #[test]
    fn degree_classes_collide_sometimes() {
        let g = generate::cycle(6);
        let mut r = rng(0);
        let shared = (0..50)
            .filter(|_| {
                let w = adversarial_weighting(&g, &mut r);
                g.vertices().all(|v| w.get(v) == w.get(1))
            })
            .count();
        assert!(shared > 5);
    }
}
