#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use gradlie::linear::Q;
use gradlie::pbw::{self, SuElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[test]
fn every_reduction_order_agrees_up_to_length_four() {
    for name in ALGEBRAS {
        let alg = load(name);
        let mut oracle = ConfluenceOracle::new(&alg);
        for len in 0..=4 {
            for w in words(alg.dim(), len) {
                let expected = oracle.sigma(&w).unwrap_or_else(|e| panic!("{name}: {e}"));
                let got = from_su(&pbw::normalize_word(&alg, &w).unwrap());
                assert_eq!(got, expected, "{name}: word {w:?}");
            }
        }
    }
}

#[test]
fn random_reduction_orders_match_at_lengths_five_to_seven() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let algs: Vec<_> = ALGEBRAS.iter().map(|n| load(n)).collect();
    for trial in 0..1000 {
        let alg = &algs[trial % algs.len()];
        let c = dense_constants(alg);
        let len = rng.random_range(5..=7);
        let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..alg.dim())).collect();
        let a = sigma_random(alg, &c, &w, &mut rng);
        let b = sigma_random(alg, &c, &w, &mut rng);
        assert_eq!(a, b, "two random orders disagree on {w:?}");
        assert_eq!(from_su(&pbw::normalize_word(alg, &w).unwrap()), a, "{w:?}");
    }
}

#[test]
fn abelian_group_gives_classical_pbw() {
    // every word is g.a.s., so sorted monomials of each length are all there
    for name in [
        "sl2.alg",
        "heisenberg_z2.alg",
        "heisenberg_trivial.alg",
        "trivial2.alg",
    ] {
        let alg = load(name);
        assert!(alg.group().is_abelian());
        let basis = pbw::pbw_basis(&alg, 5).unwrap();
        let n = alg.dim() as u64;
        for d in 0..=5u64 {
            let count = basis.iter().filter(|m| m.len() as u64 == d).count() as u64;
            assert_eq!(count, binomial(n + d - 1, d), "{name} length {d}");
        }
    }
}

#[test]
fn normalize_image_rank_matches_pbw_count() {
    for name in ALGEBRAS {
        let alg = load(name);
        let basis = pbw::pbw_basis(&alg, 4).unwrap();
        // σ(w) carries lower-order terms, so compare the filtration pieces
        let mut images: Vec<BTreeMap<Vec<usize>, Q>> = Vec::new();
        for d in 0..=4 {
            images.extend(
                words(alg.dim(), d)
                    .iter()
                    .map(|w| from_su(&pbw::normalize_word(&alg, w).unwrap())),
            );
            let count = basis.iter().filter(|m| m.len() <= d).count();
            assert_eq!(dense_rank(&images), count, "{name} length <= {d}");
            assert!(images.iter().all(|v| v
                .keys()
                .all(|m| basis.iter().any(|b| b.indices() == m.as_slice()))));
        }
    }
}

fn random_element(alg: &gradlie::liealg::GradedLieAlgebra, rng: &mut ChaCha8Rng) -> SuElement {
    let mut acc = SuElement::zero();
    for _ in 0..rng.random_range(1..=3) {
        let len = rng.random_range(0..=2);
        let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..alg.dim())).collect();
        let c = Q::from_integer(rng.random_range(-3i64..=3).into());
        acc = acc.add(&pbw::normalize_word(alg, &w).unwrap().scaled(&c));
    }
    acc
}

#[test]
fn product_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let algs: Vec<_> = ALGEBRAS.iter().map(|n| load(n)).collect();
    for t in 0..500 {
        let alg = &algs[t % algs.len()];
        let (a, b, c) = (
            random_element(alg, &mut rng),
            random_element(alg, &mut rng),
            random_element(alg, &mut rng),
        );
        let left = pbw::su_mul(alg, &pbw::su_mul(alg, &a, &b).unwrap(), &c).unwrap();
        let right = pbw::su_mul(alg, &a, &pbw::su_mul(alg, &b, &c).unwrap()).unwrap();
        assert_eq!(left, right, "trial {t}");
    }
}

#[test]
fn commutators_reproduce_brackets() {
    for name in ALGEBRAS {
        let alg = load(name);
        let c = dense_constants(&alg);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let ij = from_su(&pbw::normalize_word(&alg, &[i, j]).unwrap());
                let ji = from_su(&pbw::normalize_word(&alg, &[j, i]).unwrap());
                let mut diff = ij;
                for (w, x) in ji {
                    add(&mut diff, w, &-x);
                }
                let expected: BTreeMap<Vec<usize>, Q> = c[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                    .map(|(k, x)| (vec![k], x.clone()))
                    .collect();
                assert_eq!(diff, expected, "{name}: ({i}, {j})");
            }
        }
    }
}
