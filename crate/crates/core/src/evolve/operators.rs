//! Recombination, mutation and selection operators over k-bit info words.

use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use super::{Fitness, Individual};
use crate::gf2::BitWord;

/// Random-weight individual: weight uniform in `1..=k`, positions uniform.
pub fn random_weight_word<R: Rng + ?Sized>(k: usize, rng: &mut R) -> BitWord {
    let weight = rng.random_range(1..=k);
    let mut w = BitWord::zeros(k);
    for i in index::sample(rng, k, weight) {
        w.set(i, true);
    }
    w
}

/// Children swap everything from `cut` on.
pub fn one_point_at(p1: &BitWord, p2: &BitWord, cut: usize) -> (BitWord, BitWord) {
    swap_range(p1, p2, cut, p1.len())
}

/// Children swap the segment `lo..hi`.
pub fn two_point_at(p1: &BitWord, p2: &BitWord, lo: usize, hi: usize) -> (BitWord, BitWord) {
    swap_range(p1, p2, lo, hi)
}

/// Children swap the positions set in `mask`.
pub fn uniform_with_mask(p1: &BitWord, p2: &BitWord, mask: &BitWord) -> (BitWord, BitWord) {
    let mut diff = p1.xor(p2);
    for (d, m) in diff.limbs_mut().iter_mut().zip(mask.limbs()) {
        *d &= m;
    }
    (p1.xor(&diff), p2.xor(&diff))
}

fn swap_range(p1: &BitWord, p2: &BitWord, lo: usize, hi: usize) -> (BitWord, BitWord) {
    assert_eq!(p1.len(), p2.len(), "parents differ in length");
    let (mut c1, mut c2) = (p1.clone(), p2.clone());
    for i in lo..hi {
        c1.set(i, p2.get(i));
        c2.set(i, p1.get(i));
    }
    (c1, c2)
}

/// Cut uniform in `1..k`; parents are returned unchanged when `k < 2`.
pub fn crossover_one_point<R: Rng + ?Sized>(p1: &BitWord, p2: &BitWord, rng: &mut R) -> (BitWord, BitWord) {
    let k = p1.len();
    if k < 2 {
        return (p1.clone(), p2.clone());
    }
    one_point_at(p1, p2, rng.random_range(1..k))
}

/// Two distinct cuts `c1 < c2` in `1..k`; falls back to one point for `k < 3`.
pub fn crossover_two_point<R: Rng + ?Sized>(p1: &BitWord, p2: &BitWord, rng: &mut R) -> (BitWord, BitWord) {
    let k = p1.len();
    if k < 3 {
        return crossover_one_point(p1, p2, rng);
    }
    let cuts = index::sample(rng, k - 1, 2);
    let (a, b) = (cuts.index(0) + 1, cuts.index(1) + 1);
    two_point_at(p1, p2, a.min(b), a.max(b))
}

/// Each gene swapped between the children with probability 1/2.
pub fn crossover_uniform<R: Rng + ?Sized>(p1: &BitWord, p2: &BitWord, rng: &mut R) -> (BitWord, BitWord) {
    let limbs: Vec<u64> = (0..p1.limbs().len()).map(|_| rng.random()).collect();
    uniform_with_mask(p1, p2, &BitWord::from_limbs(p1.len(), limbs))
}

/// Flips each bit independently with probability `p_m`.
pub fn mutate_classic<R: Rng + ?Sized>(w: &BitWord, p_m: f64, rng: &mut R) -> BitWord {
    let mut out = w.clone();
    if p_m <= 0.0 {
        return out;
    }
    for i in 0..w.len() {
        if rng.random_bool(p_m) {
            out.flip(i);
        }
    }
    out
}

/// Flips the first gene (scanning from index 0) whose flip strictly lowers
/// the fitness; returns `w` unchanged when no single flip improves it.
pub fn mutate_greedy(fitness: &Fitness<'_>, w: &BitWord) -> BitWord {
    let current = fitness.of(w);
    let codeword = fitness.codeword(w);
    for i in 0..w.len() {
        if fitness.of_codeword(&codeword.xor(fitness.row(i))) < current {
            let mut out = w.clone();
            out.flip(i);
            return out;
        }
    }
    w.clone()
}

/// Best of `size` distinct uniform draws; first drawn wins ties.
pub fn select_tournament<R: Rng + ?Sized>(pop: &[Individual], size: usize, rng: &mut R) -> usize {
    let drawn = index::sample(rng, pop.len(), size.clamp(1, pop.len()));
    let mut best = drawn.index(0);
    for c in drawn.iter().skip(1) {
        if pop[c].fitness < pop[best].fitness {
            best = c;
        }
    }
    best
}

pub fn select_random<R: Rng + ?Sized>(pop: &[Individual], rng: &mut R) -> usize {
    rng.random_range(0..pop.len())
}

/// Probability proportional to `n + 1 - fitness`.
pub fn select_roulette<R: Rng + ?Sized>(pop: &[Individual], n: usize, rng: &mut R) -> usize {
    let score = |ind: &Individual| (n + 1).saturating_sub(ind.fitness) as u64;
    let total: u64 = pop.iter().map(score).sum();
    if total == 0 {
        return select_random(pop, rng);
    }
    let mut ticket = rng.random_range(0..total);
    for (i, ind) in pop.iter().enumerate() {
        let s = score(ind);
        if ticket < s {
            return i;
        }
        ticket -= s;
    }
    pop.len() - 1
}
