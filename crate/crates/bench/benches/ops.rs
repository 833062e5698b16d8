use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use po2::random::{det_automaton, formula, lasso, AutomatonParams};
use po2::{
    complement, det_po2_to_monomials, is_empty, member, monomial_to_det_po2, product, sat_via_emptiness, BoolOp,
    OmegaMonomial, Po2Automaton,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn automata(seed: u64, n: usize, states: usize) -> Vec<Po2Automaton> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n).map(|_| det_automaton(&mut rng, &AutomatonParams::new(states, "abc"))).collect()
}

fn membership(c: &mut Criterion) {
    let a = &automata(1, 1, 8)[0];
    let mut rng = StdRng::seed_from_u64(2);
    let sigma: Vec<char> = "abc".chars().collect();
    let words: Vec<_> = (0..100).map(|_| lasso(&mut rng, &sigma, 20, 5)).collect();
    c.bench_function("member 100 lassos", |b| {
        b.iter(|| words.iter().filter(|w| member(a, w).unwrap()).count())
    });
}

fn boolean(c: &mut Criterion) {
    let xs = automata(3, 20, 5);
    c.bench_function("complement 20 automata", |b| {
        b.iter(|| xs.iter().map(|a| complement(a).unwrap().num_states()).sum::<usize>())
    });
    c.bench_function("intersect 10 pairs", |b| {
        b.iter(|| {
            xs.chunks(2)
                .map(|p| product(&p[0], &p[1], BoolOp::Intersection).unwrap().num_states())
                .sum::<usize>()
        })
    });
}

fn monomials(c: &mut Criterion) {
    let m: OmegaMonomial = "[ab]*a.[]*c.[c]w".parse().unwrap();
    let sigma: Vec<char> = "abc".chars().collect();
    c.bench_function("monomial to automaton", |b| b.iter(|| monomial_to_det_po2(black_box(&m), &sigma).unwrap()));
    let xs = automata(4, 20, 6);
    c.bench_function("automaton to monomials 20 automata", |b| {
        b.iter(|| xs.iter().map(|a| det_po2_to_monomials(a).unwrap().len()).sum::<usize>())
    });
}

fn decide(c: &mut Criterion) {
    let xs = automata(5, 20, 8);
    c.bench_function("emptiness 20 automata", |b| {
        b.iter(|| xs.iter().filter(|a| is_empty(a).unwrap() == po2::Emptiness::Empty).count())
    });
    let mut rng = StdRng::seed_from_u64(6);
    let fs: Vec<_> = (0..20).map(|_| formula(&mut rng, 6, 8)).collect();
    c.bench_function("sat 20 formulas", |b| {
        b.iter(|| fs.iter().map(|f| sat_via_emptiness(f).unwrap()).count())
    });
}

criterion_group!(benches, membership, boolean, monomials, decide);
criterion_main!(benches);
