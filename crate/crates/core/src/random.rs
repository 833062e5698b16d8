//! Random instance generators for tests, benchmarks and the CLI.
//!
//! Generated automata are well-formed by construction: state `i` only has
//! transitions to states `j >= i`, and the last state is always an X-state so
//! every Y-state has somewhere to go on the end marker.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Builder, Letter, Po2Automaton, Polarity};
use crate::monomial::OmegaMonomial;
use crate::satred::PropFormula;
use crate::words::LassoWord;

#[derive(Clone, Debug)]
pub struct AutomatonParams {
    pub states: usize,
    pub alphabet: Vec<char>,
    /// Probability that a letter self-loops.
    pub self_loop: f64,
    /// Probability that a state other than the last is a Y-state.
    pub y_ratio: f64,
    pub final_ratio: f64,
    /// Probability that a transition is left out; 0 gives complete automata.
    pub missing: f64,
}

impl AutomatonParams {
    pub fn new(states: usize, alphabet: &str) -> Self {
        Self {
            states: states.max(1),
            alphabet: alphabet.chars().collect(),
            self_loop: 0.5,
            y_ratio: 0.35,
            final_ratio: 0.5,
            missing: 0.0,
        }
    }
}

fn polarities(rng: &mut impl Rng, p: &AutomatonParams) -> Vec<Polarity> {
    (0..p.states)
        .map(|i| {
            if i + 1 < p.states && rng.gen_bool(p.y_ratio) {
                Polarity::Y
            } else {
                Polarity::X
            }
        })
        .collect()
}

/// A deterministic automaton; complete when `missing == 0`.
pub fn det_automaton(rng: &mut impl Rng, p: &AutomatonParams) -> Po2Automaton {
    let pol = polarities(rng, p);
    let n = p.states;
    let mut b = Builder::new(p.alphabet.iter().copied());
    let ids: Vec<_> = (0..n).map(|i| b.state(format!("q{i}"), pol[i])).collect();
    b.set_initial(ids[0], true);
    for i in 0..n {
        b.set_final(ids[i], rng.gen_bool(p.final_ratio));
        for &c in &p.alphabet {
            if rng.gen_bool(p.missing) {
                continue;
            }
            let to = if i + 1 == n || rng.gen_bool(p.self_loop) {
                i
            } else {
                rng.gen_range(i + 1..n)
            };
            b.add_sym(ids[i], c, ids[to]);
        }
        if pol[i] == Polarity::Y && !rng.gen_bool(p.missing) {
            let xs: Vec<_> = (i + 1..n).filter(|&j| pol[j] == Polarity::X).collect();
            b.add(ids[i], Letter::LeftEnd, ids[*xs.choose(rng).expect("last state is X")]);
        }
    }
    b.build().expect("generated automaton is valid")
}

/// A possibly nondeterministic automaton with up to `branching` targets per
/// letter and one or two initial states.
pub fn nondet_automaton(rng: &mut impl Rng, p: &AutomatonParams, branching: usize) -> Po2Automaton {
    let pol = polarities(rng, p);
    let n = p.states;
    let mut b = Builder::new(p.alphabet.iter().copied());
    let ids: Vec<_> = (0..n).map(|i| b.state(format!("q{i}"), pol[i])).collect();
    b.set_initial(ids[0], true);
    if n > 1 && rng.gen_bool(0.3) {
        b.set_initial(ids[rng.gen_range(1..n)], true);
    }
    for i in 0..n {
        b.set_final(ids[i], rng.gen_bool(p.final_ratio));
        for &c in &p.alphabet {
            for _ in 0..rng.gen_range(0..=branching.max(1)) {
                let to = if i + 1 == n || rng.gen_bool(p.self_loop) {
                    i
                } else {
                    rng.gen_range(i + 1..n)
                };
                b.add_sym(ids[i], c, ids[to]);
            }
        }
        if pol[i] == Polarity::Y {
            let xs: Vec<_> = (i + 1..n).filter(|&j| pol[j] == Polarity::X).collect();
            for _ in 0..rng.gen_range(0..=branching.max(1)) {
                b.add(ids[i], Letter::LeftEnd, ids[*xs.choose(rng).expect("last state is X")]);
            }
        }
    }
    b.build().expect("generated automaton is valid")
}

pub fn word(rng: &mut impl Rng, alphabet: &[char], len: usize) -> Vec<char> {
    (0..len).map(|_| *alphabet.choose(rng).expect("nonempty alphabet")).collect()
}

pub fn lasso(rng: &mut impl Rng, alphabet: &[char], max_spoke: usize, max_period: usize) -> LassoWord {
    let u = rng.gen_range(0..=max_spoke);
    let v = rng.gen_range(1..=max_period.max(1));
    LassoWord::new(word(rng, alphabet, u), word(rng, alphabet, v)).expect("nonempty period")
}

fn subset(rng: &mut impl Rng, alphabet: &[char], p: f64) -> Vec<char> {
    alphabet.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

/// An arbitrary monomial of degree at most `max_degree`; the tail is nonempty.
pub fn monomial(rng: &mut impl Rng, alphabet: &[char], max_degree: usize) -> OmegaMonomial {
    let k = rng.gen_range(0..=max_degree);
    let steps = (0..k)
        .map(|_| (subset(rng, alphabet, 0.5), *alphabet.choose(rng).expect("nonempty alphabet")))
        .collect();
    let mut tail = subset(rng, alphabet, 0.5);
    if tail.is_empty() {
        tail.push(*alphabet.choose(rng).expect("nonempty alphabet"));
    }
    OmegaMonomial::new(steps, tail)
}

/// A restricted monomial, by rejection sampling.
pub fn restricted_monomial(rng: &mut impl Rng, alphabet: &[char], max_degree: usize) -> OmegaMonomial {
    loop {
        let m = monomial(rng, alphabet, max_degree);
        if m.is_restricted() {
            return m;
        }
    }
}

/// A formula with about `size` connectives over `v1..=vars`.
pub fn formula(rng: &mut impl Rng, vars: usize, size: usize) -> PropFormula {
    if size == 0 {
        return PropFormula::Var(rng.gen_range(1..=vars.max(1)));
    }
    match rng.gen_range(0..5) {
        0 => PropFormula::not(formula(rng, vars, size - 1)),
        k => {
            let l = rng.gen_range(0..size);
            let (f, g) = (formula(rng, vars, l), formula(rng, vars, size - 1 - l));
            if k % 2 == 0 {
                PropFormula::and(f, g)
            } else {
                PropFormula::or(f, g)
            }
        }
    }
}
