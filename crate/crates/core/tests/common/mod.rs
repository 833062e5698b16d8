//! Oracles written straight from the definitions, and the checks that
//! compare the library against them. Shared by the integration tests and
//! the acceptance runner, so checks return failures instead of panicking.

#![allow(dead_code)]

use po2::random::{det_automaton, lasso, word, AutomatonParams};
use po2::{
    is_k_prefix_compatible, prefix_factorize_lasso, prop7_step, tracker_step, Direction, LassoWord, Letter,
    OmegaMonomial, Po2Automaton, Polarity, PrefixFactorization, Residual, StepResult,
};
use rand::rngs::StdRng;
use rand::Rng;

pub fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &[char], max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in alphabet {
                let mut x = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn is_subsequence(x: &[char], w: &[char]) -> bool {
    let mut it = w.iter();
    x.iter().all(|c| it.any(|d| d == c))
}

/// Every way of cutting `p` into blocks `uᵢaᵢ` with `aᵢ ∉ uᵢ`, as
/// `(markers, segments)`.
pub fn factorizations(p: &[char]) -> Vec<(Vec<char>, Vec<Vec<char>>)> {
    if p.is_empty() {
        return vec![(Vec::new(), Vec::new())];
    }
    let mut out = Vec::new();
    for end in 1..=p.len() {
        let (u, a) = (&p[..end - 1], p[end - 1]);
        if u.contains(&a) {
            continue;
        }
        for (mut ms, mut ss) in factorizations(&p[end..]) {
            ms.insert(0, a);
            ss.insert(0, u.to_vec());
            out.push((ms, ss));
        }
    }
    out
}

/// `aₖ⋯a_m ≼ w` and `w` a suffix of `uₖaₖ⋯u_m a_m`.
pub fn compatible(w: &[char], k: usize, markers: &[char], segments: &[Vec<char>]) -> bool {
    let mut tail = Vec::new();
    for i in k - 1..markers.len() {
        tail.extend_from_slice(&segments[i]);
        tail.push(markers[i]);
    }
    is_subsequence(&markers[k - 1..], w) && tail.ends_with(w)
}

/// Membership in `A₁*a₁⋯A_k*a_k B^ω` by trying every marker placement.
/// Gaps inside the periodic part never need to exceed one period, which
/// bounds the search.
pub fn monomial_contains(m: &OmegaMonomial, w: &LassoWord) -> bool {
    let k = m.steps.len();
    let limit = w.spoke().len() + (k + 1) * w.period().len();
    fn go(m: &OmegaMonomial, w: &LassoWord, i: usize, pos: usize, limit: usize) -> bool {
        if i == m.steps.len() {
            return w.suffix_after(pos).alph().is_subset(&m.tail);
        }
        let (set, a) = &m.steps[i];
        let mut p = pos + 1;
        while p <= limit {
            let c = w.at(p);
            if c == *a && go(m, w, i + 1, p, limit) {
                return true;
            }
            if !set.contains(&c) {
                return false;
            }
            p += 1;
        }
        false
    }
    go(m, w, 0, 0, limit)
}

/// All lassos with spoke length at most `max_spoke` and period length at
/// most `max_period`.
pub fn all_lassos(alphabet: &[char], max_spoke: usize, max_period: usize) -> Vec<LassoWord> {
    let periods: Vec<_> = all_words(alphabet, max_period).into_iter().filter(|p| !p.is_empty()).collect();
    let mut out = Vec::new();
    for u in all_words(alphabet, max_spoke) {
        for v in &periods {
            out.push(LassoWord::new(u.clone(), v.clone()).unwrap());
        }
    }
    out
}

/// Checks the seven implications of the compatibility calculus for every
/// suffix `cw` of every factorized word of length at most `max_len`, and
/// that `prop7_step` returns the implied index. Returns the number of
/// `(factorization, suffix)` pairs checked and the failures.
pub fn check_calculus(alphabet: &str, max_len: usize) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in all_words(&chars(alphabet), max_len) {
        for (ms, ss) in factorizations(&p) {
            let m = ms.len();
            if m == 0 {
                continue;
            }
            let f = PrefixFactorization::from_parts(ms.clone(), ss.clone(), Residual::Finite(Vec::new())).unwrap();
            let compat = |w: &[char], k: usize| compatible(w, k, &ms, &ss);
            for s in 0..p.len() {
                let (c, cw, w) = (p[s], &p[s..], &p[s + 1..]);
                let a = |i: usize| ms[i - 1];
                let prepend = |k| prop7_step(Direction::Prepend, c, k, &f).unwrap();
                let strip = |k| prop7_step(Direction::Strip, c, k, &f).unwrap();
                let mut fail = |case: usize, k: usize| {
                    let p: String = p.iter().collect();
                    failures.push(format!("case {case}: word {p}, markers {ms:?}, suffix at {s}, index {k}"));
                };
                // (1)
                if compat(w, 1) && !(compat(cw, 1) && prepend(1) == StepResult::Index(1)) {
                    fail(1, 1);
                }
                // (2) and (3)
                for k in 2..=m {
                    if compat(w, k) {
                        let (case, want) = if c == a(k - 1) { (2, k - 1) } else { (3, k) };
                        if !compat(cw, want) || prepend(k) != StepResult::Index(want) {
                            fail(case, k);
                        }
                    }
                }
                // (4) and (5)
                for l in 1..m {
                    if compat(cw, l) {
                        let (case, want) = if c == a(l) { (4, l + 1) } else { (5, l) };
                        if !compat(w, want) || strip(l) != StepResult::Index(want) {
                            fail(case, l);
                        }
                    }
                }
                // (6) and (7)
                if compat(cw, m) {
                    if c == a(m) {
                        if !w.is_empty() || strip(m) != StepResult::Empty {
                            fail(6, m);
                        }
                    } else if !compat(w, m) || strip(m) != StepResult::Index(m) {
                        fail(7, m);
                    }
                }
                checked += 1;
            }
        }
    }
    (checked, failures)
}

/// A deterministic automaton, a word with a `v`-prefix factorization, and a
/// Y-state `z1` that leaves the last marker to the left.
pub struct TrackerInstance {
    pub a: Po2Automaton,
    pub w: LassoWord,
    pub v: Vec<char>,
    pub f: PrefixFactorization,
    pub z1: usize,
}

pub fn tracker_instance(rng: &mut StdRng) -> Option<TrackerInstance> {
    let alphabet = if rng.gen_bool(0.5) { "ab" } else { "abc" };
    let n = rng.gen_range(2..=6);
    let a = det_automaton(rng, &AutomatonParams::new(n, alphabet));
    let letters = chars(alphabet);
    let w = lasso(rng, &letters, 6, 3);
    let len = rng.gen_range(1..=3);
    let v = word(rng, &letters, len);
    let f = prefix_factorize_lasso(&w, &v).unwrap()?;
    let ys: Vec<_> = (0..a.num_states()).filter(|&z| a.polarity(z) == Polarity::Y).collect();
    if ys.is_empty() {
        return None;
    }
    let z1 = ys[rng.gen_range(0..ys.len())];
    Some(TrackerInstance { a, w, v, f, z1 })
}

/// Follows the base run from `(z1, i0 − 1)` until it first returns to the
/// last marker position `i0`, stepping the tracker alongside. At every step
/// the counter must be a compatibility index of the current position, and
/// the excluded configuration must not occur. Returns the number of steps.
pub fn check_tracker(inst: &TrackerInstance) -> Result<usize, String> {
    let TrackerInstance { a, w, v, f, z1 } = inst;
    let m = v.len();
    let i0 = *f.marker_positions().last().unwrap();
    let factor = |j: usize| -> Vec<char> { (j..=i0).map(|i| w.at(i)).collect() };
    let (mut z, mut i, mut k) = (*z1, i0 - 1, m);
    let mut steps = 0;
    while !(i == i0 && steps > 0) {
        if steps > 10_000 {
            return Err("no return to the last marker".into());
        }
        let xi = usize::from(a.polarity(z) == Polarity::Y);
        let markers: Vec<char> = f.markers.clone();
        if !compatible(&factor(i + xi), k, &markers, &f.segments) {
            return Err(format!("counter {k} is not a compatibility index at position {i}"));
        }
        if !is_k_prefix_compatible(&factor(i + xi), k, f).unwrap() {
            return Err(format!("library disagrees on compatibility at position {i}"));
        }
        let letter = w.letter(i);
        if a.polarity(z) == Polarity::X && k == m && letter == Letter::Sym(v[m - 1]) {
            return Err(format!("excluded configuration at step {steps}"));
        }
        let next = a.next(z, letter).unwrap();
        let Some((tz, tk)) = tracker_step(a, v, z, k, letter) else {
            return Err(format!("tracker has no transition at step {steps}"));
        };
        if tz != next {
            return Err(format!("tracker left the base run at step {steps}"));
        }
        z = next;
        k = tk;
        i = match a.polarity(z) {
            Polarity::X => i + 1,
            Polarity::Y => i - 1,
        };
        steps += 1;
    }
    if k != m {
        return Err(format!("counter {k} on return, expected {m}"));
    }
    Ok(steps)
}
