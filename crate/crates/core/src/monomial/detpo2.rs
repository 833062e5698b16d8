//! Restricted unambiguous monomials to deterministic automata.
//!
//! The ω-case splits a word at the first occurrence of a marker `a` that is
//! missing from the first segment alphabet. The part before it is checked by
//! a finite-word acceptor using `a` as right end marker, the part after it by
//! the automaton for the remaining monomial, relativized so that the first
//! `a` acts as its left end marker. The finite-word acceptors are built the
//! same way, splitting at a first occurrence or, failing that, at a last
//! occurrence.

use std::collections::BTreeMap;

use crate::automaton::{complete, reduce, require_deterministic, Po2Automaton, Polarity, StateId};
use crate::boolean::{product, BoolOp};
use crate::error::{Error, Result};
use crate::machine::{redirect, star, union_seq, Machine, Tape};
use crate::monomial::{is_unambiguous_bounded, LetterSet, OmegaMonomial, Unambiguity};

/// `A₁*a₁⋯A_k*a_k A_{k+1}*` over finite words.
#[derive(Clone, Debug)]
struct FiniteMonomial {
    steps: Vec<(LetterSet, char)>,
    tail: LetterSet,
}

impl FiniteMonomial {
    fn degree(&self) -> usize {
        self.steps.len()
    }

    fn set(&self, i: usize) -> &LetterSet {
        if i == self.steps.len() + 1 {
            &self.tail
        } else {
            &self.steps[i - 1].0
        }
    }

    fn marker(&self, i: usize) -> char {
        self.steps[i - 1].1
    }

    /// Steps `from..=to` (1-based) followed by the set `A_{to+1}` as tail.
    fn slice(&self, from: usize, to: usize) -> FiniteMonomial {
        FiniteMonomial {
            steps: self.steps[from - 1..to].to_vec(),
            tail: self.set(to + 1).clone(),
        }
    }

    /// Intersection with `(Γ ∖ {a})*`; `None` if the language becomes empty.
    fn without(mut self, a: char) -> Option<FiniteMonomial> {
        if self.steps.iter().any(|s| s.1 == a) {
            return None;
        }
        for s in &mut self.steps {
            s.0.remove(&a);
        }
        self.tail.remove(&a);
        Some(self)
    }
}

fn reject_all(alphabet: &[char]) -> Machine {
    union_seq(alphabet, &[])
}

fn finite_machine(alphabet: &[char], f: &FiniteMonomial) -> Result<Machine> {
    let k = f.degree();
    if k == 0 {
        return Ok(star(alphabet, &f.tail));
    }
    let build = |g: Option<FiniteMonomial>| match g {
        Some(g) => finite_machine(alphabet, &g),
        None => Ok(reject_all(alphabet)),
    };
    if let Some(i) = (1..=k).find(|&i| !f.set(1).contains(&f.marker(i))) {
        let a = f.marker(i);
        let mut cases = vec![(f.slice(1, i - 1).without(a), Some(f.slice(i + 1, k)))];
        for j in (2..=i).filter(|&j| f.set(j).contains(&a)) {
            cases.push((f.slice(1, j - 1).without(a), Some(f.slice(j, k))));
        }
        let mut parts = Vec::new();
        for (u, w) in cases {
            parts.push(first_case(alphabet, a, &build(u)?, &build(w)?)?);
        }
        return Ok(union_seq(alphabet, &parts));
    }
    if let Some(l) = (1..=k).rev().find(|&l| !f.set(k + 1).contains(&f.marker(l))) {
        let a = f.marker(l);
        let mut cases = vec![(Some(f.slice(1, l - 1)), f.slice(l + 1, k).without(a))];
        for j in (l + 1..=k).filter(|&j| f.set(j).contains(&a)) {
            cases.push((Some(f.slice(1, j - 1)), f.slice(j, k).without(a)));
        }
        let mut parts = Vec::new();
        for (u, w) in cases {
            parts.push(last_case(alphabet, a, &build(u)?, &build(w)?)?);
        }
        return Ok(union_seq(alphabet, &parts));
    }
    Err(Error::Ambiguous(
        "every marker occurs in the first and in the last segment alphabet".into(),
    ))
}

/// Fresh acceptor skeleton: `(machine, accept, reject)`.
fn skeleton(alphabet: &[char]) -> (Machine, usize, usize) {
    let mut m = Machine::new(alphabet);
    let acc = m.add("acc", Polarity::Y);
    let rej = m.add("rej", Polarity::Y);
    m.exits = Some((acc, rej));
    (m, acc, rej)
}

/// An X-state that runs to the right end and then enters `exit`.
fn seek_end(m: &mut Machine, name: &str, exit: usize) -> usize {
    let s = m.add(name, Polarity::X);
    m.loops(s, m.alphabet.clone());
    m.set(s, Tape::R, exit);
    s
}

/// Words `u a w` with `a ∉ alph(u)`, `u ∈ L(u_m)` and `w ∈ L(w_m)`.
fn first_case(alphabet: &[char], a: char, u_m: &Machine, w_m: &Machine) -> Result<Machine> {
    let (mut m, acc, rej) = skeleton(alphabet);
    let non_a = m.others(a);
    let s0 = m.add("find", Polarity::X);
    let back = m.add("back", Polarity::Y);
    let g = m.add("skip", Polarity::X);
    m.init = s0;
    m.loops(s0, non_a.iter().copied());
    m.set(s0, Tape::Sym(a), back);
    m.set(s0, Tape::R, rej);
    m.loops(back, alphabet.iter().copied());

    let u = m.embed(&u_m.plug_right(a), "P.", false, false);
    let w = m.embed(&w_m.relativize_left(a)?, "Q.", false, false);
    let id = |map: &[Option<usize>], z: usize| map[z].expect("full embed");
    m.set(back, Tape::L, id(&u, u_m.init));

    let u_acc = id(&u, u_m.accept());
    for &c in alphabet {
        m.set(u_acc, Tape::Sym(c), g);
    }
    m.set(u_acc, Tape::L, g);
    m.loops(g, non_a.iter().copied());
    m.set(g, Tape::Sym(a), id(&w, w_m.init));

    let u_rej = id(&u, u_m.reject());
    let rj = seek_end(&mut m, "rj", rej);
    for &c in alphabet {
        m.set(u_rej, Tape::Sym(c), rj);
    }
    m.set(u_rej, Tape::L, rj);

    redirect(&mut m, id(&w, w_m.accept()), acc);
    redirect(&mut m, id(&w, w_m.reject()), rej);
    Ok(m)
}

/// Words `u a w` with `a ∉ alph(w)`, `u ∈ L(u_m)` and `w ∈ L(w_m)`.
fn last_case(alphabet: &[char], a: char, u_m: &Machine, w_m: &Machine) -> Result<Machine> {
    let (mut m, acc, rej) = skeleton(alphabet);
    let non_a = m.others(a);
    let s0 = m.add("end", Polarity::X);
    let find = m.add("find", Polarity::Y);
    m.init = s0;
    m.loops(s0, alphabet.iter().copied());
    m.set(s0, Tape::R, find);
    m.loops(find, non_a.iter().copied());
    let rj = seek_end(&mut m, "rj", rej);
    m.set(find, Tape::L, rj);

    let w = m.embed(&w_m.plug_left(a), "W.", false, false);
    let u = m.embed(&u_m.relativize_right(a)?, "U.", false, false);
    let id = |map: &[Option<usize>], z: usize| map[z].expect("full embed");
    m.set(find, Tape::Sym(a), id(&w, w_m.init));

    let w_acc = id(&w, w_m.accept());
    m.loops(w_acc, alphabet.iter().copied());
    m.set(w_acc, Tape::L, id(&u, u_m.init));
    redirect(&mut m, id(&w, w_m.reject()), rej);

    for (exit, target, name) in [(u_m.accept(), acc, "ua"), (u_m.reject(), rej, "ur")] {
        let e = id(&u, exit);
        let s = seek_end(&mut m, name, target);
        for &c in alphabet {
            m.set(e, Tape::Sym(c), s);
        }
        m.set(e, Tape::L, s);
    }
    Ok(m)
}

/// An acceptor for finite words delimited by the left end marker and the
/// first occurrence of an end letter.
#[derive(Clone, Debug)]
pub struct FiniteAcceptor {
    machine: Machine,
    end_marker: char,
}

impl FiniteAcceptor {
    /// Runs on `▷ w end`. Panics if the run gets stuck, loops, or leaves the
    /// delimited segment, none of which a constructed acceptor does.
    pub fn accepts(&self, w: &[char]) -> bool {
        self.machine
            .run_tape(w, Tape::Sym(self.end_marker))
            .expect("acceptor halts inside its segment")
    }

    pub fn num_states(&self) -> usize {
        self.machine.len()
    }
}

/// Acceptor for `A₁*a₁⋯A_j*` (given as `steps` plus `tail`), reading the
/// first `end_marker` as the right end.
pub fn finite_monomial_acceptor(
    steps: &[(LetterSet, char)],
    tail: &LetterSet,
    end_marker: char,
    alphabet: &[char],
) -> Result<FiniteAcceptor> {
    let f = FiniteMonomial {
        steps: steps.to_vec(),
        tail: tail.clone(),
    };
    let used = steps.iter().flat_map(|(s, c)| s.iter().chain(std::iter::once(c))).chain(tail);
    if let Some(&c) = used.clone().find(|c| !alphabet.contains(c)) {
        return Err(Error::UnknownLetter(c));
    }
    if used.clone().any(|&c| c == end_marker) {
        return Err(Error::InvalidArgument(format!("end marker '{end_marker}' occurs in the monomial")));
    }
    Ok(FiniteAcceptor {
        machine: finite_machine(alphabet, &f)?.plug_right(end_marker),
        end_marker,
    })
}

/// Relativizes a deterministic automaton to the suffix after the first
/// `marker`: started in its (X-state) initial state just after the first
/// `marker`, the result simulates `b` on the suffix, with that `marker`
/// acting as the left end.
pub fn relativize(b: &Po2Automaton, marker: char) -> Result<Po2Automaton> {
    require_deterministic(b)?;
    if !b.alphabet().contains(&marker) {
        return Err(Error::UnknownLetter(marker));
    }
    Machine::from_automaton(b)?.relativize_left(marker)?.to_automaton()
}

fn empty_automaton(alphabet: &[char]) -> Result<Po2Automaton> {
    let mut m = Machine::new(alphabet);
    let q = m.add("empty", Polarity::X);
    m.loops(q, alphabet.iter().copied());
    m.to_automaton()
}

fn tail_automaton(alphabet: &[char], tail: &LetterSet) -> Result<Po2Automaton> {
    let mut m = Machine::new(alphabet);
    let q = m.add("tail", Polarity::X);
    let sink = m.add("sink", Polarity::X);
    m.fin[q] = true;
    for &c in alphabet {
        m.set(q, Tape::Sym(c), if tail.contains(&c) { q } else { sink });
    }
    m.loops(sink, alphabet.iter().copied());
    m.to_automaton()
}

/// Words `u a β` with `a ∉ alph(u)` such that `β ∈ L(b_j)` for some case
/// `j` with `u ∈ L(u_j)`. The prefix tests run one after another, each
/// rewinding to the left end, and remember which of them accepted. The
/// suffix automata of the accepting cases are joined by a product and
/// relativized to the part after the first `a`.
fn omega_cases(alphabet: &[char], a: char, cases: &[(Machine, Po2Automaton)]) -> Result<Po2Automaton> {
    let n = cases.len();
    let mut m = Machine::new(alphabet);
    let non_a = m.others(a);
    let s0 = m.add("find", Polarity::X);
    let back = m.add("back", Polarity::Y);
    let sink = m.add("sink", Polarity::X);
    m.init = s0;
    m.loops(s0, non_a.iter().copied());
    m.set(s0, Tape::Sym(a), back);
    m.loops(back, alphabet.iter().copied());
    m.loops(sink, alphabet.iter().copied());

    // Entry point of test `t` given the set `seen` of earlier acceptances:
    // an X-state entered on the left end.
    let mut entry: BTreeMap<(usize, usize), StateId> = BTreeMap::new();
    let mut finish: BTreeMap<usize, StateId> = BTreeMap::new();
    let mut todo = vec![(0usize, 0usize)];
    let mut pending: Vec<(StateId, usize, usize)> = Vec::new();
    while let Some((t, seen)) = todo.pop() {
        if entry.contains_key(&(t, seen)) {
            continue;
        }
        let (u_m, _) = &cases[t];
        let map = m.embed(&u_m.plug_right(a), &format!("P{t}.{seen}."), false, false);
        let id = |z: usize| map[z].expect("full embed");
        entry.insert((t, seen), id(u_m.init));
        for (exit, next) in [(u_m.accept(), seen | 1 << t), (u_m.reject(), seen)] {
            pending.push((id(exit), t + 1, next));
            if t + 1 < n {
                todo.push((t + 1, next));
            }
        }
    }
    for (exit, t, seen) in pending {
        if t < n {
            let rew = m.add(format!("rew{t}.{seen}"), Polarity::Y);
            m.loops(rew, alphabet.iter().copied());
            m.set(rew, Tape::L, entry[&(t, seen)]);
            for &c in alphabet {
                m.set(exit, Tape::Sym(c), rew);
            }
            m.set(exit, Tape::L, entry[&(t, seen)]);
            continue;
        }
        let target = match finish.get(&seen) {
            Some(&g) => g,
            None if seen == 0 => sink,
            None => {
                let mut union: Option<Po2Automaton> = None;
                for (_, (_, b)) in cases.iter().enumerate().filter(|(j, _)| seen & 1 << j != 0) {
                    union = Some(match union {
                        None => b.clone(),
                        Some(r) => reduce(&complete(&product(&r, b, BoolOp::Union)?)?)?,
                    });
                }
                let un = union.expect("nonempty");
                let bm = Machine::from_automaton(&un)?.relativize_left(a)?;
                let w = m.embed(&bm, &format!("Q{seen}."), true, true);
                let g = m.add(format!("skip{seen}"), Polarity::X);
                m.loops(g, non_a.iter().copied());
                m.set(g, Tape::Sym(a), w[bm.init].expect("init is reachable"));
                finish.insert(seen, g);
                g
            }
        };
        for &c in alphabet {
            m.set(exit, Tape::Sym(c), target);
        }
        m.set(exit, Tape::L, target);
    }
    m.set(back, Tape::L, entry[&(0, 0)]);
    m.to_automaton()
}

fn omega_rec(alphabet: &[char], m: &OmegaMonomial) -> Result<Po2Automaton> {
    let k = m.degree();
    if m.tail.is_empty() {
        return empty_automaton(alphabet);
    }
    if k == 0 {
        return tail_automaton(alphabet, &m.tail);
    }
    let fm = FiniteMonomial {
        steps: m.steps.clone(),
        tail: m.tail.clone(),
    };
    let i = (1..=k)
        .find(|&i| !m.set(1).contains(&m.marker(i)))
        .ok_or(Error::NotRestricted)?;
    let a = m.marker(i);
    let rest = |from: usize| OmegaMonomial {
        steps: m.steps[from - 1..].to_vec(),
        tail: m.tail.clone(),
    };
    let mut split = vec![(fm.slice(1, i - 1).without(a), rest(i + 1))];
    for j in (2..=i).filter(|&j| m.set(j).contains(&a)) {
        split.push((fm.slice(1, j - 1).without(a), rest(j)));
    }
    let mut cases = Vec::new();
    for (p, q) in split {
        let Some(p) = p else { continue };
        let u = finite_machine(alphabet, &p)?;
        let b = reduce(&complete(&omega_rec(alphabet, &q)?)?)?;
        cases.push((u, b));
    }
    if cases.is_empty() {
        return empty_automaton(alphabet);
    }
    reduce(&complete(&omega_cases(alphabet, a, &cases)?)?)
}

/// Builds a deterministic automaton for a restricted unambiguous monomial.
/// Unambiguity is checked up to a length bound past which the pair search
/// cannot find new witnesses.
pub fn monomial_to_det_po2(m: &OmegaMonomial, alphabet: &[char]) -> Result<Po2Automaton> {
    m.check_alphabet(alphabet)?;
    if !m.is_restricted() {
        return Err(Error::NotRestricted);
    }
    let k = m.degree();
    let bound = 2 * (k + 1) * (k + 1);
    if let Unambiguity::Ambiguous { word, .. } = is_unambiguous_bounded(m, bound) {
        return Err(Error::Ambiguous(format!("{word} has two factorizations")));
    }
    omega_rec(alphabet, m)
}
