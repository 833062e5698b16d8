//! Emptiness, inclusion, equivalence and universality, witnessed by words
//! `u·a^ω`.
//!
//! The search runs breadth-first over spokes `u` in length-lexicographic
//! order, but merges spokes with the same two-way summary: the states in
//! which a run can first cross from `u` into the rest of the word, and for
//! every Y-state arriving at the last letter of `u`, the X-states in which
//! it can come back out. Spokes with equal summaries are interchangeable in
//! front of any suffix, so the search is exact and terminates; the first
//! witness found is the length-lex least one.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::automaton::{chain_lengths, complement, complete, require_deterministic, require_well_formed, Letter, Po2Automaton, Polarity, StateId};
use crate::error::{Error, Result};
use crate::run::member;
use crate::words::LassoWord;

/// Summaries explored before giving up with [`Error::BudgetExceeded`].
pub const DEFAULT_BUDGET: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness {
    pub spoke: Vec<char>,
    pub letter: char,
}

impl Witness {
    pub fn lasso(&self) -> LassoWord {
        LassoWord::new(self.spoke.clone(), vec![self.letter]).expect("period is one letter")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lasso())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    Nonempty(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Included,
    Counterexample(Witness),
}

/// Which language contains the counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Difference {
    OnlyLeft,
    OnlyRight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Counterexample { witness: Witness, side: Difference },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Universality {
    Universal,
    Counterexample(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Summary {
    entry: Vec<StateId>,
    back: Vec<Vec<StateId>>,
}

impl Summary {
    fn start(a: &Po2Automaton) -> Self {
        let back = (0..a.num_states())
            .map(|z| match a.polarity(z) {
                Polarity::Y => sorted(a.successors(z, Letter::LeftEnd).iter().copied()),
                Polarity::X => Vec::new(),
            })
            .collect();
        Summary {
            entry: sorted(a.initial_states()),
            back,
        }
    }

    /// X-states leaving the new last position `c` to the right, for runs
    /// that start there in `from`.
    fn exits(&self, a: &Po2Automaton, c: char, from: impl IntoIterator<Item = StateId>) -> Vec<StateId> {
        let mut seen: HashSet<StateId> = HashSet::new();
        let mut todo: Vec<StateId> = from.into_iter().collect();
        let mut out = BTreeSet::new();
        while let Some(s) = todo.pop() {
            if !seen.insert(s) {
                continue;
            }
            for &t in a.successors(s, Letter::Sym(c)) {
                match a.polarity(t) {
                    Polarity::X => {
                        out.insert(t);
                    }
                    Polarity::Y => todo.extend(self.back[t].iter().copied()),
                }
            }
        }
        out.into_iter().collect()
    }

    fn extend(&self, a: &Po2Automaton, c: char) -> Self {
        let entry = self.exits(a, c, self.entry.iter().copied());
        let back = (0..a.num_states())
            .map(|z| match a.polarity(z) {
                Polarity::Y => self.exits(a, c, [z]),
                Polarity::X => Vec::new(),
            })
            .collect();
        Summary { entry, back }
    }
}

fn sorted(it: impl IntoIterator<Item = StateId>) -> Vec<StateId> {
    let s: BTreeSet<StateId> = it.into_iter().collect();
    s.into_iter().collect()
}

/// Least `u·a^ω` accepted by every automaton in `all`, optionally with
/// `|u| <= max_len`. Merging never drops the least witness: a spoke is only
/// skipped when a smaller one of at most the same length has its summary.
fn search(all: &[&Po2Automaton], budget: usize, max_len: Option<usize>) -> Result<Option<Witness>> {
    let alphabet = all[0].alphabet().to_vec();
    let start: Vec<Summary> = all.iter().map(|a| Summary::start(a)).collect();
    let mut seen: HashSet<Vec<Summary>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(Vec::<char>::new(), start)]);
    while let Some((u, sums)) = queue.pop_front() {
        for &c in &alphabet {
            let w = LassoWord::new(u.clone(), vec![c])?;
            let mut ok = true;
            for a in all {
                if !member(a, &w)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(Witness { spoke: u, letter: c }));
            }
        }
        if max_len.is_some_and(|l| u.len() >= l) {
            continue;
        }
        for &c in &alphabet {
            let next: Vec<Summary> = all.iter().zip(&sums).map(|(a, s)| s.extend(a, c)).collect();
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                return Err(Error::BudgetExceeded(budget));
            }
            seen.insert(next.clone());
            let mut v = u.clone();
            v.push(c);
            queue.push_back((v, next));
        }
    }
    Ok(None)
}

/// Spoke length within which a nonempty language has a witness.
pub fn emptiness_bound(a: &Po2Automaton) -> Result<usize> {
    Ok(chain_lengths(&complete(a)?)?.all.saturating_sub(1))
}

/// Spoke length within which a failed inclusion has a counterexample.
pub fn inclusion_bound(a: &Po2Automaton, b: &Po2Automaton) -> usize {
    a.num_states() + b.num_states() + 2
}

pub fn is_empty(a: &Po2Automaton) -> Result<Emptiness> {
    is_empty_with_budget(a, DEFAULT_BUDGET)
}

pub fn is_empty_with_budget(a: &Po2Automaton, budget: usize) -> Result<Emptiness> {
    require_well_formed(a)?;
    Ok(match search(&[a], budget, None)? {
        None => Emptiness::Empty,
        Some(w) => Emptiness::Nonempty(w),
    })
}

/// Least witness with `|u| <= bound`, i.e. the first hit of enumerating
/// all `u·a^ω` in length-lex order up to that spoke length.
pub fn is_empty_within(a: &Po2Automaton, bound: usize) -> Result<Emptiness> {
    require_well_formed(a)?;
    Ok(match search(&[a], usize::MAX, Some(bound))? {
        None => Emptiness::Empty,
        Some(w) => Emptiness::Nonempty(w),
    })
}

pub fn includes(a: &Po2Automaton, b: &Po2Automaton) -> Result<Inclusion> {
    includes_with_budget(a, b, DEFAULT_BUDGET)
}

/// Whether `L(a) ⊆ L(b)`; `b` must be deterministic.
pub fn includes_with_budget(a: &Po2Automaton, b: &Po2Automaton, budget: usize) -> Result<Inclusion> {
    require_well_formed(a)?;
    require_deterministic(b)?;
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let nb = complement(&complete(b)?)?;
    Ok(match search(&[a, &nb], budget, None)? {
        None => Inclusion::Included,
        Some(w) => Inclusion::Counterexample(w),
    })
}

pub fn equivalent(a: &Po2Automaton, b: &Po2Automaton) -> Result<Equivalence> {
    equivalent_with_budget(a, b, DEFAULT_BUDGET)
}

/// Both inclusions; `a` and `b` must be deterministic. The budget applies to
/// each direction separately.
pub fn equivalent_with_budget(a: &Po2Automaton, b: &Po2Automaton, budget: usize) -> Result<Equivalence> {
    require_deterministic(a)?;
    if let Inclusion::Counterexample(witness) = includes_with_budget(a, b, budget)? {
        return Ok(Equivalence::Counterexample {
            witness,
            side: Difference::OnlyLeft,
        });
    }
    Ok(match includes_with_budget(b, a, budget)? {
        Inclusion::Included => Equivalence::Equivalent,
        Inclusion::Counterexample(witness) => Equivalence::Counterexample {
            witness,
            side: Difference::OnlyRight,
        },
    })
}

pub fn is_universal(a: &Po2Automaton) -> Result<Universality> {
    is_universal_with_budget(a, DEFAULT_BUDGET)
}

pub fn is_universal_with_budget(a: &Po2Automaton, budget: usize) -> Result<Universality> {
    require_deterministic(a)?;
    Ok(match is_empty_with_budget(&complement(&complete(a)?)?, budget)? {
        Emptiness::Empty => Universality::Universal,
        Emptiness::Nonempty(w) => Universality::Counterexample(w),
    })
}
