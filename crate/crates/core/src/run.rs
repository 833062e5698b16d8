//! Runs of automata on lasso words.

use std::collections::{BTreeSet, VecDeque};

use crate::automaton::{require_deterministic, require_well_formed, Letter, Po2Automaton, Polarity, StateId};
use crate::error::Result;
use crate::words::LassoWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    /// Head position; 0 is the left end marker.
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// Present unless the run got stuck.
    pub stationary: Option<StateId>,
    /// The first configurations of the run, up to the requested trace limit.
    pub trace: Vec<Configuration>,
}

impl RunOutcome {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

/// One deterministic step. `None` when no transition applies.
pub fn step_det(a: &Po2Automaton, c: Configuration, w: &LassoWord) -> Result<Option<Configuration>> {
    require_deterministic(a)?;
    Ok(step_unchecked(a, c, w))
}

fn step_unchecked(a: &Po2Automaton, c: Configuration, w: &LassoWord) -> Option<Configuration> {
    let to = a.next(c.state, w.letter(c.position))?;
    let position = match a.polarity(to) {
        Polarity::X => c.position + 1,
        Polarity::Y => c.position.checked_sub(1)?,
    };
    Some(Configuration { state: to, position })
}

fn is_stationary(a: &Po2Automaton, c: Configuration, w: &LassoWord, period: &BTreeSet<char>) -> bool {
    a.polarity(c.state) == Polarity::X
        && c.position > w.spoke().len()
        && period.iter().all(|&l| a.has_self_loop(c.state, l))
}

pub fn run_det(a: &Po2Automaton, w: &LassoWord) -> Result<RunOutcome> {
    run_det_traced(a, w, 0)
}

/// [`run_det`] recording the first `trace_limit` configurations.
pub fn run_det_traced(a: &Po2Automaton, w: &LassoWord, trace_limit: usize) -> Result<RunOutcome> {
    require_deterministic(a)?;
    let start = Configuration {
        state: a.initial().expect("deterministic"),
        position: 1,
    };
    run_from(a, w, start, trace_limit)
}

/// Deterministic run started in an arbitrary configuration.
pub fn run_det_from(a: &Po2Automaton, w: &LassoWord, start: Configuration) -> Result<RunOutcome> {
    require_deterministic(a)?;
    run_from(a, w, start, 0)
}

fn run_from(a: &Po2Automaton, w: &LassoWord, start: Configuration, trace_limit: usize) -> Result<RunOutcome> {
    w.check_alphabet(a.alphabet())?;
    let z = a.num_states();
    let cap = (z + 2) * (start.position + w.spoke().len() + (z + 2) * w.period().len() + 2);
    let period = w.period_alph();
    let mut left = vec![false; z];
    let mut trace = Vec::new();
    let mut c = start;
    for _ in 0..=cap {
        if trace.len() < trace_limit {
            trace.push(c);
        }
        if is_stationary(a, c, w, &period) {
            let verdict = if a.is_final(c.state) {
                Verdict::Accepted
            } else {
                Verdict::Rejected
            };
            return Ok(RunOutcome {
                verdict,
                stationary: Some(c.state),
                trace,
            });
        }
        let Some(next) = step_unchecked(a, c, w) else {
            return Ok(RunOutcome {
                verdict: Verdict::Stuck,
                stationary: None,
                trace,
            });
        };
        if next.state != c.state {
            left[c.state] = true;
            assert!(!left[next.state], "state re-entered in a partially ordered automaton");
        }
        c = next;
    }
    panic!("run exceeded its step cap of {cap}");
}

/// Membership for any well-formed automaton; dispatches on determinism.
pub fn member(a: &Po2Automaton, w: &LassoWord) -> Result<bool> {
    if a.is_deterministic() {
        Ok(run_det(a, w)?.accepted())
    } else {
        membership_nondet(a, w)
    }
}

/// Default search window `|spoke| + (|Z| + 2)·|period|`.
pub fn default_window(a: &Po2Automaton, w: &LassoWord) -> usize {
    w.spoke().len() + (a.num_states() + 2) * w.period().len()
}

pub fn membership_nondet(a: &Po2Automaton, w: &LassoWord) -> Result<bool> {
    membership_nondet_window(a, w, default_window(a, w))
}

/// Reachability over configurations with positions at most `window`.
pub fn membership_nondet_window(a: &Po2Automaton, w: &LassoWord, window: usize) -> Result<bool> {
    require_well_formed(a)?;
    w.check_alphabet(a.alphabet())?;
    let period = w.period_alph();
    let n = a.num_states();
    let mut seen = vec![false; n * (window + 1)];
    let mut queue = VecDeque::new();
    for z in a.initial_states() {
        if window >= 1 {
            seen[z * (window + 1) + 1] = true;
            queue.push_back(Configuration { state: z, position: 1 });
        }
    }
    while let Some(c) = queue.pop_front() {
        if a.is_final(c.state) && is_stationary(a, c, w, &period) {
            return Ok(true);
        }
        let letter: Letter = w.letter(c.position);
        for &to in a.successors(c.state, letter) {
            let position = match a.polarity(to) {
                Polarity::X => c.position + 1,
                Polarity::Y => match c.position.checked_sub(1) {
                    Some(p) => p,
                    None => continue,
                },
            };
            if position > window {
                continue;
            }
            let key = to * (window + 1) + position;
            if !seen[key] {
                seen[key] = true;
                queue.push_back(Configuration { state: to, position });
            }
        }
    }
    Ok(false)
}
