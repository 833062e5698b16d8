//! The automaton data model: states with X/Y polarity, transitions over the
//! alphabet plus the left end marker, and the structural predicates
//! (partial order, determinism, completeness).
//!
//! The partial order is never stored. It is re-derived from the graph of
//! non-self-loop transitions whenever it is needed, so an automaton value can
//! describe an ill-formed machine and [`validate`] reports why.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub type StateId = usize;

/// Direction a state is entered with: X ("next") states are entered by a
/// right move of the head, Y ("yesterday") states by a left move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    X,
    Y,
}

impl Polarity {
    /// Head displacement when a state of this polarity is entered.
    pub fn delta(self) -> isize {
        match self {
            Polarity::X => 1,
            Polarity::Y => -1,
        }
    }
}

/// A tape symbol: an alphabet letter or the left end marker at position 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    LeftEnd,
    Sym(char),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::LeftEnd => write!(f, "▷"),
            Letter::Sym(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub name: String,
    pub polarity: Polarity,
    pub initial: bool,
    pub is_final: bool,
}

pub type Transition = (StateId, Letter, StateId);

/// A two-way Büchi automaton. Values are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Po2Automaton {
    alphabet: Vec<char>,
    states: Vec<State>,
    transitions: BTreeSet<Transition>,
    succ: Vec<BTreeMap<Letter, Vec<StateId>>>,
}

impl fmt::Debug for Po2Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Po2Automaton")
            .field("alphabet", &self.alphabet)
            .field("states", &self.states.len())
            .field("transitions", &self.transitions.len())
            .finish()
    }
}

impl Po2Automaton {
    /// Creates an automaton after checking referential integrity: unique
    /// letters and state names, transition endpoints and letters in range.
    /// Structural po2 properties are *not* checked here (see [`validate`]).
    pub fn new(
        alphabet: Vec<char>,
        states: Vec<State>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &c in &alphabet {
            if !seen.insert(c) {
                return Err(Error::DuplicateLetter(c));
            }
        }
        let mut names = BTreeSet::new();
        for s in &states {
            if !names.insert(s.name.as_str()) {
                return Err(Error::DuplicateState(s.name.clone()));
            }
        }
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        let mut succ = vec![BTreeMap::<Letter, Vec<StateId>>::new(); states.len()];
        for &(from, letter, to) in &transitions {
            for id in [from, to] {
                if id >= states.len() {
                    return Err(Error::UnknownState(format!("#{id}")));
                }
            }
            if let Letter::Sym(c) = letter {
                if !seen.contains(&c) {
                    return Err(Error::UnknownLetter(c));
                }
            }
            succ[from].entry(letter).or_default().push(to);
        }
        Ok(Self {
            alphabet,
            states,
            transitions,
            succ,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, id: StateId) -> &State {
        &self.states[id]
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn find_state(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.transitions.iter().copied()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn polarity(&self, z: StateId) -> Polarity {
        self.states[z].polarity
    }

    pub fn is_final(&self, z: StateId) -> bool {
        self.states[z].is_final
    }

    pub fn initial_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.initial)
            .map(|(i, _)| i)
    }

    /// The unique initial state, if there is exactly one.
    pub fn initial(&self) -> Option<StateId> {
        let mut it = self.initial_states();
        match (it.next(), it.next()) {
            (Some(z), None) => Some(z),
            _ => None,
        }
    }

    pub fn successors(&self, z: StateId, letter: Letter) -> &[StateId] {
        self.succ[z].get(&letter).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The first successor; meaningful for deterministic automata.
    pub fn next(&self, z: StateId, letter: Letter) -> Option<StateId> {
        self.successors(z, letter).first().copied()
    }

    pub fn outgoing(&self, z: StateId) -> impl Iterator<Item = (Letter, StateId)> + '_ {
        self.succ[z]
            .iter()
            .flat_map(|(&l, ts)| ts.iter().map(move |&t| (l, t)))
    }

    pub fn has_self_loop(&self, z: StateId, c: char) -> bool {
        self.successors(z, Letter::Sym(c)).contains(&z)
    }

    pub fn self_loops(&self, z: StateId) -> BTreeSet<char> {
        self.alphabet
            .iter()
            .copied()
            .filter(|&c| self.has_self_loop(z, c))
            .collect()
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial_states().count() == 1 && self.succ.iter().all(|m| m.values().all(|t| t.len() <= 1))
    }

    pub fn is_complete(&self) -> bool {
        self.missing_transitions().is_empty()
    }

    pub fn is_well_formed(&self) -> bool {
        structure_violations(self).is_empty()
    }

    /// `(state, letter)` pairs lacking a transition, in state order.
    pub fn missing_transitions(&self) -> Vec<(StateId, Letter)> {
        let mut out = Vec::new();
        for (z, s) in self.states.iter().enumerate() {
            for &c in &self.alphabet {
                if self.successors(z, Letter::Sym(c)).is_empty() {
                    out.push((z, Letter::Sym(c)));
                }
            }
            if s.polarity == Polarity::Y && self.successors(z, Letter::LeftEnd).is_empty() {
                out.push((z, Letter::LeftEnd));
            }
        }
        out
    }

    /// A topological order of the non-self-loop transition graph, or `None`
    /// when that graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<StateId>> {
        let n = self.states.len();
        let mut indeg = vec![0usize; n];
        let edges = self.order_edges();
        for targets in &edges {
            for &t in targets {
                indeg[t] += 1;
            }
        }
        let mut stack: Vec<StateId> = (0..n).rev().filter(|&z| indeg[z] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(z) = stack.pop() {
            order.push(z);
            for &t in edges[z].iter().rev() {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn order_edges(&self) -> Vec<Vec<StateId>> {
        let mut edges = vec![BTreeSet::new(); self.states.len()];
        for &(from, _, to) in &self.transitions {
            if from != to {
                edges[from].insert(to);
            }
        }
        edges.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Copies the automaton with a different set of final states.
    pub fn with_finals(&self, is_final: impl Fn(StateId) -> bool) -> Self {
        let mut out = self.clone();
        for (z, s) in out.states.iter_mut().enumerate() {
            s.is_final = is_final(z);
        }
        out
    }
}

/// Incremental construction with name-based bookkeeping.
#[derive(Clone, Debug)]
pub struct Builder {
    alphabet: Vec<char>,
    states: Vec<State>,
    names: HashMap<String, StateId>,
    transitions: BTreeSet<Transition>,
}

impl Builder {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        Self {
            alphabet: alphabet.into_iter().collect(),
            states: Vec::new(),
            names: HashMap::new(),
            transitions: BTreeSet::new(),
        }
    }

    /// Adds a state; a name clash is resolved by appending a numeric suffix.
    pub fn state(&mut self, name: impl Into<String>, polarity: Polarity) -> StateId {
        let base = name.into();
        let mut name = base.clone();
        let mut n = 1;
        while self.names.contains_key(&name) {
            name = format!("{base}#{n}");
            n += 1;
        }
        let id = self.states.len();
        self.names.insert(name.clone(), id);
        self.states.push(State {
            name,
            polarity,
            initial: false,
            is_final: false,
        });
        id
    }

    pub fn lookup(&self, name: &str) -> Option<StateId> {
        self.names.get(name).copied()
    }

    pub fn set_initial(&mut self, z: StateId, initial: bool) -> &mut Self {
        self.states[z].initial = initial;
        self
    }

    pub fn set_final(&mut self, z: StateId, is_final: bool) -> &mut Self {
        self.states[z].is_final = is_final;
        self
    }

    pub fn add(&mut self, from: StateId, letter: Letter, to: StateId) -> &mut Self {
        self.transitions.insert((from, letter, to));
        self
    }

    pub fn add_sym(&mut self, from: StateId, c: char, to: StateId) -> &mut Self {
        self.add(from, Letter::Sym(c), to)
    }

    pub fn polarity(&self, z: StateId) -> Polarity {
        self.states[z].polarity
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn build(self) -> Result<Po2Automaton> {
        Po2Automaton::new(self.alphabet, self.states, self.transitions)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Breaks the po2 structure (order, end-marker discipline).
    Structure,
    Determinism,
    Completeness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_well_formed_po2: bool,
    pub is_deterministic: bool,
    pub is_complete: bool,
    pub violations: Vec<Violation>,
}

fn structure_violations(a: &Po2Automaton) -> Vec<Violation> {
    let mut out = Vec::new();
    for (from, letter, to) in a.transitions() {
        if letter == Letter::LeftEnd
            && (a.polarity(from) != Polarity::Y || a.polarity(to) != Polarity::X)
        {
            out.push(Violation {
                kind: ViolationKind::Structure,
                message: format!(
                    "▷-transition {} -> {} must lead from a Y-state to an X-state",
                    a.state(from).name,
                    a.state(to).name
                ),
            });
        }
    }
    if a.topological_order().is_none() {
        for cycle in cyclic_components(a) {
            let names: Vec<_> = cycle.iter().map(|&z| a.state(z).name.as_str()).collect();
            out.push(Violation {
                kind: ViolationKind::Structure,
                message: format!("states {{{}}} lie on a transition cycle", names.join(", ")),
            });
        }
    }
    out
}

/// Strongly connected components with more than one state (Tarjan).
fn cyclic_components(a: &Po2Automaton) -> Vec<Vec<StateId>> {
    struct Tarjan<'a> {
        edges: &'a [Vec<StateId>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<StateId>,
        next: usize,
        out: Vec<Vec<StateId>>,
    }
    impl Tarjan<'_> {
        fn visit(&mut self, v: StateId) {
            self.index[v] = Some(self.next);
            self.low[v] = self.next;
            self.next += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for i in 0..self.edges[v].len() {
                let w = self.edges[v][i];
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                    _ => {}
                }
            }
            if Some(self.low[v]) == self.index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = self.stack.pop().expect("tarjan stack");
                    self.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                if comp.len() > 1 {
                    comp.sort_unstable();
                    self.out.push(comp);
                }
            }
        }
    }
    let edges = a.order_edges();
    let n = edges.len();
    let mut t = Tarjan {
        edges: &edges,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    t.out.sort();
    t.out
}

pub fn validate(a: &Po2Automaton) -> ValidationReport {
    let mut violations = structure_violations(a);
    let initials = a.initial_states().count();
    if initials != 1 {
        violations.push(Violation {
            kind: ViolationKind::Determinism,
            message: format!("{initials} initial states"),
        });
    }
    for (z, s) in a.states().iter().enumerate() {
        for (letter, targets) in &a.succ[z] {
            if targets.len() > 1 {
                violations.push(Violation {
                    kind: ViolationKind::Determinism,
                    message: format!("state {} has {} successors on {letter}", s.name, targets.len()),
                });
            }
        }
    }
    for (z, letter) in a.missing_transitions() {
        violations.push(Violation {
            kind: ViolationKind::Completeness,
            message: format!("state {} has no transition on {letter}", a.state(z).name),
        });
    }
    let has = |k| violations.iter().any(|v: &Violation| v.kind == k);
    ValidationReport {
        is_well_formed_po2: !has(ViolationKind::Structure),
        is_deterministic: !has(ViolationKind::Determinism),
        is_complete: !has(ViolationKind::Completeness),
        violations,
    }
}

pub(crate) fn require_well_formed(a: &Po2Automaton) -> Result<()> {
    match structure_violations(a).first() {
        None => Ok(()),
        Some(v) => Err(Error::NotWellFormed(v.message.clone())),
    }
}

pub(crate) fn require_deterministic(a: &Po2Automaton) -> Result<()> {
    require_well_formed(a)?;
    if a.is_deterministic() {
        Ok(())
    } else {
        Err(Error::NotDeterministic)
    }
}

/// Adds a non-final X sink absorbing every missing transition. An already
/// complete automaton is returned unchanged.
pub fn complete(a: &Po2Automaton) -> Result<Po2Automaton> {
    require_well_formed(a)?;
    let missing = a.missing_transitions();
    if missing.is_empty() {
        return Ok(a.clone());
    }
    let mut states = a.states.clone();
    let mut name = String::from("sink");
    let mut n = 1;
    while states.iter().any(|s| s.name == name) {
        name = format!("sink{n}");
        n += 1;
    }
    let sink = states.len();
    states.push(State {
        name,
        polarity: Polarity::X,
        initial: false,
        is_final: false,
    });
    let mut transitions = a.transitions.clone();
    transitions.extend(missing.into_iter().map(|(z, l)| (z, l, sink)));
    transitions.extend(a.alphabet.iter().map(|&c| (sink, Letter::Sym(c), sink)));
    Po2Automaton::new(a.alphabet.clone(), states, transitions)
}

/// An equivalent deterministic automaton whose initial state is an
/// X-state: a Y-initial `z₀` gets a fresh X-state copying its letter
/// transitions in front. Runs start at position 1 either way.
pub fn x_initial(a: &Po2Automaton) -> Result<Po2Automaton> {
    require_deterministic(a)?;
    let z0 = a.initial().expect("deterministic");
    if a.polarity(z0) == Polarity::X {
        return Ok(a.clone());
    }
    let mut states = a.states.clone();
    let mut name = String::from("start");
    let mut n = 1;
    while states.iter().any(|s| s.name == name) {
        name = format!("start{n}");
        n += 1;
    }
    states[z0].initial = false;
    let s = states.len();
    states.push(State {
        name,
        polarity: Polarity::X,
        initial: true,
        is_final: false,
    });
    let mut transitions = a.transitions.clone();
    for (l, t) in a.outgoing(z0) {
        if let Letter::Sym(_) = l {
            transitions.insert((s, l, t));
        }
    }
    Po2Automaton::new(a.alphabet.clone(), states, transitions)
}

/// Drops unreachable states and merges bisimilar ones (same polarity,
/// finality and successor classes). Runs map onto runs of the quotient, so
/// the language is unchanged. Falls back to the trimmed automaton in the
/// unlikely case that merging would close a cycle.
pub fn reduce(a: &Po2Automaton) -> Result<Po2Automaton> {
    require_deterministic(a)?;
    let z0 = a.initial().expect("deterministic");
    let mut seen = vec![false; a.num_states()];
    let mut stack = vec![z0];
    seen[z0] = true;
    while let Some(z) = stack.pop() {
        for (_, t) in a.outgoing(z) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    let live: Vec<StateId> = (0..a.num_states()).filter(|&z| seen[z]).collect();
    let mut letters: Vec<Letter> = vec![Letter::LeftEnd];
    letters.extend(a.alphabet.iter().map(|&c| Letter::Sym(c)));

    let mut class: Vec<usize> = vec![0; a.num_states()];
    let mut count = 0;
    loop {
        let mut ids: HashMap<(Polarity, bool, usize, Vec<Option<usize>>), usize> = HashMap::new();
        let mut next = class.clone();
        for &z in &live {
            let succ = letters.iter().map(|&l| a.next(z, l).map(|t| class[t])).collect();
            let key = (a.polarity(z), a.is_final(z), class[z], succ);
            let n = ids.len();
            next[z] = *ids.entry(key).or_insert(n);
        }
        let stable = ids.len() == count;
        count = ids.len();
        class = next;
        if stable {
            break;
        }
    }

    let mut rep: Vec<Option<StateId>> = vec![None; count];
    for &z in &live {
        rep[class[z]].get_or_insert(z);
    }
    let states: Vec<State> = rep
        .iter()
        .map(|r| {
            let s = &a.states[r.expect("every class has a member")];
            State {
                initial: false,
                ..s.clone()
            }
        })
        .collect();
    let mut transitions = Vec::new();
    for (c, r) in rep.iter().enumerate() {
        for (l, t) in a.outgoing(r.unwrap()) {
            transitions.push((c, l, class[t]));
        }
    }
    let mut states = states;
    states[class[z0]].initial = true;
    let q = Po2Automaton::new(a.alphabet.clone(), states, transitions)?;
    if q.is_well_formed() {
        return Ok(q);
    }
    let index: HashMap<StateId, StateId> = live.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let states = live.iter().map(|&z| a.states[z].clone()).collect();
    let transitions: Vec<Transition> = a
        .transitions()
        .filter(|(f, _, _)| seen[*f])
        .map(|(f, l, t)| (index[&f], l, index[&t]))
        .collect();
    Po2Automaton::new(a.alphabet.clone(), states, transitions)
}

/// Swaps final and non-final states of a complete deterministic automaton.
pub fn complement(a: &Po2Automaton) -> Result<Po2Automaton> {
    require_deterministic(a)?;
    if !a.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(a.with_finals(|z| !a.is_final(z)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLengths {
    /// Longest chain of states.
    pub all: usize,
    /// Longest chain counting X-states only.
    pub next_states: usize,
}

pub fn chain_lengths(a: &Po2Automaton) -> Result<ChainLengths> {
    require_well_formed(a)?;
    let order = a.topological_order().expect("well-formed automata are acyclic");
    let edges = a.order_edges();
    let n = a.num_states();
    let mut all = vec![1usize; n];
    let mut xs: Vec<usize> = (0..n).map(|z| usize::from(a.polarity(z) == Polarity::X)).collect();
    for &z in order.iter().rev() {
        let own = usize::from(a.polarity(z) == Polarity::X);
        for &t in &edges[z] {
            all[z] = all[z].max(1 + all[t]);
            xs[z] = xs[z].max(own + xs[t]);
        }
    }
    Ok(ChainLengths {
        all: all.into_iter().max().unwrap_or(0),
        next_states: xs.into_iter().max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universal(alphabet: &str) -> Po2Automaton {
        let mut b = Builder::new(alphabet.chars());
        let q = b.state("q", Polarity::X);
        b.set_initial(q, true).set_final(q, true);
        for c in alphabet.chars() {
            b.add_sym(q, c, q);
        }
        b.build().unwrap()
    }

    #[test]
    fn one_state_universal_is_all_good() {
        let r = validate(&universal("a"));
        assert!(r.is_well_formed_po2 && r.is_deterministic && r.is_complete);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn two_cycle_is_not_po2() {
        let mut b = Builder::new("a".chars());
        let q = b.state("q", Polarity::X);
        let r = b.state("r", Polarity::X);
        b.set_initial(q, true);
        b.add_sym(q, 'a', r).add_sym(r, 'a', q);
        let report = validate(&b.build().unwrap());
        assert!(!report.is_well_formed_po2);
        assert!(report.violations[0].message.contains("q, r"));
    }

    #[test]
    fn left_end_from_x_state_is_rejected() {
        let mut b = Builder::new("a".chars());
        let q = b.state("q", Polarity::X);
        let r = b.state("r", Polarity::X);
        b.set_initial(q, true);
        b.add(q, Letter::LeftEnd, r);
        assert!(!validate(&b.build().unwrap()).is_well_formed_po2);
    }

    #[test]
    fn unknown_letter_is_an_error() {
        let mut b = Builder::new("a".chars());
        let q = b.state("q", Polarity::X);
        b.add_sym(q, 'b', q);
        assert_eq!(b.build().unwrap_err(), Error::UnknownLetter('b'));
    }

    #[test]
    fn complete_is_identity_on_complete_input() {
        let u = universal("ab");
        assert_eq!(complete(&u).unwrap(), u);
    }

    #[test]
    fn complete_adds_sink() {
        let mut b = Builder::new("ab".chars());
        let q = b.state("q", Polarity::X);
        b.set_initial(q, true).set_final(q, true);
        let c = complete(&b.build().unwrap()).unwrap();
        assert_eq!(c.num_states(), 2);
        let sink = c.find_state("sink").unwrap();
        assert!(!c.is_final(sink));
        for l in ['a', 'b'] {
            assert_eq!(c.next(q, Letter::Sym(l)), Some(sink));
            assert_eq!(c.next(sink, Letter::Sym(l)), Some(sink));
        }
        assert!(validate(&c).is_complete && c.is_deterministic());
    }

    #[test]
    fn complete_routes_missing_left_end_to_sink() {
        let mut b = Builder::new("a".chars());
        let y = b.state("y", Polarity::Y);
        b.set_initial(y, true);
        b.add_sym(y, 'a', y);
        let c = complete(&b.build().unwrap()).unwrap();
        assert_eq!(c.next(y, Letter::LeftEnd), c.find_state("sink"));
    }

    #[test]
    fn complement_is_an_involution_and_needs_completeness() {
        let u = universal("ab");
        let cu = complement(&u).unwrap();
        assert!(!cu.is_final(0));
        assert_eq!(complement(&cu).unwrap(), u);

        let mut b = Builder::new("ab".chars());
        let q = b.state("q", Polarity::X);
        b.set_initial(q, true);
        assert_eq!(complement(&b.build().unwrap()).unwrap_err(), Error::NotComplete);
    }

    #[test]
    fn chain_of_three_x_states() {
        let mut b = Builder::new("a".chars());
        let q: Vec<_> = (0..3).map(|i| b.state(format!("q{i}"), Polarity::X)).collect();
        b.set_initial(q[0], true);
        b.add_sym(q[0], 'a', q[1]).add_sym(q[1], 'a', q[2]).add_sym(q[2], 'a', q[2]);
        let c = chain_lengths(&b.build().unwrap()).unwrap();
        assert_eq!(c, ChainLengths { all: 3, next_states: 3 });
        assert_eq!(
            chain_lengths(&universal("a")).unwrap(),
            ChainLengths { all: 1, next_states: 1 }
        );
    }

    #[test]
    fn chain_counts_x_states_separately() {
        let mut b = Builder::new("a".chars());
        let x0 = b.state("x0", Polarity::X);
        let y = b.state("y", Polarity::Y);
        let x1 = b.state("x1", Polarity::X);
        b.set_initial(x0, true);
        b.add_sym(x0, 'a', y).add(y, Letter::LeftEnd, x1);
        let c = chain_lengths(&b.build().unwrap()).unwrap();
        assert_eq!(c, ChainLengths { all: 3, next_states: 2 });
    }
}
