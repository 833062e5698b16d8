//! Deterministic two-way machines over a tape with both end markers.
//!
//! This is the working representation for the monomial-to-automaton
//! translation. An ω-automaton is a machine that never reads the right end
//! marker; a finite-word acceptor has a pair of exit states (accept and
//! reject) that are entered only by reading the right end marker and have no
//! transitions of their own.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automaton::{Builder, Letter, Po2Automaton, Polarity, StateId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Tape {
    L,
    Sym(char),
    R,
}

#[derive(Clone, Debug)]
pub(crate) struct Machine {
    pub alphabet: Vec<char>,
    pub pol: Vec<Polarity>,
    pub names: Vec<String>,
    pub fin: Vec<bool>,
    pub delta: BTreeMap<(StateId, Tape), StateId>,
    pub init: StateId,
    pub exits: Option<(StateId, StateId)>,
}

impl Machine {
    pub fn new(alphabet: &[char]) -> Self {
        Self {
            alphabet: alphabet.to_vec(),
            pol: Vec::new(),
            names: Vec::new(),
            fin: Vec::new(),
            delta: BTreeMap::new(),
            init: 0,
            exits: None,
        }
    }

    pub fn len(&self) -> usize {
        self.pol.len()
    }

    pub fn add(&mut self, name: impl Into<String>, pol: Polarity) -> StateId {
        self.pol.push(pol);
        self.names.push(name.into());
        self.fin.push(false);
        self.pol.len() - 1
    }

    pub fn set(&mut self, from: StateId, t: Tape, to: StateId) {
        debug_assert!(match t {
            Tape::L => self.pol[from] == Polarity::Y && self.pol[to] == Polarity::X,
            Tape::R => self.pol[from] == Polarity::X && self.pol[to] == Polarity::Y,
            Tape::Sym(_) => true,
        });
        self.delta.insert((from, t), to);
    }

    pub fn get(&self, from: StateId, t: Tape) -> Option<StateId> {
        self.delta.get(&(from, t)).copied()
    }

    pub fn loops(&mut self, z: StateId, letters: impl IntoIterator<Item = char>) {
        for c in letters {
            self.set(z, Tape::Sym(c), z);
        }
    }

    pub fn others(&self, a: char) -> Vec<char> {
        self.alphabet.iter().copied().filter(|&c| c != a).collect()
    }

    pub fn accept(&self) -> StateId {
        self.exits.expect("finite acceptor").0
    }

    pub fn reject(&self) -> StateId {
        self.exits.expect("finite acceptor").1
    }

    fn outgoing(&self, z: StateId) -> impl Iterator<Item = (Tape, StateId)> + '_ {
        self.delta
            .range((z, Tape::L)..=(z, Tape::R))
            .map(|(&(_, t), &to)| (t, to))
    }

    /// Copies (the reachable part of) `other` into `self`, prefixing names.
    /// Returns the id map; unreached states map to `None`.
    pub fn embed(&mut self, other: &Machine, tag: &str, only_reachable: bool, keep_finals: bool) -> Vec<Option<StateId>> {
        let keep = if only_reachable {
            other.reachable(other.init)
        } else {
            vec![true; other.len()]
        };
        let mut map = vec![None; other.len()];
        for z in 0..other.len() {
            if keep[z] {
                let id = self.add(format!("{tag}{}", other.names[z]), other.pol[z]);
                self.fin[id] = keep_finals && other.fin[z];
                map[z] = Some(id);
            }
        }
        for (&(f, t), &to) in &other.delta {
            if let (Some(f), Some(to)) = (map[f], map[to]) {
                self.delta.insert((f, t), to);
            }
        }
        map
    }

    pub fn reachable(&self, from: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(z) = queue.pop_front() {
            for (_, to) in self.outgoing(z) {
                if !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    /// A topological order of the non-self-loop graph starting at `init`,
    /// with exit states last.
    pub fn linear_order(&self) -> Result<Vec<StateId>> {
        let n = self.len();
        let exits: BTreeSet<StateId> = self.exits.map(|(a, r)| BTreeSet::from([a, r])).unwrap_or_default();
        let mut indeg = vec![0usize; n];
        let mut succ = vec![BTreeSet::new(); n];
        for (&(f, _), &to) in &self.delta {
            if f != to && succ[f].insert(to) {
                indeg[to] += 1;
            }
        }
        if indeg[self.init] != 0 {
            return Err(Error::NotWellFormed("initial state has incoming transitions".into()));
        }
        let mut order = Vec::with_capacity(n);
        let mut ready = VecDeque::from([self.init]);
        let mut others: Vec<StateId> = (0..n)
            .filter(|&z| z != self.init && indeg[z] == 0 && !exits.contains(&z))
            .collect();
        ready.extend(others.drain(..));
        let mut late = Vec::new();
        while let Some(z) = ready.pop_front() {
            if exits.contains(&z) {
                late.push(z);
                continue;
            }
            order.push(z);
            for &t in &succ[z] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push_back(t);
                }
            }
        }
        for &e in &exits {
            if indeg[e] == 0 && !late.contains(&e) {
                late.push(e);
            }
        }
        order.extend(late);
        if order.len() != n {
            return Err(Error::NotWellFormed("machine has a transition cycle".into()));
        }
        Ok(order)
    }

    pub fn from_automaton(a: &Po2Automaton) -> Result<Self> {
        let mut m = Machine::new(a.alphabet());
        for s in a.states() {
            let id = m.add(s.name.clone(), s.polarity);
            m.fin[id] = s.is_final;
        }
        for (f, l, t) in a.transitions() {
            let tape = match l {
                Letter::LeftEnd => Tape::L,
                Letter::Sym(c) => Tape::Sym(c),
            };
            if m.delta.insert((f, tape), t).is_some() {
                return Err(Error::NotDeterministic);
            }
        }
        m.init = a.initial().ok_or(Error::NotDeterministic)?;
        Ok(m)
    }

    /// The reachable part as an ω-automaton. Right-end transitions and exit
    /// states must not be reachable.
    pub fn to_automaton(&self) -> Result<Po2Automaton> {
        let keep = self.reachable(self.init);
        let mut b = Builder::new(self.alphabet.iter().copied());
        let mut map = vec![None; self.len()];
        for z in (0..self.len()).filter(|&z| keep[z]) {
            let id = b.state(self.names[z].clone(), self.pol[z]);
            b.set_final(id, self.fin[z]);
            map[z] = Some(id);
        }
        b.set_initial(map[self.init].expect("init is reachable"), true);
        for (&(f, t), &to) in &self.delta {
            let (Some(f), Some(to)) = (map[f], map[to]) else { continue };
            let l = match t {
                Tape::L => Letter::LeftEnd,
                Tape::Sym(c) => Letter::Sym(c),
                Tape::R => return Err(Error::NotWellFormed("right end marker in ω-automaton".into())),
            };
            b.add(f, l, to);
        }
        b.build()
    }

    /// Makes the initial state an X-state without incoming transitions.
    pub fn x_normalize(&mut self) {
        let old = self.init;
        let s = self.add("start", Polarity::X);
        let moves: Vec<_> = self.outgoing(old).filter(|(t, _)| *t != Tape::L).collect();
        for (t, to) in moves {
            self.delta.insert((s, t), to);
        }
        self.fin[s] = self.fin[old];
        self.init = s;
    }

    fn needs_x_normalize(&self) -> bool {
        self.pol[self.init] == Polarity::Y || self.delta.iter().any(|(&(f, _), &to)| to == self.init && f != to)
    }

    /// Routes every missing transition to a reject seeker. Exit states keep
    /// no transitions.
    pub fn complete_finite(&mut self) {
        let (_, reject) = self.exits.expect("finite acceptor");
        let exits = [self.accept(), reject];
        let rj = self.add("rj", Polarity::X);
        let letters = self.alphabet.clone();
        self.loops(rj, letters.iter().copied());
        self.set(rj, Tape::R, reject);
        for z in 0..self.len() {
            if exits.contains(&z) {
                continue;
            }
            let mut tapes: Vec<Tape> = letters.iter().map(|&c| Tape::Sym(c)).collect();
            tapes.push(match self.pol[z] {
                Polarity::X => Tape::R,
                Polarity::Y => Tape::L,
            });
            for t in tapes {
                if self.get(z, t).is_none() {
                    let to = match (t, self.pol[z]) {
                        (Tape::R, _) => reject,
                        _ => rj,
                    };
                    self.set(z, t, to);
                }
            }
        }
    }

    /// Uses the letter `a` as the right end marker: right-end transitions
    /// are read on `a` instead.
    pub fn plug_right(&self, a: char) -> Machine {
        let mut m = self.clone();
        let ends: Vec<_> = self.delta.iter().filter(|(k, _)| k.1 == Tape::R).map(|(&k, &v)| (k.0, v)).collect();
        m.delta.retain(|k, _| k.1 != Tape::R);
        for (f, to) in ends {
            m.delta.insert((f, Tape::Sym(a)), to);
        }
        m
    }

    /// Mirror of [`Machine::plug_right`] for the left end marker.
    pub fn plug_left(&self, a: char) -> Machine {
        let mut m = self.clone();
        let ends: Vec<_> = self.delta.iter().filter(|(k, _)| k.1 == Tape::L).map(|(&k, &v)| (k.0, v)).collect();
        m.delta.retain(|k, _| k.1 != Tape::L);
        for (f, to) in ends {
            m.delta.insert((f, Tape::Sym(a)), to);
        }
        m
    }

    /// Relativizes to the suffix after the first `a`: started just after the
    /// first `a`-position, the result behaves as `self` does on that suffix
    /// with the `a` acting as the left end marker.
    ///
    /// Only a Y-state reading an `a` can be at or beyond the first `a`, so
    /// that is where the check happens: scan further left for another `a`.
    /// A state that changes on `a` comes back to the next `a` to the right
    /// and takes its real transition. A state looping on `a` keeps going in
    /// a speculative copy until it sees its next change, then checks; when
    /// confirmed it returns to the last `a` it crossed and replays from there.
    /// Whenever the scan hits the real left end, the first `a` was overrun:
    /// go forward to it and take the end-marker transition instead.
    pub fn relativize_left(&self, a: char) -> Result<Machine> {
        self.relativize(a, Side::Left)
    }

    /// Mirror image: the last `a` acts as the right end marker.
    pub fn relativize_right(&self, a: char) -> Result<Machine> {
        self.relativize(a, Side::Right)
    }

    fn relativize(&self, a: char, side: Side) -> Result<Machine> {
        if self.needs_x_normalize() {
            let mut m = self.clone();
            m.x_normalize();
            return m.relativize(a, side);
        }
        self.linear_order()?;
        let (back, fwd) = match side {
            Side::Left => (Polarity::Y, Polarity::X),
            Side::Right => (Polarity::X, Polarity::Y),
        };
        let own_end = match side {
            Side::Left => Tape::L,
            Side::Right => Tape::R,
        };
        let mut cur = Machine::new(&self.alphabet);
        for z in 0..self.len() {
            let id = cur.add(self.names[z].clone(), self.pol[z]);
            cur.fin[id] = self.fin[z];
        }
        cur.init = self.init;
        cur.exits = self.exits;
        let non_a = self.others(a);
        let sa = Tape::Sym(a);
        for z in 0..self.len() {
            let out: Vec<_> = self.outgoing(z).collect();
            if self.pol[z] != back || self.exits.is_some_and(|(x, y)| z == x || z == y) {
                for (t, to) in out {
                    cur.set(z, t, to);
                }
                continue;
            }
            for &(t, to) in &out {
                if t != sa && t != own_end {
                    cur.set(z, t, to);
                }
            }
            let name = &self.names[z];
            let fwd_s = cur.add(format!("fwd[{name}]"), fwd);
            cur.loops(fwd_s, non_a.iter().copied());
            if let Some(e) = self.get(z, own_end) {
                cur.set(fwd_s, sa, e);
            }
            let scan = cur.add(format!("scan[{name}]"), back);
            let ret = cur.add(format!("ret[{name}]"), fwd);
            cur.loops(scan, non_a.iter().copied());
            cur.set(scan, own_end, fwd_s);
            cur.set(scan, sa, ret);
            cur.loops(ret, non_a.iter().copied());
            if self.get(z, sa) != Some(z) {
                cur.set(z, sa, scan);
                if let Some(to) = self.get(z, sa) {
                    cur.set(ret, sa, to);
                }
                continue;
            }
            let spec = cur.add(format!("spec[{name}]"), back);
            let conf = cur.add(format!("conf[{name}]"), back);
            cur.set(z, sa, spec);
            cur.set(spec, own_end, fwd_s);
            cur.set(ret, sa, conf);
            for &c in &self.alphabet {
                let t = Tape::Sym(c);
                match self.get(z, t) {
                    Some(to) if to == z => {
                        cur.set(spec, t, spec);
                        if c != a {
                            cur.set(conf, t, conf);
                        }
                    }
                    to => {
                        cur.set(spec, t, scan);
                        if let Some(to) = to {
                            cur.set(conf, t, to);
                        }
                    }
                }
            }
        }
        Ok(cur)
    }

    /// Runs a finite acceptor on `▷ w ◁`. `None` if the run gets stuck or
    /// fails to halt.
    #[cfg(test)]
    pub fn run_finite(&self, w: &[char]) -> Option<bool> {
        self.run_tape(w, Tape::R)
    }

    /// Runs on `▷ w end`, where `end` is a letter taking the place of the
    /// right end marker. `None` if the run gets stuck, fails to halt, or
    /// moves past `end`.
    pub fn run_tape(&self, w: &[char], end: Tape) -> Option<bool> {
        let (acc, rej) = self.exits?;
        let n = w.len();
        let (mut z, mut p) = (self.init, 1usize);
        let cap = (self.len() + 2) * (n + 2) * 2;
        for _ in 0..cap {
            if z == acc {
                return Some(true);
            }
            if z == rej {
                return Some(false);
            }
            let t = match p {
                0 => Tape::L,
                p if p == n + 1 => end,
                p => Tape::Sym(w[p - 1]),
            };
            z = self.get(z, t)?;
            p = match self.pol[z] {
                Polarity::X => p + 1,
                Polarity::Y => p.checked_sub(1)?,
            };
            if p > n + 1 {
                return None;
            }
        }
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Acceptor for `A*` over `alphabet`.
pub(crate) fn star(alphabet: &[char], set: &BTreeSet<char>) -> Machine {
    let mut m = Machine::new(alphabet);
    let q = m.add("q", Polarity::X);
    let acc = m.add("acc", Polarity::Y);
    let rej = m.add("rej", Polarity::Y);
    m.init = q;
    m.exits = Some((acc, rej));
    m.loops(q, set.iter().copied());
    m.set(q, Tape::R, acc);
    m.complete_finite();
    m
}

/// Acceptor for the language of the first machine, or else the second.
pub(crate) fn union_seq(alphabet: &[char], parts: &[Machine]) -> Machine {
    let mut m = Machine::new(alphabet);
    let acc = m.add("acc", Polarity::Y);
    let rej = m.add("rej", Polarity::Y);
    m.exits = Some((acc, rej));
    // Each part's reject rewinds to the left end and hands over to the next.
    let mut pending: Option<StateId> = None;
    for (i, part) in parts.iter().enumerate() {
        let map = m.embed(part, &format!("u{i}."), false, false);
        let id = |z: StateId| map[z].expect("full embed");
        let init = id(part.init);
        match pending {
            None => m.init = init,
            Some(r) => {
                m.loops(r, alphabet.iter().copied());
                m.set(r, Tape::L, init);
            }
        }
        redirect(&mut m, id(part.accept()), acc);
        pending = Some(id(part.reject()));
    }
    match pending {
        None => {
            let q = m.add("q", Polarity::X);
            m.init = q;
            m.loops(q, alphabet.iter().copied());
            m.set(q, Tape::R, rej);
        }
        Some(r) => redirect(&mut m, r, rej),
    }
    m
}

/// Re-points every transition into `from` at `to`.
pub(crate) fn redirect(m: &mut Machine, from: StateId, to: StateId) {
    for v in m.delta.values_mut() {
        if *v == from {
            *v = to;
        }
    }
}
