//! ω-monomials `A₁*a₁⋯A_k*a_k B^ω` and their translations to and from
//! automata.

mod detpo2;
mod skeleton;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::automaton::{Builder, Po2Automaton, Polarity};
use crate::error::{Error, Result};
use crate::run::run_det_traced;
use crate::words::LassoWord;

pub use detpo2::{finite_monomial_acceptor, monomial_to_det_po2, relativize, FiniteAcceptor};
pub use skeleton::det_po2_to_monomials;

pub type LetterSet = BTreeSet<char>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaMonomial {
    pub steps: Vec<(LetterSet, char)>,
    pub tail: LetterSet,
}

impl OmegaMonomial {
    pub fn new(steps: Vec<(Vec<char>, char)>, tail: Vec<char>) -> Self {
        Self {
            steps: steps.into_iter().map(|(a, c)| (a.into_iter().collect(), c)).collect(),
            tail: tail.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.steps.len()
    }

    /// `A_i` for 1-based `i`; `i = k + 1` gives the tail.
    pub fn set(&self, i: usize) -> &LetterSet {
        if i == self.steps.len() + 1 {
            &self.tail
        } else {
            &self.steps[i - 1].0
        }
    }

    /// `a_i` for 1-based `i`.
    pub fn marker(&self, i: usize) -> char {
        self.steps[i - 1].1
    }

    pub fn letters(&self) -> LetterSet {
        let mut s = self.tail.clone();
        for (a, c) in &self.steps {
            s.extend(a);
            s.insert(*c);
        }
        s
    }

    pub fn check_alphabet(&self, alphabet: &[char]) -> Result<()> {
        match self.letters().into_iter().find(|c| !alphabet.contains(c)) {
            Some(c) => Err(Error::UnknownLetter(c)),
            None => Ok(()),
        }
    }

    /// `{a_i, …, a_k} ⊄ A_i` for every `i`.
    pub fn is_restricted(&self) -> bool {
        (1..=self.degree()).all(|i| (i..=self.degree()).any(|l| !self.set(i).contains(&self.marker(l))))
    }

    /// Chain-automaton successors of state `i` (0-based, `i ≤ k`) on `c`.
    fn chain_step(&self, i: usize, c: char, mut f: impl FnMut(usize, bool)) {
        if self.set(i + 1).contains(&c) {
            f(i, false);
        }
        if i < self.degree() && self.marker(i + 1) == c {
            f(i + 1, true);
        }
    }

    pub fn member(&self, w: &LassoWord) -> bool {
        monomial_member(self, w)
    }
}

fn fmt_set(s: &LetterSet) -> String {
    s.iter().collect()
}

impl fmt::Display for OmegaMonomial {
    /// The literal form `[ab]*a.[]*c.[c]w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, c) in &self.steps {
            write!(f, "[{}]*{c}.", fmt_set(a))?;
        }
        write!(f, "[{}]w", fmt_set(&self.tail))
    }
}

impl FromStr for OmegaMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let end = s.len();
        let mut i = 0;
        let at = |i: usize| chars.get(i).map(|&(o, _)| o).unwrap_or(end);
        let err = |i: usize, m: &str| Error::Parse {
            offset: at(i),
            message: m.to_string(),
        };
        let mut steps = Vec::new();
        loop {
            if chars.get(i).map(|p| p.1) != Some('[') {
                return Err(err(i, "expected '['"));
            }
            i += 1;
            let mut set = LetterSet::new();
            while let Some(&(_, c)) = chars.get(i) {
                if c == ']' {
                    break;
                }
                if c == '[' || c == '.' || c == '*' || c.is_whitespace() {
                    return Err(err(i, "unexpected character in letter set"));
                }
                set.insert(c);
                i += 1;
            }
            if chars.get(i).is_none() {
                return Err(err(i, "unterminated letter set"));
            }
            i += 1;
            match chars.get(i).map(|p| p.1) {
                Some('w') if i + 1 == chars.len() => {
                    return Ok(Self { steps, tail: set });
                }
                Some('*') => {
                    let Some(&(_, c)) = chars.get(i + 1) else {
                        return Err(err(i + 1, "expected marker letter"));
                    };
                    if matches!(c, '[' | ']' | '.' | '*') {
                        return Err(err(i + 1, "expected marker letter"));
                    }
                    if chars.get(i + 2).map(|p| p.1) != Some('.') {
                        return Err(err(i + 2, "expected '.'"));
                    }
                    steps.push((set, c));
                    i += 3;
                }
                _ => return Err(err(i, "expected '*' or final 'w'")),
            }
        }
    }
}

/// Exact membership: tracks the set of chain positions reachable after the
/// spoke and after each further period, until the sets repeat.
pub fn monomial_member(m: &OmegaMonomial, w: &LassoWord) -> bool {
    let k = m.degree();
    if !w.period().iter().all(|c| m.tail.contains(c)) {
        return false;
    }
    let step_word = |from: &BTreeSet<usize>, word: &[char]| {
        let mut cur = from.clone();
        for &c in word {
            let mut next = BTreeSet::new();
            for &i in &cur {
                m.chain_step(i, c, |j, _| {
                    next.insert(j);
                });
            }
            cur = next;
        }
        cur
    };
    let mut cur = step_word(&BTreeSet::from([0]), w.spoke());
    let mut seen = HashSet::new();
    while seen.insert(cur.clone()) {
        if cur.contains(&k) {
            return true;
        }
        cur = step_word(&cur, w.period());
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unambiguity {
    UpToBound(usize),
    /// A word with two factorizations: `prefix · tail_letter^ω`, with the
    /// 1-based marker positions of each.
    Ambiguous {
        word: LassoWord,
        first: Vec<usize>,
        second: Vec<usize>,
    },
}

/// Searches prefixes up to `length_bound` letters for a word with two
/// different factorizations.
pub fn is_unambiguous_bounded(m: &OmegaMonomial, length_bound: usize) -> Unambiguity {
    let k = m.degree();
    let Some(&tail_letter) = m.tail.iter().next() else {
        return Unambiguity::UpToBound(length_bound);
    };
    // BFS over pairs of chain positions with a "diverged" flag.
    type Node = (usize, usize, bool);
    let start: Node = (0, 0, false);
    let mut parent: HashMap<Node, (Node, char, bool, bool)> = HashMap::new();
    let mut depth = HashMap::from([(start, 0usize)]);
    let mut queue = VecDeque::from([start]);
    let mut goal = None;
    while let Some(node) = queue.pop_front() {
        if node == (k, k, true) {
            goal = Some(node);
            break;
        }
        let d = depth[&node];
        if d == length_bound {
            continue;
        }
        for &c in &m.letters() {
            let mut left = Vec::new();
            m.chain_step(node.0, c, |j, mv| left.push((j, mv)));
            let mut right = Vec::new();
            m.chain_step(node.1, c, |j, mv| right.push((j, mv)));
            for &(i, mi) in &left {
                for &(j, mj) in &right {
                    let next = (i, j, node.2 || mi != mj);
                    if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(next) {
                        e.insert(d + 1);
                        parent.insert(next, (node, c, mi, mj));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    let Some(mut node) = goal else {
        return Unambiguity::UpToBound(length_bound);
    };
    let mut letters = Vec::new();
    let mut moves = Vec::new();
    while let Some(&(prev, c, mi, mj)) = parent.get(&node) {
        letters.push(c);
        moves.push((mi, mj));
        node = prev;
    }
    letters.reverse();
    moves.reverse();
    let positions = |pick: fn(&(bool, bool)) -> bool| {
        moves
            .iter()
            .enumerate()
            .filter(|(_, mv)| pick(mv))
            .map(|(p, _)| p + 1)
            .collect()
    };
    Unambiguity::Ambiguous {
        word: LassoWord::new(letters, vec![tail_letter]).expect("nonempty period"),
        first: positions(|mv| mv.0),
        second: positions(|mv| mv.1),
    }
}

/// The one-way chain automaton `q₀ → ⋯ → q_k` with `q_k` final.
pub fn monomial_to_npo(m: &OmegaMonomial, alphabet: &[char]) -> Result<Po2Automaton> {
    polynomial_to_npo(std::slice::from_ref(m), alphabet)
}

/// Disjoint union of chain automata. The empty polynomial yields a single
/// non-final state.
pub fn polynomial_to_npo(p: &[OmegaMonomial], alphabet: &[char]) -> Result<Po2Automaton> {
    let mut b = Builder::new(alphabet.iter().copied());
    if p.is_empty() {
        let q = b.state("q", Polarity::X);
        b.set_initial(q, true);
    }
    for (n, m) in p.iter().enumerate() {
        m.check_alphabet(alphabet)?;
        let prefix = if p.len() == 1 { String::new() } else { format!("m{n}.") };
        let qs: Vec<_> = (0..=m.degree())
            .map(|i| b.state(format!("{prefix}q{i}"), Polarity::X))
            .collect();
        b.set_initial(qs[0], true).set_final(qs[m.degree()], true);
        for i in 0..=m.degree() {
            for &c in m.set(i + 1) {
                b.add_sym(qs[i], c, qs[i]);
            }
            if i < m.degree() {
                b.add_sym(qs[i], m.marker(i + 1), qs[i + 1]);
            }
        }
    }
    b.build()
}

/// Removes duplicates and monomials whose language is syntactically
/// contained in another one of the same shape.
pub fn normalize_polynomial(p: Vec<OmegaMonomial>) -> Vec<OmegaMonomial> {
    let set: BTreeSet<_> = p.into_iter().collect();
    let all: Vec<_> = set.into_iter().collect();
    let subsumed = |a: &OmegaMonomial, b: &OmegaMonomial| {
        a != b
            && a.degree() == b.degree()
            && a.tail.is_subset(&b.tail)
            && a.steps.iter().zip(&b.steps).all(|(x, y)| x.1 == y.1 && x.0.is_subset(&y.0))
    };
    all.iter()
        .filter(|a| !all.iter().any(|b| subsumed(a, b)))
        .cloned()
        .collect()
}

/// The monomial read off from the runs of deterministic automata on `w`:
/// markers sit exactly at the positions where some run changes state. The
/// monomial contains `w`, and every word in it drives each run through the
/// same sequence of states. Position 1 is also a marker when some automaton
/// starts in a Y-state.
pub fn run_monomial(automata: &[&Po2Automaton], w: &LassoWord) -> Result<OmegaMonomial> {
    let mut changes = BTreeSet::new();
    for a in automata {
        let cap = (a.num_states() + 2) * (w.spoke().len() + (a.num_states() + 2) * w.period().len() + 2) + 1;
        let out = run_det_traced(a, w, cap)?;
        // A Y-initial state reads position 1 without traversing the first
        // segment, so that letter has to stay fixed.
        if a.polarity(a.initial().expect("deterministic")) == Polarity::Y {
            changes.insert(1);
        }
        for pair in out.trace.windows(2) {
            if pair[0].state != pair[1].state && pair[0].position >= 1 {
                changes.insert(pair[0].position);
            }
        }
    }
    let mut steps = Vec::new();
    let mut prev = 0;
    for &p in &changes {
        let seg: LetterSet = (prev + 1..p).map(|i| w.at(i)).collect();
        steps.push((seg, w.at(p)));
        prev = p;
    }
    Ok(OmegaMonomial {
        steps,
        tail: w.suffix_after(prev).alph(),
    })
}
