//! Deterministic automata to unions of restricted monomials, by exploring
//! abstract runs on words `A₁*a₁⋯A_k*a_k B^ω`.
//!
//! The head is tracked only up to the segment structure: inside a segment
//! every letter must be a self-loop of the current state, so the run only
//! changes state on markers or on the end marker. Segment alphabets and
//! markers are chosen when the head first enters new territory, which is
//! always in an X-state moving right (or at the very start).
//!
//! The path of the abstract run does not depend on the segment alphabets,
//! only its validity does, so each segment gets the largest alphabet that
//! works: the common self-loops of every state crossing it. Smaller choices
//! would only give sub-monomials.

use crate::automaton::{chain_lengths, complete, require_deterministic, Letter, Po2Automaton, Polarity, StateId};
use crate::error::Result;
use crate::monomial::{normalize_polynomial, LetterSet, OmegaMonomial};

#[derive(Clone, Copy, Debug)]
enum Loc {
    Zero,
    Marker(usize),
    /// Entering segment `i` from its left (moving right).
    SegRight(usize),
    /// Entering segment `i` from its right (moving left).
    SegLeft(usize),
}

struct Ctx<'a> {
    a: &'a Po2Automaton,
    max_markers: usize,
    /// Longest chain of states starting in each state.
    height: Vec<usize>,
    out: Vec<OmegaMonomial>,
}

#[derive(Clone)]
struct Partial {
    steps: Vec<(LetterSet, char)>,
    /// Whether some visit of each marker changed state.
    changed: Vec<bool>,
}

fn self_loops(a: &Po2Automaton, z: StateId) -> LetterSet {
    a.self_loops(z).into_iter().collect()
}

fn narrow(set: &mut LetterSet, loops: &LetterSet) {
    set.retain(|c| loops.contains(c));
}

impl Ctx<'_> {
    /// Follows the deterministic abstract run until it needs a decision.
    fn explore(&mut self, mut p: Partial, mut z: StateId, mut loc: Loc) {
        let a = self.a;
        let cap = 4 * (a.num_states() + 2) * (p.steps.len() + self.max_markers + 2);
        for _ in 0..cap {
            match loc {
                Loc::Zero => {
                    let Some(x) = a.next(z, Letter::LeftEnd) else { return };
                    z = x;
                    loc = Loc::SegRight(1);
                }
                Loc::Marker(i) => {
                    let c = p.steps[i - 1].1;
                    let Some(t) = a.next(z, Letter::Sym(c)) else { return };
                    if t != z {
                        p.changed[i - 1] = true;
                    }
                    z = t;
                    loc = match a.polarity(t) {
                        Polarity::X => Loc::SegRight(i + 1),
                        Polarity::Y => Loc::SegLeft(i),
                    };
                }
                Loc::SegLeft(i) => {
                    narrow(&mut p.steps[i - 1].0, &self_loops(a, z));
                    loc = if i == 1 { Loc::Zero } else { Loc::Marker(i - 1) };
                }
                Loc::SegRight(i) if i <= p.steps.len() => {
                    narrow(&mut p.steps[i - 1].0, &self_loops(a, z));
                    loc = Loc::Marker(i);
                }
                Loc::SegRight(_) => {
                    self.branch(p, z);
                    return;
                }
            }
        }
        panic!("abstract run did not settle");
    }

    /// X-state `z` enters unexplored territory: either the tail starts here,
    /// or a segment and a marker follow.
    fn branch(&mut self, p: Partial, z: StateId) {
        let loops = self_loops(self.a, z);
        if !loops.is_empty() && self.a.is_final(z) && p.changed.iter().all(|&c| c) {
            self.out.push(OmegaMonomial {
                steps: p.steps.clone(),
                tail: loops.clone(),
            });
        }
        // Every marker still waiting for a change needs a later state of
        // its own.
        let waiting = p.changed.iter().filter(|&&c| !c).count();
        if p.steps.len() >= self.max_markers || waiting + 1 >= self.height[z] {
            return;
        }
        for &c in self.a.alphabet() {
            let mut q = p.clone();
            q.steps.push((loops.clone(), c));
            q.changed.push(false);
            let i = q.steps.len();
            self.explore(q, z, Loc::Marker(i));
        }
    }
}

/// A polynomial (list of monomials) with the same language as `a`.
pub fn det_po2_to_monomials(a: &Po2Automaton) -> Result<Vec<OmegaMonomial>> {
    require_deterministic(a)?;
    let a = complete(a)?;
    let chain = chain_lengths(&a)?.all;
    let z0 = a.initial().expect("deterministic");
    let mut height = vec![1; a.num_states()];
    for &z in a.topological_order().expect("well-formed").iter().rev() {
        for (_, t) in a.outgoing(z) {
            if t != z {
                height[z] = height[z].max(height[t] + 1);
            }
        }
    }
    let mut ctx = Ctx {
        a: &a,
        max_markers: chain.saturating_sub(1),
        height,
        out: Vec::new(),
    };
    match a.polarity(z0) {
        Polarity::X => ctx.explore(
            Partial {
                steps: Vec::new(),
                changed: Vec::new(),
            },
            z0,
            Loc::SegRight(1),
        ),
        // Position 1 is read before anything else; make it a marker with an
        // empty segment in front. It needs no state change of its own: the
        // run changes state on the end marker whenever it does not here.
        Polarity::Y => {
            for &c in a.alphabet() {
                let p = Partial {
                    steps: vec![(LetterSet::new(), c)],
                    changed: vec![true],
                };
                ctx.explore(p, z0, Loc::Marker(1));
            }
        }
    }
    Ok(normalize_polynomial(ctx.out))
}
