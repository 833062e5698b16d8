//! The tracking automaton: a deterministic automaton paired with a counter
//! recording which suffix of a marker word `v` the head position is
//! prefix-compatible with, so the first return to the position of the last
//! marker can be recognized.

use crate::automaton::{require_deterministic, Builder, Letter, Po2Automaton, Polarity, StateId};
use crate::error::{Error, Result};

/// One tracker transition from `(z, k)` on `letter`, or `None` if the base
/// automaton has no transition or the step is excluded (an X-state reading
/// `a_m` at counter `m`: that configuration is the synchronization point).
pub fn tracker_step(a: &Po2Automaton, v: &[char], z: StateId, k: usize, letter: Letter) -> Option<(StateId, usize)> {
    let m = v.len();
    let to = a.next(z, letter)?;
    let Letter::Sym(c) = letter else {
        return Some((to, k));
    };
    let at = |i: usize| v[i - 1];
    if a.polarity(z) == Polarity::X && k == m && c == at(m) {
        return None;
    }
    let l = if a.polarity(z) == Polarity::Y && k > 1 && c == at(k - 1) {
        k - 1
    } else {
        k
    };
    let k2 = match a.polarity(to) {
        Polarity::Y => l,
        // `l == m` here cannot occur before the return to the last marker;
        // saturating keeps the tracker complete.
        Polarity::X if c == at(l) => (l + 1).min(m),
        Polarity::X => l,
    };
    Some((to, k2))
}

/// State id of `(z, k)` in the automaton built by [`build_tracker`].
pub fn tracker_state(m: usize, z: StateId, k: usize) -> StateId {
    z * m + (k - 1)
}

/// Builds the tracker over all of `Z × {1..m}`. The initial state is
/// `(z₀, m)`; `(z, k)` is final iff `z` is.
pub fn build_tracker(a: &Po2Automaton, v: &[char]) -> Result<Po2Automaton> {
    require_deterministic(a)?;
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(&c) = v.iter().find(|c| !a.alphabet().contains(c)) {
        return Err(Error::UnknownLetter(c));
    }
    let m = v.len();
    let word: String = v.iter().collect();
    let mut b = Builder::new(a.alphabet().iter().copied());
    for z in 0..a.num_states() {
        for k in 1..=m {
            let s = a.state(z);
            let id = b.state(format!("({},{word},{k})", s.name), s.polarity);
            debug_assert_eq!(id, tracker_state(m, z, k));
            b.set_final(id, s.is_final);
        }
    }
    b.set_initial(tracker_state(m, a.initial().expect("deterministic"), m), true);
    let letters: Vec<Letter> = std::iter::once(Letter::LeftEnd)
        .chain(a.alphabet().iter().map(|&c| Letter::Sym(c)))
        .collect();
    for z in 0..a.num_states() {
        for k in 1..=m {
            for &l in &letters {
                if let Some((to, k2)) = tracker_step(a, v, z, k, l) {
                    b.add(tracker_state(m, z, k), l, tracker_state(m, to, k2));
                }
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::validate;

    /// A single Y-state that scans left over `a` and `b`, then an X-state.
    fn left_scanner() -> Po2Automaton {
        let mut b = Builder::new("ab".chars());
        let y = b.state("y", Polarity::Y);
        let x = b.state("x", Polarity::X);
        b.set_initial(y, true);
        b.add_sym(y, 'a', y).add_sym(y, 'b', y).add(y, Letter::LeftEnd, x);
        b.add_sym(x, 'a', x).add_sym(x, 'b', x);
        b.build().unwrap()
    }

    #[test]
    fn left_scan_decrements_on_previous_marker() {
        let a = left_scanner();
        let v = ['a', 'b'];
        // Word "b a a b" factorizes as u1="b", a1=a, u2="a", a2=b; the scan
        // starts left of position 4 at counter 2.
        let word = ['b', 'a', 'a', 'b'];
        let mut k = 2;
        let mut ks = Vec::new();
        for i in (1..=3).rev() {
            let (z, k2) = tracker_step(&a, &v, 0, k, Letter::Sym(word[i - 1])).unwrap();
            assert_eq!(z, 0);
            k = k2;
            ks.push(k);
        }
        assert_eq!(ks, vec![1, 1, 1]);
    }

    #[test]
    fn single_marker_blocks_x_read_of_marker() {
        let a = left_scanner();
        let v = ['a'];
        assert_eq!(tracker_step(&a, &v, 1, 1, Letter::Sym('a')), None);
        assert_eq!(tracker_step(&a, &v, 1, 1, Letter::Sym('b')), Some((1, 1)));
        assert_eq!(tracker_step(&a, &v, 0, 1, Letter::LeftEnd), Some((1, 1)));
    }

    #[test]
    fn tracker_is_deterministic_po2() {
        let t = build_tracker(&left_scanner(), &['a', 'b', 'a']).unwrap();
        let r = validate(&t);
        assert!(r.is_well_formed_po2 && r.is_deterministic, "{:?}", r.violations);
        assert_eq!(t.num_states(), 6);
        assert!(build_tracker(&left_scanner(), &[]).is_err());
    }
}
