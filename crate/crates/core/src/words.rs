//! Finite words, lasso words, and the prefix-factorization calculus used by
//! the tracking construction.
//!
//! Finite words are plain `&[char]` slices. Positions in a [`LassoWord`] are
//! 1-based; position 0 is the left end marker.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::automaton::Letter;
use crate::error::{Error, Result};

/// The ultimately periodic word `spoke · period^ω`.
///
/// Equality is structural: `a(b)` and `ab(b)` denote the same ω-word but
/// compare unequal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    spoke: Vec<char>,
    period: Vec<char>,
}

impl LassoWord {
    pub fn new(spoke: impl Into<Vec<char>>, period: impl Into<Vec<char>>) -> Result<Self> {
        let period = period.into();
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Self {
            spoke: spoke.into(),
            period,
        })
    }

    /// Convenience constructor from string slices. Panics on an empty period.
    pub fn from_strs(spoke: &str, period: &str) -> Self {
        Self::new(spoke.chars().collect::<Vec<_>>(), period.chars().collect::<Vec<_>>())
            .expect("period must be nonempty")
    }

    pub fn spoke(&self) -> &[char] {
        &self.spoke
    }

    pub fn period(&self) -> &[char] {
        &self.period
    }

    /// Letter at 1-based position `i`. Panics for `i == 0`.
    pub fn at(&self, i: usize) -> char {
        assert!(i >= 1, "position 0 holds the left end marker");
        let i = i - 1;
        if i < self.spoke.len() {
            self.spoke[i]
        } else {
            self.period[(i - self.spoke.len()) % self.period.len()]
        }
    }

    /// Tape symbol at position `i`, with the end marker at 0.
    pub fn letter(&self, i: usize) -> Letter {
        if i == 0 {
            Letter::LeftEnd
        } else {
            Letter::Sym(self.at(i))
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Vec<char> {
        (1..=n).map(|i| self.at(i)).collect()
    }

    /// The ω-word from position `p + 1` on, as a lasso.
    pub fn suffix_after(&self, p: usize) -> LassoWord {
        if p < self.spoke.len() {
            Self {
                spoke: self.spoke[p..].to_vec(),
                period: self.period.clone(),
            }
        } else {
            let r = (p - self.spoke.len()) % self.period.len();
            Self {
                spoke: self.period[r..].to_vec(),
                period: self.period.clone(),
            }
        }
    }

    /// `w · self`.
    pub fn prepend(&self, w: &[char]) -> LassoWord {
        let mut spoke = w.to_vec();
        spoke.extend_from_slice(&self.spoke);
        Self {
            spoke,
            period: self.period.clone(),
        }
    }

    pub fn alph(&self) -> BTreeSet<char> {
        self.spoke.iter().chain(&self.period).copied().collect()
    }

    pub fn period_alph(&self) -> BTreeSet<char> {
        alph(&self.period)
    }

    pub fn check_alphabet(&self, alphabet: &[char]) -> Result<()> {
        match self.alph().into_iter().find(|c| !alphabet.contains(c)) {
            Some(c) => Err(Error::UnknownLetter(c)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.spoke.iter().collect();
        let p: String = self.period.iter().collect();
        write!(f, "{s}({p})")
    }
}

impl FromStr for LassoWord {
    type Err = Error;

    /// Parses the literal `u(v)`.
    fn from_str(s: &str) -> Result<Self> {
        let perr = |offset, message: &str| Error::Parse {
            offset,
            message: message.to_string(),
        };
        let open = s.find('(').ok_or_else(|| perr(s.len(), "expected '('"))?;
        if !s.ends_with(')') {
            return Err(perr(s.len(), "expected ')' at end"));
        }
        let spoke = &s[..open];
        let period = &s[open + 1..s.len() - 1];
        for (i, ch) in s.char_indices() {
            if ch.is_whitespace() || ((ch == '(' || ch == ')') && i != open && i != s.len() - 1) {
                return Err(perr(i, "unexpected character"));
            }
        }
        if period.is_empty() {
            return Err(perr(open + 1, "period must be nonempty"));
        }
        Ok(Self {
            spoke: spoke.chars().collect(),
            period: period.chars().collect(),
        })
    }
}

pub fn alph(w: &[char]) -> BTreeSet<char> {
    w.iter().copied().collect()
}

/// `x ≼ w`: `x` embeds into `w` preserving order.
pub fn is_scattered_subword(x: &[char], w: &[char]) -> bool {
    let mut it = w.iter();
    x.iter().all(|c| it.any(|d| d == c))
}

pub fn is_suffix(x: &[char], w: &[char]) -> bool {
    w.ends_with(x)
}

/// What follows the factorized prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Finite(Vec<char>),
    Lasso(LassoWord),
}

/// The greedy decomposition `u₁a₁⋯u_m a_m · residual` of a word with respect
/// to a marker word `a₁⋯a_m`, where each `aᵢ` is its first occurrence after
/// the previous marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixFactorization {
    pub markers: Vec<char>,
    pub segments: Vec<Vec<char>>,
    pub residual: Residual,
}

impl PrefixFactorization {
    /// Builds a factorization from explicit parts, checking `aᵢ ∉ alph(uᵢ)`.
    pub fn from_parts(markers: Vec<char>, segments: Vec<Vec<char>>, residual: Residual) -> Result<Self> {
        if markers.is_empty() {
            return Err(Error::EmptyWord);
        }
        if markers.len() != segments.len() {
            return Err(Error::Format("markers and segments differ in length".into()));
        }
        for (a, u) in markers.iter().zip(&segments) {
            if u.contains(a) {
                return Err(Error::Format(format!("segment contains its marker '{a}'")));
            }
        }
        Ok(Self {
            markers,
            segments,
            residual,
        })
    }

    pub fn m(&self) -> usize {
        self.markers.len()
    }

    /// `aₖ` for 1-based `k`.
    pub fn marker(&self, k: usize) -> char {
        self.markers[k - 1]
    }

    /// `uₖaₖ⋯u_m a_m` for 1-based `k`; `k = m + 1` gives the empty word.
    pub fn tail_from(&self, k: usize) -> Vec<char> {
        let mut out = Vec::new();
        for i in k - 1..self.m() {
            out.extend_from_slice(&self.segments[i]);
            out.push(self.markers[i]);
        }
        out
    }

    /// `u₁a₁⋯u_m a_m`.
    pub fn prefix(&self) -> Vec<char> {
        self.tail_from(1)
    }

    /// 1-based positions of the markers in the input word.
    pub fn marker_positions(&self) -> Vec<usize> {
        let mut p = 0;
        self.segments
            .iter()
            .map(|u| {
                p += u.len() + 1;
                p
            })
            .collect()
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if (1..=self.m()).contains(&k) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: k, max: self.m() })
        }
    }
}

/// Greedy factorization of a finite word; `None` if `v ⋠ w`.
pub fn prefix_factorize(w: &[char], v: &[char]) -> Result<Option<PrefixFactorization>> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut segments = Vec::with_capacity(v.len());
    let mut pos = 0;
    for &a in v {
        let Some(off) = w[pos..].iter().position(|&c| c == a) else {
            return Ok(None);
        };
        segments.push(w[pos..pos + off].to_vec());
        pos += off + 1;
    }
    Ok(Some(PrefixFactorization {
        markers: v.to_vec(),
        segments,
        residual: Residual::Finite(w[pos..].to_vec()),
    }))
}

/// Greedy factorization of a lasso word; `None` if some marker never occurs
/// after its predecessor.
pub fn prefix_factorize_lasso(w: &LassoWord, v: &[char]) -> Result<Option<PrefixFactorization>> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    // A letter absent from the next |spoke| + |period| positions never occurs.
    let window = w.spoke().len() + w.period().len();
    let mut segments = Vec::with_capacity(v.len());
    let mut pos = 0;
    for &a in v {
        let Some(off) = (1..=window).position(|d| w.at(pos + d) == a) else {
            return Ok(None);
        };
        segments.push((pos + 1..=pos + off).map(|i| w.at(i)).collect());
        pos += off + 1;
    }
    Ok(Some(PrefixFactorization {
        markers: v.to_vec(),
        segments,
        residual: Residual::Lasso(w.suffix_after(pos)),
    }))
}

/// `aₖ⋯a_m ≼ w ≤_s uₖaₖ⋯u_m a_m`.
pub fn is_k_prefix_compatible(w: &[char], k: usize, f: &PrefixFactorization) -> Result<bool> {
    f.check_index(k)?;
    Ok(is_scattered_subword(&f.markers[k - 1..], w) && is_suffix(w, &f.tail_from(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Extend a compatible suffix `w` to `cw`.
    Prepend,
    /// Remove the leading `c` from a compatible suffix `cw`.
    Strip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepResult {
    Index(usize),
    /// The remaining suffix is necessarily empty.
    Empty,
}

/// One step of the compatibility calculus: given the index of the current
/// suffix, returns the index of the extended or stripped suffix.
pub fn prop7_step(direction: Direction, c: char, k: usize, f: &PrefixFactorization) -> Result<StepResult> {
    f.check_index(k)?;
    let m = f.m();
    Ok(match direction {
        Direction::Prepend if k == 1 => StepResult::Index(1),
        Direction::Prepend if c == f.marker(k - 1) => StepResult::Index(k - 1),
        Direction::Prepend => StepResult::Index(k),
        Direction::Strip if c == f.marker(k) && k == m => StepResult::Empty,
        Direction::Strip if c == f.marker(k) => StepResult::Index(k + 1),
        Direction::Strip => StepResult::Index(k),
    })
}
