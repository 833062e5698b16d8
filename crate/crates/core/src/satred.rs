//! Propositional satisfiability as nonemptiness of a deterministic automaton
//! over `{0,1}`: position `i` of the input is the value of `v_i`.

use std::fmt;
use std::str::FromStr;

use crate::automaton::{Builder, Letter, Po2Automaton, Polarity, StateId};
use crate::decide::{is_empty_with_budget, Emptiness, DEFAULT_BUDGET};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropFormula {
    Var(usize),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn var(i: usize) -> Self {
        PropFormula::Var(i)
    }

    pub fn not(f: PropFormula) -> Self {
        PropFormula::Not(Box::new(f))
    }

    pub fn and(f: PropFormula, g: PropFormula) -> Self {
        PropFormula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: PropFormula, g: PropFormula) -> Self {
        PropFormula::Or(Box::new(f), Box::new(g))
    }

    /// Largest variable index used.
    pub fn var_count(&self) -> usize {
        match self {
            PropFormula::Var(i) => *i,
            PropFormula::Not(f) => f.var_count(),
            PropFormula::And(f, g) | PropFormula::Or(f, g) => f.var_count().max(g.var_count()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PropFormula::Var(_) => 1,
            PropFormula::Not(f) => 1 + f.size(),
            PropFormula::And(f, g) | PropFormula::Or(f, g) => 1 + f.size() + g.size(),
        }
    }

    /// Value under `assignment[i - 1]` for `v_i`; missing variables are false.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            PropFormula::Var(i) => assignment.get(i - 1).copied().unwrap_or(false),
            PropFormula::Not(f) => !f.eval(assignment),
            PropFormula::And(f, g) => f.eval(assignment) && g.eval(assignment),
            PropFormula::Or(f, g) => f.eval(assignment) || g.eval(assignment),
        }
    }

    /// Brute-force satisfiability over the first `var_count` variables.
    pub fn truth_table_sat(&self) -> Option<Vec<bool>> {
        let m = self.var_count();
        (0u64..1 << m)
            .map(|bits| (0..m).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.eval(a))
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Var(i) => write!(f, "v{i}"),
            PropFormula::Not(g) => match **g {
                PropFormula::Var(_) | PropFormula::Not(_) => write!(f, "!{g}"),
                _ => write!(f, "!({g})"),
            },
            PropFormula::And(g, h) => {
                let wrap = |x: &PropFormula| matches!(x, PropFormula::Or(..));
                write_operand(f, g, wrap(g))?;
                write!(f, " & ")?;
                write_operand(f, h, wrap(h) || matches!(**h, PropFormula::And(..)))
            }
            PropFormula::Or(g, h) => {
                write!(f, "{g} | ")?;
                write_operand(f, h, matches!(**h, PropFormula::Or(..)))
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, x: &PropFormula, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn or(&mut self) -> Result<PropFormula> {
        let mut f = self.and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            f = PropFormula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<PropFormula> {
        let mut f = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            f = PropFormula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<PropFormula> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(PropFormula::not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.or()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(f)
            }
            Some(b'v') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected variable index after 'v'");
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
                match digits.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(PropFormula::Var(i)),
                    _ => {
                        self.pos = start;
                        self.err("variable indices start at 1")
                    }
                }
            }
            Some(_) => self.err("expected a variable, '!' or '('"),
            None => self.err("unexpected end of formula"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<PropFormula> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let f = p.or()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

impl FromStr for PropFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// Adds the gadget for `f` and returns its initial X-state. The gadget ends
/// with end-marker transitions into `yes` or `no`.
fn gadget(b: &mut Builder, f: &PropFormula, yes: StateId, no: StateId) -> StateId {
    match f {
        PropFormula::Var(i) => {
            let n = b.num_states();
            let skip: Vec<StateId> = (1..=*i).map(|j| b.state(format!("s{n}.{j}"), Polarity::X)).collect();
            let r0 = b.state(format!("r{n}.0"), Polarity::Y);
            let r1 = b.state(format!("r{n}.1"), Polarity::Y);
            for w in skip.windows(2) {
                b.add_sym(w[0], '0', w[1]).add_sym(w[0], '1', w[1]);
            }
            let last = skip[skip.len() - 1];
            b.add_sym(last, '0', r0).add_sym(last, '1', r1);
            for r in [r0, r1] {
                b.add_sym(r, '0', r).add_sym(r, '1', r);
            }
            b.add(r0, Letter::LeftEnd, no).add(r1, Letter::LeftEnd, yes);
            skip[0]
        }
        PropFormula::Not(g) => gadget(b, g, no, yes),
        PropFormula::And(g, h) => {
            let second = gadget(b, h, yes, no);
            gadget(b, g, second, no)
        }
        PropFormula::Or(g, h) => {
            let second = gadget(b, h, yes, no);
            gadget(b, g, yes, second)
        }
    }
}

/// The automaton accepting exactly the `α ∈ {0,1}^ω` whose first
/// `var_count` letters satisfy `f`.
pub fn build_sat_automaton(f: &PropFormula) -> Po2Automaton {
    let mut b = Builder::new(['0', '1']);
    let yes = b.state("x_t", Polarity::X);
    let no = b.state("x_f", Polarity::X);
    for x in [yes, no] {
        b.add_sym(x, '0', x).add_sym(x, '1', x);
    }
    b.set_final(yes, true);
    let init = gadget(&mut b, f, yes, no);
    b.set_initial(init, true);
    b.build().expect("gadgets are well-formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
}

pub fn sat_via_emptiness(f: &PropFormula) -> Result<SatResult> {
    sat_via_emptiness_with_budget(f, DEFAULT_BUDGET)
}

pub fn sat_via_emptiness_with_budget(f: &PropFormula, budget: usize) -> Result<SatResult> {
    let a = build_sat_automaton(f);
    Ok(match is_empty_with_budget(&a, budget)? {
        Emptiness::Empty => SatResult::Unsat,
        Emptiness::Nonempty(w) => {
            let lasso = w.lasso();
            SatResult::Sat((1..=f.var_count()).map(|i| lasso.at(i) == '1').collect())
        }
    })
}
