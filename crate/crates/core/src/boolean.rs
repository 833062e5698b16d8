//! Union and intersection of deterministic automata by a product that runs
//! both operands in lockstep while they move right, and runs one of them
//! alone (with a tracker counter) whenever one wants to move left.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{
    chain_lengths, complement, complete, require_deterministic, x_initial, Builder, Letter, Po2Automaton, Polarity,
    StateId,
};
use crate::compat::tracker_step;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    Union,
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A1,
    A2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProductState {
    Sync {
        x1: StateId,
        x2: StateId,
        stack: Vec<char>,
    },
    Async {
        z1: StateId,
        z2: StateId,
        stack: Vec<char>,
        counter: usize,
        active: Side,
    },
}

/// The product automaton together with the meaning of each state.
#[derive(Clone, Debug)]
pub struct Product {
    pub automaton: Po2Automaton,
    pub states: Vec<ProductState>,
    /// The value `m₁ + m₂ − 2` for the operands' X-chain lengths.
    pub stack_bound: usize,
}

impl Product {
    /// `3·m·n₁·n₂·|Γ|^{m+1}`, with `m` raised to at least 1 (for `m = 0` the
    /// product has one state while the formula gives 0). Saturates.
    pub fn state_bound(&self, n1: usize, n2: usize) -> u128 {
        let m = self.stack_bound.max(1) as u128;
        let g = self.automaton.alphabet().len() as u128;
        let pow = u32::try_from(m + 1)
            .ok()
            .and_then(|e| g.checked_pow(e))
            .unwrap_or(u128::MAX);
        (3 * m * n1 as u128 * n2 as u128).saturating_mul(pow)
    }
}

fn check_operand(a: &Po2Automaton) -> Result<()> {
    require_deterministic(a)?;
    if !a.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(())
}

/// Builds the reachable part of the product. Both operands must be complete
/// and deterministic over the same alphabet. A Y-initial operand is first
/// given an X-initial state (see [`x_initial`]); the state ids in `states`
/// and the stack bound refer to these adjusted operands.
pub fn product_detailed(a1: &Po2Automaton, a2: &Po2Automaton, op: BoolOp) -> Result<Product> {
    check_operand(a1)?;
    check_operand(a2)?;
    if a1.alphabet() != a2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    // The synchronous start needs both operands in X-states.
    let (b1, b2) = (x_initial(a1)?, x_initial(a2)?);
    let (a1, a2) = (&b1, &b2);
    let bound = chain_lengths(a1)?.next_states + chain_lengths(a2)?.next_states - 2;
    let ops = [a1, a2];
    let start = ProductState::Sync {
        x1: a1.initial().expect("deterministic"),
        x2: a2.initial().expect("deterministic"),
        stack: Vec::new(),
    };
    let mut index: HashMap<ProductState, StateId> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        let s = states[id].clone();
        let mut letters: Vec<Letter> = a1.alphabet().iter().map(|&c| Letter::Sym(c)).collect();
        if polarity(&ops, &s) == Polarity::Y {
            letters.push(Letter::LeftEnd);
        }
        for l in letters {
            let Some(t) = successor(&ops, &s, l) else {
                continue;
            };
            let stack_len = match &t {
                ProductState::Sync { stack, .. } => stack.len(),
                ProductState::Async { stack, counter, .. } => {
                    assert!(*counter >= 1 && *counter <= stack.len());
                    stack.len()
                }
            };
            assert!(stack_len <= bound.max(1), "stack exceeds m₁ + m₂ − 2");
            let tid = *index.entry(t.clone()).or_insert_with(|| {
                states.push(t);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            edges.push((id, l, tid));
        }
    }
    let mut b = Builder::new(a1.alphabet().iter().copied());
    for (i, s) in states.iter().enumerate() {
        // Nested products would otherwise get names exponential in depth.
        let mut name = render(&ops, s);
        if name.len() > 48 {
            name = format!("p{i}");
        }
        let id = b.state(name, polarity(&ops, s));
        let fin = match s {
            ProductState::Sync { x1, x2, .. } => match op {
                BoolOp::Union => a1.is_final(*x1) || a2.is_final(*x2),
                BoolOp::Intersection => a1.is_final(*x1) && a2.is_final(*x2),
            },
            ProductState::Async { .. } => false,
        };
        b.set_final(id, fin);
    }
    b.set_initial(0, true);
    for (f, l, t) in edges {
        b.add(f, l, t);
    }
    Ok(Product {
        automaton: b.build()?,
        states,
        stack_bound: bound,
    })
}

pub fn product(a1: &Po2Automaton, a2: &Po2Automaton, op: BoolOp) -> Result<Po2Automaton> {
    Ok(product_detailed(a1, a2, op)?.automaton)
}

fn polarity(ops: &[&Po2Automaton; 2], s: &ProductState) -> Polarity {
    match s {
        ProductState::Sync { .. } => Polarity::X,
        ProductState::Async { z1, z2, active, .. } => match active {
            Side::A1 => ops[0].polarity(*z1),
            Side::A2 => ops[1].polarity(*z2),
        },
    }
}

/// Both operands read `c` from `(y1, y2)`: continue synchronously if both go
/// right, otherwise suspend one and activate a left-moving one (A1 first).
fn resolve(ops: &[&Po2Automaton; 2], y1: StateId, y2: StateId, c: char, stack: Vec<char>, push: bool) -> ProductState {
    let l = Letter::Sym(c);
    let t1 = ops[0].next(y1, l).expect("complete");
    let t2 = ops[1].next(y2, l).expect("complete");
    let mut stack = stack;
    if push && (t1 != y1 || t2 != y2) {
        stack.push(c);
    }
    let counter = stack.len();
    match (ops[0].polarity(t1), ops[1].polarity(t2)) {
        (Polarity::X, Polarity::X) => ProductState::Sync { x1: t1, x2: t2, stack },
        (Polarity::Y, _) => ProductState::Async {
            z1: t1,
            z2: y2,
            stack,
            counter,
            active: Side::A1,
        },
        _ => ProductState::Async {
            z1: y1,
            z2: t2,
            stack,
            counter,
            active: Side::A2,
        },
    }
}

fn successor(ops: &[&Po2Automaton; 2], s: &ProductState, l: Letter) -> Option<ProductState> {
    match s {
        ProductState::Sync { x1, x2, stack } => {
            let Letter::Sym(c) = l else { return None };
            Some(resolve(ops, *x1, *x2, c, stack.clone(), true))
        }
        ProductState::Async {
            z1,
            z2,
            stack,
            counter,
            active,
        } => {
            let (a, z) = match active {
                Side::A1 => (ops[0], *z1),
                Side::A2 => (ops[1], *z2),
            };
            if let Letter::Sym(c) = l {
                if a.polarity(z) == Polarity::X && *counter == stack.len() && stack.last() == Some(&c) {
                    return Some(resolve(ops, *z1, *z2, c, stack.clone(), false));
                }
            }
            let (t, k) = tracker_step(a, stack, z, *counter, l)?;
            let (z1, z2) = match active {
                Side::A1 => (t, *z2),
                Side::A2 => (*z1, t),
            };
            Some(ProductState::Async {
                z1,
                z2,
                stack: stack.clone(),
                counter: k,
                active: *active,
            })
        }
    }
}

fn render(ops: &[&Po2Automaton; 2], s: &ProductState) -> String {
    let word = |w: &[char]| {
        if w.is_empty() {
            "ε".to_string()
        } else {
            w.iter().collect()
        }
    };
    match s {
        ProductState::Sync { x1, x2, stack } => format!(
            "({},{},{})",
            ops[0].state(*x1).name,
            ops[1].state(*x2).name,
            word(stack)
        ),
        ProductState::Async {
            z1,
            z2,
            stack,
            counter,
            active,
        } => format!(
            "({},{},{},{counter},{active:?})",
            ops[0].state(*z1).name,
            ops[1].state(*z2).name,
            word(stack)
        ),
    }
}

/// A Boolean expression over deterministic automata.
#[derive(Clone, Debug)]
pub enum BoolExpr {
    Leaf(Po2Automaton),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn leaf(a: Po2Automaton) -> Self {
        BoolExpr::Leaf(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        BoolExpr::Not(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        BoolExpr::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        BoolExpr::Or(Box::new(self), Box::new(other))
    }
}

/// Evaluates the expression to a complete deterministic automaton.
pub fn boolean_combine(expr: &BoolExpr) -> Result<Po2Automaton> {
    match expr {
        BoolExpr::Leaf(a) => {
            require_deterministic(a)?;
            complete(a)
        }
        BoolExpr::Not(e) => complement(&boolean_combine(e)?),
        BoolExpr::And(l, r) => complete(&product(&boolean_combine(l)?, &boolean_combine(r)?, BoolOp::Intersection)?),
        BoolExpr::Or(l, r) => complete(&product(&boolean_combine(l)?, &boolean_combine(r)?, BoolOp::Union)?),
    }
}
