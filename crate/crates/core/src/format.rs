//! JSON automaton files.
//!
//! ```json
//! {
//!   "alphabet": ["a", "b"],
//!   "states": [{"name": "q", "polarity": "X", "initial": true, "final": true}],
//!   "transitions": [{"from": "q", "letter": "a", "to": "q"}]
//! }
//! ```
//!
//! The end marker is written `"LEND"`.

use serde::{Deserialize, Serialize};

use crate::automaton::{Letter, Po2Automaton, Polarity, State};
use crate::error::{Error, Result};

const LEFT_END: &str = "LEND";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileState {
    name: String,
    polarity: FilePolarity,
    initial: bool,
    #[serde(rename = "final")]
    is_final: bool,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum FilePolarity {
    X,
    Y,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTransition {
    from: String,
    letter: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    alphabet: Vec<String>,
    states: Vec<FileState>,
    transitions: Vec<FileTransition>,
}

fn single_char(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Format(format!("letter {s:?} is not a single character"))),
    }
}

pub fn to_json(a: &Po2Automaton) -> String {
    let file = File {
        alphabet: a.alphabet().iter().map(|c| c.to_string()).collect(),
        states: a
            .states()
            .iter()
            .map(|s| FileState {
                name: s.name.clone(),
                polarity: match s.polarity {
                    Polarity::X => FilePolarity::X,
                    Polarity::Y => FilePolarity::Y,
                },
                initial: s.initial,
                is_final: s.is_final,
            })
            .collect(),
        transitions: a
            .transitions()
            .map(|(f, l, t)| FileTransition {
                from: a.state(f).name.clone(),
                letter: match l {
                    Letter::LeftEnd => LEFT_END.to_string(),
                    Letter::Sym(c) => c.to_string(),
                },
                to: a.state(t).name.clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Po2Automaton> {
    let file: File = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let alphabet = file.alphabet.iter().map(|s| single_char(s)).collect::<Result<Vec<_>>>()?;
    let states: Vec<State> = file
        .states
        .iter()
        .map(|s| State {
            name: s.name.clone(),
            polarity: match s.polarity {
                FilePolarity::X => Polarity::X,
                FilePolarity::Y => Polarity::Y,
            },
            initial: s.initial,
            is_final: s.is_final,
        })
        .collect();
    let id = |name: &str| {
        states
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    };
    let mut transitions = Vec::with_capacity(file.transitions.len());
    for t in &file.transitions {
        let letter = if t.letter == LEFT_END {
            Letter::LeftEnd
        } else {
            Letter::Sym(single_char(&t.letter)?)
        };
        transitions.push((id(&t.from)?, letter, id(&t.to)?));
    }
    Po2Automaton::new(alphabet, states, transitions)
}
