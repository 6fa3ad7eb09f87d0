//! Action labels, the quiescence observation, and input/output alphabets.

use std::collections::BTreeSet;
use std::fmt;

/// Reserved name for the quiescence observation.
pub const DELTA_NAME: &str = "delta";

/// Reserved sink-state names in test cases.
pub const PASS_STATE: &str = "pass";
pub const FAIL_STATE: &str = "fail";

/// An observable action: an input, an output, or the quiescence observation δ.
///
/// The derived ordering (inputs, then outputs, then δ, lexicographic within
/// each kind) is the canonical ordering used everywhere for enumeration,
/// serialization, and witness tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Input(String),
    Output(String),
    Delta,
}

impl Action {
    pub fn input(name: impl Into<String>) -> Self {
        Action::Input(name.into())
    }

    pub fn output(name: impl Into<String>) -> Self {
        Action::Output(name.into())
    }

    /// The bare label name; δ reports its reserved name.
    pub fn name(&self) -> &str {
        match self {
            Action::Input(n) | Action::Output(n) => n,
            Action::Delta => DELTA_NAME,
        }
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Action::Input(_))
    }

    pub fn is_output(&self) -> bool {
        matches!(self, Action::Output(_))
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, Action::Delta)
    }

    /// Token as written in model files: `a?`, `x!`, or `delta`.
    pub fn file_token(&self) -> String {
        match self {
            Action::Input(n) => format!("{n}?"),
            Action::Output(n) => format!("{n}!"),
            Action::Delta => DELTA_NAME.to_string(),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Input(n) => write!(f, "{n}?"),
            Action::Output(n) => write!(f, "{n}!"),
            Action::Delta => write!(f, "δ"),
        }
    }
}

/// True iff `name` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Finite input/output alphabet with disjoint, lexicographically ordered sides.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Alphabet {
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
}

impl Alphabet {
    pub fn new<I, O, S>(inputs: I, outputs: O) -> Self
    where
        I: IntoIterator<Item = S>,
        O: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Alphabet {
            inputs: inputs.into_iter().map(Into::into).collect(),
            outputs: outputs.into_iter().map(Into::into).collect(),
        }
    }

    /// Structural violations: bad names, the reserved δ name, or a
    /// non-disjoint partition.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for name in self.inputs.iter().chain(self.outputs.iter()) {
            if !is_valid_name(name) {
                out.push(format!("invalid label name `{name}`"));
            }
            if name == DELTA_NAME {
                out.push(format!("label name `{DELTA_NAME}` is reserved for quiescence"));
            }
        }
        for name in self.inputs.intersection(&self.outputs) {
            out.push(format!("label `{name}` is declared both input and output"));
        }
        out
    }

    /// True iff the action's name is declared with the matching kind.
    /// δ is always admitted: it is an observation, not an alphabet member.
    pub fn contains(&self, action: &Action) -> bool {
        match action {
            Action::Input(n) => self.inputs.contains(n),
            Action::Output(n) => self.outputs.contains(n),
            Action::Delta => true,
        }
    }

    /// Declared inputs in canonical order.
    pub fn input_actions(&self) -> impl Iterator<Item = Action> + '_ {
        self.inputs.iter().map(|n| Action::Input(n.clone()))
    }

    /// Declared outputs in canonical order.
    pub fn output_actions(&self) -> impl Iterator<Item = Action> + '_ {
        self.outputs.iter().map(|n| Action::Output(n.clone()))
    }

    /// All actions plus δ, in canonical order.
    pub fn suspension_actions(&self) -> Vec<Action> {
        self.input_actions()
            .chain(self.output_actions())
            .chain(std::iter::once(Action::Delta))
            .collect()
    }
}
