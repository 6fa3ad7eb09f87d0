//! Lifting of transition systems into canonic timed automata, the projection
//! back, and the corresponding trace maps.
//!
//! The lifting introduces one clock for a chosen positive bound `M`: action
//! edges are guarded `c < M`, every quiescent state receives a δ self-loop
//! guarded `c = M`, every location gets the invariant `c <= M`, and every
//! edge resets the clock. Outputs therefore happen strictly before `M` and
//! quiescence is observed exactly at `M`.

use std::collections::BTreeSet;

use crate::action::Action;
use crate::error::{summarize, ModelError};
use crate::lts::{DeltaStyle, Lts, SuspensionTrace, Transition};
use crate::rational::Rational;
use crate::ta::{ClockConstraint, TimedAutomaton, TimedStep, TimedTrace, TimedTransition};

/// Lifts a plain transition system into its canonic timed automaton.
pub fn lift(model: &Lts, bound: Rational) -> Result<TimedAutomaton, ModelError> {
    let violations = model.validate();
    if !violations.is_empty() {
        return Err(ModelError::Invalid(summarize(&violations)));
    }
    if model.transitions.iter().any(|t| t.action.is_delta()) {
        return Err(ModelError::DeltaInAlphabet);
    }
    if !bound.is_positive() {
        return Err(ModelError::NonPositiveBound(bound.to_string()));
    }

    let mut transitions: BTreeSet<TimedTransition> = model
        .transitions
        .iter()
        .map(|t| {
            TimedTransition::new(
                t.source.clone(),
                t.action.clone(),
                ClockConstraint::LtM,
                t.target.clone(),
            )
        })
        .collect();
    for s in &model.states {
        if model.is_quiescent_state(s)? {
            transitions.insert(TimedTransition::new(
                s.clone(),
                Action::Delta,
                ClockConstraint::EqM,
                s.clone(),
            ));
        }
    }

    Ok(TimedAutomaton {
        locations: model.states.clone(),
        initial: model.initial.clone(),
        alphabet: model.alphabet.clone(),
        bound,
        invariants: model
            .states
            .iter()
            .map(|s| (s.clone(), ClockConstraint::LeM))
            .collect(),
        transitions,
    })
}

/// Drops guards, invariants, resets, and the clock from a canonic automaton,
/// keeping all edges including the δ self-loops.
pub fn project_ta(ta: &TimedAutomaton) -> Result<Lts, ModelError> {
    ta.ensure_canonic()?;
    Ok(project_unchecked(ta))
}

pub(crate) fn project_unchecked(ta: &TimedAutomaton) -> Lts {
    Lts {
        states: ta.locations.clone(),
        initial: ta.initial.clone(),
        alphabet: ta.alphabet.clone(),
        transitions: ta
            .transitions
            .iter()
            .map(|t| Transition::new(t.source.clone(), t.action.clone(), t.target.clone()))
            .collect(),
        delta_style: DeltaStyle::Explicit,
    }
}

/// Drops the delay classes of a timed trace, keeping the label sequence.
pub fn project_trace(trace: &TimedTrace) -> SuspensionTrace {
    SuspensionTrace(trace.0.iter().map(|s| s.action.clone()).collect())
}

/// Canonical timed representative of a suspension trace: actions happen
/// before `M`, quiescence exactly at `M`.
pub fn lift_trace(trace: &SuspensionTrace) -> TimedTrace {
    TimedTrace(
        trace
            .0
            .iter()
            .map(|a| match a {
                Action::Delta => TimedStep::at_m(Action::Delta),
                other => TimedStep::before(other.clone()),
            })
            .collect(),
    )
}

/// Checks that a canonic automaton is the image of [`lift`]: a δ self-loop
/// at exactly the quiescent locations.
pub fn ensure_lift_image(ta: &TimedAutomaton) -> Result<(), ModelError> {
    ta.ensure_canonic()?;
    for l in &ta.locations {
        let has_delta = ta
            .transitions
            .iter()
            .any(|t| &t.source == l && t.action.is_delta());
        if ta.is_quiescent_location(l)? && !has_delta {
            return Err(ModelError::NotLiftImage(format!(
                "quiescent location `{l}` has no delta self-loop"
            )));
        }
    }
    Ok(())
}
