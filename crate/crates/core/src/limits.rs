//! Generalized objects evaluated at the `x` direction (`theta = alpha = 0`).
//!
//! Amplitudes and states take `x` as the final direction; operators and
//! eigenvectors take it as the basis direction.

use crate::amplitude::{amplitude, state_vector, Amplitude, Direction};
use crate::operators::{eigenvector_states, polarization_operator, Observable2};
use crate::state::StateVector2;

/// `[χ(a⁺,x⁺), χ(a⁺,x⁻), χ(a⁻,x⁺), χ(a⁻,x⁻)]`, i.e.
/// `(cos θ, sin θ e^{iα}, −sin θ, cos θ e^{iα})`.
pub fn standard_amplitudes(a: Direction) -> [Amplitude; 4] {
    let x = Direction::X;
    [
        amplitude(a.plus(), x.plus()),
        amplitude(a.plus(), x.minus()),
        amplitude(a.minus(), x.plus()),
        amplitude(a.minus(), x.minus()),
    ]
}

/// The parallel and perpendicular states of `a` in `x`/`y` components.
pub fn standard_states(a: Direction) -> (StateVector2, StateVector2) {
    (
        state_vector(a.plus(), Direction::X),
        state_vector(a.minus(), Direction::X),
    )
}

pub fn standard_operator(measure: Direction) -> Observable2 {
    polarization_operator(measure, Direction::X)
}

pub fn standard_eigenvectors(measure: Direction) -> (StateVector2, StateVector2) {
    eigenvector_states(measure, Direction::X)
}
