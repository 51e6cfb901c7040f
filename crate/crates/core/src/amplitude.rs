//! Transition amplitudes between polarization branches.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::state::StateVector2;

/// Complex transition amplitude between two branch labels.
pub type Amplitude = Complex64;

/// Polarization measurement context: plane angle from the `x` axis plus the
/// relative phase between the `x` and `y` field components. Radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Direction {
    pub theta: f64,
    pub alpha: f64,
}

impl Direction {
    /// The `x` direction, `theta = alpha = 0`.
    pub const X: Direction = Direction {
        theta: 0.0,
        alpha: 0.0,
    };

    pub const fn new(theta: f64, alpha: f64) -> Self {
        Self { theta, alpha }
    }

    pub fn from_degrees(theta_deg: f64, alpha_deg: f64) -> Self {
        Self::new(theta_deg.to_radians(), alpha_deg.to_radians())
    }

    pub fn is_finite(&self) -> bool {
        self.theta.is_finite() && self.alpha.is_finite()
    }

    /// Maps `theta` into `[0, π)` and `alpha` into `[0, 2π)`.
    ///
    /// A shift of `theta` by `π` only changes the global sign of the
    /// amplitudes, so canonical and original directions give identical
    /// probabilities and observables, but amplitudes may differ by a sign.
    /// Nothing in the crate calls this implicitly.
    pub fn canonical(&self) -> Self {
        Self {
            theta: wrap(self.theta, PI),
            alpha: wrap(self.alpha, 2.0 * PI),
        }
    }

    pub fn plus(self) -> BranchLabel {
        BranchLabel::new(self, Branch::Plus)
    }

    pub fn minus(self) -> BranchLabel {
        BranchLabel::new(self, Branch::Minus)
    }

    pub fn with(self, branch: Branch) -> BranchLabel {
        BranchLabel::new(self, branch)
    }
}

fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can round up to exactly `period` for tiny negative inputs
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Outcome of a polarization measurement relative to its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Parallel to the direction.
    Plus,
    /// Perpendicular to the direction.
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    /// `+1.0` for `Plus`, `-1.0` for `Minus`.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    /// Component index in a [`StateVector2`]: 0 for `Plus`, 1 for `Minus`.
    pub fn index(self) -> usize {
        match self {
            Branch::Plus => 0,
            Branch::Minus => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Branch::Plus => '+',
            Branch::Minus => '-',
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One of the two outcomes of a measurement along a direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchLabel {
    pub direction: Direction,
    pub branch: Branch,
}

impl BranchLabel {
    pub const fn new(direction: Direction, branch: Branch) -> Self {
        Self { direction, branch }
    }

    /// The other outcome of the same measurement.
    pub fn orthogonal(self) -> Self {
        Self::new(self.direction, self.branch.flip())
    }
}

/// Amplitude for a photon prepared in `from` to be found in `to`.
///
/// With `a = from.direction`, `b = to.direction` and `e = exp(i(α_a − α_b))`:
///
/// | from | to | amplitude |
/// |------|----|-----------|
/// | +    | +  | `cos θa cos θb + sin θa sin θb e` |
/// | +    | −  | `−cos θa sin θb + sin θa cos θb e` |
/// | −    | +  | `−sin θa cos θb + cos θa sin θb e` |
/// | −    | −  | `sin θa sin θb + cos θa cos θb e` |
///
/// `from` is the initial state; the phase factor carries `α_a − α_b` in
/// that order.
pub fn amplitude(from: BranchLabel, to: BranchLabel) -> Amplitude {
    let a = from.direction;
    let b = to.direction;
    let (sa, ca) = a.theta.sin_cos();
    let (sb, cb) = b.theta.sin_cos();
    let e = Complex64::cis(a.alpha - b.alpha);
    match (from.branch, to.branch) {
        (Branch::Plus, Branch::Plus) => ca * cb + sa * sb * e,
        (Branch::Plus, Branch::Minus) => -ca * sb + sa * cb * e,
        (Branch::Minus, Branch::Plus) => -sa * cb + ca * sb * e,
        (Branch::Minus, Branch::Minus) => sa * sb + ca * cb * e,
    }
}

/// Probability of finding `to` given `from`, as the squared modulus of
/// [`amplitude`].
pub fn probability(from: BranchLabel, to: BranchLabel) -> f64 {
    amplitude(from, to).norm_sqr()
}

/// Trigonometric closed form of the transition probability.
///
/// Parallel-to-parallel and perpendicular-to-perpendicular share one
/// expression, the two mixed cases share the other.
pub fn probability_closed(from: BranchLabel, to: BranchLabel) -> f64 {
    let a = from.direction;
    let b = to.direction;
    let (sa, ca) = a.theta.sin_cos();
    let (sb, cb) = b.theta.sin_cos();
    let cross = 0.5 * (2.0 * a.theta).sin() * (2.0 * b.theta).sin() * (a.alpha - b.alpha).cos();
    if from.branch == to.branch {
        ca * ca * cb * cb + sa * sa * sb * sb + cross
    } else {
        ca * ca * sb * sb + sa * sa * cb * cb - cross
    }
}

/// Amplitude from `from` to `to` resolved through both outcomes of a
/// measurement along `via`.
pub fn chain(from: BranchLabel, to: BranchLabel, via: Direction) -> Amplitude {
    Branch::BOTH
        .iter()
        .map(|&s| {
            let mid = via.with(s);
            amplitude(from, mid) * amplitude(mid, to)
        })
        .sum()
}

/// The reversed amplitude `amplitude(to, from)`; equals the conjugate of
/// `amplitude(from, to)`.
pub fn hermitian_partner(from: BranchLabel, to: BranchLabel) -> Amplitude {
    amplitude(to, from)
}

/// Components of `label` relative to the two outcomes of a measurement along
/// `reference`: component `j` is `amplitude(label, (reference, j))`.
pub fn state_vector(label: BranchLabel, reference: Direction) -> StateVector2 {
    StateVector2::new(
        amplitude(label, reference.plus()),
        amplitude(label, reference.minus()),
    )
}
