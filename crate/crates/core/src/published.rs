//! Closed-form expressions transcribed exactly as published, typos
//! included.
//!
//! Nothing in the crate computes with these; [`crate::verify`] compares each
//! one with the value derived from amplitude products and reports the
//! elements that disagree.

use num_complex::Complex64;

use crate::amplitude::{Amplitude, Branch, Direction};
use crate::operators::Matrix2;
use crate::state::StateVector2;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Generalized states of `a` relative to `c`.
pub fn generalized_state(a: Direction, branch: Branch, c: Direction) -> StateVector2 {
    let (sa, ca) = a.theta.sin_cos();
    let (sc, cc) = c.theta.sin_cos();
    let e = Complex64::cis(a.alpha - c.alpha);
    match branch {
        Branch::Plus => StateVector2::new(ca * cc + sa * sc * e, -ca * sc + sa * cc * e),
        Branch::Minus => StateVector2::new(-sa * cc + ca * sc * e, sa * sc + ca * cc * e),
    }
}

/// Polarization operator elements `[p11, p12, p21, p22]`.
///
/// The off-diagonal entries carry `−sin θc cos θb` where the derivation gives
/// `−sin 2θc cos 2θb`.
pub fn polarization_operator(measure: Direction, basis: Direction) -> Matrix2 {
    let (tb, tc) = (measure.theta, basis.theta);
    let d = basis.alpha - measure.alpha;
    let (s2b, c2b) = (2.0 * tb).sin_cos();
    let (s2c, c2c) = (2.0 * tc).sin_cos();
    let i = Complex64::i();

    let p11 = c2c * c2b + s2c * s2b * d.cos();
    let p12 = -tc.sin() * tb.cos() + c2c * s2b * d.cos() + i * s2b * d.sin();
    let p21 = -tc.sin() * tb.cos() + c2c * s2b * d.cos() - i * s2b * d.sin();
    let p22 = -c2c * c2b - s2c * s2b * d.cos();
    [[re(p11), p12], [p21, re(p22)]]
}

/// Eigenvectors `(ξ₊, ξ₋)` of the polarization operator.
pub fn eigenvectors(measure: Direction, basis: Direction) -> (StateVector2, StateVector2) {
    let (sb, cb) = measure.theta.sin_cos();
    let (sc, cc) = basis.theta.sin_cos();
    let e = Complex64::cis(measure.alpha - basis.alpha);
    (
        StateVector2::new(cb * cc + sb * sc * e, -cb * sc + sb * cc * e),
        StateVector2::new(-sb * cc + cb * sc * e, sb * sc + cb * cc * e),
    )
}

/// Expectation of the polarization operator for `a` measured along `b`.
pub fn expectation(a: Direction, branch: Branch, b: Direction) -> f64 {
    let v = (2.0 * a.theta).cos() * (2.0 * b.theta).cos()
        + (2.0 * a.theta).sin() * (2.0 * b.theta).sin() * (a.alpha - b.alpha).cos();
    match branch {
        Branch::Plus => v,
        Branch::Minus => -v,
    }
}

/// `[χ_a⁺, χ_a⁻, χ_a⊥⁺, χ_a⊥⁻]`.
pub fn standard_amplitudes(a: Direction) -> [Amplitude; 4] {
    let (s, c) = a.theta.sin_cos();
    let e = Complex64::cis(a.alpha);
    [re(c), s * e, re(-s), c * e]
}

/// Standard parallel and perpendicular states.
pub fn standard_states(a: Direction) -> (StateVector2, StateVector2) {
    let (s, c) = a.theta.sin_cos();
    let e = Complex64::cis(a.alpha);
    (
        StateVector2::new(re(c), s * e),
        StateVector2::new(re(-s), c * e),
    )
}

/// Standard polarization operator. The off-diagonal entries depend
/// on the initial-state phase `alpha_a` and use `sin θb` rather than
/// `sin 2θb`.
pub fn standard_operator(measure: Direction, alpha_a: f64) -> Matrix2 {
    let tb = measure.theta;
    let c2b = (2.0 * tb).cos();
    let phase = alpha_a - measure.alpha;
    [
        [re(c2b), tb.sin() * Complex64::cis(phase)],
        [tb.sin() * Complex64::cis(-phase), re(-c2b)],
    ]
}

/// Standard eigenvectors. They keep the basis phase `alpha_c`
/// even though the basis is the `x` direction; pass `0.0` to get the
/// consistent form.
pub fn standard_eigenvectors(measure: Direction, alpha_c: f64) -> (StateVector2, StateVector2) {
    let (sb, cb) = measure.theta.sin_cos();
    let e = Complex64::cis(measure.alpha - alpha_c);
    (
        StateVector2::new(re(cb), sb * e),
        StateVector2::new(re(-sb), cb * e),
    )
}
