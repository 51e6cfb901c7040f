//! Direction-dependent 2×2 observables, the polarization operator, its
//! eigenvectors and expectation values.
//!
//! A quantity `R` measured together with polarization along `measure` takes
//! the value `r_plus` on the parallel outcome and `r_minus` on the
//! perpendicular one. Its matrix is expressed relative to the two outcomes of
//! a second direction, `basis`. Matrices are built from products of
//! amplitudes ([`observable_matrix`]); [`observable_matrix_closed`] evaluates
//! the equivalent trigonometric expressions and exists for cross-checking.

use num_complex::Complex64;

use crate::amplitude::{amplitude, probability, state_vector, Branch, BranchLabel, Direction};
use crate::error::{Error, Result};
use crate::state::StateVector2;
use crate::DEFAULT_TOLERANCE;

/// Row-major 2×2 complex matrix.
pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const IDENTITY: Matrix2 = [[ONE, ZERO], [ZERO, ONE]];

pub fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut c = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn apply(m: &Matrix2, v: &StateVector2) -> [Complex64; 2] {
    [
        m[0][0] * v.c_plus + m[0][1] * v.c_minus,
        m[1][0] * v.c_plus + m[1][1] * v.c_minus,
    ]
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &Matrix2, b: &Matrix2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// Hermitian 2×2 observable with its defining eigenvalues and directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
    /// Value on the outcome parallel to `measure_dir`.
    pub r_plus: f64,
    /// Value on the outcome perpendicular to `measure_dir`.
    pub r_minus: f64,
    pub measure_dir: Direction,
    pub basis_dir: Direction,
}

impl Observable2 {
    pub fn matrix(&self) -> Matrix2 {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    pub fn determinant(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, v: &StateVector2) -> [Complex64; 2] {
        apply(&self.matrix(), v)
    }

    pub fn squared(&self) -> Matrix2 {
        let m = self.matrix();
        matmul(&m, &m)
    }

    /// Largest violation of `m21 = conj(m12)` and real diagonal.
    pub fn hermiticity_residual(&self) -> f64 {
        (self.m21 - self.m12.conj())
            .norm()
            .max(self.m11.im.abs())
            .max(self.m22.im.abs())
    }

    /// Checks Hermiticity, `trace = r_plus + r_minus` and
    /// `det = r_plus · r_minus`.
    pub fn check_invariants(&self, tolerance: f64) -> Result<()> {
        let herm = self.hermiticity_residual();
        if herm > tolerance {
            return Err(Error::InvalidObservable(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let tr = (self.trace() - (self.r_plus + self.r_minus)).norm();
        if tr > tolerance {
            return Err(Error::InvalidObservable(format!(
                "trace differs from r_plus + r_minus by {tr:e}"
            )));
        }
        let det = (self.determinant() - self.r_plus * self.r_minus).norm();
        if det > tolerance {
            return Err(Error::InvalidObservable(format!(
                "determinant differs from r_plus * r_minus by {det:e}"
            )));
        }
        Ok(())
    }

    /// Eigenvalue attached to a branch of the measured direction.
    pub fn eigenvalue(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.r_plus,
            Branch::Minus => self.r_minus,
        }
    }
}

/// Matrix of the quantity taking `r_plus` / `r_minus` on the outcomes along
/// `measure`, relative to the outcomes of `basis`.
///
/// Element `(i, j)` is
/// `Σ_s conj(χ((basis,i),(measure,s))) · χ((basis,j),(measure,s)) · R_s`.
pub fn observable_matrix(
    measure: Direction,
    basis: Direction,
    r_plus: f64,
    r_minus: f64,
) -> Observable2 {
    let element = |i: Branch, j: Branch| -> Complex64 {
        Branch::BOTH
            .iter()
            .map(|&s| {
                let out = measure.with(s);
                let r = if s == Branch::Plus { r_plus } else { r_minus };
                amplitude(basis.with(i), out).conj() * amplitude(basis.with(j), out) * r
            })
            .sum()
    };
    Observable2 {
        m11: element(Branch::Plus, Branch::Plus),
        m12: element(Branch::Plus, Branch::Minus),
        m21: element(Branch::Minus, Branch::Plus),
        m22: element(Branch::Minus, Branch::Minus),
        r_plus,
        r_minus,
        measure_dir: measure,
        basis_dir: basis,
    }
}

/// The trigonometric closed forms of the observable matrix, as published.
///
/// `m11`, `m12` and `m22` agree with [`observable_matrix`]. The published
/// `m21` expression is a verbatim copy of `m12`, so its imaginary part has the
/// wrong sign whenever `sin(α_c − α_b) ≠ 0` and `r_plus ≠ r_minus`; the result
/// is then not Hermitian. It is kept as written so the discrepancy stays
/// visible to [`crate::verify`].
pub fn observable_matrix_closed(
    measure: Direction,
    basis: Direction,
    r_plus: f64,
    r_minus: f64,
) -> Observable2 {
    let (tb, tc) = (measure.theta, basis.theta);
    let dphi = basis.alpha - measure.alpha;
    let (sb, cb) = tb.sin_cos();
    let (sc, cc) = tc.sin_cos();
    let (s2b, c2b) = (2.0 * tb).sin_cos();
    let (s2c, c2c) = (2.0 * tc).sin_cos();
    let (sd, cd) = dphi.sin_cos();
    let i = Complex64::i();

    let r11 = (cc * cc * cb * cb + sc * sc * sb * sb + 0.5 * s2c * s2b * cd) * r_plus
        + (cc * cc * sb * sb + sc * sc * cb * cb - 0.5 * s2c * s2b * cd) * r_minus;

    let r12 = (-0.5 * s2c * c2b + 0.5 * s2b * c2c * cd + i * 0.5 * s2b * sd) * r_plus
        + (0.5 * s2c * c2b - 0.5 * s2b * c2c * cd - i * 0.5 * s2b * sd) * r_minus;

    // written identically to r12 in the source
    let r21 = (-0.5 * s2c * c2b + 0.5 * s2b * c2c * cd + i * 0.5 * s2b * sd) * r_plus
        + (0.5 * s2c * c2b - 0.5 * s2b * c2c * cd - i * 0.5 * s2b * sd) * r_minus;

    let r22 = (sc * sc * cb * cb + cc * cc * sb * sb - 0.5 * s2c * s2b * cd) * r_plus
        + (sc * sc * sb * sb + cc * cc * cb * cb + 0.5 * s2c * s2b * cd) * r_minus;

    Observable2 {
        m11: r11.into(),
        m12: r12,
        m21: r21,
        m22: r22.into(),
        r_plus,
        r_minus,
        measure_dir: measure,
        basis_dir: basis,
    }
}

/// Polarization operator: `+1` on the parallel outcome of `measure`, `-1` on
/// the perpendicular one, expressed relative to `basis`.
pub fn polarization_operator(measure: Direction, basis: Direction) -> Observable2 {
    observable_matrix(measure, basis, 1.0, -1.0)
}

/// Eigenvectors `(ξ₊, ξ₋)` of any observable measured along `measure`,
/// relative to `basis`. The components of `ξ_s` are the amplitudes
/// `χ((measure,s),(basis,±))`, with no re-phasing.
pub fn eigenvector_states(measure: Direction, basis: Direction) -> (StateVector2, StateVector2) {
    (
        state_vector(measure.plus(), basis),
        state_vector(measure.minus(), basis),
    )
}

/// `v† M v` for a normalized state, checked against [`DEFAULT_TOLERANCE`].
pub fn expectation(state: &StateVector2, obs: &Observable2) -> Result<f64> {
    expectation_with_tolerance(state, obs, DEFAULT_TOLERANCE)
}

pub fn expectation_with_tolerance(
    state: &StateVector2,
    obs: &Observable2,
    tolerance: f64,
) -> Result<f64> {
    let deviation = (state.norm_sqr() - 1.0).abs();
    if deviation > tolerance {
        return Err(Error::NotNormalized {
            deviation,
            tolerance,
        });
    }
    let mv = obs.apply(state);
    let value = state.c_plus.conj() * mv[0] + state.c_minus.conj() * mv[1];
    if value.im.abs() > tolerance {
        return Err(Error::ComplexExpectation {
            imag: value.im,
            tolerance,
        });
    }
    Ok(value.re)
}

/// Expectation of the polarization operator along `measure` for a photon
/// prepared in `initial`, as `P(+)·(+1) + P(−)·(−1)`.
pub fn expectation_closed(initial: BranchLabel, measure: Direction) -> f64 {
    probability(initial, measure.plus()) - probability(initial, measure.minus())
}
