use std::fmt;

use num_complex::Complex64;

/// Two-component polarization state expressed relative to a reference
/// direction: `c_plus` along the parallel outcome, `c_minus` along the
/// perpendicular one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector2 {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
}

impl StateVector2 {
    pub const fn new(c_plus: Complex64, c_minus: Complex64) -> Self {
        Self { c_plus, c_minus }
    }

    pub fn from_array(c: [Complex64; 2]) -> Self {
        Self::new(c[0], c[1])
    }

    pub fn components(&self) -> [Complex64; 2] {
        [self.c_plus, self.c_minus]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_plus.norm_sqr() + self.c_minus.norm_sqr()
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &StateVector2) -> Complex64 {
        self.c_plus.conj() * other.c_plus + self.c_minus.conj() * other.c_minus
    }

    pub fn is_normalized(&self, tolerance: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tolerance
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector2) -> f64 {
        (self.c_plus - other.c_plus)
            .norm()
            .max((self.c_minus - other.c_minus).norm())
    }
}

impl fmt::Display for StateVector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c_plus, self.c_minus)
    }
}
