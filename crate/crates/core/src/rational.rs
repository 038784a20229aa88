//! Exact rationals used for expansion values and bounds.

use num_rational::Ratio;

pub type Rational = Ratio<i128>;

pub fn ratio(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

pub fn int(v: usize) -> Rational {
    Ratio::from_integer(v as i128)
}

/// Floating approximation, for display only.
pub fn approx(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
