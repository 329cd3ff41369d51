//! Extended-precision complex arithmetic for terminating sums.
//!
//! Terminating series with a `q^{-n}` numerator have terms of size
//! `q^{-n(n-1)/2}` that cancel down to an O(1) result, so they are accumulated
//! here and only rounded back to `f64` at the end.

use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;

type Float = FBig<HalfEven, 2>;

/// Working precision floor in bits.
pub(crate) const MIN_PRECISION: usize = 128;
/// Hard ceiling for the precision-doubling loop.
pub(crate) const MAX_PRECISION: usize = 4096;

fn float(x: f64, precision: usize) -> Float {
    let v = Float::try_from(x).unwrap_or_else(|_| panic!("non-finite value {x} lifted to extended precision"));
    v.with_precision(precision).value()
}

#[derive(Clone, Debug)]
pub(crate) struct MpComplex {
    re: Float,
    im: Float,
}

impl MpComplex {
    pub fn new(z: Complex64, precision: usize) -> Self {
        Self { re: float(z.re, precision), im: float(z.im, precision) }
    }

    pub fn real(x: f64, precision: usize) -> Self {
        Self::new(Complex64::new(x, 0.0), precision)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn norm(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl Add for &MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: Self) -> MpComplex {
        MpComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: Self) -> MpComplex {
        MpComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: Self) -> MpComplex {
        MpComplex { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Div for &MpComplex {
    type Output = MpComplex;
    fn div(self, rhs: Self) -> MpComplex {
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        MpComplex {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &den,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &den,
        }
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_f64_on_benign_values() {
        let a = Complex64::new(0.3, -1.25);
        let b = Complex64::new(-2.0, 0.5);
        let (ma, mb) = (MpComplex::new(a, 200), MpComplex::new(b, 200));
        for (got, want) in [
            ((&ma + &mb).to_c64(), a + b),
            ((&ma - &mb).to_c64(), a - b),
            ((&ma * &mb).to_c64(), a * b),
            ((&ma / &mb).to_c64(), a / b),
            ((-&ma).to_c64(), -a),
        ] {
            assert!((got - want).norm() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn resolves_cancellation_beyond_double_precision() {
        // (1e20 + 1) - 1e20 == 1 exactly at 200 bits.
        let big = MpComplex::real(1e20, 200);
        let one = MpComplex::real(1.0, 200);
        let r = &(&big + &one) - &big;
        assert_eq!(r.to_c64(), Complex64::new(1.0, 0.0));
    }
}
