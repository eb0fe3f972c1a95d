//! Roots of unity `e^{2πi r}` for rational `r` in double-double precision,
//! and exact-phase sums of signed roots of unity.

use std::ops::{Add, Mul, Neg};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::rational::{rat, to_f64, Rational};

/// An unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const TWO_PI: DoubleDouble = DoubleDouble { hi: std::f64::consts::TAU, lo: 2.4492935982947064e-16 };

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to an exact rational.
    pub fn from_rational(r: &Rational) -> Self {
        let hi = to_f64(r);
        let rest = r - Rational::from_float(hi).unwrap_or_else(Rational::zero);
        let (hi, lo) = quick_two_sum(hi, to_f64(&rest));
        DoubleDouble { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q = self.hi / b;
        let p = q * b;
        let e = q.mul_add(b, -p);
        let r = (self.hi - p - e + self.lo) / b;
        let (hi, lo) = quick_two_sum(q, r);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        DoubleDouble { hi, lo }
    }
}

/// `(cos x, sin x)` for `|x| ≤ π/4` by Taylor series.
fn cos_sin_small(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let x2 = x * x;
    let mut cos = DoubleDouble::from_f64(1.0);
    let mut sin = x;
    let mut term_c = DoubleDouble::from_f64(1.0);
    let mut term_s = x;
    let mut n = 1.0;
    while term_c.hi.abs() > 1e-34 || term_s.hi.abs() > 1e-34 {
        term_c = (term_c * x2).div_f64(-(2.0 * n - 1.0) * (2.0 * n));
        term_s = (term_s * x2).div_f64(-(2.0 * n) * (2.0 * n + 1.0));
        cos = cos + term_c;
        sin = sin + term_s;
        n += 1.0;
    }
    (cos, sin)
}

/// `e^{2πi r}` as `(re, im)`, with the octant reduction done exactly.
pub fn root_of_unity(r: &Rational) -> (DoubleDouble, DoubleDouble) {
    let f = r - Rational::from_integer(r.numer().div_floor(r.denom()));
    let quarter = rat(1, 4);
    let q = (&f / &quarter).to_integer().to_i64().unwrap_or(0);
    let f = &f - &quarter * Rational::from_integer(q.into());
    let (c, s) = if f > rat(1, 8) {
        let (c, s) = cos_sin_small(TWO_PI * DoubleDouble::from_rational(&(&quarter - &f)));
        (s, c)
    } else {
        cos_sin_small(TWO_PI * DoubleDouble::from_rational(&f))
    };
    match q {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// Accumulates `Σ ± e^{2πi r}` in double-double.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitySum {
    re: DoubleDouble,
    im: DoubleDouble,
}

impl UnitySum {
    pub fn add(&mut self, sign: i64, turns: &Rational) {
        let (c, s) = root_of_unity(turns);
        let (c, s) = if sign < 0 { (-c, -s) } else { (c, s) };
        self.re = self.re + c;
        self.im = self.im + s;
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_octants() {
        let (c, s) = root_of_unity(&rat(1, 4));
        assert_eq!((c.to_f64(), s.to_f64()), (0.0, 1.0));
        let (c, _) = root_of_unity(&rat(1, 3));
        assert!((c.hi + 0.5).abs() < 1e-30 && c.lo.abs() < 1e-30);
        let (c, s) = root_of_unity(&rat(-7, 8));
        assert!((c.to_f64() - 0.5f64.sqrt()).abs() < 1e-16);
        assert!((s.to_f64() - 0.5f64.sqrt()).abs() < 1e-16);
    }

    fn decimal(digits: &str) -> DoubleDouble {
        let n: num_bigint::BigInt = digits.parse().unwrap();
        let d = num_bigint::BigInt::from(10).pow(40);
        DoubleDouble::from_rational(&Rational::new(n, d))
    }

    fn close(a: DoubleDouble, b: DoubleDouble) -> bool {
        a.hi == b.hi && (a.lo - b.lo).abs() < 1e-31
    }

    #[test]
    fn matches_reference_values() {
        let (_, s) = root_of_unity(&rat(29, 30));
        assert!(close(s, decimal("-2079116908177593371017422844051251662166")));
        let (c, _) = root_of_unity(&rat(5, 97));
        assert!(close(c, decimal("9480091799562704669734370161472778154348")));
        let (_, s) = root_of_unity(&rat(123456789, 1000000007));
        assert!(close(s, decimal("7002173388510425499054661134460656585250")));
    }

    #[test]
    fn sixth_roots_cancel() {
        let mut acc = UnitySum::default();
        for k in 0..6 {
            acc.add(1, &rat(k, 6));
        }
        assert!(acc.value().norm() < 1e-30);
    }
}
