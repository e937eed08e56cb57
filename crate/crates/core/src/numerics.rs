//! Exact rationals and increasing piecewise-linear functions on `[-1, ∞)`.
//!
//! Herbrand functions are the only piecewise-linear functions the engine
//! needs, so the domain is always `[-1, ∞)` and every segment slope is
//! strictly positive. Functions are kept in normal form (adjacent segments
//! with equal slope merged), which makes `==` an exact structural test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `num/den`, or just `num` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Strictly increasing, continuous, piecewise-linear function on `[-1, ∞)`.
///
/// `breakpoints[i]` starts segment `i`, which has slope `slopes[i]`; the last
/// segment is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseLinearFn {
    breakpoints: Vec<Rational>,
    slopes: Vec<Rational>,
    start_value: Rational,
}

impl PiecewiseLinearFn {
    pub fn new(
        breakpoints: Vec<Rational>,
        slopes: Vec<Rational>,
        start_value: Rational,
    ) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != slopes.len() {
            return Err(Error::Domain(
                "need one slope per breakpoint and at least one segment".into(),
            ));
        }
        if breakpoints[0] != int(-1) {
            return Err(Error::Domain("first breakpoint must be -1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("breakpoints must be strictly increasing".into()));
        }
        if let Some(s) = slopes.iter().find(|s| !s.is_positive()) {
            return Err(Error::NotInvertible(format!(
                "segment slope {} is not positive",
                fmt_rational(s)
            )));
        }
        let mut f = PiecewiseLinearFn {
            breakpoints,
            slopes,
            start_value,
        };
        f.normalize();
        Ok(f)
    }

    pub fn identity() -> Self {
        PiecewiseLinearFn {
            breakpoints: vec![int(-1)],
            slopes: vec![Rational::one()],
            start_value: int(-1),
        }
    }

    fn normalize(&mut self) {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut slopes: Vec<Rational> = Vec::with_capacity(self.slopes.len());
        for (b, s) in self.breakpoints.drain(..).zip(self.slopes.drain(..)) {
            if slopes.last() == Some(&s) {
                continue;
            }
            bps.push(b);
            slopes.push(s);
        }
        self.breakpoints = bps;
        self.slopes = slopes;
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn start_value(&self) -> &Rational {
        &self.start_value
    }

    /// Values at each breakpoint.
    pub fn breakpoint_values(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.breakpoints.len());
        let mut value = self.start_value.clone();
        out.push(value.clone());
        for i in 1..self.breakpoints.len() {
            value += &self.slopes[i - 1] * (&self.breakpoints[i] - &self.breakpoints[i - 1]);
            out.push(value.clone());
        }
        out
    }

    /// Index of the segment governing `x` from the right.
    fn segment_of(&self, x: &Rational) -> usize {
        match self.breakpoints.binary_search(x) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if *x < int(-1) {
            return Err(Error::Domain(format!(
                "argument {} lies left of -1",
                fmt_rational(x)
            )));
        }
        let values = self.breakpoint_values();
        let i = self.segment_of(x);
        Ok(&values[i] + &self.slopes[i] * (x - &self.breakpoints[i]))
    }

    /// Slope of the segment to the right of `x`.
    pub fn right_slope(&self, x: &Rational) -> &Rational {
        &self.slopes[self.segment_of(x)]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PiecewiseLinearFn) -> Result<PiecewiseLinearFn> {
        let low = inner.start_value.clone();
        if low < int(-1) {
            return Err(Error::Domain(format!(
                "inner function reaches {} outside [-1, ∞)",
                fmt_rational(&low)
            )));
        }
        let inv = inner.invert_unchecked();
        let mut points: Vec<Rational> = inner.breakpoints.clone();
        for b in &self.breakpoints {
            if *b > low {
                points.push(inv.eval_unchecked(b));
            }
        }
        points.sort();
        points.dedup();
        let slopes = points
            .iter()
            .map(|x| {
                let y = inner.eval_unchecked(x);
                self.right_slope(&y) * inner.right_slope(x)
            })
            .collect();
        let start = self.eval(&low)?;
        PiecewiseLinearFn::new(points, slopes, start)
    }

    fn eval_unchecked(&self, x: &Rational) -> Rational {
        let values = self.breakpoint_values();
        let i = self.segment_of(x);
        &values[i] + &self.slopes[i] * (x - &self.breakpoints[i])
    }

    // Inverse as a function on [start_value, ∞), re-based so that evaluation
    // works for any argument at or above start_value.
    fn invert_unchecked(&self) -> PiecewiseLinearFn {
        PiecewiseLinearFn {
            breakpoints: self.breakpoint_values(),
            slopes: self.slopes.iter().map(|s| s.recip()).collect(),
            start_value: self.breakpoints[0].clone(),
        }
    }

    /// Exact inverse. The result must again live on `[-1, ∞)`, so `f(-1)`
    /// has to be `-1`.
    pub fn invert(&self) -> Result<PiecewiseLinearFn> {
        if let Some(s) = self.slopes.iter().find(|s| !s.is_positive()) {
            return Err(Error::NotInvertible(format!(
                "segment slope {} is not positive",
                fmt_rational(s)
            )));
        }
        if self.start_value != int(-1) {
            return Err(Error::Domain(format!(
                "inverse would start at {} instead of -1",
                fmt_rational(&self.start_value)
            )));
        }
        let mut f = self.invert_unchecked();
        f.normalize();
        Ok(f)
    }

    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] >= w[1])
    }

    /// Herbrand shape: identity on `[-1, 0]` and concave.
    pub fn is_herbrand_shaped(&self) -> bool {
        self.start_value == int(-1)
            && self.slopes[0].is_one()
            && self.breakpoints.get(1).is_none_or(|b| *b >= Rational::zero())
            && self.is_concave()
    }
}

impl fmt::Display for PiecewiseLinearFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values = self.breakpoint_values();
        let parts: Vec<String> = self
            .breakpoints
            .iter()
            .zip(values.iter())
            .zip(self.slopes.iter())
            .map(|((b, v), s)| {
                format!(
                    "({}, {}) slope {}",
                    fmt_rational(b),
                    fmt_rational(v),
                    fmt_rational(s)
                )
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herbrand(jump: i64, slope_after: Rational) -> PiecewiseLinearFn {
        PiecewiseLinearFn::new(vec![int(-1), int(jump)], vec![int(1), slope_after], int(-1))
            .unwrap()
    }

    #[test]
    fn eval_artin_schreier_phi() {
        // p = 3, m = 2: identity up to 2, slope 1/3 afterwards.
        let phi = herbrand(2, rat(1, 3));
        assert_eq!(phi.eval(&int(0)).unwrap(), int(0));
        assert_eq!(phi.eval(&int(-1)).unwrap(), int(-1));
        assert_eq!(phi.eval(&int(5)).unwrap(), int(3));
        assert!(matches!(phi.eval(&rat(-3, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_tame_degrees_multiply() {
        let phi2 = herbrand(0, rat(1, 2));
        let phi3 = herbrand(0, rat(1, 3));
        let c = phi2.compose(&phi3).unwrap();
        assert_eq!(c, herbrand(0, rat(1, 6)));
        assert_eq!(phi2.compose(&PiecewiseLinearFn::identity()).unwrap(), phi2);
        assert_eq!(PiecewiseLinearFn::identity().compose(&phi2).unwrap(), phi2);
    }

    #[test]
    fn invert_examples() {
        let id = PiecewiseLinearFn::identity();
        assert_eq!(id.invert().unwrap(), id);
        let phi = herbrand(2, rat(1, 3));
        assert_eq!(phi.invert().unwrap().eval(&int(3)).unwrap(), int(5));
        let phi4 = herbrand(0, rat(1, 4));
        assert_eq!(phi4.invert().unwrap().eval(&int(1)).unwrap(), int(4));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            PiecewiseLinearFn::new(vec![int(-1), int(0)], vec![int(1), int(0)], int(-1)),
            Err(Error::NotInvertible(_))
        ));
        assert!(PiecewiseLinearFn::new(vec![int(0)], vec![int(1)], int(0)).is_err());
        assert!(PiecewiseLinearFn::new(vec![int(-1), int(-1)], vec![int(1), int(1)], int(-1)).is_err());
    }

    #[test]
    fn invert_requires_anchor() {
        let shifted = PiecewiseLinearFn::new(vec![int(-1)], vec![int(1)], int(0)).unwrap();
        assert!(matches!(shifted.invert(), Err(Error::Domain(_))));
    }

    #[test]
    fn normal_form_merges_equal_slopes() {
        let f = PiecewiseLinearFn::new(
            vec![int(-1), int(0), int(3)],
            vec![int(1), int(1), rat(1, 2)],
            int(-1),
        )
        .unwrap();
        assert_eq!(f.breakpoints().len(), 2);
        assert_eq!(f, herbrand(3, rat(1, 2)));
    }

    #[test]
    fn compose_rejects_range_outside_domain() {
        let low = PiecewiseLinearFn::new(vec![int(-1)], vec![int(1)], int(-2)).unwrap();
        assert!(matches!(
            PiecewiseLinearFn::identity().compose(&low),
            Err(Error::Domain(_))
        ));
    }
}
