//! Evaluation modes: exact rational functions, or values at a rational
//! point of `(s1, s2, s3)`.

use alloc::string::String;
use core::fmt::{Display, Write};

use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::Field;
use super::linfrac::LinFrac;
use super::ratfunc::RatFuncS;
use crate::partitions::Weight;
use crate::{Error, Result};

/// Turns linear forms in `s` into field values and produces the final
/// coefficient type.
pub trait WeightEvaluator: Sync + Send {
    type Value: Field;
    type Output: Field + Display;

    fn linear(&self, form: [i64; 3]) -> Result<Self::Value>;

    fn finalize(&self, v: &Self::Value) -> Self::Output;
}

/// Exact rational functions.
#[derive(Debug, Default, Clone, Copy)]
pub struct Symbolic;

impl WeightEvaluator for Symbolic {
    type Value = LinFrac;
    type Output = RatFuncS;

    fn linear(&self, form: [i64; 3]) -> Result<LinFrac> {
        Ok(LinFrac::linear(form))
    }

    fn finalize(&self, v: &LinFrac) -> RatFuncS {
        v.to_ratfunc()
    }
}

/// Values at a fixed rational point; a nonzero form vanishing there aborts.
#[derive(Debug, Clone, PartialEq)]
pub struct Numeric {
    pub point: [BigRational; 3],
}

impl Numeric {
    pub fn new(point: [BigRational; 3]) -> Self {
        Numeric { point }
    }
}

impl WeightEvaluator for Numeric {
    type Value = BigRational;
    type Output = BigRational;

    fn linear(&self, form: [i64; 3]) -> Result<BigRational> {
        let v = super::linfrac::form_value(&form, &self.point);
        if v.is_zero() && form != [0, 0, 0] {
            return Err(Error::DegenerateEvaluationPoint { form: format_form(form) });
        }
        Ok(v)
    }

    fn finalize(&self, v: &BigRational) -> BigRational {
        v.clone()
    }
}

/// `a*s1 + b*s2 + c*s3` rendered like the coefficient strings.
pub fn format_form(form: [i64; 3]) -> String {
    let mut out = String::new();
    for (i, &c) in form.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        if c.abs() != 1 {
            let _ = write!(out, "{}*", c.abs());
        }
        let _ = write!(out, "s{}", i + 1);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Images of the three local axis weights as global linear forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    pub axes: [[i64; 3]; 3],
}

impl Frame {
    pub const IDENTITY: Frame = Frame { axes: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] };

    pub fn new(axes: [[i64; 3]; 3]) -> Self {
        Frame { axes }
    }

    /// Local axis `k` carries global weight `s_{perm[k]+1}`.
    pub fn permutation(perm: [usize; 3]) -> Self {
        let mut axes = [[0; 3]; 3];
        for k in 0..3 {
            axes[k][perm[k]] = 1;
        }
        Frame { axes }
    }

    /// Global form of a local weight.
    pub fn form(&self, w: &Weight) -> [i64; 3] {
        let mut out = [0i64; 3];
        for (k, axis) in self.axes.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(axis) {
                *o += w.0[k] as i64 * a;
            }
        }
        out
    }
}

impl Default for Frame {
    fn default() -> Self {
        Frame::IDENTITY
    }
}
