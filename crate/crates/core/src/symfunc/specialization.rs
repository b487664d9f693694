use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};

/// Evaluation of symmetric functions at finitely many variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Specialization<S> {
    pub vars: Vec<S>,
}

impl<S: Scalar> Specialization<S> {
    pub fn new(vars: Vec<S>) -> Self {
        Self { vars }
    }

    pub fn empty() -> Self {
        Self { vars: Vec::new() }
    }

    pub fn single(x: S) -> Self {
        Self { vars: vec![x] }
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    /// Union adds power sums; for variable lists it is concatenation.
    pub fn union(&self, other: &Self) -> Self {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        Self { vars }
    }

    pub fn union_all<'a>(specs: impl IntoIterator<Item = &'a Self>) -> Self {
        specs
            .into_iter()
            .fold(Self::empty(), |acc, s| acc.union(s))
    }

    /// `p_1 = sum of variables`.
    pub fn p1(&self) -> S {
        self.vars.iter().fold(S::zero(), |a, x| a + x.clone())
    }

    /// `sum |x_i|`.
    pub fn abs_sum(&self) -> f64 {
        self.vars.iter().map(Scalar::magnitude).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.vars.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// `h_0 .. h_d`, from `prod (1 - x z)^{-1}` one variable at a time.
    pub fn h_values(&self, d: usize) -> Vec<S> {
        let mut h = vec![S::zero(); d + 1];
        h[0] = S::one();
        for x in &self.vars {
            for k in 1..=d {
                let v = h[k].clone() + x.clone() * h[k - 1].clone();
                h[k] = v;
            }
        }
        h
    }

    /// Same specialization in the float backend.
    pub fn to_complex(&self) -> Specialization<C> {
        Specialization {
            vars: self.vars.iter().map(Scalar::to_complex).collect(),
        }
    }

    /// `H(rho; z) = prod (1 - x z)^{-1}`.
    pub fn h_at(&self, z: C) -> C {
        C::new(1.0, 0.0) / self.h_inv_at(z)
    }

    /// `1 / H(rho; z) = prod (1 - x z)`, finite everywhere.
    pub fn h_inv_at(&self, z: C) -> C {
        self.vars
            .iter()
            .fold(C::new(1.0, 0.0), |acc, x| acc * (C::new(1.0, 0.0) - x.to_complex() * z))
    }

    pub fn to_json(&self) -> Value {
        json!({"vars": self.vars.iter().map(Scalar::to_json).collect::<Vec<_>>()})
    }

    /// `{"vars":[...]}` or a bare array.
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = match v {
            Value::Array(a) => a,
            Value::Object(o) => o
                .get("vars")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("specialization: missing vars array".into()))?,
            other => return Err(Error::Json(format!("specialization: unexpected {other}"))),
        };
        Ok(Self {
            vars: arr.iter().map(S::from_json).collect::<Result<_>>()?,
        })
    }
}

/// `h_k` with the convention `h_k = 0` for `k < 0` and past the table.
pub(crate) fn h_at_index<S: Scalar>(h: &[S], k: i64) -> S {
    if k < 0 || k as usize >= h.len() {
        S::zero()
    } else {
        h[k as usize].clone()
    }
}
