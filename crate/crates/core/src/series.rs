//! Truncated power series in one variable `z` with coefficients in an algebra.

use std::sync::Arc;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// `c_0 + c_1 z + … + c_N z^N + O(z^{N+1})`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    algebra: Arc<Algebra>,
    coeffs: Vec<Element>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn new(algebra: &Arc<Algebra>, coeffs: Vec<Element>) -> Result<TruncatedSeries> {
        if coeffs.is_empty() {
            return Err(Error::ShapeMismatch("a series needs at least the constant term".into()));
        }
        if coeffs.iter().any(|c| !c.algebra().same_as(algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TruncatedSeries { algebra: Arc::clone(algebra), coeffs })
    }

    pub fn zero(algebra: &Arc<Algebra>, order: usize) -> TruncatedSeries {
        TruncatedSeries { algebra: Arc::clone(algebra), coeffs: vec![Element::zero(algebra); order + 1] }
    }

    pub fn one(algebra: &Arc<Algebra>, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(algebra, order);
        s.coeffs[0] = Element::unit(algebra);
        s
    }

    /// A polynomial, zero-padded or truncated to `order`.
    pub fn from_polynomial(algebra: &Arc<Algebra>, poly: &[Element], order: usize) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(algebra, order);
        for (k, c) in poly.iter().enumerate().take(order + 1) {
            if !c.algebra().same_as(algebra) {
                return Err(Error::AlgebraMismatch);
            }
            s.coeffs[k] = c.clone();
        }
        Ok(s)
    }

    /// Series over the ground field from integer coefficients.
    pub fn from_ints(algebra: &Arc<Algebra>, values: &[i64]) -> Result<TruncatedSeries> {
        let coeffs = values
            .iter()
            .map(|&v| Element::scalar(algebra, scalar::int(v)))
            .collect();
        TruncatedSeries::new(algebra, coeffs)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Element {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Index of the last nonzero coefficient, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn check_same(&self, other: &TruncatedSeries) -> Result<usize> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = self.check_same(other)?;
        let coeffs = (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect::<Result<_>>()?;
        Ok(TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = self.check_same(other)?;
        let coeffs = (0..=n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect::<Result<_>>()?;
        Ok(TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs })
    }

    pub fn scale(&self, factor: &Scalar) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|c| c.scale(factor)).collect();
        TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = self.check_same(other)?;
        let mut coeffs = vec![Element::zero(&self.algebra); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs })
    }

    /// `exp(s)` for `s` with zero constant term, via `n·E_n = Σ_{k=1}^{n} k·s_k·E_{n-k}`.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let n = self.order();
        let weighted: Vec<Element> =
            self.coeffs.iter().enumerate().map(|(k, c)| c.scale(&scalar::int(k as i64))).collect();
        let mut out = vec![Element::unit(&self.algebra)];
        for m in 1..=n {
            let mut acc = Element::zero(&self.algebra);
            for k in 1..=m {
                if weighted[k].is_zero() {
                    continue;
                }
                acc = acc.add(&weighted[k].mul(&out[m - k])?)?;
            }
            out.push(acc.scale(&scalar::ratio(1, m as i64)));
        }
        Ok(TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs: out })
    }

    /// `log(s)` for `s` with unit constant term, via
    /// `L_n = s_n − (1/n)·Σ_{k=1}^{n-1} k·L_k·s_{n-k}`.
    pub fn log(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_unit() {
            return Err(Error::LogConstantTerm);
        }
        let n = self.order();
        let mut out = vec![Element::zero(&self.algebra)];
        for m in 1..=n {
            let mut acc = Element::zero(&self.algebra);
            for k in 1..m {
                if out[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                let term = out[k].mul(&self.coeffs[m - k])?.scale(&scalar::int(k as i64));
                acc = acc.add(&term)?;
            }
            out.push(self.coeffs[m].sub(&acc.scale(&scalar::ratio(1, m as i64)))?);
        }
        Ok(TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs: out })
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        let head_inv = self.coeffs[0].invert()?;
        let n = self.order();
        let mut out = vec![head_inv.clone()];
        for m in 1..=n {
            let mut acc = Element::zero(&self.algebra);
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&out[m - k])?)?;
            }
            out.push(head_inv.mul(&acc)?.neg());
        }
        Ok(TruncatedSeries { algebra: Arc::clone(&self.algebra), coeffs: out })
    }

    /// Treats the coefficients as a polynomial and evaluates it at `z = t`.
    pub fn evaluate(&self, t: &Scalar) -> Element {
        let mut acc = Element::zero(&self.algebra);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t).add(c).expect("same algebra");
        }
        acc
    }

    /// `c0 + c1 z + c2 z^2 + …`, zero terms omitted.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c} z"),
                _ => format!("{c} z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Applies `f` to every coefficient of a series over `f`'s domain.
pub fn map_coefficients(f: &LinearMap, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !f.domain().same_as(s.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let coeffs = s.coeffs().iter().map(|c| f.apply(c)).collect::<Result<_>>()?;
    TruncatedSeries::new(f.codomain(), coeffs)
}

/// `1 + a·z` at the given order.
pub fn one_plus_linear(a: &Element, order: usize) -> TruncatedSeries {
    let algebra = a.algebra();
    let mut s = TruncatedSeries::one(algebra, order);
    if order >= 1 {
        s.coeffs[1] = a.clone();
    }
    s
}

/// `log(1 + a z) = Σ_{k≥1} (−1)^{k+1} a^k z^k / k`.
pub fn log_one_plus_linear(a: &Element, order: usize) -> Result<TruncatedSeries> {
    let algebra = a.algebra();
    let mut coeffs = vec![Element::zero(algebra)];
    let mut power = Element::unit(algebra);
    for k in 1..=order {
        power = power.mul(a)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        coeffs.push(power.scale(&scalar::ratio(sign, k as i64)));
    }
    TruncatedSeries::new(algebra, coeffs)
}

impl TruncatedSeries {
    /// True when every coefficient above `degree` vanishes.
    pub fn is_polynomial_of_degree_at_most(&self, degree: usize) -> bool {
        self.coeffs.iter().skip(degree + 1).all(Element::is_zero)
    }

}
