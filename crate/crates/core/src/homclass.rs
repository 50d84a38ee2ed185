//! Deciding whether a linear map is an n-homomorphism or a p|q-homomorphism,
//! and rational (Padé) reconstruction of characteristic functions.
//!
//! Universally quantified conditions "for all a ∈ A" are decided exactly on
//! finite-dimensional algebras. Every condition tested here is a homogeneous
//! polynomial in the coordinates of `a` (ψ_k has degree k, a (q+1)-Hankel
//! determinant at base k has degree (q+1)(k+q)). A homogeneous polynomial of
//! degree D vanishes identically iff it vanishes on the lattice
//! `{Σ m_i e_i : m_i ≥ 0, Σ m_i = D}`, and one of lower degree e vanishes iff its
//! product with `(Σ x_i)^{D-e}` does, so a single lattice shell at the largest
//! degree decides all of them at once.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{self, Algebra, Element, LinearMap};
use crate::charfn::{char_function, character};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, Scalar};
use crate::series::TruncatedSeries;

/// Witness lists stop growing past this many entries.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    /// Exact: one lattice shell of integer points, see the module docs.
    BasisExhaustive,
    /// `samples` random rational elements drawn from a seeded generator.
    Randomized { samples: usize, seed: u64, require_certainty: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct HankelWitness {
    pub base_index: i64,
    pub size: usize,
    pub matrix: Vec<Vec<Element>>,
    pub determinant: Element,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Character { expected: i64, actual: Element },
    Psi { element: Element, k: usize, value: Element },
    Hankel { element: Element, hankel: HankelWitness },
}

#[derive(Clone, Debug, Serialize)]
pub struct HomTestReport {
    pub claim: String,
    pub verdict: Verdict,
    pub checked_bound: usize,
    pub strategy: Strategy,
    pub probes: usize,
    pub witnesses: Vec<Witness>,
}

impl HomTestReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Recomputes every witness against `f`; true iff each still fails exactly as recorded.
    pub fn replay(&self, f: &LinearMap) -> Result<bool> {
        for w in &self.witnesses {
            let reproduced = match w {
                Witness::Character { expected, actual } => {
                    let now = character(f)?.value;
                    now == *actual && now != Element::scalar(f.codomain(), scalar::int(*expected))
                }
                Witness::Psi { element, k, value } => {
                    let now = crate::charfn::psi(f, element, *k)?;
                    now == *value && !now.is_zero()
                }
                Witness::Hankel { element, hankel } => {
                    let order = (hankel.base_index + 2 * (hankel.size as i64 - 1)).max(0) as usize;
                    let series = char_function(f, element, order)?.series;
                    let now = hankel_witness(&series, hankel.base_index, hankel.size)?;
                    now.determinant == hankel.determinant && !now.determinant.is_zero()
                }
            };
            if !reproduced {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Enumeration cap, overridable through `FROBKIT_BUDGET`.
pub fn enumeration_budget() -> u128 {
    std::env::var("FROBKIT_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(1_000_000)
}

fn compositions(total: usize, parts: usize, out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>) {
    if current.len() + 1 == parts {
        current.push(total);
        out.push(current.clone());
        current.pop();
        return;
    }
    for first in (0..=total).rev() {
        current.push(first);
        compositions(total - first, parts, out, current);
        current.pop();
    }
}

/// `Σ m_i e_i` for every `m ∈ ℕ^dim` with `Σ m_i = total`.
pub fn lattice_shell(algebra: &Arc<Algebra>, total: usize) -> Result<Vec<Element>> {
    let d = algebra.dim();
    let count = scalar::binomial((total + d - 1) as u64, (d - 1) as u64);
    let cap = enumeration_budget();
    if count > cap {
        return Err(Error::BudgetExceeded { required: count, cap });
    }
    let mut tuples = Vec::with_capacity(count as usize);
    compositions(total, d, &mut tuples, &mut Vec::with_capacity(d));
    tuples
        .into_iter()
        .map(|m| Element::new(algebra, m.into_iter().map(|c| scalar::int(c as i64)).collect()))
        .collect()
}

/// Seeded random elements with small rational coordinates.
pub fn random_elements(algebra: &Arc<Algebra>, samples: usize, seed: u64) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let coords = (0..algebra.dim())
                .map(|_| scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
                .collect();
            Element::new(algebra, coords).expect("dimension matches")
        })
        .collect()
}

fn probe_points(algebra: &Arc<Algebra>, strategy: Strategy, degree: usize) -> Result<Vec<Element>> {
    match strategy {
        Strategy::BasisExhaustive => lattice_shell(algebra, degree),
        Strategy::Randomized { samples, seed, .. } => Ok(random_elements(algebra, samples, seed)),
    }
}

fn verdict_for(strategy: Strategy, witnesses: &[Witness]) -> Verdict {
    if !witnesses.is_empty() {
        return Verdict::Fail;
    }
    match strategy {
        Strategy::Randomized { require_certainty: true, .. } => Verdict::Inconclusive,
        _ => Verdict::Pass,
    }
}

fn character_witness(f: &LinearMap, expected: i64) -> Result<Option<Witness>> {
    let report = character(f)?;
    if report.integer == Some(expected) {
        Ok(None)
    } else {
        Ok(Some(Witness::Character { expected, actual: report.value }))
    }
}

/// Tests `f(1) = n·1` and `ψ_k(f, a) = 0` for `n < k ≤ bound`.
pub fn is_n_hom(f: &LinearMap, n: usize, bound: usize, strategy: Strategy) -> Result<HomTestReport> {
    if bound < n + 1 {
        return Err(Error::BoundTooSmall { bound, reason: format!("need at least n+1 = {}", n + 1) });
    }
    let mut witnesses: Vec<Witness> = character_witness(f, n as i64)?.into_iter().collect();
    let points = probe_points(f.domain(), strategy, bound)?;
    'points: for a in &points {
        let series = char_function(f, a, bound)?.series;
        for k in (n + 1)..=bound {
            let value = series.coeff(k);
            if !value.is_zero() {
                witnesses.push(Witness::Psi { element: a.clone(), k, value: value.clone() });
                if witnesses.len() >= MAX_WITNESSES {
                    break 'points;
                }
            }
        }
    }
    Ok(HomTestReport {
        claim: format!("{n}-homomorphism"),
        verdict: verdict_for(strategy, &witnesses),
        checked_bound: bound,
        strategy,
        probes: points.len(),
        witnesses,
    })
}

/// The `size × size` Hankel matrix `(ψ_{k+i+j})`, entries with negative index zero.
pub fn hankel_witness(series: &TruncatedSeries, base_index: i64, size: usize) -> Result<HankelWitness> {
    let algebra = series.algebra();
    let matrix: Vec<Vec<Element>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let idx = base_index + (i + j) as i64;
                    if idx < 0 {
                        Ok(Element::zero(algebra))
                    } else if idx as usize > series.order() {
                        Err(Error::BoundTooSmall {
                            bound: series.order(),
                            reason: format!("Hankel entry ψ_{idx} is beyond the series order"),
                        })
                    } else {
                        Ok(series.coeff(idx as usize).clone())
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let determinant = algebra::determinant(algebra, &matrix)?;
    Ok(HankelWitness { base_index, size, matrix, determinant })
}

/// Tests `f(1) = (p−q)·1` and the vanishing of every `(q+1)`-Hankel determinant
/// with base index `p−q+1 ≤ k ≤ bound−2q`.
pub fn is_pq_hom(f: &LinearMap, p: usize, q: usize, bound: usize, strategy: Strategy) -> Result<HomTestReport> {
    if bound < p + q + 2 {
        return Err(Error::BoundTooSmall { bound, reason: format!("need at least p+q+2 = {}", p + q + 2) });
    }
    let k_min = p as i64 - q as i64 + 1;
    let k_max = bound as i64 - 2 * q as i64;
    let mut witnesses: Vec<Witness> = character_witness(f, p as i64 - q as i64)?.into_iter().collect();
    let degree = (q + 1) * (k_max + q as i64) as usize;
    let points = probe_points(f.domain(), strategy, degree)?;
    'points: for a in &points {
        let series = char_function(f, a, bound)?.series;
        for k in k_min..=k_max {
            let hankel = hankel_witness(&series, k, q + 1)?;
            if !hankel.determinant.is_zero() {
                witnesses.push(Witness::Hankel { element: a.clone(), hankel });
                if witnesses.len() >= MAX_WITNESSES {
                    break 'points;
                }
            }
        }
    }
    Ok(HomTestReport {
        claim: format!("{p}|{q}-homomorphism"),
        verdict: verdict_for(strategy, &witnesses),
        checked_bound: bound,
        strategy,
        probes: points.len(),
        witnesses,
    })
}

/// `P/Q` with `Q(0) = 1`, coefficients in a split algebra (componentwise rational functions).
#[derive(Clone, Debug, Serialize)]
pub struct RationalForm {
    pub numerator: Vec<Element>,
    pub denominator: Vec<Element>,
    pub certified_through: usize,
}

impl RationalForm {
    /// `P(t)/Q(t)` componentwise, `None` at a pole of any component.
    pub fn evaluate(&self, t: &Scalar) -> Option<Element> {
        let algebra = self.numerator[0].algebra();
        let p = horner(&self.numerator, t);
        let q = horner(&self.denominator, t);
        let coords = p
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| if num_traits::Zero::is_zero(b) { None } else { Some(a / b) })
            .collect::<Option<Vec<_>>>()?;
        Element::new(algebra, coords).ok()
    }

    /// Taylor expansion of `P/Q` to the given order.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let algebra = self.numerator[0].algebra();
        let p = TruncatedSeries::from_polynomial(algebra, &self.numerator, order)?;
        let q = TruncatedSeries::from_polynomial(algebra, &self.denominator, order)?;
        p.mul(&q.invert()?)
    }
}

fn horner(poly: &[Element], t: &Scalar) -> Element {
    let mut acc = Element::zero(poly[0].algebra());
    for c in poly.iter().rev() {
        acc = acc.scale(t).add(c).expect("same algebra");
    }
    acc
}

/// Coordinate `index` of every coefficient, as a series over ℚ.
pub fn component_series(series: &TruncatedSeries, index: usize) -> TruncatedSeries {
    let g = algebra::ground_field();
    let coeffs = series
        .coeffs()
        .iter()
        .map(|c| Element::scalar(&g, c.coords()[index].clone()))
        .collect();
    TruncatedSeries::new(&g, coeffs).expect("nonempty")
}

struct ScalarForm {
    numerator: Vec<Scalar>,
    denominator: Vec<Scalar>,
}

fn reconstruct_scalar(s: &[Scalar], p: usize, q: usize) -> Result<ScalarForm> {
    let at = |i: i64| if i < 0 { Scalar::from_integer(0.into()) } else { s[i as usize].clone() };
    // Σ_{j=1}^{q} Q_j s_{m-j} = −s_m for m = p+1..p+q
    let rows: Vec<Vec<Scalar>> = (p + 1..=p + q)
        .map(|m| (1..=q).map(|j| at(m as i64 - j as i64)).collect())
        .collect();
    let rhs: Vec<Scalar> = (p + 1..=p + q).map(|m| -at(m as i64)).collect();
    let tail = if q == 0 { Vec::new() } else { linalg::solve(&rows, &rhs).ok_or(Error::NotRationalSeries { p, q })? };
    let mut denominator = vec![scalar::one()];
    denominator.extend(tail);
    let conv = |m: usize| -> Scalar {
        (0..=q.min(m)).fold(scalar::zero(), |acc, j| acc + &denominator[j] * &s[m - j])
    };
    let numerator: Vec<Scalar> = (0..=p).map(|m| if m < s.len() { conv(m) } else { scalar::zero() }).collect();
    for m in (p + 1)..s.len() {
        if !num_traits::Zero::is_zero(&conv(m)) {
            return Err(Error::TailInconsistent { index: m });
        }
    }
    Ok(ScalarForm { numerator, denominator })
}

/// Padé reconstruction of bidegree `(p, q)`, verified against every available coefficient.
pub fn reconstruct_rational(s: &TruncatedSeries, p: usize, q: usize) -> Result<RationalForm> {
    let algebra = s.algebra();
    if !algebra.is_split() {
        return Err(Error::NotSplit);
    }
    if s.order() < p + q {
        return Err(Error::BoundTooSmall {
            bound: s.order(),
            reason: format!("bidegree ({p}, {q}) needs order at least {}", p + q),
        });
    }
    let mut forms = Vec::with_capacity(algebra.dim());
    for c in 0..algebra.dim() {
        let values: Vec<Scalar> = s.coeffs().iter().map(|e| e.coords()[c].clone()).collect();
        forms.push(reconstruct_scalar(&values, p, q)?);
    }
    let assemble = |len: usize, pick: &dyn Fn(&ScalarForm, usize) -> Scalar| -> Result<Vec<Element>> {
        (0..len)
            .map(|k| Element::new(algebra, forms.iter().map(|f| pick(f, k)).collect()))
            .collect()
    };
    Ok(RationalForm {
        numerator: assemble(p + 1, &|f, k| f.numerator[k].clone())?,
        denominator: assemble(q + 1, &|f, k| f.denominator[k].clone())?,
        certified_through: s.order(),
    })
}

/// Smallest `(p, q)` (by `p+q`, then smaller `q`) whose reconstruction matches the
/// whole series. Pairs with `p+q` above the series order are not determined by
/// the data and are skipped.
pub fn detect_degrees(s: &TruncatedSeries, max_p: usize, max_q: usize) -> Option<(usize, usize)> {
    for total in 0..=(max_p + max_q).min(s.order()) {
        for q in 0..=total.min(max_q) {
            let p = total - q;
            if p > max_p {
                continue;
            }
            if let Ok(form) = reconstruct_rational(s, p, q) {
                if form.certified_through == s.order() {
                    return Some((p, q));
                }
            }
        }
    }
    None
}
