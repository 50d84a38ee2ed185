//! Finite-dimensional commutative unital algebras over ℚ given by structure
//! constants, their elements, and linear maps between them.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, Scalar};

/// An algebra with basis `e_0..e_{dim-1}` and products
/// `e_i·e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug)]
pub struct Algebra {
    labels: Vec<String>,
    unit: Vec<Scalar>,
    structure: Vec<Vec<Vec<Scalar>>>,
    // nonzero entries of c[i][j][·]
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    split: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    Commutativity { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
    Unit { j: usize, k: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Algebra {
    /// Builds an algebra after checking shapes only; see [`Algebra::check_axioms`].
    pub fn new(
        labels: Vec<String>,
        unit: Vec<Scalar>,
        structure: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Arc<Algebra>> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::ShapeMismatch(format!("unit has length {}, expected {dim}", unit.len())));
        }
        let shape_ok = structure.len() == dim
            && structure
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|c| c.len() == dim));
        if !shape_ok {
            return Err(Error::ShapeMismatch(format!("structure constants must be {dim}×{dim}×{dim}")));
        }
        let table = structure
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        c.iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(k, v)| (k, v.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let split = unit.iter().all(One::is_one)
            && (0..dim).all(|i| {
                (0..dim).all(|j| {
                    (0..dim).all(|k| {
                        let expected = i == j && j == k;
                        structure[i][j][k] == if expected { Scalar::one() } else { Scalar::zero() }
                    })
                })
            });
        Ok(Arc::new(Algebra { labels, unit, structure, table, split }))
    }

    /// Like [`Algebra::new`], but rejects algebras violating any axiom.
    pub fn new_checked(
        labels: Vec<String>,
        unit: Vec<Scalar>,
        structure: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Arc<Algebra>> {
        let algebra = Algebra::new(labels, unit, structure)?;
        let report = algebra.check_axioms();
        if let Some(first) = report.violations.first() {
            return Err(Error::InvalidAlgebra(format!(
                "{} axiom violation(s), first: {first:?}",
                report.violations.len()
            )));
        }
        Ok(algebra)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure(&self) -> &[Vec<Vec<Scalar>>] {
        &self.structure
    }

    /// True for ℚ^X with its idempotent basis (the ground field is the one-point case).
    pub fn is_split(&self) -> bool {
        self.split
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Same structure constants and unit; labels are ignored.
    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.unit == other.unit && self.structure == other.structure)
    }

    fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = scalar::mul(ai, bj);
                for (k, c) in &self.table[i][j] {
                    out[*k] = scalar::add(&out[*k], &scalar::mul(&ab, c));
                }
            }
        }
        out
    }

    fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Lists every index tuple violating commutativity, associativity or the unit law.
    pub fn check_axioms(&self) -> AxiomReport {
        let d = self.dim();
        let c = &self.structure;
        let mut violations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if c[i][j][k] != c[j][i][k] {
                        violations.push(AxiomViolation::Commutativity { i, j, k });
                    }
                }
            }
        }
        let products: Vec<Vec<Vec<Scalar>>> = (0..d)
            .map(|i| (0..d).map(|j| self.mul_coords(&self.basis_coords(i), &self.basis_coords(j))).collect())
            .collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul_coords(&products[i][j], &self.basis_coords(k));
                    let right = self.mul_coords(&self.basis_coords(i), &products[j][k]);
                    for l in 0..d {
                        if left[l] != right[l] {
                            violations.push(AxiomViolation::Associativity { i, j, k, l });
                        }
                    }
                }
            }
        }
        for j in 0..d {
            let product = self.mul_coords(&self.unit, &self.basis_coords(j));
            for (k, v) in product.iter().enumerate() {
                let expected = if k == j { Scalar::one() } else { Scalar::zero() };
                if *v != expected {
                    violations.push(AxiomViolation::Unit { j, k });
                }
            }
        }
        AxiomReport { violations }
    }
}

/// ℚ^X: pointwise functions on a finite set, with the indicator basis.
pub fn function_algebra<S: AsRef<str>>(labels: &[S]) -> Result<Arc<Algebra>> {
    if labels.is_empty() {
        return Err(Error::EmptyLabels);
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_ref()) {
            return Err(Error::DuplicateLabel(l.as_ref().to_string()));
        }
    }
    let d = labels.len();
    let structure = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| if i == j && j == k { Scalar::one() } else { Scalar::zero() })
                        .collect()
                })
                .collect()
        })
        .collect();
    Algebra::new(
        labels.iter().map(|l| l.as_ref().to_string()).collect(),
        vec![Scalar::one(); d],
        structure,
    )
}

/// ℚ as a one-dimensional algebra.
pub fn ground_field() -> Arc<Algebra> {
    function_algebra(&["1"]).expect("one label")
}

/// ℚ[t]/(t^m) with basis `1, t, …, t^{m-1}`; the simplest non-reduced algebras.
pub fn truncated_polynomial_algebra(m: usize) -> Result<Arc<Algebra>> {
    if m == 0 {
        return Err(Error::InvalidAlgebra("dimension must be positive".into()));
    }
    let labels = (0..m).map(|i| format!("t^{i}")).collect();
    let mut unit = vec![Scalar::zero(); m];
    unit[0] = Scalar::one();
    let structure = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|k| if i + j == k { Scalar::one() } else { Scalar::zero() }).collect())
                .collect()
        })
        .collect();
    Algebra::new(labels, unit, structure)
}

/// Position of a tuple of basis indices in the row-major basis of `A^{⊗n}`.
pub fn tensor_index(tuple: &[usize], base_dim: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * base_dim + t)
}

/// Inverse of [`tensor_index`].
pub fn tensor_tuple(mut index: usize, base_dim: usize, n: usize) -> Vec<usize> {
    let mut tuple = vec![0; n];
    for slot in (0..n).rev() {
        tuple[slot] = index % base_dim;
        index /= base_dim;
    }
    tuple
}

/// `A⊗…⊗A` (n factors) with factorwise structure constants.
pub fn tensor_power(base: &Arc<Algebra>, n: usize) -> Result<Arc<Algebra>> {
    if n == 0 {
        return Err(Error::Input("tensor power needs n ≥ 1".into()));
    }
    let d = base.dim();
    let big = d
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Input("tensor power dimension overflows".into()))?;
    let tuples: Vec<Vec<usize>> = (0..big).map(|t| tensor_tuple(t, d, n)).collect();
    let labels = tuples
        .iter()
        .map(|t| t.iter().map(|&i| base.labels[i].as_str()).collect::<Vec<_>>().join("⊗"))
        .collect();
    let unit = tuples
        .iter()
        .map(|t| t.iter().fold(Scalar::one(), |acc, &i| acc * &base.unit[i]))
        .collect();
    let mut structure = vec![vec![vec![Scalar::zero(); big]; big]; big];
    for (ti, left) in tuples.iter().enumerate() {
        for (tj, right) in tuples.iter().enumerate() {
            // expand the product of the sparse factor tables
            let mut partial: Vec<(usize, Scalar)> = vec![(0, Scalar::one())];
            for slot in 0..n {
                let factor = &base.table[left[slot]][right[slot]];
                let mut next = Vec::with_capacity(partial.len() * factor.len());
                for (idx, coeff) in &partial {
                    for (k, c) in factor {
                        next.push((idx * d + k, coeff * c));
                    }
                }
                partial = next;
            }
            for (k, c) in partial {
                structure[ti][tj][k] += c;
            }
        }
    }
    Algebra::new(labels, unit, structure)
}

/// `A⊗B` with basis `e_i⊗f_j` at position `i·dim(B) + j`.
pub fn tensor_product(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut labels = Vec::with_capacity(dim);
    let mut unit = Vec::with_capacity(dim);
    for i in 0..da {
        for j in 0..db {
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            unit.push(&a.unit[i] * &b.unit[j]);
        }
    }
    let mut structure = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    for i1 in 0..da {
        for i2 in 0..da {
            for j1 in 0..db {
                for j2 in 0..db {
                    let out = &mut structure[i1 * db + j1][i2 * db + j2];
                    for (ka, ca) in &a.table[i1][i2] {
                        for (kb, cb) in &b.table[j1][j2] {
                            out[ka * db + kb] += ca * cb;
                        }
                    }
                }
            }
        }
    }
    Algebra::new(labels, unit, structure)
}

/// Determinant of a square matrix with entries in a commutative algebra.
///
/// Expands over permutations row by row, memoising partial sums by the set of
/// columns used so far (`k·2^k` products instead of `k!`).
pub fn determinant(algebra: &Arc<Algebra>, matrix: &[Vec<Element>]) -> Result<Element> {
    let k = matrix.len();
    if k == 0 {
        return Ok(Element::unit(algebra));
    }
    if matrix.iter().any(|r| r.len() != k) {
        return Err(Error::ShapeMismatch("determinant needs a square matrix".into()));
    }
    if k > 20 {
        return Err(Error::ShapeMismatch("determinant size too large".into()));
    }
    if algebra.is_split() {
        // componentwise over ℚ
        let coords = (0..algebra.dim())
            .map(|c| {
                let rows: Vec<Vec<Scalar>> =
                    matrix.iter().map(|r| r.iter().map(|e| e.coords[c].clone()).collect()).collect();
                crate::linalg::determinant(&rows)
            })
            .collect();
        return Element::new(algebra, coords);
    }
    expansion_determinant(algebra, matrix)
}

fn expansion_determinant(algebra: &Arc<Algebra>, matrix: &[Vec<Element>]) -> Result<Element> {
    let k = matrix.len();
    let mut layer: Vec<Option<Element>> = vec![None; 1 << k];
    layer[0] = Some(Element::unit(algebra));
    for row in matrix.iter() {
        let mut next: Vec<Option<Element>> = vec![None; 1 << k];
        for (mask, partial) in layer.iter().enumerate() {
            let Some(partial) = partial else { continue };
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let mut term = partial.mul(entry)?;
                if inversions % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut next[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    Some(acc) => acc.add(&term)?,
                    None => term,
                });
            }
        }
        layer = next;
    }
    Ok(layer[(1 << k) - 1].take().unwrap_or_else(|| Element::zero(algebra)))
}

#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<Algebra>,
    coords: Vec<Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coords == other.coords
    }
}

impl Eq for Element {}

impl Element {
    pub fn new(algebra: &Arc<Algebra>, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != algebra.dim() {
            return Err(Error::ShapeMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(Element { algebra: Arc::clone(algebra), coords })
    }

    pub fn from_ints(algebra: &Arc<Algebra>, coords: &[i64]) -> Result<Element> {
        Element::new(algebra, coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Element {
        Element { algebra: Arc::clone(algebra), coords: vec![Scalar::zero(); algebra.dim()] }
    }

    pub fn unit(algebra: &Arc<Algebra>) -> Element {
        Element { algebra: Arc::clone(algebra), coords: algebra.unit.clone() }
    }

    pub fn basis(algebra: &Arc<Algebra>, i: usize) -> Element {
        Element { algebra: Arc::clone(algebra), coords: algebra.basis_coords(i) }
    }

    pub fn scalar(algebra: &Arc<Algebra>, value: Scalar) -> Element {
        Element::unit(algebra).scale(&value)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.coords)
    }

    pub fn is_unit(&self) -> bool {
        self.coords == self.algebra.unit
    }

    fn same_algebra(&self, other: &Element) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| scalar::add(a, b)).collect();
        Ok(Element { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| scalar::sub(a, b)).collect();
        Ok(Element { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn neg(&self) -> Element {
        Element { algebra: Arc::clone(&self.algebra), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, factor: &Scalar) -> Element {
        let coords = self.coords.iter().map(|a| scalar::mul(a, factor)).collect();
        Element { algebra: Arc::clone(&self.algebra), coords }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element { algebra: Arc::clone(&self.algebra), coords: self.algebra.mul_coords(&self.coords, &other.coords) })
    }

    /// `a^k`, with `a^0` the unit.
    pub fn power(&self, k: usize) -> Element {
        let mut result = Element::unit(&self.algebra);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same algebra");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same algebra");
            }
        }
        result
    }

    /// Matrix of `x ↦ a·x`; column j is `a·e_j`.
    pub fn multiplication_operator(&self) -> Vec<Vec<Scalar>> {
        let d = self.algebra.dim();
        let columns: Vec<Vec<Scalar>> = (0..d)
            .map(|j| self.algebra.mul_coords(&self.coords, &self.algebra.basis_coords(j)))
            .collect();
        (0..d).map(|i| (0..d).map(|j| columns[j][i].clone()).collect()).collect()
    }

    pub fn invert(&self) -> Result<Element> {
        let op = self.multiplication_operator();
        let x = linalg::solve(&op, &self.algebra.unit).ok_or(Error::NotInvertible)?;
        Ok(Element { algebra: Arc::clone(&self.algebra), coords: x })
    }

    /// `Some(c)` when the element is `c·1`.
    pub fn as_scalar_multiple_of_unit(&self) -> Option<Scalar> {
        let (pivot, u) = self.algebra.unit.iter().enumerate().find(|(_, u)| !u.is_zero())?;
        let c = &self.coords[pivot] / u;
        let candidate = Element::unit(&self.algebra).scale(&c);
        (candidate.coords == self.coords).then_some(c)
    }

    /// True when some power up to `dim+1` vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.power(self.algebra.dim() + 1).is_zero()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.algebra.dim() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let parts: Vec<String> = self.coords.iter().map(scalar::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<String> = self.coords.iter().map(scalar::format).collect();
        coords.serialize(serializer)
    }
}

/// A ℚ-linear map between algebras; `matrix` is `dim(codomain) × dim(domain)`.
#[derive(Clone, Debug)]
pub struct LinearMap {
    domain: Arc<Algebra>,
    codomain: Arc<Algebra>,
    matrix: Vec<Vec<Scalar>>,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain.same_as(&other.domain)
            && self.codomain.same_as(&other.codomain)
            && self.matrix == other.matrix
    }
}

impl Eq for LinearMap {}

impl LinearMap {
    pub fn new(domain: &Arc<Algebra>, codomain: &Arc<Algebra>, matrix: Vec<Vec<Scalar>>) -> Result<LinearMap> {
        let ok = matrix.len() == codomain.dim() && matrix.iter().all(|r| r.len() == domain.dim());
        if !ok {
            return Err(Error::ShapeMismatch(format!(
                "map matrix must be {}×{}",
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(LinearMap { domain: Arc::clone(domain), codomain: Arc::clone(codomain), matrix })
    }

    pub fn zero(domain: &Arc<Algebra>, codomain: &Arc<Algebra>) -> LinearMap {
        let matrix = vec![vec![Scalar::zero(); domain.dim()]; codomain.dim()];
        LinearMap { domain: Arc::clone(domain), codomain: Arc::clone(codomain), matrix }
    }

    pub fn identity(algebra: &Arc<Algebra>) -> LinearMap {
        let d = algebra.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        LinearMap { domain: Arc::clone(algebra), codomain: Arc::clone(algebra), matrix }
    }

    pub fn domain(&self) -> &Arc<Algebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Algebra> {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !self.domain.same_as(a.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Element::new(&self.codomain, linalg::mat_vec(&self.matrix, a.coords()))
    }

    fn same_shape(&self, other: &LinearMap) -> Result<()> {
        if self.domain.same_as(&other.domain) && self.codomain.same_as(&other.codomain) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("maps have different domain or codomain".into()))
        }
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.same_shape(other)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(LinearMap { matrix, ..self.clone() })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, factor: &Scalar) -> LinearMap {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x * factor).collect()).collect();
        LinearMap { matrix, ..self.clone() }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &LinearMap) -> Result<LinearMap> {
        if !inner.codomain.same_as(&self.domain) {
            return Err(Error::AlgebraMismatch);
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..inner.domain.dim())
                    .map(|j| {
                        row.iter()
                            .zip(&inner.matrix)
                            .fold(Scalar::zero(), |acc, (a, r)| acc + a * &r[j])
                    })
                    .collect()
            })
            .collect();
        LinearMap::new(&inner.domain, &self.codomain, matrix)
    }
}

impl Serialize for LinearMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.matrix.iter().map(|r| r.iter().map(scalar::format).collect()).collect();
        rows.serialize(serializer)
    }
}

/// Point evaluation `ℚ^X → ℚ` at the point labelled `point`.
pub fn evaluation_hom(algebra: &Arc<Algebra>, point: &str) -> Result<LinearMap> {
    if !algebra.is_split() {
        return Err(Error::Input("evaluation maps need a function algebra".into()));
    }
    let x = algebra.index_of(point).ok_or_else(|| Error::UnknownPoint(point.to_string()))?;
    let row = (0..algebra.dim())
        .map(|j| if j == x { Scalar::one() } else { Scalar::zero() })
        .collect();
    LinearMap::new(algebra, &ground_field(), vec![row])
}

/// `Σ coeffs[α]·maps[α]`.
pub fn integer_combination(maps: &[LinearMap], coeffs: &[i64]) -> Result<LinearMap> {
    if maps.len() != coeffs.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} maps but {} coefficients",
            maps.len(),
            coeffs.len()
        )));
    }
    let first = maps.first().ok_or_else(|| Error::ShapeMismatch("no maps to combine".into()))?;
    let mut total = LinearMap::zero(&first.domain, &first.codomain);
    for (m, &c) in maps.iter().zip(coeffs) {
        total = total.add(&m.scale(&scalar::int(c)))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn xy() -> Arc<Algebra> {
        function_algebra(&["x", "y"]).unwrap()
    }

    #[test]
    fn function_algebra_axioms() {
        assert!(xy().check_axioms().is_valid());
        assert!(ground_field().check_axioms().is_valid());
        assert!(truncated_polynomial_algebra(3).unwrap().check_axioms().is_valid());
        assert_eq!(ground_field().dim(), 1);
        assert!(matches!(function_algebra::<&str>(&[]), Err(Error::EmptyLabels)));
        assert!(matches!(function_algebra(&["x", "x"]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn broken_commutativity_is_reported() {
        let a = xy();
        let mut c = a.structure().to_vec();
        c[0][1][0] = int(1);
        let bad = Algebra::new(a.labels().to_vec(), a.unit_coords().to_vec(), c).unwrap();
        let report = bad.check_axioms();
        assert!(report.violations.contains(&AxiomViolation::Commutativity { i: 0, j: 1, k: 0 }));
        assert!(Algebra::new_checked(a.labels().to_vec(), a.unit_coords().to_vec(), bad.structure().to_vec()).is_err());
    }

    #[test]
    fn broken_unit_is_reported() {
        let a = xy();
        let bad = Algebra::new(a.labels().to_vec(), vec![int(1), int(0)], a.structure().to_vec()).unwrap();
        assert!(bad.check_axioms().violations.contains(&AxiomViolation::Unit { j: 1, k: 1 }));
    }

    #[test]
    fn pointwise_arithmetic() {
        let a = xy();
        let u = Element::from_ints(&a, &[2, 3]).unwrap();
        let v = Element::from_ints(&a, &[5, 7]).unwrap();
        assert_eq!(u.mul(&v).unwrap(), Element::from_ints(&a, &[10, 21]).unwrap());
        assert_eq!(Element::unit(&a).mul(&u).unwrap(), u);
        assert!(Element::basis(&a, 0).mul(&Element::basis(&a, 1)).unwrap().is_zero());
        assert_eq!(u.power(3), Element::from_ints(&a, &[8, 27]).unwrap());
        assert_eq!(u.power(0), Element::unit(&a));
        assert_eq!(u.power(1), u);
        assert_eq!(u.invert().unwrap(), Element::new(&a, vec![ratio(1, 2), ratio(1, 3)]).unwrap());
        assert_eq!(Element::unit(&a).invert().unwrap(), Element::unit(&a));
        let singular = Element::from_ints(&a, &[0, 3]).unwrap();
        assert_eq!(singular.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn mismatched_algebras() {
        let u = Element::unit(&xy());
        let w = Element::unit(&ground_field());
        assert_eq!(u.mul(&w), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn evaluation_and_combinations() {
        let a = xy();
        let ex = evaluation_hom(&a, "x").unwrap();
        let ey = evaluation_hom(&a, "y").unwrap();
        let u = Element::from_ints(&a, &[2, 3]).unwrap();
        assert_eq!(ex.apply(&u).unwrap().coords()[0], int(2));
        assert_eq!(ex.apply(&Element::unit(&a)).unwrap().coords()[0], int(1));
        assert!(matches!(evaluation_hom(&a, "w"), Err(Error::UnknownPoint(_))));
        let sum = integer_combination(&[ex.clone(), ey.clone()], &[1, 1]).unwrap();
        assert_eq!(sum.matrix(), &[vec![int(1), int(1)]]);
        let diff = integer_combination(&[ex.clone(), ey.clone()], &[1, -1]).unwrap();
        assert_eq!(diff.matrix(), &[vec![int(1), int(-1)]]);
        let zero = integer_combination(std::slice::from_ref(&ex), &[0]).unwrap();
        assert_eq!(zero, LinearMap::zero(&a, &ground_field()));
        assert!(integer_combination(&[ex, ey], &[1]).is_err());
        let other = evaluation_hom(&function_algebra(&["p", "q", "r"]).unwrap(), "p").unwrap();
        assert!(integer_combination(&[sum, other], &[1, 1]).is_err());
    }

    #[test]
    fn tensor_powers() {
        let a = xy();
        let t1 = tensor_power(&a, 1).unwrap();
        assert!(t1.same_as(&a));
        let t2 = tensor_power(&a, 2).unwrap();
        assert_eq!(t2.dim(), 4);
        assert!(t2.is_split());
        assert_eq!(t2.labels()[1], "x⊗y");
        let three = function_algebra(&["p", "q", "r"]).unwrap();
        assert_eq!(tensor_power(&three, 2).unwrap().dim(), 9);
        let nil = truncated_polynomial_algebra(2).unwrap();
        let t = tensor_power(&nil, 3).unwrap();
        assert!(t.check_axioms().is_valid());
        assert!(!t.is_split());
    }

    #[test]
    fn unipotent_detection() {
        let a = truncated_polynomial_algebra(3).unwrap();
        assert!(Element::from_ints(&a, &[0, 1, 5]).unwrap().is_nilpotent());
        assert!(!Element::from_ints(&a, &[1, 1, 0]).unwrap().is_nilpotent());
        assert_eq!(
            Element::from_ints(&a, &[4, 0, 0]).unwrap().as_scalar_multiple_of_unit(),
            Some(int(4))
        );
        assert_eq!(Element::from_ints(&a, &[4, 1, 0]).unwrap().as_scalar_multiple_of_unit(), None);
    }

    #[test]
    fn algebra_determinant_matches_bareiss() {
        let q = ground_field();
        let rows = [[2, 1, 0], [7, 4, -1], [3, 3, 5]];
        let m: Vec<Vec<Element>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Element::from_ints(&q, &[v]).unwrap()).collect())
            .collect();
        let scalars: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        assert_eq!(determinant(&q, &m).unwrap().coords()[0], linalg::determinant(&scalars));
        assert_eq!(expansion_determinant(&q, &m).unwrap().coords()[0], linalg::determinant(&scalars));
    }

    #[test]
    fn split_and_expansion_determinants_agree() {
        let a = function_algebra(&["x", "y"]).unwrap();
        let entries = [[[1, 2], [0, -3], [4, 1]], [[2, 2], [5, 1], [-1, 0]], [[3, -2], [1, 1], [0, 7]]];
        let m: Vec<Vec<Element>> = entries
            .iter()
            .map(|r| r.iter().map(|v| Element::from_ints(&a, v).unwrap()).collect())
            .collect();
        assert_eq!(determinant(&a, &m).unwrap(), expansion_determinant(&a, &m).unwrap());
    }

    fn element_of(a: &Arc<Algebra>) -> impl Strategy<Value = Element> {
        let a = Arc::clone(a);
        proptest::collection::vec((-6i64..7, 1i64..4), a.dim())
            .prop_map(move |v| Element::new(&a, v.into_iter().map(|(n, d)| ratio(n, d)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws_in_truncated_polynomial_algebra(
            (a, b, c) in {
                let alg = truncated_polynomial_algebra(4).unwrap();
                (element_of(&alg), element_of(&alg), element_of(&alg))
            }
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn inverse_is_exact(a in element_of(&function_algebra(&["x", "y", "w"]).unwrap())) {
            match a.invert() {
                Ok(inv) => prop_assert!(a.mul(&inv).unwrap().is_unit()),
                Err(e) => {
                    prop_assert_eq!(e, Error::NotInvertible);
                    prop_assert!(a.coords().iter().any(Zero::is_zero));
                }
            }
        }
    }
    #[test]
    fn tensor_product_of_points_and_dual_numbers() {
        let x = function_algebra(&["x", "y"]).unwrap();
        let d = truncated_polynomial_algebra(2).unwrap();
        let p = tensor_product(&x, &d).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(p.check_axioms().is_valid());
        let eps = Element::basis(&p, 1);
        assert!(eps.mul(&eps).unwrap().is_zero());
        assert!(Element::unit(&p).is_unit());
        assert!(tensor_product(&x, &ground_field()).unwrap().same_as(&x));
    }

}
