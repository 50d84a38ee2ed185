//! The symmetric power `S^n(A)` as the subalgebra of symmetric tensors in
//! `A^{⊗n}`, and the correspondence between n-homomorphisms `A → B` and algebra
//! homomorphisms `S^n(A) → B`.
//!
//! Basis convention: the multiset `M = {i_1, …, i_n}` stands for the orbit
//! average of `e_{i_1}⊗…⊗e_{i_n}` (each distinct arrangement with weight
//! `1/|orbit|`). With it the embedding is unital and `F(M) = (1/n!)·Φ_n(e_{i_1}, …, e_{i_n})`
//! is literally `F` applied to that symmetric tensor.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{tensor_power, tensor_tuple, Algebra, Element, LinearMap};
use crate::charfn::char_function;
use crate::error::{Error, Result};
use crate::frobenius::{Frobenius, MemoMode};
use crate::homclass::{is_n_hom, lattice_shell, Strategy};
use crate::linalg;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug)]
pub struct SymPowerAlgebra {
    pub base: Arc<Algebra>,
    pub n: usize,
    pub algebra: Arc<Algebra>,
    pub tensor: Arc<Algebra>,
    /// Sorted index multisets, in basis order.
    pub multisets: Vec<Vec<usize>>,
    /// `S^n(A) → A^{⊗n}`.
    pub embedding: LinearMap,
}

impl SymPowerAlgebra {
    pub fn dim(&self) -> usize {
        self.multisets.len()
    }

    /// Coordinates in `S^n(A)` of a symmetric tensor.
    pub fn preimage(&self, tensor: &Element) -> Result<Element> {
        if !tensor.algebra().same_as(&self.tensor) {
            return Err(Error::AlgebraMismatch);
        }
        let x = linalg::solve(self.embedding.matrix(), tensor.coords()).ok_or(Error::OutsideEmbedding)?;
        Element::new(&self.algebra, x)
    }

    /// `1⊗…⊗a⊗…⊗1` with `a` in slot `slot`.
    pub fn slot_element(&self, a: &Element, slot: usize) -> Result<Element> {
        if !a.algebra().same_as(&self.base) {
            return Err(Error::AlgebraMismatch);
        }
        let d = self.base.dim();
        let unit = self.base.unit_coords();
        let coords = (0..self.tensor.dim())
            .map(|t| {
                let tuple = tensor_tuple(t, d, self.n);
                tuple.iter().enumerate().fold(scalar::one(), |acc, (s, &i)| {
                    if s == slot {
                        acc * &a.coords()[i]
                    } else {
                        acc * &unit[i]
                    }
                })
            })
            .collect();
        Element::new(&self.tensor, coords)
    }

    /// `a⊗…⊗a` as an element of `S^n(A)`.
    pub fn diagonal_power(&self, a: &Element) -> Result<Element> {
        let mut t = Element::unit(&self.tensor);
        for slot in 0..self.n {
            t = t.mul(&self.slot_element(a, slot)?)?;
        }
        self.preimage(&t)
    }
}

fn multiset_label(base: &Algebra, m: &[usize]) -> String {
    let names: Vec<&str> = m.iter().map(|&i| base.labels()[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

pub fn sym_power_algebra(base: &Arc<Algebra>, n: usize) -> Result<SymPowerAlgebra> {
    let tensor = tensor_power(base, n)?;
    let d = base.dim();
    let mut orbits: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for t in 0..tensor.dim() {
        let mut key = tensor_tuple(t, d, n);
        key.sort_unstable();
        orbits.entry(key).or_default().push(t);
    }
    let multisets: Vec<Vec<usize>> = orbits.keys().cloned().collect();
    let sym_dim = multisets.len();
    let mut matrix = vec![vec![Scalar::zero(); sym_dim]; tensor.dim()];
    for (col, members) in orbits.values().enumerate() {
        let weight = scalar::ratio(1, members.len() as i64);
        for &t in members {
            matrix[t][col] = weight.clone();
        }
    }
    // provisional algebra so the embedding can be built; structure filled below
    let labels: Vec<String> = multisets.iter().map(|m| multiset_label(base, m)).collect();
    let zero_structure = vec![vec![vec![Scalar::zero(); sym_dim]; sym_dim]; sym_dim];
    let scaffold = Algebra::new(labels.clone(), vec![Scalar::zero(); sym_dim], zero_structure)?;
    let scaffold_embedding = LinearMap::new(&scaffold, &tensor, matrix.clone())?;
    let scaffold_power = SymPowerAlgebra {
        base: Arc::clone(base),
        n,
        algebra: Arc::clone(&scaffold),
        tensor: Arc::clone(&tensor),
        multisets: multisets.clone(),
        embedding: scaffold_embedding,
    };
    let embedded: Vec<Element> =
        (0..sym_dim).map(|j| scaffold_power.embedding.apply(&Element::basis(&scaffold, j))).collect::<Result<_>>()?;
    let mut structure = vec![vec![Vec::new(); sym_dim]; sym_dim];
    for i in 0..sym_dim {
        for j in i..sym_dim {
            let product = scaffold_power.preimage(&embedded[i].mul(&embedded[j])?)?.into_coords();
            structure[i][j] = product.clone();
            structure[j][i] = product;
        }
    }
    let unit = scaffold_power.preimage(&Element::unit(&tensor))?.into_coords();
    let algebra = Algebra::new(labels, unit, structure)?;
    let embedding = LinearMap::new(&algebra, &tensor, matrix)?;
    let power = SymPowerAlgebra { base: Arc::clone(base), n, algebra, tensor, multisets, embedding };
    validate(&power)?;
    Ok(power)
}

fn validate(power: &SymPowerAlgebra) -> Result<()> {
    let report = power.algebra.check_axioms();
    if !report.is_valid() {
        return Err(Error::InvalidAlgebra(format!("symmetric power fails {} axiom checks", report.violations.len())));
    }
    let basis: Vec<Element> = (0..power.dim()).map(|i| Element::basis(&power.algebra, i)).collect();
    let images: Vec<Element> = basis.iter().map(|b| power.embedding.apply(b)).collect::<Result<_>>()?;
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = power.embedding.apply(&basis[i].mul(&basis[j])?)?;
            if lhs != images[i].mul(&images[j])? {
                return Err(Error::InvalidAlgebra(format!("embedding not multiplicative on basis pair ({i}, {j})")));
            }
        }
    }
    if !power.embedding.apply(&Element::unit(&power.algebra))?.is_unit() {
        return Err(Error::InvalidAlgebra("embedding is not unital".into()));
    }
    Ok(())
}

/// First basis pair `(i, j)` with `F(e_i e_j) ≠ F(e_i) F(e_j)`, `None` when `F` is multiplicative.
pub fn multiplicativity_defect(big_f: &LinearMap) -> Result<Option<(usize, usize)>> {
    let domain = big_f.domain();
    let basis: Vec<Element> = (0..domain.dim()).map(|i| Element::basis(domain, i)).collect();
    let images: Vec<Element> = basis.iter().map(|b| big_f.apply(b)).collect::<Result<_>>()?;
    for i in 0..basis.len() {
        for j in i..basis.len() {
            if big_f.apply(&basis[i].mul(&basis[j])?)? != images[i].mul(&images[j])? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// `F(M) = (1/n!)·Φ_n(f, e_{i_1}, …, e_{i_n})` on every multiset basis element.
#[allow(non_snake_case)]
pub fn br_F_from_f(power: &SymPowerAlgebra, f: &LinearMap, bound: usize) -> Result<LinearMap> {
    if !f.domain().same_as(&power.base) {
        return Err(Error::AlgebraMismatch);
    }
    let n = power.n;
    if !is_n_hom(f, n, bound.max(n + 1), Strategy::BasisExhaustive)?.passed() {
        return Err(Error::NotNHomomorphism(n));
    }
    let scale = scalar::one() / scalar::factorial(n);
    let mut engine = Frobenius::new(f, MemoMode::Ordered);
    let mut columns = Vec::with_capacity(power.dim());
    for m in &power.multisets {
        let args: Vec<Element> = m.iter().map(|&i| Element::basis(&power.base, i)).collect();
        columns.push(engine.value(&args)?.scale(&scale).into_coords());
    }
    let rows = (0..f.codomain().dim())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    LinearMap::new(&power.algebra, f.codomain(), rows)
}

/// `f(a) = F(a⊗1⊗…⊗1 + … + 1⊗…⊗1⊗a)`; `F` must be a unital algebra homomorphism.
#[allow(non_snake_case)]
pub fn br_f_from_F(power: &SymPowerAlgebra, big_f: &LinearMap) -> Result<LinearMap> {
    if !big_f.domain().same_as(&power.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if let Some((i, j)) = multiplicativity_defect(big_f)? {
        return Err(Error::NotHomomorphism(format!("F(e_{i}·e_{j}) ≠ F(e_{i})·F(e_{j})")));
    }
    if !big_f.apply(&Element::unit(&power.algebra))?.is_unit() {
        return Err(Error::NotHomomorphism("F is not unital".into()));
    }
    let mut columns = Vec::with_capacity(power.base.dim());
    for j in 0..power.base.dim() {
        let e = Element::basis(&power.base, j);
        let mut sum = Element::zero(&power.tensor);
        for slot in 0..power.n {
            sum = sum.add(&power.slot_element(&e, slot)?)?;
        }
        columns.push(big_f.apply(&power.preimage(&sum)?)?.into_coords());
    }
    let rows = (0..big_f.codomain().dim())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    LinearMap::new(&power.base, big_f.codomain(), rows)
}

/// Coefficients of `det(1 + Λ(a) z) = Π_i (1 + a_{(i)} z)` in `A^{⊗n}`, degrees `0..=n`.
pub fn lambda_char_poly(power: &SymPowerAlgebra, a: &Element) -> Result<Vec<Element>> {
    let mut coeffs = vec![Element::unit(&power.tensor)];
    for slot in 0..power.n {
        let ai = power.slot_element(a, slot)?;
        let mut next = vec![Element::zero(&power.tensor); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] = next[k].add(c)?;
            next[k + 1] = next[k + 1].add(&c.mul(&ai)?)?;
        }
        coeffs = next;
    }
    Ok(coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyFormulaReport {
    pub holds: bool,
    /// `F` applied to the coefficients of `det(1 + Λ(a) z)`.
    pub lhs: Vec<Element>,
    /// `ψ_0, …, ψ_n` of `R(f, a, z)`.
    pub rhs: Vec<Element>,
}

/// Compares `F(det(1 + Λ(a) z))` with `R(f, a, z)` coefficientwise.
#[allow(non_snake_case)]
pub fn key_formula_with(power: &SymPowerAlgebra, big_f: &LinearMap, f: &LinearMap, a: &Element) -> Result<KeyFormulaReport> {
    let lhs: Vec<Element> = lambda_char_poly(power, a)?
        .iter()
        .map(|c| power.preimage(c).and_then(|s| big_f.apply(&s)))
        .collect::<Result<_>>()?;
    let rhs = char_function(f, a, power.n)?.series.coeffs().to_vec();
    Ok(KeyFormulaReport { holds: lhs == rhs, lhs, rhs })
}

pub fn verify_key_formula(power: &SymPowerAlgebra, f: &LinearMap, a: &Element, bound: usize) -> Result<bool> {
    let big_f = br_F_from_f(power, f, bound)?;
    Ok(key_formula_with(power, &big_f, f, a)?.holds)
}

/// Lattice points `a` (coordinates summing to n) whose powers `a⊗…⊗a` form a basis of
/// `S^n(A)`, or `None` if they do not span.
pub fn spanning_diagonal_powers(power: &SymPowerAlgebra) -> Result<Option<Vec<Element>>> {
    let points = lattice_shell(&power.base, power.n)?;
    let rows: Vec<Vec<Scalar>> = points
        .iter()
        .map(|a| power.diagonal_power(a).map(Element::into_coords))
        .collect::<Result<_>>()?;
    Ok((linalg::rank(&rows) == power.dim()).then_some(points))
}
