//! The Frobenius recursion
//! `Φ_1(a) = f(a)`,
//! `Φ_{k+1}(a_1, …, a_{k+1}) = f(a_1)·Φ_k(a_2, …, a_{k+1}) − Σ_{j≥2} Φ_k(a_2, …, a_1·a_j, …, a_{k+1})`.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{Element, LinearMap};
use crate::charfn::psi;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Symmetry checks on more arguments than this need an explicit override.
pub const SYMMETRY_GUARD: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MemoMode {
    /// Raw recursion, `k!` leaf evaluations.
    Off,
    /// Cache keyed on the ordered argument tuple; never uses symmetry.
    Ordered,
    /// Cache keyed on the sorted argument multiset; relies on the symmetry of Φ_k.
    Sorted,
}

pub struct Frobenius<'a> {
    map: &'a LinearMap,
    mode: MemoMode,
    cache: HashMap<Vec<Vec<Scalar>>, Element>,
}

impl<'a> Frobenius<'a> {
    pub fn new(map: &'a LinearMap, mode: MemoMode) -> Frobenius<'a> {
        Frobenius { map, mode, cache: HashMap::new() }
    }

    pub fn value(&mut self, args: &[Element]) -> Result<Element> {
        if args.is_empty() {
            return Err(Error::EmptyArguments);
        }
        if args.iter().any(|a| !a.algebra().same_as(self.map.domain())) {
            return Err(Error::AlgebraMismatch);
        }
        self.eval(args)
    }

    fn key(&self, args: &[Element]) -> Option<Vec<Vec<Scalar>>> {
        let mut key: Vec<Vec<Scalar>> = match self.mode {
            MemoMode::Off => return None,
            _ => args.iter().map(|a| a.coords().to_vec()).collect(),
        };
        if self.mode == MemoMode::Sorted {
            key.sort();
        }
        Some(key)
    }

    fn eval(&mut self, args: &[Element]) -> Result<Element> {
        if args.iter().any(Element::is_zero) {
            return Ok(Element::zero(self.map.codomain()));
        }
        if args.len() == 1 {
            return self.map.apply(&args[0]);
        }
        let key = self.key(args);
        if let Some(hit) = key.as_ref().and_then(|k| self.cache.get(k)) {
            return Ok(hit.clone());
        }
        let (first, rest) = args.split_first().expect("nonempty");
        let mut value = self.map.apply(first)?.mul(&self.eval(rest)?)?;
        for j in 0..rest.len() {
            let mut merged = rest.to_vec();
            merged[j] = first.mul(&rest[j])?;
            value = value.sub(&self.eval(&merged)?)?;
        }
        if let Some(k) = key {
            self.cache.insert(k, value.clone());
        }
        Ok(value)
    }
}

pub fn frobenius_map(f: &LinearMap, args: &[Element], mode: MemoMode) -> Result<Element> {
    Frobenius::new(f, mode).value(args)
}

fn for_each_permutation(items: &mut [usize], start: usize, visit: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    if start == items.len() {
        return visit(items);
    }
    for i in start..items.len() {
        items.swap(start, i);
        let keep_going = for_each_permutation(items, start + 1, visit)?;
        items.swap(start, i);
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff Φ_k takes the same value on all `k!` orderings of `args`.
pub fn check_symmetry(f: &LinearMap, args: &[Element], override_guard: bool) -> Result<bool> {
    if args.len() > SYMMETRY_GUARD && !override_guard {
        return Err(Error::SymmetryGuard(args.len(), SYMMETRY_GUARD));
    }
    let mut engine = Frobenius::new(f, MemoMode::Ordered);
    let reference = engine.value(args)?;
    let mut order: Vec<usize> = (0..args.len()).collect();
    for_each_permutation(&mut order, 0, &mut |perm| {
        let permuted: Vec<Element> = perm.iter().map(|&i| args[i].clone()).collect();
        Ok(engine.value(&permuted)? == reference)
    })
}

/// True iff `Φ_k(f, a, …, a) = k!·ψ_k(f, a)`.
pub fn check_polarization(f: &LinearMap, a: &Element, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Input("polarization needs k ≥ 1".into()));
    }
    let args = vec![a.clone(); k];
    let phi = frobenius_map(f, &args, MemoMode::Ordered)?;
    Ok(phi == psi(f, a, k)?.scale(&scalar::factorial(k)))
}

/// True iff Φ_k vanishes on every ordered k-tuple of basis elements of the domain.
pub fn vanishes_on_basis_tuples(f: &LinearMap, k: usize) -> Result<bool> {
    let domain = f.domain();
    let d = domain.dim();
    let total = d.checked_pow(k as u32).ok_or_else(|| Error::Input("too many basis tuples".into()))?;
    let mut engine = Frobenius::new(f, MemoMode::Ordered);
    for index in 0..total {
        let tuple = crate::algebra::tensor_tuple(index, d, k);
        let args: Vec<Element> = tuple.iter().map(|&i| Element::basis(domain, i)).collect();
        if !engine.value(&args)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{evaluation_hom, function_algebra, ground_field, integer_combination, Algebra};
    use crate::homclass::random_elements;
    use crate::scalar::int;
    use std::sync::Arc;

    fn xy() -> Arc<Algebra> {
        function_algebra(&["x", "y"]).unwrap()
    }

    fn combo(alg: &Arc<Algebra>, coeffs: &[i64]) -> LinearMap {
        let maps: Vec<LinearMap> = alg.labels().iter().map(|l| evaluation_hom(alg, l).unwrap()).collect();
        integer_combination(&maps, coeffs).unwrap()
    }

    fn random_map(domain: &Arc<Algebra>, codomain: &Arc<Algebra>, seed: u64) -> LinearMap {
        let rows = random_elements(domain, codomain.dim(), seed);
        LinearMap::new(domain, codomain, rows.into_iter().map(|r| r.into_coords()).collect()).unwrap()
    }

    #[test]
    fn low_orders() {
        let alg = xy();
        let f = combo(&alg, &[1, 1]);
        let a = Element::from_ints(&alg, &[2, 3]).unwrap();
        let b = Element::from_ints(&alg, &[-1, 4]).unwrap();
        assert_eq!(frobenius_map(&f, std::slice::from_ref(&a), MemoMode::Off).unwrap(), f.apply(&a).unwrap());
        let phi2 = frobenius_map(&f, &[a.clone(), b.clone()], MemoMode::Off).unwrap();
        let expected = f.apply(&a).unwrap().mul(&f.apply(&b).unwrap()).unwrap().sub(&f.apply(&a.mul(&b).unwrap()).unwrap()).unwrap();
        assert_eq!(phi2, expected);
        let hom = combo(&alg, &[1, 0]);
        assert!(frobenius_map(&hom, &[a.clone(), b], MemoMode::Off).unwrap().is_zero());
        assert_eq!(frobenius_map(&f, &[], MemoMode::Off), Err(Error::EmptyArguments));
        let other = Element::unit(&ground_field());
        assert_eq!(frobenius_map(&f, &[other], MemoMode::Off), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn polarization_examples() {
        let alg = xy();
        let f = combo(&alg, &[1, 1]);
        let a = Element::from_ints(&alg, &[2, 3]).unwrap();
        assert!(check_polarization(&f, &a, 1).unwrap());
        let phi2 = frobenius_map(&f, &[a.clone(), a.clone()], MemoMode::Off).unwrap();
        assert_eq!(phi2, Element::scalar(&ground_field(), int(12)));
        assert!(check_polarization(&f, &a, 2).unwrap());
        let phi3 = frobenius_map(&f, &vec![a.clone(); 3], MemoMode::Off).unwrap();
        assert!(phi3.is_zero());
        assert!(check_polarization(&f, &a, 3).unwrap());
    }

    #[test]
    fn symmetry_on_random_inputs() {
        let alg = function_algebra(&["x", "y", "w"]).unwrap();
        let f = random_map(&alg, &ground_field(), 11);
        let args = random_elements(&alg, 3, 12);
        assert!(check_symmetry(&f, &args, false).unwrap());
        assert!(check_symmetry(&f, &args[..1], false).unwrap());
        let many = random_elements(&alg, 8, 13);
        assert_eq!(check_symmetry(&f, &many, false), Err(Error::SymmetryGuard(8, SYMMETRY_GUARD)));
    }

    #[test]
    fn memo_modes_agree() {
        let alg = crate::algebra::truncated_polynomial_algebra(3).unwrap();
        let f = random_map(&alg, &alg, 5);
        let args = random_elements(&alg, 5, 6);
        let raw = frobenius_map(&f, &args, MemoMode::Off).unwrap();
        assert_eq!(frobenius_map(&f, &args, MemoMode::Ordered).unwrap(), raw);
        assert_eq!(frobenius_map(&f, &args, MemoMode::Sorted).unwrap(), raw);
    }

    #[test]
    fn multilinear_in_each_slot() {
        let alg = function_algebra(&["x", "y", "w"]).unwrap();
        let f = random_map(&alg, &ground_field(), 21);
        let args = random_elements(&alg, 4, 22);
        let extra = random_elements(&alg, 2, 23);
        let c = int(3);
        for slot in 0..4 {
            let mut combined = args.clone();
            combined[slot] = args[slot].add(&extra[0].scale(&c)).unwrap();
            let mut other = args.clone();
            other[slot] = extra[0].clone();
            let lhs = frobenius_map(&f, &combined, MemoMode::Off).unwrap();
            let rhs = frobenius_map(&f, &args, MemoMode::Off)
                .unwrap()
                .add(&frobenius_map(&f, &other, MemoMode::Off).unwrap().scale(&c))
                .unwrap();
            assert_eq!(lhs, rhs, "slot {slot}");
        }
    }

    #[test]
    fn vanishing_propagates_upward() {
        let alg = function_algebra(&["x", "y", "w"]).unwrap();
        let f = combo(&alg, &[2, 0, 1]);
        assert!(!vanishes_on_basis_tuples(&f, 3).unwrap());
        assert!(vanishes_on_basis_tuples(&f, 4).unwrap());
        let args = random_elements(&alg, 5, 31);
        assert!(frobenius_map(&f, &args, MemoMode::Off).unwrap().is_zero());
    }
}
