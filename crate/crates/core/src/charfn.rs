//! The characteristic function `R(f, a, z) = exp(f(log(1 + a z)))` of a linear
//! map `f: A → B`, its coefficients `ψ_k`, the character `f(1)`, the
//! f-Berezinian and the expansion at infinity.

use serde::Serialize;

use crate::algebra::{self, Element, LinearMap};
use crate::error::{Error, Result};
use crate::homclass;
use crate::scalar::{self, Scalar};
use crate::series::{log_one_plus_linear, map_coefficients, TruncatedSeries};

/// Series order used when the Berezinian is read off a reconstructed rational form.
pub const RECONSTRUCTION_ORDER: usize = 24;
/// Largest numerator/denominator degree tried during that reconstruction.
pub const RECONSTRUCTION_MAX_DEGREE: usize = 9;

#[derive(Clone, Debug)]
pub struct CharFnExpansion {
    pub map: LinearMap,
    pub element: Element,
    pub series: TruncatedSeries,
}

impl CharFnExpansion {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `ψ_0 = 1, ψ_1, …, ψ_N`.
    pub fn psis(&self) -> &[Element] {
        self.series.coeffs()
    }
}

pub fn char_function(f: &LinearMap, a: &Element, order: usize) -> Result<CharFnExpansion> {
    if !f.domain().same_as(a.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let log = log_one_plus_linear(a, order)?;
    let series = map_coefficients(f, &log)?.exp()?;
    Ok(CharFnExpansion { map: f.clone(), element: a.clone(), series })
}

/// Coefficient of `z^k` in `R(f, a, z)`.
pub fn psi(f: &LinearMap, a: &Element, k: usize) -> Result<Element> {
    Ok(char_function(f, a, k)?.series.coeff(k).clone())
}

/// `ψ_k` through the Newton determinant
/// `(1/k!)·det[f(a^{i-j+1}) below and on the diagonal, i+1 on the superdiagonal]`.
pub fn psi_newton(f: &LinearMap, a: &Element, k: usize) -> Result<Element> {
    if k == 0 {
        return Err(Error::Input("the Newton determinant needs k ≥ 1".into()));
    }
    let codomain = f.codomain();
    let traces: Vec<Element> = (1..=k).map(|j| f.apply(&a.power(j))).collect::<Result<_>>()?;
    let matrix: Vec<Vec<Element>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if j <= i {
                        traces[i - j].clone()
                    } else if j == i + 1 {
                        Element::scalar(codomain, scalar::int(j as i64))
                    } else {
                        Element::zero(codomain)
                    }
                })
                .collect()
        })
        .collect();
    let det = algebra::determinant(codomain, &matrix)?;
    Ok(det.scale(&(scalar::one() / scalar::factorial(k))))
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterReport {
    pub value: Element,
    /// `Some(n)` when `f(1) = n·1`.
    pub integer: Option<i64>,
}

impl CharacterReport {
    pub fn is_integral(&self) -> bool {
        self.integer.is_some()
    }
}

/// `χ(f) = f(1)`, flagged when it is not an integer multiple of the unit.
pub fn character(f: &LinearMap) -> Result<CharacterReport> {
    let value = f.apply(&Element::unit(f.domain()))?;
    let integer = value.as_scalar_multiple_of_unit().and_then(|c| scalar::as_i64(&c));
    Ok(CharacterReport { value, integer })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BerezinianMethod {
    /// `a = 1 + n` with `n` nilpotent; both logarithm and exponential terminate.
    Nilpotent,
    /// Leading coefficient at infinity of the reconstructed rational `R(f, a, z)`.
    Reconstruction,
}

/// `Ber_f(a) = exp(f(log a))` in the two regimes where it is computable exactly.
pub fn berezinian(f: &LinearMap, a: &Element, method: BerezinianMethod) -> Result<Element> {
    if !f.domain().same_as(a.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    match method {
        BerezinianMethod::Nilpotent => berezinian_nilpotent(f, a),
        BerezinianMethod::Reconstruction => berezinian_reconstruction(f, a),
    }
}

fn nilpotent_exp(b: &Element) -> Element {
    let mut total = Element::unit(b.algebra());
    let mut power = Element::unit(b.algebra());
    for m in 1..=b.algebra().dim() {
        power = power.mul(b).expect("same algebra").scale(&scalar::ratio(1, m as i64));
        total = total.add(&power).expect("same algebra");
    }
    total
}

fn berezinian_nilpotent(f: &LinearMap, a: &Element) -> Result<Element> {
    let nil = a.sub(&Element::unit(a.algebra()))?;
    if !nil.is_nilpotent() {
        return Err(Error::BerezinianUndefined("argument is not unipotent".into()));
    }
    let mut log = Element::zero(a.algebra());
    let mut power = Element::unit(a.algebra());
    for k in 1..=a.algebra().dim() {
        power = power.mul(&nil)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        log = log.add(&power.scale(&scalar::ratio(sign, k as i64)))?;
    }
    let image = f.apply(&log)?;
    if !image.is_nilpotent() {
        return Err(Error::BerezinianUndefined("f(log a) is not nilpotent, so its exponential is transcendental".into()));
    }
    Ok(nilpotent_exp(&image))
}

fn berezinian_reconstruction(f: &LinearMap, a: &Element) -> Result<Element> {
    let codomain = f.codomain();
    if !codomain.is_split() {
        return Err(Error::BerezinianUndefined("reconstruction needs a split codomain".into()));
    }
    if a.invert().is_err() {
        return Err(Error::BerezinianUndefined("argument is not invertible".into()));
    }
    let chi = character(f)?
        .integer
        .ok_or_else(|| Error::BerezinianUndefined("character is not integral".into()))?;
    let series = char_function(f, a, RECONSTRUCTION_ORDER)?.series;
    let mut coords = Vec::with_capacity(codomain.dim());
    for c in 0..codomain.dim() {
        let component = homclass::component_series(&series, c);
        let (p, q) = homclass::detect_degrees(&component, RECONSTRUCTION_MAX_DEGREE, RECONSTRUCTION_MAX_DEGREE)
            .ok_or_else(|| Error::BerezinianUndefined("characteristic function is not rational at the tested degrees".into()))?;
        let form = homclass::reconstruct_rational(&component, p, q)?;
        let (num_deg, num_lead) = leading(&form.numerator)
            .ok_or_else(|| Error::BerezinianUndefined("numerator vanishes".into()))?;
        let (den_deg, den_lead) = leading(&form.denominator).expect("denominator has unit constant term");
        if num_deg as i64 - den_deg as i64 != chi {
            return Err(Error::BerezinianUndefined(format!(
                "pole order at infinity {} differs from the character {chi}",
                num_deg as i64 - den_deg as i64
            )));
        }
        coords.push(num_lead / den_lead);
    }
    Element::new(codomain, coords)
}

fn leading(poly: &[Element]) -> Option<(usize, Scalar)> {
    let d = poly.iter().rposition(|c| !c.is_zero())?;
    Some((d, poly[d].coords()[0].clone()))
}

/// `R(f, a, z) = z^χ · Ber_f(a) · R(f, a^{-1}, z^{-1})`; `tail` is the last factor as a
/// series in `w = z^{-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct InfinityExpansion {
    pub character: i64,
    pub berezinian: Element,
    #[serde(serialize_with = "crate::io::serialize_series")]
    pub tail: TruncatedSeries,
}

pub fn infinity_expansion(
    f: &LinearMap,
    a: &Element,
    order: usize,
    method: BerezinianMethod,
) -> Result<InfinityExpansion> {
    let inverse = a.invert()?;
    let character = character(f)?.integer.ok_or(Error::NonIntegralCharacter)?;
    let berezinian = berezinian(f, a, method)?;
    let tail = char_function(f, &inverse, order)?.series;
    Ok(InfinityExpansion { character, berezinian, tail })
}

/// Coefficients of `p(t) = t^n R(f, a, −1/t)` in ascending powers of `t`;
/// the coefficient of `t^{n-k}` is `(−1)^k ψ_k` and the top one is the unit.
pub fn monic_polynomial_form(r: &CharFnExpansion, n: usize) -> Result<Vec<Element>> {
    if r.order() < n || !r.series.is_polynomial_of_degree_at_most(n) {
        return Err(Error::NotPolynomial(n));
    }
    let mut coeffs = vec![Element::zero(r.series.algebra()); n + 1];
    for k in 0..=n {
        let psi_k = r.series.coeff(k);
        coeffs[n - k] = if k % 2 == 0 { psi_k.clone() } else { psi_k.neg() };
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        evaluation_hom, function_algebra, ground_field, integer_combination, truncated_polynomial_algebra,
    };
    use crate::scalar::{int, ratio};
    use std::sync::Arc;

    fn xy() -> Arc<crate::Algebra> {
        function_algebra(&["x", "y"]).unwrap()
    }

    fn combo(coeffs: &[i64]) -> LinearMap {
        let a = xy();
        let maps = vec![evaluation_hom(&a, "x").unwrap(), evaluation_hom(&a, "y").unwrap()];
        integer_combination(&maps, coeffs).unwrap()
    }

    fn q(v: Scalar) -> Element {
        Element::scalar(&ground_field(), v)
    }

    /// Π_i (1 + v_i z)^{m_i} expanded directly, the product-formula oracle.
    fn product_formula(values: &[i64], multiplicities: &[i64], order: usize) -> TruncatedSeries {
        let g = ground_field();
        let mut total = TruncatedSeries::one(&g, order);
        for (&v, &m) in values.iter().zip(multiplicities) {
            let factor = TruncatedSeries::from_ints(&g, &[1, v]).unwrap();
            let factor = TruncatedSeries::from_polynomial(&g, factor.coeffs(), order).unwrap();
            let factor = if m < 0 { factor.invert().unwrap() } else { factor };
            for _ in 0..m.abs() {
                total = total.mul(&factor).unwrap();
            }
        }
        total
    }

    #[test]
    fn homomorphism_gives_linear_series() {
        let f = combo(&[1, 0]);
        let a = Element::from_ints(&xy(), &[7, -2]).unwrap();
        let r = char_function(&f, &a, 8).unwrap();
        assert_eq!(r.series, TruncatedSeries::from_polynomial(&ground_field(), &[q(int(1)), q(int(7))], 8).unwrap());
        assert!(r.psis()[0].is_unit());
    }

    #[test]
    fn unit_argument_gives_binomial_series() {
        let f = combo(&[1, 1]);
        let r = char_function(&f, &Element::unit(&xy()), 4).unwrap();
        assert_eq!(r.series, TruncatedSeries::from_ints(&ground_field(), &[1, 2, 1, 0, 0]).unwrap());
    }

    #[test]
    fn sum_of_evaluations_matches_product_formula() {
        let f = combo(&[1, 1]);
        let a = Element::from_ints(&xy(), &[2, 3]).unwrap();
        let r = char_function(&f, &a, 4).unwrap();
        let oracle = product_formula(&[2, 3], &[1, 1], 4);
        assert_eq!(oracle, TruncatedSeries::from_ints(&ground_field(), &[1, 5, 6, 0, 0]).unwrap());
        assert_eq!(r.series, oracle);
        let diff = char_function(&combo(&[1, -1]), &a, 6).unwrap();
        assert_eq!(diff.series, product_formula(&[2, 3], &[1, -1], 6));
    }

    #[test]
    fn psi_values() {
        let f = combo(&[1, 1]);
        let a = Element::from_ints(&xy(), &[2, 3]).unwrap();
        assert!(psi(&f, &a, 0).unwrap().is_unit());
        assert_eq!(psi(&f, &a, 1).unwrap(), f.apply(&a).unwrap());
        // (f(a)^2 - f(a^2)) / 2 = (25 - 13) / 2
        assert_eq!(psi(&f, &a, 2).unwrap(), q(int(6)));
        assert_eq!(psi_newton(&f, &a, 1).unwrap(), q(int(5)));
        assert_eq!(psi_newton(&f, &a, 2).unwrap(), q(int(6)));
        assert_eq!(psi_newton(&f, &a, 3).unwrap(), q(int(0)));
        assert!(psi_newton(&f, &a, 0).is_err());
    }

    #[test]
    fn newton_matches_series_on_non_reduced_algebra() {
        let alg = truncated_polynomial_algebra(3).unwrap();
        let f = LinearMap::new(&alg, &alg, vec![
            vec![int(2), int(1), int(0)],
            vec![int(0), int(-1), ratio(1, 2)],
            vec![int(3), int(0), int(1)],
        ])
        .unwrap();
        let a = Element::new(&alg, vec![int(1), ratio(2, 3), int(-1)]).unwrap();
        let r = char_function(&f, &a, 7).unwrap();
        for k in 1..=7 {
            assert_eq!(psi_newton(&f, &a, k).unwrap(), r.psis()[k], "k = {k}");
        }
    }

    #[test]
    fn characters() {
        assert_eq!(character(&combo(&[1, 1])).unwrap().integer, Some(2));
        assert_eq!(character(&combo(&[1, -1])).unwrap().integer, Some(0));
        let half = combo(&[1, 0]).scale(&ratio(1, 2));
        let report = character(&half).unwrap();
        assert!(!report.is_integral());
        assert_eq!(report.value, q(ratio(1, 2)));
    }

    #[test]
    fn berezinian_by_reconstruction() {
        let a = Element::from_ints(&xy(), &[2, 3]).unwrap();
        let sum = berezinian(&combo(&[1, 1]), &a, BerezinianMethod::Reconstruction).unwrap();
        assert_eq!(sum, q(int(6)));
        let diff = berezinian(&combo(&[1, -1]), &a, BerezinianMethod::Reconstruction).unwrap();
        assert_eq!(diff, q(ratio(2, 3)));
        let unit = Element::unit(&xy());
        assert!(berezinian(&combo(&[3, -1]), &unit, BerezinianMethod::Reconstruction).unwrap().is_unit());
        let half = combo(&[1, 0]).scale(&ratio(1, 2));
        assert!(berezinian(&half, &a, BerezinianMethod::Reconstruction).is_err());
        let singular = Element::from_ints(&xy(), &[0, 3]).unwrap();
        assert!(berezinian(&combo(&[1, 1]), &singular, BerezinianMethod::Reconstruction).is_err());
    }

    #[test]
    fn berezinian_of_unipotent_elements() {
        let alg = truncated_polynomial_algebra(3).unwrap();
        let twice = LinearMap::identity(&alg).scale(&int(2));
        let a = Element::new(&alg, vec![int(1), int(3), ratio(-1, 2)]).unwrap();
        // exp(2 log a) = a^2 when the logarithm terminates
        assert_eq!(berezinian(&twice, &a, BerezinianMethod::Nilpotent).unwrap(), a.power(2));
        assert!(berezinian(&twice, &Element::unit(&alg), BerezinianMethod::Nilpotent).unwrap().is_unit());
        let b = Element::from_ints(&alg, &[2, 1, 0]).unwrap();
        assert!(matches!(
            berezinian(&twice, &b, BerezinianMethod::Nilpotent),
            Err(Error::BerezinianUndefined(_))
        ));
        // a functional that does not kill the nilpotent direction
        let trace = LinearMap::new(&alg, &ground_field(), vec![vec![int(1), int(1), int(0)]]).unwrap();
        assert!(berezinian(&trace, &a, BerezinianMethod::Nilpotent).is_err());
        assert!(berezinian(&twice, &a, BerezinianMethod::Reconstruction).is_err());
    }

    #[test]
    fn both_methods_agree_where_both_apply() {
        let alg = truncated_polynomial_algebra(2).unwrap();
        // 3·(augmentation), a sum of three homomorphisms to ℚ
        let f = LinearMap::new(&alg, &ground_field(), vec![vec![int(3), int(0)]]).unwrap();
        let a = Element::new(&alg, vec![int(1), ratio(5, 7)]).unwrap();
        let nil = berezinian(&f, &a, BerezinianMethod::Nilpotent).unwrap();
        let rec = berezinian(&f, &a, BerezinianMethod::Reconstruction).unwrap();
        assert_eq!(nil, rec);
        assert!(nil.is_unit());
    }

    #[test]
    fn expansion_at_infinity() {
        let g = ground_field();
        let id = LinearMap::identity(&g);
        let two = q(int(2));
        let inf = infinity_expansion(&id, &two, 3, BerezinianMethod::Reconstruction).unwrap();
        assert_eq!(inf.character, 1);
        assert_eq!(inf.berezinian, two);
        assert_eq!(inf.tail, TruncatedSeries::from_polynomial(&g, &[q(int(1)), q(ratio(1, 2))], 3).unwrap());

        let a = Element::from_ints(&xy(), &[2, 3]).unwrap();
        let inf = infinity_expansion(&combo(&[1, 1]), &a, 4, BerezinianMethod::Reconstruction).unwrap();
        assert_eq!(inf.character, 2);
        assert_eq!(inf.berezinian, q(int(6)));
        assert_eq!(inf.tail.coeff(1), &q(ratio(5, 6)));

        // at a = 1 the tail is R(f, 1, w) = (1 + w)^χ
        let inf = infinity_expansion(&combo(&[2, 0]), &Element::unit(&xy()), 3, BerezinianMethod::Reconstruction).unwrap();
        assert!(inf.berezinian.is_unit());
        assert_eq!(inf.tail, TruncatedSeries::from_ints(&g, &[1, 2, 1, 0]).unwrap());

        let half = combo(&[1, 0]).scale(&ratio(1, 2));
        assert_eq!(
            infinity_expansion(&half, &a, 3, BerezinianMethod::Reconstruction).unwrap_err(),
            Error::NonIntegralCharacter
        );
    }

    #[test]
    fn monic_forms() {
        let a = Element::from_ints(&xy(), &[2, 3]).unwrap();
        let hom = char_function(&combo(&[1, 0]), &a, 6).unwrap();
        assert_eq!(monic_polynomial_form(&hom, 1).unwrap(), vec![q(int(-2)), q(int(1))]);
        let sum = char_function(&combo(&[1, 1]), &a, 6).unwrap();
        assert_eq!(monic_polynomial_form(&sum, 2).unwrap(), vec![q(int(6)), q(int(-5)), q(int(1))]);
        assert_eq!(monic_polynomial_form(&sum, 1).unwrap_err(), Error::NotPolynomial(1));
        let zero = char_function(&combo(&[0, 0]), &a, 6).unwrap();
        assert_eq!(monic_polynomial_form(&zero, 0).unwrap(), vec![q(int(1))]);
    }
}
