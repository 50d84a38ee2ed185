//! The verification suite behind `verify-all`: eleven exact checks, run in order.

use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    evaluation_hom, function_algebra, integer_combination, tensor_product, truncated_polynomial_algebra, Algebra,
    Element, LinearMap,
};
use crate::charfn::{
    berezinian, char_function, character, infinity_expansion, psi_newton, BerezinianMethod, RECONSTRUCTION_MAX_DEGREE,
    RECONSTRUCTION_ORDER,
};
use crate::error::{Error, Result};
use crate::finitespace::{enumerate_n_homs, enumerate_sym_pq, ev_map, verify_ev_well_defined, verify_variety_equations, FiniteSpace};
use crate::frobenius::{check_polarization, check_symmetry};
use crate::homclass::{component_series, detect_degrees, is_n_hom, is_pq_hom, reconstruct_rational, Strategy};
use crate::scalar::{self, Scalar};
use crate::series::{map_coefficients, TruncatedSeries};
use crate::sympower::{br_F_from_f, br_f_from_F, key_formula_with, multiplicativity_defect, sym_power_algebra};

pub const CRITERIA: usize = 11;
pub const DEFAULT_SEED: u64 = 20_240_601;
const SERIES_ORDER: usize = 12;
const BOUND: usize = 12;
const MAX_FAILURES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Desk,
    Extended,
}

impl Level {
    fn scale(self) -> usize {
        match self {
            Level::Desk => 1,
            Level::Extended => 4,
        }
    }
}

/// Deliberate defects used to confirm the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Negates `ψ_2` in every characteristic series the suite computes directly.
    PsiSign,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub level: Level,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { level: Level::Desk, seed: DEFAULT_SEED, mutation: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub failing: Vec<usize>,
    pub outcomes: Vec<CriterionOutcome>,
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "homomorphisms have linear characteristic function",
        2 => "exponential property R(f+g) = R(f)R(g)",
        3 => "Newton determinant agrees with series coefficients",
        4 => "integral character and expansion at infinity",
        5 => "Berezinian multiplicativity and method agreement",
        6 => "Frobenius symmetry and polarization",
        7 => "sums and compositions of n-homomorphisms",
        8 => "n-homomorphisms correspond to homomorphisms of S^n(A)",
        9 => "p|q classification of signed evaluation sums",
        10 => "Sym^{p|q}(X) classes and evaluation maps",
        11 => "negative controls",
        _ => "unknown criterion",
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    config: SuiteConfig,
    checks: usize,
    failures: Vec<String>,
}

impl Ctx {
    fn new(id: usize, config: SuiteConfig) -> Ctx {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(id as u64);
        Ctx { rng, config, checks: 0, failures: Vec::new() }
    }

    fn scaled(&self, n: usize) -> usize {
        n * self.config.level.scale()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, message: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(message);
        } else if self.failures.len() == MAX_FAILURES {
            self.failures.push("further failures omitted".into());
        }
    }

    fn rational(&mut self, numer: i64, denom: i64) -> Scalar {
        scalar::ratio(self.rng.gen_range(-numer..=numer), self.rng.gen_range(1..=denom))
    }

    fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let r = self.rational(7, 3);
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    fn element(&mut self, algebra: &Arc<Algebra>) -> Element {
        let coords = (0..algebra.dim()).map(|_| self.rational(6, 3)).collect();
        Element::new(algebra, coords).expect("dimension matches")
    }

    fn invertible_point_function(&mut self, algebra: &Arc<Algebra>) -> Element {
        let coords = (0..algebra.dim()).map(|_| self.nonzero_rational()).collect();
        Element::new(algebra, coords).expect("dimension matches")
    }

    fn map(&mut self, domain: &Arc<Algebra>, codomain: &Arc<Algebra>) -> LinearMap {
        let rows = (0..codomain.dim()).map(|_| (0..domain.dim()).map(|_| self.rational(3, 2)).collect()).collect();
        LinearMap::new(domain, codomain, rows).expect("shape matches")
    }

    fn space(&mut self, max: usize) -> FiniteSpace {
        let n = self.rng.gen_range(1..=max);
        point_space(n)
    }

    fn multiplicities(&mut self, len: usize, radius: i64) -> Vec<i64> {
        (0..len).map(|_| self.rng.gen_range(-radius..=radius)).collect()
    }

    /// `R(f, a, z)` with the configured mutation applied.
    fn char_series(&self, f: &LinearMap, a: &Element, order: usize) -> Result<TruncatedSeries> {
        let series = char_function(f, a, order)?.series;
        match self.config.mutation {
            None => Ok(series),
            Some(Mutation::PsiSign) => {
                let mut coeffs = series.coeffs().to_vec();
                if coeffs.len() > 2 {
                    coeffs[2] = coeffs[2].neg();
                }
                TruncatedSeries::new(series.algebra(), coeffs)
            }
        }
    }
}

fn point_space(n: usize) -> FiniteSpace {
    let labels: Vec<String> = ["x", "y", "w", "v", "u", "s"].iter().take(n).map(|s| s.to_string()).collect();
    FiniteSpace::new(&labels).expect("distinct labels")
}

/// Domains and codomains for maps that are not required to be homomorphisms.
fn algebra_pool() -> Vec<Arc<Algebra>> {
    let points2 = function_algebra(&["x", "y"]).expect("valid");
    let dual = truncated_polynomial_algebra(2).expect("valid");
    vec![
        crate::algebra::ground_field(),
        points2.clone(),
        function_algebra(&["x", "y", "w"]).expect("valid"),
        dual.clone(),
        truncated_polynomial_algebra(3).expect("valid"),
        tensor_product(&points2, &dual).expect("valid"),
    ]
}

fn signed_parts(m: &[i64]) -> (usize, usize) {
    let p = m.iter().filter(|&&c| c > 0).sum::<i64>() as usize;
    let q = -m.iter().filter(|&&c| c < 0).sum::<i64>() as usize;
    (p, q)
}

fn scalar_power(x: &Scalar, e: i64) -> Scalar {
    let base = if e < 0 { scalar::one() / x } else { x.clone() };
    (0..e.unsigned_abs()).fold(scalar::one(), |acc, _| acc * &base)
}

fn element_power(x: &Element, e: i64) -> Result<Element> {
    let base = if e < 0 { x.invert()? } else { x.clone() };
    Ok(base.power(e.unsigned_abs() as usize))
}

/// `Π_x (1 + a_x t)^{m_x}`.
fn product_formula(m: &[i64], a: &Element, t: &Scalar) -> Scalar {
    m.iter()
        .zip(a.coords())
        .fold(scalar::one(), |acc, (&e, ax)| acc * scalar_power(&(scalar::one() + ax * t), e))
}

fn criterion_1(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.scaled(50) {
        let space = ctx.space(4);
        let point = space.points().choose(&mut ctx.rng).expect("nonempty").clone();
        let f = evaluation_hom(space.algebra(), &point)?;
        let a = ctx.element(space.algebra());
        let r = ctx.char_series(&f, &a, SERIES_ORDER)?;
        let fa = f.apply(&a)?;
        ctx.check(r.coeff(0).is_unit() && *r.coeff(1) == fa, || format!("ev_{point}: R(a) starts {}", r.render()));
        let higher = (2..=SERIES_ORDER).find(|&k| !r.coeff(k).is_zero());
        ctx.check(higher.is_none(), || format!("ev_{point} at {a}: nonzero coefficient z^{}", higher.unwrap_or(0)));
    }
    Ok(())
}

fn criterion_2(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.scaled(50) {
        let space = ctx.space(4);
        let mf = ctx.multiplicities(space.len(), 3);
        let mg = ctx.multiplicities(space.len(), 3);
        let f = space.combination(&mf)?;
        let g = space.combination(&mg)?;
        let a = ctx.element(space.algebra());
        let lhs = ctx.char_series(&f.add(&g)?, &a, SERIES_ORDER)?;
        let rhs = ctx.char_series(&f, &a, SERIES_ORDER)?.mul(&ctx.char_series(&g, &a, SERIES_ORDER)?)?;
        ctx.check(lhs == rhs, || format!("m_f={mf:?} m_g={mg:?} a={a}: {} vs {}", lhs.render(), rhs.render()));
    }
    Ok(())
}

fn criterion_3(ctx: &mut Ctx) -> Result<()> {
    let pool = algebra_pool();
    for _ in 0..ctx.scaled(200) {
        let domain = pool.choose(&mut ctx.rng).expect("nonempty").clone();
        let codomain = pool.choose(&mut ctx.rng).expect("nonempty").clone();
        let f = ctx.map(&domain, &codomain);
        let a = ctx.element(&domain);
        let series = char_function(&f, &a, 8)?.series;
        for k in 1..=8 {
            let newton = psi_newton(&f, &a, k)?;
            ctx.check(newton == *series.coeff(k), || format!("k={k} a={a}: {newton} vs {}", series.coeff(k)));
        }
    }
    Ok(())
}

fn rational_form_of(series: &TruncatedSeries) -> Result<crate::homclass::RationalForm> {
    let (p, q) = detect_degrees(series, RECONSTRUCTION_MAX_DEGREE, RECONSTRUCTION_MAX_DEGREE)
        .ok_or(Error::NotRationalSeries { p: RECONSTRUCTION_MAX_DEGREE, q: RECONSTRUCTION_MAX_DEGREE })?;
    reconstruct_rational(series, p, q)
}

fn criterion_4(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.scaled(30) {
        let space = ctx.space(3);
        let m = ctx.multiplicities(space.len(), 2);
        let (p, q) = signed_parts(&m);
        let f = space.combination(&m)?;
        let chi = character(&f)?.integer;
        ctx.check(chi == Some(p as i64 - q as i64), || format!("m={m:?}: character {chi:?}, expected {}", p as i64 - q as i64));
        let a = ctx.invertible_point_function(space.algebra());
        let inf = infinity_expansion(&f, &a, RECONSTRUCTION_ORDER, BerezinianMethod::Reconstruction)?;
        let forward = rational_form_of(&char_function(&f, &a, RECONSTRUCTION_ORDER)?.series)?;
        let backward = rational_form_of(&inf.tail)?;
        let ber = inf.berezinian.coords()[0].clone();
        let expected_ber = m.iter().zip(a.coords()).fold(scalar::one(), |acc, (&e, x)| acc * scalar_power(x, e));
        ctx.check(ber == expected_ber, || format!("m={m:?} a={a}: Ber {ber}, expected {expected_ber}"));
        let mut evaluated = 0;
        let mut attempts = 0;
        while evaluated < 10 && attempts < 200 {
            attempts += 1;
            let t = ctx.nonzero_rational();
            let (Some(at_t), Some(at_inv)) = (forward.evaluate(&t), backward.evaluate(&(scalar::one() / &t))) else {
                continue;
            };
            let oracle = product_formula(&m, &a, &t);
            if num_traits::Zero::is_zero(&oracle) {
                continue;
            }
            evaluated += 1;
            let rhs = scalar_power(&t, inf.character) * &ber * &at_inv.coords()[0];
            ctx.check(at_t.coords()[0] == oracle && rhs == oracle, || {
                format!("m={m:?} a={a} t={t}: R(t)={}, z^χ·Ber·tail={rhs}, product {oracle}", at_t.coords()[0])
            });
        }
        ctx.check(evaluated == 10, || format!("m={m:?} a={a}: only {evaluated} non-pole points found"));
    }
    Ok(())
}

fn unipotent(ctx: &mut Ctx, algebra: &Arc<Algebra>, nilpotent_slots: &[usize]) -> Element {
    let mut coords: Vec<Scalar> = algebra.unit_coords().to_vec();
    for &i in nilpotent_slots {
        coords[i] += ctx.rational(5, 3);
    }
    Element::new(algebra, coords).expect("dimension matches")
}

/// `Σ m_x (ev_x ⊗ id)` or `Σ m_x (ev_x ⊗ ε)` from `ℚ^X ⊗ ℚ[t]/t^k`.
fn pointwise_map(space: &FiniteSpace, dual: &Arc<Algebra>, m: &[i64], keep_dual: bool) -> Result<LinearMap> {
    let domain = tensor_product(space.algebra(), dual)?;
    let k = dual.dim();
    let codomain = if keep_dual { dual.clone() } else { crate::algebra::ground_field() };
    let rows = (0..codomain.dim())
        .map(|r| {
            (0..domain.dim())
                .map(|c| {
                    let (x, j) = (c / k, c % k);
                    if j == r { scalar::int(m[x]) } else { scalar::zero() }
                })
                .collect()
        })
        .collect();
    LinearMap::new(&domain, &codomain, rows)
}

fn criterion_5(ctx: &mut Ctx) -> Result<()> {
    for instance in 0..ctx.scaled(50) {
        let space = ctx.space(3);
        let m = ctx.multiplicities(space.len(), 2);
        match instance % 3 {
            0 => {
                let f = space.combination(&m)?;
                let a = ctx.invertible_point_function(space.algebra());
                let b = ctx.invertible_point_function(space.algebra());
                let ber = |x: &Element| berezinian(&f, x, BerezinianMethod::Reconstruction);
                let (ba, bb, bab) = (ber(&a)?, ber(&b)?, ber(&a.mul(&b)?)?);
                let oracle = m.iter().zip(a.coords()).fold(scalar::one(), |acc, (&e, x)| acc * scalar_power(x, e));
                ctx.check(bab == ba.mul(&bb)?, || format!("m={m:?} a={a} b={b}: Ber(ab)={bab}, Ber(a)Ber(b)={}", ba.mul(&bb).unwrap()));
                ctx.check(ba.coords()[0] == oracle, || format!("m={m:?} a={a}: Ber={ba}, product {oracle}"));
            }
            1 => {
                let dual = truncated_polynomial_algebra(ctx.rng.gen_range(2..=3))?;
                let f = pointwise_map(&space, &dual, &m, true)?;
                let k = dual.dim();
                let nil_slots: Vec<usize> = (0..f.domain().dim()).filter(|c| c % k != 0).collect();
                let a = unipotent(ctx, f.domain(), &nil_slots);
                let b = unipotent(ctx, f.domain(), &nil_slots);
                let ber = |x: &Element| berezinian(&f, x, BerezinianMethod::Nilpotent);
                let (ba, bb, bab) = (ber(&a)?, ber(&b)?, ber(&a.mul(&b)?)?);
                ctx.check(bab == ba.mul(&bb)?, || format!("m={m:?} a={a} b={b}: nilpotent Ber not multiplicative"));
                // Π_x a_x^{m_x} in ℚ[t]/t^k with a_x = (ev_x ⊗ id)(a)
                let mut oracle = Element::unit(&dual);
                for (x, &e) in m.iter().enumerate() {
                    let ax = Element::new(&dual, a.coords()[x * k..(x + 1) * k].to_vec())?;
                    oracle = oracle.mul(&element_power(&ax, e)?)?;
                }
                ctx.check(ba == oracle, || format!("m={m:?} a={a}: Ber={ba}, product {oracle}"));
                ctx.check(
                    matches!(berezinian(&f, &a, BerezinianMethod::Reconstruction), Err(Error::BerezinianUndefined(_))),
                    || "reconstruction accepted a non-split codomain".into(),
                );
            }
            _ => {
                let dual = truncated_polynomial_algebra(2)?;
                let f = pointwise_map(&space, &dual, &m, false)?;
                let nil_slots: Vec<usize> = (0..f.domain().dim()).filter(|c| c % 2 == 1).collect();
                let u = unipotent(ctx, f.domain(), &nil_slots);
                let by_nilpotent = berezinian(&f, &u, BerezinianMethod::Nilpotent)?;
                let by_reconstruction = berezinian(&f, &u, BerezinianMethod::Reconstruction)?;
                ctx.check(by_nilpotent == by_reconstruction && by_nilpotent.is_unit(), || {
                    format!("m={m:?} a={u}: nilpotent {by_nilpotent} vs reconstruction {by_reconstruction}")
                });
                let s = ctx.invertible_point_function(space.algebra());
                let mut coords = Vec::with_capacity(f.domain().dim());
                for v in s.coords() {
                    coords.push(v.clone());
                    coords.push(ctx.rational(5, 3));
                }
                let a = Element::new(f.domain(), coords)?;
                let ber = |x: &Element| berezinian(&f, x, BerezinianMethod::Reconstruction);
                let (ba, bu, bau) = (ber(&a)?, ber(&u)?, ber(&a.mul(&u)?)?);
                let oracle = m.iter().zip(s.coords()).fold(scalar::one(), |acc, (&e, x)| acc * scalar_power(x, e));
                ctx.check(bau == ba.mul(&bu)? && ba.coords()[0] == oracle, || {
                    format!("m={m:?} a={a} u={u}: Ber(au)={bau}, Ber(a)={ba}, product {oracle}")
                });
            }
        }
    }
    Ok(())
}

fn criterion_6(ctx: &mut Ctx) -> Result<()> {
    let pool = algebra_pool();
    for k in 1..=5 {
        for _ in 0..ctx.scaled(4) {
            let domain = pool.choose(&mut ctx.rng).expect("nonempty").clone();
            let codomain = pool.choose(&mut ctx.rng).expect("nonempty").clone();
            let f = ctx.map(&domain, &codomain);
            let args: Vec<Element> = (0..k).map(|_| ctx.element(&domain)).collect();
            let symmetric = check_symmetry(&f, &args, false)?;
            ctx.check(symmetric, || format!("Φ_{k} not symmetric on {args:?}"));
        }
    }
    for k in 1..=8 {
        for _ in 0..ctx.scaled(3) {
            let domain = pool.choose(&mut ctx.rng).expect("nonempty").clone();
            let codomain = pool.choose(&mut ctx.rng).expect("nonempty").clone();
            let f = ctx.map(&domain, &codomain);
            let a = ctx.element(&domain);
            let polarized = check_polarization(&f, &a, k)?;
            ctx.check(polarized, || format!("Φ_{k}(a,…,a) ≠ {k}!ψ_{k} at a={a}"));
        }
    }
    Ok(())
}

fn random_sum_of_evaluations(ctx: &mut Ctx, space: &FiniteSpace, n: usize) -> Result<LinearMap> {
    let mut m = vec![0i64; space.len()];
    for _ in 0..n {
        m[ctx.rng.gen_range(0..space.len())] += 1;
    }
    space.combination(&m)
}

/// `Σ_i σ_i^*` for random maps `σ_i : Y → X`.
fn random_sum_of_pullbacks(ctx: &mut Ctx, from: &FiniteSpace, to: &FiniteSpace, n: usize) -> Result<LinearMap> {
    let mut rows = vec![vec![scalar::zero(); from.len()]; to.len()];
    for _ in 0..n {
        for row in rows.iter_mut() {
            row[ctx.rng.gen_range(0..from.len())] += scalar::one();
        }
    }
    LinearMap::new(from.algebra(), to.algebra(), rows)
}

fn criterion_7(ctx: &mut Ctx) -> Result<()> {
    let exhaustive = Strategy::BasisExhaustive;
    for n in 1..=5usize {
        for m in 1..=(6 - n) {
            for _ in 0..ctx.config.level.scale() {
                let space = ctx.space(4);
                let f = random_sum_of_evaluations(ctx, &space, n)?;
                let g = random_sum_of_evaluations(ctx, &space, m)?;
                let ok = is_n_hom(&f, n, BOUND, exhaustive)?.passed()
                    && is_n_hom(&g, m, BOUND, exhaustive)?.passed()
                    && is_n_hom(&f.add(&g)?, n + m, BOUND, exhaustive)?.passed();
                ctx.check(ok, || format!("sum of a {n}- and a {m}-homomorphism on {} points", space.len()));
            }
        }
    }
    for n in 1..=6usize {
        for m in 1..=(6 / n) {
            for _ in 0..ctx.config.level.scale() {
                let x = ctx.space(4);
                let y = ctx.space(3);
                let f = random_sum_of_pullbacks(ctx, &x, &y, n)?;
                let g = random_sum_of_evaluations(ctx, &y, m)?;
                let gf = g.after(&f)?;
                let ok = is_n_hom(&f, n, BOUND, exhaustive)?.passed() && is_n_hom(&gf, n * m, BOUND, exhaustive)?.passed();
                ctx.check(ok, || format!("composition of a {n}- and a {m}-homomorphism"));
                for _ in 0..3 {
                    let a = ctx.element(x.algebra());
                    let direct = char_function(&gf, &a, SERIES_ORDER)?.series;
                    let via_log = map_coefficients(&g, &char_function(&f, &a, SERIES_ORDER)?.series.log()?)?.exp()?;
                    ctx.check(direct == via_log, || format!("R(g∘f) ≠ exp(g(log R(f))) at a={a}, n={n}, m={m}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_8(ctx: &mut Ctx) -> Result<()> {
    let mut instances: Vec<(Arc<Algebra>, LinearMap, usize)> = Vec::new();
    for points in 1..=3 {
        let space = point_space(points);
        for n in 1..=3 {
            for m in crate::homclass::lattice_shell(space.algebra(), n)? {
                let mult: Vec<i64> = m.coords().iter().map(|c| scalar::as_i64(c).expect("integral")).collect();
                instances.push((space.algebra().clone(), space.combination(&mult)?, n));
            }
        }
    }
    for dim in 2..=3 {
        let nil = truncated_polynomial_algebra(dim)?;
        let augmentation = LinearMap::new(
            &nil,
            &crate::algebra::ground_field(),
            vec![(0..dim).map(|i| if i == 0 { scalar::one() } else { scalar::zero() }).collect()],
        )?;
        for n in 1..=3 {
            instances.push((nil.clone(), integer_combination(std::slice::from_ref(&augmentation), &[n as i64])?, n));
        }
    }
    let samples = ctx.scaled(20);
    for (algebra, f, n) in instances {
        let power = sym_power_algebra(&algebra, n)?;
        let big_f = br_F_from_f(&power, &f, BOUND)?;
        let defect = multiplicativity_defect(&big_f)?;
        ctx.check(defect.is_none(), || format!("F not multiplicative on basis pair {defect:?} (n={n}, f={f:?})"));
        let back = br_f_from_F(&power, &big_f)?;
        ctx.check(back == f, || format!("f→F→f changed f (n={n})"));
        let again = br_F_from_f(&power, &back, BOUND)?;
        ctx.check(again == big_f, || format!("F→f→F changed F (n={n})"));
        for _ in 0..samples {
            let a = ctx.element(&algebra);
            let report = key_formula_with(&power, &big_f, &f, &a)?;
            ctx.check(report.holds, || format!("key formula fails at a={a} (n={n}): {:?} vs {:?}", report.lhs, report.rhs));
        }
    }
    Ok(())
}

fn signed_vectors(len: usize, max_norm: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().map(|c| c.abs()).sum();
                let left = max_norm - used;
                (-left..=left).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn criterion_9(ctx: &mut Ctx) -> Result<()> {
    let max_norm = if ctx.config.level == Level::Extended { 6 } else { 5 };
    for points in 1..=3 {
        let space = point_space(points);
        for m in signed_vectors(points, max_norm) {
            let (p, q) = signed_parts(&m);
            let f = space.combination(&m)?;
            let report = is_pq_hom(&f, p, q, BOUND.max(p + q + 2), Strategy::BasisExhaustive)?;
            ctx.check(report.passed(), || format!("m={m:?} is not recognised as {p}|{q}: {:?}", report.witnesses.first()));
            let a = ctx.invertible_point_function(space.algebra());
            let series = char_function(&f, &a, SERIES_ORDER)?.series;
            let component = component_series(&series, 0);
            match detect_degrees(&component, max_norm as usize, max_norm as usize) {
                Some((dp, dq)) => ctx.check(dp <= p && dq <= q && dp as i64 - dq as i64 == p as i64 - q as i64, || {
                    format!("m={m:?} a={a}: detected ({dp},{dq}) is not dominated by ({p},{q})")
                }),
                None => ctx.check(false, || format!("m={m:?} a={a}: no degrees detected")),
            }
            match reconstruct_rational(&component, p, q) {
                Ok(form) => ctx.check(form.certified_through >= SERIES_ORDER, || {
                    format!("m={m:?}: certified only through {}", form.certified_through)
                }),
                Err(e) => ctx.check(false, || format!("m={m:?} a={a}: reconstruction failed: {e}")),
            }
        }
    }
    Ok(())
}

fn criterion_10(ctx: &mut Ctx) -> Result<()> {
    let max_total = if ctx.config.level == Level::Extended { 5 } else { 4 };
    for points in 1..=3usize {
        let space = point_space(points);
        for p in 0..=max_total {
            for q in 0..=(max_total - p) {
                let sym = enumerate_sym_pq(&space, p, q)?;
                let members: usize = sym.classes.iter().map(|c| c.member_count).sum();
                ctx.check(members == points.pow((p + q) as u32), || format!("|X|={points} p={p} q={q}: {members} members"));
                if q == 0 {
                    let expected = scalar::binomial((points + p - 1) as u64, p as u64);
                    ctx.check(sym.classes.len() as u128 == expected, || {
                        format!("|X|={points} p={p}: {} classes, expected {expected}", sym.classes.len())
                    });
                }
                let well_defined = verify_ev_well_defined(&sym)?;
                ctx.check(well_defined, || format!("|X|={points} p={p} q={q}: ev not constant on classes"));
                for class in &sym.classes {
                    let report = verify_variety_equations(&class.representative, &space, BOUND, Strategy::BasisExhaustive)?;
                    ctx.check(report.passed(), || format!("class {} fails the variety equations", class.rendered));
                }
                if q == 0 && p >= 1 {
                    let mut homs: Vec<Vec<Vec<Scalar>>> =
                        enumerate_n_homs(&space, p, BOUND)?.iter().map(|f| f.matrix().to_vec()).collect();
                    let mut image: Vec<Vec<Vec<Scalar>>> = sym
                        .classes
                        .iter()
                        .map(|c| ev_map(&c.representative, &space).map(|f| f.matrix().to_vec()))
                        .collect::<Result<_>>()?;
                    homs.sort();
                    image.sort();
                    ctx.check(homs == image, || format!("|X|={points} n={p}: n-homomorphisms differ from the ev image"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_11(ctx: &mut Ctx) -> Result<()> {
    let space = point_space(2);
    let half = evaluation_hom(space.algebra(), "x")?.scale(&scalar::ratio(1, 2));
    ctx.check(!character(&half)?.is_integral(), || "(1/2)ev_x has an integral character".into());
    let report = is_pq_hom(&half, 1, 0, BOUND, Strategy::BasisExhaustive)?;
    ctx.check(!report.passed(), || "(1/2)ev_x passed as a homomorphism".into());
    let a = Element::from_ints(space.algebra(), &[2, 3])?;
    ctx.check(
        matches!(berezinian(&half, &a, BerezinianMethod::Reconstruction), Err(Error::BerezinianUndefined(_))),
        || "Berezinian of (1/2)ev_x was computed".into(),
    );

    let base = function_algebra(&["x", "y"])?;
    let mut structure = base.structure().to_vec();
    structure[0][1][0] = scalar::one();
    let asymmetric = Algebra::new(base.labels().to_vec(), base.unit_coords().to_vec(), structure)?;
    ctx.check(!asymmetric.check_axioms().is_valid(), || "non-commutative constants accepted".into());
    let mut structure = base.structure().to_vec();
    structure[0][0][1] = scalar::one();
    let broken = Algebra::new(base.labels().to_vec(), base.unit_coords().to_vec(), structure)?;
    ctx.check(!broken.check_axioms().is_valid(), || "non-idempotent e_x accepted".into());

    let sqrt = char_function(&half, &Element::basis(space.algebra(), 0), SERIES_ORDER)?.series;
    let outcome = reconstruct_rational(&component_series(&sqrt, 0), 3, 3);
    ctx.check(matches!(outcome, Err(Error::TailInconsistent { .. })), || format!("√(1+z) reconstructed: {outcome:?}"));

    let mutant = SuiteConfig { mutation: Some(Mutation::PsiSign), ..ctx.config };
    let outcome = run_criterion(2, mutant);
    ctx.check(!outcome.passed, || "criterion 2 did not detect the ψ sign mutant".into());
    Ok(())
}

pub fn run_criterion(id: usize, config: SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let mut ctx = Ctx::new(id, config);
    let result = match id {
        1 => criterion_1(&mut ctx),
        2 => criterion_2(&mut ctx),
        3 => criterion_3(&mut ctx),
        4 => criterion_4(&mut ctx),
        5 => criterion_5(&mut ctx),
        6 => criterion_6(&mut ctx),
        7 => criterion_7(&mut ctx),
        8 => criterion_8(&mut ctx),
        9 => criterion_9(&mut ctx),
        10 => criterion_10(&mut ctx),
        11 => criterion_11(&mut ctx),
        _ => Err(Error::Input(format!("no criterion {id}"))),
    };
    if let Err(e) = result {
        ctx.fail(format!("error: {e}"));
    }
    CriterionOutcome {
        id,
        title: title(id),
        passed: ctx.failures.is_empty(),
        checks: ctx.checks,
        failures: ctx.failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn verify_all(config: SuiteConfig) -> SuiteReport {
    let outcomes: Vec<CriterionOutcome> = (1..=CRITERIA).map(|id| run_criterion(id, config)).collect();
    let failing: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    SuiteReport { config, passed: failing.is_empty(), failing, outcomes }
}
