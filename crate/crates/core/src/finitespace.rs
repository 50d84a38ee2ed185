//! Generalized symmetric powers `Sym^{p|q}(X)` of a finite set, their evaluation
//! maps `ℚ^X → ℚ`, and enumeration of n-homomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{evaluation_hom, function_algebra, integer_combination, Algebra, LinearMap};
use crate::error::{Error, Result};
use crate::homclass::{enumeration_budget, is_n_hom, is_pq_hom, HomTestReport, Strategy, Verdict};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug)]
pub struct FiniteSpace {
    points: Vec<String>,
    algebra: Arc<Algebra>,
    evaluations: Vec<LinearMap>,
}

impl FiniteSpace {
    pub fn new<S: AsRef<str>>(points: &[S]) -> Result<FiniteSpace> {
        let algebra = function_algebra(points)?;
        let evaluations = algebra
            .labels()
            .iter()
            .map(|l| evaluation_hom(&algebra, l))
            .collect::<Result<_>>()?;
        Ok(FiniteSpace { points: algebra.labels().to_vec(), algebra, evaluations })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `ℚ^X`.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// `Σ m_x ev_x`.
    pub fn combination(&self, multiplicities: &[i64]) -> Result<LinearMap> {
        integer_combination(&self.evaluations, multiplicities)
    }
}

/// Point indices; the first `p` slots positive, the last `q` negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedConfiguration {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl SignedConfiguration {
    /// `#positive(x) − #negative(x)` for each point.
    pub fn multiplicities(&self, points: usize) -> Vec<i64> {
        let mut m = vec![0i64; points];
        for &i in &self.positive {
            m[i] += 1;
        }
        for &i in &self.negative {
            m[i] -= 1;
        }
        m
    }

    pub fn render(&self, space: &FiniteSpace) -> String {
        let names = |v: &[usize]| v.iter().map(|&i| space.points[i].as_str()).collect::<Vec<_>>().join(",");
        format!("({}|{})", names(&self.positive), names(&self.negative))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymPQClass {
    #[serde(skip)]
    pub representative: SignedConfiguration,
    #[serde(rename = "representative")]
    pub rendered: String,
    pub member_count: usize,
}

#[derive(Clone, Debug)]
pub struct SymPQSpace {
    pub space: FiniteSpace,
    pub p: usize,
    pub q: usize,
    pub classes: Vec<SymPQClass>,
    /// Class index of every configuration, indexed by [`config_index`].
    pub class_of: Vec<usize>,
}

impl SymPQSpace {
    pub fn members(&self, class: usize) -> impl Iterator<Item = SignedConfiguration> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(i, _)| config_at(i, self.space.len(), self.p, self.q))
    }
}

fn decode(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for slot in (0..len).rev() {
        digits[slot] = index % base;
        index /= base;
    }
    digits
}

fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

/// Position of a configuration in the lexicographic order of `X^{p+q}`.
pub fn config_index(c: &SignedConfiguration, points: usize) -> usize {
    let digits: Vec<usize> = c.positive.iter().chain(&c.negative).copied().collect();
    encode(&digits, points)
}

fn config_at(index: usize, points: usize, p: usize, q: usize) -> SignedConfiguration {
    let mut digits = decode(index, points, p + q);
    let negative = digits.split_off(p);
    SignedConfiguration { positive: digits, negative }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so roots are lexicographic minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Equivalence closure of `X^{p+q}` under `S_p × S_q` and the cancellation move
/// at slots `p` and `p+q`.
pub fn enumerate_sym_pq(space: &FiniteSpace, p: usize, q: usize) -> Result<SymPQSpace> {
    let n = space.len();
    let total = (n as u128).checked_pow((p + q) as u32).unwrap_or(u128::MAX);
    let cap = enumeration_budget();
    if total > cap {
        return Err(Error::BudgetExceeded { required: total, cap });
    }
    let total = total as usize;
    let len = p + q;
    let mut uf = UnionFind::new(total);
    for index in 0..total {
        let digits = decode(index, n, len);
        for block in [0..p, p..len] {
            for s in block.start..block.end.saturating_sub(1) {
                let mut swapped = digits.clone();
                swapped.swap(s, s + 1);
                uf.union(index, encode(&swapped, n));
            }
        }
        if p > 0 && q > 0 && digits[p - 1] == digits[len - 1] {
            for z in 0..n {
                let mut moved = digits.clone();
                moved[p - 1] = z;
                moved[len - 1] = z;
                uf.union(index, encode(&moved, n));
            }
        }
    }
    let mut root_to_class = BTreeMap::new();
    let mut class_of = Vec::with_capacity(total);
    let mut counts = Vec::new();
    for index in 0..total {
        let root = uf.find(index);
        let next = root_to_class.len();
        let class = *root_to_class.entry(root).or_insert(next);
        if class == counts.len() {
            counts.push(0);
        }
        counts[class] += 1;
        class_of.push(class);
    }
    let classes = root_to_class
        .keys()
        .zip(counts)
        .map(|(&root, member_count)| {
            let representative = config_at(root, n, p, q);
            SymPQClass { rendered: representative.render(space), representative, member_count }
        })
        .collect();
    Ok(SymPQSpace { space: space.clone(), p, q, classes, class_of })
}

/// `a ↦ a(x_1)+…+a(x_p) − a(x_{p+1}) − … − a(x_{p+q})`.
pub fn ev_map(config: &SignedConfiguration, space: &FiniteSpace) -> Result<LinearMap> {
    space.combination(&config.multiplicities(space.len()))
}

/// True iff every member of every class yields the same functional as its representative.
pub fn verify_ev_well_defined(s: &SymPQSpace) -> Result<bool> {
    let reps: Vec<LinearMap> =
        s.classes.iter().map(|c| ev_map(&c.representative, &s.space)).collect::<Result<_>>()?;
    for (index, &class) in s.class_of.iter().enumerate() {
        let member = config_at(index, s.space.len(), s.p, s.q);
        if ev_map(&member, &s.space)? != reps[class] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_variety_equations(
    config: &SignedConfiguration,
    space: &FiniteSpace,
    bound: usize,
    strategy: Strategy,
) -> Result<HomTestReport> {
    is_pq_hom(&ev_map(config, space)?, config.positive.len(), config.negative.len(), bound, strategy)
}

fn multisets(points: usize, n: usize) -> Vec<Vec<i64>> {
    fn go(points: usize, left: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() + 1 == points {
            current.push(left as i64);
            out.push(current.clone());
            current.pop();
            return;
        }
        for m in (0..=left).rev() {
            current.push(m as i64);
            go(points, left - m, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(points, n, &mut Vec::new(), &mut out);
    out
}

/// All `Σ m_x ev_x` with `m_x ≥ 0`, `Σ m_x = n`; each is confirmed by `is_n_hom` at `bound`.
pub fn enumerate_n_homs(space: &FiniteSpace, n: usize, bound: usize) -> Result<Vec<LinearMap>> {
    let count = scalar::binomial((space.len() + n - 1) as u64, n as u64);
    let cap = enumeration_budget();
    if count > cap {
        return Err(Error::BudgetExceeded { required: count, cap });
    }
    let mut maps = Vec::with_capacity(count as usize);
    for m in multisets(space.len(), n) {
        let f = space.combination(&m)?;
        if !is_n_hom(&f, n, bound, Strategy::BasisExhaustive)?.passed() {
            return Err(Error::NotNHomomorphism(n));
        }
        maps.push(f);
    }
    Ok(maps)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSurvivor {
    pub trial: usize,
    /// `f(e_x)` for each point.
    #[serde(serialize_with = "crate::io::serialize_scalars")]
    pub values: Vec<Scalar>,
    pub report: HomTestReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub points: Vec<String>,
    pub p: usize,
    pub q: usize,
    pub trials: usize,
    pub seed: u64,
    pub bound: usize,
    pub image_size: usize,
    pub rejected_by_character: usize,
    pub rejected_by_hankel: usize,
    pub inside_image: Vec<ProbeSurvivor>,
    pub candidates: Vec<ProbeSurvivor>,
    pub summary: String,
    pub verdict: Verdict,
}

/// Derives the generator of one trial so every trial replays on its own.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Random values on the grid `{k/d : |k| ≤ p+q+1, d ∈ {1, 2}}`, integers three times as likely.
fn random_functional_values(rng: &mut ChaCha8Rng, points: usize, radius: i64) -> Vec<Scalar> {
    (0..points)
        .map(|_| {
            let numer = rng.gen_range(-radius..=radius);
            let denom = if rng.gen_range(0..4) == 0 { 2 } else { 1 };
            scalar::ratio(numer, denom)
        })
        .collect()
}

/// Samples functionals, keeps those passing the randomized p|q test and sorts them by
/// membership in the image of `ev`. Reports only; the verdict is always inconclusive.
pub fn open_question_probe(
    space: &FiniteSpace,
    p: usize,
    q: usize,
    trials: usize,
    seed: u64,
    bound: usize,
) -> Result<ProbeReport> {
    let sym = enumerate_sym_pq(space, p, q)?;
    let image: BTreeSet<Vec<Vec<Scalar>>> = sym
        .classes
        .iter()
        .map(|c| ev_map(&c.representative, space).map(|f| f.matrix().to_vec()))
        .collect::<Result<_>>()?;
    let radius = (p + q + 1) as i64;
    let target = scalar::int(p as i64 - q as i64);
    let mut report = ProbeReport {
        points: space.points().to_vec(),
        p,
        q,
        trials,
        seed,
        bound,
        image_size: image.len(),
        rejected_by_character: 0,
        rejected_by_hankel: 0,
        inside_image: Vec::new(),
        candidates: Vec::new(),
        summary: String::new(),
        verdict: Verdict::Inconclusive,
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let values = random_functional_values(&mut rng, space.len(), radius);
        let sum: Scalar = values.iter().sum();
        if sum != target {
            report.rejected_by_character += 1;
            continue;
        }
        let f = LinearMap::new(space.algebra(), &crate::algebra::ground_field(), vec![values.clone()])?;
        let strategy = Strategy::Randomized { samples: 8, seed: rng.gen(), require_certainty: false };
        let hom_report = is_pq_hom(&f, p, q, bound, strategy)?;
        if !hom_report.passed() {
            report.rejected_by_hankel += 1;
            continue;
        }
        let survivor = ProbeSurvivor { trial, values, report: hom_report };
        if image.contains(f.matrix()) {
            report.inside_image.push(survivor);
        } else {
            report.candidates.push(survivor);
        }
    }
    report.summary = if report.candidates.is_empty() {
        format!("no counterexample found; {} survivors all inside the ev image", report.inside_image.len())
    } else {
        format!("{} candidate functionals outside the ev image; replay each before drawing conclusions", report.candidates.len())
    };
    Ok(report)
}
