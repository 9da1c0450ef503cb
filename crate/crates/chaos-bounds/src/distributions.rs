//! Sub-Gaussian input distributions, Hermite polynomials, and the
//! constant-coefficient example whose normalized form converges to
//! V·H_k(η).
//!
//! A symmetric random variable ξ is sub-Gaussian here when every even
//! moment is dominated by the standard normal's: E ξ^{2m} ≤ (2m-1)!!
//! (odd moments vanish by symmetry). Moment sequences store the even
//! moments m₂, m₄, …, m_{2R}; the default catalog length is R = 12.

use rand::{Rng, RngExt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::form::{factorial, SymmetricMultilinearForm};

pub const DEFAULT_MOMENT_COUNT: usize = 12;

/// Total coordinate draws allowed in one `limit_comparison` call.
const SAMPLING_BUDGET: u128 = 4_000_000_000;

/// Even moments m₂, m₄, …, m_{2R} of a symmetric random variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    label: String,
    even_moments: Vec<f64>,
}

/// (2m-1)!! as f64; the 2m-th moment of a standard normal.
pub fn gaussian_even_moment(m: usize) -> f64 {
    (1..=m).map(|i| (2 * i - 1) as f64).product()
}

impl MomentSequence {
    pub fn new(label: impl Into<String>, even_moments: Vec<f64>) -> Result<Self> {
        if even_moments.iter().any(|m| !m.is_finite() || *m < 0.0) {
            return Err(Error::BadMeasure);
        }
        Ok(Self {
            label: label.into(),
            even_moments,
        })
    }

    /// All even moments equal to 1: the square of the variable is
    /// almost surely 1.
    pub fn rademacher(count: usize) -> Self {
        Self {
            label: "rademacher".into(),
            even_moments: vec![1.0; count],
        }
    }

    /// m_{2m} = (2m-1)!!, the equality case of the sub-Gaussian check.
    pub fn gaussian(count: usize) -> Self {
        Self {
            label: "gaussian".into(),
            even_moments: (1..=count).map(gaussian_even_moment).collect(),
        }
    }

    /// Uniform on [-√3, √3] (unit variance): m_{2m} = 3^m / (2m+1).
    pub fn uniform_sqrt3(count: usize) -> Self {
        Self {
            label: "uniform".into(),
            even_moments: (1..=count)
                .map(|m| 3f64.powi(m as i32) / (2 * m + 1) as f64)
                .collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// m at requested even order (order = 2m); None past the stored range
    /// or at odd order.
    pub fn even_moment(&self, order: u32) -> Option<f64> {
        if order == 0 {
            return Some(1.0);
        }
        if order % 2 == 1 {
            return None;
        }
        self.even_moments.get((order / 2 - 1) as usize).copied()
    }

    /// Largest even order the sequence covers.
    pub fn max_even_order(&self) -> u32 {
        2 * self.even_moments.len() as u32
    }

    pub fn even_moments(&self) -> &[f64] {
        &self.even_moments
    }

    /// True when the sequence certifies ξ² ≡ 1, so exponents may be
    /// reduced modulo 2 during expansion. Requires at least m₂ and m₄:
    /// m₂ = m₄ = 1 forces Var(ξ²) = 0, and then every even moment is 1.
    pub fn all_even_moments_are_one(&self) -> bool {
        self.even_moments.len() >= 2 && self.even_moments.iter().all(|m| *m == 1.0)
    }
}

/// Result of the sub-Gaussian certificate: the first m with
/// m_{2m} > (2m-1)!!, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubGaussianCheck {
    pub is_subgaussian: bool,
    /// 1-based moment index m of the first failure.
    pub first_failing: Option<usize>,
}

/// Check m_{2m} ≤ (2m-1)!! for every provided m.
pub fn check_subgaussian(moments: &MomentSequence) -> SubGaussianCheck {
    for (i, &m2m) in moments.even_moments.iter().enumerate() {
        if m2m > gaussian_even_moment(i + 1) {
            return SubGaussianCheck {
                is_subgaussian: false,
                first_failing: Some(i + 1),
            };
        }
    }
    SubGaussianCheck {
        is_subgaussian: true,
        first_failing: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SamplerKind {
    Rademacher,
    Gaussian,
    UniformSqrt3,
}

/// A symmetric input distribution: its even-moment sequence plus a
/// deterministic sampler for seeded simulation.
#[derive(Debug, Clone)]
pub struct SubGaussianInput {
    moments: MomentSequence,
    kind: SamplerKind,
}

impl SubGaussianInput {
    pub fn rademacher() -> Self {
        Self {
            moments: MomentSequence::rademacher(DEFAULT_MOMENT_COUNT),
            kind: SamplerKind::Rademacher,
        }
    }

    pub fn gaussian() -> Self {
        Self {
            moments: MomentSequence::gaussian(DEFAULT_MOMENT_COUNT),
            kind: SamplerKind::Gaussian,
        }
    }

    pub fn uniform_sqrt3() -> Self {
        Self {
            moments: MomentSequence::uniform_sqrt3(DEFAULT_MOMENT_COUNT),
            kind: SamplerKind::UniformSqrt3,
        }
    }

    /// Catalog used by the CLI and the verification suites.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "rademacher" => Some(Self::rademacher()),
            "gaussian" => Some(Self::gaussian()),
            "uniform" | "uniform_sqrt3" => Some(Self::uniform_sqrt3()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        self.moments.label()
    }

    pub fn moments(&self) -> &MomentSequence {
        &self.moments
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            SamplerKind::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            SamplerKind::Gaussian => rng.sample(StandardNormal),
            SamplerKind::UniformSqrt3 => {
                (2.0 * rng.random::<f64>() - 1.0) * 3f64.sqrt()
            }
        }
    }
}

/// Built-in sub-Gaussian inputs: Rademacher, standard Gaussian, and the
/// unit-variance symmetric uniform.
pub fn builtin_inputs() -> Vec<SubGaussianInput> {
    vec![
        SubGaussianInput::rademacher(),
        SubGaussianInput::gaussian(),
        SubGaussianInput::uniform_sqrt3(),
    ]
}

/// Probabilists' Hermite polynomial with leading coefficient 1:
/// H₀ = 1, H₁ = x, H_{k+1} = x·H_k − k·H_{k−1}.
pub fn hermite(k: u32, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for i in 1..k {
        let next = x * cur - f64::from(i) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The constant-coefficient form a ≡ V/√(n(n−1)⋯(n−k+1)) on every distinct
/// tuple; its V² equals the given V² since there are n(n−1)⋯(n−k+1)
/// ordered tuples.
pub fn sharpness_form(k: usize, n: usize, v: f64) -> Result<SymmetricMultilinearForm> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    if n < k {
        return Err(Error::DimensionBelowDegree { k, n });
    }
    let falling: f64 = (0..k).map(|i| (n - i) as f64).product();
    let coeff = v / falling.sqrt();
    let mut entries = Vec::new();
    for_each_combination(n, k, &mut |key| entries.push((key.to_vec(), coeff)));
    SymmetricMultilinearForm::from_canonical(k, n, entries)
}

/// e_k(values) through Newton's identities; the complete constant form
/// evaluates as k!·c·e_k, which keeps the sharpness demo at O(nk) per draw.
pub(crate) fn elementary_symmetric(values: &[f64], k: usize) -> f64 {
    let mut power_sums = vec![0.0; k + 1];
    for (i, p) in power_sums.iter_mut().enumerate().skip(1) {
        *p = values.iter().map(|x| x.powi(i as i32)).sum();
    }
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for m in 1..=k {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for i in 1..=m {
            acc += sign * e[m - i] * power_sums[i];
            sign = -sign;
        }
        e[m] = acc / m as f64;
    }
    e[k]
}

/// Per-n empirical distance between the normalized form and its limit law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDistanceRow {
    pub n: usize,
    pub ks_distance: f64,
    pub samples: usize,
}

/// Sample the constant-coefficient degree-k form at each n under random
/// signs, sample V·H_k(η) under a standard normal, and report the empirical
/// Kolmogorov–Smirnov distance per n. Descriptive: the distance is expected
/// to shrink along an increasing n list, with no asserted rate.
pub fn limit_comparison(
    k: usize,
    n_list: &[usize],
    v: f64,
    sample_count: usize,
    seed: u64,
) -> Result<Vec<LimitDistanceRow>> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let requested: u128 = n_list
        .iter()
        .map(|&n| (n as u128 + 1) * sample_count as u128)
        .sum();
    if requested > SAMPLING_BUDGET {
        return Err(Error::SamplingBudget {
            requested,
            budget: SAMPLING_BUDGET,
        });
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n < k {
            return Err(Error::DimensionBelowDegree { k, n });
        }
        let falling: f64 = (0..k).map(|i| (n - i) as f64).product();
        let coeff = v / falling.sqrt();
        let kfact = factorial(k);
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );

        let mut signs = vec![0.0f64; n];
        let mut form_samples = Vec::with_capacity(sample_count);
        for _ in 0..sample_count {
            for s in signs.iter_mut() {
                *s = if rng.random::<bool>() { 1.0 } else { -1.0 };
            }
            form_samples.push(kfact * coeff * elementary_symmetric(&signs, k));
        }
        let mut limit_samples = Vec::with_capacity(sample_count);
        for _ in 0..sample_count {
            let eta: f64 = rng.sample(StandardNormal);
            limit_samples.push(v * hermite(k as u32, eta));
        }
        rows.push(LimitDistanceRow {
            n,
            ks_distance: ks_distance(&form_samples, &limit_samples),
            samples: sample_count,
        });
    }
    Ok(rows)
}

/// Two-sample Kolmogorov–Smirnov distance sup |F_a − F_b|.
pub fn ks_distance(sample_a: &[f64], sample_b: &[f64]) -> f64 {
    let mut a = sample_a.to_vec();
    let mut b = sample_b.to_vec();
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut dist: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        dist = dist.max((i as f64 / na - j as f64 / nb).abs());
    }
    dist
}

/// Calls `f` on every strictly increasing k-tuple over 1..=n.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(n: u32, k: usize, start: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let remaining = (k - cur.len()) as u32;
        for j in start..=(n - remaining + 1) {
            cur.push(j);
            rec(n, k, j + 1, cur, f);
            cur.pop();
        }
    }
    if k == 0 || k > n {
        return;
    }
    rec(n as u32, k, 1, &mut Vec::with_capacity(k), f);
}
