//! Closed-form moment and tail bounds for degree-k multilinear forms.
//!
//! For a degree-k form Z with variance constant V² (see [`crate::form`]):
//!
//! ```text
//! P(Z > u)    ≤ exp(-u² / 2V²)                     degree 1 (Hoeffding)
//! E Z^{2M}    ≤ 1·3·5⋯(2kM-1) · V^{2M}             moment bound
//! P(|Z| > u)  ≤ A(k) · exp(-½ (u/V)^{2/k})         tail bound
//! E|Z|^{2p}   ≤ (2p-1)^{kp} · (k! V²)^p            Borell, q = 2
//! ```
//!
//! The tail prefactor A(k) = 2√2·eᵏ is derived by optimizing the Markov
//! inequality over the moment order: with N = kM the double factorial obeys
//! (2N-1)!! ≤ √2·(2N/e)^N, choosing M = ⌊½(u/V)^{2/k}/k⌋ costs a factor eᵏ
//! from rounding M down, and a factor 2 covers ±Z. Values that would
//! overflow f64 are carried in natural-log space with a scale flag.

use crate::error::{Error, Result};

/// A nonnegative bound value, kept in log space once the linear value
/// overflows f64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Magnitude {
    Linear(f64),
    /// Natural logarithm of the value.
    LogScale(f64),
}

impl Magnitude {
    pub fn ln(&self) -> f64 {
        match *self {
            Magnitude::Linear(v) => v.ln(),
            Magnitude::LogScale(l) => l,
        }
    }

    /// Linear value when representable.
    pub fn linear(&self) -> Option<f64> {
        match *self {
            Magnitude::Linear(v) => Some(v),
            Magnitude::LogScale(_) => None,
        }
    }

    pub fn is_log_scale(&self) -> bool {
        matches!(self, Magnitude::LogScale(_))
    }

    /// Bound ≥ oracle − 10⁻⁹·max(1, |oracle|). A log-scale bound exceeds
    /// every f64 oracle by construction.
    pub fn dominates(&self, oracle: f64) -> bool {
        match *self {
            Magnitude::Linear(v) => v >= oracle - domination_tolerance(oracle),
            Magnitude::LogScale(_) => true,
        }
    }
}

/// Tie tolerance for domination checks: exactly-tight cases (k = 1, p = 1)
/// round by at most this much.
pub fn domination_tolerance(oracle: f64) -> f64 {
    1e-9 * oracle.abs().max(1.0)
}

/// 1·3·5⋯m for odd m, overflow-checked.
pub fn double_factorial_odd(m: u64) -> Result<u128> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenDoubleFactorialArgument { m });
    }
    let mut acc: u128 = 1;
    let mut i = 1u128;
    while i <= m as u128 {
        acc = acc
            .checked_mul(i)
            .ok_or(Error::DoubleFactorialOverflow { m })?;
        i += 2;
    }
    Ok(acc)
}

/// ln(1·3·5⋯m) for odd m; never overflows.
pub fn ln_double_factorial_odd(m: u64) -> Result<f64> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenDoubleFactorialArgument { m });
    }
    Ok((1..=m).step_by(2).map(|i| (i as f64).ln()).sum())
}

pub(crate) fn ln_factorial(k: u32) -> f64 {
    (1..=k).map(|i| f64::from(i).ln()).sum()
}

/// Exponent of the degree-1 bound: -½·u²/v2.
pub fn hoeffding_exponent(u: f64, v2: f64) -> f64 {
    -0.5 * (u * u / v2)
}

/// P(Z > u) ≤ exp(-u²/2V²) for a degree-1 form.
pub fn hoeffding_tail_bound(u: f64, v2: f64) -> f64 {
    hoeffding_exponent(u, v2).exp()
}

/// E Z^{2M} ≤ (2kM-1)!! · V^{2M}.
pub fn chaos_moment_bound(k: u32, m: u32, v2: f64) -> Magnitude {
    if m == 0 {
        return Magnitude::Linear(1.0);
    }
    if v2 == 0.0 {
        return Magnitude::Linear(0.0);
    }
    let df_arg = 2 * u64::from(k) * u64::from(m) - 1;
    if let Ok(df) = double_factorial_odd(df_arg) {
        let linear = df as f64 * v2.powi(m as i32);
        if linear.is_finite() {
            return Magnitude::Linear(linear);
        }
    }
    Magnitude::LogScale(ln_chaos_moment_bound(k, m, v2))
}

/// ln of the moment bound; valid for every (k, M).
pub fn ln_chaos_moment_bound(k: u32, m: u32, v2: f64) -> f64 {
    let df_arg = 2 * u64::from(k) * u64::from(m) - 1;
    ln_double_factorial_odd(df_arg).expect("odd argument") + f64::from(m) * v2.ln()
}

/// The explicit prefactor A(k) = 2√2·eᵏ of the two-sided tail bound.
pub fn tail_prefactor(k: u32) -> f64 {
    2.0 * std::f64::consts::SQRT_2 * f64::from(k).exp()
}

/// Exponent of the degree-k tail bound: -½ (u²/v2)^{1/k}. For k = 1 this is
/// bit-identical to [`hoeffding_exponent`] because pow(x, 1) = x exactly.
pub fn chaos_tail_exponent(u: f64, k: u32, v2: f64) -> f64 {
    -0.5 * (u * u / v2).powf(1.0 / f64::from(k))
}

/// P(|Z| > u) ≤ min(1, A · exp(-½ (u/V)^{2/k})); `prefactor` defaults to
/// [`tail_prefactor`].
pub fn chaos_tail_bound(u: f64, k: u32, v2: f64, prefactor: Option<f64>) -> f64 {
    let a = prefactor.unwrap_or_else(|| tail_prefactor(k));
    if u <= 0.0 {
        return a.min(1.0);
    }
    (a * chaos_tail_exponent(u, k, v2).exp()).min(1.0)
}

/// Borell's inequality at q = 2: E|Z|^{2p} ≤ (2p-1)^{kp} · (k! V²)^p.
pub fn borell_moment_bound(k: u32, p: f64, v2: f64) -> Magnitude {
    if v2 == 0.0 {
        return Magnitude::Linear(0.0);
    }
    let kfact: f64 = (1..=k).map(f64::from).product();
    let linear = (2.0 * p - 1.0).powf(f64::from(k) * p) * (kfact * v2).powf(p);
    if linear.is_finite() {
        Magnitude::Linear(linear)
    } else {
        Magnitude::LogScale(ln_borell_moment_bound(k, p, v2))
    }
}

/// ln of the Borell bound at q = 2.
pub fn ln_borell_moment_bound(k: u32, p: f64, v2: f64) -> f64 {
    f64::from(k) * p * (2.0 * p - 1.0).ln() + p * (ln_factorial(k) + v2.ln())
}

/// Both moment bounds at order 2M in log space, with their gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComparison {
    pub k: u32,
    pub m: u32,
    pub ln_chaos: f64,
    pub ln_borell: f64,
    /// ln(chaos bound) − ln(Borell bound); negative where the double
    /// factorial bound is sharper.
    pub log_ratio: f64,
}

/// Compare the double-factorial moment bound with Borell's (q = 2, p = M)
/// at order 2M.
pub fn compare_moment_bounds(k: u32, m: u32, v2: f64) -> BoundComparison {
    let ln_chaos = ln_chaos_moment_bound(k, m, v2);
    let ln_borell = ln_borell_moment_bound(k, f64::from(m), v2);
    BoundComparison {
        k,
        m,
        ln_chaos,
        ln_borell,
        log_ratio: ln_chaos - ln_borell,
    }
}

/// Outcome of checking (2N-1)!! ≤ √2·(2N/e)^N over N = 1..=n_max.
#[derive(Debug, Clone)]
pub struct StirlingCheck {
    /// Inequality holds for every checked N.
    pub holds: bool,
    /// Ratios (2N-1)!! / (2N/e)^N, increasing toward √2.
    pub ratios: Vec<f64>,
    pub monotone: bool,
    pub first_violation: Option<u32>,
}

/// The Stirling step behind the tail prefactor: (2N-1)!! ≤ √2·(2N/e)^N,
/// with the ratio increasing toward √2. Computed in log space.
pub fn stirling_double_factorial_check(n_max: u32) -> StirlingCheck {
    let mut ratios = Vec::with_capacity(n_max as usize);
    let mut holds = true;
    let mut first_violation = None;
    let mut ln_df = 0.0;
    for n in 1..=n_max {
        ln_df += f64::from(2 * n - 1).ln();
        let ln_envelope = f64::from(n) * ((2.0 * f64::from(n)).ln() - 1.0);
        let ln_ratio = ln_df - ln_envelope;
        if ln_ratio > 0.5 * std::f64::consts::LN_2 {
            holds = false;
            first_violation.get_or_insert(n);
        }
        ratios.push(ln_ratio.exp());
    }
    let monotone = ratios.windows(2).all(|w| w[1] > w[0]);
    StirlingCheck {
        holds,
        ratios,
        monotone,
        first_violation,
    }
}

/// A named bound next to the oracle value it must dominate.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bound_name: String,
    pub u_or_order: f64,
    pub bound_value: Magnitude,
    pub oracle_value: Option<f64>,
    /// Which oracle produced `oracle_value` (e.g. "enumeration").
    pub oracle: Option<String>,
    pub dominates: Option<bool>,
}

impl BoundReport {
    pub fn bound_only(name: &str, u_or_order: f64, bound_value: Magnitude) -> Self {
        Self {
            bound_name: name.to_string(),
            u_or_order,
            bound_value,
            oracle_value: None,
            oracle: None,
            dominates: None,
        }
    }

    pub fn with_oracle(
        name: &str,
        u_or_order: f64,
        bound_value: Magnitude,
        oracle_value: f64,
        oracle: &str,
    ) -> Self {
        Self {
            bound_name: name.to_string(),
            u_or_order,
            dominates: Some(bound_value.dominates(oracle_value)),
            bound_value,
            oracle_value: Some(oracle_value),
            oracle: Some(oracle.to_string()),
        }
    }
}
