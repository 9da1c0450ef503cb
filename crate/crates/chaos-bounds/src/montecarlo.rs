//! Seeded sampling of Z under arbitrary per-coordinate inputs, for tail and
//! moment estimates where exact enumeration is out of budget.
//!
//! Draws are fully deterministic given the seed: one ChaCha stream per
//! call, coordinates drawn in index order, samples accumulated in draw
//! order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distributions::SubGaussianInput;
use crate::error::{Error, Result};
use crate::form::SymmetricMultilinearForm;

/// Coordinate draws allowed per call.
const SAMPLING_BUDGET: u128 = 4_000_000_000;

/// Empirical tail probability with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub u: f64,
    pub point: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// `count` independent draws of Z with coordinate j distributed as
/// `inputs[j]`.
pub fn sample_z(
    form: &SymmetricMultilinearForm,
    inputs: &[SubGaussianInput],
    count: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let n = form.dimension();
    if inputs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: inputs.len(),
        });
    }
    let requested = n as u128 * count as u128;
    if requested > SAMPLING_BUDGET {
        return Err(Error::SamplingBudget {
            requested,
            budget: SAMPLING_BUDGET,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0.0f64; n];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        for (slot, input) in values.iter_mut().zip(inputs) {
            *slot = input.draw(&mut rng);
        }
        out.push(form.evaluate_at(&values)?);
    }
    Ok(out)
}

/// Empirical P(|Z| > u) from `count` seeded draws.
pub fn estimate_tail(
    form: &SymmetricMultilinearForm,
    inputs: &[SubGaussianInput],
    u: f64,
    count: usize,
    seed: u64,
) -> Result<TailEstimate> {
    let samples = sample_z(form, inputs, count, seed)?;
    let hits = samples.iter().filter(|z| z.abs() > u).count();
    let point = hits as f64 / count as f64;
    Ok(TailEstimate {
        u,
        point,
        std_error: (point * (1.0 - point) / count as f64).sqrt(),
        samples: count,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::chaos_tail_bound;
    use crate::moment::exact_tail;

    fn all_pairs_n3() -> SymmetricMultilinearForm {
        SymmetricMultilinearForm::from_canonical(
            2,
            3,
            [(vec![1, 2], 1.0), (vec![1, 3], 1.0), (vec![2, 3], 1.0)],
        )
        .unwrap()
    }

    fn uniform_inputs(input: SubGaussianInput, n: usize) -> Vec<SubGaussianInput> {
        vec![input; n]
    }

    #[test]
    fn identical_seeds_reproduce_bitwise() {
        let form = all_pairs_n3();
        let inputs = uniform_inputs(SubGaussianInput::gaussian(), 3);
        let a = sample_z(&form, &inputs, 500, 99).unwrap();
        let b = sample_z(&form, &inputs, 500, 99).unwrap();
        assert_eq!(a, b);
        let t1 = estimate_tail(&form, &inputs, 1.5, 2000, 7).unwrap();
        let t2 = estimate_tail(&form, &inputs, 1.5, 2000, 7).unwrap();
        assert_eq!(t1, t2);
        let t3 = estimate_tail(&form, &inputs, 1.5, 2000, 8).unwrap();
        assert_ne!(t1.point, t3.point);
    }

    #[test]
    fn rademacher_tail_matches_enumeration() {
        let form = all_pairs_n3();
        let inputs = uniform_inputs(SubGaussianInput::rademacher(), 3);
        let est = estimate_tail(&form, &inputs, 2.0, 100_000, 123).unwrap();
        let exact = exact_tail(&form, 2.0).unwrap();
        assert_eq!(exact, 0.25);
        assert!(
            (est.point - exact).abs() <= 5.0 * est.std_error,
            "point {} exact {exact} se {}",
            est.point,
            est.std_error
        );
    }

    #[test]
    fn tail_estimate_boundaries() {
        let form = all_pairs_n3();
        let inputs = uniform_inputs(SubGaussianInput::rademacher(), 3);
        let below = estimate_tail(&form, &inputs, -0.5, 1000, 1).unwrap();
        assert_eq!(below.point, 1.0);
        let above = estimate_tail(&form, &inputs, form.sup_bound(), 1000, 1).unwrap();
        assert_eq!(above.point, 0.0);
        assert_eq!(above.std_error, 0.0);
    }

    #[test]
    fn degree_one_gaussian_second_moment() {
        let form = SymmetricMultilinearForm::from_canonical(
            1,
            4,
            [(vec![1], 0.5), (vec![2], -1.0), (vec![3], 2.0), (vec![4], 0.25)],
        )
        .unwrap();
        let inputs = uniform_inputs(SubGaussianInput::gaussian(), 4);
        let samples = sample_z(&form, &inputs, 200_000, 31).unwrap();
        let count = samples.len() as f64;

        let mean = samples.iter().sum::<f64>() / count;
        let var = samples.iter().map(|z| (z - mean) * (z - mean)).sum::<f64>() / (count - 1.0);
        let se_mean = (var / count).sqrt();
        assert!(mean.abs() <= 5.0 * se_mean, "mean {mean} se {se_mean}");

        let sq_mean = samples.iter().map(|z| z * z).sum::<f64>() / count;
        let sq_var = samples
            .iter()
            .map(|z| (z * z - sq_mean) * (z * z - sq_mean))
            .sum::<f64>()
            / (count - 1.0);
        let se_sq = (sq_var / count).sqrt();
        let v2 = form.v_squared();
        assert!(
            (sq_mean - v2).abs() <= 5.0 * se_sq,
            "EZ² est {sq_mean}, want {v2}, se {se_sq}"
        );
    }

    #[test]
    fn tail_bound_dominates_sampled_tails() {
        let form = all_pairs_n3();
        let v2 = form.v_squared();
        for input in crate::distributions::builtin_inputs() {
            let inputs = uniform_inputs(input, 3);
            for u in [0.5, 2.0, 4.0] {
                let est = estimate_tail(&form, &inputs, u, 50_000, 17).unwrap();
                let bound = chaos_tail_bound(u, 2, v2, None);
                assert!(
                    bound >= est.point - 5.0 * est.std_error,
                    "u={u}: bound {bound} point {} se {}",
                    est.point,
                    est.std_error
                );
            }
        }
    }

    #[test]
    fn input_length_must_match_dimension() {
        let form = all_pairs_n3();
        let inputs = uniform_inputs(SubGaussianInput::rademacher(), 2);
        assert!(matches!(
            sample_z(&form, &inputs, 10, 0),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn sampling_budget_is_enforced() {
        let form = all_pairs_n3();
        let inputs = uniform_inputs(SubGaussianInput::rademacher(), 3);
        assert!(matches!(
            sample_z(&form, &inputs, usize::MAX / 2, 0),
            Err(Error::SamplingBudget { .. })
        ));
    }
}
