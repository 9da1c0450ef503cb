//! Seeded tail simulation: empirical P(|Z| > u) under each built-in input
//! stays below the closed-form tail bound, as the sub-Gaussian replacement
//! result promises.
//!
//! ```bash
//! cargo run -p chaos-bounds --example monte_carlo_tails
//! ```

use chaos_bounds::bounds::chaos_tail_bound;
use chaos_bounds::distributions::builtin_inputs;
use chaos_bounds::montecarlo::estimate_tail;
use chaos_bounds::SymmetricMultilinearForm;

fn main() -> chaos_bounds::Result<()> {
    let form = SymmetricMultilinearForm::from_canonical(
        2,
        5,
        [
            (vec![1, 2], 1.0),
            (vec![1, 4], -1.0),
            (vec![2, 5], 2.0),
            (vec![3, 4], 1.0),
        ],
    )?;
    let k = form.degree() as u32;
    let n = form.dimension();
    let v2 = form.v_squared();
    let seed = 2024;
    let samples = 100_000;

    println!("k = {k}, n = {n}, V² = {v2}, {samples} draws, seed {seed}");
    for input in builtin_inputs() {
        println!("\ninputs: {}", input.name());
        println!("{:<8} {:>10} {:>12} {:>12}", "u", "point", "5·SE", "bound");
        let inputs = vec![input.clone(); n];
        for u in [1.0, 4.0, 8.0, 12.0] {
            let est = estimate_tail(&form, &inputs, u, samples, seed)?;
            let bound = chaos_tail_bound(u, k, v2, None);
            assert!(bound >= est.point - 5.0 * est.std_error);
            println!(
                "{u:<8.2} {:>10.5} {:>12.5} {:>12.5}",
                est.point,
                5.0 * est.std_error,
                bound
            );
        }
    }
    Ok(())
}
