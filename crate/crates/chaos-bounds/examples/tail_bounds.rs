//! Exact tails against the closed-form tail bound
//! min(1, A(k)·exp(-½ (u/V)^{2/k})), and the sharper one-sided Hoeffding
//! bound in the degree-1 case.
//!
//! ```bash
//! cargo run -p chaos-bounds --example tail_bounds
//! ```

use chaos_bounds::bounds::{chaos_tail_bound, hoeffding_tail_bound, tail_prefactor};
use chaos_bounds::moment::exact_tail;
use chaos_bounds::SymmetricMultilinearForm;

fn main() -> chaos_bounds::Result<()> {
    let pair = SymmetricMultilinearForm::from_canonical(
        2,
        4,
        [(vec![1, 2], 1.0), (vec![2, 3], -2.0), (vec![3, 4], 1.0), (vec![1, 4], 1.0)],
    )?;
    let k = pair.degree() as u32;
    let v2 = pair.v_squared();
    println!("degree {k}, V² = {v2}, prefactor A(k) = {:.4}", tail_prefactor(k));
    println!("{:<8} {:>12} {:>14}", "u", "P(|Z|>u)", "tail bound");
    // The bound is clamped at 1 until the large-deviation regime; run the
    // grid past the support (where the exact tail is 0) to show the decay.
    let sup = pair.sup_bound();
    for step in 0..=8 {
        let u = 4.0 * sup * f64::from(step) / 8.0;
        let tail = exact_tail(&pair, u)?;
        let bound = chaos_tail_bound(u, k, v2, None);
        assert!(bound >= tail);
        println!("{u:<8.3} {tail:>12.5} {bound:>14.5}");
    }

    let line = SymmetricMultilinearForm::from_canonical(
        1,
        5,
        (1..=5).map(|j| (vec![j], f64::from(j))).collect::<Vec<_>>(),
    )?;
    let v2 = line.v_squared();
    println!("\ndegree 1, V² = {v2}: one-sided Hoeffding vs the two-sided bound");
    println!("{:<8} {:>12} {:>14} {:>14}", "u", "P(|Z|>u)", "hoeffding", "tail bound");
    for step in 1..=5 {
        let u = f64::from(step) * v2.sqrt();
        let tail = exact_tail(&line, u)?;
        println!(
            "{u:<8.3} {tail:>12.5} {:>14.5} {:>14.5}",
            hoeffding_tail_bound(u, v2),
            chaos_tail_bound(u, 1, v2, None)
        );
    }
    Ok(())
}
