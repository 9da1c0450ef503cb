//! The two exact moment oracles side by side: full enumeration over all 2ⁿ
//! sign assignments versus symbolic monomial expansion.
//!
//! ```bash
//! cargo run -p chaos-bounds --example exact_oracles
//! ```

use chaos_bounds::distributions::MomentSequence;
use chaos_bounds::moment::{exact_moment_by_expansion, exact_moment_rademacher, exact_tail};
use chaos_bounds::SymmetricMultilinearForm;

fn main() -> chaos_bounds::Result<()> {
    // Z = 2(ε₁ε₂ + ε₁ε₃ + ε₂ε₃): takes value 6 w.p. 1/4 and -2 w.p. 3/4.
    let form = SymmetricMultilinearForm::from_canonical(
        2,
        3,
        [(vec![1, 2], 1.0), (vec![1, 3], 1.0), (vec![2, 3], 1.0)],
    )?;
    let rademacher = MomentSequence::rademacher(12);
    let gaussian = MomentSequence::gaussian(12);

    println!("E Z² = k!·V² = {}", 2.0 * form.v_squared());
    println!("{:<8} {:>16} {:>16} {:>16}", "order", "enumeration", "expansion", "gaussian Z̄");
    for m in 1..=4u32 {
        let by_enum = exact_moment_rademacher(&form, 2 * m)?;
        let by_expansion = exact_moment_by_expansion(&form, &rademacher, 2 * m)?;
        let comparison = exact_moment_by_expansion(&form.abs(), &gaussian, 2 * m)?;
        println!("{:<8} {by_enum:>16} {by_expansion:>16} {comparison:>16.3}", 2 * m);
        assert!((by_enum - by_expansion).abs() <= 1e-9 * by_enum.max(1.0));
    }

    println!("\nexact tails:");
    for u in [0.0, 1.0, 2.0, 5.99, 6.0] {
        println!("  P(|Z| > {u:>5}) = {}", exact_tail(&form, u)?);
    }
    Ok(())
}
