//! The moment-bound chain on a random sign form: enumeration never exceeds
//! the Gaussian comparison moment, which never exceeds the double-factorial
//! bound (2kM-1)!!·V^{2M}.
//!
//! ```bash
//! cargo run -p chaos-bounds --example moment_bounds
//! ```

use chaos_bounds::bounds::{borell_moment_bound, chaos_moment_bound};
use chaos_bounds::distributions::MomentSequence;
use chaos_bounds::moment::{exact_moment_by_expansion, exact_moment_rademacher};
use chaos_bounds::SymmetricMultilinearForm;

fn main() -> chaos_bounds::Result<()> {
    let form = SymmetricMultilinearForm::from_canonical(
        3,
        6,
        [
            (vec![1, 2, 3], 2.0),
            (vec![1, 4, 6], -3.0),
            (vec![2, 5, 6], 1.0),
            (vec![3, 4, 5], -1.0),
        ],
    )?;
    let k = form.degree() as u32;
    let v2 = form.v_squared();
    let gaussian = MomentSequence::gaussian(12);
    println!("k = {k}, n = {}, V² = {v2}", form.dimension());
    println!(
        "{:<6} {:>16} {:>18} {:>20} {:>20}",
        "2M", "E Z^2M", "E Z̄^2M", "(2kM-1)!!·V^2M", "Borell (q=2)"
    );
    for m in 1..=3u32 {
        let exact = exact_moment_rademacher(&form, 2 * m)?;
        let comparison = exact_moment_by_expansion(&form.abs(), &gaussian, 2 * m)?;
        let bound = chaos_moment_bound(k, m, v2).linear().unwrap();
        let borell = borell_moment_bound(k, f64::from(m), v2).linear().unwrap();
        println!("{:<6} {exact:>16.1} {comparison:>18.1} {bound:>20.3e} {borell:>20.3e}", 2 * m);
        assert!(exact <= comparison && comparison <= bound);
    }
    Ok(())
}
