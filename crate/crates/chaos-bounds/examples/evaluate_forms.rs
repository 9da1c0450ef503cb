//! Build symmetric multilinear forms, evaluate them on sign vectors, and
//! round-trip the JSON form document.
//!
//! ```bash
//! cargo run -p chaos-bounds --example evaluate_forms
//! ```

use chaos_bounds::{SignVector, SymmetricMultilinearForm};

fn main() -> chaos_bounds::Result<()> {
    // Raw coefficients on ordered tuples; symmetrization averages the
    // permutations, so (1,2)->2 with (2,1)->0 stores 1 on the sorted key.
    let form = SymmetricMultilinearForm::symmetrize(
        2,
        3,
        [
            (vec![1, 2], 2.0),
            (vec![2, 1], 0.0),
            (vec![1, 3], 1.0),
            (vec![3, 1], 1.0),
            (vec![2, 3], -1.0),
        ],
    )?;

    println!("degree k = {}, dimension n = {}", form.degree(), form.dimension());
    for (key, value) in form.coefficients() {
        println!("  a{key:?} = {value}");
    }
    println!("V² = {}", form.v_squared());
    println!("sup |Z| <= {}", form.sup_bound());

    for signs in [
        SignVector::new(vec![1, 1, 1])?,
        SignVector::new(vec![1, -1, 1])?,
        SignVector::new(vec![-1, -1, -1])?,
    ] {
        let z = form.evaluate(&signs)?;
        println!("Z{:?} = {z}", signs.values());
    }

    let text = form.to_json();
    println!("\nform document:\n{text}");
    let back = SymmetricMultilinearForm::from_json(&text)?;
    assert_eq!(back, form);
    println!("round-trip: ok");
    Ok(())
}
