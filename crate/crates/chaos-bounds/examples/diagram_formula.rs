//! Pairing diagrams: enumeration, the (2N-1)!! counting identity, expected
//! products of Gaussian multilinear forms, and the embedded-form moments.
//!
//! ```bash
//! cargo run -p chaos-bounds --example diagram_formula
//! ```

use chaos_bounds::diagram::{
    chaos_moment_via_diagrams, count_diagrams, embed_form, enumerate_diagrams, expected_product,
    DiscreteKernel, RowLayout,
};
use chaos_bounds::SymmetricMultilinearForm;

fn main() -> chaos_bounds::Result<()> {
    let layout = RowLayout::new(vec![2, 2])?;
    println!("layout (2,2):");
    for (i, diagram) in enumerate_diagrams(&layout, true).enumerate() {
        let kind = if diagram.is_cross_row() { "cross-row" } else { "same-row" };
        println!("  diagram {i} ({kind}): {:?}", diagram.edges());
    }
    println!(
        "cross-row: {}, relaxed: {} = 3!!",
        count_diagrams(&layout, false),
        count_diagrams(&layout, true)
    );

    // Pairings of singleton rows reproduce the Gaussian moments.
    let atom = DiscreteKernel::unit_atom();
    println!("\nE η^2M from singleton-row pairings:");
    for m in 1..=4u32 {
        let copies = vec![atom.clone(); 2 * m as usize];
        println!("  E η^{} = {}", 2 * m, expected_product(&copies)?);
    }

    // Embedded sign form: the diagram sum equals the Gaussian comparison
    // moments computed by the expansion oracle.
    let form = SymmetricMultilinearForm::from_canonical(
        2,
        3,
        [(vec![1, 2], 1.0), (vec![1, 3], -2.0), (vec![2, 3], 1.0)],
    )?;
    let kernel = embed_form(&form, true);
    println!(
        "\nembedded form: σ² = {} (V² = {})",
        kernel.squared_norm(),
        form.v_squared()
    );
    for m in 1..=2u32 {
        println!(
            "  E (k!·J_k)^{} = {}",
            2 * m,
            chaos_moment_via_diagrams(&kernel, m)?
        );
    }
    Ok(())
}
