//! The built-in sub-Gaussian input catalog: even-moment tables, the
//! domination certificate against Gaussian moments, and Hermite values.
//!
//! ```bash
//! cargo run -p chaos-bounds --example subgaussian_inputs
//! ```

use chaos_bounds::distributions::{
    builtin_inputs, check_subgaussian, gaussian_even_moment, hermite, MomentSequence,
};

fn main() {
    println!("{:<12} {:>10} {:>10} {:>10} {:>12}", "input", "m2", "m4", "m6", "subgaussian");
    for input in builtin_inputs() {
        let m = input.moments();
        let check = check_subgaussian(m);
        println!(
            "{:<12} {:>10.4} {:>10.4} {:>10.4} {:>12}",
            input.name(),
            m.even_moment(2).unwrap(),
            m.even_moment(4).unwrap(),
            m.even_moment(6).unwrap(),
            check.is_subgaussian
        );
    }

    let too_heavy = MomentSequence::new("heavy", vec![1.0, 4.0]).unwrap();
    let check = check_subgaussian(&too_heavy);
    println!(
        "\nm4 = 4 exceeds the Gaussian moment {}: certificate fails at index {:?}",
        gaussian_even_moment(2),
        check.first_failing
    );

    println!("\nmonic Hermite polynomials:");
    for k in 0..=4u32 {
        let values: Vec<String> = [-2.0, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|&x| format!("{:>8.2}", hermite(k, x)))
            .collect();
        println!("  H_{k}(x) on [-2..2]: {}", values.join(" "));
    }
}
