//! Double-factorial moment bound versus Borell's inequality at q = 2: the
//! log ratio starts positive and turns (and stays) negative at large order.
//!
//! ```bash
//! cargo run -p chaos-bounds --example borell_comparison
//! ```

use chaos_bounds::bounds::compare_moment_bounds;

fn main() {
    for k in [1u32, 2, 3] {
        println!("k = {k}  (v² = 1)");
        println!("{:<6} {:>14} {:>14} {:>12}", "M", "ln chaos", "ln Borell", "log ratio");
        let mut crossover = None;
        for m in 1..=40u32 {
            let cmp = compare_moment_bounds(k, m, 1.0);
            if crossover.is_none() && cmp.log_ratio < 0.0 {
                crossover = Some(m);
            }
            if m <= 6 || m % 10 == 0 {
                println!(
                    "{m:<6} {:>14.4} {:>14.4} {:>12.4}",
                    cmp.ln_chaos, cmp.ln_borell, cmp.log_ratio
                );
            }
        }
        match crossover {
            Some(m) => println!("double-factorial bound is sharper from M = {m} on\n"),
            None => println!("no crossover up to M = 40\n"),
        }
    }
}
