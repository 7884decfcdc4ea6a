//! Position-use weights of the destabilising and stabilising cycles in the
//! constant coefficient of the forced order-4 canonical pattern, split by
//! forcing power.

use tipforge::io::weights_to_text;
use tipforge::{canonical_pattern, coefficient_terms, weight_matrices, Grouping};

fn main() {
    let pattern = canonical_pattern(4);
    println!("pattern: {}\n", pattern);

    let terms = coefficient_terms(&pattern, 0);
    let tipping = terms.iter().filter(|t| t.sign < 0).count();
    println!(
        "constant coefficient: {} terms, {} of them destabilising",
        terms.len(),
        tipping
    );

    for power in (0..=4).rev() {
        let group: Vec<_> = terms.iter().filter(|t| t.sigma_power == power).collect();
        if group.is_empty() {
            continue;
        }
        let negatives = group.iter().filter(|t| t.sign < 0).count();
        println!(
            "\nforcing power {}: {} terms, {} destabilising",
            power,
            group.len(),
            negatives
        );
        let w = weight_matrices(&pattern, 0, Grouping::BySigmaPower(power));
        print!("{}", weights_to_text(&w, "weights:"));
    }
}
