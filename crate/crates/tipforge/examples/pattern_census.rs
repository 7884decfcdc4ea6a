//! Exhaustively classify all 81 sign patterns of order 2 by their spectral
//! signature: which patterns are cospectral, which merely share the maximal
//! real part, and which are structurally the most stable.

use tipforge::{pattern_census, Tolerances};

fn main() -> tipforge::Result<()> {
    let result = pattern_census(2, &Tolerances::default(), 1)?;

    println!(
        "{} patterns -> {} cospectral classes, {} comaximal classes\n",
        result.pattern_count,
        result.cospectral_classes.len(),
        result.comaximal_classes.len()
    );

    println!("max real part   members");
    for class in &result.comaximal_classes {
        println!("{:+13.6}   {}", class.lambda_max, class.member_count);
    }

    println!(
        "\nsmallest achievable max real part: {:+.2}, attained by {} patterns:",
        result.minimum_lambda_max.value,
        result.minimum_lambda_max.members.len()
    );
    for member in &result.minimum_lambda_max.members {
        println!("  {}", member);
    }
    Ok(())
}
