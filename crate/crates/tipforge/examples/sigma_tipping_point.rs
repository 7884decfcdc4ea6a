//! Locate the diagonal-forcing tipping point of a small interaction matrix
//! along both routes and confirm they agree.

use tipforge::{stabilize, DenseMatrix, Tolerances};

fn main() -> tipforge::Result<()> {
    // Mutualistic pair with self-limitation: stable once the diagonal is
    // scaled up enough.
    let matrix = DenseMatrix::from_rows(&[vec![-1.0, 2.0], vec![2.0, -1.0]])?;
    let tol = Tolerances::default();
    let report = stabilize(&matrix, &tol)?;

    println!("matrix:\n{}", matrix);
    println!("verdict: {}", report.verdict);
    println!(
        "tipping point via coefficient roots: {}",
        report.sigma_star_omega.unwrap()
    );
    println!(
        "tipping point via hollow scaling:    {}",
        report.sigma_star_scaling.unwrap()
    );
    println!(
        "route gap: {:.3e}",
        report.residuals.sigma_gap.unwrap()
    );
    println!(
        "max real part at the tipping point: {:.3e}",
        report.lambda_max_at_star.unwrap()
    );

    if let Some(breakdown) = &report.dominant_cycles {
        println!("\nfeedback contributions at the tipping point:");
        for term in &breakdown.terms {
            println!(
                "  sigma^{}: coefficient {:+}, contribution {:+}",
                term.power, term.coefficient, term.contribution
            );
        }
        println!("  total: {} (zero, the constant coefficient vanishes)", breakdown.total);
    }
    Ok(())
}
