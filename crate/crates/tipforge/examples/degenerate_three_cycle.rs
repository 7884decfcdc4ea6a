//! A pure rotational feedback loop where the hollow-scaled matrix has a
//! complex maximal eigenvalue: no real forcing value lands the spectrum
//! exactly on the imaginary axis, and the report says so.

use tipforge::{omega, sigma_charpoly, stabilize, DenseMatrix, Tolerances};

fn main() -> tipforge::Result<()> {
    let matrix = DenseMatrix::from_rows(&[
        vec![-1.0, 1.0, 0.0],
        vec![0.0, -1.0, 1.0],
        vec![-1.0, 0.0, -1.0],
    ])?;
    let tol = Tolerances::default();

    let grid = sigma_charpoly(&matrix);
    println!("coefficient polynomials in the forcing variable:");
    for (i, p) in grid.coefficients().iter().enumerate() {
        println!("  x^{}: {}", i, p);
    }

    let om = omega(&grid, &tol)?;
    println!("\ncoefficient roots (candidate forcing values): {:?}", om.union);
    println!("largest candidate: {}", om.maximum.unwrap());

    let report = stabilize(&matrix, &tol)?;
    println!("\nverdict: {}", report.verdict);
    println!(
        "hollow-scaled maximal eigenvalue: {:.4} {:+.4}i (not real)",
        report.scaling_lambda_max.re, report.scaling_lambda_max.im
    );
    println!(
        "max real part of the forced spectrum at the candidate: {:.4} (> 0, so the candidate fails)",
        report.lambda_max_at_star.unwrap()
    );
    Ok(())
}
