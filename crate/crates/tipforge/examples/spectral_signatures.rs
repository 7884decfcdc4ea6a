//! Intrinsic spectral signatures: every sign pattern gets an eigenvalue
//! multiset from the block companion of its weight-matrix polynomial, with
//! no numeric entries involved.

use tipforge::io::parse_pattern;
use tipforge::{canonical_pattern, spectral_signature, SignatureMode, Tolerances};

fn main() -> tipforge::Result<()> {
    let tol = Tolerances::default();

    println!("2x2 patterns, plain mode:");
    for text in ["--;--", "-+;--", "+-;--", "-0;--"] {
        let sig = spectral_signature(&parse_pattern(text)?, SignatureMode::Plain, &tol)?;
        println!("  {:6}  max real part {:+.4}", text, sig.lambda_max);
    }

    println!("\ncanonical patterns, plain mode:");
    for n in [3usize, 4, 5] {
        let sig = spectral_signature(&canonical_pattern(n), SignatureMode::Plain, &tol)?;
        println!(
            "  order {}: {} eigenvalues, max real part {:+.4}",
            n,
            sig.spectrum.len(),
            sig.lambda_max
        );
    }

    // Hollow-scaled mode drops the diagonal first, the monic form the
    // scaling route induces.
    let sig = spectral_signature(&canonical_pattern(4), SignatureMode::HollowScaled, &tol)?;
    println!(
        "\ncanonical order 4, hollow-scaled mode: {} eigenvalues, max real part {:+.4}",
        sig.spectrum.len(),
        sig.lambda_max
    );
    println!("spectrum:");
    for z in sig.spectrum.values() {
        println!("  {:+.6} {:+.6}i", z.re, z.im);
    }
    Ok(())
}
