//! Graded Cartan matrices, their determinants, cofactors and the gap
//! analysis of the inverse determinant.

use zigzag::algebra::Algebra;
use zigzag::graded::{cofactor_matrix, det, det_recursion_check, koszul_necessary_audit, max_gap, series_inverse};
use zigzag::graph::{build_named, Family};

fn main() -> zigzag::error::Result<()> {
    for (fam, n) in [(Family::A, 4), (Family::D, 5), (Family::E, 7), (Family::AffineA, 2), (Family::AffineD, 4)] {
        let g = build_named(fam, n)?;
        let c = Algebra::zigzag(g.clone()).graded_cartan();
        let d = det(&c);
        println!("{:5} det C_q = {d}   (q = 1: {})", g.to_string(), d.eval(1));
    }

    let d4 = Algebra::zigzag(build_named(Family::D, 4)?).graded_cartan();
    let adj = cofactor_matrix(&d4);
    println!("\ncofactor matrix of C_q(D4):");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| adj.get(i, j).to_string()).collect();
        println!("  {}", row.join(" | "));
    }

    let e7 = Algebra::zigzag(build_named(Family::E, 7)?);
    let inv = series_inverse(&det(&e7.graded_cartan()), 80)?;
    println!("\ngap of 1/det C_q(E7) = {}", max_gap(&inv, 60)?);
    let audit = koszul_necessary_audit(&e7, 100)?;
    println!("Koszul audit for E7: pass = {} ({})", audit.pass, audit.details);

    let g = build_named(Family::A, 3)?;
    let r = det_recursion_check(&g, &[0], 0)?;
    println!("\nA3, C = {{1}}: det = {}, with q² factor {}, without {}", r.lhs, r.rhs_corrected, r.rhs_literal);
    Ok(())
}
