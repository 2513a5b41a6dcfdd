//! Nonnegative integer factorizations C = DᵀD of Cartan matrices.

use zigzag::graded::ungraded_cartan;
use zigzag::graph::{build_named, Family};
use zigzag::structure::decomp_search;

fn main() -> zigzag::error::Result<()> {
    let cases = [
        ("Z(~A4)", Family::AffineA, 4, vec![]),
        ("Z(D4)", Family::D, 4, vec![]),
        ("Z^{0}(~A2)", Family::AffineA, 2, vec![0]),
        ("Z(A3)", Family::A, 3, vec![]),
    ];
    for (name, fam, n, c) in cases {
        let cm = ungraded_cartan(&build_named(fam, n)?, &c);
        let sols = decomp_search(&cm, None)?;
        println!("{name}: {} solution(s)", sols.len());
        for s in sols.iter().take(3) {
            println!("{}triangularizable: {}\n", s.d, s.triangularizable);
        }
    }
    Ok(())
}
