//! Hereditary chains for leaf-condition type A algebras, and two ideals
//! that fail to be heredity ideals.

use zigzag::algebra::Algebra;
use zigzag::field::Field;
use zigzag::graph::{build_named, Family};
use zigzag::structure::qh::chain_from_sets;
use zigzag::structure::{build_hereditary_chain, verify_hereditary_chain};

fn main() -> zigzag::error::Result<()> {
    let alg = Algebra::new(build_named(Family::A, 3)?, &[0], Field::Rational)?;
    let g = alg.graph();
    let ch = build_hereditary_chain(&alg).expect("leaf condition");
    for (l, j) in ch.ideals.iter().enumerate() {
        let span: Vec<String> = j.iter().map(|b| b.show(g)).collect();
        println!("J_{} = span{{{}}}", l + 1, span.join(", "));
    }
    let rep = verify_hereditary_chain(&alg, &ch);
    println!("all links hereditary: {}", rep.passes());

    let za2 = Algebra::zigzag(build_named(Family::A, 2)?);
    let rep = verify_hereditary_chain(&za2, &chain_from_sets(&za2, vec![vec![0], vec![0, 1]]));
    println!("Z(A2), J_1 = R e_1 R: {}", rep.failures.join("; "));

    let aff = Algebra::new(build_named(Family::AffineA, 2)?, &[0], Field::Rational)?;
    let rep = verify_hereditary_chain(&aff, &chain_from_sets(&aff, vec![vec![0], vec![0, 1, 2]]));
    println!("Z^{{0}}(~A2), J_1 = R e_0 R: {}", rep.failures.join("; "));
    Ok(())
}
