//! Cell data for the type A zigzag algebras and their verification.

use zigzag::algebra::Algebra;
use zigzag::field::Field;
use zigzag::graph::{build_named, Family};
use zigzag::structure::{build_cell_datum, verify_cell_datum};

fn main() -> zigzag::error::Result<()> {
    let cases = [
        ("Z(A3)", Family::A, 3, vec![]),
        ("Z^{1}(A4)", Family::A, 4, vec![0]),
        ("Z(~A2)", Family::AffineA, 2, vec![]),
        ("Z(D4)", Family::D, 4, vec![]),
    ];
    for (name, fam, n, c) in cases {
        let alg = Algebra::new(build_named(fam, n)?, &c, Field::Rational)?;
        match build_cell_datum(&alg) {
            None => println!("{name}: no cell datum"),
            Some(d) => {
                let sizes: Vec<usize> = d.cells.iter().map(Vec::len).collect();
                let rep = verify_cell_datum(&alg, &d);
                println!(
                    "{name}: {} idempotent(s), cells {:?} ({} pairs, dim {}), axioms pass: {}",
                    d.idempotents.len(),
                    sizes,
                    d.pair_count(),
                    alg.dim(),
                    rep.passes()
                );
            }
        }
    }

    // dropping the dummy cell breaks the basis axiom
    let alg = Algebra::zigzag(build_named(Family::A, 3)?);
    let mut d = build_cell_datum(&alg).expect("type A");
    let k = 0;
    d.cells.remove(k);
    d.names.remove(k);
    d.epsilon.remove(k);
    for below in d.below.iter_mut() {
        below.remove(k);
        for row in below.iter_mut() {
            row.remove(k);
        }
    }
    let rep = verify_cell_datum(&alg, &d);
    println!("without the dummy: basis axiom {}; {}", rep.a_basis, rep.failures.join("; "));
    Ok(())
}
