//! Basis, multiplication and indecomposable projectives of Z(A_3) and of
//! its quotient with a condition at vertex 1.

use zigzag::algebra::{Algebra, BasisElem};
use zigzag::field::Field;
use zigzag::graph::{build_named, Family};

fn main() -> zigzag::error::Result<()> {
    let g = build_named(Family::A, 3)?;
    let z = Algebra::zigzag(g.clone());
    println!("dim Z(A3) = {}", z.dim());
    let basis: Vec<String> = z.basis().iter().map(|b| b.show(&g)).collect();
    println!("basis: {}", basis.join(", "));

    // a then b: a_{1→2}·a_{2→1} is the volume element at 1
    let up = BasisElem::Arrow(0, 1);
    let down = BasisElem::Arrow(1, 0);
    println!("{} · {} = {}", up.show(&g), down.show(&g), z.multiply(up, down)?.show(&g));
    println!("{} · {} = {}", up.show(&g), BasisElem::Arrow(1, 2).show(&g), z.multiply(up, BasisElem::Arrow(1, 2))?.show(&g));

    let zc = Algebra::new(g.clone(), &[0], Field::Rational)?;
    println!("dim Z^{{1}}(A3) = {}", zc.dim());
    println!("{} · {} = {}", up.show(&g), down.show(&g), zc.multiply(up, down)?.show(&g));

    for i in 0..3 {
        let p = zc.projective(i, 0);
        let layers: Vec<String> = p.basis.iter().zip(p.degrees()).map(|(b, d)| format!("{}[{d}]", b.show(&g))).collect();
        println!("P_{}: {}", g.label(i), layers.join(" "));
    }
    println!("graded Hom(P_1, P_2) = {}", zc.hom_qdim(0, 1));
    Ok(())
}
