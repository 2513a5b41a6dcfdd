//! Linear projective resolutions of simple modules: multiplicities, the
//! resolution graph, verification of the complex and DOT output.

use zigzag::algebra::Algebra;
use zigzag::chebyshev::cheb_column;
use zigzag::field::Field;
use zigzag::graph::{build_named, Family};
use zigzag::resolution::{export_resolution_dot, global_dimension, resolve_simple, verify_complex};

fn show(name: &str, alg: &Algebra, i: usize, max: usize) -> zigzag::error::Result<()> {
    let g = alg.graph();
    let r = resolve_simple(alg, i, max)?;
    println!("{name}, S_{}: {}", g.label(i), r.status.name());
    for t in 0..r.graph.level_count() {
        println!("  level {t}: {:?}", r.graph.multiplicities(t, g.vertex_count()));
    }
    let v = verify_complex(&r.complex(), alg);
    println!("  d² = 0: {}, exact: {}, linear: {}, minimal: {}", v.dd_zero, v.exact, v.linear, v.minimal);
    Ok(())
}

fn main() -> zigzag::error::Result<()> {
    let a2 = Algebra::zigzag(build_named(Family::AffineA, 2)?);
    show("Z(~A2)", &a2, 0, 3)?;
    let cols = cheb_column(a2.graph(), &[], 0, 3)?;
    println!("  Chebyshev columns: {cols:?}");

    let d4 = Algebra::zigzag(build_named(Family::D, 4)?);
    show("Z(D4)", &d4, 0, 8)?;

    let a3 = Algebra::new(build_named(Family::A, 3)?, &[0], Field::Rational)?;
    show("Z^{1}(A3)", &a3, 2, 8)?;
    println!("  global dimension: {:?}", global_dimension(&a3, 12)?);

    let r = resolve_simple(&a2, 0, 2)?;
    println!("\n{}", export_resolution_dot(&r.graph, a2.graph()));
    Ok(())
}
