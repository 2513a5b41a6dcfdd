//! Classifier verdicts with their notes, and the audit of the numerical
//! conditions behind them.

use zigzag::graph::{build_named, connected_graphs, Family};
use zigzag::structure::{classify, necessary_condition_audit};

fn main() -> zigzag::error::Result<()> {
    let cases = [
        (Family::A, 5, vec![]),
        (Family::A, 4, vec![0]),
        (Family::AffineA, 4, vec![]),
        (Family::D, 4, vec![1]),
        (Family::E, 6, vec![]),
    ];
    for (fam, n, c) in cases {
        let g = build_named(fam, n)?;
        let r = classify(&g, &c)?;
        let labels: Vec<usize> = c.iter().map(|&v| g.label(v)).collect();
        println!("{g} C={labels:?}: {:?}", r.flags());
        for (name, v) in [
            ("cellular", &r.cellular),
            ("relative cellular", &r.relative_cellular),
            ("quasi-hereditary", &r.quasi_hereditary),
            ("Koszul", &r.koszul),
        ] {
            println!("  {name}: {}", v.note);
        }
    }

    let d4 = build_named(Family::D, 4)?;
    for c in [vec![0, 1], vec![0, 2], vec![0, 1, 2], vec![0, 1, 2, 3]] {
        let a = necessary_condition_audit(&d4, &c)?;
        let rel = a.checks.iter().find(|k| k.property == "relative_cellular").expect("present");
        println!("D4 C={:?}: {}", c.iter().map(|v| v + 1).collect::<Vec<_>>(), rel.detail);
    }

    let mut total = 0;
    let mut bad = 0;
    for n in 1..=4 {
        for g in connected_graphs(n) {
            for mask in 0..1u32 << n {
                let c: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                total += 1;
                bad += necessary_condition_audit(&g, &c)?.inconsistencies;
            }
        }
    }
    println!("audited {total} algebras on at most 4 vertices, {bad} inconsistencies");
    Ok(())
}
