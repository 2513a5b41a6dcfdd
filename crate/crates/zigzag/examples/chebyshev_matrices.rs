//! U_t^C(A) computed three ways, and the path count through a singleton
//! inflow that matches it.

use zigzag::chebyshev::{
    cheb_matrix_comp, cheb_matrix_mono, cheb_matrix_rec, cheb_u, count_paths_no_chosen_zigzag, find_singleton_inflow,
    first_vanishing,
};
use zigzag::graph::{build_named, Family};

fn main() -> zigzag::error::Result<()> {
    let u4 = cheb_u(4)?;
    let coeffs: Vec<String> = (0..=4).map(|k| u4.coeff(k).to_string()).collect();
    println!("U_4(X) coefficients from degree 0: {}", coeffs.join(" "));
    let g = build_named(Family::A, 4)?;
    let c = [0];
    for t in 2..=7 {
        let m = cheb_matrix_rec(&g, &c, t)?;
        assert_eq!(m, cheb_matrix_comp(&g, &c, t)?);
        assert_eq!(m, cheb_matrix_mono(&g, &c, t)?);
        println!("U_{t}^C(A), C = {{1}}:\n{m}");
    }

    let inflow = find_singleton_inflow(&g, &c).expect("a leaf condition admits an inflow");
    let labels: Vec<String> = inflow
        .choice
        .iter()
        .enumerate()
        .filter_map(|(v, w)| w.map(|w| format!("{}→{}", g.label(v), g.label(w))))
        .collect();
    println!("inflow: {}", labels.join(", "));
    let t = 5;
    let rec = cheb_matrix_rec(&g, &c, t as i64)?;
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(count_paths_no_chosen_zigzag(&g, &inflow, t, i, j) as i128, rec.get(i, j));
        }
    }
    println!("path counts agree with U_{t}^C(A)");

    for (fam, n) in [(Family::A, 5), (Family::D, 6), (Family::E, 6), (Family::E, 8)] {
        let g = build_named(fam, n)?;
        println!("{g}: U_t(A) first vanishes at t = {:?}", first_vanishing(&g, 40)?);
    }
    Ok(())
}
