//! Cell data, hereditary chains, decomposition matrices and the classifier.

pub mod cell;
pub mod classify;
pub mod decomp;
pub mod qh;

pub use cell::{build_cell_datum, verify_cell_datum, CellDatum, CellReport};
pub use classify::{classify, necessary_condition_audit, AuditReport, ClassificationReport};
pub use decomp::{decomp_search, DecompSolution};
pub use qh::{build_hereditary_chain, verify_hereditary_chain, ChainReport, HereditaryChain};

use num_traits::Zero;

use crate::field::{Field, Scalar};

/// A subspace of coordinate space kept in reduced echelon form, for
/// repeated membership tests.
#[derive(Clone, Debug)]
pub(crate) struct Subspace {
    field: Field,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn new(field: Field, gens: impl IntoIterator<Item = Vec<Scalar>>) -> Subspace {
        let mut s = Subspace { field, rows: Vec::new(), pivots: Vec::new() };
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating every pivot of the subspace.
    pub(crate) fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}
