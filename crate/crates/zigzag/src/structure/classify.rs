//! Classification of `Z^C(Γ)` by graph type and vertex condition, with an
//! independent audit of the numerical conditions every claim implies.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, BasisElem};
use crate::error::Result;
use crate::field::Field;
use crate::graded::{det, koszul_necessary_audit, ungraded_cartan, QPoly, QPolyMatrix};
use crate::graph::{recognize, spectral_class, symmetric_definiteness, Graph, GraphType, SpectralClass};
use crate::resolution::{resolve_simple, ResolveStatus};

use super::cell::{build_cell_datum, verify_cell_datum, CellDatum};
use super::decomp::decomp_search;
use super::qh::{build_hereditary_chain, verify_hereditary_chain, HereditaryChain};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Witness when the property holds, obstruction otherwise.
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub graph_type: GraphType,
    pub condition: Vec<usize>,
    pub cellular: Verdict,
    pub relative_cellular: Verdict,
    pub quasi_hereditary: Verdict,
    pub koszul: Verdict,
    pub cell_datum: Option<CellDatum>,
    pub chain: Option<HereditaryChain>,
}

impl ClassificationReport {
    pub fn to_json(&self, alg: &Algebra) -> Value {
        let g = alg.graph();
        json!({
            "type": self.graph_type.to_string(),
            "condition": self.condition.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
            "cellular": self.cellular,
            "relative_cellular": self.relative_cellular,
            "quasi_hereditary": self.quasi_hereditary,
            "koszul": self.koszul,
            "cell_datum": self.cell_datum.as_ref().map(|d| d.to_json(alg)),
            "hereditary_chain": self.chain.as_ref().map(|c| c.to_json(alg)),
        })
    }

    pub fn flags(&self) -> [bool; 4] {
        [self.cellular.holds, self.relative_cellular.holds, self.quasi_hereditary.holds, self.koszul.holds]
    }
}

fn verdict(holds: bool, note: impl Into<String>) -> Verdict {
    Verdict { holds, note: note.into() }
}

/// Whether `cond` is a single leaf of a finite type A graph.
fn is_leaf_condition(g: &Graph, ty: GraphType, cond: &[usize]) -> bool {
    matches!(ty, GraphType::FiniteA(_)) && cond.len() == 1 && (g.vertex_count() == 1 || g.degree(cond[0]) == 1)
}

fn int_det(g: &Graph, cond: &[usize]) -> BigInt {
    det(&crate::graded::cartan_of(g, cond)).eval(1)
}

/// Decides the four properties from the graph type and the condition.
pub fn classify(g: &Graph, condition: &[usize]) -> Result<ClassificationReport> {
    let alg = Algebra::new(g.clone(), condition, Field::Rational)?;
    let ty = recognize(g)?.ty;
    let cond = alg.condition();
    let names: Vec<String> = cond.iter().map(|&v| g.label(v).to_string()).collect();
    let cell_datum = build_cell_datum(&alg);
    let chain = build_hereditary_chain(&alg);
    let report = if cond.is_empty() {
        let cellular = match ty {
            GraphType::FiniteA(1) => verdict(true, "A1: Z = k[x]/(x²) with cells {x1} below {e1}"),
            GraphType::FiniteA(_) => verdict(true, "finite type A; cell datum with a dummy cell attached"),
            GraphType::AffineA(_) if int_det(g, &cond).is_zero() => {
                verdict(false, format!("{ty}: Cartan matrix is singular"))
            }
            GraphType::AffineA(_) => {
                verdict(false, format!("{ty}: no factorization C = DᵀD has a triangularizable D"))
            }
            _ if ty.is_finite_ade() => verdict(false, format!("{ty} is not of finite type A")),
            _ => verdict(false, cartan_note(g, &cond, ty)),
        };
        let relative = match ty {
            GraphType::FiniteA(_) => verdict(true, "cellular, hence relative cellular"),
            GraphType::AffineA(_) => verdict(true, "affine type A; relative datum with two idempotents attached"),
            _ => verdict(false, cartan_note(g, &cond, ty)),
        };
        let qh = verdict(false, "no vertex condition: every e_i has x_i ∈ e_i·rad·e_i, so no heredity ideal exists");
        let koszul = if ty.is_finite_ade() {
            verdict(false, nonlinear_note(&alg, ty))
        } else {
            verdict(true, format!("{ty} is not a finite ADE graph"))
        };
        ClassificationReport {
            graph_type: ty,
            condition: cond,
            cellular,
            relative_cellular: relative,
            quasi_hereditary: qh,
            koszul,
            cell_datum,
            chain,
        }
    } else {
        let leaf = is_leaf_condition(g, ty, &cond);
        let yes = |what: &str| verdict(true, format!("condition on the leaf {}; {what} attached", names[0]));
        let no = || {
            let d = int_det(g, &cond);
            let shape = if matches!(ty, GraphType::FiniteA(_)) {
                "condition is not a single leaf"
            } else {
                "graph is not of finite type A"
            };
            verdict(false, format!("{shape} ({ty}, C = {{{}}}); ungraded det C^C = {d}", names.join(",")))
        };
        let (cellular, relative, qh) = if leaf {
            (yes("cell datum"), yes("cell datum"), yes("hereditary chain"))
        } else {
            (no(), no(), no())
        };
        ClassificationReport {
            graph_type: ty,
            condition: cond,
            cellular,
            relative_cellular: relative,
            quasi_hereditary: qh,
            koszul: verdict(true, "a vertex condition is imposed"),
            cell_datum,
            chain,
        }
    };
    Ok(report)
}

fn cartan_note(g: &Graph, cond: &[usize], ty: GraphType) -> String {
    let c = ungraded_cartan(g, cond).to_rows();
    let def = symmetric_definiteness(&c);
    if !def.semidefinite {
        format!("{ty}: Cartan matrix is not positive semidefinite")
    } else {
        format!("{ty}: not of (affine) type A")
    }
}

fn nonlinear_note(alg: &Algebra, ty: GraphType) -> String {
    let h = ty.coxeter_number().unwrap_or(2);
    match resolve_simple(alg, 0, 2 * h + 2) {
        Ok(r) => match r.status {
            ResolveStatus::StuckNonlinear(l) => {
                format!("{ty} is finite ADE; the resolution of S_{} stops being linear at level {l}", alg.graph().label(0))
            }
            s => format!("{ty} is finite ADE; resolution of S_{} ended as {}", alg.graph().label(0), s.name()),
        },
        Err(e) => format!("{ty} is finite ADE ({e})"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub property: String,
    pub condition: String,
    /// Whether the classifier claims the property.
    pub claimed: bool,
    /// `None` when the condition was not evaluated (only expensive checks
    /// for unclaimed properties are skipped).
    pub passes: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
    /// Claimed properties whose necessary condition fails.
    pub inconsistencies: usize,
}

impl AuditReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    /// Truncation order of the power series in the Koszul audit.
    pub order: usize,
    /// Length up to which resolutions of simples must stay linear.
    pub resolution_length: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { order: 100, resolution_length: 4 }
    }
}

pub fn necessary_condition_audit(g: &Graph, condition: &[usize]) -> Result<AuditReport> {
    necessary_condition_audit_with(g, condition, AuditOptions::default())
}

/// Evaluates the necessary conditions behind each claim of [`classify`].
pub fn necessary_condition_audit_with(g: &Graph, condition: &[usize], opts: AuditOptions) -> Result<AuditReport> {
    let rep = classify(g, condition)?;
    let alg = Algebra::new(g.clone(), condition, Field::Rational)?;
    let cond = alg.condition();
    let n = g.vertex_count();
    let [cell, rel, qh, kos] = rep.flags();
    let mut checks = Vec::new();
    let mut push = |property: &str, condition: &str, claimed: bool, passes: Option<bool>, detail: String| {
        checks.push(AuditCheck {
            property: property.into(),
            condition: condition.into(),
            claimed,
            passes,
            detail,
        })
    };

    // structural type against the adjacency spectrum
    let spec = spectral_class(g);
    let expected = if rep.graph_type.is_finite_ade() {
        SpectralClass::AllInsideOpen2
    } else if rep.graph_type.is_affine() {
        SpectralClass::AllInsideClosed2
    } else {
        SpectralClass::Outside2
    };
    push("type", "recognized type agrees with the adjacency spectrum", true, Some(spec == expected), format!("{spec:?}"));

    let cartan = ungraded_cartan(g, &cond);
    let def = symmetric_definiteness(&cartan.to_rows());
    let d = int_det(g, &cond);
    push("cellular", "ungraded Cartan matrix positive definite", cell, Some(def.definite), format!("det C^C = {d}"));
    push(
        "relative_cellular",
        "ungraded Cartan matrix positive semidefinite with det ≥ 0",
        rel,
        Some(def.semidefinite && !d.is_negative()),
        format!("det C^C = {d}"),
    );

    let datum_check = |claimed: bool| -> (Option<bool>, String) {
        if !claimed {
            return (None, String::new());
        }
        match &rep.cell_datum {
            Some(datum) => {
                let r = verify_cell_datum(&alg, datum);
                (Some(r.passes()), r.failures.join("; "))
            }
            None if n == 1 && cond.is_empty() => (Some(true), "A1: no datum of product form needed".into()),
            None => (Some(false), "no cell datum constructed".into()),
        }
    };
    let (p, det_) = datum_check(cell);
    push("cellular", "cell datum verifies", cell, p, det_);
    let (p, det_) = datum_check(rel);
    push("relative_cellular", "cell datum verifies", rel, p, det_);

    let decomp = |want_triangular: bool| -> Result<(Option<bool>, String)> {
        let sols = decomp_search(&cartan, None)?;
        let ok = sols.iter().any(|s| s.triangularizable || !want_triangular);
        Ok((Some(ok), format!("{} factorizations", sols.len())))
    };
    let (p, detail) = if cell { decomp(true)? } else { (None, String::new()) };
    push("cellular", "C = DᵀD with a triangularizable D", cell, p, detail);
    let (p, detail) = if rel { decomp(false)? } else { (None, String::new()) };
    push("relative_cellular", "C = DᵀD solvable", rel, p, detail);

    let (p, detail) = match (&rep.chain, qh) {
        (Some(ch), true) => {
            let r = verify_hereditary_chain(&alg, ch);
            (Some(r.passes()), r.failures.join("; "))
        }
        (None, true) => (Some(false), "no chain constructed".into()),
        _ => (None, String::new()),
    };
    push("quasi_hereditary", "hereditary chain verifies", qh, p, detail);
    let (p, detail) = match (&rep.chain, qh) {
        (Some(ch), true) => {
            let dets = quotient_dets(&alg, ch);
            let shown: Vec<String> = dets.iter().map(ToString::to_string).collect();
            (Some(dets.iter().all(|d| d == &QPoly::one())), format!("[{}]", shown.join(", ")))
        }
        _ => (None, String::new()),
    };
    push("quasi_hereditary", "det C_q of every chain quotient is 1", qh, p, detail);

    let ka = koszul_necessary_audit(&alg, opts.order)?;
    push("koszul", "column sums alternate and 1/det has no gap above 2n−2", kos, Some(ka.pass), ka.details);
    let (p, detail) = if kos {
        let mut stuck = None;
        for i in 0..n {
            let r = resolve_simple(&alg, i, opts.resolution_length)?;
            if let ResolveStatus::StuckNonlinear(l) = r.status {
                stuck = Some((i, l));
                break;
            }
        }
        match stuck {
            None => (Some(true), format!("linear to length {}", opts.resolution_length)),
            Some((i, l)) => (Some(false), format!("S_{} stuck at level {l}", g.label(i))),
        }
    } else {
        (None, String::new())
    };
    push("koszul", "resolutions of simples stay linear", kos, p, detail);

    let inconsistencies = checks.iter().filter(|c| c.claimed && c.passes == Some(false)).count();
    Ok(AuditReport { checks, inconsistencies })
}

/// `det C_q(R/J_{l−1})` for each link of the chain, read off the quotient
/// basis.
pub fn quotient_dets(alg: &Algebra, ch: &HereditaryChain) -> Vec<QPoly> {
    let empty = BTreeSet::new();
    (0..ch.ideals.len())
        .map(|l| {
            let prev = if l == 0 { &empty } else { &ch.ideals[l - 1] };
            let killed: &[usize] = if l == 0 { &[] } else { &ch.sets[l - 1] };
            let keep: Vec<usize> = (0..alg.vertex_count()).filter(|v| !killed.contains(v)).collect();
            let remaining: Vec<BasisElem> = alg.basis().iter().copied().filter(|b| !prev.contains(b)).collect();
            let m = QPolyMatrix::from_fn(keep.len(), |i, j| {
                remaining
                    .iter()
                    .filter(|b| b.source() == keep[i] && b.target() == keep[j])
                    .fold(QPoly::zero(), |acc, b| acc.add(&QPoly::monomial(1, b.degree() as usize)))
            });
            det(&m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, Family};

    fn flags(fam: Family, n: usize, c: &[usize]) -> [bool; 4] {
        classify(&build_named(fam, n).unwrap(), c).unwrap().flags()
    }

    #[test]
    fn theorem_examples() {
        assert_eq!(flags(Family::A, 5, &[]), [true, true, false, false]);
        assert_eq!(flags(Family::A, 4, &[0]), [true, true, true, true]);
        assert_eq!(flags(Family::A, 4, &[3]), [true, true, true, true]);
        assert_eq!(flags(Family::A, 4, &[1]), [false, false, false, true]);
        assert_eq!(flags(Family::AffineA, 4, &[]), [false, true, false, true]);
        assert_eq!(flags(Family::D, 4, &[1]), [false, false, false, true]);
        assert_eq!(flags(Family::A, 1, &[]), [true, true, false, false]);
        assert_eq!(flags(Family::A, 1, &[0]), [true, true, true, true]);
        assert_eq!(flags(Family::E, 6, &[]), [false, false, false, false]);
        assert_eq!(flags(Family::AffineD, 4, &[]), [false, false, false, true]);
    }

    #[test]
    fn audits_are_consistent() {
        for (fam, n, c) in [
            (Family::A, 4, vec![0]),
            (Family::A, 3, vec![]),
            (Family::AffineA, 2, vec![]),
            (Family::AffineA, 2, vec![0]),
            (Family::D, 4, vec![0, 2]),
            (Family::E, 6, vec![]),
        ] {
            let g = build_named(fam, n).unwrap();
            let a = necessary_condition_audit(&g, &c).unwrap();
            assert_eq!(a.inconsistencies, 0, "{fam:?}{n} {c:?}: {:#?}", a.checks);
        }
    }

    #[test]
    fn d4_pair_det() {
        let g = build_named(Family::D, 4).unwrap();
        let a = necessary_condition_audit(&g, &[0, 2]).unwrap();
        let rel = a.checks.iter().find(|c| c.property == "relative_cellular").unwrap();
        assert_eq!(rel.passes, Some(false));
        assert_eq!(rel.detail, "det C^C = -1");
    }

    #[test]
    fn chain_quotient_dets_are_one() {
        let a = Algebra::new(build_named(Family::A, 5).unwrap(), &[0], Field::Rational).unwrap();
        let ch = build_hereditary_chain(&a).unwrap();
        assert!(quotient_dets(&a, &ch).iter().all(|d| d == &QPoly::one()));
    }
}
