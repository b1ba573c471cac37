use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cocycle::Cocycle;
use super::fiber::LoopLabel;
use super::window::{
    add_degree_derivation, build_loop_algebra, cartan_check, central_extend, grading_check,
    jacobi_check, root_decomposition, GradedLieWindow, JacobiMode, JacobiReport, RootDecomposition,
};
use crate::error::Result;
use crate::lears::{construct, LearsSpec};
use crate::qgroup::QSubgroup;
use crate::rational::Q;
use crate::report::{Check, Report};
use crate::rootsys::{format_root, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub algebra: GradedLieWindow,
    pub jacobi: Option<JacobiReport>,
    pub roots: RootDecomposition,
    pub predicted: LearsSpec,
    pub report: Report,
}

/// Builds `L̂ = L ⊕ Fc ⊕ Fd` for `label` over `G`, runs the requested checks
/// and compares the anisotropic roots with the predicted window.
pub fn realize(
    label: &LoopLabel,
    group: &QSubgroup,
    tau: &Cocycle,
    bound: &Q,
    jacobi: Option<JacobiMode>,
) -> Result<Realization> {
    let mut report = Report::new(format!("realization of {label} over {group}"));
    if !matches!(tau, Cocycle::One) {
        let window = group.enumerate_window(bound)?;
        report.push(tau.check(&window));
    }
    let l = build_loop_algebra(label, group, tau, bound)?;
    let (l, ext) = central_extend(l)?;
    report.extend(ext);
    let l = add_degree_derivation(l)?;
    report.push(grading_check(&l));
    report.push(cartan_check(&l));
    let j = jacobi.map(|m| jacobi_check(&l, m));
    if let Some(j) = &j {
        report.push(j.check.clone());
    }
    let roots = root_decomposition(&l)?;
    let predicted = label.predicted_spec(group)?;
    report.push(compare_roots(
        &roots.anisotropic,
        &construct(&predicted, bound)?.roots,
    ));
    Ok(Realization {
        algebra: l,
        jacobi: j,
        roots,
        predicted,
        report,
    })
}

/// Set equality of computed and predicted anisotropic roots.
pub fn compare_roots(got: &[RootVector], want: &[RootVector]) -> Check {
    let (a, b): (BTreeSet<_>, BTreeSet<_>) = (got.iter().collect(), want.iter().collect());
    let mut bad: Vec<String> = a
        .difference(&b)
        .map(|r| format!("unexpected {}", format_root(r)))
        .collect();
    bad.extend(
        b.difference(&a)
            .map(|r| format!("missing {}", format_root(r))),
    );
    Check::new("roots match prediction", bad)
}
