//! The algebra battery, with radicals refereed by quasi-regularity.

use std::sync::Arc;

use super::Params;
use crate::algebra::{
    field, matrix_algebra, product, truncated_polynomial, upper_triangular, Algebra, DEFAULT_SCAN_BOUND,
};
use crate::error::Result;
use crate::linalg::Fp;
use crate::oracle::radical_by_quasi_regularity;
use crate::report::CheckRecord;
use crate::verdict::Mode;

/// `F2, F2[x]/x^2, F2[x]/x^3, UT2, UT3, M2` over `F2`, `UT2(F3)`, and every
/// product of two members over the same field (a member with itself
/// included).
pub fn radical_battery() -> Result<Vec<Arc<Algebra>>> {
    let f2 = Fp::new(2)?;
    let f3 = Fp::new(3)?;
    let base2 = vec![
        field(f2)?,
        truncated_polynomial(f2, 2)?,
        truncated_polynomial(f2, 3)?,
        upper_triangular(f2, 2)?.0,
        upper_triangular(f2, 3)?.0,
        matrix_algebra(f2, 2)?,
    ];
    let base3 = vec![upper_triangular(f3, 2)?.0];
    let mut out: Vec<Arc<Algebra>> = base2.iter().chain(&base3).cloned().collect();
    for base in [&base2, &base3] {
        for i in 0..base.len() {
            for j in i..base.len() {
                out.push(product(&[base[i].clone(), base[j].clone()])?);
            }
        }
    }
    Ok(out)
}

pub(super) fn run(_: &Params, _: u64) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    for alg in radical_battery()? {
        let name = format!("J({}) over F{}", alg.name(), alg.p());
        let needed = alg.field().count(alg.dim());
        if needed > DEFAULT_SCAN_BOUND {
            checks.push(CheckRecord::skipped(
                name,
                format!("{needed} elements exceed the scan bound {DEFAULT_SCAN_BOUND}"),
            ));
            continue;
        }
        let oracle = radical_by_quasi_regularity(&alg, DEFAULT_SCAN_BOUND)?;
        let structured = alg.jacobson_radical()?;
        // the same table without structural shortcuts
        let scanned = alg.forget_structure().jacobson_radical()?;
        checks.push(
            CheckRecord::from_bool(name, structured == oracle && scanned == oracle, Mode::Exhaustive)
                .with("dim_algebra", alg.dim())
                .with("dim_radical", structured.dim())
                .with("dim_oracle", oracle.dim())
                .with("structured_agrees", structured == oracle)
                .with("scan_agrees", scanned == oracle),
        );
    }
    Ok(checks)
}
