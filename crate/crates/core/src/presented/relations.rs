//! Entrywise verification of the defining and derived matrix relations of
//! `A(m,n,z)` with products reduced by `r_T`.

use rayon::prelude::*;

use super::{e_matrix, ASpec, CheckReport};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rewrite::ReductionSystem;
use crate::scalar::Field;
use crate::star::{ReducedRing, StarMatrix};

type M<F> = StarMatrix<Polynomial<F>>;

fn compare<F: Field>(report: &mut CheckReport, label: &str, lhs: &M<F>, rhs: &M<F>) {
    for (pos, (a, b)) in lhs.entries().iter().zip(rhs.entries()).enumerate() {
        let (r, c) = (pos / lhs.cols() + 1, pos % lhs.cols() + 1);
        report.record(a == b, || format!("{label} at ({r},{c}): {a} vs {b}"));
    }
}

fn zero_like<F: Field>(a: &M<F>) -> M<F> {
    a.map(|_| Polynomial::zero())
}

/// One relation instance, evaluated to both sides.
struct Instance<F: Field> {
    label: String,
    lhs: M<F>,
    rhs: M<F>,
}

/// Relations (i)–(ii) of the definition and the four derived ⋆ relations,
/// for every level up to `z`. Each product entry is reduced by `r_T`.
pub fn verify_matrix_relations<F: Field>(spec: ASpec, t: &ReductionSystem<F>) -> Result<CheckReport> {
    let ring = ReducedRing::new(t);
    let n = spec.n;
    let e = |p, k, l| e_matrix::<F>(spec, p, k, l);
    let mut jobs: Vec<(u32, u32, u32, u32, u32, u32)> = Vec::new();
    for p in 1..=spec.z {
        for p2 in 1..=spec.z {
            for k in 1..=n {
                for l in 1..=n {
                    for k2 in 1..=n {
                        for l2 in 1..=n {
                            jobs.push((p, k, l, p2, k2, l2));
                        }
                    }
                }
            }
        }
    }
    let instances: Vec<Vec<Instance<F>>> = jobs
        .par_iter()
        .map(|&(p, k, l, p2, k2, l2)| -> Result<Vec<Instance<F>>> {
            let mut out = Vec::new();
            let a = e(p, k, l)?;
            let b = e(p2, k2, l2)?;
            let tag = format!("e({p},{k},{l}) e({p2},{k2},{l2})");
            if p == p2 {
                let prod = a.star(&ring, &b)?;
                let rhs = if l == k2 { e(p, k, l2)? } else { zero_like(&prod) };
                out.push(Instance { label: format!("(i) {tag}"), lhs: prod, rhs });
            } else if p < p2 {
                if k == 1 && l == 1 {
                    out.push(Instance { label: format!("(iii) {tag}"), lhs: a.star(&ring, &b)?, rhs: b.clone() });
                } else if l != 1 {
                    let prod = a.star(&ring, &b)?;
                    let z = zero_like(&prod);
                    out.push(Instance { label: format!("(iv) {tag}"), lhs: prod, rhs: z });
                }
            } else if k2 == 1 && l2 == 1 {
                out.push(Instance { label: format!("(v) {tag}"), lhs: a.star(&ring, &b)?, rhs: a.clone() });
            } else if k2 != 1 {
                let prod = a.star(&ring, &b)?;
                let z = zero_like(&prod);
                out.push(Instance { label: format!("(vi) {tag}"), lhs: prod, rhs: z });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new(format!("matrix relations of A({},{},{})", spec.m, spec.n, spec.z));
    for inst in instances.iter().flatten() {
        let rhs = inst.rhs.try_map(|x| t.normal_form(x))?;
        compare(&mut report, &inst.label, &inst.lhs, &rhs);
    }
    // (ii): Σ_k e^{p,k,k} = ⊕^m e^{p−1,1,1}, reduced entrywise
    for p in 1..=spec.z {
        let mut sum = e(p, 1, 1)?;
        for k in 2..=n {
            sum = sum.add(&ring, &e(p, k, k)?)?;
        }
        let sum = sum.try_map(|x| t.normal_form(x))?;
        let rhs = e(p - 1, 1, 1)?.inflate(&ring, 1)?.try_map(|x| t.normal_form(x))?;
        compare(&mut report, &format!("(ii) level {p}"), &sum, &rhs);
    }
    Ok(report)
}
