//! The presented algebras `A(m,n,z)` and `B(m,n,z)`: their letters, the
//! reduction systems, the matrix relations, the map into `L(m,n)₀^xy`, and
//! the Bergman-graph side.

pub mod bergman;
pub mod phi;
pub mod relations;

pub use bergman::{
    b_collapse_n1, bergman_generator_map, bergman_image_letter, bergman_relations, build_bergman_graph, BergmanEdge, BergmanGraph,
    BergmanRelation, GeneratorMapReport,
};
pub use phi::{
    ab_iso_maps, check_free_product, check_phi_on_irreducibles, enumerate_t_irreducible, phi_letter, phi_poly,
    phi_via_star, phi_word, swap_letter, swap_word,
};
pub use relations::verify_matrix_relations;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rewrite::{ReductionRule, ReductionSystem, WeightSpec};
use crate::scalar::Field;
use crate::star::StarMatrix;
use crate::word::{Alphabet, Letter, Word};

/// Parameters `(m, n, z)`: the level `p` of every letter satisfies `p ≤ z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ASpec {
    pub m: u32,
    pub n: u32,
    pub z: u32,
}

impl ASpec {
    pub fn new(m: u32, n: u32, z: u32) -> Result<Self> {
        if m == 0 || n == 0 || z == 0 {
            return Err(Error::InvalidSpec(format!("m, n, z must be positive, got ({m},{n},{z})")));
        }
        // m^z indexes matrix entries; keep it well inside u32
        if (m as u64).checked_pow(2 * z).is_none_or(|v| v > 1 << 24) {
            return Err(Error::InvalidSpec(format!("m^z too large for ({m},{n},{z})")));
        }
        Ok(ASpec { m, n, z })
    }

    pub fn leavitt(&self) -> crate::leavitt::LeavittSpec {
        crate::leavitt::LeavittSpec { m: self.m, n: self.n }
    }

    /// `m^p`, the size of the level-`p` matrices.
    pub fn dim(&self, p: u32) -> u32 {
        self.m.pow(p)
    }

    /// All `e^{p,k,l}_{ij}`. With `b_only`, only those with `|k − l| ≤ 1`.
    pub fn e_letters(&self, b_only: bool) -> Vec<Letter> {
        let mut out = Vec::new();
        for p in 1..=self.z {
            let d = self.dim(p);
            for k in 1..=self.n {
                for l in 1..=self.n {
                    if b_only && k.abs_diff(l) > 1 {
                        continue;
                    }
                    for i in 1..=d {
                        for j in 1..=d {
                            out.push(Letter::e(p, k, l, i, j));
                        }
                    }
                }
            }
        }
        out
    }
}

impl Alphabet for ASpec {
    fn check(&self, letter: &Letter) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidIndex { letter: letter.to_string(), reason });
        match *letter {
            Letter::E { p, k, l, i, j } => {
                if p == 0 || p > self.z {
                    return bad(format!("level must lie in 1..={}", self.z));
                }
                if k == 0 || l == 0 || k > self.n || l > self.n {
                    return bad(format!("k, l must lie in 1..={}", self.n));
                }
                let d = self.dim(p);
                if i == 0 || j == 0 || i > d || j > d {
                    return bad(format!("i, j must lie in 1..={d}"));
                }
                Ok(())
            }
            Letter::Eps { p, q, i, j } | Letter::Sig { p, q, i, j } | Letter::SigHat { p, q, i, j } => {
                if p == 0 || p > self.z {
                    return bad(format!("level must lie in 1..={}", self.z));
                }
                if q == 0 || q >= self.n {
                    return bad(format!("q must lie in 1..={}", self.n.saturating_sub(1)));
                }
                let d = self.dim(p);
                if i == 0 || j == 0 || i > d || j > d {
                    return bad(format!("i, j must lie in 1..={d}"));
                }
                Ok(())
            }
            _ => bad("not a letter of A(m,n,z)".into()),
        }
    }
}

/// `m₁(e^{p,k,l}_{ij}) = i + j`.
pub fn t_weight_1(l: &Letter) -> u64 {
    match *l {
        Letter::E { i, j, .. } => (i + j) as u64,
        _ => 0,
    }
}

/// `m₂(e^{p,k,l}_{ij}) = p + k + l`.
pub fn t_weight_2(l: &Letter) -> u64 {
    match *l {
        Letter::E { p, k, l, .. } => (p + k + l) as u64,
        _ => 0,
    }
}

/// `e^{p,k,l}_{ij}` as a polynomial, with `e^{0,1,1} = (1)`.
pub(crate) fn e_poly<F: Field>(p: u32, k: u32, l: u32, i: u32, j: u32) -> Polynomial<F> {
    if p == 0 {
        if i == j {
            Polynomial::one()
        } else {
            Polynomial::zero()
        }
    } else {
        Polynomial::from_letter(Letter::e(p, k, l, i, j))
    }
}

fn rule_i<F: Field>(spec: ASpec, rules: &mut Vec<ReductionRule<F>>) {
    for p in 1..=spec.z {
        let d = spec.dim(p);
        for k in 1..=spec.n {
            for l in 1..=spec.n {
                for k2 in 1..=spec.n {
                    for l2 in 1..=spec.n {
                        for i in 1..=d {
                            for j in 1..=d {
                                let lhs = Word::new(vec![Letter::e(p, k, l, i, d), Letter::e(p, k2, l2, d, j)]);
                                let mut rhs = Polynomial::zero();
                                if l == k2 {
                                    rhs.add_term(Word::letter(Letter::e(p, k, l2, i, j)), &F::one());
                                }
                                for r in 1..d {
                                    let w = Word::new(vec![Letter::e(p, k, l, i, r), Letter::e(p, k2, l2, r, j)]);
                                    rhs.add_term(w, &F::one().neg());
                                }
                                rules.push(ReductionRule::new(lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
    }
}

fn rule_ii<F: Field>(spec: ASpec, rules: &mut Vec<ReductionRule<F>>) {
    let n = spec.n;
    for p in 1..=spec.z {
        let d = spec.dim(p);
        let sub = spec.dim(p - 1);
        for i in 1..=d {
            for j in 1..=d {
                let mut rhs = Polynomial::zero();
                // same diagonal block of ⊕^m e^{p−1,1,1}
                let (ti, tj) = ((i - 1) / sub, (j - 1) / sub);
                if ti == tj {
                    let (r, s) = (i - ti * sub, j - tj * sub);
                    rhs = e_poly(p - 1, 1, 1, r, s);
                }
                for k in 1..n {
                    rhs.add_term(Word::letter(Letter::e(p, k, k, i, j)), &F::one().neg());
                }
                rules.push(ReductionRule::new(Word::letter(Letter::e(p, n, n, i, j)), rhs));
            }
        }
    }
}

/// Families (iii) and (iv): a lower level on the left.
fn rules_iii_iv<F: Field>(spec: ASpec, rules: &mut Vec<ReductionRule<F>>) {
    let n = spec.n;
    for p in 1..=spec.z {
        let d = spec.dim(p);
        for p2 in p + 1..=spec.z {
            let d2 = spec.dim(p2);
            for k in 1..=n {
                for l in 1..=n {
                    let keep = (k == 1 && l == 1) || l != 1;
                    if !keep {
                        continue;
                    }
                    for k2 in 1..=n {
                        for l2 in 1..=n {
                            for i in 1..=d {
                                for j in 1..=d2 {
                                    for t in 0..d2 / d {
                                        let lhs = Word::new(vec![
                                            Letter::e(p, k, l, i, d),
                                            Letter::e(p2, k2, l2, (t + 1) * d, j),
                                        ]);
                                        let mut rhs = Polynomial::zero();
                                        if k == 1 && l == 1 {
                                            rhs.add_term(Word::letter(Letter::e(p2, k2, l2, t * d + i, j)), &F::one());
                                        }
                                        for r in 1..d {
                                            let w = Word::new(vec![
                                                Letter::e(p, k, l, i, r),
                                                Letter::e(p2, k2, l2, t * d + r, j),
                                            ]);
                                            rhs.add_term(w, &F::one().neg());
                                        }
                                        rules.push(ReductionRule::new(lhs, rhs));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Families (v) and (vi): a lower level on the right.
fn rules_v_vi<F: Field>(spec: ASpec, rules: &mut Vec<ReductionRule<F>>) {
    let n = spec.n;
    for p in 1..=spec.z {
        let d = spec.dim(p);
        for p2 in 1..p {
            let d2 = spec.dim(p2);
            for k in 1..=n {
                for l in 1..=n {
                    for k2 in 1..=n {
                        for l2 in 1..=n {
                            let keep = (k2 == 1 && l2 == 1) || k2 != 1;
                            if !keep {
                                continue;
                            }
                            for i in 1..=d {
                                for j in 1..=d2 {
                                    for t in 0..d / d2 {
                                        let lhs = Word::new(vec![
                                            Letter::e(p, k, l, i, (t + 1) * d2),
                                            Letter::e(p2, k2, l2, d2, j),
                                        ]);
                                        let mut rhs = Polynomial::zero();
                                        if k2 == 1 && l2 == 1 {
                                            rhs.add_term(Word::letter(Letter::e(p, k, l, i, t * d2 + j)), &F::one());
                                        }
                                        for r in 1..d2 {
                                            let w = Word::new(vec![
                                                Letter::e(p, k, l, i, t * d2 + r),
                                                Letter::e(p2, k2, l2, r, j),
                                            ]);
                                            rhs.add_term(w, &F::one().neg());
                                        }
                                        rules.push(ReductionRule::new(lhs, rhs));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn t_weights() -> WeightSpec {
    WeightSpec::new(vec![("m1", t_weight_1 as fn(&Letter) -> u64), ("m2", t_weight_2 as fn(&Letter) -> u64)])
}

/// The reduction system `T` truncated at level `z`, all six families
/// materialized in order.
pub fn build_system_t<F: Field>(spec: ASpec) -> ReductionSystem<F> {
    let mut rules = Vec::new();
    rule_i(spec, &mut rules);
    rule_ii(spec, &mut rules);
    rules_iii_iv(spec, &mut rules);
    rules_v_vi(spec, &mut rules);
    ReductionSystem::new(
        format!("T({},{},{})", spec.m, spec.n, spec.z),
        format!("e(p,k,l,i,j) with p<={}, k,l<={}, i,j<=m^p", spec.z, spec.n),
        t_weights(),
        rules,
    )
    .expect("T has distinct nonempty left-hand sides")
}

fn is_b_letter(l: &Letter) -> bool {
    matches!(*l, Letter::E { k, l, .. } if k.abs_diff(l) <= 1)
}

/// A reduction system for `B(m,n,z)`: the rules of `T` whose left- and
/// right-hand sides only involve letters with `|k − l| ≤ 1`.
pub fn build_system_b<F: Field>(spec: ASpec) -> ReductionSystem<F> {
    let t = build_system_t::<F>(spec);
    let rules = t
        .rules()
        .iter()
        .filter(|r| r.lhs.iter().all(is_b_letter) && r.rhs.support().all(|w| w.iter().all(is_b_letter)))
        .cloned()
        .collect();
    ReductionSystem::new(
        format!("B({},{},{})", spec.m, spec.n, spec.z),
        format!("e(p,k,l,i,j) with |k-l|<=1, p<={}, k,l<={}, i,j<=m^p", spec.z, spec.n),
        t_weights(),
        rules,
    )
    .expect("subset of T")
}

/// The `m^p × m^p` matrix of symbols `e^{p,k,l}_{ij}`; `(1)` for `p = 0`.
pub fn e_matrix<F: Field>(spec: ASpec, p: u32, k: u32, l: u32) -> Result<StarMatrix<Polynomial<F>>> {
    if p > spec.z {
        return Err(Error::InvalidSpec(format!("level {p} exceeds z = {}", spec.z)));
    }
    StarMatrix::from_fn(spec.m, p, p, |r, c| e_poly(p, k, l, r as u32 + 1, c as u32 + 1))
}

/// Outcome of a family of exact checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failures: Vec::new() }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::check_compatible_order;
    use crate::scalar::Rational;

    fn p(s: &str) -> Polynomial<Rational> {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn rule_ii_examples() {
        let t = build_system_t::<Rational>(ASpec::new(2, 2, 1).unwrap());
        let diag = t.rule_for(&Word::parse("e(1,2,2,1,1)").unwrap()).unwrap();
        assert_eq!(diag.rhs, p("1 - e(1,1,1,1,1)"));
        let off = t.rule_for(&Word::parse("e(1,2,2,1,2)").unwrap()).unwrap();
        assert_eq!(off.rhs, p("-e(1,1,1,1,2)"));
    }

    #[test]
    fn rule_counts() {
        // z = 1: only families (i) and (ii)
        let s = ASpec::new(2, 2, 1).unwrap();
        let t = build_system_t::<Rational>(s);
        assert_eq!(t.rules().len(), 16 * 4 + 4);
        assert!(t.rules().iter().all(|r| r.lhs.iter().all(|l| matches!(l, Letter::E { p: 1, .. }))));
        let t2 = build_system_t::<Rational>(ASpec::new(2, 2, 2).unwrap());
        let cross = t2
            .rules()
            .iter()
            .filter(|r| r.lhs.len() == 2 && matches!((r.lhs[0], r.lhs[1]), (Letter::E { p: a, .. }, Letter::E { p: b, .. }) if a != b))
            .count();
        // (iii)+(iv): 3 choices of (k,l), 4 of (k',l'), i ≤ 2, j ≤ 4, t < 2
        // (v)+(vi): 4 choices of (k,l), 3 of (k',l'), i ≤ 4, j ≤ 2, t < 2
        assert_eq!(cross, 3 * 4 * 2 * 4 * 2 + 4 * 3 * 4 * 2 * 2);
    }

    #[test]
    fn t_order_is_compatible() {
        for s in [ASpec::new(2, 2, 2).unwrap(), ASpec::new(2, 3, 1).unwrap()] {
            let t = build_system_t::<Rational>(s);
            assert!(check_compatible_order(&t).is_ok());
            assert!(check_compatible_order(&build_system_b::<Rational>(s)).is_ok());
        }
    }

    #[test]
    fn alphabet_checks() {
        let s = ASpec::new(2, 2, 1).unwrap();
        assert!(s.check(&Letter::e(1, 2, 2, 2, 2)).is_ok());
        assert!(s.check(&Letter::e(2, 1, 1, 1, 1)).is_err());
        assert!(s.check(&Letter::e(1, 1, 1, 3, 1)).is_err());
        assert!(s.check(&Letter::x(1, 1)).is_err());
    }
}
