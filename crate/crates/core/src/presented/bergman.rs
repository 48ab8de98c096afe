//! The graph `H(m,n,z)`, the relations of its Leavitt path algebra in matrix
//! form, and the generator map into `A(m,n,z)`.

use serde::Serialize;

use super::{build_system_b, build_system_t, e_matrix, ASpec, CheckReport};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rewrite::{check_diamond, ReductionSystem};
use crate::scalar::Field;
use crate::star::{FreeRing, ReducedRing, StarMatrix};
use crate::word::Letter;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BergmanEdge {
    pub name: String,
    pub source: String,
    /// Copies of the source vertex in the source of the hyperedge.
    pub multiplicity: u32,
    pub range: Vec<String>,
}

/// Vertices `v_{0,1}` and `v_{p,q}` for `1 ≤ p ≤ z`, `1 ≤ q ≤ n`. The blue
/// hyperedge `g_p` has source `m × v_{p−1,1}` and range `v_{p,1}, …, v_{p,n}`;
/// the red edge `h_{p,q}` runs from `v_{p,q}` to `v_{p,q+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BergmanGraph {
    pub m: u32,
    pub n: u32,
    pub z: u32,
    pub vertices: Vec<String>,
    pub blue: Vec<BergmanEdge>,
    pub red: Vec<BergmanEdge>,
}

fn v(p: u32, q: u32) -> String {
    format!("v({p},{q})")
}

pub fn build_bergman_graph(m: u32, n: u32, z: u32) -> BergmanGraph {
    let mut g = BergmanGraph { m, n, z, vertices: vec![v(0, 1)], blue: Vec::new(), red: Vec::new() };
    if n == 1 {
        // every level collapses onto v(0,1)
        return g;
    }
    for p in 1..=z {
        for q in 1..=n {
            g.vertices.push(v(p, q));
        }
        g.blue.push(BergmanEdge {
            name: format!("g({p})"),
            source: v(p - 1, 1),
            multiplicity: m,
            range: (1..=n).map(|q| v(p, q)).collect(),
        });
        for q in 1..n {
            g.red.push(BergmanEdge { name: format!("h({p},{q})"), source: v(p, q), multiplicity: 1, range: vec![v(p, q + 1)] });
        }
    }
    g
}

type M<F> = StarMatrix<Polynomial<F>>;

/// One matrix relation `lhs = rhs` over the letters `ε, σ, σ̂`.
#[derive(Clone, Debug)]
pub struct BergmanRelation<F: Field> {
    pub label: String,
    pub lhs: M<F>,
    pub rhs: M<F>,
}

struct Symbols<F: Field> {
    spec: ASpec,
    ring: FreeRing<F>,
}

impl<F: Field> Symbols<F> {
    fn letters(&self, p: u32, f: impl Fn(u32, u32) -> Letter) -> Result<M<F>> {
        StarMatrix::from_fn(self.spec.m, p, p, |r, c| Polynomial::from_letter(f(r as u32 + 1, c as u32 + 1)))
    }

    /// `ε^{p,q}`, with `ε^{0,1} = (1)` and `ε^{p,n} = ⊕^m ε^{p−1,1} − Σ_{q<n} ε^{p,q}`.
    fn eps(&self, p: u32, q: u32) -> Result<M<F>> {
        if p == 0 {
            return Ok(StarMatrix::unit(&self.ring, self.spec.m));
        }
        if q < self.spec.n {
            return self.letters(p, |i, j| Letter::Eps { p, q, i, j });
        }
        let mut acc = self.eps(p - 1, 1)?.inflate(&self.ring, 1)?;
        for q in 1..self.spec.n {
            acc = acc.add(&self.ring, &self.eps(p, q)?.map(|x| x.neg()))?;
        }
        Ok(acc)
    }

    fn sig(&self, p: u32, q: u32) -> Result<M<F>> {
        self.letters(p, |i, j| Letter::Sig { p, q, i, j })
    }

    fn sig_hat(&self, p: u32, q: u32) -> Result<M<F>> {
        self.letters(p, |i, j| Letter::SigHat { p, q, i, j })
    }
}

/// The defining relations in matrix form, for every level up to `z`.
pub fn bergman_relations<F: Field>(spec: ASpec) -> Result<Vec<BergmanRelation<F>>> {
    let s = Symbols::<F> { spec, ring: FreeRing::new() };
    let r = &s.ring;
    let n = spec.n;
    let mut out = Vec::new();
    let mut push = |label: String, lhs: M<F>, rhs: M<F>| out.push(BergmanRelation { label, lhs, rhs });
    for p in 1..=spec.z {
        let outer = s.eps(p - 1, 1)?.inflate(r, 1)?;
        for q in 1..=n {
            let e = s.eps(p, q)?;
            push(format!("eps({p},{q}) inside level {}", p - 1), outer.star(r, &e)?.star(r, &outer)?, e.clone());
            for q2 in 1..=n {
                let rhs = if q == q2 { e.clone() } else { e.map(|_| Polynomial::zero()) };
                push(format!("eps({p},{q}) eps({p},{q2})"), e.star(r, &s.eps(p, q2)?)?, rhs);
            }
        }
        for q in 1..n {
            let (e, e1, sg, sh) = (s.eps(p, q)?, s.eps(p, q + 1)?, s.sig(p, q)?, s.sig_hat(p, q)?);
            push(format!("sig({p},{q}) framed"), e.star(r, &sg)?.star(r, &e1)?, sg.clone());
            push(format!("sigh({p},{q}) framed"), e1.star(r, &sh)?.star(r, &e)?, sh.clone());
            push(format!("sig({p},{q}) sigh({p},{q})"), sg.star(r, &sh)?, e);
            push(format!("sigh({p},{q}) sig({p},{q})"), sh.star(r, &sg)?, e1);
        }
    }
    Ok(out)
}

/// `ε^{p,q} ↦ e^{p,q,q}`, `σ^{p,q} ↦ e^{p,q,q+1}`, `σ̂^{p,q} ↦ e^{p,q+1,q}`.
pub fn bergman_image_letter<F: Field>(l: &Letter) -> Polynomial<F> {
    match *l {
        Letter::Eps { p, q, i, j } => Polynomial::from_letter(Letter::e(p, q, q, i, j)),
        Letter::Sig { p, q, i, j } => Polynomial::from_letter(Letter::e(p, q, q + 1, i, j)),
        Letter::SigHat { p, q, i, j } => Polynomial::from_letter(Letter::e(p, q + 1, q, i, j)),
        other => Polynomial::from_letter(other),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorMapReport {
    /// Name of the system used to reduce images.
    pub system: String,
    pub b_confluent: bool,
    pub relations: usize,
    pub check: CheckReport,
}

impl GeneratorMapReport {
    pub fn is_ok(&self) -> bool {
        self.check.is_ok()
    }
}

/// Sends every relation through the generator map and reduces both sides.
/// Images are reduced in `B(m,n,z)` when that system is confluent and in
/// `T(m,n,z)` otherwise.
pub fn bergman_generator_map<F: Field>(spec: ASpec) -> Result<GeneratorMapReport> {
    let b = build_system_b::<F>(spec);
    let b_confluent = check_diamond(&b)?.is_confluent();
    let sys = if b_confluent { b } else { build_system_t::<F>(spec) };
    let rels = bergman_relations::<F>(spec)?;
    let check = check_relations_in(&sys, &rels)?;
    Ok(GeneratorMapReport { system: sys.name().to_string(), b_confluent, relations: rels.len(), check })
}

fn check_relations_in<F: Field>(sys: &ReductionSystem<F>, rels: &[BergmanRelation<F>]) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("generator map into {}", sys.name()));
    let image = |x: &Polynomial<F>| sys.normal_form(&x.substitute(&bergman_image_letter));
    for rel in rels {
        let lhs = rel.lhs.try_map(image)?;
        let rhs = rel.rhs.try_map(image)?;
        for (pos, (a, b)) in lhs.entries().iter().zip(rhs.entries()).enumerate() {
            report.record(a == b, || format!("{} entry {}: {a} vs {b}", rel.label, pos + 1));
        }
    }
    Ok(report)
}

/// For `n = 1` every `e^{p,1,1}` reduces to the identity matrix.
pub fn b_collapse_n1<F: Field>(m: u32, z: u32) -> Result<CheckReport> {
    let spec = ASpec::new(m, 1, z)?;
    let t = build_system_t::<F>(spec);
    let ring = ReducedRing::new(&t);
    let mut report = CheckReport::new(format!("collapse of A({m},1,{z})"));
    for p in 1..=z {
        let reduced = e_matrix::<F>(spec, p, 1, 1)?.try_map(|x| t.normal_form(x))?;
        let ident = StarMatrix::unit(&ring, m).inflate(&ring, p)?;
        for (pos, (a, b)) in reduced.entries().iter().zip(ident.entries()).enumerate() {
            report.record(a == b, || format!("e(1,1) level {p} entry {}: {a}", pos + 1));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn graph_2_3_3() {
        let g = build_bergman_graph(2, 3, 3);
        assert_eq!((g.vertices.len(), g.blue.len(), g.red.len()), (10, 3, 6));
        assert_eq!((g.blue[0].source.as_str(), g.blue[0].multiplicity), ("v(0,1)", 2));
        assert_eq!(g.red[1].range, vec!["v(1,3)".to_string()]);
        let g = build_bergman_graph(3, 1, 4);
        assert_eq!((g.vertices.len(), g.blue.len(), g.red.len()), (1, 0, 0));
    }

    #[test]
    fn last_eps_is_a_difference() {
        let s = Symbols::<Rational> { spec: ASpec::new(2, 2, 1).unwrap(), ring: FreeRing::new() };
        let e = s.eps(1, 2).unwrap();
        assert_eq!(e.get(0, 0).unwrap().to_string(), "1 - 1*eps(1,1,1,1)");
        assert_eq!(e.get(0, 1).unwrap().to_string(), "-1*eps(1,1,1,2)");
    }

    #[test]
    fn generator_map_respects_relations() {
        for (m, n, z) in [(2, 2, 1), (2, 3, 1), (2, 2, 2)] {
            let rep = bergman_generator_map::<Rational>(ASpec::new(m, n, z).unwrap()).unwrap();
            assert!(rep.is_ok(), "({m},{n},{z}): {:?}", rep.check.failures);
        }
    }

    #[test]
    fn a_broken_image_is_detected() {
        let spec = ASpec::new(2, 2, 1).unwrap();
        let t = build_system_t::<Rational>(spec);
        let mut rels = bergman_relations::<Rational>(spec).unwrap();
        let last = rels.last_mut().unwrap();
        last.rhs = last.rhs.map(|_| Polynomial::zero());
        assert!(!check_relations_in(&t, &rels).unwrap().is_ok());
    }

    #[test]
    fn collapse_for_n_1() {
        let rep = b_collapse_n1::<Rational>(2, 2).unwrap();
        assert!(rep.is_ok());
        assert_eq!(rep.checked, 4 + 16);
    }
}
