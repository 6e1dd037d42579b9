//! Algebraic identities of extractions, checked two ways: by definition on
//! primary decompositions, and through lifted membership tests.

use std::fmt;

use super::{extraction_membership, extraction_radical_membership, lift, ExtractionQuery};
use crate::error::Result;
use crate::oracle::{
    beta_decomposition, beta_oracle, intersect_all, kept_components, radical_of_decomposition, PrimaryDecomposition,
};
use crate::poly::{Ideal, Polynomial, Ring};
use crate::sb::{ideal_contains, ideal_intersection, ideals_equal, reduced_gb};

/// Decompositions available to the identity checks.
#[derive(Clone, Copy, Debug)]
pub struct IdentityInputs<'a> {
    pub i: &'a PrimaryDecomposition,
    pub j: &'a PrimaryDecomposition,
    pub h: &'a PrimaryDecomposition,
    pub l: &'a Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub status: IdentityStatus,
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, IdentityStatus::Fail(_)))
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.status {
                IdentityStatus::Pass => writeln!(f, "{:<4} pass     {}", c.name, c.statement)?,
                IdentityStatus::Fail(why) => writeln!(f, "{:<4} FAIL     {}  ({why})", c.name, c.statement)?,
                IdentityStatus::Skipped(why) => writeln!(f, "{:<4} skipped  {}  ({why})", c.name, c.statement)?,
            }
        }
        Ok(())
    }
}

/// Probe polynomials: variables, the constant 1, and the given generators.
fn probes(ring: &Ring, extra: &[&Ideal]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = (0..ring.nvars()).map(|k| Polynomial::variable(ring, k)).collect();
    out.push(Polynomial::one(ring));
    for i in extra {
        out.extend(i.nonzero_gens());
    }
    out
}

/// Membership through the lift agrees with membership in `expected` on the
/// generators of `expected` and on every probe.
fn lift_agrees(q: &ExtractionQuery, expected: &Ideal, probes: &[Polynomial]) -> Result<Option<String>> {
    let gb = reduced_gb(expected);
    for f in gb.iter().chain(probes) {
        let by_lift = extraction_membership(f, q)?;
        let by_def = ideal_contains(expected, f)?;
        if by_lift != by_def {
            return Ok(Some(format!(
                "`{f}`: lifted membership says {by_lift}, decomposition says {by_def}"
            )));
        }
    }
    Ok(None)
}

fn compare(lhs: &Ideal, rhs: &Ideal) -> Result<Option<String>> {
    if ideals_equal(lhs, rhs)? {
        Ok(None)
    } else {
        Ok(Some(format!(
            "{} != {}",
            Ideal::new(lhs.ring(), reduced_gb(lhs))?,
            Ideal::new(rhs.ring(), reduced_gb(rhs))?
        )))
    }
}

fn status(mismatch: Option<String>) -> IdentityStatus {
    match mismatch {
        None => IdentityStatus::Pass,
        Some(m) => IdentityStatus::Fail(m),
    }
}

/// Union of two decompositions: a possibly redundant decomposition of `I ∩ H`.
fn union_decomposition(
    a: &PrimaryDecomposition,
    b: &PrimaryDecomposition,
    meet: &Ideal,
) -> Result<PrimaryDecomposition> {
    let mut comps = a.components().to_vec();
    comps.extend(b.components().iter().cloned());
    let radicals = match (a.component_radicals(), b.component_radicals()) {
        (Ok(mut ra), Ok(rb)) => {
            ra.extend(rb);
            Some(ra)
        }
        _ => None,
    };
    PrimaryDecomposition::user_supplied(meet.clone(), comps, radicals)
}

/// Evaluates the seven identities and the lift/intersection lemma.
///
/// Each identity is decided on the decompositions; where a side is an
/// extraction of a known ideal, its lifted membership test must also agree
/// with the decomposition answer.
pub fn check_identities(inputs: IdentityInputs<'_>) -> Result<IdentityReport> {
    let IdentityInputs { i: di, j: dj, h: dh, l } = inputs;
    let i = di.ideal();
    let j = dj.ideal();
    let h = dh.ideal();
    let ring = i.ring();
    let pr = probes(ring, &[i, j, h, l]);
    let mut report = IdentityReport::default();
    let beta_ij = beta_oracle(di, j)?;
    let q_ij = lift(i, j)?;

    // (1)
    let s1 = match radical_of_decomposition(dj) {
        Err(e) => IdentityStatus::Skipped(e.to_string()),
        Ok(rj) => {
            let lhs = beta_oracle(di, rj.ideal())?;
            let q = lift(i, rj.ideal())?;
            status(compare(&lhs, &beta_ij)?.or(lift_agrees(&q, &lhs, &pr)?))
        }
    };
    report.checks.push(IdentityCheck {
        name: "(1)",
        statement: "β(I,√J) = β(I,J)",
        status: s1,
    });

    // (2)
    let s2 = match radical_of_decomposition(di) {
        Err(e) => IdentityStatus::Skipped(e.to_string()),
        Ok(ri) => {
            let lhs = beta_oracle(&ri, j)?;
            let rhs = radical_of_decomposition(&beta_decomposition(di, j)?)?.ideal().clone();
            let mut mismatch = compare(&lhs, &rhs)?;
            if mismatch.is_none() {
                let q = lift(ri.ideal(), j)?;
                mismatch = lift_agrees(&q, &lhs, &pr)?;
            }
            if mismatch.is_none() {
                for f in reduced_gb(&lhs).iter().chain(&pr) {
                    let by_lift = extraction_radical_membership(f, &q_ij)?;
                    let by_def = ideal_contains(&rhs, f)?;
                    if by_lift != by_def {
                        mismatch = Some(format!("`{f}`: lifted radical membership says {by_lift}"));
                        break;
                    }
                }
            }
            status(mismatch)
        }
    };
    report.checks.push(IdentityCheck {
        name: "(2)",
        statement: "β(√I,J) = √β(I,J)",
        status: s2,
    });

    // (3) and the lift of an intersection
    let meet = ideal_intersection(i, h)?;
    let dih = union_decomposition(di, dh, &meet)?;
    let lhs3 = beta_oracle(&dih, j)?;
    let rhs3 = ideal_intersection(&beta_ij, &beta_oracle(dh, j)?)?;
    let q3 = lift(&meet, j)?;
    let s3 = status(compare(&lhs3, &rhs3)?.or(lift_agrees(&q3, &lhs3, &pr)?));
    report.checks.push(IdentityCheck {
        name: "(3)",
        statement: "β(I∩H,J) = β(I,J) ∩ β(H,J)",
        status: s3,
    });

    let q_h = lift(h, j)?;
    let lifted_meet = ideal_intersection(q_ij.lifted_ideal(), q_h.lifted_ideal())?;
    let s63 = status(compare(q3.lifted_ideal(), &lifted_meet)?);
    report.checks.push(IdentityCheck {
        name: "L",
        statement: "(I∩H)' = I' ∩ H'",
        status: s63,
    });

    // (4)
    let jl = ideal_intersection(j, l)?;
    let lhs4 = beta_oracle(di, &jl)?;
    let beta_il = beta_oracle(di, l)?;
    let rhs4 = ideal_intersection(&beta_ij, &beta_il)?;
    let q4 = lift(i, &jl)?;
    let s4 = status(compare(&lhs4, &rhs4)?.or(lift_agrees(&q4, &lhs4, &pr)?));
    report.checks.push(IdentityCheck {
        name: "(4)",
        statement: "β(I,J∩L) = β(I,J) ∩ β(I,L)",
        status: s4,
    });

    // (5)
    let d_beta_ij = beta_decomposition(di, j)?;
    let lhs5 = beta_oracle(&d_beta_ij, j)?;
    let q5 = lift(&beta_ij, j)?;
    let s5 = status(compare(&lhs5, &beta_ij)?.or(lift_agrees(&q5, &lhs5, &pr)?));
    report.checks.push(IdentityCheck {
        name: "(5)",
        statement: "β(β(I,J),J) = β(I,J)",
        status: s5,
    });

    // (6)
    let beta_ji = beta_oracle(dj, i)?;
    let lhs6 = beta_oracle(di, &beta_ji)?;
    let q6 = lift(i, &beta_ji)?;
    let s6 = status(compare(&lhs6, &beta_ij)?.or(lift_agrees(&q6, &lhs6, &pr)?));
    report.checks.push(IdentityCheck {
        name: "(6)",
        statement: "β(I,β(J,I)) = β(I,J)",
        status: s6,
    });

    // (7)
    let lhs7 = beta_oracle(&d_beta_ij, l)?;
    let rhs7 = beta_oracle(&beta_decomposition(di, l)?, j)?;
    let q7a = lift(&beta_ij, l)?;
    let q7b = lift(&beta_il, j)?;
    let s7 = status(
        compare(&lhs7, &rhs7)?
            .or(lift_agrees(&q7a, &lhs7, &pr)?)
            .or(lift_agrees(&q7b, &rhs7, &pr)?),
    );
    report.checks.push(IdentityCheck {
        name: "(7)",
        statement: "β(β(I,J),L) = β(β(I,L),J)",
        status: s7,
    });

    Ok(report)
}

/// Lifts each component `Q` of `d` to `Q + <t - g>` in the lifted ring and
/// checks that these decompose `I'`, that substituting `t = g` back into
/// their bases re-intersects to `I`, and that a component survives the
/// localization exactly when it meets `V(J)`.
pub fn check_lift_decomposition(q: &ExtractionQuery, d: &PrimaryDecomposition) -> Result<bool> {
    let lr = q.lifted_ring();
    let ring = q.ring();
    let control_gens: Vec<Polynomial> = if q.control().gens().is_empty() {
        vec![Polynomial::zero(ring)]
    } else {
        q.control().gens().to_vec()
    };
    let mut lifted = Vec::new();
    for c in d.components() {
        let mut gens: Vec<Polynomial> = c.gens().iter().map(|g| g.embed(lr)).collect::<Result<_>>()?;
        for (t, g) in q.t_names().iter().zip(&control_gens) {
            gens.push(&Polynomial::var(lr, t)? - &g.embed(lr)?);
        }
        lifted.push(Ideal::new(lr, gens)?);
    }
    if !ideals_equal(&intersect_all(lr, &lifted)?, q.lifted_ideal())? {
        return Ok(false);
    }
    let assignments: Vec<(&str, Polynomial)> = q
        .t_names()
        .iter()
        .map(|t| t.as_str())
        .zip(control_gens.iter().cloned())
        .collect();
    let mut back = Vec::new();
    for c in &lifted {
        let gens: Vec<Polynomial> = reduced_gb(c)
            .iter()
            .map(|g| g.substitute(&assignments, ring))
            .collect::<Result<_>>()?;
        back.push(Ideal::new(ring, gens)?);
    }
    if !ideals_equal(&intersect_all(ring, &back)?, q.ideal())? {
        return Ok(false);
    }
    let t_ideal = Ideal::new(
        lr,
        q.t_names()
            .iter()
            .map(|t| Polynomial::var(lr, t))
            .collect::<Result<_>>()?,
    )?;
    let dl = PrimaryDecomposition::user_supplied(q.lifted_ideal().clone(), lifted, None)?;
    Ok(kept_components(&dl, &t_ideal)? == kept_components(d, q.control())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{monomial_primary_decomposition, point_ideal, RationalPointSet};
    use crate::parse::parse_polynomial;
    use crate::poly::integer;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().map(|s| s.to_string())).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn two_component_data() {
        let r = ring(&["x", "y"]);
        let di = monomial_primary_decomposition(&ideal(&r, &["x^2", "x*y"])).unwrap();
        let (_, dj) = point_ideal(&RationalPointSet::new(&r, vec![vec![integer(0), integer(1)]]).unwrap()).unwrap();
        let dh = monomial_primary_decomposition(&ideal(&r, &["y"])).unwrap();
        let l = ideal(&r, &["x - 1", "y"]);
        let report = check_identities(IdentityInputs {
            i: &di,
            j: &dj,
            h: &dh,
            l: &l,
        })
        .unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.checks.len(), 8);
        assert_eq!(report.get("(4)").unwrap().status, IdentityStatus::Pass);
        assert_eq!(report.get("(2)").unwrap().status, IdentityStatus::Pass);
    }

    #[test]
    fn lift_components() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let d = monomial_primary_decomposition(&i).unwrap();
        let q = lift(&i, &ideal(&r, &["x", "y - 1"])).unwrap();
        assert!(check_lift_decomposition(&q, &d).unwrap());
    }
}
