//! Ground truth by primary decomposition, for ideal classes where one can be
//! written down directly.

mod file;
mod monomial;

use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::poly::{Ideal, Monomial, Polynomial, Rational, Ring};
use crate::sb::{
    dim_ideal, ideal_intersection, ideal_is_subset, ideal_quotient, ideal_sum_is_whole_ring, ideals_equal,
    radical_membership, MonomialIdeal,
};

pub use file::{format_decomposition, parse_decomposition};

/// Where a decomposition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    MonomialSplit,
    Point,
    FactoredPrincipal,
    UserSupplied,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::MonomialSplit => "monomial-split",
            Provenance::Point => "point",
            Provenance::FactoredPrincipal => "factored-principal",
            Provenance::UserSupplied => "user-supplied",
        }
    }

    pub fn from_name(s: &str) -> Option<Provenance> {
        Some(match s {
            "monomial-split" => Provenance::MonomialSplit,
            "point" => Provenance::Point,
            "factored-principal" => Provenance::FactoredPrincipal,
            "user-supplied" => Provenance::UserSupplied,
            _ => return None,
        })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `ideal = components[0] ∩ ... ∩ components[k-1]` with primary components.
///
/// An empty component list stands for the unit ideal.
#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    ideal: Ideal,
    components: Vec<Ideal>,
    radicals: Option<Vec<Ideal>>,
    provenance: Provenance,
    minimal: bool,
}

/// Intersection of a list of ideals; the unit ideal for an empty list.
pub fn intersect_all(ring: &Ring, ideals: &[Ideal]) -> Result<Ideal> {
    let mut it = ideals.iter();
    let Some(first) = it.next() else {
        return Ok(Ideal::unit(ring));
    };
    let mut acc = first.clone();
    for q in it {
        acc = ideal_intersection(&acc, q)?;
    }
    Ok(acc)
}

impl PrimaryDecomposition {
    /// A decomposition supplied from outside. Primariness is trusted; the
    /// intersection is checked. Minimality is recorded only when verified.
    pub fn user_supplied(ideal: Ideal, components: Vec<Ideal>, radicals: Option<Vec<Ideal>>) -> Result<Self> {
        Self::with_provenance(ideal, components, radicals, Provenance::UserSupplied)
    }

    pub(crate) fn with_provenance(
        ideal: Ideal,
        components: Vec<Ideal>,
        radicals: Option<Vec<Ideal>>,
        provenance: Provenance,
    ) -> Result<Self> {
        for c in &components {
            ideal.ring().ensure_same(c.ring())?;
        }
        if let Some(r) = &radicals {
            if r.len() != components.len() {
                return Err(Error::RadicalUnavailable(format!(
                    "{} radicals for {} components",
                    r.len(),
                    components.len()
                )));
            }
        }
        let mut d = PrimaryDecomposition {
            ideal,
            components,
            radicals,
            provenance,
            minimal: false,
        };
        d.verify()?;
        d.minimal = d.check_minimal()?;
        Ok(d)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn components(&self) -> &[Ideal] {
        &self.components
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Checks that the components intersect to the ideal.
    pub fn verify(&self) -> Result<()> {
        let back = intersect_all(self.ring(), &self.components)?;
        if ideals_equal(&back, &self.ideal)? {
            Ok(())
        } else {
            Err(Error::DecompositionMismatch)
        }
    }

    /// Radicals of the components, where the class allows computing them.
    pub fn component_radicals(&self) -> Result<Vec<Ideal>> {
        if let Some(r) = &self.radicals {
            return Ok(r.clone());
        }
        let ring = self.ring();
        match self.provenance {
            Provenance::Point => Ok(self.components.clone()),
            Provenance::MonomialSplit => self
                .components
                .iter()
                .map(|c| {
                    let m = to_monomial(c)?;
                    Ok(from_monomial(ring, &monomial::radical(&m)))
                })
                .collect(),
            Provenance::FactoredPrincipal | Provenance::UserSupplied => Err(Error::RadicalUnavailable(format!(
                "{} decomposition without radical annotations",
                self.provenance
            ))),
        }
    }

    /// Irredundancy, plus pairwise-distinct radicals when those are known.
    fn check_minimal(&self) -> Result<bool> {
        let n = self.components.len();
        if let Ok(rads) = self.component_radicals() {
            for i in 0..n {
                for j in i + 1..n {
                    if ideals_equal(&rads[i], &rads[j])? {
                        return Ok(false);
                    }
                }
            }
        } else if self.provenance != Provenance::FactoredPrincipal {
            return Ok(false);
        }
        for i in 0..n {
            let others: Vec<Ideal> = self
                .components
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c.clone())
                .collect();
            if others.is_empty() {
                continue;
            }
            let meet = intersect_all(self.ring(), &others)?;
            if ideal_is_subset(&meet, &self.components[i])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A finite set of distinct rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPointSet {
    ring: Ring,
    points: Vec<Vec<Rational>>,
}

impl RationalPointSet {
    pub fn new(ring: &Ring, points: Vec<Vec<Rational>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    got: p.len(),
                });
            }
            if points[..i].contains(p) {
                return Err(Error::DuplicatePoint);
            }
        }
        Ok(RationalPointSet {
            ring: ring.clone(),
            points,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// `<x1 - a1, ..., xn - an>`.
    pub fn maximal_ideal(&self, point: &[Rational]) -> Ideal {
        let gens = point
            .iter()
            .enumerate()
            .map(|(i, a)| &Polynomial::variable(&self.ring, i) - &Polynomial::constant(&self.ring, a.clone()))
            .collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }
}

fn to_monomial(ideal: &Ideal) -> Result<MonomialIdeal> {
    if !ideal.is_monomial() {
        return Err(Error::NotMonomial(ideal.to_string()));
    }
    Ok(MonomialIdeal::new(
        ideal.ring().nvars(),
        ideal
            .nonzero_gens()
            .iter()
            .map(|g| g.as_monomial().expect("single term").clone()),
    ))
}

fn from_monomial(ring: &Ring, m: &MonomialIdeal) -> Ideal {
    if m.min_gens().is_empty() {
        return Ideal::zero(ring);
    }
    let gens = m
        .min_gens()
        .iter()
        .map(|g| Polynomial::term(ring, g.clone(), Rational::from_integer(1.into())))
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

/// Minimal primary decomposition of an ideal generated by monomials.
pub fn monomial_primary_decomposition(ideal: &Ideal) -> Result<PrimaryDecomposition> {
    let m = to_monomial(ideal)?;
    let ring = ideal.ring();
    let comps: Vec<Ideal> = monomial::decompose(&m).iter().map(|c| from_monomial(ring, c)).collect();
    PrimaryDecomposition::with_provenance(ideal.clone(), comps, None, Provenance::MonomialSplit)
}

/// Decomposition of `<p1^e1 ... pk^ek>` from a factorization into pairwise
/// non-associate irreducibles, which the caller vouches for.
pub fn principal_decomposition(ring: &Ring, factors: &[(Polynomial, u32)]) -> Result<PrimaryDecomposition> {
    let mut product = Polynomial::one(ring);
    let mut comps = Vec::new();
    let mut rads = Vec::new();
    for (p, e) in factors {
        ring.ensure_same(p.ring())?;
        if *e == 0 || p.is_constant() {
            return Err(Error::ProductMismatch(format!(
                "`{p}` with multiplicity {e} is not a proper factor"
            )));
        }
        let base = Ideal::new(ring, vec![p.clone()])?;
        for r in &rads {
            if ideals_equal(r, &base)? {
                return Err(Error::ProductMismatch(format!("repeated factor `{p}`")));
            }
        }
        let power = p.pow(*e);
        product = &product * &power;
        comps.push(Ideal::new(ring, vec![power])?);
        rads.push(base);
    }
    let ideal = Ideal::new(ring, vec![product])?;
    PrimaryDecomposition::with_provenance(ideal, comps, Some(rads), Provenance::FactoredPrincipal)
}

/// Like [`principal_decomposition`], checking that the factors multiply to
/// `f` up to a nonzero constant.
pub fn principal_decomposition_of(f: &Polynomial, factors: &[(Polynomial, u32)]) -> Result<PrimaryDecomposition> {
    let d = principal_decomposition(f.ring(), factors)?;
    let target = Ideal::new(f.ring(), vec![f.clone()])?;
    if f.is_zero() || !ideals_equal(&target, d.ideal())? {
        return Err(Error::ProductMismatch(format!("factors do not multiply to `{f}`")));
    }
    Ok(PrimaryDecomposition { ideal: target, ..d })
}

/// The radical ideal of a point set and its decomposition into maximal ideals.
pub fn point_ideal(points: &RationalPointSet) -> Result<(Ideal, PrimaryDecomposition)> {
    let comps: Vec<Ideal> = points.points().iter().map(|p| points.maximal_ideal(p)).collect();
    let ideal = intersect_all(points.ring(), &comps)?;
    let ideal = Ideal::new(points.ring(), crate::sb::reduced_gb(&ideal))?;
    let d = PrimaryDecomposition::with_provenance(ideal.clone(), comps, None, Provenance::Point)?;
    Ok((ideal, d))
}

/// Indices of the components `Q` with `Q + J` proper.
pub fn kept_components(d: &PrimaryDecomposition, j: &Ideal) -> Result<Vec<usize>> {
    let mut kept = Vec::new();
    for (i, q) in d.components().iter().enumerate() {
        if !ideal_sum_is_whole_ring(q, j)? {
            kept.push(i);
        }
    }
    Ok(kept)
}

/// The extraction computed by definition: the intersection of the components
/// meeting `V(J)`. Non-minimal decompositions are allowed.
pub fn beta_oracle(d: &PrimaryDecomposition, j: &Ideal) -> Result<Ideal> {
    let kept: Vec<Ideal> = kept_components(d, j)?
        .into_iter()
        .map(|i| d.components()[i].clone())
        .collect();
    intersect_all(d.ring(), &kept)
}

/// The sub-decomposition of kept components, as a decomposition of β.
pub fn beta_decomposition(d: &PrimaryDecomposition, j: &Ideal) -> Result<PrimaryDecomposition> {
    let idx = kept_components(d, j)?;
    let comps: Vec<Ideal> = idx.iter().map(|&i| d.components()[i].clone()).collect();
    let radicals = d.radicals.as_ref().map(|r| idx.iter().map(|&i| r[i].clone()).collect());
    let ideal = intersect_all(d.ring(), &comps)?;
    let mut out = PrimaryDecomposition {
        ideal,
        components: comps,
        radicals,
        provenance: d.provenance,
        minimal: false,
    };
    out.minimal = d.minimal || out.check_minimal()?;
    Ok(out)
}

fn local_variable_ideal(order: &OrderSpec) -> Ideal {
    let ring = order.ring();
    let locals = order.local_vars();
    if locals.is_empty() {
        return Ideal::zero(ring);
    }
    Ideal::new(
        ring,
        locals.into_iter().map(|i| Polynomial::variable(ring, i)).collect(),
    )
    .expect("same ring")
}

/// Contraction of the localization at a control order, by keeping the
/// components that meet the origin of the local coordinates.
pub fn contract_oracle(d: &PrimaryDecomposition, order: &OrderSpec) -> Result<Ideal> {
    d.ring().ensure_same(order.ring())?;
    if !order.is_control() {
        return Err(Error::NonControlOrder(
            "component filter is only valid for control orders".into(),
        ));
    }
    beta_oracle(d, &local_variable_ideal(order))
}

/// Contraction for a radical point ideal under any semigroup order: the
/// points whose local coordinates all vanish survive.
pub fn zero_dim_contract_oracle(points: &RationalPointSet, order: &OrderSpec) -> Result<Ideal> {
    points.ring().ensure_same(order.ring())?;
    let locals = order.local_vars();
    let kept: Vec<Vec<Rational>> = points
        .points()
        .iter()
        .filter(|p| locals.iter().all(|&i| p[i].is_zero()))
        .cloned()
        .collect();
    if kept.is_empty() {
        return Ok(Ideal::unit(points.ring()));
    }
    let sub = RationalPointSet::new(points.ring(), kept)?;
    Ok(point_ideal(&sub)?.0)
}

/// Largest component dimension; `-1` when there are no components.
pub fn dim_oracle(d: &PrimaryDecomposition) -> i64 {
    d.components().iter().map(dim_ideal).max().unwrap_or(-1)
}

/// Decomposition of the radical into the minimal primes among the component
/// radicals.
pub fn radical_of_decomposition(d: &PrimaryDecomposition) -> Result<PrimaryDecomposition> {
    let rads = d.component_radicals()?;
    let mut minimal: Vec<Ideal> = Vec::new();
    for (i, p) in rads.iter().enumerate() {
        let mut keep = true;
        for (j, q) in rads.iter().enumerate() {
            if i == j {
                continue;
            }
            // q ⊆ p with q != p, or equal and seen earlier
            if ideal_is_subset(q, p)? && (!ideal_is_subset(p, q)? || j < i) {
                keep = false;
                break;
            }
        }
        if keep {
            minimal.push(p.clone());
        }
    }
    let ideal = intersect_all(d.ring(), &minimal)?;
    PrimaryDecomposition::with_provenance(ideal, minimal.clone(), Some(minimal), d.provenance)
}

/// Heuristic primariness test: for sampled `f`, `Q : f != Q` must imply
/// `f` in the radical of `Q`. A `false` answer is a certificate; `true` is not.
pub fn check_primary_heuristic<R: Rng>(q: &Ideal, rng: &mut R, trials: usize) -> Result<bool> {
    let ring = q.ring();
    let mut candidates: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect();
    for _ in 0..trials {
        let mut f = Polynomial::zero(ring);
        for i in 0..ring.nvars() {
            let c: i64 = rng.random_range(-2..=2);
            let mut e = vec![0u32; ring.nvars()];
            e[i] = 1;
            f = &f + &Polynomial::term(ring, Monomial::from_exponents(&e), Rational::from_integer(c.into()));
        }
        let c: i64 = rng.random_range(-2..=2);
        f = &f + &Polynomial::constant(ring, Rational::from_integer(c.into()));
        candidates.push(f);
    }
    for f in candidates {
        if f.is_zero() {
            continue;
        }
        let colon = ideal_quotient(q, &Ideal::new(ring, vec![f.clone()])?)?;
        if !ideals_equal(&colon, q)? && !radical_membership(&f, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_order, parse_polynomial};
    use crate::poly::integer;
    use crate::sb::reduced_gb;
    use rand::SeedableRng;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().map(|s| s.to_string())).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    fn gb(i: &Ideal) -> Vec<String> {
        reduced_gb(i).iter().map(|g| g.to_string()).collect()
    }

    fn pts(r: &Ring, ps: &[&[i64]]) -> RationalPointSet {
        RationalPointSet::new(r, ps.iter().map(|p| p.iter().map(|&c| integer(c)).collect()).collect()).unwrap()
    }

    #[test]
    fn monomial_decompositions() {
        let r = ring(&["x", "y"]);
        let d = monomial_primary_decomposition(&ideal(&r, &["x^2", "x*y"])).unwrap();
        let shown: Vec<Vec<String>> = d.components().iter().map(gb).collect();
        assert_eq!(shown, vec![vec!["x"], vec!["x^2", "y"]]);
        assert!(d.is_minimal());
        assert_eq!(dim_oracle(&d), 1);
        let rad = radical_of_decomposition(&d).unwrap();
        assert_eq!(rad.components().len(), 1);
        assert_eq!(gb(&rad.components()[0]), vec!["x"]);
        let d = monomial_primary_decomposition(&ideal(&r, &["x^2"])).unwrap();
        assert_eq!(d.components().len(), 1);
        assert!(monomial_primary_decomposition(&ideal(&r, &["x + y"])).is_err());
    }

    #[test]
    fn principal() {
        let r = ring(&["x", "y"]);
        let d = principal_decomposition_of(&p(&r, "x^2 - x*y"), &[(p(&r, "x"), 1), (p(&r, "x - y"), 1)]).unwrap();
        assert_eq!(d.components().len(), 2);
        assert!(d.is_minimal());
        let d = principal_decomposition(&r, &[(p(&r, "x"), 2)]).unwrap();
        assert_eq!(gb(&d.components()[0]), vec!["x^2"]);
        let d = principal_decomposition_of(&p(&r, "x^2*y - x"), &[(p(&r, "x*y - 1"), 1), (p(&r, "x"), 1)]).unwrap();
        assert_eq!(dim_oracle(&d), 1);
        assert!(matches!(
            principal_decomposition_of(&p(&r, "x^2 - y"), &[(p(&r, "x"), 2)]),
            Err(Error::ProductMismatch(_))
        ));
        assert!(matches!(
            principal_decomposition(&r, &[(p(&r, "x"), 1), (p(&r, "2*x"), 1)]),
            Err(Error::ProductMismatch(_))
        ));
    }

    #[test]
    fn points() {
        let r = ring(&["x", "y"]);
        let (i, d) = point_ideal(&pts(&r, &[&[0, 0]])).unwrap();
        assert_eq!(gb(&i), vec!["x", "y"]);
        assert!(d.is_minimal());
        let (i, _) = point_ideal(&pts(&r, &[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(gb(&i), vec!["x^2 - x", "y"]);
        let (i, _) = point_ideal(&pts(&r, &[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(gb(&i), vec!["x^2 - x", "y - 1"]);
        assert!(matches!(RationalPointSet::new(&r, vec![]), Err(Error::EmptyPointSet)));
        assert!(matches!(
            RationalPointSet::new(&r, vec![vec![integer(1), integer(1)]; 2]),
            Err(Error::DuplicatePoint)
        ));
    }

    #[test]
    fn beta_by_definition() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let j = ideal(&r, &["x", "y - 1"]);
        let d1 = monomial_primary_decomposition(&i).unwrap();
        let d2 = PrimaryDecomposition::user_supplied(
            i.clone(),
            vec![ideal(&r, &["x"]), ideal(&r, &["x^2", "x*y", "y^2"])],
            None,
        )
        .unwrap();
        assert_eq!(gb(&beta_oracle(&d1, &j).unwrap()), vec!["x"]);
        assert_eq!(gb(&beta_oracle(&d2, &j).unwrap()), vec!["x"]);
        assert_eq!(gb(&beta_oracle(&d1, &Ideal::unit(&r)).unwrap()), vec!["1"]);
        let dxy = monomial_primary_decomposition(&ideal(&r, &["x*y"])).unwrap();
        assert_eq!(gb(&beta_oracle(&dxy, &ideal(&r, &["x - 1", "y"])).unwrap()), vec!["y"]);
        assert!(PrimaryDecomposition::user_supplied(i, vec![ideal(&r, &["x"])], None).is_err());
    }

    #[test]
    fn contractions() {
        let r = ring(&["x", "y"]);
        let d = principal_decomposition(&r, &[(p(&r, "x"), 1), (p(&r, "y - 1"), 1)]).unwrap();
        let o = parse_order(&r, "matrix([[0,-1],[1,0]])").unwrap();
        assert_eq!(gb(&contract_oracle(&d, &o).unwrap()), vec!["x"]);
        let g = OrderSpec::degrevlex(&r);
        assert!(ideals_equal(&contract_oracle(&d, &g).unwrap(), d.ideal()).unwrap());
        let d = principal_decomposition(&r, &[(p(&r, "x*y - 1"), 1)]).unwrap();
        let nc = parse_order(&r, "matrix([[1,0],[0,-1]])").unwrap();
        assert!(matches!(contract_oracle(&d, &nc), Err(Error::NonControlOrder(_))));

        let set = pts(&r, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(gb(&zero_dim_contract_oracle(&set, &nc).unwrap()), vec!["x^2 - x", "y"]);
        let (full, _) = point_ideal(&set).unwrap();
        assert!(ideals_equal(&zero_dim_contract_oracle(&set, &g).unwrap(), &full).unwrap());
        let one = pts(&r, &[&[1, 1]]);
        let xl = parse_order(&r, "matrix([[-1,0],[0,1]])").unwrap();
        assert_eq!(gb(&zero_dim_contract_oracle(&one, &xl).unwrap()), vec!["1"]);
    }

    #[test]
    fn primary_heuristic() {
        let r = ring(&["x", "y"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert!(check_primary_heuristic(&ideal(&r, &["x^2", "y"]), &mut rng, 4).unwrap());
        assert!(!check_primary_heuristic(&ideal(&r, &["x*y"]), &mut rng, 4).unwrap());
    }
}
