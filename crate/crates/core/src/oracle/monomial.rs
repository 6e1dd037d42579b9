//! Primary decomposition of monomial ideals by splitting.

use crate::poly::Monomial;
use crate::sb::MonomialIdeal;

fn with_gen(m: &MonomialIdeal, g: Monomial) -> MonomialIdeal {
    MonomialIdeal::new(m.nvars(), m.min_gens().iter().cloned().chain([g]))
}

/// Irreducible components: every generator a pure power.
fn irreducible_components(m: &MonomialIdeal, out: &mut Vec<MonomialIdeal>) {
    let mixed = m.min_gens().iter().find(|g| g.support().count() > 1);
    match mixed {
        None => out.push(m.clone()),
        Some(g) => {
            let i = g.support().next().expect("non-empty support");
            let mut power = Monomial::one(m.nvars());
            power.set(i, g.exponents()[i]);
            let mut rest = g.clone();
            rest.set(i, 0);
            irreducible_components(&with_gen(m, power), out);
            irreducible_components(&with_gen(m, rest), out);
        }
    }
}

/// Intersection of monomial ideals: lcms of generator pairs.
pub(crate) fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let mut gens = Vec::with_capacity(a.min_gens().len() * b.min_gens().len());
    for x in a.min_gens() {
        for y in b.min_gens() {
            gens.push(x.lcm(y));
        }
    }
    MonomialIdeal::new(a.nvars(), gens)
}

pub(crate) fn contains_ideal(outer: &MonomialIdeal, inner: &MonomialIdeal) -> bool {
    inner.min_gens().iter().all(|g| outer.contains(g))
}

/// Radical of a monomial ideal: the squarefree parts of its generators.
pub(crate) fn radical(m: &MonomialIdeal) -> MonomialIdeal {
    MonomialIdeal::new(
        m.nvars(),
        m.min_gens().iter().map(|g| {
            let e: Vec<u32> = g.exponents().iter().map(|&x| x.min(1)).collect();
            Monomial::from_exponents(&e)
        }),
    )
}

/// A minimal primary decomposition. The zero ideal gives one empty
/// component (itself) and the unit ideal gives none.
pub(crate) fn decompose(m: &MonomialIdeal) -> Vec<MonomialIdeal> {
    if m.is_unit() {
        return Vec::new();
    }
    if m.min_gens().is_empty() {
        return vec![m.clone()];
    }
    let mut leaves = Vec::new();
    irreducible_components(m, &mut leaves);

    // merge components sharing a radical; the result stays primary
    let mut groups: Vec<(MonomialIdeal, MonomialIdeal)> = Vec::new();
    for leaf in leaves {
        let r = radical(&leaf);
        match groups.iter_mut().find(|(gr, _)| *gr == r) {
            Some((_, q)) => *q = intersect(q, &leaf),
            None => groups.push((r, leaf)),
        }
    }
    let mut comps: Vec<MonomialIdeal> = groups.into_iter().map(|(_, q)| q).collect();

    // drop components containing the intersection of the others
    let mut i = 0;
    while i < comps.len() {
        let others = comps
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.clone())
            .reduce(|a, b| intersect(&a, &b));
        match others {
            Some(o) if contains_ideal(&comps[i], &o) => {
                comps.remove(i);
            }
            _ => i += 1,
        }
    }
    comps.sort_by(|a, b| {
        let da = a.min_gens().len();
        let db = b.min_gens().len();
        da.cmp(&db).then_with(|| a.min_gens().cmp(b.min_gens()))
    });
    comps
}
