//! Workloads shared by the benchmarks.

use extracta::parse::{parse_order, parse_polynomial, parse_polynomial_list};
use extracta::{Ideal, OrderSpec, Polynomial, Ring};

pub struct Workload {
    pub ring: Ring,
    pub ideal: Ideal,
    pub order: OrderSpec,
    pub probe: Polynomial,
}

fn build(vars: &[&str], gens: &str, order: &str, probe: &str) -> Workload {
    let ring = Ring::new(vars.iter().copied()).expect("ring");
    let ideal = Ideal::new(&ring, parse_polynomial_list(&ring, gens).expect("gens")).expect("ideal");
    let order = parse_order(&ring, order).expect("order");
    let probe = parse_polynomial(&ring, probe).expect("probe");
    Workload {
        ring,
        ideal,
        order,
        probe,
    }
}

/// A curve singularity in the local ring at the origin.
pub fn local_curve() -> Workload {
    build(
        &["x", "y", "z"],
        "x^3 - y^2*z, x*y - z^3 + x^2, y^3 - x*z^2",
        "negdegrevlex",
        "x^4*y - z^5 + x*y*z^2",
    )
}

/// Mixed order with a local block above a global one.
pub fn mixed_block() -> Workload {
    build(
        &["x", "y", "z", "w"],
        "x*w - y^2, y*z - x*w^2 + x, z^3 - w*x^2",
        "block(negdegrevlex: x, y; degrevlex: z, w)",
        "x^2*w^3 - y^2*w^2 + x*z",
    )
}

/// The same generators under a global order.
pub fn global_cyclic() -> Workload {
    build(
        &["x", "y", "z"],
        "x + y + z, x*y + y*z + z*x, x*y*z - 1",
        "degrevlex",
        "x^5 + y^5 + z^5",
    )
}

/// An extraction pair `(I, J)` with a non-monomial `I`.
pub fn extraction_pair() -> (Ideal, Ideal, Vec<Polynomial>) {
    let ring = Ring::new(["x", "y", "z"]).expect("ring");
    let i = Ideal::new(
        &ring,
        parse_polynomial_list(&ring, "x^2*(y - 1), x*y*(z + 1), y^2*z").unwrap(),
    )
    .unwrap();
    let j = Ideal::new(&ring, parse_polynomial_list(&ring, "x, y - 1").unwrap()).unwrap();
    let probes = parse_polynomial_list(&ring, "x, y, x*z, x^2 + y*z, 1").unwrap();
    (i, j, probes)
}
