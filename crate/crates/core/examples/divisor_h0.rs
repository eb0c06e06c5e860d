// Toric divisors, the polytope P(D), and h⁰ as a lattice-point count.

use troptoric::{canonical_divisor, linearly_equivalent, principal_divisor, Fan, LatticeVector, ToricDivisor};

pub fn run_example() -> troptoric::Result<()> {
    let p2 = Fan::projective_plane();
    for d in 0..=4 {
        let h = ToricDivisor::ray(&p2, LatticeVector::new(1, 0))?.scaled(d);
        println!("P2, D = {d}H: h0 = {}", h.h0()?);
    }

    let f1 = Fan::hirzebruch(1);
    let d = ToricDivisor::new(&f1, vec![1, 0, 1, 0])?;
    let p = d.polytope();
    let vertices: Vec<String> = p.vertices().iter().map(|v| format!("({}, {})", v[0], v[1])).collect();
    println!("F1, D = {d}: vertices {}", vertices.join(" "));
    let points = p.lattice_points().finite().unwrap_or_default();
    println!("  lattice points {:?}", points.iter().map(|m| (m.x, m.y)).collect::<Vec<_>>());
    println!("  h0 = {}", d.h0()?);

    let k = canonical_divisor(&f1);
    println!("K = {k}, h0(K) = {}", k.h0()?);

    // Moving a divisor by a principal divisor does not change its class.
    let e = d.plus(&principal_divisor(LatticeVector::new(1, 0), &f1))?;
    println!("{d} ~ {e}: {:?}", linearly_equivalent(&d, &e)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
