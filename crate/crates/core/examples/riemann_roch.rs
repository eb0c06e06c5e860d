// Intersection numbers on a toric surface and the Riemann-Roch inequality.

use troptoric::{euler_characteristic, rr_check, Fan, IntersectionMatrix, LatticeVector, ToricDivisor};

pub fn run_example() -> troptoric::Result<()> {
    let f2 = Fan::hirzebruch(2);
    let matrix = IntersectionMatrix::new(&f2)?;
    println!("rays of F2: {:?}", f2.rays());
    for row in matrix.rows() {
        println!("  {row:?}");
    }
    println!("chi = {}", euler_characteristic(&f2)?);

    let p2 = Fan::projective_plane();
    let h = ToricDivisor::ray(&p2, LatticeVector::new(0, 1))?;
    for d in [-3, -1, 0, 2] {
        let report = rr_check(&p2, &h.scaled(d))?;
        println!("P2, {d}H: {}", serde_json::to_string(&report).expect("report serializes"));
    }

    // O(-4, 0) on P1xP1 has neither sections nor dual sections, while the
    // right-hand side (a + 1)(b + 1) is -3: the inequality is strict.
    let p1p1 = Fan::product_p1_p1();
    let d = ToricDivisor::new(&p1p1, vec![-4, 0, 0, 0])?;
    let report = rr_check(&p1p1, &d)?;
    println!("P1xP1, {d}: rhs {}, defect {}", report.rhs, report.defect);
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
