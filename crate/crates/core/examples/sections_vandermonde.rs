// Monomial generators of Γ(X, O(D)), slope counts, and a section through
// prescribed points.

use num_rational::Ratio;
use troptoric::{
    global_sections, h0_a, h0_b, is_generic_configuration, passes_through, vandermonde_section, Fan,
    ToricDivisor,
};

pub fn run_example() -> troptoric::Result<()> {
    let p2 = Fan::projective_plane();
    let d = ToricDivisor::new(&p2, vec![2, 0, 0])?;
    let module = global_sections(&p2, &d)?;
    let gens: Vec<_> = module.generators().iter().map(|m| (m.x, m.y)).collect();
    println!("generators of 2H: {gens:?}");
    println!("h0_a = {}, h0 = {}, h0_b = {}", h0_a(&module)?, d.h0()?, h0_b(&module)?);

    let q = |n, m| Ratio::new(n, m);
    let points = vec![
        vec![q(1, 7), q(2, 11)],
        vec![q(13, 5), q(-3, 17)],
        vec![q(-19, 3), q(23, 13)],
        vec![q(29, 31), q(-37, 7)],
        vec![q(41, 9), q(43, 19)],
    ];
    let s = vandermonde_section(&module, &points)?;
    println!("section: {s}");
    for p in &points {
        println!("  passes through ({}, {}): {}", p[0], p[1], passes_through(&s, p)?);
    }
    println!("points generic for the generators: {}", is_generic_configuration(&module, &points)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
