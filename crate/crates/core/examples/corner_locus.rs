// Corner loci of bivariate tropical polynomials, their weights, balancing,
// and the split into an interior part and ray-divisor degrees.

use troptoric::{corner_locus, divisor_of_section, is_balanced, newton_subdivision, Fan, TropPolynomial};

pub fn run_example() -> troptoric::Result<()> {
    // A smooth tropical conic.
    let conic = TropPolynomial::from_terms(
        2,
        [
            (vec![0, 0], 0),
            (vec![1, 0], 2),
            (vec![2, 0], 3),
            (vec![0, 1], 2),
            (vec![1, 1], 5),
            (vec![0, 2], 3),
        ],
    )?;
    let sub = newton_subdivision(&conic)?;
    println!("Newton polygon {:?}, {} two-cells", sub.polygon(), sub.two_cells());
    let locus = corner_locus(&conic)?;
    println!("{}", serde_json::to_string_pretty(&locus).expect("complex serializes"));
    println!("balanced: {}", is_balanced(&locus));

    // A double line: one vertex, rays of weight 2.
    let double = TropPolynomial::from_terms(2, [(vec![0, 0], 0), (vec![2, 0], 0), (vec![0, 2], 0)])?;
    let locus = corner_locus(&double)?;
    println!("double line ray weights: {:?}", locus.rays().map(|r| r.2).collect::<Vec<_>>());

    let p2 = Fan::projective_plane();
    let (_, at_infinity) = divisor_of_section(&p2, &conic)?;
    println!("degrees along the rays of P2: {at_infinity}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
