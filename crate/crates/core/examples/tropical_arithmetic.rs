// Max-plus arithmetic, polynomials as functions, and the tropical determinant.

use num_rational::Ratio;
use troptoric::{trop_add, trop_det, trop_mul, TropMatrix, TropPolynomial, TropValue};

pub fn run_example() -> troptoric::Result<()> {
    let a = TropValue::from(3);
    let b = TropValue::from(5);
    println!("3 ⊕ 5 = {}", trop_add(a, b));
    println!("3 ⊙ 5 = {}", trop_mul(a, b));
    println!("−∞ ⊙ 7 = {}", trop_mul(TropValue::NegInfinity, 7.into()));

    // max(0, x, y): three affine pieces meeting at the origin.
    let line = TropPolynomial::from_terms(2, [(vec![0, 0], 0), (vec![1, 0], 0), (vec![0, 1], 0)])?;
    let origin = [Ratio::from_integer(0), Ratio::from_integer(0)];
    let off = [Ratio::new(1, 2), Ratio::from_integer(-1)];
    println!("{line}");
    println!("  at (0,0): {} with support {:?}", line.evaluate(&origin)?, line.supporting_monomials(&origin)?);
    println!("  at (1/2,-1): {} with support {:?}", line.evaluate(&off)?, line.supporting_monomials(&off)?);

    let m = TropMatrix::from_rows(vec![
        vec![1.into(), 2.into(), TropValue::NegInfinity],
        vec![3.into(), 5.into(), 0.into()],
        vec![0.into(), 1.into(), 4.into()],
    ])?;
    let (value, tie) = trop_det(&m);
    println!("tropical det = {value}, tie = {tie}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
