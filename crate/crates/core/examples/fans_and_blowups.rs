// Builtin smooth complete fans, validation, and blow-ups.

use troptoric::json::fan_to_json;
use troptoric::{Cone, Fan, LatticeVector};

pub fn run_example() -> troptoric::Result<()> {
    for (name, fan) in [
        ("P2", Fan::projective_plane()),
        ("P1xP1", Fan::product_p1_p1()),
        ("F3", Fan::hirzebruch(3)),
    ] {
        println!("{name}: {} smooth={} complete={}", fan_to_json(&fan), fan.is_smooth(), fan.is_complete());
    }

    let p2 = Fan::projective_plane();
    let blown = p2.blow_up(&Cone::two(LatticeVector::new(1, 0), LatticeVector::new(0, 1))?)?;
    println!("P2 blown up at a fixed point: {}", fan_to_json(&blown));
    let frame = blown.cone(0).dual_frame()?;
    println!("dual frame of cone 0: {frame:?}");

    // A fan with a non-smooth cone is still a fan, it just fails the check.
    let bad = Fan::new(vec![LatticeVector::new(1, 0), LatticeVector::new(1, 2)], vec![[0, 1]])?;
    println!("non-smooth cones: {:?}", bad.non_smooth_cones());
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
