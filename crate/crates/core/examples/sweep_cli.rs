// Driving the command-line layer from code: a seeded sweep over a blown-up
// plane and a round trip through the JSON fan format.

use troptoric::cli;

pub fn run_example() -> troptoric::Result<()> {
    let blown = cli::run(["troptoric", "fan", "blowup", "p2", "1"]);
    println!("blown-up fan: {}", blown.output);

    let sweep = cli::run(["troptoric", "sweep", blown.output.as_str(), "--range", "-2..2", "--seed", "7"]);
    let summary = sweep.output.lines().last().unwrap_or_default();
    println!("sweep exit {}: {summary}", sweep.status);

    let rr = cli::run(["troptoric", "rr", "f1", r#"{"coeffs":{"0":1,"1":1,"2":0,"3":0}}"#]);
    println!("rr on F1: {}", rr.output);
    Ok(())
}

#[allow(dead_code)]
fn main() -> troptoric::Result<()> {
    run_example()
}
