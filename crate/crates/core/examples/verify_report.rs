// Run the verification suites in-process and print the JSON records, as
// `conical verify` does.
//
//     cargo run --release -p conical --example verify_report

use conical::oracles::CurvatureTermMode;
use conical::spectrum::OscillatorModel;
use conical::verify::{run_suites, Suite};

pub fn run_example() -> conical::Result<()> {
    let model = OscillatorModel::natural(0.5, 1.0)?;
    let records = run_suites(
        &[Suite::Recombination, Suite::TransferMatrix],
        &model,
        CurvatureTermMode::JensenKoppe,
    )?;
    println!(
        "{}",
        serde_json::to_string_pretty(&records).expect("records serialize")
    );
    let failed = records.iter().filter(|r| !r.pass).count();
    println!("{} records, {failed} failing", records.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
