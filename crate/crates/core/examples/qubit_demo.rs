//! P1 = X+ ⊓ Z+ and P2 = X+ ⊓ Z- on a qubit prepared in |0>, valued
//! bivalently, supervaluationally and by Łukasiewicz degrees.
//!
//! Pass a state as the first argument, e.g. `cargo run --example qubit_demo -- "1 1"`.

use qlogic::cli::run_demo_qubit;
use qlogic::Tolerance;

fn main() -> qlogic::Result<()> {
    let state = std::env::args().nth(1);
    let report = run_demo_qubit(state.as_deref(), Tolerance::default())?;
    print!("{}", report.to_text());
    Ok(())
}
