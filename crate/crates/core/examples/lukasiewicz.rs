//! Many-valued degrees: Born weights combined with Łukasiewicz connectives.

use qlogic::formula::Formula;
use qlogic::semantics::eval_lukasiewicz;
use qlogic::{StateVector, Subspace};

fn main() -> qlogic::Result<()> {
    let psi = StateVector::from_real(&[3.0, 4.0])?;
    let ray = |x: &[f64]| StateVector::from_real(x).map(|v| Subspace::ray(&v));
    let zp = Formula::atom("Zp", ray(&[1.0, 0.0])?);
    let xp = Formula::atom("Xp", ray(&[1.0, 1.0])?);

    for f in [
        zp.clone(),
        xp.clone(),
        zp.clone().not(),
        zp.clone().and(xp.clone()),
        zp.clone().or(xp.clone()),
        zp.clone().and(zp.clone().not()),
        zp.clone().or(zp.not()),
    ] {
        println!("{:<14} {}", f.render_lattice(), eval_lukasiewicz(&psi, &f)?);
    }
    Ok(())
}
