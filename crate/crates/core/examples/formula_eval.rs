//! Parse formulas over named rays and evaluate them under all three semantics.

use qlogic::contexts::{invariant_lattice, paste, Context};
use qlogic::formula::parse_formula;
use qlogic::semantics::{eval_bivalent, eval_lukasiewicz, eval_super};
use qlogic::{StateVector, Subspace, Tolerance};

fn main() -> qlogic::Result<()> {
    let tol = Tolerance::default();
    let v = |x: &[f64]| StateVector::from_real(x);
    let rays = [
        ("Zp", v(&[1.0, 0.0])?),
        ("Zm", v(&[0.0, 1.0])?),
        ("Xp", v(&[1.0, 1.0])?),
        ("Xm", v(&[1.0, -1.0])?),
    ];
    let lookup = |id: &str| {
        rays.iter()
            .find(|(n, _)| *n == id)
            .map(|(_, r)| Subspace::ray(r))
    };

    let z = Context::from_rays("Z", &[rays[0].1.clone(), rays[1].1.clone()], tol)?;
    let x = Context::from_rays("X", &[rays[2].1.clone(), rays[3].1.clone()], tol)?;
    let gaps = paste(
        vec![invariant_lattice(&z, tol)?, invariant_lattice(&x, tol)?],
        tol,
    )?;

    let psi = v(&[1.0, 0.0])?;
    for text in [
        "Zp | Zm",
        "!Zm",
        "Xp & Zp",
        "Xp | Xm",
        "(Xp & Zp) | (Xp & Zm)",
        "Zp & !Zp",
    ] {
        let f = parse_formula(text, &lookup)?;
        println!(
            "{:<26} bivalent {}  super {}  lukasiewicz {}",
            f.render_lattice(),
            eval_bivalent(&psi, &f, tol)?,
            eval_super(&gaps, &psi, &f)?,
            eval_lukasiewicz(&psi, &f)?
        );
    }
    if let Err(e) = parse_formula("Xp & (Zp", &lookup) {
        println!("parse error: {e}");
    }
    Ok(())
}
