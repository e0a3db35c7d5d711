//! Invariant-subspace lattices of two qutrit contexts sharing one ray, and
//! their pasting.

use qlogic::contexts::{interlinked, invariant_lattice, paste, Context};
use qlogic::report::fmt_subspace;
use qlogic::{StateVector, Tolerance};

fn main() -> qlogic::Result<()> {
    let tol = Tolerance::default();
    let v = |x: &[f64]| StateVector::from_real(x);
    let standard = Context::from_rays(
        "std",
        &[
            v(&[1.0, 0.0, 0.0])?,
            v(&[0.0, 1.0, 0.0])?,
            v(&[0.0, 0.0, 1.0])?,
        ],
        tol,
    )?;
    let rotated = Context::from_rays(
        "rot",
        &[
            v(&[1.0, 0.0, 0.0])?,
            v(&[0.0, 1.0, 1.0])?,
            v(&[0.0, 1.0, -1.0])?,
        ],
        tol,
    )?;

    let blocks = vec![
        invariant_lattice(&standard, tol)?,
        invariant_lattice(&rotated, tol)?,
    ];
    for b in &blocks {
        println!("block {}: {} elements", b.context_id(), b.len());
        for (mask, e) in b.elements().iter().enumerate() {
            println!("  {mask:03b} dim {} {}", e.dim(), fmt_subspace(e));
        }
    }
    println!("interlinked: {}", interlinked(&standard, &rotated, tol)?);

    let pasted = paste(blocks, tol)?;
    println!("pasted elements: {}", pasted.elements().len());
    for id in pasted.shared_elements() {
        println!("  shared: {}", fmt_subspace(&pasted.elements()[id]));
    }
    Ok(())
}
