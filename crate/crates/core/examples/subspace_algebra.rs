//! Meets, joins and complements in ℂ³, with the dimension formula.

use qlogic::hilbert::{complement, join, meet};
use qlogic::report::fmt_subspace;
use qlogic::{StateVector, Subspace, Tolerance};

fn main() -> qlogic::Result<()> {
    let tol = Tolerance::default();
    let v = |x: &[f64]| StateVector::from_real(x);
    let plane = Subspace::span(3, &[v(&[1.0, 0.0, 0.0])?, v(&[0.0, 1.0, 1.0])?], tol)?;
    let other = Subspace::span(3, &[v(&[0.0, 1.0, 0.0])?, v(&[0.0, 0.0, 1.0])?], tol)?;

    let m = meet(&plane, &other, tol)?;
    let j = join(&plane, &other, tol)?;
    println!("A       = {}", fmt_subspace(&plane));
    println!("B       = {}", fmt_subspace(&other));
    println!("A ⊓ B   = {}", fmt_subspace(&m));
    println!("A ⊔ B   = {}", fmt_subspace(&j));
    println!("A⊥      = {}", fmt_subspace(&complement(&plane, tol)));
    println!(
        "dim(A ⊓ B) + dim(A ⊔ B) = {} = dim A + dim B = {}",
        m.dim() + j.dim(),
        plane.dim() + other.dim()
    );

    let p = plane.projector();
    let residual = (p.matrix() * p.matrix() - p.matrix()).norm();
    println!("rank P_A = {}, |P² - P| = {residual:.1e}", p.rank());
    Ok(())
}
