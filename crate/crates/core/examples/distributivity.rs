//! The distributive law fails for subspaces of ℂ².

use qlogic::hilbert::{join, meet};
use qlogic::report::fmt_subspace;
use qlogic::semantics::check_distributivity;
use qlogic::{StateVector, Subspace, Tolerance};

fn main() -> qlogic::Result<()> {
    let tol = Tolerance::default();
    let ray = |x: &[f64]| StateVector::from_real(x).map(|v| Subspace::ray(&v));
    let a = ray(&[1.0, 1.0])?;
    let b = ray(&[1.0, -1.0])?;
    let c = ray(&[1.0, 0.0])?;

    println!("a ⊔ b       = {}", fmt_subspace(&join(&a, &b, tol)?));
    println!(
        "c ⊓ (a ⊔ b) = {}",
        fmt_subspace(&meet(&c, &join(&a, &b, tol)?, tol)?)
    );
    println!("c ⊓ a       = {}", fmt_subspace(&meet(&c, &a, tol)?));
    println!("c ⊓ b       = {}", fmt_subspace(&meet(&c, &b, tol)?));

    let check = check_distributivity(&a, &b, &c, tol)?;
    println!(
        "lhs dim {}, rhs dim {}, distributivity fails: {}",
        check.lhs.dim(),
        check.rhs.dim(),
        check.fails
    );
    Ok(())
}
