//! Colorability of the bundled ray sets, or of a ray file given as argument.

use qlogic::ks::{self, ColoringStatus, KsInstance};

fn describe(name: &str, inst: &KsInstance) {
    let r = ks::ks_colorable(inst);
    let verdict = match &r.status {
        ColoringStatus::Colorable(a) => {
            format!("colorable, witness valid: {}", ks::verify_coloring(inst, a))
        }
        ColoringStatus::Noncolorable { nodes_explored } => {
            format!("noncolorable after {nodes_explored} nodes")
        }
    };
    println!(
        "{name}: d={} rays={} contexts={} orthogonal pairs={} -> {verdict}",
        inst.dim(),
        inst.rays().len(),
        inst.contexts().len(),
        inst.edge_count()
    );
}

fn main() -> qlogic::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).map_err(|e| qlogic::Error::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        describe(&path, &ks::parse_rayfile(&text)?);
        return Ok(());
    }
    describe("qubit", &ks::bundled::qubit());
    describe("cabello-18", &ks::bundled::cabello_18());
    describe("peres-33", &ks::bundled::peres_33());
    let (count, _) = ks::count_colorings(&ks::bundled::qubit());
    println!("qubit colorings: {count}");
    Ok(())
}
