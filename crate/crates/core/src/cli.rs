//! Command front end: argument parsing, dispatch and report assembly.
//!
//! Every command produces a [`Report`]; [`main_with_args`] prints it as
//! text or JSON and maps the outcome to an exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::contexts::{invariant_lattice, paste, BlockStructure, Context};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::hilbert::{self, StateVector, Subspace, Tolerance};
use crate::ks::{self, ColoringStatus, KsInstance};
use crate::rayfile::{self, RayFile};
use crate::report::{fmt_subspace, fmt_vector, ExitStatus, Report};
use crate::semantics::{
    check_product_rule, check_sum_rule, eval_bivalent, eval_lukasiewicz, eval_super, RuleOutcome,
    Value,
};

#[derive(Debug, Parser)]
#[command(
    name = "qlogic",
    version,
    about = "Subspace lattices, gappy valuations and Kochen-Specker checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Numerical tolerance for residual checks.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Print the machine-readable mirror of the report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Semantics {
    Bivalent,
    Super,
    Lukasiewicz,
}

impl Semantics {
    fn name(self) -> &'static str {
        match self {
            Semantics::Bivalent => "bivalent",
            Semantics::Super => "super",
            Semantics::Lukasiewicz => "lukasiewicz",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bivalent versus supervaluational valuation of X+ ⊓ Z± on a qubit.
    DemoQubit {
        #[arg(long)]
        state: Option<String>,
    },
    /// Evaluate a formula over the rays of a space file.
    Eval {
        space: PathBuf,
        formula: String,
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value = "bivalent")]
        semantics: Semantics,
    },
    /// Intersection of two subspaces.
    Meet {
        a: String,
        b: String,
        #[command(flatten)]
        operands: OperandSource,
    },
    /// Closed span of two subspaces.
    Join {
        a: String,
        b: String,
        #[command(flatten)]
        operands: OperandSource,
    },
    /// Orthogonal complement of a subspace.
    Complement {
        a: String,
        #[command(flatten)]
        operands: OperandSource,
    },
    /// Boolean blocks of the contexts in a space file and their pasting.
    Blocks { space: PathBuf },
    /// Decide Kochen-Specker colorability of a ray file.
    KsCheck {
        file: PathBuf,
        /// Ignore declared contexts and enumerate orthogonal bases.
        #[arg(long)]
        enumerate_contexts: bool,
        #[arg(long)]
        count_colorings: bool,
        /// Include wall-clock timing.
        #[arg(long)]
        stats: bool,
    },
}

/// Where operand identifiers and dimensions come from.
#[derive(Debug, Clone, clap::Args)]
pub struct OperandSource {
    /// Space file whose ray and span ids may be used as operands.
    #[arg(long, conflicts_with = "dim")]
    pub space: Option<PathBuf>,
    /// Ambient dimension for inline component lists.
    #[arg(long)]
    pub dim: Option<usize>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Rays, spans and contexts of a space file, with the pasted blocks.
pub struct Space {
    pub file: RayFile,
    pub context_rays: Vec<Vec<usize>>,
    pub structure: Option<BlockStructure>,
    tol: Tolerance,
}

impl Space {
    pub fn parse(text: &str, tol: Tolerance) -> Result<Self> {
        let file = rayfile::parse(text, tol)?;
        let context_rays: Vec<Vec<usize>> = if file.contexts.is_empty() {
            ks::enumerate_contexts(&file.rays, file.dim, tol)?
        } else {
            file.contexts.iter().map(|c| c.rays.clone()).collect()
        };
        let mut blocks = Vec::with_capacity(context_rays.len());
        for (k, c) in context_rays.iter().enumerate() {
            let vectors: Vec<StateVector> =
                c.iter().map(|&r| file.rays[r].vector.clone()).collect();
            let context = Context::from_rays(format!("c{}", k + 1), &vectors, tol)?;
            blocks.push(invariant_lattice(&context, tol)?);
        }
        let structure = if blocks.is_empty() {
            None
        } else {
            Some(paste(blocks, tol)?)
        };
        Ok(Self {
            file,
            context_rays,
            structure,
            tol,
        })
    }

    pub fn dim(&self) -> usize {
        self.file.dim
    }

    /// Subspace named by a ray or span id.
    pub fn lookup(&self, id: &str) -> Option<Subspace> {
        if let Some(i) = self.file.ray_index(id) {
            return Some(Subspace::ray(&self.file.rays[i].vector));
        }
        self.file.spans.iter().find(|s| s.id == id).map(|s| {
            let vectors: Vec<StateVector> = s
                .rays
                .iter()
                .map(|&r| self.file.rays[r].vector.clone())
                .collect();
            hilbert::orthonormalize(self.dim(), &vectors, self.tol)
                .expect("span rays share the file dimension")
        })
    }

    fn context_label(&self, block: usize) -> String {
        format!("c{}", block + 1)
    }

    /// `{0}`, `H`, or the member rays of the block element joined by `|`.
    fn element_label(&self, block: usize, mask: u32) -> String {
        let rays = &self.context_rays[block];
        if mask == 0 {
            return "{0}".into();
        }
        if mask.count_ones() as usize == rays.len() {
            return "H".into();
        }
        rays.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &r)| self.file.rays[r].id.as_str())
            .collect::<Vec<_>>()
            .join("|")
    }

    fn block_list(&self, s: &Subspace) -> String {
        match &self.structure {
            Some(bs) => {
                let blocks: Vec<String> = bs
                    .blocks_containing(s)
                    .into_iter()
                    .map(|b| self.context_label(b))
                    .collect();
                if blocks.is_empty() {
                    "none".into()
                } else {
                    blocks.join(",")
                }
            }
            None => "none".into(),
        }
    }
}

fn tolerance(cli: &Cli) -> Result<Tolerance> {
    cli.tolerance
        .map_or(Ok(Tolerance::default()), Tolerance::new)
}

fn parse_state(text: &str, dim: usize, tol: Tolerance, report: &mut Report) -> Result<StateVector> {
    let (state, norm) = rayfile::parse_components(text, dim)?;
    if (norm - 1.0).abs() > tol.eps() {
        report.field(
            "notice",
            format!(
                "state normalized from norm {}",
                crate::report::fmt_real(norm)
            ),
        );
    }
    Ok(state)
}

/// Atom label for a formula: its ASCII rendering without spaces.
fn label(f: &Formula) -> String {
    f.render_ascii().replace(' ', "")
}

fn gap_notation(v: Value) -> String {
    match v.number() {
        None => "0/0".into(),
        Some(_) => v.to_string(),
    }
}

fn push_rules(report: &mut Report, p1: Value, p2: Value, both: Value, either: Value) {
    let product = check_product_rule(p1, p2, both);
    let sum = check_sum_rule(p1, p2, both, either);
    report.push("rule", "product", product);
    if product != RuleOutcome::Holds {
        let rhs = match (p1.number(), p2.number()) {
            (Some(a), Some(b)) => crate::report::fmt_real(a * b),
            _ => "0/0".into(),
        };
        report.push("note", "product", format!("{} ≠ {rhs}", gap_notation(both)));
    }
    report.push("rule", "sum", sum);
    if sum != RuleOutcome::Holds {
        let lhs = match (p1.number(), p2.number(), either.number()) {
            (Some(a), Some(b), Some(c)) => crate::report::fmt_real(a + b - c),
            _ => "0/0".into(),
        };
        report.push("note", "sum", format!("{lhs} ≠ {}", gap_notation(both)));
    }
}

/// The qubit demonstration: blocks of Σ_X and Σ_Z, and the propositions
/// P₁ = X₊ ⊓ Z₊, P₂ = X₊ ⊓ Z₋, P₁ ⊓ P₂ and P₁ ⊔ P₂ valued under the
/// bivalent, supervaluational and Łukasiewicz semantics.
pub fn run_demo_qubit(state: Option<&str>, tol: Tolerance) -> Result<Report> {
    let mut report = Report::new();
    let space = Space::parse(ks::bundled::QUBIT, tol)?;
    let state = match state {
        Some(text) => parse_state(text, 2, tol, &mut report)?,
        None => StateVector::basis(2, 0),
    };
    let atom = |id: &str| Formula::atom(id, space.lookup(id).expect("qubit rays are bundled"));
    let p1 = atom("Xp").and(atom("Zp"));
    let p2 = atom("Xp").and(atom("Zm"));
    let formulas = [
        ("P1", p1.clone()),
        ("P2", p2.clone()),
        ("P1&P2", p1.clone().and(p2.clone())),
        ("P1|P2", p1.or(p2)),
    ];
    let bs = space
        .structure
        .as_ref()
        .ok_or_else(|| Error::Invariant("qubit space has no blocks".into()))?;

    report.field("demo", "qubit");
    report.field("state", fmt_vector(&state));
    for (b, block) in bs.blocks().iter().enumerate() {
        let labels: Vec<String> = (0..block.len() as u32)
            .map(|m| space.element_label(b, m))
            .collect();
        report.push("block", space.context_label(b), labels.join(" "));
    }
    report.field("pasted_elements", bs.elements().len());
    report.field("interlinked", bs.is_interlinked());
    for (name, f) in &formulas {
        report.push("formula", *name, f.render_lattice());
    }

    for semantics in [
        Semantics::Bivalent,
        Semantics::Super,
        Semantics::Lukasiewicz,
    ] {
        report.field("semantics", semantics.name());
        if semantics == Semantics::Lukasiewicz {
            report.field("assumption", "atomic degree is the Born weight <psi|P|psi>");
        }
        let mut values = Vec::with_capacity(formulas.len());
        for (name, f) in &formulas {
            let v: Value = match semantics {
                Semantics::Bivalent => eval_bivalent(&state, f, tol)?.into(),
                Semantics::Super => eval_super(bs, &state, f)?.into(),
                Semantics::Lukasiewicz => eval_lukasiewicz(&state, f)?.into(),
            };
            report.push("atom", *name, v);
            values.push(v);
        }
        push_rules(&mut report, values[0], values[1], values[2], values[3]);
    }
    Ok(report)
}

/// Evaluates `formula` over the rays and spans of a space file.
pub fn run_eval(
    space_text: &str,
    formula: &str,
    state: &str,
    semantics: Semantics,
    tol: Tolerance,
) -> Result<Report> {
    let mut report = Report::new();
    let space = Space::parse(space_text, tol)?;
    let state = parse_state(state, space.dim(), tol, &mut report)?;
    let f = parse_formula(formula, &|id| space.lookup(id))?;
    report.field("semantics", semantics.name());
    report.field("state", fmt_vector(&state));
    report.field("formula", f.render_lattice());
    let value: Value = match semantics {
        Semantics::Bivalent => eval_bivalent(&state, &f, tol)?.into(),
        Semantics::Super => {
            let bs = space.structure.as_ref().ok_or_else(|| {
                let mut first = None;
                f.visit_atoms(&mut |a| {
                    first.get_or_insert_with(|| a.label.clone());
                });
                Error::UnresolvableAtom(first.unwrap_or_else(|| formula.to_string()))
            })?;
            eval_super(bs, &state, &f)?.into()
        }
        Semantics::Lukasiewicz => {
            report.field("assumption", "atomic degree is the Born weight <psi|P|psi>");
            eval_lukasiewicz(&state, &f)?.into()
        }
    };
    report.push("atom", label(&f), value);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
    Complement,
}

/// Operand: `;`-separated items, each a space id or a component list.
fn parse_operand(
    text: &str,
    dim: usize,
    space: Option<&Space>,
    tol: Tolerance,
) -> Result<Subspace> {
    let mut vectors = Vec::new();
    let mut spans = Vec::new();
    for item in text.split(';').map(str::trim) {
        if item.is_empty() {
            return Err(Error::InvalidArgument {
                token: text.to_string(),
                message: "empty operand item".into(),
            });
        }
        if let Some(s) = space.and_then(|sp| sp.lookup(item)) {
            spans.push(s);
            continue;
        }
        let looks_numeric =
            item.starts_with(|c: char| c.is_ascii_digit() || matches!(c, '-' | '+' | '.'));
        if !looks_numeric {
            return Err(Error::UnknownIdentifier(item.to_string()));
        }
        vectors.push(rayfile::parse_components(item, dim)?.0);
    }
    let mut result = hilbert::orthonormalize(dim, &vectors, tol)?;
    for s in spans {
        result = hilbert::join(&result, &s, tol)?;
    }
    Ok(result)
}

pub fn run_lattice_op(
    op: LatticeOp,
    operands: &[&str],
    source: &OperandSource,
    tol: Tolerance,
) -> Result<Report> {
    let space = match &source.space {
        Some(path) => Some(Space::parse(&read(path)?, tol)?),
        None => None,
    };
    let dim = match (&space, source.dim) {
        (Some(s), _) => s.dim(),
        (None, Some(d)) if d > 0 => d,
        _ => {
            return Err(Error::InvalidArgument {
                token: operands.join(" "),
                message: "give --dim or --space to fix the ambient dimension".into(),
            })
        }
    };
    run_lattice_op_in(op, operands, dim, space.as_ref(), tol)
}

fn run_lattice_op_in(
    op: LatticeOp,
    operands: &[&str],
    dim: usize,
    space: Option<&Space>,
    tol: Tolerance,
) -> Result<Report> {
    let subspaces = operands
        .iter()
        .map(|o| parse_operand(o, dim, space, tol))
        .collect::<Result<Vec<_>>>()?;
    let (name, result) = match (op, subspaces.as_slice()) {
        (LatticeOp::Meet, [a, b]) => ("meet", hilbert::meet(a, b, tol)?),
        (LatticeOp::Join, [a, b]) => ("join", hilbert::join(a, b, tol)?),
        (LatticeOp::Complement, [a]) => ("complement", hilbert::complement(a, tol)),
        _ => {
            return Err(Error::Invariant(format!(
                "{op:?} called with {} operands",
                subspaces.len()
            )))
        }
    };
    let mut report = Report::new();
    report.field("op", name);
    report.field("ambient_dim", dim);
    report.field("dim", result.dim());
    report.field("basis", fmt_subspace(&result));
    if let Some(space) = space {
        report.field("blocks", space.block_list(&result));
    }
    Ok(report)
}

pub fn run_blocks(space_text: &str, tol: Tolerance) -> Result<Report> {
    let space = Space::parse(space_text, tol)?;
    let mut report = Report::new();
    report.field("dim", space.dim());
    report.field("contexts", space.context_rays.len());
    let Some(bs) = &space.structure else {
        report.field("blocks", 0);
        return Ok(report);
    };
    for (b, block) in bs.blocks().iter().enumerate() {
        let rays: Vec<&str> = space.context_rays[b]
            .iter()
            .map(|&r| space.file.rays[r].id.as_str())
            .collect();
        report.push("context", space.context_label(b), rays.join(" "));
        report.push("block_size", space.context_label(b), block.len());
    }
    for (id, e) in bs.elements().iter().enumerate() {
        let first = *bs
            .sharing(id)
            .first()
            .expect("every element comes from a block");
        let mask = bs.mask_in(first, id).expect("element belongs to its block");
        let blocks: Vec<String> = bs
            .sharing(id)
            .iter()
            .map(|&b| space.context_label(b))
            .collect();
        report.push(
            "element",
            space.element_label(first, mask),
            format!("dim {} in {}", e.dim(), blocks.join(",")),
        );
    }
    report.field("pasted_elements", bs.elements().len());
    report.field("interlinked", bs.is_interlinked());
    Ok(report)
}

pub struct KsOptions {
    pub enumerate_contexts: bool,
    pub count_colorings: bool,
    pub stats: bool,
}

pub fn run_ks_check(text: &str, options: &KsOptions, tol: Tolerance) -> Result<Report> {
    let file = rayfile::parse(text, tol)?;
    let enumerated = options.enumerate_contexts || file.contexts.is_empty();
    let inst = KsInstance::from_rayfile(&file, options.enumerate_contexts, tol)?;
    let mut report = Report::new();
    report.field("dim", inst.dim());
    report.field("rays", inst.rays().len());
    report.field("orthogonal_pairs", inst.edge_count());
    report.field(
        "contexts",
        format!(
            "{} {}",
            inst.contexts().len(),
            if enumerated { "enumerated" } else { "declared" }
        ),
    );
    for (k, c) in inst.contexts().iter().enumerate() {
        let ids: Vec<&str> = c.iter().map(|&r| inst.rays()[r].id.as_str()).collect();
        report.push("context", format!("c{}", k + 1), ids.join(" "));
    }

    let start = Instant::now();
    let result = ks::ks_colorable(&inst);
    report.field("nodes", result.stats.nodes);
    report.field("dead_ends", result.stats.dead_ends);
    match &result.status {
        ColoringStatus::Colorable(assignment) => {
            report.field("verdict", "colorable");
            let verified = ks::verify_coloring(&inst, assignment);
            report.field("verified", verified);
            if !verified {
                report.set_exit(ExitStatus::InvariantViolation);
            }
            for (r, &v) in inst.rays().iter().zip(assignment) {
                report.push("assign", &r.id, u8::from(v));
            }
        }
        ColoringStatus::Noncolorable { nodes_explored } => {
            report.field("verdict", "noncolorable");
            report.field("nodes_explored", nodes_explored);
        }
    }
    if options.count_colorings {
        let (count, _) = ks::count_colorings(&inst);
        report.field("colorings", count);
    }
    if options.stats {
        report.field(
            "elapsed_ms",
            format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
        );
    }
    Ok(report)
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Report> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::DemoQubit { state } => run_demo_qubit(state.as_deref(), tol),
        Command::Eval {
            space,
            formula,
            state,
            semantics,
        } => run_eval(&read(space)?, formula, state, *semantics, tol),
        Command::Meet { a, b, operands } => run_lattice_op(LatticeOp::Meet, &[a, b], operands, tol),
        Command::Join { a, b, operands } => run_lattice_op(LatticeOp::Join, &[a, b], operands, tol),
        Command::Complement { a, operands } => {
            run_lattice_op(LatticeOp::Complement, &[a], operands, tol)
        }
        Command::Blocks { space } => run_blocks(&read(space)?, tol),
        Command::KsCheck {
            file,
            enumerate_contexts,
            count_colorings,
            stats,
        } => run_ks_check(
            &read(file)?,
            &KsOptions {
                enumerate_contexts: *enumerate_contexts,
                count_colorings: *count_colorings,
                stats: *stats,
            },
            tol,
        ),
    }
}

fn exit_for(e: &Error) -> ExitStatus {
    match e {
        Error::Invariant(_) => ExitStatus::InvariantViolation,
        _ => ExitStatus::InputError,
    }
}

/// Parses `args`, runs the command and writes the report; returns the
/// process exit code.
pub fn main_with_args<I, T>(
    args: I,
    out: &mut impl std::io::Write,
    err: &mut impl std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            let body = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            let _ = write!(out, "{body}");
            if let Some(path) = &cli.report {
                if let Err(e) = fs::write(path, &body) {
                    let _ = writeln!(err, "error: cannot write report to {}: {e}", path.display());
                    return ExitStatus::InputError.code();
                }
            }
            report.exit().code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e).code()
        }
    }
}
