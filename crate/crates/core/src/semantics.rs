//! Valuations of propositions in a state.
//!
//! Three engines share the [`Formula`] tree:
//!
//! * bivalent: the formula denotes a subspace of the full Hilbert lattice
//!   and is true iff the state lies in it;
//! * supervaluational: over a [`BlockStructure`], connectives are reduced
//!   inside blocks first, any connective left joining subspaces of
//!   different blocks is undecidable, and atoms are true, false or a gap;
//! * Łukasiewicz: atoms take the Born weight `⟨Ψ|P|Ψ⟩` and connectives are
//!   the Łukasiewicz t-norm and t-conorm.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::contexts::BlockStructure;
use crate::error::{Error, Result};
pub use crate::formula::{Atom, Formula};
use crate::hilbert::{self, Projector, StateVector, Subspace, Tolerance};
use crate::report::fmt_real;

/// Tolerance used when comparing valuation numbers in the rule checks.
pub const RULE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    True,
    False,
    Gap,
}

impl TruthValue {
    pub fn is_gap(self) -> bool {
        self == TruthValue::Gap
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Gap => None,
        }
    }

    /// Classical conjunction; a gap operand makes the result a gap.
    pub fn and(self, other: TruthValue) -> TruthValue {
        match (self.to_bool(), other.to_bool()) {
            (Some(a), Some(b)) => (a && b).into(),
            _ => TruthValue::Gap,
        }
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        match (self.to_bool(), other.to_bool()) {
            (Some(a), Some(b)) => (a || b).into(),
            _ => TruthValue::Gap,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> TruthValue {
        match self.to_bool() {
            Some(a) => (!a).into(),
            None => TruthValue::Gap,
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "1",
            TruthValue::False => "0",
            TruthValue::Gap => "gap",
        })
    }
}

/// A truth degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Degree(f64);

impl Degree {
    pub const ZERO: Degree = Degree(0.0);
    pub const ONE: Degree = Degree(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Degree(value))
        } else {
            Err(Error::DegreeOutOfRange(value))
        }
    }

    pub fn clamped(value: f64) -> Self {
        Degree(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `max(a + b − 1, 0)`
    pub fn conj(self, other: Degree) -> Degree {
        lukasiewicz_conj(self, other)
    }

    /// `min(a + b, 1)`
    pub fn disj(self, other: Degree) -> Degree {
        lukasiewicz_disj(self, other)
    }

    /// `1 − a`
    pub fn negate(self) -> Degree {
        Degree(1.0 - self.0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_real(self.0))
    }
}

pub fn lukasiewicz_conj(a: Degree, b: Degree) -> Degree {
    Degree((a.0 + b.0 - 1.0).max(0.0))
}

pub fn lukasiewicz_disj(a: Degree, b: Degree) -> Degree {
    Degree((a.0 + b.0).min(1.0))
}

/// A valuation entry: a truth value from the bivalent or gappy engines, or
/// a degree from the many-valued one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Truth(TruthValue),
    Degree(Degree),
}

impl Value {
    /// Numeric reading used by the rule checks; `None` for a gap.
    pub fn number(self) -> Option<f64> {
        match self {
            Value::Truth(t) => t.to_bool().map(|b| if b { 1.0 } else { 0.0 }),
            Value::Degree(d) => Some(d.0),
        }
    }
}

impl From<TruthValue> for Value {
    fn from(t: TruthValue) -> Self {
        Value::Truth(t)
    }
}

impl From<Degree> for Value {
    fn from(d: Degree) -> Self {
        Value::Degree(d)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Truth(t) => t.fmt(f),
            Value::Degree(d) => d.fmt(f),
        }
    }
}

/// Labels mapped to values, together with the state they were computed in.
#[derive(Debug, Clone, PartialEq)]
pub struct Valuation {
    state: StateVector,
    entries: Vec<(String, Value)>,
}

impl Valuation {
    pub fn new(state: StateVector) -> Self {
        Self {
            state,
            entries: Vec::new(),
        }
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn insert(&mut self, label: impl Into<String>, value: impl Into<Value>) {
        let label = label.into();
        let value = value.into();
        match self.entries.iter_mut().find(|(l, _)| *l == label) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((label, value)),
        }
    }

    pub fn get(&self, label: &str) -> Option<Value> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    /// `atom <label> = <value>` lines.
    pub fn report_lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(l, v)| format!("atom {l} = {v}"))
            .collect()
    }
}

fn check_state(state: &StateVector, s: &Subspace) -> Result<()> {
    if state.dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

/// True iff the state lies in `s`.
pub fn bivalent_value(state: &StateVector, s: &Subspace, tol: Tolerance) -> Result<TruthValue> {
    check_state(state, s)?;
    Ok(hilbert::contains(s, state, tol)?.into())
}

/// True in `s`, false in `s⊥`, a gap anywhere else.
pub fn super_value(state: &StateVector, s: &Subspace, tol: Tolerance) -> Result<TruthValue> {
    check_state(state, s)?;
    if hilbert::contains(s, state, tol)? {
        Ok(TruthValue::True)
    } else if hilbert::contains(&hilbert::complement(s, tol), state, tol)? {
        Ok(TruthValue::False)
    } else {
        Ok(TruthValue::Gap)
    }
}

/// The subspace a formula denotes in the Hilbert lattice of ℂ^`dim`.
pub fn formula_subspace(f: &Formula, dim: usize, tol: Tolerance) -> Result<Subspace> {
    Ok(match f {
        Formula::Atom(a) => {
            if a.subspace.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.subspace.ambient_dim(),
                });
            }
            a.subspace.clone()
        }
        Formula::Conj(l, r) => hilbert::meet(
            &formula_subspace(l, dim, tol)?,
            &formula_subspace(r, dim, tol)?,
            tol,
        )?,
        Formula::Disj(l, r) => hilbert::join(
            &formula_subspace(l, dim, tol)?,
            &formula_subspace(r, dim, tol)?,
            tol,
        )?,
        Formula::Neg(x) => hilbert::complement(&formula_subspace(x, dim, tol)?, tol),
        Formula::Top => Subspace::full(dim),
        Formula::Bottom => Subspace::zero(dim),
    })
}

/// Bivalent value of a compound formula.
pub fn eval_bivalent(state: &StateVector, f: &Formula, tol: Tolerance) -> Result<TruthValue> {
    let s = formula_subspace(f, state.dim(), tol)?;
    bivalent_value(state, &s, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Connective {
    Meet,
    Join,
}

#[derive(Debug, Clone)]
enum Node {
    /// An element of the structure and the blocks it may be combined in.
    Element { id: usize, blocks: BTreeSet<usize> },
    /// A connective between elements with no common block.
    Residual,
}

fn reduce_node(bs: &BlockStructure, f: &Formula) -> Result<Node> {
    let d = bs.ambient_dim();
    let all: BTreeSet<usize> = (0..bs.blocks().len()).collect();
    let trivial = |s: Subspace| Node::Element {
        id: bs
            .element_id(&s)
            .expect("{0} and the whole space belong to every block"),
        blocks: all.clone(),
    };
    match f {
        Formula::Top => Ok(trivial(Subspace::full(d))),
        Formula::Bottom => Ok(trivial(Subspace::zero(d))),
        Formula::Atom(a) => {
            if a.subspace.ambient_dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: a.subspace.ambient_dim(),
                });
            }
            let id = bs
                .element_id(&a.subspace)
                .ok_or_else(|| Error::UnresolvableAtom(a.label.clone()))?;
            let mut blocks = bs.blocks_containing(&a.subspace);
            if let (Some(b), false) = (a.block, a.subspace.is_trivial()) {
                if !blocks.contains(&b) {
                    return Err(Error::UnresolvableAtom(a.label.clone()));
                }
                blocks = [b].into();
            }
            Ok(Node::Element { id, blocks })
        }
        Formula::Neg(x) => Ok(match reduce_node(bs, x)? {
            Node::Element { id, blocks } => {
                let b = *blocks.first().expect("element nodes carry a block");
                let block = &bs.blocks()[b];
                let mask = bs.mask_in(b, id).expect("element belongs to its block");
                Node::Element {
                    id: bs.member_id(b, block.complement_mask(mask)),
                    blocks,
                }
            }
            Node::Residual => Node::Residual,
        }),
        Formula::Conj(..) => reduce_chain(bs, f, Connective::Meet),
        Formula::Disj(..) => reduce_chain(bs, f, Connective::Join),
    }
}

fn flatten<'a>(f: &'a Formula, op: Connective, out: &mut Vec<&'a Formula>) {
    match (f, op) {
        (Formula::Conj(l, r), Connective::Meet) | (Formula::Disj(l, r), Connective::Join) => {
            flatten(l, op, out);
            flatten(r, op, out);
        }
        _ => out.push(f),
    }
}

/// Reduces an associative chain of one connective: operands sharing a
/// block are combined pairwise, first pair in operand order, until no pair
/// shares a block.
fn reduce_chain(bs: &BlockStructure, f: &Formula, op: Connective) -> Result<Node> {
    let mut operands = Vec::new();
    flatten(f, op, &mut operands);
    let mut nodes = operands
        .into_iter()
        .map(|g| reduce_node(bs, g))
        .collect::<Result<Vec<_>>>()?;

    'combine: loop {
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let (Node::Element { id: a, blocks: ba }, Node::Element { id: b, blocks: bb }) =
                    (&nodes[i], &nodes[j])
                else {
                    continue;
                };
                let Some(&block) = ba.intersection(bb).next() else {
                    continue;
                };
                let ma = bs.mask_in(block, *a).expect("element belongs to its block");
                let mb = bs.mask_in(block, *b).expect("element belongs to its block");
                let mask = match op {
                    Connective::Meet => ma & mb,
                    Connective::Join => ma | mb,
                };
                let id = bs.member_id(block, mask);
                let blocks = bs.sharing(id).clone();
                nodes[i] = Node::Element { id, blocks };
                nodes.remove(j);
                continue 'combine;
            }
        }
        break;
    }

    Ok(match nodes.as_slice() {
        [single] => single.clone(),
        _ => Node::Residual,
    })
}

/// Structural reduction of `f` over the blocks of `bs`: the element it
/// reduces to, or `None` when a cross-block connective remains.
pub fn reduce_super(bs: &BlockStructure, f: &Formula) -> Result<Option<Subspace>> {
    Ok(match reduce_node(bs, f)? {
        Node::Element { id, .. } => Some(bs.elements()[id].clone()),
        Node::Residual => None,
    })
}

/// Supervaluational value of `f` in the gap structure `bs`.
///
/// Connectives between elements of a common block are evaluated inside the
/// block (`{0}` and the whole space are in every block); a connective
/// between nontrivial, different subspaces of different blocks has no
/// value. A fully reduced formula is valued by [`super_value`].
pub fn eval_super(bs: &BlockStructure, state: &StateVector, f: &Formula) -> Result<TruthValue> {
    if state.dim() != bs.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: bs.ambient_dim(),
            found: state.dim(),
        });
    }
    match reduce_super(bs, f)? {
        Some(s) => super_value(state, &s, bs.tolerance()),
        None => Ok(TruthValue::Gap),
    }
}

/// Born weight `⟨Ψ|P|Ψ⟩`, clamped to `[0, 1]`.
pub fn lukasiewicz_degree(state: &StateVector, p: &Projector) -> Result<Degree> {
    let image = p.apply(state)?;
    Ok(Degree::clamped(state.amplitudes().dotc(&image).re))
}

/// Many-valued value of `f`: Born weights on atoms, Łukasiewicz connectives.
pub fn eval_lukasiewicz(state: &StateVector, f: &Formula) -> Result<Degree> {
    Ok(match f {
        Formula::Atom(a) => {
            check_state(state, &a.subspace)?;
            lukasiewicz_degree(state, &a.subspace.projector())?
        }
        Formula::Conj(l, r) => eval_lukasiewicz(state, l)?.conj(eval_lukasiewicz(state, r)?),
        Formula::Disj(l, r) => eval_lukasiewicz(state, l)?.disj(eval_lukasiewicz(state, r)?),
        Formula::Neg(x) => eval_lukasiewicz(state, x)?.negate(),
        Formula::Top => Degree::ONE,
        Formula::Bottom => Degree::ZERO,
    })
}

/// Result of a product- or sum-rule check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleOutcome {
    Holds,
    Fails,
    /// Not satisfied because some operand has no value.
    GapMismatch,
}

impl RuleOutcome {
    pub fn is_satisfied(self) -> bool {
        self == RuleOutcome::Holds
    }

    pub fn is_gap_mismatch(self) -> bool {
        self == RuleOutcome::GapMismatch
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleOutcome::Holds => "ok",
            RuleOutcome::Fails => "fail",
            RuleOutcome::GapMismatch => "gap-fail",
        }
    }
}

impl fmt::Display for RuleOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn compare(lhs: Option<f64>, rhs: Option<f64>) -> RuleOutcome {
    match (lhs, rhs) {
        (Some(l), Some(r)) if (l - r).abs() <= RULE_EPS => RuleOutcome::Holds,
        (Some(_), Some(_)) => RuleOutcome::Fails,
        _ => RuleOutcome::GapMismatch,
    }
}

/// `[[A ⊓ B]] = [[A]]·[[B]]`
pub fn check_product_rule(a: Value, b: Value, a_and_b: Value) -> RuleOutcome {
    let product = a.number().zip(b.number()).map(|(x, y)| x * y);
    compare(a_and_b.number(), product)
}

/// `[[A ⊔ B]] = [[A]] + [[B]] − [[A ⊓ B]]`
pub fn check_sum_rule(a: Value, b: Value, a_and_b: Value, a_or_b: Value) -> RuleOutcome {
    let sum = match (a.number(), b.number(), a_and_b.number()) {
        (Some(x), Some(y), Some(z)) => Some(x + y - z),
        _ => None,
    };
    compare(a_or_b.number(), sum)
}

/// Both sides of `c ∧ (a ∨ b)` versus `(c ∧ a) ∨ (c ∧ b)`.
#[derive(Debug, Clone)]
pub struct DistributivityCheck {
    pub lhs: Subspace,
    pub rhs: Subspace,
    pub fails: bool,
}

pub fn check_distributivity(
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
    tol: Tolerance,
) -> Result<DistributivityCheck> {
    let lhs = hilbert::meet(c, &hilbert::join(a, b, tol)?, tol)?;
    let rhs = hilbert::join(&hilbert::meet(c, a, tol)?, &hilbert::meet(c, b, tol)?, tol)?;
    let fails = !lhs.equals(&rhs, tol);
    Ok(DistributivityCheck { lhs, rhs, fails })
}

/// True iff `a, b, c` violate the distributive law.
pub fn distributivity_counterexample(
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
    tol: Tolerance,
) -> Result<bool> {
    check_distributivity(a, b, c, tol).map(|check| check.fails)
}
