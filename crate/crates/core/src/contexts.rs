//! Contexts, their Boolean blocks, and the pasting of blocks.
//!
//! A [`Context`] is a resolution of the identity into pairwise orthogonal,
//! nontrivial projectors. Its [`BooleanBlock`] holds the ranges of all
//! `2ⁿ` subset sums, indexed by bit mask, so that meet, join and
//! complement inside the block are `&`, `|` and `!` on masks.
//!
//! [`paste`] merges blocks into a [`BlockStructure`]: the deduplicated
//! union of their elements together with, for each element, the set of
//! blocks it belongs to.

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::{self, Projector, Subspace, Tolerance, C64};

/// Upper bound on context size for block generation (`2ⁿ` elements).
pub const MAX_BLOCK_GENERATORS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    id: String,
    projectors: Vec<Projector>,
}

impl Context {
    pub fn new(id: impl Into<String>, projectors: Vec<Projector>, tol: Tolerance) -> Result<Self> {
        validate_context(id, projectors, tol)
    }

    /// Context of rank-one projectors onto the given orthonormal rays.
    pub fn from_rays(
        id: impl Into<String>,
        rays: &[hilbert::StateVector],
        tol: Tolerance,
    ) -> Result<Self> {
        let projectors = rays.iter().map(Projector::rank_one).collect();
        validate_context(id, projectors, tol)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.projectors[0].dim()
    }

    /// Σ of the projectors selected by `mask`.
    pub fn subset_sum(&self, mask: u32) -> DMatrix<C64> {
        let d = self.ambient_dim();
        let mut sum = DMatrix::zeros(d, d);
        for (i, p) in self.projectors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += p.matrix();
            }
        }
        sum
    }
}

/// Checks that `projectors` form a context: nontrivial members, pairwise
/// orthogonal, summing to the identity.
pub fn validate_context(
    id: impl Into<String>,
    projectors: Vec<Projector>,
    tol: Tolerance,
) -> Result<Context> {
    let first = projectors.first().ok_or(Error::EmptyContext)?;
    let d = first.dim();
    for p in &projectors {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    for (i, p) in projectors.iter().enumerate() {
        if !p.is_nontrivial(tol) {
            return Err(Error::TrivialMember(i));
        }
    }
    for i in 0..projectors.len() {
        for j in i + 1..projectors.len() {
            if !hilbert::orthogonal(&projectors[i], &projectors[j], tol)? {
                return Err(Error::NonOrthogonal(i, j));
            }
        }
    }
    let mut sum = DMatrix::<C64>::zeros(d, d);
    for p in &projectors {
        sum += p.matrix();
    }
    let residual = (sum - DMatrix::identity(d, d)).norm();
    if residual > tol.eps() {
        return Err(Error::IncompleteResolution(residual));
    }
    Ok(Context {
        id: id.into(),
        projectors,
    })
}

/// `P s ⊆ s`: every basis vector is mapped into `s` (or to zero).
pub fn is_invariant(s: &Subspace, p: &Projector, tol: Tolerance) -> Result<bool> {
    if s.ambient_dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            found: p.dim(),
        });
    }
    Ok(s.basis_matrix().column_iter().all(|e| {
        let image = p.matrix() * e;
        image.norm() <= tol.eps() || s.residual(&image) <= tol.eps()
    }))
}

/// The Boolean algebra of subset-sum ranges of one context.
#[derive(Debug, Clone)]
pub struct BooleanBlock {
    context_id: String,
    generators: usize,
    elements: Vec<Subspace>,
    extra_invariant: Option<Subspace>,
}

impl BooleanBlock {
    pub fn context_id(&self) -> &str {
        &self.context_id
    }

    /// Number of context projectors `n`; the block has `2ⁿ` elements.
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.elements[0].ambient_dim()
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn element(&self, mask: u32) -> &Subspace {
        &self.elements[mask as usize]
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.generators) - 1) as u32
    }

    pub fn meet_mask(&self, a: u32, b: u32) -> u32 {
        a & b
    }

    pub fn join_mask(&self, a: u32, b: u32) -> u32 {
        a | b
    }

    pub fn complement_mask(&self, a: u32) -> u32 {
        !a & self.full_mask()
    }

    /// Mask of the element equal to `s`, if any.
    pub fn position(&self, s: &Subspace, tol: Tolerance) -> Option<u32> {
        self.elements
            .iter()
            .position(|e| e.equals(s, tol))
            .map(|i| i as u32)
    }

    /// A subspace invariant under every context projector that is not one
    /// of the block's elements. Present only when some member has rank
    /// above one, in which case the full invariant-subspace lattice is
    /// strictly larger than the subset-sum algebra.
    pub fn extra_invariant(&self) -> Option<&Subspace> {
        self.extra_invariant.as_ref()
    }
}

/// Block of a context: the ranges of all `2ⁿ` subset sums of its
/// projectors, element `mask` being the range of `Σ_{i ∈ mask} Pᵢ`.
pub fn invariant_lattice(c: &Context, tol: Tolerance) -> Result<BooleanBlock> {
    let n = c.len();
    if n > MAX_BLOCK_GENERATORS {
        return Err(Error::BlockTooLarge(n));
    }
    let mut elements = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let p = Projector::new(c.subset_sum(mask), tol).map_err(|e| {
            Error::Invariant(format!("subset sum {mask:#b} of context `{}`: {e}", c.id))
        })?;
        elements.push(hilbert::range_of(&p, tol));
    }

    let extra_invariant = c.projectors.iter().find(|p| p.rank() > 1).and_then(|p| {
        let line = Subspace::ray(&hilbert::range_of(p, tol).basis_vectors()[0]);
        let invariant = c
            .projectors
            .iter()
            .all(|q| is_invariant(&line, q, tol).unwrap_or(false));
        let outside = !elements.iter().any(|e| e.equals(&line, tol));
        (invariant && outside).then_some(line)
    });

    Ok(BooleanBlock {
        context_id: c.id.clone(),
        generators: n,
        elements,
        extra_invariant,
    })
}

/// Some projector of `c1` equals some projector of `c2`.
pub fn interlinked(c1: &Context, c2: &Context, tol: Tolerance) -> Result<bool> {
    if c1.ambient_dim() != c2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: c1.ambient_dim(),
            found: c2.ambient_dim(),
        });
    }
    Ok(c1
        .projectors
        .iter()
        .any(|p| c2.projectors.iter().any(|q| p.approx_eq(q, tol))))
}

/// A family of blocks glued along their common elements.
#[derive(Debug, Clone)]
pub struct BlockStructure {
    blocks: Vec<BooleanBlock>,
    elements: Vec<Subspace>,
    sharing: Vec<BTreeSet<usize>>,
    /// `members[b][mask]` is the element id of block `b`'s element `mask`.
    members: Vec<Vec<usize>>,
    tol: Tolerance,
}

impl BlockStructure {
    pub fn blocks(&self) -> &[BooleanBlock] {
        &self.blocks
    }

    pub fn ambient_dim(&self) -> usize {
        self.elements[0].ambient_dim()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Deduplicated union of all block elements.
    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    /// Blocks containing element `id`.
    pub fn sharing(&self, id: usize) -> &BTreeSet<usize> {
        &self.sharing[id]
    }

    pub fn member_id(&self, block: usize, mask: u32) -> usize {
        self.members[block][mask as usize]
    }

    /// Mask of element `id` inside block `block`, if it is a member.
    pub fn mask_in(&self, block: usize, id: usize) -> Option<u32> {
        self.members[block]
            .iter()
            .position(|&e| e == id)
            .map(|m| m as u32)
    }

    pub fn element_id(&self, s: &Subspace) -> Option<usize> {
        if s.ambient_dim() != self.ambient_dim() {
            return None;
        }
        find_equal(&self.elements, s, self.tol)
    }

    pub fn blocks_containing(&self, s: &Subspace) -> BTreeSet<usize> {
        blocks_containing(self, s)
    }

    /// Some nontrivial element lies in more than one block.
    pub fn is_interlinked(&self) -> bool {
        self.elements
            .iter()
            .zip(&self.sharing)
            .any(|(e, blocks)| !e.is_trivial() && blocks.len() > 1)
    }

    /// Ids of elements contained in more than one block.
    pub fn shared_elements(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.sharing[i].len() > 1)
            .collect()
    }
}

fn find_equal(pool: &[Subspace], s: &Subspace, tol: Tolerance) -> Option<usize> {
    // Projector distance is a cheap screen; equality is decided by containment.
    let ps = s.projector();
    pool.iter().position(|e| {
        e.dim() == s.dim()
            && (e.projector().matrix() - ps.matrix()).norm() <= 1e3 * tol.eps()
            && e.equals(s, tol)
    })
}

/// Union of the blocks' elements, identified across blocks by subspace
/// equality. `{0}` and the whole space end up shared by every block.
pub fn paste(blocks: Vec<BooleanBlock>, tol: Tolerance) -> Result<BlockStructure> {
    let d = blocks.first().ok_or(Error::EmptyPasting)?.ambient_dim();
    let mut elements: Vec<Subspace> = Vec::new();
    let mut sharing: Vec<BTreeSet<usize>> = Vec::new();
    let mut members = Vec::with_capacity(blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        if block.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: block.ambient_dim(),
            });
        }
        let mut ids = Vec::with_capacity(block.len());
        for e in block.elements() {
            let id = match find_equal(&elements, e, tol) {
                Some(id) => id,
                None => {
                    elements.push(e.clone());
                    sharing.push(BTreeSet::new());
                    elements.len() - 1
                }
            };
            sharing[id].insert(b);
            ids.push(id);
        }
        members.push(ids);
    }
    Ok(BlockStructure {
        blocks,
        elements,
        sharing,
        members,
        tol,
    })
}

/// Ids of the blocks having `s` as an element; `{0}` and the whole space
/// belong to all of them.
pub fn blocks_containing(bs: &BlockStructure, s: &Subspace) -> BTreeSet<usize> {
    if s.ambient_dim() == bs.ambient_dim() && s.is_trivial() {
        return (0..bs.blocks.len()).collect();
    }
    match bs.element_id(s) {
        Some(id) => bs.sharing[id].clone(),
        None => BTreeSet::new(),
    }
}
