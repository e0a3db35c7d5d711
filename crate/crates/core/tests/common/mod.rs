//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use qlogic::contexts::Context;
use qlogic::hilbert::C64;
use qlogic::{Projector, StateVector, Subspace, Tolerance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn random_components(rng: &mut ChaCha8Rng, d: usize) -> Vec<C64> {
    (0..d)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn random_state(rng: &mut ChaCha8Rng, d: usize) -> StateVector {
    StateVector::new(random_components(rng, d)).expect("random vector is nonzero")
}

pub fn random_subspace(rng: &mut ChaCha8Rng, d: usize, k: usize) -> Subspace {
    let vectors: Vec<StateVector> = (0..k).map(|_| random_state(rng, d)).collect();
    Subspace::span(d, &vectors, tol()).expect("dimensions agree")
}

/// Span of `shared` together with extra random vectors, so that meets of
/// two such subspaces are nontrivial.
pub fn subspace_around(
    rng: &mut ChaCha8Rng,
    d: usize,
    shared: &[StateVector],
    extra: usize,
) -> Subspace {
    let mut vectors = shared.to_vec();
    vectors.extend((0..extra).map(|_| random_state(rng, d)));
    Subspace::span(d, &vectors, tol()).expect("dimensions agree")
}

/// Columns of a Haar-ish random unitary, by classical Gram-Schmidt written here
/// independently of the library.
pub fn random_orthonormal_basis(rng: &mut ChaCha8Rng, d: usize) -> Vec<DVector<C64>> {
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(d);
    while basis.len() < d {
        let mut v = DVector::from_vec(random_components(rng, d));
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push(v / C64::new(n, 0.0));
        }
    }
    basis
}

/// A random context of `n` projectors in dimension `d >= n`: a random
/// orthonormal basis split into `n` nonempty groups. `n >= 2`, since a
/// lone projector summing to the identity is trivial.
pub fn random_context(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Context {
    assert!(n >= 2 && n <= d);
    let basis = random_orthonormal_basis(rng, d);
    let mut groups: Vec<usize> = (0..d)
        .map(|i| if i < n { i } else { rng.random_range(0..n) })
        .collect();
    groups.shuffle(rng);
    let projectors = (0..n)
        .map(|g| {
            let mut m = DMatrix::<C64>::zeros(d, d);
            for (i, b) in basis.iter().enumerate() {
                if groups[i] == g {
                    m += b * b.adjoint();
                }
            }
            Projector::new(m, tol()).expect("sum of orthogonal rank-one projectors")
        })
        .collect();
    Context::new("random", projectors, tol()).expect("random context is valid")
}

/// Rank by Gaussian elimination with complete pivoting.
pub fn rank_oracle(columns: &[DVector<C64>], d: usize, eps: f64) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let mut m = DMatrix::<C64>::from_fn(d, columns.len(), |r, c| columns[c][r]);
    let scale = columns
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let mut rank = 0;
    while rank < d.min(columns.len()) {
        let mut best = (0.0, rank, rank);
        for r in rank..d {
            for c in rank..m.ncols() {
                if m[(r, c)].norm() > best.0 {
                    best = (m[(r, c)].norm(), r, c);
                }
            }
        }
        if best.0 <= eps * scale {
            break;
        }
        m.swap_rows(rank, best.1);
        m.swap_columns(rank, best.2);
        let pivot = m[(rank, rank)];
        for r in rank + 1..d {
            let f = m[(r, rank)] / pivot;
            for c in rank..m.ncols() {
                let sub = m[(rank, c)] * f;
                m[(r, c)] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

pub fn basis_columns(s: &Subspace) -> Vec<DVector<C64>> {
    s.basis_matrix()
        .column_iter()
        .map(|c| c.into_owned())
        .collect()
}

/// Number of valid KS assignments by enumerating all 2^n of them: exactly
/// one true ray per context and no orthogonal pair both true.
pub fn brute_force_colorings(
    n: usize,
    contexts: &[Vec<usize>],
    orthogonal: &[(usize, usize)],
) -> u64 {
    assert!(n <= 24);
    let mut count = 0;
    'assignments: for bits in 0u32..(1 << n) {
        for c in contexts {
            if c.iter().filter(|&&r| bits & (1 << r) != 0).count() != 1 {
                continue 'assignments;
            }
        }
        for &(a, b) in orthogonal {
            if bits & (1 << a) != 0 && bits & (1 << b) != 0 {
                continue 'assignments;
            }
        }
        count += 1;
    }
    count
}

/// Plain ray-order backtracking, used as a second opinion where brute
/// force is out of reach.
pub fn naive_colorable(n: usize, contexts: &[Vec<usize>], orthogonal: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in orthogonal {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn consistent(contexts: &[Vec<usize>], values: &[Option<bool>]) -> bool {
        contexts.iter().all(|c| {
            let ones = c.iter().filter(|&&r| values[r] == Some(true)).count();
            let open = c.iter().filter(|&&r| values[r].is_none()).count();
            ones <= 1 && (ones == 1 || open > 0)
        })
    }
    fn go(
        i: usize,
        adj: &[Vec<usize>],
        contexts: &[Vec<usize>],
        values: &mut Vec<Option<bool>>,
    ) -> bool {
        if i == values.len() {
            return true;
        }
        for v in [true, false] {
            if v && adj[i].iter().any(|&j| values[j] == Some(true)) {
                continue;
            }
            values[i] = Some(v);
            if consistent(contexts, values) && go(i + 1, adj, contexts, values) {
                return true;
            }
        }
        values[i] = None;
        false
    }
    go(0, &adj, contexts, &mut vec![None; n])
}

/// Orthogonal pairs among integer-coordinate rays, computed exactly.
pub fn exact_orthogonal_pairs(rays: &[Vec<(i64, i64)>]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 0..rays.len() {
        for b in a + 1..rays.len() {
            let (mut re, mut im) = (0, 0);
            for (x, y) in rays[a].iter().zip(&rays[b]) {
                // conj(x) * y
                re += x.0 * y.0 + x.1 * y.1;
                im += x.0 * y.1 - x.1 * y.0;
            }
            if re == 0 && im == 0 {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// All sets of `d` mutually orthogonal rays, in lexicographic order.
pub fn exact_contexts(n: usize, d: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let orth = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
    let mut out = Vec::new();
    fn grow(
        start: usize,
        n: usize,
        d: usize,
        cur: &mut Vec<usize>,
        orth: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for r in start..n {
            if cur.iter().all(|&c| orth(c, r)) {
                cur.push(r);
                grow(r + 1, n, d, cur, orth, out);
                cur.pop();
            }
        }
    }
    grow(0, n, d, &mut Vec::new(), &orth, &mut out);
    out
}

/// Gaussian-integer rays: components below `bound` in each part, no two
/// rays parallel.
pub fn integer_ray_pool(d: usize, bound: i64, complex: bool) -> Vec<Vec<(i64, i64)>> {
    let values: Vec<i64> = (-bound..=bound).collect();
    let ims: Vec<i64> = if complex { values.clone() } else { vec![0] };
    let mut components = Vec::new();
    for &re in &values {
        for &im in &ims {
            components.push((re, im));
        }
    }
    let mut pool: Vec<Vec<(i64, i64)>> = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let v: Vec<(i64, i64)> = idx.iter().map(|&i| components[i]).collect();
        if v.iter().any(|&c| c != (0, 0)) && !pool.iter().any(|p| parallel(p, &v)) {
            pool.push(v);
        }
        let mut k = 0;
        loop {
            if k == d {
                return pool;
            }
            idx[k] += 1;
            if idx[k] < components.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn parallel(a: &[(i64, i64)], b: &[(i64, i64)]) -> bool {
    // |<a|b>|^2 == <a|a><b|b>, exactly in integers.
    let (mut re, mut im) = (0i64, 0i64);
    for (x, y) in a.iter().zip(b) {
        re += x.0 * y.0 + x.1 * y.1;
        im += x.0 * y.1 - x.1 * y.0;
    }
    let na: i64 = a.iter().map(|x| x.0 * x.0 + x.1 * x.1).sum();
    let nb: i64 = b.iter().map(|x| x.0 * x.0 + x.1 * x.1).sum();
    re * re + im * im == na * nb
}

pub fn to_state(v: &[(i64, i64)]) -> StateVector {
    StateVector::new(
        v.iter()
            .map(|&(re, im)| C64::new(re as f64, im as f64))
            .collect(),
    )
    .expect("nonzero ray")
}
