//! Exact sparse linear algebra over a [`Field`].
//!
//! Matrices live on tensor-product spaces of dimension up to a few thousand;
//! algebra elements are flattened row-major into vectors of length `dim^2` and
//! kept in a fully reduced row echelon basis.  All pivot choices are
//! deterministic (smallest column first, rows in input order), so echelon
//! forms and closure bases are reproducible run to run.

use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::{CoeffError, Field};

#[derive(Debug, Error, PartialEq)]
pub enum LinAlgError {
    #[error("matrix dimensions differ: {left} vs {right}")]
    MixedDimensions { left: u32, right: u32 },
    #[error("ambient dimension {0} exceeds the supported flattening range")]
    AmbientTooLarge(u32),
    #[error("closure rank exceeded the cap of {cap}")]
    DimensionOverflow { cap: usize },
    #[error("matrix {0} in the family is not idempotent")]
    NotIdempotent(usize),
    #[error("idempotents {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("idempotent family does not sum to the identity")]
    NotPartitionOfUnity,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Sparse vector: strictly increasing column indices, no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<E> {
    pub cols: Vec<u32>,
    pub vals: Vec<E>,
}

impl<E> SparseVec<E> {
    pub fn empty() -> Self {
        SparseVec { cols: Vec::new(), vals: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &E)> {
        self.cols.iter().copied().zip(self.vals.iter())
    }
}

/// `a + c * b`, merging sorted supports and dropping cancellations.
pub fn vec_add_scaled<F: Field>(
    f: &F,
    a: &SparseVec<F::Elem>,
    c: &F::Elem,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut cols = Vec::with_capacity(a.nnz() + b.nnz());
    let mut vals = Vec::with_capacity(a.nnz() + b.nnz());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.nnz() || j < b.nnz() {
        let ca = a.cols.get(i).copied().unwrap_or(u32::MAX);
        let cb = b.cols.get(j).copied().unwrap_or(u32::MAX);
        if ca < cb {
            cols.push(ca);
            vals.push(a.vals[i].clone());
            i += 1;
        } else if cb < ca {
            let v = f.mul(c, &b.vals[j]);
            if !f.is_zero(&v) {
                cols.push(cb);
                vals.push(v);
            }
            j += 1;
        } else {
            let v = f.add(&a.vals[i], &f.mul(c, &b.vals[j]));
            if !f.is_zero(&v) {
                cols.push(ca);
                vals.push(v);
            }
            i += 1;
            j += 1;
        }
    }
    SparseVec { cols, vals }
}

/// Square sparse matrix, one [`SparseVec`] per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<E> {
    pub dim: u32,
    pub rows: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zero(dim: u32) -> Self {
        SparseMatrix { dim, rows: (0..dim).map(|_| SparseVec::empty()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }
}

/// Build a matrix from unordered entries; duplicate positions are summed.
pub fn from_entries<F: Field>(
    f: &F,
    dim: u32,
    entries: impl IntoIterator<Item = (u32, u32, F::Elem)>,
) -> SparseMatrix<F::Elem> {
    let mut per_row: Vec<Vec<(u32, F::Elem)>> = (0..dim).map(|_| Vec::new()).collect();
    for (r, c, v) in entries {
        assert!(r < dim && c < dim, "entry ({r}, {c}) outside {dim}x{dim}");
        per_row[r as usize].push((c, v));
    }
    let rows = per_row
        .into_iter()
        .map(|mut row| {
            row.sort_by_key(|(c, _)| *c);
            let mut cols = Vec::with_capacity(row.len());
            let mut vals: Vec<F::Elem> = Vec::with_capacity(row.len());
            for (c, v) in row {
                if cols.last() == Some(&c) {
                    let last = vals.last_mut().unwrap();
                    *last = f.add(last, &v);
                    if f.is_zero(last) {
                        cols.pop();
                        vals.pop();
                    }
                } else if !f.is_zero(&v) {
                    cols.push(c);
                    vals.push(v);
                }
            }
            SparseVec { cols, vals }
        })
        .collect();
    SparseMatrix { dim, rows }
}

pub fn identity<F: Field>(f: &F, dim: u32) -> SparseMatrix<F::Elem> {
    from_entries(f, dim, (0..dim).map(|i| (i, i, f.one())))
}

pub fn scale<F: Field>(
    f: &F,
    c: &F::Elem,
    m: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    let rows = m
        .rows
        .iter()
        .map(|r| {
            let mut cols = Vec::with_capacity(r.nnz());
            let mut vals = Vec::with_capacity(r.nnz());
            for (col, v) in r.iter() {
                let w = f.mul(c, v);
                if !f.is_zero(&w) {
                    cols.push(col);
                    vals.push(w);
                }
            }
            SparseVec { cols, vals }
        })
        .collect();
    SparseMatrix { dim: m.dim, rows }
}

pub fn mat_add<F: Field>(
    f: &F,
    a: &SparseMatrix<F::Elem>,
    b: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    assert_eq!(a.dim, b.dim, "matrix addition requires equal dimensions");
    let one = f.one();
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| vec_add_scaled(f, x, &one, y))
        .collect();
    SparseMatrix { dim: a.dim, rows }
}

pub fn mat_sub<F: Field>(
    f: &F,
    a: &SparseMatrix<F::Elem>,
    b: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    assert_eq!(a.dim, b.dim, "matrix subtraction requires equal dimensions");
    let minus_one = f.neg(&f.one());
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| vec_add_scaled(f, x, &minus_one, y))
        .collect();
    SparseMatrix { dim: a.dim, rows }
}

/// Sparse product `a * b`.
pub fn mat_mul<F: Field>(
    f: &F,
    a: &SparseMatrix<F::Elem>,
    b: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    assert_eq!(a.dim, b.dim, "matrix product requires equal dimensions");
    let rows = a
        .rows
        .iter()
        .map(|arow| {
            let mut acc = SparseVec::empty();
            for (k, v) in arow.iter() {
                acc = vec_add_scaled(f, &acc, v, &b.rows[k as usize]);
            }
            acc
        })
        .collect();
    SparseMatrix { dim: a.dim, rows }
}

/// Kronecker product on row-major tensor indexing: entry
/// `((ra*db + rb), (ca*db + cb)) = a[ra,ca] * b[rb,cb]`.
pub fn kron<F: Field>(
    f: &F,
    a: &SparseMatrix<F::Elem>,
    b: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    let dim = a.dim * b.dim;
    let mut rows = Vec::with_capacity(dim as usize);
    for arow in &a.rows {
        for brow in &b.rows {
            let mut cols = Vec::with_capacity(arow.nnz() * brow.nnz());
            let mut vals = Vec::with_capacity(arow.nnz() * brow.nnz());
            for (ca, va) in arow.iter() {
                for (cb, vb) in brow.iter() {
                    let v = f.mul(va, vb);
                    if !f.is_zero(&v) {
                        cols.push(ca * b.dim + cb);
                        vals.push(v);
                    }
                }
            }
            rows.push(SparseVec { cols, vals });
        }
    }
    SparseMatrix { dim, rows }
}

pub fn commutator<F: Field>(
    f: &F,
    a: &SparseMatrix<F::Elem>,
    b: &SparseMatrix<F::Elem>,
) -> SparseMatrix<F::Elem> {
    mat_sub(f, &mat_mul(f, a, b), &mat_mul(f, b, a))
}

/// Flatten row-major into a vector of length `dim^2`.
pub fn flatten<E: Clone + PartialEq>(m: &SparseMatrix<E>) -> SparseVec<E> {
    let mut cols = Vec::with_capacity(m.nnz());
    let mut vals = Vec::with_capacity(m.nnz());
    for (r, row) in m.rows.iter().enumerate() {
        let base = r as u64 * m.dim as u64;
        for (c, v) in row.iter() {
            cols.push((base + c as u64) as u32);
            vals.push(v.clone());
        }
    }
    SparseVec { cols, vals }
}

pub fn unflatten<E: Clone + PartialEq>(dim: u32, v: &SparseVec<E>) -> SparseMatrix<E> {
    let mut m = SparseMatrix::zero(dim);
    for (c, val) in v.iter() {
        let (r, col) = (c / dim, c % dim);
        m.rows[r as usize].cols.push(col);
        m.rows[r as usize].vals.push(val.clone());
    }
    m
}

/// Fully reduced row echelon basis with canonical pivots: rows are kept
/// sorted by pivot column, every pivot entry is 1, and pivot columns are
/// eliminated from all other rows.
#[derive(Debug, Clone)]
pub struct EchelonBasis<E> {
    rows: Vec<SparseVec<E>>,
    pivots: Vec<u32>,
}

impl<E: Clone + PartialEq> Default for EchelonBasis<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E: Clone + PartialEq> EchelonBasis<E> {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Reduce `v` against the basis (forward elimination only; the basis is
    /// already back-eliminated, so the result has no pivot columns at all).
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, mut v: SparseVec<E>) -> SparseVec<E> {
        loop {
            let hit = v
                .iter()
                .enumerate()
                .find_map(|(k, (c, _))| self.pivots.binary_search(&c).ok().map(|r| (k, r)));
            match hit {
                None => return v,
                Some((k, r)) => {
                    let coeff = f.neg(&v.vals[k]);
                    v = vec_add_scaled(f, &v, &coeff, &self.rows[r]);
                }
            }
        }
    }

    /// Insert a vector; returns the canonical (reduced, pivot-normalized) row
    /// if it enlarged the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: SparseVec<E>) -> Option<SparseVec<E>> {
        let v = self.reduce(f, v);
        if v.is_empty() {
            return None;
        }
        let pivot = v.cols[0];
        let scale = f.inv(&v.vals[0]).expect("pivot entry is nonzero");
        let mut cols = Vec::with_capacity(v.nnz());
        let mut vals = Vec::with_capacity(v.nnz());
        for (c, val) in v.iter() {
            cols.push(c);
            vals.push(f.mul(&scale, val));
        }
        let row = SparseVec { cols, vals };
        // Back-eliminate the new pivot column from existing rows.
        for r in &mut self.rows {
            if let Ok(k) = r.cols.binary_search(&pivot) {
                let coeff = f.neg(&r.vals[k]);
                *r = vec_add_scaled(f, r, &coeff, &row);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row.clone());
        Some(row)
    }
}

/// Row echelon form of a list of vectors; returns the basis (deterministic:
/// rows are inserted in input order).
pub fn rref<F: Field>(f: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> EchelonBasis<F::Elem> {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(f, row);
    }
    basis
}

/// A two-sided multiplicative closure: the span of all words in the
/// generators (prefixed by the identity when `with_identity` is set).
#[derive(Debug, Clone)]
pub struct SubalgebraClosure<E> {
    pub dim: usize,
    /// Canonical spanning matrices: the unflattened RREF rows, pivot order.
    pub basis: Vec<SparseMatrix<E>>,
}

/// Default rank cap for closures.
pub const DEFAULT_RANK_CAP: usize = 20_000;

/// Dimension of the subalgebra of `dim x dim` matrices generated by `gens`,
/// computed by a worklist closure: every newly found basis element is
/// multiplied by every generator on both sides until the span stabilizes.
pub fn subalgebra_closure<F: Field>(
    f: &F,
    ambient_dim: u32,
    gens: &[SparseMatrix<F::Elem>],
    with_identity: bool,
    rank_cap: usize,
) -> Result<SubalgebraClosure<F::Elem>, LinAlgError> {
    if ambient_dim > 65_535 {
        return Err(LinAlgError::AmbientTooLarge(ambient_dim));
    }
    for g in gens {
        if g.dim != ambient_dim {
            return Err(LinAlgError::MixedDimensions { left: ambient_dim, right: g.dim });
        }
    }
    let mut basis: EchelonBasis<F::Elem> = EchelonBasis::new();
    // Matrices whose generator products are still pending.
    let mut frontier: Vec<SparseMatrix<F::Elem>> = Vec::new();
    let seed = |m: SparseMatrix<F::Elem>,
                    basis: &mut EchelonBasis<F::Elem>,
                    frontier: &mut Vec<SparseMatrix<F::Elem>>| {
        if let Some(row) = basis.insert(f, flatten(&m)) {
            frontier.push(unflatten(ambient_dim, &row));
        }
    };
    if with_identity {
        seed(identity(f, ambient_dim), &mut basis, &mut frontier);
    }
    for g in gens {
        seed(g.clone(), &mut basis, &mut frontier);
    }
    while !frontier.is_empty() {
        if basis.rank() > rank_cap {
            return Err(LinAlgError::DimensionOverflow { cap: rank_cap });
        }
        // Deterministic order: frontier entries in insertion order, each
        // multiplied by every generator, right then left.  Products are
        // independent, so they parallelize; insertion stays sequential.
        let products: Vec<SparseMatrix<F::Elem>> = frontier
            .par_iter()
            .flat_map_iter(|m| {
                gens.iter()
                    .flat_map(move |g| [mat_mul(f, m, g), mat_mul(f, g, m)])
            })
            .collect();
        frontier.clear();
        for m in products {
            if basis.rank() > rank_cap {
                return Err(LinAlgError::DimensionOverflow { cap: rank_cap });
            }
            if let Some(row) = basis.insert(f, flatten(&m)) {
                frontier.push(unflatten(ambient_dim, &row));
            }
        }
    }
    let dim = basis.rank();
    let basis = basis
        .rows()
        .iter()
        .map(|r| unflatten(ambient_dim, r))
        .collect();
    Ok(SubalgebraClosure { dim, basis })
}

/// Result of cutting a spanned algebra along a family of idempotents.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSplit {
    /// `pair_dims[i][j]` = dimension of `pi_i * A * pi_j`.
    pub pair_dims: Vec<Vec<usize>>,
    /// Sum of the off-diagonal pair dimensions.
    pub residue: usize,
}

impl BlockSplit {
    pub fn diagonal(&self) -> Vec<usize> {
        (0..self.pair_dims.len()).map(|i| self.pair_dims[i][i]).collect()
    }

    pub fn total(&self) -> usize {
        self.pair_dims.iter().flatten().sum()
    }
}

/// Split the span of `basis` along a family of idempotents.  The family is
/// validated: each member must be idempotent, distinct members orthogonal,
/// and the family must sum to the identity.
pub fn block_split<F: Field>(
    f: &F,
    ambient_dim: u32,
    basis: &[SparseMatrix<F::Elem>],
    idempotents: &[SparseMatrix<F::Elem>],
) -> Result<BlockSplit, LinAlgError> {
    for (i, p) in idempotents.iter().enumerate() {
        if p.dim != ambient_dim {
            return Err(LinAlgError::MixedDimensions { left: ambient_dim, right: p.dim });
        }
        if mat_mul(f, p, p) != *p {
            return Err(LinAlgError::NotIdempotent(i));
        }
        for (j, q) in idempotents.iter().enumerate() {
            if i != j && !mat_mul(f, p, q).is_zero() {
                return Err(LinAlgError::NotOrthogonal(i, j));
            }
        }
    }
    let mut total = SparseMatrix::zero(ambient_dim);
    for p in idempotents {
        total = mat_add(f, &total, p);
    }
    if total != identity(f, ambient_dim) {
        return Err(LinAlgError::NotPartitionOfUnity);
    }
    let k = idempotents.len();
    let mut pair_dims = vec![vec![0usize; k]; k];
    let mut residue = 0usize;
    for (i, p) in idempotents.iter().enumerate() {
        for (j, q) in idempotents.iter().enumerate() {
            let mut eb = EchelonBasis::new();
            for m in basis {
                let cut = mat_mul(f, &mat_mul(f, p, m), q);
                eb.insert(f, flatten(&cut));
            }
            pair_dims[i][j] = eb.rank();
            if i != j {
                residue += eb.rank();
            }
        }
    }
    Ok(BlockSplit { pair_dims, residue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{ExactField, ModularField};

    fn mf() -> ModularField {
        ModularField::new(1_000_003, 2, 1, 8).unwrap()
    }

    #[test]
    fn identity_closure_has_dimension_one() {
        let f = mf();
        let c = subalgebra_closure(&f, 5, &[identity(&f, 5)], true, 100).unwrap();
        assert_eq!(c.dim, 1);
    }

    #[test]
    fn hecke_r_matrix_closure_on_two_strands() {
        // The standard GL(2) braiding on V (x) V spans {1, R}: R^2 falls back
        // into the span by the quadratic relation.  Hand-coded matrix, basis
        // v1v1, v1v2, v2v1, v2v2.
        let f = ExactField::new(1).unwrap();
        let q = f.q_pow(1);
        let qi = f.q_pow(-1);
        let delta = f.sub(&q, &qi);
        let r = from_entries(
            &f,
            4,
            vec![
                (0, 0, q.clone()),
                (1, 2, f.one()),
                (2, 1, f.one()),
                (2, 2, delta),
                (3, 3, q.clone()),
            ],
        );
        let c = subalgebra_closure(&f, 4, &[r], true, 100).unwrap();
        assert_eq!(c.dim, 2, "span of {{1, R}} is 2-dimensional");
    }

    #[test]
    fn closure_respects_rank_cap() {
        let f = mf();
        // Elementary matrices E12, E21 generate all of M_2 (dim 4).
        let e12 = from_entries(&f, 2, vec![(0, 1, f.one())]);
        let e21 = from_entries(&f, 2, vec![(1, 0, f.one())]);
        let err = subalgebra_closure(&f, 2, &[e12.clone(), e21.clone()], true, 3).unwrap_err();
        assert_eq!(err, LinAlgError::DimensionOverflow { cap: 3 });
        let ok = subalgebra_closure(&f, 2, &[e12, e21], true, 4).unwrap();
        assert_eq!(ok.dim, 4);
    }

    #[test]
    fn closure_without_identity_spans_nonunital_words() {
        let f = mf();
        // A single off-diagonal nilpotent: without the identity the span is
        // {E12} alone (E12^2 = 0).
        let e12 = from_entries(&f, 2, vec![(0, 1, f.one())]);
        let c = subalgebra_closure(&f, 2, &[e12], false, 10).unwrap();
        assert_eq!(c.dim, 1);
    }

    #[test]
    fn rref_is_deterministic_and_reduced() {
        let f = mf();
        let rows = vec![
            SparseVec { cols: vec![1, 2], vals: vec![2u64, 4] },
            SparseVec { cols: vec![1, 3], vals: vec![1, 1] },
            SparseVec { cols: vec![2, 3], vals: vec![2, 1_000_002] },
        ];
        let b = rref(&f, rows.clone());
        // Third row = (second - first/2) * 2, so the rank is 2.
        assert_eq!(b.rank(), 2);
        assert_eq!(b.pivots(), &[1, 2]);
        // Pivot entries are 1 and pivot columns are eliminated elsewhere.
        for (k, row) in b.rows().iter().enumerate() {
            assert_eq!(row.cols[0], b.pivots()[k]);
            assert_eq!(row.vals[0], 1);
            for (other, orow) in b.rows().iter().enumerate() {
                if other != k {
                    assert!(orow.cols.binary_search(&b.pivots()[k]).is_err());
                }
            }
        }
        let b2 = rref(&f, rows);
        assert_eq!(b.rows(), b2.rows(), "echelon form is reproducible");
    }

    #[test]
    fn block_split_validates_the_family() {
        let f = mf();
        let p0 = from_entries(&f, 2, vec![(0, 0, f.one())]);
        let p1 = from_entries(&f, 2, vec![(1, 1, f.one())]);
        let not_idem = from_entries(&f, 2, vec![(0, 1, f.one())]);
        let basis = vec![identity(&f, 2)];
        assert_eq!(
            block_split(&f, 2, &basis, &[not_idem, p1.clone()]).unwrap_err(),
            LinAlgError::NotIdempotent(0)
        );
        assert_eq!(
            block_split(&f, 2, &basis, &[p0.clone()]).unwrap_err(),
            LinAlgError::NotPartitionOfUnity
        );
        let overlap = from_entries(&f, 2, vec![(0, 0, f.one()), (1, 1, f.one())]);
        assert_eq!(
            block_split(&f, 2, &basis, &[overlap, p1.clone()]).unwrap_err(),
            LinAlgError::NotOrthogonal(0, 1)
        );
        let split = block_split(&f, 2, &basis, &[p0, p1]).unwrap();
        assert_eq!(split.diagonal(), vec![1, 1]);
        assert_eq!(split.residue, 0);
    }

    #[test]
    fn block_split_sees_off_diagonal_leakage() {
        let f = mf();
        let p0 = from_entries(&f, 2, vec![(0, 0, f.one())]);
        let p1 = from_entries(&f, 2, vec![(1, 1, f.one())]);
        let e12 = from_entries(&f, 2, vec![(0, 1, f.one())]);
        let split = block_split(&f, 2, &[e12], &[p0, p1]).unwrap();
        assert_eq!(split.residue, 1);
        assert_eq!(split.pair_dims[0][1], 1);
        assert_eq!(split.diagonal(), vec![0, 0]);
    }

    #[test]
    fn kron_matches_row_major_indexing() {
        let f = mf();
        let a = from_entries(&f, 2, vec![(0, 1, 3u64)]);
        let b = from_entries(&f, 3, vec![(2, 0, 5u64)]);
        let k = kron(&f, &a, &b);
        assert_eq!(k.dim, 6);
        // (0*3 + 2, 1*3 + 0) = (2, 3) with value 15.
        assert_eq!(k.rows[2].cols, vec![3]);
        assert_eq!(k.rows[2].vals, vec![15]);
        assert_eq!(k.nnz(), 1);
    }

    #[test]
    fn flatten_unflatten_roundtrip() {
        let f = mf();
        let m = from_entries(&f, 3, vec![(0, 2, 7u64), (2, 0, 9), (1, 1, 4)]);
        assert_eq!(unflatten(3, &flatten(&m)), m);
    }
}
