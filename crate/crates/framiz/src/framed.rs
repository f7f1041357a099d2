//! Operators of the framed braid group and its affine and tied variants on
//! V^⊗n and M⊗V^⊗n, where V = V_1 ⊕ ... ⊕ V_d is a direct sum of vector
//! representations and M = M_1 ⊗ ... ⊗ M_d is a tensor product of boundary
//! modules, one per block.
//!
//! Basis conventions, fixed once:
//! * V is block-major: all basis vectors of V_1, then V_2, and so on;
//! * V^⊗n is row-major with leg 1 most significant, so the index of
//!   v_{x_1}⊗...⊗v_{x_n} is Σ x_i (dim V)^(n-i);
//! * with a boundary, M⊗V^⊗n puts the M index most significant, and M itself
//!   is row-major over its block factors M_1, ..., M_d.
//!
//! The operators: τ_i scales by ζ^(b-1) according to the block label of leg
//! i; σ_i acts as the block braiding on equal labels and the flip on mixed
//! labels; ε_{i,j} projects onto equal labels at legs i and j; E_I and π_ν
//! are the label-tuple and label-content projectors; σ₀ applies the double
//! braiding of block b to the pair (M_b, leg 1) when leg 1 carries label b.

use std::collections::HashMap;

use crate::coeff::Field;
use crate::exactla::{from_entries, identity, kron, mat_sub, scale, SparseMatrix};
use crate::rmat::{
    build_pack, coproduct_action, double_braiding, embed_leg, embed_pair, flatten_generators,
    BlockKind, Boundary, BoundaryPack, RMatrixPack, RepMats, RmatError,
};

#[derive(Debug, thiserror::Error)]
pub enum FramedError {
    #[error("{what} {index} outside 1..={bound}")]
    IndexOutOfRange { what: &'static str, index: u32, bound: u32 },
    #[error("equal-label projector needs two distinct legs, got {0} twice")]
    EqualIndices(u32),
    #[error("operation requires all blocks identical in kind and size")]
    HeterogeneousBlocks,
    #[error("no boundary module configured")]
    NoBoundary,
    #[error("bad label tuple: {0}")]
    BadPartition(String),
    #[error("bad composition: {0}")]
    BadComposition(String),
    #[error("field has framing order {field_d} but {blocks} blocks were given")]
    FramingOrderMismatch { field_d: u32, blocks: usize },
    #[error("ambient dimension {dim}^{n} exceeds the supported range")]
    AmbientTooLarge { dim: u32, n: u32 },
    #[error(transparent)]
    Rmat(#[from] RmatError),
}

/// Per-block boundary data: the double-braiding packs and the assembled
/// operator on M⊗V.
#[derive(Debug, Clone)]
pub struct BoundaryData<E> {
    pub shape: Boundary,
    pub packs: Vec<BoundaryPack<E>>,
    pub m_dims: Vec<u32>,
    /// dim M = Π_b dim M_b.
    pub dim_m: u32,
    /// The double braiding assembled on M⊗V: block b's operator on the
    /// (M_b, leg) factors when the leg carries label b.
    pub k_full: SparseMatrix<E>,
}

/// A fully built scene: field, blocks with their braidings, leg count, and
/// an optional boundary. All operator builders are pure and take `&self`.
#[derive(Debug, Clone)]
pub struct FramedSetup<F: Field> {
    pub f: F,
    pub n: u32,
    pub kinds: Vec<BlockKind>,
    pub packs: Vec<RMatrixPack<F::Elem>>,
    pub boundary: Option<BoundaryData<F::Elem>>,
    pub dim_v: u32,
    /// Ambient dimension (dim V)^n.
    pub ambient: u32,
    /// Start index of each block in V, length d+1.
    offsets: Vec<u32>,
    /// Block label (0-based) of each basis index of V.
    label_of: Vec<u32>,
    /// Two-leg operators on V⊗V, embedded on demand.
    sigma2: SparseMatrix<F::Elem>,
    sigma2_inv: SparseMatrix<F::Elem>,
}

impl<F: Field> FramedSetup<F> {
    pub fn new(
        f: F,
        kinds: Vec<BlockKind>,
        n: u32,
        boundary: Option<Boundary>,
    ) -> Result<Self, FramedError> {
        if f.d() as usize != kinds.len() || kinds.is_empty() {
            return Err(FramedError::FramingOrderMismatch {
                field_d: f.d(),
                blocks: kinds.len(),
            });
        }
        let packs: Vec<RMatrixPack<F::Elem>> = kinds
            .iter()
            .map(|&k| build_pack(&f, k))
            .collect::<Result<_, _>>()?;
        let mut offsets = vec![0u32];
        for k in &kinds {
            offsets.push(offsets.last().unwrap() + k.dim());
        }
        let dim_v = *offsets.last().unwrap();
        let ambient = dim_v
            .checked_pow(n)
            .filter(|&a| a <= 1 << 24)
            .ok_or(FramedError::AmbientTooLarge { dim: dim_v, n })?;
        let mut label_of = vec![0u32; dim_v as usize];
        for b in 0..kinds.len() {
            for x in offsets[b]..offsets[b + 1] {
                label_of[x as usize] = b as u32;
            }
        }
        let (sigma2, sigma2_inv) = build_sigma2(&f, &packs, &offsets, dim_v);
        let boundary = match boundary {
            None => None,
            Some(shape) => Some(build_boundary(&f, &packs, &offsets, dim_v, shape)?),
        };
        Ok(FramedSetup {
            f,
            n,
            kinds,
            packs,
            boundary,
            dim_v,
            ambient,
            offsets,
            label_of,
            sigma2,
            sigma2_inv,
        })
    }

    pub fn d(&self) -> u32 {
        self.kinds.len() as u32
    }

    /// Block label (0-based) of leg `leg` (1-indexed) in ambient index `t`.
    fn leg_label(&self, t: u32, leg: u32) -> u32 {
        let digit = (t / self.dim_v.pow(self.n - leg)) % self.dim_v;
        self.label_of[digit as usize]
    }

    fn check_leg(&self, what: &'static str, i: u32, bound: u32) -> Result<(), FramedError> {
        if i >= 1 && i <= bound {
            Ok(())
        } else {
            Err(FramedError::IndexOutOfRange { what, index: i, bound })
        }
    }

    /// τ_i: diagonal, ζ^(b-1) on indices whose leg i carries label b.
    pub fn tau(&self, i: u32) -> Result<SparseMatrix<F::Elem>, FramedError> {
        self.check_leg("leg", i, self.n)?;
        let f = &self.f;
        let one_leg = from_entries(
            f,
            self.dim_v,
            (0..self.dim_v).map(|x| (x, x, f.zeta_pow(self.label_of[x as usize] as i64))),
        );
        Ok(embed_leg(f, &one_leg, self.dim_v, self.n, i))
    }

    /// σ_i: block braiding on equal labels at legs (i, i+1), flip on mixed.
    pub fn sigma(&self, i: u32) -> Result<SparseMatrix<F::Elem>, FramedError> {
        self.check_leg("crossing", i, self.n.saturating_sub(1))?;
        Ok(embed_pair(&self.f, &self.sigma2, self.dim_v, self.n, i))
    }

    pub fn sigma_inv(&self, i: u32) -> Result<SparseMatrix<F::Elem>, FramedError> {
        self.check_leg("crossing", i, self.n.saturating_sub(1))?;
        Ok(embed_pair(&self.f, &self.sigma2_inv, self.dim_v, self.n, i))
    }

    /// ε_{i,j}: projector onto equal block labels at legs i and j.
    pub fn epsilon(&self, i: u32, j: u32) -> Result<SparseMatrix<F::Elem>, FramedError> {
        self.check_leg("leg", i, self.n)?;
        self.check_leg("leg", j, self.n)?;
        if i == j {
            return Err(FramedError::EqualIndices(i));
        }
        let f = &self.f;
        Ok(from_entries(
            f,
            self.ambient,
            (0..self.ambient).filter_map(|t| {
                (self.leg_label(t, i) == self.leg_label(t, j)).then(|| (t, t, f.one()))
            }),
        ))
    }

    /// E_I for the label tuple I (0-based labels, one per leg): projector
    /// onto V_{I_1}⊗...⊗V_{I_n}. Ordered partitions of {1..n} into d parts
    /// correspond to label tuples by I_t = the part containing t.
    pub fn proj_ei(&self, labels: &[u32]) -> Result<SparseMatrix<F::Elem>, FramedError> {
        if labels.len() != self.n as usize {
            return Err(FramedError::BadPartition(format!(
                "{} labels for {} legs",
                labels.len(),
                self.n
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&b| b >= self.d()) {
            return Err(FramedError::BadPartition(format!(
                "label {bad} outside 0..{}",
                self.d()
            )));
        }
        let f = &self.f;
        Ok(from_entries(
            f,
            self.ambient,
            (0..self.ambient).filter_map(|t| {
                (1..=self.n)
                    .all(|leg| self.leg_label(t, leg) == labels[leg as usize - 1])
                    .then(|| (t, t, f.one()))
            }),
        ))
    }

    /// π_ν for a composition ν of n into d parts: projector onto indices
    /// whose label content is ν (ν_b legs with label b).
    pub fn proj_nu(&self, nu: &[u32]) -> Result<SparseMatrix<F::Elem>, FramedError> {
        if nu.len() != self.kinds.len() || nu.iter().sum::<u32>() != self.n {
            return Err(FramedError::BadComposition(format!(
                "{nu:?} is not a {}-part composition of {}",
                self.kinds.len(),
                self.n
            )));
        }
        let f = &self.f;
        Ok(from_entries(
            f,
            self.ambient,
            (0..self.ambient).filter_map(|t| {
                let mut counts = vec![0u32; nu.len()];
                for leg in 1..=self.n {
                    counts[self.leg_label(t, leg) as usize] += 1;
                }
                (counts == nu).then(|| (t, t, f.one()))
            }),
        ))
    }

    /// The block-permutation action: sends V_{a_1}⊗...⊗V_{a_n} to
    /// V_{w(a_1)}⊗...⊗V_{w(a_n)} identically on internal indices, where
    /// `w[b]` is the image of block b (0-based). All blocks must be equal.
    pub fn sd_perm(&self, w: &[u32]) -> Result<SparseMatrix<F::Elem>, FramedError> {
        if self.kinds.iter().any(|&k| k != self.kinds[0]) {
            return Err(FramedError::HeterogeneousBlocks);
        }
        let d = self.d();
        assert_eq!(w.len(), d as usize, "permutation of {} blocks", d);
        let mut seen = vec![false; d as usize];
        for &img in w {
            assert!(img < d && !seen[img as usize], "not a permutation: {w:?}");
            seen[img as usize] = true;
        }
        let f = &self.f;
        let block = self.kinds[0].dim();
        let one_leg = from_entries(
            f,
            self.dim_v,
            (0..self.dim_v).map(|x| {
                let b = self.label_of[x as usize];
                let loc = x - self.offsets[b as usize];
                (w[b as usize] * block + loc, x, f.one())
            }),
        );
        let mut acc = identity(f, 1);
        for _ in 0..self.n {
            acc = kron(f, &acc, &one_leg);
        }
        Ok(acc)
    }

    /// The tangle element e_i = ε_i - (σ_i - σ_i^-1)/(q - q^-1).
    pub fn e_tangle(&self, i: u32) -> Result<SparseMatrix<F::Elem>, FramedError> {
        self.check_leg("crossing", i, self.n.saturating_sub(1))?;
        let f = &self.f;
        let eps2 = from_entries(
            f,
            self.dim_v * self.dim_v,
            (0..self.dim_v * self.dim_v).filter_map(|t| {
                let x = t / self.dim_v;
                let y = t % self.dim_v;
                (self.label_of[x as usize] == self.label_of[y as usize])
                    .then(|| (t, t, f.one()))
            }),
        );
        let delta_inv = f
            .inv(&f.q_bracket_num(1))
            .expect("q - q^-1 is invertible");
        let e2 = mat_sub(
            f,
            &eps2,
            &scale(f, &delta_inv, &mat_sub(f, &self.sigma2, &self.sigma2_inv)),
        );
        Ok(embed_pair(f, &e2, self.dim_v, self.n, i))
    }

    /// σ₀ on M⊗V^⊗n: the assembled double braiding on (M, leg 1), identity
    /// on the remaining legs.
    pub fn sigma0(&self) -> Result<SparseMatrix<F::Elem>, FramedError> {
        let bd = self.boundary.as_ref().ok_or(FramedError::NoBoundary)?;
        self.check_leg("leg", 1, self.n)?;
        let rest = identity(&self.f, self.dim_v.pow(self.n - 1));
        Ok(kron(&self.f, &bd.k_full, &rest))
    }

    /// The double braiding on M⊗V alone (the n = 1 restriction of σ₀).
    pub fn sigma0_core(&self) -> Result<&SparseMatrix<F::Elem>, FramedError> {
        Ok(&self.boundary.as_ref().ok_or(FramedError::NoBoundary)?.k_full)
    }

    /// Extend an operator on V^⊗n to M⊗V^⊗n by the identity on M.
    pub fn with_boundary_ambient(
        &self,
        x: &SparseMatrix<F::Elem>,
    ) -> Result<SparseMatrix<F::Elem>, FramedError> {
        let bd = self.boundary.as_ref().ok_or(FramedError::NoBoundary)?;
        Ok(kron(&self.f, &identity(&self.f, bd.dim_m), x))
    }

    /// Chevalley-generator matrices of the block-diagonal quantum group on
    /// V^⊗n: every block must be a gl kind; each block contributes its
    /// raising/lowering/torus generators acting on its own summand of V
    /// (zero off-block for E and F, identity off-block for the torus),
    /// extended across legs by the coproduct.
    pub fn chevalley(&self) -> Result<Vec<SparseMatrix<F::Elem>>, FramedError> {
        let f = &self.f;
        let mut out = Vec::new();
        if self.n == 0 {
            return Ok(out);
        }
        for (b, &kind) in self.kinds.iter().enumerate() {
            let BlockKind::Gl(rank) = kind else {
                return Err(FramedError::Rmat(RmatError::UnsupportedKind(
                    "Chevalley matrices are provided for gl blocks only",
                )));
            };
            let rep = self.embedded_block_rep(b, rank);
            let slots: Vec<&RepMats<F::Elem>> = (0..self.n).map(|_| &rep).collect();
            let tot = coproduct_action(f, &slots);
            out.extend(flatten_generators(f, &tot));
        }
        Ok(out)
    }

    /// One-leg generator matrices of block b's gl_rank, embedded in V:
    /// E, F vanish off-block; the torus acts as 1 off-block.
    fn embedded_block_rep(&self, b: usize, rank: u32) -> RepMats<F::Elem> {
        let f = &self.f;
        let off = self.offsets[b];
        let raise = (0..rank - 1)
            .map(|i| from_entries(f, self.dim_v, [(off + i, off + i + 1, f.one())]))
            .collect();
        let lower = (0..rank - 1)
            .map(|i| from_entries(f, self.dim_v, [(off + i + 1, off + i, f.one())]))
            .collect();
        let diag = |j: u32, exp: i32| {
            from_entries(
                f,
                self.dim_v,
                (0..self.dim_v).map(|x| (x, x, if x == off + j { f.q_pow(exp) } else { f.one() })),
            )
        };
        let cartan = (0..rank).map(|j| diag(j, 1)).collect();
        let cartan_inv = (0..rank).map(|j| diag(j, -1)).collect();
        RepMats { dim: self.dim_v, rank, raise, lower, cartan, cartan_inv }
    }

    /// The full symbol table for a preset.
    pub fn assignment_for(
        &self,
        preset: TablePreset,
    ) -> Result<GeneratorAssignment<F::Elem>, FramedError> {
        let mut entries: Vec<(Sym, SparseMatrix<F::Elem>)> = Vec::new();
        if preset != TablePreset::Tied {
            for i in 1..=self.n {
                entries.push((Sym::T(i), self.tau(i)?));
            }
        }
        for i in 1..self.n.max(1) {
            entries.push((Sym::S(i), self.sigma(i)?));
            entries.push((Sym::SInv(i), self.sigma_inv(i)?));
            entries.push((Sym::E(i), self.epsilon(i, i + 1)?));
            entries.push((Sym::ELow(i), self.e_tangle(i)?));
        }
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                entries.push((Sym::Eij(i, j), self.epsilon(i, j)?));
            }
        }
        if preset == TablePreset::Affine {
            // Everything so far lives on V^⊗n; lift to M⊗V^⊗n and add σ₀.
            for (_, m) in entries.iter_mut() {
                *m = self.with_boundary_ambient(m)?;
            }
            entries.push((Sym::S0, self.sigma0()?));
        }
        let dim = entries
            .first()
            .map(|(_, m)| m.dim)
            .unwrap_or_else(|| match preset {
                TablePreset::Affine => self
                    .boundary
                    .as_ref()
                    .map(|b| b.dim_m * self.ambient)
                    .unwrap_or(self.ambient),
                _ => self.ambient,
            });
        Ok(GeneratorAssignment::new(dim, entries))
    }
}

fn build_sigma2<F: Field>(
    f: &F,
    packs: &[RMatrixPack<F::Elem>],
    offsets: &[u32],
    dim_v: u32,
) -> (SparseMatrix<F::Elem>, SparseMatrix<F::Elem>) {
    let place_diag = |entries: &mut Vec<(u32, u32, F::Elem)>, b: usize, m: &SparseMatrix<F::Elem>| {
        let db = offsets[b + 1] - offsets[b];
        let off = offsets[b];
        for (r, row) in m.rows.iter().enumerate() {
            let (xr, yr) = (r as u32 / db, r as u32 % db);
            let grow = (off + xr) * dim_v + (off + yr);
            for (c, v) in row.cols.iter().zip(&row.vals) {
                let (xc, yc) = (c / db, c % db);
                entries.push((grow, (off + xc) * dim_v + (off + yc), v.clone()));
            }
        }
    };
    let mut fwd = Vec::new();
    let mut bwd = Vec::new();
    for b in 0..packs.len() {
        place_diag(&mut fwd, b, &packs[b].r);
        place_diag(&mut bwd, b, &packs[b].r_inv);
    }
    // Mixed labels: the flip v_x⊗v_y -> v_y⊗v_x, its own inverse.
    for a in 0..packs.len() {
        for b in 0..packs.len() {
            if a == b {
                continue;
            }
            for x in offsets[a]..offsets[a + 1] {
                for y in offsets[b]..offsets[b + 1] {
                    fwd.push((y * dim_v + x, x * dim_v + y, f.one()));
                    bwd.push((y * dim_v + x, x * dim_v + y, f.one()));
                }
            }
        }
    }
    (
        from_entries(f, dim_v * dim_v, fwd),
        from_entries(f, dim_v * dim_v, bwd),
    )
}

fn build_boundary<F: Field>(
    f: &F,
    packs: &[RMatrixPack<F::Elem>],
    offsets: &[u32],
    dim_v: u32,
    shape: Boundary,
) -> Result<BoundaryData<F::Elem>, FramedError> {
    let bpacks: Vec<BoundaryPack<F::Elem>> = packs
        .iter()
        .map(|p| double_braiding(f, p, shape))
        .collect::<Result<_, _>>()?;
    let m_dims: Vec<u32> = bpacks.iter().map(|p| p.m_dim).collect();
    let dim_m: u32 = m_dims.iter().product();
    // K on M⊗V: for v_x with label b, apply block b's double braiding to
    // (M_b, v_x), identity on the other M factors.
    let mut entries = Vec::new();
    for b in 0..packs.len() {
        let mb = m_dims[b];
        let db = offsets[b + 1] - offsets[b];
        let off = offsets[b];
        let stride: u32 = m_dims[b + 1..].iter().product();
        let pre_count: u32 = m_dims[..b].iter().product();
        for (r, row) in bpacks[b].k_op.rows.iter().enumerate() {
            let (mu_out, y) = (r as u32 / db, r as u32 % db);
            for (c, v) in row.cols.iter().zip(&row.vals) {
                let (mu_in, x) = (c / db, c % db);
                for pre in 0..pre_count {
                    for post in 0..stride {
                        let mo = (pre * mb + mu_out) * stride + post;
                        let mi = (pre * mb + mu_in) * stride + post;
                        entries.push((
                            mo * dim_v + (off + y),
                            mi * dim_v + (off + x),
                            v.clone(),
                        ));
                    }
                }
            }
        }
    }
    let k_full = from_entries(f, dim_m * dim_v, entries);
    Ok(BoundaryData { shape, packs: bpacks, m_dims, dim_m, k_full })
}

/// Abstract generator symbols of the framed, affine and tied presentations.
/// Indices are 1-based; `E(i)` is the adjacent-leg idempotent E_{i,i+1},
/// `ELow(i)` the tangle element e_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    T(u32),
    S(u32),
    SInv(u32),
    E(u32),
    Eij(u32, u32),
    ELow(u32),
    S0,
}

impl std::fmt::Display for Sym {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Sym::T(i) => write!(w, "t{i}"),
            Sym::S(i) => write!(w, "s{i}"),
            Sym::SInv(i) => write!(w, "s{i}^-1"),
            Sym::E(i) => write!(w, "E{i}"),
            Sym::Eij(i, j) => write!(w, "E{{{i},{j}}}"),
            Sym::ELow(i) => write!(w, "e{i}"),
            Sym::S0 => write!(w, "s0"),
        }
    }
}

/// Which symbol table to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TablePreset {
    Framed,
    Affine,
    Tied,
}

/// Symbol table mapping generator symbols to matrices of one shared ambient
/// dimension.
#[derive(Debug, Clone)]
pub struct GeneratorAssignment<E> {
    pub dim: u32,
    order: Vec<Sym>,
    map: HashMap<Sym, SparseMatrix<E>>,
}

impl<E> GeneratorAssignment<E> {
    pub fn new(dim: u32, entries: Vec<(Sym, SparseMatrix<E>)>) -> Self {
        let mut order = Vec::with_capacity(entries.len());
        let mut map = HashMap::with_capacity(entries.len());
        for (sym, m) in entries {
            assert_eq!(m.dim, dim, "assignment matrices must share the ambient");
            order.push(sym);
            map.insert(sym, m);
        }
        GeneratorAssignment { dim, order, map }
    }

    pub fn get(&self, sym: Sym) -> Option<&SparseMatrix<E>> {
        self.map.get(&sym)
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_field, ExactField, FieldHandle, FieldSpec};
    use crate::exactla::{commutator, mat_add, mat_mul};

    fn exact(d: u32) -> ExactField {
        match make_field(&FieldSpec::exact(d)).unwrap() {
            FieldHandle::Exact(f) => f,
            _ => unreachable!(),
        }
    }

    fn gl_setup(d: u32, rank: u32, n: u32) -> FramedSetup<ExactField> {
        let f = exact(d);
        let kinds = vec![BlockKind::Gl(rank); d as usize];
        FramedSetup::new(f, kinds, n, None).unwrap()
    }

    #[test]
    fn tau_is_identity_for_one_block() {
        let s = gl_setup(1, 2, 2);
        let t = s.tau(1).unwrap();
        assert!(mat_sub(&s.f, &t, &identity(&s.f, 4)).is_zero());
    }

    #[test]
    fn tau_golden_for_two_singleton_blocks() {
        let s = FramedSetup::new(exact(2), vec![BlockKind::Gl(1); 2], 1, None).unwrap();
        let t = s.tau(1).unwrap();
        let f = &s.f;
        let golden = from_entries(f, 2, [(0, 0, f.one()), (1, 1, f.from_i64(-1))]);
        assert!(mat_sub(f, &t, &golden).is_zero());
    }

    #[test]
    fn tau_has_order_d() {
        let s = gl_setup(3, 1, 2);
        let t = s.tau(2).unwrap();
        let t3 = mat_mul(&s.f, &mat_mul(&s.f, &t, &t), &t);
        assert!(mat_sub(&s.f, &t3, &identity(&s.f, s.ambient)).is_zero());
    }

    #[test]
    fn sigma_golden_for_two_singleton_blocks() {
        let s = FramedSetup::new(exact(2), vec![BlockKind::Gl(1); 2], 2, None).unwrap();
        let f = &s.f;
        let q = f.q_pow(1);
        let golden = from_entries(
            f,
            4,
            [
                (0, 0, q.clone()),
                (2, 1, f.one()),
                (1, 2, f.one()),
                (3, 3, q),
            ],
        );
        assert!(mat_sub(f, &s.sigma(1).unwrap(), &golden).is_zero());
    }

    #[test]
    fn sigma_reduces_to_the_braiding_for_one_block() {
        let s = gl_setup(1, 2, 2);
        assert!(mat_sub(&s.f, &s.sigma(1).unwrap(), &s.packs[0].r).is_zero());
    }

    #[test]
    fn braid_relation_holds_for_two_gl2_blocks() {
        let s = gl_setup(2, 2, 3);
        let f = &s.f;
        let s1 = s.sigma(1).unwrap();
        let s2 = s.sigma(2).unwrap();
        let lhs = mat_mul(f, &mat_mul(f, &s1, &s2), &s1);
        let rhs = mat_mul(f, &mat_mul(f, &s2, &s1), &s2);
        assert!(mat_sub(f, &lhs, &rhs).is_zero());
        let inv = mat_mul(f, &s1, &s.sigma_inv(1).unwrap());
        assert!(mat_sub(f, &inv, &identity(f, s.ambient)).is_zero());
    }

    #[test]
    fn epsilon_golden_and_average_identity() {
        let s = FramedSetup::new(exact(2), vec![BlockKind::Gl(1); 2], 2, None).unwrap();
        let f = &s.f;
        let eps = s.epsilon(1, 2).unwrap();
        let golden = from_entries(f, 4, [(0, 0, f.one()), (3, 3, f.one())]);
        assert!(mat_sub(f, &eps, &golden).is_zero());
        // ε_{i,j} = (1/d) Σ_a τ_i^a τ_j^(d-a), here with mixed block sizes.
        let s = FramedSetup::new(
            exact(3),
            vec![BlockKind::Gl(2), BlockKind::Gl(1), BlockKind::Gl(1)],
            2,
            None,
        )
        .unwrap();
        let f = &s.f;
        let d = 3u32;
        let t1 = s.tau(1).unwrap();
        let t2 = s.tau(2).unwrap();
        let mut avg = SparseMatrix::zero(s.ambient);
        for a in 1..=d {
            let mut term = identity(f, s.ambient);
            for _ in 0..a {
                term = mat_mul(f, &term, &t1);
            }
            for _ in 0..(d - a) {
                term = mat_mul(f, &term, &t2);
            }
            avg = mat_add(f, &avg, &term);
        }
        avg = scale(f, &f.rat(1, d as i64), &avg);
        assert!(mat_sub(f, &avg, &s.epsilon(1, 2).unwrap()).is_zero());
    }

    #[test]
    fn epsilon_rejects_equal_legs() {
        let s = gl_setup(2, 2, 2);
        assert!(matches!(s.epsilon(1, 1), Err(FramedError::EqualIndices(1))));
    }

    #[test]
    fn label_projectors_partition_unity() {
        let s = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2), BlockKind::Gl(1)],
            2,
            None,
        )
        .unwrap();
        let f = &s.f;
        let mut sum = SparseMatrix::zero(s.ambient);
        let tuples = [[0u32, 0], [0, 1], [1, 0], [1, 1]];
        for labels in &tuples {
            sum = mat_add(f, &sum, &s.proj_ei(labels).unwrap());
        }
        assert!(mat_sub(f, &sum, &identity(f, s.ambient)).is_zero());
        let a = s.proj_ei(&tuples[0]).unwrap();
        let b = s.proj_ei(&tuples[2]).unwrap();
        assert!(mat_mul(f, &a, &b).is_zero());
        // d=2, n=1, first block only: diag(Id_{V_1}, 0).
        let s1 = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2), BlockKind::Gl(1)],
            1,
            None,
        )
        .unwrap();
        let p = s1.proj_ei(&[0]).unwrap();
        let golden = from_entries(&s1.f, 3, [(0, 0, s1.f.one()), (1, 1, s1.f.one())]);
        assert!(mat_sub(&s1.f, &p, &golden).is_zero());
    }

    #[test]
    fn content_projectors_partition_unity_with_expected_ranks() {
        let s = gl_setup(2, 2, 2);
        let f = &s.f;
        let mut sum = SparseMatrix::zero(s.ambient);
        for nu in [[2u32, 0], [1, 1], [0, 2]] {
            let p = s.proj_nu(&nu).unwrap();
            sum = mat_add(f, &sum, &p);
        }
        assert!(mat_sub(f, &sum, &identity(f, s.ambient)).is_zero());
        // rank π_(1,1) = C(2,(1,1))·2·2 = 8, counted as diagonal ones.
        let p11 = s.proj_nu(&[1, 1]).unwrap();
        let rank: usize = p11.rows.iter().map(|r| r.cols.len()).sum();
        assert_eq!(rank, 8);
        assert!(matches!(
            s.proj_nu(&[2, 1]),
            Err(FramedError::BadComposition(_))
        ));
    }

    #[test]
    fn block_permutations_act_and_conjugate_projectors() {
        let s = gl_setup(2, 2, 2);
        let f = &s.f;
        let id = s.sd_perm(&[0, 1]).unwrap();
        assert!(mat_sub(f, &id, &identity(f, s.ambient)).is_zero());
        let swap = s.sd_perm(&[1, 0]).unwrap();
        let twice = mat_mul(f, &swap, &swap);
        assert!(mat_sub(f, &twice, &identity(f, s.ambient)).is_zero());
        // Conjugation relabels the projector.
        let p = s.proj_ei(&[0, 1]).unwrap();
        let conj = mat_mul(f, &mat_mul(f, &swap, &p), &swap);
        let relabeled = s.proj_ei(&[1, 0]).unwrap();
        assert!(mat_sub(f, &conj, &relabeled).is_zero());
        // sd_perm commutes with σ and ε.
        for m in [s.sigma(1).unwrap(), s.epsilon(1, 2).unwrap()] {
            assert!(commutator(f, &swap, &m).is_zero());
        }
        let het = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2), BlockKind::Gl(3)],
            2,
            None,
        )
        .unwrap();
        assert!(matches!(
            het.sd_perm(&[0, 1]),
            Err(FramedError::HeterogeneousBlocks)
        ));
    }

    #[test]
    fn framed_operators_centralize_the_quantum_group() {
        for (d, rank) in [(2u32, 2u32), (2, 3)] {
            let s = gl_setup(d, rank, 2);
            let f = &s.f;
            let gens = s.chevalley().unwrap();
            for op in [
                s.tau(1).unwrap(),
                s.tau(2).unwrap(),
                s.sigma(1).unwrap(),
                s.epsilon(1, 2).unwrap(),
            ] {
                for g in &gens {
                    assert!(commutator(f, &op, g).is_zero());
                }
            }
        }
    }

    #[test]
    fn tangle_element_matches_its_pack_for_one_block() {
        let f = exact(1);
        let s = FramedSetup::new(f, vec![BlockKind::So(4)], 2, None).unwrap();
        let e = s.e_tangle(1).unwrap();
        assert!(mat_sub(&s.f, &e, s.packs[0].e.as_ref().unwrap()).is_zero());
    }

    #[test]
    fn sigma0_is_the_squared_braiding_for_one_vector_block() {
        let f = exact(1);
        let s = FramedSetup::new(f, vec![BlockKind::Gl(2)], 2, Some(Boundary::Vector)).unwrap();
        let f = &s.f;
        let s0 = s.sigma0().unwrap();
        let r2 = mat_mul(f, &s.packs[0].r, &s.packs[0].r);
        let expect = kron(f, &r2, &identity(f, 2));
        assert!(mat_sub(f, &s0, &expect).is_zero());
    }

    #[test]
    fn sigma0_four_term_relation_with_two_blocks() {
        let f = exact(2);
        let s = FramedSetup::new(
            f,
            vec![BlockKind::Gl(2); 2],
            2,
            Some(Boundary::Vector),
        )
        .unwrap();
        let f = &s.f;
        let s0 = s.sigma0().unwrap();
        let s1 = s.with_boundary_ambient(&s.sigma(1).unwrap()).unwrap();
        let lhs = mat_mul(f, &mat_mul(f, &mat_mul(f, &s0, &s1), &s0), &s1);
        let rhs = mat_mul(f, &mat_mul(f, &mat_mul(f, &s1, &s0), &s1), &s0);
        assert!(mat_sub(f, &lhs, &rhs).is_zero());
        // σ₀ commutes with every τ.
        for i in 1..=2 {
            let t = s.with_boundary_ambient(&s.tau(i).unwrap()).unwrap();
            assert!(commutator(f, &s0, &t).is_zero());
        }
    }

    #[test]
    fn trivial_boundaries_make_sigma0_the_identity() {
        let f = exact(2);
        let s = FramedSetup::new(f, vec![BlockKind::Gl(2); 2], 1, Some(Boundary::Sym(0))).unwrap();
        let s0 = s.sigma0().unwrap();
        assert!(mat_sub(&s.f, &s0, &identity(&s.f, s0.dim)).is_zero());
    }

    #[test]
    fn assignment_tables() {
        let s = gl_setup(2, 2, 2);
        let table = s.assignment_for(TablePreset::Framed).unwrap();
        assert!(table.get(Sym::T(1)).is_some());
        assert!(table.get(Sym::S(1)).is_some());
        assert!(table.get(Sym::Eij(1, 2)).is_some());
        assert!(table.get(Sym::S0).is_none());
        let tied = s.assignment_for(TablePreset::Tied).unwrap();
        assert!(tied.get(Sym::T(1)).is_none());
        assert!(tied.get(Sym::E(1)).is_some());
        assert!(matches!(
            s.assignment_for(TablePreset::Affine),
            Err(FramedError::NoBoundary)
        ));
    }
}
