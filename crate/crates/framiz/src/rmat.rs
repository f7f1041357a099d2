//! Braiding operators for the vector representations of the quantized
//! enveloping algebras of gl_N, so_m and sp_m (m even), and the operators
//! derived from them: inverse braidings, the tangle idempotent e, the
//! q-antisymmetrizer on three strands, Chevalley-generator actions through
//! the coproduct, and double-braiding boundary operators.
//!
//! Conventions are fixed once and re-checked at construction time:
//!
//! * Hecke normalization `(R - q)(R + q^-1) = 0` on V⊗V for gl_N;
//! * three-eigenvalue normalization `(R - a^-1)(R - q)(R + q^-1) = 0` for
//!   so_m / sp_m, with `a = q^(m-1)` for so_m and `a = -q^(m+1)` for sp_m,
//!   where m is the dimension of the vector representation;
//! * coproduct `Δ(E) = E⊗K + 1⊗E`, `Δ(F) = F⊗1 + K^-1⊗F`, `Δ(K) = K⊗K`.
//!
//! Every constructor re-derives its defining relations as exact matrix
//! identities and fails with [`RmatError::BadNormalization`] on mismatch, so
//! a convention drift cannot silently produce wrong results downstream.

use crate::coeff::Field;
use crate::exactla::{
    from_entries, identity, kron, mat_add, mat_mul, mat_sub, rref, scale, SparseMatrix,
};

#[derive(Debug, thiserror::Error)]
pub enum RmatError {
    /// A defining relation failed as a matrix identity. Signals a convention
    /// bug in this module, never expected on shipped kinds.
    #[error("construction self-test failed: {0}")]
    BadNormalization(&'static str),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(&'static str),
    #[error("unsupported boundary: {0}")]
    UnsupportedBoundary(&'static str),
}

/// A simple factor of the symmetry algebra, tagged by the dimension of its
/// vector representation: `Gl(N)` is gl_N, `So(m)` and `Sp(m)` are so_m and
/// sp_m with m even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Gl(u32),
    So(u32),
    Sp(u32),
}

impl BlockKind {
    /// Dimension of the vector representation.
    pub fn dim(&self) -> u32 {
        match *self {
            BlockKind::Gl(n) | BlockKind::So(n) | BlockKind::Sp(n) => n,
        }
    }

    /// True for the kinds whose braiding satisfies a cubic (so/sp), false
    /// for the quadratic gl kinds.
    pub fn is_bmw(&self) -> bool {
        !matches!(self, BlockKind::Gl(_))
    }

    /// The tangle parameter as a signed power of q: returns
    /// `(exponent, negate)` with `a = (-1)^negate * q^exponent`.
    /// so_m forces `a = q^(m-1)`, sp_m forces `a = -q^(m+1)`; gl has no a.
    pub fn a_monomial(&self) -> Option<(i32, bool)> {
        match *self {
            BlockKind::Gl(_) => None,
            BlockKind::So(m) => Some((m as i32 - 1, false)),
            BlockKind::Sp(m) => Some((m as i32 + 1, true)),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            BlockKind::Gl(n) => format!("gl{n}"),
            BlockKind::So(m) => format!("so{m}"),
            BlockKind::Sp(m) => format!("sp{m}"),
        }
    }

    fn validate(&self) -> Result<(), RmatError> {
        match *self {
            BlockKind::Gl(n) if n >= 1 => Ok(()),
            BlockKind::Gl(_) => Err(RmatError::UnsupportedKind("gl rank must be at least 1")),
            BlockKind::So(m) | BlockKind::Sp(m) if m >= 2 && m % 2 == 0 => Ok(()),
            BlockKind::So(_) => Err(RmatError::UnsupportedKind(
                "so requires an even vector dimension (odd ranks need a square root of q)",
            )),
            BlockKind::Sp(_) => Err(RmatError::UnsupportedKind(
                "sp requires an even vector dimension",
            )),
        }
    }
}

/// The braiding of one block together with everything derived from it.
/// `eigenvalues` are the roots of the defining polynomial of `r`: `[q, -q^-1]`
/// for gl, `[q, -q^-1, a^-1]` for so/sp (the actual spectrum can be a subset,
/// e.g. gl_1).
#[derive(Debug, Clone)]
pub struct RMatrixPack<E> {
    pub kind: BlockKind,
    pub r: SparseMatrix<E>,
    pub r_inv: SparseMatrix<E>,
    /// so/sp only: `e = 1 - (r - r^-1)/(q - q^-1)`, rank one per block pair.
    pub e: Option<SparseMatrix<E>>,
    pub eigenvalues: Vec<E>,
}

/// The quantum integer `[j] = (q^j - q^-j)/(q - q^-1)` as an explicit sum of
/// monomials (no division, exact in every backend).
pub fn q_int<F: Field>(f: &F, j: u32) -> F::Elem {
    let mut acc = f.zero();
    for t in 0..j {
        let exp = j as i32 - 1 - 2 * t as i32;
        acc = f.add(&acc, &f.q_pow(exp));
    }
    acc
}

/// The tangle parameter of a so/sp kind as a field element.
pub fn a_value<F: Field>(f: &F, kind: BlockKind) -> Option<F::Elem> {
    let (exp, negate) = kind.a_monomial()?;
    let m = f.q_pow(exp);
    Some(if negate { f.neg(&m) } else { m })
}

/// Embed an operator on V⊗V at legs (i, i+1) of V^⊗n, legs 1-indexed.
pub fn embed_pair<F: Field>(
    f: &F,
    x: &SparseMatrix<F::Elem>,
    dim_v: u32,
    n: u32,
    i: u32,
) -> SparseMatrix<F::Elem> {
    assert!(i >= 1 && i + 1 <= n, "pair ({i}, {}) outside 1..={n}", i + 1);
    assert_eq!(x.dim, dim_v * dim_v);
    let left = identity(f, dim_v.pow(i - 1));
    let right = identity(f, dim_v.pow(n - i - 1));
    kron(f, &kron(f, &left, x), &right)
}

/// Embed a single-leg operator at leg i of V^⊗n, legs 1-indexed.
pub fn embed_leg<F: Field>(
    f: &F,
    x: &SparseMatrix<F::Elem>,
    dim_v: u32,
    n: u32,
    i: u32,
) -> SparseMatrix<F::Elem> {
    assert!(i >= 1 && i <= n, "leg {i} outside 1..={n}");
    assert_eq!(x.dim, dim_v);
    let left = identity(f, dim_v.pow(i - 1));
    let right = identity(f, dim_v.pow(n - i));
    kron(f, &kron(f, &left, x), &right)
}

/// Build the pack for any supported kind.
pub fn build_pack<F: Field>(f: &F, kind: BlockKind) -> Result<RMatrixPack<F::Elem>, RmatError> {
    kind.validate()?;
    match kind {
        BlockKind::Gl(n) => r_gl(f, n),
        _ => r_bmw(f, kind),
    }
}

/// Hecke-type braiding for the gl_N vector representation: on basis vectors
/// (1-indexed) `R(v_i⊗v_i) = q v_i⊗v_i`, `R(v_i⊗v_j) = v_j⊗v_i` for i < j,
/// `R(v_i⊗v_j) = v_j⊗v_i + (q - q^-1) v_i⊗v_j` for i > j.
pub fn r_gl<F: Field>(f: &F, n_rank: u32) -> Result<RMatrixPack<F::Elem>, RmatError> {
    BlockKind::Gl(n_rank).validate()?;
    let nn = n_rank;
    let delta = f.q_bracket_num(1);
    let mut entries = Vec::new();
    for i in 0..nn {
        for j in 0..nn {
            let col = i * nn + j;
            if i == j {
                entries.push((col, col, f.q_pow(1)));
            } else {
                entries.push((j * nn + i, col, f.one()));
                if i > j {
                    entries.push((col, col, delta.clone()));
                }
            }
        }
    }
    let r = from_entries(f, nn * nn, entries);
    let r_inv = mat_sub(f, &r, &scale(f, &delta, &identity(f, nn * nn)));
    let pack = RMatrixPack {
        kind: BlockKind::Gl(n_rank),
        r,
        r_inv,
        e: None,
        eigenvalues: vec![f.q_pow(1), f.neg(&f.q_pow(-1))],
    };
    self_test(f, &pack)?;
    Ok(pack)
}

/// Three-eigenvalue braiding for the so_m / sp_m vector representation in
/// the distinguished basis v_1, ..., v_m with i' = m+1-i pairing v_i to its
/// dual partner. With E_ij the matrix units, the untwisted operator is
///
/// ```text
/// R = q Σ_i E_ii⊗E_ii + Σ_{i≠j, j≠i'} E_ii⊗E_jj + q^-1 Σ_i E_ii⊗E_{i'i'}
///   + (q - q^-1) Σ_{i>j} E_ij⊗E_ji
///   - (q - q^-1) Σ_{i>j} ε_i ε_j q^(ρ_i - ρ_j) E_ij⊗E_{i'j'}
/// ```
///
/// and the braiding is the flip composed with R. The signs ε and the weights
/// ρ are the standard ones: so_m has ε_i = 1 and ρ = (N-1, ..., 0, 0, ..., 1-N);
/// sp_m has ε_i = ±1 on the two halves and ρ = (N, ..., 1, -1, ..., -N).
pub fn r_bmw<F: Field>(f: &F, kind: BlockKind) -> Result<RMatrixPack<F::Elem>, RmatError> {
    kind.validate()?;
    let m = kind.dim();
    let half = m / 2;
    let symplectic = matches!(kind, BlockKind::Sp(_));
    // 1-indexed sign and weight tables.
    let eps = |i: u32| -> i64 {
        if symplectic && i > half {
            -1
        } else {
            1
        }
    };
    let rho = |i: u32| -> i32 {
        let n = half as i32;
        let i = i as i32;
        if symplectic {
            if i <= n {
                n - i + 1
            } else {
                n - i
            }
        } else if i <= n {
            n - i
        } else {
            n - i + 1
        }
    };
    let dual = |i: u32| m + 1 - i;
    let delta = f.q_bracket_num(1);
    // Column index of v_i⊗v_j, 1-indexed legs, row-major.
    let idx = |i: u32, j: u32| (i - 1) * m + (j - 1);

    let mut entries = Vec::new();
    for i in 1..=m {
        entries.push((idx(i, i), idx(i, i), f.q_pow(1)));
        entries.push((idx(i, dual(i)), idx(i, dual(i)), f.q_pow(-1)));
        for j in 1..=m {
            if j != i && j != dual(i) {
                entries.push((idx(i, j), idx(i, j), f.one()));
            }
            if i > j {
                // (E_ij⊗E_ji)(v_j⊗v_i) = v_i⊗v_j
                entries.push((idx(i, j), idx(j, i), delta.clone()));
                // (E_ij⊗E_{i'j'})(v_j⊗v_j') = v_i⊗v_i'
                let sign = eps(i) * eps(j);
                let coef = f.mul(&f.from_i64(-sign), &f.mul(&delta, &f.q_pow(rho(i) - rho(j))));
                entries.push((idx(i, dual(i)), idx(j, dual(j)), coef));
            }
        }
    }
    let r_untwisted = from_entries(f, m * m, entries);
    let flip = from_entries(
        f,
        m * m,
        (0..m).flat_map(|i| (0..m).map(move |j| (j * m + i, i * m + j, ()))).map(
            |(r, c, _)| (r, c, f.one()),
        ),
    );
    let r = mat_mul(f, &flip, &r_untwisted);

    // a^-1 is the third root of the defining cubic; the inverse braiding
    // follows from the cubic: r^-1 = -a (r^2 - (Σλ) r + (Σ_{i<j} λ_i λ_j)).
    let a = a_value(f, kind).expect("so/sp kind");
    let a_inv = f.inv(&a).expect("a is a monomial");
    let sum1 = f.add(&delta, &a_inv);
    let sum2 = f.sub(&f.mul(&a_inv, &delta), &f.one());
    let id = identity(f, m * m);
    let r2 = mat_mul(f, &r, &r);
    let combo = mat_add(
        f,
        &mat_sub(f, &r2, &scale(f, &sum1, &r)),
        &scale(f, &sum2, &id),
    );
    let r_inv = scale(f, &f.neg(&a), &combo);

    // e = 1 - (r - r^-1)/(q - q^-1)
    let delta_inv = f.inv(&delta).expect("q - q^-1 is invertible");
    let e = mat_sub(f, &id, &scale(f, &delta_inv, &mat_sub(f, &r, &r_inv)));

    let pack = RMatrixPack {
        kind,
        r,
        r_inv,
        e: Some(e),
        eigenvalues: vec![f.q_pow(1), f.neg(&f.q_pow(-1)), a_inv],
    };
    self_test(f, &pack)?;
    Ok(pack)
}

/// Re-check every defining relation of a pack as an exact matrix identity.
pub fn self_test<F: Field>(f: &F, pack: &RMatrixPack<F::Elem>) -> Result<(), RmatError> {
    let dv = pack.kind.dim();
    let dim2 = dv * dv;
    let id = identity(f, dim2);
    if !mat_sub(f, &mat_mul(f, &pack.r, &pack.r_inv), &id).is_zero() {
        return Err(RmatError::BadNormalization("r * r_inv != 1"));
    }
    // Characteristic polynomial: product of (r - λ) over the stored roots.
    let mut char_poly = id.clone();
    for lam in &pack.eigenvalues {
        let factor = mat_sub(f, &pack.r, &scale(f, lam, &id));
        char_poly = mat_mul(f, &char_poly, &factor);
    }
    if !char_poly.is_zero() {
        return Err(RmatError::BadNormalization(
            "defining polynomial does not annihilate r",
        ));
    }
    if dv >= 2 {
        let r1 = embed_pair(f, &pack.r, dv, 3, 1);
        let r2 = embed_pair(f, &pack.r, dv, 3, 2);
        let lhs = mat_mul(f, &mat_mul(f, &r1, &r2), &r1);
        let rhs = mat_mul(f, &mat_mul(f, &r2, &r1), &r2);
        if !mat_sub(f, &lhs, &rhs).is_zero() {
            return Err(RmatError::BadNormalization("braid relation fails"));
        }
    }
    if let Some(e) = &pack.e {
        let a = a_value(f, pack.kind).expect("e implies a so/sp kind");
        let a_inv = f.inv(&a).expect("a is a monomial");
        let delta = f.q_bracket_num(1);
        // e r = a^-1 e
        if !mat_sub(f, &mat_mul(f, e, &pack.r), &scale(f, &a_inv, e)).is_zero() {
            return Err(RmatError::BadNormalization("e * r != a^-1 e"));
        }
        // e^2 = ((a - a^-1)/(q - q^-1) + 1) e
        let x = f.add(
            &f.div(&f.sub(&a, &a_inv), &delta)
                .expect("q - q^-1 is invertible"),
            &f.one(),
        );
        if !mat_sub(f, &mat_mul(f, e, e), &scale(f, &x, e)).is_zero() {
            return Err(RmatError::BadNormalization("e^2 != x e"));
        }
        // Neighbour relations on V^⊗3: e_i r_j^±1 e_i = a^±1 e_i and
        // e_i e_j e_i = e_i for |i - j| = 1.
        for (i, j) in [(1u32, 2u32), (2, 1)] {
            let ei = embed_pair(f, e, dv, 3, i);
            let ej = embed_pair(f, e, dv, 3, j);
            let rj = embed_pair(f, &pack.r, dv, 3, j);
            let rj_inv = embed_pair(f, &pack.r_inv, dv, 3, j);
            let up = mat_mul(f, &mat_mul(f, &ei, &rj), &ei);
            if !mat_sub(f, &up, &scale(f, &a, &ei)).is_zero() {
                return Err(RmatError::BadNormalization("e_i r_j e_i != a e_i"));
            }
            let down = mat_mul(f, &mat_mul(f, &ei, &rj_inv), &ei);
            if !mat_sub(f, &down, &scale(f, &a_inv, &ei)).is_zero() {
                return Err(RmatError::BadNormalization("e_i r_j^-1 e_i != a^-1 e_i"));
            }
            let here = mat_mul(f, &mat_mul(f, &ei, &ej), &ei);
            if !mat_sub(f, &here, &ei).is_zero() {
                return Err(RmatError::BadNormalization("e_i e_j e_i != e_i"));
            }
        }
    }
    Ok(())
}

/// The unnormalized q-antisymmetrizer on strands (i, i+1, i+2) of V^⊗n for a
/// gl pack:
/// `1 - q^-1 s_i - q^-1 s_{i+1} + q^-2 s_i s_{i+1} + q^-2 s_{i+1} s_i - q^-3 s_i s_{i+1} s_i`.
/// Zero exactly when the block dimension is at most 2.
pub fn antisymmetrizer3<F: Field>(
    f: &F,
    pack: &RMatrixPack<F::Elem>,
    n: u32,
    i: u32,
) -> SparseMatrix<F::Elem> {
    assert!(
        matches!(pack.kind, BlockKind::Gl(_)),
        "the q-antisymmetrizer is a Hecke-side operator"
    );
    assert!(n >= 3 && i >= 1 && i + 2 <= n, "strands ({i},..,{}) outside 1..={n}", i + 2);
    let dv = pack.kind.dim();
    let s1 = embed_pair(f, &pack.r, dv, n, i);
    let s2 = embed_pair(f, &pack.r, dv, n, i + 1);
    let s12 = mat_mul(f, &s1, &s2);
    let s21 = mat_mul(f, &s2, &s1);
    let s121 = mat_mul(f, &s12, &s1);
    let qm1 = f.q_pow(-1);
    let qm2 = f.q_pow(-2);
    let qm3 = f.q_pow(-3);
    let mut acc = identity(f, dv.pow(n));
    acc = mat_sub(f, &acc, &scale(f, &qm1, &mat_add(f, &s1, &s2)));
    acc = mat_add(f, &acc, &scale(f, &qm2, &mat_add(f, &s12, &s21)));
    mat_sub(f, &acc, &scale(f, &qm3, &s121))
}

/// Generator matrices of one weight module: raising/lowering operators
/// E_1..E_{rank-1}, F_1..F_{rank-1} and the weight-torus generators
/// K_{ε_1}..K_{ε_rank} with their inverses.
#[derive(Debug, Clone)]
pub struct RepMats<E> {
    pub dim: u32,
    pub rank: u32,
    pub raise: Vec<SparseMatrix<E>>,
    pub lower: Vec<SparseMatrix<E>>,
    pub cartan: Vec<SparseMatrix<E>>,
    pub cartan_inv: Vec<SparseMatrix<E>>,
}

/// Vector representation of gl_N: E_i = e_{i,i+1}, F_i = e_{i+1,i},
/// K_{ε_j} v_k = q^(δ_jk) v_k.
pub fn gl_vector_rep<F: Field>(f: &F, n_rank: u32) -> RepMats<F::Elem> {
    assert!(n_rank >= 1);
    let raise = (0..n_rank - 1)
        .map(|i| from_entries(f, n_rank, [(i, i + 1, f.one())]))
        .collect();
    let lower = (0..n_rank - 1)
        .map(|i| from_entries(f, n_rank, [(i + 1, i, f.one())]))
        .collect();
    let diag = |j: u32, exp: i32| {
        from_entries(
            f,
            n_rank,
            (0..n_rank).map(|k| (k, k, if k == j { f.q_pow(exp) } else { f.one() })),
        )
    };
    let cartan = (0..n_rank).map(|j| diag(j, 1)).collect();
    let cartan_inv = (0..n_rank).map(|j| diag(j, -1)).collect();
    RepMats { dim: n_rank, rank: n_rank, raise, lower, cartan, cartan_inv }
}

/// k-th symmetric power of the gl_2 vector representation, on the weight
/// basis m_0, ..., m_k: E m_j = [j] m_{j-1}, F m_j = [k-j] m_{j+1},
/// K_{ε_1} m_j = q^(k-j) m_j, K_{ε_2} m_j = q^j m_j.
pub fn gl2_sym_rep<F: Field>(f: &F, k: u32) -> RepMats<F::Elem> {
    let dim = k + 1;
    let raise = vec![from_entries(
        f,
        dim,
        (1..=k).map(|j| (j - 1, j, q_int(f, j))),
    )];
    let lower = vec![from_entries(
        f,
        dim,
        (0..k).map(|j| (j + 1, j, q_int(f, k - j))),
    )];
    let diag = |exp: &dyn Fn(u32) -> i32| {
        from_entries(f, dim, (0..dim).map(|j| (j, j, f.q_pow(exp(j)))))
    };
    let cartan = vec![
        diag(&|j| (k - j) as i32),
        diag(&|j| j as i32),
    ];
    let cartan_inv = vec![
        diag(&|j| -((k - j) as i32)),
        diag(&|j| -(j as i32)),
    ];
    RepMats { dim, rank: 2, raise, lower, cartan, cartan_inv }
}

fn kron_chain<F: Field>(f: &F, factors: &[&SparseMatrix<F::Elem>]) -> SparseMatrix<F::Elem> {
    let mut acc = identity(f, 1);
    for x in factors {
        acc = kron(f, &acc, x);
    }
    acc
}

/// Extend generator matrices across a list of tensor slots by the coproduct:
/// raising operators pick up the root torus element K_i = K_{ε_i} K_{ε_{i+1}}^-1
/// on later slots, lowering operators pick up K_i^-1 on earlier slots, torus
/// generators act diagonally on every slot.
pub fn coproduct_action<F: Field>(f: &F, slots: &[&RepMats<F::Elem>]) -> RepMats<F::Elem> {
    assert!(!slots.is_empty());
    let rank = slots[0].rank;
    assert!(slots.iter().all(|s| s.rank == rank), "mixed-rank tensor slots");
    let dim: u32 = slots.iter().map(|s| s.dim).product();
    let ids: Vec<SparseMatrix<F::Elem>> = slots.iter().map(|s| identity(f, s.dim)).collect();

    let mut raise = Vec::new();
    let mut lower = Vec::new();
    for i in 0..rank.saturating_sub(1) as usize {
        let root: Vec<SparseMatrix<F::Elem>> = slots
            .iter()
            .map(|s| mat_mul(f, &s.cartan[i], &s.cartan_inv[i + 1]))
            .collect();
        let root_inv: Vec<SparseMatrix<F::Elem>> = slots
            .iter()
            .map(|s| mat_mul(f, &s.cartan_inv[i], &s.cartan[i + 1]))
            .collect();
        let mut e_tot = SparseMatrix::zero(dim);
        let mut f_tot = SparseMatrix::zero(dim);
        for s in 0..slots.len() {
            let e_factors: Vec<&SparseMatrix<F::Elem>> = (0..slots.len())
                .map(|t| {
                    if t < s {
                        &ids[t]
                    } else if t == s {
                        &slots[s].raise[i]
                    } else {
                        &root[t]
                    }
                })
                .collect();
            e_tot = mat_add(f, &e_tot, &kron_chain(f, &e_factors));
            let f_factors: Vec<&SparseMatrix<F::Elem>> = (0..slots.len())
                .map(|t| {
                    if t < s {
                        &root_inv[t]
                    } else if t == s {
                        &slots[s].lower[i]
                    } else {
                        &ids[t]
                    }
                })
                .collect();
            f_tot = mat_add(f, &f_tot, &kron_chain(f, &f_factors));
        }
        raise.push(e_tot);
        lower.push(f_tot);
    }
    let cartan: Vec<SparseMatrix<F::Elem>> = (0..rank as usize)
        .map(|j| {
            let factors: Vec<&SparseMatrix<F::Elem>> =
                slots.iter().map(|s| &s.cartan[j]).collect();
            kron_chain(f, &factors)
        })
        .collect();
    let cartan_inv: Vec<SparseMatrix<F::Elem>> = (0..rank as usize)
        .map(|j| {
            let factors: Vec<&SparseMatrix<F::Elem>> =
                slots.iter().map(|s| &s.cartan_inv[j]).collect();
            kron_chain(f, &factors)
        })
        .collect();
    RepMats { dim, rank, raise, lower, cartan, cartan_inv }
}

/// Flatten a generator-matrix bundle into one list: root torus elements
/// K_i^±1 = (K_{ε_i} K_{ε_{i+1}}^-1)^±1 first, then raising and lowering
/// operators, then the weight torus generators K_{ε_j}^±1.
pub fn flatten_generators<F: Field>(
    f: &F,
    tot: &RepMats<F::Elem>,
) -> Vec<SparseMatrix<F::Elem>> {
    let mut out = Vec::new();
    for i in 0..tot.raise.len() {
        out.push(mat_mul(f, &tot.cartan[i], &tot.cartan_inv[i + 1]));
        out.push(mat_mul(f, &tot.cartan_inv[i], &tot.cartan[i + 1]));
    }
    out.extend(tot.raise.iter().cloned());
    out.extend(tot.lower.iter().cloned());
    out.extend(tot.cartan.iter().cloned());
    out.extend(tot.cartan_inv.iter().cloned());
    out
}

/// All Chevalley-generator matrices on V^⊗n for a gl kind, flattened:
/// raising and lowering operators, the root torus elements K_i^±1 and the
/// weight torus generators K_{ε_j}^±1. so/sp kinds are not provided; their
/// correctness rests on the relation suite instead.
pub fn chevalley_action<F: Field>(
    f: &F,
    kind: BlockKind,
    n: u32,
) -> Result<Vec<SparseMatrix<F::Elem>>, RmatError> {
    let BlockKind::Gl(rank) = kind else {
        return Err(RmatError::UnsupportedKind(
            "Chevalley matrices are provided for gl kinds only",
        ));
    };
    assert!(n >= 1);
    let rep = gl_vector_rep(f, rank);
    let slots: Vec<&RepMats<F::Elem>> = (0..n).map(|_| &rep).collect();
    let tot = coproduct_action(f, &slots);
    Ok(flatten_generators(f, &tot))
}

/// Boundary module choices for the double braiding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// M = V, any kind: the double braiding is the squared braiding.
    Vector,
    /// M = Sym^k of the gl_2 vector representation (gl_2 blocks only).
    Sym(u32),
}

impl Boundary {
    pub fn label(&self) -> String {
        match *self {
            Boundary::Vector => "vector".into(),
            Boundary::Sym(k) => format!("sym{k}"),
        }
    }
}

/// Double-braiding operator on M⊗V along with its spectral data:
/// `eigenvalues` lists the distinct scalars on the irreducible summands of
/// M⊗V, so its length is the summand count.
#[derive(Debug, Clone)]
pub struct BoundaryPack<E> {
    pub boundary: Boundary,
    pub m_dim: u32,
    pub k_op: SparseMatrix<E>,
    pub eigenvalues: Vec<E>,
    /// Boundary module generator matrices (gl kinds only), for centralizer
    /// certification on M⊗V^⊗n.
    pub rep: Option<RepMats<E>>,
}

/// Construct the double braiding K on M⊗V and verify its defining
/// properties: the product of (K - λ) over the stored eigenvalues vanishes,
/// and K R K R = R K R K on M⊗V⊗V.
pub fn double_braiding<F: Field>(
    f: &F,
    pack: &RMatrixPack<F::Elem>,
    boundary: Boundary,
) -> Result<BoundaryPack<F::Elem>, RmatError> {
    let dv = pack.kind.dim();
    let (m_dim, k_op, eigenvalues, rep) = match boundary {
        Boundary::Vector => {
            let k_op = mat_mul(f, &pack.r, &pack.r);
            // Squares of the braiding eigenvalues, deduplicated for gl_1.
            let mut eig: Vec<F::Elem> =
                pack.eigenvalues.iter().map(|l| f.mul(l, l)).collect();
            eig.dedup_by(|a, b| a == b);
            let rep = match pack.kind {
                BlockKind::Gl(rank) => Some(gl_vector_rep(f, rank)),
                _ => None,
            };
            (dv, k_op, eig, rep)
        }
        Boundary::Sym(k) => {
            if pack.kind != BlockKind::Gl(2) {
                return Err(RmatError::UnsupportedBoundary(
                    "symmetric-power boundaries are provided for gl_2 blocks only",
                ));
            }
            let (k_op, eig) = sym_double_braiding(f, k);
            (k + 1, k_op, eig, Some(gl2_sym_rep(f, k)))
        }
    };

    let dim_mv = m_dim * dv;
    let id = identity(f, dim_mv);
    let mut min_poly = id.clone();
    for lam in &eigenvalues {
        min_poly = mat_mul(f, &min_poly, &mat_sub(f, &k_op, &scale(f, lam, &id)));
    }
    if !min_poly.is_zero() {
        return Err(RmatError::BadNormalization(
            "double braiding not annihilated by its eigenvalue product",
        ));
    }
    // Four-term relation on M⊗V⊗V.
    let kx = kron(f, &k_op, &identity(f, dv));
    let rx = kron(f, &identity(f, m_dim), &pack.r);
    let kr = mat_mul(f, &kx, &rx);
    let lhs = mat_mul(f, &kr, &kr);
    let rk = mat_mul(f, &rx, &kx);
    let rhs = mat_mul(f, &rk, &rk);
    if !mat_sub(f, &lhs, &rhs).is_zero() {
        return Err(RmatError::BadNormalization(
            "double braiding fails K R K R = R K R K",
        ));
    }
    Ok(BoundaryPack { boundary, m_dim, k_op, eigenvalues, rep })
}

/// Double braiding on Sym^k ⊗ V for gl_2, via the truncated quasitriangular
/// element K̃ (1 + (q - q^-1) E⊗F): the sum stops at the first power because
/// the raising operator squares to zero on the vector representation in
/// whichever slot carries it. Eigenvalues are q^(2k) on the top summand and
/// q^-2 on the other one (k >= 1).
fn sym_double_braiding<F: Field>(f: &F, k: u32) -> (SparseMatrix<F::Elem>, Vec<F::Elem>) {
    let md = k + 1;
    let dim = 2 * md;
    let delta = f.q_bracket_num(1);
    let sym = gl2_sym_rep::<F>(f, k);
    let vec = gl_vector_rep::<F>(f, 2);

    // Cartan factor on X⊗Y: q^((wt x, wt y)) on weight vectors; gl_2 weights
    // pair by (ε_i, ε_j) = δ_ij. Weight of m_j is (k-j, j), of v_i is e_i.
    let ktilde_mv = from_entries(
        f,
        dim,
        (0..md).flat_map(|j| {
            let e0 = (k - j) as i32;
            let e1 = j as i32;
            [(j * 2, j * 2, f.q_pow(e0)), (j * 2 + 1, j * 2 + 1, f.q_pow(e1))]
        }),
    );
    let ktilde_vm = from_entries(
        f,
        dim,
        (0..md).flat_map(|j| {
            let e0 = (k - j) as i32;
            let e1 = j as i32;
            [(j, j, f.q_pow(e0)), (md + j, md + j, f.q_pow(e1))]
        }),
    );
    let id = identity(f, dim);
    let r_mv = mat_mul(
        f,
        &ktilde_mv,
        &mat_add(f, &id, &scale(f, &delta, &kron(f, &sym.raise[0], &vec.lower[0]))),
    );
    let r_vm = mat_mul(
        f,
        &ktilde_vm,
        &mat_add(f, &id, &scale(f, &delta, &kron(f, &vec.raise[0], &sym.lower[0]))),
    );
    // Flips between the two orderings of the same underlying space.
    let p_mv = from_entries(
        f,
        dim,
        (0..md).flat_map(|j| (0..2u32).map(move |i| (i * md + j, j * 2 + i, ()))).map(
            |(r, c, _)| (r, c, f.one()),
        ),
    );
    let p_vm = from_entries(
        f,
        dim,
        (0..md).flat_map(|j| (0..2u32).map(move |i| (j * 2 + i, i * md + j, ()))).map(
            |(r, c, _)| (r, c, f.one()),
        ),
    );
    let k_op = mat_mul(
        f,
        &mat_mul(f, &p_vm, &r_vm),
        &mat_mul(f, &p_mv, &r_mv),
    );
    let eigenvalues = if k == 0 {
        vec![f.one()]
    } else {
        vec![f.q_pow(2 * k as i32), f.q_pow(-2)]
    };
    (k_op, eigenvalues)
}

/// Rank of a sparse matrix via a fully reduced echelon basis of its rows.
pub fn matrix_rank<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> usize {
    rref(f, m.rows.iter().cloned()).rank()
}
