//! The theorem-checking engine. A `Preset` names one of the algebras
//! realized on V^⊗n (or M⊗V^⊗n): it knows when it applies to a given block
//! configuration, which defining relations to test, and which generator
//! images span its realization. Relations are formal sums of words in the
//! generator symbols; checking a relation means evaluating it to a matrix
//! and testing exact zero. Dimension scenarios close the generator images
//! under multiplication and compare against the block-sum and fixed-point
//! counting formulas.

use num_traits::ToPrimitive;

use crate::coeff::{CoeffError, Field};
use crate::combinat::{compositions, multinomial, CombinatError};
use crate::exactla::{
    block_split, flatten, identity, kron, mat_mul, mat_sub, scale, subalgebra_closure,
    EchelonBasis, LinAlgError, SparseMatrix, DEFAULT_RANK_CAP,
};
use crate::framed::{FramedError, FramedSetup, GeneratorAssignment, Sym, TablePreset};
use crate::rmat::{a_value, embed_pair, BlockKind, Boundary, RMatrixPack};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("preset {preset} does not apply here: {why}")]
    InapplicablePreset { preset: &'static str, why: String },
    #[error("symbol {0} is not present in the assignment")]
    UnresolvedSymbol(String),
    #[error(transparent)]
    Framed(#[from] FramedError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A formal sum Σ c·w of words in generator symbols. A relation is stated
/// as "this sum evaluates to zero".
#[derive(Debug, Clone)]
pub struct RelationWord<E> {
    /// Unique instance name, e.g. "rel-FTL[i=1]".
    pub name: String,
    /// Family tag shared by all index shifts, e.g. "rel-FTL"; this is the
    /// vocabulary of `--expect-fail`.
    pub family: &'static str,
    pub terms: Vec<(E, Vec<Sym>)>,
}

/// Evaluate a formal sum of generator words to its exact matrix.
pub fn eval_word<F: Field>(
    f: &F,
    word: &RelationWord<F::Elem>,
    table: &GeneratorAssignment<F::Elem>,
) -> Result<SparseMatrix<F::Elem>, VerifyError> {
    let mut acc = SparseMatrix::zero(table.dim);
    for (c, syms) in &word.terms {
        let mut prod = identity(f, table.dim);
        for s in syms {
            let m = table
                .get(*s)
                .ok_or_else(|| VerifyError::UnresolvedSymbol(s.to_string()))?;
            prod = mat_mul(f, &prod, m);
        }
        acc = crate::exactla::mat_add(f, &acc, &scale(f, c, &prod));
    }
    Ok(acc)
}

/// The algebra presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Framed braid group image: group relations plus the framized
    /// characteristic equation.
    Framed,
    /// Yokonuma-Hecke: framed plus the quadratic relation.
    Yh,
    /// Framized Temperley-Lieb: Yokonuma-Hecke plus rel-FTL.
    Ftl,
    /// Complex Temperley-Lieb: Yokonuma-Hecke plus rel-CTL.
    Ctl,
    /// Birman-Murakami-Wenzl, d = 1 only.
    Bmw,
    /// Framized BMW.
    Fbmw,
    /// Tied braid algebra.
    Tied,
    /// Hecke algebra of braids and ties.
    BtHecke,
    /// Temperley-Lieb algebra of braids and ties.
    BtTl,
    /// BMW algebra of braids and ties.
    BtBmw,
    /// Framed affine braid group image (boundary module attached).
    Affine,
    /// Cyclotomic quotient: affine plus the minimal polynomial of σ₀.
    Cyclotomic,
}

impl Preset {
    pub const ALL: [Preset; 12] = [
        Preset::Framed,
        Preset::Yh,
        Preset::Ftl,
        Preset::Ctl,
        Preset::Bmw,
        Preset::Fbmw,
        Preset::Tied,
        Preset::BtHecke,
        Preset::BtTl,
        Preset::BtBmw,
        Preset::Affine,
        Preset::Cyclotomic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Framed => "framed",
            Preset::Yh => "yh",
            Preset::Ftl => "ftl",
            Preset::Ctl => "ctl",
            Preset::Bmw => "bmw",
            Preset::Fbmw => "fbmw",
            Preset::Tied => "tied",
            Preset::BtHecke => "bt-hecke",
            Preset::BtTl => "bt-tl",
            Preset::BtBmw => "bt-bmw",
            Preset::Affine => "affine",
            Preset::Cyclotomic => "cyclotomic",
        }
    }

    pub fn parse(s: &str) -> Option<Preset> {
        Preset::ALL.iter().copied().find(|p| p.name() == s)
    }

    /// Which symbol table the preset's relations and generators live in.
    pub fn table(self) -> TablePreset {
        match self {
            Preset::Tied | Preset::BtHecke | Preset::BtTl | Preset::BtBmw => TablePreset::Tied,
            Preset::Affine | Preset::Cyclotomic => TablePreset::Affine,
            _ => TablePreset::Framed,
        }
    }

    /// Whether the preset can be evaluated on this setup at all.
    /// Applicability is not validity: FTL applies to gl(3) blocks and its
    /// rel-FTL is then expected to fail.
    pub fn applicable<F: Field>(self, s: &FramedSetup<F>) -> Result<(), VerifyError> {
        let fail = |why: String| VerifyError::InapplicablePreset { preset: self.name(), why };
        let all_gl = s.kinds.iter().all(|k| matches!(k, BlockKind::Gl(_)));
        let all_bmw = s.kinds.iter().all(|k| k.is_bmw());
        let identical = s.kinds.iter().all(|&k| k == s.kinds[0]);
        match self {
            Preset::Framed => Ok(()),
            Preset::Yh | Preset::Ftl | Preset::Ctl => {
                if all_gl {
                    Ok(())
                } else {
                    Err(fail("requires gl blocks".into()))
                }
            }
            Preset::Bmw => {
                if s.d() != 1 {
                    Err(fail(format!("requires d = 1, got d = {}", s.d())))
                } else if !all_bmw {
                    Err(fail("requires an orthogonal or symplectic block".into()))
                } else {
                    Ok(())
                }
            }
            Preset::Fbmw => {
                if !all_bmw {
                    Err(fail("requires orthogonal or symplectic blocks".into()))
                } else if s.kinds.iter().any(|k| k.a_monomial() != s.kinds[0].a_monomial()) {
                    Err(fail("blocks disagree on the loop parameter".into()))
                } else {
                    Ok(())
                }
            }
            Preset::Tied => {
                if identical {
                    Ok(())
                } else {
                    Err(fail("requires identical blocks".into()))
                }
            }
            Preset::BtHecke | Preset::BtTl => {
                if identical && all_gl {
                    Ok(())
                } else {
                    Err(fail("requires identical gl blocks".into()))
                }
            }
            Preset::BtBmw => {
                if identical && all_bmw {
                    Ok(())
                } else {
                    Err(fail("requires identical orthogonal or symplectic blocks".into()))
                }
            }
            Preset::Affine => {
                if s.boundary.is_none() {
                    Err(fail("requires a boundary module".into()))
                } else if s.n == 0 {
                    Err(fail("requires at least one leg".into()))
                } else {
                    Ok(())
                }
            }
            Preset::Cyclotomic => {
                if s.boundary.is_none() {
                    Err(fail("requires a boundary module".into()))
                } else if s.n == 0 {
                    Err(fail("requires at least one leg".into()))
                } else if !s.kinds.iter().all(|&k| k == BlockKind::Gl(2)) {
                    Err(fail("minimal-polynomial oracle is provided for gl2 blocks".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The preset's relation inventory on this setup, coefficients already
    /// materialized in the setup's field.
    pub fn relations<F: Field>(
        self,
        s: &FramedSetup<F>,
    ) -> Result<Vec<RelationWord<F::Elem>>, VerifyError> {
        self.applicable(s)?;
        let mut out = Vec::new();
        match self {
            Preset::Framed => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_chareq(s, &mut out);
            }
            Preset::Yh => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_quadratic(s, &mut out, false);
            }
            Preset::Ftl => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_quadratic(s, &mut out, false);
                push_ftl(s, &mut out);
            }
            Preset::Ctl => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_quadratic(s, &mut out, false);
                push_ctl(s, &mut out);
            }
            Preset::Bmw => {
                push_braid_relations(s, &mut out);
                push_bmw(s, &mut out)?;
            }
            Preset::Fbmw => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_fbmw(s, &mut out)?;
            }
            Preset::Tied => {
                push_braid_relations(s, &mut out);
                push_tied(s, &mut out);
            }
            Preset::BtHecke => {
                push_braid_relations(s, &mut out);
                push_tied(s, &mut out);
                push_quadratic(s, &mut out, true);
            }
            Preset::BtTl => {
                push_braid_relations(s, &mut out);
                push_tied(s, &mut out);
                push_quadratic(s, &mut out, true);
                push_ftl(s, &mut out);
            }
            Preset::BtBmw => {
                push_braid_relations(s, &mut out);
                push_tied(s, &mut out);
                push_bt_bmw(s, &mut out)?;
            }
            Preset::Affine => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_affine(s, &mut out);
            }
            Preset::Cyclotomic => {
                push_t_relations(s, &mut out);
                push_braid_relations(s, &mut out);
                push_affine(s, &mut out);
                push_cyclotomic(s, &mut out);
            }
        }
        Ok(out)
    }

    /// Generator images whose closure realizes the preset's algebra.
    pub fn closure_generators<F: Field>(
        self,
        s: &FramedSetup<F>,
    ) -> Result<Vec<SparseMatrix<F::Elem>>, VerifyError> {
        self.applicable(s)?;
        let mut gens = Vec::new();
        match self {
            Preset::Bmw => {
                for i in 1..s.n {
                    gens.push(s.sigma(i)?);
                }
            }
            Preset::Tied | Preset::BtHecke | Preset::BtTl | Preset::BtBmw => {
                for i in 1..s.n {
                    gens.push(s.sigma(i)?);
                    gens.push(s.sigma_inv(i)?);
                    gens.push(s.epsilon(i, i + 1)?);
                }
            }
            Preset::Affine | Preset::Cyclotomic => {
                for i in 1..=s.n {
                    gens.push(s.with_boundary_ambient(&s.tau(i)?)?);
                }
                for i in 1..s.n {
                    gens.push(s.with_boundary_ambient(&s.sigma(i)?)?);
                }
                gens.push(s.sigma0()?);
            }
            _ => {
                for i in 1..=s.n {
                    gens.push(s.tau(i)?);
                }
                for i in 1..s.n {
                    gens.push(s.sigma(i)?);
                }
            }
        }
        Ok(gens)
    }
}

/// Per-relation check outcome.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub name: String,
    pub family: String,
    pub holds: bool,
}

/// Evaluate every relation of the preset on the setup.
pub fn check_relations<F: Field>(
    s: &FramedSetup<F>,
    preset: Preset,
) -> Result<Vec<RelationReport>, VerifyError> {
    let words = preset.relations(s)?;
    let table = s.assignment_for(preset.table())?;
    words
        .iter()
        .map(|w| {
            let m = eval_word(&s.f, w, &table)?;
            Ok(RelationReport {
                name: w.name.clone(),
                family: w.family.to_string(),
                holds: m.is_zero(),
            })
        })
        .collect()
}

/// Dimension of the algebra spanned by the preset's generator images.
pub fn image_dimension<F: Field>(
    s: &FramedSetup<F>,
    preset: Preset,
) -> Result<usize, VerifyError> {
    let gens = preset.closure_generators(s)?;
    let dim = match preset {
        Preset::Affine | Preset::Cyclotomic => {
            s.boundary.as_ref().map(|b| b.dim_m).unwrap_or(1) * s.ambient
        }
        _ => s.ambient,
    };
    Ok(subalgebra_closure(&s.f, dim, &gens, true, DEFAULT_RANK_CAP)?.dim)
}

/// One label-content block of the framed image.
#[derive(Debug, Clone)]
pub struct BlockIsoRow {
    pub nu: Vec<u32>,
    pub found: usize,
    pub expected: usize,
}

/// Outcome of cutting the framed image along the content projectors π_ν.
#[derive(Debug, Clone)]
pub struct BlockIsoReport {
    pub rows: Vec<BlockIsoRow>,
    /// Total dimension found in the off-diagonal cuts π_ν · A · π_μ, ν ≠ μ.
    pub residue: usize,
    pub closure_dim: usize,
}

impl BlockIsoReport {
    pub fn holds(&self) -> bool {
        self.residue == 0
            && self.rows.iter().all(|r| r.found == r.expected)
            && self.closure_dim == self.rows.iter().map(|r| r.found).sum::<usize>()
    }
}

fn big_to_usize(b: num_bigint::BigUint) -> usize {
    b.to_usize().expect("block dimension fits a machine word")
}

/// Closure dimension of the single-block braid image on V_b^⊗k.
fn single_block_braid_dim<F: Field>(
    f: &F,
    pack: &RMatrixPack<F::Elem>,
    k: u32,
) -> Result<usize, VerifyError> {
    if k <= 1 {
        return Ok(1);
    }
    let dv = pack.kind.dim();
    let ambient = dv
        .checked_pow(k)
        .ok_or(FramedError::AmbientTooLarge { dim: dv, n: k })?;
    let gens: Vec<_> = (1..k).map(|i| embed_pair(f, &pack.r, dv, k, i)).collect();
    Ok(subalgebra_closure(f, ambient, &gens, true, DEFAULT_RANK_CAP)?.dim)
}

/// Cut the framed image along {π_ν} and compare each diagonal block with
/// C(n,ν)² · Π_b d_b(ν_b), the d_b's being single-block braid closure
/// dimensions. The off-diagonal residue must be zero.
pub fn verify_block_iso<F: Field>(s: &FramedSetup<F>) -> Result<BlockIsoReport, VerifyError> {
    let f = &s.f;
    let gens = Preset::Framed.closure_generators(s)?;
    let clo = subalgebra_closure(f, s.ambient, &gens, true, DEFAULT_RANK_CAP)?;
    let nus = compositions(s.n, s.d());
    let projs: Vec<_> = nus
        .iter()
        .map(|nu| s.proj_nu(nu))
        .collect::<Result<_, _>>()?;
    let split = block_split(f, s.ambient, &clo.basis, &projs)?;
    // d_b(k) per block, memoized over k = 0..n.
    let mut dims: Vec<Vec<usize>> = Vec::new();
    for pack in &s.packs {
        let per_k: Vec<usize> = (0..=s.n)
            .map(|k| single_block_braid_dim(f, pack, k))
            .collect::<Result<_, _>>()?;
        dims.push(per_k);
    }
    let mut rows = Vec::new();
    for (idx, nu) in nus.iter().enumerate() {
        let mult = big_to_usize(multinomial(s.n, nu)?);
        let inner: usize = nu
            .iter()
            .enumerate()
            .map(|(b, &k)| dims[b][k as usize])
            .product();
        rows.push(BlockIsoRow {
            nu: nu.clone(),
            found: split.pair_dims[idx][idx],
            expected: mult * mult * inner,
        });
    }
    Ok(BlockIsoReport { rows, residue: split.residue, closure_dim: clo.dim })
}

/// Monic minimal polynomial of `m`: returns coefficients c_0..c_k with
/// c_k = 1 and Σ c_j m^j = 0. Found as the first linear dependence among
/// the powers of `m`, tracked through an augmented echelon basis.
pub fn min_poly<F: Field>(
    f: &F,
    m: &SparseMatrix<F::Elem>,
) -> Result<Vec<F::Elem>, VerifyError> {
    let dim = m.dim;
    let tail = dim
        .checked_mul(dim)
        .expect("flattened index fits u32");
    let mut basis: EchelonBasis<F::Elem> = EchelonBasis::new();
    let mut power = identity(f, dim);
    for k in 0..=dim {
        let mut v = flatten(&power);
        v.cols.push(tail + k);
        v.vals.push(f.one());
        let r = basis.reduce(f, v);
        if r.cols.iter().all(|&c| c >= tail) {
            // Matrix part vanished: the tail is the dependence Σ γ_j m^j = 0.
            let lead = r
                .cols
                .iter()
                .position(|&c| c == tail + k)
                .expect("the new power participates in its own dependence");
            let unit = f.inv(&r.vals[lead])?;
            let mut coeffs = vec![f.zero(); k as usize + 1];
            for (c, val) in r.iter() {
                coeffs[(c - tail) as usize] = f.mul(&unit, val);
            }
            return Ok(coeffs);
        }
        basis.insert(f, r);
        power = mat_mul(f, &power, m);
    }
    unreachable!("every {dim}x{dim} matrix satisfies a polynomial of degree at most {dim}")
}

/// Outcome of the cyclotomic scenario.
#[derive(Debug, Clone)]
pub struct CyclotomicReport {
    pub relations: Vec<RelationReport>,
    /// Degree of the minimal polynomial of σ₀ on M⊗V.
    pub minpoly_degree: usize,
    /// Number of irreducible summands of M_b⊗V_b (gl2 Clebsch-Gordan).
    pub expected_components: usize,
    /// Whether Π_j(σ₀ − λ_j) = 0 on all of M⊗V^⊗n.
    pub annihilates: bool,
}

impl CyclotomicReport {
    pub fn holds(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
            && self.minpoly_degree == self.expected_components
            && self.annihilates
    }
}

fn boundary_eigenvalues<F: Field>(s: &FramedSetup<F>) -> Result<Vec<F::Elem>, VerifyError> {
    let bd = s.boundary.as_ref().ok_or(FramedError::NoBoundary)?;
    let mut lams: Vec<F::Elem> = Vec::new();
    for p in &bd.packs {
        for lam in &p.eigenvalues {
            if !lams.contains(lam) {
                lams.push(lam.clone());
            }
        }
    }
    Ok(lams)
}

/// Check the affine relation suite, the minimal polynomial degree of σ₀
/// against the Clebsch-Gordan component count, and the annihilation of the
/// cyclotomic polynomial on the whole space.
pub fn cyclotomic_check<F: Field>(s: &FramedSetup<F>) -> Result<CyclotomicReport, VerifyError> {
    Preset::Cyclotomic.applicable(s)?;
    let f = &s.f;
    let relations = check_relations(s, Preset::Affine)?;
    let mp = min_poly(f, s.sigma0_core()?)?;
    let bd = s.boundary.as_ref().expect("applicability guarantees a boundary");
    // Sym^k ⊗ V splits as Sym^(k+1) plus, for k >= 1, a second summand.
    let expected_components = match bd.shape {
        Boundary::Sym(0) => 1,
        _ => 2,
    };
    let lams = boundary_eigenvalues(s)?;
    let s0 = s.sigma0()?;
    let mut prod = identity(f, s0.dim);
    for lam in &lams {
        let shifted = mat_sub(f, &s0, &scale(f, lam, &identity(f, s0.dim)));
        prod = mat_mul(f, &prod, &shifted);
    }
    Ok(CyclotomicReport {
        relations,
        minpoly_degree: mp.len() - 1,
        expected_components,
        annihilates: prod.is_zero(),
    })
}

/// Outcome of the affine dimension scenario.
#[derive(Debug, Clone)]
pub struct AffineDimReport {
    pub closure: usize,
    pub formula: usize,
    /// c_b(k) for each block b and k = 0..n.
    pub per_block: Vec<Vec<usize>>,
}

/// Closure dimension of {τ_i, σ_i, σ₀} on M⊗V^⊗n, compared against
/// Σ_ν C(n,ν)² · Π_b c_b(ν_b), the c_b's being single-block affine closure
/// dimensions on M_b⊗V_b^⊗k.
pub fn affine_block_dim<F: Field>(s: &FramedSetup<F>) -> Result<AffineDimReport, VerifyError> {
    Preset::Affine.applicable(s)?;
    let f = &s.f;
    let closure = image_dimension(s, Preset::Affine)?;
    let bd = s.boundary.as_ref().expect("applicability guarantees a boundary");
    let mut per_block: Vec<Vec<usize>> = Vec::new();
    for (b, pack) in s.packs.iter().enumerate() {
        let bp = &bd.packs[b];
        let dv = pack.kind.dim();
        let mut cs = vec![1usize];
        for k in 1..=s.n {
            let legs = dv
                .checked_pow(k)
                .ok_or(FramedError::AmbientTooLarge { dim: dv, n: k })?;
            let rest = identity(f, legs / dv);
            let mut gens = vec![kron(f, &bp.k_op, &rest)];
            let id_m = identity(f, bp.m_dim);
            for i in 1..k {
                gens.push(kron(f, &id_m, &embed_pair(f, &pack.r, dv, k, i)));
            }
            cs.push(subalgebra_closure(f, bp.m_dim * legs, &gens, true, DEFAULT_RANK_CAP)?.dim);
        }
        per_block.push(cs);
    }
    let mut formula = 0usize;
    for nu in compositions(s.n, s.d()) {
        let mult = big_to_usize(multinomial(s.n, &nu)?);
        let inner: usize = nu
            .iter()
            .enumerate()
            .map(|(b, &k)| per_block[b][k as usize])
            .product();
        formula += mult * mult * inner;
    }
    Ok(AffineDimReport { closure, formula, per_block })
}

// ---- relation builders ----

fn word<E>(name: String, family: &'static str, terms: Vec<(E, Vec<Sym>)>) -> RelationWord<E> {
    RelationWord { name, family, terms }
}

fn pow(sym: Sym, k: usize) -> Vec<Sym> {
    vec![sym; k]
}

/// Π_t (x − roots_t) as coefficients c_0..c_k of Σ c_j x^j.
fn poly_from_roots<F: Field>(f: &F, roots: &[F::Elem]) -> Vec<F::Elem> {
    let mut c = vec![f.one()];
    for r in roots {
        let mut next = vec![f.zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = f.add(&next[k + 1], ck);
            next[k] = f.sub(&next[k], &f.mul(r, ck));
        }
        c = next;
    }
    c
}

/// t_i^d = 1, t-commutation, and the sliding rule t_i s_j = s_j t_{s_j(i)}.
fn push_t_relations<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    let n = s.n;
    let d = s.d() as usize;
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..=n {
        out.push(word(
            format!("t-order[i={i}]"),
            "t-order",
            vec![(one.clone(), pow(Sym::T(i), d)), (neg.clone(), vec![])],
        ));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(word(
                format!("t-comm[i={i},j={j}]"),
                "t-comm",
                vec![
                    (one.clone(), vec![Sym::T(i), Sym::T(j)]),
                    (neg.clone(), vec![Sym::T(j), Sym::T(i)]),
                ],
            ));
        }
    }
    for j in 1..n {
        for i in 1..=n {
            let image = if i == j {
                j + 1
            } else if i == j + 1 {
                j
            } else {
                i
            };
            out.push(word(
                format!("ts-slide[i={i},j={j}]"),
                "ts-slide",
                vec![
                    (one.clone(), vec![Sym::T(i), Sym::S(j)]),
                    (neg.clone(), vec![Sym::S(j), Sym::T(image)]),
                ],
            ));
        }
    }
}

/// Braid, far commutation, and invertibility of the crossings.
fn push_braid_relations<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    let n = s.n;
    let one = f.one();
    let neg = f.from_i64(-1);
    if n >= 3 {
        for i in 1..=n - 2 {
            out.push(word(
                format!("braid[i={i}]"),
                "braid",
                vec![
                    (one.clone(), vec![Sym::S(i), Sym::S(i + 1), Sym::S(i)]),
                    (neg.clone(), vec![Sym::S(i + 1), Sym::S(i), Sym::S(i + 1)]),
                ],
            ));
        }
    }
    for i in 1..n {
        for j in (i + 2)..n {
            out.push(word(
                format!("far-comm[i={i},j={j}]"),
                "far-comm",
                vec![
                    (one.clone(), vec![Sym::S(i), Sym::S(j)]),
                    (neg.clone(), vec![Sym::S(j), Sym::S(i)]),
                ],
            ));
        }
    }
    for i in 1..n {
        out.push(word(
            format!("inverse[i={i}]"),
            "inverse",
            vec![
                (one.clone(), vec![Sym::S(i), Sym::SInv(i)]),
                (neg.clone(), vec![]),
            ],
        ));
    }
}

/// ε_i Π_t (σ_i − λ_t) = 0 over the deduplicated union of block eigenvalues,
/// and (1 − ε_i)(σ_i² − 1) = 0 on the mixed part.
fn push_chareq<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    let mut lams: Vec<F::Elem> = Vec::new();
    for p in &s.packs {
        for lam in &p.eigenvalues {
            if !lams.contains(lam) {
                lams.push(lam.clone());
            }
        }
    }
    let coeffs = poly_from_roots(f, &lams);
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..s.n {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mut w = vec![Sym::E(i)];
                w.extend(pow(Sym::S(i), k));
                (c.clone(), w)
            })
            .collect();
        out.push(word(format!("chareq[i={i}]"), "chareq", terms));
        out.push(word(
            format!("chareq-mixed[i={i}]"),
            "chareq-mixed",
            vec![
                (one.clone(), vec![Sym::S(i), Sym::S(i)]),
                (neg.clone(), vec![]),
                (neg.clone(), vec![Sym::E(i), Sym::S(i), Sym::S(i)]),
                (one.clone(), vec![Sym::E(i)]),
            ],
        ));
    }
}

/// s_i² = (q − q⁻¹) E_i s_i + 1 (tied variant writes the idempotent on the
/// right of the crossing, as its presentation does).
fn push_quadratic<F: Field>(
    s: &FramedSetup<F>,
    out: &mut Vec<RelationWord<F::Elem>>,
    tied_order: bool,
) {
    let f = &s.f;
    let neg_delta = f.neg(&f.q_bracket_num(1));
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..s.n {
        let middle = if tied_order {
            vec![Sym::S(i), Sym::E(i)]
        } else {
            vec![Sym::E(i), Sym::S(i)]
        };
        out.push(word(
            format!("quadratic[i={i}]"),
            "quadratic",
            vec![
                (one.clone(), vec![Sym::S(i), Sym::S(i)]),
                (neg_delta.clone(), middle),
                (neg.clone(), vec![]),
            ],
        ));
    }
}

/// The six-term alternating sum 1 − q⁻¹(s_i + s_{i+1}) + q⁻²(s_is_{i+1} +
/// s_{i+1}s_i) − q⁻³ s_is_{i+1}s_i.
fn lambda3_terms<F: Field>(f: &F, i: u32) -> Vec<(F::Elem, Vec<Sym>)> {
    let (si, sj) = (Sym::S(i), Sym::S(i + 1));
    vec![
        (f.one(), vec![]),
        (f.neg(&f.q_pow(-1)), vec![si]),
        (f.neg(&f.q_pow(-1)), vec![sj]),
        (f.q_pow(-2), vec![si, sj]),
        (f.q_pow(-2), vec![sj, si]),
        (f.neg(&f.q_pow(-3)), vec![si, sj, si]),
    ]
}

/// rel-FTL: E_i E_{i+1} Λ_i = 0.
fn push_ftl<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    if s.n < 3 {
        return;
    }
    for i in 1..=s.n - 2 {
        let terms = lambda3_terms(f, i)
            .into_iter()
            .map(|(c, w)| {
                let mut full = vec![Sym::E(i), Sym::E(i + 1)];
                full.extend(w);
                (c, full)
            })
            .collect();
        out.push(word(format!("rel-FTL[i={i}]"), "rel-FTL", terms));
    }
}

/// rel-CTL: d⁻³ Σ_{a,b,c} t_i^a t_{i+1}^b t_{i+2}^c Λ_i = 0.
fn push_ctl<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    if s.n < 3 {
        return;
    }
    let d = s.d() as usize;
    let scale = f.rat(1, (d * d * d) as i64);
    for i in 1..=s.n - 2 {
        let mut terms = Vec::new();
        for a in 1..=d {
            for b in 1..=d {
                for c in 1..=d {
                    for (coeff, w) in lambda3_terms(f, i) {
                        let mut full = pow(Sym::T(i), a);
                        full.extend(pow(Sym::T(i + 1), b));
                        full.extend(pow(Sym::T(i + 2), c));
                        full.extend(w);
                        terms.push((f.mul(&scale, &coeff), full));
                    }
                }
            }
        }
        out.push(word(format!("rel-CTL[i={i}]"), "rel-CTL", terms));
    }
}

/// (a, a⁻¹, x) with x = (a − a⁻¹)/(q − q⁻¹) + 1, from the first block.
fn bmw_params<F: Field>(s: &FramedSetup<F>) -> Result<(F::Elem, F::Elem, F::Elem), VerifyError> {
    let f = &s.f;
    let a = a_value(f, s.kinds[0]).expect("applicability guarantees a loop parameter");
    let a_inv = f.inv(&a)?;
    let x = f.add(&f.div(&f.sub(&a, &a_inv), &f.q_bracket_num(1))?, &f.one());
    Ok((a, a_inv, x))
}

fn push_bmw<F: Field>(
    s: &FramedSetup<F>,
    out: &mut Vec<RelationWord<F::Elem>>,
) -> Result<(), VerifyError> {
    let f = &s.f;
    let n = s.n;
    let (a, a_inv, x) = bmw_params(s)?;
    let delta = f.q_bracket_num(1);
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..n {
        let e = Sym::ELow(i);
        out.push(word(
            format!("BMW1[i={i}]"),
            "BMW1",
            vec![
                (one.clone(), vec![e, Sym::S(i)]),
                (f.neg(&a_inv), vec![e]),
            ],
        ));
        out.push(word(
            format!("BMW5[i={i}]"),
            "BMW5",
            vec![(one.clone(), vec![e, e]), (f.neg(&x), vec![e])],
        ));
        out.push(word(
            format!("BMW6[i={i}]"),
            "BMW6",
            vec![
                (one.clone(), pow(Sym::S(i), 3)),
                (f.neg(&delta), pow(Sym::S(i), 2)),
                (neg.clone(), vec![Sym::S(i)]),
                (f.neg(&a_inv), pow(Sym::S(i), 2)),
                (f.mul(&a_inv, &delta), vec![Sym::S(i)]),
                (a_inv.clone(), vec![]),
            ],
        ));
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            let (ei, ej) = (Sym::ELow(i), Sym::ELow(j));
            out.push(word(
                format!("BMW2[i={i},j={j},+]"),
                "BMW2",
                vec![
                    (one.clone(), vec![ei, Sym::S(j), ei]),
                    (f.neg(&a), vec![ei]),
                ],
            ));
            out.push(word(
                format!("BMW2[i={i},j={j},-]"),
                "BMW2",
                vec![
                    (one.clone(), vec![ei, Sym::SInv(j), ei]),
                    (f.neg(&a_inv), vec![ei]),
                ],
            ));
            out.push(word(
                format!("BMW3[i={i},j={j}]"),
                "BMW3",
                vec![(one.clone(), vec![ei, ej, ei]), (neg.clone(), vec![ei])],
            ));
        }
    }
    Ok(())
}

fn push_fbmw<F: Field>(
    s: &FramedSetup<F>,
    out: &mut Vec<RelationWord<F::Elem>>,
) -> Result<(), VerifyError> {
    let f = &s.f;
    let n = s.n;
    let (a, a_inv, x) = bmw_params(s)?;
    let delta = f.q_bracket_num(1);
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..n {
        let e = Sym::ELow(i);
        out.push(word(
            format!("FBMW1[i={i}]"),
            "FBMW1",
            vec![
                (one.clone(), vec![e, Sym::S(i)]),
                (f.neg(&a_inv), vec![e]),
            ],
        ));
        out.push(word(
            format!("FBMW6[i={i}]"),
            "FBMW6",
            vec![
                (one.clone(), pow(Sym::S(i), 3)),
                (f.neg(&delta), vec![Sym::S(i), Sym::S(i), Sym::E(i)]),
                (neg.clone(), vec![Sym::S(i)]),
                (f.neg(&a_inv), pow(Sym::S(i), 2)),
                (f.mul(&a_inv, &delta), vec![Sym::S(i), Sym::E(i)]),
                (a_inv.clone(), vec![]),
            ],
        ));
        out.push(word(
            format!("FBMWeE[i={i}]"),
            "FBMWeE",
            vec![(one.clone(), vec![e, Sym::E(i)]), (neg.clone(), vec![e])],
        ));
        out.push(word(
            format!("FBMW5[i={i}]"),
            "FBMW5",
            vec![(one.clone(), vec![e, e]), (f.neg(&x), vec![e])],
        ));
    }
    if n >= 3 {
        for i in 1..=n - 2 {
            let e = Sym::ELow(i);
            let cap = Sym::E(i + 1);
            out.push(word(
                format!("FBMW2[i={i},+]"),
                "FBMW2",
                vec![
                    (one.clone(), vec![e, Sym::S(i + 1), e, cap]),
                    (f.neg(&a), vec![e, cap]),
                ],
            ));
            out.push(word(
                format!("FBMW2[i={i},-]"),
                "FBMW2",
                vec![
                    (one.clone(), vec![e, Sym::SInv(i + 1), e, cap]),
                    (f.neg(&a_inv), vec![e, cap]),
                ],
            ));
        }
    }
    for i in 1..n {
        for j in 1..n {
            if j != i {
                // FBMWeE2 for j = i is FBMWeE combined with [E_i, e_i] = 0;
                // the distinct-index instances are the informative ones.
                out.push(word(
                    format!("FBMWeE2[i={i},j={j}]"),
                    "FBMWeE2",
                    vec![
                        (one.clone(), vec![Sym::ELow(i), Sym::E(j)]),
                        (neg.clone(), vec![Sym::E(j), Sym::ELow(i)]),
                    ],
                ));
            }
            if i.abs_diff(j) == 1 {
                out.push(word(
                    format!("FBMW3[i={i},j={j}]"),
                    "FBMW3",
                    vec![
                        (one.clone(), vec![Sym::ELow(i), Sym::ELow(j), Sym::ELow(i)]),
                        (neg.clone(), vec![Sym::ELow(i), Sym::E(j)]),
                    ],
                ));
            }
        }
    }
    Ok(())
}

/// The tied-braid presentation: commuting idempotents and the sliding and
/// absorption rules between crossings and ties.
fn push_tied<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    let n = s.n;
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..n {
        for j in (i + 1)..n {
            out.push(word(
                format!("tied-EE-comm[i={i},j={j}]"),
                "tied-EE-comm",
                vec![
                    (one.clone(), vec![Sym::E(i), Sym::E(j)]),
                    (neg.clone(), vec![Sym::E(j), Sym::E(i)]),
                ],
            ));
        }
        out.push(word(
            format!("tied-idem[i={i}]"),
            "tied-idem",
            vec![
                (one.clone(), vec![Sym::E(i), Sym::E(i)]),
                (neg.clone(), vec![Sym::E(i)]),
            ],
        ));
        out.push(word(
            format!("tied-sE-comm[i={i}]"),
            "tied-sE-comm",
            vec![
                (one.clone(), vec![Sym::S(i), Sym::E(i)]),
                (neg.clone(), vec![Sym::E(i), Sym::S(i)]),
            ],
        ));
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                out.push(word(
                    format!("tied-sE-far[i={i},j={j}]"),
                    "tied-sE-far",
                    vec![
                        (one.clone(), vec![Sym::S(i), Sym::E(j)]),
                        (neg.clone(), vec![Sym::E(j), Sym::S(i)]),
                    ],
                ));
            }
            if i.abs_diff(j) == 1 {
                out.push(word(
                    format!("tied-slide[i={i},j={j}]"),
                    "tied-slide",
                    vec![
                        (one.clone(), vec![Sym::E(i), Sym::S(j), Sym::S(i)]),
                        (neg.clone(), vec![Sym::S(j), Sym::S(i), Sym::E(j)]),
                    ],
                ));
                out.push(word(
                    format!("tied-slide-inv[i={i},j={j}]"),
                    "tied-slide-inv",
                    vec![
                        (one.clone(), vec![Sym::E(i), Sym::S(j), Sym::SInv(i)]),
                        (neg.clone(), vec![Sym::S(j), Sym::SInv(i), Sym::E(j)]),
                    ],
                ));
                out.push(word(
                    format!("tied-triple[i={i},j={j},a]"),
                    "tied-triple",
                    vec![
                        (one.clone(), vec![Sym::E(i), Sym::E(j), Sym::S(i)]),
                        (neg.clone(), vec![Sym::E(j), Sym::S(i), Sym::E(j)]),
                    ],
                ));
                out.push(word(
                    format!("tied-triple[i={i},j={j},b]"),
                    "tied-triple",
                    vec![
                        (one.clone(), vec![Sym::E(j), Sym::S(i), Sym::E(j)]),
                        (neg.clone(), vec![Sym::S(i), Sym::E(j), Sym::E(i)]),
                    ],
                ));
            }
        }
    }
}

fn push_bt_bmw<F: Field>(
    s: &FramedSetup<F>,
    out: &mut Vec<RelationWord<F::Elem>>,
) -> Result<(), VerifyError> {
    let f = &s.f;
    let n = s.n;
    let (a, a_inv, x) = bmw_params(s)?;
    let one = f.one();
    let neg = f.from_i64(-1);
    for i in 1..n {
        let e = Sym::ELow(i);
        out.push(word(
            format!("BTBMW1[i={i}]"),
            "BTBMW1",
            vec![
                (one.clone(), vec![e, Sym::S(i)]),
                (f.neg(&a_inv), vec![e]),
            ],
        ));
        out.push(word(
            format!("BTBMWeE[i={i}]"),
            "BTBMWeE",
            vec![(one.clone(), vec![e, Sym::E(i)]), (neg.clone(), vec![e])],
        ));
        // Consequences of the defining relations, kept as robustness checks.
        out.push(word(
            format!("BTBMW5[i={i}]"),
            "BTBMW5",
            vec![(one.clone(), vec![e, e]), (f.neg(&x), vec![e])],
        ));
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            let (ei, ej) = (Sym::ELow(i), Sym::ELow(j));
            out.push(word(
                format!("BTBMW2[i={i},j={j},+]"),
                "BTBMW2",
                vec![
                    (one.clone(), vec![ei, Sym::S(j), ei, Sym::E(j)]),
                    (f.neg(&a), vec![ei, Sym::E(j)]),
                ],
            ));
            out.push(word(
                format!("BTBMW2[i={i},j={j},-]"),
                "BTBMW2",
                vec![
                    (one.clone(), vec![ei, Sym::SInv(j), ei, Sym::E(j)]),
                    (f.neg(&a_inv), vec![ei, Sym::E(j)]),
                ],
            ));
            out.push(word(
                format!("BTBMW3[i={i},j={j}]"),
                "BTBMW3",
                vec![
                    (one.clone(), vec![ei, ej, ei]),
                    (neg.clone(), vec![ei, Sym::E(j)]),
                ],
            ));
        }
    }
    Ok(())
}

/// The boundary crossing relations: the four-term relation with s₁, far
/// commutation with the other crossings, and commutation with every t_j.
fn push_affine<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    let n = s.n;
    let one = f.one();
    let neg = f.from_i64(-1);
    if n >= 2 {
        out.push(word(
            "affinebraid[four-term]".into(),
            "affinebraid",
            vec![
                (
                    one.clone(),
                    vec![Sym::S0, Sym::S(1), Sym::S0, Sym::S(1)],
                ),
                (
                    neg.clone(),
                    vec![Sym::S(1), Sym::S0, Sym::S(1), Sym::S0],
                ),
            ],
        ));
    }
    for i in 2..n {
        out.push(word(
            format!("affinebraid[far,i={i}]"),
            "affinebraid",
            vec![
                (one.clone(), vec![Sym::S0, Sym::S(i)]),
                (neg.clone(), vec![Sym::S(i), Sym::S0]),
            ],
        ));
    }
    for j in 1..=n {
        out.push(word(
            format!("framedaffinebraid[j={j}]"),
            "framedaffinebraid",
            vec![
                (one.clone(), vec![Sym::T(j), Sym::S0]),
                (neg.clone(), vec![Sym::S0, Sym::T(j)]),
            ],
        ));
    }
}

/// Π_j (σ₀ − λ_j) = 0 over the boundary eigenvalues.
fn push_cyclotomic<F: Field>(s: &FramedSetup<F>, out: &mut Vec<RelationWord<F::Elem>>) {
    let f = &s.f;
    let lams = boundary_eigenvalues(s).expect("applicability guarantees a boundary");
    let coeffs = poly_from_roots(f, &lams);
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (c.clone(), pow(Sym::S0, k)))
        .collect();
    out.push(word("cyclotomic".into(), "cyclotomic", terms));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_field, ExactField, FieldHandle, FieldSpec, ModularField};
    use crate::rmat::Boundary;

    fn exact(d: u32) -> ExactField {
        match make_field(&FieldSpec::exact(d)).unwrap() {
            FieldHandle::Exact(f) => f,
            _ => unreachable!(),
        }
    }

    fn modular(d: u32, seed: u64) -> ModularField {
        match make_field(&FieldSpec::modular(d, None, seed, 64)).unwrap() {
            FieldHandle::Modular(f) => f,
            _ => unreachable!(),
        }
    }

    fn gl_setup(d: u32, rank: u32, n: u32) -> FramedSetup<ExactField> {
        FramedSetup::new(exact(d), vec![BlockKind::Gl(rank); d as usize], n, None).unwrap()
    }

    fn assert_all_hold(reports: &[RelationReport]) {
        for r in reports {
            assert!(r.holds, "relation {} failed", r.name);
        }
        assert!(!reports.is_empty());
    }

    #[test]
    fn eval_word_basics() {
        let s = gl_setup(2, 2, 2);
        let f = &s.f;
        let table = s.assignment_for(TablePreset::Framed).unwrap();
        let id = RelationWord {
            name: "one".into(),
            family: "test",
            terms: vec![(f.one(), vec![])],
        };
        assert!(mat_sub(f, &eval_word(f, &id, &table).unwrap(), &identity(f, 16)).is_zero());
        let inv = RelationWord {
            name: "inv".into(),
            family: "test",
            terms: vec![
                (f.one(), vec![Sym::S(1), Sym::SInv(1)]),
                (f.from_i64(-1), vec![]),
            ],
        };
        assert!(eval_word(f, &inv, &table).unwrap().is_zero());
        let missing = RelationWord {
            name: "missing".into(),
            family: "test",
            terms: vec![(f.one(), vec![Sym::S0])],
        };
        assert!(matches!(
            eval_word(f, &missing, &table),
            Err(VerifyError::UnresolvedSymbol(_))
        ));
    }

    #[test]
    fn framed_preset_holds_on_mixed_blocks() {
        for s in [
            gl_setup(2, 2, 3),
            FramedSetup::new(
                exact(2),
                vec![BlockKind::Gl(2), BlockKind::Gl(3)],
                3,
                None,
            )
            .unwrap(),
            FramedSetup::new(
                exact(2),
                vec![BlockKind::Gl(2), BlockKind::So(4)],
                2,
                None,
            )
            .unwrap(),
        ] {
            assert_all_hold(&check_relations(&s, Preset::Framed).unwrap());
        }
    }

    #[test]
    fn yh_preset_holds() {
        assert_all_hold(&check_relations(&gl_setup(2, 2, 2), Preset::Yh).unwrap());
        assert_all_hold(&check_relations(&gl_setup(2, 3, 3), Preset::Yh).unwrap());
    }

    #[test]
    fn ftl_holds_on_gl2_and_fails_on_gl3() {
        assert_all_hold(&check_relations(&gl_setup(2, 2, 3), Preset::Ftl).unwrap());
        let reports = check_relations(&gl_setup(2, 3, 3), Preset::Ftl).unwrap();
        for r in &reports {
            if r.family == "rel-FTL" {
                assert!(!r.holds, "rel-FTL must fail on gl3 blocks");
            } else {
                assert!(r.holds, "relation {} failed", r.name);
            }
        }
    }

    #[test]
    fn ctl_holds_when_the_first_block_is_gl2() {
        let s = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2), BlockKind::Gl(3)],
            3,
            None,
        )
        .unwrap();
        assert_all_hold(&check_relations(&s, Preset::Ctl).unwrap());
        // With the blocks swapped, the projected triple lands in gl3 and the
        // relation must fail.
        let s = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(3), BlockKind::Gl(2)],
            3,
            None,
        )
        .unwrap();
        let reports = check_relations(&s, Preset::Ctl).unwrap();
        assert!(reports
            .iter()
            .any(|r| r.family == "rel-CTL" && !r.holds));
    }

    #[test]
    fn bmw_preset_holds_and_gates_its_inputs() {
        let s = FramedSetup::new(exact(1), vec![BlockKind::So(4)], 2, None).unwrap();
        assert_all_hold(&check_relations(&s, Preset::Bmw).unwrap());
        let s = FramedSetup::new(exact(1), vec![BlockKind::Sp(2)], 3, None).unwrap();
        assert_all_hold(&check_relations(&s, Preset::Bmw).unwrap());
        assert!(matches!(
            Preset::Bmw.applicable(&gl_setup(1, 2, 2)),
            Err(VerifyError::InapplicablePreset { .. })
        ));
        let d2 = FramedSetup::new(exact(2), vec![BlockKind::So(4); 2], 2, None).unwrap();
        assert!(matches!(
            Preset::Bmw.applicable(&d2),
            Err(VerifyError::InapplicablePreset { .. })
        ));
    }

    #[test]
    fn fbmw_preset_holds_for_two_orthogonal_blocks() {
        let s = FramedSetup::new(exact(2), vec![BlockKind::So(4); 2], 3, None).unwrap();
        assert_all_hold(&check_relations(&s, Preset::Fbmw).unwrap());
        let sp = FramedSetup::new(exact(2), vec![BlockKind::Sp(2); 2], 3, None).unwrap();
        assert_all_hold(&check_relations(&sp, Preset::Fbmw).unwrap());
        // so4 and sp2 disagree on the loop parameter sign.
        let mixed = FramedSetup::new(
            exact(2),
            vec![BlockKind::So(4), BlockKind::Sp(2)],
            2,
            None,
        )
        .unwrap();
        assert!(matches!(
            Preset::Fbmw.applicable(&mixed),
            Err(VerifyError::InapplicablePreset { .. })
        ));
    }

    #[test]
    fn tied_and_bt_presets_hold() {
        let s = gl_setup(2, 2, 3);
        assert_all_hold(&check_relations(&s, Preset::Tied).unwrap());
        assert_all_hold(&check_relations(&s, Preset::BtHecke).unwrap());
        assert_all_hold(&check_relations(&s, Preset::BtTl).unwrap());
        let so = FramedSetup::new(exact(2), vec![BlockKind::So(4); 2], 2, None).unwrap();
        assert_all_hold(&check_relations(&so, Preset::BtBmw).unwrap());
        let het = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2), BlockKind::Gl(3)],
            2,
            None,
        )
        .unwrap();
        assert!(matches!(
            Preset::Tied.applicable(&het),
            Err(VerifyError::InapplicablePreset { .. })
        ));
    }

    #[test]
    fn image_dimensions_match_the_counting_formulas() {
        assert_eq!(image_dimension(&gl_setup(2, 2, 2), Preset::Framed).unwrap(), 8);
        assert_eq!(image_dimension(&gl_setup(3, 3, 2), Preset::Framed).unwrap(), 18);
        let so = FramedSetup::new(exact(2), vec![BlockKind::So(4); 2], 2, None).unwrap();
        assert_eq!(image_dimension(&so, Preset::Framed).unwrap(), 10);
        assert_eq!(image_dimension(&so, Preset::BtBmw).unwrap(), 5);
        // gl2 blocks cut the tied image down to the braids-and-ties
        // Temperley-Lieb dimension; gl3 blocks leave the Hecke one. Modular
        // backend: these closures are heavy over rational functions.
        for (rank, want) in [(2u32, 29usize), (3, 30)] {
            let f = modular(3, 11);
            let s = FramedSetup::new(f, vec![BlockKind::Gl(rank); 3], 3, None).unwrap();
            assert_eq!(image_dimension(&s, Preset::Tied).unwrap(), want);
        }
        assert_eq!(image_dimension(&gl_setup(2, 2, 2), Preset::Tied).unwrap(), 4);
    }

    #[test]
    fn modular_and_exact_dimensions_agree() {
        for seed in [1u64, 2, 3] {
            let f = modular(2, seed);
            let s = FramedSetup::new(f, vec![BlockKind::Gl(2); 2], 2, None).unwrap();
            assert_eq!(image_dimension(&s, Preset::Framed).unwrap(), 8);
        }
    }

    #[test]
    fn block_iso_splits_cleanly() {
        let rep = verify_block_iso(&gl_setup(2, 2, 2)).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(
            rep.rows.iter().map(|r| r.found).collect::<Vec<_>>(),
            vec![2, 4, 2]
        );
        let rep = verify_block_iso(&gl_setup(2, 2, 3)).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.closure_dim, 46);
        let single = FramedSetup::new(exact(1), vec![BlockKind::So(4)], 2, None).unwrap();
        let rep = verify_block_iso(&single).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.closure_dim, 3);
    }

    #[test]
    fn minimal_polynomials_of_small_matrices() {
        let f = exact(1);
        let m = crate::exactla::from_entries(
            &f,
            3,
            [
                (0, 0, f.q_pow(1)),
                (1, 1, f.q_pow(1)),
                (2, 2, f.one()),
            ],
        );
        let mp = min_poly(&f, &m).unwrap();
        // (x − q)(x − 1) = x² − (q+1)x + q.
        assert_eq!(mp.len(), 3);
        assert_eq!(mp[2], f.one());
        assert_eq!(mp[0], f.q_pow(1));
        assert_eq!(mp[1], f.neg(&f.add(&f.q_pow(1), &f.one())));
        let nil = crate::exactla::from_entries(&f, 2, [(0, 1, f.one())]);
        let mp = min_poly(&f, &nil).unwrap();
        assert_eq!(mp.len(), 3);
        assert!(mp[0] == f.zero() && mp[1] == f.zero());
    }

    #[test]
    fn cyclotomic_scenarios() {
        // Vector boundary, one block: two eigenvalues.
        let s = FramedSetup::new(
            exact(1),
            vec![BlockKind::Gl(2)],
            2,
            Some(Boundary::Vector),
        )
        .unwrap();
        let rep = cyclotomic_check(&s).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.minpoly_degree, 2);
        // Trivial boundary: sigma0 is the identity.
        let s = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2); 2],
            1,
            Some(Boundary::Sym(0)),
        )
        .unwrap();
        let rep = cyclotomic_check(&s).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.minpoly_degree, 1);
        // Symmetric-square boundary on two blocks.
        let s = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2); 2],
            2,
            Some(Boundary::Sym(2)),
        )
        .unwrap();
        let rep = cyclotomic_check(&s).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.minpoly_degree, 2);
    }

    #[test]
    fn affine_dimensions_match_the_block_formula() {
        let s = FramedSetup::new(
            exact(1),
            vec![BlockKind::Gl(2)],
            2,
            Some(Boundary::Sym(2)),
        )
        .unwrap();
        let rep = affine_block_dim(&s).unwrap();
        assert_eq!(rep.closure, 6);
        assert_eq!(rep.formula, 6);
        assert_eq!(rep.per_block, vec![vec![1, 2, 6]]);
        let s = FramedSetup::new(
            exact(2),
            vec![BlockKind::Gl(2); 2],
            2,
            Some(Boundary::Sym(2)),
        )
        .unwrap();
        let rep = affine_block_dim(&s).unwrap();
        assert_eq!(rep.closure, 28);
        assert_eq!(rep.formula, 28);
    }

    #[test]
    fn affine_relations_hold_with_boundaries() {
        for d in [1u32, 2] {
            for shape in [Boundary::Vector, Boundary::Sym(2)] {
                let s = FramedSetup::new(
                    exact(d),
                    vec![BlockKind::Gl(2); d as usize],
                    2,
                    Some(shape),
                )
                .unwrap();
                assert_all_hold(&check_relations(&s, Preset::Affine).unwrap());
            }
        }
        assert!(matches!(
            Preset::Affine.applicable(&gl_setup(2, 2, 2)),
            Err(VerifyError::InapplicablePreset { .. })
        ));
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(Preset::parse(p.name()), Some(p));
        }
        assert_eq!(Preset::parse("nope"), None);
    }
}
