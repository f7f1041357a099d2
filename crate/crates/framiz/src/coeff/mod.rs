//! Coefficient fields.
//!
//! Two interchangeable backends implement the [`Field`] trait:
//!
//! * [`ExactField`]: rational functions in the quantum parameter `q` with
//!   coefficients in the cyclotomic field `Q(zeta_d)`.  Elements are kept in a
//!   canonical reduced form (monic denominator, gcd(num, den) = 1), so
//!   structural equality is mathematical equality.  This is the gold standard
//!   for small scenarios.
//! * [`ModularField`]: the prime field `F_p` for a word-sized `p ≡ 1 (mod d)`,
//!   with `zeta` a deterministically chosen element of exact order `d` and `q`
//!   a random specialization that avoids low-order roots of unity.  Rank
//!   computations over a specialization are lower bounds of the generic rank,
//!   so dimension claims are confirmed by agreement across several independent
//!   `(p, seed)` runs.
//!
//! The framization parameter `a` of the BMW families is not an independent
//! variable here: every realized matrix forces `a` to a concrete signed power
//! of `q` determined by the block kind, so it is carried by the R-matrix packs
//! and setups rather than by the field.

use std::fmt;

use thiserror::Error;

mod cyclotomic;
mod exact;
mod modular;

pub use cyclotomic::CycField;
pub use exact::{reduce_to_modular, ExactField, RatFun};
pub use modular::{is_prime_u64, ModularField, SplitMix64, PRIME_LIST};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CoeffError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {p} is incompatible with d = {d}: d must divide p - 1")]
    ModulusIncompatibleWithD { p: u64, d: u32 },
    #[error("unsupported framing order d = {0}")]
    UnsupportedD(u32),
    #[error("field exhausted while sampling a specialization")]
    ExhaustedField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the parameter a is not configured for this context")]
    UnconfiguredA,
}

/// Backend selector for [`make_field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Modular,
}

/// Everything needed to construct a coefficient field.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    pub backend: Backend,
    /// Framing order; `zeta` is a primitive d-th root of unity.
    pub d: u32,
    /// Modulus for the modular backend.  `None` picks the first entry of the
    /// published prime list that is compatible with `d`.
    pub p: Option<u64>,
    /// Seed for all random choices of the modular backend.
    pub seed: u64,
    /// Specializations must avoid roots of unity of order up to this bound
    /// (callers use twice the largest tensor length they will touch).
    pub root_order_bound: u32,
}

impl FieldSpec {
    pub fn exact(d: u32) -> Self {
        FieldSpec { backend: Backend::Exact, d, p: None, seed: 0, root_order_bound: 16 }
    }

    pub fn modular(d: u32, p: Option<u64>, seed: u64, root_order_bound: u32) -> Self {
        FieldSpec { backend: Backend::Modular, d, p, seed, root_order_bound }
    }
}

/// A coefficient field handle.  All element operations go through the handle
/// so that backends can carry context (the modulus, the cyclotomic modulus)
/// without storing it in every element.
pub trait Field: Clone + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem, CoeffError>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Framing order.
    fn d(&self) -> u32;
    /// `zeta^k` for the distinguished primitive d-th root of unity.
    fn zeta_pow(&self, k: i64) -> Self::Elem;
    /// `q^k` for the distinguished quantum parameter (a variable for the
    /// exact backend, a specialized residue for the modular one).
    fn q_pow(&self, k: i32) -> Self::Elem;

    fn describe(&self) -> String;

    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, CoeffError> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// The rational n/m as a field element.
    fn rat(&self, n: i64, m: i64) -> Self::Elem {
        let num = self.from_i64(n);
        let den = self
            .inv(&self.from_i64(m))
            .expect("rational constant with nonzero denominator");
        self.mul(&num, &den)
    }

    /// `q^k - q^{-k}`, the ubiquitous quantum bracket numerator.
    fn q_bracket_num(&self, k: i32) -> Self::Elem {
        self.sub(&self.q_pow(k), &self.q_pow(-k))
    }
}

/// Runtime-dispatched field, used by callers that pick the backend from
/// configuration.  Concrete algorithms stay generic over [`Field`].
#[derive(Clone)]
pub enum FieldHandle {
    Exact(ExactField),
    Modular(ModularField),
}

/// Construct a field from a spec.  Fails on invalid moduli, incompatible
/// `(p, d)` pairs, or when no usable specialization exists.
pub fn make_field(spec: &FieldSpec) -> Result<FieldHandle, CoeffError> {
    if spec.d == 0 || spec.d > 64 {
        return Err(CoeffError::UnsupportedD(spec.d));
    }
    match spec.backend {
        Backend::Exact => Ok(FieldHandle::Exact(ExactField::new(spec.d)?)),
        Backend::Modular => {
            let p = match spec.p {
                Some(p) => p,
                None => modular::default_prime_for(spec.d)?,
            };
            Ok(FieldHandle::Modular(ModularField::new(
                p,
                spec.d,
                spec.seed,
                spec.root_order_bound,
            )?))
        }
    }
}
