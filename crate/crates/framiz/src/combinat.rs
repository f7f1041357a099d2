//! Compositions, bounded partitions, label orbits and the dimension formulas
//! realized by the matrix algebras.
//!
//! Two independent counting routes recur everywhere:
//!
//! * block sums `sum_{nu} C(n, nu)^2 * prod_b f(nu_b)` over weak compositions
//!   `nu` of `n` into `d` parts, counting a direct sum of matrix algebras over
//!   tensor products of single-block endomorphism spaces;
//! * symmetrized fixed-point sums `sum_{lambda} C(n, lambda)^2 / prod_i l_i!
//!   * prod_i f(lambda_i)` over partitions of `n` with at most `d` parts
//!   (`l_i` = multiplicity of part size `i`), counting the invariants of the
//!   block-permutation action on the same direct sum.
//!
//! All counts use big integers; callers compare them against closure ranks.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatError {
    #[error("composition parts sum to {got}, expected {expected}")]
    BadComposition { expected: u32, got: u32 },
    #[error("partition parts are not weakly decreasing")]
    BadPartition,
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Catalan number `C_k`, the dimension of the Temperley-Lieb algebra on k
/// strands.
pub fn catalan(k: u32) -> BigUint {
    binomial(2 * k, k) / BigUint::from(k as u64 + 1)
}

/// `(2k)! / (2^k k!) = (2k - 1)!!`, the dimension of the BMW (equivalently
/// Brauer) algebra on k strands.
pub fn bmw_dim(k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for j in 1..=k as u64 {
        acc *= 2 * j - 1;
    }
    acc
}

/// Weak compositions of `n` into `d` parts, lexicographically by part vector.
pub fn compositions(n: u32, d: u32) -> Vec<Vec<u32>> {
    assert!(d >= 1, "need at least one part");
    let mut out = Vec::new();
    let mut cur = vec![0u32; d as usize];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, idx: usize, rest: u32) {
        if idx + 1 == cur.len() {
            cur[idx] = rest;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rest {
            cur[idx] = v;
            rec(out, cur, idx + 1, rest - v);
        }
    }
    rec(&mut out, &mut cur, 0, n);
    out
}

/// Multinomial coefficient `C(n, parts)`; errors unless the parts sum to `n`.
pub fn multinomial(n: u32, parts: &[u32]) -> Result<BigUint, CombinatError> {
    let got: u32 = parts.iter().sum();
    if got != n {
        return Err(CombinatError::BadComposition { expected: n, got });
    }
    let mut acc = factorial(n);
    for &p in parts {
        acc /= factorial(p);
    }
    Ok(acc)
}

/// Partitions of `n` with at most `d` parts, parts weakly decreasing,
/// enumerated in lexicographically decreasing order of the part vector.
pub fn partitions_max_len(n: u32, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, rest: u32, max_part: u32, slots: u32) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = rest.min(max_part);
        for v in (1..=hi).rev() {
            cur.push(v);
            rec(out, cur, rest - v, v, slots - 1);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, n, n.max(1), d);
    out
}

/// Multiplicity vector of a partition: `mult[i]` = number of parts equal to
/// `i + 1`.
pub fn part_multiplicities(lambda: &[u32]) -> Result<Vec<u32>, CombinatError> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(CombinatError::BadPartition);
    }
    let top = lambda.first().copied().unwrap_or(0) as usize;
    let mut mult = vec![0u32; top];
    for &p in lambda {
        if p == 0 {
            return Err(CombinatError::BadPartition);
        }
        mult[p as usize - 1] += 1;
    }
    Ok(mult)
}

/// An unordered set partition of the positions `0..n` induced by a block
/// labeling, in canonical form: blocks sorted by their minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass {
    pub blocks: Vec<Vec<u32>>,
}

/// The orbit of a label tuple under relabeling: positions sharing a label
/// form a block; the labels themselves are forgotten.
pub fn orbit_of(labels: &[u32]) -> OrbitClass {
    let mut by_label: Vec<(u32, Vec<u32>)> = Vec::new();
    for (pos, &l) in labels.iter().enumerate() {
        match by_label.iter_mut().find(|(k, _)| *k == l) {
            Some((_, block)) => block.push(pos as u32),
            None => by_label.push((l, vec![pos as u32])),
        }
    }
    let mut blocks: Vec<Vec<u32>> = by_label.into_iter().map(|(_, b)| b).collect();
    blocks.sort_by_key(|b| b[0]);
    OrbitClass { blocks }
}

/// All label tuples in `{0..d}^n`, lexicographic.
pub fn label_tuples(n: u32, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity((d as usize).pow(n));
    let mut cur = vec![0u32; n as usize];
    loop {
        out.push(cur.clone());
        let mut i = n as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < d {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Bounded Bell number `B_d(n)`: set partitions of `n` positions into at most
/// `d` blocks, via the partition-shape sum
/// `sum_{lambda <= d parts} C(n, lambda) / prod l_i!`.
pub fn bounded_bell(n: u32, d: u32) -> BigUint {
    let mut acc = BigUint::zero();
    for lambda in partitions_max_len(n, d) {
        let mut term = multinomial(n, &lambda).unwrap();
        for m in part_multiplicities(&lambda).unwrap() {
            term /= factorial(m);
        }
        acc += term;
    }
    acc
}

/// Block-sum dimension: `sum_{nu |= n, d parts} C(n, nu)^2 prod_b f(nu_b)`.
pub fn dim_block_sum(n: u32, d: u32, f: impl Fn(u32) -> BigUint) -> BigUint {
    let mut acc = BigUint::zero();
    for nu in compositions(n, d) {
        let c = multinomial(n, &nu).unwrap();
        let mut term = &c * &c;
        for &part in &nu {
            term *= f(part);
        }
        acc += term;
    }
    acc
}

/// Fixed-point dimension under the block-permutation action:
/// `sum_{lambda, <= d parts} C(n, lambda)^2 / prod_i l_i! * prod_j f(lambda_j)`.
/// Each term is an integer: `C(n, lambda) / prod l_i!` counts set partitions
/// of shape `lambda`.
pub fn dim_fixedpoint_sum(n: u32, d: u32, f: impl Fn(u32) -> BigUint) -> BigUint {
    let mut acc = BigUint::zero();
    for lambda in partitions_max_len(n, d) {
        let c = multinomial(n, &lambda).unwrap();
        let mut shapes = c.clone();
        for m in part_multiplicities(&lambda).unwrap() {
            shapes /= factorial(m);
        }
        let mut term = shapes * c;
        for &part in &lambda {
            term *= f(part);
        }
        acc += term;
    }
    acc
}

/// `n! d^n`: the generic framed Hecke-type dimension.
pub fn dim_yh(n: u32, d: u32) -> BigUint {
    factorial(n) * BigUint::from(d as u64).pow(n)
}

/// Block sum over Temperley-Lieb factors (Catalan numbers).
pub fn dim_ftl(n: u32, d: u32) -> BigUint {
    dim_block_sum(n, d, catalan)
}

/// Block sum over BMW factors (odd double factorials).
pub fn dim_fbmw(n: u32, d: u32) -> BigUint {
    dim_block_sum(n, d, bmw_dim)
}

/// Fixed-point sum over full symmetric-group-type factors (factorials):
/// equals `n! * B_d(n)`.
pub fn dim_bt_hecke(n: u32, d: u32) -> BigUint {
    dim_fixedpoint_sum(n, d, factorial)
}

/// Fixed-point sum over Temperley-Lieb factors.
pub fn dim_bt_tl(n: u32, d: u32) -> BigUint {
    dim_fixedpoint_sum(n, d, catalan)
}

/// Fixed-point sum over BMW factors.
pub fn dim_bt_bmw(n: u32, d: u32) -> BigUint {
    dim_fixedpoint_sum(n, d, bmw_dim)
}

/// `(d m)^n n!`: the cyclotomic quotient dimension for a boundary whose
/// single-block double braiding has minimal polynomial of degree `m`.
pub fn dim_cyclotomic(n: u32, d: u32, m: u32) -> BigUint {
    factorial(n) * BigUint::from((d * m) as u64).pow(n)
}

/// Dimension of the group-circulant pattern: the centralizer of a group `G`
/// acting freely on summand labels is a `G`-graded matrix algebra, of
/// dimension `inner * prod |orders|`.
pub fn g_circulant_dim(inner: &BigUint, orders: &[u32]) -> BigUint {
    let mut acc = inner.clone();
    for &o in orders {
        acc *= o as u64;
    }
    acc
}
