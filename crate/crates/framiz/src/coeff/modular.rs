//! Word-sized prime fields with deterministic specialization.

use super::{CoeffError, Field};

/// Published prime list for modular runs: 62-bit primes `p ≡ 1 (mod 2520)`,
/// so every framing order `d` with `d | 2520` (in particular all `d <= 10`)
/// divides `p - 1`.  The list is scanned downward from `2^62`; the CLI and the
/// tests pick primes from here unless an explicit modulus is requested.
pub const PRIME_LIST: [u64; 16] = [
    4611686018427379081,
    4611686018427376561,
    4611686018427363961,
    4611686018427293401,
    4611686018427275761,
    4611686018427265681,
    4611686018427230401,
    4611686018427227881,
    4611686018427212761,
    4611686018427182521,
    4611686018427089281,
    4611686018427086761,
    4611686018427084241,
    4611686018427048961,
    4611686018427021241,
    4611686018427001081,
];

/// First published prime compatible with `d`.
pub fn default_prime_for(d: u32) -> Result<u64, CoeffError> {
    PRIME_LIST
        .iter()
        .copied()
        .find(|p| (p - 1) % d as u64 == 0)
        .ok_or(CoeffError::UnsupportedD(d))
}

/// SplitMix64: a tiny fixed-algorithm generator, hand-rolled so that seeded
/// runs stay reproducible independently of external crate versions.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound` via the multiply-shift trick (exact
    /// uniformity is irrelevant here; determinism is what matters).
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64 with this base set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Draw a specialization from `F_p^*` that avoids the listed elements and all
/// roots of unity of order `<= root_order_bound`.
pub fn random_specialization(
    p: u64,
    rng: &mut SplitMix64,
    forbidden: &[u64],
    root_order_bound: u32,
) -> Result<u64, CoeffError> {
    // Bounded retry keeps exhaustion (tiny p, aggressive bound) an error
    // instead of a hang.
    'attempt: for _ in 0..4096 {
        let r = rng.below(p - 1) + 1;
        if forbidden.contains(&r) {
            continue;
        }
        let mut acc = r;
        for _ in 1..=root_order_bound {
            if acc == 1 {
                continue 'attempt;
            }
            acc = mulmod(acc, r, p);
        }
        return Ok(r);
    }
    Err(CoeffError::ExhaustedField)
}

/// `F_p` with a distinguished root of unity `zeta` of exact order `d` and a
/// specialized quantum parameter `q`, both derived deterministically from
/// `(p, seed)`.
#[derive(Debug, Clone)]
pub struct ModularField {
    p: u64,
    d: u32,
    zeta: u64,
    q: u64,
    q_inv: u64,
}

impl ModularField {
    pub fn new(p: u64, d: u32, seed: u64, root_order_bound: u32) -> Result<Self, CoeffError> {
        if d == 0 || d > 64 {
            return Err(CoeffError::UnsupportedD(d));
        }
        if !is_prime_u64(p) {
            return Err(CoeffError::NonPrimeModulus(p));
        }
        if (p - 1) % d as u64 != 0 {
            return Err(CoeffError::ModulusIncompatibleWithD { p, d });
        }
        let mut rng = SplitMix64::new(seed ^ p);
        let zeta = Self::find_zeta(p, d, &mut rng)?;
        let q = random_specialization(p, &mut rng, &[], root_order_bound)?;
        let q_inv = powmod(q, p - 2, p);
        Ok(ModularField { p, d, zeta, q, q_inv })
    }

    /// Deterministic element of exact multiplicative order d: a random
    /// (p-1)/d-th power whose order is verified against every maximal proper
    /// divisor of d.
    fn find_zeta(p: u64, d: u32, rng: &mut SplitMix64) -> Result<u64, CoeffError> {
        let exp = (p - 1) / d as u64;
        let maximal: Vec<u64> = prime_factors(d as u64)
            .into_iter()
            .map(|f| d as u64 / f)
            .collect();
        for _ in 0..4096 {
            let r = rng.below(p - 1) + 1;
            let z = powmod(r, exp, p);
            if z == 0 || (d > 1 && z == 1) {
                continue;
            }
            if maximal.iter().all(|&m| powmod(z, m, p) != 1) {
                return Ok(z);
            }
        }
        Err(CoeffError::ExhaustedField)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn q_value(&self) -> u64 {
        self.q
    }

    /// Extra deterministic draws from the field (fresh stream per purpose).
    pub fn sampler(&self, purpose: u64) -> SplitMix64 {
        SplitMix64::new(self.p ^ purpose.rotate_left(32) ^ self.q)
    }
}

impl Field for ModularField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }

    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mulmod(*x, *y, self.p)
    }

    fn inv(&self, x: &u64) -> Result<u64, CoeffError> {
        if *x == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(powmod(*x, self.p - 2, self.p))
    }

    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    fn d(&self) -> u32 {
        self.d
    }

    fn zeta_pow(&self, k: i64) -> u64 {
        let k = k.rem_euclid(self.d as i64) as u64;
        powmod(self.zeta, k, self.p)
    }

    fn q_pow(&self, k: i32) -> u64 {
        if k >= 0 {
            powmod(self.q, k as u64, self.p)
        } else {
            powmod(self.q_inv, (-k) as u64, self.p)
        }
    }

    fn describe(&self) -> String {
        format!(
            "F_{} (d = {}, zeta = {}, q = {})",
            self.p, self.d, self.zeta, self.q
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_primes_are_prime_and_compatible() {
        for &p in &PRIME_LIST {
            assert!(is_prime_u64(p), "{p} must be prime");
            assert_eq!((p - 1) % 2520, 0, "{p} must be 1 mod 2520");
            assert_eq!(64 - p.leading_zeros(), 62, "{p} must be 62-bit");
        }
    }

    #[test]
    fn miller_rabin_axioms() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(u64::MAX));
    }

    #[test]
    fn specialization_avoids_low_order_roots() {
        let f = ModularField::new(1_000_003, 2, 42, 12).unwrap();
        let q = f.q_value();
        let mut acc = q;
        for k in 1..=12u32 {
            assert_ne!(acc, 1, "q has order {k} <= bound");
            acc = mulmod(acc, q, 1_000_003);
        }
    }

    #[test]
    fn zeta_powers_wrap_mod_d() {
        let f = ModularField::new(13, 4, 5, 2).unwrap();
        assert_eq!(f.zeta_pow(4), 1);
        assert_eq!(f.zeta_pow(-1), f.zeta_pow(3));
        assert_eq!(f.zeta_pow(1), f.zeta_pow(5));
    }
}
