//! The cyclotomic number field `Q(zeta_d) = Q[x] / Phi_d(x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CoeffError;

/// Coefficients of the d-th cyclotomic polynomial, monic, low to high.
/// Computed as `(x^d - 1) / prod_{e | d, e < d} Phi_e(x)` by exact integer
/// polynomial division.
pub fn cyclotomic_poly(d: u32) -> Vec<BigInt> {
    assert!(d >= 1);
    // x^d - 1
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = BigInt::from(-1);
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            num = int_poly_div_exact(&num, &cyclotomic_poly(e));
        }
    }
    num
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

/// Element of `Q(zeta_d)`: dense coefficient vector of length `deg Phi_d`,
/// low to high in powers of `zeta`.
pub type Cyc = Vec<BigRational>;

#[derive(Debug, Clone)]
pub struct CycField {
    d: u32,
    deg: usize,
    /// Phi_d over Q, monic, length deg + 1.
    phi: Vec<BigRational>,
}

impl CycField {
    pub fn new(d: u32) -> Result<Self, CoeffError> {
        if d == 0 || d > 64 {
            return Err(CoeffError::UnsupportedD(d));
        }
        let phi: Vec<BigRational> = cyclotomic_poly(d)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let deg = phi.len() - 1;
        Ok(CycField { d, deg, phi })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn zero(&self) -> Cyc {
        vec![BigRational::zero(); self.deg]
    }

    pub fn one(&self) -> Cyc {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> Cyc {
        let mut v = self.zero();
        if self.deg > 0 {
            v[0] = r;
        }
        v
    }

    pub fn from_i64(&self, n: i64) -> Cyc {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta^k`, exponent taken mod d.  For d = 1 the field is Q itself and
    /// zeta = 1.
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let k = k.rem_euclid(self.d as i64) as usize;
        // Reduce x^k mod Phi_d.
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        self.reduce(raw)
    }

    pub fn is_zero(&self, x: &Cyc) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, x: &Cyc, y: &Cyc) -> Cyc {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, x: &Cyc, y: &Cyc) -> Cyc {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn neg(&self, x: &Cyc) -> Cyc {
        x.iter().map(|a| -a).collect()
    }

    pub fn mul(&self, x: &Cyc, y: &Cyc) -> Cyc {
        if self.deg == 0 {
            return vec![];
        }
        let mut raw = vec![BigRational::zero(); 2 * self.deg];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        self.reduce(raw)
    }

    /// Reduce a raw coefficient vector mod Phi_d down to length deg.
    fn reduce(&self, mut raw: Vec<BigRational>) -> Cyc {
        while raw.len() > self.deg {
            let k = raw.len() - 1;
            let c = raw.pop().unwrap();
            if !c.is_zero() {
                // x^k = x^{k - deg} * (x^deg - Phi_d tail); subtract c * tail
                // shifted by k - deg.
                let shift = k - self.deg;
                for j in 0..self.deg {
                    let t = &c * &self.phi[j];
                    raw[shift + j] -= t;
                }
            }
        }
        raw.resize(self.deg, BigRational::zero());
        raw
    }

    /// Inverse via extended Euclid in Q[x] against Phi_d (which is
    /// irreducible, so any nonzero element is invertible).
    pub fn inv(&self, x: &Cyc) -> Result<Cyc, CoeffError> {
        if self.is_zero(x) {
            return Err(CoeffError::DivisionByZero);
        }
        if self.deg == 1 {
            // Q itself.
            return Ok(vec![BigRational::one() / &x[0]]);
        }
        // Invariants: r0 = s0 * x (mod Phi), r1 = s1 * x (mod Phi).
        let mut r0 = self.phi.clone();
        let mut r1 = trim(x.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while poly_deg(&r1) > 0 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            assert!(!r1.is_empty(), "Phi_d is irreducible; gcd must be a unit");
        }
        let lead = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|c| c / &lead).collect();
        let mut out = self.reduce(inv);
        out.resize(self.deg, BigRational::zero());
        Ok(out)
    }
}

// --- dense Q[x] helpers (trimmed: no trailing zeros; empty = zero) ---

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_deg(v: &[BigRational]) -> isize {
    v.len() as isize - 1
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - db];
    let lead = &b[db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_coeffs(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(int_coeffs(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(int_coeffs(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(int_coeffs(&cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(int_coeffs(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(int_coeffs(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(int_coeffs(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_orders_and_inverses() {
        for d in 1..=12u32 {
            let f = CycField::new(d).unwrap();
            let z = f.zeta_pow(1);
            let mut acc = f.one();
            for _ in 0..d {
                acc = f.mul(&acc, &z);
            }
            assert_eq!(acc, f.one(), "zeta^d = 1 for d = {d}");
            let zi = f.inv(&z).unwrap();
            assert_eq!(f.mul(&z, &zi), f.one());
            assert_eq!(zi, f.zeta_pow(-1));
        }
    }

    #[test]
    fn geometric_sum_vanishes() {
        // 1 + zeta + ... + zeta^{d-1} = 0 for d > 1.
        for d in 2..=10u32 {
            let f = CycField::new(d).unwrap();
            let mut s = f.zero();
            for k in 0..d {
                s = f.add(&s, &f.zeta_pow(k as i64));
            }
            assert!(f.is_zero(&s), "geometric sum must vanish for d = {d}");
        }
    }
}
