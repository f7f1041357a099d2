//! Rational functions in `q` over `Q(zeta_d)`, in canonical reduced form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cyclotomic::{Cyc, CycField};
use super::{CoeffError, Field, ModularField};

/// Dense polynomial in `q` with cyclotomic coefficients, low to high, no
/// trailing zero coefficients (the zero polynomial is the empty vector).
pub type CPoly = Vec<Cyc>;

/// A reduced fraction of polynomials: the denominator is monic, shares no
/// common factor with the numerator, and zero is represented as `0 / 1`.
/// These invariants make structural equality mathematical equality.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFun {
    pub num: CPoly,
    pub den: CPoly,
}

#[derive(Clone)]
pub struct ExactField {
    cyc: Arc<CycField>,
}

impl ExactField {
    pub fn new(d: u32) -> Result<Self, CoeffError> {
        Ok(ExactField { cyc: Arc::new(CycField::new(d)?) })
    }

    pub fn cyclotomic(&self) -> &CycField {
        &self.cyc
    }

    fn trim(&self, mut v: CPoly) -> CPoly {
        while v.last().map_or(false, |c| self.cyc.is_zero(c)) {
            v.pop();
        }
        v
    }

    fn poly_add(&self, a: &CPoly, b: &CPoly) -> CPoly {
        let n = a.len().max(b.len());
        let mut out = vec![self.cyc.zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = self.cyc.add(&out[i], c);
        }
        self.trim(out)
    }

    fn poly_neg(&self, a: &CPoly) -> CPoly {
        a.iter().map(|c| self.cyc.neg(c)).collect()
    }

    fn poly_mul(&self, a: &CPoly, b: &CPoly) -> CPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.cyc.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.cyc.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !self.cyc.is_zero(y) {
                    out[i + j] = self.cyc.add(&out[i + j], &self.cyc.mul(x, y));
                }
            }
        }
        self.trim(out)
    }

    fn poly_scale(&self, a: &CPoly, c: &Cyc) -> CPoly {
        self.trim(a.iter().map(|x| self.cyc.mul(x, c)).collect())
    }

    /// Division with remainder; divisor nonzero.
    fn poly_divrem(&self, a: &CPoly, b: &CPoly) -> (CPoly, CPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        if a.len() <= db {
            return (vec![], a.clone());
        }
        let lead_inv = self.cyc.inv(&b[db]).expect("nonzero leading coefficient");
        let mut rem = a.clone();
        let mut quot = vec![self.cyc.zero(); a.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.cyc.mul(&rem[k + db], &lead_inv);
            if !self.cyc.is_zero(&c) {
                for (j, bj) in b.iter().enumerate() {
                    let t = self.cyc.mul(&c, bj);
                    rem[k + j] = self.cyc.sub(&rem[k + j], &t);
                }
            }
            quot[k] = c;
        }
        (self.trim(quot), self.trim(rem))
    }

    fn poly_monic(&self, a: &CPoly) -> CPoly {
        match a.last() {
            None => vec![],
            Some(lead) => {
                let li = self.cyc.inv(lead).expect("nonzero leading coefficient");
                self.poly_scale(a, &li)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm, renormalizing each remainder to
    /// keep coefficient heights in check.
    fn poly_gcd(&self, a: &CPoly, b: &CPoly) -> CPoly {
        let mut r0 = self.poly_monic(a);
        let mut r1 = self.poly_monic(b);
        if r0.is_empty() {
            return r1;
        }
        while !r1.is_empty() {
            let (_, r) = self.poly_divrem(&r0, &r1);
            r0 = r1;
            r1 = self.poly_monic(&r);
        }
        r0
    }

    fn canonical(&self, num: CPoly, den: CPoly) -> RatFun {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFun { num: vec![], den: vec![self.cyc.one()] };
        }
        let g = self.poly_gcd(&num, &den);
        let (num, den) = if g.len() > 1 {
            let (qn, rn) = self.poly_divrem(&num, &g);
            let (qd, rd) = self.poly_divrem(&den, &g);
            debug_assert!(rn.is_empty() && rd.is_empty(), "gcd must divide exactly");
            (qn, qd)
        } else {
            (num, den)
        };
        let lead_inv = self.cyc.inv(den.last().unwrap()).unwrap();
        RatFun {
            num: self.poly_scale(&num, &lead_inv),
            den: self.poly_scale(&den, &lead_inv),
        }
    }

    fn const_elem(&self, c: Cyc) -> RatFun {
        let num = if self.cyc.is_zero(&c) { vec![] } else { vec![c] };
        RatFun { num, den: vec![self.cyc.one()] }
    }

    pub fn zeta_elem(&self, k: i64) -> RatFun {
        self.const_elem(self.cyc.zeta_pow(k))
    }
}

impl Field for ExactField {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun { num: vec![], den: vec![self.cyc.one()] }
    }

    fn one(&self) -> RatFun {
        self.const_elem(self.cyc.one())
    }

    fn is_zero(&self, x: &RatFun) -> bool {
        x.num.is_empty()
    }

    fn add(&self, x: &RatFun, y: &RatFun) -> RatFun {
        let num = self.poly_add(
            &self.poly_mul(&x.num, &y.den),
            &self.poly_mul(&y.num, &x.den),
        );
        let den = self.poly_mul(&x.den, &y.den);
        self.canonical(num, den)
    }

    fn sub(&self, x: &RatFun, y: &RatFun) -> RatFun {
        self.add(x, &self.neg(y))
    }

    fn neg(&self, x: &RatFun) -> RatFun {
        RatFun { num: self.poly_neg(&x.num), den: x.den.clone() }
    }

    fn mul(&self, x: &RatFun, y: &RatFun) -> RatFun {
        let num = self.poly_mul(&x.num, &y.num);
        if num.is_empty() {
            return self.zero();
        }
        let den = self.poly_mul(&x.den, &y.den);
        self.canonical(num, den)
    }

    fn inv(&self, x: &RatFun) -> Result<RatFun, CoeffError> {
        if x.num.is_empty() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self.canonical(x.den.clone(), x.num.clone()))
    }

    fn from_i64(&self, n: i64) -> RatFun {
        self.const_elem(self.cyc.from_i64(n))
    }

    fn d(&self) -> u32 {
        self.cyc.d()
    }

    fn zeta_pow(&self, k: i64) -> RatFun {
        self.zeta_elem(k)
    }

    fn q_pow(&self, k: i32) -> RatFun {
        if k >= 0 {
            let mut num = vec![self.cyc.zero(); k as usize + 1];
            num[k as usize] = self.cyc.one();
            RatFun { num, den: vec![self.cyc.one()] }
        } else {
            let mut den = vec![self.cyc.zero(); (-k) as usize + 1];
            let top = den.len() - 1;
            den[top] = self.cyc.one();
            RatFun { num: vec![self.cyc.one()], den }
        }
    }

    fn describe(&self) -> String {
        format!("Q(zeta_{})(q)", self.cyc.d())
    }
}

/// Evaluate an exact element in a modular field under `zeta |-> zeta_p`,
/// `q |-> q_p`.  Fails when a rational coefficient or the denominator
/// polynomial collapses mod p; callers treat that as "pick another prime".
pub fn reduce_to_modular(
    ef: &ExactField,
    x: &RatFun,
    mf: &ModularField,
) -> Result<u64, CoeffError> {
    assert_eq!(ef.d(), mf.d(), "fields must share the framing order");
    let num = eval_poly_mod(ef, &x.num, mf)?;
    let den = eval_poly_mod(ef, &x.den, mf)?;
    mf.div(&num, &den)
}

fn eval_poly_mod(_ef: &ExactField, poly: &CPoly, mf: &ModularField) -> Result<u64, CoeffError> {
    let q = mf.q_pow(1);
    let mut acc = 0u64;
    for c in poly.iter().rev() {
        acc = mf.mul(&acc, &q);
        acc = mf.add(&acc, &eval_cyc_mod(c, mf)?);
    }
    Ok(acc)
}

fn eval_cyc_mod(c: &Cyc, mf: &ModularField) -> Result<u64, CoeffError> {
    let mut acc = 0u64;
    for (i, r) in c.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let t = mf.mul(&rational_mod(r, mf)?, &mf.zeta_pow(i as i64));
        acc = mf.add(&acc, &t);
    }
    Ok(acc)
}

fn rational_mod(r: &BigRational, mf: &ModularField) -> Result<u64, CoeffError> {
    let p = BigInt::from(mf.modulus());
    let n = bigint_mod(r.numer(), &p);
    let d = bigint_mod(r.denom(), &p);
    mf.div(&n, &d)
}

fn bigint_mod(x: &BigInt, p: &BigInt) -> u64 {
    let m = x.mod_floor(p);
    m.abs().to_u64().expect("residue fits in u64")
}
