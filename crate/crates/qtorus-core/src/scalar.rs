//! Scalar domains for module entries.
//!
//! Three domains share the [`Scalar`] interface: formal monomials in the
//! parameters alpha_1..alpha_n times a power of q ([`AlphaMonomial`]), exact
//! rational multiples of a power of q ([`CycScalar`]), and nonzero residues
//! mod a prime ([`FpScalar`]). q is a fixed primitive m-th root of unity, so
//! its exponents live in Z/m.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Multiplicative order of q^t when q has exact order m, i.e. m / gcd(t, m).
/// gcd(0, m) = m, so t = 0 gives order 1.
pub fn order_of_qpower(t: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidOrder);
    }
    let r = (t as i128).rem_euclid(m as i128) as u64;
    Ok(m / r.gcd(&m))
}

/// Reduces an integer exponent of q into 0..m.
pub fn reduce_qexp(t: i128, m: u64) -> u64 {
    debug_assert!(m >= 1);
    t.rem_euclid(m as i128) as u64
}

/// Invertible scalar with exact equality. `mul`/`inv`/`pow` never fail:
/// context agreement (same n, m, p) is the caller's invariant and is
/// asserted, not reported.
pub trait Scalar: Clone + PartialEq + Eq + core::fmt::Debug {
    fn one_like(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;

    fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = self.one_like();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Formal monomial alpha_1^{v_1} ... alpha_n^{v_n} q^t with t in Z/m.
/// The alpha_i are independent invertible symbols, so these scalars form a
/// group and equality is componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaMonomial {
    avec: Vec<i64>,
    qexp: u64,
    m: u64,
}

impl AlphaMonomial {
    pub fn new(avec: Vec<i64>, qexp: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Self { avec, qexp: reduce_qexp(qexp as i128, m), m })
    }

    pub fn one(n: usize, m: u64) -> Result<Self> {
        Self::new(vec![0; n], 0, m)
    }

    /// The i-th parameter symbol alpha_i (0-based).
    pub fn symbol(i: usize, n: usize, m: u64) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidParameter(format!("symbol index {i} out of range for n={n}")));
        }
        let mut avec = vec![0; n];
        avec[i] = 1;
        Self::new(avec, 0, m)
    }

    pub fn symbols(n: usize, m: u64) -> Result<Vec<Self>> {
        (0..n).map(|i| Self::symbol(i, n, m)).collect()
    }

    pub fn q_power(t: i64, n: usize, m: u64) -> Result<Self> {
        Self::new(vec![0; n], t, m)
    }

    pub fn avec(&self) -> &[i64] {
        &self.avec
    }

    pub fn qexp(&self) -> u64 {
        self.qexp
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.avec.len()
    }

    /// Product of two monomials: exponent vectors add, q-exponents add mod m.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m || self.avec.len() != rhs.avec.len() {
            return Err(Error::DimensionMismatch(format!(
                "monomial contexts differ: (n={}, m={}) vs (n={}, m={})",
                self.avec.len(),
                self.m,
                rhs.avec.len(),
                rhs.m
            )));
        }
        let avec = self
            .avec
            .iter()
            .zip(&rhs.avec)
            .map(|(a, b)| a.checked_add(*b).ok_or_else(|| Error::TooLarge(String::from("alpha exponent overflow"))))
            .collect::<Result<Vec<_>>>()?;
        let qexp = reduce_qexp(self.qexp as i128 + rhs.qexp as i128, self.m);
        Ok(Self { avec, qexp, m: self.m })
    }

    /// e-th power, e may be negative.
    pub fn checked_pow(&self, e: i64) -> Result<Self> {
        let avec = self
            .avec
            .iter()
            .map(|a| {
                let prod = (*a as i128) * (e as i128);
                i64::try_from(prod).map_err(|_| Error::TooLarge(String::from("alpha exponent overflow")))
            })
            .collect::<Result<Vec<_>>>()?;
        let qexp = reduce_qexp(self.qexp as i128 * e as i128, self.m);
        Ok(Self { avec, qexp, m: self.m })
    }

    /// Multiplies by q^t.
    pub fn q_shift(&self, t: i64) -> Self {
        let qexp = reduce_qexp(self.qexp as i128 + t as i128, self.m);
        Self { avec: self.avec.clone(), qexp, m: self.m }
    }
}

impl Scalar for AlphaMonomial {
    fn one_like(&self) -> Self {
        Self { avec: vec![0; self.avec.len()], qexp: 0, m: self.m }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("monomial context mismatch")
    }

    fn inv(&self) -> Self {
        self.checked_pow(-1).expect("negation cannot overflow here")
    }

    fn pow(&self, e: i64) -> Self {
        self.checked_pow(e).expect("monomial exponent overflow")
    }
}

/// Nonzero rational multiple of a power of q: c q^t with c in Q\{0},
/// t in Z/m. Distinct (c, t) pairs are distinct scalars; this is exact for
/// every m (and faithful whenever only the subgroup generated by q matters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycScalar {
    coeff: BigRational,
    qexp: u64,
    m: u64,
}

impl CycScalar {
    pub fn new(num: BigInt, den: BigInt, qexp: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder);
        }
        if den.is_zero() {
            return Err(Error::InvalidParameter(String::from("zero denominator")));
        }
        if num.is_zero() {
            return Err(Error::InvalidParameter(String::from("scalar must be nonzero")));
        }
        Ok(Self { coeff: BigRational::new(num, den), qexp: reduce_qexp(qexp as i128, m), m })
    }

    pub fn from_ratio(coeff: BigRational, qexp: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder);
        }
        if coeff.is_zero() {
            return Err(Error::InvalidParameter(String::from("scalar must be nonzero")));
        }
        Ok(Self { coeff, qexp: reduce_qexp(qexp as i128, m), m })
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::new(BigInt::one(), BigInt::one(), 0, m)
    }

    pub fn q_power(t: i64, m: u64) -> Result<Self> {
        Self::new(BigInt::one(), BigInt::one(), t, m)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn qexp(&self) -> u64 {
        self.qexp
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch(format!("scalar orders differ: m={} vs m={}", self.m, rhs.m)));
        }
        Ok(Self {
            coeff: &self.coeff * &rhs.coeff,
            qexp: reduce_qexp(self.qexp as i128 + rhs.qexp as i128, self.m),
            m: self.m,
        })
    }

    /// True when the coefficient is 1, i.e. the scalar is a pure power of q.
    pub fn is_qpower(&self) -> bool {
        self.coeff.is_one()
    }
}

impl Scalar for CycScalar {
    fn one_like(&self) -> Self {
        Self { coeff: BigRational::one(), qexp: 0, m: self.m }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("scalar order mismatch")
    }

    fn inv(&self) -> Self {
        Self {
            coeff: self.coeff.recip(),
            qexp: reduce_qexp(-(self.qexp as i128), self.m),
            m: self.m,
        }
    }
}

/// Nonzero element of GF(p). The modulus must be prime; constructors of
/// concrete representations validate primality before any FpScalar exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpScalar {
    value: u64,
    p: u64,
}

impl FpScalar {
    pub fn new(value: u64, p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidPrime(p));
        }
        let v = value % p;
        if v == 0 {
            return Err(Error::InvalidParameter(String::from("scalar must be nonzero mod p")));
        }
        Ok(Self { value: v, p })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Scalar for FpScalar {
    fn one_like(&self) -> Self {
        Self { value: 1, p: self.p }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "field characteristic mismatch");
        Self { value: mulmod(self.value, rhs.value, self.p), p: self.p }
    }

    fn inv(&self) -> Self {
        // Fermat: value^(p-2). Valid because p is prime and value != 0.
        Self { value: modpow(self.value, self.p - 2, self.p), p: self.p }
    }

    fn pow(&self, e: i64) -> Self {
        // Reduce the exponent mod p-1 (the group order) to support e < 0.
        let e = (e as i128).rem_euclid((self.p - 1) as i128) as u64;
        Self { value: modpow(self.value, e, self.p), p: self.p }
    }
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn modpow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc: u64 = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // This base set is a proven witness set for the full u64 range.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modpow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division. Errors when a cofactor beyond the
/// trial bound remains composite, which keeps the routine honest instead of
/// slow on adversarial inputs.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n.is_multiple_of(2) {
        n /= 2;
        e += 1;
    }
    push(2, e, &mut out);
    let mut d = 3u64;
    while d <= 1_000_000 && d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        push(d, e, &mut out);
        d += 2;
    }
    if n > 1 {
        if d * d > n || is_prime_u64(n) {
            push(n, 1, &mut out);
        } else {
            return Err(Error::TooLarge(format!("cannot factor cofactor {n} by trial division")));
        }
    }
    Ok(out)
}

/// Multiplicative order of a mod p (p prime, a nonzero).
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::InvalidParameter(String::from("zero has no multiplicative order")));
    }
    let mut order = p - 1;
    for (q, _) in factorize(p - 1)? {
        while order.is_multiple_of(q) && modpow(a, order / q, p) == 1 {
            order /= q;
        }
    }
    debug_assert_eq!(modpow(a, order, p), 1);
    Ok(order)
}

/// Smallest primitive root of GF(p). Deterministic, so instantiation is
/// reproducible for a fixed (p, seed).
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize(p - 1)?;
    'cand: for g in 2..p {
        for (q, _) in &factors {
            if modpow(g, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        return Ok(g);
    }
    Err(Error::InvariantViolation(String::from("no primitive root found for a prime modulus")))
}

/// Element of exact multiplicative order m in GF(p): g^((p-1)/m) for the
/// smallest primitive root g. Requires p prime and p = 1 (mod m).
pub fn root_of_unity(p: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidOrder);
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidPrime(p));
    }
    if !(p - 1).is_multiple_of(m) {
        return Err(Error::NoRootOfUnity { p, m });
    }
    let g = primitive_root(p)?;
    let q = modpow(g, (p - 1) / m, p);
    debug_assert_eq!(multiplicative_order(q, p).unwrap(), m);
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(avec: &[i64], qexp: i64, m: u64) -> AlphaMonomial {
        AlphaMonomial::new(avec.to_vec(), qexp, m).unwrap()
    }

    #[test]
    fn mono_mul_adds_exponents() {
        // m = 4: (e2, q^3) * (e2, q^3) = (2 e2, q^2)
        let a = mono(&[0, 1], 3, 4);
        let b = a.checked_mul(&a).unwrap();
        assert_eq!(b.avec(), &[0, 2]);
        assert_eq!(b.qexp(), 2);
    }

    #[test]
    fn mono_pow_cubes_to_identity_exponent() {
        // m = 6: (0, q^4)^3 = (0, q^0)
        let a = mono(&[0, 0], 4, 6);
        let b = a.checked_pow(3).unwrap();
        assert_eq!(b.avec(), &[0, 0]);
        assert_eq!(b.qexp(), 0);
        let c = a.checked_pow(-1).unwrap();
        assert_eq!(c.qexp(), 2);
    }

    #[test]
    fn mono_mul_rejects_context_mismatch() {
        let a = mono(&[1], 0, 4);
        let b = mono(&[1, 0], 0, 4);
        let c = mono(&[1], 0, 5);
        assert!(matches!(a.checked_mul(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.checked_mul(&c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of_qpower(0, 5).unwrap(), 1);
        assert_eq!(order_of_qpower(1, 12).unwrap(), 12);
        assert_eq!(order_of_qpower(4, 6).unwrap(), 3);
        assert_eq!(order_of_qpower(8, 12).unwrap(), 3);
        assert_eq!(order_of_qpower(-1, 12).unwrap(), 12);
        assert!(matches!(order_of_qpower(3, 0), Err(Error::InvalidOrder)));
    }

    #[test]
    fn order_matches_least_exponent_search() {
        for m in 1u64..=20 {
            for t in -25i64..=25 {
                let claimed = order_of_qpower(t, m).unwrap();
                let mut e = 1u64;
                while (t as i128 * e as i128).rem_euclid(m as i128) != 0 {
                    e += 1;
                }
                assert_eq!(claimed, e, "t={t} m={m}");
            }
        }
    }

    #[test]
    fn cyc_rejects_zero_and_m_zero() {
        assert!(matches!(
            CycScalar::new(BigInt::from(0), BigInt::from(1), 0, 4),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            CycScalar::new(BigInt::from(1), BigInt::from(0), 0, 4),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(CycScalar::new(BigInt::from(1), BigInt::from(1), 0, 0), Err(Error::InvalidOrder)));
    }

    #[test]
    fn cyc_mul_inv_pow() {
        let a = CycScalar::new(BigInt::from(3), BigInt::from(2), 5, 6).unwrap();
        assert_eq!(a.qexp(), 5);
        let one = a.mul(&a.inv());
        assert!(one.is_one());
        let p = a.pow(3);
        assert_eq!(p.coeff(), &BigRational::new(BigInt::from(27), BigInt::from(8)));
        assert_eq!(p.qexp(), 3);
        let q = CycScalar::q_power(1, 6).unwrap();
        assert!(q.pow(6).is_one());
        assert_eq!(q.pow(-1).qexp(), 5);
    }

    #[test]
    fn fp_scalar_field_laws() {
        let p = 13;
        for v in 1..p {
            let a = FpScalar::new(v, p).unwrap();
            assert_eq!(a.mul(&a.inv()).value(), 1);
            assert_eq!(a.pow(12).value(), 1);
            assert_eq!(a.pow(-1), a.inv());
        }
        assert!(FpScalar::new(13, 13).is_err());
        assert!(FpScalar::new(0, 13).is_err());
    }

    #[test]
    fn primality_and_roots() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(13));
        assert!(is_prime_u64(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(1));

        assert_eq!(primitive_root(13).unwrap(), 2);
        // q = g^((p-1)/m) has exact order m; 5 is another order-4 element of GF(13).
        let q = root_of_unity(13, 4).unwrap();
        assert_eq!(q, 8);
        assert_eq!(multiplicative_order(q, 13).unwrap(), 4);
        assert_eq!(multiplicative_order(5, 13).unwrap(), 4);

        assert!(matches!(root_of_unity(7, 4), Err(Error::NoRootOfUnity { .. })));
        assert!(matches!(root_of_unity(15, 2), Err(Error::InvalidPrime(15))));
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(97).unwrap(), vec![(97, 1)]);
    }

    proptest! {
        #[test]
        fn mono_group_laws(
            a in proptest::collection::vec(-20i64..20, 3),
            b in proptest::collection::vec(-20i64..20, 3),
            c in proptest::collection::vec(-20i64..20, 3),
            (ta, tb, tc) in (0i64..12, 0i64..12, 0i64..12),
        ) {
            let m = 12;
            let x = AlphaMonomial::new(a, ta, m).unwrap();
            let y = AlphaMonomial::new(b, tb, m).unwrap();
            let z = AlphaMonomial::new(c, tc, m).unwrap();
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert!(x.mul(&x.inv()).is_one());
            prop_assert_eq!(x.pow(5), x.mul(&x).mul(&x).mul(&x).mul(&x));
        }

        #[test]
        fn cyc_pow_homomorphism(n in 1i64..50, d in 1i64..50, t in 0i64..10, e in -6i64..6, f in -6i64..6) {
            let a = CycScalar::new(BigInt::from(n), BigInt::from(d), t, 10).unwrap();
            prop_assert_eq!(a.pow(e + f), a.pow(e).mul(&a.pow(f)));
        }

        #[test]
        fn fp_pow_matches_naive(v in 1u64..97, e in 0i64..200) {
            let a = FpScalar::new(v, 97).unwrap();
            let mut acc = FpScalar::new(1, 97).unwrap();
            for _ in 0..e { acc = acc.mul(&a); }
            prop_assert_eq!(a.pow(e), acc);
        }
    }
}
