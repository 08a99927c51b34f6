//! Torus-level normal form of a commutation-exponent matrix at a fixed
//! root-of-unity order m.
//!
//! Starting from the congruence block form of H, blocks whose entry d is
//! divisible by m commute (q^d = 1) and are folded into the central part.
//! What remains is the list of periods k_i = m / gcd(d_i, m), each >= 2,
//! whose product is the PI degree. `pi_degree` recomputes that number along
//! an independent route (the image size of H mod m is the square of the PI
//! degree) and refuses to answer if the two disagree.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlat::{image_size_mod_m, skew_normal_form, IntMatrix};

/// Validated input: an antisymmetric integer matrix of commutation exponents
/// together with the order m of the root of unity q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentData {
    h: IntMatrix,
    m: u64,
}

impl ExponentData {
    pub fn new(h: IntMatrix, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder);
        }
        if !h.is_antisymmetric() {
            return Err(Error::Shape(String::from("commutation matrix must be antisymmetric")));
        }
        Ok(Self { h, m })
    }

    pub fn h(&self) -> &IntMatrix {
        &self.h
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.h.rows()
    }
}

/// gcd(t, m) normalized into 1..=m, so every power of q maps to the divisor
/// of m indexing its conjugacy data. t = 0 (q^t = 1) maps to m itself.
pub fn canonical_divisor(t: i64, m: u64) -> u64 {
    assert!(m >= 1, "order m must be at least 1");
    let r = (t as i128).rem_euclid(m as i128) as u64;
    r.gcd(&m)
}

/// Normal form of a quantum torus at order m: s noncentral blocks with
/// entries d_i (m does not divide d_i), their divisors h_i = gcd(d_i, m) and
/// periods k_i = m / h_i, the change of basis u, and the rank of the central
/// part. Central blocks (m | d) keep their entries in `central_d` so the
/// congruence can be replayed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusNormalForm {
    h: IntMatrix,
    m: u64,
    s: usize,
    dlist: Vec<BigInt>,
    hlist: Vec<u64>,
    klist: Vec<u64>,
    u: IntMatrix,
    crank: usize,
    central_d: Vec<BigInt>,
}

impl TorusNormalForm {
    pub fn h(&self) -> &IntMatrix {
        &self.h
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.h.rows()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dlist(&self) -> &[BigInt] {
        &self.dlist
    }

    pub fn hlist(&self) -> &[u64] {
        &self.hlist
    }

    pub fn klist(&self) -> &[u64] {
        &self.klist
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn crank(&self) -> usize {
        self.crank
    }

    pub fn central_dlist(&self) -> &[BigInt] {
        &self.central_d
    }

    /// d_i reduced into 0..m; the block relation X_i X_{i+s} = q^{d_i} ...
    /// only depends on this residue.
    pub fn d_mod_m(&self, i: usize) -> u64 {
        self.dlist[i].mod_floor(&BigInt::from(self.m)).to_u64().unwrap()
    }

    /// prod k_i, the dimension of the simple modules built from this form.
    pub fn dim(&self) -> Result<u64> {
        let mut acc: u128 = 1;
        for &k in &self.klist {
            acc = acc.checked_mul(k as u128).ok_or_else(|| Error::TooLarge(String::from("module dimension overflows")))?;
        }
        u64::try_from(acc).map_err(|_| Error::TooLarge(String::from("module dimension overflows u64")))
    }

    /// The block matrix u^T h u. Columns follow the generator order of the
    /// module construction: noncentral pairs are split as (i, s+i), so
    /// entry (i, s+i) is d_i; folded central pairs stay adjacent after 2s.
    pub fn block_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.n(), self.n());
        for (i, d) in self.dlist.iter().enumerate() {
            b.set(i, self.s + i, d.clone());
            b.set(self.s + i, i, -d.clone());
        }
        for (t, d) in self.central_d.iter().enumerate() {
            b.set(2 * self.s + 2 * t, 2 * self.s + 2 * t + 1, d.clone());
            b.set(2 * self.s + 2 * t + 1, 2 * self.s + 2 * t, -d.clone());
        }
        b
    }

    /// Replays every claim this form makes about (h, m).
    pub fn verify(&self) -> Result<()> {
        let n = self.n();
        if self.crank != n - 2 * self.s {
            return Err(Error::InvariantViolation(String::from("crank != n - 2s")));
        }
        if self.s != self.dlist.len() || self.s != self.hlist.len() || self.s != self.klist.len() {
            return Err(Error::InvariantViolation(String::from("list lengths disagree with s")));
        }
        if self.u.det()?.abs() != BigInt::one() {
            return Err(Error::InvariantViolation(String::from("u is not unimodular")));
        }
        let got = self.u.transpose().mul(&self.h)?.mul(&self.u)?;
        if got != self.block_matrix() {
            return Err(Error::InvariantViolation(String::from("u^T h u is not the reported block matrix")));
        }
        let m = BigInt::from(self.m);
        for (i, d) in self.dlist.iter().enumerate() {
            if (d % &m).is_zero() {
                return Err(Error::InvariantViolation(String::from("central block listed as noncentral")));
            }
            let h = d.mod_floor(&m).to_u64().unwrap().gcd(&self.m);
            if h != self.hlist[i] || self.m / h != self.klist[i] || self.klist[i] < 2 {
                return Err(Error::InvariantViolation(String::from("divisor/period data inconsistent")));
            }
        }
        for d in &self.central_d {
            if !(d % &m).is_zero() {
                return Err(Error::InvariantViolation(String::from("noncentral block listed as central")));
            }
        }
        Ok(())
    }
}

pub fn compute_normal_form(ed: &ExponentData) -> Result<TorusNormalForm> {
    let cert = skew_normal_form(ed.h())?;
    let m = BigInt::from(ed.m());

    // The block entries form a divisibility chain, so the blocks killed by m
    // (central: q^d = 1) are exactly a suffix.
    let split = cert.dlist.iter().position(|d| (d % &m).is_zero()).unwrap_or(cert.dlist.len());
    let (noncentral, central) = cert.dlist.split_at(split);
    debug_assert!(central.iter().all(|d| (d % &m).is_zero()));

    let mut hlist = Vec::with_capacity(noncentral.len());
    let mut klist = Vec::with_capacity(noncentral.len());
    for d in noncentral {
        let h = d.mod_floor(&m).to_u64().unwrap().gcd(&ed.m());
        hlist.push(h);
        klist.push(ed.m() / h);
    }

    // The certificate pairs block coordinates adjacently; the module
    // construction indexes all up-shifts first, then all down-shifts. Permute
    // the columns of u so column i carries generator X_i.
    let s = noncentral.len();
    let n = ed.n();
    let u = IntMatrix::from_fn(n, n, |r, c| {
        let paired = if c < s {
            2 * c
        } else if c < 2 * s {
            2 * (c - s) + 1
        } else {
            c
        };
        cert.u.at(r, paired).clone()
    });

    let nf = TorusNormalForm {
        h: ed.h().clone(),
        m: ed.m(),
        s,
        dlist: noncentral.to_vec(),
        hlist,
        klist,
        u,
        crank: n - 2 * s,
        central_d: central.to_vec(),
    };
    debug_assert!(nf.verify().is_ok());
    Ok(nf)
}

/// PI degree of the quantum torus: prod k_i, cross-checked against the
/// square root of the image size of H mod m. A mismatch is a bug, not input.
pub fn pi_degree(ed: &ExponentData) -> Result<u64> {
    let nf = compute_normal_form(ed)?;
    let pi = nf.dim()?;
    let img = image_size_mod_m(ed.h(), ed.m())?;
    let root = img.sqrt();
    if &root * &root != img {
        return Err(Error::InvariantViolation(format!("image size {img} is not a perfect square")));
    }
    if root != BigUint::from(pi) {
        return Err(Error::InvariantViolation(format!(
            "PI degree routes disagree: block product {pi}, image sqrt {root}"
        )));
    }
    Ok(pi)
}
