//! Module-theoretic analysis: simplicity evidence, finite-field
//! instantiation with a randomized generation test, and isomorphism
//! classification with explicit intertwiners.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::normalform::{ExponentData, TorusNormalForm};
use crate::repbuild::{BasisIndexer, EvaluatedRep, MonomialMatrix, SimpleModuleRep};
use crate::scalar::{order_of_qpower, root_of_unity, CycScalar, FpScalar, Scalar};

/// Evidence that the constructed module is simple.
///
/// The formal argument has two halves. Separation: the products X_i X_{s+i}
/// act diagonally with joint eigenvalue tuple (alpha_{s+i} q^{d_i a_i})_i on
/// e(a), and since q^{d_i} has exact order k_i these tuples are pairwise
/// distinct, so every submodule is spanned by basis vectors. Transitivity:
/// the up shifts X_i act transitively on basis vectors. Block orders are
/// always re-verified; for dim <= 10^4 the pairwise separation and the orbit
/// are also enumerated literally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub dim: u64,
    /// (d_i mod m, k_i) per block, with ord(q^{d_i}) = k_i re-verified.
    pub block_orders: Vec<(u64, u64)>,
    /// Number of distinct basis pairs distinguished by some digit.
    pub separated_pairs: u64,
    /// Size of the orbit of e(0) under the up shifts.
    pub orbit_size: u64,
    /// True when separation was enumerated pair by pair (dim <= 10^4).
    pub exhaustive: bool,
}

impl SimplicityCertificate {
    pub fn holds(&self) -> bool {
        self.orbit_size == self.dim
            && (!self.exhaustive || self.separated_pairs == self.dim * self.dim.saturating_sub(1) / 2)
    }
}

/// Every pair of distinct tuples in prod Z/k_i differs in some digit; this
/// enumerates and counts them literally.
pub fn count_separated_pairs(klist: &[u64]) -> Result<u64> {
    let ix = BasisIndexer::new(klist)?;
    let dim = ix.dim();
    let tuples: Vec<Vec<u64>> = (0..dim).map(|i| ix.tuple(i)).collect();
    let mut count = 0u64;
    for a in 0..dim {
        for b in a + 1..dim {
            if tuples[a].iter().zip(&tuples[b]).any(|(x, y)| x != y) {
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn formal_simplicity_certificate(nf: &TorusNormalForm) -> Result<SimplicityCertificate> {
    let dim = nf.dim()?;
    let mut block_orders = Vec::with_capacity(nf.s());
    for i in 0..nf.s() {
        let d = nf.d_mod_m(i);
        let k = order_of_qpower(d as i64, nf.m())?;
        if k != nf.klist()[i] {
            return Err(Error::InvariantViolation(format!(
                "block {i}: ord(q^{d}) = {k} but normal form claims {}",
                nf.klist()[i]
            )));
        }
        block_orders.push((d, k));
    }

    // Orbit of e(0) under the up shifts, walked as an odometer.
    let ix = BasisIndexer::new(nf.klist())?;
    let mut visited = vec![false; ix.dim()];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut orbit_size = 0u64;
    while let Some(v) = stack.pop() {
        orbit_size += 1;
        for i in 0..nf.s() {
            let t = ix.tuple(v);
            let mut up = t.clone();
            up[i] = (up[i] + 1) % nf.klist()[i];
            let w = ix.index(&up);
            if !visited[w] {
                visited[w] = true;
                stack.push(w);
            }
        }
    }

    let exhaustive = dim <= 10_000;
    let separated_pairs = if exhaustive { count_separated_pairs(nf.klist())? } else { 0 };
    Ok(SimplicityCertificate { dim, block_orders, separated_pairs, orbit_size, exhaustive })
}

/// A representation instantiated over GF(p): q becomes an element of exact
/// order m, the parameter symbols become seeded random nonzero residues.
#[derive(Debug, Clone)]
pub struct ConcreteRep {
    pub p: u64,
    pub q: u64,
    pub alpha_values: Vec<u64>,
    pub rep: EvaluatedRep<FpScalar>,
}

pub fn instantiate_finite_field(rep: &SimpleModuleRep, p: u64, seed: u64) -> Result<ConcreteRep> {
    let q = root_of_unity(p, rep.nf().m())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nsym = rep.alpha().first().map_or(0, crate::scalar::AlphaMonomial::n);
    let alpha_values: Vec<u64> = (0..nsym).map(|_| rng.gen_range(1..p)).collect();
    let qs = FpScalar::new(q, p)?;
    let values: Vec<FpScalar> = alpha_values.iter().map(|&v| FpScalar::new(v, p)).collect::<Result<_>>()?;
    let ev = rep.evaluate(&qs, &values)?;
    Ok(ConcreteRep { p, q, alpha_values, rep: ev })
}

/// Outcome of the randomized generation test. `failures` counts trials whose
/// started subspace stayed proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub dim: usize,
    pub trials: u32,
    pub failures: u32,
}

impl GenerationReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Row-echelon subspace accumulator over GF(p), rows indexed by pivot column.
struct Echelon {
    p: u64,
    rows: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Echelon {
    fn new(dim: usize, p: u64) -> Self {
        Self { p, rows: vec![None; dim], rank: 0 }
    }

    /// Reduces v against the basis; on a new pivot, stores the normalized row
    /// and returns a copy for further spinning.
    fn insert(&mut self, mut v: Vec<u64>) -> Option<Vec<u64>> {
        let p = self.p;
        for j in 0..v.len() {
            if v[j] == 0 {
                continue;
            }
            match &self.rows[j] {
                Some(row) => {
                    let c = v[j];
                    for (vi, ri) in v.iter_mut().zip(row).skip(j) {
                        *vi = (*vi + p - crate::scalar::mulmod(c, *ri, p) % p) % p;
                    }
                    debug_assert_eq!(v[j], 0);
                }
                None => {
                    // Normalize the pivot to 1.
                    let inv = FpScalar::new(v[j], p).expect("nonzero pivot").inv().value();
                    for vi in v.iter_mut().skip(j) {
                        *vi = crate::scalar::mulmod(*vi, inv, p);
                    }
                    self.rows[j] = Some(v.clone());
                    self.rank += 1;
                    return Some(v);
                }
            }
        }
        None
    }
}

fn apply_row(v: &[u64], m: &MonomialMatrix<FpScalar>, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; v.len()];
    for (r, c, s) in m.triplets() {
        if v[r] != 0 {
            out[c] = crate::scalar::mulmod(v[r], s.value(), p);
        }
    }
    out
}

/// Span of one start vector under the action algebra, grown greedily; true
/// when it reaches the whole space.
fn spins_to_full(start: Vec<u64>, mats: &[MonomialMatrix<FpScalar>], dim: usize, p: u64) -> bool {
    let mut ech = Echelon::new(dim, p);
    let mut queue = Vec::new();
    if let Some(row) = ech.insert(start) {
        queue.push(row);
    }
    while let Some(v) = queue.pop() {
        if ech.rank == dim {
            return true;
        }
        for m in mats {
            let w = apply_row(&v, m, p);
            if let Some(row) = ech.insert(w) {
                queue.push(row);
            }
        }
    }
    ech.rank == dim
}

/// Randomized generation check over GF(p). Each trial spins two start
/// vectors: a random basis vector and a dense random nonzero vector. For a
/// simple module every nonzero vector generates, so both succeed. A dense
/// start alone would miss direct sums of isomorphic simples (a generic
/// vector of M + M generates the whole sum); the basis start stays inside
/// one block of any monomial direct sum, so such controls fail every trial.
pub fn random_vector_generation_test(
    mats: &[MonomialMatrix<FpScalar>],
    dim: usize,
    p: u64,
    trials: u32,
    seed: u64,
) -> Result<GenerationReport> {
    if dim == 0 {
        return Err(Error::InvalidParameter(String::from("dimension must be at least 1")));
    }
    for m in mats {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch(format!("matrix is {}x{}, expected {dim}x{dim}", m.dim(), m.dim())));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u32;
    for _ in 0..trials {
        let mut basis = vec![0u64; dim];
        basis[rng.gen_range(0..dim)] = 1;
        let ok = spins_to_full(basis, mats, dim, p) && {
            let mut dense = vec![0u64; dim];
            while dense.iter().all(|&x| x == 0) {
                for x in dense.iter_mut() {
                    *x = rng.gen_range(0..p);
                }
            }
            spins_to_full(dense, mats, dim, p)
        };
        if !ok {
            failures += 1;
        }
    }
    Ok(GenerationReport { dim, trials, failures })
}

/// Witness for an isomorphism M(alpha) ~ M(beta): the cyclic shift r_i per
/// block and the ratios beta_i / alpha_i that scale the intertwiner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub rlist: Vec<u64>,
    pub scale: Vec<CycScalar>,
}

fn check_params(nf: &TorusNormalForm, name: &str, vals: &[CycScalar]) -> Result<()> {
    if vals.len() != nf.n() {
        return Err(Error::DimensionMismatch(format!("{name} has {} entries, need {}", vals.len(), nf.n())));
    }
    for v in vals {
        if v.m() != nf.m() {
            return Err(Error::DimensionMismatch(format!("{name} entry has order {} but the form has m = {}", v.m(), nf.m())));
        }
    }
    Ok(())
}

/// Decides whether M(alpha) and M(beta) are isomorphic and returns the
/// witness when they are. The criterion, per block i < s:
/// alpha_i^{k_i} = beta_i^{k_i} and alpha_{s+i} = beta_{s+i} (q^{d_i})^{r_i}
/// for some r_i, and equality on all central parameters. The r_i scan is
/// exhaustive over Z/k_i; q^{d_i} has exact order k_i so a witness is unique.
pub fn are_isomorphic(nf: &TorusNormalForm, alpha: &[CycScalar], beta: &[CycScalar]) -> Result<Option<IsoWitness>> {
    check_params(nf, "alpha", alpha)?;
    check_params(nf, "beta", beta)?;
    let s = nf.s();
    let mut rlist = Vec::with_capacity(s);
    let mut scale = Vec::with_capacity(s);
    for i in 0..s {
        let k = nf.klist()[i] as i64;
        if alpha[i].pow(k) != beta[i].pow(k) {
            return Ok(None);
        }
        let d = nf.d_mod_m(i) as i64;
        let found = (0..k).find(|&r| {
            let shift = CycScalar::q_power(d * r, nf.m()).expect("m >= 1");
            beta[s + i].mul(&shift) == alpha[s + i]
        });
        match found {
            Some(r) => rlist.push(r as u64),
            None => return Ok(None),
        }
        scale.push(alpha[i].inv().mul(&beta[i]));
    }
    for j in 2 * s..nf.n() {
        if alpha[j] != beta[j] {
            return Ok(None);
        }
    }
    Ok(Some(IsoWitness { rlist, scale }))
}

/// The linear map phi(e(a)) = prod_i (alpha_i^{-1} beta_i)^{a_i} e(a + shift)
/// as a monomial matrix from the M(alpha) basis to the M(beta) basis. Any
/// monomial intertwiner is a scalar multiple of one of these: the up-shift
/// equations force row a from row 0.
pub fn intertwiner_candidate(
    nf: &TorusNormalForm,
    alpha: &[CycScalar],
    beta: &[CycScalar],
    shift: &[u64],
) -> Result<MonomialMatrix<CycScalar>> {
    check_params(nf, "alpha", alpha)?;
    check_params(nf, "beta", beta)?;
    let s = nf.s();
    if shift.len() != s {
        return Err(Error::DimensionMismatch(format!("shift has {} entries, need {s}", shift.len())));
    }
    let ix = BasisIndexer::new(nf.klist())?;
    let dim = ix.dim();
    let scale: Vec<CycScalar> = (0..s).map(|i| alpha[i].inv().mul(&beta[i])).collect();
    let one = CycScalar::one(nf.m())?;
    let triplets = (0..dim)
        .map(|row| {
            let a = ix.tuple(row);
            let target: Vec<u64> = (0..s).map(|i| (a[i] + shift[i]) % nf.klist()[i]).collect();
            let mut sc = one.clone();
            for i in 0..s {
                sc = sc.mul(&scale[i].pow(a[i] as i64));
            }
            (row, ix.index(&target), sc)
        })
        .collect();
    MonomialMatrix::from_triplets(dim, triplets)
}

/// phi intertwines when A_g phi = phi B_g for every generator g (right
/// modules: acting first in M(alpha) then mapping equals mapping then acting
/// in M(beta)).
pub fn intertwines<S: Scalar>(
    amats: &[MonomialMatrix<S>],
    bmats: &[MonomialMatrix<S>],
    phi: &MonomialMatrix<S>,
) -> Result<bool> {
    if amats.len() != bmats.len() {
        return Err(Error::DimensionMismatch(String::from("generator families differ in length")));
    }
    for (a, b) in amats.iter().zip(bmats) {
        if a.checked_mul(phi)? != phi.checked_mul(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the intertwiner named by a witness and verifies the intertwining
/// equations for the whole normal generator family before returning it. The
/// original generators are ordered products of the normal ones, so they are
/// intertwined automatically.
pub fn build_intertwiner(
    nf: &TorusNormalForm,
    alpha: &[CycScalar],
    beta: &[CycScalar],
    witness: &IsoWitness,
) -> Result<MonomialMatrix<CycScalar>> {
    let phi = intertwiner_candidate(nf, alpha, beta, &witness.rlist)?;
    let symbols = crate::scalar::AlphaMonomial::symbols(nf.n(), nf.m())?;
    let rep = crate::repbuild::build_generators(nf, &symbols)?;
    let q = CycScalar::q_power(1, nf.m())?;
    let ma = rep.evaluate(&q, alpha)?;
    let mb = rep.evaluate(&q, beta)?;
    if !intertwines(&ma.normal, &mb.normal, &phi)? {
        return Err(Error::InvariantViolation(String::from("witnessed intertwiner fails the intertwining equations")));
    }
    Ok(phi)
}

/// Removes the generators whose parameter is zero (they act as zero and the
/// simple modules factor through the subalgebra on the rest). Returns the
/// reduced exponent data, the surviving values, and their original indices.
/// All-zero input legitimately yields the rank-0 algebra.
pub fn reduce_zero_support<T: Clone>(ed: &ExponentData, alpha: &[Option<T>]) -> Result<(ExponentData, Vec<T>, Vec<usize>)> {
    if alpha.len() != ed.n() {
        return Err(Error::DimensionMismatch(format!("{} parameters for {} generators", alpha.len(), ed.n())));
    }
    let kept: Vec<usize> = (0..ed.n()).filter(|&i| alpha[i].is_some()).collect();
    let h = crate::intlat::IntMatrix::from_fn(kept.len(), kept.len(), |i, j| ed.h().at(kept[i], kept[j]).clone());
    let values = kept.iter().map(|&i| alpha[i].clone().unwrap()).collect();
    Ok((ExponentData::new(h, ed.m())?, values, kept))
}
