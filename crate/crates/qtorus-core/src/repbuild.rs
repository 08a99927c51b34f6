//! Explicit simple modules as monomial matrices.
//!
//! The module has basis e(a) indexed by tuples a = (a_1..a_s) with
//! 0 <= a_i < k_i, and generators act on row vectors from the right:
//!
//!   e(a) X_i     = alpha_i e(a +_i 1)                        (i < s)
//!   e(a) X_{s+i} = alpha_i^{-1} alpha_{s+i} q^{d_i (a_i - 1)} e(a -_i 1)
//!   e(a) X_{2s+j} = alpha_{2s+j} e(a)                        (central)
//!
//! with +_i cyclic in block i. Every generator is a monomial matrix (one
//! entry per row and column), and that shape is closed under products and
//! inverses, which `mul` asserts on every call. The original generators x_i
//! are recovered as ordered products of X powers along the columns of
//! u^{-1}, normalized so the leading coefficient is 1.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::normalform::TorusNormalForm;
use crate::scalar::{AlphaMonomial, Scalar};

/// Square matrix with exactly one nonzero entry in each row and each column.
/// `entries[row] = (col, scalar)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix<S: Scalar> {
    dim: usize,
    entries: Vec<(usize, S)>,
}

impl<S: Scalar> MonomialMatrix<S> {
    /// Builds from (row, col, scalar) triplets; enforces the shape.
    pub fn from_triplets(dim: usize, triplets: Vec<(usize, usize, S)>) -> Result<Self> {
        if triplets.len() != dim {
            return Err(Error::Shape(format!("need exactly {dim} entries, got {}", triplets.len())));
        }
        let mut entries: Vec<Option<(usize, S)>> = vec![None; dim];
        let mut col_used = vec![false; dim];
        for (r, c, s) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside a {dim}x{dim} matrix")));
            }
            if entries[r].is_some() {
                return Err(Error::Shape(format!("two entries in row {r}")));
            }
            if col_used[c] {
                return Err(Error::Shape(format!("two entries in column {c}")));
            }
            col_used[c] = true;
            entries[r] = Some((c, s));
        }
        Ok(Self { dim, entries: entries.into_iter().map(Option::unwrap).collect() })
    }

    pub fn identity(dim: usize, one: S) -> Self {
        Self { dim, entries: (0..dim).map(|i| (i, one.clone())).collect() }
    }

    pub fn scalar_matrix(dim: usize, s: S) -> Self {
        Self { dim, entries: (0..dim).map(|i| (i, s.clone())).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// e_row * M = scalar * e_col.
    pub fn row_action(&self, row: usize) -> (usize, &S) {
        let (c, s) = &self.entries[row];
        (*c, s)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().enumerate().map(|(r, (c, s))| (r, *c, s))
    }

    /// True when the matrix is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, (c, _))| r == *c)
    }

    /// Some(s) when the matrix is s * I.
    pub fn as_scalar(&self) -> Option<&S> {
        if !self.is_diagonal() {
            return None;
        }
        let s0 = &self.entries[0].1;
        if self.entries.iter().all(|(_, s)| s == s0) {
            Some(s0)
        } else {
            None
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.dim, self.dim, rhs.dim, rhs.dim)));
        }
        let entries: Vec<(usize, S)> = self
            .entries
            .iter()
            .map(|(c, s)| {
                let (c2, s2) = &rhs.entries[*c];
                (*c2, s.mul(s2))
            })
            .collect();
        // Closure assert: the product must again hit every column once.
        let mut col_used = vec![false; self.dim];
        for (c, _) in &entries {
            assert!(!col_used[*c], "product lost the monomial shape");
            col_used[*c] = true;
        }
        Ok(Self { dim: self.dim, entries })
    }

    pub fn inv(&self) -> Self {
        let mut entries: Vec<Option<(usize, S)>> = vec![None; self.dim];
        for (r, (c, s)) in self.entries.iter().enumerate() {
            entries[*c] = Some((r, s.inv()));
        }
        Self { dim: self.dim, entries: entries.into_iter().map(Option::unwrap).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let one = match self.entries.first() {
            Some((_, s)) => s.one_like(),
            None => return self.clone(),
        };
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::identity(self.dim, one);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&sq).expect("dims equal");
            }
            k >>= 1;
            if k > 0 {
                sq = sq.checked_mul(&sq).expect("dims equal");
            }
        }
        acc
    }

    /// Multiplies every entry by s (scalars commute past monomial matrices).
    pub fn scale(&self, s: &S) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|(c, v)| (*c, s.mul(v))).collect() }
    }

    pub fn map_scalars<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> MonomialMatrix<T> {
        MonomialMatrix { dim: self.dim, entries: self.entries.iter().map(|(c, s)| (*c, f(s))).collect() }
    }
}

/// Mixed-radix indexing of basis tuples: index = a_1 + k_1 (a_2 + k_2 (...)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIndexer {
    klist: Vec<u64>,
    strides: Vec<u64>,
    dim: usize,
}

impl BasisIndexer {
    pub fn new(klist: &[u64]) -> Result<Self> {
        let mut strides = Vec::with_capacity(klist.len());
        let mut acc: u64 = 1;
        for &k in klist {
            debug_assert!(k >= 1);
            strides.push(acc);
            acc = acc
                .checked_mul(k)
                .filter(|&d| d <= 1 << 20)
                .ok_or_else(|| Error::TooLarge(String::from("basis larger than 2^20")))?;
        }
        Ok(Self { klist: klist.to_vec(), strides, dim: acc as usize })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, tuple: &[u64]) -> usize {
        debug_assert_eq!(tuple.len(), self.klist.len());
        let mut idx = 0u64;
        for (i, &a) in tuple.iter().enumerate() {
            debug_assert!(a < self.klist[i]);
            idx += a * self.strides[i];
        }
        idx as usize
    }

    pub fn tuple(&self, idx: usize) -> Vec<u64> {
        debug_assert!(idx < self.dim);
        self.klist.iter().enumerate().map(|(i, &k)| (idx as u64 / self.strides[i]) % k).collect()
    }

    pub fn digit(&self, idx: usize, i: usize) -> u64 {
        (idx as u64 / self.strides[i]) % self.klist[i]
    }
}

/// A simple module presented by explicit matrices for both generator
/// families: the normal-form X_i and the original x_i.
#[derive(Debug, Clone)]
pub struct SimpleModuleRep {
    nf: TorusNormalForm,
    alpha: Vec<AlphaMonomial>,
    indexer: BasisIndexer,
    xmats_normal: Vec<MonomialMatrix<AlphaMonomial>>,
    xmats_original: Vec<MonomialMatrix<AlphaMonomial>>,
}

impl SimpleModuleRep {
    pub fn nf(&self) -> &TorusNormalForm {
        &self.nf
    }

    pub fn alpha(&self) -> &[AlphaMonomial] {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.indexer.dim()
    }

    pub fn indexer(&self) -> &BasisIndexer {
        &self.indexer
    }

    pub fn normal_generators(&self) -> &[MonomialMatrix<AlphaMonomial>] {
        &self.xmats_normal
    }

    pub fn original_generators(&self) -> &[MonomialMatrix<AlphaMonomial>] {
        &self.xmats_original
    }

    /// Substitutes concrete values for q and the alpha symbols. The
    /// substitution is a scalar homomorphism, so all verified relations
    /// transfer to the evaluated matrices.
    pub fn evaluate<S: Scalar>(&self, q: &S, values: &[S]) -> Result<EvaluatedRep<S>> {
        let nsym = self.alpha.first().map_or(0, AlphaMonomial::n);
        if values.len() != nsym {
            return Err(Error::DimensionMismatch(format!("expected {nsym} parameter values, got {}", values.len())));
        }
        let eval = |mats: &[MonomialMatrix<AlphaMonomial>]| {
            mats.iter().map(|m| m.map_scalars(|s| eval_monomial(s, q, values))).collect()
        };
        Ok(EvaluatedRep { dim: self.dim(), normal: eval(&self.xmats_normal), original: eval(&self.xmats_original) })
    }

    pub fn verify_relations(&self) -> Result<RelationReport> {
        let n = self.nf.n();
        if n == 0 {
            return Ok(RelationReport { checked: 0, failures: Vec::new() });
        }
        let q = AlphaMonomial::q_power(1, self.alpha[0].n(), self.nf.m())?;
        verify_relations_generic(&self.nf, &q, &self.xmats_normal, &self.xmats_original)
    }
}

/// Concrete matrices after substituting a scalar domain S.
#[derive(Debug, Clone)]
pub struct EvaluatedRep<S: Scalar> {
    pub dim: usize,
    pub normal: Vec<MonomialMatrix<S>>,
    pub original: Vec<MonomialMatrix<S>>,
}

pub fn eval_monomial<S: Scalar>(mono: &AlphaMonomial, q: &S, values: &[S]) -> S {
    let mut acc = q.pow(mono.qexp() as i64);
    for (i, &e) in mono.avec().iter().enumerate() {
        if e != 0 {
            acc = acc.mul(&values[i].pow(e));
        }
    }
    acc
}

/// Builds the generator matrices of M(alpha) for the given normal form.
/// `alpha` has one invertible scalar per generator; passing the standard
/// symbols gives the generic point.
#[allow(clippy::needless_range_loop)] // generator i pairs with s + i; positional indexing is the math
pub fn build_generators(nf: &TorusNormalForm, alpha: &[AlphaMonomial]) -> Result<SimpleModuleRep> {
    let n = nf.n();
    let m = nf.m();
    if alpha.len() != n {
        return Err(Error::DimensionMismatch(format!("need {n} parameters, got {}", alpha.len())));
    }
    for a in alpha {
        if a.m() != m {
            return Err(Error::DimensionMismatch(String::from("parameter has wrong root-of-unity order")));
        }
        if a.n() != alpha[0].n() {
            return Err(Error::DimensionMismatch(String::from("parameters live in different symbol rings")));
        }
    }

    let s = nf.s();
    let indexer = BasisIndexer::new(nf.klist())?;
    let dim = indexer.dim();
    let mut normal = Vec::with_capacity(n);

    for i in 0..s {
        // X_i: cyclic shift up in digit i, scalar alpha_i everywhere.
        let triplets = (0..dim).map(|r| (r, step_index(&indexer, r, i, 1), alpha[i].clone())).collect();
        normal.push(MonomialMatrix::from_triplets(dim, triplets)?);
    }
    for i in 0..s {
        // X_{s+i}: shift down in digit i, scalar alpha_i^{-1} alpha_{s+i} q^{d_i (a_i - 1)}.
        let base = alpha[i].inv().checked_mul(&alpha[s + i])?;
        let d = nf.d_mod_m(i) as i64;
        let triplets = (0..dim)
            .map(|r| {
                let a_i = indexer.digit(r, i) as i64;
                let scalar = base.q_shift(d * (a_i - 1));
                (r, step_index(&indexer, r, i, -1), scalar)
            })
            .collect();
        normal.push(MonomialMatrix::from_triplets(dim, triplets)?);
    }
    for j in 0..nf.crank() {
        normal.push(MonomialMatrix::scalar_matrix(dim, alpha[2 * s + j].clone()));
    }

    let original = pull_back(nf, &normal)?;
    Ok(SimpleModuleRep { nf: nf.clone(), alpha: alpha.to_vec(), indexer, xmats_normal: normal, xmats_original: original })
}

fn step_index(indexer: &BasisIndexer, idx: usize, i: usize, delta: i64) -> usize {
    let k = indexer.klist[i];
    let a = indexer.digit(idx, i);
    let b = (a as i64 + delta).rem_euclid(k as i64) as u64;
    (idx as u64 - a * indexer.strides[i] + b * indexer.strides[i]) as usize
}

/// Recovers the original generators: x_i is the ordered product of X_j
/// powers given by column i of u^{-1}, with leading coefficient 1.
#[allow(clippy::needless_range_loop)] // exponent j belongs to matrix entry (j, i); keep the indices visible
pub fn pull_back<S: Scalar>(nf: &TorusNormalForm, normal: &[MonomialMatrix<S>]) -> Result<Vec<MonomialMatrix<S>>> {
    let n = nf.n();
    if normal.len() != n {
        return Err(Error::DimensionMismatch(format!("need {n} generator matrices, got {}", normal.len())));
    }
    let uinv = nf.u().inverse_unimodular()?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc: Option<MonomialMatrix<S>> = None;
        for j in 0..n {
            let e = uinv
                .at(j, i)
                .to_i64()
                .ok_or_else(|| Error::TooLarge(String::from("pull-back exponent exceeds i64")))?;
            if e == 0 {
                continue;
            }
            let factor = normal[j].pow(e);
            acc = Some(match acc {
                None => factor,
                Some(a) => a.checked_mul(&factor)?,
            });
        }
        let dim = normal.first().map_or(1, MonomialMatrix::dim);
        let one = normal
            .first()
            .and_then(|g| g.entries.first())
            .map(|(_, s)| s.one_like());
        out.push(match (acc, one) {
            (Some(a), _) => a,
            (None, Some(one)) => MonomialMatrix::identity(dim, one),
            (None, None) => return Err(Error::InvariantViolation(String::from("empty generator family with n > 0"))),
        });
    }
    Ok(out)
}

/// One failed commutation check. Indices are generator positions, family
/// says which presentation ("normal" X or "original" x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub family: &'static str,
    pub i: usize,
    pub j: usize,
    pub expected_qexp: u64,
}

/// Outcome of checking every commutation relation; failures are data for the
/// report, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks g_i g_j = q^{e_ij} g_j g_i for both families: the normal family
/// against the block matrix of the form, the original family against h.
pub fn verify_relations_generic<S: Scalar>(
    nf: &TorusNormalForm,
    q: &S,
    normal: &[MonomialMatrix<S>],
    original: &[MonomialMatrix<S>],
) -> Result<RelationReport> {
    let n = nf.n();
    let m = nf.m();
    let mut report = RelationReport { checked: 0, failures: Vec::new() };
    let mut run = |family: &'static str, mats: &[MonomialMatrix<S>], exps: &[u64]| -> Result<()> {
        if mats.len() != n {
            return Err(Error::DimensionMismatch(format!("family {family} has {} matrices, need {n}", mats.len())));
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = mats[i].checked_mul(&mats[j])?;
                let rhs = mats[j].checked_mul(&mats[i])?.scale(&q.pow(exps[i * n + j] as i64));
                report.checked += 1;
                if lhs != rhs {
                    report.failures.push(RelationFailure { family, i, j, expected_qexp: exps[i * n + j] });
                }
            }
        }
        Ok(())
    };
    run("normal", normal, &nf.block_matrix().entries_mod(m))?;
    run("original", original, &nf.h().entries_mod(m))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::IntMatrix;
    use crate::normalform::{compute_normal_form, pi_degree, ExponentData};
    use crate::scalar::{CycScalar, FpScalar};
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn build(rows: &[&[i64]], m: u64) -> SimpleModuleRep {
        let ed = ExponentData::new(mat(rows), m).unwrap();
        let nf = compute_normal_form(&ed).unwrap();
        let alpha = AlphaMonomial::symbols(ed.n(), m).unwrap();
        build_generators(&nf, &alpha).unwrap()
    }

    fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
        let mut h = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = num_bigint::BigInt::from(rng.gen_range(-bound..=bound));
                h.set(i, j, v.clone());
                h.set(j, i, -v);
            }
        }
        h
    }

    #[test]
    fn monomial_matrix_shape_is_enforced() {
        let one = AlphaMonomial::one(1, 4).unwrap();
        assert!(MonomialMatrix::from_triplets(2, vec![(0, 0, one.clone()), (1, 0, one.clone())]).is_err());
        assert!(MonomialMatrix::from_triplets(2, vec![(0, 0, one.clone()), (0, 1, one.clone())]).is_err());
        assert!(MonomialMatrix::from_triplets(2, vec![(0, 2, one.clone()), (1, 0, one.clone())]).is_err());
        let m = MonomialMatrix::from_triplets(2, vec![(0, 1, one.clone()), (1, 0, one)]).unwrap();
        assert_eq!(m.inv().checked_mul(&m).unwrap(), MonomialMatrix::identity(2, AlphaMonomial::one(1, 4).unwrap()));
    }

    #[test]
    fn basis_indexer_round_trips() {
        let ix = BasisIndexer::new(&[4, 3, 2]).unwrap();
        assert_eq!(ix.dim(), 24);
        for idx in 0..24 {
            let t = ix.tuple(idx);
            assert_eq!(ix.index(&t), idx);
            for (i, &a) in t.iter().enumerate() {
                assert_eq!(ix.digit(idx, i), a);
            }
        }
        assert!(BasisIndexer::new(&[1 << 11, 1 << 11]).is_err());
    }

    #[test]
    fn action_matches_definition_in_rank_one_block() {
        // k = 4, d = 1: the shift and its twisted inverse.
        let rep = build(&[&[0, 1], &[-1, 0]], 4);
        assert_eq!(rep.dim(), 4);
        let x1 = &rep.normal_generators()[0];
        let x2 = &rep.normal_generators()[1];
        let a1 = AlphaMonomial::symbol(0, 2, 4).unwrap();
        let a2 = AlphaMonomial::symbol(1, 2, 4).unwrap();

        // e(3) X_1 = alpha_1 e(0): wraparound of the up shift.
        let (c, s) = x1.row_action(3);
        assert_eq!(c, 0);
        assert_eq!(s, &a1);
        // e(0) X_2 = alpha_1^{-1} alpha_2 q^{-d} e(3).
        let (c, s) = x2.row_action(0);
        assert_eq!(c, 3);
        let expect = a1.inv().mul(&a2).q_shift(-1);
        assert_eq!(s, &expect);
        // e(2) X_2 = alpha_1^{-1} alpha_2 q^{d} e(1).
        let (c, s) = x2.row_action(2);
        assert_eq!(c, 1);
        assert_eq!(s, &a1.inv().mul(&a2).q_shift(1));
    }

    #[test]
    fn block_power_and_diagonal_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(2..=8);
            let h = random_antisymmetric(&mut rng, n, 6);
            let ed = ExponentData::new(h, m).unwrap();
            let nf = compute_normal_form(&ed).unwrap();
            if nf.dim().unwrap() > 200 {
                continue;
            }
            let rep = build_generators(&nf, &AlphaMonomial::symbols(n, m).unwrap()).unwrap();
            let s = nf.s();
            for i in 0..s {
                let k = nf.klist()[i] as i64;
                // X_i^{k_i} = alpha_i^{k_i} I.
                let p = rep.normal_generators()[i].pow(k);
                let expect = rep.alpha()[i].checked_pow(k).unwrap();
                assert_eq!(p.as_scalar(), Some(&expect));
                // X_i X_{s+i} is diagonal with entries alpha_{s+i} q^{d_i a_i}.
                let prod = rep.normal_generators()[i].checked_mul(&rep.normal_generators()[s + i]).unwrap();
                assert!(prod.is_diagonal());
                let d = nf.d_mod_m(i) as i64;
                for r in 0..rep.dim() {
                    let a_i = rep.indexer().digit(r, i) as i64;
                    let (_, got) = prod.row_action(r);
                    assert_eq!(got, &rep.alpha()[s + i].q_shift(d * a_i));
                }
            }
        }
    }

    #[test]
    fn running_example_builds_and_verifies() {
        let rep = build(&[&[0, 1, 2], &[-1, 0, 0], &[-2, 0, 0]], 4);
        assert_eq!(rep.dim(), 4);
        let report = rep.verify_relations().unwrap();
        assert!(report.ok(), "failures: {:?}", report.failures);
        // Central generator acts by its parameter.
        let x3 = &rep.normal_generators()[2];
        assert_eq!(x3.as_scalar(), Some(&AlphaMonomial::symbol(2, 3, 4).unwrap()));
    }

    #[test]
    fn pull_back_is_identity_when_already_normal() {
        let rep = build(&[&[0, 3], &[-3, 0]], 7);
        assert_eq!(rep.normal_generators(), rep.original_generators());
    }

    #[test]
    fn relations_hold_for_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut nontrivial_u = 0;
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=9);
            let h = random_antisymmetric(&mut rng, n, 7);
            let ed = ExponentData::new(h, m).unwrap();
            let nf = compute_normal_form(&ed).unwrap();
            if nf.dim().unwrap() > 300 {
                continue;
            }
            if nf.u() != &IntMatrix::identity(n) {
                nontrivial_u += 1;
            }
            let rep = build_generators(&nf, &AlphaMonomial::symbols(n, m).unwrap()).unwrap();
            let report = rep.verify_relations().unwrap();
            assert!(report.ok(), "failures: {:?}", report.failures);
            assert_eq!(rep.dim() as u64, pi_degree(&ed).unwrap());
        }
        assert!(nontrivial_u > 5, "sampler never exercised a nontrivial change of basis");
    }

    #[test]
    fn evaluation_preserves_relations() {
        let rep = build(&[&[0, 1, 2], &[-1, 0, 0], &[-2, 0, 0]], 4);

        // Exact scalars: random nonzero rationals times powers of q.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let q = CycScalar::q_power(1, 4).unwrap();
        let values: Vec<CycScalar> = (0..3)
            .map(|_| {
                CycScalar::new(
                    num_bigint::BigInt::from(rng.gen_range(1..20i64)),
                    num_bigint::BigInt::from(rng.gen_range(1..20i64)),
                    rng.gen_range(0..4),
                    4,
                )
                .unwrap()
            })
            .collect();
        let ev = rep.evaluate(&q, &values).unwrap();
        let report = verify_relations_generic(rep.nf(), &q, &ev.normal, &ev.original).unwrap();
        assert!(report.ok(), "failures: {:?}", report.failures);

        // Finite field: q of exact order 4 in GF(13).
        let qf = FpScalar::new(crate::scalar::root_of_unity(13, 4).unwrap(), 13).unwrap();
        let vf: Vec<FpScalar> = [2u64, 5, 7].iter().map(|&v| FpScalar::new(v, 13).unwrap()).collect();
        let evf = rep.evaluate(&qf, &vf).unwrap();
        let report = verify_relations_generic(rep.nf(), &qf, &evf.normal, &evf.original).unwrap();
        assert!(report.ok(), "failures: {:?}", report.failures);
    }

    #[test]
    fn rank_zero_module_is_trivial() {
        let ed = ExponentData::new(IntMatrix::zeros(0, 0), 5).unwrap();
        let nf = compute_normal_form(&ed).unwrap();
        let rep = build_generators(&nf, &[]).unwrap();
        assert_eq!(rep.dim(), 1);
        assert!(rep.normal_generators().is_empty());
        assert!(rep.verify_relations().unwrap().ok());
    }
}
