//! Integer matrices and their normal forms under unimodular transformations.
//!
//! Two eliminations live here. `smith_normal_form` computes U A V = S with
//! unimodular U, V and a divisibility chain on the diagonal.
//! `skew_normal_form` puts an antisymmetric matrix into block form
//! diag([[0,d1],[-d1,0]], ..., [[0,dr],[-dr,0]], 0) by a single congruence
//! U^T H U, again with d1 | d2 | ... | dr. Both are deterministic: pivots are
//! chosen by smallest nonzero absolute value with lexicographic (row, col)
//! tie-break, and remainders are kept in [0, pivot).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape(String::from("ragged rows")));
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != -self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row_dst += c * row_src
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert_ne!(dst, src);
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + c * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col_dst += c * col_src
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert_ne!(dst, src);
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + c * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape(String::from("determinant of a non-square matrix")));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        Ok(sign * m.at(n - 1, n - 1))
    }

    /// Inverse of a unimodular matrix, exactly. U A V = I gives A^{-1} = V U.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(String::from("inverse of a non-square matrix")));
        }
        let nf = smith_normal_form(self);
        if nf.s != Self::identity(self.rows) {
            return Err(Error::InvalidParameter(String::from("matrix is not unimodular")));
        }
        nf.v.mul(&nf.u)
    }

    /// Entries reduced mod m, for arithmetic in Z/m.
    pub fn entries_mod(&self, m: u64) -> Vec<u64> {
        debug_assert!(m >= 1);
        self.data.iter().map(|x| x.mod_floor(&BigInt::from(m)).to_u64().unwrap()).collect()
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).to_i64().ok_or_else(|| Error::TooLarge(String::from("entry exceeds i64"))))
                    .collect()
            })
            .collect()
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.at(i, j)
    }
}

/// Result of `smith_normal_form`: u * a * v = s, with u, v unimodular and the
/// diagonal of s a non-negative divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries, in chain order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.at(i, i).clone()).filter(|d| !d.is_zero()).collect()
    }

    /// Replays the definition against the original matrix.
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        let prod = self.u.mul(a)?.mul(&self.v)?;
        if prod != self.s {
            return Err(Error::InvariantViolation(String::from("u*a*v != s")));
        }
        for (mat, name) in [(&self.u, "u"), (&self.v, "v")] {
            if mat.det()?.abs() != BigInt::one() {
                return Err(Error::InvariantViolation(format!("{name} is not unimodular")));
            }
        }
        let n = self.s.rows().min(self.s.cols());
        for i in 0..self.s.rows() {
            for j in 0..self.s.cols() {
                if i != j && !self.s.at(i, j).is_zero() {
                    return Err(Error::InvariantViolation(String::from("s is not diagonal")));
                }
            }
        }
        for i in 0..n {
            if self.s.at(i, i).is_negative() {
                return Err(Error::InvariantViolation(String::from("negative divisor")));
            }
            if i + 1 < n {
                let (d, e) = (self.s.at(i, i), self.s.at(i + 1, i + 1));
                if !d.is_zero() && !(e % d).is_zero() {
                    return Err(Error::InvariantViolation(String::from("divisor chain broken")));
                }
                if d.is_zero() && !e.is_zero() {
                    return Err(Error::InvariantViolation(String::from("zero before nonzero divisor")));
                }
            }
        }
        Ok(())
    }
}

/// Position of the smallest nonzero |entry| of s within s[t.., t..],
/// scanning row-major so ties resolve to the lexicographically first cell.
fn min_abs_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s.at(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((_, m)) if *m <= a => {}
                _ => best = Some(((i, j), a)),
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let steps = a.rows().min(a.cols());

    for t in 0..steps {
        'pivot: while let Some((pi, pj)) = min_abs_pivot(&s, t) {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            if s.at(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }

            // Clear column t. Euclidean quotients leave remainders in
            // [0, pivot); a surviving remainder is a smaller pivot, so loop.
            let mut dirty = false;
            for i in t + 1..s.rows() {
                if !s.at(i, t).is_zero() {
                    let q = -s.at(i, t).div_floor(s.at(t, t));
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    dirty |= !s.at(i, t).is_zero();
                }
            }
            if dirty {
                continue 'pivot;
            }
            for j in t + 1..s.cols() {
                if !s.at(t, j).is_zero() {
                    let q = -s.at(t, j).div_floor(s.at(t, t));
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    dirty |= !s.at(t, j).is_zero();
                }
            }
            if dirty {
                continue 'pivot;
            }

            // Divisibility guard: the pivot must divide the rest of the
            // submatrix so the diagonal forms a chain. Pulling a violating
            // row into row t re-enters elimination with a smaller eventual
            // pivot.
            for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !(s.at(i, j) % s.at(t, t)).is_zero() {
                        s.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    let nf = SmithNormalForm { s, u, v };
    debug_assert!(nf.verify(a).is_ok());
    nf
}

/// Certificate for the congruence normal form of an antisymmetric matrix:
/// u^T h u = diag([[0,d1],[-d1,0]], ..., [[0,dr],[-dr,0]], 0) with
/// d1 | d2 | ... | dr, all positive, and |det u| = 1.
#[derive(Debug, Clone)]
pub struct SkewNormalCertificate {
    pub u: IntMatrix,
    pub dlist: Vec<BigInt>,
    pub zrank: usize,
}

impl SkewNormalCertificate {
    /// The block matrix named by dlist/zrank.
    pub fn block_matrix(&self) -> IntMatrix {
        let n = 2 * self.dlist.len() + self.zrank;
        let mut b = IntMatrix::zeros(n, n);
        for (i, d) in self.dlist.iter().enumerate() {
            b.set(2 * i, 2 * i + 1, d.clone());
            b.set(2 * i + 1, 2 * i, -d.clone());
        }
        b
    }

    /// Replays the definition against the original matrix.
    pub fn verify(&self, h: &IntMatrix) -> Result<()> {
        let n = h.rows();
        if 2 * self.dlist.len() + self.zrank != n {
            return Err(Error::InvariantViolation(String::from("block sizes do not sum to n")));
        }
        if self.u.det()?.abs() != BigInt::one() {
            return Err(Error::InvariantViolation(String::from("u is not unimodular")));
        }
        let got = self.u.transpose().mul(h)?.mul(&self.u)?;
        if got != self.block_matrix() {
            return Err(Error::InvariantViolation(String::from("u^T h u is not the reported block matrix")));
        }
        for (i, d) in self.dlist.iter().enumerate() {
            if !d.is_positive() {
                return Err(Error::InvariantViolation(String::from("non-positive block entry")));
            }
            if i + 1 < self.dlist.len() && !(&self.dlist[i + 1] % d).is_zero() {
                return Err(Error::InvariantViolation(String::from("block divisor chain broken")));
            }
        }
        Ok(())
    }
}

/// Smallest nonzero |entry| strictly above the diagonal of b[t.., t..].
/// For antisymmetric matrices this also covers the lower triangle.
fn min_abs_upper_pivot(b: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..b.rows() {
        for j in i + 1..b.cols() {
            let v = b.at(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((_, m)) if *m <= a => {}
                _ => best = Some(((i, j), a)),
            }
        }
    }
    best.map(|(pos, _)| pos)
}

struct CongruenceCalc {
    b: IntMatrix,
    u: IntMatrix,
}

impl CongruenceCalc {
    // Each op keeps b = u^T h u and b antisymmetric.
    fn swap(&mut self, a: usize, c: usize) {
        self.b.swap_rows(a, c);
        self.b.swap_cols(a, c);
        self.u.swap_cols(a, c);
    }

    /// (row, col)_dst += q * (row, col)_src
    fn add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.b.add_row_multiple(dst, src, q);
        self.b.add_col_multiple(dst, src, q);
        self.u.add_col_multiple(dst, src, q);
    }
}

pub fn skew_normal_form(h: &IntMatrix) -> Result<SkewNormalCertificate> {
    if !h.is_antisymmetric() {
        return Err(Error::Shape(String::from("matrix is not antisymmetric")));
    }
    let n = h.rows();
    let mut calc = CongruenceCalc { b: h.clone(), u: IntMatrix::identity(n) };
    let mut dlist = Vec::new();
    let mut t = 0;

    'block: while t + 1 < n {
        let Some((pi, pj)) = min_abs_upper_pivot(&calc.b, t) else {
            break;
        };
        // Move the pivot to (t, t+1). pj > pi >= t, so the first swap cannot
        // displace column pj.
        calc.swap(t, pi);
        if pj != t + 1 {
            calc.swap(t + 1, pj);
        }
        if calc.b.at(t, t + 1).is_negative() {
            // Swapping the block's two columns absorbs the sign into u.
            calc.swap(t, t + 1);
        }

        let p = calc.b.at(t, t + 1).clone();
        debug_assert!(p.is_positive());

        // Reduce rows t and t+1 against the pivot. Adding column t+1 into
        // column c moves b[t][c] by a multiple of p without touching
        // b[t+1][c], and symmetrically, so the two sweeps are independent.
        let mut dirty = false;
        for c in t + 2..n {
            if !calc.b.at(t, c).is_zero() {
                let q = -calc.b.at(t, c).div_floor(&p);
                calc.add(c, t + 1, &q);
                dirty |= !calc.b.at(t, c).is_zero();
            }
            if !calc.b.at(t + 1, c).is_zero() {
                let q = calc.b.at(t + 1, c).div_floor(&p);
                calc.add(c, t, &q);
                dirty |= !calc.b.at(t + 1, c).is_zero();
            }
        }
        if dirty {
            // Some remainder in [1, p) survives, so the next pivot scan finds
            // a strictly smaller pivot. This bounds the number of passes.
            continue 'block;
        }

        // Divisibility guard, as in the Smith elimination: d must divide the
        // remaining submatrix so the chain d1 | d2 | ... holds on exit.
        for i in t + 2..n {
            for j in i + 1..n {
                if !(calc.b.at(i, j) % &p).is_zero() {
                    calc.add(t, i, &BigInt::one());
                    continue 'block;
                }
            }
        }

        dlist.push(p);
        t += 2;
    }

    let cert = SkewNormalCertificate { u: calc.u, dlist, zrank: n - t };
    debug_assert!(cert.verify(h).is_ok());
    Ok(cert)
}

/// Cardinality of the image of the composite Z^n -> Z^n -> (Z/m)^n given by
/// h followed by reduction. Unimodular changes of basis are bijections of
/// (Z/m)^n, so the count is a product over the Smith divisors:
/// prod_i m / gcd(s_i, m).
pub fn image_size_mod_m(h: &IntMatrix, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidOrder);
    }
    if !h.is_square() {
        return Err(Error::Shape(String::from("image size needs a square matrix")));
    }
    let big_m = BigInt::from(m);
    let mut size = BigUint::one();
    for d in smith_normal_form(h).divisors() {
        let g = d.gcd(&big_m);
        size *= (&big_m / g).to_biguint().unwrap();
    }
    Ok(size)
}

/// Same count by direct enumeration of (Z/m)^n. Independent of the Smith
/// machinery, so it serves as an oracle. Bounded to m^n <= 2^24.
pub fn brute_force_image_size(h: &IntMatrix, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidOrder);
    }
    if !h.is_square() {
        return Err(Error::Shape(String::from("image size needs a square matrix")));
    }
    let n = h.rows();
    let mut total = 1u64;
    for _ in 0..n {
        total = total
            .checked_mul(m)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::TooLarge(format!("m^n = {m}^{n} exceeds the enumeration bound")))?;
    }
    let hm = h.entries_mod(m);
    let mut seen = vec![false; total as usize];
    let mut count = 0u64;
    let mut v = vec![0u64; n];
    loop {
        let mut idx = 0u64;
        for i in 0..n {
            let mut w = 0u64;
            for j in 0..n {
                w = (w + hm[i * n + j] * v[j]) % m;
            }
            idx = idx * m + w;
        }
        if !seen[idx as usize] {
            seen[idx as usize] = true;
            count += 1;
        }
        // Odometer over (Z/m)^n.
        let mut carry = true;
        for digit in v.iter_mut() {
            *digit += 1;
            if *digit < m {
                carry = false;
                break;
            }
            *digit = 0;
        }
        if carry {
            break;
        }
    }
    Ok(count)
}
