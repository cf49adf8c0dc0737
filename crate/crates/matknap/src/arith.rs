//! Exact rational scalars, dense square rational matrices, integer
//! factorization and S-unit exponent vectors.
//!
//! Everything downstream (relation lattices, knapsack solvers, the census)
//! is built on the types in this module. All values are immutable after
//! construction and all operations are pure functions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number in canonical form (reduced,
/// positive denominator). `num_rational::BigRational` maintains the
/// invariant in every constructor and operation.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    DimensionMismatch { left: usize, right: usize },
    Singular,
    ZeroMatrix,
    ZeroInput,
    PrimeOutsideSet(BigInt),
    Unverified,
    Precondition(String),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            ArithError::Singular => write!(f, "singular matrix"),
            ArithError::ZeroMatrix => write!(f, "zero matrix"),
            ArithError::ZeroInput => write!(f, "zero input"),
            ArithError::PrimeOutsideSet(p) => {
                write!(f, "prime {p} outside the given prime set")
            }
            ArithError::Unverified => write!(f, "lattice has not been verified"),
            ArithError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl std::error::Error for ArithError {}

/// Dense square matrix of exact rationals, row-major storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    dim: usize,
    entries: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.dim, self.dim)?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.dim + j])?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn new(dim: usize, entries: Vec<Rat>) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Mat { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Mat {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from integer rows, mainly for fixtures and tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rat::one();
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        Mat {
            dim,
            entries: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let mut m = Mat::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = d.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, ArithError> {
        self.check_dim(other)?;
        Ok(Mat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, ArithError> {
        self.check_dim(other)?;
        Ok(Mat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_dim(&self, other: &Mat) -> Result<(), ArithError> {
        if self.dim != other.dim {
            return Err(ArithError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, ArithError> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
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

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.at(i, j) * &v[j])
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn det(&self) -> Rat {
        let n = self.dim;
        let (mut m, den) = self.cleared();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            // pivot search
            let mut piv = None;
            for r in k..n {
                if !m[r][k].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else {
                return Rat::zero();
            };
            if piv != k {
                m.swap(piv, k);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = if sign < 0 { -prev } else { prev };
        Rat::new(det_int, den.pow(n as u32))
    }

    /// Exact inverse via fraction-free Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat, ArithError> {
        let n = self.dim;
        let (cleared, den) = self.cleared();
        // augmented [B | I] over the integers, A = B/den
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = cleared[i].clone();
                for j in 0..n {
                    row.push(if i == j { BigInt::one() } else { BigInt::zero() });
                }
                row
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let mut piv = None;
            for r in k..n {
                if !m[r][k].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else {
                return Err(ArithError::Singular);
            };
            if piv != k {
                m.swap(piv, k);
            }
            for i in 0..(2 * n * n) {
                let (r, c) = (i / (2 * n), i % (2 * n));
                if r == k || c == k {
                    continue;
                }
                let num = &m[k][k] * &m[r][c] - &m[r][k] * &m[k][c];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free elimination must divide exactly");
                m[r][c] = q;
            }
            for r in 0..n {
                if r != k {
                    m[r][k] = BigInt::zero();
                }
            }
            prev = m[k][k].clone();
        }
        // the left block is now diagonal; each row of the inverse is the
        // right block row divided by its own pivot
        let mut out = Mat::zero(n);
        for i in 0..n {
            let pivot = m[i][i].clone();
            for j in 0..n {
                out.set(i, j, Rat::new(&m[i][n + j] * &den, pivot.clone()));
            }
        }
        Ok(out)
    }

    /// Clears all denominators: returns (integer matrix, common denominator).
    pub fn cleared(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut den = BigInt::one();
        for e in &self.entries {
            den = den.lcm(e.denom());
        }
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let e = self.at(i, j);
                        e.numer() * (&den / e.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, den)
    }

    /// Basis of the rational nullspace, each vector cleared to a primitive
    /// integer vector with positive leading entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let n = self.dim;
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        // rational row reduction to reduced echelon form
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let mut piv = None;
            for r in row..n {
                if !m[r][col].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            m.swap(piv, row);
            let inv = m[row][col].recip();
            for j in col..n {
                m[row][j] = &m[row][j] * &inv;
            }
            for r in 0..n {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for j in col..n {
                        m[r][j] = &m[r][j] - &factor * &m[row][j];
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            basis.push(primitive_integer_vector(&v));
        }
        basis
    }
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading nonzero entry.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Rat> {
    let mut den = BigInt::one();
    for e in v {
        den = den.lcm(e.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|e| e.numer() * (&den / e.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut scaled: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    if let Some(first) = scaled.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut scaled {
                *x = -x.clone();
            }
        }
    }
    scaled.into_iter().map(Rat::from_integer).collect()
}

/// Exact matrix product; errors on dimension mismatch.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat, ArithError> {
    a.mul(b)
}

/// Exact inverse; errors on singular input.
pub fn mat_inverse(a: &Mat) -> Result<Mat, ArithError> {
    a.inverse()
}

/// Exact `k`-th power by binary exponentiation; `mat_pow(A, 0) = I`.
/// Negative `k` requires an invertible matrix.
pub fn mat_pow(a: &Mat, k: i64) -> Result<Mat, ArithError> {
    let base = if k < 0 { a.inverse()? } else { a.clone() };
    let mut exp = k.unsigned_abs();
    let mut result = Mat::identity(a.dim());
    let mut sq = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result.mul(&sq)?;
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.mul(&sq)?;
        }
    }
    Ok(result)
}

/// A nonzero rational factored as sign · prod p^(e_p) over a finite prime
/// set; the S-unit representation over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeExpVec {
    pub sign: i8,
    pub exponents: BTreeMap<BigInt, i64>,
}

impl PrimeExpVec {
    pub fn one() -> Self {
        PrimeExpVec {
            sign: 1,
            exponents: BTreeMap::new(),
        }
    }

    /// Multiplies the representation back out.
    pub fn reconstruct(&self) -> Rat {
        let mut r = if self.sign >= 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        for (p, &e) in &self.exponents {
            let pw = Rat::from_integer(p.clone()).pow(e as i32);
            r *= pw;
        }
        r
    }

    fn mul_assign_pow(&mut self, other: &PrimeExpVec, scale: i64) {
        if other.sign < 0 && scale % 2 != 0 {
            self.sign = -self.sign;
        }
        for (p, &e) in &other.exponents {
            let entry = self.exponents.entry(p.clone()).or_insert(0);
            *entry += e * scale;
            if *entry == 0 {
                self.exponents.remove(p);
            }
        }
    }
}

/// Complete prime factorization with sign; errors on zero input.
/// Trial division up to 10^6, then Pollard rho with Miller-Rabin.
pub fn factorize(n: &BigInt) -> Result<PrimeExpVec, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut exponents = BTreeMap::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= rest && p <= limit {
        let mut e = 0i64;
        loop {
            let (q, r) = rest.div_rem(&p);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            exponents.insert(p.clone(), e);
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if is_probable_prime(&m) {
                *exponents.entry(m).or_insert(0) += 1;
            } else {
                let d = pollard_rho(&m);
                stack.push(&m / &d);
                stack.push(d);
            }
        }
    }
    Ok(PrimeExpVec { sign, exponents })
}

/// Factorization of a nonzero rational: numerator exponents minus
/// denominator exponents.
pub fn factorize_rat(q: &Rat) -> Result<PrimeExpVec, ArithError> {
    if q.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut out = factorize(q.numer())?;
    let den = factorize(q.denom())?;
    out.mul_assign_pow(&den, -1);
    Ok(out)
}

/// Exponent vector of a nonzero rational with respect to an ordered prime
/// list, zero-padded. Errors if the rational has a prime factor outside the
/// list, signalling the caller to enlarge the set.
pub fn sunit_vector(q: &Rat, primes: &[BigInt]) -> Result<(i8, Vec<i64>), ArithError> {
    let f = factorize_rat(q)?;
    let mut v = vec![0i64; primes.len()];
    for (p, &e) in &f.exponents {
        match primes.iter().position(|x| x == p) {
            Some(i) => v[i] = e,
            None => return Err(ArithError::PrimeOutsideSet(p.clone())),
        }
    }
    Ok((f.sign, v))
}

/// Multiplicative projective height of a nonzero matrix: clear all entry
/// denominators, divide by the integer gcd, take the maximum absolute value.
pub fn height(a: &Mat) -> Result<BigInt, ArithError> {
    if a.is_zero() {
        return Err(ArithError::ZeroMatrix);
    }
    let mut den = BigInt::one();
    for e in a.entries() {
        den = den.lcm(e.denom());
    }
    let ints: Vec<BigInt> = a
        .entries()
        .iter()
        .map(|e| e.numer() * (&den / e.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    Ok(ints.iter().map(|x| (x / &g).abs()).max().unwrap())
}

fn is_probable_prime(n: &BigInt) -> bool {
    use num_bigint::ToBigInt;
    if n < &BigInt::from(2u32) {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if n == &s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    // Miller-Rabin; the fixed base set is deterministic below 3.3·10^24
    let one = BigInt::one();
    let two = BigInt::from(2u32);
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut r = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = a.to_bigint().unwrap();
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 0..(r - 1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    let two = BigInt::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2u32);
        let mut y = BigInt::from(2u32);
        let mut d = BigInt::one();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mat_mul_examples() {
        let i2 = Mat::identity(2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);
        let d = Mat::diagonal(&[rat_int(2), rat_int(3)]);
        let dinv = Mat::diagonal(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(d.mul(&dinv).unwrap(), i2);
        let u = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let expected = Mat::from_i64_rows(&[&[1, 2], &[0, 1]]);
        assert_eq!(u.mul(&u).unwrap(), expected);
    }

    #[test]
    fn mat_inverse_examples() {
        let d = Mat::diagonal(&[rat_int(2), rat_int(3)]);
        assert_eq!(
            d.inverse().unwrap(),
            Mat::diagonal(&[rat(1, 2), rat(1, 3)])
        );
        let i3 = Mat::identity(3);
        assert_eq!(i3.inverse().unwrap(), i3);
        let u = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let uinv = u.inverse().unwrap();
        assert_eq!(uinv, Mat::from_i64_rows(&[&[1, -1], &[0, 1]]));
        assert!(u.mul(&uinv).unwrap().is_identity());
    }

    #[test]
    fn mat_inverse_singular() {
        let s = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(ArithError::Singular));
    }

    #[test]
    fn mat_pow_examples() {
        let i2 = Mat::identity(2);
        assert_eq!(mat_pow(&i2, 5).unwrap(), i2);
        let d = Mat::diagonal(&[rat_int(2), rat_int(3)]);
        assert_eq!(
            mat_pow(&d, -2).unwrap(),
            Mat::diagonal(&[rat(1, 4), rat(1, 9)])
        );
        let u = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        // four repeated multiplications
        let mut acc = Mat::identity(2);
        for _ in 0..4 {
            acc = acc.mul(&u).unwrap();
        }
        assert_eq!(mat_pow(&u, 4).unwrap(), acc);
        assert_eq!(*mat_pow(&u, 4).unwrap().at(0, 1), rat_int(4));
    }

    #[test]
    fn mat_pow_additivity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            // random invertible 2x2 over small integers
            let a = loop {
                let m = Mat::from_rows(vec![
                    vec![rat_int(rng.gen_range(-3..=3)), rat_int(rng.gen_range(-3..=3))],
                    vec![rat_int(rng.gen_range(-3..=3)), rat_int(rng.gen_range(-3..=3))],
                ]);
                if !m.det().is_zero() {
                    break m;
                }
            };
            for k in -8i64..=8 {
                for l in -8i64..=8 {
                    let lhs = mat_pow(&a, k + l).unwrap();
                    let rhs = mat_pow(&a, k).unwrap().mul(&mat_pow(&a, l).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&BigInt::from(-12)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.exponents.get(&BigInt::from(2)), Some(&2));
        assert_eq!(f.exponents.get(&BigInt::from(3)), Some(&1));
        let one = factorize(&BigInt::one()).unwrap();
        assert_eq!(one.sign, 1);
        assert!(one.exponents.is_empty());
        let f600 = factorize(&BigInt::from(600)).unwrap();
        assert_eq!(f600.exponents.get(&BigInt::from(2)), Some(&3));
        assert_eq!(f600.exponents.get(&BigInt::from(3)), Some(&1));
        assert_eq!(f600.exponents.get(&BigInt::from(5)), Some(&2));
        assert_eq!(factorize(&BigInt::zero()), Err(ArithError::ZeroInput));
    }

    #[test]
    fn factorize_roundtrip_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let n: i64 = loop {
                let x = rng.gen_range(-1_000_000i64..=1_000_000);
                if x != 0 {
                    break x;
                }
            };
            let f = factorize(&BigInt::from(n)).unwrap();
            assert_eq!(f.reconstruct(), rat_int(n));
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        // beyond the trial-division bound, exercises Pollard rho
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f.exponents.get(&p), Some(&1));
        assert_eq!(f.exponents.get(&q), Some(&1));
    }

    #[test]
    fn sunit_vector_examples() {
        let primes = [BigInt::from(2), BigInt::from(3)];
        assert_eq!(sunit_vector(&rat(8, 9), &primes).unwrap(), (1, vec![3, -2]));
        assert_eq!(
            sunit_vector(&rat_int(-1), &[BigInt::from(2)]).unwrap(),
            (-1, vec![0])
        );
        let primes235 = [BigInt::from(2), BigInt::from(3), BigInt::from(5)];
        assert_eq!(
            sunit_vector(&rat(50, 27), &primes235).unwrap(),
            (1, vec![1, -3, 2])
        );
        assert!(matches!(
            sunit_vector(&rat(7, 1), &primes235),
            Err(ArithError::PrimeOutsideSet(_))
        ));
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&Mat::identity(2)).unwrap(), BigInt::one());
        let m = Mat::from_i64_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(height(&m).unwrap(), BigInt::from(4));
        let m2 = Mat::from_rows(vec![
            vec![rat(1, 2), rat_int(3)],
            vec![rat_int(0), rat_int(1)],
        ]);
        assert_eq!(height(&m2).unwrap(), BigInt::from(6));
        assert!(matches!(height(&Mat::zero(2)), Err(ArithError::ZeroMatrix)));
    }

    #[test]
    fn height_projective_invariance() {
        let m = Mat::from_rows(vec![
            vec![rat(1, 2), rat_int(3)],
            vec![rat_int(0), rat_int(1)],
        ]);
        let h = height(&m).unwrap();
        for c in [rat(3, 7), rat_int(-5), rat(1, 12)] {
            assert_eq!(height(&m.scale(&c)).unwrap(), h);
        }
    }

    #[test]
    fn kernel_basis_primitive() {
        let m = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rat_int(2), rat_int(-1)]);
    }
}
