//! Integer linear algebra: Hermite normal form, integer kernel lattices and
//! particular solutions of linear Diophantine systems.
//!
//! Kernel bases carry a checkable logarithmic height bound
//! `m·h(U) + (m/2)·log m` (with `h` the log of the largest absolute entry);
//! bases are size-reduced, falling back to LLL, so the bound holds at the
//! scales this library targets, and the computation fails loudly otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rat;

/// Rectangular arbitrary-precision integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert!(rows >= 1 && cols >= 1);
        assert_eq!(entries.len(), rows * cols);
        IntMat { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        IntMat::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j) * &v[j])
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Natural log of the largest absolute entry; zero for the zero matrix.
    pub fn log_height(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| big_log(e))
            .fold(0.0f64, f64::max)
    }
}

fn big_log(x: &BigInt) -> f64 {
    let a = x.abs();
    if a <= BigInt::one() {
        return 0.0;
    }
    // exact enough for bound checking at the magnitudes in play
    let bits = a.bits();
    if bits <= 52 {
        (a.to_f64().unwrap()).ln()
    } else {
        let shifted = &a >> (bits - 52);
        shifted.to_f64().unwrap().ln() + (bits - 52) as f64 * std::f64::consts::LN_2
    }
}

pub fn vec_log_height(v: &[BigInt]) -> f64 {
    v.iter().map(big_log).fold(0.0f64, f64::max)
}

/// Basis of an integer kernel lattice, rows in Hermite normal form
/// (LLL-reduced instead when HNF would break the height bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub ambient: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn from_i64_rows(ambient: usize, rows: &[&[i64]]) -> Self {
        let basis = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ambient);
                r.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        KernelBasis { ambient, basis }
    }
}

/// Row Hermite normal form: returns `(H, T)` with `T` unimodular and
/// `H = T·U`. Pivots are positive; entries above a pivot are reduced into
/// `[0, pivot)`.
pub fn hnf(u: &IntMat) -> (IntMat, IntMat) {
    let (m, n) = (u.rows, u.cols);
    let mut h = u.clone();
    let mut t = IntMat::identity(m);
    let mut r = 0usize;
    for col in 0..n {
        if r >= m {
            break;
        }
        // gcd-reduce the column below the pivot row
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h.at(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h.at(i, col).abs() < h.at(b, col).abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(best) = best else { break };
            if best != r {
                swap_rows(&mut h, r, best);
                swap_rows(&mut t, r, best);
            }
            let mut done = true;
            let pivot = h.at(r, col).clone();
            for i in (r + 1)..m {
                if !h.at(i, col).is_zero() {
                    let q = rounded_div(h.at(i, col), &pivot);
                    row_sub(&mut h, i, r, &q);
                    row_sub(&mut t, i, r, &q);
                    if !h.at(i, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(r, col).is_zero() {
            continue;
        }
        if h.at(r, col).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut t, r);
        }
        let pivot = h.at(r, col).clone();
        for i in 0..r {
            let q = h.at(i, col).div_floor(&pivot);
            if !q.is_zero() {
                row_sub(&mut h, i, r, &q);
                row_sub(&mut t, i, r, &q);
            }
        }
        r += 1;
    }
    (h, t)
}

fn swap_rows(m: &mut IntMat, a: usize, b: usize) {
    for j in 0..m.cols {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for j in 0..m.cols {
        let v = -m.at(r, j).clone();
        m.set(r, j, v);
    }
}

/// row_i -= q * row_j
fn row_sub(m: &mut IntMat, i: usize, j: usize, q: &BigInt) {
    for c in 0..m.cols {
        let v = m.at(i, c) - q * m.at(j, c);
        m.set(i, c, v);
    }
}

/// Division rounding to nearest, used inside the gcd loop to shrink
/// remainders fast.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if BigInt::from(2) * r.abs() > b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}

/// Basis of the full integer kernel `{ y : U·y = 0 }`.
///
/// The basis comes out of the HNF transform of the transpose and is then
/// canonicalized; if its height exceeds the bound `m·h(U) + (m/2)·log m`,
/// an LLL reduction is applied before giving up.
pub fn integer_kernel(u: &IntMat) -> KernelBasis {
    let n = u.cols;
    let (h, t) = hnf(&u.transpose());
    let mut vectors = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().all(|x| x.is_zero()) {
            vectors.push(t.row(i).to_vec());
        }
    }
    if vectors.is_empty() {
        return KernelBasis {
            ambient: n,
            basis: vec![],
        };
    }
    let (canon, _) = hnf(&IntMat::from_rows(vectors));
    let mut basis: Vec<Vec<BigInt>> = (0..canon.rows)
        .filter(|&i| canon.row(i).iter().any(|x| !x.is_zero()))
        .map(|i| canon.row(i).to_vec())
        .collect();
    let bound = kernel_height_bound(u);
    if basis.iter().any(|v| vec_log_height(v) > bound) {
        basis = lll_reduce(basis);
        for v in &basis {
            assert!(
                vec_log_height(v) <= bound,
                "kernel basis vector exceeds its height bound even after LLL"
            );
        }
    }
    KernelBasis { ambient: n, basis }
}

/// The guaranteed generating-set bound `m·h(U) + (m/2)·log m`.
pub fn kernel_height_bound(u: &IntMat) -> f64 {
    let m = u.rows as f64;
    m * u.log_height() + 0.5 * m * m.max(1.0).ln()
}

/// Solves `U·y = b` over the integers. Returns a particular solution
/// (size-reduced against the kernel) together with the kernel lattice, or
/// `None` if the system has no integer solution.
pub fn solve_dioph(u: &IntMat, b: &[BigInt]) -> Option<(Vec<BigInt>, KernelBasis)> {
    assert_eq!(b.len(), u.rows);
    let (h, t) = hnf(&u.transpose());
    // solve x·H = b by forward substitution down the echelon rows
    let mut residual = b.to_vec();
    let mut x = vec![BigInt::zero(); h.rows];
    for i in 0..h.rows {
        let Some(col) = h.row(i).iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let (q, r) = residual[col].div_rem(h.at(i, col));
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for c in 0..h.cols {
                residual[c] = &residual[c] - &q * h.at(i, c);
            }
        }
        x[i] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    // y^T = x·T
    let n = u.cols;
    let mut y = vec![BigInt::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for c in 0..n {
            y[c] = &y[c] + xi * t.at(i, c);
        }
    }
    let kernel = integer_kernel(u);
    let reduced = lll_reduce(kernel.basis.clone());
    size_reduce_against(&mut y, &reduced);
    Some((y, kernel))
}

/// Babai-style rounding passes shrinking `y` modulo the lattice rows.
fn size_reduce_against(y: &mut [BigInt], basis: &[Vec<BigInt>]) {
    if basis.is_empty() {
        return;
    }
    for _ in 0..32 {
        let mut changed = false;
        for v in basis {
            let dot: BigInt = y.iter().zip(v).map(|(a, b)| a * b).sum();
            let norm: BigInt = v.iter().map(|b| b * b).sum();
            if norm.is_zero() {
                continue;
            }
            let c = rounded_div(&dot, &norm);
            if !c.is_zero() {
                for (yi, vi) in y.iter_mut().zip(v) {
                    *yi -= &c * vi;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// True iff `v` is an integer combination of the basis rows.
pub fn lattice_member(k: &KernelBasis, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), k.ambient, "ambient dimension mismatch");
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if k.basis.is_empty() {
        return false;
    }
    let (h, _) = hnf(&IntMat::from_rows(k.basis.clone()));
    // x·H = v, forward substitution as in solve_dioph
    let mut residual = v.to_vec();
    for i in 0..h.rows {
        let Some(col) = h.row(i).iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let (q, r) = residual[col].div_rem(h.at(i, col));
        if !r.is_zero() {
            return false;
        }
        if !q.is_zero() {
            for c in 0..h.cols {
                residual[c] = &residual[c] - &q * h.at(i, c);
            }
        }
    }
    residual.iter().all(|x| x.is_zero())
}

/// Canonical HNF basis (nonzero rows) for the lattice spanned by the given
/// vectors; empty input or all-zero input gives an empty basis.
pub fn hnf_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return vec![];
    }
    let (h, _) = hnf(&IntMat::from_rows(vectors.to_vec()));
    (0..h.rows)
        .map(|i| h.row(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Integer LLL reduction (delta = 0.99) with exact rational Gram-Schmidt.
pub fn lll_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if basis.len() <= 1 {
        return basis;
    }
    let delta = Rat::new(BigInt::from(99), BigInt::from(100));
    let n = basis.len();
    let _dot = |a: &[BigInt], b: &[BigInt]| -> Rat {
        Rat::from_integer(a.iter().zip(b).map(|(x, y)| x * y).sum())
    };
    // mu[i][j] and squared GS norms, recomputed after each swap; basis sizes
    // here are tiny so the simple quadratic recompute is fine
    let gram = |basis: &[Vec<BigInt>]| -> (Vec<Vec<Rat>>, Vec<Rat>) {
        let k = basis.len();
        let mut mu = vec![vec![Rat::zero(); k]; k];
        let mut star: Vec<Vec<Rat>> = Vec::with_capacity(k);
        let mut norms = vec![Rat::zero(); k];
        for i in 0..k {
            let mut v: Vec<Rat> = basis[i]
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect();
            for j in 0..i {
                if norms[j].is_zero() {
                    continue;
                }
                let proj = basis[i]
                    .iter()
                    .zip(&star[j])
                    .map(|(x, y)| Rat::from_integer(x.clone()) * y)
                    .fold(Rat::zero(), |a, b| a + b)
                    / norms[j].clone();
                mu[i][j] = proj.clone();
                for (vc, sc) in v.iter_mut().zip(&star[j]) {
                    *vc = vc.clone() - proj.clone() * sc;
                }
            }
            norms[i] = v.iter().map(|x| x * x).fold(Rat::zero(), |a, b| a + b);
            star.push(v);
        }
        (mu, norms)
    };
    let mut k = 1usize;
    while k < n {
        let (mu, _) = gram(&basis);
        // size reduction of b_k against earlier vectors
        let mut mu_k = mu[k].clone();
        for j in (0..k).rev() {
            let c = round_rat(&mu_k[j]);
            if !c.is_zero() {
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &c * y;
                }
                let cr = Rat::from_integer(c);
                for t in 0..j {
                    let adj = mu_k[t].clone() - cr.clone() * mu[j][t].clone();
                    mu_k[t] = adj;
                }
                mu_k[j] = mu_k[j].clone() - cr;
            }
        }
        let (mu, norms2) = gram(&basis);
        let lovasz = (delta.clone() - mu[k][k - 1].clone() * mu[k][k - 1].clone())
            * norms2[k - 1].clone();
        if norms2[k] >= lovasz || norms2[k - 1].is_zero() {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = k.max(2) - 1;
            if k == 0 {
                k = 1;
            }
        }
    }
    basis
}

fn round_rat(r: &Rat) -> BigInt {
    let two = BigInt::from(2);
    let num = r.numer() * &two + r.denom();
    num.div_floor(&(r.denom() * &two))
}

pub fn bigvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf(u: &IntMat) {
        let (h, t) = hnf(u);
        // T·U = H
        for i in 0..u.rows {
            for j in 0..u.cols {
                let mut s = BigInt::zero();
                for k in 0..u.rows {
                    s += t.at(i, k) * u.at(k, j);
                }
                assert_eq!(&s, h.at(i, j));
            }
        }
    }

    #[test]
    fn hnf_identity() {
        let u = IntMat::identity(2);
        let (h, t) = hnf(&u);
        assert_eq!(h, IntMat::identity(2));
        assert_eq!(t, IntMat::identity(2));
    }

    #[test]
    fn hnf_gcd_column() {
        let u = IntMat::from_i64_rows(&[&[2], &[4]]);
        let (h, _) = hnf(&u);
        assert_eq!(h.at(0, 0), &BigInt::from(2));
        assert!(h.at(1, 0).is_zero());
        check_hnf(&u);
    }

    #[test]
    fn hnf_2x2() {
        let u = IntMat::from_i64_rows(&[&[4, 6], &[2, 4]]);
        let (h, t) = hnf(&u);
        assert_eq!(h.at(0, 0), &BigInt::from(2));
        check_hnf(&u);
        // T unimodular: |det T| = 1
        let det = t.at(0, 0) * t.at(1, 1) - t.at(0, 1) * t.at(1, 0);
        assert_eq!(det.abs(), BigInt::one());
    }

    #[test]
    fn kernel_simple() {
        let u = IntMat::from_i64_rows(&[&[2, -1]]);
        let k = integer_kernel(&u);
        assert_eq!(k.basis, vec![bigvec(&[1, 2])]);
    }

    #[test]
    fn kernel_trivial() {
        let u = IntMat::identity(3);
        let k = integer_kernel(&u);
        assert!(k.basis.is_empty());
    }

    #[test]
    fn kernel_rank2() {
        let u = IntMat::from_i64_rows(&[&[1, 2, 3]]);
        let k = integer_kernel(&u);
        assert_eq!(k.rank(), 2);
        for v in &k.basis {
            let prod = u.mul_vec(v);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
        // every brute-force kernel vector in the box lies in the lattice
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -5i64..=5 {
                    if a + 2 * b + 3 * c == 0 {
                        assert!(lattice_member(&k, &bigvec(&[a, b, c])));
                    }
                }
            }
        }
    }

    #[test]
    fn solve_dioph_examples() {
        let u = IntMat::from_i64_rows(&[&[2]]);
        let (y, _) = solve_dioph(&u, &bigvec(&[4])).unwrap();
        assert_eq!(y, bigvec(&[2]));
        assert!(solve_dioph(&u, &bigvec(&[3])).is_none());

        let u2 = IntMat::from_i64_rows(&[&[1, 1], &[1, -1]]);
        let (y2, _) = solve_dioph(&u2, &bigvec(&[2, 0])).unwrap();
        assert_eq!(y2, bigvec(&[1, 1]));
    }

    #[test]
    fn lattice_member_examples() {
        let k = KernelBasis::from_i64_rows(2, &[&[1, 2]]);
        assert!(lattice_member(&k, &bigvec(&[3, 6])));
        assert!(!lattice_member(&k, &bigvec(&[1, 1])));
        let k3 = KernelBasis::from_i64_rows(3, &[&[-2, 1, 0], &[-3, 0, 1]]);
        assert!(lattice_member(&k3, &bigvec(&[-5, 1, 1])));
    }

    #[test]
    fn kernel_matches_bruteforce_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=4);
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
                .collect();
            let u = IntMat::from_rows(rows);
            let k = integer_kernel(&u);
            for v in &k.basis {
                assert!(u.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            // every brute-force kernel vector in [-6,6]^n is a member
            let mut idx = vec![-6i64; n];
            loop {
                let v = bigvec(&idx);
                if u.mul_vec(&v).iter().all(|x| x.is_zero()) {
                    assert!(lattice_member(&k, &v), "missing {idx:?}");
                }
                let mut c = 0;
                loop {
                    idx[c] += 1;
                    if idx[c] <= 6 {
                        break;
                    }
                    idx[c] = -6;
                    c += 1;
                    if c == n {
                        break;
                    }
                }
                if c == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn eg_height_bound_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-99i64..=99)))
                        .collect()
                })
                .collect();
            let u = IntMat::from_rows(rows);
            let k = integer_kernel(&u);
            let bound = kernel_height_bound(&u);
            for v in &k.basis {
                assert!(vec_log_height(v) <= bound + 1e-9);
            }
        }
    }

    #[test]
    fn solve_dioph_height_bound() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                        .collect()
                })
                .collect();
            let u = IntMat::from_rows(rows);
            // build a solvable b from a random y
            let y0: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            let b = u.mul_vec(&y0);
            let (y, _) = solve_dioph(&u, &b).unwrap();
            assert_eq!(u.mul_vec(&y), b);
            let mut rows: Vec<Vec<BigInt>> = (0..u.rows)
                .map(|i| u.row(i).to_vec())
                .collect();
            for (i, bi) in b.iter().enumerate() {
                rows[i].push(bi.clone());
            }
            let aug = IntMat::from_rows(rows);
            let bound = (u.rows as f64) * aug.log_height()
                + 0.5 * (u.rows as f64) * (u.rows as f64).max(1.0).ln();
            assert!(vec_log_height(&y) <= bound + 1e-9);
        }
    }
}
