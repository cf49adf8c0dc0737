//! Characteristic and minimal polynomials, rational diagonalizability,
//! simultaneous diagonalization of commuting families, and torsion-order
//! detection via cyclotomic factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{mat_pow, primitive_integer_vector, Mat, Rat};

/// Dense univariate polynomial over the rationals, coefficients in
/// ascending degree order, canonical (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a * b;
            }
        }
        Poly::new(out)
    }

    /// Exact Euclidean division: `self = q·div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = div.coeffs.len();
        if rem.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dn + 1];
        let lead = div.leading();
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn - 1].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (j, d) in div.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        let (_, r) = other.div_rem(self);
        r.is_zero()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_mat(&self, a: &Mat) -> Mat {
        let n = a.dim();
        let mut acc = Mat::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).unwrap();
            for i in 0..n {
                let v = acc.at(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Squarefree part: `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// All rational roots with multiplicity, ascending.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.is_zero() {
            return vec![];
        }
        let mut f = self.clone();
        let mut roots = Vec::new();
        // strip powers of x
        while !f.coeffs.is_empty() && f.coeffs[0].is_zero() {
            roots.push(Rat::zero());
            f = Poly::new(f.coeffs[1..].to_vec());
        }
        if f.degree() == 0 {
            roots.sort();
            return roots;
        }
        // clear denominators to an integer polynomial
        let mut den = BigInt::one();
        for c in &f.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = f
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let lead = ints.last().unwrap().abs();
        let cons = ints[0].abs();
        let mut candidates: Vec<Rat> = Vec::new();
        for p in divisors_big(&cons) {
            for q in divisors_big(&lead) {
                if p.gcd(&q).is_one() {
                    candidates.push(Rat::new(p.clone(), q.clone()));
                    candidates.push(Rat::new(-p.clone(), q));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            while f.degree() >= 1 && f.eval(&cand).is_zero() {
                let lin = Poly::new(vec![-cand.clone(), Rat::one()]);
                let (q, r) = f.div_rem(&lin);
                debug_assert!(r.is_zero());
                f = q;
                roots.push(cand.clone());
            }
        }
        roots.sort();
        roots
    }
}

fn divisors_big(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let n = n.abs();
    let mut divs = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            divs.push(i.clone());
            let j = &n / &i;
            if j != i {
                divs.push(j);
            }
        }
        i += 1u32;
    }
    divs
}

/// Monic characteristic polynomial via the Faddeev-LeVerrier recurrence.
pub fn char_poly(a: &Mat) -> Poly {
    let n = a.dim();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m = a.clone();
    for k in 1..=n {
        let trace = (0..n).fold(Rat::zero(), |acc, i| acc + m.at(i, i));
        let c = -trace / Rat::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = m.clone();
            for i in 0..n {
                let v = shifted.at(i, i) + &c;
                shifted.set(i, i, v);
            }
            m = a.mul(&shifted).unwrap();
        }
    }
    Poly::new(coeffs)
}

/// Minimal polynomial: smallest monic divisor of the squarefree-refined
/// characteristic polynomial chain annihilating the matrix.
pub fn minimal_poly(a: &Mat) -> Poly {
    // build from the distinct irreducible-ish factors by increasing the
    // multiplicity of each squarefree factor until it annihilates
    let cp = char_poly(a);
    let mut m = cp.squarefree_part();
    loop {
        if m.eval_mat(a).is_zero() {
            return m;
        }
        // raise multiplicities one squarefree layer at a time
        let (q, r) = cp.div_rem(&m);
        assert!(r.is_zero(), "candidate must divide the characteristic polynomial");
        let extra = m.gcd(&q);
        assert!(extra.degree() >= 1, "minimal polynomial search stalled");
        m = m.mul(&extra).monic();
    }
}

/// True iff the minimal polynomial is squarefree (gcd with its derivative
/// is constant).
pub fn is_diagonalizable(a: &Mat) -> bool {
    // equivalent, cheaper test: the squarefree part of the characteristic
    // polynomial annihilates the matrix
    char_poly(a).squarefree_part().eval_mat(a).is_zero()
}

/// Eigendecomposition with rational spectrum: `A = T · diag(eigenvalues) · T^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSystem {
    pub t: Mat,
    pub eigenvalues: Vec<Rat>,
}

/// Present iff `A` is diagonalizable with all-rational spectrum.
/// Eigenvalues ascend; eigenvector columns are primitive integer vectors
/// with positive leading entry, so the output is deterministic.
pub fn rational_eigensystem(a: &Mat) -> Option<EigenSystem> {
    let n = a.dim();
    let cp = char_poly(a);
    let roots = cp.rational_roots();
    if roots.len() != n {
        return None;
    }
    let mut distinct = roots.clone();
    distinct.dedup();
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    let mut eigenvalues = Vec::new();
    for lambda in &distinct {
        let mut shifted = a.clone();
        for i in 0..n {
            let v = shifted.at(i, i) - lambda;
            shifted.set(i, i, v);
        }
        for v in shifted.kernel_basis() {
            columns.push(v);
            eigenvalues.push(lambda.clone());
        }
    }
    if columns.len() != n {
        return None; // deficient eigenspaces: not diagonalizable
    }
    let t = mat_from_columns(&columns);
    Some(EigenSystem { t, eigenvalues })
}

pub fn mat_from_columns(cols: &[Vec<Rat>]) -> Mat {
    let n = cols.len();
    let mut t = Mat::zero(n);
    for (j, col) in cols.iter().enumerate() {
        assert_eq!(col.len(), n);
        for (i, v) in col.iter().enumerate() {
            t.set(i, j, v.clone());
        }
    }
    t
}

/// Outcome of a simultaneous diagonalization attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimDiag {
    /// `T^-1 · A_j · T` is diagonal for every j; `eigenvalues[i][j]` is the
    /// i-th diagonal entry of the j-th conjugated matrix.
    Diagonalized { t: Mat, eigenvalues: Vec<Vec<Rat>> },
    /// Some pair of inputs does not commute.
    NonCommuting,
    /// Some input is not diagonalizable with rational spectrum.
    Inapplicable,
}

/// Simultaneous diagonalization of a commuting family by recursive common
/// eigenspace refinement. Matrices are processed in input order and
/// eigenvalues in ascending order, so the result is deterministic.
pub fn simultaneous_diagonalize(mats: &[Mat]) -> SimDiag {
    assert!(!mats.is_empty());
    let n = mats[0].dim();
    assert!(mats.iter().all(|m| m.dim() == n), "dimension mismatch");
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            if mats[i].mul(&mats[j]).unwrap() != mats[j].mul(&mats[i]).unwrap() {
                return SimDiag::NonCommuting;
            }
        }
    }
    for m in mats {
        if rational_eigensystem(m).is_none() {
            return SimDiag::Inapplicable;
        }
    }
    // subspaces invariant under every remaining matrix, refined one matrix
    // at a time
    let identity_cols: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut subspaces: Vec<Vec<Vec<Rat>>> = vec![identity_cols];
    for a in mats {
        let mut refined = Vec::new();
        for basis in &subspaces {
            let d = basis.len();
            // restriction M with A·basis = basis·M
            let images: Vec<Vec<Rat>> = basis.iter().map(|v| a.mul_vec(v)).collect();
            let coords = solve_in_span(basis, &images)
                .expect("invariant subspace must be closed under a commuting matrix");
            let mut restriction = Mat::zero(d);
            for (k, coord) in coords.iter().enumerate() {
                for l in 0..d {
                    restriction.set(l, k, coord[l].clone());
                }
            }
            let es = rational_eigensystem(&restriction)
                .expect("restriction of a diagonalizable matrix stays diagonalizable");
            // group eigenvector columns of the restriction by eigenvalue
            let mut idx = 0usize;
            while idx < d {
                let lambda = es.eigenvalues[idx].clone();
                let mut sub = Vec::new();
                while idx < d && es.eigenvalues[idx] == lambda {
                    // map the coordinate vector back into ambient space
                    let mut v = vec![Rat::zero(); n];
                    for l in 0..d {
                        let c = es.t.at(l, idx).clone();
                        for (vi, bi) in v.iter_mut().zip(&basis[l]) {
                            *vi = vi.clone() + c.clone() * bi;
                        }
                    }
                    sub.push(primitive_integer_vector(&v));
                    idx += 1;
                }
                refined.push(sub);
            }
        }
        subspaces = refined;
    }
    let columns: Vec<Vec<Rat>> = subspaces.into_iter().flatten().collect();
    let t = mat_from_columns(&columns);
    let t_inv = t.inverse().expect("eigenvector basis must be invertible");
    let mut eigenvalues = vec![vec![Rat::zero(); mats.len()]; n];
    for (j, a) in mats.iter().enumerate() {
        let conj = t_inv.mul(a).unwrap().mul(&t).unwrap();
        for (i, row) in eigenvalues.iter_mut().enumerate() {
            row[j] = conj.at(i, i).clone();
        }
    }
    SimDiag::Diagonalized { t, eigenvalues }
}

/// Expresses each target vector in the span of `basis`; `None` if one of
/// them falls outside.
fn solve_in_span(basis: &[Vec<Rat>], targets: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = basis[0].len();
    let d = basis.len();
    let t = targets.len();
    // augmented elimination on [basis | targets]
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.extend(targets.iter().map(|v| v[i].clone()));
            row
        })
        .collect();
    let width = d + t;
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..d {
        let piv = (row..n).find(|&r| !m[r][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(piv, row);
        let inv = m[row][col].recip();
        for j in 0..width {
            m[row][j] = &m[row][j] * &inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..width {
                    m[r][j] = &m[r][j] - &f * &m[row][j];
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // rows beyond the pivot rows must be all-zero on the target side
    for r in row..n {
        if m[r][d..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let mut out = vec![vec![Rat::zero(); d]; t];
    for (r, c) in pivots {
        for (k, coord) in out.iter_mut().enumerate() {
            coord[c] = m[r][d + k].clone();
        }
    }
    Some(out)
}

/// Euler totient, for bounding which cyclotomic orders can occur.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial, by recursive division of `x^m - 1`.
pub fn cyclotomic_poly(m: u64) -> Poly {
    let mut xm1 = vec![Rat::zero(); m as usize + 1];
    xm1[0] = -Rat::one();
    xm1[m as usize] = Rat::one();
    let mut f = Poly::new(xm1);
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = f.div_rem(&cyclotomic_poly(d));
            debug_assert!(r.is_zero());
            f = q;
        }
    }
    f
}

/// The minimal `k >= 1` with `A^k = I`, or `None` when no such power
/// exists. The characteristic polynomial must factor entirely into
/// cyclotomic polynomials of degree at most n, and the matrix must be
/// diagonalizable.
pub fn torsion_order(a: &Mat) -> Option<u64> {
    let n = a.dim() as u64;
    if !is_diagonalizable(a) {
        return None;
    }
    let mut f = char_poly(a);
    let mut lcm = 1u64;
    let m_max = 2 * n * n + 2;
    for m in 1..=m_max {
        if euler_phi(m) > n {
            continue;
        }
        let phi_m = cyclotomic_poly(m);
        while phi_m.degree() <= f.degree() && phi_m.divides(&f) {
            let (q, _) = f.div_rem(&phi_m);
            f = q;
            lcm = lcm.lcm(&m);
            if f.degree() == 0 {
                break;
            }
        }
    }
    if f != Poly::one() {
        return None;
    }
    // verify and minimize over divisors of the lcm
    let mut best = None;
    let mut d = 1u64;
    while d * d <= lcm {
        if lcm % d == 0 {
            for cand in [d, lcm / d] {
                if mat_pow(a, cand as i64).unwrap().is_identity() {
                    best = Some(best.map_or(cand, |b: u64| b.min(cand)));
                }
            }
        }
        d += 1;
    }
    assert!(best.is_some(), "cyclotomic factorization promised torsion");
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn char_poly_examples() {
        let d = Mat::diagonal(&[rat_int(2), rat_int(3)]);
        assert_eq!(char_poly(&d), Poly::from_i64(&[6, -5, 1]));
        let rot = Mat::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&rot), Poly::from_i64(&[1, 0, 1]));
        let jordan = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(char_poly(&jordan), Poly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn diagonalizable_examples() {
        assert!(!is_diagonalizable(&Mat::from_i64_rows(&[&[1, 1], &[0, 1]])));
        assert!(is_diagonalizable(&Mat::from_i64_rows(&[&[1, 7], &[7, -2]])));
        assert!(is_diagonalizable(&Mat::from_i64_rows(&[&[0, -1], &[1, 0]])));
    }

    #[test]
    fn eigensystem_examples() {
        let d = Mat::diagonal(&[rat_int(2), rat_int(3)]);
        let es = rational_eigensystem(&d).unwrap();
        assert_eq!(es.t, Mat::identity(2));
        assert_eq!(es.eigenvalues, vec![rat_int(2), rat_int(3)]);

        let swap = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let es = rational_eigensystem(&swap).unwrap();
        assert_eq!(es.eigenvalues, vec![rat_int(-1), rat_int(1)]);
        let dmat = Mat::diagonal(&es.eigenvalues);
        let back = es
            .t
            .mul(&dmat)
            .unwrap()
            .mul(&es.t.inverse().unwrap())
            .unwrap();
        assert_eq!(back, swap);

        assert!(rational_eigensystem(&Mat::from_i64_rows(&[&[0, -1], &[1, 0]])).is_none());
        assert!(rational_eigensystem(&Mat::from_i64_rows(&[&[1, 1], &[0, 1]])).is_none());
    }

    #[test]
    fn simdiag_single() {
        let d = Mat::diagonal(&[rat_int(2), rat_int(3)]);
        match simultaneous_diagonalize(&[d]) {
            SimDiag::Diagonalized { t, eigenvalues } => {
                assert_eq!(t, Mat::identity(2));
                assert_eq!(eigenvalues, vec![vec![rat_int(2)], vec![rat_int(3)]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn simdiag_commuting_pair() {
        let a = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let b = Mat::from_i64_rows(&[&[2, 3], &[3, 2]]);
        match simultaneous_diagonalize(&[a.clone(), b.clone()]) {
            SimDiag::Diagonalized { t, eigenvalues } => {
                let tinv = t.inverse().unwrap();
                for (m, col) in [(a, 0), (b, 1)] {
                    let conj = tinv.mul(&m).unwrap().mul(&t).unwrap();
                    for i in 0..2 {
                        for j in 0..2 {
                            if i != j {
                                assert!(conj.at(i, j).is_zero());
                            }
                        }
                        assert_eq!(conj.at(i, i), &eigenvalues[i][col]);
                    }
                }
                // eigenvalue content: first matrix sorts ascending
                let flat: Vec<Rat> = eigenvalues.iter().map(|r| r[0].clone()).collect();
                assert_eq!(flat, vec![rat_int(-1), rat_int(1)]);
                let second: Vec<Rat> = eigenvalues.iter().map(|r| r[1].clone()).collect();
                assert_eq!(second, vec![rat_int(-1), rat_int(5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn simdiag_rejects() {
        let nilp = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            simultaneous_diagonalize(&[nilp, Mat::identity(2)]),
            SimDiag::Inapplicable
        );
        let a = Mat::from_i64_rows(&[&[1, 1], &[0, 2]]);
        let b = Mat::from_i64_rows(&[&[1, 0], &[1, 2]]);
        assert_eq!(simultaneous_diagonalize(&[a, b]), SimDiag::NonCommuting);
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), Poly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(&Mat::identity(2)), Some(1));
        let rot = Mat::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(torsion_order(&rot), Some(4));
        assert_eq!(torsion_order(&Mat::diagonal(&[rat_int(2), rat_int(1)])), None);
        let order6 = Mat::from_i64_rows(&[&[1, -1], &[1, 0]]);
        assert_eq!(torsion_order(&order6), Some(6));
        let neg = Mat::diagonal(&[rat_int(-1), rat_int(-1)]);
        assert_eq!(torsion_order(&neg), Some(2));
        let order3 = Mat::from_i64_rows(&[&[0, -1], &[1, -1]]);
        assert_eq!(torsion_order(&order3), Some(3));
    }

    #[test]
    fn torsion_minimality() {
        let rot = Mat::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let k = torsion_order(&rot).unwrap();
        assert!(mat_pow(&rot, k as i64).unwrap().is_identity());
        for d in 1..k {
            if k % d == 0 {
                assert!(!mat_pow(&rot, d as i64).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn crystallographic_orders_small_scan() {
        // small sample of the full [-3,3] scan done in acceptance
        let mut seen = std::collections::BTreeSet::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        let m = Mat::from_i64_rows(&[&[a, b], &[c, d]]);
                        if let Some(k) = torsion_order(&m) {
                            seen.insert(k);
                        }
                    }
                }
            }
        }
        assert!(seen.iter().all(|k| [1, 2, 3, 4, 6].contains(k)));
    }

    #[test]
    fn rational_roots_multiplicity() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = Poly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.rational_roots(), vec![rat_int(-2), rat_int(1), rat_int(1)]);
        // 2x^2 - x => roots 0, 1/2
        let q = Poly::from_i64(&[0, -1, 2]);
        assert_eq!(q.rational_roots(), vec![rat_int(0), rat(1, 2)]);
    }

    #[test]
    fn minimal_poly_jordan() {
        let j = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(minimal_poly(&j), Poly::from_i64(&[1, -2, 1]));
        let d = Mat::diagonal(&[rat_int(2), rat_int(2)]);
        assert_eq!(minimal_poly(&d), Poly::from_i64(&[-2, 1]));
    }
}
