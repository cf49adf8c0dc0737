//! The discrete Heisenberg group over the rationals: upper unitriangular
//! 3x3 matrices stored by their three free entries, with closed-form
//! powers and exact solution of the identity equations
//! A1^k1 A2^k2 A3^k3 = I and A1^k1 A2^k2 = I.
//!
//! The defining polynomial system is generated from the group law over a
//! polynomial ring rather than transcribed, so the solver can never drift
//! from the arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{rat, Rat};
use crate::lattice::{hnf_basis, integer_kernel, lattice_member, IntMat, KernelBasis};

/// Scalars the group law is written over: the rationals themselves and
/// polynomial rings containing them.
pub trait HeisScalar: Clone + PartialEq {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// A constant of the ambient ring (`self` only supplies context).
    fn embed(&self, r: &Rat) -> Self;
}

impl HeisScalar for Rat {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn embed(&self, r: &Rat) -> Self {
        r.clone()
    }
}

/// Heisenberg group element: the (1,2), (2,3) and (1,3) entries of an
/// upper unitriangular 3x3 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisMat<S = Rat> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: HeisScalar> HeisMat<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        HeisMat { a, b, c }
    }
}

impl HeisMat<Rat> {
    pub fn identity() -> Self {
        HeisMat::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        HeisMat::new(
            Rat::from_integer(a.into()),
            Rat::from_integer(b.into()),
            Rat::from_integer(c.into()),
        )
    }

    pub fn inverse(&self) -> Self {
        HeisMat::new(-&self.a, -&self.b, &self.a * &self.b - &self.c)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

/// Group law: (a1+a2, b1+b2, c1+c2+a1 b2).
pub fn heis_mul<S: HeisScalar>(m1: &HeisMat<S>, m2: &HeisMat<S>) -> HeisMat<S> {
    HeisMat::new(
        m1.a.add(&m2.a),
        m1.b.add(&m2.b),
        m1.c.add(&m2.c).add(&m1.a.mul(&m2.b)),
    )
}

/// Closed-form power with a ring-element exponent:
/// (k a, k b, k c + k(k-1)/2 a b). For integer k this is the k-th group
/// power, negatives included.
pub fn heis_pow_scalar<S: HeisScalar>(m: &HeisMat<S>, k: &S) -> HeisMat<S> {
    let half = k.embed(&rat(1, 2));
    let tri = k.mul(k).sub(k).mul(&half); // k(k-1)/2
    HeisMat::new(
        k.mul(&m.a),
        k.mul(&m.b),
        k.mul(&m.c).add(&tri.mul(&m.a).mul(&m.b)),
    )
}

/// Integer power via the closed form.
pub fn heis_pow(m: &HeisMat<Rat>, k: i64) -> HeisMat<Rat> {
    heis_pow_scalar(m, &Rat::from_integer(k.into()))
}

/// Sparse multivariate polynomial over the rationals; exponent vectors of
/// fixed length `nv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nv: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nv: usize) -> Self {
        MPoly {
            nv,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nv: usize, r: Rat) -> Self {
        let mut p = MPoly::zero(nv);
        if !r.is_zero() {
            p.terms.insert(vec![0; nv], r);
        }
        p
    }

    pub fn var(nv: usize, i: usize) -> Self {
        assert!(i < nv);
        let mut e = vec![0u32; nv];
        e[i] = 1;
        let mut p = MPoly::zero(nv);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        let zero = entry.is_zero();
        if zero {
            // re-fetch key: remove zeroed term
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    /// Replaces every variable by the given polynomial (all in one target
    /// ring).
    pub fn substitute(&self, vals: &[MPoly]) -> MPoly {
        assert_eq!(vals.len(), self.nv);
        let out_nv = vals.first().map(|p| p.nv).unwrap_or(0);
        let mut out = MPoly::zero(out_nv);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(out_nv, c.clone());
            for (i, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    term = term.mul(&vals[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl HeisScalar for MPoly {
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nv, other.nv);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nv, other.nv);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nv, other.nv);
        let mut out = MPoly::zero(self.nv);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    fn embed(&self, r: &Rat) -> Self {
        MPoly::constant(self.nv, r.clone())
    }
}

/// Classification of a Heisenberg identity solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeisKind {
    /// All identity solutions form the stored lattice; the original
    /// problem additionally demands every coordinate nonzero.
    LatticeWithNonzeroFilter,
    /// Finitely many all-nonzero solutions, listed exhaustively.
    Finite,
    /// No all-nonzero solution.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisSolutionSet {
    pub kind: HeisKind,
    pub lattice: Option<KernelBasis>,
    pub finite_solutions: Vec<Vec<BigInt>>,
}

impl HeisSolutionSet {
    /// Whether `k` (all coordinates nonzero) belongs to the solution set.
    pub fn admits(&self, k: &[BigInt]) -> bool {
        if k.iter().any(|x| x.is_zero()) {
            return false;
        }
        match self.kind {
            HeisKind::Empty => false,
            HeisKind::Finite => self.finite_solutions.iter().any(|s| s == k),
            HeisKind::LatticeWithNonzeroFilter => {
                lattice_member(self.lattice.as_ref().unwrap(), k)
            }
        }
    }
}

/// All integer triples with every k_i nonzero and A1^k1 A2^k2 A3^k3 = I.
pub fn solve_triple(a1: &HeisMat, a2: &HeisMat, a3: &HeisMat) -> HeisSolutionSet {
    solve_identity(&[a1.clone(), a2.clone(), a3.clone()])
}

/// All integer pairs with both k_i nonzero and A1^k1 A2^k2 = I.
pub fn solve_pair(a1: &HeisMat, a2: &HeisMat) -> HeisSolutionSet {
    solve_identity(&[a1.clone(), a2.clone()])
}

/// Shared solver: generates the defining equations from the group law,
/// solves the two linear ones by integer kernel, and restricts the
/// (1,3)-entry equation to the resulting lattice. The restriction is a
/// quadratic in one parameter on a rank-1 lattice and provably linear on
/// higher-rank lattices (the bilinear term vanishes there because the
/// a- and b-vectors are dependent).
fn solve_identity(mats: &[HeisMat]) -> HeisSolutionSet {
    let s = mats.len();
    // symbolic product over Q[k_1..k_s]
    let lift = |m: &HeisMat| -> HeisMat<MPoly> {
        HeisMat::new(
            MPoly::constant(s, m.a.clone()),
            MPoly::constant(s, m.b.clone()),
            MPoly::constant(s, m.c.clone()),
        )
    };
    let mut e = HeisMat::new(MPoly::zero(s), MPoly::zero(s), MPoly::zero(s));
    for (i, m) in mats.iter().enumerate() {
        let p = heis_pow_scalar(&lift(m), &MPoly::var(s, i));
        e = heis_mul(&e, &p);
    }
    // the two linear equations: coefficient rows cleared to integers
    let lin_rows: Vec<Vec<BigInt>> = [&e.a, &e.b]
        .iter()
        .map(|p| {
            assert!(p.total_degree() <= 1);
            clear_linear(p, s)
        })
        .collect();
    let kernel = integer_kernel(&IntMat::from_rows(lin_rows));
    let r = kernel.rank();
    if r == 0 {
        return empty_set();
    }
    // substitute k_i = sum_j t_j g_{j,i} into the (1,3)-entry equation
    let subs: Vec<MPoly> = (0..s)
        .map(|i| {
            let mut p = MPoly::zero(r);
            for (j, g) in kernel.basis.iter().enumerate() {
                let c = Rat::from_integer(g[i].clone());
                p = p.add(&MPoly::var(r, j).embed(&c).mul(&MPoly::var(r, j)));
            }
            p
        })
        .collect();
    let restricted = e.c.substitute(&subs);
    assert!(restricted.coeff(&vec![0; r]).is_zero(), "k = 0 must solve");
    if r == 1 {
        let g = &kernel.basis[0];
        let beta = restricted.coeff(&[1]);
        let alpha = restricted.coeff(&[2]);
        if alpha.is_zero() && beta.is_zero() {
            return lattice_set(s, vec![g.clone()]);
        }
        if alpha.is_zero() {
            return empty_set();
        }
        let t = -beta / alpha;
        if !t.is_integer() || t.is_zero() {
            return empty_set();
        }
        let ti = t.to_integer();
        let k: Vec<BigInt> = g.iter().map(|x| x * &ti).collect();
        if k.iter().any(|x| x.is_zero()) {
            return empty_set();
        }
        assert!(compose(mats, &k).is_identity());
        return HeisSolutionSet {
            kind: HeisKind::Finite,
            lattice: None,
            finite_solutions: vec![k],
        };
    }
    // rank >= 2 forces dependent a- and b-vectors, so the restriction is
    // linear in the parameters
    assert!(
        restricted.total_degree() <= 1,
        "restricted equation must be linear on a rank-{r} lattice"
    );
    if restricted.is_zero() {
        return lattice_set(s, kernel.basis);
    }
    let row = clear_linear(&restricted, r);
    let tk = integer_kernel(&IntMat::from_rows(vec![row]));
    if tk.rank() == 0 {
        return empty_set();
    }
    // map the parameter sublattice back to exponent space
    let mapped: Vec<Vec<BigInt>> = tk
        .basis
        .iter()
        .map(|t| {
            (0..s)
                .map(|i| {
                    t.iter()
                        .zip(&kernel.basis)
                        .map(|(tj, g)| tj * &g[i])
                        .sum()
                })
                .collect()
        })
        .collect();
    lattice_set(s, hnf_basis(&mapped))
}

fn empty_set() -> HeisSolutionSet {
    HeisSolutionSet {
        kind: HeisKind::Empty,
        lattice: None,
        finite_solutions: vec![],
    }
}

fn lattice_set(ambient: usize, basis: Vec<Vec<BigInt>>) -> HeisSolutionSet {
    HeisSolutionSet {
        kind: HeisKind::LatticeWithNonzeroFilter,
        lattice: Some(KernelBasis { ambient, basis }),
        finite_solutions: vec![],
    }
}

/// prod_i A_i^{k_i} by exact group arithmetic.
pub fn compose(mats: &[HeisMat], k: &[BigInt]) -> HeisMat {
    assert_eq!(mats.len(), k.len());
    let mut acc = HeisMat::identity();
    for (m, e) in mats.iter().zip(k) {
        let p = heis_pow_scalar(m, &Rat::from_integer(e.clone()));
        acc = heis_mul(&acc, &p);
    }
    acc
}

/// Linear polynomial -> integer coefficient row (denominators cleared).
fn clear_linear(p: &MPoly, nv: usize) -> Vec<BigInt> {
    assert!(p.total_degree() <= 1);
    assert!(p.coeff(&vec![0; nv]).is_zero());
    let coeffs: Vec<Rat> = (0..nv)
        .map(|i| {
            let mut e = vec![0u32; nv];
            e[i] = 1;
            p.coeff(&e)
        })
        .collect();
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rand_rat(rng: &mut impl Rng) -> Rat {
        rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4))
    }

    fn rand_heis(rng: &mut impl Rng) -> HeisMat {
        HeisMat::new(rand_rat(rng), rand_rat(rng), rand_rat(rng))
    }

    #[test]
    fn group_law_examples() {
        let id = HeisMat::identity();
        let m = HeisMat::new(rat(3, 2), rat(-1, 3), rat_int(7));
        assert_eq!(heis_mul(&id, &m), m);
        assert_eq!(heis_mul(&m, &id), m);
        assert_eq!(
            heis_mul(&HeisMat::from_i64(1, 0, 0), &HeisMat::from_i64(0, 1, 0)),
            HeisMat::from_i64(1, 1, 1)
        );
        assert!(heis_mul(&m, &m.inverse()).is_identity());
        assert!(heis_mul(&m.inverse(), &m).is_identity());
    }

    #[test]
    fn pow_examples() {
        let m = HeisMat::from_i64(1, 1, 0);
        assert!(heis_pow(&m, 0).is_identity());
        assert_eq!(heis_pow(&m, 2), HeisMat::from_i64(2, 2, 1));
        assert_eq!(heis_pow(&m, -1), HeisMat::from_i64(-1, -1, 1));
    }

    #[test]
    fn pow_matches_iterated_mul() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x68656973);
        for _ in 0..100 {
            let m = rand_heis(&mut rng);
            let mut acc = HeisMat::identity();
            for k in 1..=50i64 {
                acc = heis_mul(&acc, &m);
                assert_eq!(heis_pow(&m, k), acc);
                assert_eq!(heis_pow(&m, -k), acc.inverse());
            }
        }
    }

    /// The generated system coincides with the classical three-equation
    /// display: the first two entries are the obvious linear forms, and
    /// the (1,3)-entry differs from
    ///   sum_i (c_i - a_i b_i / 2) k_i + (a_2 b_3 - a_3 b_2) k_2 k_3 / 2
    /// exactly by a polynomial combination of the first two equations.
    #[test]
    fn symbolic_system_matches_display() {
        // variables: a1 a2 a3 b1 b2 b3 c1 c2 c3 k1 k2 k3
        let nv = 12;
        let a = |i: usize| MPoly::var(nv, i);
        let b = |i: usize| MPoly::var(nv, 3 + i);
        let c = |i: usize| MPoly::var(nv, 6 + i);
        let k = |i: usize| MPoly::var(nv, 9 + i);
        let half = MPoly::constant(nv, rat(1, 2));

        let mut e = HeisMat::new(MPoly::zero(nv), MPoly::zero(nv), MPoly::zero(nv));
        for i in 0..3 {
            let m = HeisMat::new(a(i), b(i), c(i));
            e = heis_mul(&e, &heis_pow_scalar(&m, &k(i)));
        }
        let sum = |f: &dyn Fn(usize) -> MPoly| {
            (0..3).fold(MPoly::zero(nv), |acc, i| acc.add(&f(i).mul(&k(i))))
        };
        let s_a = sum(&a);
        let s_b = sum(&b);
        assert_eq!(e.a, s_a);
        assert_eq!(e.b, s_b);

        let lin = (0..3).fold(MPoly::zero(nv), |acc, i| {
            acc.add(&c(i).sub(&half.mul(&a(i)).mul(&b(i))).mul(&k(i)))
        });
        let m23 = a(1).mul(&b(2)).sub(&a(2).mul(&b(1)));
        let display = lin.add(&half.mul(&m23).mul(&k(1)).mul(&k(2)));
        // E.c - display = (S_a S_b + k1 a1 S_b - k1 b1 S_a) / 2
        let cofactor = half.mul(
            &s_a.mul(&s_b)
                .add(&k(0).mul(&a(0)).mul(&s_b))
                .sub(&k(0).mul(&b(0)).mul(&s_a)),
        );
        assert_eq!(e.c.sub(&display), cofactor);
    }

    fn brute_triple(mats: &[HeisMat], bound: i64) -> Vec<Vec<BigInt>> {
        let s = mats.len();
        let mut hits = Vec::new();
        let mut k = vec![-bound; s];
        loop {
            if k.iter().all(|&x| x != 0) {
                let kb = bv(&k);
                if compose(mats, &kb).is_identity() {
                    hits.push(kb);
                }
            }
            let mut i = 0;
            while i < s {
                k[i] += 1;
                if k[i] <= bound {
                    break;
                }
                k[i] = -bound;
                i += 1;
            }
            if i == s {
                break;
            }
        }
        hits
    }

    #[test]
    fn triple_lattice_example() {
        let sol = solve_triple(
            &HeisMat::from_i64(1, 0, 0),
            &HeisMat::from_i64(-1, 0, 0),
            &HeisMat::identity(),
        );
        assert_eq!(sol.kind, HeisKind::LatticeWithNonzeroFilter);
        assert!(sol.admits(&bv(&[5, 5, -3])));
        assert!(!sol.admits(&bv(&[1, 2, 1])));
        for hit in brute_triple(
            &[
                HeisMat::from_i64(1, 0, 0),
                HeisMat::from_i64(-1, 0, 0),
                HeisMat::identity(),
            ],
            4,
        ) {
            assert!(sol.admits(&hit));
        }
    }

    #[test]
    fn triple_finite_example() {
        let mats = [
            HeisMat::from_i64(1, 0, 0),
            HeisMat::from_i64(0, 1, 0),
            HeisMat::from_i64(-1, 1, 1),
        ];
        let sol = solve_triple(&mats[0], &mats[1], &mats[2]);
        assert_eq!(sol.kind, HeisKind::Finite);
        assert_eq!(sol.finite_solutions, vec![bv(&[3, -3, 3])]);
        assert!(compose(&mats, &bv(&[3, -3, 3])).is_identity());
        assert_eq!(brute_triple(&mats, 10), vec![bv(&[3, -3, 3])]);
    }

    #[test]
    fn triple_empty_example() {
        // quadratic root on the solution line is 3/2, not an integer
        let mats = [
            HeisMat::from_i64(1, 0, 0),
            HeisMat::from_i64(0, 1, 0),
            HeisMat::new(rat_int(-1), rat_int(1), rat(1, 4)),
        ];
        let sol = solve_triple(&mats[0], &mats[1], &mats[2]);
        assert_eq!(sol.kind, HeisKind::Empty);
        assert!(brute_triple(&mats, 30).is_empty());
    }

    #[test]
    fn triple_large_root_found() {
        // the root sits at t = 11, far outside any casual search box
        let mats = [
            HeisMat::from_i64(1, 0, 0),
            HeisMat::from_i64(0, 1, 0),
            HeisMat::from_i64(-1, 1, 5),
        ];
        let sol = solve_triple(&mats[0], &mats[1], &mats[2]);
        assert_eq!(sol.kind, HeisKind::Finite);
        assert_eq!(sol.finite_solutions, vec![bv(&[11, -11, 11])]);
        assert!(compose(&mats, &bv(&[11, -11, 11])).is_identity());
    }

    #[test]
    fn pair_examples() {
        let m = HeisMat::new(rat(3, 2), rat(-2, 3), rat(1, 5));
        let sol = solve_pair(&m, &m.inverse());
        assert_eq!(sol.kind, HeisKind::LatticeWithNonzeroFilter);
        assert!(sol.admits(&bv(&[7, 7])));
        assert!(!sol.admits(&bv(&[1, 2])));

        let sol = solve_pair(&HeisMat::from_i64(1, 0, 0), &HeisMat::from_i64(0, 1, 0));
        assert_eq!(sol.kind, HeisKind::Empty);

        let a1 = HeisMat::new(rat_int(2), rat_int(1), rat_int(0));
        let a2 = HeisMat::new(rat_int(-1), rat(-1, 2), rat(1, 4));
        let sol = solve_pair(&a1, &a2);
        let brute = brute_triple(&[a1.clone(), a2.clone()], 40);
        for hit in &brute {
            assert!(sol.admits(hit), "missing {hit:?}");
        }
        match sol.kind {
            HeisKind::Finite => {
                for s in &sol.finite_solutions {
                    assert!(compose(&[a1.clone(), a2.clone()], s).is_identity());
                    if s.iter().all(|x| x.abs() <= BigInt::from(40)) {
                        assert!(brute.contains(s));
                    }
                }
            }
            HeisKind::LatticeWithNonzeroFilter | HeisKind::Empty => {}
        }
    }

    #[test]
    fn planted_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x706c6e74);
        for _ in 0..50 {
            let a1 = rand_heis(&mut rng);
            let a2 = rand_heis(&mut rng);
            let nz = |rng: &mut rand_chacha::ChaCha8Rng| -> i64 {
                let v = rng.gen_range(-6i64..=5);
                if v >= 0 {
                    v + 1
                } else {
                    v
                }
            };
            let (k1, k2, k3) = (nz(&mut rng), nz(&mut rng), nz(&mut rng));
            // solve heis_pow(A3, k3) = (A1^k1 A2^k2)^-1 for A3
            let target = heis_mul(&heis_pow(&a1, k1), &heis_pow(&a2, k2)).inverse();
            let kr = rat_int(k3);
            let a3a = &target.a / &kr;
            let a3b = &target.b / &kr;
            let tri = (&kr * &kr - &kr) * rat(1, 2);
            let a3c = (&target.c - tri * &a3a * &a3b) / &kr;
            let a3 = HeisMat::new(a3a, a3b, a3c);
            assert_eq!(heis_pow(&a3, k3), target);
            let sol = solve_triple(&a1, &a2, &a3);
            assert!(
                sol.admits(&bv(&[k1, k2, k3])),
                "planted ({k1},{k2},{k3}) missing; kind {:?}",
                sol.kind
            );
        }
    }

    #[test]
    fn box_completeness_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x626f7821);
        for _ in 0..30 {
            // small integer entries so identities actually occur
            let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
                HeisMat::from_i64(
                    rng.gen_range(-2i64..=2),
                    rng.gen_range(-2i64..=2),
                    rng.gen_range(-2i64..=2),
                )
            };
            let mats = [gen(&mut rng), gen(&mut rng), gen(&mut rng)];
            let sol = solve_triple(&mats[0], &mats[1], &mats[2]);
            for hit in brute_triple(&mats, 20) {
                assert!(sol.admits(&hit), "mats {mats:?} missing {hit:?}");
            }
            // soundness of reported finite solutions and lattice vectors
            for s in &sol.finite_solutions {
                assert!(compose(&mats, s).is_identity());
            }
            if let Some(l) = &sol.lattice {
                for g in &l.basis {
                    assert!(compose(&mats, g).is_identity());
                }
            }
        }
    }
}
