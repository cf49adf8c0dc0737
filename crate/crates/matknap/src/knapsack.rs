//! Decision procedures for multiplicative matrix equations: perfect-power
//! equality A1^k1 = A2^k2, the commuting knapsack prod A_i^{k_i} = I, and a
//! bounded meet-in-the-middle search for A^k1 B^k2 = target C^{-k3}.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{height, mat_pow, ArithError, Mat};
use crate::lattice::hnf_basis;
use crate::multrel::{nonvanishing_vector, relation_lattice, RelationLattice};
use crate::spectra::{rational_eigensystem, simultaneous_diagonalize, SimDiag};

/// How a solution set was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// The returned lattice is the complete solution set.
    Exact,
    /// Complete only within the searched exponent box.
    BoundedSearch,
    /// The method does not apply (non-commuting inputs).
    Inapplicable,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Exact => "exact",
            SolveStatus::BoundedSearch => "bounded-search",
            SolveStatus::Inapplicable => "inapplicable",
        }
    }
}

/// Solution subgroup of {(k1,k2) : A1^k1 = A2^k2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerEqSolution {
    pub subgroup: RelationLattice,
    pub witnesses: Vec<Vec<BigInt>>,
    pub status: SolveStatus,
}

/// Solution lattice of prod A_i^{k_i} = I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackSolution {
    pub lattice: RelationLattice,
    pub nonzero_witness: Option<Vec<BigInt>>,
    pub status: SolveStatus,
}

/// Default exponent box for bounded searches, scaling with input height.
pub fn default_kmax(h: &BigInt) -> i64 {
    let hf = (h + 2u32).to_f64().unwrap_or(f64::MAX);
    16i64.max((8.0 * hf.log2()).ceil() as i64)
}

fn check_square_invertible(mats: &[&Mat]) -> Result<(), ArithError> {
    let n = mats[0].dim();
    for m in mats {
        if m.dim() != n {
            return Err(ArithError::DimensionMismatch {
                left: n,
                right: m.dim(),
            });
        }
        if m.det().is_zero() {
            return Err(ArithError::Singular);
        }
    }
    Ok(())
}

fn big_to_i64(k: &BigInt) -> i64 {
    k.to_i64().expect("exponent exceeds i64 range")
}

fn verify_power_eq(a1: &Mat, a2: &Mat, k: &[BigInt]) -> bool {
    mat_pow(a1, big_to_i64(&k[0])).unwrap() == mat_pow(a2, big_to_i64(&k[1])).unwrap()
}

/// Full subgroup of {(k1,k2) in Z^2 : A1^k1 = A2^k2}.
///
/// Exact path, available when both matrices have rational eigensystems:
/// with A_i = T_i D_i T_i^-1 and T = T_2^-1 T_1, the equation is
/// T D_1^k1 = D_2^k2 T, i.e. for every nonzero entry T_{ij} the scalar
/// relation lambda_j^k1 mu_i^{-k2} = 1. One relation-lattice call then
/// yields the subgroup, with no case analysis for repeated or
/// sign-related eigenvalues. Otherwise a bounded meet-in-the-middle
/// search over the default box reports what it finds.
pub fn power_equality(a1: &Mat, a2: &Mat) -> Result<PowerEqSolution, ArithError> {
    power_equality_with_kmax(a1, a2, None)
}

pub fn power_equality_with_kmax(
    a1: &Mat,
    a2: &Mat,
    kmax: Option<i64>,
) -> Result<PowerEqSolution, ArithError> {
    check_square_invertible(&[a1, a2])?;
    if let (Some(es1), Some(es2)) = (rational_eigensystem(a1), rational_eigensystem(a2)) {
        let t = es2.t.inverse()?.mul(&es1.t)?;
        let n = a1.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !t.at(i, j).is_zero() {
                    rows.push(vec![es1.eigenvalues[j].clone(), es2.eigenvalues[i].recip()]);
                }
            }
        }
        let subgroup = relation_lattice(&rows)?;
        for k in &subgroup.basis {
            assert!(verify_power_eq(a1, a2, k), "subgroup basis failed verification");
        }
        let witnesses = subgroup.basis.clone();
        return Ok(PowerEqSolution {
            subgroup,
            witnesses,
            status: SolveStatus::Exact,
        });
    }
    // bounded search: hash A1^k1, probe A2^k2
    let h = height(a1)?.max(height(a2)?);
    let kmax = kmax.unwrap_or_else(|| default_kmax(&h));
    let mut table: HashMap<Mat, Vec<i64>> = HashMap::new();
    for k1 in -kmax..=kmax {
        table.entry(mat_pow(a1, k1)?).or_default().push(k1);
    }
    let mut hits: Vec<Vec<BigInt>> = Vec::new();
    for k2 in -kmax..=kmax {
        if let Some(k1s) = table.get(&mat_pow(a2, k2)?) {
            for &k1 in k1s {
                if k1 != 0 || k2 != 0 {
                    hits.push(vec![BigInt::from(k1), BigInt::from(k2)]);
                }
            }
        }
    }
    let basis = hnf_rows(&hits, 2);
    for k in &basis {
        assert!(verify_power_eq(a1, a2, k), "search hit failed verification");
    }
    Ok(PowerEqSolution {
        subgroup: RelationLattice {
            ambient: 2,
            basis: basis.clone(),
            verified: true,
        },
        witnesses: basis,
        status: SolveStatus::BoundedSearch,
    })
}

fn hnf_rows(vectors: &[Vec<BigInt>], ambient: usize) -> Vec<Vec<BigInt>> {
    hnf_basis(vectors)
        .into_iter()
        .inspect(|r| assert_eq!(r.len(), ambient))
        .collect()
}

fn verify_knapsack(mats: &[Mat], k: &[BigInt]) -> bool {
    let n = mats[0].dim();
    let mut acc = Mat::identity(n);
    for (m, e) in mats.iter().zip(k) {
        acc = acc.mul(&mat_pow(m, big_to_i64(e)).unwrap()).unwrap();
    }
    acc.is_identity()
}

/// Solution lattice of A_1^{k_1} ... A_s^{k_s} = I for a family of
/// invertible matrices.
///
/// When the family commutes and every member has a rational eigensystem,
/// simultaneous diagonalization reduces the equation to one scalar
/// relation per common eigenvector, solved exactly. A commuting family
/// with irrational spectrum falls back to a bounded meet-in-the-middle
/// search; non-commuting input is reported as inapplicable.
pub fn commuting_knapsack(mats: &[Mat]) -> Result<KnapsackSolution, ArithError> {
    commuting_knapsack_with_kmax(mats, None)
}

pub fn commuting_knapsack_with_kmax(
    mats: &[Mat],
    kmax: Option<i64>,
) -> Result<KnapsackSolution, ArithError> {
    if mats.is_empty() {
        return Err(ArithError::ZeroInput);
    }
    let refs: Vec<&Mat> = mats.iter().collect();
    check_square_invertible(&refs)?;
    let s = mats.len();
    match simultaneous_diagonalize(mats) {
        SimDiag::Diagonalized { eigenvalues, .. } => {
            let lattice = relation_lattice(&eigenvalues)?;
            for k in &lattice.basis {
                assert!(verify_knapsack(mats, k), "lattice basis failed verification");
            }
            let nonzero_witness = nonvanishing_vector(&lattice)?;
            if let Some(w) = &nonzero_witness {
                assert!(verify_knapsack(mats, w));
            }
            Ok(KnapsackSolution {
                lattice,
                nonzero_witness,
                status: SolveStatus::Exact,
            })
        }
        SimDiag::NonCommuting => Ok(KnapsackSolution {
            lattice: RelationLattice {
                ambient: s,
                basis: vec![],
                verified: false,
            },
            nonzero_witness: None,
            status: SolveStatus::Inapplicable,
        }),
        SimDiag::Inapplicable => {
            let h = mats
                .iter()
                .map(height)
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap();
            let kmax = kmax.unwrap_or_else(|| default_kmax(&h));
            let hits = knapsack_bounded_search(mats, kmax)?;
            let basis = hnf_rows(&hits, s);
            for k in &basis {
                assert!(verify_knapsack(mats, k), "search hit failed verification");
            }
            let nonzero_witness = hits
                .iter()
                .find(|v| v.iter().all(|x| !x.is_zero()))
                .cloned();
            Ok(KnapsackSolution {
                lattice: RelationLattice {
                    ambient: s,
                    basis,
                    verified: true,
                },
                nonzero_witness,
                status: SolveStatus::BoundedSearch,
            })
        }
    }
}

/// All k in the box with prod A_i^{k_i} = I (inputs commute, so the split
/// into two half-products is sound).
fn knapsack_bounded_search(mats: &[Mat], kmax: i64) -> Result<Vec<Vec<BigInt>>, ArithError> {
    let s = mats.len();
    let half = s.div_ceil(2);
    let left = enumerate_products(&mats[..half], kmax)?;
    let mut table: HashMap<Mat, Vec<Vec<i64>>> = HashMap::new();
    for (m, ks) in left {
        table.entry(m).or_default().push(ks);
    }
    let right = enumerate_products(&mats[half..], kmax)?;
    let mut hits = Vec::new();
    for (m, ks_right) in right {
        // left * right = I  <=>  left = right^-1
        let want = m.inverse()?;
        if let Some(lefts) = table.get(&want) {
            for ks_left in lefts {
                let mut k: Vec<BigInt> = ks_left.iter().map(|&x| BigInt::from(x)).collect();
                k.extend(ks_right.iter().map(|&x| BigInt::from(x)));
                if k.iter().any(|x| !x.is_zero()) {
                    hits.push(k);
                }
            }
        }
    }
    hits.sort();
    Ok(hits)
}

/// All products prod A_i^{k_i} over the exponent box, with their exponent
/// tuples.
fn enumerate_products(mats: &[Mat], kmax: i64) -> Result<Vec<(Mat, Vec<i64>)>, ArithError> {
    let n = mats[0].dim();
    let mut acc: Vec<(Mat, Vec<i64>)> = vec![(Mat::identity(n), vec![])];
    for m in mats {
        let mut powers = Vec::new();
        for k in -kmax..=kmax {
            powers.push((mat_pow(m, k)?, k));
        }
        let mut next = Vec::with_capacity(acc.len() * powers.len());
        for (prod, ks) in &acc {
            for (p, k) in &powers {
                let mut ks = ks.clone();
                ks.push(*k);
                next.push((prod.mul(p)?, ks));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// All triples (k1,k2,k3) with |k_i| <= kmax, k1 k2 k3 != 0 and
/// A^k1 B^k2 = target C^{-k3}, by meet-in-the-middle.
pub fn abc_bounded_search(
    a: &Mat,
    b: &Mat,
    c: &Mat,
    target: &Mat,
    kmax: i64,
) -> Result<Vec<(i64, i64, i64)>, ArithError> {
    assert!(kmax >= 1);
    check_square_invertible(&[a, b, c])?;
    if target.dim() != a.dim() {
        return Err(ArithError::DimensionMismatch {
            left: a.dim(),
            right: target.dim(),
        });
    }
    let mut table: HashMap<Mat, Vec<(i64, i64)>> = HashMap::new();
    for k1 in -kmax..=kmax {
        if k1 == 0 {
            continue;
        }
        let p1 = mat_pow(a, k1)?;
        for k2 in -kmax..=kmax {
            if k2 == 0 {
                continue;
            }
            let m = p1.mul(&mat_pow(b, k2)?)?;
            table.entry(m).or_default().push((k1, k2));
        }
    }
    let mut out = Vec::new();
    for k3 in -kmax..=kmax {
        if k3 == 0 {
            continue;
        }
        let probe = target.mul(&mat_pow(c, -k3)?)?;
        if let Some(pairs) = table.get(&probe) {
            for &(k1, k2) in pairs {
                // re-verify from scratch
                let lhs = mat_pow(a, k1)?.mul(&mat_pow(b, k2)?)?;
                let rhs = target.mul(&mat_pow(c, -k3)?)?;
                assert_eq!(lhs, rhs);
                out.push((k1, k2, k3));
            }
        }
    }
    out.sort();
    Ok(out)
}
