//! Relation lattices: the full subgroup of integer exponent vectors k with
//! prod_j lambda_{i,j}^{k_j} = 1 simultaneously for every row i of a
//! rational matrix. Over the rationals this reduces to an integer kernel
//! on prime exponent vectors plus sign parity.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{factorize_rat, sunit_vector, ArithError, Rat};
use crate::lattice::{hnf, integer_kernel, IntMat, KernelBasis};

/// The lattice {k in Z^s : prod_j lambda_{i,j}^{k_j} = 1 for all i},
/// basis in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    pub ambient: usize,
    pub basis: Vec<Vec<BigInt>>,
    pub verified: bool,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Membership by forward substitution; relies on the basis being in HNF.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut residual = v.to_vec();
        for row in &self.basis {
            let Some(col) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let (q, r) = residual[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (res, h) in residual.iter_mut().zip(row) {
                    *res -= &q * h;
                }
            }
        }
        residual.iter().all(|x| x.is_zero())
    }
}

/// Exact relation lattice of the rows of `lambda` (all entries nonzero).
///
/// Prime constraints give one integer row per (row, prime); the sign
/// constraint per row is encoded with an auxiliary even variable, keeping
/// the whole computation inside one integer kernel.
pub fn relation_lattice(lambda: &[Vec<Rat>]) -> Result<RelationLattice, ArithError> {
    assert!(!lambda.is_empty());
    let s = lambda[0].len();
    assert!(lambda.iter().all(|row| row.len() == s));
    for row in lambda {
        for v in row {
            if v.is_zero() {
                return Err(ArithError::ZeroInput);
            }
        }
    }
    let m = lambda.len();
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for row in lambda {
        for v in row {
            for (p, _) in factorize_rat(v)?.exponents {
                primes.insert(p);
            }
        }
    }
    let primes: Vec<BigInt> = primes.into_iter().collect();
    // decompose every entry once
    let mut signs = vec![vec![0i64; s]; m];
    let mut exps = vec![vec![vec![0i64; primes.len()]; s]; m];
    for (i, row) in lambda.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let (sigma, e) = sunit_vector(v, &primes)?;
            signs[i][j] = if sigma < 0 { 1 } else { 0 };
            exps[i][j] = e;
        }
    }
    // stacked system over Z with columns (k_1..k_s, t_1..t_m):
    //   per (i,p):  sum_j e_p(lambda_{ij}) k_j = 0
    //   per i:      sum_j sigma_{ij} k_j + 2 t_i = 0
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..m {
        for (pi, _) in primes.iter().enumerate() {
            let mut row = vec![BigInt::zero(); s + m];
            for j in 0..s {
                row[j] = BigInt::from(exps[i][j][pi]);
            }
            rows.push(row);
        }
        let mut row = vec![BigInt::zero(); s + m];
        for j in 0..s {
            row[j] = BigInt::from(signs[i][j]);
        }
        row[s + i] = BigInt::from(2);
        rows.push(row);
    }
    let kernel = integer_kernel(&IntMat::from_rows(rows));
    // project away the auxiliary parity variables and re-canonicalize
    let projected: Vec<Vec<BigInt>> = kernel
        .basis
        .iter()
        .map(|v| v[..s].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let basis = if projected.is_empty() {
        vec![]
    } else {
        let (h, _) = hnf(&IntMat::from_rows(projected));
        (0..h.rows)
            .map(|i| h.row(i).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect()
    };
    // mandatory exact verification of every basis vector
    for k in &basis {
        for row in lambda {
            if !relation_holds(row, k) {
                panic!("relation lattice basis vector failed exact verification");
            }
        }
    }
    Ok(RelationLattice {
        ambient: s,
        basis,
        verified: true,
    })
}

/// Exact check of prod_j row_j^{k_j} = 1.
pub fn relation_holds(row: &[Rat], k: &[BigInt]) -> bool {
    let mut acc = Rat::from_integer(BigInt::from(1));
    for (v, e) in row.iter().zip(k) {
        acc *= rat_pow(v, e);
    }
    acc == Rat::from_integer(BigInt::from(1))
}

fn rat_pow(v: &Rat, e: &BigInt) -> Rat {
    let ae: u32 = e.abs().try_into().expect("exponent fits u32");
    let p = v.pow(ae as i32);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// A lattice vector with every coordinate nonzero, when one exists.
///
/// Takes `sum N^t b_t` over the basis for a large N; the coordinates are
/// nonzero polynomials in N whenever no coordinate vanishes identically,
/// so retrying with N+1 terminates.
pub fn nonvanishing_vector(l: &RelationLattice) -> Result<Option<Vec<BigInt>>, ArithError> {
    if !l.verified {
        return Err(ArithError::Unverified);
    }
    if l.basis.is_empty() {
        return Ok(None);
    }
    for j in 0..l.ambient {
        if l.basis.iter().all(|b| b[j].is_zero()) {
            return Ok(None);
        }
    }
    let max_mag = l
        .basis
        .iter()
        .flat_map(|b| b.iter())
        .map(|x| x.abs())
        .max()
        .unwrap();
    let mut n = max_mag * BigInt::from(l.basis.len() as u64) + 1;
    loop {
        let mut v = vec![BigInt::zero(); l.ambient];
        let mut pow = BigInt::from(1);
        for b in &l.basis {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += &pow * bi;
            }
            pow *= &n;
        }
        if v.iter().all(|x| !x.is_zero()) {
            return Ok(Some(v));
        }
        n += 1;
    }
}

/// Kernel-basis view of a relation lattice, for the solvers that size-reduce.
pub fn as_kernel(l: &RelationLattice) -> KernelBasis {
    KernelBasis {
        ambient: l.ambient,
        basis: l.basis.clone(),
    }
}
