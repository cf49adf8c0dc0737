//! Census of multiplicatively dependent pairs and tuples of symmetric
//! integer 2x2 matrices with entries in [-H, H].
//!
//! Pair dependence (A^k B^l = I with (k,l) != 0) is decided exactly:
//!  - both spectra rational: reduce to a relation lattice of eigenvalues;
//!  - commuting with irrational spectra: the determinant relation lattice
//!    either pins a single candidate ray (decided by a torsion test) or has
//!    full rank, in which case a witness is recovered from continued-fraction
//!    convergents of the eigenvalue log ratio;
//!  - non-commuting: any relation forces both powers to be scalar, which for
//!    symmetric 2x2 matrices happens only for scalar or trace-zero inputs.
//!
//! The census buckets matrices by (traceless frame, determinant ray) so that
//! only pairs that can possibly be dependent are ever compared.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{mat_pow, rat_int, ArithError, Mat, Rat};
use crate::knapsack::{commuting_knapsack_with_kmax, power_equality};
use crate::multrel::relation_lattice;
use crate::spectra::{rational_eigensystem, torsion_order};

/// Parameters for a pair census at a single height.
#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub h: i64,
    pub kmax: i64,
    pub workers: usize,
    pub seed: u64,
}

impl CensusConfig {
    pub fn new(h: i64) -> Self {
        CensusConfig { h, kmax: 64, workers: 1, seed: 0 }
    }
}

/// Counts from one pair census. Pairs are ordered: (A,B) and (B,A) both
/// count, as does (A,A) for non-torsion A.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub h: i64,
    pub total_matrices: u64,
    pub torsion_count: u64,
    pub dependent_pairs: u64,
    pub undecided_pairs: u64,
    pub elapsed_seconds: f64,
}

impl CensusReport {
    pub fn csv_header() -> &'static str {
        "H,total,torsion,dependent,undecided,seconds"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3}",
            self.h,
            self.total_matrices,
            self.torsion_count,
            self.dependent_pairs,
            self.undecided_pairs,
            self.elapsed_seconds
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairDecision {
    /// Verified exponents (k, l), both nonzero, with A^k B^l = I.
    Witness(BigInt, BigInt),
    Independent,
    Undecided,
}

/// All symmetric 2x2 integer matrices [[a,b],[b,c]] with entries in [-h,h]
/// and nonzero determinant, in a fixed deterministic order.
pub fn enumerate_symmetric(h: i64) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                if a * c - b * b != 0 {
                    out.push(Mat::from_i64_rows(&[&[a, b], &[b, c]]));
                }
            }
        }
    }
    out
}

fn entry_i64(r: &Rat) -> i64 {
    assert!(r.is_integer());
    r.numer().to_i64().expect("census entry out of i64 range")
}

fn sym_entries(m: &Mat) -> (i64, i64, i64) {
    assert_eq!(m.dim(), 2);
    (entry_i64(m.at(0, 0)), entry_i64(m.at(0, 1)), entry_i64(m.at(1, 1)))
}

/// Torsion test specialised to symmetric 2x2 integer matrices: the only
/// torsion elements are +-I and the involutions with trace 0, det -1.
fn is_torsion_sym(a: i64, b: i64, c: i64) -> bool {
    (b == 0 && a == c && (a == 1 || a == -1)) || (a + c == 0 && a * c - b * b == -1)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Sign-normalised primitive direction of the traceless part (a-c, 2b),
/// together with the signed multiplier s such that (a-c, 2b) = s * frame.
/// Two non-scalar symmetric matrices commute iff their frames coincide.
fn frame_of(a: i64, b: i64, c: i64) -> Option<((i64, i64), i64)> {
    let v = (a - c, 2 * b);
    if v == (0, 0) {
        return None; // scalar
    }
    let g = gcd_i64(v.0, v.1);
    let mut w = (v.0 / g, v.1 / g);
    let mut s = g;
    if w.0 < 0 || (w.0 == 0 && w.1 < 0) {
        w = (-w.0, -w.1);
        s = -g;
    }
    Some((w, s))
}

/// Primitive prime-exponent direction of |d|; empty for |d| = 1. Matrices
/// whose |det| rays differ admit no multiplicative relation at all.
fn ray_of(d: i64, memo: &mut HashMap<i64, Vec<(i64, u32)>>) -> Vec<(i64, u32)> {
    let m = d.abs();
    if let Some(r) = memo.get(&m) {
        return r.clone();
    }
    let mut fac = Vec::new();
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            fac.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        fac.push((n, 1));
    }
    let g = fac.iter().fold(0u32, |acc, &(_, e)| {
        if acc == 0 { e } else { gcd_i64(acc as i64, e as i64) as u32 }
    });
    let ray: Vec<(i64, u32)> = fac.iter().map(|&(p, e)| (p, e / g.max(1))).collect();
    memo.insert(m, ray.clone());
    ray
}

/// Generator of the scalar powers of A, if any: A^mult = gen * I.
/// Scalar matrices aI give (a, 1); trace-zero matrices give (-det, 2).
fn scalar_gen(a: i64, b: i64, c: i64) -> Option<(i64, i64)> {
    if b == 0 && a == c {
        Some((a, 1))
    } else if a + c == 0 {
        Some((b * b - a * c, 2))
    } else {
        None
    }
}

fn verify_witness(a: &Mat, b: &Mat, k: i64, l: i64) -> bool {
    if k == 0 || l == 0 {
        return false;
    }
    match (mat_pow(a, k), mat_pow(b, l)) {
        (Ok(pa), Ok(pb)) => pa.mul(&pb).map(|m| m.is_identity()).unwrap_or(false),
        _ => false,
    }
}

fn big_to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("exponent out of i64 range")
}

/// Witness search for commuting pairs whose determinant relation lattice has
/// full rank (both |det| = 1): the matched eigenvalues are units in the same
/// real quadratic order, so a relation exists and its exponent ratio is a
/// convergent of log|mu| / log|lambda|.
fn cf_witness(a: &Mat, b: &Mat) -> Option<(i64, i64)> {
    let (aa, ab, ac) = sym_entries(a);
    let (ba, bb, bc) = sym_entries(b);
    // Matched branches: same eigenvector for both, so the sign of the
    // square root follows the proportionality of the traceless parts.
    let (_, sa) = frame_of(aa, ab, ac)?;
    let (_, sb) = frame_of(ba, bb, bc)?;
    let disc_a = ((aa + ac) * (aa + ac) - 4 * (aa * ac - ab * ab)) as f64;
    let disc_b = ((ba + bc) * (ba + bc) - 4 * (ba * bc - bb * bb)) as f64;
    let lam = ((aa + ac) as f64 + (sa.signum() as f64) * disc_a.sqrt()) / 2.0;
    let mu = ((ba + bc) as f64 + (sb.signum() as f64) * disc_b.sqrt()) / 2.0;
    if lam == 0.0 || mu == 0.0 || lam.abs() == 1.0 || mu.abs() == 1.0 {
        return None;
    }
    let x = mu.abs().ln() / lam.abs().ln();
    // Convergents p/q of x give lam^p ~ mu^q, so try (p, -q) and its double
    // (the squares absorb any sign mismatch of the matched branches).
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut t = x;
    for _ in 0..48 {
        let (p, q) = (p1, q1);
        if p.abs() > 200 || q.abs() > 200 {
            return None;
        }
        for &(k, l) in &[(p, -q), (2 * p, -2 * q), (p, q), (2 * p, 2 * q)] {
            if verify_witness(a, b, k, l) {
                return Some((k, l));
            }
        }
        let frac = t - t.floor();
        if frac.abs() < 1e-12 {
            break;
        }
        t = 1.0 / frac;
        let ai = t.floor() as i64;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

/// Scalar route for pairs where any relation forces scalar powers: both
/// matrices must reach a scalar (gen * I), and the gens must be
/// multiplicatively dependent.
fn scalar_route(a: &Mat, b: &Mat) -> Result<PairDecision, ArithError> {
    let (aa, ab, ac) = sym_entries(a);
    let (ba, bb, bc) = sym_entries(b);
    let (Some((ga, ma)), Some((gb, mb))) = (scalar_gen(aa, ab, ac), scalar_gen(ba, bb, bc))
    else {
        return Ok(PairDecision::Independent);
    };
    let rl = relation_lattice(&[vec![rat_int(ga), rat_int(gb)]])?;
    for v in &rl.basis {
        if !v[0].is_zero() && !v[1].is_zero() {
            let (k, l) = (ma * big_to_i64(&v[0]), mb * big_to_i64(&v[1]));
            assert!(verify_witness(a, b, k, l), "scalar-route witness must verify");
            return Ok(PairDecision::Witness(BigInt::from(k), BigInt::from(l)));
        }
    }
    Ok(PairDecision::Independent)
}

/// Decide whether A^k B^l = I has a nonzero solution, for symmetric
/// invertible non-torsion 2x2 integer matrices. Exact except for the
/// continued-fraction search, which reports Undecided past its cap.
pub fn pair_dependent(a: &Mat, b: &Mat) -> Result<PairDecision, ArithError> {
    for m in [a, b] {
        if m.dim() != 2 || !m.is_symmetric() {
            return Err(ArithError::Precondition("expected symmetric 2x2 matrices".into()));
        }
        if m.det().is_zero() {
            return Err(ArithError::Singular);
        }
        if torsion_order(m).is_some() {
            return Err(ArithError::Precondition("torsion input to pair census".into()));
        }
    }
    let da = a.det();
    let db = b.det();
    // Any relation A^k B^l = I satisfies da^k db^l = 1.
    let detlat = relation_lattice(&[vec![da, db]])?;
    if detlat.rank() == 0 {
        return Ok(PairDecision::Independent);
    }
    if rational_eigensystem(a).is_some() && rational_eigensystem(b).is_some() {
        let binv = b.inverse()?;
        let pe = power_equality(a, &binv)?;
        // rank 2 would make one factor torsion on its own
        assert!(pe.subgroup.rank() <= 1);
        if let Some(g) = pe.subgroup.basis.first() {
            let (k, l) = (big_to_i64(&g[0]), big_to_i64(&g[1]));
            assert!(verify_witness(a, b, k, l), "eigenvalue-lattice witness must verify");
            return Ok(PairDecision::Witness(BigInt::from(k), BigInt::from(l)));
        }
        return Ok(PairDecision::Independent);
    }
    let commuting = a.mul(b)? == b.mul(a)?;
    if commuting {
        let (aa, ab, ac) = sym_entries(a);
        let (ba, bb, bc) = sym_entries(b);
        let a_scalar = ab == 0 && aa == ac;
        let b_scalar = bb == 0 && ba == bc;
        if a_scalar || b_scalar {
            return scalar_route(a, b);
        }
        if detlat.rank() == 1 {
            let g = &detlat.basis[0];
            if g[0].is_zero() || g[1].is_zero() {
                // relations would make one factor torsion on its own
                return Ok(PairDecision::Independent);
            }
            let (g0, g1) = (big_to_i64(&g[0]), big_to_i64(&g[1]));
            // All relations are multiples of g, so dependence reduces to
            // A^g0 B^g1 having finite order.
            let m = mat_pow(a, g0)?.mul(&mat_pow(b, g1)?)?;
            return Ok(match torsion_order(&m) {
                Some(t) => {
                    let (k, l) = (g0 * t as i64, g1 * t as i64);
                    assert!(verify_witness(a, b, k, l), "torsion-route witness must verify");
                    PairDecision::Witness(BigInt::from(k), BigInt::from(l))
                }
                None => PairDecision::Independent,
            });
        }
        return Ok(match cf_witness(a, b) {
            Some((k, l)) => PairDecision::Witness(BigInt::from(k), BigInt::from(l)),
            None => PairDecision::Undecided,
        });
    }
    // Non-commuting: A^k B^l = I with k,l != 0 forces A^k = B^-l to be a
    // common eigenvector-free power, i.e. scalar.
    scalar_route(a, b)
}

struct Rec {
    idx: usize,
    gen: Option<(i64, i64)>,
    bucket: Option<usize>,
}

/// Pair census at height config.h: counts ordered pairs of non-torsion
/// matrices (A,B) with A^k B^l = I for some nonzero (k,l). Deterministic
/// for any worker count.
pub fn census_pairs(config: &CensusConfig) -> CensusReport {
    let start = Instant::now();
    let mats = enumerate_symmetric(config.h);
    let total = mats.len() as u64;
    let mut ray_memo = HashMap::new();
    let mut torsion = 0u64;
    let mut recs: Vec<Rec> = Vec::new();
    let mut buckets: HashMap<((i64, i64), Vec<(i64, u32)>), Vec<usize>> = HashMap::new();
    for (idx, m) in mats.iter().enumerate() {
        let (a, b, c) = sym_entries(m);
        if is_torsion_sym(a, b, c) {
            torsion += 1;
            continue;
        }
        let det = a * c - b * b;
        let frame = frame_of(a, b, c);
        let rec_pos = recs.len();
        if let Some((w, _)) = frame {
            let ray = ray_of(det, &mut ray_memo);
            buckets.entry((w, ray)).or_default().push(rec_pos);
        }
        recs.push(Rec { idx, gen: scalar_gen(a, b, c), bucket: None });
    }
    let n_nontorsion = recs.len() as u64;

    let mut bucket_list: Vec<_> = buckets.into_iter().collect();
    bucket_list.sort();
    for (bid, (_, members)) in bucket_list.iter().enumerate() {
        for &r in members {
            recs[r].bucket = Some(bid);
        }
    }

    // Scalar-capable matrices grouped by the ray of |gen|; cross-bucket
    // relations exist only between matrices whose gens share a ray.
    let mut gen_groups: HashMap<Vec<(i64, u32)>, Vec<usize>> = HashMap::new();
    for (r, rec) in recs.iter().enumerate() {
        if let Some((g, _)) = rec.gen {
            gen_groups.entry(ray_of(g, &mut ray_memo)).or_default().push(r);
        }
    }
    let mut gen_list: Vec<_> = gen_groups.into_iter().collect();
    gen_list.sort();

    let workers = config.workers.max(1);
    let (dep_unordered, undecided_unordered) = std::thread::scope(|scope| {
        let recs = &recs;
        let mats = &mats;
        let bucket_list = &bucket_list;
        let gen_list = &gen_list;
        let mut handles = Vec::new();
        for w in 0..workers {
            handles.push(scope.spawn(move || {
                let mut dep = 0u64;
                let mut und = 0u64;
                for (bi, (_, members)) in bucket_list.iter().enumerate() {
                    if bi % workers != w {
                        continue;
                    }
                    for i in 0..members.len() {
                        for j in (i + 1)..members.len() {
                            let (ra, rb) = (&recs[members[i]], &recs[members[j]]);
                            match pair_dependent(&mats[ra.idx], &mats[rb.idx])
                                .expect("census inputs satisfy preconditions")
                            {
                                PairDecision::Witness(_, _) => dep += 1,
                                PairDecision::Independent => {}
                                PairDecision::Undecided => und += 1,
                            }
                        }
                    }
                }
                // verified scalar-route decisions, memoised per gen pair
                let mut memo: HashMap<(i64, i64, i64, i64), bool> = HashMap::new();
                for (gi, (_, members)) in gen_list.iter().enumerate() {
                    if gi % workers != w {
                        continue;
                    }
                    for i in 0..members.len() {
                        for j in (i + 1)..members.len() {
                            let (ra, rb) = (&recs[members[i]], &recs[members[j]]);
                            if ra.bucket.is_some() && ra.bucket == rb.bucket {
                                continue; // already decided in the bucket pass
                            }
                            let (ga, ma) = ra.gen.unwrap();
                            let (gb, mb) = rb.gen.unwrap();
                            let hit = *memo.entry((ga, ma, gb, mb)).or_insert_with(|| {
                                matches!(
                                    scalar_route(&mats[ra.idx], &mats[rb.idx]),
                                    Ok(PairDecision::Witness(_, _))
                                )
                            });
                            if hit {
                                dep += 1;
                            }
                        }
                    }
                }
                (dep, und)
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .fold((0u64, 0u64), |(d, u), (dd, uu)| (d + dd, u + uu))
    });

    CensusReport {
        h: config.h,
        total_matrices: total,
        torsion_count: torsion,
        // ordered pairs: each non-torsion A is dependent with itself
        dependent_pairs: n_nontorsion + 2 * dep_unordered,
        undecided_pairs: 2 * undecided_unordered,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Number of symmetric 2x2 matrices with entries in [-h,h] and determinant
/// exactly d != 0, computed two ways (entry scan and divisor counting) and
/// cross-checked.
pub fn count_fixed_det(h: i64, d: i64) -> u64 {
    assert!(h >= 1 && d != 0);
    let mut naive = 0u64;
    for a in -h..=h {
        for b in -h..=h {
            let m = b * b + d; // need a*c = m
            if a == 0 {
                if m == 0 {
                    naive += (2 * h + 1) as u64;
                }
            } else if m % a == 0 && (m / a).abs() <= h {
                naive += 1;
            }
        }
    }
    let mut divisor = 0u64;
    for b in -h..=h {
        let m = b * b + d;
        if m == 0 {
            // a = 0 (c free) or c = 0 (a free), overlapping at a = c = 0
            divisor += (4 * h + 1) as u64;
            continue;
        }
        let ma = m.abs();
        let mut u = 1;
        while u <= h && u * u <= ma {
            if ma % u == 0 {
                if ma / u <= h {
                    divisor += 2; // a = +-u
                }
                let v = ma / u;
                if v != u && v <= h && ma / v <= h {
                    divisor += 2;
                }
            }
            u += 1;
        }
    }
    assert_eq!(naive, divisor, "fixed-determinant counts must agree");
    naive
}

/// Number of positive divisors of m.
pub fn tau(m: u64) -> u64 {
    assert!(m >= 1);
    let mut count = 1u64;
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            count *= e + 1;
        }
        p += 1;
    }
    if n > 1 {
        count *= 2;
    }
    count
}

/// Number of integers in [1, x] composed only of primes dividing q.
pub fn smooth_count(q: u64, x: u64) -> u64 {
    assert!(q >= 1);
    let mut primes = Vec::new();
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    fn dfs(primes: &[u64], i: usize, acc: u64, x: u64) -> u64 {
        if i == primes.len() {
            return 1;
        }
        let mut total = 0;
        let mut v = acc;
        loop {
            total += dfs(primes, i + 1, v, x);
            if v > x / primes[i] {
                break;
            }
            v *= primes[i];
        }
        total
    }
    if x == 0 { 0 } else { dfs(&primes, 0, 1, x) }
}

/// Build an s-tuple of diagonal integer matrices that is multiplicatively
/// dependent with the returned witness, but has no dependent proper
/// subtuple. Uses a telescoping product of factor matrices whose
/// determinants each carry a private prime.
pub fn build_dependent_tuple(s: usize, entry_bound: i64, seed: u64) -> (Vec<Mat>, Vec<BigInt>) {
    assert!(s >= 3 && entry_bound >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nb = if s % 2 == 0 { s } else { s - 1 };
    // Each factor's determinant carries a prime larger than the entry
    // bound, so no other factor (whose free entries stay below it) can
    // contain it: relations are then forced onto the telescoping pattern.
    let is_prime = |n: i64| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
    let mut primes = Vec::with_capacity(nb);
    let mut cand = entry_bound + 1;
    while primes.len() < nb {
        if is_prime(cand) {
            primes.push(cand);
        }
        cand += 1;
    }
    {
        let mut factors = Vec::with_capacity(nb);
        for &p in &primes {
            let s1 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let s2 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let t = rng.gen_range(1..=entry_bound);
            factors.push(Mat::diagonal(&[rat_int(s1 * p), rat_int(s2 * t)]));
        }
        let id = Mat::identity(2);
        let bmat = |i: usize| -> &Mat {
            if i == 0 { &id } else { &factors[(i - 1) % nb] }
        };
        let mut tuple = Vec::with_capacity(s);
        if s % 2 == 0 {
            // A_{2i-1} = B_{2i-1} B_{2i}, A_{2i} = B_{2i+1} B_{2i}, cyclically
            for i in 1..=s / 2 {
                tuple.push(bmat(2 * i - 1).mul(bmat(2 * i)).unwrap());
                tuple.push(bmat(2 * i + 1).mul(bmat(2 * i)).unwrap());
            }
        } else {
            // A_{2i-1} = B_{2i-2} B_{2i-1}, A_{2i} = B_{2i} B_{2i-1}, B_0 = I
            for i in 1..=s / 2 {
                tuple.push(bmat(2 * i - 2).mul(bmat(2 * i - 1)).unwrap());
                tuple.push(bmat(2 * i).mul(bmat(2 * i - 1)).unwrap());
            }
            tuple.push(factors[nb - 1].clone());
        }
        let witness: Vec<BigInt> =
            (0..s).map(|i| BigInt::from(if i % 2 == 0 { 1 } else { -1 })).collect();
        let mut prod = Mat::identity(2);
        for (m, k) in tuple.iter().zip(&witness) {
            prod = prod.mul(&mat_pow(m, big_to_i64(k)).unwrap()).unwrap();
        }
        assert!(prod.is_identity(), "telescoping witness must verify");
        (tuple, witness)
    }
}

/// Counts from a tuple census.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleReport {
    pub s: usize,
    pub h: i64,
    pub kmax: i64,
    pub exhaustive: bool,
    pub examined: u64,
    pub dependent: u64,
    pub undecided: u64,
    pub elapsed_seconds: f64,
}

/// Enumerate products of mats[idxs] with exponents in [-kmax, kmax] using
/// the per-matrix power tables; calls f with each product and whether any
/// exponent is nonzero. `negate` flips all exponents.
fn half_products(
    pows: &[Vec<Mat>],
    idxs: &[usize],
    kmax: i64,
    negate: bool,
    f: &mut dyn FnMut(&Mat, bool),
) {
    fn rec(
        pows: &[Vec<Mat>],
        idxs: &[usize],
        pos: usize,
        acc: Mat,
        nonzero: bool,
        kmax: i64,
        negate: bool,
        f: &mut dyn FnMut(&Mat, bool),
    ) {
        if pos == idxs.len() {
            f(&acc, nonzero);
            return;
        }
        for k in -kmax..=kmax {
            let e = if negate { -k } else { k };
            let p = &pows[idxs[pos]][(e + kmax) as usize];
            let next = acc.mul(p).unwrap();
            rec(pows, idxs, pos + 1, next, nonzero || k != 0, kmax, negate, f);
        }
    }
    rec(pows, idxs, 0, Mat::identity(2), false, kmax, negate, f);
}

/// Meet-in-the-middle search for a nonzero exponent vector in the box
/// |k_i| <= kmax with prod mats[i]^{k_i} = I.
fn tuple_boxed_witness(mats: &[Mat], kmax: i64) -> bool {
    let pows: Vec<Vec<Mat>> = mats
        .iter()
        .map(|m| (-kmax..=kmax).map(|k| mat_pow(m, k).unwrap()).collect())
        .collect();
    let split = mats.len() / 2;
    let left: Vec<usize> = (0..split).collect();
    let right: Vec<usize> = (split..mats.len()).collect();
    // table value: product reachable with some nonzero left exponent
    let mut table: HashMap<Mat, bool> = HashMap::new();
    half_products(&pows, &left, kmax, false, &mut |p, nz| {
        let e = table.entry(p.clone()).or_insert(false);
        *e = *e || nz;
    });
    let mut found = false;
    // P * Q = I with Q = prod right^{k} means P = prod right^{-k}
    half_products(&pows, &right, kmax, true, &mut |p, nz| {
        if found {
            return;
        }
        if let Some(&left_nz) = table.get(p) {
            if nz || left_nz {
                found = true;
            }
        }
    });
    found
}

/// Tuple census. Exhaustive for s = 3 and small h; otherwise samples
/// `sample` tuples with the seeded generator. A tuple counts as dependent
/// only if it is dependent and no proper subtuple is.
pub fn census_tuples(
    s: usize,
    h: i64,
    kmax: i64,
    sample: Option<u64>,
    seed: u64,
) -> Result<TupleReport, ArithError> {
    assert!(s >= 3);
    let start = Instant::now();
    let mats = enumerate_symmetric(h);
    let nontorsion: Vec<Mat> = mats
        .into_iter()
        .filter(|m| {
            let (a, b, c) = sym_entries(m);
            !is_torsion_sym(a, b, c)
        })
        .collect();
    let n = nontorsion.len();
    let mut examined = 0u64;
    let mut dependent = 0u64;
    let mut undecided = 0u64;

    // pairwise independence screen, computed once
    let pair_ok = |i: usize, j: usize, memo: &mut HashMap<(usize, usize), bool>| -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let v = matches!(
            pair_dependent(&nontorsion[key.0], &nontorsion[key.1]),
            Ok(PairDecision::Independent)
        );
        memo.insert(key, v);
        v
    };
    let mut memo = HashMap::new();

    // Necessary condition memoised per determinant tuple: a matrix relation
    // maps to a determinant relation, so rank 0 there settles independence.
    let mut det_memo: HashMap<Vec<i64>, bool> = HashMap::new();
    let decide = |tuple: &[Mat], det_memo: &mut HashMap<Vec<i64>, bool>| -> Option<bool> {
        let dets: Vec<i64> = tuple
            .iter()
            .map(|m| {
                let (a, b, c) = sym_entries(m);
                a * c - b * b
            })
            .collect();
        // Tuples reaching this point have no dependent subtuple, so any
        // relation has every exponent nonzero -- and so does its image in
        // the determinant lattice.
        let possible = *det_memo.entry(dets.clone()).or_insert_with(|| {
            let rows: Vec<Rat> = dets.iter().map(|&d| rat_int(d)).collect();
            let rl = relation_lattice(&[rows]).expect("census determinants factor");
            crate::multrel::nonvanishing_vector(&rl)
                .expect("verified lattice")
                .is_some()
        });
        if !possible {
            return Some(false);
        }
        if tuple_boxed_witness(tuple, kmax) {
            return Some(true);
        }
        // a commuting tuple may be dependent only beyond the box; detect
        // that exactly and report it as undecided rather than independent
        let commuting = (0..tuple.len()).all(|i| {
            (i + 1..tuple.len()).all(|j| tuple[i].mul(&tuple[j]) == tuple[j].mul(&tuple[i]))
        });
        if commuting {
            let sol = commuting_knapsack_with_kmax(tuple, Some(kmax)).expect("commuting inputs");
            if matches!(sol.status, crate::knapsack::SolveStatus::Exact) && sol.lattice.rank() > 0
            {
                return None;
            }
        }
        Some(false)
    };

    match sample {
        None => {
            if s != 3 || h > 4 {
                return Err(ArithError::Precondition(
                    "exhaustive tuple census supports s = 3 and h <= 4".into(),
                ));
            }
            let w = (2 * kmax + 1) as usize;
            let pows: Vec<Vec<Mat>> = nontorsion
                .iter()
                .map(|m| (-kmax..=kmax).map(|k| mat_pow(m, k).unwrap()).collect())
                .collect();
            let dets: Vec<i64> = nontorsion
                .iter()
                .map(|m| {
                    let (a, b, c) = sym_entries(m);
                    a * c - b * b
                })
                .collect();
            for i in 0..n {
                for j in 0..n {
                    if j == i || !pair_ok(i, j, &mut memo) {
                        continue;
                    }
                    // all products A^ka B^kb once per (i, j); value records
                    // whether some (ka, kb) != (0, 0) reaches the product
                    let mut table: HashMap<Mat, bool> = HashMap::new();
                    for (ia, pa) in pows[i].iter().enumerate() {
                        for (ib, pb) in pows[j].iter().enumerate() {
                            let nz = (ia as i64, ib as i64) != (kmax, kmax);
                            let e = table.entry(pa.mul(pb).unwrap()).or_insert(false);
                            *e = *e || nz;
                        }
                    }
                    for k in 0..n {
                        if k == i || k == j || !pair_ok(i, k, &mut memo) || !pair_ok(j, k, &mut memo)
                        {
                            continue;
                        }
                        examined += 1;
                        let key = vec![dets[i], dets[j], dets[k]];
                        let possible = *det_memo.entry(key).or_insert_with(|| {
                            let rows: Vec<Rat> =
                                [dets[i], dets[j], dets[k]].iter().map(|&d| rat_int(d)).collect();
                            let rl = relation_lattice(&[rows]).expect("census determinants factor");
                            crate::multrel::nonvanishing_vector(&rl)
                                .expect("verified lattice")
                                .is_some()
                        });
                        if !possible {
                            continue;
                        }
                        // A^ka B^kb = C^-kc
                        let mut found = false;
                        for ic in 0..w {
                            if let Some(&nz) = table.get(&pows[k][w - 1 - ic]) {
                                if nz || ic as i64 != kmax {
                                    found = true;
                                    break;
                                }
                            }
                        }
                        if found {
                            dependent += 1;
                            continue;
                        }
                        let triple =
                            [nontorsion[i].clone(), nontorsion[j].clone(), nontorsion[k].clone()];
                        let commuting = (0..3).all(|x| {
                            (x + 1..3)
                                .all(|y| triple[x].mul(&triple[y]) == triple[y].mul(&triple[x]))
                        });
                        if commuting {
                            let sol = commuting_knapsack_with_kmax(&triple, Some(kmax))
                                .expect("commuting inputs");
                            if matches!(sol.status, crate::knapsack::SolveStatus::Exact)
                                && sol.lattice.rank() > 0
                            {
                                undecided += 1; // dependent only beyond the box
                            }
                        }
                    }
                }
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                examined += 1;
                let idxs: Vec<usize> = (0..s).map(|_| rng.gen_range(0..n)).collect();
                let mut screened = false;
                'outer: for x in 0..s {
                    for y in (x + 1)..s {
                        if idxs[x] == idxs[y] || !pair_ok(idxs[x], idxs[y], &mut memo) {
                            screened = true;
                            break 'outer;
                        }
                    }
                }
                if screened {
                    continue; // a dependent subtuple disqualifies the tuple
                }
                let tuple: Vec<Mat> = idxs.iter().map(|&i| nontorsion[i].clone()).collect();
                match decide(&tuple, &mut det_memo) {
                    Some(true) => dependent += 1,
                    Some(false) => {}
                    None => undecided += 1,
                }
            }
        }
    }
    Ok(TupleReport {
        s,
        h,
        kmax,
        exhaustive: sample.is_none(),
        examined,
        dependent,
        undecided,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}
