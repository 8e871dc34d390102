//! Ground truth by exhaustive lattice enumeration.
//!
//! The local normal zeta function of a presentation is
//!
//!   zeta_{G,p}(s) = zeta_{Z_p^d}(s) * sum_{L <= Z^{d'} of finite index}
//!                       |Z^{d'} : L|^{d-s} |G_p : X(L)|^{-s},
//!
//! where X(L) is the preimage of the centre of G_p/L. The sum is realised to
//! a finite order K by enumerating Hermite-normal-form bases of all
//! sublattices of index p^k, k <= K, and computing for each the exponent
//! x = log_p |G_p : X(L)| by exact linear algebra. Nothing from the
//! closed-form side is used: this module only knows the structure constants.
//!
//! x is obtained as follows: the commutator map g -> ([g, x_j])_j sends Z^d
//! into (Z^{d'})^d, and X(L) is the kernel of the composite into
//! (Z^{d'}/L)^d, so |G_p : X(L)| = index of the image, which equals
//! p^{dk} / [Z^{dd'} : B Z^d + L^{+d}] for the stacked row lattice. Since
//! L contains p^k Z^{d'}, the whole computation reduces mod p^k.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Result, ZetaError};
use crate::fp::is_prime;
use crate::formulas::zeta_zn;
use crate::presentations::GroupPresentation;
use crate::ratfun::ZetaSeries;

/// Hermite normal form basis of a finite-index sublattice of Z^{dim}:
/// rows span the lattice, the matrix is upper triangular with positive
/// diagonal, and entries above a diagonal are reduced mod that diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHNF {
    pub rows: Vec<Vec<u64>>,
}

impl LatticeHNF {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn index(&self) -> u128 {
        (0..self.dim()).map(|i| self.rows[i][i] as u128).product()
    }

    /// Not contained in p Z^{dim} after scaling: some entry is a p-unit.
    pub fn is_maximal(&self, p: u64) -> bool {
        self.rows.iter().any(|row| row.iter().any(|&x| x % p != 0))
    }
}

/// Elementary-divisor type (I, r_I) of a maximal lattice: I records where the
/// p-exponents of the Smith form jump, r_I the jump sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeType {
    pub i_set: Vec<usize>,
    pub r_i: Vec<u32>,
}

/// Smith-form p-exponents of the lattice basis, ascending.
pub fn eldiv_exponents(l: &LatticeHNF, p: u64) -> Vec<u32> {
    let n = l.dim();
    let mut m: Vec<Vec<i128>> = l.rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let divisors = snf_divisors(&mut m, n, n);
    divisors
        .iter()
        .map(|d| {
            let mut v = 0u32;
            let mut x = *d;
            while x % p as i128 == 0 {
                x /= p as i128;
                v += 1;
            }
            v
        })
        .collect()
}

/// The type (I, r_I) of a maximal lattice; errors if the lattice is not
/// maximal (first divisor not 1).
pub fn lattice_type(l: &LatticeHNF, p: u64) -> Result<LatticeType> {
    let exps = eldiv_exponents(l, p);
    if exps[0] != 0 {
        return Err(ZetaError::InvalidInput("lattice is not maximal".into()));
    }
    let mut i_set = Vec::new();
    let mut r_i = Vec::new();
    for i in 0..exps.len() - 1 {
        if exps[i + 1] > exps[i] {
            i_set.push(i + 1);
            r_i.push(exps[i + 1] - exps[i]);
        }
    }
    Ok(LatticeType { i_set, r_i })
}

/// Integer Smith normal form divisors (absolute values), straightforward
/// pivot-and-reduce over i128; used as the reference implementation.
fn snf_divisors(m: &mut [Vec<i128>], nrows: usize, ncols: usize) -> Vec<i128> {
    let mut out = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < nrows && left < ncols {
        // find a nonzero pivot
        let mut piv = None;
        'search: for i in top..nrows {
            for j in left..ncols {
                if m[i][j] != 0 {
                    piv = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }
        // clear row and column by euclidean steps
        loop {
            let mut changed = false;
            for i in (top + 1)..nrows {
                if m[i][left] != 0 {
                    let q = m[i][left].div_euclid(m[top][left]);
                    for j in left..ncols {
                        m[i][j] -= q * m[top][j];
                    }
                    if m[i][left] != 0 {
                        m.swap(top, i);
                    }
                    changed = true;
                }
            }
            for j in (left + 1)..ncols {
                if m[top][j] != 0 {
                    let q = m[top][j].div_euclid(m[top][left]);
                    for i in top..nrows {
                        m[i][j] -= q * m[i][left];
                    }
                    if m[top][j] != 0 {
                        for i in top..nrows {
                            let t = m[i][left];
                            m[i][left] = m[i][j];
                            m[i][j] = t;
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        out.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    // divisibility chain is irrelevant for p-valuation sums, skip sorting
    out
}

/// All HNF bases of sublattices of Z^{dim} of index exactly p^k.
pub fn enumerate_sublattices(dim: usize, p: u64, k: u32) -> Vec<LatticeHNF> {
    let mut out = Vec::new();
    for_each_sublattice(dim, p, k, |l| out.push(l.clone()));
    out
}

/// Number of index-p^k sublattices of Z^{dim} (product formula over
/// diagonal compositions), used for budget checks.
pub fn sublattice_count(dim: usize, p: u64, k: u32) -> u128 {
    let mut total = 0u128;
    compositions(dim, k, &mut vec![0; dim], 0, &mut |exps| {
        let mut n = 1u128;
        for (j, &e) in exps.iter().enumerate() {
            n *= (p as u128).pow(e * j as u32);
        }
        total += n;
    });
    total
}

fn compositions(dim: usize, k: u32, buf: &mut Vec<u32>, pos: usize, f: &mut impl FnMut(&[u32])) {
    if pos == dim - 1 {
        buf[pos] = k;
        f(buf);
        return;
    }
    for e in 0..=k {
        buf[pos] = e;
        compositions(dim, k - e, buf, pos + 1, f);
    }
}

fn for_each_sublattice(dim: usize, p: u64, k: u32, mut f: impl FnMut(&LatticeHNF)) {
    let mut exps = vec![0u32; dim];
    let mut list: Vec<Vec<u32>> = Vec::new();
    compositions(dim, k, &mut exps, 0, &mut |e| list.push(e.to_vec()));
    let mut l = LatticeHNF { rows: vec![vec![0; dim]; dim] };
    for e in list {
        let diag: Vec<u64> = e.iter().map(|&x| p.pow(x)).collect();
        for i in 0..dim {
            for j in 0..dim {
                l.rows[i][j] = if i == j { diag[i] } else { 0 };
            }
        }
        fill_offdiag(&mut l, &diag, 0, 1, &mut f);
    }
}

/// Recursively fill the above-diagonal entries column by column:
/// entry (i, j), i < j, ranges over 0..diag[j].
fn fill_offdiag(l: &mut LatticeHNF, diag: &[u64], i: usize, j: usize, f: &mut impl FnMut(&LatticeHNF)) {
    let dim = diag.len();
    if j == dim {
        f(l);
        return;
    }
    let (ni, nj) = if i + 1 < j { (i + 1, j) } else { (0, j + 1) };
    for v in 0..diag[j] {
        l.rows[i][j] = v;
        fill_offdiag(l, diag, ni, nj, f);
    }
    l.rows[i][j] = 0;
}

/// Exponent x = log_p |G_p : X(L)| for a sublattice L of index p^k.
///
/// `precision_cap` is an upper bound on the p-exponents encountered;
/// arithmetic is carried out mod p^k, which is exact because L contains
/// p^k Z^{d'} and every pivot divides p^k.
pub fn x_index(pres: &GroupPresentation, l: &LatticeHNF, p: u64, precision_cap: u32) -> u32 {
    let k = l.index().trailing_zeros_base(p);
    assert!(precision_cap >= k, "precision cap below lattice valuation");
    let lam = pres.structure_constants().reduced_mod(p.pow(k.min(63)));
    let mut ws = Workspace::new(pres.d(), pres.dprime());
    x_index_fast(&lam, pres.d(), pres.dprime(), &l.rows, p, k, u32::MAX, &mut ws).unwrap()
}

trait PValuation {
    fn trailing_zeros_base(self, p: u64) -> u32;
}

impl PValuation for u128 {
    fn trailing_zeros_base(self, p: u64) -> u32 {
        let mut x = self;
        let mut v = 0;
        while x > 1 {
            debug_assert!(x % p as u128 == 0);
            x /= p as u128;
            v += 1;
        }
        v
    }
}

/// Scratch buffers reused across the enumeration hot loop.
struct Workspace {
    rows: Vec<u64>,
    used: Vec<bool>,
    nrows: usize,
    ncols: usize,
}

impl Workspace {
    fn new(d: usize, dprime: usize) -> Self {
        let ncols = d * dprime;
        let nrows = d + d * dprime;
        Workspace { rows: vec![0; nrows * ncols], used: vec![false; nrows], nrows, ncols }
    }
}

/// Core elimination. Returns None if a lower bound on x already exceeds
/// `x_limit` (pruning for truncated series).
#[allow(clippy::too_many_arguments)]
fn x_index_fast(
    lam_mod: &[u64],
    d: usize,
    dprime: usize,
    hnf: &[Vec<u64>],
    p: u64,
    k: u32,
    x_limit: u32,
    ws: &mut Workspace,
) -> Option<u32> {
    if k == 0 {
        return if 0 <= x_limit as i64 { Some(0) } else { None };
    }
    let q = p.pow(k);
    let ncols = ws.ncols;
    // B block: row i has the commutator coefficient vectors of [x_i, x_j]
    for i in 0..d {
        for j in 0..d {
            for t in 0..dprime {
                ws.rows[i * ncols + j * dprime + t] = lam_mod[(i * d + j) * dprime + t] % q;
            }
        }
    }
    // block diagonal copies of the lattice basis
    let mut r = d;
    for j in 0..d {
        for hr in hnf.iter() {
            let base = r * ncols;
            for c in ws.rows[base..base + ncols].iter_mut() {
                *c = 0;
            }
            for t in 0..dprime {
                ws.rows[base + j * dprime + t] = hr[t] % q;
            }
            r += 1;
        }
    }
    for u in ws.used.iter_mut() {
        *u = false;
    }

    let nrows = ws.nrows;
    let dk = d as u32 * k;
    let mut val_sum = 0u32;
    for col in 0..ncols {
        // pivot: the remaining row with minimal p-valuation in this column
        let mut best: Option<(usize, u32, u64)> = None;
        for i in 0..nrows {
            if ws.used[i] {
                continue;
            }
            let e = ws.rows[i * ncols + col] % q;
            if e == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut x = e;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            match best {
                Some((_, bv, _)) if bv <= v => {}
                _ => best = Some((i, v, x)),
            }
            if v == 0 {
                break;
            }
        }
        let Some((pi, v, unit)) = best else {
            // column already zero mod q: implicit generator q e_col, valuation k
            val_sum += k;
            continue;
        };
        val_sum += v;
        ws.used[pi] = true;
        // prune: remaining columns contribute at most k each
        let remaining = (ncols - col - 1) as u32;
        if dk.saturating_sub(val_sum + remaining * k) > x_limit {
            return None;
        }
        // normalise pivot row so the pivot entry is exactly p^v
        let inv = crate::fp::inv_mod(unit % p.pow(k - v).max(1), p.pow(k - v).max(1));
        // multiply row by inv mod q (inv lifts: unit * inv = 1 mod p^{k-v},
        // enough since all multiples of the row are taken mod q against
        // entries divisible by p^v)
        let inv = if k == v { 1 } else { inv };
        let base = pi * ncols;
        for c in col..ncols {
            ws.rows[base + c] = mulmod(ws.rows[base + c], inv, q);
        }
        let pv = p.pow(v);
        for i in 0..nrows {
            if ws.used[i] {
                continue;
            }
            let e = ws.rows[i * ncols + col] % q;
            if e == 0 {
                continue;
            }
            let f = e / pv;
            let rb = i * ncols;
            for c in col..ncols {
                let sub = mulmod(f, ws.rows[base + c], q);
                ws.rows[rb + c] = (ws.rows[rb + c] + q - sub) % q;
            }
        }
    }
    let x = dk - val_sum;
    if x <= x_limit {
        Some(x)
    } else {
        None
    }
}

#[inline]
fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Reference x computation: Smith normal form of the stacked integer matrix
/// over i128 with a different pivot strategy and no modular reduction.
pub fn x_index_reference(pres: &GroupPresentation, l: &LatticeHNF, p: u64) -> u32 {
    let d = pres.d();
    let dprime = pres.dprime();
    let k = l.index().trailing_zeros_base(p);
    if k == 0 {
        return 0;
    }
    let t = pres.structure_constants();
    let ncols = d * dprime;
    let mut m: Vec<Vec<i128>> = Vec::new();
    for i in 0..d {
        let mut row = vec![0i128; ncols];
        for j in 0..d {
            for s in 0..dprime {
                use num_traits::ToPrimitive;
                row[j * dprime + s] = t.lambda(i, j, s).to_i128().unwrap();
            }
        }
        m.push(row);
    }
    for j in 0..d {
        for hr in &l.rows {
            let mut row = vec![0i128; ncols];
            for s in 0..dprime {
                row[j * dprime + s] = hr[s] as i128;
            }
            m.push(row);
        }
    }
    let nrows = m.len();
    let divisors = snf_divisors(&mut m, nrows, ncols);
    let mut vsum = 0u32;
    for dv in divisors {
        let mut x = dv;
        while x != 0 && x % p as i128 == 0 {
            x /= p as i128;
            vsum += 1;
        }
    }
    d as u32 * k - vsum
}

/// Options controlling the enumeration.
#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Maximum number of lattices to visit before erroring out.
    pub budget: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: 200_000_000 }
    }
}

/// Accumulated counts of lattices by (k, x) with k + x <= K.
fn enumerate_counts(
    pres: &GroupPresentation,
    p: u64,
    order: usize,
    opts: OracleOptions,
    maximal_only: bool,
) -> Result<Vec<Vec<u64>>> {
    if !is_prime(p) {
        return Err(ZetaError::NotPrime(p));
    }
    let d = pres.d();
    let dprime = pres.dprime();
    let k_max = order as u32;
    let needed: u128 = (0..=k_max).map(|k| sublattice_count(dprime, p, k)).sum();
    if needed > opts.budget {
        return Err(ZetaError::BudgetExceeded { needed, budget: opts.budget });
    }

    let tensor = pres.structure_constants();
    let mut counts = vec![vec![0u64; order + 1]; k_max as usize + 1];
    counts[0][0] = 1; // identity lattice: k = 0, x = 0

    for k in 1..=k_max {
        let q = p.pow(k);
        let lam = tensor.reduced_mod(q);
        let x_limit = order as u32 - k;

        // jobs: one per diagonal composition, split over off-diagonal space
        let mut comps: Vec<Vec<u32>> = Vec::new();
        compositions(dprime, k, &mut vec![0; dprime], 0, &mut |e| comps.push(e.to_vec()));

        let job_results: Vec<Vec<Vec<u64>>> = comps
            .par_iter()
            .flat_map(|e| {
                let diag: Vec<u64> = e.iter().map(|&x| p.pow(x)).collect();
                // off-diagonal space size per column j: diag[j]^{j}
                let total: u128 = (0..dprime).map(|j| (diag[j] as u128).pow(j as u32)).product();
                let chunk: u128 = 1 << 14;
                let njobs = total.div_ceil(chunk);
                (0..njobs as u64).into_par_iter().map({
                    let diag = diag.clone();
                    let lam = lam.clone();
                    move |jid| {
                        let lo = jid as u128 * chunk;
                        let hi = ((jid as u128 + 1) * chunk).min(total);
                        let mut local = vec![vec![0u64; order + 1]; k_max as usize + 1];
                        let mut ws = Workspace::new(d, dprime);
                        let mut rows = vec![vec![0u64; dprime]; dprime];
                        for idx in lo..hi {
                            decode_offdiag(&diag, idx, &mut rows);
                            if maximal_only {
                                let max = rows.iter().any(|row| row.iter().any(|&v| v % p != 0));
                                if !max {
                                    continue;
                                }
                            }
                            if let Some(x) =
                                x_index_fast(&lam, d, dprime, &rows, p, k, x_limit, &mut ws)
                            {
                                local[k as usize][x as usize] += 1;
                            }
                        }
                        local
                    }
                })
            })
            .collect();
        for local in job_results {
            for (ki, row) in local.iter().enumerate() {
                for (xi, &c) in row.iter().enumerate() {
                    counts[ki][xi] += c;
                }
            }
        }
    }
    Ok(counts)
}

/// Decode a linear index into the above-diagonal entries of an HNF basis
/// with the given diagonal.
fn decode_offdiag(diag: &[u64], mut idx: u128, rows: &mut [Vec<u64>]) {
    let dim = diag.len();
    for i in 0..dim {
        for j in 0..dim {
            rows[i][j] = if i == j { diag[i] } else { 0 };
        }
    }
    for j in 1..dim {
        for i in 0..j {
            let m = diag[j] as u128;
            rows[i][j] = (idx % m) as u64;
            idx /= m;
        }
    }
}

/// First K + 1 coefficients of the local normal zeta function, straight from
/// the definition.
pub fn oracle_zeta(pres: &GroupPresentation, p: u64, order: usize, opts: OracleOptions) -> Result<ZetaSeries> {
    let counts = enumerate_counts(pres, p, order, opts, false)?;
    let d = pres.d();
    // sum over lattices: p^{dk} t^{k+x}
    let mut inner = vec![BigRational::zero(); order + 1];
    let pb = BigInt::from(p);
    for (k, row) in counts.iter().enumerate() {
        let w = pb.pow((d * k) as u32);
        for (x, &cnt) in row.iter().enumerate() {
            if cnt > 0 && k + x <= order {
                inner[k + x] += BigRational::from_integer(&w * BigInt::from(cnt));
            }
        }
    }
    let lattice_part = ZetaSeries::new(Some(p), inner);
    let zfree = zeta_zn(d).expand_series(p, order)?;
    Ok(zfree.mul_truncated(&lattice_part))
}

/// Truncated series of A(p, t) = sum over maximal lattices of
/// p^{d w} t^{w + x}; the generating function over homothety-class
/// representatives.
pub fn maximal_only_sum(pres: &GroupPresentation, p: u64, order: usize, opts: OracleOptions) -> Result<ZetaSeries> {
    let counts = enumerate_counts(pres, p, order, opts, true)?;
    let d = pres.d();
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let pb = BigInt::from(p);
    for (w, row) in counts.iter().enumerate() {
        let weight = pb.pow((d * w) as u32);
        for (x, &cnt) in row.iter().enumerate() {
            if cnt > 0 && w + x <= order {
                coeffs[w + x] += BigRational::from_integer(&weight * BigInt::from(cnt));
            }
        }
    }
    Ok(ZetaSeries::new(Some(p), coeffs))
}

/// zeta_{Z_p^d}(s) * zeta_p((d+d')s - dd') * A(p,t), for the consistency
/// check against `oracle_zeta`.
pub fn zeta_from_maximal(pres: &GroupPresentation, p: u64, order: usize, opts: OracleOptions) -> Result<ZetaSeries> {
    let a = maximal_only_sum(pres, p, order, opts)?;
    let d = pres.d();
    let dprime = pres.dprime();
    // zeta_p((d+d')s - dd') = 1/(1 - p^{dd'} t^{d+d'})
    let mut geo = vec![BigRational::zero(); order + 1];
    let step = d + dprime;
    let pb = BigInt::from(p);
    let mut m = 0usize;
    while m * step <= order {
        geo[m * step] = BigRational::from_integer(pb.pow((d * dprime * m) as u32));
        m += 1;
    }
    let homothety = ZetaSeries::new(Some(p), geo);
    let zfree = zeta_zn(d).expand_series(p, order)?;
    Ok(zfree.mul_truncated(&homothety).mul_truncated(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{builtin, norm_form_cubic};

    #[test]
    fn hnf_counts_match_classical_formula() {
        // index p: 1 + p + p^2 sublattices of Z^3
        for p in [2u64, 3] {
            let ls = enumerate_sublattices(3, p, 1);
            assert_eq!(ls.len() as u64, 1 + p + p * p);
            assert_eq!(sublattice_count(3, p, 1), (1 + p + p * p) as u128);
        }
        // (2, 2, 2): 7 sublattices of Z^2 of index 4
        assert_eq!(enumerate_sublattices(2, 2, 2).len(), 7);
        // k = 0: only the identity
        let id = enumerate_sublattices(3, 5, 0);
        assert_eq!(id.len(), 1);
        assert_eq!(id[0].index(), 1);
    }

    #[test]
    fn hnf_counts_match_zeta_series() {
        // coefficient of t^k in prod_{i<d'} (1 - p^i t)^{-1}
        for dprime in [2usize, 3] {
            for p in [2u64, 3] {
                let series = zeta_zn(dprime).expand_series(p, 5).unwrap();
                for k in 0..=5u32 {
                    let count = sublattice_count(dprime, p, k);
                    let c = &series.coeffs[k as usize];
                    assert_eq!(
                        BigRational::from_integer(BigInt::from(count)),
                        c.clone(),
                        "d'={dprime} p={p} k={k}"
                    );
                    assert_eq!(enumerate_sublattices(dprime, p, k).len() as u128, count);
                }
            }
        }
    }

    #[test]
    fn x_index_identity_lattice_is_zero() {
        let pres = builtin("G1C", &[]).unwrap();
        let id = LatticeHNF { rows: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]] };
        assert_eq!(x_index(&pres, &id, 5, 100), 0);
    }

    #[test]
    fn x_index_agrees_with_reference() {
        let pres = builtin("G2C", &[]).unwrap();
        for p in [2u64, 3] {
            for k in 1..=2u32 {
                for l in enumerate_sublattices(3, p, k) {
                    let fast = x_index(&pres, &l, p, 100);
                    let slow = x_index_reference(&pres, &l, p);
                    assert_eq!(fast, slow, "p={p} lattice {:?}", l.rows);
                }
            }
        }
    }

    #[test]
    fn pointless_curve_maximal_x_is_type_determined() {
        // when the curve has no F_p-points, |G_p : X(L)| = p^{d sum r_i}
        let pres = norm_form_cubic();
        let p = 7u64;
        for k in 1..=3u32 {
            for l in enumerate_sublattices(3, p, k) {
                if !l.is_maximal(p) {
                    continue;
                }
                let ty = lattice_type(&l, p).unwrap();
                let rsum: u32 = ty.r_i.iter().sum();
                assert_eq!(x_index(&pres, &l, p, 100), 6 * rsum, "lattice {:?}", l.rows);
            }
        }
    }

    #[test]
    fn eldiv_types() {
        let p = 3u64;
        // diag(1, 1, 9): type ({2}, (2))
        let l = LatticeHNF { rows: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 9]] };
        let t = lattice_type(&l, p).unwrap();
        assert_eq!(t, LatticeType { i_set: vec![2], r_i: vec![2] });
        // diag(1, 3, 3): type ({1}, (1))
        let l2 = LatticeHNF { rows: vec![vec![1, 0, 0], vec![0, 3, 0], vec![0, 0, 3]] };
        assert_eq!(lattice_type(&l2, p).unwrap(), LatticeType { i_set: vec![1], r_i: vec![1] });
        // diag(1, 3, 9): type ({1, 2}, (1, 1))
        let l3 = LatticeHNF { rows: vec![vec![1, 0, 0], vec![0, 3, 0], vec![0, 0, 9]] };
        assert_eq!(lattice_type(&l3, p).unwrap(), LatticeType { i_set: vec![1, 2], r_i: vec![1, 1] });
        // scaled lattice is not maximal
        let l4 = LatticeHNF { rows: vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]] };
        assert!(lattice_type(&l4, p).is_err());
        assert!(!l4.is_maximal(p));
        assert!(l2.is_maximal(p));
    }

    #[test]
    fn first_coefficients_of_oracle() {
        // a_0 = 1; a_1 = 1 + p + ... + p^{d-1} (hyperplanes in G/[G,G] F_p-span)
        let pres = builtin("G1C", &[]).unwrap();
        for p in [2u64, 3] {
            let z = oracle_zeta(&pres, p, 1, OracleOptions::default()).unwrap();
            assert_eq!(z.coeffs[0], BigRational::one());
            let expect: u64 = (0..6).map(|i| p.pow(i)).sum();
            assert_eq!(z.coeffs[1], BigRational::from_integer(BigInt::from(expect)));
            assert!(z.is_integral_nonnegative());
        }
    }

    #[test]
    fn budget_guard_trips() {
        let pres = builtin("G1C", &[]).unwrap();
        let err = oracle_zeta(&pres, 5, 6, OracleOptions { budget: 1000 }).unwrap_err();
        assert!(matches!(err, ZetaError::BudgetExceeded { .. }));
    }

    #[test]
    fn maximal_consistency_identity() {
        // zeta = zeta_{Z^d} * zeta_p((d+d')s - dd') * A as truncated series
        let pres = builtin("G1C", &[]).unwrap();
        let p = 3u64;
        let k = 5usize;
        let lhs = oracle_zeta(&pres, p, k, OracleOptions::default()).unwrap();
        let rhs = zeta_from_maximal(&pres, p, k, OracleOptions::default()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn x_index_invariant_under_y_basis_change() {
        let pres = builtin("G2C", &[]).unwrap();
        let u = vec![vec![1i64, 2, 0], vec![0, 1, 0], vec![1, 0, 1]]; // det 1
        let moved = pres.apply_y_change(&u);
        let p = 3u64;
        for k in 1..=2u32 {
            for l in enumerate_sublattices(3, p, k) {
                // transform the lattice by the same change: rows -> rows * U
                let rows: Vec<Vec<i128>> = l
                    .rows
                    .iter()
                    .map(|row| {
                        (0..3)
                            .map(|c| (0..3).map(|s| row[s] as i128 * u[s][c] as i128).sum())
                            .collect()
                    })
                    .collect();
                let h = hnf_from_rows(rows, p, k);
                assert_eq!(
                    x_index(&pres, &l, p, 100),
                    x_index(&moved, &h, p, 100),
                    "lattice {:?}",
                    l.rows
                );
            }
        }
    }

    /// Integer HNF of full-rank 3x3 rows (row span), for tests.
    fn hnf_from_rows(mut m: Vec<Vec<i128>>, _p: u64, _k: u32) -> LatticeHNF {
        let n = 3usize;
        // column-by-column gcd elimination from the bottom
        for col in 0..n {
            loop {
                let mut nz: Vec<usize> = (col..n).filter(|&i| m[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| m[i][col].abs());
                let a = nz[0];
                for &b in &nz[1..] {
                    let qt = m[b][col] / m[a][col];
                    for j in 0..n {
                        m[b][j] -= qt * m[a][j];
                    }
                }
            }
            let piv = (col..n).find(|&i| m[i][col] != 0).expect("full rank");
            m.swap(col, piv);
            if m[col][col] < 0 {
                for j in 0..n {
                    m[col][j] = -m[col][j];
                }
            }
        }
        // reduce above-diagonal entries
        for j in 0..n {
            for i in 0..j {
                let qt = m[i][j].div_euclid(m[j][j]);
                for c in 0..n {
                    m[i][c] -= qt * m[j][c];
                }
            }
        }
        LatticeHNF {
            rows: m.into_iter().map(|r| r.into_iter().map(|x| x as u64).collect()).collect(),
        }
    }
}
