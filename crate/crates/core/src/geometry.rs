//! Finite-field geometry of the Pfaffian curve.
//!
//! For a prime p this module scans P^2(F_p), classifies the singular points
//! of the reduced curve, computes rank deficits of M(alpha), and aggregates
//! everything into the per-prime invariants consumed by the closed form:
//! the smooth-model point count c, the node counts n1 (rank deficit 2) and
//! n2 (rank deficit 4), and a bad-prime verdict with reasons.
//!
//! Policy: detect, flag and exclude. A prime is flagged whenever the
//! hypotheses behind the closed form fail after reduction: Pfaffian zero or
//! not square-free mod p, a singularity that is not an ordinary double point
//! with two rational tangents, rank deficit above 2, or a line on the curve.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Result, ZetaError};
use crate::fp::{is_prime, is_squarefree_mod_p, FpPoly};
use crate::polynomial::{pfaffian, MultiPoly};
use crate::presentations::GroupPresentation;

/// Point of P^{n-1}(F_p), normalised so the last non-zero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<u64>,
}

impl ProjPoint {
    pub fn new(p: u64, coords: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coords.iter().map(|&x| x % p).collect();
        let last = c.iter().rposition(|&x| x != 0).expect("zero vector is not projective");
        let inv = crate::fp::inv_mod(c[last], p);
        for x in c.iter_mut() {
            *x = *x * inv % p;
        }
        ProjPoint { coords: c }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// All points of P^2(F_p) in normalised form (p^2 + p + 1 of them).
pub fn projective_points(p: u64) -> Vec<ProjPoint> {
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    for x in 0..p {
        for y in 0..p {
            out.push(ProjPoint { coords: vec![x, y, 1] });
        }
    }
    for x in 0..p {
        out.push(ProjPoint { coords: vec![x, 1, 0] });
    }
    out.push(ProjPoint { coords: vec![1, 0, 0] });
    out
}

/// Classification of a curve point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Smooth,
    /// Ordinary double point; `slopes_rational` iff the tangent cone splits
    /// into two distinct lines over F_p.
    Node { slopes_rational: bool },
    /// Degenerate tangent cone or higher multiplicity.
    Worse,
}

/// A singular point with its rank data.
#[derive(Clone, Debug)]
pub struct NodeInfo {
    pub point: ProjPoint,
    /// j with rank M(alpha) = 2(r - j).
    pub rank_deficit: u32,
    pub slopes_rational: bool,
    /// 2 for a split node, 0 for a non-split node, 1 for a degenerate
    /// tangent cone (always a bad prime).
    pub branch_count: u32,
}

/// Everything the closed form needs at one prime.
#[derive(Clone, Debug)]
pub struct PrimeInvariants {
    pub p: u64,
    /// F_p-points of the curve that are smooth on the reduction.
    pub smooth_point_count: u64,
    pub nodes: Vec<NodeInfo>,
    /// smooth points + branch counts at nodes = model point count sum_i c_{p,i}.
    pub c_total: u64,
    pub n1: u64,
    pub n2: u64,
    pub bad: bool,
    pub bad_reasons: Vec<String>,
}

/// All F_p-points of the plane curve f = 0 by exhaustive scan.
pub fn curve_points(f: &FpPoly, p: u64) -> Result<Vec<ProjPoint>> {
    if f.is_zero() {
        return Err(ZetaError::PfZeroModP { p });
    }
    Ok(projective_points(p).into_iter().filter(|pt| f.eval(pt.coords()) == 0).collect())
}

/// Classify a point of the curve: smooth, node (with tangent splitting), or
/// worse. Uniform in p, including characteristic 2: the tangent cone is the
/// degree-2 part of the Taylor expansion in an affine chart at the point, and
/// its root structure on P^1(F_p) is found by direct enumeration.
pub fn classify_singular(f: &FpPoly, point: &ProjPoint, p: u64) -> Result<PointClass> {
    if f.eval(point.coords()) != 0 {
        return Err(ZetaError::InvalidInput("classify_singular: point not on curve".into()));
    }
    let grad_nonzero = (0..3).any(|v| f.partial(v).eval(point.coords()) != 0);
    if grad_nonzero {
        return Ok(PointClass::Smooth);
    }
    // Affine chart at the unit coordinate of the normalised point: substitute
    // x_i -> x_i + a_i for the two affine variables, chart variable -> 1.
    let chart = point.coords().iter().rposition(|&x| x != 0).unwrap();
    let mut images: Vec<(Vec<u64>, u64)> = Vec::new();
    for v in 0..3 {
        if v == chart {
            images.push((vec![0, 0, 0], 1));
        } else {
            let mut lin = vec![0u64; 3];
            lin[v] = 1;
            images.push((lin, point.coords()[v]));
        }
    }
    let shifted = f.substitute_affine(&images);
    // degree counted in the two affine variables only; the chart variable is
    // constant 1 in `shifted`
    let quad = shifted.homogeneous_part(2);
    if quad.is_zero() {
        return Ok(PointClass::Worse);
    }
    // count distinct roots of the binary quadratic on P^1(F_p)
    let vars: Vec<usize> = (0..3).filter(|&v| v != chart).collect();
    let mut roots = 0u32;
    let eval2 = |s: u64, t: u64| -> u64 {
        let mut pt = [0u64; 3];
        pt[vars[0]] = s;
        pt[vars[1]] = t;
        quad.eval(&pt)
    };
    for s in 0..p {
        if eval2(s, 1) == 0 {
            roots += 1;
        }
    }
    if eval2(1, 0) == 0 {
        roots += 1;
    }
    match roots {
        2 => Ok(PointClass::Node { slopes_rational: true }),
        0 => Ok(PointClass::Node { slopes_rational: false }),
        _ => Ok(PointClass::Worse),
    }
}

/// j >= 0 with rank M(alpha) = 2(r - j) over F_p. Off-curve points give 0.
pub fn rank_deficit(pres: &GroupPresentation, point: &ProjPoint, p: u64) -> u32 {
    let d = pres.d();
    let lift: Vec<BigInt> = point.coords().iter().map(|&x| BigInt::from(x)).collect();
    let m = pres.evaluate(&lift);
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| (((&m[i][j] % &pb) + &pb) % &pb).to_u64().unwrap()).collect())
        .collect();
    let rank = rank_mod_p(&mut a, p);
    let r = pres.r() as u32;
    assert!(rank % 2 == 0, "antisymmetric matrix has even rank");
    r - rank as u32 / 2
}

fn rank_mod_p(a: &mut [Vec<u64>], p: u64) -> usize {
    let n = a.len();
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..m {
        let piv = (row..n).find(|&i| a[i][col] % p != 0);
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        let inv = crate::fp::inv_mod(a[row][col] % p, p);
        for j in 0..m {
            a[row][j] = a[row][j] % p * inv % p;
        }
        for i in 0..n {
            if i != row && a[i][col] % p != 0 {
                let f = a[i][col] % p;
                for j in 0..m {
                    a[i][j] = (a[i][j] + p * p - f * a[row][j] % p) % p;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    rank
}

/// True iff no point of P^2(F_p) has rank deficit >= 2.
pub fn is_regular_at(pres: &GroupPresentation, p: u64) -> bool {
    projective_points(p).iter().all(|pt| rank_deficit(pres, pt, p) < 2)
}

/// Does the curve f = 0 contain an F_p-rational line? Containment is decided
/// symbolically: the restriction of f to the line must vanish identically as
/// a binary form.
pub fn contains_line(f: &FpPoly, p: u64) -> bool {
    // lines of P^2 are dual points (a:b:c); pick two independent points on
    // each line and restrict
    for dual in projective_points(p) {
        let [a, b, c] = [dual.coords()[0], dual.coords()[1], dual.coords()[2]];
        // two independent solutions of a x + b y + c z = 0
        let (u, v) = if c != 0 {
            // z = -(a x + b y)/c
            let cinv = crate::fp::inv_mod(c, p);
            ([1, 0, (p - a % p) % p * cinv % p], [0, 1, (p - b % p) % p * cinv % p])
        } else if b != 0 {
            let binv = crate::fp::inv_mod(b, p);
            ([1, (p - a % p) % p * binv % p, 0], [0, 0, 1])
        } else {
            ([0, 1, 0], [0, 0, 1])
        };
        if f.restrict_to_line(&u, &v).iter().all(|&x| x == 0) {
            return true;
        }
    }
    false
}

/// Compute all per-prime geometric invariants of the presentation's Pfaffian
/// curve. Requires dprime = 3 and the Pfaffian non-zero mod p.
pub fn invariants(pres: &GroupPresentation, p: u64) -> Result<PrimeInvariants> {
    if !is_prime(p) {
        return Err(ZetaError::NotPrime(p));
    }
    if pres.dprime() != 3 {
        return Err(ZetaError::WrongDPrime { expected: 3, got: pres.dprime() });
    }
    let pf = pfaffian(pres)?;
    invariants_of_curve(pres, &pf, p)
}

fn invariants_of_curve(pres: &GroupPresentation, pf: &MultiPoly, p: u64) -> Result<PrimeInvariants> {
    let f = pf.reduce_mod_p(p)?;
    if f.is_zero() {
        return Err(ZetaError::PfZeroModP { p });
    }
    let mut bad_reasons: Vec<String> = Vec::new();
    if !is_squarefree_mod_p(&f) {
        bad_reasons.push(format!("Pfaffian not square-free mod {p}"));
    }
    if contains_line(&f, p) {
        bad_reasons.push(format!("curve contains a rational line mod {p}"));
    }

    let pts = curve_points(&f, p)?;
    let mut smooth = 0u64;
    let mut nodes: Vec<NodeInfo> = Vec::new();
    for pt in &pts {
        let class = classify_singular(&f, pt, p)?;
        let j = rank_deficit(pres, pt, p);
        if j > 2 {
            bad_reasons.push(format!("rank deficit {j} > 2 at {:?}", pt.coords()));
        }
        match class {
            PointClass::Smooth => {
                smooth += 1;
                if j > 1 {
                    bad_reasons.push(format!(
                        "smooth point {:?} has rank deficit {j}; rank stratification outside scope",
                        pt.coords()
                    ));
                }
            }
            PointClass::Node { slopes_rational } => {
                let branch_count = if slopes_rational { 2 } else { 0 };
                if !slopes_rational {
                    bad_reasons.push(format!("node at {:?} has non-rational tangents mod {p}", pt.coords()));
                }
                nodes.push(NodeInfo { point: pt.clone(), rank_deficit: j, slopes_rational, branch_count });
            }
            PointClass::Worse => {
                bad_reasons.push(format!("singularity at {:?} is not an ordinary double point", pt.coords()));
                nodes.push(NodeInfo { point: pt.clone(), rank_deficit: j, slopes_rational: false, branch_count: 1 });
            }
        }
    }
    let c_total = smooth + nodes.iter().map(|n| n.branch_count as u64).sum::<u64>();
    let n1 = nodes.iter().filter(|n| n.branch_count == 2 && n.rank_deficit == 1).count() as u64;
    let n2 = nodes.iter().filter(|n| n.branch_count == 2 && n.rank_deficit == 2).count() as u64;
    Ok(PrimeInvariants {
        p,
        smooth_point_count: smooth,
        nodes,
        c_total,
        n1,
        n2,
        bad: !bad_reasons.is_empty(),
        bad_reasons,
    })
}
