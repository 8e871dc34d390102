//! Exact multivariate polynomial arithmetic over Q.
//!
//! `MultiPoly` stores a sparse term map from exponent vectors to rational
//! coefficients. This is enough to compute determinants and Pfaffians of
//! matrices of linear forms, reduce mod p, and test square-freeness over Q.
//! Degrees and variable counts stay tiny (d' <= 6, degree <= d/2), so no
//! attempt is made at asymptotically clever algorithms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ZetaError};
use crate::fp::FpPoly;
use crate::presentations::GroupPresentation;

/// Sparse multivariate polynomial with arbitrary-precision rational
/// coefficients. No zero coefficient is ever stored; the term map is ordered,
/// so printing and iteration are deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The monomial c * prod x_i^{exps[i]}.
    pub fn monomial(nvars: usize, exps: &[u16], c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        Self::monomial(nvars, &e, BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn insert_term(&mut self, exps: Vec<u16>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, c0) in &self.terms {
            out.terms.insert(e.clone(), c0 * c);
        }
        out
    }

    pub fn pow(&self, mut n: usize) -> Self {
        let mut base = self.clone();
        let mut out = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            let k = BigRational::from_integer(BigInt::from(e[var]));
            out.insert_term(e2, c * k);
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute each variable by a polynomial (in a possibly different ring).
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map(|p| p.nvars).unwrap_or(self.nvars);
        let mut out = MultiPoly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(nv, c.clone());
            for (i, &ex) in e.iter().enumerate() {
                if ex > 0 {
                    t = t.mul(&images[i].pow(ex as usize));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Discard every term of total degree > bound (series truncation helper).
    pub fn truncate_total_degree(&self, bound: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as usize).sum::<usize>() <= bound {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient-wise reduction mod p. Fails if p divides a denominator.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpPoly> {
        let pb = BigInt::from(p);
        let mut out = FpPoly::zero(p, self.nvars);
        for (e, c) in &self.terms {
            let den = c.denom();
            if (den % &pb).is_zero() {
                return Err(ZetaError::NotPIntegral { p });
            }
            let num_m = modulo(c.numer(), p);
            let den_m = modulo(den, p);
            let inv = crate::fp::inv_mod(den_m, p);
            out.insert(e.clone(), num_m * inv % p);
        }
        Ok(out)
    }

    /// Multiply by the lcm of coefficient denominators and divide by the gcd of
    /// numerators: primitive integer form, leading coefficient positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            gcd = num_integer::gcd(gcd, c.numer() * &lcm / c.denom());
        }
        let mut scale = BigRational::new(lcm, gcd);
        // sign: make the leading (largest exponent vector) coefficient positive
        let lead = self.terms.iter().next_back().unwrap().1;
        if (lead * &scale).is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

fn modulo(n: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let r = ((n % &pb) + &pb) % &pb;
    r.to_u64().unwrap()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = (0..self.nvars).map(|i| format!("y{}", i + 1)).collect();
        // graded lexicographic order for display
        let mut terms: Vec<(&Vec<u16>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| {
            (e.iter().map(|&x| x as usize).sum::<usize>(), e.iter().map(|&x| std::cmp::Reverse(x)).collect::<Vec<_>>())
        });
        let mut first = true;
        for (e, c) in terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &ex)| ex > 0)
                .map(|(i, &ex)| if ex == 1 { names[i].clone() } else { format!("{}^{}", names[i], ex) })
                .collect();
            let mstr = mono.join("*");
            let is_const = mstr.is_empty();
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if is_const || !mag.is_one() {
                write!(f, "{}", mag)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", mstr)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Pfaffian of the antisymmetric matrix of linear forms of a presentation,
/// a homogeneous polynomial of degree d/2 in y_1..y_{d'}.
///
/// Computed by the recursive expansion
///   Pf(A) = sum_t (-1)^{t-1} A[s_0][s_t] Pf(A minus rows/cols s_0, s_t)
/// memoised over index subsets; at d <= 10 this is a few hundred products.
pub fn pfaffian(p: &GroupPresentation) -> Result<MultiPoly> {
    let d = p.d();
    if d % 2 != 0 {
        return Err(ZetaError::InvalidPresentation("d must be even".into()));
    }
    let nv = p.dprime();
    let entries: Vec<Vec<MultiPoly>> = (0..d)
        .map(|i| (0..d).map(|j| p.entry(i, j).to_poly()).collect())
        .collect();
    let mut memo: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    memo.insert(0, MultiPoly::one(nv));
    Ok(pf_rec(&entries, (1u32 << d) - 1, nv, &mut memo))
}

fn pf_rec(m: &[Vec<MultiPoly>], mask: u32, nv: usize, memo: &mut BTreeMap<u32, MultiPoly>) -> MultiPoly {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let s0 = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << s0);
    let mut acc = MultiPoly::zero(nv);
    let mut t = 0;
    let mut j = rest;
    while j != 0 {
        let sj = j.trailing_zeros() as usize;
        j &= !(1 << sj);
        let sub = rest & !(1 << sj);
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let term = m[s0][sj].mul(&pf_rec(m, sub, nv, memo));
        acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
        t += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Determinant of the matrix of forms, computed by row expansion memoised
/// over column subsets. Serves as the independent cross-check Pf^2 = det.
pub fn determinant(p: &GroupPresentation) -> MultiPoly {
    let d = p.d();
    let nv = p.dprime();
    let entries: Vec<Vec<MultiPoly>> = (0..d)
        .map(|i| (0..d).map(|j| p.entry(i, j).to_poly()).collect())
        .collect();
    // minors[mask] = det of rows 0..popcount(mask), columns in mask
    let mut memo: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    memo.insert(0, MultiPoly::one(nv));
    det_rec(&entries, (1u32 << d) - 1, nv, &mut memo)
}

fn det_rec(m: &[Vec<MultiPoly>], mask: u32, nv: usize, memo: &mut BTreeMap<u32, MultiPoly>) -> MultiPoly {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = mask.count_ones() as usize - 1;
    let mut acc = MultiPoly::zero(nv);
    let mut pos = 0;
    let mut j = mask;
    while j != 0 {
        let col = j.trailing_zeros() as usize;
        j &= !(1 << col);
        let sub = mask & !(1 << col);
        let term = m[row][col].mul(&det_rec(m, sub, nv, memo));
        acc = if (row + pos) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Square-freeness over Q.
///
/// For a homogeneous f in <= 3 variables: strip the last variable that occurs,
/// dehomogenise there, and decide square-freeness of the resulting bivariate
/// (or univariate) polynomial via gcd with its partials. A repeated factor of
/// f survives dehomogenisation except for the chart variable itself, whose
/// multiplicity is checked separately.
pub fn is_squarefree_over_q(f: &MultiPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(ZetaError::ZeroPolynomial);
    }
    let used: Vec<usize> = (0..f.nvars()).filter(|&v| f.degree_in(v) > 0).collect();
    if used.is_empty() {
        return Ok(true); // nonzero constant
    }
    // valuation at the chart variable
    let chart = *used.last().unwrap();
    let val = f.terms.keys().map(|e| e[chart]).min().unwrap();
    if val >= 2 {
        return Ok(false);
    }
    // dehomogenise: set chart variable to 1, keep the others
    let keep: Vec<usize> = (0..f.nvars()).filter(|&v| v != chart).collect();
    let mut u = MultiPoly::zero(keep.len());
    for (e, c) in &f.terms {
        if e[chart] >= val {
            let e2: Vec<u16> = keep.iter().map(|&v| e[v]).collect();
            u.insert_term(e2, c.clone());
        }
    }
    Ok(squarefree_dense(&u))
}

/// Square-freeness of a polynomial in <= 2 effective variables over Q:
/// gcd(f, all partials) constant.
fn squarefree_dense(f: &MultiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut g = f.clone();
    for v in 0..f.nvars() {
        if f.degree_in(v) > 0 {
            g = gcd_multi(&g, &f.partial(v));
        }
    }
    g.total_degree() == 0
}

/// Multivariate gcd for the tiny cases needed here (<= 2 variables),
/// via primitive pseudo-remainder sequences in the highest variable.
fn gcd_multi(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let nv = a.nvars();
    let var = match (0..nv).rev().find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0) {
        None => return MultiPoly::one(nv), // both constants
        Some(v) => v,
    };
    // treat as polynomials in `var` with coefficients in the remaining vars
    let ca = content_wrt(a, var);
    let cb = content_wrt(b, var);
    let cont = gcd_multi(&ca, &cb);
    let pa = exact_div_by(a, &ca, var);
    let pb = exact_div_by(b, &cb, var);
    let prim = gcd_prs(&pa, &pb, var);
    cont.mul(&prim).primitive_part()
}

/// Content of f with respect to variable `var`: gcd of the coefficient
/// polynomials of var^k.
fn content_wrt(f: &MultiPoly, var: usize) -> MultiPoly {
    let mut cont = MultiPoly::zero(f.nvars());
    for k in 0..=f.degree_in(var) {
        let c = coeff_of(f, var, k);
        if !c.is_zero() {
            cont = gcd_multi(&cont, &c);
        }
    }
    cont
}

fn coeff_of(f: &MultiPoly, var: usize, k: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(f.nvars());
    for (e, c) in &f.terms {
        if e[var] as usize == k {
            let mut e2 = e.clone();
            e2[var] = 0;
            out.insert_term(e2, c.clone());
        }
    }
    out
}

/// Divide f by a content polynomial c (exact, c has no `var`-dependence).
fn exact_div_by(f: &MultiPoly, c: &MultiPoly, var: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(f.nvars());
    let mut rem = f.clone();
    // long division by leading term of c in the remaining variables
    let (le, lc) = c.terms.iter().next_back().map(|(e, co)| (e.clone(), co.clone())).unwrap();
    while !rem.is_zero() {
        let (re, rc) = rem.terms.iter().next_back().map(|(e, co)| (e.clone(), co.clone())).unwrap();
        let mut qe = vec![0u16; f.nvars()];
        for i in 0..f.nvars() {
            assert!(re[i] >= le[i], "exact_div_by: division not exact");
            qe[i] = re[i] - le[i];
        }
        let qc = rc / lc.clone();
        let q = MultiPoly::monomial(f.nvars(), &qe, qc);
        out = out.add(&q);
        rem = rem.sub(&q.mul(c));
        let _ = var;
    }
    out
}

/// Primitive PRS gcd of two var-primitive polynomials in `var`.
fn gcd_prs(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if g.is_zero() {
            let cf = content_wrt(&f, var);
            return exact_div_by(&f, &cf, var).primitive_part();
        }
        if g.degree_in(var) == 0 {
            // var-primitive pair with a var-free remainder: gcd is var-free,
            // and both inputs are var-primitive, so it is the content gcd
            return gcd_multi(&content_wrt(&f, var), &g);
        }
        let r = pseudo_rem(&f, &g, var);
        f = g;
        let cr = if r.is_zero() { MultiPoly::zero(r.nvars()) } else { content_wrt(&r, var) };
        g = if r.is_zero() { r } else { exact_div_by(&r, &cr, var) };
    }
}

/// Pseudo-remainder of f by g in `var`: lc(g)^{df-dg+1} f mod g.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let dg = g.degree_in(var);
    let lg = coeff_of(g, var, dg);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= dg {
        let dr = r.degree_in(var);
        let lr = coeff_of(&r, var, dr);
        // r <- lg * r - lr * var^{dr-dg} * g
        let mut shift_e = vec![0u16; f.nvars()];
        shift_e[var] = (dr - dg) as u16;
        let shift = MultiPoly::monomial(f.nvars(), &shift_e, BigRational::one());
        r = r.mul(&lg).sub(&lr.mul(&shift).mul(g));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::builtin;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn pfaffian_2x2_base_case() {
        // matrix [[0, y1], [-y1, 0]] has Pfaffian y1
        let m = crate::presentations::GroupPresentation::from_upper_triangle(
            2,
            1,
            vec![((0, 1), vec![1])],
            None,
        )
        .unwrap();
        let pf = pfaffian(&m).unwrap();
        assert_eq!(pf, MultiPoly::var(1, 0));
    }

    #[test]
    fn pfaffian_squares_to_determinant_on_builtins() {
        for name in ["G1C", "G2C", "dusautoy-E"] {
            let p = builtin(name, &[("D", 3)]).unwrap();
            let pf = pfaffian(&p).unwrap();
            let det = determinant(&p);
            assert_eq!(pf.mul(&pf), det, "Pf^2 != det for {name}");
        }
    }

    #[test]
    fn pfaffian_of_g1c_matches_curve() {
        // det R1 = y1^3 - y1^2 y3 - y2^2 y3, the nodal cubic chart y^2 = x^3 - x^2
        let p = builtin("G1C", &[]).unwrap();
        let pf = pfaffian(&p).unwrap();
        assert!(pf.is_homogeneous());
        assert_eq!(pf.total_degree(), 3);
        let pm = pf.primitive_part();
        let y1 = MultiPoly::var(3, 0);
        let y2 = MultiPoly::var(3, 1);
        let y3 = MultiPoly::var(3, 2);
        let curve = y1.pow(3).sub(&y1.pow(2).mul(&y3)).sub(&y2.pow(2).mul(&y3));
        assert!(pm == curve || pm == curve.neg(), "got {}", pm);
    }

    #[test]
    fn pfaffian_of_dusautoy_is_det_r() {
        // block form [[0,R],[-R^t,0]] gives det M = (det R)^2
        let p = builtin("dusautoy-E", &[("D", 5)]).unwrap();
        let pf = pfaffian(&p).unwrap();
        let det = determinant(&p);
        assert_eq!(pf.mul(&pf), det);
        assert_eq!(pf.total_degree(), 3);
        // lambda_{1,4,3} = D = 5: coefficient of y3 in entry (0,3)
        let t = p.structure_constants();
        assert_eq!(t.lambda(0, 3, 2), BigInt::from(5));
    }

    #[test]
    fn transposition_negates_pfaffian() {
        let p = builtin("G2C", &[]).unwrap();
        let q = p.swap_basis_vectors(0, 1);
        let a = pfaffian(&p).unwrap();
        let b = pfaffian(&q).unwrap();
        assert_eq!(a, b.neg());
    }

    #[test]
    fn squarefree_examples() {
        let y1 = MultiPoly::var(3, 0);
        let y2 = MultiPoly::var(3, 1);
        assert!(is_squarefree_over_q(&y1).unwrap());
        let sq = y1.mul(&y1).mul(&y2);
        assert!(!is_squarefree_over_q(&sq).unwrap());
        let g2 = builtin("G2C", &[]).unwrap();
        assert!(is_squarefree_over_q(&pfaffian(&g2).unwrap()).unwrap());
        // cusp y2^2 y3 - y1^3 is squarefree
        let y3 = MultiPoly::var(3, 2);
        let cusp = y2.pow(2).mul(&y3).sub(&y1.pow(3));
        assert!(is_squarefree_over_q(&cusp).unwrap());
        // (y1 + y2)^2 (y1 - y2) is not
        let s = y1.add(&y2).pow(2).mul(&y1.sub(&y2));
        assert!(!is_squarefree_over_q(&s).unwrap());
        assert!(is_squarefree_over_q(&MultiPoly::zero(3)).is_err());
    }

    #[test]
    fn reduce_mod_p_examples() {
        // (3 y1 + y2) mod 3 = y2
        let f = MultiPoly::var(2, 0).scale(&rat(3)).add(&MultiPoly::var(2, 1));
        let r = f.reduce_mod_p(3).unwrap();
        assert_eq!(r.eval(&[1, 0]), 0);
        assert_eq!(r.eval(&[0, 1]), 1);
        assert_eq!(r.num_terms(), 1);
        // (y1/2) mod 3 = 2 y1
        let h = MultiPoly::var(1, 0).scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        let r = h.reduce_mod_p(3).unwrap();
        assert_eq!(r.eval(&[1]), 2);
        // 1/3 mod 3 fails
        let c = MultiPoly::constant(1, BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(c.reduce_mod_p(3).is_err());
    }

    #[test]
    fn reduce_mod_p_multiplicative() {
        let f = MultiPoly::var(2, 0).add(&MultiPoly::from_int(2, 7));
        let g = MultiPoly::var(2, 1).scale(&rat(5)).sub(&MultiPoly::var(2, 0));
        let lhs = f.mul(&g).reduce_mod_p(11).unwrap();
        let rhs = f.reduce_mod_p(11).unwrap().mul(&g.reduce_mod_p(11).unwrap());
        assert_eq!(lhs, rhs);
    }
}
