//! Exact rational functions in two variables (X, Y) and three variables
//! (X, Y, Z) over big rationals.
//!
//! Convention: X stands for p and Y for p^{-s}; a monomial p^{a-bs} is the
//! exponent pair X^a Y^b. No gcd reduction is performed; equality is decided
//! by cross-multiplication, and canonicalisation only normalises the
//! denominator to primitive integer form with positive leading coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ZetaError};
use crate::polynomial::MultiPoly;

/// A Laurent monomial X^x Y^y (negative exponents permitted).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentMonomial {
    pub x: i64,
    pub y: i64,
}

impl LaurentMonomial {
    pub fn new(x: i64, y: i64) -> Self {
        LaurentMonomial { x, y }
    }

    pub fn one() -> Self {
        LaurentMonomial { x: 0, y: 0 }
    }
}

/// Exact rational function in X, Y.
#[derive(Clone)]
pub struct BiRat {
    num: MultiPoly, // 2 variables
    den: MultiPoly,
}

/// Exact rational function in X, Y, Z (cone generating functions).
#[derive(Clone, Debug)]
pub struct TriRat {
    num: MultiPoly, // 3 variables
    den: MultiPoly,
}

/// Truncated Dirichlet series in t = p^{-s}: coeffs[n] is the coefficient
/// of t^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    pub p: Option<u64>,
    pub coeffs: Vec<BigRational>,
}

impl ZetaSeries {
    pub fn new(p: Option<u64>, coeffs: Vec<BigRational>) -> Self {
        ZetaSeries { p, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul_truncated(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            for j in 0..(n - i) {
                if j < other.coeffs.len() {
                    out[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        ZetaSeries { p: self.p.or(other.p), coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        ZetaSeries { p: self.p.or(other.p), coeffs: out }
    }

    pub fn is_integral_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }
}

fn mono2(x: i64, y: i64) -> MultiPoly {
    assert!(x >= 0 && y >= 0);
    MultiPoly::monomial(2, &[x as u16, y as u16], BigRational::one())
}

impl BiRat {
    /// num / den, canonicalised. Panics on zero denominator.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert_eq!(num.nvars(), 2);
        assert_eq!(den.nvars(), 2);
        assert!(!den.is_zero(), "BiRat with zero denominator");
        let mut r = BiRat { num, den };
        r.normalize();
        r
    }

    pub fn zero() -> Self {
        BiRat { num: MultiPoly::zero(2), den: MultiPoly::one(2) }
    }

    pub fn one() -> Self {
        BiRat { num: MultiPoly::one(2), den: MultiPoly::one(2) }
    }

    pub fn from_int(n: i64) -> Self {
        BiRat { num: MultiPoly::from_int(2, n), den: MultiPoly::one(2) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        BiRat::new(p, MultiPoly::one(2))
    }

    /// X^a Y^b as a rational function; negative exponents go to the
    /// denominator.
    pub fn monomial(m: LaurentMonomial) -> Self {
        let num = mono2(m.x.max(0), m.y.max(0));
        let den = mono2((-m.x).max(0), (-m.y).max(0));
        BiRat::new(num, den)
    }

    /// 1 - X^a Y^b (a, b >= 0), the ubiquitous denominator factor.
    pub fn one_minus(a: i64, b: i64) -> MultiPoly {
        MultiPoly::one(2).sub(&mono2(a, b))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(2);
            return;
        }
        // scale so den is primitive integer with positive leading coefficient
        let d = self.den.primitive_part();
        // scale factor = d / den applied to num as well
        let (e, c) = self.den.terms().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let cd = d.coeff(&e);
        let scale = cd / c;
        self.num = self.num.scale(&scale);
        self.den = d;
    }

    pub fn add(&self, other: &Self) -> Self {
        BiRat::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        BiRat::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        BiRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BiRat::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(ZetaError::DivisionByZero);
        }
        Ok(BiRat::new(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        BiRat::new(self.num.scale(&BigRational::from_integer(BigInt::from(k))), self.den.clone())
    }

    pub fn pow(&self, n: usize) -> Self {
        BiRat::new(self.num.pow(n), self.den.pow(n))
    }

    /// Substitute X -> 1/X, Y -> 1/Y and clear negative exponents by the
    /// minimal common monomial on numerator and denominator.
    pub fn invert_vars(&self) -> Self {
        // term exponents negate; shift both polys by the joint maximum degree
        let max_deg = |p: &MultiPoly| -> (u16, u16) {
            let mut mx = 0;
            let mut my = 0;
            for (e, _) in p.terms() {
                mx = mx.max(e[0]);
                my = my.max(e[1]);
            }
            (mx, my)
        };
        let (nx, ny) = max_deg(&self.num);
        let (dx, dy) = max_deg(&self.den);
        let sx = nx.max(dx);
        let sy = ny.max(dy);
        let flip = |p: &MultiPoly| -> MultiPoly {
            let mut out = MultiPoly::zero(2);
            for (e, c) in p.terms() {
                out = out.add(&MultiPoly::monomial(2, &[sx - e[0], sy - e[1]], c.clone()));
            }
            out
        };
        // num/den of F(1/X,1/Y) = (X^sx Y^sy num(1/X,1/Y)) / (X^sx Y^sy den(1/X,1/Y));
        // the joint shift may leave a common monomial factor, removed next
        let mut num = flip(&self.num);
        let mut den = flip(&self.den);
        let min_deg = |p: &MultiPoly| -> (u16, u16) {
            let mut mx = u16::MAX;
            let mut my = u16::MAX;
            for (e, _) in p.terms() {
                mx = mx.min(e[0]);
                my = my.min(e[1]);
            }
            (mx, my)
        };
        let (ax, ay) = min_deg(&num);
        let (bx, by) = min_deg(&den);
        let (cx, cy) = (ax.min(bx), ay.min(by));
        if cx > 0 || cy > 0 {
            let unshift = |p: &MultiPoly| -> MultiPoly {
                let mut out = MultiPoly::zero(2);
                for (e, c) in p.terms() {
                    out = out.add(&MultiPoly::monomial(2, &[e[0] - cx, e[1] - cy], c.clone()));
                }
                out
            };
            num = unshift(&num);
            den = unshift(&den);
        }
        BiRat::new(num, den)
    }

    /// Truncated power-series expansion in Y at X = p: coefficients of
    /// Y^0..Y^K, exact rationals.
    pub fn expand_series(&self, p: u64, order: usize) -> Result<ZetaSeries> {
        let pr = BigRational::from_integer(BigInt::from(p));
        let uni = |poly: &MultiPoly| -> Vec<BigRational> {
            let mut out: Vec<BigRational> = vec![];
            for (e, c) in poly.terms() {
                let deg = e[1] as usize;
                if deg > order {
                    continue;
                }
                if out.len() <= deg {
                    out.resize(deg + 1, BigRational::zero());
                }
                let mut t = c.clone();
                for _ in 0..e[0] {
                    t *= &pr;
                }
                out[deg] += t;
            }
            out.resize(order + 1, BigRational::zero());
            out
        };
        let n = uni(&self.num);
        let mut d = uni(&self.den);
        // the full denominator could have vanished into high Y-degrees
        if self.den.terms().all(|(e, _)| e[1] as usize > order) {
            return Err(ZetaError::NonExpandable { p });
        }
        if d[0].is_zero() {
            return Err(ZetaError::NonExpandable { p });
        }
        let d0 = d[0].clone();
        for c in d.iter_mut() {
            *c /= &d0;
        }
        let mut out = vec![BigRational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = n[k].clone() / &d0;
            for i in 1..=k {
                acc -= &d[i] * &out[k - i];
            }
            out[k] = acc;
        }
        Ok(ZetaSeries::new(Some(p), out))
    }

    /// LaTeX fragment: numerator over the denominator as stored.
    pub fn to_latex(&self) -> String {
        format!("\\frac{{{}}}{{{}}}", latex_poly(&self.num), latex_poly(&self.den))
    }
}

impl PartialEq for BiRat {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplication equality
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for BiRat {}

impl fmt::Display for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", show_xy(&self.num), show_xy(&self.den))
    }
}

impl fmt::Debug for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn show_vars(p: &MultiPoly, names: &[&str]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(Vec<u16>, BigRational)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    terms.sort_by_key(|(e, _)| (e.iter().map(|&x| x as usize).sum::<usize>(), e.clone()));
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &ex)| ex > 0)
            .map(|(v, &ex)| if ex == 1 { names[v].to_string() } else { format!("{}^{}", names[v], ex) })
            .collect();
        let m = mono.join("*");
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() || !mag.is_one() {
            s.push_str(&mag.to_string());
            if !m.is_empty() {
                s.push('*');
            }
        }
        s.push_str(&m);
    }
    s
}

fn show_xy(p: &MultiPoly) -> String {
    show_vars(p, &["X", "Y"])
}

fn latex_poly(p: &MultiPoly) -> String {
    show_xy(p).replace('*', " ")
}

impl TriRat {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert_eq!(num.nvars(), 3);
        assert_eq!(den.nvars(), 3);
        assert!(!den.is_zero(), "TriRat with zero denominator");
        TriRat { num, den }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Substitute X -> X^{e} Y^{f} etc. per Laurent monomial, producing a
    /// genuine two-variable rational function after clearing negative
    /// exponents with one minimal monomial on numerator and denominator.
    pub fn substitute3(&self, mx: LaurentMonomial, my: LaurentMonomial, mz: LaurentMonomial) -> Result<BiRat> {
        let image = |p: &MultiPoly| -> Vec<(i64, i64, BigRational)> {
            p.terms()
                .map(|(e, c)| {
                    let (a, b, cc) = (e[0] as i64, e[1] as i64, e[2] as i64);
                    (a * mx.x + b * my.x + cc * mz.x, a * mx.y + b * my.y + cc * mz.y, c.clone())
                })
                .collect()
        };
        let n = image(&self.num);
        let d = image(&self.den);
        // combined terms can collide; accumulate into maps keyed by exponents
        let accumulate = |v: &[(i64, i64, BigRational)], shift: (i64, i64)| -> MultiPoly {
            let mut out = MultiPoly::zero(2);
            for (x, y, c) in v {
                let ex = (x + shift.0) as u16;
                let ey = (y + shift.1) as u16;
                out = out.add(&MultiPoly::monomial(2, &[ex, ey], c.clone()));
            }
            out
        };
        let min_x = n.iter().chain(&d).map(|t| t.0).min().unwrap_or(0).min(0);
        let min_y = n.iter().chain(&d).map(|t| t.1).min().unwrap_or(0).min(0);
        let shift = (-min_x, -min_y);
        let num = accumulate(&n, shift);
        let den = accumulate(&d, shift);
        if den.is_zero() {
            return Err(ZetaError::DivisionByZero);
        }
        Ok(BiRat::new(num, den))
    }

    /// Trivariate series expansion by total degree (exact), used to compare a
    /// cone's closed form against its lattice points. The denominator must
    /// have a unit constant term.
    pub fn series_total_degree(&self, bound: usize) -> Result<MultiPoly> {
        let d0 = self.den.coeff(&[0, 0, 0]);
        if d0.is_zero() {
            return Err(ZetaError::NonExpandable { p: 0 });
        }
        let inv0 = BigRational::one() / d0;
        // g = 1 - den/d0 has no constant term; 1/den = (1/d0) sum g^k
        let g = MultiPoly::one(3).sub(&self.den.scale(&inv0)).truncate_total_degree(bound);
        let mut inv = MultiPoly::one(3);
        let mut acc = MultiPoly::one(3);
        for _ in 0..bound {
            acc = acc.mul(&g).truncate_total_degree(bound);
            if acc.is_zero() {
                break;
            }
            inv = inv.add(&acc);
        }
        Ok(self.num.mul(&inv.scale(&inv0)).truncate_total_degree(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(a: i64, b: i64) -> BiRat {
        BiRat::monomial(LaurentMonomial::new(a, b))
    }

    fn one_minus_xy() -> MultiPoly {
        BiRat::one_minus(1, 1)
    }

    #[test]
    fn common_denominator_addition() {
        // 1/(1-XY) + XY/(1-XY) = (1+XY)/(1-XY)
        let a = BiRat::new(MultiPoly::one(2), one_minus_xy());
        let b = BiRat::new(mono2(1, 1), one_minus_xy());
        let sum = a.add(&b);
        let expect = BiRat::new(MultiPoly::one(2).add(&mono2(1, 1)), one_minus_xy());
        assert_eq!(sum, expect);
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = BiRat::new(
            MultiPoly::one(2).add(&mono2(3, 2)),
            BiRat::one_minus(2, 1).mul(&BiRat::one_minus(1, 3)),
        );
        let inv = BiRat::one().div(&f).unwrap();
        assert_eq!(f.mul(&inv), BiRat::one());
        assert!(f.div(&BiRat::zero()).is_err());
        assert_eq!(f.sub(&f), BiRat::zero());
    }

    #[test]
    fn invert_vars_is_involution() {
        let f = BiRat::new(
            MultiPoly::one(2).add(&mono2(4, 5)).add(&mono2(2, 0)),
            BiRat::one_minus(6, 5).mul(&BiRat::one_minus(0, 2)),
        );
        assert_eq!(f.invert_vars().invert_vars(), f);
        assert_eq!(BiRat::one().invert_vars(), BiRat::one());
    }

    #[test]
    fn expand_geometric_series() {
        // 1/(1 - pY) at p=3: [1, 3, 9, 27, 81]
        let f = BiRat::new(MultiPoly::one(2), BiRat::one_minus(1, 1));
        let s = f.expand_series(3, 4).unwrap();
        let want: Vec<i64> = vec![1, 3, 9, 27, 81];
        for (c, w) in s.coeffs.iter().zip(want) {
            assert_eq!(c, &BigRational::from_integer(BigInt::from(w)));
        }
    }

    #[test]
    fn expand_zeta_of_z2() {
        // prod_{i=0}^{1} (1 - X^i Y)^{-1} at p=2, K=2: [1, 3, 7]
        let f = BiRat::new(MultiPoly::one(2), BiRat::one_minus(0, 1).mul(&BiRat::one_minus(1, 1)));
        let s = f.expand_series(2, 2).unwrap();
        let want = [1i64, 3, 7];
        for (c, w) in s.coeffs.iter().zip(want) {
            assert_eq!(c, &BigRational::from_integer(BigInt::from(w)));
        }
    }

    #[test]
    fn expand_requires_unit_constant_term() {
        let f = BiRat::new(MultiPoly::one(2), mono2(0, 1));
        assert!(f.expand_series(3, 2).is_err());
    }

    #[test]
    fn series_is_multiplicative() {
        let f = BiRat::new(MultiPoly::one(2).add(&mono2(2, 1)), BiRat::one_minus(1, 1));
        let g = BiRat::new(MultiPoly::one(2), BiRat::one_minus(3, 2));
        let lhs = f.mul(&g).expand_series(5, 6).unwrap();
        let rhs = f.expand_series(5, 6).unwrap().mul_truncated(&g.expand_series(5, 6).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitute3_composes_exponents() {
        // F = XYZ/(1-XYZ), X -> X^{2r}Y^{2r+1}, Y,Z -> Y^2 (r = 3):
        // composite monomial X^6 Y^{7+2+2} = X^6 Y^11
        let num = MultiPoly::monomial(3, &[1, 1, 1], BigRational::one());
        let den = MultiPoly::one(3).sub(&MultiPoly::monomial(3, &[1, 1, 1], BigRational::one()));
        let f = TriRat::new(num, den);
        let r = 3i64;
        let g = f
            .substitute3(
                LaurentMonomial::new(2 * r, 2 * r + 1),
                LaurentMonomial::new(0, 2),
                LaurentMonomial::new(0, 2),
            )
            .unwrap();
        let m = mono2(6, 11);
        let expect = BiRat::new(m.clone(), MultiPoly::one(2).sub(&m));
        assert_eq!(g, expect);
    }

    #[test]
    fn substitute3_identity_collapse() {
        // X,Y,Z -> X,Y,Y collapses to two variables
        let num = MultiPoly::monomial(3, &[1, 0, 1], BigRational::one());
        let den = MultiPoly::one(3).sub(&MultiPoly::monomial(3, &[0, 1, 1], BigRational::one()));
        let f = TriRat::new(num, den);
        let g = f
            .substitute3(
                LaurentMonomial::new(1, 0),
                LaurentMonomial::new(0, 1),
                LaurentMonomial::new(0, 1),
            )
            .unwrap();
        let expect = BiRat::new(mono2(1, 1), MultiPoly::one(2).sub(&mono2(0, 2)));
        assert_eq!(g, expect);
    }

    #[test]
    fn tri_series_matches_geometric() {
        // XYZ/(1-XYZ) = sum_{a>=1} (XYZ)^a
        let num = MultiPoly::monomial(3, &[1, 1, 1], BigRational::one());
        let den = MultiPoly::one(3).sub(&num.clone());
        let f = TriRat::new(num, den);
        let s = f.series_total_degree(9).unwrap();
        let mut expect = MultiPoly::zero(3);
        for a in 1..=3u16 {
            expect = expect.add(&MultiPoly::monomial(3, &[a, a, a], BigRational::one()));
        }
        assert_eq!(s, expect);
    }

    #[test]
    fn cross_multiplication_equality() {
        // (1-X^2Y^2)/(1-XY) == 1+XY
        let a = BiRat::new(BiRat::one_minus(2, 2), one_minus_xy());
        let b = BiRat::from_poly(MultiPoly::one(2).add(&mono2(1, 1)));
        assert_eq!(a, b);
    }
}
