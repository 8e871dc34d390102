//! Cone decompositions behind the node correction terms.
//!
//! Lattices lifting a fixed node of the curve are fibred over the cone
//! N = {(a,b,c) in N_{>0}^3 : a >= b, a >= c} by (a, v_p(x_1), v_p(x_2)),
//! where the x_i are the local coordinates of the two vanishing entries
//! (rank deficit 4) or the two branch factors (rank deficit 2). Each
//! contribution is |fiber| * psi(a,b,c), and splitting N into subcones makes
//! the summand a pure Laurent monomial per cone, so the total is a finite
//! sum of substituted cone zeta functions:
//!
//!   A = sum_j (1 - X^{-1})^{n_j - 1} F_j(X,Y,Z) |_{X,Y,Z -> m_{j,*}}
//!
//! The monomial columns recorded here are the ones forced by psi and the
//! fiber counts (the s-exponents on the Y/Z columns come out positive, i.e.
//! p^{2s} and p^{-1+2s} where applicable); `laurent_identity_holds` checks
//! this pointwise and symbolically in p, and `enumerate_a` validates the
//! whole table against direct summation with no cones at all.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::polynomial::MultiPoly;
use crate::ratfun::{BiRat, LaurentMonomial, TriRat, ZetaSeries};

/// One linear condition on (a, b, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// coeffs . (a,b,c) == 0
    Zero([i64; 3]),
    /// coeffs . (a,b,c) > 0
    Positive([i64; 3]),
}

impl Constraint {
    fn holds(&self, pt: (i64, i64, i64)) -> bool {
        let dot = |c: &[i64; 3]| c[0] * pt.0 + c[1] * pt.1 + c[2] * pt.2;
        match self {
            Constraint::Zero(c) => dot(c) == 0,
            Constraint::Positive(c) => dot(c) > 0,
        }
    }
}

/// A subcone of N with its rational generating function and the label n_j
/// entering the (1 - p^{-1})^{n_j - 1} factor.
#[derive(Clone, Debug)]
pub struct Cone {
    pub name: &'static str,
    pub constraints: Vec<Constraint>,
    pub closed_form: TriRat,
    pub n_j: u32,
}

impl Cone {
    /// Membership in the cone, inside the ambient N (positivity and
    /// a >= b, a >= c are part of every cone's constraint list).
    pub fn contains(&self, a: i64, b: i64, c: i64) -> bool {
        self.constraints.iter().all(|ct| ct.holds((a, b, c)))
    }
}

/// The Laurent-monomial weights attached to one cone row.
#[derive(Clone, Copy, Debug)]
pub struct ConeWeights {
    pub m_x: LaurentMonomial,
    pub m_y: LaurentMonomial,
    pub m_z: LaurentMonomial,
}

/// Number of lattice classes over a cone point, as (1-p^{-1})^eps * p^exp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberCount {
    pub eps_pow: u32,
    pub p_exp: i64,
}

impl FiberCount {
    pub fn eval(&self, p: u64) -> BigRational {
        let pr = BigRational::from_integer(BigInt::from(p));
        let eps = BigRational::one() - BigRational::one() / pr.clone();
        let mut out = BigRational::one();
        for _ in 0..self.eps_pow {
            out *= &eps;
        }
        assert!(self.p_exp >= 0);
        for _ in 0..self.p_exp {
            out *= &pr;
        }
        out
    }
}

/// |phi^{-1}(a,b,c)| on N: 1 on the diagonal, (1-p^{-1}) p^{a-b} or
/// p^{a-c} on the two walls, (1-p^{-1})^2 p^{2a-b-c} in the interior.
pub fn fiber_count(a: i64, b: i64, c: i64) -> Result<FiberCount> {
    if !(a >= b && a >= c && b >= 1 && c >= 1) {
        return Err(crate::error::ZetaError::InvalidInput(format!(
            "({a},{b},{c}) outside the cone a >= b, a >= c, all positive"
        )));
    }
    Ok(if a == b && a == c {
        FiberCount { eps_pow: 0, p_exp: 0 }
    } else if a > b && a == c {
        FiberCount { eps_pow: 1, p_exp: a - b }
    } else if a > c && a == b {
        FiberCount { eps_pow: 1, p_exp: a - c }
    } else {
        FiberCount { eps_pow: 2, p_exp: 2 * a - b - c }
    })
}

/// Weight monomial for a rank-deficit-4 node:
/// p^{2ra} t^{(2r+1)a - 2 min(a,b) - 2 min(a,c)}.
pub fn psi_deficit4(a: i64, b: i64, c: i64, r: i64) -> Result<LaurentMonomial> {
    check_cone(a, b, c)?;
    Ok(LaurentMonomial::new(2 * r * a, (2 * r + 1) * a - 2 * a.min(b) - 2 * a.min(c)))
}

/// Weight monomial for a rank-deficit-2 node:
/// p^{2ra} t^{(2r+1)a - 2 min(a, b+c)}.
pub fn psi_deficit2(a: i64, b: i64, c: i64, r: i64) -> Result<LaurentMonomial> {
    check_cone(a, b, c)?;
    Ok(LaurentMonomial::new(2 * r * a, (2 * r + 1) * a - 2 * a.min(b + c)))
}

fn check_cone(a: i64, b: i64, c: i64) -> Result<()> {
    if a >= b && a >= c && b >= 1 && c >= 1 {
        Ok(())
    } else {
        Err(crate::error::ZetaError::InvalidInput(format!("({a},{b},{c}) outside cone")))
    }
}

fn t_mono(e: [u16; 3]) -> MultiPoly {
    MultiPoly::monomial(3, &e, BigRational::one())
}

fn one3() -> MultiPoly {
    MultiPoly::one(3)
}

fn one_minus3(e: [u16; 3]) -> MultiPoly {
    one3().sub(&t_mono(e))
}

/// The cone rows for one deficit. Constraints include the ambient
/// conditions, so the rows of each table tile N disjointly.
pub fn cone_table(deficit: u32, r: i64) -> Vec<(Cone, ConeWeights)> {
    assert!(deficit == 2 || deficit == 4);
    assert!(r >= 2);
    let ge_b = Constraint::Positive([1, -1, 0]); // a > b
    let ge_c = Constraint::Positive([1, 0, -1]); // a > c
    let eq_b = Constraint::Zero([1, -1, 0]); // a = b
    let eq_c = Constraint::Zero([1, 0, -1]); // a = c
    let pos = [Constraint::Positive([1, 0, 0]), Constraint::Positive([0, 1, 0]), Constraint::Positive([0, 0, 1])];

    let f_diag = TriRat::new(t_mono([1, 1, 1]), one_minus3([1, 1, 1]));
    let f_wall_b = TriRat::new(
        t_mono([2, 1, 2]),
        one_minus3([1, 1, 1]).mul(&one_minus3([1, 0, 1])),
    );
    let f_wall_c = TriRat::new(
        t_mono([2, 2, 1]),
        one_minus3([1, 1, 1]).mul(&one_minus3([1, 1, 0])),
    );

    let base = |name, extra: Vec<Constraint>, closed_form, n_j| {
        let mut constraints = pos.to_vec();
        constraints.extend(extra);
        Cone { name, constraints, closed_form, n_j }
    };

    if deficit == 4 {
        let f_interior = TriRat::new(
            t_mono([2, 1, 1]).mul(&one3().sub(&t_mono([2, 1, 1]))),
            one_minus3([1, 1, 1])
                .mul(&one_minus3([1, 1, 0]))
                .mul(&one_minus3([1, 0, 1]))
                .mul(&one_minus3([1, 0, 0])),
        );
        vec![
            (
                base("a=b=c", vec![eq_b, eq_c], f_diag, 1),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r, 2 * r + 1),
                    m_y: LaurentMonomial::new(0, -2),
                    m_z: LaurentMonomial::new(0, -2),
                },
            ),
            (
                base("a=c>b", vec![ge_b, eq_c], f_wall_b, 2),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 1, 2 * r + 1),
                    m_y: LaurentMonomial::new(-1, -2),
                    m_z: LaurentMonomial::new(0, -2),
                },
            ),
            (
                base("a=b>c", vec![eq_b, ge_c], f_wall_c, 2),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 1, 2 * r + 1),
                    m_y: LaurentMonomial::new(0, -2),
                    m_z: LaurentMonomial::new(-1, -2),
                },
            ),
            (
                base("a>b,a>c", vec![ge_b, ge_c], f_interior, 3),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 2, 2 * r + 1),
                    m_y: LaurentMonomial::new(-1, -2),
                    m_z: LaurentMonomial::new(-1, -2),
                },
            ),
        ]
    } else {
        let f_balance = TriRat::new(
            t_mono([2, 1, 1]),
            one_minus3([1, 1, 0]).mul(&one_minus3([1, 0, 1])),
        );
        let f_above = TriRat::new(
            t_mono([3, 1, 1]),
            one_minus3([1, 1, 0]).mul(&one_minus3([1, 0, 1])).mul(&one_minus3([1, 0, 0])),
        );
        let f_below = TriRat::new(
            t_mono([3, 2, 2]),
            one_minus3([1, 1, 0]).mul(&one_minus3([1, 0, 1])).mul(&one_minus3([1, 1, 1])),
        );
        vec![
            (
                base("a=b=c", vec![eq_b, eq_c], f_diag, 1),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r, 2 * r - 1),
                    m_y: LaurentMonomial::one(),
                    m_z: LaurentMonomial::one(),
                },
            ),
            (
                base("a=c>b", vec![ge_b, eq_c], f_wall_b, 2),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 1, 2 * r - 1),
                    m_y: LaurentMonomial::new(-1, 0),
                    m_z: LaurentMonomial::one(),
                },
            ),
            (
                base("a=b>c", vec![eq_b, ge_c], f_wall_c, 2),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 1, 2 * r - 1),
                    m_y: LaurentMonomial::one(),
                    m_z: LaurentMonomial::new(-1, 0),
                },
            ),
            (
                base("a=b+c", vec![ge_b, ge_c, Constraint::Zero([1, -1, -1])], f_balance, 3),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 2, 2 * r - 1),
                    m_y: LaurentMonomial::new(-1, 0),
                    m_z: LaurentMonomial::new(-1, 0),
                },
            ),
            (
                base("a>b+c", vec![ge_b, ge_c, Constraint::Positive([1, -1, -1])], f_above, 3),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 2, 2 * r + 1),
                    m_y: LaurentMonomial::new(-1, -2),
                    m_z: LaurentMonomial::new(-1, -2),
                },
            ),
            (
                base("a<b+c", vec![ge_b, ge_c, Constraint::Positive([-1, 1, 1])], f_below, 3),
                ConeWeights {
                    m_x: LaurentMonomial::new(2 * r + 2, 2 * r - 1),
                    m_y: LaurentMonomial::new(-1, 0),
                    m_z: LaurentMonomial::new(-1, 0),
                },
            ),
        ]
    }
}

/// Pointwise form of the Laurent identity on one cone row:
/// |fiber| psi / (1-p^{-1})^{n_j-1} = mX^a mY^b mZ^c, checked symbolically
/// in p as an (epsilon power, X-exponent, Y-exponent) comparison.
pub fn laurent_identity_holds(deficit: u32, r: i64, row: &(Cone, ConeWeights), a: i64, b: i64, c: i64) -> bool {
    let (cone, wts) = row;
    if !cone.contains(a, b, c) {
        return true;
    }
    let fiber = fiber_count(a, b, c).unwrap();
    if fiber.eps_pow != cone.n_j - 1 {
        return false;
    }
    let psi = if deficit == 4 {
        psi_deficit4(a, b, c, r).unwrap()
    } else {
        psi_deficit2(a, b, c, r).unwrap()
    };
    let x_exp = fiber.p_exp + psi.x;
    let y_exp = psi.y;
    let mx = a * wts.m_x.x + b * wts.m_y.x + c * wts.m_z.x;
    let my = a * wts.m_x.y + b * wts.m_y.y + c * wts.m_z.y;
    (x_exp, y_exp) == (mx, my)
}

/// The correction term rebuilt from the cone table:
/// sum_j (1 - X^{-1})^{n_j - 1} F_j(m_{j,X}, m_{j,Y}, m_{j,Z}).
/// Deficit 4 yields A^(4), deficit 2 yields A^(3).
pub fn assemble_a(deficit: u32, r: i64) -> Result<BiRat> {
    let x = MultiPoly::monomial(2, &[1, 0], BigRational::one());
    let eps = BiRat::new(x.sub(&MultiPoly::one(2)), x); // 1 - X^{-1} = (X-1)/X
    let mut total = BiRat::zero();
    for (cone, wts) in cone_table(deficit, r) {
        let sub = cone.closed_form.substitute3(wts.m_x, wts.m_y, wts.m_z)?;
        total = total.add(&eps.pow((cone.n_j - 1) as usize).mul(&sub));
    }
    Ok(total)
}

/// Independent check: sum |fiber| * psi directly over the cone points with
/// Y-exponent <= order, with no cone decomposition at all.
pub fn enumerate_a(deficit: u32, r: i64, p: u64, order: usize) -> ZetaSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let growth = if deficit == 4 { 2 * r - 3 } else { 2 * r - 1 };
    let a_max = (order as i64) / growth + 1;
    let pr = BigRational::from_integer(BigInt::from(p));
    for a in 1..=a_max {
        for b in 1..=a {
            for c in 1..=a {
                let psi = if deficit == 4 {
                    psi_deficit4(a, b, c, r).unwrap()
                } else {
                    psi_deficit2(a, b, c, r).unwrap()
                };
                let y = psi.y;
                if y < 0 || y as usize > order {
                    continue;
                }
                let fib = fiber_count(a, b, c).unwrap().eval(p);
                let mut term = fib;
                for _ in 0..psi.x {
                    term *= &pr;
                }
                coeffs[y as usize] += term;
            }
        }
    }
    ZetaSeries::new(Some(p), coeffs)
}
