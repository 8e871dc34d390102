//! Class-2 nilpotent group presentations.
//!
//! A presentation is an antisymmetric d x d matrix M(y) of integer linear
//! forms in y_1..y_{d'}, encoding the commutator structure
//! [x_i, x_j] = M(y)_{ij} of a group with G/G' = Z^d and G' = Z^{d'}.
//! Everything else in the crate is derived from this object.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Result, ZetaError};
use crate::polynomial::MultiPoly;

/// An integer linear form in d' variables; coeffs[k] multiplies y_{k+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(dprime: usize) -> Self {
        LinearForm { coeffs: vec![BigInt::zero(); dprime] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        LinearForm { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        LinearForm { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// The form as a degree-1 polynomial in d' variables.
    pub fn to_poly(&self) -> MultiPoly {
        let nv = self.coeffs.len();
        let mut out = MultiPoly::zero(nv);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u16; nv];
                e[k] = 1;
                out = out.add(&MultiPoly::monomial(nv, &e, BigRational::from_integer(c.clone())));
            }
        }
        out
    }

    /// Evaluate at an integer point of y-space.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum()
    }
}

/// Antisymmetric matrix of linear forms defining a class-2 group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    d: usize,
    dprime: usize,
    matrix: Vec<Vec<LinearForm>>, // d x d
    name: Option<String>,
}

/// Unpacked structure constants: lambda_{ijk} = coefficient of y_{k+1}
/// in [x_{i+1}, x_{j+1}].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    d: usize,
    dprime: usize,
    lambda: Vec<BigInt>, // flattened [i][j][k]
}

impl StructureTensor {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dprime(&self) -> usize {
        self.dprime
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> BigInt {
        self.lambda[(i * self.d + j) * self.dprime + k].clone()
    }

    /// Structure constants reduced into [0, m) for modular work.
    pub fn reduced_mod(&self, m: u64) -> Vec<u64> {
        use num_traits::ToPrimitive;
        let mb = BigInt::from(m);
        self.lambda
            .iter()
            .map(|c| {
                let r = ((c % &mb) + &mb) % &mb;
                r.to_u64().unwrap()
            })
            .collect()
    }
}

impl GroupPresentation {
    /// Build from a full matrix; validates all invariants.
    pub fn new(d: usize, dprime: usize, matrix: Vec<Vec<LinearForm>>, name: Option<String>) -> Result<Self> {
        let p = GroupPresentation { d, dprime, matrix, name };
        p.validate()?;
        Ok(p)
    }

    /// Build from the strict upper triangle; the lower triangle is filled by
    /// antisymmetry and the diagonal with zero forms.
    pub fn from_upper_triangle(
        d: usize,
        dprime: usize,
        entries: Vec<((usize, usize), Vec<i64>)>,
        name: Option<String>,
    ) -> Result<Self> {
        let mut matrix = vec![vec![LinearForm::zero(dprime); d]; d];
        for ((i, j), coeffs) in entries {
            if i >= j || j >= d {
                return Err(ZetaError::InvalidPresentation(format!(
                    "upper-triangle entry ({i},{j}) out of range"
                )));
            }
            let f = LinearForm::from_i64(&coeffs);
            matrix[j][i] = f.neg();
            matrix[i][j] = f;
        }
        Self::new(d, dprime, matrix, name)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dprime(&self) -> usize {
        self.dprime
    }

    /// Half rank r with d = 2r.
    pub fn r(&self) -> usize {
        self.d / 2
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinearForm {
        &self.matrix[i][j]
    }

    /// Check all structural invariants, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        if self.d % 2 != 0 || self.d < 4 {
            return Err(ZetaError::InvalidPresentation(format!(
                "d must be even and >= 4, got {}",
                self.d
            )));
        }
        if self.dprime < 2 {
            return Err(ZetaError::InvalidPresentation(format!(
                "dprime must be >= 2, got {}",
                self.dprime
            )));
        }
        if self.matrix.len() != self.d || self.matrix.iter().any(|row| row.len() != self.d) {
            return Err(ZetaError::InvalidPresentation("matrix is not d x d".into()));
        }
        for i in 0..self.d {
            for j in 0..self.d {
                if self.matrix[i][j].len() != self.dprime {
                    return Err(ZetaError::InvalidPresentation(format!(
                        "entry ({i},{j}) has {} coefficients, expected dprime = {}",
                        self.matrix[i][j].len(),
                        self.dprime
                    )));
                }
            }
        }
        for i in 0..self.d {
            if !self.matrix[i][i].is_zero() {
                return Err(ZetaError::InvalidPresentation(format!("diagonal entry ({i},{i}) is non-zero")));
            }
            for j in (i + 1)..self.d {
                if self.matrix[j][i] != self.matrix[i][j].neg() {
                    return Err(ZetaError::InvalidPresentation(format!(
                        "not antisymmetric at entries ({i},{j}) / ({j},{i})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn structure_constants(&self) -> StructureTensor {
        let mut lambda = Vec::with_capacity(self.d * self.d * self.dprime);
        for i in 0..self.d {
            for j in 0..self.d {
                for k in 0..self.dprime {
                    lambda.push(self.matrix[i][j].coeffs()[k].clone());
                }
            }
        }
        StructureTensor { d: self.d, dprime: self.dprime, lambda }
    }

    /// Rebuild a presentation from a tensor; exact inverse of
    /// `structure_constants`.
    pub fn from_structure_constants(t: &StructureTensor, name: Option<String>) -> Result<Self> {
        let matrix = (0..t.d)
            .map(|i| {
                (0..t.d)
                    .map(|j| LinearForm::new((0..t.dprime).map(|k| t.lambda(i, j, k)).collect()))
                    .collect()
            })
            .collect();
        Self::new(t.d, t.dprime, matrix, name)
    }

    /// Evaluate M at an integer point of y-space.
    pub fn evaluate(&self, point: &[BigInt]) -> Vec<Vec<BigInt>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.matrix[i][j].eval(point)).collect())
            .collect()
    }

    /// Conjugate by the transposition of basis vectors a, b of Z^d
    /// (swap rows and columns a, b).
    pub fn swap_basis_vectors(&self, a: usize, b: usize) -> Self {
        let mut m = self.matrix.clone();
        m.swap(a, b);
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        GroupPresentation { d: self.d, dprime: self.dprime, matrix: m, name: None }
    }

    /// Apply an invertible integer change of y-coordinates: y -> U y, i.e.
    /// each form's coefficient vector c becomes c U.
    pub fn apply_y_change(&self, u: &[Vec<i64>]) -> Self {
        let dp = self.dprime;
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| {
                        let c = f.coeffs();
                        LinearForm::new(
                            (0..dp)
                                .map(|k| (0..dp).map(|l| &c[l] * BigInt::from(u[l][k])).sum())
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        GroupPresentation { d: self.d, dprime: dp, matrix, name: None }
    }

    // ---- JSON interface ----

    pub fn to_json(&self) -> Value {
        let matrix: Vec<Vec<Value>> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| {
                        Value::Array(
                            f.coeffs()
                                .iter()
                                .map(|c| {
                                    Value::Number(
                                        serde_json::Number::from_string_unchecked(c.to_string()),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut obj = json!({
            "d": self.d,
            "dprime": self.dprime,
            "matrix": matrix,
        });
        if let Some(n) = &self.name {
            obj["name"] = json!(n);
        }
        obj
    }

    /// Parse the JSON schema `{"d":..,"dprime":..,"matrix":[[[int,..],..],..]}`.
    /// Entries on or below the diagonal may be null; the loader antisymmetrises
    /// and rejects conflicting data.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| ZetaError::InvalidInput(m.to_string());
        let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| bad("missing integer field `d`"))? as usize;
        let dprime =
            v.get("dprime").and_then(Value::as_u64).ok_or_else(|| bad("missing integer field `dprime`"))? as usize;
        let rows = v.get("matrix").and_then(Value::as_array).ok_or_else(|| bad("missing array field `matrix`"))?;
        if rows.len() != d {
            return Err(bad("matrix has wrong number of rows"));
        }
        let name = v.get("name").and_then(Value::as_str).map(String::from);

        let parse_form = |cell: &Value| -> Result<Option<LinearForm>> {
            match cell {
                Value::Null => Ok(None),
                Value::Array(cs) => {
                    if cs.len() != dprime {
                        return Err(bad("linear form has wrong length"));
                    }
                    let mut coeffs = Vec::with_capacity(dprime);
                    for c in cs {
                        let n = match c {
                            Value::Number(n) => n.to_string(),
                            Value::String(s) => s.clone(),
                            _ => return Err(bad("coefficient must be an integer")),
                        };
                        coeffs.push(
                            n.parse::<BigInt>().map_err(|_| bad("coefficient is not an integer"))?,
                        );
                    }
                    Ok(Some(LinearForm::new(coeffs)))
                }
                _ => Err(bad("matrix entry must be a coefficient list or null")),
            }
        };

        let mut given: Vec<Vec<Option<LinearForm>>> = Vec::with_capacity(d);
        for row in rows {
            let cells = row.as_array().ok_or_else(|| bad("matrix row is not an array"))?;
            if cells.len() != d {
                return Err(bad("matrix row has wrong length"));
            }
            given.push(cells.iter().map(&parse_form).collect::<Result<_>>()?);
        }

        let mut matrix = vec![vec![LinearForm::zero(dprime); d]; d];
        for i in 0..d {
            if let Some(f) = &given[i][i] {
                if !f.is_zero() {
                    return Err(bad("diagonal entry is non-zero"));
                }
            }
            for j in (i + 1)..d {
                let up = given[i][j].clone();
                let lo = given[j][i].clone();
                let f = match (up, lo) {
                    (Some(u), Some(l)) => {
                        if l != u.neg() {
                            return Err(bad("conflicting entries: matrix is not antisymmetric"));
                        }
                        u
                    }
                    (Some(u), None) => u,
                    (None, Some(l)) => l.neg(),
                    (None, None) => LinearForm::zero(dprime),
                };
                matrix[j][i] = f.neg();
                matrix[i][j] = f;
            }
        }
        Self::new(d, dprime, matrix, name)
    }
}

/// The block presentation [[0, R], [-R^t, 0]] for a 3x3 matrix R of forms
/// in three variables (d = 6, dprime = 3).
fn block_6x6(r: [[[i64; 3]; 3]; 3], name: &str) -> GroupPresentation {
    let mut matrix = vec![vec![LinearForm::zero(3); 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            let f = LinearForm::from_i64(&r[i][j]);
            matrix[3 + j][i] = f.neg();
            matrix[i][3 + j] = f;
        }
    }
    GroupPresentation::new(6, 3, matrix, Some(name.to_string())).unwrap()
}

/// Named presentations. `dusautoy-E` takes the parameter D.
pub fn builtin(name: &str, params: &[(&str, i64)]) -> Result<GroupPresentation> {
    let param = |k: &str, default: i64| params.iter().find(|(n, _)| *n == k).map(|&(_, v)| v).unwrap_or(default);
    match name {
        // R = [[D y3, y1, y2], [y1, y3, 0], [y2, 0, y1]]
        "dusautoy-E" => {
            let dv = param("D", 1);
            let mut r = [[[0i64; 3]; 3]; 3];
            r[0][0][2] = dv;
            r[0][1][0] = 1;
            r[0][2][1] = 1;
            r[1][0][0] = 1;
            r[1][1][2] = 1;
            r[2][0][1] = 1;
            r[2][2][0] = 1;
            Ok(block_6x6(r, &format!("dusautoy-E(D={dv})")))
        }
        // R1 = [[y1, y2, 0], [0, y1, y2], [-y3, 0, y1 - y3]]
        "G1C" => {
            let mut r = [[[0i64; 3]; 3]; 3];
            r[0][0][0] = 1;
            r[0][1][1] = 1;
            r[1][1][0] = 1;
            r[1][2][1] = 1;
            r[2][0][2] = -1;
            r[2][2][0] = 1;
            r[2][2][2] = -1;
            Ok(block_6x6(r, "G1C"))
        }
        // R2 = [[y1, y2, 0], [0, y1 - y3, y2], [-y3, 0, y1]]
        "G2C" => {
            let mut r = [[[0i64; 3]; 3]; 3];
            r[0][0][0] = 1;
            r[0][1][1] = 1;
            r[1][1][0] = 1;
            r[1][1][2] = -1;
            r[1][2][1] = 1;
            r[2][0][2] = -1;
            r[2][2][0] = 1;
            Ok(block_6x6(r, "G2C"))
        }
        _ => Err(ZetaError::UnknownBuiltin(name.to_string())),
    }
}

/// A 6x6 presentation whose Pfaffian is the norm form of Q(2^{1/3}):
/// x^3 + 2y^3 + 4z^3 - 6xyz, a smooth cubic with no F_p-points whenever 2 is
/// not a cube mod p (e.g. p = 7). Used to exercise the point-free case.
pub fn norm_form_cubic() -> GroupPresentation {
    // multiplication-by-(x + y 2^{1/3} + z 2^{2/3}) matrix on Z[2^{1/3}]
    let r = [
        [[1, 0, 0], [0, 0, 2], [0, 2, 0]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 2]],
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    ];
    block_6x6(r, "norm-form-cubic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid_with_expected_entries() {
        let e = builtin("dusautoy-E", &[("D", 1)]).unwrap();
        assert_eq!(e.d(), 6);
        assert_eq!(e.dprime(), 3);
        // (1,4) entry is 1*y3 when D = 1 (0-indexed (0,3))
        assert_eq!(e.entry(0, 3), &LinearForm::from_i64(&[0, 0, 1]));

        let g1 = builtin("G1C", &[]).unwrap();
        // (3,6) entry of M equals y1 - y3 (0-indexed (2,5))
        assert_eq!(g1.entry(2, 5), &LinearForm::from_i64(&[1, 0, -1]));
        // lambda_{1,4,1} = 1: entry (0,3) is y1
        assert_eq!(g1.structure_constants().lambda(0, 3, 0), BigInt::from(1));

        let g2 = builtin("G2C", &[]).unwrap();
        // (2,5) entry of M equals y1 - y3 (0-indexed (1,4))
        assert_eq!(g2.entry(1, 4), &LinearForm::from_i64(&[1, 0, -1]));

        assert!(builtin("nope", &[]).is_err());
    }

    #[test]
    fn zero_matrix_is_structurally_valid() {
        let p = GroupPresentation::from_upper_triangle(4, 2, vec![], None).unwrap();
        assert!(p.validate().is_ok());
    }

    #[test]
    fn non_antisymmetric_rejected() {
        let mut matrix = vec![vec![LinearForm::zero(2); 4]; 4];
        matrix[0][1] = LinearForm::from_i64(&[1, 0]);
        matrix[1][0] = LinearForm::from_i64(&[1, 0]); // should be -y1
        let err = GroupPresentation::new(4, 2, matrix, None).unwrap_err();
        assert!(err.to_string().contains("antisymmetric"));
    }

    #[test]
    fn odd_d_rejected() {
        let matrix = vec![vec![LinearForm::zero(2); 5]; 5];
        assert!(GroupPresentation::new(5, 2, matrix, None).is_err());
    }

    #[test]
    fn evaluation_is_antisymmetric() {
        let p = builtin("G1C", &[]).unwrap();
        let pt: Vec<BigInt> = [3, -7, 2].iter().map(|&x| BigInt::from(x)).collect();
        let m = p.evaluate(&pt);
        for i in 0..6 {
            assert!(m[i][i].is_zero());
            for j in 0..6 {
                assert_eq!(m[i][j], -m[j][i].clone());
            }
        }
    }

    #[test]
    fn tensor_round_trip() {
        for name in ["G1C", "G2C", "dusautoy-E"] {
            let p = builtin(name, &[("D", 9)]).unwrap();
            let t = p.structure_constants();
            let q = GroupPresentation::from_structure_constants(&t, None).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(p.entry(i, j), q.entry(i, j));
                }
                for k in 0..3 {
                    assert!(t.lambda(i, i, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_upper_triangle() {
        let p = builtin("G2C", &[]).unwrap();
        let v = p.to_json();
        let q = GroupPresentation::from_json(&v).unwrap();
        assert_eq!(p.entry(1, 4), q.entry(1, 4));
        assert_eq!(q.name(), Some("G2C"));

        // upper triangle only, with nulls below
        let v2 = serde_json::json!({
            "d": 4, "dprime": 2,
            "matrix": [
                [null, [1, 0], [0, 0], [0, 0]],
                [null, null, [0, 1], [0, 0]],
                [null, null, null, [1, 1]],
                [null, null, null, null]
            ]
        });
        let q2 = GroupPresentation::from_json(&v2).unwrap();
        assert_eq!(q2.entry(1, 0), &LinearForm::from_i64(&[-1, 0]));

        // conflicting lower entry rejected
        let v3 = serde_json::json!({
            "d": 4, "dprime": 2,
            "matrix": [
                [null, [1, 0], null, null],
                [[1, 0], null, null, null],
                [null, null, null, null],
                [null, null, null, null]
            ]
        });
        assert!(GroupPresentation::from_json(&v3).is_err());
    }
}
