//! Small-prime finite field helpers and sparse polynomials over F_p.
//!
//! The geometry module scans all of P^2(F_p) for p up to a few hundred, so
//! coefficients are plain machine words reduced mod p.

use std::collections::BTreeMap;

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod of non-unit {a} mod {p}");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut i = 37;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 2;
    }
    true
}

/// Sparse multivariate polynomial over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Vec<u16>, u64>,
}

impl FpPoly {
    pub fn zero(p: u64, nvars: usize) -> Self {
        FpPoly { p, nvars, terms: BTreeMap::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
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

    pub fn insert(&mut self, exps: Vec<u16>, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % self.p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &u64)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2 % self.p);
            }
        }
        out
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &ex) in e.iter().enumerate() {
                t = t * pow_mod(point[i] % p, ex as u64, p) % p;
            }
            acc = (acc + t) % p;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (e, &c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.insert(e2, c * (e[var] as u64 % self.p) % self.p);
        }
        out
    }

    /// Substitute x_i -> sum_j a_{ij} x_j + b_i given as affine images
    /// (each image is a vector of nvars linear coefficients plus a constant).
    pub fn substitute_affine(&self, images: &[(Vec<u64>, u64)]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let one = |v: usize| -> FpPoly {
            let (ref lin, cst) = images[v];
            let mut f = FpPoly::zero(self.p, self.nvars);
            f.insert(vec![0; self.nvars], cst);
            for (j, &a) in lin.iter().enumerate() {
                let mut e = vec![0u16; self.nvars];
                e[j] = 1;
                f.insert(e, a);
            }
            f
        };
        let imgs: Vec<FpPoly> = (0..self.nvars).map(one).collect();
        let mut out = FpPoly::zero(self.p, self.nvars);
        for (e, &c) in &self.terms {
            let mut t = FpPoly::zero(self.p, self.nvars);
            t.insert(vec![0; self.nvars], c);
            for (i, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    t = t.mul(&imgs[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Homogeneous component of given total degree.
    pub fn homogeneous_part(&self, deg: usize) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (e, &c) in &self.terms {
            if e.iter().map(|&x| x as usize).sum::<usize>() == deg {
                out.insert(e.clone(), c);
            }
        }
        out
    }

    /// Restrict a ternary form to the line spanned by points u, v:
    /// coefficients of f(s*u + t*v) as a binary form in (s, t), degree = total
    /// degree of f. Identically-zero output means the line lies on the curve.
    pub fn restrict_to_line(&self, u: &[u64; 3], v: &[u64; 3]) -> Vec<u64> {
        assert_eq!(self.nvars, 3);
        let p = self.p;
        let d = self.total_degree();
        let mut out = vec![0u64; d + 1];
        for (e, &c) in &self.terms {
            // expand prod_i (u_i s + v_i t)^{e_i} into binary coefficients
            let mut bin = vec![0u64; 1];
            bin[0] = c;
            for i in 0..3 {
                for _ in 0..e[i] {
                    let mut nxt = vec![0u64; bin.len() + 1];
                    for (k, &b) in bin.iter().enumerate() {
                        nxt[k] = (nxt[k] + b * (u[i] % p)) % p; // s-part
                        nxt[k + 1] = (nxt[k + 1] + b * (v[i] % p)) % p; // t-part
                    }
                    bin = nxt;
                }
            }
            // bin[k] multiplies s^{deg-k} t^k for this term's degree; terms of a
            // homogeneous f all have the same degree d
            for (k, &b) in bin.iter().enumerate() {
                out[k] = (out[k] + b) % p;
            }
        }
        out
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

// ---- bivariate gcd over F_p, for mod-p square-freeness ----

/// Univariate polynomial over F_p as dense coefficient vector (index = degree).
fn uni_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn uni_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    uni_trim(&mut a);
    uni_trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

fn uni_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = inv_mod(b[db], p);
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let f = r[dr] * lb_inv % p;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p * p - f * b[i] % p) % p;
        }
        uni_trim(&mut r);
    }
    r
}

fn uni_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Bivariate polynomial over F_p: coefficients of x^i are univariate in y.
#[derive(Clone, Debug, PartialEq)]
struct Bi {
    co: Vec<Vec<u64>>, // co[i] = coefficient of x^i, a poly in y
}

impl Bi {
    fn trim(&mut self) {
        for c in self.co.iter_mut() {
            uni_trim(c);
        }
        while self.co.last().map(|c| c.is_empty()).unwrap_or(false) {
            self.co.pop();
        }
    }
    fn is_zero(&self) -> bool {
        self.co.is_empty()
    }
    fn deg_x(&self) -> usize {
        self.co.len().saturating_sub(1)
    }
    fn content_y(&self, p: u64) -> Vec<u64> {
        let mut g: Vec<u64> = vec![];
        for c in &self.co {
            if !c.is_empty() {
                g = uni_gcd(g, c.clone(), p);
            }
        }
        g
    }
    fn div_content(&self, cont: &[u64], p: u64) -> Bi {
        if cont.len() == 1 {
            let inv = inv_mod(cont[0], p);
            let co = self.co.iter().map(|c| c.iter().map(|&x| x * inv % p).collect()).collect();
            let mut b = Bi { co };
            b.trim();
            return b;
        }
        let co = self.co.iter().map(|c| uni_div_exact(c, cont, p)).collect();
        let mut b = Bi { co };
        b.trim();
        b
    }
    fn scale_y(&self, s: &[u64], p: u64) -> Bi {
        let co = self.co.iter().map(|c| uni_mul(c, s, p)).collect();
        let mut b = Bi { co };
        b.trim();
        b
    }
}

fn uni_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() {
        return vec![];
    }
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = r[dr] * lb_inv % p;
        q[dr - db] = f;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p * p - f * b[i] % p) % p;
        }
        uni_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    assert!(r.is_empty(), "uni_div_exact: not exact");
    q
}

fn bi_from(f: &FpPoly, vx: usize, vy: usize) -> Bi {
    let mut co: Vec<Vec<u64>> = vec![];
    for (e, &c) in f.terms() {
        let i = e[vx] as usize;
        let j = e[vy] as usize;
        if co.len() <= i {
            co.resize(i + 1, vec![]);
        }
        if co[i].len() <= j {
            co[i].resize(j + 1, 0);
        }
        co[i][j] = (co[i][j] + c) % f.p();
    }
    let mut b = Bi { co };
    b.trim();
    b
}

/// Pseudo-remainder in x of primitive bivariates, content removed each step.
fn bi_gcd(a: &Bi, b: &Bi, p: u64) -> Bi {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.deg_x() == 0 && b.deg_x() == 0 {
        return Bi { co: vec![uni_gcd(a.co[0].clone(), b.co[0].clone(), p)] };
    }
    let ca = a.content_y(p);
    let cb = b.content_y(p);
    let cont = uni_gcd(ca.clone(), cb.clone(), p);
    let mut f = a.div_content(&ca, p);
    let mut g = b.div_content(&cb, p);
    if f.deg_x() < g.deg_x() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            break;
        }
        if g.deg_x() == 0 {
            // primitive f, x-free g: common part is y-content only, which is 1
            f = Bi { co: vec![vec![1]] };
            break;
        }
        let r = bi_pseudo_rem(&f, &g, p);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let cr = r.content_y(p);
            r.div_content(&cr, p)
        };
    }
    let cf = f.content_y(p);
    let prim = f.div_content(&cf, p);
    prim.scale_y(&cont, p)
}

fn bi_pseudo_rem(f: &Bi, g: &Bi, p: u64) -> Bi {
    let dg = g.deg_x();
    let lg = g.co[dg].clone();
    let mut r = f.clone();
    while !r.is_zero() && r.deg_x() >= dg {
        let dr = r.deg_x();
        let lr = r.co[dr].clone();
        // r <- lg*r - lr*x^{dr-dg}*g
        let mut nco = vec![vec![]; std::cmp::max(r.co.len(), dr - dg + g.co.len())];
        for (i, c) in r.co.iter().enumerate() {
            nco[i] = uni_mul(c, &lg, p);
        }
        for (i, c) in g.co.iter().enumerate() {
            let t = uni_mul(c, &lr, p);
            let tgt = &mut nco[dr - dg + i];
            let n = std::cmp::max(tgt.len(), t.len());
            tgt.resize(n, 0);
            for (k, &x) in t.iter().enumerate() {
                tgt[k] = (tgt[k] + p - x % p) % p;
            }
        }
        r = Bi { co: nco };
        r.trim();
    }
    r
}

/// Square-freeness of a nonzero homogeneous ternary form over F_p:
/// strip the chart variable, then gcd of the dehomogenisation with its
/// partials. Vanishing partials in characteristic p mean a p-th power.
pub fn is_squarefree_mod_p(f: &FpPoly) -> bool {
    assert!(!f.is_zero());
    let used: Vec<usize> = (0..f.nvars()).filter(|&v| f.degree_in(v) > 0).collect();
    if used.is_empty() {
        return true;
    }
    let chart = *used.last().unwrap();
    let val = f.terms().map(|(e, _)| e[chart]).min().unwrap();
    if val >= 2 {
        return false;
    }
    // dehomogenise at the chart variable
    let keep: Vec<usize> = (0..f.nvars()).filter(|&v| v != chart).collect();
    let mut u = FpPoly::zero(f.p(), 2.max(keep.len()));
    for (e, &c) in f.terms() {
        let mut e2 = vec![0u16; u.nvars()];
        for (slot, &v) in keep.iter().enumerate() {
            e2[slot] = e[v];
        }
        u.insert(e2, c);
    }
    bivariate_squarefree(&u)
}

fn bivariate_squarefree(u: &FpPoly) -> bool {
    let p = u.p();
    let ux = u.partial(0);
    let uy = u.partial(1);
    if ux.is_zero() && uy.is_zero() {
        // u is a polynomial in x^p, y^p, hence a p-th power
        return u.total_degree() == 0;
    }
    let a = bi_from(u, 0, 1);
    let mut g = a.clone();
    if !ux.is_zero() {
        g = bi_gcd(&g, &bi_from(&ux, 0, 1), p);
    }
    if !uy.is_zero() {
        g = bi_gcd(&g, &bi_from(&uy, 0, 1), p);
    }
    g.deg_x() == 0 && g.co.first().map(|c| c.len() <= 1).unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(p: u64, nv: usize, i: usize) -> FpPoly {
        let mut f = FpPoly::zero(p, nv);
        let mut e = vec![0u16; nv];
        e[i] = 1;
        f.insert(e, 1);
        f
    }

    #[test]
    fn squarefree_mod_p_basics() {
        for p in [2u64, 3, 5, 7] {
            let x = var(p, 3, 0);
            let y = var(p, 3, 1);
            let z = var(p, 3, 2);
            assert!(is_squarefree_mod_p(&x));
            let f = x.mul(&x).mul(&y);
            assert!(!is_squarefree_mod_p(&f));
            let g = x.mul(&y).mul(&z).add(&x.mul(&x).mul(&x));
            assert!(is_squarefree_mod_p(&g), "p={p}");
        }
        // x^2+y^2 mod 2 = (x+y)^2: not square-free
        let x = var(2, 3, 0);
        let y = var(2, 3, 1);
        assert!(!is_squarefree_mod_p(&x.mul(&x).add(&y.mul(&y))));
        // but mod 5 it is square-free
        let x5 = var(5, 3, 0);
        let y5 = var(5, 3, 1);
        assert!(is_squarefree_mod_p(&x5.mul(&x5).add(&y5.mul(&y5))));
    }

    #[test]
    fn line_restriction() {
        // f = y1: restrict to the line through (0,1,0),(0,0,1) (i.e. y1 = 0)
        let f = var(7, 3, 0);
        let r = f.restrict_to_line(&[0, 1, 0], &[0, 0, 1]);
        assert!(r.iter().all(|&c| c == 0));
        let r2 = f.restrict_to_line(&[1, 0, 0], &[0, 0, 1]);
        assert!(r2.iter().any(|&c| c != 0));
    }

    #[test]
    fn conjugate_square_detected() {
        // (x^2 + y^2)^2 * z mod 7 (-1 non-square mod 7): no F_7 singular points
        // on the repeated component, but still not square-free
        let x = var(7, 3, 0);
        let y = var(7, 3, 1);
        let z = var(7, 3, 2);
        let q = x.mul(&x).add(&y.mul(&y));
        let f = q.mul(&q).mul(&z);
        assert!(!is_squarefree_mod_p(&f));
        assert!(is_squarefree_mod_p(&q.mul(&z)));
    }
}
