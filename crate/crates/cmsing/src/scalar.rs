//! Exact coefficient fields: the rationals, cyclotomic fields and the
//! quadratic extension generated by a square root of 2.
//!
//! Rationals are `num::BigRational`, which keeps values in lowest terms
//! with a positive denominator. Cyclotomic elements are residues modulo
//! the d-th cyclotomic polynomial, stored as rational coefficient vectors
//! of length phi(d).

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Common interface for the exact coefficient fields used by the
/// polynomial kernels. All operations are total except `inv` on zero.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_int(n: i64) -> Self {
        rat(n)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Integer polynomial, dense, low degree first. Used only to carry the
/// cyclotomic polynomials.
fn poly_mul_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; divisor must be monic.
fn poly_div_exact_z(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        quot[k] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// Descriptor of the cyclotomic field Q(zeta_d): carries d and the d-th
/// cyclotomic polynomial (monic, integer coefficients, low degree first).
#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    pub d: u32,
    pub phi: Vec<BigInt>,
}

impl CycField {
    /// Degree phi(d) of the field over the rationals.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

fn cyclotomic_poly(d: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&d) {
        return p.clone();
    }
    // (z^d - 1) divided by the product of Phi_e over proper divisors e of d
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for e in 1..d {
        if d % e == 0 {
            den = poly_mul_z(&den, &cyclotomic_poly(e, cache));
        }
    }
    let p = poly_div_exact_z(&num, &den);
    cache.insert(d, p.clone());
    p
}

static CYC_CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();

/// Field descriptor for Q(zeta_d), memoized. `zeta(d)^d` reduces to 1
/// under the returned reduction rules.
pub fn cyclotomic_field(d: u32) -> Arc<CycField> {
    assert!(d >= 1, "d must be at least 1");
    let cache = CYC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(f) = guard.get(&d) {
        return f.clone();
    }
    let mut scratch = HashMap::new();
    let f = Arc::new(CycField {
        d,
        phi: cyclotomic_poly(d, &mut scratch),
    });
    guard.insert(d, f.clone());
    f
}

/// Element of Q(zeta_d), reduced modulo Phi_d. A `field` of `None` marks a
/// plain rational constant, promoted on contact with a genuine cyclotomic
/// element; this lets `zero()`/`one()` exist without field context.
#[derive(Clone, Debug)]
pub struct Cyc {
    field: Option<Arc<CycField>>,
    coeffs: Vec<Rat>,
}

impl Cyc {
    pub fn scalar(r: Rat) -> Self {
        Cyc {
            field: None,
            coeffs: vec![r],
        }
    }

    /// The chosen primitive d-th root of unity: the residue class of z.
    pub fn zeta(field: &Arc<CycField>) -> Self {
        let deg = field.degree();
        let mut coeffs = vec![<Rat as Zero>::zero(); deg];
        if deg == 1 {
            // d = 1 or 2: zeta is rational (1 or -1), z = -phi[0].
            coeffs[0] = -Rat::from_integer(field.phi[0].clone());
        } else {
            coeffs[1] = <Rat as One>::one();
        }
        Cyc {
            field: Some(field.clone()),
            coeffs,
        }
    }

    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let d = field.d as i64;
        let k = k.rem_euclid(d) as u32;
        let mut acc = <Cyc as Coeff>::one();
        let z = Cyc::zeta(field);
        for _ in 0..k {
            acc = acc.mul(&z);
        }
        acc
    }

    pub fn field(&self) -> Option<&Arc<CycField>> {
        self.field.as_ref()
    }

    /// Returns the rational value if this element is a constant.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(|c| Zero::is_zero(c)) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn promote(&self, field: &Arc<CycField>) -> Vec<Rat> {
        let mut c = vec![<Rat as Zero>::zero(); field.degree()];
        c[0] = self.coeffs[0].clone();
        debug_assert!(self.coeffs.len() == 1 || self.field.is_some());
        c
    }

    fn joined(a: &Cyc, b: &Cyc) -> Option<Arc<CycField>> {
        match (&a.field, &b.field) {
            (Some(f), Some(g)) => {
                assert_eq!(f.d, g.d, "cyclotomic field mismatch: d={} vs d={}", f.d, g.d);
                Some(f.clone())
            }
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (None, None) => None,
        }
    }

    fn aligned(&self, field: &Option<Arc<CycField>>) -> Vec<Rat> {
        match (field, &self.field) {
            (Some(f), None) => self.promote(f),
            _ => self.coeffs.clone(),
        }
    }

    fn reduce(field: &Arc<CycField>, mut c: Vec<Rat>) -> Vec<Rat> {
        let deg = field.degree();
        while c.len() > deg {
            let top = c.pop().unwrap();
            if !Zero::is_zero(&top) {
                let k = c.len() - deg;
                for (j, pj) in field.phi.iter().enumerate().take(deg) {
                    let sub = &top * Rat::from_integer(pj.clone());
                    c[k + j] -= sub;
                }
            }
        }
        c
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if i == 1 {
                write!(f, "{}*z", c)?;
            } else {
                write!(f, "{}*z^{}", c, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Coeff for Cyc {
    fn zero() -> Self {
        Cyc::scalar(<Rat as Zero>::zero())
    }
    fn one() -> Self {
        Cyc::scalar(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| Zero::is_zero(c))
    }
    fn add(&self, o: &Self) -> Self {
        let field = Cyc::joined(self, o);
        let mut a = self.aligned(&field);
        let b = o.aligned(&field);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Cyc { field, coeffs: a }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let field = Cyc::joined(self, o);
        let a = self.aligned(&field);
        let b = o.aligned(&field);
        let mut prod = vec![<Rat as Zero>::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !Zero::is_zero(y) {
                    prod[i + j] += x * y;
                }
            }
        }
        let coeffs = match &field {
            Some(f) => Cyc::reduce(f, prod),
            None => prod,
        };
        Cyc { field, coeffs }
    }
    fn neg(&self) -> Self {
        Cyc {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!Coeff::is_zero(self), "inverse of zero");
        if let Some(r) = self.as_rat() {
            if self.field.is_none() {
                return Cyc::scalar(r.recip());
            }
        }
        // Extended Euclid against Phi_d over the rationals.
        let field = self.field.clone().expect("non-constant element has a field");
        let phi: Vec<Rat> = field
            .phi
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        trim(&mut r1);
        let (mut s0, mut s1): (Vec<Rat>, Vec<Rat>) = (vec![], vec![<Rat as One>::one()]);
        while r1.len() > 1 {
            let (q, r) = rat_poly_divmod(&r0, &r1);
            let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r1 is a nonzero constant (Phi_d is irreducible); scale s1 by 1/r1.
        let c = r1
            .first()
            .cloned()
            .filter(|c| !Zero::is_zero(c))
            .expect("element invertible modulo an irreducible polynomial");
        let inv_c = c.recip();
        let coeffs: Vec<Rat> = s1.iter().map(|x| x * &inv_c).collect();
        let coeffs = Cyc::reduce(&field, coeffs);
        let mut out = coeffs;
        out.resize(field.degree(), <Rat as Zero>::zero());
        Cyc {
            field: Some(field),
            coeffs: out,
        }
    }
    fn from_int(n: i64) -> Self {
        Cyc::scalar(rat(n))
    }
    fn from_rat(r: &Rat) -> Self {
        Cyc::scalar(r.clone())
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && Zero::is_zero(p.last().unwrap()) {
        p.pop();
    }
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![<Rat as Zero>::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![<Rat as Zero>::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    let mut out = out;
    trim(&mut out);
    out
}

fn rat_poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![<Rat as Zero>::zero(); rem.len() - db];
    let lead_inv = b[db].clone().recip();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if !Zero::is_zero(&c) {
            for (j, bj) in b.iter().enumerate() {
                let sub = &c * bj;
                rem[k + j] -= sub;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

/// Element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
#[derive(Clone, Debug, PartialEq)]
pub struct Sqrt2 {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt2 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Sqrt2 { a, b }
    }
    pub fn root2() -> Self {
        Sqrt2::new(<Rat as Zero>::zero(), <Rat as One>::one())
    }
}

impl fmt::Display for Sqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Zero::is_zero(&self.a) {
            write!(f, "{}*sqrt2", self.b)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

impl Coeff for Sqrt2 {
    fn zero() -> Self {
        Sqrt2::new(<Rat as Zero>::zero(), <Rat as Zero>::zero())
    }
    fn one() -> Self {
        Sqrt2::new(<Rat as One>::one(), <Rat as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        Sqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn sub(&self, o: &Self) -> Self {
        Sqrt2::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        Sqrt2::new(
            &self.a * &o.a + rat(2) * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
    fn neg(&self) -> Self {
        Sqrt2::new(-&self.a, -&self.b)
    }
    fn inv(&self) -> Self {
        let norm = &self.a * &self.a - rat(2) * &self.b * &self.b;
        assert!(!Zero::is_zero(&norm), "inverse of zero");
        let n = norm.recip();
        Sqrt2::new(&self.a * &n, -&self.b * &n)
    }
    fn from_int(n: i64) -> Self {
        Sqrt2::new(rat(n), <Rat as Zero>::zero())
    }
    fn from_rat(r: &Rat) -> Self {
        Sqrt2::new(r.clone(), <Rat as Zero>::zero())
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_string(d: u32) -> String {
        let f = cyclotomic_field(d);
        f.phi
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_1 = z - 1
        assert_eq!(phi_string(1), "-1,1");
        // Phi_4 = z^2 + 1
        assert_eq!(phi_string(4), "1,0,1");
        // Phi_5 = z^4 + z^3 + z^2 + z + 1
        assert_eq!(phi_string(5), "1,1,1,1,1");
        // Phi_6 = z^2 - z + 1
        assert_eq!(phi_string(6), "1,-1,1");
        assert_eq!(cyclotomic_field(12).degree(), 4);
    }

    #[test]
    fn zeta_power_relations() {
        for d in [1u32, 2, 3, 4, 5, 7, 8, 12] {
            let f = cyclotomic_field(d);
            let z = Cyc::zeta(&f);
            let mut p = <Cyc as Coeff>::one();
            for _ in 0..d {
                p = p.mul(&z);
            }
            assert_eq!(p, <Cyc as Coeff>::one(), "zeta^{} != 1", d);
        }
        // Sum of all d-th roots of unity vanishes for prime d.
        for d in [3u32, 5, 7, 11] {
            let f = cyclotomic_field(d);
            let mut s = <Cyc as Coeff>::zero();
            for k in 0..d {
                s = s.add(&Cyc::zeta_pow(&f, k as i64));
            }
            assert!(Coeff::is_zero(&s), "root sum nonzero for d={}", d);
        }
    }

    #[test]
    fn cyclotomic_inverse() {
        let f = cyclotomic_field(5);
        let z = Cyc::zeta(&f);
        let w = z.add(&<Cyc as Coeff>::from_int(3));
        let p = w.mul(&w.inv());
        assert_eq!(p, <Cyc as Coeff>::one());
        let zi = z.inv();
        assert_eq!(z.mul(&zi), <Cyc as Coeff>::one());
        assert_eq!(zi, Cyc::zeta_pow(&f, 4));
    }

    #[test]
    fn sqrt2_arithmetic() {
        let r = Sqrt2::root2();
        assert_eq!(r.mul(&r), <Sqrt2 as Coeff>::from_int(2));
        let x = Sqrt2::new(rat(1), rat(3));
        assert_eq!(x.mul(&x.inv()), <Sqrt2 as Coeff>::one());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&rat(4)), Some(rat(2)));
        assert_eq!(rat_sqrt(&ratio(9, 16)), Some(ratio(3, 4)));
        assert_eq!(rat_sqrt(&rat(2)), None);
        assert_eq!(rat_sqrt(&rat(-4)), None);
    }
}
