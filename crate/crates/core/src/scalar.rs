//! Exact scalars: arbitrary-precision rationals, optionally living in a
//! cyclotomic field `Q(zeta_m)`.
//!
//! A cyclotomic value is stored as its residue modulo the `m`-th cyclotomic
//! polynomial `Phi_m`, lowest power first. Values whose residue is a plain
//! rational are always demoted to [`Scalar::Rat`], so structural equality is
//! value equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Cyc(Cyclotomic),
}

/// A non-rational element of `Q(zeta_order)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Residue coefficients of `1, zeta, zeta^2, ...`, length `phi(order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

type UniPoly = Vec<BigRational>;

fn trim(p: &mut UniPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn uni_divmod(num: &UniPoly, den: &UniPoly) -> (UniPoly, UniPoly) {
    let mut rem = num.clone();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn uni_mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.len().max(b.len());
    let mut out: UniPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn compute_cyclotomic_poly(m: u32) -> UniPoly {
    // t^m - 1 divided by Phi_d for every proper divisor d of m
    let mut p = vec![BigRational::zero(); m as usize + 1];
    p[0] = -BigRational::one();
    p[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = uni_divmod(&p, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Coefficients of `Phi_m`, lowest power first.
pub fn cyclotomic_poly(m: u32) -> Arc<UniPoly> {
    assert!(m >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<UniPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic_poly(m));
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Euler's totient, equal to `deg Phi_m`.
pub fn totient(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

fn reduce_mod_phi(mut p: UniPoly, m: u32) -> UniPoly {
    let phi = cyclotomic_poly(m);
    let n = phi.len() - 1;
    // Phi_m is monic
    for i in (n..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut p[i]);
        for (j, q) in phi.iter().enumerate().take(n) {
            p[i - n + j] -= &c * q;
        }
    }
    p.resize(n, BigRational::zero());
    p
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    /// Builds an element of `Q(zeta_order)` from an arbitrary-length
    /// coefficient vector in powers of `zeta`.
    pub fn cyclotomic(order: u32, coeffs: Vec<BigRational>) -> Self {
        Self::normalize(order, reduce_mod_phi(coeffs, order))
    }

    /// The primitive root `zeta_order = exp(2*pi*i/order)`.
    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// `zeta_order^e`, any integer `e`.
    pub fn zeta_pow(order: u32, e: i64) -> Self {
        let e = e.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::cyclotomic(order, coeffs)
    }

    fn normalize(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            return Scalar::Rat(if coeffs.is_empty() {
                BigRational::zero()
            } else {
                coeffs.swap_remove(0)
            });
        }
        Scalar::Cyc(Cyclotomic { order, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc(_) => None,
        }
    }

    /// The cyclotomic order, if the value is not rational.
    pub fn order(&self) -> Option<u32> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Cyc(c) => Some(c.order),
        }
    }

    fn residue(&self, order: u32) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![BigRational::zero(); totient(order)];
                v[0] = r.clone();
                v
            }
            Scalar::Cyc(c) => c.coeffs.clone(),
        }
    }

    fn common_order(&self, other: &Scalar) -> u32 {
        match (self.order(), other.order()) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "cyclotomic order mismatch: {a} vs {b}");
                a
            }
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => None,
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
            Scalar::Cyc(c) => {
                let phi: UniPoly = cyclotomic_poly(c.order).as_ref().clone();
                let mut a = c.coeffs.clone();
                trim(&mut a);
                // extended Euclid: s1 * a == r1 (mod phi)
                let (mut r0, mut r1) = (phi, a);
                let (mut s0, mut s1): (UniPoly, UniPoly) = (vec![], vec![BigRational::one()]);
                while !r1.is_empty() {
                    let (q, r) = uni_divmod(&r0, &r1);
                    let s2 = uni_sub(&s0, &uni_mul(&q, &s1));
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                debug_assert_eq!(r0.len(), 1);
                let g = r0[0].clone();
                let s: UniPoly = s0.into_iter().map(|x| x / &g).collect();
                Some(Scalar::cyclotomic(c.order, s))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True when the rendering would start with a minus sign.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let m = self.common_order(rhs);
                let a = self.residue(m);
                let b = rhs.residue(m);
                Scalar::normalize(m, a.iter().zip(&b).map(|(x, y)| x + y).collect())
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(r), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(r)) => {
                if r.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyc(Cyclotomic {
                    order: c.order,
                    coeffs: c.coeffs.iter().map(|x| x * r).collect(),
                })
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) => {
                let m = self.common_order(rhs);
                Scalar::cyclotomic(m, uni_mul(&a.coeffs, &b.coeffs))
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; see [`Scalar::checked_div`].
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(Cyclotomic {
                order: c.order,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

pub(crate) fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p` or `p/q`; cyclotomic values print as a
    /// parenthesised sum in powers of `zetaN`, e.g. `(-1 + 2*zeta6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => fmt_rational(r, f),
            Scalar::Cyc(c) => {
                f.write_str("(")?;
                let mut first = true;
                for (i, x) in c.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mag = x.abs();
                    if first {
                        if x.is_negative() {
                            f.write_str("-")?;
                        }
                    } else {
                        f.write_str(if x.is_negative() { " - " } else { " + " })?;
                    }
                    first = false;
                    let root = match i {
                        0 => String::new(),
                        1 => format!("zeta{}", c.order),
                        _ => format!("zeta{}^{}", c.order, i),
                    };
                    if i == 0 {
                        fmt_rational(&mag, f)?;
                    } else if mag.is_one() {
                        f.write_str(&root)?;
                    } else {
                        fmt_rational(&mag, f)?;
                        write!(f, "*{root}")?;
                    }
                }
                f.write_str(")")
            }
        }
    }
}
