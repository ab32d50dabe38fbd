//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! A [`Cyclotomic`] stores its value in the power basis `1, z, ..., z^(phi(n)-1)`
//! after reduction modulo the `n`-th cyclotomic polynomial, with integer
//! numerators over one positive common denominator. The representation is
//! canonical for a fixed conductor; values of different conductors are
//! compared and combined inside the field of the least common multiple.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};

/// Per-conductor data: the cyclotomic polynomial and the reduced power basis
/// images of every `z^j`, `0 <= j < n`.
#[derive(Debug)]
pub struct FieldData {
    n: u64,
    phi: usize,
    poly: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl FieldData {
    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Phi_n`, constant term first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.poly
    }
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Phi_n` by exact division of `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = exact_div(&num, &den);
    }
    poly_cache().lock().unwrap().insert(n, num.clone());
    num
}

/// Quotient of `num` by the monic polynomial `den`; panics on a nonzero remainder.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<FieldData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn field(n: u64) -> Arc<FieldData> {
    if let Some(f) = field_cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = euler_phi(n) as usize;
    debug_assert_eq!(poly.len(), phi + 1);
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce modulo the monic Phi_n
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if phi == 1 {
            next[0] = 0;
        }
        if top != 0 {
            for j in 0..phi {
                next[j] = next[j]
                    .checked_sub(top.checked_mul(poly[j]).expect("power table overflow"))
                    .expect("power table overflow");
            }
        }
        cur = next;
    }
    debug_assert!(cur[0] == 1 && cur[1..].iter().all(|&c| c == 0));
    let data = Arc::new(FieldData { n, phi, poly, powers });
    field_cache().lock().unwrap().insert(n, data.clone());
    data
}

/// An exact element of `Q(zeta_n)` in canonical reduced form.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<FieldData>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(field: Arc<FieldData>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut z = Cyclotomic { field, num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn zero(n: u64) -> Self {
        let f = field(n);
        let phi = f.phi;
        Cyclotomic {
            field: f,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(n: u64) -> Self {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u64, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = BigInt::from(k);
        z
    }

    pub fn from_rational(n: u64, r: &BigRational) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let f = field(n);
        let j = k.rem_euclid(n as i64) as usize;
        let num = f.powers[j].iter().map(|&c| BigInt::from(c)).collect();
        Cyclotomic {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    /// `sum_j counts[j] * zeta_n^j` for a group-ring style vector of length `n`.
    pub fn from_root_counts(n: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, n);
        let f = field(n);
        let mut acc = vec![0i128; f.phi];
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[j]) {
                *a += c as i128 * p as i128;
            }
        }
        let num = acc.into_iter().map(BigInt::from).collect();
        Self::from_parts(f, num, BigInt::one())
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    pub fn degree(&self) -> usize {
        self.field.phi
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Re-express in `Q(zeta_m)`; requires `n | m`.
    pub fn embed(&self, m: u64) -> Self {
        let n = self.field.n;
        assert!(m.is_multiple_of(n), "cannot embed conductor {n} into {m}");
        if m == n {
            return self.clone();
        }
        let step = (m / n) as usize;
        let target = field(m);
        let mut num = vec![BigInt::zero(); target.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &p) in num.iter_mut().zip(&target.powers[k * step]) {
                if p != 0 {
                    *acc += c * p;
                }
            }
        }
        Self::from_parts(target, num, self.den.clone())
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let (a, b) = (self.field.n, other.field.n);
        if a == b {
            return (self.clone(), other.clone());
        }
        let m = a.lcm(&b);
        (self.embed(m), other.embed(m))
    }

    /// Image under the Galois automorphism `zeta_n -> zeta_n^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.field.n as i64;
        assert_eq!(a.gcd(&n), 1, "galois exponent must be a unit modulo {n}");
        let f = &self.field;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = (a * k as i64).rem_euclid(n) as usize;
            for (acc, &p) in num.iter_mut().zip(&f.powers[j]) {
                if p != 0 {
                    *acc += c * p;
                }
            }
        }
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Complex conjugation, `zeta_n -> zeta_n^(-1)`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// `z + conj(z)`, i.e. twice the real part.
    pub fn real_double(&self) -> Self {
        self + &self.conjugate()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn is_nonneg_integer(&self) -> bool {
        self.as_integer().is_some_and(|k| !k.is_negative())
    }

    /// Whether all power-basis coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the product of the non-identity Galois conjugates.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.n as i64;
        let mut others = Self::one(self.field.n);
        for a in 2..=n.max(2) {
            if a > n || a.gcd(&n) != 1 || a == n {
                continue;
            }
            others = &others * &self.galois(a);
        }
        let norm = (self * &others).as_rational().expect("field norm must be rational");
        Ok(others.scale(&norm.recip()))
    }

    /// Numeric value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }

    /// Total order on the canonical encoding: lexicographic over the
    /// rational power-basis coordinates in the common conductor.
    pub fn cmp_encoding(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let ord = (x * &b.den).cmp(&(y * &a.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.common(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.field.n != rhs.field.n {
            let (a, b) = self.common(rhs);
            return &a + &b;
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(x, y)| x * &rhs.den + y * &self.den)
            .collect();
        Cyclotomic::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.field.n != rhs.field.n {
            let (a, b) = self.common(rhs);
            return &a * &b;
        }
        let f = &self.field;
        let n = f.n as usize;
        let mut conv = vec![BigInt::zero(); 2 * f.phi];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                num[k] += c;
                continue;
            }
            for (acc, &p) in num.iter_mut().zip(&f.powers[k % n]) {
                if p != 0 {
                    *acc += c * p;
                }
            }
        }
        Cyclotomic::from_parts(f.clone(), num, &self.den * &rhs.den)
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

/// Renders an exact rational as `num/den`.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.n;
        let mut terms = Vec::new();
        for (k, c) in self.coefficients().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("({})", c)
            };
            terms.push(match k {
                0 => coeff,
                _ if c.is_one() => format!("z{n}^{k}"),
                _ if (-c.clone()).is_one() => format!("-z{n}^{k}"),
                _ => format!("{coeff}*z{n}^{k}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.n, self)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Cyclotomic", 2)?;
        s.serialize_field("conductor", &self.field.n)?;
        let coeffs: Vec<String> = self.coefficients().iter().map(fmt_rational).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}
