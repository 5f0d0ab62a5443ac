//! Exact arithmetic in `Q(zeta_n)` and `F_p(zeta_n)` for `n` in {1, 2, 3, 4, 6, 12}.
//!
//! Elements are residue polynomials in the adjoined root `z`. Fields are
//! interned, so a [`Field`] is a cheap `Copy` handle and two handles with the
//! same descriptor compare equal by pointer.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Orders of roots of unity that may be adjoined.
pub const SUPPORTED_ORDERS: [u32; 6] = [1, 2, 3, 4, 6, 12];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),
    #[error("characteristic {0} divides the cyclotomic order {1}")]
    CharDividesOrder(u64, u32),
    #[error("cyclotomic order {0} is not supported (use 1, 2, 3, 4, 6 or 12)")]
    UnsupportedOrder(u32),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub characteristic: u64,
    pub cyclotomic_order: u32,
}

impl FieldDescriptor {
    pub fn new(characteristic: u64, cyclotomic_order: u32) -> Self {
        FieldDescriptor { characteristic, cyclotomic_order }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.characteristic == 0 {
            "Q".to_string()
        } else {
            format!("F{}", self.characteristic)
        };
        if self.cyclotomic_order <= 2 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}(zeta{})", self.cyclotomic_order)
        }
    }
}

#[derive(Debug)]
enum Modulus {
    /// Monic integer polynomial, coefficients from the constant term up.
    Rational(Vec<BigRational>),
    /// `x - r` (stored as `[p - r, 1]`) or `x^2 + m1 x + m0` (stored as `[m0, m1]`).
    Prime { p: u64, m: [u64; 2] },
}

#[derive(Debug)]
struct FieldData {
    desc: FieldDescriptor,
    degree: usize,
    modulus: Modulus,
}

/// Handle to an interned field.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.desc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.desc)
    }
}

fn registry() -> &'static Mutex<HashMap<FieldDescriptor, &'static FieldData>> {
    static REG: OnceLock<Mutex<HashMap<FieldDescriptor, &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Integer coefficients of the cyclotomic polynomial, constant term first.
fn cyclotomic(n: u32) -> Vec<i64> {
    match n {
        1 => vec![-1, 1],
        2 => vec![1, 1],
        3 => vec![1, 1, 1],
        4 => vec![1, 0, 1],
        6 => vec![1, -1, 1],
        12 => vec![1, 0, -1, 0, 1],
        _ => unreachable!("unsupported order"),
    }
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Elements of exact multiplicative order `n` in `F_p`, assuming `n | p - 1`.
fn primitive_roots_mod_p(n: u64, p: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    let mut t = 0;
    for y in 2..p {
        let c = powmod(y, (p - 1) / n, p);
        if multiplicative_order_mod(c, p, n) == n {
            t = c;
            break;
        }
    }
    if t == 0 {
        // p = 2 or 3 with n = 2 and similar tiny cases: scan directly.
        return (1..p).filter(|&x| multiplicative_order_mod(x, p, n) == n).collect();
    }
    (1..=n)
        .filter(|k| num_integer::gcd(*k, n) == 1)
        .map(|k| powmod(t, k, p))
        .collect()
}

fn multiplicative_order_mod(x: u64, p: u64, bound: u64) -> u64 {
    let mut y = x % p;
    for k in 1..=bound {
        if y == 1 {
            return k;
        }
        y = ((y as u128 * x as u128) % p as u128) as u64;
    }
    0
}

fn poly_rem_mod_p(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    // den is monic
    let mut r: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let sub = ((lead as u128 * c as u128) % p as u128) as u64;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

impl Field {
    /// Creates (or fetches) the field described by `desc`.
    pub fn new(desc: FieldDescriptor) -> Result<Field, ScalarError> {
        let FieldDescriptor { characteristic: c, cyclotomic_order: n } = desc;
        if !SUPPORTED_ORDERS.contains(&n) {
            return Err(ScalarError::UnsupportedOrder(n));
        }
        if c != 0 && !is_prime(c) {
            return Err(ScalarError::InvalidCharacteristic(c));
        }
        if c != 0 && (n as u64) % c == 0 {
            return Err(ScalarError::CharDividesOrder(c, n));
        }
        if c > u32::MAX as u64 {
            return Err(ScalarError::InvalidCharacteristic(c));
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(data) = reg.get(&desc) {
            return Ok(Field(data));
        }
        let phi = cyclotomic(n);
        let (degree, modulus) = if c == 0 {
            let m: Vec<BigRational> =
                phi.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            (m.len() - 1, Modulus::Rational(m))
        } else {
            let p = c;
            let phi_p: Vec<u64> = phi.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
            let mut d = 1u64;
            while powmod(p, d, n as u64) != 1 % n as u64 {
                d += 1;
            }
            if d == 1 {
                let roots = primitive_roots_mod_p(n as u64, p);
                // factor x - r has coefficients (p - r, 1); the smallest constant term wins
                let r = roots
                    .iter()
                    .copied()
                    .min_by_key(|&r| (p - r) % p)
                    .expect("a primitive root exists when n | p - 1");
                (1, Modulus::Prime { p, m: [(p - r) % p, 1] })
            } else {
                debug_assert_eq!(d, 2);
                let g = num_integer::gcd(n as u64, p - 1);
                let m0_candidates: Vec<u64> =
                    (1..p).filter(|&x| powmod(x, g, p) == 1).collect();
                let mut found = None;
                'outer: for m0 in m0_candidates.iter().copied() {
                    for m1 in 0..p {
                        let rem = poly_rem_mod_p(&phi_p, &[m0, m1, 1], p);
                        if rem.iter().all(|&x| x == 0) {
                            found = Some([m0, m1]);
                            break 'outer;
                        }
                    }
                }
                let m = found.expect("cyclotomic polynomial has a quadratic factor");
                (2, Modulus::Prime { p, m })
            }
        };
        let data: &'static FieldData = Box::leak(Box::new(FieldData { desc, degree, modulus }));
        reg.insert(desc, data);
        Ok(Field(data))
    }

    pub fn create(characteristic: u64, cyclotomic_order: u32) -> Result<Field, ScalarError> {
        Field::new(FieldDescriptor::new(characteristic, cyclotomic_order))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.0.desc
    }

    pub fn characteristic(&self) -> u64 {
        self.0.desc.characteristic
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.0.desc.cyclotomic_order
    }

    /// Degree of the field over its prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements (`None` in characteristic 0).
    pub fn size(&self) -> Option<u64> {
        match self.0.modulus {
            Modulus::Rational(_) => None,
            Modulus::Prime { p, .. } => Some(p.pow(self.0.degree as u32)),
        }
    }

    pub fn zero(&self) -> Scalar {
        let repr = match self.0.modulus {
            Modulus::Rational(_) => Repr::Q(vec![BigRational::zero(); self.0.degree].into()),
            Modulus::Prime { .. } => Repr::P([0, 0]),
        };
        Scalar { field: *self, repr }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0.modulus {
            Modulus::Rational(_) => {
                let mut c = vec![BigRational::zero(); self.0.degree];
                c[0] = BigRational::from_integer(BigInt::from(v));
                Scalar { field: *self, repr: Repr::Q(c.into()) }
            }
            Modulus::Prime { p, .. } => {
                Scalar { field: *self, repr: Repr::P([v.rem_euclid(p as i64) as u64, 0]) }
            }
        }
    }

    /// `num / den` in the prime field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// The adjoined primitive root of unity.
    pub fn zeta(&self) -> Scalar {
        match &self.0.modulus {
            Modulus::Rational(_) => {
                if self.0.degree == 1 {
                    // x - 1 or x + 1
                    let v = if self.cyclotomic_order() == 1 { 1 } else { -1 };
                    self.from_i64(v)
                } else {
                    let mut c = vec![BigRational::zero(); self.0.degree];
                    c[1] = BigRational::one();
                    Scalar { field: *self, repr: Repr::Q(c.into()) }
                }
            }
            Modulus::Prime { p, m } => {
                if self.0.degree == 1 {
                    Scalar { field: *self, repr: Repr::P([(p - m[0]) % p, 0]) }
                } else {
                    Scalar { field: *self, repr: Repr::P([0, 1]) }
                }
            }
        }
    }

    /// Builds an element from prime-field coefficients given as integers.
    pub fn from_coefficients(&self, coeffs: &[i64]) -> Scalar {
        let z = self.zeta();
        let mut acc = self.zero();
        let mut pw = self.one();
        for &c in coeffs {
            acc = &acc + &(&self.from_i64(c) * &pw);
            pw = &pw * &z;
        }
        acc
    }

    /// Parses the canonical form produced by `Display` for [`Scalar`].
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            let ch = bytes[i];
            let prev = bytes[i - 1];
            if (ch == b'+' || ch == b'-') && !matches!(prev, b'*' | b'^' | b'/' | b'+' | b'-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let z = self.zeta();
        let mut acc = self.zero();
        for t in terms {
            let t = t.strip_prefix('+').unwrap_or(t);
            let (coef, power) = parse_term(t).ok_or_else(|| ScalarError::Parse(s.to_string()))?;
            let c = self.parse_rational(&coef)?;
            acc = &acc + &(&c * &z.pow(power as i64));
        }
        Ok(acc)
    }

    fn parse_rational(&self, s: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self.0.modulus {
            Modulus::Rational(_) => {
                let mut c = vec![BigRational::zero(); self.0.degree];
                c[0] = BigRational::new(num, den);
                Ok(Scalar { field: *self, repr: Repr::Q(c.into()) })
            }
            Modulus::Prime { p, .. } => {
                let pb = BigInt::from(p);
                let n = ((num % &pb) + &pb) % &pb;
                let d = ((den % &pb) + &pb) % &pb;
                let n: u64 = n.try_into().map_err(|_| err())?;
                let d: u64 = d.try_into().map_err(|_| err())?;
                let ns = Scalar { field: *self, repr: Repr::P([n, 0]) };
                let ds = Scalar { field: *self, repr: Repr::P([d, 0]) };
                let di = ds.inv().ok_or(ScalarError::DivisionByZero)?;
                Ok(&ns * &di)
            }
        }
    }
}

fn parse_term(t: &str) -> Option<(String, u32)> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let sign = if neg { "-" } else { "" };
    if let Some(idx) = body.find('z') {
        let coef_part = &body[..idx];
        let pow_part = &body[idx + 1..];
        let coef = if coef_part.is_empty() {
            "1".to_string()
        } else {
            coef_part.strip_suffix('*')?.to_string()
        };
        let power = if pow_part.is_empty() {
            1
        } else {
            pow_part.strip_prefix('^')?.parse().ok()?
        };
        if coef.starts_with('-') {
            if neg {
                return Some((coef[1..].to_string(), power));
            }
            return Some((coef, power));
        }
        Some((format!("{sign}{coef}"), power))
    } else {
        Some((format!("{sign}{body}"), 0))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(Box<[BigRational]>),
    P([u64; 2]),
}

/// Element of an interned field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(c) => c.iter().all(|x| x.is_zero()),
            Repr::P(c) => c[0] == 0 && c[1] == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Q(c) => c[0].is_one() && c[1..].iter().all(|x| x.is_zero()),
            Repr::P(c) => c[0] == 1 && c[1] == 0,
        }
    }

    /// Coefficients over the prime field as canonical strings.
    pub fn coefficient_strings(&self) -> Vec<String> {
        match &self.repr {
            Repr::Q(c) => c.iter().map(|x| x.to_string()).collect(),
            Repr::P(c) => c[..self.field.degree()].iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn check(&self, o: &Scalar) -> Result<(), ScalarError> {
        if self.field != o.field {
            Err(ScalarError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    fn add_unchecked(&self, o: &Scalar) -> Scalar {
        let repr = match (&self.repr, &o.repr) {
            (Repr::Q(a), Repr::Q(b)) => {
                Repr::Q(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
            }
            (Repr::P(a), Repr::P(b)) => {
                let p = self.prime();
                Repr::P([(a[0] + b[0]) % p, (a[1] + b[1]) % p])
            }
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }

    fn prime(&self) -> u64 {
        match self.field.0.modulus {
            Modulus::Prime { p, .. } => p,
            Modulus::Rational(_) => 0,
        }
    }

    fn mul_unchecked(&self, o: &Scalar) -> Scalar {
        let repr = match (&self.repr, &o.repr) {
            (Repr::Q(a), Repr::Q(b)) => {
                let d = a.len();
                if d == 1 {
                    Repr::Q(vec![&a[0] * &b[0]].into())
                } else {
                    let mut prod = vec![BigRational::zero(); 2 * d - 1];
                    for (i, x) in a.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in b.iter().enumerate() {
                            if !y.is_zero() {
                                prod[i + j] += x * y;
                            }
                        }
                    }
                    Repr::Q(reduce_rational(prod, self.field).into())
                }
            }
            (Repr::P(a), Repr::P(b)) => {
                let Modulus::Prime { p, m } = self.field.0.modulus else { unreachable!() };
                let mm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
                if self.field.0.degree == 1 {
                    Repr::P([mm(a[0], b[0]), 0])
                } else {
                    let hi = mm(a[1], b[1]);
                    let c0 = (mm(a[0], b[0]) + p - mm(hi, m[0])) % p;
                    let c1 = (mm(a[0], b[1]) + mm(a[1], b[0]) + p - mm(hi, m[1])) % p;
                    Repr::P([c0, c1])
                }
            }
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let repr = match &self.repr {
            Repr::Q(a) => {
                let d = a.len();
                if d == 1 {
                    Repr::Q(vec![a[0].recip()].into())
                } else {
                    // Solve M x = e_0 where column j of M is a * z^j.
                    let z = self.field.zeta();
                    let mut cols = Vec::with_capacity(d);
                    let mut cur = self.clone();
                    for _ in 0..d {
                        let Repr::Q(c) = &cur.repr else { unreachable!() };
                        cols.push(c.to_vec());
                        cur = &cur * &z;
                    }
                    let mut mat: Vec<Vec<BigRational>> = (0..d)
                        .map(|r| {
                            let mut row: Vec<BigRational> =
                                (0..d).map(|c| cols[c][r].clone()).collect();
                            row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                            row
                        })
                        .collect();
                    solve_dense_rational(&mut mat, d);
                    Repr::Q(mat.iter().map(|row| row[d].clone()).collect())
                }
            }
            Repr::P(a) => {
                let Modulus::Prime { p, m } = self.field.0.modulus else { unreachable!() };
                let mm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
                if self.field.0.degree == 1 {
                    Repr::P([powmod(a[0], p - 2, p), 0])
                } else {
                    let norm = (mm(a[0], a[0]) + p - mm(mm(a[0], a[1]), m[1]) + mm(mm(a[1], a[1]), m[0])) % p;
                    let ni = powmod(norm, p - 2, p);
                    let c0 = mm((a[0] + p - mm(a[1], m[1])) % p, ni);
                    let c1 = mm((p - a[1]) % p, ni);
                    Repr::P([c0, c1])
                }
            }
        };
        Some(Scalar { field: self.field, repr })
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// Multiplicative order if it is at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut x = self.clone();
        for k in 1..=bound {
            if x.is_one() {
                return Some(k);
            }
            x = &x * self;
        }
        None
    }
}

fn reduce_rational(mut prod: Vec<BigRational>, field: Field) -> Vec<BigRational> {
    let Modulus::Rational(m) = &field.0.modulus else { unreachable!() };
    let d = m.len() - 1;
    while prod.len() > d {
        let lead = prod.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = prod.len() - d;
        for i in 0..d {
            if !m[i].is_zero() {
                prod[shift + i] -= &lead * &m[i];
            }
        }
    }
    prod
}

fn solve_dense_rational(mat: &mut [Vec<BigRational>], n: usize) {
    for col in 0..n {
        let piv = (col..n).find(|&r| !mat[r][col].is_zero()).expect("singular multiplication matrix");
        mat.swap(col, piv);
        let inv = mat[col][col].recip();
        for v in mat[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                let pivot_row = mat[col].clone();
                for (x, y) in mat[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coefficient_strings();
        let mut parts = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c == "0" {
                continue;
            }
            match k {
                0 => parts.push(c.clone()),
                1 => parts.push(format!("{c}*z")),
                _ => parts.push(format!("{c}*z^{k}")),
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                assert!(self.field == o.field, "scalars from different fields");
                $body(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_unchecked(b));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_unchecked(b));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_unchecked(&-b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match &self.repr {
            Repr::Q(c) => Repr::Q(c.iter().map(|x| -x).collect()),
            Repr::P(c) => {
                let p = self.prime();
                Repr::P([(p - c[0]) % p, (p - c[1]) % p])
            }
        };
        Scalar { field: self.field, repr }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRecord {
    characteristic: u64,
    cyclotomic_order: u32,
    value: String,
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self.field.descriptor();
        ScalarRecord {
            characteristic: d.characteristic,
            cyclotomic_order: d.cyclotomic_order,
            value: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = ScalarRecord::deserialize(d)?;
        let field = Field::create(rec.characteristic, rec.cyclotomic_order)
            .map_err(serde::de::Error::custom)?;
        field.parse(&rec.value).map_err(serde::de::Error::custom)
    }
}

/// `1 + q + ... + q^(n-1)`.
pub fn quantum_integer(n: u32, q: &Scalar) -> Scalar {
    let f = q.field();
    let mut acc = f.zero();
    let mut pw = f.one();
    for _ in 0..n {
        acc = &acc + &pw;
        pw = &pw * q;
    }
    acc
}

/// `(1)_q (2)_q ... (n)_q`.
pub fn quantum_factorial(n: u32, q: &Scalar) -> Scalar {
    let mut acc = q.field().one();
    for k in 1..=n {
        acc = &acc * &quantum_integer(k, q);
    }
    acc
}

/// All `x` with `x^n = 1`, sorted by their canonical string.
pub fn roots_of_unity(field: Field, n: u32) -> Vec<Scalar> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Scalar> = match field.size() {
        None => {
            // roots of unity of Q(zeta_m) are the powers of -zeta
            let gen = -field.zeta();
            let m = 2 * field.cyclotomic_order().max(1);
            let mut v = Vec::new();
            let mut x = field.one();
            for _ in 0..m {
                if x.pow(n as i64).is_one() && !v.contains(&x) {
                    v.push(x.clone());
                }
                x = &x * &gen;
            }
            v
        }
        Some(q) => {
            let e = num_integer::gcd(n as u64, q - 1);
            let gen = element_of_order(field, e, q);
            let mut v = Vec::new();
            let mut x = field.one();
            for _ in 0..e {
                v.push(x.clone());
                x = &x * &gen;
            }
            v
        }
    };
    out.sort_by_key(|x| x.to_string());
    out.dedup();
    out
}

fn element_of_order(field: Field, e: u64, q: u64) -> Scalar {
    if e == 1 {
        return field.one();
    }
    let z = field.zeta();
    let p = field.characteristic() as i64;
    let cofactor = ((q - 1) / e) as i64;
    for a in 0..p {
        for b in 0..(if field.degree() > 1 { p } else { 1 }) {
            let y = &field.from_i64(a) + &(&field.from_i64(b) * &z);
            if y.is_zero() {
                continue;
            }
            let t = y.pow(cofactor);
            if t.order(e as u32) == Some(e as u32) {
                return t;
            }
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

/// Exact multiplicative order of `x` among the roots of unity of its field.
pub fn root_order(x: &Scalar) -> Option<u32> {
    x.order(1 << 12)
}

/// Helper used in tests and reports: is `x` a primitive `n`-th root of unity?
pub fn is_primitive_root(x: &Scalar, n: u32) -> bool {
    x.order(n) == Some(n)
}

/// `-1` is counted as a sign; useful for printing conditions.
pub fn is_minus_one(x: &Scalar) -> bool {
    (x + &x.field().one()).is_zero()
}

#[doc(hidden)]
pub fn rational_abs_bits(x: &Scalar) -> u64 {
    match &x.repr {
        Repr::Q(c) => c.iter().map(|r| r.numer().abs().bits() + r.denom().bits()).max().unwrap_or(0),
        Repr::P(_) => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_degenerate() {
        let q = Field::create(0, 1).unwrap();
        assert!(q.zeta().is_one());
        assert_eq!(q.degree(), 1);
    }

    #[test]
    fn f4() {
        let f = Field::create(2, 3).unwrap();
        assert_eq!(f.size(), Some(4));
        let z = f.zeta();
        assert!((&(&z * &z) + &(&z + &f.one())).is_zero());
    }

    #[test]
    fn phi6_relation() {
        let f = Field::create(0, 6).unwrap();
        let z = f.zeta();
        assert!((&(&z * &z) - &z + f.one()).is_zero());
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert_eq!(Field::create(4, 1).unwrap_err(), ScalarError::InvalidCharacteristic(4));
        assert_eq!(Field::create(3, 3).unwrap_err(), ScalarError::CharDividesOrder(3, 3));
        assert_eq!(Field::create(0, 5).unwrap_err(), ScalarError::UnsupportedOrder(5));
    }

    #[test]
    fn quantum_examples() {
        let q = Field::create(0, 1).unwrap();
        assert!(quantum_integer(2, &q.from_i64(-1)).is_zero());
        assert_eq!(quantum_integer(6, &q.one()), q.from_i64(6));
        let f3 = Field::create(0, 3).unwrap();
        assert!(quantum_integer(3, &f3.zeta()).is_zero());
        let c3 = Field::create(3, 1).unwrap();
        assert!(quantum_factorial(3, &c3.one()).is_zero());
        let f6 = Field::create(0, 6).unwrap();
        assert!(!quantum_factorial(2, &f6.zeta()).is_zero());
        assert!(quantum_factorial(4, &q.from_i64(-1)).is_zero());
    }

    #[test]
    fn roots_examples() {
        assert_eq!(roots_of_unity(Field::create(0, 1).unwrap(), 3).len(), 1);
        assert_eq!(roots_of_unity(Field::create(0, 3).unwrap(), 3).len(), 3);
        assert_eq!(roots_of_unity(Field::create(2, 3).unwrap(), 3).len(), 3);
        assert_eq!(roots_of_unity(Field::create(0, 3).unwrap(), 6).len(), 6);
        assert_eq!(roots_of_unity(Field::create(7, 1).unwrap(), 6).len(), 6);
        assert_eq!(roots_of_unity(Field::create(5, 3).unwrap(), 12).len(), 12);
    }

    #[test]
    fn zeta_orders() {
        for c in [0u64, 2, 3, 5, 7, 11, 13] {
            for n in SUPPORTED_ORDERS {
                if c != 0 && n as u64 % c == 0 {
                    continue;
                }
                let f = Field::create(c, n).unwrap();
                assert_eq!(f.zeta().order(n), Some(n), "char {c} order {n}");
            }
        }
    }

    #[test]
    fn display_roundtrip() {
        let f = Field::create(0, 12).unwrap();
        let x = &f.from_ratio(-3, 7).unwrap() + &(&f.from_i64(2) * &f.zeta().pow(3));
        let s = x.to_string();
        assert_eq!(f.parse(&s).unwrap(), x);
        let g = Field::create(5, 3).unwrap();
        let y = &g.from_i64(3) + &g.zeta();
        assert_eq!(g.parse(&y.to_string()).unwrap(), y);
        assert_eq!(f.parse("-z").unwrap(), -f.zeta());
        assert_eq!(f.parse("1 - z^2").unwrap(), &f.one() - &f.zeta().pow(2));
    }
}
