//! Binary fields GF(2^k), k ≤ 16, with log/antilog multiplication tables.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Sub};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} outside 1..=16")]
    Degree(u32),
    #[error("modulus {modulus:#b} does not have degree {k}")]
    ModulusDegree { k: u32, modulus: u32 },
    #[error("modulus {0:#b} is reducible")]
    Reducible(u32),
    #[error("no standard modulus for k = {0} (available: 2, 4, 8)")]
    NoStandard(u32),
    #[error("element {bits:#x} does not lie in GF(2^{k})")]
    OutOfRange { bits: u32, k: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Moduli shipped for reproducible runs; each is primitive.
pub const STANDARD_MODULI: [(u32, u32); 3] = [(2, 0b111), (4, 0x13), (8, 0x11D)];

struct FieldData {
    k: u32,
    modulus: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Handle to an interned field; cheap to copy and compare.
#[derive(Clone, Copy)]
pub struct BinaryField(&'static FieldData);

impl PartialEq for BinaryField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for BinaryField {}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#b})", self.0.k, self.0.modulus)
    }
}

fn clmul_mod(mut a: u32, mut b: u32, modulus: u32, k: u32) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> k) & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Exhaustive search for a factor of degree at most `deg/2`.
fn is_irreducible(modulus: u32) -> bool {
    let d = poly_degree(modulus);
    if d < 1 {
        return false;
    }
    for f in 2u32..(1 << (d / 2 + 1)) {
        if poly_degree(f) >= 1 && poly_degree(f) <= d / 2 && poly_rem(modulus, f) == 0 {
            return false;
        }
    }
    true
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldData>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl BinaryField {
    pub fn new(k: u32, modulus: u32) -> Result<Self, FieldError> {
        if !(1..=16).contains(&k) {
            return Err(FieldError::Degree(k));
        }
        if poly_degree(modulus) != k as i32 {
            return Err(FieldError::ModulusDegree { k, modulus });
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(d) = reg.get(&(k, modulus)) {
            return Ok(BinaryField(d));
        }
        if !is_irreducible(modulus) {
            return Err(FieldError::Reducible(modulus));
        }
        let q = 1u32 << k;
        let order_of = |g: u32| -> u32 {
            let mut x = g;
            let mut n = 1;
            while x != 1 {
                x = clmul_mod(x, g, modulus, k);
                n += 1;
            }
            n
        };
        let gen = (1..q).find(|&g| order_of(g) == q - 1).expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * (q as usize)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = clmul_mod(x, gen, modulus, k);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }
        let data: &'static FieldData = Box::leak(Box::new(FieldData { k, modulus, exp, log }));
        reg.insert((k, modulus), data);
        Ok(BinaryField(data))
    }

    pub fn standard(k: u32) -> Result<Self, FieldError> {
        let (_, m) = STANDARD_MODULI.iter().find(|(kk, _)| *kk == k).ok_or(FieldError::NoStandard(k))?;
        Self::new(k, *m)
    }

    pub fn k(self) -> u32 {
        self.0.k
    }

    pub fn modulus(self) -> u32 {
        self.0.modulus
    }

    pub fn order(self) -> u32 {
        1 << self.0.k
    }

    pub fn zero(self) -> Gf {
        Gf { bits: 0, field: self }
    }

    pub fn one(self) -> Gf {
        Gf { bits: 1, field: self }
    }

    pub fn elem(self, bits: u32) -> Result<Gf, FieldError> {
        if bits >= self.order() {
            return Err(FieldError::OutOfRange { bits, k: self.k() });
        }
        Ok(Gf { bits, field: self })
    }

    /// Parses `"0x1d"`, `"1d"` (hex) or `"0b11101"`.
    pub fn parse(self, s: &str) -> Result<Gf, FieldError> {
        let t = s.trim();
        let bits = if let Some(b) = t.strip_prefix("0b") {
            u32::from_str_radix(b, 2)
        } else {
            u32::from_str_radix(t.trim_start_matches("0x"), 16)
        }
        .map_err(|_| FieldError::Parse(s.to_string()))?;
        self.elem(bits)
    }

    pub fn elements(self) -> impl Iterator<Item = Gf> + Clone {
        (0..self.order()).map(move |bits| Gf { bits, field: self })
    }

    pub fn nonzero(self) -> impl Iterator<Item = Gf> + Clone {
        (1..self.order()).map(move |bits| Gf { bits, field: self })
    }

    /// The smallest root of `x² + x + 1`, present iff `k` is even.
    pub fn omega(self) -> Option<Gf> {
        self.nonzero().find(|w| *w * *w + *w + self.one() == self.zero())
    }
}

/// An element of a [`BinaryField`].
#[derive(Clone, Copy)]
pub struct Gf {
    bits: u32,
    field: BinaryField,
}

impl Gf {
    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn field(self) -> BinaryField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    pub fn inv(self) -> Result<Gf, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let d = self.field.0;
        let q1 = (1u32 << d.k) - 1;
        let l = d.log[self.bits as usize];
        Ok(Gf { bits: d.exp[((q1 - l) % q1) as usize], field: self.field })
    }

    pub fn pow(self, e: u64) -> Gf {
        if e == 0 {
            return self.field.one();
        }
        if self.is_zero() {
            return self;
        }
        let d = self.field.0;
        let q1 = u64::from((1u32 << d.k) - 1);
        let l = u64::from(d.log[self.bits as usize]);
        Gf { bits: d.exp[((l * (e % q1)) % q1) as usize], field: self.field }
    }

    pub fn square(self) -> Gf {
        self * self
    }

    /// `a^(2^(k-1))`, the inverse of Frobenius.
    pub fn sqrt(self) -> Gf {
        let mut x = self;
        for _ in 1..self.field.k() {
            x = x.square();
        }
        x
    }

    /// Fixed-width binary string, most significant bit first.
    pub fn to_bitstring(self) -> String {
        format!("{:0width$b}", self.bits, width = self.field.k() as usize)
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.bits)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.field == other.field, "elements of different fields");
        self.bits == other.bits
    }
}

impl Eq for Gf {}

impl PartialOrd for Gf {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gf {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl std::hash::Hash for Gf {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl serde::Serialize for Gf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.to_hex())
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        debug_assert!(self.field == rhs.field);
        Gf { bits: self.bits ^ rhs.bits, field: self.field }
    }
}

impl AddAssign for Gf {
    fn add_assign(&mut self, rhs: Gf) {
        *self = *self + rhs;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self + rhs
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        debug_assert!(self.field == rhs.field);
        if self.bits == 0 || rhs.bits == 0 {
            return Gf { bits: 0, field: self.field };
        }
        let d = self.field.0;
        let i = d.log[self.bits as usize] + d.log[rhs.bits as usize];
        Gf { bits: d.exp[i as usize], field: self.field }
    }
}

impl MulAssign for Gf {
    fn mul_assign(&mut self, rhs: Gf) {
        *self = *self * rhs;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Gf {
    type Output = Gf;
    /// Panics on division by zero.
    fn div(self, rhs: Gf) -> Gf {
        self * rhs.inv().expect("division by zero in GF(2^k)")
    }
}

impl std::iter::Sum for Gf {
    fn sum<I: Iterator<Item = Gf>>(mut iter: I) -> Gf {
        let first = iter.next().expect("sum of an empty iterator of field elements");
        iter.fold(first, |a, b| a + b)
    }
}

/// Parity of a binomial coefficient: `C(n, k)` is odd iff `k & !n == 0`.
pub fn binomial_odd(n: u32, k: u32) -> bool {
    k <= n && (k & !n) == 0
}
