//! Table-driven arithmetic in `F_p` and `F_{p^2}`.
//!
//! Every field is built with a fixed modulus and a fixed generator `gamma_0`
//! so that discrete logarithms, and everything derived from them, are
//! identical across runs. Elements are packed as `c0 + p * c1` for the
//! element `c0 + c1 * theta`, where `theta` is the class of `x` modulo the
//! defining polynomial.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numtheory::{ensure_prime, gcd};

const NO_LOG: u32 = u32::MAX;

#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    degree: u32,
    /// Monic defining polynomial, low degree first.
    modulus: Vec<u32>,
    /// `theta^2 = k + theta` for degree 2; unused for the prime field.
    theta_sq: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldCtx {
    /// Builds `F_{p^degree}` for `degree` in `{1, 2}`.
    ///
    /// The quadratic modulus is `x^2 - x - k` for the least `k >= 1` without
    /// a root in `F_p`, and `gamma_0` is the least generator in packed order.
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        ensure_prime(p)?;
        if degree != 1 && degree != 2 {
            return Err(Error::UnsupportedDegree(degree));
        }
        if p > 1 << 12 {
            return Err(Error::InvalidArgument(format!("p = {p} is too large for table arithmetic")));
        }
        let p = p as u32;
        let (modulus, theta_sq) = if degree == 1 {
            (vec![0, 1], 0)
        } else {
            let k = (1..p)
                .find(|&k| (0..p).all(|x| (x * x + 2 * p * p - x - k) % p != 0))
                .expect("an irreducible quadratic of this shape exists");
            // x^2 - x - k
            (vec![(p - k) % p, p - 1, 1], k)
        };
        let mut ctx = FieldCtx {
            p,
            degree,
            modulus,
            theta_sq,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let size = self.size();
        let units = size - 1;
        let generator = (1..size as u32)
            .find(|&g| self.naive_order(g) == units)
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(units as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut acc = 1u32;
        for k in 0..units {
            exp.push(acc);
            log[acc as usize] = k as u32;
            acc = self.naive_mul(acc, generator);
        }
        self.generator = generator;
        self.exp = exp;
        self.log = log;
    }

    fn naive_order(&self, x: u32) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != 1 {
            acc = self.naive_mul(acc, x);
            k += 1;
        }
        k
    }

    /// Schoolbook multiplication on packed coefficients.
    pub(crate) fn naive_mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        let (x0, x1) = (x % p, x / p);
        let (y0, y1) = (y % p, y / p);
        // (x0 + x1 t)(y0 + y1 t) with t^2 = k + t
        let top = x1 * y1 % p;
        let c0 = (x0 * y0 + top * self.theta_sq) % p;
        let c1 = (x0 * y1 + x1 * y0 + top) % p;
        c0 + p * c1
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `k` in `theta^2 = theta + k`; zero for the prime field.
    pub fn theta_square_constant(&self) -> u64 {
        self.theta_sq as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements, `p^degree`.
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.degree)
    }

    /// Order of the multiplicative group, `p^degree - 1`.
    pub fn unit_order(&self) -> u64 {
        self.size() - 1
    }

    pub fn zero(&self) -> FqElem<'_> {
        FqElem { ctx: self, repr: 0 }
    }

    pub fn one(&self) -> FqElem<'_> {
        FqElem { ctx: self, repr: 1 }
    }

    pub fn generator(&self) -> FqElem<'_> {
        FqElem { ctx: self, repr: self.generator }
    }

    /// `gamma_0^k`, with `k` reduced modulo the unit order.
    pub fn gamma_pow(&self, k: u64) -> FqElem<'_> {
        let idx = (k % self.unit_order()) as usize;
        FqElem { ctx: self, repr: self.exp[idx] }
    }

    pub fn from_int(&self, n: i64) -> FqElem<'_> {
        let p = self.p as i64;
        FqElem { ctx: self, repr: n.rem_euclid(p) as u32 }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem<'_>> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        let p = self.p as u64;
        let repr = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c % p);
        Ok(FqElem { ctx: self, repr: repr as u32 })
    }

    /// All elements in packed order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FqElem<'_>> + '_ {
        (0..self.size() as u32).map(move |repr| FqElem { ctx: self, repr })
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem<'_>> + '_ {
        self.elements().skip(1)
    }

    /// Nonzero elements of the prime subfield.
    pub fn prime_units(&self) -> impl Iterator<Item = FqElem<'_>> + '_ {
        (1..self.p).map(move |repr| FqElem { ctx: self, repr })
    }

    fn same(&self, other: &FieldCtx) -> bool {
        std::ptr::eq(self, other)
    }
}

/// An element of a [`FieldCtx`].
#[derive(Clone, Copy)]
pub struct FqElem<'a> {
    ctx: &'a FieldCtx,
    repr: u32,
}

impl<'a> FqElem<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    /// Packed index `c0 + p * c1`.
    pub fn repr(&self) -> u32 {
        self.repr
    }

    pub fn coeffs(&self) -> Vec<u64> {
        let p = self.ctx.p;
        (0..self.ctx.degree)
            .map(|i| ((self.repr / p.pow(i)) % p) as u64)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    pub fn is_one(&self) -> bool {
        self.repr == 1
    }

    pub fn in_prime_field(&self) -> bool {
        self.repr < self.ctx.p
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement("inverse"));
        }
        let log = self.dlog()?;
        let n = self.ctx.unit_order();
        Ok(self.ctx.gamma_pow((n - log) % n))
    }

    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return self.ctx.one();
        }
        match self.dlog() {
            Ok(log) => {
                let n = self.ctx.unit_order();
                let e = (log as u128 * k as u128 % n as u128) as u64;
                self.ctx.gamma_pow(e)
            }
            Err(_) => *self,
        }
    }

    /// The `p`-power Frobenius.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p as u64)
    }

    /// Discrete logarithm to the base `gamma_0`, in `[0, p^d - 1)`.
    pub fn dlog(&self) -> Result<u64> {
        match self.ctx.log[self.repr as usize] {
            NO_LOG => Err(Error::ZeroElement("discrete logarithm")),
            k => Ok(k as u64),
        }
    }

    pub fn order(&self) -> Result<u64> {
        let n = self.ctx.unit_order();
        Ok(n / gcd(self.dlog()?, n))
    }
}

impl PartialEq for FqElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.ctx.same(other.ctx), "comparing elements of different fields");
        self.repr == other.repr
    }
}

impl Eq for FqElem<'_> {}

impl Hash for FqElem<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for FqElem<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl<'a> Add for FqElem<'a> {
    type Output = FqElem<'a>;
    fn add(self, rhs: Self) -> Self {
        debug_assert!(self.ctx.same(rhs.ctx));
        let p = self.ctx.p;
        let c0 = (self.repr % p + rhs.repr % p) % p;
        let c1 = (self.repr / p + rhs.repr / p) % p;
        FqElem { ctx: self.ctx, repr: c0 + p * c1 }
    }
}

impl<'a> Neg for FqElem<'a> {
    type Output = FqElem<'a>;
    fn neg(self) -> Self {
        let p = self.ctx.p;
        let c0 = (p - self.repr % p) % p;
        let c1 = (p - self.repr / p) % p;
        FqElem { ctx: self.ctx, repr: c0 + p * c1 }
    }
}

impl<'a> Sub for FqElem<'a> {
    type Output = FqElem<'a>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a> Mul for FqElem<'a> {
    type Output = FqElem<'a>;
    fn mul(self, rhs: Self) -> Self {
        debug_assert!(self.ctx.same(rhs.ctx));
        let ctx = self.ctx;
        let (a, b) = (ctx.log[self.repr as usize], ctx.log[rhs.repr as usize]);
        if a == NO_LOG || b == NO_LOG {
            return ctx.zero();
        }
        let idx = (a as u64 + b as u64) % ctx.unit_order();
        FqElem { ctx, repr: ctx.exp[idx as usize] }
    }
}

impl fmt::Debug for FqElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FqElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        match c.as_slice() {
            [c0] | [c0, 0] => write!(f, "{c0}"),
            [0, 1] => write!(f, "t"),
            [0, c1] => write!(f, "{c1}t"),
            [c0, 1] => write!(f, "{c0}+t"),
            [c0, c1] => write!(f, "{c0}+{c1}t"),
            _ => unreachable!(),
        }
    }
}
