//! Exact elementary number theory used throughout the census.
//!
//! Arguments are machine integers of desk scale (at most `p^2 - 1` for small
//! primes), so factorization is plain trial division. Counts are returned as
//! [`UnboundedInt`] because they grow like `p^{2n}`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

pub type UnboundedInt = BigUint;
pub type ExactRational = BigRational;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exponent of the prime `l` in `n`; `n` must be nonzero.
pub fn valuation(mut n: u64, l: u64) -> u32 {
    debug_assert!(n != 0 && l > 1);
    let mut v = 0;
    while n % l == 0 {
        n /= l;
        v += 1;
    }
    v
}

/// Largest divisor of `n` prime to `l`.
pub fn prime_to_part(mut n: u64, l: u64) -> u64 {
    while n % l == 0 {
        n /= l;
    }
    n
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest `k >= 1` with `x^k = 1 (mod m)`; `1` when `m == 1`.
pub fn mult_order(x: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(1);
    }
    if gcd(x % m, m) != 1 {
        return Err(Error::NotCoprime { x, m });
    }
    let x = x % m;
    let mut acc = x;
    let mut k = 1;
    while acc != 1 {
        acc = ((acc as u128 * x as u128) % m as u128) as u64;
        k += 1;
    }
    Ok(k)
}

pub(crate) fn rational_to_uint(value: &ExactRational, what: &str) -> Result<UnboundedInt> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Internal(format!("{what} evaluated to {value}, not a nonnegative integer")));
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

fn ratio(n: u64, d: u64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Number of elements of order exactly `a` in `Z/a x Z/b`, from the
/// Euler-product formula evaluated over the rationals.
pub fn psi(a: u64, b: u64) -> Result<UnboundedInt> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(format!("psi({a}, {b}) needs positive arguments")));
    }
    let g = gcd(a, b);
    let cofactor = a / g;
    let mut value = BigRational::from_integer(BigInt::from(a) * BigInt::from(g));
    for l in prime_factors(a) {
        if cofactor % l == 0 {
            value *= ratio(l - 1, l);
        } else {
            value *= ratio(l * l - 1, l * l);
        }
    }
    rational_to_uint(&value, &format!("psi({a}, {b})"))
}

/// Fraction of order-`c` pairs in `F_{p^2}^* x F_p^*` whose second
/// coordinate lies in `<gamma^{p+1}>`, decided by 2-adic valuations.
pub fn lambda_split(c: u64, p: u64) -> Result<ExactRational> {
    ensure_prime(p)?;
    let full = p * p - 1;
    if c == 0 || full % c != 0 || (p - 1) % c == 0 {
        return Err(Error::InvalidArgument(format!(
            "lambda needs c | p^2-1 and c not dividing p-1 (c={c}, p={p})"
        )));
    }
    let vc = valuation(c, 2);
    let v_full = valuation(full, 2);
    let v_minus = valuation(p - 1, 2);
    let value = if vc == 0 || vc == v_full {
        ratio(1, 1)
    } else if v_minus < vc && vc < v_full {
        ratio(1, 2)
    } else {
        ratio(1, 3)
    };
    Ok(value)
}

/// Divisors `c` of `p^2 - 1` that do not divide `p - 1`.
pub fn admissible_orders(p: u64) -> Vec<u64> {
    divisors(p * p - 1).into_iter().filter(|c| (p - 1) % c != 0).collect()
}

pub(crate) fn uint(n: u64) -> UnboundedInt {
    BigUint::from(n)
}
