//! Exact rational scalars and the handful of number-theoretic helpers the
//! rest of the crate leans on.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar field. Always stored in lowest terms with a positive
/// denominator, so `==` and `Hash` are canonical.
pub type Q = num_rational::Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Formats as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        expected: "rational number".into(),
        found: s.to_string(),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i128>().map(Q::from_integer).map_err(|_| bad()),
    }
}

/// Nonnegative generator of the subgroup of ℚ generated by `xs`
/// (zero when every element is zero).
pub fn gcd_q<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Q {
    let mut acc = Q::zero();
    for x in xs {
        acc = gcd_pair(&acc, x);
    }
    acc
}

fn gcd_pair(a: &Q, b: &Q) -> Q {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let den = a.denom().lcm(b.denom());
    let na = a.numer() * (den / a.denom());
    let nb = b.numer() * (den / b.denom());
    Q::new(na.gcd(&nb), den)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The first `count` primes different from `skip`.
pub fn primes_except(skip: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = 2u64;
    while out.len() < count {
        if p != skip && is_prime(p) {
            out.push(p);
        }
        p += 1;
    }
    out
}

/// Largest power of `p` dividing `n`, and the cofactor.
pub fn split_prime_power(n: i128, p: i128) -> (u32, i128) {
    let mut e = 0;
    let mut m = n;
    while m != 0 && m % p == 0 {
        m /= p;
        e += 1;
    }
    (e, m)
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(gcd_q(&[qf(1, 2), qf(1, 3)]), qf(1, 6));
        assert_eq!(gcd_q(&[q(4), q(6)]), q(2));
        assert_eq!(gcd_q(&[qf(-2, 3), qf(4, 9)]), qf(2, 9));
        assert_eq!(gcd_q(&[]), q(0));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-2/4").unwrap(), qf(-1, 2));
        assert_eq!(fmt_q(&qf(6, 3)), "2");
        assert_eq!(fmt_q(&qf(-1, 3)), "-1/3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(primes_except(2, 3), vec![3, 5, 7]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert!(is_prime(97) && !is_prime(91));
        assert_eq!(split_prime_power(24, 2), (3, 3));
    }
}
