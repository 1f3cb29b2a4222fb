//! Coefficient fields.
//!
//! Everything in this crate is linear algebra over a field. The elimination
//! engine is written once against [`Field`] and instantiated for the exact
//! rationals (the real coefficient field of every computation) and for prime
//! fields `Z/p`, which serve as an independent cross-check and as the fast
//! mode for very large complexes.
//!
//! Floating point is deliberately not a `Field` here: ranks must be exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Operations needed by the elimination routines.
///
/// Values of a prime field carry their modulus, so there is no static
/// `zero()`; the routines only ever combine values that already exist.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_null(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv_ref(&self) -> Self;

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv_ref())
    }

    /// `self - a * b`, the inner step of every row operation.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub_ref(&a.mul_ref(b))
    }
}

impl Field for BigRational {
    fn is_null(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        // Integer fast path: coboundary entries are mostly +-1 or powers of a base.
        if self.denom().is_one() && rhs.denom().is_one() {
            return BigRational::from_integer(self.numer() * rhs.numer());
        }
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn inv_ref(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Element of the prime field `Z/p`. Both operands of every operation must
/// share a modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2);
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Reduces a rational modulo `p`, or `None` when `p` divides the denominator.
    pub fn from_rational(q: &Rational, p: u64) -> Option<Self> {
        let modulus = BigInt::from(p);
        let den = q.denom().mod_floor(&modulus).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = q.numer().mod_floor(&modulus).to_u64()?;
        Some(Fp::new(num, p).mul_ref(&Fp::new(den, p).inv_ref()))
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Field for Fp {
    fn is_null(&self) -> bool {
        self.value == 0
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.modulus { s - self.modulus } else { s },
            modulus: self.modulus,
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let prod = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp {
            value: prod as u64,
            modulus: self.modulus,
        }
    }

    fn neg_ref(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    fn inv_ref(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus - 2)
    }
}

/// Deterministic primality test for the word-sized moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // Miller-Rabin with these bases is exact for all n < 3.3e24.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Draws `count` distinct primes in `[2^29, 2^30)`.
pub fn random_primes_30bit<R: rand::Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    while primes.len() < count {
        let candidate = rng.gen_range((1u64 << 29)..(1u64 << 30)) | 1;
        if is_prime(candidate) && !primes.contains(&candidate) {
            primes.push(candidate);
        }
    }
    primes
}

/// Parses `"p/q"` or an integer literal into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Renders a rational as `"p/q"`, or as a bare integer when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let p = 1_000_003;
        for v in [1u64, 2, 17, 999_999] {
            let x = Fp::new(v, p);
            assert_eq!(x.mul_ref(&x.inv_ref()).value(), 1);
        }
    }

    #[test]
    fn reduce_rational_mod_p() {
        let q = rational(3, 4);
        let r = Fp::from_rational(&q, 7).unwrap();
        assert_eq!(r.mul_ref(&Fp::new(4, 7)).value(), 3);
        assert!(Fp::from_rational(&rational(1, 14), 7).is_none());
        assert_eq!(Fp::from_rational(&integer(-1), 7).unwrap().value(), 6);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(!is_prime(561));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/2"), Some(rational(3, 2)));
        assert_eq!(parse_rational("-4"), Some(integer(-4)));
        assert_eq!(parse_rational("6/4"), Some(rational(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rational(6, 4)), "3/2");
        assert_eq!(format_rational(&integer(5)), "5");
    }
}
