//! Arithmetic in the prime field F_p.
//!
//! Two layers live here. [`Fp`] is the checked scalar: it carries its modulus
//! and refuses to mix characteristics. [`Field`] is the unchecked hot-loop
//! helper used by the structure-constant tables and the elimination engines,
//! where coefficients are plain `u32` residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Deterministic primality test for the small moduli used here.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Unchecked arithmetic modulo a fixed prime `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 16 {
            return Err(Error::InvalidParameters(format!(
                "modulus {p} too large for the u32 coefficient tables"
            )));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    #[inline]
    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue; panics on zero, which is an internal bug
    /// everywhere this is called (pivots are nonzero by construction).
    #[inline]
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero modulo {}", self.p);
        // extended Euclid on small integers
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    pub fn checked_inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    /// `n!` modulo p.
    pub fn factorial(self, n: u32) -> u32 {
        (1..=n).fold(1 % self.p, |acc, k| self.mul(acc, k % self.p))
    }

    /// Binomial coefficient `C(n, k)` modulo p by Lucas' theorem.
    pub fn binom(self, mut n: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1 % self.p;
        while n > 0 || k > 0 {
            let (nd, kd) = ((n % p) as u32, (k % p) as u32);
            if kd > nd {
                return 0;
            }
            let num = self.factorial(nd);
            let den = self.mul(self.factorial(kd), self.factorial(nd - kd));
            acc = self.mul(acc, self.mul(num, self.inv(den)));
            n /= p;
            k /= p;
        }
        acc
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    /// Build a residue; any prime modulus is accepted at this level.
    pub fn new(value: i64, p: u32) -> Result<Self> {
        let field = Field::new(p)?;
        Ok(Fp {
            value: field.from_i64(value),
            p,
        })
    }

    pub(crate) fn from_raw(value: u32, p: u32) -> Self {
        debug_assert!(value < p);
        Fp { value, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn field(self) -> Field {
        Field { p: self.p }
    }

    fn check(self, other: Fp) -> Result<()> {
        if self.p != other.p {
            Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(self, other: Fp) -> Result<Fp> {
        self.check(other)?;
        Ok(Fp::from_raw(self.field().add(self.value, other.value), self.p))
    }

    pub fn try_sub(self, other: Fp) -> Result<Fp> {
        self.check(other)?;
        Ok(Fp::from_raw(self.field().sub(self.value, other.value), self.p))
    }

    pub fn try_mul(self, other: Fp) -> Result<Fp> {
        self.check(other)?;
        Ok(Fp::from_raw(self.field().mul(self.value, other.value), self.p))
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp::from_raw(self.field().pow(self.value, e), self.p)
    }

    /// Multiplicative inverse; zero is rejected.
    pub fn inv(self) -> Result<Fp> {
        Ok(Fp::from_raw(self.field().checked_inv(self.value)?, self.p))
    }
}

/// `fp_inv` as a free function.
pub fn fp_inv(a: Fp) -> Result<Fp> {
    a.inv()
}

// The operator forms panic on a modulus mismatch; use the `try_*` methods
// where the operands come from untrusted input.
impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.try_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.try_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.try_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::from_raw(self.field().neg(self.value), self.p)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let one = Fp::new(1, 5).unwrap();
        assert_eq!(fp_inv(one).unwrap().value(), 1);
        assert_eq!(fp_inv(Fp::new(2, 5).unwrap()).unwrap().value(), 3);
        assert_eq!(fp_inv(Fp::new(3, 7).unwrap()).unwrap().value(), 5);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert!(matches!(
            fp_inv(Fp::new(0, 7).unwrap()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn inverse_exhaustive() {
        for p in [5u32, 7, 11] {
            for a in 1..p as i64 {
                let x = Fp::new(a, p).unwrap();
                // brute-force oracle: search all residues
                let brute = (1..p).find(|b| (a as u32 * b) % p == 1).unwrap();
                assert_eq!(x.inv().unwrap().value(), brute);
                assert_eq!((x * x.inv().unwrap()).value(), 1);
            }
        }
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = Fp::new(1, 5).unwrap();
        let b = Fp::new(1, 7).unwrap();
        assert!(a.try_add(b).is_err());
        assert!(a.try_mul(b).is_err());
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert!(matches!(Fp::new(1, 4), Err(Error::NotPrime(4))));
        assert!(Field::new(9).is_err());
    }

    #[test]
    fn lucas_binomials_match_integer_arithmetic() {
        let f = Field::new(7).unwrap();
        for n in 0u64..=30 {
            let mut row = vec![1u64];
            for k in 1..=n {
                // integer binomial via the multiplicative formula
                let prev = row[(k - 1) as usize];
                row.push(prev * (n - k + 1) / k);
            }
            for k in 0..=n {
                assert_eq!(f.binom(n, k), (row[k as usize] % 7) as u32, "C({n},{k})");
            }
        }
    }
}
