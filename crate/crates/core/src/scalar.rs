//! Coefficient rings.
//!
//! Everything that multiplies edge factors is generic over [`Coefficient`]:
//! the exact ring [`Integer`] (machine words that widen to a big integer on
//! overflow) and the prime fields [`Zp`]. Floating point is deliberately not
//! a coefficient ring here; cancellation has to be exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact commutative ring usable as a polynomial coefficient.
pub trait Coefficient:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync
{
    /// Image of an exact integer in this ring.
    fn from_integer(value: &Integer) -> Self;
}

impl Coefficient for BigInt {
    fn from_integer(value: &Integer) -> Self {
        value.to_bigint()
    }
}

/// Exact integer: a checked `i64` fast path that promotes to [`BigInt`].
///
/// The representation is canonical, a value that fits in `i64` is always
/// stored as `Small`, so derived equality and hashing agree with the number.
#[derive(Clone, PartialEq, Eq)]
pub enum Integer {
    Small(i64),
    Big(BigInt),
}

impl Integer {
    fn normalize(big: BigInt) -> Self {
        match big.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(big),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => b.clone(),
        }
    }

    pub fn is_widened(&self) -> bool {
        matches!(self, Integer::Big(_))
    }

    /// Least nonnegative residue modulo `p` (`p > 0`).
    pub fn rem_euclid(&self, p: u64) -> u64 {
        match self {
            Integer::Small(v) => (*v as i128).rem_euclid(p as i128) as u64,
            Integer::Big(b) => {
                let r = b % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                r.to_u64().expect("residue fits in u64")
            }
        }
    }

    pub fn abs(&self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_abs() {
                Some(a) => Integer::Small(a),
                None => Integer::Big(BigInt::from(*v).abs()),
            },
            Integer::Big(b) => Integer::normalize(b.abs()),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Integer::Small(1) | Integer::Small(-1))
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::normalize(v)
    }
}

impl Hash for Integer {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Integer::Small(v) => v.hash(state),
            Integer::Big(b) => b.hash(state),
        }
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => fmt::Display::fmt(v, f),
            Integer::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.strip_prefix('+').unwrap_or(s);
        match s.parse::<i64>() {
            Ok(v) => Ok(Integer::Small(v)),
            Err(_) => s.parse::<BigInt>().map(Integer::normalize),
        }
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Integer {
            type Output = Integer;

            fn $method(self, rhs: Integer) -> Integer {
                $trait::$method(&self, &rhs)
            }
        }

        impl<'a> $trait<&'a Integer> for &'a Integer {
            type Output = Integer;

            fn $method(self, rhs: &Integer) -> Integer {
                if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Integer::Small(v);
                    }
                }
                Integer::normalize($trait::$method(self.to_bigint(), rhs.to_bigint()))
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Neg for Integer {
    type Output = Integer;

    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::Big(-BigInt::from(v)),
            },
            Integer::Big(b) => Integer::normalize(-b),
        }
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::Small(0)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::Small(1)
    }
}

impl Coefficient for Integer {
    fn from_integer(value: &Integer) -> Self {
        value.clone()
    }
}

/// Residue class modulo the prime `P` (at most 2^31).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zp<const P: u32>(u32);

impl<const P: u32> Zp<P> {
    pub fn new(value: u64) -> Self {
        Zp((value % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u32> Add for Zp<P> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Zp::new(self.0 as u64 + rhs.0 as u64)
    }
}

impl<const P: u32> Sub for Zp<P> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Zp::new(self.0 as u64 + P as u64 - rhs.0 as u64)
    }
}

impl<const P: u32> Mul for Zp<P> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Zp::new(self.0 as u64 * rhs.0 as u64)
    }
}

impl<const P: u32> Neg for Zp<P> {
    type Output = Self;

    fn neg(self) -> Self {
        Zp::new(P as u64 - self.0 as u64)
    }
}

impl<const P: u32> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Zp<P> {
    fn one() -> Self {
        Zp::new(1)
    }
}

impl<const P: u32> Coefficient for Zp<P> {
    fn from_integer(value: &Integer) -> Self {
        Zp(value.rem_euclid(P as u64) as u32)
    }
}

/// Deterministic primality test for the moduli accepted by modular queries.
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
