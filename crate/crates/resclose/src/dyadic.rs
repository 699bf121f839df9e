/*!
Exact dyadic rationals `a / 2^e` on a checked `i128` numerator.

Every quantity in this crate (closeness, residual closeness, closed-form
bounds) is a finite sum of powers of two, so dyadics are closed under all
arithmetic we perform. No floating point anywhere.
*/

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest representable exponent. `fraction()` prints the denominator as a
/// `u128`, which caps `e` at 127.
pub const MAX_EXP: u32 = 127;

/// An exact dyadic rational `numer / 2^exp`.
///
/// Canonical form: `exp == 0` when `numer == 0`, otherwise `numer` is odd or
/// `exp == 0`. Construction normalizes, so two equal values always compare
/// and hash equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numer: i128,
    exp: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseDyadicError {
    #[error("malformed dyadic literal (expected `a` or `a/b`)")]
    Malformed,
    #[error("denominator is not a power of two")]
    DenominatorNotPowerOfTwo,
}

/// `x << s` if it fits in `i128`, else `None`.
fn shl_checked(x: i128, s: u32) -> Option<i128> {
    if x == 0 || s == 0 {
        return Some(x);
    }
    if s > 126 {
        return None;
    }
    let r = x << s;
    if r >> s == x {
        Some(r)
    } else {
        None
    }
}

impl Dyadic {
    /// Builds `numer / 2^exp` and reduces to canonical form.
    ///
    /// Panics if the reduced exponent exceeds [`MAX_EXP`]; fallible callers
    /// go through the `checked_*` operations instead.
    pub fn new(numer: i128, exp: u32) -> Dyadic {
        let mut n = numer;
        let mut e = exp;
        if n == 0 {
            return Dyadic { numer: 0, exp: 0 };
        }
        while e > 0 && n % 2 == 0 {
            n /= 2;
            e -= 1;
        }
        assert!(e <= MAX_EXP, "dyadic exponent {e} exceeds supported range");
        Dyadic { numer: n, exp: e }
    }

    pub fn from_int(n: i128) -> Dyadic {
        Dyadic { numer: n, exp: 0 }
    }

    pub fn zero() -> Dyadic {
        Dyadic { numer: 0, exp: 0 }
    }

    /// `2^e` for possibly negative `e`.
    pub fn pow2(e: i32) -> Dyadic {
        if e >= 0 {
            assert!(e <= 126, "2^{e} exceeds dyadic range");
            Dyadic { numer: 1i128 << e, exp: 0 }
        } else {
            let e = e.unsigned_abs();
            assert!(e <= MAX_EXP, "2^-{e} exceeds dyadic range");
            Dyadic { numer: 1, exp: e }
        }
    }

    pub fn numer(&self) -> i128 {
        self.numer
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    pub fn checked_add(&self, rhs: &Dyadic) -> Option<Dyadic> {
        let e = self.exp.max(rhs.exp);
        let a = shl_checked(self.numer, e - self.exp)?;
        let b = shl_checked(rhs.numer, e - rhs.exp)?;
        Some(Dyadic::new(a.checked_add(b)?, e))
    }

    pub fn checked_sub(&self, rhs: &Dyadic) -> Option<Dyadic> {
        self.checked_add(&Dyadic { numer: rhs.numer.checked_neg()?, exp: rhs.exp })
    }

    pub fn checked_mul(&self, rhs: &Dyadic) -> Option<Dyadic> {
        let mut n = self.numer.checked_mul(rhs.numer)?;
        if n == 0 {
            return Some(Dyadic::zero());
        }
        let mut e = self.exp.checked_add(rhs.exp)?;
        // Cancel the numerator's factors of two against e before enforcing
        // the cap, so the cap only rejects values that genuinely need more
        // than MAX_EXP bits of denominator.
        let cancel = (n.trailing_zeros()).min(e);
        n >>= cancel;
        e -= cancel;
        if e > MAX_EXP {
            None
        } else {
            Some(Dyadic { numer: n, exp: e })
        }
    }

    /// Exact fraction string: `"a"` when integral, else `"a/2^e"` with the
    /// denominator written out (`"49/8"`, not `"49/2^3"`).
    pub fn fraction(&self) -> String {
        if self.exp == 0 {
            self.numer.to_string()
        } else {
            format!("{}/{}", self.numer, 1u128 << self.exp)
        }
    }

    /// Exact terminating decimal expansion (`49/8` -> `"6.125"`).
    ///
    /// Computed by repeated decimal halving, so it is exact for every
    /// representable exponent.
    pub fn decimal(&self) -> String {
        if self.exp == 0 {
            return self.numer.to_string();
        }
        let mag = self.numer.unsigned_abs();
        let mut int_digits: Vec<u8> = mag
            .to_string()
            .bytes()
            .map(|b| b - b'0')
            .collect();
        let mut frac_digits: Vec<u8> = Vec::with_capacity(self.exp as usize);
        for _ in 0..self.exp {
            let mut rem = 0u8;
            for d in int_digits.iter_mut().chain(frac_digits.iter_mut()) {
                let cur = rem * 10 + *d;
                *d = cur / 2;
                rem = cur % 2;
            }
            if rem == 1 {
                frac_digits.push(5);
            }
        }
        while int_digits.len() > 1 && int_digits[0] == 0 {
            int_digits.remove(0);
        }
        let mut s = String::new();
        if self.numer < 0 {
            s.push('-');
        }
        for d in int_digits {
            s.push((b'0' + d) as char);
        }
        s.push('.');
        for d in frac_digits {
            s.push((b'0' + d) as char);
        }
        s
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let sa = self.numer.signum();
        let sb = other.numer.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        // Same sign: align to the larger exponent. If the aligned numerator
        // overflows i128, its magnitude certainly exceeds the other side's,
        // so the sign decides.
        let e = self.exp.max(other.exp);
        match (shl_checked(self.numer, e - self.exp), shl_checked(other.numer, e - other.exp)) {
            (Some(a), Some(b)) => a.cmp(&b),
            (None, Some(_)) => {
                if sa > 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Some(_), None) => {
                if sb > 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (None, None) => unreachable!("both aligned numerators overflow only if exponents differ from themselves"),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fraction())
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({})", self.fraction())
    }
}

/// Serializes as `{"fraction": "61/4", "decimal": "15.25"}`. Both renderings
/// are exact, so consumers can parse either without loss.
impl serde::Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Dyadic", 2)?;
        st.serialize_field("fraction", &self.fraction())?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    /// Parses `"a"` or `"a/b"` where `b` is a positive power of two.
    /// Round-trips with `fraction()`.
    fn from_str(s: &str) -> Result<Dyadic, ParseDyadicError> {
        match s.split_once('/') {
            None => {
                let n: i128 = s.parse().map_err(|_| ParseDyadicError::Malformed)?;
                Ok(Dyadic::from_int(n))
            }
            Some((num, den)) => {
                let n: i128 = num.parse().map_err(|_| ParseDyadicError::Malformed)?;
                let d: u128 = den.parse().map_err(|_| ParseDyadicError::Malformed)?;
                if !d.is_power_of_two() {
                    return Err(ParseDyadicError::DenominatorNotPowerOfTwo);
                }
                Ok(Dyadic::new(n, d.trailing_zeros()))
            }
        }
    }
}

impl std::ops::Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        self.checked_add(&rhs).expect("dyadic addition overflow")
    }
}

impl std::ops::Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self.checked_sub(&rhs).expect("dyadic subtraction overflow")
    }
}

impl std::ops::Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        self.checked_mul(&rhs).expect("dyadic multiplication overflow")
    }
}

impl std::ops::Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { numer: -self.numer, exp: self.exp }
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| acc + x)
    }
}
