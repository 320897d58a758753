//! Exact roots of unity.
//!
//! A [`Phase`] is a reduced fraction `p/q` in `[0, 1)` standing for
//! `exp(2 pi i p/q)`. The group law is addition mod 1, so every cocycle
//! identity in this crate is checked with integer arithmetic.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// The phase `num/den mod 1`. Panics if `den` is not positive.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        Phase {
            num: r / g,
            den: den / g,
        }
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        Phase::new(k, n)
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn mul_int(self, k: i64) -> Self {
        let n = (i128::from(self.num) * i128::from(k)).rem_euclid(i128::from(self.den));
        Phase::new(n as i64, self.den)
    }

    /// The complex number `exp(2 pi i q)`.
    pub fn embed(&self) -> Complex64 {
        // Reduce to exact quarter turns first so that 1, i, -1, -i embed exactly.
        match (self.num * 4).checked_rem(self.den) {
            Some(0) => match self.num * 4 / self.den {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            },
            _ => {
                let theta = 2.0 * core::f64::consts::PI * (self.num as f64) / (self.den as f64);
                Complex64::from_polar(1.0, theta)
            }
        }
    }

    fn lcm_den(a: &Phase, b: &Phase) -> i64 {
        a.den.lcm(&b.den)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = Phase::lcm_den(&self, &rhs);
        Phase::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.num, self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl core::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        (i128::from(self.num) * i128::from(other.den))
            .cmp(&(i128::from(other.num) * i128::from(self.den)))
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as `"p/q"`, or `"0"` for the trivial phase.
impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePhaseError;

impl fmt::Display for ParsePhaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected a phase of the form p/q with q > 0")
    }
}

impl FromStr for Phase {
    type Err = ParsePhaseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(|n| Phase::new(n, 1)).map_err(|_| ParsePhaseError),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| ParsePhaseError)?;
                let q: i64 = q.trim().parse().map_err(|_| ParsePhaseError)?;
                if q <= 0 {
                    return Err(ParsePhaseError);
                }
                Ok(Phase::new(p, q))
            }
        }
    }
}
