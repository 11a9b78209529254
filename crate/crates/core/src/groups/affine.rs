//! BS(1,2) as a group of affine maps `x ↦ 2^e·x + m` with dyadic `m`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::words::Letter;

/// `num / 2^exp`, with `num` odd whenever `exp > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Dyadic {
        let mut d = Dyadic { num: num.into(), exp };
        d.canonicalize();
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn integer(n: impl Into<BigInt>) -> Dyadic {
        Dyadic { num: n.into(), exp: 0 }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let twos = self.num.trailing_zeros().unwrap_or(0).min(u64::from(self.exp)) as u32;
        self.num >>= twos;
        self.exp -= twos;
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator_exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            let lift = k.min(self.exp);
            Dyadic::new(&self.num << (k - lift) as usize, self.exp - lift)
        } else {
            Dyadic::new(self.num.clone(), self.exp + k.unsigned_abs() as u32)
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp) as usize;
        let b = &other.num << (exp - other.exp) as usize;
        Dyadic::new(a + b, exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub scale_exp: i64,
    pub offset: Dyadic,
}

impl AffineElement {
    pub fn identity() -> AffineElement {
        AffineElement { scale_exp: 0, offset: Dyadic::zero() }
    }

    pub fn new(scale_exp: i64, offset: Dyadic) -> AffineElement {
        AffineElement { scale_exp, offset }
    }

    /// Image of a letter over `{a, t}^±`; `None` for other letters.
    pub fn of_letter(l: Letter) -> Option<AffineElement> {
        let one = || Dyadic::integer(1);
        Some(match l.as_char() {
            'a' => AffineElement::new(0, one()),
            'A' => AffineElement::new(0, one().neg()),
            't' => AffineElement::new(1, Dyadic::zero()),
            'T' => AffineElement::new(-1, Dyadic::zero()),
            _ => return None,
        })
    }

    pub fn inverse(&self) -> AffineElement {
        AffineElement { scale_exp: -self.scale_exp, offset: self.offset.shl(-self.scale_exp).neg() }
    }

    pub fn is_identity(&self) -> bool {
        self.scale_exp == 0 && self.offset.is_zero()
    }

    /// `Some(k)` when the element is `a^k`.
    pub fn as_a_power(&self) -> Option<i64> {
        (self.scale_exp == 0 && self.offset.is_integer()).then(|| self.offset.numerator().to_i64()).flatten()
    }

    /// `Some(k)` when the element is `t^k`.
    pub fn as_t_power(&self) -> Option<i64> {
        self.offset.is_zero().then_some(self.scale_exp)
    }
}

impl Mul for &AffineElement {
    type Output = AffineElement;

    // composition adds the exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &AffineElement) -> AffineElement {
        AffineElement {
            scale_exp: self.scale_exp + rhs.scale_exp,
            offset: self.offset.add(&rhs.offset.shl(self.scale_exp)),
        }
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.scale_exp, self.offset)
    }
}

/// Evaluates a word over `{a, t}^±` in BS(1,2).
///
/// # Panics
/// On letters other than `a, A, t, T`.
pub fn oracle_bs12(w: &[Letter]) -> AffineElement {
    w.iter().fold(AffineElement::identity(), |acc, &l| {
        let g = AffineElement::of_letter(l).unwrap_or_else(|| panic!("letter {l} is not in BS(1,2)"));
        &acc * &g
    })
}
