//! `G_p` as `M ⋊ Z²`, where `M = Z_p[x^±, (1+x)^{-1}]`, `t` acts by `x` and
//! `s` by `1 + x`.

use std::fmt;
use std::ops::Mul;

use crate::laurent::{LaurentPoly, Modulus};
use crate::words::Letter;

/// `(numerator / (1+x)^denom_exp, t^t_exp, s^s_exp)`, kept with `(1+x)` not
/// dividing the numerator whenever `denom_exp > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub numerator: LaurentPoly,
    pub denom_exp: u32,
    pub t_exp: i64,
    pub s_exp: i64,
}

impl ModuleElement {
    pub fn identity(modulus: Modulus) -> ModuleElement {
        ModuleElement { numerator: LaurentPoly::zero(modulus), denom_exp: 0, t_exp: 0, s_exp: 0 }
    }

    pub fn new(numerator: LaurentPoly, denom_exp: u32, t_exp: i64, s_exp: i64) -> ModuleElement {
        let mut m = ModuleElement { numerator, denom_exp, t_exp, s_exp };
        m.canonicalize();
        m
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.denom_exp = 0;
        }
        while self.denom_exp > 0 {
            let (q, r) = self.numerator.divmod_1px();
            if !r.is_zero() {
                break;
            }
            self.numerator = q;
            self.denom_exp -= 1;
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.numerator.modulus()
    }

    /// Image of a letter over `{a, s, t}^±`; `None` for other letters.
    pub fn of_letter(l: Letter, modulus: Modulus) -> Option<ModuleElement> {
        let zero = LaurentPoly::zero(modulus);
        Some(match l.as_char() {
            'a' => ModuleElement::new(LaurentPoly::one(modulus), 0, 0, 0),
            'A' => ModuleElement::new(LaurentPoly::monomial(-1, 0, modulus), 0, 0, 0),
            't' => ModuleElement::new(zero, 0, 1, 0),
            'T' => ModuleElement::new(zero, 0, -1, 0),
            's' => ModuleElement::new(zero, 0, 0, 1),
            'S' => ModuleElement::new(zero, 0, 0, -1),
            _ => return None,
        })
    }

    /// `x^i (1+x)^j · self`, the action of `t^i s^j` on the module part.
    fn act(&self, i: i64, j: i64) -> (LaurentPoly, u32) {
        let num = self.numerator.shift(i);
        let k = i64::from(self.denom_exp) - j;
        if k >= 0 {
            (num, k as u32)
        } else {
            (num.mul_1px_pow(k.unsigned_abs() as u32), 0)
        }
    }
}

impl Mul for &ModuleElement {
    type Output = ModuleElement;

    fn mul(self, rhs: &ModuleElement) -> ModuleElement {
        let (n2, k2) = rhs.act(self.t_exp, self.s_exp);
        let k = self.denom_exp.max(k2);
        let n1 = self.numerator.mul_1px_pow(k - self.denom_exp);
        let n2 = n2.mul_1px_pow(k - k2);
        ModuleElement::new(&n1 + &n2, k, self.t_exp + rhs.t_exp, self.s_exp + rhs.s_exp)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.denom_exp > 0 {
            write!(f, "({})/(1 + x)^{}", self.numerator, self.denom_exp)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        write!(f, ", {}, {})", self.t_exp, self.s_exp)
    }
}

/// Evaluates a word over `{a, s, t}^±` in `G_p`.
///
/// # Panics
/// On letters outside that alphabet.
pub fn oracle_gp(modulus: Modulus, w: &[Letter]) -> ModuleElement {
    w.iter().fold(ModuleElement::identity(modulus), |acc, &l| {
        let g = ModuleElement::of_letter(l, modulus).unwrap_or_else(|| panic!("letter {l} is not in G_p"));
        &acc * &g
    })
}
