//! Exact monomial algebra for closed-form constant chains.
//!
//! Every closed form in the torus model and the photon-photon comparison is a
//! single product `k · π^n · Π sᵢ^aᵢ` with rational `k` and integer exponents,
//! so chains like `σ_p = p_p r_p = ħ` or `q²/ħc = 2/π` can be reduced exactly
//! before anything is evaluated in floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::constants::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Symbol {
    /// ħ
    Hbar,
    /// c
    C,
    /// m_e
    Me,
    /// elementary charge e
    E,
    /// model charge q
    Q,
    /// wave amplitude E_o
    Eo,
}

impl Symbol {
    fn glyph(self) -> &'static str {
        match self {
            Symbol::Hbar => "ħ",
            Symbol::C => "c",
            Symbol::Me => "m_e",
            Symbol::E => "e",
            Symbol::Q => "q",
            Symbol::Eo => "E_o",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    coeff: Ratio<i64>,
    pi: i32,
    powers: BTreeMap<Symbol, i32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::rational(1, 1)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self {
            coeff: Ratio::new(num, den),
            pi: 0,
            powers: BTreeMap::new(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    pub fn pi() -> Self {
        Self::one().times_pi(1)
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::one().with(s, 1)
    }

    pub fn times_pi(mut self, exponent: i32) -> Self {
        self.pi += exponent;
        self
    }

    /// Multiplies in `s^exponent`.
    pub fn with(mut self, s: Symbol, exponent: i32) -> Self {
        let e = self.powers.entry(s).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.powers.remove(&s);
        }
        self
    }

    pub fn coefficient(&self) -> Ratio<i64> {
        self.coeff
    }

    pub fn pi_exponent(&self) -> i32 {
        self.pi
    }

    pub fn exponent(&self, s: Symbol) -> i32 {
        self.powers.get(&s).copied().unwrap_or(0)
    }

    pub fn is_pure_number(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        *self.coeff.numer() == 0
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.coeff.recip() } else { self.coeff };
        let coeff = base.pow(n.abs());
        Self {
            coeff,
            pi: self.pi * n,
            powers: self
                .powers
                .iter()
                .map(|(s, e)| (*s, e * n))
                .filter(|(_, e)| *e != 0)
                .collect(),
        }
    }

    pub fn recip(&self) -> Self {
        self.pow(-1)
    }

    /// Replaces every occurrence of `s` by `value`.
    pub fn substitute(&self, s: Symbol, value: &Monomial) -> Self {
        let n = self.exponent(s);
        if n == 0 {
            return self.clone();
        }
        let mut rest = self.clone();
        rest.powers.remove(&s);
        rest * value.pow(n)
    }

    /// Floating-point value with symbols bound by `bind`.
    pub fn eval_with(&self, bind: impl Fn(Symbol) -> f64) -> f64 {
        let mut v = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        v *= std::f64::consts::PI.powi(self.pi);
        for (s, e) in &self.powers {
            v *= bind(*s).powi(*e);
        }
        v
    }

    /// Evaluates with the universal constants of `k`; `q` is bound to `e` and
    /// `E_o` to 1 unless the monomial is free of them.
    pub fn eval(&self, k: &PhysicalConstants) -> f64 {
        self.eval_with(|s| match s {
            Symbol::Hbar => k.hbar,
            Symbol::C => k.c,
            Symbol::Me => k.m_e,
            Symbol::E | Symbol::Q => k.e,
            Symbol::Eo => 1.0,
        })
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(mut self, rhs: Monomial) -> Monomial {
        self.coeff *= rhs.coeff;
        self.pi += rhs.pi;
        for (s, e) in rhs.powers {
            self = self.with(s, e);
        }
        self
    }
}

impl Mul<&Monomial> for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        self.clone() * rhs.clone()
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(self, rhs: Monomial) -> Monomial {
        self * rhs.recip()
    }
}

impl Div<&Monomial> for &Monomial {
    type Output = Monomial;
    fn div(self, rhs: &Monomial) -> Monomial {
        self.clone() * rhs.recip()
    }
}

impl fmt::Display for Monomial {
    /// `45/512·ħ^2·c^2·e^-4`; unit exponents and a bare unit coefficient are
    /// left out (`ħ/2`-style `1/2·ħ`, plain `ħ`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (*self.coeff.numer(), *self.coeff.denom());
        let mut factors: Vec<String> = Vec::new();
        let power = |glyph: &str, e: i32| if e == 1 { glyph.to_string() } else { format!("{glyph}^{e}") };
        if self.pi != 0 {
            factors.push(power("π", self.pi));
        }
        for (s, e) in &self.powers {
            factors.push(power(s.glyph(), *e));
        }
        let coeff = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
        if factors.is_empty() {
            return f.write_str(&coeff);
        }
        match coeff.as_str() {
            "1" => {}
            "-1" => f.write_str("-")?,
            c => write!(f, "{c}·")?,
        }
        f.write_str(&factors.join("·"))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hbar() -> Monomial {
        Monomial::symbol(Symbol::Hbar)
    }
    fn c() -> Monomial {
        Monomial::symbol(Symbol::C)
    }
    fn m() -> Monomial {
        Monomial::symbol(Symbol::Me)
    }

    #[test]
    fn products_cancel_exactly() {
        let r_p = Monomial::rational(1, 2) * hbar() / (m() * c());
        let p_p = Monomial::integer(2) * m() * c();
        assert_eq!(p_p * r_p, hbar());
    }

    #[test]
    fn substitution_and_powers() {
        let q = Monomial::symbol(Symbol::Eo) * Monomial::symbol(Symbol::Hbar).pow(2);
        let sub = q.substitute(Symbol::Eo, &(c() * Monomial::integer(3)));
        assert_eq!(sub, Monomial::integer(3) * c() * hbar().pow(2));
        assert_eq!(Monomial::rational(2, 3).pow(-2), Monomial::rational(9, 4));
    }

    #[test]
    fn display_is_readable() {
        let x = Monomial::rational(45, 512) * (hbar() * c()).pow(2);
        assert_eq!(x.to_string(), "45/512·ħ^2·c^2");
        assert_eq!(Monomial::integer(2).times_pi(-1).to_string(), "2·π^-1");
        assert_eq!(Monomial::rational(1, 2).with(Symbol::Hbar, 1).to_string(), "1/2·ħ");
        assert_eq!(hbar().to_string(), "ħ");
        assert_eq!(Monomial::integer(-1).with(Symbol::C, 1).to_string(), "-c");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn eval_matches_float_arithmetic() {
        let k = PhysicalConstants::codata2018();
        let r = Monomial::rational(1, 2) * hbar() / (m() * c());
        let direct = k.hbar / (2.0 * k.m_e * k.c);
        assert!((r.eval(&k) - direct).abs() / direct < 1e-15);
    }
}
