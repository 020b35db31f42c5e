use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, rat, HSeries, Rational, Ring, RingError};

/// Laurent polynomial in `u = q^{1/N}` with rational coefficients.
///
/// Values are kept canonical: no zero coefficients are stored and the root
/// order `N` is the smallest one that expresses every exponent, so derived
/// equality is equality of polynomials in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    root: u32,
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            root: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms(1, [(0, c)])
    }

    /// The monomial `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1, Rational::one())
    }

    /// `c * q^{num/den}`.
    pub fn monomial(num: i64, den: u32, c: Rational) -> Self {
        assert!(den > 0, "root order must be positive");
        Self::from_terms(den, [(num, c)])
    }

    /// Builds `sum c * u^e` with `u = q^{1/root}`; repeated exponents add up.
    pub fn from_terms(root: u32, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        assert!(root > 0, "root order must be positive");
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_insert_with(Rational::zero) += c;
        }
        let mut p = Self { root, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
        if self.coeffs.is_empty() {
            self.root = 1;
            return;
        }
        let mut g = self.root as i64;
        for &e in self.coeffs.keys() {
            g = g.gcd(&e);
        }
        if g > 1 {
            self.root /= g as u32;
            self.coeffs = std::mem::take(&mut self.coeffs)
                .into_iter()
                .map(|(e, c)| (e / g, c))
                .collect();
        }
    }

    pub fn root_order(&self) -> u32 {
        self.root
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms as `(exponent of q, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let root = self.root as i64;
        self.coeffs.iter().map(move |(&e, c)| (rat(e, root), c))
    }

    /// Raw terms as `(exponent of u, coefficient)` for the current root order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, num: i64, den: u32) -> Rational {
        let target = rat(num, den as i64);
        self.terms()
            .find(|(e, _)| *e == target)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Exponents re-expressed over root order `n`, which must be a multiple of
    /// the current one.
    fn aligned(&self, n: u32) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        debug_assert!(n.is_multiple_of(self.root));
        let k = (n / self.root) as i64;
        self.coeffs.iter().map(move |(&e, c)| (e * k, c))
    }

    fn common_root(&self, other: &Self) -> u32 {
        self.root.lcm(&other.root)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.root, self.coeffs.iter().map(|(&e, x)| (e, x * c)))
    }

    /// The single term `(exponent of u, coefficient)` if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }

    /// Inverse of a monomial; `None` for anything else.
    pub fn inverse_monomial(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::from_terms(self.root, [(-e, c.recip())]))
    }

    /// Integer power; negative exponents need a monomial.
    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 {
            self.inverse_monomial()?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Substitutes `q -> q^{num/den}`.
    pub fn substitute_power(&self, num: i64, den: u32) -> Self {
        assert!(den > 0);
        Self::from_terms(
            self.root * den,
            self.coeffs.iter().map(|(&e, c)| (e * num, c.clone())),
        )
    }

    /// Expands at `q = e^h` to order `order` inclusive.
    pub fn to_hseries(&self, order: usize) -> HSeries {
        let mut out = vec![Rational::zero(); order + 1];
        for (e, c) in self.terms() {
            // c * exp(e h) = c * sum (e h)^m / m!
            let mut term = c.clone();
            for (m, slot) in out.iter_mut().enumerate() {
                if m > 0 {
                    term = term * &e / Rational::from_integer((m as i64).into());
                }
                *slot += &term;
            }
        }
        HSeries::from_coeffs(out)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let n = self.common_root(divisor);
        let mut rem: BTreeMap<i64, Rational> =
            self.aligned(n).map(|(e, c)| (e, c.clone())).collect();
        let den: Vec<(i64, Rational)> = divisor.aligned(n).map(|(e, c)| (e, c.clone())).collect();
        let (top_e, top_c) = den.last().cloned().expect("nonzero divisor");
        let low_e = den[0].0;
        // every quotient exponent is at least this when the division is exact
        let min_k = rem.keys().next().map_or(0, |&e| e - low_e);
        let mut quot = Vec::new();
        while let Some((&e, c)) = rem.iter().next_back() {
            let k = e - top_e;
            if k < min_k {
                return None;
            }
            let factor = c / &top_c;
            for (de, dc) in &den {
                let slot = rem.entry(de + k).or_insert_with(Rational::zero);
                *slot -= &factor * dc;
                if slot.is_zero() {
                    rem.remove(&(de + k));
                }
            }
            quot.push((k, factor));
        }
        Some(Self::from_terms(n, quot))
    }

    /// Canonical text with the given variable name, ascending exponents.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let var_part = if e.is_zero() {
                None
            } else if e.is_one() {
                Some(var.to_string())
            } else {
                Some(format!("{var}^{{{e}}}"))
            };
            match var_part {
                None => out.push_str(&mag.to_string()),
                Some(v) if mag.is_one() => out.push_str(&v),
                Some(v) => out.push_str(&format!("{mag}*{v}")),
            }
        }
        out
    }

    /// Parses the output of [`LaurentPoly::render`] for variable `var`.
    pub fn parse(text: &str, var: &str) -> Result<Self, RingError> {
        let err = |m: &str| RingError::Parse(format!("{m} in `{text}`"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty polynomial"));
        }
        // Split into signed terms, ignoring signs inside braces.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '{' => {
                    depth += 1;
                    cur.push(ch)
                }
                '}' => {
                    depth -= 1;
                    cur.push(ch)
                }
                '+' | '-' if depth == 0 => {
                    if i != 0 {
                        if cur.is_empty() {
                            return Err(err("dangling sign"));
                        }
                        terms.push((negative, std::mem::take(&mut cur)));
                    }
                    negative = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if cur.is_empty() {
            return Err(err("dangling sign"));
        }
        terms.push((negative, cur));

        let mut acc = Self::zero();
        for (neg, body) in terms {
            let (coeff, exponent) = if let Some(rest) = body.strip_prefix(var) {
                (
                    Rational::one(),
                    parse_exponent(rest).ok_or_else(|| err("bad exponent"))?,
                )
            } else if let Some((c, rest)) = body.split_once('*') {
                let rest = rest
                    .strip_prefix(var)
                    .ok_or_else(|| err("expected variable"))?;
                (
                    parse_rational(c)?,
                    parse_exponent(rest).ok_or_else(|| err("bad exponent"))?,
                )
            } else {
                (parse_rational(&body)?, Rational::zero())
            };
            let coeff = if neg { -coeff } else { coeff };
            let den =
                u32::try_from(exponent.denom().clone()).map_err(|_| err("exponent too large"))?;
            let num =
                i64::try_from(exponent.numer().clone()).map_err(|_| err("exponent too large"))?;
            acc = &acc + &Self::monomial(num, den, coeff);
        }
        Ok(acc)
    }
}

fn parse_exponent(rest: &str) -> Option<Rational> {
    if rest.is_empty() {
        return Some(Rational::one());
    }
    let e = rest.strip_prefix('^')?;
    let e = e
        .strip_prefix('{')
        .and_then(|e| e.strip_suffix('}'))
        .unwrap_or(e);
    parse_rational(e).ok()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let n = self.common_root(rhs);
        let terms: Vec<_> = self
            .aligned(n)
            .chain(rhs.aligned(n))
            .map(|(e, c)| (e, c.clone()))
            .collect();
        LaurentPoly::from_terms(n, terms)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            root: self.root,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let n = self.common_root(rhs);
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in self.aligned(n) {
            for (eb, cb) in rhs.aligned(n) {
                *coeffs.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut p = LaurentPoly { root: n, coeffs };
        p.normalize();
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(rat(c, 1))
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
