use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{parse_rational, Rational, Ring, RingError};

/// Power series in `h` truncated at degree `order` (inclusive).
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HSeries {
    coeffs: Vec<Rational>,
}

impl HSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series `h` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(RingError::ConstantTermViolation(
                "inverse needs a nonzero constant term".into(),
            ));
        }
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        out[0] = inv0.clone();
        for n in 1..out.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out[n] = -acc * &inv0;
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self * &other.inverse()?)
    }

    /// `exp(s)` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self, RingError> {
        if !self.coeffs[0].is_zero() {
            return Err(RingError::ConstantTermViolation(
                "exp needs constant term 0".into(),
            ));
        }
        // e' = s' e  =>  n e_n = sum_{k=1}^n k s_k e_{n-k}
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        out[0] = Rational::one();
        for n in 1..out.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += Rational::from_integer((k as i64).into()) * &self.coeffs[k] * &out[n - k];
            }
            out[n] = acc / Rational::from_integer((n as i64).into());
        }
        Ok(Self { coeffs: out })
    }

    /// `log(s)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self, RingError> {
        if !self.coeffs[0].is_one() {
            return Err(RingError::ConstantTermViolation(
                "log needs constant term 1".into(),
            ));
        }
        // s l' = s'  =>  n l_n = n s_n - sum_{k=1}^{n-1} k l_k s_{n-k}
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for n in 1..out.len() {
            let mut acc = Rational::from_integer((n as i64).into()) * &self.coeffs[n];
            for k in 1..n {
                acc -= Rational::from_integer((k as i64).into()) * &out[k] * &self.coeffs[n - k];
            }
            out[n] = acc / Rational::from_integer((n as i64).into());
        }
        Ok(Self { coeffs: out })
    }

    /// Text form `c0 + c1*h + c2*h^2 + O(h^{n})`, zero terms omitted.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let v = match k {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{var}^{k}")),
            };
            match v {
                None => out.push_str(&mag.to_string()),
                Some(v) if mag.is_one() => out.push_str(&v),
                Some(v) => out.push_str(&format!("{mag}*{v}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O({var}^{})", self.order() + 1));
        out
    }

    /// Parses the output of [`HSeries::render`]. The `O(..)` term is required
    /// since it carries the truncation order.
    pub fn parse(text: &str, var: &str) -> Result<Self, RingError> {
        let err = |m: &str| RingError::Parse(format!("{m} in `{text}`"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let big_o = format!("+O({var}^");
        let pos = s.rfind(&big_o).ok_or_else(|| err("missing O(..) term"))?;
        let tail = s[pos + big_o.len()..]
            .strip_suffix(')')
            .ok_or_else(|| err("unclosed O(..)"))?;
        let tail = tail
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(tail);
        let bound: usize = tail.parse().map_err(|_| err("bad truncation order"))?;
        if bound == 0 {
            return Err(err("truncation order must be at least 1"));
        }
        let mut out = Self::zero(bound - 1);
        let body = &s[..pos];
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        for (i, ch) in body.char_indices() {
            if ch == '+' || ch == '-' {
                if i != 0 {
                    terms.push((negative, &body[start..i]));
                }
                negative = ch == '-';
                start = i + 1;
            }
        }
        terms.push((negative, &body[start..]));
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(err("dangling sign"));
            }
            let (c, power) = if let Some(rest) = t.strip_prefix(var) {
                (
                    Rational::one(),
                    parse_power(rest).ok_or_else(|| err("bad power"))?,
                )
            } else if let Some((c, rest)) = t.split_once('*') {
                let rest = rest
                    .strip_prefix(var)
                    .ok_or_else(|| err("expected variable"))?;
                (
                    parse_rational(c)?,
                    parse_power(rest).ok_or_else(|| err("bad power"))?,
                )
            } else {
                (parse_rational(t)?, 0)
            };
            if power > out.order() {
                return Err(err("term beyond truncation order"));
            }
            out.coeffs[power] += if neg { -c } else { c };
        }
        Ok(out)
    }
}

fn parse_power(rest: &str) -> Option<usize> {
    if rest.is_empty() {
        return Some(1);
    }
    let p = rest.strip_prefix('^')?;
    let p = p
        .strip_prefix('{')
        .and_then(|p| p.strip_suffix('}'))
        .unwrap_or(p);
    p.parse().ok()
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("h"))
    }
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        let n = self.order().min(rhs.order());
        HSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        let n = self.order().min(rhs.order());
        HSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HSeries { coeffs }
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Ring for HSeries {
    fn zero_like(&self) -> Self {
        Self::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Self::one(self.order())
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
