use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Sign of the exponent in `λe^{±r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpSign {
    /// `λe^{r}`, the exponential wall.
    Plus,
    /// `λe^{-r}`, the exponential barrier.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tail {
    /// Coefficients past the stored ones vanish.
    Zero,
    /// `v_j = (±1)^j λ / j!` for every `j ≥ 0`.
    Exponential { lambda: Rational, sign: ExpSign },
}

/// Laurent coefficients `v_j`, `j ≥ -1`, of a central potential together
/// with the angular momentum `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialSeries {
    l: u32,
    v_minus1: Rational,
    stored: Vec<Rational>,
    tail: Tail,
}

impl PotentialSeries {
    /// A potential with finitely many terms: `v_{-1}` and `v_0, v_1, …`.
    pub fn laurent(l: u32, v_minus1: Rational, v: Vec<Rational>) -> Self {
        Self {
            l,
            v_minus1,
            stored: v,
            tail: Tail::Zero,
        }
    }

    /// `V(r) = λe^{±r}`.
    pub fn exponential(lambda: Rational, sign: ExpSign, l: u32) -> Self {
        Self {
            l,
            v_minus1: Rational::new(),
            stored: Vec::new(),
            tail: Tail::Exponential { lambda, sign },
        }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `v_j` for `j ≥ -1`.
    pub fn coefficient(&self, j: i64) -> Rational {
        if j < -1 {
            return Rational::new();
        }
        if j == -1 {
            return self.v_minus1.clone();
        }
        let j = j as usize;
        if let Some(v) = self.stored.get(j) {
            return v.clone();
        }
        match &self.tail {
            Tail::Zero => Rational::new(),
            Tail::Exponential { lambda, sign } => {
                let mut fact = Integer::from(1);
                for k in 2..=j as u64 {
                    fact *= k;
                }
                let mut v = Rational::from(lambda / fact);
                if *sign == ExpSign::Minus && j % 2 == 1 {
                    v = -v;
                }
                v
            }
        }
    }

    /// `v_0 … v_{count-1}`, built incrementally for the exponential tail.
    pub fn coefficients(&self, count: usize) -> Vec<Rational> {
        let Tail::Exponential { lambda, sign } = &self.tail else {
            return (0..count as i64).map(|j| self.coefficient(j)).collect();
        };
        let mut out = Vec::with_capacity(count);
        let mut term = lambda.clone();
        for j in 0..count {
            if j > 0 {
                term /= j as u64;
                if *sign == ExpSign::Minus {
                    term = -term;
                }
            }
            out.push(self.stored.get(j).cloned().unwrap_or_else(|| term.clone()));
        }
        out
    }
}

/// Exact rational from `"p/q"`, an integer, or a decimal such as `"0.5"`
/// or `"1.25e-3"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    if s.contains('/') {
        return s.parse::<Rational>().map_err(|_| bad());
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: Integer = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let mut q = if scale >= 0 {
        Rational::from(all * Integer::from(Integer::u_pow_u(10, scale as u32)))
    } else {
        Rational::from((all, Integer::from(Integer::u_pow_u(10, (-scale) as u32))))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_and_fraction_parsing() {
        assert_eq!(parse_rational("0.5").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_rational("1/2").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_rational("10").unwrap(), Rational::from(10));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), Rational::from((-1, 8)));
        assert_eq!(parse_rational("2E3").unwrap(), Rational::from(2000));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exponential_coefficients() {
        let p = PotentialSeries::exponential(Rational::from(3), ExpSign::Minus, 0);
        let v = p.coefficients(5);
        let want = [
            Rational::from(3),
            Rational::from(-3),
            Rational::from((3, 2)),
            Rational::from((-1, 2)),
            Rational::from((1, 8)),
        ];
        assert_eq!(v, want);
        for (j, w) in want.iter().enumerate() {
            assert_eq!(p.coefficient(j as i64), *w);
        }
        assert_eq!(p.coefficient(-1), 0);
    }
}
