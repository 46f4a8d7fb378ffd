use std::fmt;
use std::str::FromStr;

use crate::curves::PolyCurve;
use crate::error::{Error, Result};

/// `E_i : y² = x³ + A_i(t) x + B_i(t)`, `i = 1..n`, `n ≥ 2`, each
/// non-isotrivial over Q(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    curves: Vec<PolyCurve>,
}

impl FamilySpec {
    pub fn new(curves: Vec<PolyCurve>) -> Result<Self> {
        if curves.len() < 2 {
            return Err(Error::TooFewFactors(curves.len()));
        }
        for (i, c) in curves.iter().enumerate() {
            let e = c.over_q_t()?;
            if e.is_isotrivial() {
                return Err(Error::Isotrivial(format!("factor {} ({c}) has constant j-invariant", i + 1)));
            }
        }
        Ok(FamilySpec { curves })
    }

    pub fn curves(&self) -> &[PolyCurve] {
        &self.curves
    }

    pub fn n(&self) -> usize {
        self.curves.len()
    }

    /// The family twisted by a constant `d`: `(A, B) ↦ (d² A, d³ B)`.
    pub fn twist(&self, d: i64) -> Self {
        use crate::arith::IntPoly;
        let curves = self
            .curves
            .iter()
            .map(|c| {
                PolyCurve::new(
                    c.a.times(&IntPoly::from_i64s(&[d * d])),
                    c.b.times(&IntPoly::from_i64s(&[d * d * d])),
                )
            })
            .collect();
        FamilySpec { curves }
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.curves.iter().map(|c| c.to_string()).collect()
    }
}

/// One curve per line; blank lines and `#` comments are ignored.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let curves = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<PolyCurve>>>()?;
        FamilySpec::new(curves)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_lines().join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let f: FamilySpec = "# demo\n[0,1];[1]\n\n[1];[1,1]  # second\n".parse().unwrap();
        assert_eq!(f.n(), 2);
        assert_eq!(f.to_string(), "[0,1];[1]\n[1];[1,1]");
        assert!(matches!("[0,1];[1]".parse::<FamilySpec>(), Err(Error::TooFewFactors(1))));
        assert!(matches!("[0,1];[1]\n[1];[2]".parse::<FamilySpec>(), Err(Error::Isotrivial(_))));
        assert!("[0,1];[1]\n[1,1]".parse::<FamilySpec>().is_err());
        assert!("[0,1];[1]\n[0];[0]".parse::<FamilySpec>().is_err());
    }
}
