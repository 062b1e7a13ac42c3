//! Eigenvalue data files: a line-oriented text format carrying the Hecke
//! eigenvalues of one newform class, used both as a cache and as an
//! alternative data source bypassing the decomposition.
//!
//! Format:
//!
//! ```text
//! level 63 disc 12
//! 2 0 1/2
//! 5 0 -1
//! 7 1 0
//! ```
//!
//! The header names the level N and the field discriminant D of the
//! quadratic Hecke field; each following line `p a b` gives
//! a_p = a + b*sqrt(D) with a, b rationals in lowest terms.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EigenDataError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Ramanujan bound violated at p = {p}: |trace| = {trace} > 4 sqrt p")]
    RamanujanBoundViolated { p: i64, trace: BigRational },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Eigenvalues of one class, portable form: a_p = a + b sqrt(D) with D the
/// field discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData {
    pub level: i64,
    pub hecke_field_disc: BigInt,
    /// p -> (a, b)
    pub entries: BTreeMap<i64, (BigRational, BigRational)>,
}

impl EigenData {
    pub fn parse(text: &str) -> Result<EigenData, EigenDataError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| EigenDataError::Parse("empty file".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "level" || toks[2] != "disc" {
            return Err(EigenDataError::Parse(format!("bad header: {header}")));
        }
        let level: i64 =
            toks[1].parse().map_err(|_| EigenDataError::Parse("bad level".into()))?;
        let disc = BigInt::from_str(toks[3])
            .map_err(|_| EigenDataError::Parse("bad discriminant".into()))?;
        let mut entries = BTreeMap::new();
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(EigenDataError::Parse(format!("bad line: {line}")));
            }
            let p: i64 = t[0]
                .parse()
                .map_err(|_| EigenDataError::Parse(format!("bad prime in: {line}")))?;
            let a = parse_rational(t[1])?;
            let b = parse_rational(t[2])?;
            entries.insert(p, (a, b));
        }
        let data = EigenData { level, hecke_field_disc: disc, entries };
        data.check_ramanujan()?;
        Ok(data)
    }

    /// |Tr(a_p)| <= 4 sqrt(p) for every stored eigenvalue; violations signal
    /// corrupt data.
    pub fn check_ramanujan(&self) -> Result<(), EigenDataError> {
        for (&p, (a, _)) in &self.entries {
            let trace = a * BigRational::from(BigInt::from(2));
            // trace^2 <= 16 p
            let t2 = &trace * &trace;
            if t2 > BigRational::from(BigInt::from(16 * p)) {
                return Err(EigenDataError::RamanujanBoundViolated { p, trace: trace.abs() });
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("level {} disc {}\n", self.level, self.hecke_field_disc);
        for (p, (a, b)) in &self.entries {
            out.push_str(&format!("{} {} {}\n", p, fmt_rational(a), fmt_rational(b)));
        }
        out
    }

    pub fn read_file(path: &Path) -> Result<EigenData, EigenDataError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn write_file(&self, path: &Path) -> Result<(), EigenDataError> {
        // atomic: write to a temp name then rename
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_text())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Eigenvalue as (x, y) with a_p = x + y sqrt(m) for the squarefree
    /// radicand m of the field (disc = m or 4m).
    pub fn eigenvalue_sqrt_m(&self, p: i64) -> Option<(BigRational, BigRational)> {
        let (a, b) = self.entries.get(&p)?;
        // sqrt(D) = sqrt(m) when D = m, and 2 sqrt(m) when D = 4m
        let four = BigInt::from(4);
        if (&self.hecke_field_disc % &four).is_zero() {
            Some((a.clone(), b * BigRational::from(BigInt::from(2))))
        } else {
            Some((a.clone(), b.clone()))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, EigenDataError> {
    let parse_int =
        |x: &str| BigInt::from_str(x).map_err(|_| EigenDataError::Parse(format!("bad rational: {s}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(EigenDataError::Parse(format!("zero denominator: {s}")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_sqrt_m_conversion() {
        let text = "level 63 disc 12\n2 0 1/2\n5 0 -1\n7 1 0\n13 2 0\n";
        let d = EigenData::parse(text).unwrap();
        assert_eq!(d.level, 63);
        assert_eq!(d.hecke_field_disc, BigInt::from(12));
        // a_2 = (1/2) sqrt(12) = sqrt(3)
        let (x, y) = d.eigenvalue_sqrt_m(2).unwrap();
        assert!(x.is_zero());
        assert_eq!(y, BigRational::from(BigInt::from(1)));
        let back = EigenData::parse(&d.to_text()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(EigenData::parse(""), Err(EigenDataError::Parse(_))));
        assert!(matches!(EigenData::parse("   \n\n"), Err(EigenDataError::Parse(_))));
    }

    #[test]
    fn ramanujan_violation_is_detected() {
        let text = "level 63 disc 12\n2 100 0\n";
        assert!(matches!(
            EigenData::parse(text),
            Err(EigenDataError::RamanujanBoundViolated { p: 2, .. })
        ));
    }
}
