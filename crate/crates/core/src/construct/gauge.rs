//! Gauge functions φ: positive, non-increasing, φ(1) = 1, tending to 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family", content = "values")]
pub enum GaugeFunction {
    /// φ(d) = 1/d.
    Reciprocal,
    /// φ(d) = 1/(1 + log2 d).
    ReciprocalLog,
    /// φ(d) = 2^{1−d}.
    Geometric,
    /// φ(1), φ(2), …, φ(d_max) given explicitly.
    #[serde(serialize_with = "ser_table")]
    Table(Vec<BigRational>),
}

fn ser_table<S: serde::Serializer>(t: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|r| r.to_string()))
}

fn pow2(e: i64) -> BigRational {
    let two = BigInt::from(2);
    if e >= 0 {
        BigRational::from_integer(two.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), two.pow((-e) as u32))
    }
}

impl GaugeFunction {
    pub fn table(values: Vec<BigRational>) -> Result<Self> {
        if values.first() != Some(&BigRational::one()) {
            return Err(Error::InvalidGauge("the table must start with phi(1) = 1".into()));
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidGauge("values must be positive".into()));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidGauge("values must be non-increasing".into()));
        }
        Ok(GaugeFunction::Table(values))
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "reciprocal" => Ok(GaugeFunction::Reciprocal),
            "reciprocal-log" => Ok(GaugeFunction::ReciprocalLog),
            "geometric" => Ok(GaugeFunction::Geometric),
            other => {
                let body = other
                    .strip_prefix("table:")
                    .ok_or_else(|| Error::InvalidGauge(format!("unknown gauge {other:?}")))?;
                let vals = body
                    .split(',')
                    .map(|v| v.trim().parse::<BigRational>().map_err(|e| Error::InvalidGauge(e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                Self::table(vals)
            }
        }
    }

    /// φ(d) for d ≥ 1, where representable.
    pub fn value(&self, d: u64) -> Result<BigRational> {
        assert!(d >= 1, "gauge functions live on d >= 1");
        Ok(match self {
            GaugeFunction::Reciprocal => BigRational::new(BigInt::one(), BigInt::from(d)),
            GaugeFunction::ReciprocalLog if d.is_power_of_two() => {
                BigRational::new(BigInt::one(), BigInt::from(1 + d.trailing_zeros()))
            }
            GaugeFunction::ReciprocalLog => {
                return Err(Error::InvalidGauge("reciprocal-log is only evaluated at powers of two".into()))
            }
            GaugeFunction::Geometric => pow2(1 - d as i64),
            GaugeFunction::Table(t) => t
                .get(d as usize - 1)
                .cloned()
                .ok_or(Error::GaugeTableExhausted { log2_degree: 64 - (d - 1).leading_zeros() as u64 })?,
        })
    }

    /// Whether φ(2^k) ≤ 2^{-e}, decided exactly.
    pub fn at_most_pow2(&self, k: u64, e: i64) -> Result<bool> {
        Ok(match self {
            GaugeFunction::Reciprocal => k as i64 >= e,
            GaugeFunction::ReciprocalLog => e <= 0 || (e < 63 && 1 + k >= 1u64 << e),
            GaugeFunction::Geometric => e <= 0 || k >= 63 || (1i64 << k) > e,
            GaugeFunction::Table(t) => {
                if k >= 63 || (1u64 << k) > t.len() as u64 {
                    return Err(Error::GaugeTableExhausted { log2_degree: k });
                }
                t[(1usize << k) - 1] <= pow2(-e)
            }
        })
    }

    /// Least k with φ(2^k) ≤ 2^{-e}.
    pub fn least_log2_argument(&self, e: i64) -> Result<u64> {
        if e <= 0 {
            return Ok(0);
        }
        match self {
            GaugeFunction::Reciprocal => Ok(e as u64),
            GaugeFunction::ReciprocalLog => {
                if e >= 63 {
                    return Err(Error::InvalidGauge(format!("reciprocal-log needs log2 degree 2^{e} - 1")));
                }
                Ok((1u64 << e) - 1)
            }
            GaugeFunction::Geometric => Ok(64 - (e as u64).leading_zeros() as u64),
            GaugeFunction::Table(_) => {
                let mut k = 0;
                while !self.at_most_pow2(k, e)? {
                    k += 1;
                }
                Ok(k)
            }
        }
    }

    /// Whether φ is eventually below every power of two on its represented range.
    pub fn vanishes_on_range(&self) -> bool {
        match self {
            GaugeFunction::Table(t) => t.last().is_some_and(|v| !v.is_zero() && *v < BigRational::one()),
            _ => true,
        }
    }
}
