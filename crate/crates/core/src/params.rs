//! Numeric parameters: color target `k`, the common-neighborhood threshold
//! `ν = n/k²`, the structure degrees and the feasibility condition
//! `k⁷ ≥ 640·(n/d_S1)⁴`.
//!
//! Every comparison against `ν` or a degree threshold is exact: thresholds
//! are rationals and counts are compared by cross-multiplication.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Ratio = num_rational::Ratio<u64>;

/// `640^(1/7)`, the smallest constant for which `k = c_k (n/d)^(4/7)` always
/// satisfies the feasibility condition with `d_S1 = d`.
pub const DEFAULT_CK: f64 = 2.516_997_901_283_654;

/// Spread factor of the degree band used to pick `T0`.
pub const DEFAULT_BAND: f64 = 1.25;

pub const DEFAULT_MAX_ROOTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    pub n: u64,
    pub k: u64,
    pub c_k: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub nu: Ratio,
    pub nu_overridden: bool,
    /// Average degree `S0 → T0`; zero until a structure is attached.
    #[serde(serialize_with = "ser_ratio")]
    pub ds0: Ratio,
    /// Average degree `T0 → S0`; zero until a structure is attached.
    #[serde(serialize_with = "ser_ratio")]
    pub dt0: Ratio,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(ratio_f64(r))
}

pub fn ratio_f64(r: &Ratio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `ceil(c_k · (n / ds_min)^(4/7))`, at least 1.
pub fn color_target(n: u64, ds_min: u64, c_k: f64) -> Result<u64> {
    if ds_min == 0 {
        return Err(Error::Parameter("minimum structure degree must be positive".into()));
    }
    if ds_min > n {
        return Err(Error::Parameter(format!("degree {ds_min} exceeds vertex count {n}")));
    }
    if !(c_k > 0.0 && c_k.is_finite()) {
        return Err(Error::Parameter(format!("color-target constant must be positive, got {c_k}")));
    }
    let k = (c_k * (n as f64 / ds_min as f64).powf(4.0 / 7.0)).ceil();
    Ok((k as u64).max(1))
}

/// Exact `n / k²`.
pub fn nu_of(n: u64, k: u64) -> Result<Ratio> {
    if k == 0 {
        return Err(Error::Parameter("color target k must be at least 1".into()));
    }
    let k2 = k.checked_mul(k).ok_or_else(|| Error::Parameter(format!("k = {k} overflows k²")))?;
    Ok(Ratio::new(n, k2))
}

/// Smallest integer count that is `≥ r`.
pub fn ceil_count(r: &Ratio) -> u64 {
    r.ceil().to_integer()
}

/// `count ≥ r`, exactly.
#[inline]
pub fn at_least(count: usize, r: &Ratio) -> bool {
    count as u128 * *r.denom() as u128 >= *r.numer() as u128
}

/// `count > r`, exactly.
#[inline]
pub fn above(count: usize, r: &Ratio) -> bool {
    count as u128 * *r.denom() as u128 > *r.numer() as u128
}

/// Parses `a/b`, an integer, or a decimal such as `0.25` into an exact ratio.
pub fn parse_ratio(text: &str) -> Result<Ratio> {
    let bad = || Error::Parameter(format!("cannot parse `{text}` as a non-negative ratio"));
    let text = text.trim();
    if let Some((a, b)) = text.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(a, b));
    }
    let (whole, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 18 || (whole.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: u64 = digits.parse().map_err(|_| bad())?;
    Ok(Ratio::new(numer, 10u64.pow(frac.len() as u32)))
}

impl Params {
    pub fn new(n: u64, k: u64, c_k: f64) -> Result<Params> {
        Ok(Params {
            n,
            k,
            c_k,
            nu: nu_of(n, k)?,
            nu_overridden: false,
            ds0: Ratio::zero(),
            dt0: Ratio::zero(),
        })
    }

    /// Parameters for a graph whose minimum degree is `ds_min`.
    pub fn for_graph(n: u64, ds_min: u64, c_k: f64) -> Result<Params> {
        Params::new(n, color_target(n, ds_min, c_k)?, c_k)
    }

    pub fn with_nu(mut self, nu: Ratio) -> Params {
        self.nu = nu;
        self.nu_overridden = true;
        self
    }

    pub fn with_structure_degrees(mut self, ds0: Ratio, dt0: Ratio) -> Params {
        self.ds0 = ds0;
        self.dt0 = dt0;
        self
    }

    pub fn ds1(&self) -> Ratio {
        self.ds0 / 4
    }

    pub fn dt1(&self) -> Ratio {
        self.dt0 / 4
    }

    /// Degrees into `S` strictly above this are high: `d_T1/4 = d_T0/16`.
    pub fn high_threshold(&self) -> Ratio {
        self.dt1() / 4
    }

    pub fn nu_threshold(&self) -> u64 {
        ceil_count(&self.nu)
    }

    pub fn meets_nu(&self, count: usize) -> bool {
        at_least(count, &self.nu)
    }

    pub fn exceeds_nu(&self, count: usize) -> bool {
        above(count, &self.nu)
    }

    /// Violated parameter invariants, as human-readable lines.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.nu_overridden && Some(self.nu) != nu_of(self.n, self.k).ok() {
            out.push(format!("nu {} != n/k^2", self.nu));
        }
        if !self.dt0.is_zero() {
            // d_T1 ≥ 4 d_S1² k / n
            let lhs = self.dt1() * Ratio::from_integer(self.n);
            let rhs = self.ds1() * self.ds1() * Ratio::from_integer(4 * self.k);
            if lhs < rhs {
                out.push(format!("d_T1 = {} < 4 d_S1^2 k / n", self.dt1()));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Feasibility {
    pub pass: bool,
    /// `k⁷ / (640 · (n / d_S1)⁴)`.
    pub ratio: f64,
}

/// Checks `k⁷ ≥ 640 · (n / d_S1)⁴` exactly.
pub fn validate_feasibility(p: &Params) -> Feasibility {
    feasibility(p.n, p.k, p.ds1())
}

pub fn feasibility(n: u64, k: u64, ds1: Ratio) -> Feasibility {
    // k⁷ · a⁴ ≥ 640 · n⁴ · b⁴ with d_S1 = a/b.
    let a = BigUint::from(*ds1.numer());
    let b = BigUint::from(*ds1.denom());
    let lhs = BigUint::from(k).pow(7) * a.pow(4);
    let rhs = BigUint::from(640u32) * BigUint::from(n).pow(4) * b.pow(4);
    let ratio = if rhs.is_zero() {
        f64::INFINITY
    } else {
        big_ratio(&lhs, &rhs)
    };
    Feasibility { pass: lhs >= rhs, ratio }
}

fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    // Scale both down to keep the quotient representable.
    let shift = b.bits().saturating_sub(60);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}
