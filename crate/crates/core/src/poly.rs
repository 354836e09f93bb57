//! Exact counting polynomials and monotone root solving.
//!
//! Coefficients are unbounded nonnegative integers. Gadget generating
//! functions, their powers and compositions, and truncated walk series all
//! live here; the only floating-point work is evaluation and the root solver.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for [`monotone_solve`] and friends.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Upper-endpoint doublings tried before giving up on a bracket.
const MAX_DOUBLINGS: u32 = 64;

/// Bracket width below which Newton takes over from bisection.
const NEWTON_WIDTH: f64 = 1e-3;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolyJson", try_from = "PolyJson")]
pub struct CountPolynomial {
    coeffs: Vec<BigUint>,
}

impl CountPolynomial {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CountPolynomial { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigUint::one())
    }

    /// The identity polynomial `x`, i.e. the trivial transformation.
    pub fn x() -> Self {
        Self::monomial(1, BigUint::one())
    }

    pub fn monomial(degree: usize, coeff: BigUint) -> Self {
        let mut coeffs = vec![BigUint::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigUint {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Nonzero, no constant term, and no linear term unless it is exactly `x`.
    pub fn is_gadget_genfun(&self) -> bool {
        if self.is_zero() || !self.coeff(0).is_zero() {
            return false;
        }
        self.coeff(1).is_zero() || *self == Self::x()
    }

    pub fn truncated(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// Exact multiplication by `x^-k`; fails if any coefficient below `k` is nonzero.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::InvalidPolynomial(format!(
                "cannot divide by x^{k}: low-order terms present"
            )));
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Product with terms above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree + 1);
        let mut out = vec![BigUint::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn power(&self, n: u32) -> Self {
        self.power_truncated(n, usize::MAX - 1)
    }

    pub fn power_truncated(&self, mut n: u32, max_degree: usize) -> Self {
        let mut base = self.truncated(max_degree);
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_truncated(&base, max_degree);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_truncated(&base, max_degree);
            }
        }
        acc
    }

    /// `self ∘ inner`, i.e. `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.compose_truncated(inner, usize::MAX - 1)
    }

    /// Composition with terms above `max_degree` dropped (Horner in `inner`).
    pub fn compose_truncated(&self, inner: &Self, max_degree: usize) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_truncated(inner, max_degree);
            acc = &acc + &Self::monomial(0, c.clone());
        }
        acc.truncated(max_degree)
    }

    /// Horner evaluation in `f64`. Nonnegative coefficients mean no
    /// cancellation, so relative error stays at a few ulps per degree.
    pub fn evaluate(&self, x: f64) -> f64 {
        FloatPoly::from(self).value(x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl Add for &CountPolynomial {
    type Output = CountPolynomial;

    fn add(self, rhs: &CountPolynomial) -> CountPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += s;
        }
        CountPolynomial::new(out)
    }
}

impl Mul for &CountPolynomial {
    type Output = CountPolynomial;

    fn mul(self, rhs: &CountPolynomial) -> CountPolynomial {
        const UNBOUNDED: usize = usize::MAX - 1;
        self.mul_truncated(rhs, UNBOUNDED)
    }
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = c.is_one();
            match i {
                0 => write!(f, "{c}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{c}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<String>,
}

impl From<CountPolynomial> for PolyJson {
    fn from(p: CountPolynomial) -> Self {
        PolyJson {
            coeffs: p.coeffs.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<PolyJson> for CountPolynomial {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| Error::InvalidPolynomial(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(CountPolynomial::new(coeffs))
    }
}

/// `f64` image of a counting polynomial, used by the solvers.
#[derive(Clone, Debug)]
pub(crate) struct FloatPoly(Vec<f64>);

impl From<&CountPolynomial> for FloatPoly {
    fn from(p: &CountPolynomial) -> Self {
        FloatPoly(
            p.coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
                .collect(),
        )
    }
}

impl FloatPoly {
    pub(crate) fn value(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub(crate) fn value_and_slope(&self, x: f64) -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for &c in self.0.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    }
}

/// Solve `p(x) = target` for the unique positive root of a nonzero
/// polynomial with nonnegative coefficients and `p(0) = 0`.
///
/// The upper endpoint starts at 1 and doubles until it brackets the target;
/// bisection narrows the bracket to width `1e-3`, then safeguarded Newton
/// finishes, running until it stalls. The result satisfies
/// `|p(x) - target| <= tol`.
pub fn monotone_solve(p: &CountPolynomial, target: f64, tol: f64) -> Result<f64> {
    if p.is_zero() || !p.coeff(0).is_zero() {
        return Err(Error::InvalidPolynomial(format!(
            "{p} is not strictly increasing from 0"
        )));
    }
    if !(target > 0.0 && target.is_finite()) {
        return Err(Error::NonPositiveTarget(target));
    }
    let fp = FloatPoly::from(p);

    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut doublings = 0;
    loop {
        let v = fp.value(hi);
        if v == target {
            return Ok(hi);
        }
        if v > target {
            break;
        }
        if doublings == MAX_DOUBLINGS {
            return Err(Error::NoBracket {
                target,
                reached: hi,
            });
        }
        lo = hi;
        hi *= 2.0;
        doublings += 1;
    }

    while hi - lo > NEWTON_WIDTH {
        let mid = 0.5 * (lo + hi);
        if fp.value(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, x);
    for _ in 0..200 {
        let (v, d) = fp.value_and_slope(x);
        let residual = (v - target).abs();
        if residual < best.0 {
            best = (residual, x);
        }
        // keep polishing past `tol`: Newton is cheap and the caller often
        // needs the root, not just the residual, near machine precision
        if residual == 0.0 {
            return Ok(x);
        }
        if v < target {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - (v - target) / d;
        let next = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= f64::EPSILON * hi {
            break;
        }
        x = next;
    }
    if best.0 <= tol {
        Ok(best.1)
    } else {
        Err(Error::ToleranceUnreachable {
            tol,
            residual: best.0,
        })
    }
}
