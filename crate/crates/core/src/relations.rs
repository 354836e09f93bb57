//! Connective-constant relations between a graph and its transforms, and
//! exact finite checks of the generating-function identities behind them.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::enumerate::{gadget_genfun, origin_edges, EdgeSteps, EndFilter, MidEdgeQuery, SawSeries};
use crate::error::{Error, Result};
use crate::gadget::Gadget;
use crate::graph::{FinitePatch, VertexId};
use crate::poly::{monotone_solve, CountPolynomial, DEFAULT_TOL};
use crate::transform::{count_colour_refined_with, transform_all, transform_colour_class, TransformedPatch};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    ExactClosedForm { expression: String },
    RootOfRelation { relation: String },
    SeriesEstimate { n_min: usize, n_max: usize, estimator: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuValue {
    pub value: f64,
    pub provenance: Provenance,
}

impl MuValue {
    pub fn exact(value: f64, expression: impl Into<String>) -> Self {
        MuValue {
            value,
            provenance: Provenance::ExactClosedForm {
                expression: expression.into(),
            },
        }
    }

    /// `sqrt(2 + sqrt(2))`, the hexagonal lattice.
    pub fn hexagonal() -> Self {
        Self::exact((2.0 + 2f64.sqrt()).sqrt(), "sqrt(2+sqrt(2))")
    }
}

fn check_mu(mu: &MuValue) -> Result<()> {
    if mu.value.is_finite() && mu.value > 1.0 {
        Ok(())
    } else {
        Err(Error::MuOutOfRange(mu.value))
    }
}

fn check_genfun(g: &CountPolynomial) -> Result<()> {
    if g.is_gadget_genfun() {
        Ok(())
    } else {
        Err(Error::InvalidGadget(format!("{g} is not a two-port generating function")))
    }
}

/// `mu_1` with `1/mu = g(1/mu_1)`.
pub fn predict_mu_transformed(mu: &MuValue, g: &CountPolynomial) -> Result<MuValue> {
    check_mu(mu)?;
    check_genfun(g)?;
    let x = monotone_solve(g, 1.0 / mu.value, DEFAULT_TOL)?;
    Ok(MuValue {
        value: 1.0 / x,
        provenance: Provenance::RootOfRelation {
            relation: format!("1/mu = g(1/mu1), g = {g}"),
        },
    })
}

/// Transform of one colour class (`g2 = None`, `h = x g1`) or of both
/// (`h = g1 g2`): the new constant solves `h(1/mu') = 1/mu^2`.
pub fn predict_mu_bipartite(
    mu: &MuValue,
    g1: &CountPolynomial,
    g2: Option<&CountPolynomial>,
) -> Result<MuValue> {
    check_mu(mu)?;
    check_genfun(g1)?;
    let h = match g2 {
        Some(g2) => {
            check_genfun(g2)?;
            g1 * g2
        }
        None => g1.shift_up(1),
    };
    let x = monotone_solve(&h, 1.0 / (mu.value * mu.value), DEFAULT_TOL)?;
    Ok(MuValue {
        value: 1.0 / x,
        provenance: Provenance::RootOfRelation {
            relation: format!("1/mu^2 = h(1/mu'), h = {h}"),
        },
    })
}

/// `g_1 ∘ g_2 ∘ ... ∘ g_r`, the series of applying `g_1`'s transformation
/// first.
pub fn compose_chain(gs: &[CountPolynomial]) -> Result<CountPolynomial> {
    let (first, rest) = gs.split_first().ok_or(Error::EmptyChain)?;
    check_genfun(first)?;
    let mut acc = first.clone();
    for g in rest {
        check_genfun(g)?;
        acc = acc.compose(g);
    }
    Ok(acc)
}

/// The unique `x` in `(0, 1]` with `g(x) = x`, by bisection.
pub fn fixed_point(g: &CountPolynomial, tol: f64) -> Result<f64> {
    use num_traits::Zero;
    if g.is_zero() || !g.coeff(0).is_zero() || !g.coeff(1).is_zero() {
        return Err(Error::InvalidPolynomial(format!(
            "{g} must have no constant or linear term"
        )));
    }
    let at_one = g.evaluate(1.0);
    if at_one < 1.0 {
        return Err(Error::NoFixedPointInUnitInterval(at_one));
    }
    let h = |x: f64| g.evaluate(x) - x;
    // h < 0 just above 0, h(1) >= 0
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let residual = h(hi).abs();
    if residual <= tol {
        Ok(hi)
    } else {
        Err(Error::ToleranceUnreachable { tol, residual })
    }
}

/// `x_k = g^{-1}(x_{k-1})` for `k = 1..=steps`.
pub fn iterate_mu(x0: f64, g: &CountPolynomial, steps: usize) -> Result<Vec<f64>> {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::StartOutOfRange(x0));
    }
    let mut out = Vec::with_capacity(steps);
    let mut x = x0;
    for _ in 0..steps {
        x = monotone_solve(g, x, DEFAULT_TOL)?;
        out.push(x);
    }
    Ok(out)
}

/// The two classical sequences, indexed from `n = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesEstimate {
    pub roots: Vec<f64>,
    pub ratios: Vec<f64>,
    pub mu: MuValue,
}

/// Crude estimate of `mu` from exact counts: `n`-th roots (upper bounds on
/// transitive graphs) and successive ratios. The headline value is the last
/// ratio.
pub fn estimate_mu_from_series(s: &SawSeries<EdgeSteps>) -> Result<SeriesEstimate> {
    let n = s.max_len();
    if s.counts().len() < 3 {
        return Err(Error::SeriesTooShort { needed: 2, got: n });
    }
    let c: Vec<f64> = s.counts().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let roots = (1..=n).map(|k| c[k].powf(1.0 / k as f64)).collect();
    let ratios: Vec<f64> = (1..=n).map(|k| c[k] / c[k - 1]).collect();
    Ok(SeriesEstimate {
        roots,
        mu: MuValue {
            value: *ratios.last().expect("n >= 2"),
            provenance: Provenance::SeriesEstimate {
                n_min: 1,
                n_max: n,
                estimator: "ratio".into(),
            },
        },
        ratios,
    })
}

/// Outcome of an exact coefficient comparison up to `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub lhs: CountPolynomial,
    pub rhs: CountPolynomial,
    pub degree: usize,
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

impl VerificationReport {
    fn compare(lhs: CountPolynomial, rhs: CountPolynomial, degree: usize) -> Self {
        let first_mismatch = (0..=degree).find(|&i| lhs.coeff(i) != rhs.coeff(i));
        VerificationReport {
            lhs: lhs.truncated(degree),
            rhs: rhs.truncated(degree),
            degree,
            equal: first_mismatch.is_none(),
            first_mismatch,
        }
    }
}

/// Knobs for the verification routines.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Use this series in place of the enumerated one for the (black)
    /// gadget. Meant for negative controls.
    pub genfun: Option<CountPolynomial>,
    /// Original vertices no walk may enter. A replaced vertex blocks its
    /// whole gadget copy.
    pub blocked: Vec<VertexId>,
    pub allow_boundary: bool,
}

fn image_of_blocked(tp: &TransformedPatch, blocked: &[VertexId]) -> Vec<VertexId> {
    blocked
        .iter()
        .flat_map(|&v| tp.site_map[v as usize].clone())
        .collect()
}

/// Mid-edge series from the origin's edges with the given end filter.
fn series(
    patch: &FinitePatch,
    starts: &[crate::graph::EdgeId],
    filter: &EndFilter,
    max_vertices: usize,
    blocked: &[VertexId],
    allow_boundary: bool,
) -> Result<Vec<BigUint>> {
    let query = MidEdgeQuery {
        blocked,
        allow_boundary,
        ..MidEdgeQuery::new(starts, filter, max_vertices)
    };
    Ok(query.run(patch)?.counts().to_vec())
}

/// Check `Z_0(g(x)) = Z_1^*(x)` through degree `nmax`: mid-edge walks from
/// the origin on `patch`, substituted, against walks on the transformed
/// patch between surviving original mid-edges.
pub fn verify_substitution(
    patch: &FinitePatch,
    gadget: &Gadget,
    nmax: usize,
) -> Result<VerificationReport> {
    verify_substitution_with(patch, gadget, nmax, &VerifyOptions::default())
}

pub fn verify_substitution_with(
    patch: &FinitePatch,
    gadget: &Gadget,
    nmax: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let g = match &opts.genfun {
        Some(g) => g.clone(),
        None => gadget_genfun(gadget)?,
    };
    check_genfun(&g)?;
    // every factor g(x) raises the degree by at least ord(g)
    let original_len = nmax / g.order().expect("nonzero");
    let starts = origin_edges(patch);
    let tp = transform_all(patch, gadget)?;
    let new_starts = tp.map_edges(&starts);
    let new_blocked = image_of_blocked(&tp, &opts.blocked);
    let survivors = EndFilter::edges(&tp.patch, &tp.original_edge_map);

    let (z0, rhs) = rayon::join(
        || series(patch, &starts, &EndFilter::Any, original_len, &opts.blocked, opts.allow_boundary),
        || series(&tp.patch, &new_starts, &survivors, nmax, &new_blocked, opts.allow_boundary),
    );
    let lhs = CountPolynomial::new(z0?).compose_truncated(&g, nmax);
    Ok(VerificationReport::compare(lhs, CountPolynomial::new(rhs?), nmax))
}

/// Largest `b + w` with `|b - w| <= 1` and `d1 b + d2 w <= nmax`: no
/// alternating walk with more visits contributes below degree `nmax`.
fn bipartite_length(d1: usize, d2: usize, nmax: usize) -> usize {
    let mut best = 0;
    for b in 0..=nmax {
        for w in b.saturating_sub(1)..=b + 1 {
            if d1 * b + d2 * w <= nmax {
                best = best.max(b + w);
            }
        }
    }
    best
}

/// Check `C(x) = Z(g_1(x), g_2(x))` through degree `nmax`, with `g_2 = x`
/// when only black vertices are transformed.
pub fn verify_bipartite_substitution(
    patch: &FinitePatch,
    black: &Gadget,
    white: Option<&Gadget>,
    nmax: usize,
) -> Result<VerificationReport> {
    verify_bipartite_substitution_with(patch, black, white, nmax, &VerifyOptions::default())
}

pub fn verify_bipartite_substitution_with(
    patch: &FinitePatch,
    black: &Gadget,
    white: Option<&Gadget>,
    nmax: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if patch.colours().is_none() {
        return Err(Error::NotBipartite);
    }
    let g1 = match &opts.genfun {
        Some(g) => g.clone(),
        None => gadget_genfun(black)?,
    };
    let g2 = match white {
        Some(w) => gadget_genfun(w)?,
        None => CountPolynomial::x(),
    };
    check_genfun(&g1)?;
    check_genfun(&g2)?;
    let len = bipartite_length(g1.order().expect("nonzero"), g2.order().expect("nonzero"), nmax);

    let starts = origin_edges(patch);
    let tp = transform_colour_class(patch, black, white)?;
    let new_starts = tp.map_edges(&starts);
    let new_blocked = image_of_blocked(&tp, &opts.blocked);
    let survivors = EndFilter::edges(&tp.patch, &tp.original_edge_map);

    let (refined, rhs) = rayon::join(
        || {
            let query = MidEdgeQuery {
                blocked: &opts.blocked,
                allow_boundary: opts.allow_boundary,
                ..MidEdgeQuery::new(&starts, &EndFilter::Any, len)
            };
            count_colour_refined_with(&query, patch)
        },
        || series(&tp.patch, &new_starts, &survivors, nmax, &new_blocked, opts.allow_boundary),
    );
    let refined = refined?;

    let powers = |g: &CountPolynomial| -> Vec<CountPolynomial> {
        let mut out = vec![CountPolynomial::one()];
        for k in 1..=len {
            let next = out[k - 1].mul_truncated(g, nmax);
            out.push(next);
        }
        out
    };
    let (p1, p2) = (powers(&g1), powers(&g2));
    let mut lhs = CountPolynomial::zero();
    for b in 0..=len {
        for w in 0..=len - b {
            let c = refined.get(b, w);
            if c == BigUint::default() {
                continue;
            }
            let term = p1[b].mul_truncated(&p2[w], nmax);
            lhs = &lhs + &(&CountPolynomial::new(vec![c]) * &term);
        }
    }
    Ok(VerificationReport::compare(lhs, CountPolynomial::new(rhs?), nmax))
}
