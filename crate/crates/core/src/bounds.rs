//! Closed-form asymptotic capacity bounds and CSV emission over a δ grid.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Grid points are snapped to this resolution so that `from + i * step`
/// lands exactly on domain endpoints such as 1/4.
const GRID_RESOLUTION: f64 = 1e12;
const SIGNIFICANT_DIGITS: i32 = 12;

pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    let term = |q: f64| if q == 0.0 { 0.0 } else { -q * q.log2() };
    Ok(term(p) + term(1.0 - p))
}

fn check_domain(delta: f64, hi: f64, domain: &'static str) -> Result<()> {
    if !(0.0..=hi).contains(&delta) {
        return Err(Error::Domain {
            what: "delta",
            value: delta,
            domain,
        });
    }
    Ok(())
}

/// `H(1/2 + √(2δ(1-2δ)))` on `[0, 1/4]`.
pub fn bound_mrrw_adversarial(delta: f64) -> Result<f64> {
    check_domain(delta, 0.25, "[0, 1/4]")?;
    let root = (2.0 * delta * (1.0 - 2.0 * delta)).sqrt();
    binary_entropy((0.5 + root).min(1.0))
}

pub fn bound_linear_adversarial(delta: f64) -> f64 {
    1.0 - 4.0 * delta
}

/// `1 - H(δ) - δ log₂ 3` on `[0, 1]`.
pub fn bound_sphere_packing_nondeg(delta: f64) -> Result<f64> {
    check_domain(delta, 1.0, "[0, 1]")?;
    Ok(1.0 - binary_entropy(delta)? - delta * 3f64.log2())
}

/// `1 - H(2δ) - 2δ log₂ 3` on `[0, 1/4]`.
pub fn bound_gv_lower_adversarial(delta: f64) -> Result<f64> {
    check_domain(delta, 0.25, "[0, 1/4]")?;
    Ok(1.0 - binary_entropy(2.0 * delta)? - 2.0 * delta * 3f64.log2())
}

pub fn bound_shannon_depolarizing(delta: f64) -> Result<f64> {
    check_domain(delta, 1.0, "[0, 1]")?;
    Ok(1.0 - binary_entropy(delta)?)
}

pub fn bound_linear_depolarizing(delta: f64) -> f64 {
    1.0 - 4.0 * delta
}

pub fn bound_lower_depolarizing(delta: f64) -> Result<f64> {
    bound_sphere_packing_nondeg(delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Adversarial,
    Depolarizing,
}

impl FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "adversarial" => Ok(Channel::Adversarial),
            "depolarizing" => Ok(Channel::Depolarizing),
            other => Err(format!(
                "unknown channel {other:?} (adversarial | depolarizing)"
            )),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Adversarial => "adversarial",
            Channel::Depolarizing => "depolarizing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Upper,
    UpperNondegenerate,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub raw: f64,
    /// `raw` clamped to `[0, 1]`.
    pub clamped: f64,
}

#[derive(Clone, Copy)]
pub struct BoundCurve {
    pub name: &'static str,
    pub channel: Channel,
    pub kind: CurveKind,
    /// Largest δ in the evaluator's domain; the smallest is 0.
    pub domain_max: f64,
    evaluator: fn(f64) -> Result<f64>,
}

impl fmt::Debug for BoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundCurve")
            .field("name", &self.name)
            .field("channel", &self.channel)
            .field("kind", &self.kind)
            .field("domain_max", &self.domain_max)
            .finish()
    }
}

impl BoundCurve {
    pub fn contains(&self, delta: f64) -> bool {
        (0.0..=self.domain_max).contains(&delta)
    }

    pub fn evaluate(&self, delta: f64) -> Result<Evaluation> {
        let raw = (self.evaluator)(delta)?;
        Ok(Evaluation {
            raw,
            clamped: raw.clamp(0.0, 1.0),
        })
    }
}

/// Curves plotted for a channel, in emission order.
pub fn curves(channel: Channel) -> Vec<BoundCurve> {
    let curve = |name, kind, domain_max, evaluator| BoundCurve {
        name,
        channel,
        kind,
        domain_max,
        evaluator,
    };
    match channel {
        Channel::Adversarial => vec![
            curve("linear_adversarial", CurveKind::Upper, 0.5, |d| {
                Ok(bound_linear_adversarial(d))
            }),
            curve(
                "mrrw_adversarial",
                CurveKind::Upper,
                0.25,
                bound_mrrw_adversarial,
            ),
            curve(
                "sphere_packing_nondegenerate",
                CurveKind::UpperNondegenerate,
                0.5,
                bound_sphere_packing_nondeg,
            ),
            curve(
                "gv_lower_adversarial",
                CurveKind::Lower,
                0.25,
                bound_gv_lower_adversarial,
            ),
        ],
        Channel::Depolarizing => vec![
            curve("linear_depolarizing", CurveKind::Upper, 0.5, |d| {
                Ok(bound_linear_depolarizing(d))
            }),
            curve(
                "shannon_depolarizing",
                CurveKind::Upper,
                0.5,
                bound_shannon_depolarizing,
            ),
            curve(
                "lower_depolarizing",
                CurveKind::Lower,
                0.5,
                bound_lower_depolarizing,
            ),
        ],
    }
}

/// `from, from + step, …` up to `to`, each snapped to 1e-12.
pub fn delta_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    let finite = from.is_finite() && to.is_finite() && step.is_finite();
    if !finite || step <= 0.0 {
        return Err(Error::Domain {
            what: "step",
            value: step,
            domain: "(0, 0.5]",
        });
    }
    if !(0.0..=0.5).contains(&from) || !(0.0..=0.5).contains(&to) || from > to {
        return Err(Error::Domain {
            what: "grid",
            value: if from > to || !(0.0..=0.5).contains(&from) {
                from
            } else {
                to
            },
            domain: "0 <= from <= to <= 0.5",
        });
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((from + i as f64 * step) * GRID_RESOLUTION).round() / GRID_RESOLUTION)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub delta: f64,
    pub curve: &'static str,
    pub raw: f64,
    pub clamped: f64,
}

/// Rows for every curve of `channel` whose domain contains the grid point,
/// grid-major and in [`curves`] order within a point.
pub fn curve_rows(channel: Channel, from: f64, to: f64, step: f64) -> Result<Vec<CurveRow>> {
    let grid = delta_grid(from, to, step)?;
    let curves = curves(channel);
    let mut rows = Vec::new();
    for delta in grid {
        for c in curves.iter().filter(|c| c.contains(delta)) {
            let e = c.evaluate(delta)?;
            rows.push(CurveRow {
                delta,
                curve: c.name,
                raw: e.raw,
                clamped: e.clamped,
            });
        }
    }
    Ok(rows)
}

/// Decimal rendering with 12 significant digits, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let exponent = x.abs().log10().floor() as i32;
    let text = if exponent < -6 {
        let s = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, x);
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (SIGNIFICANT_DIGITS - 1 - exponent).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    };
    if text == "-0" {
        "0".into()
    } else {
        text
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// CSV with header `delta,curve,raw,clamped` and LF line endings.
pub fn emit_curves(channel: Channel, from: f64, to: f64, step: f64) -> Result<String> {
    let mut out = String::from("delta,curve,raw,clamped\n");
    for row in curve_rows(channel, from, to, step)? {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_real(row.delta),
            row.curve,
            format_real(row.raw),
            format_real(row.clamped)
        ));
    }
    Ok(out)
}
