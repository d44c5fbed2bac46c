//! Eigenvalue trajectories of `K_r` over a grid of exponents, with
//! detection and bisection refinement of inertia transitions.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Exponent, FamilySpec, Inertia, Points};
use crate::error::{Error, Result};
use crate::float_engine::{inertia_float, Route, RoutePolicy};
use crate::oracle::kwong_expected_nullity;
use crate::scalar::format_f64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub r: f64,
    pub eigenvalues: Vec<f64>,
    pub inertia: Inertia,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub points: Points,
    pub policy: RoutePolicy,
    pub records: Vec<SweepRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TransitionReport {
    pub bracket: (f64, f64),
    pub inertia_before: Inertia,
    pub inertia_after: Inertia,
    pub refined_location: f64,
    /// Width of the final bisection bracket.
    pub width: f64,
}

/// Kwong inertia at one exponent; exponents within `1e-9` of an odd
/// integer below `n` use the predicted nullity.
pub fn evaluate(points: &Points, r: f64, policy: RoutePolicy) -> Result<SweepRecord> {
    let spec = FamilySpec::kwong(points.clone(), Exponent::real(r));
    let report = inertia_float(&spec, policy, kwong_expected_nullity(points.len(), r))?;
    Ok(SweepRecord {
        r,
        eigenvalues: report.eigenvalues,
        inertia: report.inertia,
        route: report.conditioning_route,
    })
}

/// Uniform grid with both endpoints, `steps` values.
pub fn grid(r_min: f64, r_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(r_min < r_max) || steps < 2 {
        return Err(Error::PreconditionViolated(format!(
            "sweep needs r_min < r_max and steps >= 2 (got {r_min}, {r_max}, {steps})"
        )));
    }
    let h = (r_max - r_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { r_max } else { r_min + h * k as f64 })
        .collect())
}

pub fn sweep_inertia(points: &Points, r_min: f64, r_max: f64, steps: usize, policy: RoutePolicy) -> Result<Sweep> {
    sweep_values(points, &grid(r_min, r_max, steps)?, policy)
}

/// Evaluates an explicit list of exponents, in the given order.
pub fn sweep_values(points: &Points, rs: &[f64], policy: RoutePolicy) -> Result<Sweep> {
    let records = rs
        .par_iter()
        .map(|&r| evaluate(points, r, policy))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep {
        points: points.clone(),
        policy,
        records,
    })
}

/// Whether `mid` lies past a transition from `before` to `after`.
///
/// Eigenvalues heading for zero drop under the threshold some way ahead of
/// the crossing, so a rising `ζ` proves nothing. A sign count that grows
/// across the transition only grows once an eigenvalue has cleared the
/// threshold with its new sign. Without such a count (the transition ends
/// on a singular grid point) only `after` itself counts.
fn past_transition(before: Inertia, after: Inertia, mid: Inertia) -> bool {
    let pi_grows = after.pi > before.pi;
    let nu_grows = after.nu > before.nu;
    if !pi_grows && !nu_grows {
        return mid == after;
    }
    (pi_grows && mid.pi > before.pi) || (nu_grows && mid.nu > before.nu)
}

/// One report per adjacent pair of records whose inertia differs, with the
/// change located by bisection until the bracket is narrower than
/// `refine_tol`.
pub fn detect_transitions(sweep: &Sweep, refine_tol: f64) -> Result<Vec<TransitionReport>> {
    let pairs: Vec<(&SweepRecord, &SweepRecord)> = sweep
        .records
        .windows(2)
        .map(|w| (&w[0], &w[1]))
        .filter(|(a, b)| a.inertia != b.inertia)
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let (mut lo, mut hi) = (a.r, b.r);
            while (hi - lo).abs() >= refine_tol {
                let mid = 0.5 * (lo + hi);
                if past_transition(a.inertia, b.inertia, evaluate(&sweep.points, mid, sweep.policy)?.inertia) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(TransitionReport {
                bracket: (a.r, b.r),
                inertia_before: a.inertia,
                inertia_after: b.inertia,
                refined_location: 0.5 * (lo + hi),
                width: (hi - lo).abs(),
            })
        })
        .collect()
}

/// Distinct transition locations: reports closer than `tol` are merged
/// (a grid point sitting on a flip yields one report on each side).
pub fn transition_locations(reports: &[TransitionReport], tol: f64) -> Vec<f64> {
    let mut locs: Vec<f64> = Vec::new();
    for rep in reports {
        match locs.last_mut() {
            Some(last) if (rep.refined_location - *last).abs() < tol => {}
            _ => locs.push(rep.refined_location),
        }
    }
    locs
}

/// CSV header `r,lambda_1,...,lambda_n,pi,zeta,nu` then one row per record.
pub fn emit_trajectory(records: &[SweepRecord], out: &mut impl Write) -> io::Result<()> {
    let n = records.first().map_or(0, |r| r.eigenvalues.len());
    let mut header = vec!["r".to_string()];
    header.extend((1..=n).map(|i| format!("lambda_{i}")));
    header.extend(["pi", "zeta", "nu"].map(String::from));
    writeln!(out, "{}", header.join(","))?;
    for rec in records {
        let mut row = vec![format_f64(rec.r)];
        row.extend(rec.eigenvalues.iter().map(|&x| format_f64(x)));
        row.extend(rec.inertia.as_array().map(|c| c.to_string()));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
