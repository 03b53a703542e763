//! `modtherm bench <target>`: accelerated expansions against direct summation.

use std::f64::consts::PI;
use std::time::Instant;

use modtherm::epstein::{box_radius_for, box_sum, z2_direct, z2_kober_report, zp_massive_report, BinaryForm, LatticeSumConfig};
use modtherm::qseries::{eps_sub, mellin_eps_sub, HalfPlanePoint};

use crate::output::{Node, Obj};
use crate::{CliError, CliResult};

pub const TARGETS: &[&str] = &["kober-vs-direct", "massive-vs-direct", "qseries-vs-mellin"];

const TOLERANCES: [f64; 9] = [1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12];

// direct sums beyond this many lattice points are timed by extrapolation
const MAX_TIMED_POINTS: f64 = 4e6;

/// Seconds per call, repeating fast calls until 20 ms have elapsed.
fn time_it<T>(mut f: impl FnMut() -> T) -> (T, f64) {
    let start = Instant::now();
    let mut out = f();
    let mut calls = 1u32;
    while start.elapsed().as_secs_f64() < 0.02 {
        out = f();
        calls += 1;
    }
    (out, start.elapsed().as_secs_f64() / calls as f64)
}

fn box_points(radius: u64) -> f64 {
    let side = (2 * radius + 1) as f64;
    side * side - 1.0
}

/// Measured or extrapolated wall time of a direct sum over `points` points,
/// given the cost of one reference run.
fn direct_time(points: f64, reference: (f64, f64), run: impl FnOnce() -> f64) -> (Option<f64>, f64, bool) {
    if points <= MAX_TIMED_POINTS {
        let start = Instant::now();
        let v = run();
        (Some(v), start.elapsed().as_secs_f64(), true)
    } else {
        (None, reference.1 / reference.0 * points, false)
    }
}

fn kober_vs_direct(form: BinaryForm, s: f64) -> CliResult<Vec<Node>> {
    if !(s > 1.0) {
        return Err(CliError::Usage("kober-vs-direct needs s > 1".into()));
    }
    let w = s - 0.5;
    let reference = z2_direct(&form, s, &LatticeSumConfig::default())?;
    let r0 = 400u64;
    let (_, t0) = time_it(|| box_sum(&form, s, r0 as u32));
    let per_point = (box_points(r0), t0);
    let mut rows = Vec::new();
    for tol in TOLERANCES {
        // the expansion's tolerance is relative to max(|Z|, 1)
        let (report, kober_time) = time_it(|| z2_kober_report(&form, w, tol / reference.abs().max(1.0)));
        let report = report?;
        let radius = box_radius_for(&form, s, tol)?.ceil() as u64;
        let points = box_points(radius);
        let (direct_value, direct_time, measured) =
            direct_time(points, per_point, || box_sum(&form, s, radius as u32));
        rows.push(
            Obj::new()
                .with("tolerance", tol)
                .with("form", format!("{},{},{}", form.a, form.b, form.c))
                .with("s", s)
                .with("u", form.u())
                .with("kober_terms", report.terms)
                .with("kober_wall_time_s", kober_time)
                .with("kober_error", (report.value - reference).abs())
                .with("direct_radius", radius)
                .with("direct_points", points)
                .with("direct_wall_time_s", direct_time)
                .with("direct_time_measured", measured)
                .with("direct_error", direct_value.map(|v| (v - reference).abs()))
                .with("term_ratio", points / report.terms.max(1) as f64)
                .into(),
        );
    }
    Ok(rows)
}

/// `sum' (m^2 + n^2 + w^2)^-s` over the box `max(|m|, |n|) <= radius`.
fn massive_box_sum(s: f64, w: f64, radius: i64) -> f64 {
    let w2 = w * w;
    let mut acc = 0.0;
    for m in -radius..=radius {
        let m2 = (m * m) as f64 + w2;
        for n in -radius..=radius {
            if m != 0 || n != 0 {
                acc += (m2 + (n * n) as f64).powf(-s);
            }
        }
    }
    acc
}

fn massive_vs_direct(s: f64) -> CliResult<Vec<Node>> {
    if !(s > 1.0) {
        return Err(CliError::Usage("massive-vs-direct needs s > 1".into()));
    }
    let (p, w) = (2u32, 1.0);
    let reference = zp_massive_report(p, s, w, 1e-15)?.value;
    let r0 = 400i64;
    let (_, t0) = time_it(|| massive_box_sum(s, w, r0));
    let per_point = (box_points(r0 as u64), t0);
    let mut rows = Vec::new();
    for tol in TOLERANCES {
        let (report, bessel_time) = time_it(|| zp_massive_report(p, s, w, tol / reference.abs().max(1.0)));
        let report = report?;
        // the disc |m| > R holds about pi R^(2 - 2s) / (s - 1)
        let radius = (PI / ((s - 1.0) * tol)).powf(1.0 / (2.0 * s - 2.0)).ceil() as u64;
        let points = box_points(radius);
        let (direct_value, direct_time, measured) =
            direct_time(points, per_point, || massive_box_sum(s, w, radius as i64));
        rows.push(
            Obj::new()
                .with("tolerance", tol)
                .with("p", p)
                .with("s", s)
                .with("w", w)
                .with("bessel_terms", report.terms)
                .with("bessel_wall_time_s", bessel_time)
                .with("bessel_error", (report.value - reference).abs())
                .with("direct_radius", radius)
                .with("direct_points", points)
                .with("direct_wall_time_s", direct_time)
                .with("direct_time_measured", measured)
                .with("direct_error", direct_value.map(|v| (v - reference).abs()))
                .into(),
        );
    }
    Ok(rows)
}

fn qseries_vs_mellin() -> CliResult<Vec<Node>> {
    let t = 2;
    let mut rows = Vec::new();
    for b in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let p = HalfPlanePoint::real(b)?;
        let (q, q_time) = time_it(|| eps_sub(t, &p));
        let q = q?;
        let (m, m_time) = time_it(|| mellin_eps_sub(t, b));
        let m = m?;
        rows.push(
            Obj::new()
                .with("t", t)
                .with("b", b)
                .with("qseries_terms", q.truncation.max_terms)
                .with("qseries_tail_bound", q.truncation.tail_bound)
                .with("qseries_wall_time_s", q_time)
                .with("mellin_evaluations", m.truncation.max_terms)
                .with("mellin_tail_bound", m.truncation.tail_bound)
                .with("mellin_wall_time_s", m_time)
                .with("difference", (q.value - m.value).norm())
                .with("speedup", m_time / q_time)
                .into(),
        );
    }
    Ok(rows)
}

pub fn run(target: &str, form: Option<[f64; 3]>, s: Option<f64>) -> CliResult<Vec<Node>> {
    match target {
        "kober-vs-direct" => {
            let [a, b, c] = form.unwrap_or([1.0, 0.0, 1.0]);
            kober_vs_direct(BinaryForm::new(a, b, c)?, s.unwrap_or(2.0))
        }
        "massive-vs-direct" => massive_vs_direct(s.unwrap_or(2.0)),
        "qseries-vs-mellin" => qseries_vs_mellin(),
        other => Err(CliError::Usage(format!(
            "unknown bench target {other:?}; known: {}",
            TARGETS.join(", ")
        ))),
    }
}
