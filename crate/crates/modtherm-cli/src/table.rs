//! `modtherm table <name>`: reference tables with exact columns where they exist.

use modtherm::exactnum::rat_to_f64;
use modtherm::periodpoly::pbar;
use modtherm::qseries::{lambert_s, moment, HalfPlanePoint};
use modtherm::thermal::{f3_epstein, f3_mode_sum, ThermalPoint};

use crate::eval::{lerch_exact, odd_moment_exact};
use crate::output::{Node, Obj};
use crate::{CliError, CliResult};

pub const TABLES: &[&str] = &["period-polynomials", "moments", "lerch-values", "f3-grid"];

fn period_polynomials() -> CliResult<Vec<Node>> {
    let mut rows = Vec::new();
    for t in 2..=8u32 {
        let p = pbar(t)?;
        for (k, c) in p.coeffs.iter().enumerate() {
            rows.push(
                Obj::new()
                    .with("t", t)
                    .with("power", k)
                    .with("coefficient", c.to_string())
                    .with("numeric", c.to_f64())
                    .into(),
            );
        }
    }
    Ok(rows)
}

fn moments() -> CliResult<Vec<Node>> {
    let mut rows = Vec::new();
    for t in 2..=6u32 {
        for j in 1..t {
            let exact = odd_moment_exact(t, j);
            let quad = moment(t, 2 * j - 1)?;
            rows.push(
                Obj::new()
                    .with("t", t)
                    .with("j", j)
                    .with("k", 2 * j - 1)
                    .with("exact", exact.to_string())
                    .with("exact_numeric", rat_to_f64(&exact))
                    .with("quadrature", quad)
                    .with("difference", quad - rat_to_f64(&exact))
                    .into(),
            );
        }
    }
    Ok(rows)
}

fn lerch_values() -> CliResult<Vec<Node>> {
    let mut rows = Vec::new();
    for t in [2u32, 4, 6, 8] {
        let exact = lerch_exact(t)?;
        let series = lambert_s(t, &HalfPlanePoint::real(1.0)?)?.value.re;
        rows.push(
            Obj::new()
                .with("t", t)
                .with("exact", exact.to_string())
                .with("exact_numeric", exact.to_f64())
                .with("series", series)
                .with("difference", series - exact.to_f64())
                .into(),
        );
    }
    Ok(rows)
}

fn f3_grid() -> CliResult<Vec<Node>> {
    let mut rows = Vec::new();
    for i in 1..=20 {
        let xi = 0.25 * i as f64;
        let pt = ThermalPoint::new(xi)?;
        let a = f3_epstein(&pt)?;
        let b = f3_mode_sum(&pt)?;
        rows.push(
            Obj::new()
                .with("xi", xi)
                .with("epstein", a)
                .with("mode_sum", b)
                .with("difference", a - b)
                .into(),
        );
    }
    Ok(rows)
}

pub fn build(name: &str) -> CliResult<Vec<Node>> {
    match name {
        "period-polynomials" => period_polynomials(),
        "moments" => moments(),
        "lerch-values" => lerch_values(),
        "f3-grid" => f3_grid(),
        other => Err(CliError::Usage(format!("unknown table {other:?}; known: {}", TABLES.join(", ")))),
    }
}
