use std::f64::consts::TAU;
use std::io::Write;

use anyhow::{Context, Result};
use area_moments::exactmath::serial::rational_to_string;
use area_moments::hh::{check_identity, HhOptions};
use area_moments::identities::run_sweep;
use area_moments::moments::MomentCache;
use area_moments::walk::{enumerate_dp, AreaDistribution, StepCounts};
use area_moments::{Error, Rational};
use serde::Serialize;
use serde_json::json;

use crate::config::{CliConfig, Format};

/// Highest moment order printed by `distribution`.
const DISTRIBUTION_MAX_ORDER: u32 = 12;
const DEFAULT_PHI_POINTS: usize = 8;

fn open_cache(config: &CliConfig) -> Result<MomentCache> {
    match &config.cache_path {
        Some(path) => MomentCache::open(path)
            .with_context(|| format!("opening cache {}", path.display())),
        None => Ok(MomentCache::in_memory()),
    }
}

fn save_cache(cache: &mut MomentCache) -> Result<()> {
    cache.save().with_context(|| match cache.path() {
        Some(p) => format!("writing cache {}", p.display()),
        None => "writing cache".into(),
    })
}

fn enumerate(config: &CliConfig, sc: StepCounts) -> Result<AreaDistribution> {
    enumerate_dp(sc, config.state_budget).map_err(|e| match e {
        Error::SizeLimit { .. } => anyhow::anyhow!(
            "{e}; raise the limit with --budget or AREA_MOMENTS_BUDGET"
        ),
        e => e.into(),
    })
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer(out: &mut impl Write) -> csv::Writer<&mut impl Write> {
    csv::Writer::from_writer(out)
}

#[derive(Serialize)]
struct MomentRow {
    n1: u32,
    n2: u32,
    two_l: u32,
    cardinal: String,
    moment: String,
}

pub fn moments(config: &CliConfig, max: u32, out: &mut impl Write) -> Result<bool> {
    let mut cache = open_cache(config)?;
    let mut polys = Vec::new();
    for two_l in (2..=max).step_by(2) {
        polys.push(cache.get_or_compute(two_l)?.clone());
    }
    save_cache(&mut cache)?;
    match config.output_format {
        Format::Pretty => {
            for mp in &polys {
                writeln!(out, "P_{}(n1, n2) = {}", mp.order, mp.poly)?;
                writeln!(out, "{:width$} = {}", "", mp.elementary(), width = 10 + digits(mp.order))?;
            }
        }
        Format::Json => {
            let list: Vec<_> = polys
                .iter()
                .map(|mp| {
                    json!({
                        "two_l": mp.order,
                        "monomial": mp.poly.to_string(),
                        "elementary": mp.elementary().to_string(),
                        "poly": mp.poly,
                    })
                })
                .collect();
            write_json(out, &json!({ "moments": list }))?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["two_l", "monomial", "elementary"])?;
            for mp in &polys {
                w.write_record([
                    mp.order.to_string(),
                    mp.poly.to_string(),
                    mp.elementary().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn digits(v: u32) -> usize {
    v.to_string().len()
}

pub fn distribution(config: &CliConfig, n1: u32, n2: u32, out: &mut impl Write) -> Result<bool> {
    let sc = StepCounts::new(n1, n2);
    let dist = enumerate(config, sc)?;
    let cardinal = sc.cardinal();
    match config.output_format {
        Format::Pretty => {
            writeln!(out, "n1 = {n1}, n2 = {n2}, closed walks = {cardinal}")?;
            writeln!(out)?;
            writeln!(out, "{:>8}  count", "area")?;
            for (area, count) in &dist.counts {
                writeln!(out, "{area:>8}  {count}")?;
            }
            writeln!(out)?;
            writeln!(out, "{:>8}  moment", "order")?;
            for order in 0..=DISTRIBUTION_MAX_ORDER {
                writeln!(out, "{order:>8}  {}", dist.moment(order))?;
            }
        }
        Format::Json => {
            let histogram: Vec<_> = dist
                .counts
                .iter()
                .map(|(a, c)| json!([a, c.to_string()]))
                .collect();
            let moments: Vec<_> = (0..=DISTRIBUTION_MAX_ORDER)
                .map(|k| json!({ "order": k, "moment": dist.moment(k).to_string() }))
                .collect();
            write_json(
                out,
                &json!({
                    "n1": n1,
                    "n2": n2,
                    "cardinal": cardinal.to_string(),
                    "histogram": histogram,
                    "moments": moments,
                }),
            )?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            for two_l in (0..=DISTRIBUTION_MAX_ORDER).step_by(2) {
                w.serialize(MomentRow {
                    n1,
                    n2,
                    two_l,
                    cardinal: cardinal.to_string(),
                    moment: dist.moment(two_l).to_string(),
                })?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyRow {
    n1: u32,
    n2: u32,
    two_l: u32,
    cardinal: String,
    moment: String,
    expected: String,
    pass: bool,
}

pub fn verify(config: &CliConfig, n_max: u32, max: u32, out: &mut impl Write) -> Result<bool> {
    let mut cache = open_cache(config)?;
    let mut polys = Vec::new();
    for two_l in (2..=max).step_by(2) {
        polys.push(cache.get_or_compute(two_l)?.clone());
    }
    save_cache(&mut cache)?;

    let mut rows = Vec::new();
    for total in 0..=n_max {
        for n1 in 0..=total {
            let sc = StepCounts::new(n1, total - n1);
            let dist = enumerate(config, sc)?;
            let cardinal = sc.cardinal();
            for mp in &polys {
                let expected = Rational::from_integer(cardinal.clone()) * mp.eval(sc.n1, sc.n2);
                let moment = dist.moment(mp.order);
                rows.push(VerifyRow {
                    n1: sc.n1,
                    n2: sc.n2,
                    two_l: mp.order,
                    cardinal: cardinal.to_string(),
                    pass: Rational::from_integer(moment.clone()) == expected,
                    moment: moment.to_string(),
                    expected: rational_to_string(&expected),
                })
            }
        }
    }
    let failures: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    let pass = failures.is_empty();
    match config.output_format {
        Format::Pretty => {
            for r in &failures {
                writeln!(
                    out,
                    "FAIL n1={} n2={} 2l={}: enumerated {}, polynomial gives {}",
                    r.n1, r.n2, r.two_l, r.moment, r.expected
                )?;
            }
            writeln!(
                out,
                "{}: {} cases with n1+n2 <= {n_max} and 2l <= {max}, {} failed",
                if pass { "PASS" } else { "FAIL" },
                rows.len(),
                failures.len()
            )?;
        }
        Format::Json => {
            write_json(out, &json!({ "pass": pass, "cases": rows.len(), "rows": rows }))?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            for r in &rows {
                w.serialize(MomentRow {
                    n1: r.n1,
                    n2: r.n2,
                    two_l: r.two_l,
                    cardinal: r.cardinal.clone(),
                    moment: r.moment.clone(),
                })?;
            }
            w.flush()?;
            for r in &failures {
                eprintln!(
                    "FAIL n1={} n2={} 2l={}: enumerated {}, polynomial gives {}",
                    r.n1, r.n2, r.two_l, r.moment, r.expected
                );
            }
        }
    }
    Ok(pass)
}

pub fn identities(config: &CliConfig, max_k: i64, max_n: i64, out: &mut impl Write) -> Result<bool> {
    let reports = run_sweep(max_k, max_n)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    match config.output_format {
        Format::Pretty => {
            for r in &reports {
                writeln!(
                    out,
                    "{} {}{:?}: {} = {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.params,
                    r.lhs,
                    r.rhs
                )?;
            }
            writeln!(out, "{} checks, {failed} failed", reports.len())?;
        }
        Format::Json => write_json(out, &reports)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["name", "params", "lhs", "rhs", "pass"])?;
            for r in &reports {
                let params: Vec<_> = r.params.iter().map(|p| p.to_string()).collect();
                w.write_record([
                    r.name.clone(),
                    params.join(" "),
                    rational_to_string(&r.lhs),
                    rational_to_string(&r.rhs),
                    r.pass.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(failed == 0)
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn complex_text(re: f64, im: f64) -> String {
    let im_text = trim_float(im);
    if im_text == "0" {
        trim_float(re)
    } else if im < 0.0 {
        format!("{} - {}i", trim_float(re), trim_float(-im))
    } else {
        format!("{} + {im_text}i", trim_float(re))
    }
}

pub fn hh(config: &CliConfig, n1: u32, n2: u32, phi: &[f64], out: &mut impl Write) -> Result<bool> {
    let phis: Vec<f64> = if phi.is_empty() {
        (0..DEFAULT_PHI_POINTS)
            .map(|j| TAU * j as f64 / DEFAULT_PHI_POINTS as f64)
            .collect()
    } else {
        phi.to_vec()
    };
    let opts = HhOptions {
        tolerance: config.tolerance,
        quadrature_margin: config.quadrature_margin,
        state_budget: config.state_budget,
    };
    let report = check_identity(n1, n2, &phis, &opts)?;
    let pass = report.pass();
    match config.output_format {
        Format::Pretty => {
            for s in &report.samples {
                writeln!(
                    out,
                    "{} n1={} n2={} phi={}: lhs {}, rhs {}, residual {:.3e}",
                    if s.pass { "PASS" } else { "FAIL" },
                    s.n1,
                    s.n2,
                    trim_float(s.phi),
                    complex_text(s.lhs_re, s.lhs_im),
                    complex_text(s.rhs_re, s.rhs_im),
                    s.residual
                )?;
            }
        }
        Format::Json => write_json(out, &json!({ "pass": pass, "samples": report.samples }))?,
        Format::Csv => {
            let mut w = csv_writer(out);
            for s in &report.samples {
                w.serialize(s)?;
            }
            w.flush()?;
        }
    }
    Ok(pass)
}
