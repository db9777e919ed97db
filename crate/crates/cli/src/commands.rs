use diskspace::compop::{boundedness_verdict, criterion_integral, SelfMap};
use diskspace::norms::{
    bloch_annulus_profile, bloch_norm, dirichlet_norm, hardy_norm, lipschitz_quotient_sup, little_bloch_limit, oscillation_profile,
    profile_quadrature,
};
use diskspace::quadrature::circle_mean;
use diskspace::theorems::{check_ids, log_spaced_radii, run_suite, sharpness_fit, VerifyConfig};
use diskspace::{BlochParams, DiskFunction, Error, FamilySpec, Majorant, MajorantSpec, NormValue, QuadratureConfig, SupSearchConfig, Verdict};
use serde_json::{json, Value};

use crate::output::{config_hash, points, Table};
use crate::{Cli, Command, Common, CompopArgs, Functional, NormArgs, Quantity, SweepArgs, VerifyArgs};

/// Exit status of a successful run; errors exit with 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Inconclusive,
    Fail,
    Error,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }
}

type Outcome = std::result::Result<Status, String>;

fn err(e: Error) -> String {
    e.to_string()
}

pub fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var("DISKSPACE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("DISKSPACE_THREADS must be a positive integer, got '{raw}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

struct Configs {
    quadrature: QuadratureConfig,
    search: SupSearchConfig,
}

impl Configs {
    fn from_common(c: &Common) -> std::result::Result<Self, String> {
        let d = QuadratureConfig::default();
        let quadrature = QuadratureConfig {
            angular_nodes: c.angular_nodes.unwrap_or(d.angular_nodes),
            radial_panels: c.radial_panels.unwrap_or(d.radial_panels),
            gauss_nodes: c.gauss_nodes.unwrap_or(d.gauss_nodes),
            schedule_depth: c.schedule_depth.unwrap_or(d.schedule_depth),
            abs_tol: c.abs_tol.unwrap_or(d.abs_tol),
            ..d
        };
        quadrature.validate().map_err(err)?;
        let s = SupSearchConfig::default();
        let search = SupSearchConfig {
            radii: c.search_radii.unwrap_or(s.radii),
            angles: c.search_angles.unwrap_or(s.angles),
            pair_samples: c.pair_samples.unwrap_or(s.pair_samples),
            seed: c.seed.unwrap_or(s.seed),
            ..s
        };
        search.validate().map_err(err)?;
        Ok(Configs { quadrature, search })
    }

    fn verify(&self) -> VerifyConfig {
        VerifyConfig {
            quadrature: self.quadrature.clone(),
            search: self.search.clone(),
            ..VerifyConfig::default()
        }
    }

    fn canonical(&self, command: &str, args: Value) -> Value {
        json!({
            "command": command,
            "args": args,
            "quadrature": serde_json::to_value(&self.quadrature).expect("serializable"),
            "search": serde_json::to_value(&self.search).expect("serializable"),
        })
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let cfg = Configs::from_common(&cli.common)?;
    let out = cli.common.output.as_deref();
    let (table, status) = match &cli.command {
        Command::Norm(a) => norm(a, &cfg)?,
        Command::Verify(a) if a.list => {
            let mut text = check_ids().join("\n");
            text.push('\n');
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), text.as_bytes());
            return Ok(Status::Ok);
        }
        Command::Verify(a) => verify(a, &cfg)?,
        Command::Compop(a) => compop(a, &cfg)?,
        Command::Sweep(a) => sweep(a, &cfg)?,
    };
    table.write(out).map_err(|e| format!("cannot write output: {e}"))?;
    Ok(status)
}

/// A function spec as JSON, or the bare name of a parameterless family.
fn parse_function(raw: &str) -> std::result::Result<(DiskFunction, Value), String> {
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        json!({ "family": raw.trim() }).to_string()
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("malformed function spec: {e}"))?;
    let f = FamilySpec::from_json(&text).map_err(err)?;
    Ok((f, value))
}

fn parse_majorant(raw: &str) -> std::result::Result<(Majorant, Value), String> {
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        json!({ "kind": raw.trim() }).to_string()
    };
    let spec: MajorantSpec = serde_json::from_str(&text).map_err(|e| format!("malformed majorant spec: {e}"))?;
    let w = spec.build().map_err(err)?;
    Ok((w, serde_json::to_value(&spec).expect("serializable")))
}

fn parse_p(raw: &str) -> std::result::Result<f64, String> {
    match raw.trim() {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        s => s.parse::<f64>().map_err(|_| format!("p must be a number or 'inf', got '{s}'")),
    }
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        p.to_string()
    }
}

fn norm(a: &NormArgs, cfg: &Configs) -> std::result::Result<(Table, Status), String> {
    let (f, fspec) = parse_function(&a.function)?;
    let (w, wspec) = parse_majorant(&a.majorant)?;
    let p = parse_p(&a.p)?;
    let name = match a.functional {
        Functional::Hardy => "hardy",
        Functional::Bloch => "bloch",
        Functional::LittleBloch => "little-bloch",
        Functional::Dirichlet => "dirichlet",
        Functional::Lipschitz => "lipschitz",
        Functional::Oscillation => "oscillation",
    };
    let hash = config_hash(&cfg.canonical(
        "norm",
        json!({
            "functional": name, "function": fspec, "majorant": wspec, "p": fmt_p(p),
            "alpha": a.alpha, "beta": a.beta, "s": a.s, "gamma": a.gamma, "mu": a.mu,
        }),
    ));
    let (q, s) = (&cfg.quadrature, &cfg.search);
    let mut table = Table::new(&["functional", "value", "verdict", "attainedAt", "errorEstimate", "configHash"]);
    let nv: NormValue = match a.functional {
        Functional::Hardy => hardy_norm(&f, p, s, q),
        Functional::Bloch => BlochParams::new(p, a.alpha, a.beta).and_then(|bp| bloch_norm(&f, &bp, &w, s, q)),
        Functional::Dirichlet => dirichlet_norm(&f, a.gamma, a.mu, q),
        Functional::Lipschitz => lipschitz_quotient_sup(&f, &w, a.s, a.alpha, s),
        Functional::Oscillation => oscillation_profile(&f, &w, a.alpha, s, &profile_quadrature()),
        Functional::LittleBloch => {
            let bp = BlochParams::new(p, a.alpha, a.beta).map_err(err)?;
            let r = little_bloch_limit(&f, &bp, &w, s).map_err(err)?;
            let member = if r.passed() { "Member" } else { "NotMember" };
            eprintln!("{name}: {member}; {}", r.detail);
            table.push(vec![name.into(), r.value.to_string(), member.into(), String::new(), r.error_estimate.to_string(), hash]);
            return Ok((table, Status::Ok));
        }
    }
    .map_err(err)?;
    eprintln!("{name} = {} ({})", nv.value, nv.verdict.label());
    table.push(vec![
        name.into(),
        nv.value.to_string(),
        nv.verdict.label(),
        points(&nv.attained_at),
        nv.error_estimate.to_string(),
        hash,
    ]);
    Ok((table, Status::Ok))
}

fn verify(a: &VerifyArgs, cfg: &Configs) -> std::result::Result<(Table, Status), String> {
    let id = (a.suite != "all").then_some(a.suite.as_str());
    let vcfg = cfg.verify();
    let hash = config_hash(&cfg.canonical("verify", json!({ "suite": a.suite })));
    let results = run_suite(id, &vcfg).map_err(err)?;
    let mut table = Table::new(&["theoremId", "verdict", "maxViolation", "worstSample", "configHash"]);
    let mut status = Status::Ok;
    for (id, res) in results {
        match res {
            Ok(rep) => {
                status = status.max(match rep.verdict {
                    Verdict::Pass => Status::Ok,
                    Verdict::Fail => Status::Fail,
                    Verdict::Inconclusive(_) => Status::Inconclusive,
                });
                let worst = rep
                    .worst
                    .map(|w| format!("at={};lhs={};rhs={}", crate::output::point(w.at), w.lhs, w.rhs))
                    .unwrap_or_default();
                eprintln!("{id}: {} {}", rep.verdict.label(), rep.notes.join("; "));
                table.push(vec![id, rep.verdict.label().into(), rep.max_violation.to_string(), worst, hash.clone()]);
            }
            Err(e) => {
                status = Status::Error;
                eprintln!("{id}: error: {e}");
                table.push(vec![id, "Error".into(), String::new(), e.to_string(), hash.clone()]);
            }
        }
    }
    Ok((table, status))
}

fn compop(a: &CompopArgs, cfg: &Configs) -> std::result::Result<(Table, Status), String> {
    let (phi, spec) = parse_function(&a.phi)?;
    let hash = config_hash(&cfg.canonical("compop", json!({ "phi": spec, "alpha": a.alpha, "beta": a.beta })));
    let map = SelfMap::new(phi, &cfg.search).map_err(err)?;
    let (integral, agrees) = match boundedness_verdict(&map, a.alpha, a.beta, &cfg.quadrature) {
        Ok(v) => {
            eprintln!("{}", v.report.detail);
            (v.integral, v.battery_agrees.to_string())
        }
        Err(Error::BatteryUnavailable { .. }) => {
            let i = criterion_integral(&map, a.alpha, a.beta, &cfg.quadrature).map_err(err)?;
            eprintln!("no test battery for (alpha, beta) = ({}, {}); criterion integral only", a.alpha, a.beta);
            (i, "unavailable".into())
        }
        Err(e) => return Err(err(e)),
    };
    let verdict = if integral.converged() { "Bounded" } else { "Unbounded" };
    let mut table = Table::new(&["alpha", "beta", "integral", "verdict", "errorEstimate", "batteryAgrees", "configHash"]);
    table.push(vec![
        a.alpha.to_string(),
        a.beta.to_string(),
        integral.value.to_string(),
        verdict.into(),
        integral.error_estimate.to_string(),
        agrees,
        hash,
    ]);
    Ok((table, Status::Ok))
}

fn sweep(a: &SweepArgs, cfg: &Configs) -> std::result::Result<(Table, Status), String> {
    if !(a.from > 0.0 && a.from < a.to && a.to < 1.0) || a.points < 2 {
        return Err(format!(
            "sweep needs 0 < from < to < 1 and at least 2 points, got from={}, to={}, points={}",
            a.from, a.to, a.points
        ));
    }
    let radii = log_spaced_radii(a.from, a.to, a.points);
    let need_function = || {
        a.function
            .as_deref()
            .ok_or_else(|| "this sweep needs --function".to_string())
            .and_then(parse_function)
    };
    let (rows, args): (Vec<(f64, f64)>, Value) = match a.quantity {
        Quantity::Mean => {
            let (f, spec) = need_function()?;
            let p = parse_p(&a.p)?;
            let rows = radii
                .iter()
                .map(|&r| circle_mean(&f, r, p, &cfg.quadrature).map(|m| (r, m)))
                .collect::<diskspace::Result<_>>()
                .map_err(err)?;
            (rows, json!({ "quantity": "mean", "function": spec, "p": fmt_p(p) }))
        }
        Quantity::Sharpness => {
            let fit = sharpness_fit(a.terms, &radii).map_err(err)?;
            eprintln!(
                "ratio band {:.6}, growth exponent {:.6} (whole-grid slope {:.6})",
                fit.band, fit.exponent, fit.full_range_slope
            );
            (fit.points.iter().map(|p| (p.0, p.2)).collect(), json!({ "quantity": "sharpness", "terms": a.terms }))
        }
        Quantity::BlochProfile => {
            let (f, spec) = need_function()?;
            let (w, wspec) = parse_majorant(&a.majorant)?;
            let bp = BlochParams::sup(a.alpha, a.beta).map_err(err)?;
            let rows = bloch_annulus_profile(&f, &bp, &w, &cfg.search).map_err(err)?;
            (
                rows,
                json!({ "quantity": "bloch-profile", "function": spec, "majorant": wspec, "alpha": a.alpha, "beta": a.beta }),
            )
        }
    };
    let grid = json!({ "from": a.from, "to": a.to, "points": a.points });
    let hash = config_hash(&cfg.canonical("sweep", json!({ "grid": grid, "sweep": args })));
    let mut table = Table::new(&["r", "value", "configHash"]);
    for (r, v) in rows {
        table.push(vec![r.to_string(), v.to_string(), hash.clone()]);
    }
    Ok((table, Status::Ok))
}
