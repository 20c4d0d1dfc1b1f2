//! Command-line surface for the tangent-squared well.
//!
//! Every subcommand emits one machine-readable table (CSV with a `#`
//! parameter-echo line, or JSON `{params, rows}`), is fully determined by
//! its flags, and produces byte-identical output on identical invocations.
//! Exit codes: 0 success, 2 flag/parameter validation, 3 numerical failure.
//! Errors go to stderr as single-line JSON.

mod table;

use clap::{Args, Parser, Subcommand};
use pt_spectra::oracle::refined_eigenvalues;
use pt_spectra::params::{lambda_of_v, reduce, PhysicalParams};
use pt_spectra::potential::{
    eval_exact, eval_harmonic, eval_near_wall, HarmonicOrder, NEAR_WALL_BAND,
};
use pt_spectra::spectrum::{energy_level, epsilon_n, h_omega};
use pt_spectra::thermo::observables;
use pt_spectra::wavefunction::Eigenfunction;
use pt_spectra::Error as LibError;
use rayon::prelude::*;
use std::io::Write;
use table::{Cell, Format, Table};

/// Relative truncation tolerance used for all thermal sums.
const THERMO_TOL: f64 = 1e-12;

#[derive(Debug)]
enum CliError {
    Validation(String),
    Numerics(String),
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::InvalidInput(m) | LibError::Domain(m) => CliError::Validation(m),
            LibError::Numerics(m) => CliError::Numerics(m),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pt-spectra",
    version,
    about = "Spectra, eigenfunctions, certification, and thermodynamics of the tangent-squared quantum well"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct PhysArgs {
    /// Particle mass (> 0)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    m: f64,
    /// Reduced Planck constant (> 0)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    hbar: f64,
    /// Well depth V0 (>= 0)
    #[arg(long = "V0", default_value_t = 0.0, allow_hyphen_values = true)]
    v0: f64,
    /// Well width L (> 0)
    #[arg(long = "L", default_value_t = 1.0, allow_hyphen_values = true)]
    l: f64,
}

impl PhysArgs {
    fn build(&self) -> Result<PhysicalParams, CliError> {
        Ok(PhysicalParams::new(self.m, self.hbar, self.v0, self.l)?)
    }

    fn echo(&self) -> Vec<(&'static str, Cell)> {
        vec![
            ("m", Cell::Float(self.m)),
            ("hbar", Cell::Float(self.hbar)),
            ("V0", Cell::Float(self.v0)),
            ("L", Cell::Float(self.l)),
        ]
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate the exact well and its core/wall expansions on an interior grid
    Potential {
        #[command(flatten)]
        phys: PhysArgs,
        /// Number of interior grid points
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Closed-form levels with their box and oscillator parts
    Spectrum {
        #[command(flatten)]
        phys: PhysArgs,
        /// Highest quantum number to emit (levels 0..=nmax)
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// One normalized eigenfunction on a reduced-coordinate grid
    Wavefunction {
        #[command(flatten)]
        phys: PhysArgs,
        /// Quantum number of the state
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Number of interior grid points
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Certify closed-form levels against the finite-difference solver
    Verify {
        /// Comma-separated list of dimensionless well strengths
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        v: Vec<f64>,
        /// Number of lowest levels per strength
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Coarse grid size (the fine grid doubles it)
        #[arg(long = "N", default_value_t = 2048)]
        n1: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Canonical thermodynamics at one temperature or over a sweep
    Thermo {
        #[command(flatten)]
        phys: PhysArgs,
        /// Single temperature (energy units, k_B = 1)
        #[arg(long = "T", allow_hyphen_values = true)]
        t: Option<f64>,
        /// Sweep as start:stop:scale with scale one of linear, logarithmic
        #[arg(long = "T-sweep")]
        t_sweep: Option<String>,
        /// Number of sweep points (>= 2, endpoints included)
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Convergence tables toward the hard-wall box and the oscillator
    Limits {
        /// Particle mass (> 0)
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        m: f64,
        /// Reduced Planck constant (> 0)
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hbar: f64,
        /// Spring constant held fixed along the oscillator approach
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        k: f64,
        /// Decades: strengths 10^(-2j) and 10^(+2j) for j = 1..=jmax
        #[arg(long, default_value_t = 4)]
        jmax: u32,
        /// Highest level tracked in the box table
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    if let Err(e) = init_threads() {
        report(&e);
        return 2;
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            report(&CliError::Validation(e.to_string()));
            return 2;
        }
    };
    match dispatch(cli.cmd) {
        Ok(rendered) => {
            let mut out = std::io::stdout();
            if out
                .write_all(rendered.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return 3;
            }
            0
        }
        Err(e @ CliError::Validation(_)) => {
            report(&e);
            2
        }
        Err(e @ CliError::Numerics(_)) => {
            report(&e);
            3
        }
    }
}

fn report(e: &CliError) {
    let (kind, msg) = match e {
        CliError::Validation(m) => ("validation", m),
        CliError::Numerics(m) => ("numerics", m),
    };
    let line = serde_json::json!({ "error": msg, "kind": kind });
    eprintln!("{line}");
}

/// Cap the global worker pool from PT_SPECTRA_THREADS when set.
fn init_threads() -> Result<(), CliError> {
    let Some(raw) = std::env::var_os("PT_SPECTRA_THREADS") else {
        return Ok(());
    };
    let parsed = raw
        .to_str()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let Some(n) = parsed else {
        return Err(CliError::Validation(format!(
            "PT_SPECTRA_THREADS must be a positive integer, got {raw:?}"
        )));
    };
    // Only fails if a pool already exists, which cannot happen this early.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn dispatch(cmd: Cmd) -> Result<String, CliError> {
    let (table, format) = match cmd {
        Cmd::Potential {
            phys,
            points,
            format,
        } => (potential(phys, points)?, format),
        Cmd::Spectrum { phys, nmax, format } => (spectrum(phys, nmax)?, format),
        Cmd::Wavefunction {
            phys,
            n,
            points,
            format,
        } => (wavefunction(phys, n, points)?, format),
        Cmd::Verify {
            v,
            levels,
            n1,
            format,
        } => (verify(v, levels, n1)?, format),
        Cmd::Thermo {
            phys,
            t,
            t_sweep,
            points,
            format,
        } => (thermo(phys, t, t_sweep, points)?, format),
        Cmd::Limits {
            m,
            hbar,
            k,
            jmax,
            nmax,
            format,
        } => (limits(m, hbar, k, jmax, nmax)?, format),
    };
    Ok(table.render(format))
}

fn validate_points(points: usize) -> Result<(), CliError> {
    if !(1..=10_000_000).contains(&points) {
        return Err(CliError::Validation(format!(
            "points must be in 1..=10000000, got {points}"
        )));
    }
    Ok(())
}

/// Strictly interior uniform grid: fraction (i+1)/(points+1) of the span.
fn interior(i: usize, points: usize) -> f64 {
    (i + 1) as f64 / (points as f64 + 1.0)
}

fn potential(phys: PhysArgs, points: usize) -> Result<Table, CliError> {
    validate_points(points)?;
    let p = phys.build()?;
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let x = p.length * (interior(i, points) - 0.5);
        let near_wall = if x.abs() > NEAR_WALL_BAND * p.length {
            Cell::Float(eval_near_wall(x, &p)?)
        } else {
            Cell::Null
        };
        rows.push(vec![
            Cell::Float(x),
            Cell::Float(eval_exact(x, &p)?),
            Cell::Float(eval_harmonic(x, &p, HarmonicOrder::Quadratic)?),
            Cell::Float(eval_harmonic(x, &p, HarmonicOrder::Quartic)?),
            near_wall,
        ]);
    }
    let mut params = phys.echo();
    params.push(("points", Cell::Int(points as i64)));
    Ok(Table {
        command: "potential",
        params,
        columns: vec!["x", "v_exact", "v_harmonic2", "v_harmonic4", "v_near_wall"],
        rows,
    })
}

fn spectrum(phys: PhysArgs, nmax: u32) -> Result<Table, CliError> {
    let p = phys.build()?;
    let d = reduce(&p)?;
    let mut rows = Vec::with_capacity(nmax as usize + 1);
    for n in 0..=nmax {
        let lvl = energy_level(n, &p)?;
        rows.push(vec![
            Cell::Int(n as i64),
            Cell::Float(lvl.epsilon),
            Cell::Float(lvl.e),
            Cell::Float(lvl.e_box_part),
            Cell::Float(lvl.e_osc_part),
        ]);
    }
    let mut params = phys.echo();
    params.extend([
        ("nmax", Cell::Int(nmax as i64)),
        ("w", Cell::Float(d.w)),
        ("v", Cell::Float(d.v)),
        ("lambda", Cell::Float(d.lambda)),
        ("h_omega", Cell::Float(h_omega(&p)?)),
    ]);
    Ok(Table {
        command: "spectrum",
        params,
        columns: vec!["n", "epsilon", "e", "e_box_part", "e_osc_part"],
        rows,
    })
}

fn wavefunction(phys: PhysArgs, n: u32, points: usize) -> Result<Table, CliError> {
    validate_points(points)?;
    let p = phys.build()?;
    let d = reduce(&p)?;
    let state = Eigenfunction::new(n, d.lambda)?;
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let xi = std::f64::consts::PI * (interior(i, points) - 0.5);
        rows.push(vec![Cell::Float(xi), Cell::Float(state.eval(xi)?)]);
    }
    let mut params = phys.echo();
    params.extend([
        ("n", Cell::Int(n as i64)),
        ("points", Cell::Int(points as i64)),
        ("lambda", Cell::Float(d.lambda)),
        ("c_n", Cell::Float(state.norm)),
    ]);
    Ok(Table {
        command: "wavefunction",
        params,
        columns: vec!["xi", "psi"],
        rows,
    })
}

fn verify(v_list: Vec<f64>, levels: usize, n1: usize) -> Result<Table, CliError> {
    let per_strength: Vec<Vec<Vec<Cell>>> = v_list
        .par_iter()
        .map(|&v| -> Result<Vec<Vec<Cell>>, CliError> {
            let lambda = lambda_of_v(v)?;
            let refined = refined_eigenvalues(v, levels, n1)?;
            Ok(refined
                .iter()
                .enumerate()
                .map(|(n, r)| {
                    let closed = epsilon_n(n as u32, lambda).unwrap_or(f64::NAN);
                    let rel = (r.refined - closed).abs() / closed;
                    vec![
                        Cell::Float(v),
                        Cell::Float(lambda),
                        Cell::Int(n as i64),
                        Cell::Float(closed),
                        Cell::Float(r.refined),
                        Cell::Float(rel),
                    ]
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;
    Ok(Table {
        command: "verify",
        params: vec![
            ("levels", Cell::Int(levels as i64)),
            ("N1", Cell::Int(n1 as i64)),
            ("N2", Cell::Int(2 * n1 as i64)),
        ],
        columns: vec!["v", "lambda", "n", "eps_closed", "eps_refined", "rel_err"],
        rows: per_strength.into_iter().flatten().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scale {
    Linear,
    Logarithmic,
}

/// Parse `start:stop:scale`, scale in {linear, logarithmic}.
fn parse_sweep(spec: &str) -> Result<(f64, f64, Scale), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = |why: &str| {
        CliError::Validation(format!(
            "T-sweep must be start:stop:scale with scale linear|logarithmic ({why}), got {spec:?}"
        ))
    };
    if parts.len() != 3 {
        return Err(bad("wrong number of fields"));
    }
    let start: f64 = parts[0].parse().map_err(|_| bad("start is not a number"))?;
    let stop: f64 = parts[1].parse().map_err(|_| bad("stop is not a number"))?;
    let scale = match parts[2] {
        "linear" => Scale::Linear,
        "logarithmic" => Scale::Logarithmic,
        _ => return Err(bad("unknown scale")),
    };
    if !(start.is_finite() && stop.is_finite()) || start <= 0.0 || stop <= start {
        return Err(bad("need finite 0 < start < stop"));
    }
    Ok((start, stop, scale))
}

/// Sweep points with exact endpoints.
fn sweep_values(start: f64, stop: f64, scale: Scale, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            if i == 0 {
                start
            } else if i == points - 1 {
                stop
            } else {
                let frac = i as f64 / (points as f64 - 1.0);
                match scale {
                    Scale::Linear => start + (stop - start) * frac,
                    Scale::Logarithmic => (start.ln() + (stop.ln() - start.ln()) * frac).exp(),
                }
            }
        })
        .collect()
}

fn thermo(
    phys: PhysArgs,
    t: Option<f64>,
    t_sweep: Option<String>,
    points: Option<usize>,
) -> Result<Table, CliError> {
    let p = phys.build()?;
    let mut params = phys.echo();
    let temperatures = match (t, t_sweep) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "pass either --T or --T-sweep, not both".to_string(),
            ))
        }
        (None, None) => {
            return Err(CliError::Validation(
                "one of --T or --T-sweep is required".to_string(),
            ))
        }
        (Some(t), None) => {
            if points.is_some() {
                return Err(CliError::Validation(
                    "--points only applies to --T-sweep".to_string(),
                ));
            }
            params.push(("T", Cell::Float(t)));
            vec![t]
        }
        (None, Some(spec)) => {
            let (start, stop, scale) = parse_sweep(&spec)?;
            let Some(pts) = points else {
                return Err(CliError::Validation(
                    "--T-sweep requires --points".to_string(),
                ));
            };
            if !(2..=1_000_000).contains(&pts) {
                return Err(CliError::Validation(format!(
                    "points must be in 2..=1000000 for a sweep, got {pts}"
                )));
            }
            params.extend([
                ("T_start", Cell::Float(start)),
                ("T_stop", Cell::Float(stop)),
                (
                    "scale",
                    Cell::Str(
                        match scale {
                            Scale::Linear => "linear",
                            Scale::Logarithmic => "logarithmic",
                        }
                        .to_string(),
                    ),
                ),
                ("points", Cell::Int(pts as i64)),
            ]);
            sweep_values(start, stop, scale, pts)
        }
    };
    params.push(("tol", Cell::Float(THERMO_TOL)));
    let rows: Vec<Vec<Cell>> = temperatures
        .par_iter()
        .map(|&temp| -> Result<Vec<Cell>, CliError> {
            let st = observables(temp, &p, THERMO_TOL)?;
            Ok(vec![
                Cell::Float(st.t),
                Cell::Float(st.z),
                Cell::Float(st.f),
                Cell::Float(st.u),
                Cell::Float(st.c_v),
                Cell::Float(st.pressure),
            ])
        })
        .collect::<Result<_, _>>()?;
    Ok(Table {
        command: "thermo",
        params,
        columns: vec!["t", "z", "f", "u", "c_v", "pressure"],
        rows,
    })
}

fn limits(m: f64, hbar: f64, k: f64, jmax: u32, nmax: u32) -> Result<Table, CliError> {
    if !(1..=100).contains(&jmax) {
        return Err(CliError::Validation(format!(
            "jmax must be in 1..=100, got {jmax}"
        )));
    }
    if nmax > 1000 {
        return Err(CliError::Validation(format!(
            "nmax must be at most 1000, got {nmax}"
        )));
    }
    if !k.is_finite() || k <= 0.0 {
        return Err(CliError::Validation(format!(
            "k must be finite and positive, got {k}"
        )));
    }
    let pi = std::f64::consts::PI;
    let mut rows = Vec::new();
    // Box approach: v -> 0 from above, levels slide onto (n+1)^2. The
    // deviation is evaluated in the factored form
    // (lambda-1)(2(n+1) + (lambda-1)), exactly epsilon_n - (n+1)^2.
    for j in 1..=jmax {
        let v = 10f64.powi(-2 * j as i32);
        let lambda = lambda_of_v(v)?;
        let dl = lambda - 1.0;
        for n in 0..=nmax {
            let nf = n as f64;
            let eps = epsilon_n(n, lambda)?;
            let limit = (nf + 1.0) * (nf + 1.0);
            let rel_dev = dl * (2.0 * (nf + 1.0) + dl) / limit;
            rows.push(vec![
                Cell::Str("box".to_string()),
                Cell::Float(v),
                Cell::Int(n as i64),
                Cell::Float(eps),
                Cell::Float(limit),
                Cell::Float(rel_dev),
            ]);
        }
    }
    // Oscillator approach: grow v at fixed spring constant k = 2 V0 alpha^2
    // by widening the well; the level quantum approaches hbar sqrt(k/m).
    let spring = hbar * (k / m).sqrt();
    for j in 1..=jmax {
        let v = 10f64.powi(2 * j as i32);
        let l = (v * pi.powi(4) * hbar * hbar / (k * m)).powf(0.25);
        let v0 = k * l * l / (2.0 * pi * pi);
        let p = PhysicalParams::new(m, hbar, v0, l)?;
        let ho = h_omega(&p)?;
        rows.push(vec![
            Cell::Str("bloch".to_string()),
            Cell::Float(v),
            Cell::Null,
            Cell::Float(ho),
            Cell::Float(spring),
            Cell::Float((ho - spring) / spring),
        ]);
    }
    Ok(Table {
        command: "limits",
        params: vec![
            ("m", Cell::Float(m)),
            ("hbar", Cell::Float(hbar)),
            ("k", Cell::Float(k)),
            ("jmax", Cell::Int(jmax as i64)),
            ("nmax", Cell::Int(nmax as i64)),
        ],
        columns: vec!["regime", "v", "n", "value", "limit", "rel_dev"],
        rows,
    })
}
