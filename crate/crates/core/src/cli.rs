//! The `sphere-distort` command line.
//!
//! Every output starts with `#` lines holding the command that reproduces
//! it. Exit codes: 0 success, 1 a checked inequality failed, 2 bad input,
//! 3 a search budget ran out.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::certify::{self, k_search, scan_infimum, KSearch, ScanSpec, Target};
use crate::constants::{self, B0, R0};
use crate::distortion::Family;
use crate::error::{Error, Result};
use crate::oracle::run_oracle;
use crate::surface::{self, alpha_q_check, Variant};
use crate::trig::chd;

#[derive(Debug, Parser)]
#[command(
    name = "sphere-distort",
    version,
    about = "Angle distortion of spherical and plane triangles"
)]
pub struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "SPHERE_DISTORT_THREADS")]
    pub threads: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Print angles in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Named constants and radius bounds.
    Constants,
    /// Scan D(F, Δ) over the (R, φ, t) chart and write the lowest samples as CSV.
    Scan(ScanArgs),
    /// Find k with a positive margin over the threshold below a radius cap.
    Certify(CertifyArgs),
    /// Report on a triangle complex: builtin name or fixture path.
    Surface(SurfaceArgs),
    /// Check closed forms against measurements on embedded triangles.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 64)]
    pub n_r: usize,
    #[arg(long, default_value_t = 128)]
    pub n_phi: usize,
    #[arg(long, default_value_t = 128)]
    pub n_t: usize,
    /// Random parameter points added to the grid.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
    /// Smallest φ and t − φ on the grid.
    #[arg(long, default_value_t = 1e-6)]
    pub floor: f64,
    /// Grid points refined by the simplex search.
    #[arg(long, default_value_t = 100)]
    pub refine: usize,
}

impl GridArgs {
    fn spec(&self, family: Family, r_max: f64, seed: u64) -> ScanSpec {
        ScanSpec {
            n_r: self.n_r,
            n_phi: self.n_phi,
            n_t: self.n_t,
            random_samples: self.samples,
            floor: self.floor,
            refine_starts: self.refine,
            seed,
            ..ScanSpec::new(family, r_max)
        }
    }

    fn describe(&self) -> String {
        format!(
            "--n-r {} --n-phi {} --n-t {} --samples {} --floor {} --refine {}",
            self.n_r, self.n_phi, self.n_t, self.samples, self.floor, self.refine
        )
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// chd, finf, fk, fkstar, identity.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub k: Option<f64>,
    /// Radius cap, below π/2.
    #[arg(long)]
    pub rmax: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// fk (threshold 1/2, radii below b₀ − ε) or fkstar (1/3, below π/2 − ε).
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub delta_floor: f64,
    #[arg(long, default_value_t = 65536.0)]
    pub k_cap: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Builtin name or path to a fixture file.
    pub complex: String,
    /// Transform every triangle by this family.
    #[arg(long)]
    pub transform: Option<String>,
    #[arg(long)]
    pub k: Option<f64>,
    /// ε for the radius caps of the covering hypotheses.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Cone-angle check `α q > 1` on the transformed complex.
    #[arg(long)]
    pub q: Option<f64>,
    /// Gauss–Bonnet tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

/// Output text and exit status of one command.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn fmt_angle(x: f64, degrees: bool) -> String {
    if degrees {
        format!("{}", x.to_degrees())
    } else {
        format!("{x}")
    }
}

fn header(out: &mut String, cmd: &str, seed: u64, degrees: bool) {
    let _ = writeln!(out, "# sphere-distort {}", env!("CARGO_PKG_VERSION"));
    let deg = if degrees { " --degrees" } else { "" };
    let _ = writeln!(out, "# command: sphere-distort --seed {seed}{deg} {cmd}");
}

pub fn cmd_constants(cli: &Cli) -> Outcome {
    let mut out = String::new();
    header(&mut out, "constants", cli.seed, cli.degrees);
    let _ = writeln!(out, "name,value,degrees_minutes");
    let mut row = |name: &str, v: f64| {
        let (d, m) = constants::degrees_minutes(v);
        let _ = writeln!(out, "{name},{},{d}°{m:02}′", fmt_angle(v, cli.degrees));
    };
    row("b0", B0);
    row("b0_arctan_sqrt8", constants::b0_arctan());
    row("b0_arccos_third", constants::b0_arccos());
    row("R0", R0);
    for m in [1, 2, 3] {
        row(&format!("multiplicity_m{m}"), constants::multiplicity_bound(Some(m)));
    }
    row("multiplicity_inf", constants::multiplicity_bound(None));
    for q in [1.5, 2.0, 2.5, 3.0] {
        row(
            &format!("equilateral_q{q}"),
            constants::equilateral_radius_multiple(q).expect("q in range"),
        );
    }
    let _ = writeln!(out, "chd_b0,{},", chd(B0).expect("b0 < π"));
    Outcome { text: out, code: 0 }
}

fn family(name: &str, k: Option<f64>) -> Result<Family> {
    Family::parse(name, k)
}

pub fn cmd_scan(cli: &Cli, a: &ScanArgs) -> Result<Outcome> {
    let f = family(&a.family, a.k)?;
    let spec = a.grid.spec(f, a.rmax, cli.seed);
    let res = scan_infimum(&spec)?;
    let mut out = String::new();
    let k = a.k.map(|k| format!(" --k {k}")).unwrap_or_default();
    let cmd = format!(
        "scan --family {}{k} --rmax {} {}",
        a.family,
        a.rmax,
        a.grid.describe()
    );
    header(&mut out, &cmd, cli.seed, cli.degrees);
    let _ = writeln!(out, "# evaluated: {}", res.evaluated);
    let _ = writeln!(out, "# infimum: {}", res.infimum);
    let _ = writeln!(out, "# margin over {}: {}", res.threshold, res.margin);
    let cases: Vec<String> = res
        .case_min
        .iter()
        .map(|c| c.map_or("-".into(), |x| x.to_string()))
        .collect();
    let _ = writeln!(out, "# case minima: {}", cases.join(" "));
    if let Some(r) = res.near_flat_max {
        let _ = writeln!(out, "# max |γ − π + α + β|/(α + β)² in case 4: {r}");
    }
    let mut buf = Vec::new();
    certify::write_scan_csv(&mut buf, &res, cli.degrees)?;
    out.push_str(&String::from_utf8(buf).expect("CSV is UTF-8"));
    Ok(Outcome { text: out, code: 0 })
}

pub fn cmd_certify(cli: &Cli, a: &CertifyArgs) -> Result<Outcome> {
    let target = Target::parse(&a.family)?;
    let mut cfg = KSearch::new(target, a.eps);
    cfg.delta_floor = a.delta_floor;
    cfg.k_cap = a.k_cap;
    cfg.grid = a.grid.spec(target.family(1.0), 1.0, cli.seed);
    let res = k_search(&cfg)?;
    let mut out = String::new();
    let cmd = format!(
        "certify --family {} --eps {} --delta-floor {} --k-cap {} {}",
        a.family,
        a.eps,
        a.delta_floor,
        a.k_cap,
        a.grid.describe()
    );
    header(&mut out, &cmd, cli.seed, cli.degrees);
    for (k, m) in &res.tried {
        let _ = writeln!(out, "# k = {k}: margin {m}");
    }
    if let Some(c) = &res.companion {
        let _ = writeln!(
            out,
            "# sqrt-chord limit: infimum {} at R = {}",
            c.infimum,
            c.argmin.r()
        );
    }
    let _ = writeln!(out, "epsilon,family,k,delta_emp");
    let code = match &res.certified {
        Some(c) => {
            let _ = writeln!(out, "{},{},{},{}", a.eps, target.name(), c.k, c.delta_emp);
            0
        }
        None => {
            let _ = writeln!(out, "{},{},,", a.eps, target.name());
            3
        }
    };
    let code = if res.violation() { 1 } else { code };
    Ok(Outcome { text: out, code })
}

pub fn cmd_surface(cli: &Cli, a: &SurfaceArgs) -> Result<Outcome> {
    let c = if surface::BUILTIN_NAMES.contains(&a.complex.as_str()) {
        surface::builtin(&a.complex)?
    } else {
        let text = std::fs::read_to_string(&a.complex)
            .map_err(|e| Error::Input(format!("{}: {e}", a.complex)))?;
        surface::parse_fixture(&text)?
    };
    let mut out = String::new();
    let mut cmd = format!("surface {} --eps {} --tol {}", a.complex, a.eps, a.tol);
    if let Some(t) = &a.transform {
        let _ = write!(cmd, " --transform {t}");
    }
    if let Some(k) = a.k {
        let _ = write!(cmd, " --k {k}");
    }
    if let Some(q) = a.q {
        let _ = write!(cmd, " --q {q}");
    }
    header(&mut out, &cmd, cli.seed, cli.degrees);
    let mut code = 0;
    let _ = writeln!(out, "geometry: {}", c.geometry().name());
    let _ = writeln!(
        out,
        "V = {}, E = {}, F = {}, chi = {}",
        c.num_vertices(),
        c.num_edges(),
        c.num_faces(),
        c.euler_characteristic()
    );
    let angles = c.total_angles();
    write_angles(&mut out, "vertex angles", &angles, cli.degrees);
    if c.is_closed() {
        let gb = c.gauss_bonnet()?;
        let _ = writeln!(out, "gauss_bonnet_residual: {:e}", gb.residual());
        if gb.residual() > a.tol {
            code = 1;
        }
    } else {
        let _ = writeln!(out, "gauss_bonnet: complex has free sides");
    }
    if c.geometry() == surface::Geometry::Spherical {
        for v in [Variant::I, Variant::II] {
            let h = c.check_hypotheses(a.eps, v)?;
            let verdict = if h.passes() { "pass" } else { "fail" };
            let _ = write!(out, "hypotheses {} (eps = {}): {verdict}", v.name(), a.eps);
            if !h.closed {
                let _ = write!(out, "; not closed");
            }
            if let Some((t, r)) = h.radius_violation {
                let _ = write!(out, "; triangle {t} has radius {r}");
            }
            if let Some((vx, t)) = h.angle_violation {
                let _ = write!(out, "; vertex {vx} has angle {}", fmt_angle(t, cli.degrees));
            }
            let _ = writeln!(out);
        }
    }
    if let Some(name) = &a.transform {
        let f = family(name, a.k)?;
        let (flat, rep) = c.transform(f)?;
        write_angles(
            &mut out,
            &format!("transformed by {f}"),
            &rep.after,
            cli.degrees,
        );
        if let Some(m) = rep.min_ratio() {
            let _ = writeln!(out, "min transformed/original: {m}");
        }
        if let Some((v, e)) = rep.after.min_excess() {
            let _ = writeln!(
                out,
                "min transformed excess: {} at vertex {v}",
                fmt_angle(e, cli.degrees)
            );
        }
        if flat.is_closed() {
            let gb = flat.gauss_bonnet()?;
            let _ = writeln!(
                out,
                "transformed_gauss_bonnet_residual: {:e}",
                gb.residual()
            );
            if gb.residual() > a.tol {
                code = 1;
            }
        }
        if let Some(q) = a.q {
            let r = alpha_q_check(&rep.after, q)?;
            let worst = r
                .worst
                .map_or("-".into(), |(v, x)| format!("{x} at vertex {v}"));
            let _ = writeln!(
                out,
                "alpha_q (q = {q}): {} (min {worst})",
                if r.passes { "pass" } else { "fail" }
            );
        }
    }
    Ok(Outcome { text: out, code })
}

fn write_angles(out: &mut String, title: &str, a: &surface::VertexAngles, degrees: bool) {
    let _ = writeln!(out, "{title}:");
    let _ = writeln!(out, "vertex,total,total_over_pi,excess,interior");
    for v in 0..a.totals.len() {
        let _ = writeln!(
            out,
            "{v},{},{},{},{}",
            fmt_angle(a.totals[v], degrees),
            a.totals[v] / PI,
            fmt_angle(a.excess(v), degrees),
            a.interior[v]
        );
    }
}

pub fn cmd_oracle(cli: &Cli, a: &OracleArgs) -> Result<Outcome> {
    if a.samples == 0 {
        return Err(Error::Input("oracle needs at least one sample".into()));
    }
    let rep = run_oracle(a.samples, cli.seed);
    let mut out = String::new();
    header(
        &mut out,
        &format!("oracle --samples {} --tol {}", a.samples, a.tol),
        cli.seed,
        cli.degrees,
    );
    let _ = writeln!(out, "check,samples,max_residual,status");
    for r in &rep.rows {
        let status = if r.max <= a.tol { "ok" } else { "FAIL" };
        let _ = writeln!(out, "{},{},{:e},{status}", r.name, r.samples, r.max);
    }
    Ok(Outcome {
        text: out,
        code: if rep.passes(a.tol) { 0 } else { 1 },
    })
}

/// Run a parsed command on the configured thread pool.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Input("--threads must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Constants => Ok(cmd_constants(cli)),
        Command::Scan(a) => cmd_scan(cli, a),
        Command::Certify(a) => cmd_certify(cli, a),
        Command::Surface(a) => cmd_surface(cli, a),
        Command::Oracle(a) => cmd_oracle(cli, a),
    })
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &o.text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{}", o.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(o.code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
