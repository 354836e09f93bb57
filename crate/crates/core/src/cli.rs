//! Command-line front end. Every subcommand writes one JSON document (or,
//! for `demo`, a short text report) to stdout or to `--out`; files written
//! with `--out` get a `<out>.manifest.json` sidecar describing the run.
//!
//! Exit status: 0 on success, 1 on a domain error (with
//! `{"error": {"code", "message"}}` on stderr), 2 on a usage error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::enumerate::{gadget_genfun, gadget_genfun_between, VertexQuery};
use crate::error::{Error, Result};
use crate::gadget::{complete_gadget, cycle_graph, generalized_fisher, path_graph, validate_gadget, Gadget};
use crate::graph::{Colour, FinitePatch, VertexId};
use crate::lattice::{generate_lattice, TypeVector};
use crate::poly::CountPolynomial;
use crate::relations::{
    fixed_point, iterate_mu, predict_mu_bipartite, predict_mu_transformed, verify_bipartite_substitution,
    verify_substitution, MuValue,
};
use crate::transform::{transform_all, transform_colour_class};

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "SAWGADGET_THREADS";

#[derive(Parser, Debug)]
#[command(name = "sawgadget", version, about = "Self-avoiding walks under gadget substitution")]
struct Cli {
    /// Worker threads for enumeration (default: SAWGADGET_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build lattice patches.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Construct, inspect and count gadgets.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Count self-avoiding walks from a vertex.
    Enumerate {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        origin: Option<VertexId>,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        moments: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Replace vertices of a patch by gadget copies.
    Transform {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long, value_enum)]
        class: Option<Class>,
        #[arg(long)]
        gadget2: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Predict the connective constant of a transformed lattice.
    Predict {
        #[arg(long)]
        mu_expr: String,
        /// Gadget JSON or two-port series JSON (`{"coeffs": [...]}`).
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long, value_enum)]
        bipartite: Option<Bipartite>,
        #[arg(long)]
        gadget2: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check the substitution identity on a patch.
    Verify {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long)]
        nmax: usize,
        /// Transform one colour class (`black`) or both.
        #[arg(long, value_enum)]
        class: Option<VerifyClass>,
        #[arg(long)]
        gadget2: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fixed point of a two-port series in (0, 1].
    Fixedpoint {
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Iterate x_k = g^{-1}(x_{k-1}).
    Iterate {
        /// Starting point; arithmetic expressions are accepted.
        #[arg(long)]
        x0: String,
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// End-to-end worked examples.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Patch of a cubic lattice around a vertex.
    Build {
        /// Type-vector, e.g. `6,6,6` or `4,4,inf`.
        #[arg(long = "type")]
        type_vector: String,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetCmd {
    /// Validate port transitivity.
    Check {
        #[arg(long)]
        gadget: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Complete graph K_n with ports 0, 1, 2.
    Kn {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Three copies of a two-terminal graph glued in a ring.
    Gfisher {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        v1: Option<VertexId>,
        #[arg(long)]
        v2: Option<VertexId>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Two-port series of a gadget read from a file or stdin.
    Genfun {
        /// Gadget JSON; `-` or absent reads stdin.
        #[arg(long)]
        gadget: Option<PathBuf>,
        /// Port positions, e.g. `1,3` (1-based).
        #[arg(long)]
        ports: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph JSON.
    #[arg(long, visible_alias = "h")]
    graph: Option<PathBuf>,
    /// Path on this many vertices (terminals default to its ends).
    #[arg(long)]
    path: Option<usize>,
    /// Cycle on this many vertices.
    #[arg(long)]
    cycle: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum DemoCmd {
    /// Hexagonal lattice under the triangle gadget.
    FisherHex,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write the result here (plus a manifest sidecar) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Class {
    Black,
    White,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyClass {
    Black,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Bipartite {
    One,
    Two,
}

/// Run with process stdio.
pub fn run(argv: Vec<String>) -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit streams.
pub fn run_with(
    argv: Vec<String>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
    });
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "cannot start thread pool: {e}");
            return 2;
        }
    };
    let started = Instant::now();
    let mut input = Vec::new();
    if reads_stdin(&cli.command) {
        if let Err(e) = stdin.read_to_end(&mut input) {
            report_error(stderr, "Io", &e.to_string());
            return 1;
        }
    }
    let mut ctx = Ctx {
        stdin: input,
        stdout: Vec::new(),
        started,
        inputs: Vec::new(),
    };
    let result = pool.install(|| dispatch(&cli.command, &mut ctx));
    if let Err(e) = stdout.write_all(&ctx.stdout).and_then(|_| stdout.flush()) {
        report_error(stderr, "Io", &e.to_string());
        return 1;
    }
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed { code, message }) => {
            report_error(stderr, code, &message);
            1
        }
        Err(e) => {
            report_error(stderr, e.code(), &e.to_string());
            1
        }
    }
}

fn report_error(stderr: &mut dyn Write, code: &str, message: &str) {
    let doc = json!({ "error": { "code": code, "message": message } });
    let _ = writeln!(stderr, "{doc}");
}

enum Outcome {
    Ok,
    /// Command ran but its check failed.
    Failed { code: &'static str, message: String },
}

struct Ctx {
    stdin: Vec<u8>,
    stdout: Vec<u8>,
    started: Instant,
    inputs: Vec<Value>,
}

fn reads_stdin(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Gadget(GadgetCmd::Genfun { gadget, .. })
            if gadget.as_deref().is_none_or(|p| p.as_os_str() == "-")
    )
}

impl Ctx {
    fn read(&mut self, path: Option<&Path>) -> Result<String> {
        let (name, bytes) = match path {
            Some(p) if p.as_os_str() != "-" => (p.display().to_string(), std::fs::read(p)?),
            _ => ("<stdin>".to_string(), std::mem::take(&mut self.stdin)),
        };
        self.inputs.push(json!({
            "path": name,
            "sha256": hex::encode(Sha256::digest(&bytes)),
        }));
        String::from_utf8(bytes)
            .map_err(|e| Error::Io(std::io::Error::new(std::io::ErrorKind::InvalidData, e)))
    }

    fn patch(&mut self, path: &Path) -> Result<FinitePatch> {
        FinitePatch::from_json(&self.read(Some(path))?)
    }

    fn gadget(&mut self, path: Option<&Path>) -> Result<Gadget> {
        Ok(serde_json::from_str(&self.read(path)?)?)
    }

    /// Either a series (`{"coeffs": ...}`) or a gadget to count.
    fn genfun(&mut self, path: &Path) -> Result<CountPolynomial> {
        let text = self.read(Some(path))?;
        let value: Value = serde_json::from_str(&text)?;
        if value.get("coeffs").is_some() {
            CountPolynomial::from_json(&text)
        } else {
            gadget_genfun(&serde_json::from_value(value)?)
        }
    }

    /// Emit `payload` to stdout, or to `out` with a manifest beside it.
    fn emit(&mut self, name: &str, params: Value, payload: &impl Serialize, out: &OutArg) -> Result<()> {
        let payload = round_floats(serde_json::to_value(payload)?);
        let text = serde_json::to_string_pretty(&payload)? + "\n";
        match &out.out {
            None => self.stdout.write_all(text.as_bytes())?,
            Some(path) => {
                std::fs::write(path, &text)?;
                let manifest = json!({
                    "subcommand": name,
                    "inputs": self.inputs,
                    "parameters": params,
                    "version": env!("CARGO_PKG_VERSION"),
                    "wall_time_seconds": self.started.elapsed().as_secs_f64(),
                });
                let mut sidecar = path.clone().into_os_string();
                sidecar.push(".manifest.json");
                std::fs::write(sidecar, serde_json::to_string_pretty(&manifest)? + "\n")?;
            }
        }
        Ok(())
    }
}

/// Round a float to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(sig15(n.as_f64().expect("f64"))),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn poly_payload(p: &CountPolynomial) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Command::Lattice(LatticeCmd::Build {
            type_vector,
            radius,
            out,
        }) => {
            let tv: TypeVector = type_vector.parse()?;
            let patch = generate_lattice(&tv, *radius)?;
            let params = json!({ "type": tv.to_string(), "radius": radius });
            ctx.emit("lattice build", params, &patch, out)?;
        }
        Command::Gadget(cmd) => return gadget_cmd(cmd, ctx),
        Command::Enumerate {
            patch,
            origin,
            nmax,
            moments,
            out,
        } => {
            let patch = ctx.patch(patch)?;
            let origin = origin.unwrap_or(patch.origin());
            let series = VertexQuery {
                moments: *moments,
                ..VertexQuery::new(origin, *nmax)
            }
            .run(&patch)?;
            let params = json!({ "origin": origin, "nmax": nmax, "moments": moments });
            ctx.emit("enumerate", params, &series, out)?;
        }
        Command::Transform {
            patch,
            gadget,
            class,
            gadget2,
            out,
        } => {
            let patch = ctx.patch(patch)?;
            let g = ctx.gadget(Some(gadget))?;
            let g2 = gadget2.as_deref().map(|p| ctx.gadget(Some(p))).transpose()?;
            let tp = match class {
                None => transform_all(&patch, &g)?,
                Some(Class::Black) => transform_colour_class(&patch, &g, None)?,
                Some(Class::White) => transform_colour_class(&swap_colours(patch)?, &g, None)?,
                Some(Class::Both) => transform_colour_class(&patch, &g, Some(g2.as_ref().unwrap_or(&g)))?,
            };
            let params = json!({ "class": class.map(|c| format!("{c:?}").to_lowercase()) });
            ctx.emit("transform", params, &tp, out)?;
        }
        Command::Predict {
            mu_expr,
            gadget,
            bipartite,
            gadget2,
            out,
        } => {
            let mu = MuValue::exact(crate::expr::eval(mu_expr)?, mu_expr.clone());
            let g = ctx.genfun(gadget)?;
            let g2 = gadget2.as_deref().map(|p| ctx.genfun(p)).transpose()?;
            let predicted = match bipartite {
                None => predict_mu_transformed(&mu, &g)?,
                Some(Bipartite::One) => predict_mu_bipartite(&mu, &g, None)?,
                Some(Bipartite::Two) => predict_mu_bipartite(&mu, &g, Some(g2.as_ref().unwrap_or(&g)))?,
            };
            let mut payload = json!({
                "mu": mu,
                "genfun": poly_payload(&g),
                "predicted": predicted,
            });
            if let Some(g2) = &g2 {
                payload["genfun2"] = poly_payload(g2);
            }
            let params = json!({
                "mu_expr": mu_expr,
                "bipartite": bipartite.map(|b| format!("{b:?}").to_lowercase()),
            });
            ctx.emit("predict", params, &payload, out)?;
        }
        Command::Verify {
            patch,
            gadget,
            nmax,
            class,
            gadget2,
            out,
        } => {
            let patch = ctx.patch(patch)?;
            let g = ctx.gadget(Some(gadget))?;
            let g2 = gadget2.as_deref().map(|p| ctx.gadget(Some(p))).transpose()?;
            let report = match class {
                None => verify_substitution(&patch, &g, *nmax)?,
                Some(VerifyClass::Black) => verify_bipartite_substitution(&patch, &g, None, *nmax)?,
                Some(VerifyClass::Both) => {
                    verify_bipartite_substitution(&patch, &g, Some(g2.as_ref().unwrap_or(&g)), *nmax)?
                }
            };
            let params = json!({
                "nmax": nmax,
                "class": class.map(|c| format!("{c:?}").to_lowercase()),
            });
            ctx.emit("verify", params, &report, out)?;
            if !report.equal {
                return Ok(Outcome::Failed {
                    code: "IdentityMismatch",
                    message: format!(
                        "series differ at degree {}",
                        report.first_mismatch.expect("mismatch recorded")
                    ),
                });
            }
        }
        Command::Fixedpoint { gadget, tol, out } => {
            let g = ctx.genfun(gadget)?;
            let x = fixed_point(&g, *tol)?;
            let payload = json!({ "genfun": poly_payload(&g), "x": x, "mu": 1.0 / x });
            ctx.emit("fixedpoint", json!({ "tol": tol }), &payload, out)?;
        }
        Command::Iterate {
            x0,
            gadget,
            steps,
            out,
        } => {
            let start = crate::expr::eval(x0)?;
            let g = ctx.genfun(gadget)?;
            let xs = iterate_mu(start, &g, *steps)?;
            let mus: Vec<f64> = xs.iter().map(|x| 1.0 / x).collect();
            let payload = json!({ "genfun": poly_payload(&g), "x0": start, "x": xs, "mu": mus });
            ctx.emit("iterate", json!({ "x0": x0, "steps": steps }), &payload, out)?;
        }
        Command::Demo(DemoCmd::FisherHex) => demo_fisher_hex(ctx)?,
    }
    Ok(Outcome::Ok)
}

fn gadget_cmd(cmd: &GadgetCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        GadgetCmd::Check { gadget, out } => {
            let g = ctx.gadget(Some(gadget))?;
            let report = validate_gadget(&g)?;
            ctx.emit("gadget check", json!({}), &report, out)?;
            if !report.accepted() {
                return Ok(Outcome::Failed {
                    code: "InvalidGadget",
                    message: "ports are not permuted transitively by automorphisms".into(),
                });
            }
        }
        GadgetCmd::Kn { n, out } => {
            let g = complete_gadget(*n)?;
            ctx.emit("gadget kn", json!({ "n": n }), &g, out)?;
        }
        GadgetCmd::Gfisher { source, v1, v2, out } => {
            let h = if let Some(path) = &source.graph {
                ctx.patch(path)?
            } else if let Some(n) = source.path {
                path_graph(n)?
            } else {
                cycle_graph(source.cycle.expect("clap enforces one source"))?
            };
            let v1 = v1.unwrap_or(0);
            let v2 = v2.unwrap_or(h.vertex_count().saturating_sub(1) as VertexId);
            let g = generalized_fisher(&h, v1, v2)?;
            ctx.emit("gadget gfisher", json!({ "v1": v1, "v2": v2 }), &g, out)?;
        }
        GadgetCmd::Genfun { gadget, ports, out } => {
            let g = ctx.gadget(gadget.as_deref())?;
            let (a, b) = match ports {
                None => (0, 1),
                Some(s) => parse_ports(s)?,
            };
            let p = gadget_genfun_between(&g, a, b)?;
            ctx.emit("gadget genfun", json!({ "ports": [a + 1, b + 1] }), &poly_payload(&p), out)?;
        }
    }
    Ok(Outcome::Ok)
}

fn parse_ports(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidGadget(format!("port pair {s:?} is not of the form i,j with i, j in 1..=3"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if !(1..=3).contains(&a) || !(1..=3).contains(&b) {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

fn swap_colours(patch: FinitePatch) -> Result<FinitePatch> {
    let flipped: Vec<Colour> = patch
        .colours()
        .ok_or(Error::NotBipartite)?
        .iter()
        .map(|c| c.other())
        .collect();
    patch.with_colours(flipped)
}

fn demo_fisher_hex(ctx: &mut Ctx) -> Result<()> {
    let mu = MuValue::hexagonal();
    let triangle = crate::gadget::fisher();
    let g = gadget_genfun(&triangle)?;
    let mu1 = predict_mu_transformed(&mu, &g)?;
    let nmax = 10;
    let mut radius = 4;
    let report = loop {
        let hex = generate_lattice(&TypeVector::hexagonal(), radius)?;
        match verify_substitution(&hex, &triangle, nmax) {
            Err(Error::BoundaryUnsafe { .. }) => radius += 1,
            other => break other?,
        }
    };
    let w = &mut ctx.stdout;
    writeln!(w, "mu(hexagonal) = sqrt(2+sqrt(2)) = {}", sig15(mu.value))?;
    writeln!(w, "triangle gadget: g(x) = {g}")?;
    writeln!(w, "predicted mu(3,12^2): 1/mu = g(1/mu1), mu1 = {}", sig15(mu1.value))?;
    writeln!(
        w,
        "{} substitution identity on hexagonal patch (radius {radius}) through degree {nmax}",
        if report.equal { "PASS" } else { "FAIL" }
    )?;
    Ok(())
}
