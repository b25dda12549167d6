//! `tropical`: evaluate, draw, analyze and synthesize from the shell.
//!
//! JSON goes to stdout (or `--json PATH`), diagnostics to stderr. Exit codes:
//! 0 success, 1 negative verdict, 2 usage or input error, 3 computation error.

mod svg;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tropical::additive::{closure_oracle, is_additive, Verdict};
use tropical::curve::curve_from_poly2;
use tropical::curve::TropCurve;
use tropical::newton::{dual_subdivision, essential_monomials};
use tropical::parse::{
    curve_from_json, curve_to_value, parse_ideal, parse_ideal_n, parse_poly, parse_poly_n,
    poly_to_string,
};
use tropical::scalar::{fmt_rat, parse_rat};
use tropical::synth::{
    synthesize_affine_subspace, synthesize_curve, verify_ideal, VerifyOptions, DEFAULT_CGAP,
};
use tropical::{Error, Ideal, Rat, TropPolynomial};

#[derive(Parser)]
#[command(name = "tropical", version, about = "Exact max-plus geometry")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Value and maximizing monomials of f at a point.
    Eval {
        /// Polynomial text, or a file holding it.
        #[arg(short = 'f', long = "poly")]
        poly: String,
        /// Comma separated rationals, e.g. "3,1/2".
        #[arg(short = 'p', long, allow_hyphen_values = true)]
        point: String,
    },
    /// Corner locus of a bivariate polynomial.
    Curve {
        #[arg(short = 'f', long = "poly")]
        poly: String,
        #[command(flatten)]
        draw: Draw,
    },
    /// Regular subdivision of the Newton polytope.
    Subdivision {
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    /// Additivity certificate for a curve.
    Additive {
        #[arg(long)]
        curve: PathBuf,
        /// Extra seeded pairs for the closure oracle.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        draw: Draw,
    },
    /// Simple generators for an additive plane or space curve.
    Synth {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CGAP)]
        cgap: u64,
        /// Off-curve points used to verify the result.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        draw: Draw,
    },
    /// Check that an ideal cuts out a curve.
    Verify {
        /// Generators separated by ';' or newlines, or a file holding them.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// k-skeleton of a curve (k = 0: its vertices).
    Skeleton {
        #[arg(long)]
        curve: PathBuf,
        #[arg(short = 'k', long = "dim", default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        draw: Draw,
    },
    /// Binomial generators for point + span(basis).
    Affine {
        #[arg(short = 'p', long, allow_hyphen_values = true)]
        point: String,
        /// One basis vector per flag, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        basis: Vec<String>,
    },
}

#[derive(clap::Args)]
struct Draw {
    /// Also draw the curve (plane curves only).
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Width of the drawing in pixels.
    #[arg(long, default_value_t = 400)]
    svg_size: u32,
}

/// Failure with the exit code it maps to.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::ParseMany(_)
            | Error::Schema { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidArgument(_) => 2,
            _ => 3,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

/// Inputs seen so far, hashed into the metadata block.
#[derive(Default)]
struct Inputs(Vec<(String, String)>);

impl Inputs {
    /// A file if the path exists, else the text itself.
    fn text(&mut self, name: &str, arg: &str) -> Result<String, Fail> {
        let p = Path::new(arg);
        let s = if !arg.contains('\n') && p.is_file() {
            read(p)?
        } else {
            arg.to_string()
        };
        self.0.push((name.into(), s.clone()));
        Ok(s)
    }

    fn file(&mut self, name: &str, p: &Path) -> Result<String, Fail> {
        let s = read(p)?;
        self.0.push((name.into(), s.clone()));
        Ok(s)
    }

    fn curve(&mut self, p: &Path) -> Result<TropCurve, Fail> {
        let s = self.file("curve", p)?;
        Ok(curve_from_json(&s)?)
    }

    fn sha256(&self) -> String {
        let mut h = Sha256::new();
        for (name, s) in &self.0 {
            h.update(name.as_bytes());
            h.update([0]);
            h.update((s.len() as u64).to_le_bytes());
            h.update(s.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

fn read(p: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn parse_point(s: &str) -> Result<Vec<Rat>, Fail> {
    s.split(',')
        .map(|t| parse_rat(t.trim()).ok_or_else(|| usage(format!("not a rational: {t:?}"))))
        .collect()
}

fn point_value(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

/// Display order: by degree, and within a degree x1 before x2.
fn graded_order(f: &TropPolynomial) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..f.len()).collect();
    let m = f.monomials();
    idx.sort_by(|&a, &b| {
        let deg = |i: usize| m[i].exps.iter().sum::<u64>();
        deg(a).cmp(&deg(b)).then_with(|| m[b].exps.cmp(&m[a].exps))
    });
    idx
}

fn monomial_text(f: &TropPolynomial, i: usize) -> String {
    let m = &f.monomials()[i];
    TropPolynomial::new(f.nvars(), vec![m.clone()])
        .map(|g| poly_to_string(&g))
        .unwrap_or_else(|_| "-inf".into())
}

fn draw(c: &TropCurve, d: &Draw) -> Result<(), Fail> {
    if let Some(path) = &d.svg {
        let s = svg::render(c, d.svg_size).map_err(usage)?;
        std::fs::write(path, s).map_err(|e| Fail(3, format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn plane_curve(f: &TropPolynomial) -> Result<TropCurve, Fail> {
    if essential_monomials(f)?.len() < 2 {
        return Err(Fail(3, "empty corner locus".into()));
    }
    let c = curve_from_poly2(f)?;
    if c.is_empty() {
        return Err(Fail(3, "empty corner locus".into()));
    }
    Ok(c)
}

/// Runs one command: the JSON body and whether the verdict passed.
fn run(cli: &Cli, inputs: &mut Inputs) -> Result<(Value, bool), Fail> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Eval { poly, point } => {
            let text = inputs.text("poly", poly)?;
            let x = parse_point(&inputs.text("point", point)?)?;
            let f = parse_poly(&text)?;
            // "x1 + 0" may live in more variables than it mentions
            let f = if x.len() > f.nvars() {
                parse_poly_n(&text, x.len())?
            } else {
                f
            };
            let ev = f.evaluate(&x)?;
            let order = graded_order(&f);
            let argmax: Vec<usize> = order
                .iter()
                .enumerate()
                .filter(|(_, i)| ev.argmax.contains(i))
                .map(|(k, _)| k)
                .collect();
            let value = ev
                .value
                .as_rat()
                .map(fmt_rat)
                .unwrap_or_else(|| "-inf".into());
            let monomials: Vec<String> = order.iter().map(|&i| monomial_text(&f, i)).collect();
            Ok((
                json!({"value": value, "argmax": argmax, "monomials": monomials}),
                true,
            ))
        }
        Cmd::Curve { poly, draw: d } => {
            let f = parse_poly_n(&inputs.text("poly", poly)?, 2)?;
            let c = plane_curve(&f)?;
            draw(&c, d)?;
            Ok((json!({"curve": curve_to_value(&c)}), true))
        }
        Cmd::Subdivision { poly } => {
            let f = parse_poly(&inputs.text("poly", poly)?)?;
            let s = dual_subdivision(&f)?;
            Ok((json!({"subdivision": s.to_json()}), true))
        }
        Cmd::Additive {
            curve,
            samples,
            draw: d,
        } => {
            let c = inputs.curve(curve)?;
            draw(&c, d)?;
            let cert = is_additive(&c)?;
            let oracle = closure_oracle(&c.canonical(), *samples, seed);
            let mut v = cert.to_value();
            v["oracle"] = json!({
                "pairs_checked": oracle.pairs_checked,
                "witness": oracle.witness.as_ref().map(|(a, b)| json!([point_value(a), point_value(b)])),
            });
            let ok = cert.verdict != Verdict::NotAdditive && oracle.passed();
            Ok((v, ok))
        }
        Cmd::Synth {
            curve,
            cgap,
            samples,
            draw: d,
        } => {
            let c = inputs.curve(curve)?;
            draw(&c, d)?;
            let id = synthesize_curve(&c, *cgap)?;
            let rep = verify_ideal(
                &id,
                &c,
                &VerifyOptions {
                    off_samples: *samples,
                    seed,
                },
            )?;
            Ok((
                json!({"cgap": cgap, "report": rep.to_value()}),
                rep.passed(),
            ))
        }
        Cmd::Verify {
            ideal,
            curve,
            samples,
        } => {
            let c = inputs.curve(curve)?;
            let text = inputs.text("ideal", ideal)?;
            let id = parse_ideal(&text)?;
            let id = if id.nvars() < c.dim {
                parse_ideal_n(&text, c.dim)?
            } else {
                id
            };
            if id.nvars() != c.dim {
                return Err(usage(format!(
                    "ideal has {} variables, curve lives in dimension {}",
                    id.nvars(),
                    c.dim
                )));
            }
            let rep = verify_ideal(
                &id,
                &c,
                &VerifyOptions {
                    off_samples: *samples,
                    seed,
                },
            )?;
            Ok((json!({"report": rep.to_value()}), rep.passed()))
        }
        Cmd::Skeleton { curve, k, draw: d } => {
            let c = inputs.curve(curve)?;
            let s = c.skeleton(*k);
            draw(&s, d)?;
            Ok((json!({"k": k, "skeleton": curve_to_value(&s)}), true))
        }
        Cmd::Affine { point, basis } => {
            let p = parse_point(&inputs.text("point", point)?)?;
            let mut b = Vec::new();
            for (k, v) in basis.iter().enumerate() {
                b.push(parse_point(&inputs.text(&format!("basis{k}"), v)?)?);
            }
            let id: Ideal = synthesize_affine_subspace(&p, &b)?;
            let gens: Vec<String> = id.generators().iter().map(poly_to_string).collect();
            Ok((json!({"generators": gens, "simple": id.is_simple()}), true))
        }
    }
}

fn emit(cli: &Cli, v: &Value) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(v).expect("json values serialize") + "\n";
    match &cli.json {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail(3, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs::default();
    let out = run(&cli, &mut inputs).and_then(|(mut v, ok)| {
        v["meta"] = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "seed": cli.seed,
            "input_sha256": inputs.sha256(),
        });
        emit(&cli, &v)?;
        Ok(ok)
    });
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail(code, msg)) => {
            eprintln!("tropical: {msg}");
            ExitCode::from(code)
        }
    }
}
