//! The `residuum` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::newton::newton_polyhedron;
use crate::problem::{self, ProblemFile};
use crate::quadrature::{self, QuadratureOptions};
use crate::report::{EssentialInfo, FacetInfo, InputEcho, PublishedCheck, Report, ResultBody, SCHEMA};
use crate::residue::{self, Analysis, SweepOptions};
use crate::svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Compact facets of NP(pA) and the complement volume
    Polytope,
    /// Rees valuations (primitive facet normals) of a(z^{pA})
    Valuations,
    /// p-essential multi-indices
    Essential,
    /// The residue current entry by entry
    Current,
    /// ann R^p(z^A)
    Annihilator,
    /// e^p(z^A)
    Multiplicity,
    /// The inclusion chain left ⊆ ann ⊆ a(z^A)
    TheoremA,
    /// Weight independence of the current and of its annihilator
    Independence,
    /// Distinct annihilators over {1..pmax}^m
    Sweep,
    /// Per-facet coefficient relations
    Coffe,
    /// SVG of NP(pA)
    Render,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "residuum", version, about = "Residue currents of monomial sequences")]
pub struct Args {
    pub command: Command,
    /// Problem file, or one of the bundled fixtures ex41, ex42, ex54
    pub problem: String,
    /// Name of a weight declared in the problem (default: all ones)
    pub weight: Option<String>,
    /// Weight box bound for `sweep`
    #[arg(long = "pmax")]
    pub p_max: Option<u64>,
    /// Absolute tolerance for quadrature
    #[arg(long)]
    pub tol: Option<f64>,
    /// Estimate undetermined coefficients numerically
    #[arg(long)]
    pub numeric: bool,
    /// Also write an SVG drawing to this path
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
    /// Run sweeps beyond the size guard
    #[arg(long)]
    pub force: bool,
    /// Evaluate sweep weights on all cores
    #[arg(long)]
    pub parallel: bool,
    /// Enable the three-variable quadrature path
    #[arg(long)]
    pub experimental: bool,
}

/// Settings after merging command-line flags over problem-file options.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub p_max: Option<u64>,
    pub tol: Option<f64>,
    pub numeric: bool,
    pub svg: Option<PathBuf>,
    pub force: bool,
    pub parallel: bool,
    pub experimental: bool,
}

impl RunOptions {
    fn merged(args: &Args, pf: &ProblemFile) -> Self {
        RunOptions {
            p_max: args.p_max.or(pf.options.p_max),
            tol: args.tol.or(pf.options.tol),
            numeric: args.numeric || pf.options.numeric,
            svg: args.svg.clone(),
            force: args.force || pf.options.force,
            parallel: args.parallel || pf.options.parallel,
            experimental: args.experimental || pf.options.experimental,
        }
    }

    fn quadrature(&self) -> QuadratureOptions {
        let base = if self.experimental {
            QuadratureOptions::experimental()
        } else {
            QuadratureOptions::default()
        };
        QuadratureOptions {
            abs_tol: self.tol.unwrap_or(base.abs_tol),
            ..base
        }
    }
}

/// Output of one command: the report and, for drawings, the SVG text.
pub struct Outcome {
    pub report: Report,
    pub svg: Option<String>,
}

pub fn execute(command: Command, pf: &ProblemFile, weight_name: Option<&str>, opts: &RunOptions) -> Result<Outcome> {
    let seq = &pf.seq;
    let uses_weight = !matches!(command, Command::Independence | Command::Sweep);
    let (name, p) = pf.weight(weight_name)?;
    let input = InputEcho {
        source: pf.source.clone(),
        fixture: pf.fixture.clone(),
        dim: seq.dim(),
        generators: seq.exps().iter().map(|a| a.coords().to_vec()).collect(),
        weight_name: uses_weight.then(|| name.clone()),
        weight: uses_weight.then(|| p.clone()),
    };
    let mut svg_text = None;
    let result = match command {
        Command::Polytope | Command::Render => {
            let an = Analysis::new(seq, &p)?;
            if command == Command::Render || opts.svg.is_some() {
                svg_text = Some(svg::render_newton(&an.np, &format!("NP(pA), p = {p}"))?);
            }
            if command == Command::Render {
                ResultBody::Render {
                    path: opts.svg.as_ref().map(|x| x.display().to_string()),
                    bytes: svg_text.as_ref().map_or(0, String::len),
                }
            } else {
                ResultBody::Polytope {
                    points: an.scaled.iter().map(|a| a.coords().to_vec()).collect(),
                    facets: an
                        .np
                        .facets()
                        .iter()
                        .map(|fc| FacetInfo {
                            normal: fc.normal.clone(),
                            level: fc.level.clone(),
                            on_facet: fc.on_facet.iter().map(|i| i + 1).collect(),
                            vertices: fc.vertices.iter().map(|i| i + 1).collect(),
                            det: an.np.facet_det(fc),
                        })
                        .collect(),
                    complement_volume: an.np.complement_volume(),
                }
            }
        }
        Command::Valuations => {
            let scaled = residue::scaled_points(seq, &p)?;
            let np = newton_polyhedron(&scaled, seq.dim())?;
            ResultBody::Valuations {
                valuations: np.facets().iter().map(|f| f.normal.clone()).collect(),
            }
        }
        Command::Essential => ResultBody::Essential {
            indices: residue::p_essential_indices(seq, &p)?
                .into_iter()
                .map(|(index, witnesses)| EssentialInfo { index, witnesses })
                .collect(),
        },
        Command::Current => {
            let mut cur = residue::residue_current(seq, &p)?;
            if opts.numeric {
                residue::refine_numeric(&mut cur, &opts.quadrature())?;
            }
            ResultBody::Current {
                symbolic: cur.entries.iter().map(|e| e.symbolic()).collect(),
                entries: cur.entries,
            }
        }
        Command::Annihilator => {
            let ideal = residue::annihilator(seq, &p)?;
            if opts.svg.is_some() {
                svg_text = Some(svg::render_staircase(&ideal, &format!("ann R^p, p = {p}"))?);
            }
            ResultBody::Annihilator {
                display: ideal.to_string(),
                ideal,
            }
        }
        Command::Multiplicity => ResultBody::Multiplicity {
            multiplicity: if opts.numeric {
                residue::multiplicity_with_numeric(seq, &p, &opts.quadrature())?
            } else {
                residue::multiplicity_ep(seq, &p)?
            },
        },
        Command::TheoremA => {
            let report = residue::theorem_a_report(seq, &p)?;
            let published = pf
                .fixture
                .as_deref()
                .and_then(|fx| problem::published_left_ideal(fx, &name))
                .map(|published| PublishedCheck {
                    agrees: published == report.left,
                    published,
                });
            ResultBody::TheoremA { report, published }
        }
        Command::Independence => ResultBody::Independence {
            report: residue::independence_report(seq)?,
        },
        Command::Sweep => {
            let p_max = opts
                .p_max
                .ok_or_else(|| Error::domain("sweep needs --pmax (or 'option pmax' in the problem)"))?;
            let result = residue::enumerate_annihilators(
                seq,
                p_max,
                SweepOptions {
                    force: opts.force,
                    parallel: opts.parallel,
                },
            )?;
            ResultBody::Sweep {
                distinct: result.entries.len(),
                result,
            }
        }
        Command::Coffe => {
            let relations = residue::coffe_constraints(seq, &p)?;
            let numeric = if opts.numeric {
                Some(quadrature::validate_coffe_numeric(seq, &p, &opts.quadrature())?)
            } else {
                None
            };
            ResultBody::Coffe {
                reduced: relations
                    .iter()
                    .map(|r| {
                        let (c, rhs) = r.reduced();
                        let lhs: Vec<String> = c
                            .iter()
                            .zip(&r.terms)
                            .map(|(k, t)| format!("{k}*C{}", t.index))
                            .collect();
                        format!("{} = {rhs}", lhs.join(" + "))
                    })
                    .collect(),
                readings_differ: relations.iter().any(|r| r.readings_differ()),
                relations,
                numeric,
            }
        }
    };
    Ok(Outcome {
        report: Report {
            schema: SCHEMA,
            command: command.name(),
            input,
            result,
        },
        svg: svg_text,
    })
}

/// Exit status for an error: 3 for a refused sweep, 1 for i/o and numeric
/// failures, 2 for everything the user can fix in the input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SweepTooLarge { .. } => 3,
        Error::Io(_) | Error::Quadrature(_) => 1,
        _ => 2,
    }
}

/// Parses `argv`, runs the command and writes the report. Returns the exit
/// status.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match run_args(&args, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "residuum: {e}");
            exit_code(&e)
        }
    }
}

fn run_args(args: &Args, out: &mut impl Write) -> Result<()> {
    let pf = problem::load(&args.problem)?;
    let opts = RunOptions::merged(args, &pf);
    let outcome = execute(args.command, &pf, args.weight.as_deref(), &opts)?;
    match (&outcome.svg, &opts.svg) {
        (Some(text), Some(path)) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        }
        (Some(text), None) if args.command == Command::Render && !args.json => {
            out.write_all(text.as_bytes())?;
            return Ok(());
        }
        _ => {}
    }
    if args.json {
        writeln!(out, "{}", outcome.report.to_json())?;
    } else {
        write!(out, "{}", outcome.report)?;
    }
    Ok(())
}
