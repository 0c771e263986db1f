use std::fs;
use std::io::{self, Read as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lotcert::formats::{self, dot, dsl, json};
use lotcert::render;
use lotcert::sweep::{self, SweepConfig};
use lotcert_core::certify::{certify, check_certificate, Certificate};
use lotcert_core::diagram::{is_vertex_reduced, orientation_census};
use lotcert_core::knot::{is_alternating, loi_of, parse_gauss};
use lotcert_core::sublot::{enumerate_sublots, maximal_proper_sublots};
use lotcert_core::transform::reduce;
use lotcert_core::whitehead::{stallings_test, whitehead_graph, Polarity};
use lotcert_core::{Log, Lot, Presentation};
use serde_json::json;

#[derive(Parser)]
#[command(name = "lotcert", version, about = "Asphericity certificates for labeled oriented trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a LOG and print it in canonical form.
    Parse {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply reduction moves until none applies.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List sub-LOTs.
    Sublots {
        input: PathBuf,
        /// Only the maximal proper ones.
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Whitehead graph as DOT (default) or JSON.
    Whitehead {
        input: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        /// Write DOT to this file instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Stallings test on the LOT presentation.
    Stallings {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build an asphericity certificate.
    Certify {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Assumption file; may be repeated.
        #[arg(long = "assume")]
        assume: Vec<PathBuf>,
    },
    /// Verify a certificate.
    Check {
        /// LOT the certificate must be about; defaults to the one it embeds.
        input: Option<PathBuf>,
        #[arg(long)]
        cert: PathBuf,
    },
    /// LOI of a long virtual knot given as a Gauss code.
    Knot2lot {
        /// File holding the code; `-` for standard input.
        input: Option<PathBuf>,
        /// The code itself, e.g. "O1+ U2+ U1+ O2+".
        #[arg(long, conflicts_with = "input")]
        code: Option<String>,
        #[arg(long, default_value = "x")]
        prefix: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate a spherical diagram over a LOT presentation.
    DiagramCheck {
        diagram: PathBuf,
        /// LOT whose presentation the face labels refer to.
        #[arg(long)]
        lot: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Property sweeps over generated injective LOTs.
    Sweep {
        #[arg(long, value_enum, default_value_t = Which::All)]
        property: Which,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 1000)]
        random: usize,
        #[arg(long, default_value_t = 12)]
        random_max_vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Injective LOTs certify and their certificates check.
    Certify,
    /// Candidates admit a reorientation with both one-sided Whitehead graphs trees.
    Reorient,
    All,
}

fn read(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_log(path: &Path) -> anyhow::Result<Log> {
    formats::read_log(&read(path)?).with_context(|| path.display().to_string())
}

fn read_lot(path: &Path) -> anyhow::Result<Lot> {
    Lot::new(read_log(path)?).with_context(|| format!("{} is not a LOT", path.display()))
}

fn lot_text(g: &Log, as_json: bool) -> String {
    if as_json {
        json::pretty(&json::tagged(&json::LogJson::of(g)))
    } else {
        dsl::render(g)
    }
}

/// Stdout text and exit status; `Err` means bad usage or input.
fn run(cmd: Command) -> anyhow::Result<(String, bool)> {
    Ok(match cmd {
        Command::Parse { input, json } => (lot_text(&read_log(&input)?, json), true),
        Command::Reduce { input, json } => {
            let t = read_lot(&input)?;
            let (r, trace) = reduce(&t);
            if json {
                let doc = json!({ "schema": json::SCHEMA, "lot": json::LogJson::of(&r), "trace": trace });
                (json::pretty(&doc), true)
            } else {
                let mut out = String::new();
                for line in render::trace_lines(&trace).lines() {
                    out.push_str(&format!("# {line}\n"));
                }
                out.push_str(&dsl::render(&r));
                (out, true)
            }
        }
        Command::Sublots { input, maximal, json } => {
            let t = read_lot(&input)?;
            let subs = if maximal { maximal_proper_sublots(&t) } else { enumerate_sublots(&t) };
            if json {
                let list: Vec<_> = subs.iter().map(|s| json::SubLotJson::of(s, &t)).collect();
                (json::pretty(&json!({ "schema": json::SCHEMA, "sublots": list })), true)
            } else {
                let mut out = String::new();
                for s in &subs {
                    let triples: Vec<String> = s.edge_triples(&t).iter().map(|e| format!("[{},{},{}]", e[0], e[1], e[2])).collect();
                    out.push_str(&format!("{{{}}} {}\n", s.vertices.join(","), triples.join(" ")));
                }
                (out, true)
            }
        }
        Command::Whitehead { input, side, dot: dot_path, json } => {
            let g = read_log(&input)?;
            let w = whitehead_graph(&Presentation::of_log(&g))?;
            let view = match side {
                None => dot::View::All,
                Some(SideArg::Plus) => dot::View::Side(Polarity::Plus),
                Some(SideArg::Minus) => dot::View::Side(Polarity::Minus),
            };
            let text = dot::whitehead(&w, view, &[]);
            let mut out = String::new();
            if let Some(path) = dot_path {
                fs::write(&path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            } else if !json {
                out = text;
            }
            if json {
                out.push_str(&json::pretty(&json::tagged(&w)));
            }
            (out, true)
        }
        Command::Stallings { input, json } => {
            let g = read_log(&input)?;
            let r = stallings_test(&Presentation::of_log(&g))?;
            let out = if json { json::pretty(&json::tagged(&r)) } else { format!("{}\n", render::stallings_line(&r)) };
            (out, r.passed())
        }
        Command::Certify { input, json, assume } => {
            let t = read_lot(&input)?;
            let mut assumptions = Vec::new();
            for a in &assume {
                assumptions.extend(json::parse_assumptions(&read(a)?).with_context(|| a.display().to_string())?);
            }
            match certify(&t, &assumptions) {
                Ok(c) => {
                    let out = if json {
                        json::pretty(&json::tagged(&json::CertificateDoc { lot: json::LogJson::of(&t), certificate: c }))
                    } else {
                        format!("certified: {} ({} nodes)\n{}", c.kind(), c.size(), render::outline(&c))
                    };
                    (out, true)
                }
                Err(f) => {
                    let out = if json {
                        json::pretty(&json!({ "schema": json::SCHEMA, "failure": f }))
                    } else {
                        format!("not certified: {f}\n")
                    };
                    (out, false)
                }
            }
        }
        Command::Check { input, cert } => {
            let doc = json::parse_certificate(&read(&cert)?).with_context(|| cert.display().to_string())?;
            let embedded = Lot::new(doc.lot.to_log()?).context("certificate LOT is not a tree")?;
            if let Some(path) = input {
                if read_lot(&path)? != embedded {
                    bail!("{} is not the LOT in {}", path.display(), cert.display());
                }
            }
            check(&embedded, &doc.certificate)?
        }
        Command::Knot2lot { input, code, prefix, json } => {
            let text = match (code, input) {
                (Some(c), _) => c,
                (None, Some(p)) => read(&p)?,
                (None, None) => bail!("give a Gauss code file or --code"),
            };
            let g = parse_gauss(&text)?;
            let t = loi_of(&g, &prefix)?;
            let mut out = String::new();
            if !json {
                out.push_str(&format!("# alternating: {}\n", if is_alternating(&g) { "yes" } else { "no" }));
            }
            out.push_str(&lot_text(&t, json));
            (out, true)
        }
        Command::DiagramCheck { diagram, lot, json } => {
            let d = formats::diagram::parse(&read(&diagram)?).with_context(|| diagram.display().to_string())?;
            let p = Presentation::of_log(&read_log(&lot)?);
            let report = d.validate(&p);
            let census = orientation_census(&d);
            let reduced = if report.is_valid() { Some(is_vertex_reduced(&d, &p, &[])?) } else { None };
            let out = if json {
                json::pretty(&json!({
                    "schema": json::SCHEMA,
                    "valid": report.is_valid(),
                    "report": report,
                    "census": census,
                    "vertex_reduced": reduced,
                }))
            } else {
                let mut out = String::new();
                out.push_str(if report.is_valid() { "valid spherical diagram\n" } else { "invalid diagram\n" });
                for v in &report.violations {
                    out.push_str(&format!("  {v}\n"));
                }
                out.push_str(&format!("euler characteristic: {}\n", report.euler_characteristic));
                let named = |vs: &[usize]| vs.iter().map(|&v| d.vertices[v].as_str()).collect::<Vec<_>>().join(",");
                out.push_str(&format!("sinks: {{{}}} sources: {{{}}}\n", named(&census.sinks), named(&census.sources)));
                if let Some(r) = &reduced {
                    match r.witness {
                        None => out.push_str("vertex reduced\n"),
                        Some((v, [i, j])) => out.push_str(&format!(
                            "not vertex reduced: inverse corners {i} and {j} at {}\n",
                            d.vertices[v]
                        )),
                    }
                }
                out
            };
            (out, report.is_valid())
        }
        Command::Sweep { property, max_vertices, random, random_max_vertices, seed } => {
            let cfg = SweepConfig { max_vertices, random, random_max_vertices, seed };
            let mut out = String::new();
            let mut ok = true;
            if property != Which::Reorient {
                let r = sweep::certify_sweep(&cfg);
                ok &= r.passed();
                out.push_str(&r.render());
            }
            if property != Which::Certify {
                let r = sweep::reorientation_sweep(&cfg);
                ok &= r.passed();
                out.push_str(&r.render());
            }
            (out, ok)
        }
    })
}

fn check(t: &Lot, c: &Certificate) -> anyhow::Result<(String, bool)> {
    Ok(match check_certificate(t, c) {
        Ok(()) => (format!("certificate ok ({} nodes)\n", c.size()), true),
        Err(e) => (format!("certificate rejected: {e}\n"), false),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
