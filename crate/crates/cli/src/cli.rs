use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ircl_amalg::{
    amalgamate_rigid_conjunctive_conic, amalgamate_star_inv_chains, search_amalgam, verify_amalgam, verify_one_sided,
    AmalgClass, AmalgError, VFormation,
};
use ircl_congr::{is_fsi, is_semiconic_finite, is_si};
use ircl_core::{FinResLat, Report};
use ircl_decomp::extract_system;
use ircl_enumerate::{enumerate_chains, enumerate_conic, enumerate_semiconic_fsi, library, NAMES, TRIPLES};

use crate::format::{emp_text, load, to_json, AlgebraFile, Input};
use crate::render::View;
use crate::{render, CliError};

#[derive(Parser)]
#[command(name = "ircl", version, about = "Finite idempotent residuated lattices: verify, decompose, amalgamate, render")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the residuated lattice axioms.
    Verify { file: String },
    /// Every predicate with a witness when it fails.
    Props { file: String },
    /// Convert between an algebra file and EMP text.
    Emp {
        file: String,
        #[arg(long)]
        to: PathBuf,
    },
    /// Print the skeleton and blocks of a conic idempotent algebra.
    Decompose { file: String },
    /// Build a strong amalgam by construction.
    Amalgamate {
        a: String,
        b: String,
        c: String,
        #[arg(long, value_enum)]
        class: ConstructClass,
        #[arg(long, default_value_t = 12)]
        block_bound: usize,
        #[arg(short = 'o', long)]
        out: PathBuf,
    },
    /// Look for a smallest amalgam up to a size bound.
    SearchAmalgam {
        a: String,
        b: String,
        c: String,
        #[arg(long, value_enum)]
        class: SearchClass,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        one_sided: bool,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Generate algebras of one size up to isomorphism.
    Enumerate {
        #[arg(long, value_enum)]
        kind: EnumKind,
        #[arg(long)]
        size: usize,
        #[arg(long, conflicts_with = "emit", required_unless_present = "emit")]
        count: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Write a DOT diagram.
    Render {
        file: String,
        #[arg(long, value_enum)]
        view: ViewArg,
        #[arg(short = 'o', long)]
        out: PathBuf,
    },
    /// Named algebras.
    Library {
        #[command(subcommand)]
        cmd: LibraryCmd,
    },
}

#[derive(Subcommand)]
enum LibraryCmd {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructClass {
    ChainsStarInv,
    RigidConjunctiveConic,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchClass {
    Chains,
    Conic,
    ConicFsi,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Chains,
    Conic,
    Fsi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Hasse,
    Emp,
    Flow,
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn report_exit(out: &mut dyn Write, rep: &Report) -> Result<(), CliError> {
    let _ = write!(out, "{rep}");
    if rep.passed() {
        Ok(())
    } else {
        Err(CliError::verify(format!("{} failed", rep.subject)))
    }
}

fn amalg_error(e: AmalgError) -> CliError {
    match e {
        AmalgError::InvalidVFormation(_) | AmalgError::UnknownFigure(_) => CliError::input(e.to_string()),
        AmalgError::BlockAmalgamBoundExceeded(_) => CliError::not_found(e.to_string()),
        _ => CliError::verify(e.to_string()),
    }
}

fn formation(a: &str, b: &str, c: &str) -> Result<VFormation, CliError> {
    let (a, b, c) = (load(a)?.algebra()?, load(b)?.algebra()?, load(c)?.algebra()?);
    Ok(VFormation::by_labels(a, b, c).map_err(amalg_error)?.reduced())
}

fn algebra_json(name: &str, a: &FinResLat) -> String {
    to_json(&AlgebraFile::from_algebra(name, a))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Verify { file } => {
            let input = load(&file)?;
            let a = input.algebra()?;
            let mut rep = Report::new(format!("{} ({} elements)", input.name(), a.len()));
            rep.pass("lattice order");
            rep.pass("monoid with unit");
            rep.pass("product monotone and residuated");
            if a.is_idempotent() && a.is_conic() {
                rep.absorb(a.verify_nucleus());
            }
            report_exit(out, &rep)
        }
        Command::Props { file } => {
            let input = load(&file)?;
            let a = input.algebra()?;
            let _ = writeln!(out, "{} ({} elements)", input.name(), a.len());
            for (name, w) in a.predicate_witnesses() {
                match w {
                    None => _ = writeln!(out, "  {name}: true"),
                    Some(w) => _ = writeln!(out, "  {name}: false ({w})"),
                }
            }
            if a.is_idempotent() {
                let _ = writeln!(out, "  semiconic: {}", is_semiconic_finite(&a));
            }
            let _ = writeln!(out, "  fsi: {}", is_fsi(&a));
            let _ = writeln!(out, "  si: {}", is_si(&a));
            Ok(())
        }
        Command::Emp { file, to } => {
            let input = load(&file)?;
            let text = match &input {
                Input::Algebra { .. } => emp_text(&input.emp()?)?,
                Input::Emp { name, .. } => algebra_json(name, &input.algebra()?),
            };
            write_file(&to, &text)
        }
        Command::Decompose { file } => {
            let input = load(&file)?;
            let a = input.algebra()?;
            let sys = extract_system(&a).map_err(|e| CliError::verify(e.to_string()))?;
            let sk = sys.skeleton();
            let names: Vec<&str> = sys.ascending().into_iter().map(|s| sk.label(s)).collect();
            let _ = writeln!(out, "skeleton: {}", names.join(" < "));
            for s in sys.ascending() {
                let blk = sys.block(s);
                let kind = if blk.is_trivial() {
                    "trivial"
                } else if blk.is_brouwerian() {
                    "brouwerian"
                } else if blk.is_lattice() {
                    "lattice"
                } else {
                    "prelattice"
                };
                let mut covers = Vec::new();
                for x in 0..blk.len() {
                    for y in 0..blk.len() {
                        let lt = |p: usize, q: usize| p != q && blk.leq(p, q);
                        if lt(x, y) && !(0..blk.len()).any(|z| lt(x, z) && lt(z, y)) {
                            covers.push(format!("{}<{}", blk.label(x), blk.label(y)));
                        }
                    }
                }
                let _ = write!(out, "block {} [{kind}]: {}", sk.label(s), blk.labels().join(" "));
                if !covers.is_empty() {
                    let _ = write!(out, "; covers {}", covers.join(" "));
                }
                let _ = writeln!(out);
            }
            Ok(())
        }
        Command::Amalgamate { a, b, c, class, block_bound, out: path } => {
            let v = formation(&a, &b, &c)?;
            let cert = match class {
                ConstructClass::ChainsStarInv => amalgamate_star_inv_chains(&v),
                ConstructClass::RigidConjunctiveConic => amalgamate_rigid_conjunctive_conic(&v, block_bound),
            }
            .map_err(amalg_error)?;
            report_exit(out, &verify_amalgam(&v, &cert))?;
            let _ = writeln!(out, "D has {} elements, strong: {}", cert.d.len(), cert.strong);
            write_file(&path, &algebra_json("D", &cert.d))
        }
        Command::SearchAmalgam { a, b, c, class, max_size, one_sided, out: path } => {
            let v = formation(&a, &b, &c)?;
            let class = match class {
                SearchClass::Chains => AmalgClass::Chains,
                SearchClass::Conic => AmalgClass::Conic,
                SearchClass::ConicFsi => AmalgClass::ConicFsi,
            };
            let res = search_amalgam(&v, class, max_size, one_sided);
            let what = if one_sided { "1-amalgam" } else { "amalgam" };
            match res.cert {
                None => Err(CliError::not_found(format!(
                    "no {what} up to {max_size} ({} class, {} candidates examined)",
                    class.name(),
                    res.candidates
                ))),
                Some(cert) => {
                    let rep = if one_sided { verify_one_sided(&v, &cert) } else { verify_amalgam(&v, &cert) };
                    report_exit(out, &rep)?;
                    let _ = writeln!(out, "smallest {what}: {} elements, strong: {}", cert.d.len(), cert.strong);
                    match path {
                        Some(p) => write_file(&p, &algebra_json("D", &cert.d)),
                        None => Ok(()),
                    }
                }
            }
        }
        Command::Enumerate { kind, size, count, emit } => {
            let (tag, algs): (&str, Box<dyn Iterator<Item = FinResLat>>) = match kind {
                EnumKind::Chains => ("chain", Box::new(enumerate_chains(size))),
                EnumKind::Conic => ("conic", Box::new(enumerate_conic(size))),
                EnumKind::Fsi => ("fsi", Box::new(enumerate_semiconic_fsi(size))),
            };
            if count {
                let _ = writeln!(out, "{}", algs.count());
                return Ok(());
            }
            let dir = emit.expect("clap requires --count or --emit");
            std::fs::create_dir_all(&dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
            let mut k = 0;
            for (i, a) in algs.enumerate() {
                let name = format!("{tag}_{size}_{i:04}");
                write_file(&dir.join(format!("{name}.json")), &algebra_json(&name, &a))?;
                k += 1;
            }
            let _ = writeln!(out, "wrote {k} files to {}", dir.display());
            Ok(())
        }
        Command::Render { file, view, out: path } => {
            let view = match view {
                ViewArg::Hasse => View::Hasse,
                ViewArg::Emp => View::Emp,
                ViewArg::Flow => View::Flow,
            };
            write_file(&path, &render(&load(&file)?, view)?)
        }
        Command::Library { cmd: LibraryCmd::List } => {
            for n in NAMES {
                let _ = writeln!(out, "{n}");
            }
            for t in TRIPLES {
                let _ = writeln!(out, "{t} (triple: {t}_A {t}_B {t}_C)");
            }
            Ok(())
        }
        Command::Library { cmd: LibraryCmd::Show { name } } => {
            let a = library(&name).map_err(|e| CliError::input(e.to_string()))?;
            let _ = write!(out, "{}", algebra_json(&name, &a));
            Ok(())
        }
    }
}

/// Run with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(args.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
