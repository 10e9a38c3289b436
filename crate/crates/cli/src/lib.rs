//! Command-line front end. Exit codes: 0 all checks pass, 1 a check fails, 2 bad input or usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use homkit::dgca::{bracket_from_differential, check_dgca, DgcaData};
use homkit::homlie::{catalog, check_hom_lie, is_regular};
use homkit::homlie2::{check_homlie2, from_omni, SweepMode};
use homkit::io;
use homkit::omni::{check_dirac, check_omni_axioms, dirac_to_homlie, graph_of, thm1_equivalence, JacobiatorMode, OmniSpace};
use homkit::rep::{check_ds_properties, check_representation, cohomology_dim, rep_iff_morphism};
use homkit::{CheckItem, CheckReport, HomkitError, Matrix};

#[derive(Parser, Debug)]
#[command(name = "homkit", version, about = "Exact checks for hom-Lie algebras, representations and omni structures")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized trials.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hom-Lie axioms of an algebra file.
    Check { file: PathBuf },
    /// The twisted differential on the exterior algebra.
    Dgca {
        #[command(subcommand)]
        cmd: DgcaCmd,
    },
    /// Representation axioms and coboundary properties.
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Dimensions of the d^s cohomology.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        s: usize,
        /// Degree; all degrees when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Omni-hom-Lie algebras and Dirac structures.
    Omni {
        #[command(subcommand)]
        cmd: OmniCmd,
    },
    /// Hom-Lie 2-algebras.
    Homlie2 {
        #[command(subcommand)]
        cmd: Homlie2Cmd,
    },
    /// Built-in example algebras.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum DgcaCmd {
    Verify { file: PathBuf },
    Roundtrip { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        s_max: usize,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OmniCmd {
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    Dirac { file: PathBuf },
    Graph {
        file: PathBuf,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Thm1 {
        file: PathBuf,
        #[arg(long)]
        beta: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum Homlie2Cmd {
    Check {
        file: PathBuf,
        /// Sample this many quadruples for axiom (j) instead of sweeping all.
        #[arg(long)]
        samples: Option<usize>,
    },
    FromOmni {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Report(CheckReport),
    Document(String),
}

#[derive(Debug)]
enum CliError {
    Input(HomkitError),
    File(PathBuf, std::io::Error),
}

impl From<HomkitError> for CliError {
    fn from(e: HomkitError) -> Self {
        CliError::Input(e)
    }
}

fn subject(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::File(path.to_path_buf(), e))
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::File(path.to_path_buf(), e))
}

fn configure_threads() {
    if let Some(n) = std::env::var("HOMKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    configure_threads();
    match dispatch(&cli) {
        Ok(Outcome::Report(r)) => {
            let text = match cli.format {
                Format::Text => r.render_text(),
                Format::Json => io::render_report_json(&r),
            };
            let _ = write!(out, "{text}");
            if r.passed() {
                0
            } else {
                1
            }
        }
        Ok(Outcome::Document(text)) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(CliError::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(CliError::File(p, e)) => {
            let _ = writeln!(err, "error: cannot access {}: {e}", subject(&p));
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.cmd {
        Cmd::Check { file } => cmd_check(file),
        Cmd::Dgca { cmd } => match cmd {
            DgcaCmd::Verify { file } => {
                let g = io::parse_algebra(&read(file)?)?;
                Ok(Outcome::Report(CheckReport::with_items(subject(file), check_dgca(&g).items())))
            }
            DgcaCmd::Roundtrip { file } => {
                let g = io::parse_algebra(&read(file)?)?;
                let h = bracket_from_differential(&DgcaData::from_algebra(&g));
                let mut r = CheckReport::new(subject(file));
                r.push(CheckItem::new("round_trip", h == g, None));
                let hl = check_hom_lie(&h);
                r.push(CheckItem::new("certified_hom_lie", hl.passed(), hl.jacobi_witness.map(|(i, j, k)| homkit::report::basis_tuple("e", &[i, j, k]))));
                Ok(Outcome::Report(r))
            }
        },
        Cmd::Rep { cmd } => match cmd {
            RepCmd::Check { file, s_max, k_max } => cmd_rep(file, *s_max, *k_max),
        },
        Cmd::Cohomology { file, s, k } => {
            let r = io::parse_representation(&read(file)?)?;
            let n = r.algebra().dim();
            let degrees: Vec<usize> = match k {
                Some(k) if *k > n => {
                    return Err(HomkitError::InvariantViolation(format!("degree {k} exceeds the algebra dimension {n}")).into())
                }
                Some(k) => vec![*k],
                None => (0..=n).collect(),
            };
            let mut rep = CheckReport::new(subject(file));
            rep.push(CheckItem::pass("representation"));
            for k in degrees {
                rep.info(format!("dim H^{k} (s = {s})"), cohomology_dim(&r, *s, k)?.to_string());
            }
            Ok(Outcome::Report(rep))
        }
        Cmd::Omni { cmd } => cmd_omni(cmd, cli.seed),
        Cmd::Homlie2 { cmd } => match cmd {
            Homlie2Cmd::Check { file, samples } => {
                let d = io::parse_homlie2(&read(file)?)?;
                let mode = match samples {
                    Some(n) => SweepMode::Sampled {
                        samples: *n,
                        seed: cli.seed,
                    },
                    None => SweepMode::Exhaustive,
                };
                let mut r = check_homlie2(&d, mode);
                r.subject = subject(file);
                Ok(Outcome::Report(r))
            }
            Homlie2Cmd::FromOmni { dim, beta, out } => {
                let beta = io::parse_matrix(beta)?;
                if beta.rows() != *dim {
                    return Err(HomkitError::DimensionMismatch {
                        context: "--beta size",
                        expected: *dim,
                        found: beta.rows(),
                    }
                    .into());
                }
                let text = io::serialize_homlie2(&from_omni(&OmniSpace::new(beta)?));
                emit(text, out.as_deref())
            }
        },
        Cmd::Catalog { cmd } => match cmd {
            CatalogCmd::List => {
                let names: Vec<&str> = catalog::named().into_iter().map(|(n, _)| n).collect();
                Ok(Outcome::Document(format!("{}\n", names.join("\n"))))
            }
            CatalogCmd::Emit { name, out } => {
                let g = catalog::by_name(name)
                    .ok_or_else(|| HomkitError::Parse {
                        position: "catalog".into(),
                        message: format!("unknown catalog entry \"{name}\""),
                    })?;
                emit(io::serialize_algebra(&g), out.as_deref())
            }
        },
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        Some(p) => {
            write_out(p, &text)?;
            Ok(Outcome::Document(format!("wrote {}\n", subject(p))))
        }
        None => Ok(Outcome::Document(text)),
    }
}

fn cmd_check(file: &Path) -> Result<Outcome, CliError> {
    let g = io::parse_algebra(&read(file)?)?;
    let hl = check_hom_lie(&g);
    let mut r = CheckReport::new(subject(file));
    r.push(CheckItem::new(
        "is_endomorphism",
        hl.is_endomorphism,
        hl.endomorphism_witness.map(|(i, j)| homkit::report::basis_tuple("e", &[i, j])),
    ));
    r.push(CheckItem::new(
        "hom_jacobi",
        hl.hom_jacobi,
        hl.jacobi_witness.map(|(i, j, k)| homkit::report::basis_tuple("e", &[i, j, k])),
    ));
    r.info("dim", g.dim().to_string());
    r.info("regular", is_regular(&g).to_string());
    Ok(Outcome::Report(r))
}

fn cmd_rep(file: &Path, s_max: usize, k_max: usize) -> Result<Outcome, CliError> {
    let rep = io::parse_representation(&read(file)?)?;
    let mut r = CheckReport::with_items(subject(file), check_representation(&rep).items());
    if rep.beta().is_invertible() {
        let rm = rep_iff_morphism(&rep)?;
        r.push(CheckItem::new("is_morphism", rm.is_morphism, None));
        r.push(CheckItem::new("agree", rm.agree, None));
    } else {
        r.info("morphism", "skipped, beta is singular");
    }
    let ds = check_ds_properties(&rep, s_max, k_max)?;
    r.extend(ds.items().into_iter().map(|mut i| {
        i.name = format!("ds_{}", i.name);
        i
    }));
    r.info("grid", format!("s <= {s_max}, k <= {k_max}"));
    Ok(Outcome::Report(r))
}

fn space_for(file_beta: Option<&Matrix>, beta_arg: Option<&str>, m: usize) -> Result<OmniSpace, CliError> {
    let beta = match (beta_arg, file_beta) {
        (Some(b), _) => io::parse_matrix(b)?,
        (None, Some(t)) => t.clone(),
        (None, None) => Matrix::identity(m),
    };
    if beta.rows() != m {
        return Err(HomkitError::DimensionMismatch {
            context: "--beta size",
            expected: m,
            found: beta.rows(),
        }
        .into());
    }
    Ok(OmniSpace::new(beta)?)
}

fn cmd_omni(cmd: &OmniCmd, seed: u64) -> Result<Outcome, CliError> {
    match cmd {
        OmniCmd::Check { file, q, trials } => {
            let s = io::parse_omni_space(&read(file)?)?;
            let mut r = CheckReport::with_items(subject(file), check_omni_axioms(&s, *q, *trials, seed).items());
            let (agree, equivariant) = jacobiator_trials(&s, *trials, seed);
            r.push(CheckItem::new("jacobiator_modes_agree", agree.is_none(), agree));
            r.push(CheckItem::new("jacobiator_equivariant", equivariant.is_none(), equivariant));
            r.info("q", q.to_string());
            r.info("trials", trials.to_string());
            r.info("seed", seed.to_string());
            Ok(Outcome::Report(r))
        }
        OmniCmd::Dirac { file } => {
            let l = io::parse_omni_subspace(&read(file)?)?;
            let d = check_dirac(&l);
            let mut r = CheckReport::with_items(subject(file), d.items());
            r.info("dim", l.dim().to_string());
            if d.passed() {
                let g = dirac_to_homlie(&l)?;
                r.push(CheckItem::new("induced_hom_lie", check_hom_lie(&g).passed(), None));
                r.info("induced_regular", is_regular(&g).to_string());
            }
            Ok(Outcome::Report(r))
        }
        OmniCmd::Graph { file, beta, out } => {
            let f = io::parse_bilinear(&read(file)?)?;
            let s = space_for(f.twist(), beta.as_deref(), f.dim())?;
            emit(io::serialize_omni_subspace(&graph_of(&f, &s)?), out.as_deref())
        }
        OmniCmd::Thm1 { file, beta } => {
            let f = io::parse_bilinear(&read(file)?)?;
            let s = space_for(f.twist(), beta.as_deref(), f.dim())?;
            let t = thm1_equivalence(&f, s.beta())?;
            let items = t.items();
            let mut r = CheckReport::new(subject(file));
            r.push(items[2].clone());
            for side in &items[..2] {
                let value = match &side.witness {
                    Some(w) => format!("{} ({w})", side.passed),
                    None => side.passed.to_string(),
                };
                r.info(side.name.clone(), value);
            }
            Ok(Outcome::Report(r))
        }
    }
}

/// Definitional vs closed Jacobiator and `J∘δ = β∘J` on seeded random triples.
fn jacobiator_trials(s: &OmniSpace, trials: usize, seed: u64) -> (Option<String>, Option<String>) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x4a41_434f);
    let (mut agree, mut equiv) = (None, None);
    for t in 0..trials {
        let (x, y, z) = (s.random_element(&mut rng, 3), s.random_element(&mut rng, 3), s.random_element(&mut rng, 3));
        let j = s.jacobiator(&x, &y, &z, JacobiatorMode::Closed);
        if agree.is_none() && j != s.jacobiator(&x, &y, &z, JacobiatorMode::Definitional) {
            agree = Some(format!("random trial {}", t + 1));
        }
        let jd = s.jacobiator(&s.delta(&x), &s.delta(&y), &s.delta(&z), JacobiatorMode::Closed);
        if equiv.is_none() && jd != s.beta().apply(&j) {
            equiv = Some(format!("random trial {}", t + 1));
        }
    }
    (agree, equiv)
}
