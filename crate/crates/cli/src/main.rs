use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbitcode_core::analysis::{
    entropy_bound_check, global_covering_radius, residual_count, tail_bound, tail_bound_montecarlo,
    universal_bound_check, weight_enumerator,
};
use orbitcode_core::cyclotomic::exact_length_counts;
use orbitcode_core::format::{
    parse_field_config, parse_package, parse_seeds, parse_vector, write_model, write_package,
    write_seeds, write_vector, PackageFile,
};
use orbitcode_core::residual::{decode_residual, encode_residual, storage_cost};
use orbitcode_core::sparse::{choose_backend, prony_recover};
use orbitcode_core::spectral::{decode_seeds, encode_seeds};
use orbitcode_core::trace::trace_dft;
use orbitcode_core::{CyclotomicPartition, Dft, Elem, Error, FieldTower, ResidualBackend, TraceTableSet};

#[derive(Parser)]
#[command(name = "orbitcode", version, about = "Frobenius-orbit spectral codec toolkit")]
struct Cli {
    /// Worker threads for parallel library routines.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Field config file.
    #[arg(long)]
    field: PathBuf,
}

#[derive(Args)]
struct Transform {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long)]
    n: usize,
    /// Use `ω = α^E` instead of `α^((Q-1)/n)`.
    #[arg(long)]
    omega_exp: Option<u64>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tower parameters.
    FieldInfo(FieldArg),
    /// List the q-cyclotomic classes modulo n.
    Classes {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Forward transform of a vector.
    Dft(Transform),
    /// Inverse transform of a spectrum.
    Idft(Transform),
    /// Compress a consistent spectrum to its orbit seeds.
    Encode {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand orbit seeds back to the full spectrum.
    Decode {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table-driven transform of a seed vector into K^n.
    TraceDft {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega_exp: Option<u64>,
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a vector into a class-consistent layer and a residual.
    ResidualEncode {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep at most this many residual entries.
        #[arg(long)]
        budget: Option<usize>,
        /// Store the residual as a T-term sparse model when that is exact and cheaper.
        #[arg(long = "T", alias = "terms")]
        terms: Option<usize>,
        #[arg(long)]
        omega_exp: Option<u64>,
    },
    /// Reassemble a vector from a residual package.
    ResidualDecode {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        omega_exp: Option<u64>,
    },
    /// Class counts, weight enumerator and covering radius.
    Analyze {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: u64,
    },
    /// Universal, entropy and residual-count bounds.
    Bounds {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Residual fraction for the entropy check.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Recover a sparse model from its first 2T values.
    Prony {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "T", alias = "terms")]
        terms: usize,
        #[arg(long)]
        omega_exp: Option<u64>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the per-class match tail.
    McTail {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_tower(arg: &FieldArg) -> CliResult<FieldTower> {
    Ok(parse_field_config(&read(&arg.field)?)?)
}

fn plan(tower: &FieldTower, n: usize, omega_exp: Option<u64>) -> CliResult<Dft<'_>> {
    Ok(match omega_exp {
        Some(e) => Dft::new(tower, n, tower.alpha_pow(e))?,
        None => Dft::with_default_root(tower, n)?,
    })
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn field_info(tower: &FieldTower) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p={}", tower.p());
    let _ = writeln!(s, "a={}", tower.a());
    let _ = writeln!(s, "q={}", tower.q());
    let _ = writeln!(s, "m={}", tower.m());
    let _ = writeln!(s, "Q={}", tower.order());
    let _ = writeln!(s, "k_modulus={}", join(tower.k_modulus()));
    let _ = writeln!(s, "l_modulus={}", join(tower.l_modulus()));
    let _ = writeln!(s, "alpha={}", tower.alpha());
    let _ = writeln!(s, "dlog_table={}", if tower.has_dlog_table() { "yes" } else { "no" });
    s
}

fn classes(n: u64, q: u64) -> CliResult<String> {
    let p = CyclotomicPartition::new(n, q)?;
    let mut s = String::new();
    for c in p.classes() {
        let _ = writeln!(s, "{}:{}:{}", c.leader, c.len(), join(&c.members));
    }
    let _ = writeln!(s, "kappa={}", p.kappa());
    Ok(s)
}

fn analyze(tower: &FieldTower, n: u64) -> CliResult<String> {
    let p = CyclotomicPartition::new(n, tower.q())?;
    plan(tower, n as usize, None)?;
    let mut s = String::new();
    let _ = writeln!(s, "n={n}");
    let _ = writeln!(s, "kappa={}", p.kappa());
    for (e, (a, b)) in exact_length_counts(n, tower.q())? {
        let _ = writeln!(s, "length={e} A={a} B={b}");
    }
    let _ = writeln!(s, "weight_enumerator={}", join(&weight_enumerator(&p).coeffs));
    let _ = writeln!(s, "covering_radius={}", global_covering_radius(&p, tower.m()));
    Ok(s)
}

fn bounds(tower: &FieldTower, n: usize, s: usize, delta: Option<f64>) -> CliResult<String> {
    let (q, m) = (tower.q(), tower.m());
    let u = universal_bound_check(n, q, m, s);
    let c = residual_count(n, tower.order(), s);
    let mut out = String::new();
    let _ = writeln!(out, "universal_lhs={}", u.lhs);
    let _ = writeln!(out, "universal_rhs={}", u.rhs);
    let _ = writeln!(out, "universal_holds={}", u.holds);
    let _ = writeln!(out, "residual_count={}", c.count);
    let _ = writeln!(out, "residual_log2={:.6}", c.log2);
    let _ = writeln!(out, "residual_bits={}", c.bits);
    let _ = writeln!(out, "storage_cost={}", storage_cost(n, q, m, s));
    if let Some(delta) = delta {
        let e = entropy_bound_check(delta, q, m, n)?;
        let _ = writeln!(out, "entropy_s={}", e.s);
        let _ = writeln!(out, "entropy_lhs={:.9}", e.lhs);
        let _ = writeln!(out, "entropy_rhs={:.9}", e.rhs);
        let _ = writeln!(out, "entropy_satisfied={}", e.satisfied);
    }
    Ok(out)
}

fn mc_tail(tower: &FieldTower, ell: usize, trials: u64, seed: u64) -> CliResult<String> {
    let tails = tail_bound_montecarlo(tower, ell, trials, seed)?;
    let mut s = String::new();
    let _ = writeln!(s, "ell={ell} m={} trials={trials} seed={seed}", tower.m());
    for (r, pr) in tails.iter().enumerate() {
        let b = tail_bound(ell, tower.m(), tower.q(), r);
        let _ = writeln!(s, "r={r} empirical={pr:.6} bound={}", b.clamped);
    }
    Ok(s)
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match cli.command {
        Command::FieldInfo(f) => emit(None, &field_info(&load_tower(&f)?)),
        Command::Classes { n, q } => emit(None, &classes(n, q)?),
        Command::Dft(t) => {
            let tower = load_tower(&t.field)?;
            let dft = plan(&tower, t.n, t.omega_exp)?;
            let v = parse_vector(&tower, &read(&t.input)?)?;
            emit(t.out.as_deref(), &write_vector(&dft.forward(&v)?))
        }
        Command::Idft(t) => {
            let tower = load_tower(&t.field)?;
            let dft = plan(&tower, t.n, t.omega_exp)?;
            let v = parse_vector(&tower, &read(&t.input)?)?;
            emit(t.out.as_deref(), &write_vector(&dft.inverse(&v)?))
        }
        Command::Encode { field, n, input, out } => {
            let tower = load_tower(&field)?;
            let spectrum = parse_vector(&tower, &read(&input)?)?;
            let n = n.unwrap_or(spectrum.len());
            plan(&tower, n, None)?;
            let p = CyclotomicPartition::new(n as u64, tower.q())?;
            let seeds = encode_seeds(&tower, &p, &spectrum)?;
            emit(out.as_deref(), &write_seeds(&seeds))
        }
        Command::Decode { field, input, out } => {
            let tower = load_tower(&field)?;
            let seeds = parse_seeds(&tower, &read(&input)?)?;
            plan(&tower, seeds.n(), None)?;
            emit(out.as_deref(), &write_vector(&decode_seeds(&tower, &seeds)?))
        }
        Command::TraceDft { field, n, omega_exp, seeds, out } => {
            let tower = load_tower(&field)?;
            let omega = plan(&tower, n, omega_exp)?.omega();
            let seeds = parse_seeds(&tower, &read(&seeds)?)?;
            if seeds.n() != n {
                return Err(Error::LengthMismatch { expected: n, actual: seeds.n() }.into());
            }
            let tables = TraceTableSet::build(&tower, seeds.partition(), omega)?;
            emit(out.as_deref(), &write_vector(&trace_dft(&tower, &seeds, &tables)?))
        }
        Command::ResidualEncode { field, n, input, out, budget, terms, omega_exp } => {
            let tower = load_tower(&field)?;
            let omega = plan(&tower, n, omega_exp)?.omega();
            let g = parse_vector(&tower, &read(&input)?)?;
            let p = CyclotomicPartition::new(n as u64, tower.q())?;
            let mut pkg = encode_residual(&tower, &p, &g)?;
            if let Some(b) = budget {
                pkg.truncate(b);
            }
            let mut file = PackageFile::from_package(&pkg);
            if let Some(t) = terms {
                let mut h = vec![Elem::ZERO; n];
                for &(i, x) in &pkg.residual {
                    h[i] = x;
                }
                file.residual = choose_backend(&tower, &h, t, omega);
            }
            emit(out.as_deref(), &write_package(&file))
        }
        Command::ResidualDecode { field, input, out, omega_exp } => {
            let tower = load_tower(&field)?;
            let file = parse_package(&tower, &read(&input)?)?;
            let omega = match file.residual {
                ResidualBackend::Sparse(_) => plan(&tower, file.seeds.n(), omega_exp)?.omega(),
                ResidualBackend::List(_) => Elem::ONE,
            };
            let pkg = file.into_package(&tower, omega)?;
            emit(out.as_deref(), &write_vector(&decode_residual(&tower, &pkg)?))
        }
        Command::Analyze { field, n } => emit(None, &analyze(&load_tower(&field)?, n)?),
        Command::Bounds { field, n, s, delta } => emit(None, &bounds(&load_tower(&field)?, n, s, delta)?),
        Command::Prony { field, n, terms, omega_exp, input, out } => {
            let tower = load_tower(&field)?;
            let omega = plan(&tower, n, omega_exp)?.omega();
            let h = parse_vector(&tower, &read(&input)?)?;
            let model = prony_recover(&tower, &h, terms, n, omega)?;
            emit(out.as_deref(), &write_model(&model))
        }
        Command::McTail { field, ell, trials, seed } => {
            emit(None, &mc_tail(&load_tower(&field)?, ell, trials, seed)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.kind());
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: Io: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}
