//! Command-line front end. [`dispatch`] parses arguments and writes all
//! results to the supplied stream so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, AdderSpec, Mode};
use crate::circuit::{lower_multi_controlled, Circuit, Qubit};
use crate::error::Error;
use crate::faultlab::{
    call_bound, fault_detect, fault_localize, inject, parse_faults, trigger_count,
};
use crate::modarith::{self, register_width, ModMulSpec};
use crate::resources::{self, Harness};
use crate::shor;
use crate::sim::{run, BasisState};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Args(#[from] clap::Error),
    #[error(transparent)]
    Run(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "toffoli-shor",
    version,
    about = "Toffoli-network arithmetic, resource counts and period finding"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synthesize a circuit, print its resource report, optionally save it
    Synth(SynthArgs),
    /// Run a reversible circuit file on a basis state
    Sim {
        /// Circuit file in the text format
        #[arg(long)]
        circuit: PathBuf,
        /// Input bits, character i is qubit i
        #[arg(long)]
        input: String,
    },
    /// Measure Toffoli count and depth over a list of sizes, as CSV
    Scale {
        /// Circuit family to measure
        #[arg(long, value_enum)]
        harness: HarnessArg,
        /// Comma-separated sizes; `a,b,...,z` continues the pattern of a,b
        #[arg(long, default_value = "8,16,...,512")]
        sizes: String,
        /// CSV output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Factor N, or run period finding for a fixed base with --a
    Shor {
        #[arg(long = "N")]
        modulus: u64,
        /// Fixed base; skips the random choice and the gcd shortcut
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random bases to try
        #[arg(long, default_value_t = 10)]
        attempts: usize,
    },
    /// Inject faults from a file, then detect and localize them
    Faultscan {
        /// Circuit file in the text format
        #[arg(long)]
        circuit: PathBuf,
        /// Fault lines: `missing <i>` or `bitflip <i> <q>`
        #[arg(long)]
        faults: PathBuf,
        /// Number of random test vectors
        #[arg(long, default_value_t = 8)]
        vectors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum HarnessArg {
    Adder,
    Modmul,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SynthKind {
    Carry,
    Add,
    Cadd,
    Cmp,
    Modadd,
    Modmul,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum ModeArg {
    #[default]
    Serial,
    Parallel,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Serial => Mode::Serial,
            ModeArg::Parallel => Mode::Parallel,
        }
    }
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(value_enum)]
    pub kind: SynthKind,
    /// Register size (carry, add, cadd, cmp)
    #[arg(long)]
    pub n: Option<usize>,
    /// Classical constant (carry, add, cadd, cmp)
    #[arg(long)]
    pub c: Option<BigUint>,
    /// Adder recursion mode
    #[arg(long, value_enum, default_value_t = ModeArg::Serial)]
    pub mode: ModeArg,
    /// Modulus (modadd, modmul)
    #[arg(long = "N")]
    pub modulus: Option<BigUint>,
    /// Addend or multiplier (modadd, modmul)
    #[arg(long)]
    pub a: Option<BigUint>,
    /// Number of control qubits, 0 to 2 (cadd needs at least 1)
    #[arg(long)]
    pub ctrls: Option<usize>,
    /// Write the circuit in the text format to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn need<T: Clone>(v: &Option<T>, flag: &str, kind: SynthKind) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Failed(format!("synth {kind:?} requires --{flag}").to_lowercase()))
}

fn span(start: usize, len: usize) -> Vec<Qubit> {
    (start..start + len).collect()
}

fn lowered(c: Circuit, pool: &[Qubit]) -> Result<Circuit, CliError> {
    Ok(lower_multi_controlled(&c, pool)?)
}

pub fn synthesize(args: &SynthArgs) -> Result<Circuit, CliError> {
    let kind = args.kind;
    let ctrl_count = args.ctrls.unwrap_or(match kind {
        SynthKind::Cadd => 1,
        _ => 0,
    });
    if ctrl_count > 2 {
        return Err(CliError::Failed("--ctrls must be 0, 1 or 2".into()));
    }
    let mode: Mode = args.mode.into();
    match kind {
        SynthKind::Carry | SynthKind::Cmp => {
            let n = need(&args.n, "n", kind)?;
            let c = need(&args.c, "c", kind)?;
            if n < 2 {
                return Err(CliError::Failed("--n must be at least 2".into()));
            }
            // a/b = 0..n, g = n..2n-1, target = 2n-1, controls after
            let a = span(0, n);
            let g = span(n, n - 1);
            let ctrls = span(2 * n, ctrl_count);
            let circuit = if matches!(kind, SynthKind::Carry) {
                arith::carry_circuit(&c, &a, &g, 2 * n - 1, &ctrls)?
            } else {
                arith::comparator(&c, &a, &g, 2 * n - 1, &ctrls)?
            };
            let pool: Vec<Qubit> = a.iter().chain(&g).copied().collect();
            lowered(circuit, &pool)
        }
        SynthKind::Add | SynthKind::Cadd => {
            let n = need(&args.n, "n", kind)?;
            let c = need(&args.c, "c", kind)?;
            if matches!(kind, SynthKind::Cadd) && ctrl_count == 0 {
                return Err(CliError::Failed("cadd needs --ctrls 1 or 2".into()));
            }
            let d = match mode {
                Mode::Serial => 1,
                Mode::Parallel => (n / 2).max(1),
            };
            let x = span(0, n);
            let dirty = span(n, d);
            let spec = AdderSpec::new(x.clone(), c)
                .dirty(dirty.clone())
                .ctrls(span(n + d, ctrl_count))
                .mode(mode);
            let circuit = if ctrl_count > 0 {
                arith::ctrl_const_adder(&spec)?
            } else {
                arith::const_adder(&spec)?
            };
            let pool: Vec<Qubit> = x.iter().chain(&dirty).copied().collect();
            lowered(circuit, &pool)
        }
        SynthKind::Modadd => {
            let modulus = need(&args.modulus, "N", kind)?;
            let a = need(&args.a, "a", kind)?;
            let n = register_width(&modulus).max(2);
            // b = 0..n, indicator = n, g = n+1..2n, controls after
            Ok(modarith::mod_adder(
                &a,
                &modulus,
                &span(0, n),
                n,
                &span(n + 1, n - 1),
                &span(2 * n, ctrl_count),
                mode,
            )?)
        }
        SynthKind::Modmul => {
            let modulus = need(&args.modulus, "N", kind)?;
            let a = need(&args.a, "a", kind)?;
            let spec = ModMulSpec::new(modulus, a, true)?.with_mode(mode);
            Ok(modarith::ctrl_modmul_inplace(&spec)?)
        }
    }
}

/// Expands `8,16,...,512` (geometric when the first step is a whole ratio
/// of at least 2, arithmetic otherwise) and plain comma lists.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = |t: &str| CliError::Failed(format!("bad size list `{t}`"));
    let mut out: Vec<usize> = Vec::new();
    let mut pending_ellipsis = false;
    for tok in text.split(',').map(str::trim) {
        if tok == "..." {
            if out.len() < 2 || pending_ellipsis {
                return Err(bad(text));
            }
            pending_ellipsis = true;
            continue;
        }
        let v: usize = tok.parse().map_err(|_| bad(text))?;
        if pending_ellipsis {
            let (p, q) = (out[out.len() - 2], out[out.len() - 1]);
            let geometric = p > 0 && q % p == 0 && q / p >= 2;
            let mut cur = q;
            loop {
                let next = if geometric {
                    cur * (q / p)
                } else {
                    cur + q.saturating_sub(p)
                };
                if next >= v || next <= cur {
                    break;
                }
                out.push(next);
                cur = next;
            }
            pending_ellipsis = false;
        }
        out.push(v);
    }
    if pending_ellipsis || out.is_empty() {
        return Err(bad(text));
    }
    Ok(out)
}

fn random_vectors(width: usize, count: usize, seed: u64) -> Vec<BasisState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| BasisState::random(width, &mut rng))
        .collect()
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Command::Synth(args) => {
            let circuit = synthesize(&args)?;
            if let Some(path) = &args.out {
                fs::write(path, circuit.to_text()?)?;
            }
            writeln!(out, "{}", resources::report(&circuit)?)?;
        }
        Command::Sim { circuit, input } => {
            let c = Circuit::from_text(&fs::read_to_string(circuit)?)?;
            let s = BasisState::from_bit_str(&input)?;
            writeln!(out, "{}", run(&c, &s)?.to_bit_string())?;
        }
        Command::Scale {
            harness,
            sizes,
            out: path,
            seed,
        } => {
            let harness = match harness {
                HarnessArg::Adder => Harness::Adder,
                HarnessArg::Modmul => Harness::CtrlModmul,
            };
            let rows = resources::scaling_table(&parse_sizes(&sizes)?, harness, seed)?;
            let csv = resources::to_csv(&rows);
            match path {
                Some(p) => fs::write(p, csv)?,
                None => out.write_all(csv.as_bytes())?,
            }
        }
        Command::Shor {
            modulus,
            a,
            seed,
            attempts,
        } => {
            let n = register_width(&BigUint::from(modulus));
            match a {
                Some(a) => {
                    let r = shor::shor_period_finding(modulus, a, seed)?;
                    out.write_all(r.transcript().as_bytes())?;
                }
                None => {
                    let r = shor::shor_factor(modulus, attempts, seed)?;
                    out.write_all(r.transcript.as_bytes())?;
                    if r.factors.is_none() {
                        return Err(CliError::Failed(format!(
                            "no factors of {modulus} after {attempts} attempts"
                        )));
                    }
                }
            }
            eprintln!(
                "note: {} semiclassical rotations per run need synthesis under error correction",
                2 * n
            );
        }
        Command::Faultscan {
            circuit,
            faults,
            vectors,
            seed,
        } => {
            let c = Circuit::from_text(&fs::read_to_string(circuit)?)?;
            let faults = parse_faults(&fs::read_to_string(faults)?)?;
            let vs = random_vectors(c.width(), vectors, seed);
            for f in &faults {
                writeln!(
                    out,
                    "fault {f} triggered_by={}/{}",
                    trigger_count(&c, *f, &vs)?,
                    vs.len()
                )?;
            }
            let exec = inject(&c, &faults)?;
            let detected = fault_detect(&exec, &c, &vs)?;
            writeln!(out, "detected={detected}")?;
            if detected {
                exec.reset_calls();
                for r in fault_localize(&exec, &c, &vs)? {
                    writeln!(out, "range {} {}", r.start, r.end)?;
                }
                writeln!(
                    out,
                    "calls={} bound={}",
                    exec.calls(),
                    call_bound(c.len(), vs.len())
                )?;
            }
        }
    }
    Ok(())
}
