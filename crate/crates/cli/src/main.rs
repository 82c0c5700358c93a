//! Batch front door for the persistence engines: compute barcodes, apply
//! switch scripts with maintained state, run the brute-force oracles side
//! by side, and report operation-counter benchmarks.
//!
//! Errors print a single machine-parsable line `ERR <code> <event-index>`
//! to stderr and exit nonzero.

use clap::{Args, Parser, Subcommand};
use graph_persistence::gen::{random_standard, random_switch, random_zigzag};
use graph_persistence::model::{
    barcode_from_pairing, format_barcode, parse_filtration, parse_script, Filtration, Flavor,
    Interval, SwitchKind,
};
use graph_persistence::oracle::{reduce_standard, zigzag_by_ranks, OracleError};
use graph_persistence::std_switch::{StdUpdateState, SwitchError};
use graph_persistence::zigzag::{compute_zigzag, compute_zigzag_counted, convert};
use graph_persistence::zz_switch::{ZzKind, ZzUpdateState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "gpers", about = "Graph persistence barcodes and dynamic switch updates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FlavorArg {
    /// Standard (additions-only) filtration
    #[arg(long, conflicts_with = "zigzag")]
    standard: bool,
    /// Zigzag filtration (must start and end empty)
    #[arg(long)]
    zigzag: bool,
}

impl FlavorArg {
    fn get(&self) -> Result<Flavor, CliError> {
        match (self.standard, self.zigzag) {
            (true, false) => Ok(Flavor::Standard),
            (false, true) => Ok(Flavor::Zigzag),
            _ => Err(CliError::new("FlavorRequired", 0)),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the barcode of a filtration file
    Compute {
        #[command(flatten)]
        flavor: FlavorArg,
        /// Input filtration (one event per line)
        input: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Dump the converted cell-wise up-down filtration (zigzag only)
        #[arg(long)]
        emit_updown: Option<PathBuf>,
    },
    /// Apply a switch script while maintaining the barcode
    Update {
        #[command(flatten)]
        flavor: FlavorArg,
        input: PathBuf,
        /// Switch script: `S <i>` (standard) or `F|B|O|I <i>` (zigzag)
        #[arg(long)]
        script: PathBuf,
        /// Emit a barcode block after every switch
        #[arg(long)]
        trace: bool,
        /// Check the maintained state against a recomputation per switch
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the brute-force oracle instead of the production path
    Oracle {
        #[command(flatten)]
        flavor: FlavorArg,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Operation-counter benchmark table over random instances
    Bench {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Comma-separated event counts
        #[arg(long, default_value = "1024,4096,16384")]
        sizes: String,
        /// Switches measured per instance
        #[arg(long, default_value_t = 64)]
        switches: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct CliError {
    code: String,
    index: usize,
}

impl CliError {
    fn new(code: &str, index: usize) -> Self {
        CliError { code: code.to_string(), index }
    }
}

impl From<graph_persistence::model::FormatError> for CliError {
    fn from(e: graph_persistence::model::FormatError) -> Self {
        use graph_persistence::model::FormatError::*;
        match e {
            BadEvent(line, _) => CliError::new("BadEvent", line),
            SelfLoop(line) => CliError::new("SelfLoop", line),
            BadCommand(line, _) => CliError::new("BadCommand", line),
            Invalid(v) => CliError::new(&format!("{:?}", v.kind), v.index),
        }
    }
}

impl From<SwitchError> for CliError {
    fn from(e: SwitchError) -> Self {
        match e {
            SwitchError::OutOfRange(i) => CliError::new("OutOfRange", i),
            SwitchError::InvalidSwitch(i) => CliError::new("InvalidSwitch", i),
            SwitchError::KindMismatch(i) => CliError::new("KindMismatch", i),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(_: std::io::Error) -> Self {
        CliError::new("Io", 0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ERR {} {}", e.code, e.index);
            ExitCode::FAILURE
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load(input: &PathBuf, flavor: Flavor) -> Result<Filtration, CliError> {
    let text = std::fs::read_to_string(input)?;
    Ok(parse_filtration(&text, flavor)?)
}

fn standard_barcode(f: &Filtration) -> Vec<Interval> {
    let pairing = graph_persistence::compute_pairing(f);
    barcode_from_pairing(f, &pairing).expect("computed pairing is consistent")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Compute { flavor, input, output, emit_updown } => {
            let flavor = flavor.get()?;
            let f = load(&input, flavor)?;
            let bars = match flavor {
                Flavor::Standard => standard_barcode(&f),
                Flavor::Zigzag => {
                    if let Some(path) = &emit_updown {
                        std::fs::write(path, convert(&f).dump())?;
                    }
                    compute_zigzag(&f)
                }
            };
            emit(&output, &format_barcode(&bars))
        }
        Cmd::Update { flavor, input, script, trace, verify, output } => {
            let flavor = flavor.get()?;
            let f = load(&input, flavor)?;
            let cmds = parse_script(&std::fs::read_to_string(&script)?)?;
            let mut out = String::new();
            match flavor {
                Flavor::Standard => {
                    let mut state = StdUpdateState::from_filtration(&f);
                    let mut events = f.events().to_vec();
                    for (n, cmd) in cmds.iter().enumerate() {
                        if cmd.kind != SwitchKind::Standard {
                            return Err(CliError::new("BadCommand", n + 1));
                        }
                        state.switch(cmd.pos)?;
                        events.swap(cmd.pos - 1, cmd.pos);
                        let cur = Filtration::standard(events.clone())
                            .expect("switches preserve validity");
                        if verify {
                            let fresh = StdUpdateState::from_filtration(&cur);
                            if state.pairing() != fresh.pairing()
                                || state.forest_canonical() != fresh.forest_canonical()
                                || state.msf_edge_positions() != fresh.msf_edge_positions()
                            {
                                return Err(CliError::new("VerifyDiverged", cmd.pos));
                            }
                        }
                        if trace {
                            let bars = barcode_from_pairing(&cur, &state.pairing())
                                .expect("maintained pairing is consistent");
                            let _ = writeln!(out, "# step {}", n + 1);
                            out.push_str(&format_barcode(&bars));
                        }
                    }
                    if !trace {
                        let cur = Filtration::standard(events).expect("valid");
                        let bars = barcode_from_pairing(&cur, &state.pairing())
                            .expect("maintained pairing is consistent");
                        out.push_str(&format_barcode(&bars));
                    }
                }
                Flavor::Zigzag => {
                    let mut state = ZzUpdateState::preprocess(&f);
                    for (n, cmd) in cmds.iter().enumerate() {
                        let kind = match cmd.kind {
                            SwitchKind::Forward => ZzKind::Forward,
                            SwitchKind::Backward => ZzKind::Backward,
                            SwitchKind::Outward => ZzKind::Outward,
                            SwitchKind::Inward => ZzKind::Inward,
                            SwitchKind::Standard => {
                                return Err(CliError::new("BadCommand", n + 1));
                            }
                        };
                        state.switch(kind, cmd.pos)?;
                        if verify && state.barcode() != compute_zigzag(&state.filtration()) {
                            return Err(CliError::new("VerifyDiverged", cmd.pos));
                        }
                        if trace {
                            let _ = writeln!(out, "# step {}", n + 1);
                            out.push_str(&format_barcode(&state.barcode()));
                        }
                    }
                    if !trace {
                        out.push_str(&format_barcode(&state.barcode()));
                    }
                }
            }
            emit(&output, &out)
        }
        Cmd::Oracle { flavor, input, output } => {
            let flavor = flavor.get()?;
            let f = load(&input, flavor)?;
            let bars = match flavor {
                Flavor::Standard => {
                    let pairing = reduce_standard(&f);
                    barcode_from_pairing(&f, &pairing).expect("reduction pairing is consistent")
                }
                Flavor::Zigzag => zigzag_by_ranks(&f).map_err(|e| match e {
                    OracleError::TooLarge(sz) => CliError::new("TooLarge", sz),
                })?,
            };
            emit(&output, &format_barcode(&bars))
        }
        Cmd::Bench { seed, sizes, switches, output } => {
            let sizes: Vec<usize> = sizes
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| CliError::new("BadSize", 0)))
                .collect::<Result<_, _>>()?;
            // counters are the primary (deterministic) metric; wall clock
            // goes to stderr as an informative secondary
            let mut out = String::from(
                "# m\tcompute_ops\tstd_avg_ops\tstd_max_ops\tzz_fb_avg_ops\tzz_fb_max_ops\tzz_oi_ops\n",
            );
            for &m in &sizes {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
                let n = (m as f64).sqrt() as usize + 4;
                let zf = random_zigzag(&mut rng, n, m);

                let t0 = Instant::now();
                let mut compute_ops = 0u64;
                let _ = compute_zigzag_counted(&zf, &mut compute_ops);
                eprintln!("# m={m} compute_zigzag wall: {:?}", t0.elapsed());

                let sf = random_standard(&mut rng, n.max(4), m);
                let mut std_state = StdUpdateState::from_filtration(&sf);
                let (mut std_tot, mut std_max, mut std_cnt) = (0u64, 0u64, 0u64);
                for _ in 0..switches {
                    if let Some(i) =
                        graph_persistence::gen::random_standard_switch(&mut rng, &sf)
                    {
                        let before = std_state.ops();
                        if std_state.switch(i).is_ok() {
                            let d = std_state.ops() - before;
                            std_tot += d;
                            std_max = std_max.max(d);
                            std_cnt += 1;
                        }
                    }
                }

                let mut zz_state = ZzUpdateState::preprocess(&zf);
                let mut cur = zf.clone();
                let (mut fb_tot, mut fb_max, mut fb_cnt, mut oi_max) = (0u64, 0u64, 0u64, 0u64);
                for _ in 0..switches {
                    let Some((kind, i)) = random_switch(&mut rng, &cur) else { break };
                    let zkind = match kind {
                        SwitchKind::Forward => ZzKind::Forward,
                        SwitchKind::Backward => ZzKind::Backward,
                        SwitchKind::Outward => ZzKind::Outward,
                        SwitchKind::Inward => ZzKind::Inward,
                        SwitchKind::Standard => unreachable!(),
                    };
                    let before = zz_state.ops();
                    zz_state.switch(zkind, i)?;
                    let d = zz_state.ops() - before;
                    match zkind {
                        ZzKind::Forward | ZzKind::Backward => {
                            fb_tot += d;
                            fb_max = fb_max.max(d);
                            fb_cnt += 1;
                        }
                        _ => oi_max = oi_max.max(d),
                    }
                    cur = graph_persistence::gen::switched(&cur, i);
                }
                let avg = |tot: u64, cnt: u64| if cnt == 0 { 0 } else { tot / cnt };
                let _ = writeln!(
                    out,
                    "{m}\t{compute_ops}\t{}\t{std_max}\t{}\t{fb_max}\t{oi_max}",
                    avg(std_tot, std_cnt),
                    avg(fb_tot, fb_cnt),
                );
            }
            emit(&output, &out)
        }
    }
}
