use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use st2::catalogue::{canned_scene, Canned};
use st2::moves::{
    load_script, parse_locus, parse_witness, run_script, save_script, verify_event_with_seed, EventSpec, MoveEvent,
    MoveKind, QClass,
};
use st2::numbering::{analyze, DEFAULT_RAY_SEED};
use st2::oracle::oracle_check;
use st2::report::{point_string, render_entry, render_ledger, Format, Report};
use st2::surface::{parse_scene, write_scene, Scene};
use st2::Error;

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATE: u8 = 3;
const EXIT_NON_GENERIC: u8 = 4;
const EXIT_INCONSISTENT: u8 = 5;

#[derive(Parser)]
#[command(
    name = "st2",
    version,
    about = "Triple-point invariant of immersed surfaces, with jump verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Seed for ray directions.
    #[arg(long, default_value_t = DEFAULT_RAY_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Arrangement, triple-point indices and St2 of a scene.
    Analyze {
        scene: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Checks one jump between two scenes.
    VerifyMove {
        before: PathBuf,
        after: PathBuf,
        /// E, H, T or Q.
        kind: String,
        #[arg(long)]
        qclass: Option<String>,
        /// `(x,y,z)->(x,y,z)`: points in the regions the moving sheet leaves and enters.
        #[arg(long)]
        witness: Option<String>,
        /// `(x,y,z),r`: a ball around the event.
        #[arg(long)]
        locus: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Ledger of a move script.
    RunScript {
        script: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Writes a catalogue scene, or a script with its scenes.
    GenScene { name: String, out: PathBuf },
    /// Compares ray-cast indices against the voxel oracle.
    OracleCheck {
        scene: PathBuf,
        /// Voxel cells per axis.
        resolution_arg: Option<usize>,
        #[arg(long)]
        resolution: Option<usize>,
        /// Extra random off-surface points to compare.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = DEFAULT_RAY_SEED)]
        seed: u64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownName(_) | Error::InvalidArgument(_) => EXIT_PARSE,
        Error::Validation { .. } => EXIT_VALIDATE,
        Error::NonGeneric { .. } => EXIT_NON_GENERIC,
        Error::Inconsistent(_) => EXIT_INCONSISTENT,
        _ => EXIT_OTHER,
    }
}

fn read_scene(path: &Path) -> Result<Scene, Error> {
    parse_scene(&std::fs::read_to_string(path)?)
}

fn cmd_analyze(path: &Path, common: &Common) -> Result<u8, Error> {
    let scene = read_scene(path)?;
    match analyze(&scene, common.seed) {
        Ok(a) => {
            print!("{}", Report::generic(&scene, &a).render(common.format.into()));
            Ok(0)
        }
        Err(Error::NonGeneric { witnesses }) => {
            print!("{}", Report::non_generic(&witnesses).render(common.format.into()));
            eprintln!("error: scene is not generic; first witness: {}", witnesses[0]);
            Ok(EXIT_NON_GENERIC)
        }
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify_move(
    before: &Path,
    after: &Path,
    kind: &str,
    qclass: Option<&str>,
    witness: Option<&str>,
    locus: Option<&str>,
    common: &Common,
) -> Result<u8, Error> {
    let kind: MoveKind = kind.parse()?;
    let spec = EventSpec {
        kind,
        claimed_q_class: qclass.map(str::parse::<QClass>).transpose()?,
        witness: witness.map(|w| parse_witness(w, 0)).transpose()?,
        locus: locus.map(|l| parse_locus(l, 0)).transpose()?,
    };
    let event = MoveEvent {
        spec,
        before: read_scene(before)?,
        after: read_scene(after)?,
    };
    let entry = verify_event_with_seed(&event, common.seed)?;
    print!("{}", render_entry(&entry, common.format.into()));
    Ok(if entry.verdict.is_consistent() {
        0
    } else {
        EXIT_INCONSISTENT
    })
}

fn cmd_run_script(path: &Path, format: Format) -> Result<u8, Error> {
    let script = load_script(path)?;
    let ledger = run_script(&script)?;
    print!("{}", render_ledger(&script.title, &ledger, format));
    Ok(if ledger.verdict.is_consistent() {
        0
    } else {
        EXIT_INCONSISTENT
    })
}

fn cmd_gen_scene(name: &str, out: &Path) -> Result<u8, Error> {
    match canned_scene(name)? {
        Canned::Scene(s) => std::fs::write(out, write_scene(&s))?,
        Canned::Script(m) => save_script(&m, out)?,
    }
    Ok(0)
}

fn cmd_oracle_check(path: &Path, resolution: usize, random: usize, seed: u64) -> Result<u8, Error> {
    let scene = read_scene(path)?;
    let c = oracle_check(&scene, resolution, seed, random)?;
    println!("resolution={resolution} agree={} disagree={}", c.agree, c.disagree);
    if let Some((p, ray, voxel)) = &c.first_disagreement {
        println!("first_disagreement point={} ray={ray} voxel={voxel}", point_string(p));
        return Ok(EXIT_INCONSISTENT);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { scene, common } => cmd_analyze(scene, common),
        Command::VerifyMove {
            before,
            after,
            kind,
            qclass,
            witness,
            locus,
            common,
        } => cmd_verify_move(
            before,
            after,
            kind,
            qclass.as_deref(),
            witness.as_deref(),
            locus.as_deref(),
            common,
        ),
        Command::RunScript { script, format } => cmd_run_script(script, (*format).into()),
        Command::GenScene { name, out } => cmd_gen_scene(name, out),
        Command::OracleCheck {
            scene,
            resolution_arg,
            resolution,
            random,
            seed,
        } => cmd_oracle_check(scene, resolution.or(*resolution_arg).unwrap_or(64), *random, *seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
