use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mcl::groups::{action_group, aut_group_of_m, wreath_order, base_centralizer};
use mcl::lattice::Mcl;
use mcl::representation::{
    clock_matrix, coatom_projections, matrix_units, qft_matrix, shift_matrix, CMatrix, Tolerance,
};
use mcl::verify::{self, Config, Suite};
use mcl::{Error, Modulus};

/// Largest Hilbert-space dimension `rep emit` will write out.
const EMIT_DIM_LIMIT: u128 = 32;
/// Largest element count (bottom included) for `ops-table`.
const OPS_TABLE_LIMIT: u128 = 1_000;

#[derive(Parser)]
#[command(name = "mcl", version, about = "Critical multi-cubic lattices over Z_{2k+1}")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Odd modulus 2k+1 >= 3.
    #[arg(long, global = true, default_value = "5", value_parser = parse_modulus)]
    modulus: Modulus,
    /// Size of the index set I.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    indices: u64,
    /// Numerical tolerance for span and rank decisions.
    #[arg(long, global = true, default_value = "1e-9", value_parser = parse_tolerance)]
    tolerance: Tolerance,
    /// Largest enumeration the command may perform.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u128,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate lattice elements.
    Lattice {
        #[arg(value_enum)]
        what: LatticeWhat,
    },
    /// Shorthand for `lattice atoms`.
    Atoms,
    /// Shorthand for `lattice coatoms`.
    Coatoms,
    /// Shorthand for `lattice ops-table`.
    OpsTable,
    /// Automorphism group of the lattice.
    Aut(AutArgs),
    /// Matrix representation.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Shorthand for `rep emit`.
    Emit(EmitArgs),
    /// Run a verification suite; prints JSON lines.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeWhat {
    Atoms,
    Coatoms,
    OpsTable,
}

#[derive(Args)]
struct AutArgs {
    /// Report the group order.
    #[arg(long)]
    order: bool,
    /// Report transitivity on atoms.
    #[arg(long)]
    transitive: bool,
    /// Report the center.
    #[arg(long)]
    center: bool,
}

#[derive(Subcommand)]
enum RepCommand {
    Emit(EmitArgs),
}

#[derive(Args)]
struct EmitArgs {
    #[arg(value_enum)]
    what: EmitWhat,
    /// Index for `matrix-units`.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitWhat {
    Shift,
    Clock,
    Qft,
    CoatomProjections,
    MatrixUnits,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Lattice,
    Delta,
    Implication,
    Groups,
    Representation,
    Generation,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Lattice => Suite::Lattice,
            SuiteArg::Delta => Suite::Delta,
            SuiteArg::Implication => Suite::Implication,
            SuiteArg::Groups => Suite::Groups,
            SuiteArg::Representation => Suite::Representation,
            SuiteArg::Generation => Suite::Generation,
        }
    }
}

fn parse_modulus(s: &str) -> Result<Modulus, String> {
    let n: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Modulus::new(n).map_err(|e| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<Tolerance, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    Tolerance::new(t).map_err(|e| e.to_string())
}

enum Failure {
    /// A check failed or a budget was refused.
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::Overflow => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let indices = match usize::try_from(g.indices) {
        Ok(i) => i,
        Err(_) => {
            eprintln!("error: --indices too large");
            return ExitCode::from(2);
        }
    };
    let mcl = match Mcl::new(g.modulus, indices) {
        Ok(m) => m.with_budget(g.budget),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Lattice { what } => cmd_lattice(&mcl, *what),
        Command::Atoms => cmd_lattice(&mcl, LatticeWhat::Atoms),
        Command::Coatoms => cmd_lattice(&mcl, LatticeWhat::Coatoms),
        Command::OpsTable => cmd_lattice(&mcl, LatticeWhat::OpsTable),
        Command::Aut(a) => cmd_aut(&mcl, a),
        Command::Rep {
            command: RepCommand::Emit(e),
        }
        | Command::Emit(e) => cmd_emit(&mcl, e),
        Command::Verify { suite } => {
            let cfg = Config {
                modulus: g.modulus,
                indices,
                tolerance: g.tolerance,
                budget: g.budget,
                seed: g.seed,
            };
            cmd_verify(&cfg, (*suite).into())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Write to standard output; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string(v).expect("serializable")));
}

fn cmd_lattice(mcl: &Mcl, what: LatticeWhat) -> CmdResult {
    match what {
        LatticeWhat::Atoms => print_json(&serde_json::to_value(mcl.atoms()?).expect("serializable")),
        LatticeWhat::Coatoms => {
            print_json(&serde_json::to_value(mcl.coatoms()?).expect("serializable"))
        }
        LatticeWhat::OpsTable => {
            let count = (mcl.modulus().get() as u128)
                .checked_pow(mcl.indices() as u32)
                .map(|c| c + 1)
                .ok_or(Error::Overflow)?;
            if count > OPS_TABLE_LIMIT.min(mcl.budget()) {
                return Err(Error::BudgetExceeded {
                    requested: count,
                    budget: OPS_TABLE_LIMIT.min(mcl.budget()),
                }
                .into());
            }
            let elems = mcl.elements_with_bottom()?;
            let index = |m: &mcl::MclElement| elems.iter().position(|e| e == m).expect("closed");
            let mut meet = Vec::with_capacity(elems.len());
            let mut join = Vec::with_capacity(elems.len());
            for a in &elems {
                let mut mrow = Vec::with_capacity(elems.len());
                let mut jrow = Vec::with_capacity(elems.len());
                for b in &elems {
                    mrow.push(index(&a.meet(b)?));
                    jrow.push(index(&a.join(b)?));
                }
                meet.push(mrow);
                join.push(jrow);
            }
            print_json(&json!({ "elements": elems, "meet": meet, "join": join }));
        }
    }
    Ok(())
}

fn cmd_aut(mcl: &Mcl, a: &AutArgs) -> CmdResult {
    let all = !(a.order || a.transitive || a.center);
    let gens = aut_group_of_m(mcl)?;
    let mut group = action_group(&gens, mcl)?;
    let budget = usize::try_from(mcl.budget()).unwrap_or(usize::MAX);
    let mut report = serde_json::Map::new();
    report.insert("modulus".into(), json!(mcl.modulus().get()));
    report.insert("indices".into(), json!(mcl.indices()));
    if all || a.order {
        let expected = wreath_order(
            base_centralizer(mcl.modulus())?.elements().map_or(0, <[_]>::len) as u128,
            mcl.indices(),
        )?;
        if expected > mcl.budget() {
            return Err(Error::BudgetExceeded {
                requested: expected,
                budget: mcl.budget(),
            }
            .into());
        }
        report.insert("order".into(), json!(group.order(budget)?));
    }
    if all || a.transitive {
        report.insert("transitive".into(), json!(group.is_transitive()));
    }
    if all || a.center {
        let center = group.center(budget)?;
        report.insert("center_order".into(), json!(center.len()));
    }
    print_json(&Value::Object(report));
    Ok(())
}

fn matrix_list(ms: &[CMatrix]) -> String {
    let parts: Vec<String> = ms.iter().map(CMatrix::to_json).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_emit(mcl: &Mcl, e: &EmitArgs) -> CmdResult {
    let d = mcl.modulus().two_k();
    let n = mcl.atom_count()?;
    let needs_h = matches!(e.what, EmitWhat::CoatomProjections | EmitWhat::MatrixUnits);
    if needs_h && n > EMIT_DIM_LIMIT {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget: EMIT_DIM_LIMIT,
        }
        .into());
    }
    let text = match e.what {
        EmitWhat::Shift => shift_matrix(d)?.to_json(),
        EmitWhat::Clock => clock_matrix(d)?.to_json(),
        EmitWhat::Qft => qft_matrix(d)?.to_json(),
        EmitWhat::CoatomProjections => matrix_list(&coatom_projections(mcl)?),
        EmitWhat::MatrixUnits => {
            let rows: Vec<String> = matrix_units(e.index, mcl)?
                .iter()
                .map(|row| matrix_list(row))
                .collect();
            format!("[{}]", rows.join(","))
        }
    };
    emit(&format!("{text}\n"));
    Ok(())
}

fn cmd_verify(cfg: &Config, suite: Suite) -> CmdResult {
    let report = verify::run(cfg, suite)?;
    emit(&report.to_json_lines());
    for c in report.checks.iter().filter(|c| c.status == verify::Status::Fail) {
        eprintln!("FAIL {}: {}", c.check, c.note.as_deref().unwrap_or(""));
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("suite {suite} failed")))
    }
}
