use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bundlecalc::chern::twist;
use bundlecalc::chow::GradedClass;
use bundlecalc::claims::{registry, verify};
use bundlecalc::cohom::line_bundle_table;
use bundlecalc::exactalg::ParamPoly;
use bundlecalc::geometry::bundle_e;
use bundlecalc::pencil::{generic_rank, parse_pencil, rank1_parameter_count, singular_line_family};
use bundlecalc::stability::slope_dot_symbolic;
use bundlecalc::Error;

#[derive(Parser)]
#[command(name = "bundlecalc", version, about = "Exact invariants of a rank-2 bundle on P1 x P3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claims and report PASS/FAIL.
    Verify {
        /// Claim id to run; repeatable. Runs all claims if omitted.
        #[arg(long = "claim", value_name = "ID")]
        claims: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Report elapsed_ms as 0 for reproducible output.
        #[arg(long)]
        no_timing: bool,
    },
    /// List claim ids.
    List,
    /// Ad-hoc calculations.
    #[command(subcommand)]
    Calc(Calc),
}

#[derive(Subcommand)]
enum Calc {
    /// chi(E(a, b)).
    #[command(allow_negative_numbers = true)]
    Chi { a: i64, b: i64 },
    /// h^i(O(a, b)) on P1 x P3.
    #[command(allow_negative_numbers = true)]
    Cohom { a: i64, b: i64 },
    /// O(a, b) . O(m, n)^3.
    #[command(allow_negative_numbers = true)]
    Slope { m: i64, n: i64, a: i64, b: i64 },
    /// Rank data of a pencil of quadrics read from a file.
    PencilRank { file: PathBuf },
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify { claims, json, no_timing } => {
            let report = verify(&claims, !no_timing)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::List => {
            for c in registry() {
                println!("{:<16} {:<14} {}", c.id, c.anchor, c.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Calc(calc) => {
            calc_run(calc)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn calc_run(calc: Calc) -> Result<(), Error> {
    match calc {
        Calc::Chi { a, b } => {
            let e = bundle_e();
            let l = GradedClass::combination(e.ring(), [(ParamPoly::int(a), "h1"), (ParamPoly::int(b), "h3")])?;
            println!("{}", bundlecalc::chern::euler_characteristic(&twist(&e, &l)?));
        }
        Calc::Cohom { a, b } => println!("{}", line_bundle_table(a, b)),
        Calc::Slope { m, n, a, b } => {
            let [a, b, m, n] = [a, b, m, n].map(ParamPoly::int);
            println!("{}", slope_dot_symbolic(&a, &b, &m, &n));
        }
        Calc::PencilRank { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let p = parse_pencil(&text)?;
            let rank = generic_rank(&p);
            println!("generic rank: {rank}");
            match rank1_parameter_count(&p) {
                Ok(locus) => println!("rank <= 1 locus: {locus}"),
                Err(Error::RankTooHigh(_)) => println!("rank <= 1 locus: not computed (rank > 2)"),
                Err(e) => return Err(e),
            }
            if rank == 2 {
                let (line, constant) = singular_line_family(&p)?;
                println!("singular line: {line}");
                println!("constant: {constant}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
