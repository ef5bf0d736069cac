//! `twperm`: twisted permutation codes from the command line.
//!
//! Exit codes: 0 success, 1 assertion or diff failure, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use twperm::{
    build_gkp, gkp_saxl_connected, gkp_twisted_code, gkp_ubb, io, matching_ubb, relabel_search, report_tables,
    saxl_graph, simulate, ubb_from_cover, ChannelSpec, CorrectionParams, DecoderState, Error, Mode, Permutation,
    PermutationGroup, Strength, TwistedCode, Word,
};

#[derive(Parser)]
#[command(
    name = "twperm",
    version,
    about = "Twisted permutation codes and uncovering-by-bases decoding"
)]
struct Cli {
    /// Tab-separated output, one record per line.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum distance, order and base size of a group.
    Mindist { group: PathBuf },
    /// Minimum distances and correction capability of a twisted code.
    Delta(CodeArgs),
    /// Encode a group element given in cycle or list notation.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        element: String,
    },
    /// Decode a received word `[a,b,...|...]` and print the attempt log.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        ubb: PathBuf,
        word: String,
        /// Skip the UBB strength gate.
        #[arg(long)]
        unchecked: bool,
    },
    #[command(subcommand)]
    Ubb(UbbCommand),
    /// Saxl graph of a base-size-two group.
    Saxl {
        group: PathBuf,
        /// Also print a matching UBB with this many bases.
        #[arg(long)]
        matching: Option<usize>,
    },
    #[command(subcommand)]
    Gkp(GkpCommand),
    /// Monte-Carlo transmit, corrupt and decode.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        ubb: PathBuf,
        /// Exact number of corrupted positions per word.
        #[arg(long, short)]
        errors: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Allow more than r_tw errors and only tally outcomes.
        #[arg(long)]
        stress: bool,
    },
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Args)]
struct CodeArgs {
    /// Representation-tuple file.
    code: PathBuf,
    /// Check that each psi_i is a permutational isomorphism.
    #[arg(long)]
    verify_psi: bool,
}

#[derive(Subcommand)]
enum UbbCommand {
    /// Check that the rows are bases and that the strength holds.
    Verify {
        ubb: PathBuf,
        group: PathBuf,
        /// Check this strength instead of the file's.
        #[arg(long)]
        strength: Option<usize>,
        /// Sample this many subsets instead of an exhaustive scan.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Complements of a covering design's blocks, checked as bases.
    FromCover { cover: PathBuf, group: PathBuf },
    /// Search for a relabelling making every block complement a base.
    Relabel {
        cover: PathBuf,
        group: PathBuf,
        #[arg(long, default_value_t = 100)]
        attempts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct GkpArgs {
    #[arg(short)]
    p: u32,
    #[arg(short)]
    k: usize,
}

#[derive(Subcommand)]
enum GkpCommand {
    /// Build the group and report its structure.
    Build(GkpArgs),
    /// Saxl graph and matching UBB.
    Ubb(GkpArgs),
    /// Search for a twisted code of distance p^(k+1) - p.
    Code(GkpArgs),
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Recompute the parameter tables and diff against the printed values.
    Tables,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_assertion(&e) { 1 } else { 2 })
        }
    }
}

fn is_assertion(e: &Error) -> bool {
    matches!(
        e,
        Error::GuaranteeBreach { .. }
            | Error::InsufficientStrength { .. }
            | Error::TupleSearchExhausted { .. }
            | Error::CoverBlockNotBase { .. }
            | Error::NotBase(_)
            | Error::Disconnected(_)
            | Error::MatchingTooSmall { .. }
    )
}

fn load_code(args: &CodeArgs) -> twperm::Result<Arc<TwistedCode>> {
    Ok(Arc::new(io::load_rep_tuple(&args.code, args.verify_psi)?))
}

fn print_params(tsv: bool, code: &TwistedCode, params: CorrectionParams) -> twperm::Result<()> {
    let (rep, tw) = (code.delta_rep()?, code.delta_tw()?);
    if tsv {
        println!("code\tlambda\tn\tdelta_rep\tdelta_tw\tr_tw\tr_prime");
        println!(
            "{}\t{}\t{}\t{rep}\t{tw}\t{}\t{}",
            code.name(),
            code.lambda(),
            code.degree(),
            params.r_tw,
            params.r_prime
        );
    } else {
        println!("code {} (λ = {}, n = {})", code.name(), code.lambda(), code.degree());
        println!("δ_rep = {rep}, δ_tw = {tw}");
        println!("r_tw = {}, r' = {}", params.r_tw, params.r_prime);
    }
    Ok(())
}

fn run(cli: &Cli) -> twperm::Result<Status> {
    let tsv = cli.tsv;
    match &cli.command {
        Command::Mindist { group } => {
            let g = io::load_group(group)?;
            let (order, d, b) = (g.order()?, g.min_distance()?, g.base_size()?);
            if tsv {
                println!("group\tn\torder\tmin_distance\tbase_size");
                println!("{}\t{}\t{order}\t{d}\t{b}", g.name(), g.degree());
            } else {
                println!("{}: n = {}, |G| = {order}, d = {d}, b = {b}", g.name(), g.degree());
            }
        }
        Command::Delta(args) => {
            let code = load_code(args)?;
            print_params(tsv, &code, code.correction_params()?)?;
        }
        Command::Encode { code, element } => {
            let code = load_code(code)?;
            let g = Permutation::parse(element, code.degree())?;
            let c = code.encode(&g)?;
            println!("{}", c.word.display_components(code.degree()));
        }
        Command::Decode {
            code,
            ubb,
            word,
            unchecked,
        } => {
            let code = load_code(code)?;
            let ubb = io::load_ubb(ubb)?;
            let params = code.correction_params()?;
            let state = if *unchecked {
                DecoderState::unchecked(code.clone(), ubb, params)?
            } else {
                DecoderState::with_params(code.clone(), ubb, params)?
            };
            let w = Word::parse(word, code.degree())?;
            let result = state.decode(&w)?;
            print!("{}", result.log());
            match result.decoded() {
                Some(g) => println!("decoded {g}"),
                None => {
                    println!("decoding failed: more than r_tw = {} errors", params.r_tw);
                    return Ok(Status::Failed);
                }
            }
        }
        Command::Ubb(cmd) => return run_ubb(tsv, cmd),
        Command::Saxl { group, matching } => {
            let g = io::load_group(group)?;
            let s = saxl_graph(&g)?;
            let comps = s.components();
            if tsv {
                println!("group\tn\tedges\tcomponents");
                println!("{}\t{}\t{}\t{}", g.name(), g.degree(), s.edge_count(), comps.len());
            } else {
                println!(
                    "{}: {} vertices, {} edges, {} component(s), vertex-transitive action: {}",
                    g.name(),
                    g.degree(),
                    s.edge_count(),
                    comps.len(),
                    g.is_transitive() && s.is_invariant_under(&g)
                );
            }
            if let Some(size) = matching {
                print!("{}", io::write_ubb(&matching_ubb(&s, *size)?));
            }
            if comps.len() > 1 {
                return Ok(Status::Failed);
            }
        }
        Command::Gkp(cmd) => return run_gkp(tsv, cmd),
        Command::Simulate {
            code,
            ubb,
            errors,
            trials,
            seed,
            stress,
        } => {
            let code = load_code(code)?;
            let ubb = io::load_ubb(ubb)?;
            let params = code.correction_params()?;
            let (state, mode) = if *stress {
                (DecoderState::unchecked(code, ubb, params)?, Mode::Stress)
            } else {
                (DecoderState::with_params(code, ubb, params)?, Mode::Guaranteed)
            };
            let spec = ChannelSpec {
                errors: *errors,
                seed: *seed,
                trials: *trials,
            };
            let report = simulate(&state, spec, mode)?;
            print!("{}", report.stats);
            println!("elapsed_ms\t{}", report.elapsed.as_millis());
        }
        Command::Report(ReportCommand::Tables) => {
            let report = report_tables()?;
            if tsv {
                print!("{}", report.tsv());
                for d in &report.diffs {
                    eprintln!("MISMATCH {d}");
                }
            } else {
                print!("{report}");
            }
            if !report.diffs.is_empty() {
                return Ok(Status::Failed);
            }
        }
    }
    Ok(Status::Ok)
}

fn print_strength(s: &Strength, r: usize) -> Status {
    match s {
        Strength::Certified => {
            println!("strength {r}: certified");
            Status::Ok
        }
        Strength::Witness(w) => {
            println!("strength {r}: fails, {w:?} meets every base");
            Status::Failed
        }
    }
}

fn run_ubb(tsv: bool, cmd: &UbbCommand) -> twperm::Result<Status> {
    match cmd {
        UbbCommand::Verify {
            ubb,
            group,
            strength,
            sample,
            seed,
        } => {
            let u = io::load_ubb(ubb)?;
            let g = io::load_group(group)?;
            u.check_bases(&g)?;
            let r = strength.unwrap_or(u.strength());
            let n = g.degree();
            if tsv {
                println!("group\trows\tstrength\tdisjoint");
                println!("{}\t{}\t{r}\t{}", u.group_name(), u.len(), u.is_pairwise_disjoint());
            } else {
                println!("{} rows, all bases of {}", u.len(), g.name());
            }
            if let Some(samples) = sample {
                let s = u.sample_strength(n, r, *samples, *seed)?;
                println!("{s}");
                return Ok(if s.witness.is_some() {
                    Status::Failed
                } else {
                    Status::Ok
                });
            }
            let s = u.verify_strength_at(n, r, twperm::ubb::STRENGTH_BUDGET)?;
            Ok(print_strength(&s, r))
        }
        UbbCommand::FromCover { cover, group } => {
            let c = io::load_cover(cover)?;
            let g = io::load_group(group)?;
            let u = ubb_from_cover(&c, &g)?;
            print!("{}", io::write_ubb(&u));
            Ok(Status::Ok)
        }
        UbbCommand::Relabel {
            cover,
            group,
            attempts,
            seed,
        } => {
            let c = io::load_cover(cover)?;
            let g = io::load_group(group)?;
            match relabel_search(&c, &g, *attempts, *seed)? {
                Some(sigma) => {
                    let list: Vec<String> = sigma.list_form().iter().map(|x| x.to_string()).collect();
                    println!("# sigma [{}]", list.join(","));
                    print!("{}", io::write_cover(&c.relabelled(&sigma)));
                    Ok(Status::Ok)
                }
                None => {
                    println!("no relabelling found in {attempts} attempts");
                    Ok(Status::Failed)
                }
            }
        }
    }
}

fn run_gkp(tsv: bool, cmd: &GkpCommand) -> twperm::Result<Status> {
    match cmd {
        GkpCommand::Build(a) => {
            let g = build_gkp(a.p, a.k)?;
            let grp: &PermutationGroup = g.group();
            let (order, d, b) = (grp.order()?, grp.min_distance()?, grp.base_size()?);
            let nominal_d = g.degree() - a.p as usize;
            if tsv {
                println!("p\tk\tn\tord_b\torder\tnominal_order\tmin_distance\tnominal_distance\tbase_size");
                println!(
                    "{}\t{}\t{}\t{}\t{order}\t{}\t{d}\t{nominal_d}\t{b}",
                    a.p,
                    a.k,
                    g.degree(),
                    g.bk_order(),
                    g.nominal_order()
                );
            } else {
                println!(
                    "G_{}({}) on {} points, ord(B_k) = {}",
                    a.k,
                    a.p,
                    g.degree(),
                    g.bk_order()
                );
                println!("|G| = {order} (p^(k+1) = {})", g.nominal_order());
                println!("d = {d} (p^k - p = {nominal_d}), b = {b}");
                for j in 2..=a.k {
                    let base = g.canonical_base(j)?;
                    println!(
                        "{{(1,0),(1,e_{j})}} = {:?} base: {}",
                        base.points(),
                        grp.is_base(&base)?
                    );
                }
            }
            if order != g.nominal_order() {
                println!(
                    "warning: B_k has order {} > p, so the group is larger than p^(k+1)",
                    g.bk_order()
                );
            }
        }
        GkpCommand::Ubb(a) => {
            let g = build_gkp(a.p, a.k)?;
            let cert = gkp_saxl_connected(&g)?;
            let u = gkp_ubb(&g)?;
            println!(
                "# saxl graph: {} edges, connected, {} labelled edge failure(s)",
                cert.graph.edge_count(),
                cert.labelled_edge_failures.len()
            );
            println!(
                "# r' = {}, closed form size {}{}",
                u.r_prime,
                u.closed_form_size,
                if u.closed_form_agrees() { "" } else { " (disagrees)" }
            );
            print!("{}", io::write_ubb(&u.ubb));
        }
        GkpCommand::Code(a) => {
            let g = build_gkp(a.p, a.k)?;
            let code = gkp_twisted_code(&g)?;
            print_params(tsv, &code, code.correction_params()?)?;
            if !tsv {
                print!("{}", io::write_rep_tuple(&code, |_| "gkp.grp".into()));
            }
        }
    }
    Ok(Status::Ok)
}
