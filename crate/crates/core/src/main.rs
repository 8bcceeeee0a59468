//! Batch front end: JSON in, JSON out. Machine output goes to stdout,
//! a one-line human summary to stderr. Exit codes: 0 for success, 1 when
//! the checked property is false (or a search exhausted its bound
//! unsatisfied), 2 for malformed input.

use clap::{Parser, Subcommand};
use modal_planes::construction::saturate;
use modal_planes::error::Error;
use modal_planes::filtration::{filtrate, verify_filtration_theorem, FiltrationMode};
use modal_planes::frame::{
    check_o, check_p, classify, ConditionCheck, ConditionCheck2, OCondition, PCondition,
};
use modal_planes::generators::{
    gen_f0, gen_pg2, gen_polarity_graph, gen_random_quasi, gen_windmill, QuasiKind,
};
use modal_planes::io::{FrameFile, ModelFile, MorphismFile};
use modal_planes::logics::{
    correspondence_test, modality_classes, standard_corpus, ModalityCaps, SchemeParams,
};
use modal_planes::morphism::{
    check_morphism, is_surjective, lift_2to1, plus, split_preimage, Carrier, Morphism,
    MorphismLevel,
};
use modal_planes::semantics::{
    sat_search, satisfies, true_in_model, SatStatus, SearchCaps,
};
use modal_planes::{parse, Logic};
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "modal-planes", about = "One-sorted incidence planes as Kripke frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification of a one-sorted frame.
    Classify { frame: PathBuf },
    /// Check frame conditions (O1, O2, O3, O4, O4', O5); exits 1 if any fails.
    CheckFrame {
        frame: PathBuf,
        /// Comma-separated conditions, e.g. O5,O3,O4'
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
    },
    /// Check two-sorted conditions (P1, P2, P3, Q1, Q2); exits 1 if any fails.
    #[command(name = "check-2frame")]
    Check2frame {
        frame: PathBuf,
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
    },
    /// Evaluate a formula in a model, at one world or at all worlds.
    Modelcheck {
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        world: Option<usize>,
    },
    /// Exhaustive validity check over all valuations on a frame.
    Valid {
        frame: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = modal_planes::semantics::DEFAULT_VALUATION_CAP)]
        max_valuations: u128,
    },
    /// Bounded satisfiability search over frames of a logic's class.
    Sat {
        formula: String,
        #[arg(long, default_value = "K")]
        logic: String,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value_t = 200_000)]
        max_frames: usize,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        time_limit: Option<u64>,
    },
    /// Filtrate a model through the subformulas of a formula.
    Filtrate {
        model: PathBuf,
        #[arg(long)]
        formula: String,
        /// least | split
        #[arg(long, default_value = "least")]
        mode: String,
    },
    /// Check a vertex map between frames; exits 1 on violation.
    Morphism {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// bounded | homomorphism
        #[arg(long, default_value = "bounded")]
        level: String,
    },
    /// Merge the sorts of a two-frame into a symmetric one-frame.
    ToOneSorted { frame: PathBuf },
    /// Write a connected quasi-1-plane as a bounded morphic image of a
    /// quasi-2-plane.
    SplitPreimage { frame: PathBuf },
    /// Saturate a network over an elliptic quasi-1-plane target.
    ConstructElliptic {
        target: PathBuf,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
    },
    /// Emit a generated frame.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Count non-equivalent modalities over a frame corpus.
    Modalities {
        #[arg(long, default_value = "12g")]
        logic: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        size_cap: usize,
    },
    /// Scheme-validity vs frame-condition agreement over all small frames.
    Correspond {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        max_param: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Projective plane over the prime field of order p.
    Pg2 { p: u64 },
    /// Polarity graph of PG(2, p).
    Polarity { p: u64 },
    /// Windmill graph with k triangles.
    Windmill { k: usize },
    /// The 4-path.
    F0,
    /// Seeded random connected quasi-1-plane.
    Random {
        #[arg(long)]
        size: usize,
        /// elliptic | projective
        #[arg(long = "class")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn parse_o_conditions(props: &[String]) -> Result<Vec<OCondition>, Error> {
    if props.is_empty() {
        return Ok(vec![
            OCondition::O1,
            OCondition::O2,
            OCondition::O3,
            OCondition::O4,
            OCondition::O4Prime,
            OCondition::O5,
        ]);
    }
    props.iter().map(|s| s.parse()).collect()
}

fn parse_p_conditions(props: &[String]) -> Result<Vec<PCondition>, Error> {
    if props.is_empty() {
        return Ok(vec![
            PCondition::P1,
            PCondition::P2,
            PCondition::P3,
            PCondition::Q1,
            PCondition::Q2,
        ]);
    }
    props.iter().map(|s| s.parse()).collect()
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Classify { frame } => {
            let f: FrameFile = modal_planes::io::read_json(&frame)?;
            let one = f.to_one_frame()?;
            let report = classify(&one);
            eprintln!(
                "kind: {}, plane: {}, non-degenerate: {}",
                report.kind, report.is_plane, report.is_nondegenerate
            );
            emit(&json!({ "n": one.n(), "classification": report }));
            Ok(0)
        }
        Command::CheckFrame { frame, properties } => {
            let f: FrameFile = modal_planes::io::read_json(&frame)?;
            let one = f.to_one_frame()?;
            let conds = parse_o_conditions(&properties)?;
            let results: Vec<(String, ConditionCheck)> = conds
                .iter()
                .map(|&c| (c.to_string(), check_o(&one, c)))
                .collect();
            let all_hold = results.iter().all(|(_, r)| r.holds);
            for (name, r) in &results {
                eprintln!("{name}: {}", if r.holds { "holds" } else { "fails" });
            }
            emit(&json!({ "n": one.n(), "checks": results }));
            Ok(if all_hold { 0 } else { 1 })
        }
        Command::Check2frame { frame, properties } => {
            let f: FrameFile = modal_planes::io::read_json(&frame)?;
            let two = f.to_two_frame()?;
            let conds = parse_p_conditions(&properties)?;
            let results: Vec<(String, ConditionCheck2)> = conds
                .iter()
                .map(|&c| (c.to_string(), check_p(&two, c)))
                .collect();
            let all_hold = results.iter().all(|(_, r)| r.holds);
            for (name, r) in &results {
                eprintln!("{name}: {}", if r.holds { "holds" } else { "fails" });
            }
            emit(&json!({
                "points": two.points().len(),
                "lines": two.lines().len(),
                "checks": results,
            }));
            Ok(if all_hold { 0 } else { 1 })
        }
        Command::Modelcheck { model, formula, world } => {
            let file: ModelFile = modal_planes::io::read_json(&model)?;
            let m = file.to_model()?;
            let f = parse(&formula)?;
            let (result, scope) = match world {
                Some(w) => (satisfies(&m, w, &f)?, format!("at world {w}")),
                None => (true_in_model(&m, &f), "at all worlds".to_string()),
            };
            eprintln!("{f} is {} {scope}", if result { "true" } else { "false" });
            emit(&json!({ "formula": f.to_string(), "world": world, "true": result }));
            Ok(if result { 0 } else { 1 })
        }
        Command::Valid { frame, formula, max_valuations } => {
            let file: FrameFile = modal_planes::io::read_json(&frame)?;
            let one = file.to_one_frame()?;
            let f = parse(&formula)?;
            let v = modal_planes::semantics::valid_in_frame_capped(&one, &f, max_valuations)?;
            eprintln!("{f} is {}", if v.valid { "valid" } else { "not valid" });
            let countermodel = v
                .countermodel
                .as_ref()
                .map(|(m, w)| json!({ "model": ModelFile::from_model(m), "world": w }));
            emit(&json!({
                "formula": f.to_string(),
                "valid": v.valid,
                "countermodel": countermodel,
                "caps": { "max_valuations": max_valuations.to_string() },
            }));
            Ok(if v.valid { 0 } else { 1 })
        }
        Command::Sat { formula, logic, max_size, max_frames, time_limit } => {
            let f = parse(&formula)?;
            let logic: Logic = logic.parse()?;
            let caps = SearchCaps {
                max_frame_size: max_size,
                max_frames,
                time_limit: time_limit.map(Duration::from_secs),
            };
            let res = sat_search(&f, logic, &caps);
            eprintln!(
                "{f} in {logic}: {:?} (explored {} frames up to size {})",
                res.status, res.explored_frames, res.explored_max_size
            );
            let witness = res
                .witness
                .as_ref()
                .map(|(m, w)| json!({ "model": ModelFile::from_model(m), "world": w }));
            emit(&json!({
                "formula": f.to_string(),
                "logic": logic,
                "status": res.status,
                "witness": witness,
                "explored_max_size": res.explored_max_size,
                "explored_frames": res.explored_frames,
                "exact_bound": res.exact_bound.to_string(),
                "phi_size": res.phi_size,
                "caps": res.caps,
            }));
            Ok(if res.status == SatStatus::Unsat { 1 } else { 0 })
        }
        Command::Filtrate { model, formula, mode } => {
            let file: ModelFile = modal_planes::io::read_json(&model)?;
            let m = file.to_model()?;
            let f = parse(&formula)?;
            let mode = match mode.as_str() {
                "least" => FiltrationMode::Least,
                "split" | "projective-split" | "projective_split" => {
                    FiltrationMode::ProjectiveSplit
                }
                other => return Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
            };
            let filt = filtrate(&m, &f, mode)?;
            let ok = verify_filtration_theorem(&filt).is_none();
            eprintln!(
                "{} classes from {} worlds; truth preserved: {ok}",
                filt.quotient.frame().n(),
                m.frame().n()
            );
            emit(&json!({
                "mode": mode,
                "phi_size": filt.phi.len(),
                "classes": filt.classes,
                "quotient": ModelFile::from_model(&filt.quotient),
                "truth_preserved": ok,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Morphism { source, target, map, level } => {
            let src: FrameFile = modal_planes::io::read_json(&source)?;
            let tgt: FrameFile = modal_planes::io::read_json(&target)?;
            let map_file: MorphismFile = modal_planes::io::read_json(&map)?;
            let src_carrier = match &src {
                FrameFile::One { .. } => Carrier::One(src.to_one_frame()?),
                FrameFile::Two { .. } => Carrier::Two(src.to_two_frame()?),
            };
            let tgt_carrier = match &tgt {
                FrameFile::One { .. } => Carrier::One(tgt.to_one_frame()?),
                FrameFile::Two { .. } => Carrier::Two(tgt.to_two_frame()?),
            };
            let vec_map = map_file.to_map(src_carrier.size())?;
            let m = Morphism::new(src_carrier, tgt_carrier, vec_map)?;
            let level = match level.as_str() {
                "bounded" => MorphismLevel::Bounded,
                "homomorphism" | "hom" => MorphismLevel::Homomorphism,
                other => return Err(Error::InvalidInput(format!("unknown level {other:?}"))),
            };
            let violation = check_morphism(&m, level);
            let surjective = is_surjective(&m);
            match &violation {
                None => eprintln!("map checks out (surjective: {surjective})"),
                Some(v) => eprintln!("violation: {v}"),
            }
            emit(&json!({
                "holds": violation.is_none(),
                "violation": violation.as_ref().map(|v| v.to_string()),
                "surjective": surjective,
            }));
            Ok(if violation.is_none() { 0 } else { 1 })
        }
        Command::ToOneSorted { frame } => {
            let f: FrameFile = modal_planes::io::read_json(&frame)?;
            let two = f.to_two_frame()?;
            let one = plus(&two);
            eprintln!(
                "{} points + {} lines -> {} vertices",
                two.points().len(),
                two.lines().len(),
                one.n()
            );
            emit(&FrameFile::from_one_frame(&one));
            Ok(0)
        }
        Command::SplitPreimage { frame } => {
            let f: FrameFile = modal_planes::io::read_json(&frame)?;
            let one = f.to_one_frame()?;
            let (two, m) = split_preimage(&one)?;
            let lifted = lift_2to1(&m)?;
            eprintln!(
                "{} vertices -> {} points + {} lines",
                one.n(),
                two.points().len(),
                two.lines().len()
            );
            emit(&json!({
                "two_frame": FrameFile::from_two_frame(&two),
                "map": m.map(),
                "audits": {
                    "q1": check_p(&two, PCondition::Q1).holds,
                    "q2": check_p(&two, PCondition::Q2).holds,
                    "bounded": check_morphism(&m, MorphismLevel::Bounded).is_none(),
                    "surjective": is_surjective(&m),
                    "lift_bounded": check_morphism(&lifted, MorphismLevel::Bounded).is_none(),
                },
            }));
            Ok(0)
        }
        Command::ConstructElliptic { target, rounds } => {
            let f: FrameFile = modal_planes::io::read_json(&target)?;
            let tgt = f.to_one_frame()?;
            let (net, report) = saturate(&tgt, rounds)?;
            let ok = report.coherent
                && report.o3_holds
                && report.f0_full_subgraph
                && report.snapshot_defects_repaired
                && report.irreflexive;
            eprintln!(
                "{} vertices after {} rounds; audits {}",
                report.vertices,
                rounds,
                if ok { "hold" } else { "FAIL" }
            );
            emit(&json!({
                "frame": FrameFile::from_one_frame(&net.frame()),
                "theta": net.theta(),
                "report": report,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Gen { what } => {
            match what {
                GenCommand::Pg2 { p } => {
                    let two = gen_pg2(p)?;
                    eprintln!(
                        "PG(2,{p}): {} points, {} lines",
                        two.points().len(),
                        two.lines().len()
                    );
                    emit(&FrameFile::from_two_frame(&two));
                }
                GenCommand::Polarity { p } => {
                    let one = gen_polarity_graph(p)?;
                    eprintln!("polarity graph of PG(2,{p}): {} vertices", one.n());
                    emit(&FrameFile::from_one_frame(&one));
                }
                GenCommand::Windmill { k } => {
                    let one = gen_windmill(k)?;
                    eprintln!("windmill with {k} triangles: {} vertices", one.n());
                    emit(&FrameFile::from_one_frame(&one));
                }
                GenCommand::F0 => {
                    emit(&FrameFile::from_one_frame(&gen_f0()));
                }
                GenCommand::Random { size, kind, seed } => {
                    let kind = match kind.as_str() {
                        "elliptic" => QuasiKind::Elliptic,
                        "projective" => QuasiKind::Projective,
                        other => {
                            return Err(Error::InvalidInput(format!("unknown class {other:?}")))
                        }
                    };
                    let one = gen_random_quasi(size, kind, seed)?;
                    eprintln!("random {kind:?} quasi-1-plane, size {size}, seed {seed}");
                    emit(&json!({
                        "seed": seed,
                        "frame": FrameFile::from_one_frame(&one),
                    }));
                }
            }
            Ok(0)
        }
        Command::Modalities { logic, max_len, size_cap } => {
            let logic: Logic = logic.parse()?;
            let corpus = standard_corpus(logic, size_cap);
            let report = modality_classes(max_len, &corpus, &ModalityCaps::default());
            eprintln!(
                "{} classes over {} frames (max length {max_len})",
                report.classes.len(),
                report.corpus_size
            );
            emit(&json!({
                "logic": logic,
                "size_cap": size_cap,
                "report": report,
            }));
            Ok(0)
        }
        Command::Correspond { max_size, max_param } => {
            let mut corpus = Vec::new();
            for n in 1..=max_size {
                corpus.extend(modal_planes::enumerate::canonical_directed_frames(n));
            }
            let mut total_divergences = 0usize;
            let mut reports = Vec::new();
            for m in 0..=max_param {
                for n in 0..=max_param {
                    for p in 0..=max_param {
                        for q in 0..=max_param {
                            let params = SchemeParams::new(m, n, p, q);
                            let report = correspondence_test(&corpus, params)?;
                            total_divergences += report.divergences.len();
                            reports.push(json!({
                                "params": params,
                                "frames_checked": report.frames_checked,
                                "divergences": report.divergences.len(),
                            }));
                        }
                    }
                }
            }
            eprintln!(
                "{} frames x {} parameter tuples: {total_divergences} divergences",
                corpus.len(),
                reports.len()
            );
            emit(&json!({
                "caps": { "max_size": max_size, "max_param": max_param },
                "frames": corpus.len(),
                "total_divergences": total_divergences,
                "per_params": reports,
            }));
            Ok(if total_divergences == 0 { 0 } else { 1 })
        }
    }
}
