mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use gsproto_core::dense_coding::{self, DenseCoder, Message, MAX_ORACLE_PAIRS};
use gsproto_core::oracle::StateVector;
use gsproto_core::teleportation::{self, FIDELITY_TOL};
use gsproto_core::{parse_graph, BitVector, PartitionedGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use report::ProtocolReport;

/// Describes how teleportation inputs are drawn, so runs can be reproduced.
const RNG_DESCRIPTION: &str = "ChaCha8Rng::seed_from_u64(seed); each input amplitude is \
     N(0,1) + i·N(0,1) (rand_distr StandardNormal), then normalized; \
     sampled outcomes use one uniform f64 per trial";

#[derive(Parser)]
#[command(
    name = "gsproto",
    version,
    about = "Dense coding and teleportation viability for graph states"
)]
struct Cli {
    /// Include wall-clock timing in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide viability and print the sub-adjacency matrices.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the dense-coding protocol.
    #[command(group(ArgGroup::new("mode").required(true).args(["all", "message"])))]
    Dense {
        file: PathBuf,
        /// Encode and decode every one of the 4ⁿ messages.
        #[arg(long)]
        all: bool,
        /// A single message as `<a bits>,<b bits>`, e.g. `10,01`.
        #[arg(long, value_name = "A,B")]
        message: Option<String>,
        /// Confirm syndromes on the state-vector simulator (2n ≤ 8).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Simulate teleportation of random pure states.
    Teleport {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Sweep every measurement outcome instead of sampling one.
        #[arg(long)]
        all_outcomes: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Local complementation at a vertex (file label); writes the new graph.
    Lc {
        file: PathBuf,
        vertex: usize,
        /// Report rank(Γ_T) before and after, failing if it changed.
        #[arg(long)]
        check_rank: bool,
    },
}

enum Status {
    Ok,
    NotViable,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::NotViable => ExitCode::from(2),
        }
    }
}

type CmdResult = Result<Status, String>;

fn load(path: &Path) -> Result<PartitionedGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(report: &mut ProtocolReport, json: bool, started: Option<Instant>, text: &str) {
    if let Some(t) = started {
        report.timing = Some(report::Timing {
            elapsed_ms: t.elapsed().as_secs_f64() * 1e3,
        });
    }
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.header_text());
        print!("{text}");
        if let Some(t) = &report.timing {
            println!("elapsed: {:.3} ms", t.elapsed_ms);
        }
    }
}

fn cmd_check(file: &Path, json: bool, started: Option<Instant>) -> CmdResult {
    let g = load(file)?;
    let mut report = ProtocolReport::for_graph(&g);
    let viable = report.viability.viable;
    emit(&mut report, json, started, "");
    Ok(if viable {
        Status::Ok
    } else {
        Status::NotViable
    })
}

fn message_json(m: &Message) -> serde_json::Value {
    json!({ "a": m.a.to_string(), "b": m.b.to_string() })
}

fn parse_message(raw: &str, n: usize) -> Result<Message, String> {
    let (a, b) = raw
        .split_once(',')
        .ok_or_else(|| format!("message {raw:?} must look like <a>,<b>"))?;
    let parse = |s: &str| -> Result<BitVector, String> {
        let v: BitVector = s
            .trim()
            .parse()
            .map_err(|e| format!("message {raw:?}: {e}"))?;
        if v.len() != n {
            return Err(format!(
                "message {raw:?}: expected {n} bits per vector, found {}",
                v.len()
            ));
        }
        Ok(v)
    };
    Ok(Message {
        a: parse(a)?,
        b: parse(b)?,
    })
}

fn cmd_dense(
    file: &Path,
    message: Option<&str>,
    oracle: bool,
    json: bool,
    started: Option<Instant>,
) -> CmdResult {
    let g = load(file)?;
    if oracle && g.n() > MAX_ORACLE_PAIRS {
        return Err(format!(
            "--oracle needs 2n ≤ {}, this graph has 2n = {}",
            2 * MAX_ORACLE_PAIRS,
            g.num_vertices()
        ));
    }
    let mut report = ProtocolReport::for_graph(&g);
    let viable = report.viability.viable;
    let mut text = String::new();

    match message {
        None => {
            let r = if oracle {
                dense_coding::roundtrip_exhaustive_with_oracle(&g)
            } else {
                dense_coding::roundtrip_exhaustive(&g)
            }
            .map_err(|e| e.to_string())?;
            let coder = DenseCoder::new(&g);
            let collision = r.collision.map(|(x, y)| {
                let (mx, my) = (Message::from_index(g.n(), x), Message::from_index(g.n(), y));
                json!({
                    "first": message_json(&mx),
                    "second": message_json(&my),
                    "syndrome": coder.encode(&mx).to_k().to_string(),
                })
            });
            text += &format!(
                "dense coding: {}/{} decoded, {}\n",
                r.decoded_ok,
                r.total,
                if r.bijective {
                    "bijective"
                } else {
                    "NOT bijective"
                }
            );
            if let Some(c) = &collision {
                text += &format!(
                    "collision: (a,b)=({},{}) and ({},{}) share syndrome k={}\n",
                    c["first"]["a"].as_str().unwrap(),
                    c["first"]["b"].as_str().unwrap(),
                    c["second"]["a"].as_str().unwrap(),
                    c["second"]["b"].as_str().unwrap(),
                    c["syndrome"].as_str().unwrap(),
                );
            }
            if oracle {
                text += &format!(
                    "oracle: {}/{} syndromes confirmed\n",
                    r.oracle_agreements, r.oracle_checked
                );
            }
            report.results = Some(json!({
                "protocol": "dense_coding",
                "mode": "all",
                "total": r.total,
                "decoded_ok": r.decoded_ok,
                "bijective": r.bijective,
                "collision": collision,
                "oracle": oracle.then(|| json!({
                    "checked": r.oracle_checked,
                    "agreements": r.oracle_agreements,
                })),
            }));
            if oracle && r.oracle_agreements != r.oracle_checked {
                emit(&mut report, json, started, &text);
                return Err("oracle disagrees with the symbolic syndrome".into());
            }
        }
        Some(raw) => {
            let m = parse_message(raw, g.n())?;
            let coder = DenseCoder::new(&g);
            let s = coder.encode(&m);
            let decoded = coder.decode(&s).ok();
            let measured = if oracle {
                let state = dense_coding::encode_oracle(&g, &m).map_err(|e| e.to_string())?;
                Some(dense_coding::measure_syndrome(&g, &state).map_err(|e| e.to_string())?)
            } else {
                None
            };
            text += &format!("message (a,b)=({},{})\n", m.a, m.b);
            text += &format!("syndrome (b′,a′)=({},{})\n", s.b_prime, s.a_prime);
            match &decoded {
                Some(d) => text += &format!("decoded (a,b)=({},{})\n", d.a, d.b),
                None => text += "decoded: impossible, Γ_T is singular\n",
            }
            if let Some(ms) = &measured {
                text += &format!(
                    "oracle syndrome (b′,a′)=({},{}) {}\n",
                    ms.b_prime,
                    ms.a_prime,
                    if *ms == s { "matches" } else { "DIFFERS" }
                );
            }
            report.results = Some(json!({
                "protocol": "dense_coding",
                "mode": "message",
                "message": message_json(&m),
                "syndrome": { "b_prime": s.b_prime.to_string(), "a_prime": s.a_prime.to_string(), "k": s.to_k().to_string() },
                "decoded": decoded.as_ref().map(message_json),
                "roundtrip_ok": decoded.as_ref() == Some(&m),
                "oracle_syndrome": measured.as_ref().map(|ms| ms.to_k().to_string()),
            }));
            if measured.is_some_and(|ms| ms != s) {
                emit(&mut report, json, started, &text);
                return Err("oracle disagrees with the symbolic syndrome".into());
            }
        }
    }
    emit(&mut report, json, started, &text);
    Ok(if viable {
        Status::Ok
    } else {
        Status::NotViable
    })
}

fn cmd_teleport(
    file: &Path,
    trials: usize,
    all_outcomes: bool,
    seed: u64,
    json: bool,
    started: Option<Instant>,
) -> CmdResult {
    let g = load(file)?;
    let mut report = ProtocolReport::for_graph(&g);
    if !report.viability.viable {
        emit(
            &mut report,
            json,
            started,
            "teleportation: no correction exists, not simulated\n",
        );
        return Ok(Status::NotViable);
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    let mut per_trial = Vec::with_capacity(trials);
    let mut min_fid = f64::INFINITY;
    let mut prob_sums = Vec::new();

    for trial in 0..trials {
        let input = StateVector::random(n, &mut rng).map_err(|e| e.to_string())?;
        if all_outcomes {
            let sweep = teleportation::run_all_outcomes(&g, &input).map_err(|e| e.to_string())?;
            let fid = sweep.min_fidelity.expect("viable graph has corrections");
            min_fid = min_fid.min(fid);
            prob_sums.push(sweep.prob_sum);
            let outcomes: Vec<_> = sweep
                .records
                .iter()
                .map(|r| {
                    json!({
                        "k": r.outcome.k().to_string(),
                        "probability": r.probability,
                        "c_x": r.correction.as_ref().map(|c| c.c_x.to_string()),
                        "c_z": r.correction.as_ref().map(|c| c.c_z.to_string()),
                        "fidelity": r.fidelity,
                    })
                })
                .collect();
            if n <= 2 {
                for r in &sweep.records {
                    let c = r.correction.as_ref().expect("viable");
                    text += &format!(
                        "trial {trial} k={} p={:.6} c_x={} c_z={} fid={}\n",
                        r.outcome.k(),
                        r.probability,
                        c.c_x,
                        c.c_z,
                        r.fidelity.map_or("-".into(), |f| format!("{f:.12}")),
                    );
                }
            }
            text += &format!(
                "trial {trial}: {} outcomes, prob_sum={:.12}, min_fid={:.12}\n",
                sweep.records.len(),
                sweep.prob_sum,
                fid
            );
            per_trial.push(json!({
                "trial": trial,
                "prob_sum": sweep.prob_sum,
                "min_fidelity": fid,
                "outcomes": outcomes,
            }));
        } else {
            let r =
                teleportation::teleport_sampled(&g, &input, &mut rng).map_err(|e| e.to_string())?;
            let fid = r
                .fidelity
                .expect("sampled outcomes have nonzero probability");
            let c = r.correction.as_ref().expect("viable");
            min_fid = min_fid.min(fid);
            text += &format!(
                "trial {trial}: k={} p={:.6} c_x={} c_z={} fid={fid:.12}\n",
                r.outcome.k(),
                r.probability,
                c.c_x,
                c.c_z
            );
            per_trial.push(json!({
                "trial": trial,
                "k": r.outcome.k().to_string(),
                "probability": r.probability,
                "c_x": c.c_x.to_string(),
                "c_z": c.c_z.to_string(),
                "fidelity": fid,
            }));
        }
    }

    let min_fidelity = (trials > 0).then_some(min_fid);
    let faithful = min_fidelity.is_none_or(|f| f >= 1.0 - FIDELITY_TOL);
    text += &format!(
        "teleportation: {} trial(s), min_fid={}, {}\n",
        trials,
        min_fidelity.map_or("-".into(), |f| format!("{f:.12}")),
        if faithful { "faithful" } else { "NOT faithful" }
    );
    report.results = Some(json!({
        "protocol": "teleportation",
        "seed": seed,
        "rng": RNG_DESCRIPTION,
        "trials": trials,
        "all_outcomes": all_outcomes,
        "min_fidelity": min_fidelity,
        "prob_sums": prob_sums,
        "faithful": faithful,
        "resources": {
            "graph_state_qubits_per_run": 2 * n,
            "classical_bits_per_run": 2 * n,
        },
        "per_trial": per_trial,
    }));
    emit(&mut report, json, started, &text);
    if faithful {
        Ok(Status::Ok)
    } else {
        Err("teleportation was not faithful".into())
    }
}

fn cmd_lc(file: &Path, vertex: usize, check_rank: bool) -> CmdResult {
    let g = load(file)?;
    let v = g
        .vertex_by_label(vertex)
        .ok_or_else(|| format!("vertex {vertex} is not in 1..={}", g.num_vertices()))?;
    let h = g.local_complement(v).map_err(|e| e.to_string())?;
    print!("{}", h.to_file_string());
    if check_rank {
        let (before, after) = (g.gamma_t_rank(), h.gamma_t_rank());
        if before == after {
            eprintln!("rank {before} → {after}, invariant holds");
        } else {
            return Err(format!("rank {before} → {after}, invariant VIOLATED"));
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = cli.timing.then(Instant::now);
    let result = match &cli.command {
        Command::Check { file, json } => cmd_check(file, *json, started),
        Command::Dense {
            file,
            message,
            oracle,
            json,
            ..
        } => cmd_dense(file, message.as_deref(), *oracle, *json, started),
        Command::Teleport {
            file,
            trials,
            all_outcomes,
            seed,
            json,
        } => cmd_teleport(file, *trials, *all_outcomes, *seed, *json, started),
        Command::Lc {
            file,
            vertex,
            check_rank,
        } => cmd_lc(file, *vertex, *check_rank),
    };
    match result {
        Ok(status) => status.into(),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
