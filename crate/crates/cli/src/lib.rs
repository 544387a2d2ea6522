//! The `gordian` command line: diagram validation, resolutions, predicate
//! checks, certificates, tangle doubling, framework composition, and the
//! randomized reduction search. All output is JSON on standard output.
//!
//! Exit codes: 0 success / predicate true / certified; 1 refusal / predicate
//! false; 2 malformed or unsuitable input.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gordian_core::codec;
use gordian_core::diagram::{DartId, Diagram, NodeId};
use gordian_core::error::Error;
use gordian_core::fixtures;
use gordian_core::framework::{self, Evidence, PlanarFramework, Replacement, Target};
use gordian_core::moves;
use gordian_core::resolution::{self, ResolutionKind};
use gordian_core::spatial;
use gordian_core::tangle;

#[derive(Parser)]
#[command(
    name = "gordian",
    version,
    about = "Diagram checks and minimal-crossing certificates for links and spatial graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Use a built-in diagram instead of a file.
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
    /// Diagram JSON file ('-' reads standard input).
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    A,
    AInverse,
}

#[derive(Subcommand)]
enum Command {
    /// Report every violated structural invariant of a diagram.
    Validate(InputArgs),
    /// Resolve every crossing and trace the state circles.
    Resolve {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Evaluate predicates; with no flags all applicable checks run.
    Check {
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        alternating: bool,
        #[arg(long)]
        adequate: bool,
        /// Rigid-vertex hypothesis report.
        #[arg(long)]
        adams: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Certify minimal crossing number via the applicable route.
    Certify(InputArgs),
    /// Glue the tangle of a single-vertex diagram to its mirror image.
    Double(InputArgs),
    /// Compose a crossingless framework with edge and vertex replacements.
    Compose {
        /// The built-in composition is available as `--fixture fig8`.
        #[arg(long)]
        fixture: Option<String>,
        /// Composition JSON file ('-' reads standard input).
        file: Option<PathBuf>,
    },
    /// Randomized crossing-reduction search.
    Search {
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Number of independent walks (seeds 0..n).
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Include full move traces in the output.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// List the built-in diagrams.
    Fixtures,
}

/// Runs the CLI on the given arguments (excluding the binary name), returning
/// the exit code and the output text.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut argv: Vec<String> = vec!["gordian".to_string()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            return (2, render(&json!({"error": e.to_string().trim()})));
        }
    };
    match dispatch(cli) {
        Ok((code, value)) => (code, render(&value)),
        Err(e) => (2, render(&json!({"error": e.to_string()}))),
    }
}

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn load(input: &InputArgs) -> Result<Diagram, Error> {
    if let Some(name) = &input.fixture {
        return fixtures::by_name(name)
            .ok_or_else(|| Error::InvalidDiagram(format!("no fixture named {name:?}")));
    }
    let Some(path) = &input.file else {
        return Err(Error::InvalidDiagram(
            "provide a diagram file or --fixture NAME".into(),
        ));
    };
    codec::parse_diagram(&read_input(path)?)
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidDiagram(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidDiagram(format!("reading {}: {e}", path.display())))
    }
}

fn loaded_valid(input: &InputArgs) -> Result<Diagram, Error> {
    let d = load(input)?;
    d.require_valid()?;
    Ok(d)
}

fn dispatch(cli: Cli) -> Result<(i32, Value), Error> {
    match cli.command {
        Command::Validate(input) => {
            let d = load(&input)?;
            let report = d.validate();
            let code = if report.is_valid() { 0 } else { 1 };
            Ok((
                code,
                json!({
                    "valid": report.is_valid(),
                    "violations": serde_json::to_value(&report.violations).expect("serializable"),
                    "nodes": d.nodes.len(),
                    "crossings": d.crossing_count(),
                    "freeLoops": d.free_loops,
                }),
            ))
        }
        Command::Resolve { kind, input } => {
            let d = loaded_valid(&input)?;
            let kind = match kind {
                KindArg::A => ResolutionKind::A,
                KindArg::AInverse => ResolutionKind::AInverse,
            };
            let state = resolution::resolve_all(&d, kind)?;
            Ok((
                0,
                json!({
                    "kind": match kind { ResolutionKind::A => "A", ResolutionKind::AInverse => "AInverse" },
                    "circles": state.circles.iter().map(|c| c.iter().map(|d| d.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "grey": state.grey.iter().map(|g| json!([g.crossing.0, g.left, g.right])).collect::<Vec<_>>(),
                    "circleCount": state.circle_count(),
                    "adequate": state.grey.iter().all(|g| g.joins_distinct()),
                }),
            ))
        }
        Command::Check {
            reduced,
            alternating,
            adequate,
            adams,
            input,
        } => {
            let d = loaded_valid(&input)?;
            let all = !(reduced || alternating || adequate || adams);
            let mut results = serde_json::Map::new();
            let mut holds = true;
            let witness_json = |check: &spatial::SpatialCheck| -> Value {
                json!({
                    "holds": check.holds,
                    "witness": check.witness.as_ref().map(|w| json!({
                        "matchings": serde_json::to_value(&w.matchings).expect("serializable"),
                        "result": codec::diagram_to_json(&w.result),
                    })),
                })
            };
            if reduced || all {
                let check = spatial::is_reduced_spatial(&d)?;
                holds &= check.holds;
                results.insert("reduced".into(), witness_json(&check));
            }
            if alternating || all {
                let check = spatial::is_alternating_spatial(&d)?;
                holds &= check.holds;
                results.insert("alternating".into(), witness_json(&check));
            }
            if adequate || all {
                let check = spatial::is_adequate_spatial(&d)?;
                holds &= check.holds;
                results.insert("adequate".into(), witness_json(&check));
            }
            if adams || all {
                let report = spatial::adams_hypotheses(&d)?;
                holds &= report.all_hold();
                results.insert(
                    "adams".into(),
                    json!({
                        "holds": report.all_hold(),
                        "report": serde_json::to_value(&report).expect("serializable"),
                        "circleThroughCrossingAndEdge": spatial::circle_through_crossing_and_edge(&d)?
                            .iter().map(|(c, e)| json!([c.0, e.0])).collect::<Vec<_>>(),
                    }),
                );
            }
            Ok((
                if holds { 0 } else { 1 },
                json!({"checks": results, "all": holds}),
            ))
        }
        Command::Certify(input) => {
            let d = loaded_valid(&input)?;
            let outcome = if d.vertices().count() == 0 {
                tangle::certify_link(&d)?
            } else if d.vertices().count() == 1 && d.vertices().next().unwrap().valence() % 2 == 0 {
                tangle::certify_one_vertex(&d)?
            } else {
                tangle::certify_adams(&d)?
            };
            let code = if outcome.is_certified() { 0 } else { 1 };
            Ok((code, serde_json::to_value(&outcome).expect("serializable")))
        }
        Command::Double(input) => {
            let d = loaded_valid(&input)?;
            let t = tangle::associated_tangle(&d)?;
            let doubled = tangle::double_tangle(&t)?;
            Ok((
                0,
                json!({
                    "strings": t.strings(),
                    "tangleCrossings": t.crossing_count(),
                    "crossings": doubled.crossing_count(),
                    "diagram": codec::diagram_to_canonical_json(&doubled),
                }),
            ))
        }
        Command::Compose { fixture, file } => {
            let (p, reps) = match (&fixture, &file) {
                (Some(name), None) if name == "fig8" => fixtures::fig8_composition(),
                (Some(name), _) => {
                    return Err(Error::InvalidDiagram(format!(
                        "no built-in composition named {name:?} (try \"fig8\")"
                    )))
                }
                (None, Some(path)) => parse_compose(&read_input(path)?)?,
                (None, None) => {
                    return Err(Error::InvalidDiagram(
                        "provide a composition file or --fixture fig8".into(),
                    ))
                }
            };
            let composed = framework::compose(&p, &reps)?;
            let mut out = serde_json::Map::new();
            out.insert("crossings".into(), json!(composed.crossing_count()));
            out.insert("diagram".into(), codec::diagram_to_canonical_json(&composed));
            let mut code = 0;
            if reps.iter().any(|r| r.evidence.is_some()) {
                let outcome = framework::certify_framework(&p, &reps)?;
                if !outcome.is_certified() {
                    code = 1;
                }
                out.insert(
                    "certification".into(),
                    serde_json::to_value(&outcome).expect("serializable"),
                );
            }
            Ok((code, Value::Object(out)))
        }
        Command::Search {
            budget,
            seeds,
            trace,
            input,
        } => {
            let d = loaded_valid(&input)?;
            let mut runs = Vec::new();
            let mut best = d.crossing_count();
            let mut best_diagram = d.clone();
            for seed in 0..seeds.max(1) {
                let t = moves::search_reduce(&d, budget, seed)?;
                if t.best_crossings < best {
                    best = t.best_crossings;
                    best_diagram = t.best_diagram.clone();
                }
                let mut run = serde_json::Map::new();
                run.insert("seed".into(), json!(seed));
                run.insert("bestCrossings".into(), json!(t.best_crossings));
                run.insert("moves".into(), json!(t.steps.len()));
                if trace {
                    run.insert(
                        "steps".into(),
                        serde_json::to_value(&t.steps).expect("serializable"),
                    );
                }
                runs.push(Value::Object(run));
            }
            Ok((
                0,
                json!({
                    "initial": d.digest(),
                    "initialCrossings": d.crossing_count(),
                    "budget": budget,
                    "bestCrossings": best,
                    "best": codec::diagram_to_canonical_json(&best_diagram),
                    "runs": runs,
                }),
            ))
        }
        Command::Fixtures => {
            let listing: Vec<Value> = fixtures::all()
                .into_iter()
                .map(|(name, d)| {
                    json!({
                        "name": name,
                        "nodes": d.nodes.len(),
                        "crossings": d.crossing_count(),
                        "freeLoops": d.free_loops,
                        "digest": d.digest(),
                    })
                })
                .collect();
            Ok((0, json!({"fixtures": listing})))
        }
    }
}

fn parse_compose(text: &str) -> Result<(PlanarFramework, Vec<Replacement>), Error> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(format!("bad JSON: {e}")))?;
    let framework_json = v
        .get("framework")
        .ok_or_else(|| Error::InvalidDiagram("missing \"framework\"".into()))?;
    let p = PlanarFramework::new(codec::parse_diagram(&framework_json.to_string())?)?;
    let mut reps = Vec::new();
    for (k, r) in v
        .get("replacements")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidDiagram("missing \"replacements\" array".into()))?
        .iter()
        .enumerate()
    {
        let target = match (
            r.pointer("/target/edge").and_then(Value::as_u64),
            r.pointer("/target/vertex").and_then(Value::as_u64),
        ) {
            (Some(e), None) => Target::Edge(DartId(e as u32)),
            (None, Some(vx)) => Target::Vertex(NodeId(vx as u32)),
            _ => {
                return Err(Error::InvalidDiagram(format!(
                    "replacement {k}: target must be {{\"edge\": id}} or {{\"vertex\": id}}"
                )))
            }
        };
        let fragment_json = r
            .get("fragment")
            .ok_or_else(|| Error::InvalidDiagram(format!("replacement {k}: missing fragment")))?;
        let fragment = codec::parse_diagram(&fragment_json.to_string())?;
        let attachments = r
            .get("attachments")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidDiagram(format!("replacement {k}: missing attachments")))?
            .iter()
            .map(|a| {
                a.as_u64()
                    .map(|x| NodeId(x as u32))
                    .ok_or_else(|| Error::InvalidDiagram(format!("replacement {k}: bad attachment")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let evidence = match r.get("evidence") {
            None | Some(Value::Null) => None,
            Some(e) => Some(serde_json::from_value::<Evidence>(e.clone()).map_err(|err| {
                Error::InvalidDiagram(format!("replacement {k}: bad evidence: {err}"))
            })?),
        };
        reps.push(Replacement {
            target,
            fragment,
            attachments,
            evidence,
        });
    }
    Ok((p, reps))
}
