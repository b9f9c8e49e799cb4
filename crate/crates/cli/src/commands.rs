use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use geodetic::boundary::{
    busemann_trace, find_onion_prefix, onion_apexes, ray_extend, rebase_ray, validate_ray_prefix, RayJson, RayPrefix,
};
use geodetic::graph::{is_geodetic, GeodesicPath, Graph, GraphFile, VertexId};
use geodetic::groups::ball::{cayley_ball, BallFile};
use geodetic::groups::families::{gen_family, Family};
use geodetic::groups::GroupSpec;
use geodetic::iec::{enumerate_iecs_bruteforce, enumerate_iecs_geodetic, IecInventory};
use geodetic::rws::{check_confluence, cross_validate, extract_rws, words_equal, ConfluentSystem, RewritingSystem};
use geodetic::tree_qi::QiContext;

use crate::cli::Command;

/// A bad flag or argument combination; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub struct Outcome {
    pub result: Value,
    pub inputs: Vec<PathBuf>,
    /// Written to `--output` when present.
    pub artifact: Option<String>,
    /// False when the command ran but its verification failed.
    pub ok: bool,
}

impl Outcome {
    fn new(result: Value, inputs: &[&Path]) -> Self {
        Outcome {
            result,
            inputs: inputs.iter().map(|p| p.to_path_buf()).collect(),
            artifact: None,
            ok: true,
        }
    }

    fn with_artifact(mut self, artifact: String) -> Self {
        self.artifact = Some(artifact);
        self
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Accepts the plain graph format or a labelled ball.
fn load_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let g = if value.get("labels").is_some() {
        let ball: BallFile = serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))?;
        ball.to_graph()?
    } else {
        let file: GraphFile = serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))?;
        Graph::from_file(&file)?
    };
    Ok(g)
}

fn load_spec(path: &Path) -> Result<GroupSpec> {
    Ok(GroupSpec::from_json(&read(path)?)?)
}

fn load_rws(path: &Path) -> Result<RewritingSystem> {
    Ok(RewritingSystem::from_text(&read(path)?)?)
}

fn load_ray(g: &Graph, path: &Path, horizon: Option<usize>) -> Result<RayPrefix> {
    let file: RayJson =
        serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let ray = file.resolve(g)?;
    match horizon {
        None => Ok(ray),
        Some(h) if h <= ray.horizon() => Ok(validate_ray_prefix(g, &ray.seq()[..=h])?),
        Some(h) => usage(format!("--horizon {h} exceeds the ray's horizon {}", ray.horizon())),
    }
}

fn vertices(g: &Graph, names: &[String]) -> Result<Vec<VertexId>> {
    Ok(names.iter().map(|n| g.vertex(n)).collect::<geodetic::Result<_>>()?)
}

fn at_least(flag: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return usage(format!("--{flag} must be at least {min}, got {value}"));
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn pretty<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report types serialize");
    s.push('\n');
    s
}

/// IECs by the fork method when geodetic, else exhaustively.
fn inventory(g: &Graph) -> Result<IecInventory> {
    if is_geodetic(g)?.geodetic {
        Ok(enumerate_iecs_geodetic(g)?)
    } else {
        Ok(enumerate_iecs_bruteforce(g, g.vertex_count().max(3))?)
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Gen { family, params, .. } => {
            let f = Family::parse(family, params).map_err(|e| UsageError(e.to_string()))?;
            let g = gen_family(&f)?;
            let file = g.to_file();
            Ok(Outcome::new(
                json!({
                    "family": f.to_string(),
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "graph": to_value(&file),
                }),
                &[],
            )
            .with_artifact(pretty(&file)))
        }

        Command::CheckGeodetic { graph, .. } => {
            let g = load_graph(graph)?;
            let mut result = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
            });
            match is_geodetic(&g) {
                Ok(report) => {
                    result["geodetic"] = json!(report.geodetic);
                    result["witness"] = match report.witness {
                        None => Value::Null,
                        Some(w) => json!({
                            "from": g.name(w.from),
                            "to": g.name(w.to),
                            "paths": [g.render(w.paths[0].vertices()), g.render(w.paths[1].vertices())],
                        }),
                    };
                }
                Err(geodetic::Error::Disconnected(a, b)) => {
                    result["geodetic"] = json!(false);
                    result["witness"] = Value::Null;
                    result["disconnected"] = json!([a, b]);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(Outcome::new(result, &[graph]))
        }

        Command::Iecs { graph, max_len, .. } => {
            let g = load_graph(graph)?;
            let (method, inv) = match max_len {
                Some(l) => {
                    at_least("max-len", *l, 3)?;
                    ("bruteforce", enumerate_iecs_bruteforce(&g, *l)?)
                }
                None => ("geodetic", enumerate_iecs_geodetic(&g)?),
            };
            let mut result = to_value(&inv.to_report(&g));
            result["method"] = json!(method);
            result["count"] = json!(inv.len());
            Ok(Outcome::new(result, &[graph]))
        }

        Command::TreeQi { graph, root, .. } => {
            let g = load_graph(graph)?;
            let ctx = QiContext::new(&g)?;
            let result = match root {
                Some(r) => to_value(&ctx.distortion(g.vertex(r)?)?.to_json(&g)),
                None => {
                    let reports = g
                        .vertices()
                        .map(|o| Ok(ctx.distortion(o)?.to_json(&g)))
                        .collect::<Result<Vec<_>>>()?;
                    json!({
                        "n": ctx.n(),
                        "lambda": ctx.lambda(),
                        "bound_satisfied": reports.iter().all(|r| r.bound_satisfied),
                        "roots": reports,
                    })
                }
            };
            Ok(Outcome::new(result, &[graph]))
        }

        Command::Lift { graph, root, path, .. } => {
            let g = load_graph(graph)?;
            let ctx = QiContext::new(&g)?;
            let t = ctx.tree(g.vertex(root)?)?;
            let gamma = GeodesicPath(vertices(&g, path)?);
            let lift = ctx.lift(&t, &gamma)?;
            Ok(Outcome::new(
                json!({
                    "root": root,
                    "geodesic": g.render(gamma.vertices()),
                    "tree_path": g.render(&lift.tree_path),
                    "length": lift.len(),
                    "geodesic_length": gamma.len(),
                    "lambda": ctx.lambda(),
                    "bound": ctx.lambda() * gamma.len(),
                    "splice_points": g.render(&lift.splice_points),
                    "closures": lift.closures.iter().map(|c| g.render(c.vertices())).collect::<Vec<_>>(),
                }),
                &[graph],
            ))
        }

        Command::Busemann { graph, ray, x, horizon, window, .. } => {
            at_least("window", *window, 1)?;
            let g = load_graph(graph)?;
            let gamma = load_ray(&g, ray, *horizon)?;
            let tr = busemann_trace(&g, &gamma, g.vertex(x)?, *window)?;
            Ok(Outcome::new(
                json!({
                    "x": x,
                    "ray": to_value(&gamma.to_json(&g)),
                    "window": tr.window,
                    "values": tr.values,
                    "stable_from": tr.stable_from,
                    "limit": tr.limit,
                    "conclusive": tr.stable_from.is_some(),
                }),
                &[graph, ray],
            ))
        }

        Command::Rebase { graph, ray, root, horizon, window, .. } => {
            at_least("window", *window, 1)?;
            let g = load_graph(graph)?;
            let gamma = load_ray(&g, ray, *horizon)?;
            let beta = rebase_ray(&g, &gamma, g.vertex(root)?, *window)?;
            Ok(Outcome::new(
                json!({
                    "root": root,
                    "pivot": beta.pivot,
                    "ray": to_value(&beta.ray.to_json(&g)),
                }),
                &[graph, ray],
            ))
        }

        Command::RayExtend { graph, attach, horizon, .. } => {
            at_least("horizon", *horizon, 1)?;
            let g = load_graph(graph)?;
            let ext = ray_extend(&g, &vertices(&g, attach)?, *horizon)?;
            let file = ext.graph.to_file();
            Ok(Outcome::new(
                json!({
                    "truncation": ext.truncation,
                    "rays": ext.rays.iter().map(|r| ext.graph.render(r)).collect::<Vec<_>>(),
                    "vertices": ext.graph.vertex_count(),
                    "edges": ext.graph.edge_count(),
                    "graph": to_value(&file),
                }),
                &[graph],
            )
            .with_artifact(pretty(&file)))
        }

        Command::Onion { graph, max_depth, central, .. } => {
            let g = load_graph(graph)?;
            let inv = inventory(&g)?;
            let pairs: Vec<(VertexId, VertexId)> = vertices(&g, central)?.chunks(2).map(|c| (c[0], c[1])).collect();
            let restrict = (!pairs.is_empty()).then_some(pairs.as_slice());
            let found = find_onion_prefix(&g, &inv, *max_depth, restrict)?;
            let (onion, apexes) = match &found {
                None => (Value::Null, Value::Null),
                Some(p) => (
                    to_value(&p.to_json(&g)),
                    onion_apexes(&g, p).map_or(Value::Null, |a| json!(g.render(&a))),
                ),
            };
            Ok(Outcome::new(
                json!({
                    "max_depth": max_depth,
                    "central": central.chunks(2).map(|c| [&c[0], &c[1]]).collect::<Vec<_>>(),
                    "found": found.is_some(),
                    "onion": onion,
                    "apexes": apexes,
                }),
                &[graph],
            ))
        }

        Command::CayleyBall { spec, radius, .. } => {
            at_least("radius", *radius, 1)?;
            let s = load_spec(spec)?;
            let ball = cayley_ball(&s, *radius)?;
            let file = ball.to_file();
            Ok(Outcome::new(
                json!({
                    "radius": radius,
                    "vertices": ball.graph.vertex_count(),
                    "edges": ball.graph.edge_count(),
                    "ball": to_value(&file),
                }),
                &[spec],
            )
            .with_artifact(pretty(&file)))
        }

        Command::RwsExtract { spec, radius, .. } => {
            at_least("radius", *radius, 1)?;
            let s = load_spec(spec)?;
            let ball = cayley_ball(&s, *radius)?;
            geodetic::graph::require_geodetic(&ball.graph)?;
            let inv = enumerate_iecs_geodetic(&ball.graph)?;
            let ex = extract_rws(&ball, &inv)?;
            let text = ex.system.to_text();
            Ok(Outcome::new(
                json!({
                    "radius": radius,
                    "rules": ex.system.rule_strings(),
                    "free_reductions": ex.system.len() - ex.system.extra_rules().len(),
                    "iec_words": ex.iec_words.iter().map(|w| ball.alphabet.render(w)).collect::<Vec<_>>(),
                    "warnings": ex.warnings,
                    "text": text,
                }),
                &[spec],
            )
            .with_artifact(text))
        }

        Command::RwsCheck { rws, .. } => {
            let sys = load_rws(rws)?;
            let report = check_confluence(&sys);
            let mut result = to_value(&report);
            result["rule_list"] = json!(sys.rule_strings());
            Ok(Outcome::new(result, &[rws]))
        }

        Command::Normalize { rws, word, .. } => {
            let sys = load_rws(rws)?;
            let w = sys.alphabet().parse_word(word)?;
            let (nf, steps) = sys.normalize_counted(&w);
            Ok(Outcome::new(
                json!({
                    "word": sys.alphabet().render(&w),
                    "normal_form": sys.alphabet().render(&nf),
                    "length": nf.len(),
                    "steps": steps,
                }),
                &[rws],
            ))
        }

        Command::Wp { rws, left, right, .. } => {
            let sys = ConfluentSystem::certify(load_rws(rws)?)?;
            let a = sys.alphabet();
            let (l, r) = (a.parse_word(left)?, a.parse_word(right)?);
            Ok(Outcome::new(
                json!({
                    "left": a.render(&l),
                    "right": a.render(&r),
                    "normal_forms": [a.render(&sys.normalize(&l)), a.render(&sys.normalize(&r))],
                    "equal": words_equal(&sys, &l, &r),
                }),
                &[rws],
            ))
        }

        Command::Pipeline { spec, radius, samples, seed, max_len, .. } => {
            at_least("radius", *radius, 1)?;
            at_least("samples", *samples, 1)?;
            let max_len = max_len.unwrap_or(12);
            let s = load_spec(spec)?;
            let (stages, ok) = pipeline(&s, *radius, *samples, *seed, max_len)?;
            let mut out = Outcome::new(
                json!({
                    "radius": radius,
                    "samples": samples,
                    "seed": seed,
                    "max_len": max_len,
                    "passed": ok,
                    "stages": stages,
                }),
                &[spec],
            );
            out.ok = ok;
            Ok(out)
        }
    }
}

fn stage(name: &str, passed: bool, detail: Value) -> Value {
    json!({ "stage": name, "passed": passed, "detail": detail })
}

/// Runs the stages in order, stopping after the first failure.
fn pipeline(s: &GroupSpec, radius: usize, samples: usize, seed: u64, max_len: usize) -> Result<(Vec<Value>, bool)> {
    let mut stages = Vec::new();
    let ball = cayley_ball(s, radius)?;
    stages.push(stage(
        "ball",
        true,
        json!({"vertices": ball.graph.vertex_count(), "edges": ball.graph.edge_count()}),
    ));

    let g = &ball.graph;
    let report = is_geodetic(g)?;
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "from": g.name(w.from),
            "to": g.name(w.to),
            "paths": [g.render(w.paths[0].vertices()), g.render(w.paths[1].vertices())],
        })
    });
    stages.push(stage("geodetic", report.geodetic, json!({ "witness": witness })));
    if !report.geodetic {
        return Ok((stages, false));
    }

    let inv = enumerate_iecs_geodetic(g)?;
    stages.push(stage(
        "iecs",
        true,
        json!({"count": inv.len(), "histogram": inv.histogram, "max_length": inv.max_length}),
    ));

    let ex = extract_rws(&ball, &inv)?;
    stages.push(stage(
        "extract",
        true,
        json!({
            "rules": ex.system.rule_strings(),
            "iec_words": ex.iec_words.iter().map(|w| ball.alphabet.render(w)).collect::<Vec<_>>(),
            "warnings": ex.warnings,
        }),
    ));

    let conf = check_confluence(&ex.system);
    let confluent = conf.confluent;
    stages.push(stage("confluence", confluent, to_value(&conf)));
    if !confluent {
        return Ok((stages, false));
    }

    let sys = ConfluentSystem::certify(ex.system)?;
    let cv = cross_validate(&sys, s, samples, max_len, seed, None)?;
    let passed = cv.passed;
    stages.push(stage("cross_validate", passed, to_value(&cv)));
    if !passed {
        return Ok((stages, false));
    }
    if stages.len() != 6 {
        bail!("pipeline ended after {} stages", stages.len());
    }
    Ok((stages, true))
}
