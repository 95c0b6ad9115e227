//! `hdts`: command-line front end. Verdict commands exit 0 for yes and 1 for
//! no; anything that goes wrong exits 2.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hdts::axioms::classify;
use hdts::bisim::{is_p_injective, p_bisimilar_via_span, strong_bisimilar};
use hdts::builders::{boundary, collapsed_cylinder_path, cube, double, path, pure};
use hdts::closure::weak_closure;
use hdts::colimits::{coproduct, pushout};
use hdts::dot::export_dot;
use hdts::homotopy::{cocyl_csts, cocyl_star, cyl_csts, cyl_pointed, external_states, internal_states};
use hdts::reflections::{cs_reflect, csa1_reflect, csa2_reflect};
use hdts::similarity::{
    is_fibrant, is_weak_equivalence_csts, is_weak_equivalence_star, past_similar, reduce,
};
use hdts::text::{parse, render, Document, MapBlock, SystemBlock};
use hdts::{corpus, PointedTs, StateId, TransitionSystem, TsMap, Word};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hdts", version, about = "Higher-dimensional transition systems")]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Inputs are `FILE` or `FILE:BLOCK`, with `-` for standard input. A `FILE`
/// that does not exist is looked up among the bundled examples, ignoring a
/// `.hdts` or `.map` extension.
/// Without `:BLOCK` the first system (or map) in the file is used.
#[derive(Subcommand)]
enum Command {
    /// Check the axioms and report the strongest class.
    Classify { file: String },
    /// Build a standard system from a word, e.g. `build cube uv`.
    Build {
        kind: BuildKind,
        /// Letters, or comma-separated labels.
        #[arg(default_value = "")]
        word: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Close the transitions under the multiset and patching rules.
    Close { file: String },
    /// Reflect onto regular or Cattani-Sassone systems.
    Reflect { kind: ReflectKind, file: String },
    /// Pushout of two maps with a common source.
    Pushout { f: String, g: String },
    /// Disjoint union.
    Coproduct {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Cylinder with its inclusions and projection.
    Cyl {
        file: String,
        #[arg(long)]
        pointed: bool,
    },
    /// Path object with its diagonal and projections.
    Cocyl {
        file: String,
        /// Keep the part reachable from the base pair.
        #[arg(long)]
        star: bool,
    },
    /// Internal and external states.
    Internal { file: String },
    /// Past-similar pairs.
    Pastsim { file: String },
    /// Exit 0 iff fibrant.
    Fibrant { file: String },
    /// Exit 0 iff past-similarity is the diagonal.
    Reduced { file: String },
    /// The reduction with its unit map.
    Reduce { file: String },
    /// Exit 0 iff the map is a weak equivalence.
    Weq {
        map: String,
        /// Compare reductions of star-shaped systems instead of collapses.
        #[arg(long)]
        star: bool,
    },
    /// Exit 0 iff the map lifts against every path extension.
    Pinj { map: String },
    /// Exit 0 iff the two pointed systems are bisimilar.
    Bisim { left: String, right: String },
    /// Graphviz output.
    Dot { file: String },
    /// Print a bundled example, or list them.
    Examples { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Cube,
    Boundary,
    Pure,
    Double,
    Path,
    /// The pointed cylinder of a path with its two ends identified.
    Cw,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReflectKind {
    Csa1,
    Csa2,
    Cs,
}

struct Input {
    doc: Document,
    block: Option<String>,
}

impl Input {
    fn load(spec: &str) -> Result<Self> {
        if let Some(doc) = read_doc(spec)? {
            return Ok(Input { doc, block: None });
        }
        if let Some((file, block)) = spec.rsplit_once(':') {
            if let Some(doc) = read_doc(file)? {
                return Ok(Input {
                    doc,
                    block: Some(block.to_string()),
                });
            }
        }
        bail!("no such file or example: {spec}")
    }

    fn system(&self) -> Result<&SystemBlock> {
        match &self.block {
            Some(name) => Ok(self.doc.system(name)?),
            None => self.doc.systems.first().ok_or_else(|| anyhow!("no system in input")),
        }
    }

    fn pointed(&self) -> Result<PointedTs> {
        let s = self.system()?;
        s.pointed().with_context(|| format!("{} has no base state", s.name))
    }

    fn map(&self) -> Result<&MapBlock> {
        match &self.block {
            Some(name) => Ok(self.doc.map(name)?),
            None => self.doc.maps.first().ok_or_else(|| anyhow!("no map in input")),
        }
    }

    fn pointed_map(&self) -> Result<hdts::PointedMap> {
        Ok(self.doc.pointed_map(&self.map()?.name)?)
    }
}

fn read_doc(spec: &str) -> Result<Option<Document>> {
    let text = if spec == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")?
    } else if Path::new(spec).exists() {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else {
        let stem = spec.trim_end_matches(".hdts").trim_end_matches(".map");
        match corpus::source(stem) {
            Some(t) => t.to_string(),
            None => return Ok(None),
        }
    };
    Ok(Some(parse(&text).with_context(|| format!("parsing {spec}"))?))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

enum Outcome {
    Done,
    Verdict(bool),
}

fn system_block(name: &str, ts: TransitionSystem, base: Option<StateId>) -> SystemBlock {
    SystemBlock {
        name: name.to_string(),
        ts,
        base,
    }
}

fn map_block(name: &str, source: &str, target: &str, map: TsMap) -> MapBlock {
    MapBlock {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        map,
    }
}

fn system_json(s: &SystemBlock) -> Value {
    json!({
        "name": s.name,
        "system": s.ts,
        "base": s.base.map(|b| s.ts.state_name(b)),
    })
}

fn map_json(m: &MapBlock) -> Value {
    let (src, dst) = (m.map.source(), m.map.target());
    let states: serde_json::Map<String, Value> = src
        .states()
        .map(|s| (src.state_name(s).to_string(), json!(dst.state_name(m.map.state(s)))))
        .collect();
    let actions: serde_json::Map<String, Value> = src
        .actions()
        .map(|a| (src.action_name(a).to_string(), json!(dst.action_name(m.map.action(a)))))
        .collect();
    json!({
        "name": m.name,
        "source": m.source,
        "target": m.target,
        "states": states,
        "actions": actions,
    })
}

struct Printer {
    json: bool,
}

impl Printer {
    fn doc(&self, doc: &Document) -> Outcome {
        if self.json {
            let v = json!({
                "systems": doc.systems.iter().map(system_json).collect::<Vec<_>>(),
                "maps": doc.maps.iter().map(map_json).collect::<Vec<_>>(),
            });
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
        } else {
            emit(&render(doc));
        }
        Outcome::Done
    }

    fn verdict(&self, key: &str, yes: bool, extra: Value, text: &[String]) -> Outcome {
        if self.json {
            let mut v = json!({ key: yes });
            if let (Value::Object(o), Value::Object(e)) = (&mut v, extra) {
                o.extend(e);
            }
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
        } else {
            emit(&format!("{key}: {yes}\n"));
            for line in text {
                emit(&format!("{line}\n"));
            }
        }
        Outcome::Verdict(yes)
    }

    fn value(&self, v: Value, text: &str) -> Outcome {
        if self.json {
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
        } else {
            emit(text);
        }
        Outcome::Done
    }
}

/// Renames `name` until it is not already in `taken`.
fn fresh(taken: &[SystemBlock], name: &str) -> String {
    let mut out = name.to_string();
    while taken.iter().any(|s| s.name == out) {
        out.push('\'');
    }
    out
}

fn run(cli: Cli) -> Result<Outcome> {
    let out = Printer { json: cli.json };
    Ok(match cli.command {
        Command::Classify { file } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            let c = classify(&s.ts);
            let text = format!(
                "class: {}\nmultiset: {}\npatching: {}\nall_actions_used: {}\nintermediate_state: {}\ncsa2: {}\ncsa1: {}\n",
                c.class, c.multiset, c.patching, c.all_actions_used, c.intermediate_state, c.csa2, c.csa1
            );
            out.value(json!({ "name": s.name, "classification": c }), &text)
        }
        Command::Build { kind, word, name } => {
            let w = Word::parse(&word);
            let labels = w.letters();
            let (ts, base) = match kind {
                BuildKind::Cube => (cube(labels), None),
                BuildKind::Boundary => (boundary(labels)?, None),
                BuildKind::Pure => (pure(labels), None),
                BuildKind::Double => {
                    let [l] = labels else {
                        bail!("double takes exactly one label");
                    };
                    (double(l.clone()), None)
                }
                BuildKind::Path => {
                    let p = path(&w);
                    (p.ts, Some(p.base))
                }
                BuildKind::Cw => {
                    let p = collapsed_cylinder_path(&w)?;
                    (p.ts, Some(p.base))
                }
            };
            let kind_name = kind.to_possible_value().expect("named").get_name().to_string();
            let name = name.unwrap_or(kind_name);
            out.doc(&Document {
                systems: vec![system_block(&name, ts, base)],
                maps: vec![],
            })
        }
        Command::Close { file } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            let closed = s.ts.with_transitions(weak_closure(s.ts.transitions()))?;
            out.doc(&Document {
                systems: vec![system_block(&format!("{}_closed", s.name), closed, s.base)],
                maps: vec![],
            })
        }
        Command::Reflect { kind, file } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            let (r, unit) = match kind {
                ReflectKind::Csa1 => csa1_reflect(&s.ts)?,
                ReflectKind::Csa2 => csa2_reflect(&s.ts)?,
                ReflectKind::Cs => cs_reflect(&s.ts)?,
            };
            let suffix = kind.to_possible_value().expect("named").get_name().to_string();
            let name = format!("{}_{suffix}", s.name);
            let base = s.base.map(|b| unit.state(b));
            out.doc(&Document {
                systems: vec![s.clone(), system_block(&name, r, base)],
                maps: vec![map_block("unit", &s.name, &name, unit)],
            })
        }
        Command::Pushout { f, g } => {
            let (fi, gi) = (Input::load(&f)?, Input::load(&g)?);
            let (fm, gm) = (fi.map()?, gi.map()?);
            let p = pushout(&fm.map, &gm.map)?;
            let mut systems = vec![system_block(&fm.target, fm.map.target().clone(), None)];
            let right_name = fresh(&systems, &gm.target);
            systems.push(system_block(&right_name, gm.map.target().clone(), None));
            let name = fresh(&systems, "pushout");
            systems.push(system_block(&name, p.object, None));
            let maps = vec![
                map_block("left", &fm.target, &name, p.left),
                map_block("right", &right_name, &name, p.right),
            ];
            out.doc(&Document { systems, maps })
        }
        Command::Coproduct { files } => {
            let mut systems: Vec<SystemBlock> = Vec::new();
            for f in &files {
                let input = Input::load(f)?;
                let s = input.system()?;
                let name = fresh(&systems, &s.name);
                systems.push(system_block(&name, s.ts.clone(), None));
            }
            let parts: Vec<TransitionSystem> = systems.iter().map(|s| s.ts.clone()).collect();
            let (sum, inj) = coproduct(&parts);
            let name = fresh(&systems, "coproduct");
            let maps = inj
                .into_iter()
                .zip(&systems)
                .enumerate()
                .map(|(i, (m, s))| map_block(&format!("in{i}"), &s.name, &name, m))
                .collect();
            systems.push(system_block(&name, sum, None));
            out.doc(&Document { systems, maps })
        }
        Command::Cyl { file, pointed } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            let c = if pointed {
                cyl_pointed(&input.pointed()?)?
            } else {
                cyl_csts(&s.ts)?
            };
            let name = format!("cyl_{}", s.name);
            let source = system_block(&s.name, s.ts.clone(), if pointed { s.base } else { None });
            out.doc(&Document {
                systems: vec![source, system_block(&name, c.cyl, c.base)],
                maps: vec![
                    map_block("gamma0", &s.name, &name, c.gamma0),
                    map_block("gamma1", &s.name, &name, c.gamma1),
                    map_block("sigma", &name, &s.name, c.sigma),
                ],
            })
        }
        Command::Cocyl { file, star } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            let c = if star {
                cocyl_star(&input.pointed()?)?
            } else {
                cocyl_csts(&s.ts)?
            };
            let name = format!("cocyl_{}", s.name);
            let source = if star {
                // the projections land in the part reachable from the base
                let (reach, _) = hdts::star::star_coreflect(&input.pointed()?);
                system_block(&s.name, reach.ts, Some(reach.base))
            } else {
                system_block(&s.name, s.ts.clone(), None)
            };
            out.doc(&Document {
                systems: vec![source, system_block(&name, c.cocyl, c.base)],
                maps: vec![
                    map_block("tau", &s.name, &name, c.tau),
                    map_block("pi0", &name, &s.name, c.pi0),
                    map_block("pi1", &name, &s.name, c.pi1),
                ],
            })
        }
        Command::Internal { file } => {
            let input = Input::load(&file)?;
            let ts = &input.system()?.ts;
            let names = |set: std::collections::BTreeSet<StateId>| {
                set.into_iter().map(|s| ts.state_name(s).to_string()).collect::<Vec<_>>()
            };
            let (int, ext) = (names(internal_states(ts)), names(external_states(ts)));
            let text = format!("internal: {}\nexternal: {}\n", int.join(" "), ext.join(" "));
            out.value(json!({ "internal": int, "external": ext }), &text)
        }
        Command::Pastsim { file } => {
            let input = Input::load(&file)?;
            let p = input.pointed()?;
            let rel = past_similar(&p)?;
            let pairs = rel.named(&p.ts, &p.ts);
            let text: String = pairs
                .iter()
                .filter(|(a, b)| a < b)
                .map(|(a, b)| format!("{a} ~ {b}\n"))
                .collect();
            let text = if text.is_empty() { "diagonal\n".to_string() } else { text };
            out.value(
                json!({ "pairs": pairs, "transitive": rel.is_transitive(), "diagonal": rel.is_diagonal() }),
                &text,
            )
        }
        Command::Fibrant { file } => {
            let input = Input::load(&file)?;
            let p = input.pointed()?;
            let f = is_fibrant(&p)?;
            let (extra, text) = match &f.witness {
                Some(w) => {
                    let (t, m) = (p.ts.show(&w.transition), p.ts.show(&w.missing));
                    (
                        json!({ "witness": { "transition": t, "missing": m } }),
                        vec![format!("witness: {t} moves to {m}, which is missing")],
                    )
                }
                None => (json!({ "witness": null }), vec![]),
            };
            out.verdict("fibrant", f.fibrant, extra, &text)
        }
        Command::Reduced { file } => {
            let input = Input::load(&file)?;
            let p = input.pointed()?;
            let rel = past_similar(&p)?;
            let pair = rel
                .named(&p.ts, &p.ts)
                .into_iter()
                .find(|(a, b)| a != b)
                .map(|(a, b)| (a.to_string(), b.to_string()));
            let text: Vec<String> = pair.iter().map(|(a, b)| format!("witness: {a} ~ {b}")).collect();
            out.verdict("reduced", pair.is_none(), json!({ "witness": pair }), &text)
        }
        Command::Reduce { file } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            let (r, unit) = reduce(&input.pointed()?)?;
            let name = format!("{}_reduced", s.name);
            out.doc(&Document {
                systems: vec![s.clone(), system_block(&name, r.ts, Some(r.base))],
                maps: vec![map_block("unit", &s.name, &name, unit.map)],
            })
        }
        Command::Weq { map, star } => {
            let input = Input::load(&map)?;
            let yes = if star {
                is_weak_equivalence_star(&input.pointed_map()?)?
            } else {
                is_weak_equivalence_csts(&input.map()?.map)?
            };
            out.verdict("weak_equivalence", yes, json!({}), &[])
        }
        Command::Pinj { map } => {
            let input = Input::load(&map)?;
            let f = input.pointed_map()?;
            let r = is_p_injective(&f)?;
            let (extra, text) = match &r.witness {
                Some(w) => {
                    let (x, y) = (f.map.source(), f.map.target());
                    (
                        json!({ "witness": {
                            "state": x.state_name(w.state),
                            "word": w.word.to_string(),
                            "extension": w.extension.to_string(),
                            "action": y.action_name(w.action),
                            "target": y.state_name(w.target),
                        }}),
                        vec![format!(
                            "witness: {} cannot extend by {} (at {})",
                            w.word,
                            w.extension,
                            x.state_name(w.state)
                        )],
                    )
                }
                None => (json!({ "witness": null }), vec![]),
            };
            out.verdict("p_injective", r.injective, extra, &text)
        }
        Command::Bisim { left, right } => {
            let (p, q) = (Input::load(&left)?.pointed()?, Input::load(&right)?.pointed()?);
            let b = strong_bisimilar(&p, &q)?;
            let span = p_bisimilar_via_span(&p, &q)?;
            if b.is_some() != span.is_some() {
                bail!("bisimulation and span disagree");
            }
            let relation = b.as_ref().map(|b| b.relation.named(&p.ts, &q.ts));
            let text: Vec<String> = relation
                .iter()
                .flatten()
                .map(|(a, c)| format!("{a} ~ {c}"))
                .collect();
            let apex = span.map(|s| s.apex.ts.state_count());
            out.verdict(
                "bisimilar",
                b.is_some(),
                json!({ "relation": relation, "span_states": apex }),
                &text,
            )
        }
        Command::Dot { file } => {
            let input = Input::load(&file)?;
            let s = input.system()?;
            emit(&export_dot(&s.name, &s.ts, s.base));
            Outcome::Done
        }
        Command::Examples { name } => match name {
            Some(n) => {
                let stem = n.trim_end_matches(".hdts").trim_end_matches(".map");
                let src = corpus::source(stem).ok_or_else(|| anyhow!("no example named {n}"))?;
                if cli.json {
                    out.doc(&parse(src)?)
                } else {
                    emit(src);
                    Outcome::Done
                }
            }
            None => {
                let names: Vec<&str> = corpus::names().collect();
                out.value(json!(names), &format!("{}\n", names.join("\n")))
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) | Ok(Outcome::Verdict(true)) => ExitCode::SUCCESS,
        Ok(Outcome::Verdict(false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
