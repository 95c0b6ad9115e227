//! Line-oriented text format.
//!
//! ```text
//! # comment
//! ts square
//! state a
//! state b
//! action u : x
//! trans a [u] b
//! base a
//!
//! map m : square -> other
//! s a -> p
//! a u -> w
//! ```
//!
//! A file holds any number of `ts` and `map` blocks; a map may only refer to
//! systems declared before it. Names are any run of characters other than
//! whitespace, `[`, `]` and `#`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::star::{PointedMap, PointedTs};
use crate::system::{Builder, StateId, TransitionSystem, TsMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemBlock {
    pub name: String,
    pub ts: TransitionSystem,
    pub base: Option<StateId>,
}

impl SystemBlock {
    pub fn pointed(&self) -> Result<PointedTs> {
        let base = self
            .base
            .ok_or_else(|| Error::UnknownBlock(format!("base of {}", self.name)))?;
        PointedTs::new(self.ts.clone(), base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapBlock {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: TsMap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub systems: Vec<SystemBlock>,
    pub maps: Vec<MapBlock>,
}

impl Document {
    pub fn system(&self, name: &str) -> Result<&SystemBlock> {
        self.systems
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&MapBlock> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    pub fn pointed(&self, name: &str) -> Result<PointedTs> {
        self.system(name)?.pointed()
    }

    /// The map together with the bases of its two ends.
    pub fn pointed_map(&self, name: &str) -> Result<PointedMap> {
        let m = self.map(name)?;
        let src = self.pointed(&m.source)?;
        let dst = self.pointed(&m.target)?;
        PointedMap::from_pointed(m.map.clone(), &src, &dst)
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let column = |byte: usize| line[..byte].chars().count() + 1;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() || c == '[' || c == ']' {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: column(s),
                });
            }
            if c == '[' || c == ']' {
                out.push(Token {
                    text: &line[i..i + 1],
                    column: column(i),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: column(s),
        });
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct TsDraft {
    name: String,
    line: usize,
    builder: Builder,
    states: BTreeSet<String>,
    actions: BTreeSet<String>,
    base: Option<(String, usize, usize)>,
}

struct MapDraft {
    name: String,
    line: usize,
    source: String,
    target: String,
    states: BTreeMap<String, String>,
    actions: BTreeMap<String, String>,
}

enum Draft {
    None,
    Ts(TsDraft),
    Map(MapDraft),
}

fn is_name(t: &str) -> bool {
    !t.is_empty() && t != "[" && t != "]"
}

fn finish(draft: Draft, doc: &mut Document) -> Result<()> {
    match draft {
        Draft::None => Ok(()),
        Draft::Ts(d) => {
            let ts = d
                .builder
                .build()
                .map_err(|e| err(d.line, 1, format!("system {}: {e}", d.name)))?;
            let base = match d.base {
                Some((b, line, col)) => Some(
                    ts.state(&b)
                        .ok_or_else(|| err(line, col, format!("undeclared state `{b}`")))?,
                ),
                None => None,
            };
            doc.systems.push(SystemBlock {
                name: d.name,
                ts,
                base,
            });
            Ok(())
        }
        Draft::Map(d) => {
            let src = doc
                .system(&d.source)
                .map_err(|_| err(d.line, 1, format!("unknown system `{}`", d.source)))?
                .ts
                .clone();
            let dst = doc
                .system(&d.target)
                .map_err(|_| err(d.line, 1, format!("unknown system `{}`", d.target)))?
                .ts
                .clone();
            let states: Vec<(&str, &str)> = d.states.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let actions: Vec<(&str, &str)> = d.actions.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let map = TsMap::from_names(src, dst, &states, &actions)
                .map_err(|e| err(d.line, 1, format!("map {}: {e}", d.name)))?;
            doc.maps.push(MapBlock {
                name: d.name,
                source: d.source,
                target: d.target,
                map,
            });
            Ok(())
        }
    }
}

pub fn parse(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut draft = Draft::None;
    let mut names = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let texts: Vec<&str> = toks.iter().map(|t| t.text).collect();
        let arity = |n: usize| -> Result<()> {
            if texts.len() != n {
                let col = toks.get(n).map(|t| t.column).unwrap_or(raw.chars().count() + 1);
                return Err(err(line, col, format!("`{}` expects {} fields", head.text, n - 1)));
            }
            Ok(())
        };
        match head.text {
            "ts" => {
                arity(2)?;
                finish(std::mem::replace(&mut draft, Draft::None), &mut doc)?;
                if !names.insert(texts[1].to_string()) {
                    return Err(err(line, toks[1].column, format!("duplicate block `{}`", texts[1])));
                }
                draft = Draft::Ts(TsDraft {
                    name: texts[1].to_string(),
                    line,
                    builder: Builder::default(),
                    states: BTreeSet::new(),
                    actions: BTreeSet::new(),
                    base: None,
                });
            }
            "map" => {
                if texts.len() != 6 || texts[2] != ":" || texts[4] != "->" {
                    return Err(err(line, head.column, "expected `map NAME : SOURCE -> TARGET`"));
                }
                finish(std::mem::replace(&mut draft, Draft::None), &mut doc)?;
                if !names.insert(texts[1].to_string()) {
                    return Err(err(line, toks[1].column, format!("duplicate block `{}`", texts[1])));
                }
                draft = Draft::Map(MapDraft {
                    name: texts[1].to_string(),
                    line,
                    source: texts[3].to_string(),
                    target: texts[5].to_string(),
                    states: BTreeMap::new(),
                    actions: BTreeMap::new(),
                });
            }
            "state" | "action" | "trans" | "base" => {
                let Draft::Ts(d) = &mut draft else {
                    return Err(err(line, head.column, format!("`{}` outside a ts block", head.text)));
                };
                match head.text {
                    "state" => {
                        arity(2)?;
                        if !d.states.insert(texts[1].to_string()) {
                            return Err(err(line, toks[1].column, format!("duplicate state `{}`", texts[1])));
                        }
                        d.builder.add_state(texts[1]);
                    }
                    "action" => {
                        arity(4)?;
                        if texts[2] != ":" {
                            return Err(err(line, toks[2].column, "expected `:`"));
                        }
                        if !d.actions.insert(texts[1].to_string()) {
                            return Err(err(line, toks[1].column, format!("duplicate action `{}`", texts[1])));
                        }
                        d.builder.add_action(texts[1], texts[3]);
                    }
                    "trans" => {
                        let close = texts.iter().position(|&t| t == "]");
                        let ok = texts.len() >= 5 && texts[2] == "[" && close == Some(texts.len() - 2);
                        if !ok || !is_name(texts[1]) || !is_name(texts[texts.len() - 1]) {
                            return Err(err(line, head.column, "expected `trans SOURCE [ACTION ...] TARGET`"));
                        }
                        let acts = &toks[3..toks.len() - 2];
                        if acts.is_empty() {
                            return Err(err(line, toks[2].column, "a transition needs at least one action"));
                        }
                        for t in [&toks[1], &toks[toks.len() - 1]] {
                            if !d.states.contains(t.text) {
                                return Err(err(line, t.column, format!("undeclared state `{}`", t.text)));
                            }
                        }
                        for t in acts {
                            if !is_name(t.text) {
                                return Err(err(line, t.column, "unexpected bracket"));
                            }
                            if !d.actions.contains(t.text) {
                                return Err(err(line, t.column, format!("undeclared action `{}`", t.text)));
                            }
                        }
                        d.builder.add_transition(
                            texts[1].to_string(),
                            acts.iter().map(|t| t.text.to_string()).collect(),
                            texts[texts.len() - 1].to_string(),
                        );
                    }
                    _ => {
                        arity(2)?;
                        if d.base.is_some() {
                            return Err(err(line, head.column, "base declared twice"));
                        }
                        d.base = Some((texts[1].to_string(), line, toks[1].column));
                    }
                }
            }
            "s" | "a" => {
                let Draft::Map(d) = &mut draft else {
                    return Err(err(line, head.column, format!("`{}` outside a map block", head.text)));
                };
                arity(4)?;
                if texts[2] != "->" {
                    return Err(err(line, toks[2].column, "expected `->`"));
                }
                let table = if head.text == "s" { &mut d.states } else { &mut d.actions };
                if table.insert(texts[1].to_string(), texts[3].to_string()).is_some() {
                    return Err(err(line, toks[1].column, format!("`{}` mapped twice", texts[1])));
                }
            }
            other => {
                return Err(err(line, head.column, format!("unknown keyword `{other}`")));
            }
        }
    }
    finish(draft, &mut doc)?;
    Ok(doc)
}

pub fn render_system(name: &str, ts: &TransitionSystem, base: Option<StateId>) -> String {
    let mut out = format!("ts {name}\n");
    for s in ts.states() {
        let _ = writeln!(out, "state {}", ts.state_name(s));
    }
    for a in ts.actions() {
        let _ = writeln!(out, "action {} : {}", ts.action_name(a), ts.label(a));
    }
    for t in ts.transitions() {
        let acts: Vec<&str> = t.actions.iter().map(|&a| ts.action_name(a)).collect();
        let _ = writeln!(
            out,
            "trans {} [{}] {}",
            ts.state_name(t.source),
            acts.join(" "),
            ts.state_name(t.target)
        );
    }
    if let Some(b) = base {
        let _ = writeln!(out, "base {}", ts.state_name(b));
    }
    out
}

pub fn render_pointed(name: &str, pts: &PointedTs) -> String {
    render_system(name, &pts.ts, Some(pts.base))
}

pub fn render_map(name: &str, source: &str, target: &str, map: &TsMap) -> String {
    let mut out = format!("map {name} : {source} -> {target}\n");
    let (src, dst) = (map.source(), map.target());
    for s in src.states() {
        let _ = writeln!(out, "s {} -> {}", src.state_name(s), dst.state_name(map.state(s)));
    }
    for a in src.actions() {
        let _ = writeln!(out, "a {} -> {}", src.action_name(a), dst.action_name(map.action(a)));
    }
    out
}

pub fn render(doc: &Document) -> String {
    let mut blocks: Vec<String> = doc
        .systems
        .iter()
        .map(|s| render_system(&s.name, &s.ts, s.base))
        .collect();
    blocks.extend(
        doc.maps
            .iter()
            .map(|m| render_map(&m.name, &m.source, &m.target, &m.map)),
    );
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::cube;
    use crate::system::Label;

    #[test]
    fn round_trip_cube() {
        let c = cube(&[Label::from("u"), Label::from("v")]);
        let text = render_system("square", &c, None);
        let doc = parse(&text).unwrap();
        assert_eq!(doc.system("square").unwrap().ts, c);
        assert_eq!(render(&doc), text);
    }

    #[test]
    fn brackets_may_touch_names() {
        let doc = parse("ts t\nstate a\nstate b\naction u : x\ntrans a [u] b\ntrans a[u]b # same\n").unwrap();
        assert_eq!(doc.system("t").unwrap().ts.transition_count(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("ts t\nstate a\ntrans a [u] a\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                column: 10,
                message: "undeclared action `u`".into()
            }
        );
        let e = parse("ts t\nstate a\nbogus a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 1, .. }));
        let e = parse("state a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse("ts t\nstate a\nbase b\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 6, .. }));
    }

    #[test]
    fn maps_check_labels() {
        let text = "ts x\nstate a\nstate b\naction u : p\ntrans a [u] b\n\
                    ts y\nstate c\nstate d\naction v : q\ntrans c [v] d\n\
                    map f : x -> y\ns a -> c\ns b -> d\na u -> v\n";
        let e = parse(text).unwrap_err();
        match e {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 11);
                assert!(message.contains("labelled"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn maps_round_trip() {
        let text = "ts x\nstate a\nstate b\naction u : p\ntrans a [u] b\nbase a\n\n\
                    ts y\nstate c\naction v : p\ntrans c [v] c\nbase c\n\n\
                    map f : x -> y\ns a -> c\ns b -> c\na u -> v\n";
        let doc = parse(text).unwrap();
        assert_eq!(render(&doc), text);
        let f = doc.pointed_map("f").unwrap();
        assert_eq!(f.target_base, doc.system("y").unwrap().base.unwrap());
    }
}
