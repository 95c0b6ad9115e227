//! Standard objects: cubes and their boundaries, pure and double transitions,
//! paths, discrete systems and the collapsed cylinders `C(w)`.

use std::fmt;

use crate::closure::quotient;
use crate::error::{Error, Result};
use crate::homotopy::cyl_pointed;
use crate::partition::Partition;
use crate::star::PointedTs;
use crate::system::{Label, TransitionSystem};

/// A finite word over labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Label>);

impl Word {
    pub fn new(letters: Vec<Label>) -> Self {
        Word(letters)
    }

    /// One label per character: `"uvw"` is `u v w`.
    pub fn from_letters(s: &str) -> Self {
        Word(s.chars().map(Label::from).collect())
    }

    /// Comma separated labels if `s` contains a comma, single characters otherwise.
    pub fn parse(s: &str) -> Self {
        if s.contains(',') {
            Word(
                s.split(',')
                    .map(str::trim)
                    .filter(|x| !x.is_empty())
                    .map(Label::from)
                    .collect(),
            )
        } else {
            Self::from_letters(s)
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Label] {
        &self.0
    }

    pub fn push(&mut self, l: Label) {
        self.0.push(l);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|l| l.as_str().chars().count() == 1) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<&str> = self.0.iter().map(Label::as_str).collect();
            f.write_str(&parts.join(","))
        }
    }
}

fn indexed_actions(labels: &[Label]) -> Vec<(String, Label)> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| (format!("({},{})", l, i + 1), l.clone()))
        .collect()
}

fn bits(mask: usize, n: usize) -> String {
    if n == 0 {
        return "()".to_string();
    }
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn orderings(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn cube_upto(labels: &[Label], keep_top: bool) -> TransitionSystem {
    let n = labels.len();
    let states: Vec<String> = (0..1usize << n).map(|m| bits(m, n)).collect();
    let mut trans = Vec::new();
    for start in 0..1usize << n {
        // flip a nonempty set of coordinates that are 0 in `start`
        let free = !start & ((1usize << n) - 1);
        let mut sub = free;
        while sub != 0 {
            let idx: Vec<usize> = (0..n).filter(|i| sub >> i & 1 == 1).collect();
            if keep_top || idx.len() < n {
                for order in orderings(&idx) {
                    trans.push((start, order, start | sub));
                }
            }
            sub = (sub - 1) & free;
        }
    }
    TransitionSystem::assemble(states, indexed_actions(labels), trans)
        .expect("cube tables are well formed")
        .system
}

/// The n-cube on the given labels. States are bit strings, `"()"` when `n = 0`.
pub fn cube(labels: &[Label]) -> TransitionSystem {
    cube_upto(labels, true)
}

/// The cube without its top-dimensional transitions.
pub fn boundary(labels: &[Label]) -> Result<TransitionSystem> {
    if labels.is_empty() {
        return Err(Error::EmptyInput("boundary"));
    }
    Ok(cube_upto(labels, false))
}

/// The pure n-transition: two states and every ordering of the n actions.
pub fn pure(labels: &[Label]) -> TransitionSystem {
    let n = labels.len();
    if n == 0 {
        return discrete(["()"]);
    }
    let states = vec!["0".repeat(n), "1".repeat(n)];
    let idx: Vec<usize> = (0..n).collect();
    let trans = orderings(&idx).into_iter().map(|o| (0, o, 1));
    TransitionSystem::assemble(states, indexed_actions(labels), trans)
        .expect("pure transition tables are well formed")
        .system
}

/// The double transition: states 1..4, one action, `(1,x,2)` and `(3,x,4)`.
pub fn double(label: impl Into<Label>) -> TransitionSystem {
    let label = label.into();
    TransitionSystem::builder()
        .states(["1", "2", "3", "4"])
        .action(label.as_str(), label.clone())
        .transition("1", &[label.as_str()], "2")
        .transition("3", &[label.as_str()], "4")
        .build()
        .expect("double transition is well formed")
}

/// The path `0 → 1 → … → n` based at 0.
pub fn path(w: &Word) -> PointedTs {
    let n = w.len();
    let states: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let trans = (0..n).map(|i| (i, vec![i], i + 1));
    let asm = TransitionSystem::assemble(states, indexed_actions(w.letters()), trans)
        .expect("path tables are well formed");
    PointedTs::new(asm.system, asm.states[0]).expect("base exists")
}

pub fn discrete<I, S>(names: I) -> TransitionSystem
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    TransitionSystem::builder()
        .states(names)
        .build()
        .expect("distinct state names")
}

/// `C(w)`: the pointed cylinder of `P(w)` with its two end states identified.
pub fn collapsed_cylinder_path(w: &Word) -> Result<PointedTs> {
    if w.is_empty() {
        return Err(Error::EmptyInput("collapsed_cylinder_path"));
    }
    let p = path(w);
    let cyl = cyl_pointed(&p)?;
    let end = p.ts.expect_state(&w.len().to_string())?;
    let e0 = cyl.gamma0.state(end);
    let e1 = cyl.gamma1.state(end);
    let states = Partition::from_pairs(cyl.cyl.state_count(), [(e0.index(), e1.index())]);
    let actions = Partition::discrete(cyl.cyl.action_count());
    let (q, proj) = quotient(&cyl.cyl, &states, &actions)?;
    let base = cyl.base.expect("pointed cylinder has a base");
    PointedTs::new(q, proj.state(base))
}
