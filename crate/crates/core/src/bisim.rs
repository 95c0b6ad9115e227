//! Lifting against path extensions, and bisimilarity of star-shaped systems.
//!
//! A map `f : (X,*) → (Y,*)` of star-shaped systems lifts against every path
//! extension `P(w) → P(ww')` iff for every state `x` and every 1-transition
//! `(f(x), v, β)` of `Y` there is a 1-transition `(x, u, α)` with `f(u) = v`
//! and `f(α) = β`. Sketch: a lifting problem fixes a path to `x` (the image
//! of `P(w)`) and a continuation in `Y`; the lift can be built one step at a
//! time, and each step is exactly the local condition above. Conversely a
//! failing `(x, v)` yields a failing problem, taking `w` to be the labels of
//! any path reaching `x` and `w'` the label of `v`.
//!
//! Bisimilarity is decided by partition refinement of the labelled
//! 1-skeletons. A positive answer is certified by the span of
//! synchronised pairs, whose projections are checked to lift.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::builders::Word;
use crate::error::{Error, Result};
use crate::similarity::StateRelation;
use crate::star::{is_star_shaped, shortest_paths, PointedMap, PointedTs};
use crate::system::{ActionId, Label, StateId, TransitionSystem, TsMap};

/// A path extension with no lift: the image of `word` ends at `f(state)`,
/// and `f(state)` can continue along `action` to `target` in the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingFailure {
    pub state: StateId,
    pub word: Word,
    pub extension: Word,
    pub action: ActionId,
    pub target: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PInjectivity {
    pub injective: bool,
    pub witness: Option<LiftingFailure>,
}

pub fn is_p_injective(f: &PointedMap) -> Result<PInjectivity> {
    let src = f.source();
    let dst = f.target();
    if !is_star_shaped(&src) || !is_star_shaped(&dst) {
        return Err(Error::NotStarShaped("is_p_injective"));
    }
    let x = &src.ts;
    let y = &dst.ts;
    let succ_x = x.successors();
    let succ_y = y.successors();
    let paths = shortest_paths(&src);
    for s in x.states() {
        for &(v, beta) in &succ_y[f.map.state(s).index()] {
            let lifts = succ_x[s.index()]
                .iter()
                .any(|&(u, alpha)| f.map.action(u) == v && f.map.state(alpha) == beta);
            if !lifts {
                let word = paths[s.index()]
                    .as_ref()
                    .expect("star-shaped")
                    .iter()
                    .map(|&a| x.label(a).clone())
                    .collect();
                return Ok(PInjectivity {
                    injective: false,
                    witness: Some(LiftingFailure {
                        state: s,
                        word: Word::new(word),
                        extension: Word::new(vec![y.label(v).clone()]),
                        action: v,
                        target: beta,
                    }),
                });
            }
        }
    }
    Ok(PInjectivity {
        injective: true,
        witness: None,
    })
}

/// A strong bisimulation between two systems, relating states of the first
/// to states of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisimulation {
    pub relation: StateRelation,
}

/// A state's block together with its labelled steps into blocks.
type Signature<'a> = (usize, BTreeSet<(&'a Label, usize)>);

/// Coarsest partition of `X ⊔ Y` stable under labelled 1-steps.
fn refine(x: &TransitionSystem, y: &TransitionSystem) -> Vec<usize> {
    let n = x.state_count();
    let mut edges: Vec<Vec<(&Label, usize)>> = vec![Vec::new(); n + y.state_count()];
    for (s, a, t) in x.one_transitions() {
        edges[s.index()].push((x.label(a), t.index()));
    }
    for (s, a, t) in y.one_transitions() {
        edges[n + s.index()].push((y.label(a), n + t.index()));
    }
    let mut block = vec![0usize; edges.len()];
    let mut count = 1;
    loop {
        let mut ids: BTreeMap<Signature, usize> = BTreeMap::new();
        let next: Vec<usize> = (0..edges.len())
            .map(|s| {
                let sig: BTreeSet<(&Label, usize)> = edges[s].iter().map(|&(l, t)| (l, block[t])).collect();
                let fresh = ids.len();
                *ids.entry((block[s], sig)).or_insert(fresh)
            })
            .collect();
        let new_count = ids.len();
        block = next;
        if new_count == count {
            return block;
        }
        count = new_count;
    }
}

/// The largest strong bisimulation, if it relates the two base states.
pub fn strong_bisimilar(p: &PointedTs, q: &PointedTs) -> Result<Option<Bisimulation>> {
    if !is_star_shaped(p) || !is_star_shaped(q) {
        return Err(Error::NotStarShaped("strong_bisimilar"));
    }
    let n = p.ts.state_count();
    let block = refine(&p.ts, &q.ts);
    if block[p.base.index()] != block[n + q.base.index()] {
        return Ok(None);
    }
    let mut pairs = BTreeSet::new();
    for a in p.ts.states() {
        for b in q.ts.states() {
            if block[a.index()] == block[n + b.index()] {
                pairs.insert((a, b));
            }
        }
    }
    Ok(Some(Bisimulation {
        relation: StateRelation { pairs },
    }))
}

/// A span `X ← Z → Y` of maps that lift against path extensions.
#[derive(Clone, Debug)]
pub struct Span {
    pub apex: PointedTs,
    pub left: PointedMap,
    pub right: PointedMap,
}

/// Builds the span of synchronised pairs over the largest bisimulation and
/// checks that both legs lift. A leg that fails to lift is reported as an
/// error, since bisimilarity alone is supposed to guarantee it.
pub fn p_bisimilar_via_span(p: &PointedTs, q: &PointedTs) -> Result<Option<Span>> {
    let Some(bisim) = strong_bisimilar(p, q)? else {
        return Ok(None);
    };
    let (x, y) = (&p.ts, &q.ts);
    let sx = x.successors();
    let sy = y.successors();
    let start = (p.base, q.base);
    let mut index: BTreeMap<(StateId, StateId), usize> = BTreeMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut actions: BTreeMap<(ActionId, ActionId), usize> = BTreeMap::new();
    let mut trans = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        for &(u, a2) in &sx[a.index()] {
            for &(v, b2) in &sy[b.index()] {
                if x.label(u) != y.label(v) || !bisim.relation.contains(a2, b2) {
                    continue;
                }
                let next = (a2, b2);
                let to = *index.entry(next).or_insert_with(|| {
                    order.push(next);
                    queue.push_back(next);
                    order.len() - 1
                });
                let fresh = actions.len();
                let act = *actions.entry((u, v)).or_insert(fresh);
                trans.push((index[&(a, b)], vec![act], to));
            }
        }
    }
    let mut action_list = vec![(ActionId(0), ActionId(0)); actions.len()];
    for (&pair, &i) in &actions {
        action_list[i] = pair;
    }
    let asm = TransitionSystem::assemble(
        order
            .iter()
            .map(|&(a, b)| format!("({},{})", x.state_name(a), y.state_name(b)))
            .collect(),
        action_list
            .iter()
            .map(|&(u, v)| (format!("({},{})", x.action_name(u), y.action_name(v)), x.label(u).clone()))
            .collect(),
        trans,
    )?;
    let z = asm.system;
    let mut lx = vec![StateId(0); z.state_count()];
    let mut ly = vec![StateId(0); z.state_count()];
    for (i, &(a, b)) in order.iter().enumerate() {
        lx[asm.states[i].index()] = a;
        ly[asm.states[i].index()] = b;
    }
    let mut ax = vec![ActionId(0); z.action_count()];
    let mut ay = vec![ActionId(0); z.action_count()];
    for (i, &(u, v)) in action_list.iter().enumerate() {
        ax[asm.actions[i].index()] = u;
        ay[asm.actions[i].index()] = v;
    }
    let base = asm.states[0];
    let apex = PointedTs::new(z.clone(), base)?;
    let left = PointedMap::new(TsMap::new(z.clone(), x.clone(), lx, ax)?, base, p.base)?;
    let right = PointedMap::new(TsMap::new(z, y.clone(), ly, ay)?, base, q.base)?;
    for (side, leg) in [("left", &left), ("right", &right)] {
        if let Some(w) = is_p_injective(leg)?.witness {
            return Err(Error::Internal(format!(
                "{side} leg of the bisimulation span does not lift: {} cannot extend by {}",
                w.word, w.extension
            )));
        }
    }
    Ok(Some(Span { apex, left, right }))
}
