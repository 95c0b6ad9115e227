//! Pointed systems, reachability along 1-transitions and the star-shaped
//! coreflection.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::system::{ActionId, StateId, Transition, TransitionSystem, TsMap};

/// A system with a base state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedTs {
    pub ts: TransitionSystem,
    pub base: StateId,
}

impl PointedTs {
    pub fn new(ts: TransitionSystem, base: StateId) -> Result<Self> {
        if base.index() >= ts.state_count() {
            return Err(Error::StateOutOfRange(base.index()));
        }
        Ok(PointedTs { ts, base })
    }

    pub fn with_base_name(ts: TransitionSystem, base: &str) -> Result<Self> {
        let base = ts.expect_state(base)?;
        Ok(PointedTs { ts, base })
    }

    /// The one-point system.
    pub fn point(name: &str) -> Self {
        let ts = TransitionSystem::builder()
            .state(name)
            .build()
            .expect("single state");
        PointedTs {
            ts,
            base: StateId(0),
        }
    }

    pub fn base_name(&self) -> &str {
        self.ts.state_name(self.base)
    }
}

/// A map preserving base states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedMap {
    pub map: TsMap,
    pub source_base: StateId,
    pub target_base: StateId,
}

impl PointedMap {
    pub fn new(map: TsMap, source_base: StateId, target_base: StateId) -> Result<Self> {
        if source_base.index() >= map.source().state_count() {
            return Err(Error::StateOutOfRange(source_base.index()));
        }
        if map.state(source_base) != target_base {
            return Err(Error::BaseNotPreserved(
                map.source().state_name(source_base).to_string(),
                map.target().state_name(map.state(source_base)).to_string(),
            ));
        }
        Ok(PointedMap {
            map,
            source_base,
            target_base,
        })
    }

    pub fn from_pointed(map: TsMap, source: &PointedTs, target: &PointedTs) -> Result<Self> {
        if map.source() != &source.ts || map.target() != &target.ts {
            return Err(Error::MismatchedMaps);
        }
        Self::new(map, source.base, target.base)
    }

    pub fn identity(p: &PointedTs) -> Self {
        PointedMap {
            map: TsMap::identity(&p.ts),
            source_base: p.base,
            target_base: p.base,
        }
    }

    pub fn source(&self) -> PointedTs {
        PointedTs {
            ts: self.map.source().clone(),
            base: self.source_base,
        }
    }

    pub fn target(&self) -> PointedTs {
        PointedTs {
            ts: self.map.target().clone(),
            base: self.target_base,
        }
    }

    pub fn then(&self, other: &PointedMap) -> Result<PointedMap> {
        let map = self.map.then(&other.map)?;
        PointedMap::new(map, self.source_base, other.target_base)
    }
}

/// Shortest distances from the base along 1-transitions, `None` if unreachable.
pub fn depths(pts: &PointedTs) -> Vec<Option<usize>> {
    let succ = pts.ts.successors();
    let mut dist = vec![None; pts.ts.state_count()];
    dist[pts.base.index()] = Some(0);
    let mut queue = VecDeque::from([pts.base]);
    while let Some(s) = queue.pop_front() {
        let d = dist[s.index()].unwrap();
        for &(_, t) in &succ[s.index()] {
            if dist[t.index()].is_none() {
                dist[t.index()] = Some(d + 1);
                queue.push_back(t);
            }
        }
    }
    dist
}

/// For every reachable state, the actions of one shortest path from the base.
pub fn shortest_paths(pts: &PointedTs) -> Vec<Option<Vec<ActionId>>> {
    let succ = pts.ts.successors();
    let mut paths: Vec<Option<Vec<ActionId>>> = vec![None; pts.ts.state_count()];
    paths[pts.base.index()] = Some(Vec::new());
    let mut queue = VecDeque::from([pts.base]);
    while let Some(s) = queue.pop_front() {
        let here = paths[s.index()].clone().unwrap();
        for &(a, t) in &succ[s.index()] {
            if paths[t.index()].is_none() {
                let mut w = here.clone();
                w.push(a);
                paths[t.index()] = Some(w);
                queue.push_back(t);
            }
        }
    }
    paths
}

pub fn reachable_states(pts: &PointedTs) -> BTreeSet<StateId> {
    depths(pts)
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_some())
        .map(|(i, _)| StateId(i as u32))
        .collect()
}

pub fn is_star_shaped(pts: &PointedTs) -> bool {
    depths(pts).iter().all(Option::is_some)
}

/// `ℓ(α)`, the length of a shortest path from the base to `α`.
pub fn depth(pts: &PointedTs, state: StateId) -> Result<usize> {
    depths(pts)
        .get(state.index())
        .ok_or(Error::StateOutOfRange(state.index()))?
        .ok_or_else(|| Error::Unreachable(pts.ts.state_name(state).to_string()))
}

/// The largest star-shaped subsystem and its inclusion.
///
/// Keeps reachable states, the transitions between reachable states (for
/// cubical systems every target of a reachable source is reachable) and the
/// actions those transitions use.
pub fn star_coreflect(pts: &PointedTs) -> (PointedTs, PointedMap) {
    let reach = reachable_states(pts);
    let kept: Vec<&Transition> = pts
        .ts
        .transitions()
        .iter()
        .filter(|t| reach.contains(&t.source) && reach.contains(&t.target))
        .collect();
    let used: BTreeSet<ActionId> = kept.iter().flat_map(|t| t.actions.iter().copied()).collect();
    let states: Vec<StateId> = reach.iter().copied().collect();
    let actions: Vec<ActionId> = used.iter().copied().collect();
    let mut state_pos = vec![usize::MAX; pts.ts.state_count()];
    for (i, s) in states.iter().enumerate() {
        state_pos[s.index()] = i;
    }
    let mut action_pos = vec![usize::MAX; pts.ts.action_count()];
    for (i, a) in actions.iter().enumerate() {
        action_pos[a.index()] = i;
    }
    let asm = TransitionSystem::assemble(
        states.iter().map(|&s| pts.ts.state_name(s).to_string()).collect(),
        actions
            .iter()
            .map(|&a| (pts.ts.action_name(a).to_string(), pts.ts.label(a).clone()))
            .collect(),
        kept.iter().map(|t| {
            (
                state_pos[t.source.index()],
                t.actions.iter().map(|a| action_pos[a.index()]).collect(),
                state_pos[t.target.index()],
            )
        }),
    )
    .expect("subsystem of a valid system");
    let sub = asm.system;
    // names are unchanged, so the inclusion is by name
    let smap: Vec<StateId> = sub
        .states()
        .map(|s| pts.ts.state(sub.state_name(s)).unwrap())
        .collect();
    let amap: Vec<ActionId> = sub
        .actions()
        .map(|a| pts.ts.action(sub.action_name(a)).unwrap())
        .collect();
    let base = sub.state(pts.ts.state_name(pts.base)).unwrap();
    let incl = TsMap::new(sub.clone(), pts.ts.clone(), smap, amap).expect("inclusion is a map");
    let out = PointedTs { ts: sub, base };
    let map = PointedMap::new(incl, base, pts.base).expect("inclusion keeps the base");
    (out, map)
}
